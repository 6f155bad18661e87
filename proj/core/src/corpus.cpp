#include "fakenews/corpus.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"
#include "fakenews/unicode.hpp"

namespace fakenews {

namespace {

constexpr std::string_view kModule = "corpus";

}  // namespace

bool Dataset::fully_labeled() const noexcept {
    return std::all_of(items.begin(), items.end(), [](const NewsItem& item) { return item.label.has_value(); });
}

std::vector<Label> Dataset::labels() const {
    std::vector<Label> out;
    out.reserve(items.size());
    for (const auto& item : items) {
        if (!item.label) {
            throw Error(Errc::UnlabeledItem, std::string(kModule), "split '" + split_name + "' has an unlabeled item",
                        item.id);
        }
        out.push_back(*item.label);
    }
    return out;
}

std::optional<FileFormat> parse_file_format(std::string_view text) {
    const std::string v = io::ascii_lower(io::trim(text));
    if (v == "tsv") {
        return FileFormat::Tsv;
    }
    if (v == "csv") {
        return FileFormat::Csv;
    }
    return std::nullopt;
}

Dataset parse_dataset(std::string_view content, bool has_labels, const LoadOptions& options,
                      const std::string& source) {
    io::ReadOptions read;
    read.delimiter = options.format == FileFormat::Tsv ? io::Delimiter::Tab : io::Delimiter::Comma;
    const auto table = io::Table::parse(content, source, read, kModule);

    const std::size_t id_col = table.require_column("id");
    auto text_col_opt = table.column("tweet");
    if (!text_col_opt) {
        text_col_opt = table.column("text");
    }
    const std::size_t text_col = text_col_opt ? *text_col_opt : table.require_column("tweet");
    const auto label_col = table.column("label");
    if (has_labels && !label_col) {
        throw Error(Errc::BadFormat, std::string(kModule), source + ": labeled data needs a 'label' column");
    }
    if (!has_labels && label_col) {
        throw Error(Errc::BadFormat, std::string(kModule), source + ": unlabeled data must not carry a 'label' column");
    }

    Dataset dataset;
    dataset.split_name =
        options.split_name.empty() ? std::filesystem::path(source).stem().string() : options.split_name;
    dataset.items.reserve(table.rows().size());
    std::unordered_set<std::uint64_t> seen;
    for (const auto& row : table.rows()) {
        const auto where = source + " line " + std::to_string(row.line);
        const auto id = io::parse_u64(row.fields[id_col]);
        if (!id) {
            throw Error(Errc::BadFormat, std::string(kModule),
                        where + ": id '" + row.fields[id_col] + "' is not a non-negative integer");
        }
        if (!seen.insert(*id).second) {
            throw Error(Errc::DuplicateId, std::string(kModule), where, *id);
        }
        NewsItem item;
        item.id = *id;
        item.text = unicode::normalize_nfc(row.fields[text_col]);
        if (io::trim(item.text).empty()) {
            throw Error(Errc::EmptyText, std::string(kModule), where, *id);
        }
        if (label_col) {
            const auto label = try_parse_label(row.fields[*label_col]);
            if (!label) {
                throw Error(Errc::BadLabel, std::string(kModule), where + ": '" + row.fields[*label_col] + "'", *id);
            }
            item.label = *label;
        }
        dataset.items.push_back(std::move(item));
    }
    return dataset;
}

Dataset load_dataset(const std::filesystem::path& path, bool has_labels, const LoadOptions& options) {
    return parse_dataset(io::read_file(path, kModule), has_labels, options, path.string());
}

std::string serialize_dataset(const Dataset& dataset, bool with_labels, FileFormat format) {
    const bool tsv = format == FileFormat::Tsv;
    const char sep = tsv ? '\t' : ',';
    const auto field = [tsv](std::string_view f) { return tsv ? io::escape_tsv(f) : io::quote_csv(f); };

    std::string out =
        with_labels ? std::string("id") + sep + "tweet" + sep + "label\n" : std::string("id") + sep + "tweet\n";
    for (const auto& item : dataset.items) {
        out += std::to_string(item.id);
        out += sep;
        out += field(item.text);
        if (with_labels) {
            if (!item.label) {
                throw Error(Errc::UnlabeledItem, std::string(kModule), "cannot save a label that is missing", item.id);
            }
            out += sep;
            out += to_string(*item.label);
        }
        out += '\n';
    }
    return out;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path, bool with_labels, FileFormat format) {
    io::write_file_atomic(path, serialize_dataset(dataset, with_labels, format));
}

CorpusSummary summarize(const Dataset& dataset, const UrlExpansionCache& cache) {
    return summarize(std::span<const Dataset>(&dataset, 1), cache);
}

CorpusSummary summarize(std::span<const Dataset> datasets, const UrlExpansionCache& cache) {
    CorpusSummary summary;
    std::set<std::string> usernames;
    std::set<std::string> domains;
    std::size_t real = 0;
    bool all_labeled = true;
    for (const auto& dataset : datasets) {
        for (const auto& item : dataset.items) {
            ++summary.item_count;
            if (!item.label) {
                all_labeled = false;
            } else if (*item.label == Label::Real) {
                ++real;
            }
            auto attrs = extract_attributes(item.text, cache);
            usernames.insert(attrs.usernames.begin(), attrs.usernames.end());
            domains.insert(attrs.domains.begin(), attrs.domains.end());
        }
    }
    if (all_labeled && summary.item_count > 0) {
        const auto n = static_cast<double>(summary.item_count);
        summary.real_fraction = static_cast<double>(real) / n;
        summary.fake_fraction = static_cast<double>(summary.item_count - real) / n;
    }
    summary.unique_usernames = usernames.size();
    summary.unique_domains = domains.size();
    return summary;
}

std::string CorpusSummary::to_text() const {
    const auto fraction = [](const std::optional<double>& f) { return f ? io::format_fixed(*f, 4) : std::string("-"); };
    std::string out;
    out += "item_count       " + std::to_string(item_count) + "\n";
    out += "real_fraction    " + fraction(real_fraction) + "\n";
    out += "fake_fraction    " + fraction(fake_fraction) + "\n";
    out += "unique_usernames " + std::to_string(unique_usernames) + "\n";
    out += "unique_domains   " + std::to_string(unique_domains) + "\n";
    return out;
}

std::string CorpusSummary::to_json() const {
    nlohmann::ordered_json j;
    j["item_count"] = item_count;
    j["real_fraction"] = real_fraction ? nlohmann::ordered_json(*real_fraction) : nlohmann::ordered_json(nullptr);
    j["fake_fraction"] = fake_fraction ? nlohmann::ordered_json(*fake_fraction) : nlohmann::ordered_json(nullptr);
    j["unique_usernames"] = unique_usernames;
    j["unique_domains"] = unique_domains;
    return j.dump(2) + "\n";
}

}  // namespace fakenews

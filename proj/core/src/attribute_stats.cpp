#include "fakenews/attribute_stats.hpp"

#include <set>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"

namespace fakenews {

namespace {

constexpr std::string_view kModule = "attribute_stats";

}  // namespace

std::string_view to_string(AttributeKind kind) noexcept {
    return kind == AttributeKind::Username ? "username" : "domain";
}

std::optional<AttributeKind> parse_attribute_kind(std::string_view text) {
    const std::string v = io::ascii_lower(io::trim(text));
    if (v == "username" || v == "user" || v == "usernames") {
        return AttributeKind::Username;
    }
    if (v == "domain" || v == "domains") {
        return AttributeKind::Domain;
    }
    return std::nullopt;
}

std::string_view to_string(CountingMode mode) noexcept {
    return mode == CountingMode::PerOccurrence ? "occurrence" : "item";
}

std::optional<CountingMode> parse_counting_mode(std::string_view text) {
    const std::string v = io::ascii_lower(io::trim(text));
    if (v == "occurrence" || v == "per-occurrence") {
        return CountingMode::PerOccurrence;
    }
    if (v == "item" || v == "per-item") {
        return CountingMode::PerItem;
    }
    return std::nullopt;
}

ClassProbabilities cond_prob(const AttrCounts& counts) {
    const std::uint64_t total = counts.total();
    if (total == 0) {
        throw Error(Errc::ZeroSupport, std::string(kModule), "attribute has no observations");
    }
    const auto denom = static_cast<double>(total);
    return {static_cast<double>(counts.real_count) / denom, static_cast<double>(counts.fake_count) / denom};
}

void AttributeStatsTable::add(std::string_view attribute, Label label, std::uint64_t count) {
    if (count == 0) {
        return;
    }
    auto it = entries_.find(attribute);
    if (it == entries_.end()) {
        it = entries_.emplace(std::string(attribute), AttrCounts{}).first;
    }
    (label == Label::Real ? it->second.real_count : it->second.fake_count) += count;
}

void AttributeStatsTable::merge(const AttributeStatsTable& other) {
    if (other.kind_ != kind_) {
        throw Error(Errc::BadConfig, std::string(kModule), "cannot merge username and domain tables");
    }
    for (const auto& [attribute, counts] : other.entries_) {
        add(attribute, Label::Real, counts.real_count);
        add(attribute, Label::Fake, counts.fake_count);
    }
}

const AttrCounts* AttributeStatsTable::find(std::string_view attribute) const {
    auto it = entries_.find(attribute);
    return it == entries_.end() ? nullptr : &it->second;
}

const std::vector<std::string>& attributes_of(const TweetAttributes& attrs, AttributeKind kind) noexcept {
    return kind == AttributeKind::Username ? attrs.usernames : attrs.domains;
}

AttributeStatsTable build_table(const Dataset& training, AttributeKind kind, const UrlExpansionCache& cache,
                                CountingMode mode) {
    AttributeStatsTable table(kind);
    for (const auto& item : training.items) {
        if (!item.label) {
            throw Error(Errc::UnlabeledItem, std::string(kModule), "statistics need labeled training data", item.id);
        }
        const auto attrs = extract_attributes(item.text, cache);
        const auto& values = attributes_of(attrs, kind);
        if (mode == CountingMode::PerItem) {
            for (const auto& value : std::set<std::string>(values.begin(), values.end())) {
                table.add(value, *item.label);
            }
        } else {
            for (const auto& value : values) {
                table.add(value, *item.label);
            }
        }
    }
    return table;
}

AttrProbVector tweet_attr_vector(std::span<const std::string> attributes, const AttributeStatsTable& table) {
    double sum_real = 0.0;
    double sum_fake = 0.0;
    std::uint64_t support = 0;
    std::size_t known = 0;
    for (const auto& attribute : attributes) {
        const AttrCounts* counts = table.find(attribute);
        if (counts == nullptr || counts->total() == 0) {
            continue;
        }
        const auto probs = cond_prob(*counts);
        sum_real += probs.p_real;
        sum_fake += probs.p_fake;
        support += counts->total();
        ++known;
    }
    if (known == 0) {
        return AttrProbVector::absent();
    }
    const auto n = static_cast<double>(known);
    return {sum_real / n, sum_fake / n, support, true};
}

std::string serialize_table(const AttributeStatsTable& table, std::string_view preamble) {
    std::string out(preamble);
    out += "attribute\treal_count\tfake_count\n";
    for (const auto& [attribute, counts] : table.entries()) {
        out += io::escape_tsv(attribute);
        out += '\t';
        out += std::to_string(counts.real_count);
        out += '\t';
        out += std::to_string(counts.fake_count);
        out += '\n';
    }
    return out;
}

AttributeStatsTable parse_table(std::string_view content, AttributeKind kind, const std::string& source) {
    io::ReadOptions options;
    options.skip_comments = true;
    const auto tsv = io::Table::parse(content, source, options, kModule);
    const auto attr_col = tsv.require_column("attribute");
    const auto real_col = tsv.require_column("real_count");
    const auto fake_col = tsv.require_column("fake_count");

    AttributeStatsTable table(kind);
    for (const auto& row : tsv.rows()) {
        const auto where = source + " line " + std::to_string(row.line);
        const auto real = io::parse_u64(row.fields[real_col]);
        const auto fake = io::parse_u64(row.fields[fake_col]);
        if (!real || !fake) {
            throw Error(Errc::BadFormat, std::string(kModule), where + ": counts must be non-negative integers");
        }
        if (*real + *fake == 0) {
            throw Error(Errc::ZeroSupport, std::string(kModule), where + ": attribute with zero counts");
        }
        const std::string key = io::ascii_lower(io::trim(row.fields[attr_col]));
        if (table.find(key) != nullptr) {
            throw Error(Errc::BadFormat, std::string(kModule), where + ": duplicate attribute '" + key + "'");
        }
        table.add(key, Label::Real, *real);
        table.add(key, Label::Fake, *fake);
    }
    return table;
}

AttributeStatsTable load_table(const std::filesystem::path& path, AttributeKind kind) {
    return parse_table(io::read_file(path, kModule), kind, path.string());
}

void save_table(const AttributeStatsTable& table, const std::filesystem::path& path, std::string_view preamble) {
    io::write_file_atomic(path, serialize_table(table, preamble));
}

}  // namespace fakenews

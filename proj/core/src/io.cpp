#include "fakenews/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "fakenews/error.hpp"

namespace fakenews::io {

namespace {

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

std::vector<Record> parse_tab_records(std::string_view content, const ReadOptions& options) {
    std::vector<Record> records;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        const std::size_t end = std::min(content.find('\n', pos), content.size());
        std::string line(content.substr(pos, end - pos));
        ++line_no;
        pos = end + 1;
        strip_cr(line);
        if (is_blank(line) || (options.skip_comments && line.front() == '#')) {
            if (end == content.size()) {
                break;
            }
            continue;
        }
        Record rec;
        rec.line = line_no;
        for (auto& field : split(line, '\t')) {
            rec.fields.push_back(unescape_tsv(field));
        }
        records.push_back(std::move(rec));
        if (end == content.size()) {
            break;
        }
    }
    return records;
}

// RFC 4180: quoted fields may contain commas, doubled quotes and newlines.
std::vector<Record> parse_csv_records(std::string_view content, const ReadOptions& options) {
    std::vector<Record> records;
    std::size_t line_no = 1;
    std::size_t i = 0;
    const std::size_t n = content.size();
    while (i < n) {
        if (options.skip_comments && content[i] == '#') {
            while (i < n && content[i] != '\n') {
                ++i;
            }
            ++i;
            ++line_no;
            continue;
        }
        Record rec;
        rec.line = line_no;
        std::string field;
        bool in_quotes = false;
        bool record_done = false;
        while (i < n && !record_done) {
            const char c = content[i];
            if (in_quotes) {
                if (c == '"') {
                    if (i + 1 < n && content[i + 1] == '"') {
                        field.push_back('"');
                        i += 2;
                        continue;
                    }
                    in_quotes = false;
                } else {
                    if (c == '\n') {
                        ++line_no;
                    }
                    field.push_back(c);
                }
                ++i;
                continue;
            }
            switch (c) {
                case '"':
                    in_quotes = true;
                    break;
                case ',':
                    rec.fields.push_back(std::move(field));
                    field.clear();
                    break;
                case '\r':
                    break;
                case '\n':
                    ++line_no;
                    record_done = true;
                    break;
                default:
                    field.push_back(c);
            }
            ++i;
        }
        rec.fields.push_back(std::move(field));
        if (rec.fields.size() == 1 && is_blank(rec.fields.front())) {
            continue;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
               return std::tolower(x) == std::tolower(y);
           });
}

}  // namespace

std::vector<Record> parse_records(std::string_view content, const ReadOptions& options) {
    // A UTF-8 byte order mark on the first line is not part of the data.
    if (content.starts_with("\xEF\xBB\xBF")) {
        content.remove_prefix(3);
    }
    return options.delimiter == Delimiter::Tab ? parse_tab_records(content, options)
                                               : parse_csv_records(content, options);
}

Table Table::parse(std::string_view content, std::string source, const ReadOptions& options, std::string_view module) {
    Table table;
    table.source_ = std::move(source);
    table.module_ = std::string(module);
    auto records = parse_records(content, options);
    if (records.empty()) {
        throw Error(Errc::BadFormat, table.module_, table.source_ + ": missing header row");
    }
    for (const auto& name : records.front().fields) {
        table.header_.emplace_back(trim(name));
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].fields.size() != table.header_.size()) {
            throw Error(Errc::BadFormat, table.module_,
                        table.source_ + " line " + std::to_string(records[r].line) + ": expected " +
                            std::to_string(table.header_.size()) + " fields, found " +
                            std::to_string(records[r].fields.size()));
        }
        table.rows_.push_back(std::move(records[r]));
    }
    return table;
}

Table Table::load(const std::filesystem::path& path, const ReadOptions& options, std::string_view module) {
    return parse(read_file(path, module), path.string(), options, module);
}

std::optional<std::size_t> Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (iequals(header_[i], name)) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t Table::require_column(std::string_view name) const {
    if (auto idx = column(name)) {
        return *idx;
    }
    throw Error(Errc::BadFormat, module_, source_ + ": missing required column '" + std::string(name) + "'");
}

std::string escape_tsv(std::string_view field) {
    std::string out;
    out.reserve(field.size());
    for (char c : field) {
        switch (c) {
            case '\\':
                out += "\\\\";
                break;
            case '\t':
                out += "\\t";
                break;
            case '\n':
                out += "\\n";
                break;
            case '\r':
                out += "\\r";
                break;
            default:
                out.push_back(c);
        }
    }
    return out;
}

std::string unescape_tsv(std::string_view field) {
    std::string out;
    out.reserve(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field[i] == '\\' && i + 1 < field.size()) {
            const char next = field[i + 1];
            char decoded = 0;
            switch (next) {
                case '\\':
                    decoded = '\\';
                    break;
                case 't':
                    decoded = '\t';
                    break;
                case 'n':
                    decoded = '\n';
                    break;
                case 'r':
                    decoded = '\r';
                    break;
                default:
                    break;
            }
            if (decoded != 0) {
                out.push_back(decoded);
                ++i;
                continue;
            }
        }
        out.push_back(field[i]);
    }
    return out;
}

std::string quote_csv(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string_view trim(std::string_view text) noexcept {
    const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && is_space(text.front())) {
        text.remove_prefix(1);
    }
    while (!text.empty() && is_space(text.back())) {
        text.remove_suffix(1);
    }
    return text;
}

std::string ascii_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> split(std::string_view text, char separator) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(separator, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            break;
        }
        parts.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::optional<std::uint64_t> parse_u64(std::string_view text) noexcept {
    text = trim(text);
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

std::optional<double> parse_double(std::string_view text) noexcept {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

std::optional<bool> parse_bool(std::string_view text) {
    const std::string v = ascii_lower(trim(text));
    if (v == "true" || v == "yes" || v == "on" || v == "1") {
        return true;
    }
    if (v == "false" || v == "no" || v == "off" || v == "0") {
        return false;
    }
    return std::nullopt;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, ptr);
}

std::string read_file(const std::filesystem::path& path, std::string_view module) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::Io, std::string(module), "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(Errc::Io, "io", "cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error(Errc::Io, "io", "short write to " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error(Errc::Io, "io", "cannot rename " + tmp.string() + ": " + ec.message());
    }
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace fakenews::io

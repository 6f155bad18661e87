#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small text-file helpers shared by every module that reads or writes the
// tab-separated formats. TSV fields escape backslash, tab, CR and LF as
// \\, \t, \r and \n so arbitrary text survives a save/load cycle.
namespace fakenews::io {

enum class Delimiter { Tab, Comma };

struct ReadOptions {
    Delimiter delimiter = Delimiter::Tab;
    bool skip_comments = false;  // lines whose first byte is '#'
};

struct Record {
    std::size_t line = 0;  // 1-based physical line where the record starts
    std::vector<std::string> fields;
};

std::vector<Record> parse_records(std::string_view content, const ReadOptions& options);

// Header-first delimited table. Column lookup is case-insensitive.
class Table {
public:
    static Table parse(std::string_view content, std::string source, const ReadOptions& options,
                       std::string_view module);
    static Table load(const std::filesystem::path& path, const ReadOptions& options, std::string_view module);

    const std::string& source() const noexcept { return source_; }
    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<Record>& rows() const noexcept { return rows_; }

    std::optional<std::size_t> column(std::string_view name) const;
    std::size_t require_column(std::string_view name) const;

private:
    std::string source_;
    std::string module_;
    std::vector<std::string> header_;
    std::vector<Record> rows_;
};

std::string escape_tsv(std::string_view field);
std::string unescape_tsv(std::string_view field);
std::string quote_csv(std::string_view field);

std::string_view trim(std::string_view text) noexcept;
std::string ascii_lower(std::string_view text);
std::vector<std::string> split(std::string_view text, char separator);

std::optional<std::uint64_t> parse_u64(std::string_view text) noexcept;
std::optional<double> parse_double(std::string_view text) noexcept;
std::optional<bool> parse_bool(std::string_view text);

// Shortest representation that parses back to the same double.
std::string format_double(double value);
std::string format_fixed(double value, int decimals);

std::string read_file(const std::filesystem::path& path, std::string_view module);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// FNV-1a 64-bit digest rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace fakenews::io

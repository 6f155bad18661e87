#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakenews/label.hpp"
#include "fakenews/preprocess.hpp"

namespace fakenews {

struct NewsItem {
    std::uint64_t id = 0;
    std::string text;  // NFC
    std::optional<Label> label;

    bool operator==(const NewsItem&) const = default;
};

struct Dataset {
    std::vector<NewsItem> items;  // file order
    std::string split_name;

    std::size_t size() const noexcept { return items.size(); }
    bool empty() const noexcept { return items.empty(); }
    bool fully_labeled() const noexcept;

    /// Gold labels in item order; throws Error{UnlabeledItem} on the first gap.
    std::vector<Label> labels() const;
};

enum class FileFormat { Tsv, Csv };

std::optional<FileFormat> parse_file_format(std::string_view text);

struct LoadOptions {
    FileFormat format = FileFormat::Tsv;
    std::string split_name;
};

// Columns are located by header name: id, tweet (or text), label.
Dataset parse_dataset(std::string_view content, bool has_labels, const LoadOptions& options = {},
                      const std::string& source = "<dataset>");
Dataset load_dataset(const std::filesystem::path& path, bool has_labels, const LoadOptions& options = {});

std::string serialize_dataset(const Dataset& dataset, bool with_labels, FileFormat format = FileFormat::Tsv);
void save_dataset(const Dataset& dataset, const std::filesystem::path& path, bool with_labels,
                  FileFormat format = FileFormat::Tsv);

struct CorpusSummary {
    std::size_t item_count = 0;
    std::optional<double> real_fraction;  // absent unless every item is labeled
    std::optional<double> fake_fraction;
    std::size_t unique_usernames = 0;
    std::size_t unique_domains = 0;

    std::string to_text() const;
    std::string to_json() const;
};

CorpusSummary summarize(const Dataset& dataset, const UrlExpansionCache& cache);

/// Summary over several splits taken together (ids may repeat across splits).
CorpusSummary summarize(std::span<const Dataset> datasets, const UrlExpansionCache& cache);

}  // namespace fakenews

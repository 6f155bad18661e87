#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakenews/corpus.hpp"
#include "fakenews/label.hpp"
#include "fakenews/preprocess.hpp"

namespace fakenews {

enum class AttributeKind { Username, Domain };

std::string_view to_string(AttributeKind kind) noexcept;
std::optional<AttributeKind> parse_attribute_kind(std::string_view text);

/// How repeated mentions of one attribute inside a single item are counted.
enum class CountingMode { PerOccurrence, PerItem };

std::string_view to_string(CountingMode mode) noexcept;
std::optional<CountingMode> parse_counting_mode(std::string_view text);

struct AttrCounts {
    std::uint64_t real_count = 0;
    std::uint64_t fake_count = 0;

    std::uint64_t total() const noexcept { return real_count + fake_count; }
    bool operator==(const AttrCounts&) const = default;
};

struct ClassProbabilities {
    double p_real = 0.0;
    double p_fake = 0.0;
};

/// Raw class ratios, no smoothing. Throws Error{ZeroSupport} for (0, 0).
ClassProbabilities cond_prob(const AttrCounts& counts);

struct AttrProbVector {
    double p_real = 0.0;
    double p_fake = 0.0;
    std::uint64_t support = 0;
    bool present = false;

    static AttrProbVector absent() noexcept { return {}; }
    static AttrProbVector of(double p_real, std::uint64_t support = 1) noexcept {
        return {p_real, 1.0 - p_real, support, true};
    }
    bool operator==(const AttrProbVector&) const = default;
};

class AttributeStatsTable {
public:
    using Entries = std::map<std::string, AttrCounts, std::less<>>;

    explicit AttributeStatsTable(AttributeKind kind = AttributeKind::Username) : kind_(kind) {}

    AttributeKind kind() const noexcept { return kind_; }

    void add(std::string_view attribute, Label label, std::uint64_t count = 1);
    void merge(const AttributeStatsTable& other);

    const AttrCounts* find(std::string_view attribute) const;
    const Entries& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    bool operator==(const AttributeStatsTable&) const = default;

private:
    AttributeKind kind_;
    Entries entries_;
};

const std::vector<std::string>& attributes_of(const TweetAttributes& attrs, AttributeKind kind) noexcept;

/// Counts how often each attribute co-occurs with each gold class. Every item
/// must be labeled (Error{UnlabeledItem} otherwise), which keeps unlabeled
/// evaluation splits out of the tables.
AttributeStatsTable build_table(const Dataset& training, AttributeKind kind, const UrlExpansionCache& cache,
                                CountingMode mode = CountingMode::PerOccurrence);

/// Mean of the per-attribute conditional probabilities over the attributes
/// the table knows; unknown attributes are skipped.
AttrProbVector tweet_attr_vector(std::span<const std::string> attributes, const AttributeStatsTable& table);

std::string serialize_table(const AttributeStatsTable& table, std::string_view preamble = {});
AttributeStatsTable parse_table(std::string_view content, AttributeKind kind, const std::string& source = "<table>");
AttributeStatsTable load_table(const std::filesystem::path& path, AttributeKind kind);
void save_table(const AttributeStatsTable& table, const std::filesystem::path& path, std::string_view preamble = {});

}  // namespace fakenews

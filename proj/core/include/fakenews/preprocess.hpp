#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fakenews {

struct TweetAttributes {
    std::vector<std::string> usernames;  // lowercase, without '@'
    std::vector<std::string> urls;       // raw, as written in the text
    std::vector<std::string> domains;    // normalized hosts of the expanded urls

    bool operator==(const TweetAttributes&) const = default;
};

enum class MissPolicy { UseAsIs, Drop };

std::string_view to_string(MissPolicy policy) noexcept;
std::optional<MissPolicy> parse_miss_policy(std::string_view text);

// Offline short-url -> expanded-url map. Keys match the raw url string
// exactly; the cache never changes once a run has started.
class UrlExpansionCache {
public:
    using Entries = std::map<std::string, std::string, std::less<>>;

    UrlExpansionCache() = default;
    explicit UrlExpansionCache(Entries entries, MissPolicy miss_policy = MissPolicy::UseAsIs);

    /// Expanded url, the url itself on a UseAsIs miss, nothing on a Drop miss.
    std::optional<std::string> expand(std::string_view url) const;
    const std::string* find(std::string_view url) const;

    MissPolicy miss_policy() const noexcept { return miss_policy_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const Entries& entries() const noexcept { return entries_; }

private:
    Entries entries_;
    MissPolicy miss_policy_ = MissPolicy::UseAsIs;
};

UrlExpansionCache parse_url_cache(std::string_view content, MissPolicy miss_policy,
                                  const std::string& source = "<cache>");
UrlExpansionCache load_url_cache(const std::filesystem::path& path, MissPolicy miss_policy = MissPolicy::UseAsIs);
std::string serialize_url_cache(const UrlExpansionCache& cache);

struct CleanPolicy {
    bool remove_urls = true;
    bool remove_mentions = true;
    bool remove_emoji = true;
    bool remove_hashmark_only = true;  // "#covid" -> "covid"

    bool operator==(const CleanPolicy&) const = default;
};

struct TextSpan {
    std::size_t begin = 0;
    std::size_t end = 0;  // one past the last byte

    bool operator==(const TextSpan&) const = default;
};

/// http(s) urls, longest match, trailing sentence punctuation excluded.
std::vector<TextSpan> find_urls(std::string_view text);

/// "@handle" spans (the '@' included). An '@' glued to a preceding word
/// character (an e-mail address) or lying inside a url is not a mention.
std::vector<TextSpan> find_mentions(std::string_view text);

TweetAttributes extract_attributes(std::string_view text, const UrlExpansionCache& cache);

/// Lowercased host with port, path and leading "www." removed.
/// Throws Error{BadUrl} when `url` has no scheme or no valid host.
std::string normalize_domain(std::string_view url);
std::optional<std::string> try_normalize_domain(std::string_view url);

/// Applies the policy's removals until nothing more matches, then collapses
/// whitespace runs to one space and trims.
std::string clean_text(std::string_view text, const CleanPolicy& policy);

}  // namespace fakenews

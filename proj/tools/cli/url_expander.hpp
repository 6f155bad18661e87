#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace fakenews::cli {

struct ExpanderOptions {
    std::chrono::seconds timeout{10};
    long max_redirects = 10;
};

// Follows redirects over the network. Used only by `expand-urls`; every
// other command reads the resulting cache file and stays offline.
class UrlExpander {
public:
    explicit UrlExpander(ExpanderOptions options = {});
    ~UrlExpander();
    UrlExpander(const UrlExpander&) = delete;
    UrlExpander& operator=(const UrlExpander&) = delete;

    /// Final url after redirects, or nothing when the request fails.
    std::optional<std::string> expand(const std::string& url, std::string* error = nullptr);

private:
    ExpanderOptions options_;
    void* handle_;
};

}  // namespace fakenews::cli

#include "url_expander.hpp"

#include <mutex>
#include <stdexcept>

#include <curl/curl.h>

namespace fakenews::cli {

namespace {

std::size_t discard(char*, std::size_t size, std::size_t count, void*) { return size * count; }

void global_init() {
    static std::once_flag once;
    std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

}  // namespace

UrlExpander::UrlExpander(ExpanderOptions options) : options_(options) {
    global_init();
    handle_ = curl_easy_init();
    if (handle_ == nullptr) {
        throw std::runtime_error("curl_easy_init failed");
    }
}

UrlExpander::~UrlExpander() { curl_easy_cleanup(static_cast<CURL*>(handle_)); }

std::optional<std::string> UrlExpander::expand(const std::string& url, std::string* error) {
    auto* curl = static_cast<CURL*>(handle_);
    // Some shorteners refuse HEAD, so a failed HEAD is retried as GET.
    for (const bool head : {true, false}) {
        curl_easy_reset(curl);
        curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
        curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
        curl_easy_setopt(curl, CURLOPT_MAXREDIRS, options_.max_redirects);
        curl_easy_setopt(curl, CURLOPT_TIMEOUT, static_cast<long>(options_.timeout.count()));
        curl_easy_setopt(curl, CURLOPT_NOBODY, head ? 1L : 0L);
        curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, discard);
        curl_easy_setopt(curl, CURLOPT_USERAGENT, "fakenews-expand-urls/1");
        curl_easy_setopt(curl, CURLOPT_PROTOCOLS, static_cast<long>(CURLPROTO_HTTP | CURLPROTO_HTTPS));
        curl_easy_setopt(curl, CURLOPT_REDIR_PROTOCOLS, static_cast<long>(CURLPROTO_HTTP | CURLPROTO_HTTPS));

        const CURLcode rc = curl_easy_perform(curl);
        long status = 0;
        curl_easy_getinfo(curl, CURLINFO_RESPONSE_CODE, &status);
        if (rc == CURLE_OK && status > 0 && status < 400) {
            char* effective = nullptr;
            curl_easy_getinfo(curl, CURLINFO_EFFECTIVE_URL, &effective);
            if (effective != nullptr) {
                return std::string(effective);
            }
        }
        if (error != nullptr) {
            *error = rc != CURLE_OK ? curl_easy_strerror(rc) : "HTTP status " + std::to_string(status);
        }
    }
    return std::nullopt;
}

}  // namespace fakenews::cli

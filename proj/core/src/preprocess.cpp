#include "fakenews/preprocess.hpp"

#include <algorithm>
#include <cctype>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"
#include "fakenews/unicode.hpp"

namespace fakenews {

namespace {

constexpr std::string_view kModule = "preprocess";

bool is_ascii_word(unsigned char c) { return std::isalnum(c) != 0 || c == '_'; }

bool istarts_with(std::string_view text, std::size_t pos, std::string_view prefix) {
    if (text.size() - pos < prefix.size()) {
        return false;
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) != prefix[i]) {
            return false;
        }
    }
    return true;
}

bool is_url_byte(unsigned char c) {
    if (c <= 0x20 || c >= 0x7F) {
        return false;
    }
    switch (c) {
        case '<':
        case '>':
        case '"':
        case '`':
        case '{':
        case '}':
        case '|':
        case '\\':
        case '^':
            return false;
        default:
            return true;
    }
}

// Length of "http://" or "https://" at pos, 0 if neither.
std::size_t scheme_length(std::string_view text, std::size_t pos) {
    if (istarts_with(text, pos, "https://")) {
        return 8;
    }
    if (istarts_with(text, pos, "http://")) {
        return 7;
    }
    return 0;
}

std::size_t trim_url_tail(std::string_view text, std::size_t begin, std::size_t end) {
    while (end > begin) {
        const char last = text[end - 1];
        if (last == ')') {
            const auto body = text.substr(begin, end - begin);
            if (std::count(body.begin(), body.end(), '(') >= std::count(body.begin(), body.end(), ')')) {
                break;
            }
            --end;
            continue;
        }
        if (std::string_view(".,;:!?]'").find(last) == std::string_view::npos) {
            break;
        }
        --end;
    }
    return end;
}

bool inside(const std::vector<TextSpan>& spans, std::size_t pos) {
    return std::any_of(spans.begin(), spans.end(), [pos](const TextSpan& s) { return pos >= s.begin && pos < s.end; });
}

std::string replace_spans(std::string_view text, const std::vector<TextSpan>& spans) {
    std::string out;
    out.reserve(text.size());
    std::size_t cursor = 0;
    for (const auto& span : spans) {
        out.append(text.substr(cursor, span.begin - cursor));
        out.push_back(' ');
        cursor = span.end;
    }
    out.append(text.substr(cursor));
    return out;
}

std::string strip_emoji(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    bool replaced_last = false;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = unicode::next_codepoint(text, pos);
        if (unicode::is_emoji_part(cp)) {
            if (!replaced_last) {
                out.push_back(' ');
            }
            replaced_last = true;
            continue;
        }
        replaced_last = false;
        out.append(text.substr(start, pos - start));
    }
    return out;
}

std::string strip_hashmarks(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '#' && i + 1 < text.size()) {
            const auto next = static_cast<unsigned char>(text[i + 1]);
            if (is_ascii_word(next) || next >= 0x80) {
                continue;
            }
        }
        out.push_back(text[i]);
    }
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

std::string clean_once(std::string_view text, const CleanPolicy& policy) {
    std::string current(text);
    if (policy.remove_emoji) {
        current = strip_emoji(current);
    }
    if (policy.remove_hashmark_only) {
        current = strip_hashmarks(current);
    }
    if (policy.remove_urls) {
        current = replace_spans(current, find_urls(current));
    }
    if (policy.remove_mentions) {
        current = replace_spans(current, find_mentions(current));
    }
    return collapse_whitespace(current);
}

}  // namespace

std::string_view to_string(MissPolicy policy) noexcept { return policy == MissPolicy::UseAsIs ? "use-as-is" : "drop"; }

std::optional<MissPolicy> parse_miss_policy(std::string_view text) {
    const std::string v = io::ascii_lower(io::trim(text));
    if (v == "use-as-is" || v == "useasis" || v == "keep") {
        return MissPolicy::UseAsIs;
    }
    if (v == "drop") {
        return MissPolicy::Drop;
    }
    return std::nullopt;
}

UrlExpansionCache::UrlExpansionCache(std::map<std::string, std::string, std::less<>> entries, MissPolicy miss_policy)
    : entries_(std::move(entries)), miss_policy_(miss_policy) {}

const std::string* UrlExpansionCache::find(std::string_view url) const {
    auto it = entries_.find(url);
    return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> UrlExpansionCache::expand(std::string_view url) const {
    if (const auto* hit = find(url)) {
        return *hit;
    }
    if (miss_policy_ == MissPolicy::UseAsIs) {
        return std::string(url);
    }
    return std::nullopt;
}

UrlExpansionCache parse_url_cache(std::string_view content, MissPolicy miss_policy, const std::string& source) {
    io::ReadOptions options;
    options.skip_comments = true;
    std::map<std::string, std::string, std::less<>> entries;
    for (const auto& rec : io::parse_records(content, options)) {
        if (rec.fields.size() != 2) {
            throw Error(Errc::BadFormat, std::string(kModule),
                        source + " line " + std::to_string(rec.line) + ": expected short_url<TAB>expanded_url");
        }
        const auto key = std::string(io::trim(rec.fields[0]));
        const auto value = std::string(io::trim(rec.fields[1]));
        if (key == "short_url" && value == "expanded_url") {
            continue;
        }
        auto [it, inserted] = entries.emplace(key, value);
        if (!inserted && it->second != value) {
            throw Error(Errc::BadFormat, std::string(kModule),
                        source + " line " + std::to_string(rec.line) + ": conflicting expansions for " + key);
        }
    }
    return UrlExpansionCache(std::move(entries), miss_policy);
}

UrlExpansionCache load_url_cache(const std::filesystem::path& path, MissPolicy miss_policy) {
    return parse_url_cache(io::read_file(path, kModule), miss_policy, path.string());
}

std::string serialize_url_cache(const UrlExpansionCache& cache) {
    std::string out = "short_url\texpanded_url\n";
    for (const auto& [short_url, expanded] : cache.entries()) {
        out += io::escape_tsv(short_url);
        out += '\t';
        out += io::escape_tsv(expanded);
        out += '\n';
    }
    return out;
}

std::vector<TextSpan> find_urls(std::string_view text) {
    std::vector<TextSpan> spans;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t hit = [&] {
            for (std::size_t i = pos; i < text.size(); ++i) {
                if ((text[i] == 'h' || text[i] == 'H') && scheme_length(text, i) != 0) {
                    return i;
                }
            }
            return text.size();
        }();
        if (hit == text.size()) {
            break;
        }
        const std::size_t body = hit + scheme_length(text, hit);
        std::size_t end = body;
        while (end < text.size() && is_url_byte(static_cast<unsigned char>(text[end]))) {
            ++end;
        }
        end = trim_url_tail(text, hit, end);
        if (end > body && text[body] != '/') {
            spans.push_back({hit, end});
            pos = end;
        } else {
            pos = hit + 1;
        }
    }
    return spans;
}

std::vector<TextSpan> find_mentions(std::string_view text) {
    const auto urls = find_urls(text);
    std::vector<TextSpan> spans;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '@' || inside(urls, i)) {
            continue;
        }
        if (i > 0 && is_ascii_word(static_cast<unsigned char>(text[i - 1]))) {
            continue;
        }
        std::size_t end = i + 1;
        while (end < text.size() && is_ascii_word(static_cast<unsigned char>(text[end]))) {
            ++end;
        }
        if (end > i + 1) {
            spans.push_back({i, end});
            i = end - 1;
        }
    }
    return spans;
}

TweetAttributes extract_attributes(std::string_view text, const UrlExpansionCache& cache) {
    TweetAttributes attrs;
    for (const auto& span : find_mentions(text)) {
        attrs.usernames.push_back(io::ascii_lower(text.substr(span.begin + 1, span.end - span.begin - 1)));
    }
    for (const auto& span : find_urls(text)) {
        std::string url(text.substr(span.begin, span.end - span.begin));
        if (auto expanded = cache.expand(url)) {
            if (auto domain = try_normalize_domain(*expanded)) {
                attrs.domains.push_back(std::move(*domain));
            }
        }
        attrs.urls.push_back(std::move(url));
    }
    return attrs;
}

std::optional<std::string> try_normalize_domain(std::string_view url) {
    url = io::trim(url);
    const std::size_t sep = url.find("://");
    if (sep == std::string_view::npos || sep == 0) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < sep; ++i) {
        const auto c = static_cast<unsigned char>(url[i]);
        const bool ok = std::isalpha(c) != 0 || (i > 0 && (std::isdigit(c) != 0 || c == '+' || c == '-' || c == '.'));
        if (!ok) {
            return std::nullopt;
        }
    }
    std::string_view authority = url.substr(sep + 3);
    authority = authority.substr(0, authority.find_first_of("/?#"));
    if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
        authority.remove_prefix(at + 1);
    }

    std::string_view host;
    std::string_view port;
    if (authority.starts_with('[')) {
        const auto close = authority.find(']');
        if (close == std::string_view::npos) {
            return std::nullopt;
        }
        host = authority.substr(0, close + 1);
        const auto rest = authority.substr(close + 1);
        if (!rest.empty()) {
            if (rest.front() != ':') {
                return std::nullopt;
            }
            port = rest.substr(1);
        }
    } else {
        const auto colon = authority.find(':');
        host = authority.substr(0, colon);
        if (colon != std::string_view::npos) {
            port = authority.substr(colon + 1);
        }
    }
    if (!std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
        return std::nullopt;
    }

    std::string normalized = io::ascii_lower(host);
    if (!normalized.starts_with('[')) {
        for (unsigned char c : normalized) {
            if (!(std::isalnum(c) != 0 || c == '-' || c == '.' || c == '_' || c >= 0x80)) {
                return std::nullopt;
            }
        }
        while (!normalized.empty() && normalized.back() == '.') {
            normalized.pop_back();
        }
        while (normalized.starts_with("www.") && normalized.find('.', 4) != std::string::npos) {
            normalized.erase(0, 4);
        }
    }
    if (normalized.empty() || normalized.front() == '.') {
        return std::nullopt;
    }
    return normalized;
}

std::string normalize_domain(std::string_view url) {
    if (auto domain = try_normalize_domain(url)) {
        return std::move(*domain);
    }
    throw Error(Errc::BadUrl, std::string(kModule), "cannot extract a host from '" + std::string(url) + "'");
}

std::string clean_text(std::string_view text, const CleanPolicy& policy) {
    std::string current = collapse_whitespace(text);
    while (true) {
        std::string next = clean_once(current, policy);
        if (next == current) {
            return next;
        }
        current = std::move(next);
    }
}

}  // namespace fakenews

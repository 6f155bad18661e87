#include <gtest/gtest.h>

#include <array>

#include "fakenews/error.hpp"
#include "fakenews/preprocess.hpp"
#include "synthetic.hpp"

using namespace fakenews;

namespace {

std::vector<std::string> spans_of(std::string_view text, const std::vector<TextSpan>& spans) {
    std::vector<std::string> out;
    for (const auto& s : spans) {
        out.emplace_back(text.substr(s.begin, s.end - s.begin));
    }
    return out;
}

// Fragments chosen to collide with each other: stray '#' inside schemes,
// '@' inside urls, emoji sequences, combining marks, punctuation runs.
constexpr std::array kFragments{"word",
                                "@user_1",
                                "@",
                                "#",
                                "#tag",
                                "http://",
                                "https://t.co/x",
                                "h#ttps://a.b",
                                "://",
                                "www.",
                                "\xF0\x9F\x98\x80",
                                "\xE2\x9D\xA4\xEF\xB8\x8F",
                                "\xF0\x9F\x87\xAE\xF0\x9F\x87\xB3",
                                "e\xCC\x81",
                                ".",
                                ",",
                                ")",
                                "(",
                                "a@b.com",
                                "@@x",
                                "##y",
                                "\t",
                                "  ",
                                "caf\xC3\xA9",
                                "http://x.com/@y",
                                "#\xF0\x9F\x98\x80",
                                "_",
                                "\xD0\xBF\xD1\x80"};

std::string random_text(testkit::PortableRng& rng) {
    std::string text;
    const auto n = rng.below(12);
    for (std::size_t i = 0; i < n; ++i) {
        text += kFragments[rng.below(kFragments.size())];
        if (rng.chance(0.5)) {
            text += ' ';
        }
    }
    return text;
}

}  // namespace

TEST(ExtractAttributes, HandleAndExpandedDomain) {
    const UrlExpansionCache cache(
        UrlExpansionCache::Entries{{"https://t.co/e16G2RGdkA", "https://www.cnn.com/2020/04/health/live"}});
    const auto attrs =
        extract_attributes("We're LIVE ... with @drsanjaygupta. Join us ... https://t.co/e16G2RGdkA", cache);
    EXPECT_EQ(attrs.usernames, std::vector<std::string>{"drsanjaygupta"});
    EXPECT_EQ(attrs.urls, std::vector<std::string>{"https://t.co/e16G2RGdkA"});
    EXPECT_EQ(attrs.domains, std::vector<std::string>{"cnn.com"});
}

TEST(ExtractAttributes, NothingToFind) {
    const auto attrs = extract_attributes("no attributes here", {});
    EXPECT_TRUE(attrs.usernames.empty());
    EXPECT_TRUE(attrs.urls.empty());
    EXPECT_TRUE(attrs.domains.empty());
}

TEST(ExtractAttributes, KeepsDuplicatesInOrder) {
    const auto attrs = extract_attributes("see https://news.sky/story/x and https://news.sky/story/y", {});
    EXPECT_EQ(attrs.domains, (std::vector<std::string>{"news.sky", "news.sky"}));
    const auto twice = extract_attributes("@Bob says hi to @alice and @BOB", {});
    EXPECT_EQ(twice.usernames, (std::vector<std::string>{"bob", "alice", "bob"}));
}

TEST(ExtractAttributes, MissPolicy) {
    const std::string text = "read https://t.co/abc";
    EXPECT_EQ(extract_attributes(text, UrlExpansionCache({}, MissPolicy::UseAsIs)).domains,
              std::vector<std::string>{"t.co"});
    EXPECT_TRUE(extract_attributes(text, UrlExpansionCache({}, MissPolicy::Drop)).domains.empty());
    EXPECT_EQ(extract_attributes(text, UrlExpansionCache({}, MissPolicy::Drop)).urls.size(), 1u);
}

TEST(ExtractAttributes, UsernamesIgnoreTheCache) {
    const UrlExpansionCache cache(UrlExpansionCache::Entries{{"@someone", "https://evil.example/"}});
    EXPECT_EQ(extract_attributes("@someone", cache).usernames, std::vector<std::string>{"someone"});
    EXPECT_TRUE(extract_attributes("@someone", cache).domains.empty());
}

TEST(FindUrls, LongestMatchAndTrailingPunctuation) {
    const std::string text = "(see https://a.org/x_(y)), then HTTP://B.com/p?q=1. ok";
    EXPECT_EQ(spans_of(text, find_urls(text)), (std::vector<std::string>{"https://a.org/x_(y)", "HTTP://B.com/p?q=1"}));
    EXPECT_TRUE(find_urls("ftp://nope.org and http:/broken").empty());
}

TEST(FindMentions, SkipsEmailAndUrlInterior) {
    const std::string text = "mail a@b.com or @real_one via https://x.com/@notme and @@twice";
    EXPECT_EQ(spans_of(text, find_mentions(text)), (std::vector<std::string>{"@real_one", "@twice"}));
    EXPECT_TRUE(find_mentions("lonely @ sign").empty());
}

TEST(NormalizeDomain, Examples) {
    EXPECT_EQ(normalize_domain("https://www.theguardian.com/world/x"), "theguardian.com");
    EXPECT_EQ(normalize_domain("http://news.sky/story/123?q=1"), "news.sky");
    EXPECT_EQ(normalize_domain("HTTPS://user:pw@WWW.Example.COM:8443/a#frag"), "example.com");
    EXPECT_EQ(normalize_domain("https://www.com/"), "www.com");
    EXPECT_EQ(normalize_domain("https://example.org./"), "example.org");
    EXPECT_EQ(normalize_domain("http://[::1]:80/"), "[::1]");
    EXPECT_THROW(normalize_domain("not a url"), Error);
    EXPECT_THROW(normalize_domain("https://"), Error);
    EXPECT_THROW(normalize_domain("https://bad host/"), Error);
    EXPECT_FALSE(try_normalize_domain("mailto:x@y.z").has_value());
}

TEST(NormalizeDomain, IdempotentOnItsOwnOutput) {
    testkit::PortableRng rng(11);
    constexpr std::array kHosts{"www.",
                                "WWW.",
                                "news",
                                ".sky",
                                "example",
                                ".co.uk",
                                "-",
                                "_",
                                "b\xC3\xBC"
                                "cher",
                                "1",
                                ":8080",
                                "/path",
                                "?q",
                                "#f",
                                "user@",
                                "."};
    std::size_t checked = 0;
    for (int i = 0; i < 5000; ++i) {
        std::string url = rng.chance(0.5) ? "https://" : "http://";
        const auto n = 1 + rng.below(6);
        for (std::size_t k = 0; k < n; ++k) {
            url += kHosts[rng.below(kHosts.size())];
        }
        const auto once = try_normalize_domain(url);
        if (!once) {
            continue;
        }
        ++checked;
        EXPECT_EQ(normalize_domain("https://" + *once), *once) << url;
    }
    EXPECT_GT(checked, 1000u);
}

TEST(CleanText, Examples) {
    const CleanPolicy all;
    EXPECT_EQ(clean_text("Go @user see https://t.co/x now", all), "Go see now");
    EXPECT_EQ(clean_text("#COVID19 is real", all), "COVID19 is real");
    EXPECT_EQ(clean_text("plain sentence", all), "plain sentence");
    EXPECT_EQ(clean_text("stay safe \xF0\x9F\x98\xB7\xF0\x9F\x92\xAA\xF0\x9F\x8F\xBD!", all), "stay safe !");
    EXPECT_EQ(clean_text("  spaced\t\tout\n", CleanPolicy{false, false, false, false}), "spaced out");
    EXPECT_EQ(clean_text("#tag @u", CleanPolicy{true, false, true, false}), "#tag @u");
}

TEST(CleanText, IdempotentUnderEveryPolicy) {
    testkit::PortableRng rng(5);
    for (int i = 0; i < 4000; ++i) {
        const auto text = random_text(rng);
        const auto mask = rng.below(16);
        const CleanPolicy policy{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0, (mask & 8) != 0};
        const auto once = clean_text(text, policy);
        EXPECT_EQ(clean_text(once, policy), once) << text;
    }
}

TEST(CleanText, RemovesEverythingExtractionFinds) {
    testkit::PortableRng rng(6);
    for (int i = 0; i < 4000; ++i) {
        const auto text = random_text(rng);
        const auto attrs = extract_attributes(clean_text(text, CleanPolicy{}), {});
        EXPECT_TRUE(attrs.usernames.empty()) << text;
        EXPECT_TRUE(attrs.urls.empty()) << text;
    }
}

TEST(UrlCache, ParsesCommentsHeaderAndRejectsConflicts) {
    const auto cache = parse_url_cache(
        "# built by hand\nshort_url\texpanded_url\nhttps://t.co/a\thttps://x.org/\nhttps://t.co/a\thttps://x.org/\n",
        MissPolicy::Drop);
    EXPECT_EQ(cache.size(), 1u);
    EXPECT_EQ(cache.expand("https://t.co/a"), "https://x.org/");
    EXPECT_FALSE(cache.expand("https://t.co/b").has_value());
    EXPECT_THROW(parse_url_cache("a\tb\na\tc\n", MissPolicy::UseAsIs), Error);
    const auto round = parse_url_cache(serialize_url_cache(cache), MissPolicy::Drop);
    EXPECT_EQ(round.entries(), cache.entries());
}

TEST(MissPolicyNames, RoundTrip) {
    for (const auto p : {MissPolicy::UseAsIs, MissPolicy::Drop}) {
        EXPECT_EQ(parse_miss_policy(to_string(p)), p);
    }
}

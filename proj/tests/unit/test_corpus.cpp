#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "fakenews/corpus.hpp"
#include "fakenews/error.hpp"
#include "synthetic.hpp"

using namespace fakenews;

namespace {

Errc error_code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no fakenews::Error thrown";
    return Errc::Io;
}

}  // namespace

TEST(LoadDataset, ParsesLabeledRowsInOrder) {
    const auto d = parse_dataset("id\ttweet\tlabel\n1\thello\treal\n2\tworld\tFAKE\n", true);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.items[0].id, 1u);
    EXPECT_EQ(d.items[0].text, "hello");
    EXPECT_EQ(d.labels(), (std::vector<Label>{Label::Real, Label::Fake}));
}

TEST(LoadDataset, RejectsDuplicateIds) {
    try {
        parse_dataset("id\ttweet\tlabel\n1\ta\treal\n1\tb\tfake\n", true);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DuplicateId);
        EXPECT_EQ(e.item_id(), 1u);
    }
}

TEST(LoadDataset, ReportsBadLabelsAndEmptyText) {
    EXPECT_EQ(error_code_of([] { parse_dataset("id\ttweet\tlabel\n4\tx\tmaybe\n", true); }), Errc::BadLabel);
    try {
        parse_dataset("id\ttweet\tlabel\n9\t   \treal\n", true);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::EmptyText);
        EXPECT_EQ(e.item_id(), 9u);
    }
    EXPECT_EQ(error_code_of([] { parse_dataset("id\ttweet\n1\tx\n", true); }), Errc::BadFormat);
    EXPECT_EQ(error_code_of([] { parse_dataset("id\ttweet\tlabel\n1\tx\treal\n", false); }), Errc::BadFormat);
    EXPECT_EQ(error_code_of([] { parse_dataset("id\ttweet\nx1\thi\n", false); }), Errc::BadFormat);
}

TEST(LoadDataset, UnlabeledFilesHaveNoLabels) {
    const auto d = parse_dataset("id\ttweet\n3\thi\n", false);
    EXPECT_FALSE(d.items[0].label.has_value());
    EXPECT_FALSE(d.fully_labeled());
    EXPECT_EQ(error_code_of([&] { d.labels(); }), Errc::UnlabeledItem);
}

TEST(LoadDataset, AppliesNfc) {
    // "e" + combining acute -> precomposed U+00E9
    const auto d = parse_dataset("id\ttweet\n1\tcafe\xCC\x81\n", false);
    EXPECT_EQ(d.items[0].text, "caf\xC3\xA9");
}

TEST(LoadDataset, AcceptsCsvAndTextColumn) {
    LoadOptions options;
    options.format = FileFormat::Csv;
    const auto d = parse_dataset("id,text,label\n1,\"hello, world\",real\n", true, options);
    EXPECT_EQ(d.items[0].text, "hello, world");
}

TEST(SaveDataset, RoundTripsThroughBothFormats) {
    auto d = testkit::make_corpus({.items = 200, .seed = 3}).all;
    d.items[5].text = "tabs\tand\nnewlines, \"quotes\" too";
    for (const auto format : {FileFormat::Tsv, FileFormat::Csv}) {
        LoadOptions options;
        options.format = format;
        options.split_name = d.split_name;
        const auto back = parse_dataset(serialize_dataset(d, true, format), true, options);
        EXPECT_EQ(back.items, d.items);
    }
    const auto dir = testkit::make_temp_dir("fakenews-corpus");
    save_dataset(d, dir / "train.tsv", true);
    const auto loaded = load_dataset(dir / "train.tsv", true);
    EXPECT_EQ(loaded.items, d.items);
    EXPECT_EQ(loaded.split_name, "train");
    std::filesystem::remove_all(dir);
}

TEST(Summarize, TwoItemsWithoutAttributes) {
    const auto s = summarize(parse_dataset("id\ttweet\tlabel\n1\ta\treal\n2\tb\tfake\n", true), {});
    EXPECT_EQ(s.item_count, 2u);
    EXPECT_EQ(s.real_fraction, 0.5);
    EXPECT_EQ(s.fake_fraction, 0.5);
    EXPECT_EQ(s.unique_usernames, 0u);
    EXPECT_EQ(s.unique_domains, 0u);
}

TEST(Summarize, CountsDistinctAttributes) {
    const UrlExpansionCache cache(UrlExpansionCache::Entries{{"http://x.com/y", "http://x.com/y"}});
    const auto d =
        parse_dataset("id\ttweet\n1\t@a http://x.com/y\n2\t@a http://x.com/y\n3\t@A http://x.com/y\n", false);
    const auto s = summarize(d, cache);
    EXPECT_EQ(s.item_count, 3u);
    EXPECT_FALSE(s.real_fraction.has_value());
    EXPECT_EQ(s.unique_usernames, 1u);
    EXPECT_EQ(s.unique_domains, 1u);
    const auto j = nlohmann::json::parse(s.to_json());
    EXPECT_TRUE(j["real_fraction"].is_null());
}

TEST(Summarize, FractionsSumToOne) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto corpus = testkit::make_corpus({.items = 37 + seed, .real_fraction = 0.3, .seed = seed});
        const auto s = summarize(corpus.all, corpus.cache);
        ASSERT_TRUE(s.real_fraction && s.fake_fraction);
        EXPECT_NEAR(*s.real_fraction + *s.fake_fraction, 1.0, 1e-12);
    }
}

TEST(Summarize, CombinesSplitsWithOverlappingIds) {
    const auto a = parse_dataset("id\ttweet\tlabel\n1\t@x\treal\n", true);
    const auto b = parse_dataset("id\ttweet\tlabel\n1\t@y\tfake\n", true);
    const std::vector<Dataset> both{a, b};
    const auto s = summarize(std::span<const Dataset>(both), {});
    EXPECT_EQ(s.item_count, 2u);
    EXPECT_EQ(s.unique_usernames, 2u);
    EXPECT_EQ(s.real_fraction, 0.5);
}

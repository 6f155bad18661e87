#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"
#include "fakenews/label.hpp"
#include "synthetic.hpp"

using namespace fakenews;

TEST(Label, ParsesCaseInsensitively) {
    EXPECT_EQ(parse_label("REAL"), Label::Real);
    EXPECT_EQ(parse_label(" Fake "), Label::Fake);
    EXPECT_FALSE(try_parse_label("true").has_value());
    EXPECT_THROW(parse_label("maybe"), Error);
    EXPECT_EQ(to_string(Label::Real), "real");
    EXPECT_EQ(to_string(Label::Fake), "fake");
    EXPECT_EQ(opposite(Label::Real), Label::Fake);
}

TEST(Io, TsvEscapingRoundTrips) {
    const std::string nasty = "tab\there\nnew line \\ back\rslash";
    const auto escaped = io::escape_tsv(nasty);
    EXPECT_EQ(escaped.find('\t'), std::string::npos);
    EXPECT_EQ(escaped.find('\n'), std::string::npos);
    EXPECT_EQ(io::unescape_tsv(escaped), nasty);
}

TEST(Io, CsvQuotedFieldsMayHoldSeparatorsAndNewlines) {
    const auto records = io::parse_records("id,text\n1,\"a, \"\"b\"\"\nc\"\n", {io::Delimiter::Comma, false});
    ASSERT_EQ(records.size(), 2u);
    ASSERT_EQ(records[1].fields.size(), 2u);
    EXPECT_EQ(records[1].fields[1], "a, \"b\"\nc");
    EXPECT_EQ(records[1].line, 2u);
}

TEST(Io, TableRejectsRaggedRows) {
    EXPECT_THROW(io::Table::parse("a\tb\n1\n", "t", {}, "test"), Error);
    const auto table = io::Table::parse("\xEF\xBB\xBFId\tTweet\n1\tx\n", "t", {}, "test");
    EXPECT_EQ(table.column("id"), 0u);
    EXPECT_EQ(table.column("TWEET"), 1u);
    EXPECT_THROW(table.require_column("label"), Error);
}

TEST(Io, NumberParsing) {
    EXPECT_EQ(io::parse_u64("42"), 42u);
    EXPECT_FALSE(io::parse_u64("-1").has_value());
    EXPECT_FALSE(io::parse_u64("4x").has_value());
    EXPECT_EQ(io::parse_double("0.25"), 0.25);
    EXPECT_FALSE(io::parse_double("").has_value());
    EXPECT_EQ(io::parse_bool("Yes"), true);
    EXPECT_EQ(io::parse_bool("off"), false);
}

TEST(Io, ShortestDoubleFormattingRoundTrips) {
    testkit::PortableRng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const double x = rng.uniform() * std::pow(10.0, static_cast<int>(rng.below(12)) - 6);
        EXPECT_EQ(io::parse_double(io::format_double(x)), x);
    }
    EXPECT_EQ(io::format_double(0.88), "0.88");
    EXPECT_EQ(io::format_fixed(0.98765, 4), "0.9877");
}

TEST(Io, AtomicWriteReplacesContent) {
    const auto dir = testkit::make_temp_dir("fakenews-io");
    const auto path = dir / "out.txt";
    io::write_file_atomic(path, "first");
    io::write_file_atomic(path, "second");
    EXPECT_EQ(io::read_file(path, "test"), "second");
    EXPECT_FALSE(std::filesystem::exists(dir / "out.txt.tmp"));
    EXPECT_THROW(io::read_file(dir / "missing", "test"), Error);
    std::filesystem::remove_all(dir);
}

TEST(Io, Fnv1aMatchesKnownVectors) {
    EXPECT_EQ(io::fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(io::fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(ErrorType, MessageNamesModuleAndItem) {
    const Error e(Errc::DuplicateId, "corpus", "repeated id", 7);
    const std::string what = e.what();
    EXPECT_NE(what.find("corpus"), std::string::npos);
    EXPECT_NE(what.find("7"), std::string::npos);
    EXPECT_EQ(e.code(), Errc::DuplicateId);
    EXPECT_EQ(e.item_id(), 7u);
}

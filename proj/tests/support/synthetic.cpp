#include "synthetic.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <map>

namespace fakenews::testkit {

namespace {

constexpr std::array kFiller{"the",  "a",      "report", "says",   "people", "today",  "new",    "health",
                             "city", "update", "week",   "local",  "team",   "data",   "number", "state",
                             "case", "school", "public", "office", "time",   "family", "news",   "world"};
constexpr std::array kRealCues{"confirmed", "official", "ministry",  "guidelines", "vaccination",
                               "tested",    "hospital", "statement", "recovered",  "surveillance"};
constexpr std::array kFakeCues{"miracle", "secret",   "hoax",   "exposed", "cure",
                               "banned",  "shocking", "garlic", "5g",      "conspiracy"};

std::string pick(PortableRng& rng, const auto& words) { return words[rng.below(words.size())]; }

}  // namespace

SyntheticCorpus make_corpus(const SyntheticSpec& spec) {
    PortableRng rng(spec.seed);
    SyntheticCorpus corpus;
    corpus.all.split_name = "synthetic";
    std::map<std::string, std::string, std::less<>> cache;
    for (std::size_t d = 0; d < spec.real_domains; ++d) {
        cache.emplace("https://t.co/real" + std::to_string(d),
                      "https://www.trusted" + std::to_string(d) + ".org/article/" + std::to_string(d));
    }

    for (std::size_t i = 0; i < spec.items; ++i) {
        const Label label = rng.chance(spec.real_fraction) ? Label::Real : Label::Fake;
        std::string text;
        for (std::size_t w = 0; w < spec.words_per_item; ++w) {
            std::string word;
            if (rng.chance(spec.cue_rate)) {
                const bool truthful = rng.chance(spec.cue_accuracy);
                const bool real_cue = (label == Label::Real) == truthful;
                word = real_cue ? pick(rng, kRealCues) : pick(rng, kFakeCues);
            } else {
                word = pick(rng, kFiller);
            }
            text += (text.empty() ? "" : " ") + word;
        }
        const bool planted = rng.chance(spec.attribute_coverage);
        if (planted) {
            if (label == Label::Real) {
                text += " https://t.co/real" + std::to_string(rng.below(spec.real_domains));
            } else {
                text += " @fakehandle" + std::to_string(rng.below(spec.fake_handles));
            }
        }
        if (rng.chance(spec.noise_handle_rate)) {
            text = "@newsdesk " + text;
        }
        corpus.all.items.push_back({i + 1, text, label});
        corpus.has_planted_attribute.push_back(planted);
    }
    corpus.cache = UrlExpansionCache(std::move(cache));
    return corpus;
}

Splits split(const Dataset& all, double train_fraction, double validation_fraction) {
    const auto n = all.items.size();
    const auto a = static_cast<std::size_t>(static_cast<double>(n) * train_fraction);
    const auto b = a + static_cast<std::size_t>(static_cast<double>(n) * validation_fraction);
    const auto slice = [&](std::size_t from, std::size_t to, const char* name) {
        Dataset d;
        d.split_name = name;
        d.items.assign(all.items.begin() + static_cast<std::ptrdiff_t>(from),
                       all.items.begin() + static_cast<std::ptrdiff_t>(to));
        return d;
    };
    return {slice(0, a, "train"), slice(a, b, "validation"), slice(b, n, "test")};
}

Dataset make_plain_corpus(std::size_t items, std::uint64_t seed) {
    SyntheticSpec spec;
    spec.items = items;
    spec.seed = seed;
    spec.attribute_coverage = 0.0;
    spec.noise_handle_rate = 0.0;
    return make_corpus(spec).all;
}

std::filesystem::path make_temp_dir(const std::string& prefix) {
    static std::atomic<unsigned> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    auto dir = std::filesystem::temp_directory_path() /
               (prefix + "-" + std::to_string(stamp) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace fakenews::testkit

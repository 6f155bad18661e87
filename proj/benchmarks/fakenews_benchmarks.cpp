#include <map>

#include <benchmark/benchmark.h>

#include "fakenews/attribute_stats.hpp"
#include "fakenews/baseline_model.hpp"
#include "fakenews/ensemble.hpp"
#include "fakenews/heuristic.hpp"
#include "fakenews/preprocess.hpp"
#include "synthetic.hpp"

using namespace fakenews;

namespace {

const testkit::SyntheticCorpus& corpus(std::size_t items) {
    static std::map<std::size_t, testkit::SyntheticCorpus> built;
    auto it = built.find(items);
    if (it == built.end()) {
        it = built.emplace(items, testkit::make_corpus({.items = items})).first;
    }
    return it->second;
}

PredictionMatrix matrix_for(const Dataset& d, std::size_t models) {
    testkit::PortableRng rng(99);
    PredictionMatrix m;
    for (std::size_t k = 0; k < models; ++k) {
        std::vector<PredictionVector> preds;
        preds.reserve(d.size());
        for (const auto& item : d.items) {
            const double p = rng.uniform();
            preds.push_back({item.id, p, 1.0 - p, ""});
        }
        m.add_model("m" + std::to_string(k), preds);
    }
    return m;
}

void BM_SoftVote(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<PredictionVector> row;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = static_cast<double>(i % 10) / 10.0;
        row.push_back({1, p, 1.0 - p, ""});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(soft_vote(row));
    }
}
BENCHMARK(BM_SoftVote)->Arg(4)->Arg(16);

void BM_ExtractAttributes(benchmark::State& state) {
    const auto& c = corpus(2000);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_attributes(c.all.items[i++ % c.all.size()].text, c.cache));
    }
}
BENCHMARK(BM_ExtractAttributes);

void BM_BuildTable(benchmark::State& state) {
    const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_table(c.all, AttributeKind::Domain, c.cache));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildTable)->Arg(1000)->Arg(10000);

void BM_DecideBatch(benchmark::State& state) {
    const auto& c = corpus(10000);
    const auto parts = testkit::split(c.all, 0.7, 0.0);
    const auto users = build_table(parts.train, AttributeKind::Username, c.cache);
    const auto domains = build_table(parts.train, AttributeKind::Domain, c.cache);
    const auto m = matrix_for(parts.test, 4);
    const BatchOptions options{.jobs = static_cast<unsigned>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(decide_batch(parts.test, m, users, domains, c.cache, {}, options));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(parts.test.size()));
}
BENCHMARK(BM_DecideBatch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BaselinePredict(benchmark::State& state) {
    const auto& c = corpus(10000);
    const auto model = BowModel::train(c.all, CleanPolicy{});
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& item = c.all.items[i++ % c.all.size()];
        benchmark::DoNotOptimize(model.predict(item.text, item.id));
    }
}
BENCHMARK(BM_BaselinePredict);

}  // namespace

BENCHMARK_MAIN();

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fakenews/attribute_stats.hpp"
#include "fakenews/corpus.hpp"
#include "fakenews/ensemble.hpp"
#include "fakenews/eval.hpp"
#include "fakenews/heuristic.hpp"
#include "fakenews/preprocess.hpp"

namespace fakenews::cli {

// Bad invocation: missing file, malformed flag, unknown config key. Exit 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One run of the pipeline, stored as a sectioned key = value file:
//
//   [data]
//   train = train.tsv
//   test = test.tsv
//
// Relative paths resolve against the directory holding the config file.
// Every key is always written back, so parse(to_ini()) reproduces the config.
struct RunConfig {
    std::filesystem::path base_dir;  // not serialized

    // [data]
    std::string train;
    std::string validation;
    std::string test;
    std::string cache;
    FileFormat format = FileFormat::Tsv;
    MissPolicy cache_miss = MissPolicy::UseAsIs;

    // [preprocess]
    CleanPolicy clean;

    // [model]
    bool baseline = true;
    double alpha = 1.0;
    double baseline_train_fraction = 1.0;
    std::vector<std::string> validation_predictions;  // "path" or "name=path"
    std::vector<std::string> test_predictions;

    // [ensemble]
    VotingScheme scheme = VotingScheme::Soft;
    Label tie = Label::Real;

    // [heuristic]
    HeuristicConfig heuristic;
    CountingMode counting = CountingMode::PerOccurrence;
    bool tune = false;
    std::vector<double> tune_grid = default_threshold_grid();
    TuneObjective objective = TuneObjective::Accuracy;

    // [ablation]
    std::vector<std::vector<AttributeKind>> orderings = default_orderings();

    // [eval]
    Averaging averaging = Averaging::Weighted;

    // [output]
    std::string output_dir = "out";

    // [run]
    std::uint64_t seed = 0;  // reserved; every stage is deterministic
    unsigned jobs = 1;

    static RunConfig parse(std::string_view text, const std::filesystem::path& base_dir = {});
    static RunConfig load(const std::filesystem::path& path);
    std::string to_ini() const;
    /// to_ini() without the output directory and the worker count, which do
    /// not change any result.
    std::string results_ini() const;

    /// Sets "section.key" from its text form; throws UsageError on unknown
    /// keys or unparsable values.
    void set(std::string_view dotted_key, std::string_view value);

    std::filesystem::path resolve(const std::string& path) const;
    std::vector<PredictionSource> prediction_sources(const std::vector<std::string>& entries) const;

    /// Every referenced input file must exist.
    void check_paths() const;

    /// Stable digest of results_ini(), stamped into output headers.
    std::string hash() const;

    bool operator==(const RunConfig& other) const;
};

/// "[name=]path" -> PredictionSource (name empty when omitted).
PredictionSource parse_prediction_entry(std::string_view entry, const std::filesystem::path& base_dir);

}  // namespace fakenews::cli

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fakenews/eval.hpp"
#include "fakenews/heuristic.hpp"
#include "run_config.hpp"

namespace fakenews::cli {

/// "# fakenews <artifact> config=<hash>\n"
std::string preamble(std::string_view artifact, std::string_view config_hash);

/// Loads a split, treating it as labeled when its header has a label column.
Dataset load_split(const std::filesystem::path& path, FileFormat format, const std::string& split_name = {});

UrlExpansionCache load_cache_or_empty(const std::string& path, MissPolicy miss_policy);

/// The first ceil(fraction * n) items, in file order.
Dataset head_fraction(const Dataset& dataset, double fraction);

struct PipelineResult {
    std::vector<std::string> model_names;
    std::vector<EnsembleResult> ensemble;
    std::vector<HeuristicDecision> decisions;
    HeuristicConfig heuristic;  // with the threshold actually used
    std::optional<TuneResult> tuning;
    std::optional<EvalReport> pre;  // labeled test split only
    std::optional<EvalReport> post;
    std::size_t flipped = 0;
    std::vector<std::filesystem::path> written;
};

PipelineResult run_pipeline(const RunConfig& config, std::ostream& log);

struct AblateResult {
    std::vector<AblationRow> rows;
    std::vector<std::filesystem::path> written;
};

AblateResult run_ablate(const RunConfig& config, std::ostream& log);

std::string format_report(const RunConfig& config, const PipelineResult& result);
std::string report_json(const RunConfig& config, const PipelineResult& result);

}  // namespace fakenews::cli

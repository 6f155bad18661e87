#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakenews/heuristic.hpp"
#include "fakenews/label.hpp"

namespace fakenews {

enum class Averaging { Weighted, Macro };

std::string_view to_string(Averaging averaging) noexcept;
std::optional<Averaging> parse_averaging(std::string_view text);

struct EvalReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::array<std::array<std::size_t, 2>, 2> confusion{};  // [gold][predicted], Real = 0
    std::size_t n_items = 0;
    Averaging averaging = Averaging::Weighted;

    std::string to_text() const;
    std::string to_json() const;
};

/// Per-class precision/recall/F1 averaged by gold support (Weighted) or
/// uniformly over the classes that occur (Macro). A 0/0 ratio counts as 0.
EvalReport evaluate(std::span<const Label> gold, std::span<const Label> predicted,
                    Averaging averaging = Averaging::Weighted);

enum class TuneObjective { Accuracy, F1 };

std::string_view to_string(TuneObjective objective) noexcept;
std::optional<TuneObjective> parse_tune_objective(std::string_view text);

struct ThresholdScore {
    double threshold = 0.0;
    double score = 0.0;
};

struct TuneResult {
    double best_threshold = 0.0;
    double best_score = 0.0;
    std::vector<ThresholdScore> scores;  // grid order
};

/// 0.50, 0.55, ..., 0.95
std::vector<double> default_threshold_grid();

/// Picks the grid value with the best validation score; equal scores go to
/// the larger threshold. `base` supplies priority and use_threshold.
TuneResult tune_threshold(const DecisionInputs& validation, std::span<const double> grid, const HeuristicConfig& base,
                          TuneObjective objective = TuneObjective::Accuracy, Averaging averaging = Averaging::Weighted);

struct AblationRow {
    std::vector<AttributeKind> priority;
    std::string priority_description;
    double threshold = 0.0;  // the value used by the "with threshold" cells
    double with_threshold_val_f1 = 0.0;
    double with_threshold_test_f1 = 0.0;
    double without_threshold_val_f1 = 0.0;
    double without_threshold_test_f1 = 0.0;
};

struct AblationOptions {
    double threshold = 0.88;
    std::vector<double> tune_grid;  // non-empty: tune per ordering on validation
    TuneObjective objective = TuneObjective::Accuracy;
    Averaging averaging = Averaging::Weighted;
};

/// {username}, {domain}, {domain, username}, {username, domain}
std::vector<std::vector<AttributeKind>> default_orderings();

/// "{username, domain, ensemble model pred}"
std::string describe_priority(std::span<const AttributeKind> priority);

std::vector<AblationRow> run_ablation(const DecisionInputs& validation, const DecisionInputs& test,
                                      std::span<const std::vector<AttributeKind>> orderings,
                                      const AblationOptions& options = {});

std::string format_ablation(std::span<const AblationRow> rows);
std::string ablation_to_json(std::span<const AblationRow> rows);

}  // namespace fakenews

#include "fakenews/eval.hpp"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"

namespace fakenews {

namespace {

constexpr std::string_view kModule = "eval";

using json = nlohmann::ordered_json;

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double score_of(const EvalReport& report, TuneObjective objective) {
    return objective == TuneObjective::Accuracy ? report.accuracy : report.f1;
}

std::string pad_right(std::string text, std::size_t width) {
    if (text.size() < width) {
        text.append(width - text.size(), ' ');
    }
    return text;
}

}  // namespace

std::string_view to_string(Averaging averaging) noexcept {
    return averaging == Averaging::Weighted ? "weighted" : "macro";
}

std::optional<Averaging> parse_averaging(std::string_view text) {
    const std::string v = io::ascii_lower(io::trim(text));
    if (v == "weighted") {
        return Averaging::Weighted;
    }
    if (v == "macro") {
        return Averaging::Macro;
    }
    return std::nullopt;
}

std::string_view to_string(TuneObjective objective) noexcept {
    return objective == TuneObjective::Accuracy ? "accuracy" : "f1";
}

std::optional<TuneObjective> parse_tune_objective(std::string_view text) {
    const std::string v = io::ascii_lower(io::trim(text));
    if (v == "accuracy") {
        return TuneObjective::Accuracy;
    }
    if (v == "f1") {
        return TuneObjective::F1;
    }
    return std::nullopt;
}

EvalReport evaluate(std::span<const Label> gold, std::span<const Label> predicted, Averaging averaging) {
    if (gold.size() != predicted.size()) {
        throw Error(
            Errc::LengthMismatch, std::string(kModule),
            std::to_string(gold.size()) + " gold labels vs " + std::to_string(predicted.size()) + " predictions");
    }
    if (gold.empty()) {
        throw Error(Errc::EmptyInput, std::string(kModule), "nothing to evaluate");
    }
    EvalReport report;
    report.averaging = averaging;
    report.n_items = gold.size();
    for (std::size_t i = 0; i < gold.size(); ++i) {
        ++report.confusion[index_of(gold[i])][index_of(predicted[i])];
    }

    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t classes_seen = 0;
    for (std::size_t c = 0; c < 2; ++c) {
        const std::size_t tp = report.confusion[c][c];
        const std::size_t gold_c = report.confusion[c][0] + report.confusion[c][1];
        const std::size_t pred_c = report.confusion[0][c] + report.confusion[1][c];
        const double p = ratio(tp, pred_c);
        const double r = ratio(tp, gold_c);
        const double f = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        if (averaging == Averaging::Weighted) {
            const double w = ratio(gold_c, report.n_items);
            precision += w * p;
            recall += w * r;
            f1 += w * f;
        } else if (gold_c + pred_c > 0) {
            precision += p;
            recall += r;
            f1 += f;
            ++classes_seen;
        }
    }
    if (averaging == Averaging::Macro) {
        const auto k = static_cast<double>(classes_seen);
        precision /= k;
        recall /= k;
        f1 /= k;
    }
    report.accuracy = ratio(report.confusion[0][0] + report.confusion[1][1], report.n_items);
    report.precision = precision;
    report.recall = recall;
    report.f1 = f1;
    return report;
}

std::string EvalReport::to_text() const {
    std::string out;
    out += "n_items    " + std::to_string(n_items) + "\n";
    out += "averaging  " + std::string(to_string(averaging)) + "\n";
    out += "accuracy   " + io::format_fixed(accuracy, 4) + "\n";
    out += "precision  " + io::format_fixed(precision, 4) + "\n";
    out += "recall     " + io::format_fixed(recall, 4) + "\n";
    out += "f1         " + io::format_fixed(f1, 4) + "\n";
    out += "confusion  (rows gold, cols predicted)\n";
    out += "           real     fake\n";
    char line[96];
    std::snprintf(line, sizeof(line), "  real     %-8zu %-8zu\n", confusion[0][0], confusion[0][1]);
    out += line;
    std::snprintf(line, sizeof(line), "  fake     %-8zu %-8zu\n", confusion[1][0], confusion[1][1]);
    out += line;
    return out;
}

std::string EvalReport::to_json() const {
    json j;
    j["n_items"] = n_items;
    j["averaging"] = to_string(averaging);
    j["accuracy"] = accuracy;
    j["precision"] = precision;
    j["recall"] = recall;
    j["f1"] = f1;
    j["confusion"] = {{confusion[0][0], confusion[0][1]}, {confusion[1][0], confusion[1][1]}};
    return j.dump(2) + "\n";
}

std::vector<double> default_threshold_grid() {
    std::vector<double> grid;
    for (int pct = 50; pct <= 95; pct += 5) {
        grid.push_back(pct / 100.0);
    }
    return grid;
}

TuneResult tune_threshold(const DecisionInputs& validation, std::span<const double> grid, const HeuristicConfig& base,
                          TuneObjective objective, Averaging averaging) {
    if (grid.empty()) {
        throw Error(Errc::EmptyInput, std::string(kModule), "threshold grid is empty");
    }
    const auto gold = validation.gold_labels();
    TuneResult result;
    bool first = true;
    for (const double threshold : grid) {
        HeuristicConfig config = base;
        config.threshold = threshold;
        const auto decisions = decide_all(validation, config);
        const double score = score_of(evaluate(gold, labels_of(decisions), averaging), objective);
        result.scores.push_back({threshold, score});
        if (first || score > result.best_score || (score == result.best_score && threshold > result.best_threshold)) {
            result.best_threshold = threshold;
            result.best_score = score;
            first = false;
        }
    }
    return result;
}

std::vector<std::vector<AttributeKind>> default_orderings() {
    using K = AttributeKind;
    return {{K::Username}, {K::Domain}, {K::Domain, K::Username}, {K::Username, K::Domain}};
}

std::string describe_priority(std::span<const AttributeKind> priority) {
    std::string out = "{";
    for (const auto kind : priority) {
        out += to_string(kind);
        out += ", ";
    }
    out += "ensemble model pred}";
    return out;
}

std::vector<AblationRow> run_ablation(const DecisionInputs& validation, const DecisionInputs& test,
                                      std::span<const std::vector<AttributeKind>> orderings,
                                      const AblationOptions& options) {
    if (orderings.empty()) {
        return {};
    }
    const auto val_gold = validation.gold_labels();
    const auto test_gold = test.gold_labels();
    const auto f1_on = [&](const DecisionInputs& inputs, const std::vector<Label>& gold, const HeuristicConfig& cfg) {
        return evaluate(gold, labels_of(decide_all(inputs, cfg)), options.averaging).f1;
    };

    std::vector<AblationRow> rows;
    rows.reserve(orderings.size());
    for (const auto& priority : orderings) {
        HeuristicConfig config;
        config.priority = priority;
        config.threshold = options.threshold;
        config.use_threshold = true;
        config.validate();
        if (!options.tune_grid.empty()) {
            config.threshold =
                tune_threshold(validation, options.tune_grid, config, options.objective, options.averaging)
                    .best_threshold;
        }

        AblationRow row;
        row.priority = priority;
        row.priority_description = describe_priority(priority);
        row.threshold = config.threshold;
        row.with_threshold_val_f1 = f1_on(validation, val_gold, config);
        row.with_threshold_test_f1 = f1_on(test, test_gold, config);
        config.use_threshold = false;
        row.without_threshold_val_f1 = f1_on(validation, val_gold, config);
        row.without_threshold_test_f1 = f1_on(test, test_gold, config);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_ablation(std::span<const AblationRow> rows) {
    std::size_t width = std::string_view("attributes (descending priority)").size();
    for (const auto& row : rows) {
        width = std::max(width, row.priority_description.size());
    }
    width += 2;
    std::string out;
    out += pad_right("", width) + "with threshold            without threshold\n";
    out += pad_right("attributes (descending priority)", width) + "thr    val F1   test F1    val F1   test F1\n";
    for (const auto& row : rows) {
        out += pad_right(row.priority_description, width);
        out += io::format_fixed(row.threshold, 2) + "   ";
        out += io::format_fixed(row.with_threshold_val_f1, 4) + "   ";
        out += io::format_fixed(row.with_threshold_test_f1, 4) + "    ";
        out += io::format_fixed(row.without_threshold_val_f1, 4) + "   ";
        out += io::format_fixed(row.without_threshold_test_f1, 4) + "\n";
    }
    return out;
}

std::string ablation_to_json(std::span<const AblationRow> rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json priority = json::array();
        for (const auto kind : row.priority) {
            priority.push_back(to_string(kind));
        }
        out.push_back(
            {{"priority", priority},
             {"description", row.priority_description},
             {"threshold", row.threshold},
             {"with_threshold",
              {{"validation_f1", row.with_threshold_val_f1}, {"test_f1", row.with_threshold_test_f1}}},
             {"without_threshold",
              {{"validation_f1", row.without_threshold_val_f1}, {"test_f1", row.without_threshold_test_f1}}}});
    }
    return out.dump(2) + "\n";
}

}  // namespace fakenews

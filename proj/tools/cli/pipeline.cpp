#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"

namespace fakenews::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Splits {
    UrlExpansionCache cache;
    Dataset train;
    std::optional<Dataset> validation;
    Dataset test;
};

Splits load_splits(const RunConfig& config) {
    config.check_paths();
    Splits splits;
    splits.cache =
        load_cache_or_empty(config.cache.empty() ? "" : config.resolve(config.cache).string(), config.cache_miss);
    splits.train = load_split(config.resolve(config.train), config.format, "train");
    if (!splits.train.fully_labeled()) {
        throw Error(Errc::UnlabeledItem, "cli", "training split " + config.train + " needs a label column");
    }
    if (!config.validation.empty()) {
        splits.validation = load_split(config.resolve(config.validation), config.format, "validation");
    }
    splits.test = load_split(config.resolve(config.test), config.format, "test");
    return splits;
}

struct Models {
    std::optional<BowModel> baseline;
};

Models train_models(const RunConfig& config, const Splits& splits) {
    Models models;
    if (config.baseline) {
        models.baseline =
            BowModel::train(head_fraction(splits.train, config.baseline_train_fraction), config.clean, config.alpha);
    }
    return models;
}

void require_same_ids(const Dataset& split, const std::string& split_path,
                      const std::vector<PredictionVector>& predictions, const std::string& source) {
    std::set<std::uint64_t> split_ids;
    for (const auto& item : split.items) {
        split_ids.insert(item.id);
    }
    std::set<std::uint64_t> prediction_ids;
    for (const auto& p : predictions) {
        prediction_ids.insert(p.item_id);
    }
    if (split_ids == prediction_ids) {
        return;
    }
    std::vector<std::uint64_t> only_split;
    std::ranges::set_difference(split_ids, prediction_ids, std::back_inserter(only_split));
    std::vector<std::uint64_t> only_predictions;
    std::ranges::set_difference(prediction_ids, split_ids, std::back_inserter(only_predictions));
    const auto witness = only_split.empty() ? only_predictions.front() : only_split.front();
    throw Error(Errc::IdSetMismatch, "cli",
                split_path + " and " + source + " cover different ids (" + std::to_string(only_split.size()) +
                    " only in the split, " + std::to_string(only_predictions.size()) + " only in the predictions)",
                witness);
}

PredictionMatrix build_matrix(const RunConfig& config, const Models& models, const Dataset& split,
                              const std::string& split_path, const std::vector<std::string>& external,
                              const std::string& hash, const std::filesystem::path& out_dir,
                              std::vector<std::filesystem::path>& written) {
    PredictionMatrix matrix;
    if (models.baseline) {
        const auto predictions = models.baseline->predict_all(split, config.jobs);
        const auto path = out_dir / ("predictions." + models.baseline->name() + "." + split.split_name + ".tsv");
        io::write_file_atomic(path, serialize_predictions(predictions, preamble("predictions", hash)));
        written.push_back(path);
        matrix.add_model(models.baseline->name(), predictions, split.split_name + " split");
    }
    for (const auto& source : config.prediction_sources(external)) {
        const auto predictions = load_prediction_file(source);
        const auto name = source.model_name.empty() ? source.path.stem().string() : source.model_name;
        require_same_ids(split, split_path, predictions, source.path.string());
        matrix.add_model(name, predictions, source.path.string());
    }
    if (matrix.model_count() == 0) {
        throw Error(Errc::NoModels, "cli", "no models for the " + split.split_name + " split");
    }
    return matrix;
}

BatchOptions batch_options(const RunConfig& config) { return BatchOptions{config.scheme, config.tie, config.jobs}; }

std::filesystem::path output_dir(const RunConfig& config) {
    const auto dir = config.resolve(config.output_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

struct Tables {
    AttributeStatsTable usernames{AttributeKind::Username};
    AttributeStatsTable domains{AttributeKind::Domain};
};

Tables build_tables(const RunConfig& config, const Splits& splits, const std::string& hash,
                    const std::filesystem::path& out_dir, std::vector<std::filesystem::path>& written) {
    Tables tables;
    tables.usernames = build_table(splits.train, AttributeKind::Username, splits.cache, config.counting);
    tables.domains = build_table(splits.train, AttributeKind::Domain, splits.cache, config.counting);
    for (const auto* table : {&tables.usernames, &tables.domains}) {
        const auto path = out_dir / (std::string(to_string(table->kind())) + "s.tsv");
        save_table(*table, path, preamble(std::string(to_string(table->kind())) + " table", hash));
        written.push_back(path);
    }
    return tables;
}

void require_matching_models(const PredictionMatrix& validation, const PredictionMatrix& test) {
    if (validation.model_names() != test.model_names()) {
        throw UsageError(
            "model.validation_predictions must list the same models, in the same order, as "
            "model.test_predictions");
    }
}

ordered_json parse_json(const std::string& text) { return ordered_json::parse(text); }

}  // namespace

std::string preamble(std::string_view artifact, std::string_view config_hash) {
    return "# fakenews " + std::string(artifact) + " config=" + std::string(config_hash) + "\n";
}

Dataset load_split(const std::filesystem::path& path, FileFormat format, const std::string& split_name) {
    if (!std::filesystem::exists(path)) {
        throw UsageError("file not found: " + path.string());
    }
    const io::ReadOptions read{format == FileFormat::Csv ? io::Delimiter::Comma : io::Delimiter::Tab, false};
    const auto content = io::read_file(path, "corpus");
    const auto table = io::Table::parse(content, path.string(), read, "corpus");
    const bool labeled = table.column("label").has_value();
    LoadOptions options{format, split_name.empty() ? path.stem().string() : split_name};
    return parse_dataset(content, labeled, options, path.string());
}

UrlExpansionCache load_cache_or_empty(const std::string& path, MissPolicy miss_policy) {
    if (path.empty()) {
        return UrlExpansionCache({}, miss_policy);
    }
    if (!std::filesystem::exists(path)) {
        throw UsageError("cache file not found: " + path);
    }
    return load_url_cache(path, miss_policy);
}

Dataset head_fraction(const Dataset& dataset, double fraction) {
    const auto n = dataset.items.size();
    auto keep = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    keep = std::clamp<std::size_t>(keep, n == 0 ? 0 : 1, n);
    Dataset out;
    out.split_name = dataset.split_name;
    out.items.assign(dataset.items.begin(), dataset.items.begin() + static_cast<std::ptrdiff_t>(keep));
    return out;
}

PipelineResult run_pipeline(const RunConfig& config, std::ostream& log) {
    const auto hash = config.hash();
    const auto splits = load_splits(config);
    const auto out_dir = output_dir(config);
    PipelineResult result;

    const auto tables = build_tables(config, splits, hash, out_dir, result.written);
    log << "tables: " << tables.usernames.size() << " usernames, " << tables.domains.size() << " domains\n";

    const auto models = train_models(config, splits);
    if (models.baseline) {
        const auto path = out_dir / "baseline.json";
        io::write_file_atomic(path, models.baseline->to_json());
        result.written.push_back(path);
        log << "baseline: " << models.baseline->vocabulary_size() << " tokens\n";
    }

    const auto test_matrix =
        build_matrix(config, models, splits.test, config.test, config.test_predictions, hash, out_dir, result.written);
    result.model_names = test_matrix.model_names();

    result.heuristic = config.heuristic;
    if (config.tune) {
        if (!splits.validation) {
            throw UsageError("heuristic.tune needs data.validation");
        }
        const auto val_matrix = build_matrix(config, models, *splits.validation, config.validation,
                                             config.validation_predictions, hash, out_dir, result.written);
        require_matching_models(val_matrix, test_matrix);
        const auto val_inputs = prepare_decisions(*splits.validation, val_matrix, tables.usernames, tables.domains,
                                                  splits.cache, batch_options(config));
        result.tuning =
            tune_threshold(val_inputs, config.tune_grid, config.heuristic, config.objective, config.averaging);
        result.heuristic.threshold = result.tuning->best_threshold;
        log << "tuned threshold: " << io::format_double(result.heuristic.threshold) << "\n";
    }

    const auto inputs = prepare_decisions(splits.test, test_matrix, tables.usernames, tables.domains, splits.cache,
                                          batch_options(config));
    result.ensemble = inputs.ensemble;
    result.decisions = decide_all(inputs, result.heuristic);
    for (std::size_t i = 0; i < result.decisions.size(); ++i) {
        result.flipped += result.decisions[i].label != result.ensemble[i].label ? 1 : 0;
    }

    const auto ensemble_path = out_dir / "ensemble.test.tsv";
    io::write_file_atomic(ensemble_path, serialize_ensemble(result.ensemble, preamble("ensemble", hash)));
    const auto decisions_path = out_dir / "decisions.test.tsv";
    io::write_file_atomic(decisions_path, serialize_decisions(result.decisions, preamble("decisions", hash)));
    result.written.push_back(ensemble_path);
    result.written.push_back(decisions_path);

    if (splits.test.fully_labeled()) {
        const auto gold = inputs.gold_labels();
        result.pre = evaluate(gold, inputs.ensemble_labels(), config.averaging);
        result.post = evaluate(gold, labels_of(result.decisions), config.averaging);
    }

    const auto config_path = out_dir / "config.ini";
    io::write_file_atomic(config_path, config.results_ini());
    const auto text_path = out_dir / "report.txt";
    io::write_file_atomic(text_path, format_report(config, result));
    const auto json_path = out_dir / "report.json";
    io::write_file_atomic(json_path, report_json(config, result));
    result.written.push_back(config_path);
    result.written.push_back(text_path);
    result.written.push_back(json_path);
    return result;
}

AblateResult run_ablate(const RunConfig& config, std::ostream& log) {
    if (config.validation.empty()) {
        throw UsageError("ablate needs data.validation");
    }
    const auto hash = config.hash();
    const auto splits = load_splits(config);
    if (!splits.validation->fully_labeled() || !splits.test.fully_labeled()) {
        throw Error(Errc::UnlabeledItem, "cli",
                    "ablation scores both validation and test, so both splits need gold labels");
    }
    const auto out_dir = output_dir(config);
    AblateResult result;

    const auto tables = build_tables(config, splits, hash, out_dir, result.written);
    const auto models = train_models(config, splits);
    const auto test_matrix =
        build_matrix(config, models, splits.test, config.test, config.test_predictions, hash, out_dir, result.written);
    const auto val_matrix = build_matrix(config, models, *splits.validation, config.validation,
                                         config.validation_predictions, hash, out_dir, result.written);
    require_matching_models(val_matrix, test_matrix);

    const auto options = batch_options(config);
    const auto val_inputs =
        prepare_decisions(*splits.validation, val_matrix, tables.usernames, tables.domains, splits.cache, options);
    const auto test_inputs =
        prepare_decisions(splits.test, test_matrix, tables.usernames, tables.domains, splits.cache, options);

    AblationOptions ablation;
    ablation.threshold = config.heuristic.threshold;
    if (config.tune) {
        ablation.tune_grid = config.tune_grid;
    }
    ablation.objective = config.objective;
    ablation.averaging = config.averaging;
    result.rows = run_ablation(val_inputs, test_inputs, config.orderings, ablation);
    log << "ablation: " << result.rows.size() << " orderings\n";

    const auto text_path = out_dir / "ablation.txt";
    io::write_file_atomic(text_path, preamble("ablation", hash) + format_ablation(result.rows));
    const auto json_path = out_dir / "ablation.json";
    io::write_file_atomic(json_path, ablation_to_json(result.rows));
    result.written.push_back(text_path);
    result.written.push_back(json_path);
    return result;
}

std::string format_report(const RunConfig& config, const PipelineResult& result) {
    std::map<DecidedBy, std::size_t> by_rule;
    for (const auto& decision : result.decisions) {
        ++by_rule[decision.decided_by];
    }
    std::string models;
    for (const auto& name : result.model_names) {
        models += (models.empty() ? "" : ", ") + name;
    }

    std::string out = preamble("report", config.hash());
    out += "models     " + models + "\n";
    out += "voting     " + std::string(to_string(config.scheme)) + ", ties to " + std::string(to_string(config.tie)) +
           "\n";
    out += "priority   " + describe_priority(result.heuristic.priority) + "\n";
    out += "threshold  " + io::format_double(result.heuristic.threshold) +
           (result.heuristic.use_threshold ? "" : " (disabled)") +
           (result.tuning ? " (tuned on validation " + std::string(to_string(config.objective)) + " " +
                                io::format_fixed(result.tuning->best_score, 4) + ")"
                          : "") +
           "\n";
    out += "items      " + std::to_string(result.decisions.size()) + "\n";
    out += "decided by username " + std::to_string(by_rule[DecidedBy::UsernameRule]) + ", domain " +
           std::to_string(by_rule[DecidedBy::DomainRule]) + ", ensemble " +
           std::to_string(by_rule[DecidedBy::Ensemble]) + "\n";
    out += "flipped    " + std::to_string(result.flipped) + "\n";
    if (result.pre && result.post) {
        out += "\nensemble only\n" + result.pre->to_text();
        out += "\nwith post-processing\n" + result.post->to_text();
        out += "\nf1 change  " + io::format_fixed(result.post->f1 - result.pre->f1, 4) + "\n";
    } else {
        out += "\ntest split is unlabeled; no metrics\n";
    }
    return out;
}

std::string report_json(const RunConfig& config, const PipelineResult& result) {
    ordered_json j;
    j["config_hash"] = config.hash();
    j["models"] = result.model_names;
    j["scheme"] = to_string(config.scheme);
    j["tie"] = to_string(config.tie);
    ordered_json priority = ordered_json::array();
    for (const auto kind : result.heuristic.priority) {
        priority.push_back(to_string(kind));
    }
    j["priority"] = priority;
    j["threshold"] = result.heuristic.threshold;
    j["use_threshold"] = result.heuristic.use_threshold;
    if (result.tuning) {
        ordered_json scores = ordered_json::array();
        for (const auto& s : result.tuning->scores) {
            scores.push_back({{"threshold", s.threshold}, {"score", s.score}});
        }
        j["tuning"] = {{"objective", to_string(config.objective)},
                       {"best_threshold", result.tuning->best_threshold},
                       {"best_score", result.tuning->best_score},
                       {"scores", scores}};
    } else {
        j["tuning"] = nullptr;
    }
    std::map<DecidedBy, std::size_t> by_rule;
    for (const auto& decision : result.decisions) {
        ++by_rule[decision.decided_by];
    }
    j["n_items"] = result.decisions.size();
    j["decided_by"] = {{"username", by_rule[DecidedBy::UsernameRule]},
                       {"domain", by_rule[DecidedBy::DomainRule]},
                       {"ensemble", by_rule[DecidedBy::Ensemble]}};
    j["flipped"] = result.flipped;
    j["ensemble_only"] = result.pre ? parse_json(result.pre->to_json()) : ordered_json(nullptr);
    j["post_processed"] = result.post ? parse_json(result.post->to_json()) : ordered_json(nullptr);
    return j.dump(2) + "\n";
}

}  // namespace fakenews::cli

#include "run_config.hpp"

#include <map>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"

namespace fakenews::cli {

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) {
            out += sep;
        }
        out += item;
    }
    return out;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
    std::vector<std::string> out;
    if (io::trim(text).empty()) {
        return out;
    }
    for (const auto& part : io::split(text, sep)) {
        out.emplace_back(io::trim(part));
    }
    return out;
}

template <class T>
T require(std::optional<T> value, std::string_view key, std::string_view text) {
    if (!value) {
        throw UsageError("config: bad value '" + std::string(text) + "' for " + std::string(key));
    }
    return *value;
}

double require_double(std::string_view key, std::string_view text) {
    return require(io::parse_double(text), key, text);
}

bool require_bool(std::string_view key, std::string_view text) { return require(io::parse_bool(text), key, text); }

std::vector<AttributeKind> priority_from(std::string_view key, std::string_view text) {
    try {
        return parse_priority(text);
    } catch (const Error& e) {
        throw UsageError("config: " + std::string(key) + ": " + e.what());
    }
}

}  // namespace

void RunConfig::set(std::string_view dotted_key, std::string_view raw) {
    const std::string key = io::ascii_lower(io::trim(dotted_key));
    const std::string value(io::trim(raw));

    if (key == "data.train") {
        train = value;
    } else if (key == "data.validation") {
        validation = value;
    } else if (key == "data.test") {
        test = value;
    } else if (key == "data.cache") {
        cache = value;
    } else if (key == "data.format") {
        format = require(parse_file_format(value), key, value);
    } else if (key == "data.cache_miss") {
        cache_miss = require(parse_miss_policy(value), key, value);
    } else if (key == "preprocess.remove_urls") {
        clean.remove_urls = require_bool(key, value);
    } else if (key == "preprocess.remove_mentions") {
        clean.remove_mentions = require_bool(key, value);
    } else if (key == "preprocess.remove_emoji") {
        clean.remove_emoji = require_bool(key, value);
    } else if (key == "preprocess.remove_hashmark_only") {
        clean.remove_hashmark_only = require_bool(key, value);
    } else if (key == "model.baseline") {
        baseline = require_bool(key, value);
    } else if (key == "model.alpha") {
        alpha = require_double(key, value);
        if (!(alpha > 0.0)) {
            throw UsageError("config: model.alpha must be positive");
        }
    } else if (key == "model.baseline_train_fraction") {
        baseline_train_fraction = require_double(key, value);
        if (!(baseline_train_fraction > 0.0 && baseline_train_fraction <= 1.0)) {
            throw UsageError("config: model.baseline_train_fraction must lie in (0, 1]");
        }
    } else if (key == "model.validation_predictions") {
        validation_predictions = split_list(value, ',');
    } else if (key == "model.test_predictions") {
        test_predictions = split_list(value, ',');
    } else if (key == "ensemble.scheme") {
        scheme = require(parse_voting_scheme(value), key, value);
    } else if (key == "ensemble.tie") {
        tie = require(try_parse_label(value), key, value);
    } else if (key == "heuristic.threshold") {
        heuristic.threshold = require_double(key, value);
    } else if (key == "heuristic.priority") {
        heuristic.priority = priority_from(key, value);
    } else if (key == "heuristic.use_threshold") {
        heuristic.use_threshold = require_bool(key, value);
    } else if (key == "heuristic.counting") {
        counting = require(parse_counting_mode(value), key, value);
    } else if (key == "heuristic.tune") {
        tune = require_bool(key, value);
    } else if (key == "heuristic.tune_grid") {
        tune_grid.clear();
        for (const auto& item : split_list(value, ',')) {
            tune_grid.push_back(require_double(key, item));
        }
    } else if (key == "heuristic.objective") {
        objective = require(parse_tune_objective(value), key, value);
    } else if (key == "ablation.orderings") {
        orderings.clear();
        for (const auto& item : split_list(value, ';')) {
            orderings.push_back(priority_from(key, item));
        }
    } else if (key == "eval.averaging") {
        averaging = require(parse_averaging(value), key, value);
    } else if (key == "output.dir") {
        output_dir = value;
    } else if (key == "run.seed") {
        seed = require(io::parse_u64(value), key, value);
    } else if (key == "run.jobs") {
        const auto jobs_value = require(io::parse_u64(value), key, value);
        if (jobs_value == 0 || jobs_value > 1024) {
            throw UsageError("config: run.jobs must lie in [1, 1024]");
        }
        jobs = static_cast<unsigned>(jobs_value);
    } else {
        throw UsageError("config: unknown key '" + key + "'");
    }
}

RunConfig RunConfig::parse(std::string_view text, const std::filesystem::path& base_dir) {
    RunConfig config;
    config.base_dir = base_dir;
    std::string section;
    std::map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    for (const auto& raw_line : io::split(text, '\n')) {
        ++line_no;
        const auto line = io::trim(raw_line);
        if (line.empty() || line.front() == '#' || line.front() == ';') {
            continue;
        }
        const auto where = "config line " + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw UsageError(where + "unterminated section header");
            }
            section = io::ascii_lower(io::trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError(where + "expected key = value");
        }
        if (section.empty()) {
            throw UsageError(where + "key outside of any [section]");
        }
        const std::string dotted = section + "." + io::ascii_lower(io::trim(line.substr(0, eq)));
        if (auto [it, inserted] = seen.emplace(dotted, line_no); !inserted) {
            throw UsageError(where + dotted + " already set on line " + std::to_string(it->second));
        }
        try {
            config.set(dotted, line.substr(eq + 1));
        } catch (const UsageError& e) {
            throw UsageError(where + e.what());
        }
    }
    return config;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw UsageError("config file not found: " + path.string());
    }
    return parse(io::read_file(path, "cli"), path.parent_path());
}

std::string RunConfig::to_ini() const {
    auto out = results_ini();
    out += "jobs = " + std::to_string(jobs) + "\n";
    out += "\n[output]\n";
    out += "dir = " + output_dir + "\n";
    return out;
}

std::string RunConfig::results_ini() const {
    const auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    std::vector<std::string> grid;
    for (double t : tune_grid) {
        grid.push_back(io::format_double(t));
    }
    std::vector<std::string> order_items;
    for (const auto& ordering : orderings) {
        order_items.push_back(format_priority(ordering));
    }

    std::string out;
    out += "[data]\n";
    out += "train = " + train + "\n";
    out += "validation = " + validation + "\n";
    out += "test = " + test + "\n";
    out += "cache = " + cache + "\n";
    out += "format = " + std::string(format == FileFormat::Tsv ? "tsv" : "csv") + "\n";
    out += "cache_miss = " + std::string(to_string(cache_miss)) + "\n";
    out += "\n[preprocess]\n";
    out += "remove_urls = " + b(clean.remove_urls) + "\n";
    out += "remove_mentions = " + b(clean.remove_mentions) + "\n";
    out += "remove_emoji = " + b(clean.remove_emoji) + "\n";
    out += "remove_hashmark_only = " + b(clean.remove_hashmark_only) + "\n";
    out += "\n[model]\n";
    out += "baseline = " + b(baseline) + "\n";
    out += "alpha = " + io::format_double(alpha) + "\n";
    out += "baseline_train_fraction = " + io::format_double(baseline_train_fraction) + "\n";
    out += "validation_predictions = " + join(validation_predictions, ", ") + "\n";
    out += "test_predictions = " + join(test_predictions, ", ") + "\n";
    out += "\n[ensemble]\n";
    out += "scheme = " + std::string(to_string(scheme)) + "\n";
    out += "tie = " + std::string(to_string(tie)) + "\n";
    out += "\n[heuristic]\n";
    out += "threshold = " + io::format_double(heuristic.threshold) + "\n";
    out += "priority = " + format_priority(heuristic.priority) + "\n";
    out += "use_threshold = " + b(heuristic.use_threshold) + "\n";
    out += "counting = " + std::string(to_string(counting)) + "\n";
    out += "tune = " + b(tune) + "\n";
    out += "tune_grid = " + join(grid, ", ") + "\n";
    out += "objective = " + std::string(to_string(objective)) + "\n";
    out += "\n[ablation]\n";
    out += "orderings = " + join(order_items, "; ") + "\n";
    out += "\n[eval]\n";
    out += "averaging = " + std::string(to_string(averaging)) + "\n";
    out += "\n[run]\n";
    out += "seed = " + std::to_string(seed) + "\n";
    return out;
}

std::filesystem::path RunConfig::resolve(const std::string& path) const {
    const std::filesystem::path p(path);
    return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

PredictionSource parse_prediction_entry(std::string_view entry, const std::filesystem::path& base_dir) {
    entry = io::trim(entry);
    PredictionSource source;
    std::string_view path_part = entry;
    if (const auto eq = entry.find('='); eq != std::string_view::npos) {
        source.model_name = std::string(io::trim(entry.substr(0, eq)));
        path_part = io::trim(entry.substr(eq + 1));
    }
    const std::filesystem::path p{std::string(path_part)};
    source.path = p.is_absolute() || base_dir.empty() ? p : base_dir / p;
    return source;
}

std::vector<PredictionSource> RunConfig::prediction_sources(const std::vector<std::string>& entries) const {
    std::vector<PredictionSource> out;
    for (const auto& entry : entries) {
        out.push_back(parse_prediction_entry(entry, base_dir));
    }
    return out;
}

void RunConfig::check_paths() const {
    const auto need = [&](const std::string& key, const std::string& value, bool required) {
        if (value.empty()) {
            if (required) {
                throw UsageError("config: " + key + " is required");
            }
            return;
        }
        if (!std::filesystem::exists(resolve(value))) {
            throw UsageError("config: " + key + " file not found: " + resolve(value).string());
        }
    };
    need("data.train", train, true);
    need("data.test", test, true);
    need("data.validation", validation, false);
    need("data.cache", cache, false);
    for (const auto* list : {&validation_predictions, &test_predictions}) {
        for (const auto& source : prediction_sources(*list)) {
            if (!std::filesystem::exists(source.path)) {
                throw UsageError("config: prediction file not found: " + source.path.string());
            }
        }
    }
    if (!baseline && test_predictions.empty()) {
        throw UsageError("config: no models (model.baseline is off and model.test_predictions is empty)");
    }
    try {
        heuristic.validate();
    } catch (const Error& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

std::string RunConfig::hash() const { return io::fnv1a_hex(results_ini()); }

bool RunConfig::operator==(const RunConfig& other) const { return to_ini() == other.to_ini(); }

}  // namespace fakenews::cli

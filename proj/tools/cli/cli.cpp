#include "cli.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"
#include "pipeline.hpp"
#include "url_expander.hpp"

namespace fakenews::cli {

namespace {

template <class T>
T parse_or_usage(std::optional<T> value, std::string_view flag, std::string_view text) {
    if (!value) {
        throw UsageError("bad value '" + std::string(text) + "' for " + std::string(flag));
    }
    return *value;
}

void require_file(const std::string& path, std::string_view what) {
    if (!path.empty() && !std::filesystem::exists(path)) {
        throw UsageError(std::string(what) + " not found: " + path);
    }
}

struct DataFlags {
    std::string format = "tsv";
    std::string cache;
    std::string cache_miss = "use-as-is";

    void attach(CLI::App& app, bool with_cache) {
        app.add_option("--format", format, "tsv or csv")->capture_default_str();
        if (with_cache) {
            app.add_option("--cache", cache, "url expansion cache (short_url, expanded_url)");
            app.add_option("--cache-miss", cache_miss, "use-as-is or drop")->capture_default_str();
        }
    }
    FileFormat file_format() const { return parse_or_usage(parse_file_format(format), "--format", format); }
    UrlExpansionCache load_cache() const {
        return load_cache_or_empty(cache, parse_or_usage(parse_miss_policy(cache_miss), "--cache-miss", cache_miss));
    }
};

std::vector<PredictionSource> sources_of(const std::vector<std::string>& entries) {
    std::vector<PredictionSource> out;
    for (const auto& entry : entries) {
        out.push_back(parse_prediction_entry(entry, {}));
        require_file(out.back().path.string(), "prediction file");
    }
    return out;
}

class Commands {
public:
    Commands(std::span<const std::string> args, std::ostream& out, std::ostream& err)
        : args_hash_(hash_args(args)), out_(out), err_(err) {}

    void register_all(CLI::App& app) {
        add_stats(app);
        add_train_baseline(app);
        add_predict(app);
        add_ensemble(app);
        add_postprocess(app);
        add_pipeline(app, "pipeline", "Run stats, baseline, ensemble, post-processing and evaluation from a config",
                     false);
        add_pipeline(app, "ablate", "Compare attribute orderings with and without the threshold", true);
        add_evaluate(app);
        add_expand_urls(app);
    }

    void run() {
        if (action_) {
            action_();
        }
    }

private:
    static std::string hash_args(std::span<const std::string> args) {
        std::string joined;
        for (const auto& a : args) {
            joined += a;
            joined += '\n';
        }
        return io::fnv1a_hex(joined);
    }

    std::string pre(std::string_view artifact) const { return preamble(artifact, args_hash_); }

    void add_stats(CLI::App& app) {
        auto* cmd = app.add_subcommand("stats", "Build username and domain probability tables");
        auto& o = stats_;
        cmd->add_option("--data", o.data, "labeled split(s); several are combined")->required();
        o.flags.attach(*cmd, true);
        cmd->add_option("--counting", o.counting, "occurrence or item")->capture_default_str();
        cmd->add_option("--out", o.out, "output directory for usernames.tsv and domains.tsv");
        cmd->add_flag("--summary-only", o.summary_only, "print counts only; labels not required");
        cmd->add_flag("--json", o.json, "print the summary as JSON");
        cmd->callback([this] { action_ = [this] { stats(); }; });
    }

    void stats() {
        const auto& o = stats_;
        if (!o.summary_only && o.out.empty()) {
            throw UsageError("stats: --out is required unless --summary-only is given");
        }
        const auto format = o.flags.file_format();
        const auto mode = parse_or_usage(parse_counting_mode(o.counting), "--counting", o.counting);
        const auto cache = o.flags.load_cache();
        std::vector<Dataset> datasets;
        for (const auto& path : o.data) {
            datasets.push_back(load_split(path, format));
        }
        const auto summary = summarize(std::span<const Dataset>(datasets), cache);
        out_ << (o.json ? summary.to_json() : summary.to_text());
        if (o.summary_only) {
            return;
        }
        AttributeStatsTable usernames(AttributeKind::Username);
        AttributeStatsTable domains(AttributeKind::Domain);
        for (const auto& dataset : datasets) {
            usernames.merge(build_table(dataset, AttributeKind::Username, cache, mode));
            domains.merge(build_table(dataset, AttributeKind::Domain, cache, mode));
        }
        std::filesystem::create_directories(o.out);
        save_table(usernames, std::filesystem::path(o.out) / "usernames.tsv", pre("username table"));
        save_table(domains, std::filesystem::path(o.out) / "domains.tsv", pre("domain table"));
        if (!o.json) {
            out_ << "username table " << usernames.size() << " entries\n";
            out_ << "domain table   " << domains.size() << " entries\n";
        }
    }

    void add_train_baseline(CLI::App& app) {
        auto* cmd = app.add_subcommand("train-baseline", "Train the bag-of-words baseline model");
        auto& o = train_;
        cmd->add_option("--train", o.train, "labeled training split")->required();
        o.flags.attach(*cmd, false);
        cmd->add_option("--alpha", o.alpha, "additive smoothing")->capture_default_str();
        cmd->add_option("--fraction", o.fraction, "train on the first fraction of items")->capture_default_str();
        cmd->add_option("--name", o.name, "model name")->capture_default_str();
        cmd->add_option("--out", o.out, "model JSON path")->required();
        cmd->add_flag("--keep-urls", o.keep_urls);
        cmd->add_flag("--keep-mentions", o.keep_mentions);
        cmd->add_flag("--keep-emoji", o.keep_emoji);
        cmd->add_flag("--keep-hashmarks", o.keep_hashmarks);
        cmd->callback([this] { action_ = [this] { train_baseline(); }; });
    }

    void train_baseline() {
        const auto& o = train_;
        if (!(o.fraction > 0.0 && o.fraction <= 1.0)) {
            throw UsageError("--fraction must lie in (0, 1]");
        }
        const auto training = head_fraction(load_split(o.train, o.flags.file_format()), o.fraction);
        CleanPolicy policy{!o.keep_urls, !o.keep_mentions, !o.keep_emoji, !o.keep_hashmarks};
        auto model = BowModel::train(training, policy, o.alpha);
        model.set_name(o.name);
        model.save(o.out);
        out_ << "trained " << o.name << " on " << training.size() << " items, " << model.vocabulary_size()
             << " tokens\n";
    }

    void add_predict(CLI::App& app) {
        auto* cmd = app.add_subcommand("predict", "Write baseline prediction vectors for a split");
        auto& o = predict_;
        cmd->add_option("--model", o.model, "model JSON")->required();
        cmd->add_option("--data", o.data, "split to score")->required();
        o.flags.attach(*cmd, false);
        cmd->add_option("--out", o.out, "prediction file (id, p_real, p_fake)")->required();
        cmd->add_option("--jobs", o.jobs)->capture_default_str();
        cmd->callback([this] { action_ = [this] { predict(); }; });
    }

    void predict() {
        const auto& o = predict_;
        require_file(o.model, "model file");
        const auto model = BowModel::load(o.model);
        const auto dataset = load_split(o.data, o.flags.file_format());
        const auto predictions = model.predict_all(dataset, std::max(1u, o.jobs));
        io::write_file_atomic(o.out, serialize_predictions(predictions, pre("predictions")));
        out_ << "wrote " << predictions.size() << " predictions\n";
    }

    void add_ensemble(CLI::App& app) {
        auto* cmd = app.add_subcommand("ensemble", "Combine prediction files by soft or hard voting");
        auto& o = ensemble_;
        cmd->add_option("--predictions", o.predictions, "[name=]path, one per model")->required();
        cmd->add_option("--scheme", o.scheme, "soft or hard")->capture_default_str();
        cmd->add_option("--tie", o.tie, "label for exact ties")->capture_default_str();
        cmd->add_option("--out", o.out)->required();
        cmd->callback([this] { action_ = [this] { ensemble(); }; });
    }

    void ensemble() {
        const auto& o = ensemble_;
        const auto sources = sources_of(o.predictions);
        const auto matrix = load_predictions(sources);
        const auto results = vote_all(matrix, parse_or_usage(parse_voting_scheme(o.scheme), "--scheme", o.scheme),
                                      parse_or_usage(try_parse_label(o.tie), "--tie", o.tie));
        io::write_file_atomic(o.out, serialize_ensemble(results, pre("ensemble")));
        out_ << "ensembled " << matrix.model_count() << " models over " << results.size() << " items\n";
    }

    void add_postprocess(CLI::App& app) {
        auto* cmd = app.add_subcommand("postprocess", "Apply the attribute rules to an ensemble");
        auto& o = post_;
        cmd->add_option("--data", o.data, "split the predictions belong to")->required();
        o.flags.attach(*cmd, true);
        cmd->add_option("--predictions", o.predictions, "[name=]path, one per model")->required();
        cmd->add_option("--usernames", o.usernames, "username table from stats")->required();
        cmd->add_option("--domains", o.domains, "domain table from stats")->required();
        cmd->add_option("--threshold", o.threshold)->capture_default_str();
        cmd->add_option("--priority", o.priority, "e.g. \"username, domain\"")->capture_default_str();
        cmd->add_flag("--no-threshold", o.no_threshold, "any strict attribute majority overrides");
        cmd->add_option("--scheme", o.scheme)->capture_default_str();
        cmd->add_option("--tie", o.tie)->capture_default_str();
        cmd->add_option("--jobs", o.jobs)->capture_default_str();
        cmd->add_option("--out", o.out, "decisions file")->required();
        cmd->callback([this] { action_ = [this] { postprocess(); }; });
    }

    void postprocess() {
        const auto& o = post_;
        require_file(o.usernames, "username table");
        require_file(o.domains, "domain table");
        HeuristicConfig config;
        config.threshold = o.threshold;
        config.use_threshold = !o.no_threshold;
        try {
            config.priority = parse_priority(o.priority);
            config.validate();
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        const auto cache = o.flags.load_cache();
        const auto dataset = load_split(o.data, o.flags.file_format());
        const auto matrix = load_predictions(sources_of(o.predictions));
        const BatchOptions options{parse_or_usage(parse_voting_scheme(o.scheme), "--scheme", o.scheme),
                                   parse_or_usage(try_parse_label(o.tie), "--tie", o.tie), std::max(1u, o.jobs)};
        const auto decisions = decide_batch(dataset, matrix, load_table(o.usernames, AttributeKind::Username),
                                            load_table(o.domains, AttributeKind::Domain), cache, config, options);
        io::write_file_atomic(o.out, serialize_decisions(decisions, pre("decisions")));
        std::size_t overridden = 0;
        for (const auto& d : decisions) {
            overridden += d.decided_by != DecidedBy::Ensemble ? 1 : 0;
        }
        out_ << "decided " << decisions.size() << " items, " << overridden << " by attribute rules\n";
    }

    void add_pipeline(CLI::App& app, const std::string& name, const std::string& help, bool ablate) {
        auto* cmd = app.add_subcommand(name, help);
        auto& o = ablate ? ablate_ : pipeline_;
        cmd->add_option("config", o.config, "run config file")->required();
        cmd->add_option("--set", o.overrides, "section.key=value, overrides the config");
        cmd->add_option("--out", o.out, "output directory, overrides output.dir");
        cmd->add_option("--jobs", o.jobs, "overrides run.jobs");
        cmd->callback([this, ablate] { action_ = [this, ablate] { run_config(ablate); }; });
    }

    void run_config(bool ablate) {
        const auto& o = ablate ? ablate_ : pipeline_;
        auto config = RunConfig::load(o.config);
        for (const auto& item : o.overrides) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw UsageError("--set expects section.key=value, got '" + item + "'");
            }
            config.set(item.substr(0, eq), item.substr(eq + 1));
        }
        if (!o.out.empty()) {
            config.output_dir = std::filesystem::absolute(o.out).string();
        }
        if (o.jobs) {
            config.set("run.jobs", std::to_string(*o.jobs));
        }
        if (ablate) {
            const auto result = run_ablate(config, err_);
            out_ << format_ablation(result.rows);
        } else {
            const auto result = run_pipeline(config, err_);
            out_ << format_report(config, result);
        }
    }

    void add_evaluate(CLI::App& app) {
        auto* cmd = app.add_subcommand("evaluate", "Score predicted labels against gold labels");
        auto& o = eval_;
        cmd->add_option("--gold", o.gold, "labeled split")->required();
        o.flags.attach(*cmd, false);
        cmd->add_option("--pred", o.pred, "file with id and label columns (ensemble or decisions)")->required();
        cmd->add_option("--averaging", o.averaging, "weighted or macro")->capture_default_str();
        cmd->add_option("--json", o.json, "also write the report as JSON");
        cmd->callback([this] { action_ = [this] { evaluate_cmd(); }; });
    }

    void evaluate_cmd() {
        const auto& o = eval_;
        require_file(o.pred, "prediction file");
        const auto gold_set = load_split(o.gold, o.flags.file_format());
        const auto gold = gold_set.labels();

        const auto table = io::Table::load(o.pred, {io::Delimiter::Tab, true}, "eval");
        const auto id_col = table.require_column("id");
        const auto label_col = table.require_column("label");
        std::map<std::uint64_t, Label> predicted_by_id;
        for (const auto& row : table.rows()) {
            const auto id = io::parse_u64(row.fields[id_col]);
            if (!id) {
                throw Error(Errc::BadFormat, "eval", o.pred + " line " + std::to_string(row.line) + ": bad id");
            }
            const auto label = try_parse_label(row.fields[label_col]);
            if (!label) {
                throw Error(Errc::BadLabel, "eval", o.pred + ": bad label '" + row.fields[label_col] + "'", *id);
            }
            if (!predicted_by_id.emplace(*id, *label).second) {
                throw Error(Errc::DuplicateId, "eval", o.pred + ": repeated id", *id);
            }
        }
        std::vector<Label> predicted;
        for (const auto& item : gold_set.items) {
            const auto it = predicted_by_id.find(item.id);
            if (it == predicted_by_id.end()) {
                throw Error(Errc::IdSetMismatch, "eval", o.pred + " has no prediction for an item of " + o.gold,
                            item.id);
            }
            predicted.push_back(it->second);
        }
        if (predicted_by_id.size() != gold.size()) {
            throw Error(Errc::IdSetMismatch, "eval", o.pred + " has ids that are not in " + o.gold);
        }
        const auto report =
            evaluate(gold, predicted, parse_or_usage(parse_averaging(o.averaging), "--averaging", o.averaging));
        out_ << report.to_text();
        if (!o.json.empty()) {
            io::write_file_atomic(o.json, report.to_json());
        }
    }

    void add_expand_urls(CLI::App& app) {
        auto* cmd = app.add_subcommand("expand-urls", "Resolve short urls over the network into a cache file");
        auto& o = expand_;
        cmd->add_option("--data", o.data, "split(s) to scan for urls")->required();
        cmd->add_option("--format", o.format)->capture_default_str();
        cmd->add_option("--existing", o.existing, "cache to extend; its entries are not fetched again");
        cmd->add_option("--out", o.out, "cache file to write")->required();
        cmd->add_option("--timeout", o.timeout, "seconds per request")->capture_default_str();
        cmd->add_option("--max-redirects", o.max_redirects)->capture_default_str();
        cmd->callback([this] { action_ = [this] { expand_urls(); }; });
    }

    void expand_urls() {
        const auto& o = expand_;
        const auto format = parse_or_usage(parse_file_format(o.format), "--format", o.format);
        require_file(o.existing, "cache file");
        std::map<std::string, std::string, std::less<>> entries;
        if (!o.existing.empty()) {
            entries = load_url_cache(o.existing).entries();
        }
        std::set<std::string> urls;
        for (const auto& path : o.data) {
            for (const auto& item : load_split(path, format).items) {
                for (const auto& span : find_urls(item.text)) {
                    urls.insert(item.text.substr(span.begin, span.end - span.begin));
                }
            }
        }
        UrlExpander expander({std::chrono::seconds(o.timeout), o.max_redirects});
        std::size_t fetched = 0;
        std::size_t failed = 0;
        for (const auto& url : urls) {
            if (entries.contains(url)) {
                continue;
            }
            std::string error;
            if (auto expanded = expander.expand(url, &error)) {
                entries.emplace(url, std::move(*expanded));
                ++fetched;
            } else {
                err_ << "expand-urls: " << url << ": " << error << "\n";
                ++failed;
            }
        }
        io::write_file_atomic(o.out, pre("url cache") + serialize_url_cache(UrlExpansionCache(std::move(entries))));
        out_ << urls.size() << " urls, " << fetched << " fetched, " << failed << " failed\n";
    }

    struct StatsOpts {
        std::vector<std::string> data;
        DataFlags flags;
        std::string counting = "occurrence";
        std::string out;
        bool summary_only = false;
        bool json = false;
    } stats_;
    struct TrainOpts {
        std::string train;
        DataFlags flags;
        double alpha = 1.0;
        double fraction = 1.0;
        std::string name = "baseline";
        std::string out;
        bool keep_urls = false;
        bool keep_mentions = false;
        bool keep_emoji = false;
        bool keep_hashmarks = false;
    } train_;
    struct PredictOpts {
        std::string model;
        std::string data;
        DataFlags flags;
        std::string out;
        unsigned jobs = 1;
    } predict_;
    struct EnsembleOpts {
        std::vector<std::string> predictions;
        std::string scheme = "soft";
        std::string tie = "real";
        std::string out;
    } ensemble_;
    struct PostOpts {
        std::string data;
        DataFlags flags;
        std::vector<std::string> predictions;
        std::string usernames;
        std::string domains;
        double threshold = 0.88;
        std::string priority = "username, domain";
        bool no_threshold = false;
        std::string scheme = "soft";
        std::string tie = "real";
        unsigned jobs = 1;
        std::string out;
    } post_;
    struct ConfigOpts {
        std::string config;
        std::vector<std::string> overrides;
        std::string out;
        std::optional<unsigned> jobs;
    } pipeline_, ablate_;
    struct EvalOpts {
        std::string gold;
        DataFlags flags;
        std::string pred;
        std::string averaging = "weighted";
        std::string json;
    } eval_;
    struct ExpandOpts {
        std::vector<std::string> data;
        std::string format = "tsv";
        std::string existing;
        std::string out;
        long timeout = 10;
        long max_redirects = 10;
    } expand_;

    std::string args_hash_;
    std::ostream& out_;
    std::ostream& err_;
    std::function<void()> action_;
};

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fake news ensemble post-processing toolkit", "fakenews"};
    app.require_subcommand(1);
    Commands commands(args, out, err);
    commands.register_all(app);

    std::vector<const char*> argv{"fakenews"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        commands.run();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "fakenews: usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "fakenews: error: " << e.what() << "\n";
        return e.code() == Errc::BadConfig ? kExitUsage : kExitData;
    } catch (const std::exception& e) {
        err << "fakenews: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace fakenews::cli

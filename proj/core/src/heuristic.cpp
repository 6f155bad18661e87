#include "fakenews/heuristic.hpp"

#include <algorithm>
#include <numeric>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"
#include "fakenews/parallel.hpp"

namespace fakenews {

namespace {

constexpr std::string_view kModule = "heuristic";

std::optional<Label> attribute_rule(const AttrProbVector& vec, const HeuristicConfig& config) {
    if (!vec.present) {
        return std::nullopt;
    }
    if (vec.p_real > vec.p_fake && (!config.use_threshold || vec.p_real > config.threshold)) {
        return Label::Real;
    }
    if (vec.p_real < vec.p_fake && (!config.use_threshold || vec.p_fake > config.threshold)) {
        return Label::Fake;
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(DecidedBy source) noexcept {
    switch (source) {
        case DecidedBy::UsernameRule:
            return "username";
        case DecidedBy::DomainRule:
            return "domain";
        case DecidedBy::Ensemble:
            return "ensemble";
    }
    return "ensemble";
}

void HeuristicConfig::validate() const {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw Error(Errc::BadConfig, std::string(kModule), "threshold must lie in [0, 1]");
    }
    for (std::size_t i = 0; i < priority.size(); ++i) {
        for (std::size_t j = i + 1; j < priority.size(); ++j) {
            if (priority[i] == priority[j]) {
                throw Error(Errc::BadConfig, std::string(kModule),
                            "attribute '" + std::string(to_string(priority[i])) + "' listed twice in priority");
            }
        }
    }
}

std::vector<AttributeKind> parse_priority(std::string_view text) {
    std::vector<AttributeKind> out;
    if (io::trim(text).empty()) {
        return out;
    }
    for (const auto& part : io::split(text, ',')) {
        const auto kind = parse_attribute_kind(part);
        if (!kind) {
            throw Error(Errc::BadConfig, std::string(kModule),
                        "unknown attribute '" + std::string(io::trim(part)) + "'");
        }
        out.push_back(*kind);
    }
    return out;
}

std::string format_priority(std::span<const AttributeKind> priority) {
    std::string out;
    for (const auto kind : priority) {
        if (!out.empty()) {
            out += ", ";
        }
        out += to_string(kind);
    }
    return out;
}

HeuristicDecision decide(const EnsembleResult& ensemble, const AttrProbVector& username_vec,
                         const AttrProbVector& domain_vec, const HeuristicConfig& config) {
    HeuristicDecision out;
    out.item_id = ensemble.item_id;
    out.username_vec = username_vec;
    out.domain_vec = domain_vec;
    out.ensemble_p_real = ensemble.p_real;
    for (const auto kind : config.priority) {
        const bool is_user = kind == AttributeKind::Username;
        if (auto label = attribute_rule(is_user ? username_vec : domain_vec, config)) {
            out.label = *label;
            out.decided_by = is_user ? DecidedBy::UsernameRule : DecidedBy::DomainRule;
            return out;
        }
    }
    out.label = ensemble.label;
    out.decided_by = DecidedBy::Ensemble;
    return out;
}

std::vector<Label> DecisionInputs::gold_labels() const {
    std::vector<Label> out;
    out.reserve(gold.size());
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (!gold[i]) {
            throw Error(Errc::UnlabeledItem, std::string(kModule), "evaluation needs gold labels", ensemble[i].item_id);
        }
        out.push_back(*gold[i]);
    }
    return out;
}

std::vector<Label> DecisionInputs::ensemble_labels() const {
    std::vector<Label> out;
    out.reserve(ensemble.size());
    for (const auto& r : ensemble) {
        out.push_back(r.label);
    }
    return out;
}

DecisionInputs prepare_decisions(const Dataset& dataset, const PredictionMatrix& predictions,
                                 const AttributeStatsTable& usernames, const AttributeStatsTable& domains,
                                 const UrlExpansionCache& cache, const BatchOptions& options) {
    if (usernames.kind() != AttributeKind::Username || domains.kind() != AttributeKind::Domain) {
        throw Error(Errc::BadConfig, std::string(kModule), "username and domain tables passed in the wrong slots");
    }
    if (predictions.model_count() == 0) {
        throw Error(Errc::NoModels, std::string(kModule),
                    "no model predictions for split '" + dataset.split_name + "'");
    }
    std::vector<std::size_t> order(dataset.items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return dataset.items[a].id < dataset.items[b].id; });

    for (const auto idx : order) {
        if (predictions.row(dataset.items[idx].id) == nullptr) {
            throw Error(Errc::IdSetMismatch, std::string(kModule),
                        "split '" + dataset.split_name + "' item has no prediction row", dataset.items[idx].id);
        }
    }
    if (predictions.item_count() != dataset.items.size()) {
        throw Error(Errc::IdSetMismatch, std::string(kModule),
                    "predictions cover " + std::to_string(predictions.item_count()) + " items but split '" +
                        dataset.split_name + "' has " + std::to_string(dataset.items.size()));
    }

    DecisionInputs inputs;
    const std::size_t n = order.size();
    inputs.ensemble.resize(n);
    inputs.username_vecs.resize(n);
    inputs.domain_vecs.resize(n);
    inputs.gold.resize(n);
    parallel_for(n, options.jobs, [&](std::size_t i) {
        const auto& item = dataset.items[order[i]];
        const auto attrs = extract_attributes(item.text, cache);
        inputs.ensemble[i] = vote(*predictions.row(item.id), options.scheme, options.tie_label);
        inputs.username_vecs[i] = tweet_attr_vector(attrs.usernames, usernames);
        inputs.domain_vecs[i] = tweet_attr_vector(attrs.domains, domains);
        inputs.gold[i] = item.label;
    });
    return inputs;
}

std::vector<HeuristicDecision> decide_all(const DecisionInputs& inputs, const HeuristicConfig& config) {
    config.validate();
    std::vector<HeuristicDecision> out;
    out.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        out.push_back(decide(inputs.ensemble[i], inputs.username_vecs[i], inputs.domain_vecs[i], config));
    }
    return out;
}

std::vector<HeuristicDecision> decide_batch(const Dataset& dataset, const PredictionMatrix& predictions,
                                            const AttributeStatsTable& usernames, const AttributeStatsTable& domains,
                                            const UrlExpansionCache& cache, const HeuristicConfig& config,
                                            const BatchOptions& options) {
    return decide_all(prepare_decisions(dataset, predictions, usernames, domains, cache, options), config);
}

std::vector<Label> labels_of(std::span<const HeuristicDecision> decisions) {
    std::vector<Label> out;
    out.reserve(decisions.size());
    for (const auto& d : decisions) {
        out.push_back(d.label);
    }
    return out;
}

std::string serialize_decisions(std::span<const HeuristicDecision> decisions, std::string_view preamble) {
    const auto prob = [](const AttrProbVector& v) {
        return v.present ? io::format_double(v.p_real) : std::string("-");
    };
    std::string out(preamble);
    out += "id\tlabel\tdecided_by\tp_real_ens\tp_real_user\tp_real_domain\n";
    for (const auto& d : decisions) {
        out += std::to_string(d.item_id);
        out += '\t';
        out += to_string(d.label);
        out += '\t';
        out += to_string(d.decided_by);
        out += '\t';
        out += io::format_double(d.ensemble_p_real);
        out += '\t';
        out += prob(d.username_vec);
        out += '\t';
        out += prob(d.domain_vec);
        out += '\n';
    }
    return out;
}

}  // namespace fakenews

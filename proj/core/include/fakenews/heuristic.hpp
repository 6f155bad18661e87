#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakenews/attribute_stats.hpp"
#include "fakenews/corpus.hpp"
#include "fakenews/ensemble.hpp"

namespace fakenews {

enum class DecidedBy { UsernameRule, DomainRule, Ensemble };

std::string_view to_string(DecidedBy source) noexcept;

struct HeuristicConfig {
    double threshold = 0.88;
    std::vector<AttributeKind> priority{AttributeKind::Username, AttributeKind::Domain};
    bool use_threshold = true;

    /// Throws Error{BadConfig}: threshold outside [0, 1] or a repeated attribute.
    void validate() const;
    bool operator==(const HeuristicConfig&) const = default;
};

/// "username, domain" -> {Username, Domain}; an empty string is an empty list.
std::vector<AttributeKind> parse_priority(std::string_view text);
std::string format_priority(std::span<const AttributeKind> priority);

struct HeuristicDecision {
    std::uint64_t item_id = 0;
    Label label = Label::Real;
    DecidedBy decided_by = DecidedBy::Ensemble;
    AttrProbVector username_vec;
    AttrProbVector domain_vec;
    double ensemble_p_real = 0.0;
};

// Attribute vectors are consulted in priority order. A present vector
// overrides the ensemble when its majority class probability is strictly
// above the threshold (or, with use_threshold off, when it has a strict
// majority at all). Inconclusive or absent vectors fall through to the
// ensemble's own label.
HeuristicDecision decide(const EnsembleResult& ensemble, const AttrProbVector& username_vec,
                         const AttrProbVector& domain_vec, const HeuristicConfig& config);

// Everything `decide` needs for one split, ordered by item id. Building it
// once lets threshold sweeps and ablations re-run only the cheap part.
struct DecisionInputs {
    std::vector<EnsembleResult> ensemble;
    std::vector<AttrProbVector> username_vecs;
    std::vector<AttrProbVector> domain_vecs;
    std::vector<std::optional<Label>> gold;

    std::size_t size() const noexcept { return ensemble.size(); }
    std::vector<Label> gold_labels() const;
    std::vector<Label> ensemble_labels() const;
};

struct BatchOptions {
    VotingScheme scheme = VotingScheme::Soft;
    Label tie_label = Label::Real;
    unsigned jobs = 1;
};

/// Tables must come from the training split; the dataset and the matrix must
/// cover the same ids (IdSetMismatch otherwise).
DecisionInputs prepare_decisions(const Dataset& dataset, const PredictionMatrix& predictions,
                                 const AttributeStatsTable& usernames, const AttributeStatsTable& domains,
                                 const UrlExpansionCache& cache, const BatchOptions& options = {});

std::vector<HeuristicDecision> decide_all(const DecisionInputs& inputs, const HeuristicConfig& config);

std::vector<HeuristicDecision> decide_batch(const Dataset& dataset, const PredictionMatrix& predictions,
                                            const AttributeStatsTable& usernames, const AttributeStatsTable& domains,
                                            const UrlExpansionCache& cache, const HeuristicConfig& config,
                                            const BatchOptions& options = {});

std::vector<Label> labels_of(std::span<const HeuristicDecision> decisions);

/// id, label, decided_by, p_real_ens, p_real_user, p_real_domain ("-" when absent).
std::string serialize_decisions(std::span<const HeuristicDecision> decisions, std::string_view preamble = {});

}  // namespace fakenews

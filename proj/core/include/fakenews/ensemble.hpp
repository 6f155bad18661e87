#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakenews/baseline_model.hpp"
#include "fakenews/label.hpp"

namespace fakenews {

enum class VotingScheme { Soft, Hard };

std::string_view to_string(VotingScheme scheme) noexcept;
std::optional<VotingScheme> parse_voting_scheme(std::string_view text);

/// Class scores closer than this are a tie; absorbs rounding in averaged inputs.
inline constexpr double kTieTolerance = 1e-12;

struct EnsembleResult {
    std::uint64_t item_id = 0;
    double p_real = 0.0;  // mean over models
    double p_fake = 0.0;
    std::size_t votes_real = 0;  // models with p_real >= p_fake
    std::size_t votes_fake = 0;
    Label label = Label::Real;
    VotingScheme scheme = VotingScheme::Soft;
};

// Both voting functions fill the means and the vote counts; the scheme only
// decides which of the two picks the label. Overall ties go to `tie_label`.
EnsembleResult soft_vote(std::span<const PredictionVector> row, Label tie_label = Label::Real);
EnsembleResult hard_vote(std::span<const PredictionVector> row, Label tie_label = Label::Real);
EnsembleResult vote(std::span<const PredictionVector> row, VotingScheme scheme, Label tie_label = Label::Real);

// Per-item prediction rows aligned to an ordered list of models. Every row
// holds exactly one vector per model.
class PredictionMatrix {
public:
    using Rows = std::map<std::uint64_t, std::vector<PredictionVector>>;

    /// Throws IdSetMismatch when the id set differs from the models already
    /// present, DuplicateId on a repeated id, BadConfig on a repeated name.
    void add_model(const std::string& name, std::span<const PredictionVector> predictions,
                   const std::string& source = {});

    const std::vector<std::string>& model_names() const noexcept { return names_; }
    const Rows& rows() const noexcept { return rows_; }
    const std::vector<PredictionVector>* row(std::uint64_t item_id) const;
    std::size_t model_count() const noexcept { return names_.size(); }
    std::size_t item_count() const noexcept { return rows_.size(); }

private:
    std::vector<std::string> names_;
    std::vector<std::string> sources_;
    Rows rows_;
};

std::vector<EnsembleResult> vote_all(const PredictionMatrix& matrix, VotingScheme scheme,
                                     Label tie_label = Label::Real);

struct PredictionSource {
    std::filesystem::path path;
    std::string model_name;  // empty: use the file stem
};

// Reads `id, p_real, p_fake` (header required, '#' comments and extra
// columns ignored). A row is rescaled to unit sum when its sum lies within
// [0.99, 1.01]; anything else is rejected with BadProbabilities.
std::vector<PredictionVector> parse_prediction_file(std::string_view content, const std::string& model_name,
                                                    const std::string& source = "<predictions>");
std::vector<PredictionVector> load_prediction_file(const PredictionSource& source);
PredictionMatrix load_predictions(std::span<const PredictionSource> sources);

std::string serialize_predictions(std::span<const PredictionVector> predictions, std::string_view preamble = {});
std::string serialize_ensemble(std::span<const EnsembleResult> results, std::string_view preamble = {});

}  // namespace fakenews

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fakenews/corpus.hpp"
#include "fakenews/label.hpp"
#include "fakenews/preprocess.hpp"

namespace fakenews {

/// One model's class probabilities for one item.
struct PredictionVector {
    std::uint64_t item_id = 0;
    double p_real = 0.5;
    double p_fake = 0.5;
    std::string model_name;

    /// Real when p_real >= p_fake.
    Label argmax() const noexcept { return p_real >= p_fake ? Label::Real : Label::Fake; }
};

/// Lowercased maximal runs of letters, digits, marks and '_'.
std::vector<std::string> tokenize(std::string_view text);

// Multinomial bag-of-words classifier with additive smoothing. It stands in
// for the fine-tuned transformers so that a full run needs no GPU; anything
// that can write a prediction file can replace it.
//
// P(token | class) = (count(token, class) + alpha) / (tokens(class) + alpha * |V|)
// P(class)         = documents(class) / documents
class BowModel {
public:
    struct TokenCounts {
        std::uint64_t real = 0;
        std::uint64_t fake = 0;
    };

    static BowModel train(const Dataset& training, const CleanPolicy& policy, double alpha = 1.0);

    PredictionVector predict(std::string_view text, std::uint64_t item_id = 0) const;
    std::vector<PredictionVector> predict_all(const Dataset& dataset, unsigned jobs = 1) const;

    double alpha() const noexcept { return alpha_; }
    const CleanPolicy& clean_policy() const noexcept { return policy_; }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    std::size_t vocabulary_size() const noexcept { return vocabulary_.size(); }
    const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
    std::optional<std::size_t> token_index(std::string_view token) const;
    std::uint64_t document_count(Label label) const noexcept { return doc_counts_[index_of(label)]; }
    TokenCounts token_counts(std::size_t index) const noexcept;

    double log_prior(Label label) const noexcept { return log_priors_[index_of(label)]; }
    double log_likelihood(Label label, std::size_t index) const noexcept {
        return log_likelihoods_[index_of(label)][index];
    }

    // Counts and alpha only; log-space values are rebuilt on load.
    std::string to_json() const;
    static BowModel from_json(std::string_view json, const std::string& source = "<model>");
    void save(const std::filesystem::path& path) const;
    static BowModel load(const std::filesystem::path& path);

private:
    BowModel() = default;
    void rebuild();

    std::string name_ = "baseline";
    double alpha_ = 1.0;
    CleanPolicy policy_;
    std::vector<std::string> vocabulary_;  // sorted
    std::unordered_map<std::string, std::size_t> index_;
    std::array<std::vector<std::uint64_t>, 2> token_counts_;
    std::array<std::uint64_t, 2> doc_counts_{};
    std::array<double, 2> log_priors_{};
    std::array<std::vector<double>, 2> log_likelihoods_;
};

}  // namespace fakenews

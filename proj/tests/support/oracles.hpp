#pragma once

// Reference implementations written straight from the formulas, with no calls
// into the library, so tests can compare the two.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fakenews/label.hpp"

namespace fakenews::oracle {

// Probabilities on a tenths grid, held as integers so sums and ties are exact.
struct TenthsVector {
    int real = 5;
    int fake = 5;
};

inline Label soft_label(const std::vector<TenthsVector>& row) {
    int real = 0;
    int fake = 0;
    for (const auto& v : row) {
        real += v.real;
        fake += v.fake;
    }
    return real >= fake ? Label::Real : Label::Fake;
}

inline double soft_mean_real(const std::vector<TenthsVector>& row) {
    int real = 0;
    for (const auto& v : row) {
        real += v.real;
    }
    return static_cast<double>(real) / (10.0 * static_cast<double>(row.size()));
}

inline std::pair<std::size_t, std::size_t> hard_votes(const std::vector<TenthsVector>& row) {
    std::size_t real = 0;
    for (const auto& v : row) {
        if (v.real >= v.fake) {
            ++real;
        }
    }
    return {real, row.size() - real};
}

inline Label hard_label(const std::vector<TenthsVector>& row) {
    const auto [real, fake] = hard_votes(row);
    return real >= fake ? Label::Real : Label::Fake;
}

struct OracleVector {
    bool present = false;
    double p_real = 0.0;
    double p_fake = 0.0;
};

// The heuristic's if/elif chain, one block per attribute in priority order.
// `ensemble_tie` is only consulted when the ensemble probabilities are equal;
// passing Fake reproduces the pseudocode's bare else-branch.
inline Label algorithm1(double ens_real, double ens_fake, const std::vector<OracleVector>& blocks, double threshold,
                        bool use_threshold, Label ensemble_tie) {
    for (const auto& v : blocks) {
        if (!v.present) {
            continue;
        }
        if ((!use_threshold || v.p_real > threshold) && v.p_real > v.p_fake) {
            return Label::Real;
        } else if ((!use_threshold || v.p_fake > threshold) && v.p_real < v.p_fake) {
            return Label::Fake;
        }
    }
    if (ens_real > ens_fake) {
        return Label::Real;
    } else if (ens_real < ens_fake) {
        return Label::Fake;
    } else {
        return ensemble_tie;
    }
}

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::array<std::array<std::size_t, 2>, 2> confusion{};
};

// Support-weighted per-class metrics from the 2x2 confusion matrix.
inline Metrics weighted_metrics(const std::vector<Label>& gold, const std::vector<Label>& pred) {
    Metrics m;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        ++m.confusion[gold[i] == Label::Real ? 0 : 1][pred[i] == Label::Real ? 0 : 1];
    }
    const double n = static_cast<double>(gold.size());
    const auto ratio = [](double a, double b) { return b == 0.0 ? 0.0 : a / b; };
    m.accuracy = static_cast<double>(m.confusion[0][0] + m.confusion[1][1]) / n;
    for (int c = 0; c < 2; ++c) {
        const double tp = static_cast<double>(m.confusion[c][c]);
        const double gold_c = static_cast<double>(m.confusion[c][0] + m.confusion[c][1]);
        const double pred_c = static_cast<double>(m.confusion[0][c] + m.confusion[1][c]);
        const double p = ratio(tp, pred_c);
        const double r = ratio(tp, gold_c);
        const double f = ratio(2.0 * p * r, p + r);
        const double w = gold_c / n;
        m.precision += w * p;
        m.recall += w * r;
        m.f1 += w * f;
    }
    return m;
}

// Multinomial naive Bayes evaluated with plain products over a tiny corpus:
// P(c | doc) proportional to P(c) * prod_t ((n_ct + alpha) / (N_c + alpha |V|)).
struct NbDocument {
    std::vector<std::string> tokens;
    Label label = Label::Real;
};

inline double naive_bayes_p_real(const std::vector<NbDocument>& corpus, const std::vector<std::string>& query,
                                 double alpha) {
    std::map<std::string, std::array<double, 2>> counts;
    std::array<double, 2> docs{};
    std::array<double, 2> tokens{};
    for (const auto& doc : corpus) {
        const int c = doc.label == Label::Real ? 0 : 1;
        docs[c] += 1.0;
        for (const auto& t : doc.tokens) {
            counts[t][c] += 1.0;
            tokens[c] += 1.0;
        }
    }
    const double vocab = static_cast<double>(counts.size());
    std::array<double, 2> score{};
    for (int c = 0; c < 2; ++c) {
        score[c] = docs[c] / (docs[0] + docs[1]);
        for (const auto& t : query) {
            const auto it = counts.find(t);
            if (it == counts.end()) {
                continue;
            }
            score[c] *= (it->second[c] + alpha) / (tokens[c] + alpha * vocab);
        }
    }
    return score[0] / (score[0] + score[1]);
}

}  // namespace fakenews::oracle

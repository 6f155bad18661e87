#include "fakenews/ensemble.hpp"

#include <cmath>
#include <set>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"

namespace fakenews {

namespace {

constexpr std::string_view kModule = "ensemble";
constexpr double kUnitSumSlack = 0.01;

EnsembleResult tally(std::span<const PredictionVector> row) {
    if (row.empty()) {
        throw Error(Errc::NoModels, std::string(kModule), "cannot vote over an empty row");
    }
    EnsembleResult out;
    out.item_id = row.front().item_id;
    double sum_real = 0.0;
    double sum_fake = 0.0;
    for (const auto& pv : row) {
        sum_real += pv.p_real;
        sum_fake += pv.p_fake;
        if (pv.p_real - pv.p_fake >= -kTieTolerance) {
            ++out.votes_real;
        } else {
            ++out.votes_fake;
        }
    }
    const auto n = static_cast<double>(row.size());
    out.p_real = sum_real / n;
    out.p_fake = sum_fake / n;
    return out;
}

}  // namespace

std::string_view to_string(VotingScheme scheme) noexcept { return scheme == VotingScheme::Soft ? "soft" : "hard"; }

std::optional<VotingScheme> parse_voting_scheme(std::string_view text) {
    const std::string v = io::ascii_lower(io::trim(text));
    if (v == "soft") {
        return VotingScheme::Soft;
    }
    if (v == "hard") {
        return VotingScheme::Hard;
    }
    return std::nullopt;
}

EnsembleResult soft_vote(std::span<const PredictionVector> row, Label tie_label) {
    EnsembleResult out = tally(row);
    out.scheme = VotingScheme::Soft;
    const double margin = out.p_real - out.p_fake;
    if (margin > kTieTolerance) {
        out.label = Label::Real;
    } else if (margin < -kTieTolerance) {
        out.label = Label::Fake;
    } else {
        out.label = tie_label;
    }
    return out;
}

EnsembleResult hard_vote(std::span<const PredictionVector> row, Label tie_label) {
    EnsembleResult out = tally(row);
    out.scheme = VotingScheme::Hard;
    if (out.votes_real > out.votes_fake) {
        out.label = Label::Real;
    } else if (out.votes_real < out.votes_fake) {
        out.label = Label::Fake;
    } else {
        out.label = tie_label;
    }
    return out;
}

EnsembleResult vote(std::span<const PredictionVector> row, VotingScheme scheme, Label tie_label) {
    return scheme == VotingScheme::Soft ? soft_vote(row, tie_label) : hard_vote(row, tie_label);
}

void PredictionMatrix::add_model(const std::string& name, std::span<const PredictionVector> predictions,
                                 const std::string& source) {
    const std::string origin = source.empty() ? name : source;
    for (const auto& existing : names_) {
        if (existing == name) {
            throw Error(Errc::BadConfig, std::string(kModule), "model name '" + name + "' given twice");
        }
    }
    std::set<std::uint64_t> ids;
    for (const auto& pv : predictions) {
        if (!ids.insert(pv.item_id).second) {
            throw Error(Errc::DuplicateId, std::string(kModule), origin, pv.item_id);
        }
    }
    if (!names_.empty()) {
        bool same = ids.size() == rows_.size();
        if (same) {
            auto it = rows_.begin();
            for (auto id : ids) {
                if (it->first != id) {
                    same = false;
                    break;
                }
                ++it;
            }
        }
        if (!same) {
            throw Error(Errc::IdSetMismatch, std::string(kModule),
                        "'" + sources_.front() + "' and '" + origin + "' cover different item ids");
        }
    }
    for (const auto& pv : predictions) {
        PredictionVector copy = pv;
        copy.model_name = name;
        rows_[pv.item_id].push_back(std::move(copy));
    }
    names_.push_back(name);
    sources_.push_back(origin);
}

const std::vector<PredictionVector>* PredictionMatrix::row(std::uint64_t item_id) const {
    auto it = rows_.find(item_id);
    return it == rows_.end() ? nullptr : &it->second;
}

std::vector<EnsembleResult> vote_all(const PredictionMatrix& matrix, VotingScheme scheme, Label tie_label) {
    std::vector<EnsembleResult> out;
    out.reserve(matrix.item_count());
    for (const auto& [id, row] : matrix.rows()) {
        out.push_back(vote(row, scheme, tie_label));
    }
    return out;
}

std::vector<PredictionVector> parse_prediction_file(std::string_view content, const std::string& model_name,
                                                    const std::string& source) {
    io::ReadOptions options;
    options.skip_comments = true;
    const auto table = io::Table::parse(content, source, options, kModule);
    const auto id_col = table.require_column("id");
    const auto real_col = table.require_column("p_real");
    const auto fake_col = table.require_column("p_fake");

    std::vector<PredictionVector> out;
    out.reserve(table.rows().size());
    std::set<std::uint64_t> seen;
    for (const auto& row : table.rows()) {
        const auto where = source + " line " + std::to_string(row.line);
        const auto id = io::parse_u64(row.fields[id_col]);
        if (!id) {
            throw Error(Errc::BadFormat, std::string(kModule), where + ": bad id '" + row.fields[id_col] + "'");
        }
        if (!seen.insert(*id).second) {
            throw Error(Errc::DuplicateId, std::string(kModule), where + " (model " + model_name + ")", *id);
        }
        const auto p_real = io::parse_double(row.fields[real_col]);
        const auto p_fake = io::parse_double(row.fields[fake_col]);
        const auto reject = [&](const std::string& why) {
            return Error(Errc::BadProbabilities, std::string(kModule), where + " (model " + model_name + "): " + why,
                         *id);
        };
        if (!p_real || !p_fake || !std::isfinite(*p_real) || !std::isfinite(*p_fake)) {
            throw reject("probabilities must be finite numbers");
        }
        if (*p_real < 0.0 || *p_fake < 0.0) {
            throw reject("negative probability");
        }
        const double sum = *p_real + *p_fake;
        if (std::abs(sum - 1.0) > kUnitSumSlack + 1e-12) {
            throw reject("row sums to " + io::format_double(sum) + ", outside [0.99, 1.01]");
        }
        out.push_back({*id, *p_real / sum, *p_fake / sum, model_name});
    }
    return out;
}

std::vector<PredictionVector> load_prediction_file(const PredictionSource& source) {
    const std::string name = source.model_name.empty() ? source.path.stem().string() : source.model_name;
    return parse_prediction_file(io::read_file(source.path, kModule), name, source.path.string());
}

PredictionMatrix load_predictions(std::span<const PredictionSource> sources) {
    if (sources.empty()) {
        throw Error(Errc::NoModels, std::string(kModule), "no prediction files given");
    }
    PredictionMatrix matrix;
    for (const auto& source : sources) {
        const auto predictions = load_prediction_file(source);
        const std::string name = source.model_name.empty() ? source.path.stem().string() : source.model_name;
        matrix.add_model(name, predictions, source.path.string());
    }
    return matrix;
}

std::string serialize_predictions(std::span<const PredictionVector> predictions, std::string_view preamble) {
    std::string out(preamble);
    out += "id\tp_real\tp_fake\n";
    for (const auto& pv : predictions) {
        out += std::to_string(pv.item_id) + '\t' + io::format_double(pv.p_real) + '\t' + io::format_double(pv.p_fake) +
               '\n';
    }
    return out;
}

std::string serialize_ensemble(std::span<const EnsembleResult> results, std::string_view preamble) {
    std::string out(preamble);
    out += "id\tp_real\tp_fake\tlabel\n";
    for (const auto& r : results) {
        out += std::to_string(r.item_id) + '\t' + io::format_double(r.p_real) + '\t' + io::format_double(r.p_fake) +
               '\t' + std::string(to_string(r.label)) + '\n';
    }
    return out;
}

}  // namespace fakenews

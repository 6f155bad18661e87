#include "fakenews/baseline_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "fakenews/error.hpp"
#include "fakenews/io.hpp"
#include "fakenews/parallel.hpp"
#include "fakenews/unicode.hpp"

namespace fakenews {

namespace {

constexpr std::string_view kModule = "baseline_model";
constexpr std::string_view kFormat = "fakenews-bow";

using json = nlohmann::ordered_json;

json policy_to_json(const CleanPolicy& p) {
    return json{{"remove_urls", p.remove_urls},
                {"remove_mentions", p.remove_mentions},
                {"remove_emoji", p.remove_emoji},
                {"remove_hashmark_only", p.remove_hashmark_only}};
}

CleanPolicy policy_from_json(const json& j) {
    CleanPolicy p;
    p.remove_urls = j.at("remove_urls").get<bool>();
    p.remove_mentions = j.at("remove_mentions").get<bool>();
    p.remove_emoji = j.at("remove_emoji").get<bool>();
    p.remove_hashmark_only = j.at("remove_hashmark_only").get<bool>();
    return p;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    const std::string lowered = unicode::to_lower(text);
    std::vector<std::string> tokens;
    std::size_t pos = 0;
    std::size_t token_start = std::string::npos;
    while (pos < lowered.size()) {
        const std::size_t start = pos;
        const char32_t cp = unicode::next_codepoint(lowered, pos);
        if (unicode::is_word_char(cp)) {
            if (token_start == std::string::npos) {
                token_start = start;
            }
        } else if (token_start != std::string::npos) {
            tokens.emplace_back(lowered.substr(token_start, start - token_start));
            token_start = std::string::npos;
        }
    }
    if (token_start != std::string::npos) {
        tokens.emplace_back(lowered.substr(token_start));
    }
    return tokens;
}

BowModel BowModel::train(const Dataset& training, const CleanPolicy& policy, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(Errc::BadConfig, std::string(kModule), "smoothing alpha must be a positive number");
    }
    std::map<std::string, TokenCounts> counts;
    std::array<std::uint64_t, 2> docs{};
    for (const auto& item : training.items) {
        if (!item.label) {
            throw Error(Errc::UnlabeledItem, std::string(kModule), "training data must be labeled", item.id);
        }
        ++docs[index_of(*item.label)];
        for (auto& token : tokenize(clean_text(item.text, policy))) {
            auto& c = counts[std::move(token)];
            (*item.label == Label::Real ? c.real : c.fake) += 1;
        }
    }
    if (docs[0] == 0 || docs[1] == 0) {
        throw Error(Errc::DegenerateTraining, std::string(kModule),
                    "training data needs at least one real and one fake item (got " + std::to_string(docs[0]) +
                        " real, " + std::to_string(docs[1]) + " fake)");
    }

    BowModel model;
    model.alpha_ = alpha;
    model.policy_ = policy;
    model.doc_counts_ = docs;
    model.vocabulary_.reserve(counts.size());
    for (const auto& [token, c] : counts) {
        model.vocabulary_.push_back(token);
        model.token_counts_[0].push_back(c.real);
        model.token_counts_[1].push_back(c.fake);
    }
    model.rebuild();
    return model;
}

void BowModel::rebuild() {
    index_.clear();
    index_.reserve(vocabulary_.size());
    for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
        index_.emplace(vocabulary_[i], i);
    }
    const auto docs = static_cast<double>(doc_counts_[0] + doc_counts_[1]);
    const auto vocab = static_cast<double>(vocabulary_.size());
    for (std::size_t c = 0; c < 2; ++c) {
        log_priors_[c] = std::log(static_cast<double>(doc_counts_[c]) / docs);
        std::uint64_t total = 0;
        for (auto n : token_counts_[c]) {
            total += n;
        }
        const double log_denom = std::log(static_cast<double>(total) + alpha_ * vocab);
        log_likelihoods_[c].resize(vocabulary_.size());
        for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
            log_likelihoods_[c][i] = std::log(static_cast<double>(token_counts_[c][i]) + alpha_) - log_denom;
        }
    }
}

std::optional<std::size_t> BowModel::token_index(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

BowModel::TokenCounts BowModel::token_counts(std::size_t index) const noexcept {
    return {token_counts_[0][index], token_counts_[1][index]};
}

PredictionVector BowModel::predict(std::string_view text, std::uint64_t item_id) const {
    std::array<double, 2> score = log_priors_;
    for (const auto& token : tokenize(clean_text(text, policy_))) {
        auto it = index_.find(token);
        if (it == index_.end()) {
            continue;
        }
        score[0] += log_likelihoods_[0][it->second];
        score[1] += log_likelihoods_[1][it->second];
    }
    const double top = std::max(score[0], score[1]);
    const double real = std::exp(score[0] - top);
    const double fake = std::exp(score[1] - top);
    PredictionVector out;
    out.item_id = item_id;
    out.p_real = real / (real + fake);
    out.p_fake = fake / (real + fake);
    out.model_name = name_;
    return out;
}

std::vector<PredictionVector> BowModel::predict_all(const Dataset& dataset, unsigned jobs) const {
    std::vector<PredictionVector> out(dataset.items.size());
    parallel_for(dataset.items.size(), jobs,
                 [&](std::size_t i) { out[i] = predict(dataset.items[i].text, dataset.items[i].id); });
    return out;
}

std::string BowModel::to_json() const {
    json tokens = json::object();
    for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
        tokens[vocabulary_[i]] = json::array({token_counts_[0][i], token_counts_[1][i]});
    }
    json j;
    j["format"] = kFormat;
    j["version"] = 1;
    j["name"] = name_;
    j["alpha"] = alpha_;
    j["clean_policy"] = policy_to_json(policy_);
    j["class_doc_counts"] = json{{"real", doc_counts_[0]}, {"fake", doc_counts_[1]}};
    j["token_counts"] = std::move(tokens);
    return j.dump(1) + "\n";
}

BowModel BowModel::from_json(std::string_view text, const std::string& source) {
    BowModel model;
    try {
        const auto j = json::parse(text);
        if (j.at("format").get<std::string>() != kFormat) {
            throw Error(Errc::BadFormat, std::string(kModule), source + ": not a bag-of-words model file");
        }
        model.name_ = j.value("name", std::string("baseline"));
        model.alpha_ = j.at("alpha").get<double>();
        model.policy_ = policy_from_json(j.at("clean_policy"));
        model.doc_counts_ = {j.at("class_doc_counts").at("real").get<std::uint64_t>(),
                             j.at("class_doc_counts").at("fake").get<std::uint64_t>()};
        std::map<std::string, TokenCounts> counts;
        for (const auto& [token, pair] : j.at("token_counts").items()) {
            if (!pair.is_array() || pair.size() != 2) {
                throw Error(Errc::BadFormat, std::string(kModule),
                            source + ": token '" + token + "' needs [real, fake]");
            }
            counts[token] = {pair[0].get<std::uint64_t>(), pair[1].get<std::uint64_t>()};
        }
        for (const auto& [token, c] : counts) {
            model.vocabulary_.push_back(token);
            model.token_counts_[0].push_back(c.real);
            model.token_counts_[1].push_back(c.fake);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::BadFormat, std::string(kModule), source + ": " + e.what());
    }
    if (!(model.alpha_ > 0.0)) {
        throw Error(Errc::BadFormat, std::string(kModule), source + ": alpha must be positive");
    }
    if (model.doc_counts_[0] == 0 || model.doc_counts_[1] == 0) {
        throw Error(Errc::DegenerateTraining, std::string(kModule), source + ": a class has no documents");
    }
    model.rebuild();
    return model;
}

void BowModel::save(const std::filesystem::path& path) const { io::write_file_atomic(path, to_json()); }

BowModel BowModel::load(const std::filesystem::path& path) {
    return from_json(io::read_file(path, kModule), path.string());
}

}  // namespace fakenews

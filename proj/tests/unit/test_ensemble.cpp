#include <gtest/gtest.h>

#include <fstream>

#include "fakenews/ensemble.hpp"
#include "fakenews/error.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace fakenews;

namespace {

std::vector<PredictionVector> row_of(std::initializer_list<double> p_reals) {
    std::vector<PredictionVector> row;
    for (const double p : p_reals) {
        row.push_back({1, p, 1.0 - p, "m" + std::to_string(row.size())});
    }
    return row;
}

// Every row of n tenths-grid vectors, as (integer tenths, float vector) pairs.
void for_each_grid_row(
    std::size_t n,
    const std::function<void(const std::vector<oracle::TenthsVector>&, const std::vector<PredictionVector>&)>& fn) {
    std::vector<int> digits(n, 0);
    while (true) {
        std::vector<oracle::TenthsVector> exact;
        std::vector<PredictionVector> row;
        for (const int d : digits) {
            exact.push_back({d, 10 - d});
            row.push_back({1, d / 10.0, (10 - d) / 10.0, ""});
        }
        fn(exact, row);
        std::size_t k = 0;
        while (k < n && ++digits[k] > 10) {
            digits[k++] = 0;
        }
        if (k == n) {
            return;
        }
    }
}

}  // namespace

TEST(SoftVote, Examples) {
    const auto a = soft_vote(row_of({0.6, 0.8}));
    EXPECT_NEAR(a.p_real, 0.7, 1e-12);
    EXPECT_EQ(a.label, Label::Real);
    EXPECT_EQ(soft_vote(row_of({0.5})).label, Label::Real);
    const auto c = soft_vote(row_of({0.9, 0.2, 0.2}));
    EXPECT_NEAR(c.p_real, 1.3 / 3.0, 1e-12);
    EXPECT_EQ(c.label, Label::Fake);
    EXPECT_EQ(soft_vote(row_of({0.5}), Label::Fake).label, Label::Fake);
}

TEST(HardVote, Examples) {
    const auto a = hard_vote(row_of({0.6, 0.4, 0.7}));
    EXPECT_EQ(a.votes_real, 2u);
    EXPECT_EQ(a.votes_fake, 1u);
    EXPECT_EQ(a.label, Label::Real);
    const auto b = hard_vote(row_of({0.5}));
    EXPECT_EQ(b.votes_real, 1u);
    EXPECT_EQ(b.label, Label::Real);
    const auto c = hard_vote(row_of({0.9, 0.4}));
    EXPECT_EQ(c.votes_real, 1u);
    EXPECT_EQ(c.votes_fake, 1u);
    EXPECT_EQ(c.label, Label::Real);
    EXPECT_EQ(hard_vote(row_of({0.9, 0.4}), Label::Fake).label, Label::Fake);
}

TEST(Voting, EmptyRowHasNoModels) {
    for (const auto scheme : {VotingScheme::Soft, VotingScheme::Hard}) {
        try {
            vote({}, scheme);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::NoModels);
        }
    }
}

TEST(Voting, MatchesExactOracleOnSmallGrids) {
    for (const std::size_t n : {1u, 2u, 3u}) {
        for_each_grid_row(n, [](const auto& exact, const auto& row) {
            const auto soft = soft_vote(row);
            const auto hard = hard_vote(row);
            ASSERT_EQ(soft.label, oracle::soft_label(exact));
            ASSERT_NEAR(soft.p_real, oracle::soft_mean_real(exact), 1e-9);
            ASSERT_EQ(hard.label, oracle::hard_label(exact));
            ASSERT_EQ(hard.votes_real, oracle::hard_votes(exact).first);
            ASSERT_EQ(hard.votes_real + hard.votes_fake, row.size());
        });
    }
}

TEST(Voting, HardAgreesWithSoftWhenModelsAgree) {
    for (const std::size_t n : {1u, 2u, 3u}) {
        for_each_grid_row(n, [](const auto&, const auto& row) {
            const auto first = row.front().argmax();
            if (std::all_of(row.begin(), row.end(), [&](const auto& v) { return v.argmax() == first; })) {
                ASSERT_EQ(hard_vote(row).label, soft_vote(row).label);
            }
        });
    }
}

TEST(Voting, PermutationInvariant) {
    testkit::PortableRng rng(67);
    for (int i = 0; i < 2000; ++i) {
        std::vector<PredictionVector> row;
        const auto n = 1 + rng.below(6);
        for (std::size_t k = 0; k < n; ++k) {
            const double p = static_cast<double>(rng.below(11)) / 10.0;
            row.push_back({1, p, 1.0 - p, ""});
        }
        const auto soft = soft_vote(row);
        const auto hard = hard_vote(row);
        rng.shuffle(row);
        EXPECT_EQ(soft_vote(row).label, soft.label);
        EXPECT_NEAR(soft_vote(row).p_real, soft.p_real, 1e-12);
        EXPECT_EQ(hard_vote(row).label, hard.label);
        EXPECT_EQ(hard_vote(row).votes_real, hard.votes_real);
    }
}

TEST(Voting, IdenticalVectorsAverageToThemselves) {
    testkit::PortableRng rng(71);
    for (int i = 0; i < 500; ++i) {
        const double p = rng.uniform();
        std::vector<PredictionVector> row(1 + rng.below(7), PredictionVector{1, p, 1.0 - p, ""});
        const auto soft = soft_vote(row);
        EXPECT_NEAR(soft.p_real, p, 1e-12);
        EXPECT_NEAR(soft.p_fake, 1.0 - p, 1e-12);
    }
}

TEST(Voting, RaisingOneModelNeverTurnsRealIntoFake) {
    for (const std::size_t n : {1u, 2u, 3u}) {
        for_each_grid_row(n, [](const auto& exact, const auto& row) {
            if (soft_vote(row).label != Label::Real) {
                return;
            }
            for (std::size_t k = 0; k < row.size(); ++k) {
                for (int up = exact[k].real + 1; up <= 10; ++up) {
                    auto raised = row;
                    raised[k].p_real = up / 10.0;
                    raised[k].p_fake = (10 - up) / 10.0;
                    ASSERT_EQ(soft_vote(raised).label, Label::Real);
                }
            }
        });
    }
}

TEST(PredictionFile, ParsesAndRenormalizes) {
    const auto rows =
        parse_prediction_file("# model output\nid\tp_real\tp_fake\textra\n1\t0.7\t0.31\tx\n2\t0.2\t0.8\ty\n", "m");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_NEAR(rows[0].p_real + rows[0].p_fake, 1.0, 1e-15);
    EXPECT_NEAR(rows[0].p_real, 0.7 / 1.01, 1e-15);
    EXPECT_EQ(rows[1].p_real, 0.2);
    EXPECT_EQ(rows[0].model_name, "m");
}

TEST(PredictionFile, RejectsRowsOutsideOnePercent) {
    for (const auto* bad : {"1\t0.7\t0.32\n", "1\t0.5\t0.48\n", "1\t-0.1\t1.1\n", "1\tnan\t0.5\n", "1\t0.5\n"}) {
        try {
            parse_prediction_file(std::string("id\tp_real\tp_fake\n") + bad, "m");
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_TRUE(e.code() == Errc::BadProbabilities || e.code() == Errc::BadFormat) << bad;
        }
    }
    EXPECT_NO_THROW(parse_prediction_file("id\tp_real\tp_fake\n1\t0.5\t0.49\n", "m"));
    EXPECT_THROW(parse_prediction_file("id\tp_real\tp_fake\n1\t0.5\t0.5\n1\t0.5\t0.5\n", "m"), Error);
}

TEST(PredictionMatrix, AlignsModelsById) {
    const std::vector<PredictionVector> b{{2, 0.8, 0.2, "b"}, {1, 0.9, 0.1, "b"}};
    std::vector<PredictionVector> a{{1, 0.1, 0.9, "a"}, {2, 0.2, 0.8, "a"}};
    PredictionMatrix m;
    m.add_model("a", a, "a.tsv");
    m.add_model("b", b, "b.tsv");
    EXPECT_EQ(m.model_count(), 2u);
    EXPECT_EQ(m.item_count(), 2u);
    ASSERT_NE(m.row(2), nullptr);
    EXPECT_EQ((*m.row(2))[1].p_real, 0.8);
    EXPECT_EQ(m.row(3), nullptr);
}

TEST(PredictionMatrix, IdSetMismatchNamesBothFiles) {
    PredictionMatrix m;
    m.add_model("a", std::vector<PredictionVector>{{1, 0.5, 0.5, ""}, {2, 0.5, 0.5, ""}}, "first.tsv");
    try {
        m.add_model("b", std::vector<PredictionVector>{{1, 0.5, 0.5, ""}, {3, 0.5, 0.5, ""}}, "second.tsv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::IdSetMismatch);
        const std::string what = e.what();
        EXPECT_NE(what.find("first.tsv"), std::string::npos);
        EXPECT_NE(what.find("second.tsv"), std::string::npos);
    }
    EXPECT_THROW(m.add_model("a", std::vector<PredictionVector>{{1, 0.5, 0.5, ""}, {2, 0.5, 0.5, ""}}), Error);
}

TEST(PredictionFiles, LoadUsesStemAsModelName) {
    const auto dir = testkit::make_temp_dir("fakenews-ensemble");
    {
        std::ofstream(dir / "roberta.tsv") << "id\tp_real\tp_fake\n1\t0.9\t0.1\n2\t0.3\t0.7\n";
        std::ofstream(dir / "xlnet.tsv") << "id\tp_real\tp_fake\n2\t0.4\t0.6\n1\t0.6\t0.4\n";
    }
    const std::vector<PredictionSource> sources{{dir / "roberta.tsv", ""}, {dir / "xlnet.tsv", "renamed"}};
    const auto m = load_predictions(sources);
    EXPECT_EQ(m.model_names(), (std::vector<std::string>{"roberta", "renamed"}));
    const auto results = vote_all(m, VotingScheme::Soft);
    ASSERT_EQ(results.size(), 2u);
    EXPECT_EQ(results[0].item_id, 1u);
    EXPECT_NEAR(results[0].p_real, 0.75, 1e-12);
    EXPECT_EQ(results[1].label, Label::Fake);
    EXPECT_THROW(load_predictions({}), Error);
    std::filesystem::remove_all(dir);
}

TEST(Serialization, EnsembleColumns) {
    const std::vector<EnsembleResult> results{soft_vote(row_of({0.25, 0.75}))};
    EXPECT_EQ(serialize_ensemble(results, "# x\n"), "# x\nid\tp_real\tp_fake\tlabel\n1\t0.5\t0.5\treal\n");
}

#include <gtest/gtest.h>

#include <random>

#include "mpbandit/assignment.hpp"
#include "mpbandit/regret.hpp"
#include "mpbandit/simulation.hpp"
#include "oracles.hpp"

using namespace mpbandit;

TEST(Assignment, SmallKnownInstance) {
    const std::vector<std::vector<double>> cost{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
    const auto assign = solve_min_assignment(cost);
    double total = 0;
    for (std::size_t r = 0; r < 3; ++r) total += cost[r][assign[r]];
    EXPECT_EQ(total, 5.0);
}

TEST(Assignment, RectangularMax) {
    const std::vector<std::vector<double>> gain{{1, 9, 3, 4}, {8, 9, 1, 1}};
    const auto assign = solve_max_assignment(gain);
    EXPECT_EQ(assign, (std::vector<std::size_t>{1, 0}));
}

TEST(Gmax, ConstantPlaysPicksTopColumns) {
    RewardMatrix y;
    const std::vector<std::vector<double>> rows{{1, 0, 1, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}};
    for (const auto& r : rows) y.push_row(r);
    const std::vector<int> plays{2, 2, 2};
    EXPECT_EQ(g_max(y, plays).value, 5.0);
}

TEST(Gmax, MatchesBruteForce) {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + gen() % 5;
        const int b = 1 + static_cast<int>(gen() % std::min<std::size_t>(3, n));
        const std::size_t t_len = 1 + gen() % 8;
        std::vector<std::vector<double>> rows(t_len, std::vector<double>(n));
        std::vector<int> plays(t_len);
        RewardMatrix y;
        for (std::size_t t = 0; t < t_len; ++t) {
            for (double& x : rows[t]) x = static_cast<double>(gen() % 9) / 8.0;
            plays[t] = 1 + static_cast<int>(gen() % static_cast<std::size_t>(b));
            y.push_row(rows[t]);
        }
        EXPECT_EQ(g_max(y, plays).value, oracle::gmax_brute(rows, plays)) << "trial " << trial;
    }
}

TEST(Gmax, ShapeErrors) {
    RewardMatrix y;
    const std::vector<double> r{1, 0};
    y.push_row(r);
    const std::vector<double> wrong{1, 0, 1};
    EXPECT_THROW(y.push_row(wrong), Error);
    const std::vector<int> plays{1, 1};
    EXPECT_THROW(g_max(y, plays), Error);
}

TEST(Regret, NonNegativePerReplica) {
    SingleConfig cfg{Environment(BernoulliEnv::harmonic(6)), {}, ScalingSpec::uniform(1, 3)};
    cfg.horizon = 500;
    for (std::uint64_t r = 0; r < 3; ++r) {
        const SingleRun run = run_single(cfg, 4, r);
        double acc = 0;
        for (std::size_t t = 0; t < run.gained.size(); ++t) {
            acc += run.gained[t];
            EXPECT_GE(run.gmax[t], acc);
        }
    }
}

TEST(Regret, ReportShapes) {
    SingleConfig cfg{Environment(BernoulliEnv::harmonic(5)), {}, ScalingSpec::uniform(1, 2)};
    cfg.horizon = 100;
    const RegretReport rep = pseudo_regret(cfg, 3, 1, 2);
    EXPECT_EQ(rep.regret_mean.size(), 100u);
    EXPECT_EQ(rep.bound.size(), 100u);
    EXPECT_EQ(rep.replicas, 3u);
    for (std::size_t t = 0; t < 100; ++t) EXPECT_NEAR(rep.bound[t], rep.bound_realized[t], 1e-9 * rep.bound[t]);
}

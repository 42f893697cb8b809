#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "mpbandit/dep_round.hpp"
#include "mpbandit/random.hpp"

using namespace mpbandit;

TEST(DepRound, IntegralInputIsReturnedAsIs) {
    Rng rng(1);
    const std::vector<double> p{1, 0, 1, 0, 1};
    DepRoundStats stats;
    EXPECT_EQ(dep_round(3, p, rng, &stats), (ArmSet{0, 2, 4}));
    EXPECT_EQ(stats.iterations, 0u);
}

TEST(DepRound, AlwaysExactlyMDistinctArms) {
    Rng rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 2 + rng() % 10;
        const int m = 1 + static_cast<int>(rng() % (n - 1));
        std::vector<double> p(n);
        for (double& x : p) x = uniform01(rng);
        const double s = std::accumulate(p.begin(), p.end(), 0.0);
        for (double& x : p) x *= m / s;
        if (*std::max_element(p.begin(), p.end()) > 1.0) continue;
        DepRoundStats stats;
        const ArmSet out = dep_round(m, p, rng, &stats);
        EXPECT_EQ(out.size(), static_cast<std::size_t>(m));
        EXPECT_EQ(std::set<std::size_t>(out.begin(), out.end()).size(), out.size());
        EXPECT_LE(stats.iterations, n - 1);
    }
}

TEST(DepRound, MarginalsMatchForFixedInstance) {
    Rng rng(11);
    const std::vector<double> p{0.9, 0.3, 0.5, 0.2, 0.1};
    std::vector<int> hits(p.size(), 0);
    const int draws = 200000;
    for (int d = 0; d < draws; ++d) {
        for (std::size_t k : dep_round(2, p, rng)) ++hits[k];
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double sd = std::sqrt(p[k] * (1 - p[k]) / draws);
        EXPECT_NEAR(hits[k] / double(draws), p[k], 4 * sd) << "arm " << k;
    }
}

TEST(DepRound, PairsAreNegativelyCorrelated) {
    // Two arms at 0.5 with m = 1 are never chosen together.
    Rng rng(2);
    const std::vector<double> p{0.5, 0.5, 0.0};
    for (int d = 0; d < 1000; ++d) EXPECT_EQ(dep_round(1, p, rng).size(), 1u);
}

TEST(DepRound, Validation) {
    Rng rng(1);
    const std::vector<double> bad_sum{0.5, 0.5, 0.5};
    const std::vector<double> out_of_range{1.2, 0.4, 0.4};
    const std::vector<double> ok{0.5, 0.5, 0.0};
    for (const auto* p : {&bad_sum, &out_of_range}) {
        try {
            dep_round(1, *p, rng);
            ADD_FAILURE() << "expected an error";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidMarginals);
        }
    }
    EXPECT_THROW(dep_round(0, ok, rng), Error);
    EXPECT_THROW(dep_round(3, ok, rng), Error);
}

TEST(DepRound, SameSeedSameDraws) {
    const std::vector<double> p{0.4, 0.4, 0.4, 0.4, 0.4};
    Rng a(123), b(123);
    for (int d = 0; d < 100; ++d) EXPECT_EQ(dep_round(2, p, a), dep_round(2, p, b));
}

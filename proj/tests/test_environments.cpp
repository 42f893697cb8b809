#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "mpbandit/environments.hpp"
#include "mpbandit/intrusion_trace.hpp"

using namespace mpbandit;

TEST(Bernoulli, HarmonicMeans) {
    const auto env = BernoulliEnv::harmonic(10);
    EXPECT_DOUBLE_EQ(env.means[0], 0.75);
    EXPECT_DOUBLE_EQ(env.means[9], 0.075);
    EXPECT_THROW(BernoulliEnv({0.5, 1.5}), Error);
}

TEST(Bernoulli, EmpiricalMeans) {
    const BernoulliEnv env({0.2, 0.7});
    Rng rng(8);
    double s0 = 0, s1 = 0;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) {
        const auto y = bernoulli_rewards(env, t, rng);
        s0 += y[0];
        s1 += y[1];
    }
    EXPECT_NEAR(s0 / draws, 0.2, 0.006);
    EXPECT_NEAR(s1 / draws, 0.7, 0.006);
}

TEST(PayoffProfile, CanonicalOrder) {
    const PayoffProfile p({0.3, 0.9, 0.3, 1.0});
    const auto c = p.canonical();
    EXPECT_EQ(c.mu, (std::vector<double>{1.0, 0.9, 0.3, 0.3}));
    EXPECT_EQ(c.origin, (std::vector<std::size_t>{3, 1, 0, 2}));
    EXPECT_FALSE(p.is_homogeneous());
    EXPECT_TRUE(PayoffProfile::homogeneous(3).is_homogeneous());
    EXPECT_THROW(PayoffProfile({0.0, 1.0}), Error);
    EXPECT_THROW(PayoffProfile({}), Error);
    const std::vector<double> y{1, 1, 0, 1};
    EXPECT_DOUBLE_EQ(set_payoff(p, y, ArmSet{0, 2, 3}), 1.3);
}

TEST(SyntheticTrace, OnlyAttackedArmsFire) {
    SyntheticTraceConfig cfg;
    cfg.attacked = {4, 17};
    Rng rng(2);
    const IntrusionTrace trace = synthesize_intrusion_trace(cfg, rng);
    EXPECT_EQ(trace.arms(), 26u);
    EXPECT_EQ(trace.rounds(), 7000u);
    const auto density = trace.attack_density();
    for (std::size_t k = 0; k < 26; ++k) {
        if (k == 4 || k == 17) {
            EXPECT_GT(density[k], 0.1);
            EXPECT_LT(density[k], 0.6);
        } else {
            EXPECT_EQ(density[k], 0.0);
        }
    }
}

TEST(SyntheticTrace, BurstsLastThreeToFiveSeconds) {
    SyntheticTraceConfig cfg;
    cfg.attacked = {0};
    cfg.intrusions = 20;
    cfg.round_window_seconds = 0.1;
    Rng rng(6);
    const IntrusionTrace trace = synthesize_intrusion_trace(cfg, rng);
    std::size_t run = 0;
    std::vector<std::size_t> runs;
    for (std::size_t t = 0; t < trace.rounds(); ++t) {
        if (trace.at(t, 0)) {
            ++run;
        } else if (run) {
            runs.push_back(run);
            run = 0;
        }
    }
    ASSERT_FALSE(runs.empty());
    for (std::size_t r : runs) {
        // 3 s at 0.1 s per round; touching bursts only lengthen a run
        EXPECT_GE(r, 30u);
    }
}

TEST(SyntheticTrace, RejectsBadConfig) {
    Rng rng(1);
    SyntheticTraceConfig cfg;
    EXPECT_THROW(synthesize_intrusion_trace(cfg, rng), Error);
    cfg.attacked = {3, 3};
    EXPECT_THROW(synthesize_intrusion_trace(cfg, rng), Error);
    cfg.attacked = {30};
    EXPECT_THROW(synthesize_intrusion_trace(cfg, rng), Error);
}

TEST(Ingest, BucketsRowsByWindow) {
    const IngestResult res = ingest_can_log(std::string(MPBANDIT_TEST_DATA) + "/can_small.csv", CanColumnMap{});
    EXPECT_EQ(res.trace.labels(), (std::vector<std::string>{"018f", "0260", "0316"}));
    EXPECT_EQ(res.trace.rounds(), 3u);
    EXPECT_EQ(res.summary.rows, 6u);
    EXPECT_EQ(res.summary.injected_rows, 2u);
    EXPECT_EQ(res.trace.at(0, 2), 1);
    EXPECT_EQ(res.trace.at(2, 0), 1);
    EXPECT_EQ(res.trace.at(1, 1), 0);
}

TEST(Ingest, ShortFramesTakeTrailingFlag) {
    std::istringstream in(
        "Timestamp,CAN ID,DLC,DATA[0],DATA[1],DATA[2],Flag\n"
        "0.0,0001,1,aa,T\n"
        "0.1,0002,3,aa,bb,cc,R\n");
    const IngestResult res = ingest_can_log(in, CanColumnMap{});
    EXPECT_EQ(res.trace.at(0, 0), 1);
    EXPECT_EQ(res.trace.at(0, 1), 0);
}

TEST(Ingest, Errors) {
    auto kind_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            ingest_can_log(in, CanColumnMap{});
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    EXPECT_EQ(kind_of("Timestamp,Flag\n0.0,T\n"), ErrorKind::Schema);
    EXPECT_EQ(kind_of("Timestamp,CAN ID,Flag\n"), ErrorKind::EmptyInput);
    EXPECT_EQ(kind_of(""), ErrorKind::EmptyInput);
    EXPECT_EQ(kind_of("Timestamp,CAN ID,Flag\nabc,0001,T\n"), ErrorKind::Parse);
    EXPECT_THROW(ingest_can_log("/nonexistent/log.csv", CanColumnMap{}), Error);
}

TEST(TraceCache, RoundTrip) {
    SyntheticTraceConfig cfg;
    cfg.attacked = {1, 5};
    cfg.horizon = 500;
    cfg.n_arms = 8;
    cfg.intrusions = 20;
    Rng rng(3);
    const IntrusionTrace trace = synthesize_intrusion_trace(cfg, rng);
    const auto stem = (std::filesystem::temp_directory_path() / "mpbandit_trace_cache").string();
    write_trace_cache(trace, stem);
    EXPECT_EQ(read_trace_cache(stem), trace);
}

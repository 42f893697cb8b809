// Acceptance checks A1..A11. With no arguments every criterion runs; otherwise
// only the named ones. Prints one PASS/FAIL line per criterion and exits
// non-zero if any failed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mpbandit/mpbandit.hpp"
#include "mpbandit/experiment/config.hpp"
#include "mpbandit/experiment/runner.hpp"
#include "oracles.hpp"

using namespace mpbandit;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Verdict a1_equilibrium() {
    GameConfig cfg;
    cfg.n = 10;
    cfg.horizon = 100000;
    cfg.scaling = ScalingSpec::truncated_gaussian(1, 3, 2.0, 0.8);
    const std::size_t replicas = 20;
    std::vector<std::pair<double, double>> tails(replicas);
    parallel_for(replicas, workers(), [&](std::size_t r) { tails[r] = run_game(cfg, 1001, r).tail_means(20000); });
    double att = 0, def = 0;
    for (const auto& [r, s] : tails) {
        att += r / replicas;
        def += s / replicas;
    }
    const bool ok = std::abs(att - 0.80) <= 0.03 && std::abs(def - 0.20) <= 0.03;
    return {ok, "attacker " + fmt("%.4f", att) + " (0.80 +/- 0.03), defender " + fmt("%.4f", def) +
                    " (0.20 +/- 0.03) over the final 20000 of 100000 rounds, 20 replicas"};
}

// A2 and A3 share one set of runs.
struct SingleInstance {
    SingleConfig cfg{Environment(BernoulliEnv::harmonic(10)), {Algorithm::Exp3MVP, 0.1}, ScalingSpec::uniform(1, 3)};
    std::vector<SingleRun> runs;
};

const SingleInstance& single_instance() {
    static const SingleInstance inst = [] {
        SingleInstance s;
        s.cfg.horizon = 20000;
        s.cfg.record_weights = true;
        s.runs = run_replicas(s.cfg, 10, 2002, workers());
        return s;
    }();
    return inst;
}

Verdict a2_regret_bound() {
    const auto& inst = single_instance();
    const RegretReport rep = regret_report(inst.cfg, inst.runs);
    std::size_t violations = 0;
    double worst_ratio = 0.0;
    for (std::size_t t = 0; t < rep.regret_mean.size(); ++t) {
        violations += rep.regret_mean[t] > rep.bound[t];
        worst_ratio = std::max(worst_ratio, rep.regret_mean[t] / rep.bound[t]);
    }
    return {violations == 0, "mean regret above the bound at " + std::to_string(violations) +
                                 " of 20000 rounds; max regret/bound " + fmt("%.4f", worst_ratio) +
                                 "; final regret " + fmt("%.1f", rep.regret_mean.back()) + " vs bound " +
                                 fmt("%.1f", rep.bound.back()) + ", 10 replicas"};
}

Verdict a3_weight_concentration() {
    const auto& inst = single_instance();
    double worst = 1.0;
    for (std::size_t t = 15000; t < 20000; ++t) {
        double mean = 0.0;
        for (const auto& run : inst.runs) {
            const auto& w = run.normalized_weights[t];
            mean += (w[0] + w[1] + w[2]) / static_cast<double>(inst.runs.size());
        }
        worst = std::min(worst, mean);
    }
    return {worst >= 0.8, "min over t >= 15000 of mean normalized weight on arms 1-3: " + fmt("%.4f", worst) +
                              " (need >= 0.8)"};
}

Verdict a4_parity() {
    SyntheticTraceConfig tc;
    tc.n_arms = 26;
    tc.horizon = 7000;
    Rng pick = make_rng(4004, 0, Stream::Trace);
    std::vector<std::size_t> arms(26);
    std::iota(arms.begin(), arms.end(), std::size_t{0});
    std::shuffle(arms.begin(), arms.end(), pick);
    tc.attacked = {std::min(arms[0], arms[1]), std::max(arms[0], arms[1])};
    const auto trace = std::make_shared<const IntrusionTrace>(synthesize_intrusion_trace(tc, pick));
    const Environment env(trace);

    auto final_mean = [&](Algorithm alg, ScalingSpec scaling) {
        SingleConfig cfg{env, {alg, 0.1}, scaling};
        cfg.horizon = 7000;
        cfg.track_gmax = false;
        double total = 0.0;
        const auto runs = run_replicas(cfg, 10, 4004, workers());
        for (const auto& run : runs) total += std::accumulate(run.gained.begin(), run.gained.end(), 0.0) / 7000.0;
        return total / static_cast<double>(runs.size());
    };
    const double vp = final_mean(Algorithm::Exp3MVP, ScalingSpec::truncated_gaussian(1, 3, 2.0, 0.8));
    const double m3 = final_mean(Algorithm::Exp3M, ScalingSpec::constant(3));
    const double e3 = final_mean(Algorithm::Exp3, ScalingSpec::constant(1));
    const double ucb = final_mean(Algorithm::UCB1, ScalingSpec::constant(1));
    const double eg = final_mean(Algorithm::EpsilonGreedy, ScalingSpec::constant(1));

    const double rel = std::abs(vp - m3) / std::max(vp, m3);
    const double best_baseline = std::max({e3, ucb, eg});
    const bool parity = rel <= 0.10;
    const bool above = std::min(vp, m3) > best_baseline;
    const auto density = trace->attack_density();
    return {parity && above,
            "Exp3.M-VP " + fmt("%.4f", vp) + ", Exp3.M " + fmt("%.4f", m3) + " (relative gap " + fmt("%.3f", rel) +
                ", need <= 0.10: " + (parity ? "ok" : "no") + "); Exp3 " + fmt("%.4f", e3) + ", UCB1 " +
                fmt("%.4f", ucb) + ", eps-greedy " + fmt("%.4f", eg) + " (both above all three: " +
                (above ? "ok" : "no") + "); attack densities " + fmt("%.3f", density[tc.attacked[0]]) + ", " +
                fmt("%.3f", density[tc.attacked[1]]) + ", 10 replicas"};
}

Verdict a5_dep_round() {
    Rng gen(5005);
    const int draws = 100000;
    std::size_t outside = 0, wrong_size = 0, checked = 0;
    double worst_z = 0.0;
    for (int inst = 0; inst < 50; ++inst) {
        const std::size_t n = 2 + gen() % 11;
        const int m = 1 + static_cast<int>(gen() % (n - 1));
        // random marginals in [0, 1] summing to m: p_i = min(1, c x_i), c by bisection
        std::vector<double> x(n), p(n);
        for (double& v : x) v = uniform01(gen) + 1e-3;
        double lo = 0.0, hi = 1e6;
        for (int it = 0; it < 200; ++it) {
            const double c = 0.5 * (lo + hi);
            double s = 0.0;
            for (double v : x) s += std::min(1.0, c * v);
            (s < m ? lo : hi) = c;
        }
        for (std::size_t k = 0; k < n; ++k) p[k] = std::min(1.0, hi * x[k]);
        std::vector<int> hits(n, 0);
        for (int d = 0; d < draws; ++d) {
            const ArmSet s = dep_round(m, p, gen);
            wrong_size += s.size() != static_cast<std::size_t>(m);
            for (std::size_t k : s) ++hits[k];
        }
        for (std::size_t k = 0; k < n; ++k) {
            const double sd = std::sqrt(p[k] * (1 - p[k]) / draws);
            const double diff = std::abs(hits[k] / double(draws) - p[k]);
            ++checked;
            if (sd == 0.0) {
                outside += diff != 0.0;
                continue;
            }
            worst_z = std::max(worst_z, diff / sd);
            outside += diff > 3 * sd;
        }
    }
    const double expected = 0.0027 * static_cast<double>(checked);
    const bool ok = wrong_size == 0 && outside == 0;
    return {ok, std::to_string(outside) + " of " + std::to_string(checked) + " arm frequencies beyond 3 sd (about " +
                    fmt("%.1f", expected) + " expected by chance), max |z| " + fmt("%.2f", worst_z) + "; " +
                    std::to_string(wrong_size) + " draws with the wrong size; 50 instances x 1e5 draws"};
}

Verdict a6_marginal_sum() {
    std::mt19937_64 gen(6006);
    double worst = 0.0;
    std::size_t capped_states = 0, not_one = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 2 + gen() % 30;
        const int m = 1 + static_cast<int>(gen() % (n - 1));
        const double eta = std::uniform_real_distribution<>(0.0, 0.999)(gen);
        const double spread = std::uniform_real_distribution<>(0.0, 700.0)(gen);
        std::vector<double> w(n);
        for (double& x : w) x = std::exp(std::uniform_real_distribution<>(-spread, 0.0)(gen));
        const Marginals mg = marginals_from_weights(WeightState(w, eta), m);
        worst = std::max(worst, std::abs(std::accumulate(mg.probs.begin(), mg.probs.end(), 0.0) - m));
        capped_states += !mg.capped.empty();
        for (std::size_t i : mg.capped) not_one += mg.probs[i] != 1.0;
    }
    return {worst <= 1e-9 && not_one == 0, "max |sum - m| = " + fmt("%.3g", worst) + " (need <= 1e-9); " +
                                               std::to_string(capped_states) + " of 10000 states capped, " +
                                               std::to_string(not_one) + " capped marginals != 1"};
}

Verdict a7_gmax() {
    std::mt19937_64 gen(7007);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + gen() % 5;
        const int b = 1 + static_cast<int>(gen() % std::min<std::size_t>(3, n - 1));
        const std::size_t len = 1 + gen() % 8;
        std::vector<std::vector<double>> rows(len, std::vector<double>(n));
        std::vector<int> plays(len);
        RewardMatrix y;
        for (std::size_t t = 0; t < len; ++t) {
            for (double& x : rows[t]) x = static_cast<double>(gen() % 9) / 8.0;
            plays[t] = 1 + static_cast<int>(gen() % static_cast<std::size_t>(b));
            y.push_row(rows[t]);
        }
        mismatches += g_max(y, plays).value != oracle::gmax_brute(rows, plays);
    }
    return {mismatches == 0, std::to_string(mismatches) + " of 200 instances differ from brute force (zero tolerance)"};
}

Verdict a8_kstar() {
    std::mt19937_64 gen(8008);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + gen() % 4;
        std::vector<double> mu(n);
        for (double& m : mu) m = std::uniform_real_distribution<>(0.05, 1.0)(gen);
        const int a = 1 + static_cast<int>(gen() % (n - 1));
        worst = std::max(worst, std::abs(kstar_interval(PayoffProfile(mu), a, a).upper - oracle::kstar_upper_grid(mu, a)));
    }
    std::size_t homogeneous_mismatch = 0;
    for (std::size_t n = 2; n <= 12; ++n) {
        for (int a = 1; a < static_cast<int>(n); ++a) {
            for (int b = a; b < static_cast<int>(n); ++b) {
                const BoundInterval iv = kstar_interval(PayoffProfile::homogeneous(n), a, b);
                const auto [lo, hi] = theorem2_bounds(n, a, b);
                homogeneous_mismatch += iv.lower != lo || iv.upper != hi;
            }
        }
    }
    return {worst <= 2e-3 && homogeneous_mismatch == 0,
            "max |upper - grid max| = " + fmt("%.2e", worst) + " over 50 profiles (need <= 2e-3); " +
                std::to_string(homogeneous_mismatch) + " homogeneous (N, a, b) differ from the closed form"};
}

Verdict a9_containment() {
    std::mt19937_64 gen(9009);
    std::size_t outside = 0;
    std::ostringstream detail;
    for (int p = 0; p < 10; ++p) {
        GameConfig cfg;
        cfg.n = 10;
        cfg.horizon = 100000;
        cfg.scaling = ScalingSpec::truncated_gaussian(1, 3, 2.0, 0.8);
        cfg.payoff.resize(10);
        for (double& m : cfg.payoff) m = std::uniform_real_distribution<>(0.2, 1.0)(gen);
        const BoundInterval iv = kstar_interval(cfg.profile(), 1, 3);
        std::vector<double> tails(4);
        parallel_for(tails.size(), workers(),
                     [&](std::size_t r) { tails[r] = run_game(cfg, 9009 + p, r).tail_means(50000).first; });
        const double measured = std::accumulate(tails.begin(), tails.end(), 0.0) / tails.size();
        const bool in = measured >= iv.lower - 0.02 && measured <= iv.upper + 0.02;
        outside += !in;
        detail << (p ? "; " : "") << fmt("%.3f", measured) << " in [" << fmt("%.3f", iv.lower) << ", "
               << fmt("%.3f", iv.upper) << "]" << (in ? "" : " OUT");
    }
    return {outside == 0, std::to_string(outside) + " of 10 profiles outside +/- 0.02: " + detail.str()};
}

Verdict a10_closed_forms() {
    std::mt19937_64 gen(10010);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 100);
        const int a = 1 + static_cast<int>(gen() % static_cast<unsigned>(n - 1));
        const int b = a + static_cast<int>(gen() % static_cast<unsigned>(n - a));
        const double eta = std::uniform_real_distribution<>(1e-4, 1.0)(gen);
        const double horizon = std::floor(std::exp(std::uniform_real_distribution<>(0.0, 16.0)(gen)));
        const double gmax = std::uniform_real_distribution<>(0.0, b * horizon)(gen);
        const double nu = std::uniform_real_distribution<>(1e-3, n - 1e-3)(gen);
        const TunedRate r = corollary11_eta(n, a, b, horizon);
        const auto eq = equilibrium_values(n, nu);
        const auto [lo, hi] = theorem2_bounds(n, a, b);
        using oracle::Big;
        worst = std::max({worst, oracle::rel_err(theorem1_bound(gmax, n, a, b, eta), oracle::theorem1(gmax, n, a, b, eta)),
                          oracle::rel_err(r.eta, oracle::cor11_eta(n, a, b, horizon)),
                          oracle::rel_err(r.regret_ceiling, oracle::cor11_ceiling(n, a, b, horizon)),
                          oracle::rel_err(eq.defender, Big(nu) / Big(n)),
                          oracle::rel_err(eq.attacker, (Big(n) - Big(nu)) / Big(n)),
                          oracle::rel_err(lo, Big(n - b) / Big(n)), oracle::rel_err(hi, Big(n - a) / Big(n))});
    }
    return {worst <= 1e-12, "max relative error vs 50-digit evaluation " + fmt("%.2e", worst) + " (need <= 1e-12)"};
}

Verdict a11_determinism() {
    using namespace mpbandit::experiment;
    const fs::path root = fs::temp_directory_path() / "mpbandit_acceptance_a11";
    fs::remove_all(root);
    std::vector<json> configs = {
        {{"kind", "game"}, {"seed", 11}, {"horizon", 5000}, {"replicas", 3}},
        {{"kind", "single_player"}, {"seed", 12}, {"horizon", 2000}, {"replicas", 2}},
        {{"kind", "compare"}, {"seed", 13}, {"horizon", 1500}, {"replicas", 2}},
        {{"kind", "sweep"}, {"seed", 14}, {"sweep", "arm_count"}, {"horizon", 800}, {"replicas", 2}},
        {{"kind", "bounds"}, {"seed", 15}},
    };
    std::size_t files = 0, differing = 0;
    std::string first_diff;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const std::string kind = configs[i]["kind"];
        json user = configs[i];
        user["output_dir"] = (root / (kind + "_a")).string();
        user["workers"] = workers();
        run_experiment(resolve_config(user, kind, {.seed_from_environment = false}));

        // replay from the manifest alone, single worker
        std::ifstream in(root / (kind + "_a") / "manifest.json");
        json manifest = json::parse(in);
        manifest["output_dir"] = (root / (kind + "_b")).string();
        manifest["workers"] = 1;
        run_experiment(resolve_config(manifest, kind, {.seed_from_environment = false}));

        for (const auto& entry : fs::directory_iterator(root / (kind + "_a"))) {
            if (entry.path().extension() != ".csv") continue;
            ++files;
            std::ifstream fa(entry.path(), std::ios::binary), fb(root / (kind + "_b") / entry.path().filename(), std::ios::binary);
            std::stringstream sa, sb;
            sa << fa.rdbuf();
            sb << fb.rdbuf();
            if (sa.str() != sb.str()) {
                ++differing;
                if (first_diff.empty()) first_diff = kind + "/" + entry.path().filename().string();
            }
        }
    }
    fs::remove_all(root);
    return {differing == 0 && files > 0, std::to_string(files) + " CSV files across 5 experiment kinds, " +
                                             std::to_string(differing) + " differ between run and manifest replay" +
                                             (first_diff.empty() ? "" : " (first: " + first_diff + ")")};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"A1", a1_equilibrium},   {"A2", a2_regret_bound}, {"A3", a3_weight_concentration},
        {"A4", a4_parity},        {"A5", a5_dep_round},    {"A6", a6_marginal_sum},
        {"A7", a7_gmax},          {"A8", a8_kstar},        {"A9", a9_containment},
        {"A10", a10_closed_forms}, {"A11", a11_determinism},
    };
    std::set<std::string> wanted(argv + 1, argv + argc);
    for (const auto& w : wanted) {
        if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == w; })) {
            std::cerr << "unknown criterion " << w << '\n';
            return 2;
        }
    }
    int failed = 0;
    for (const auto& [id, run] : criteria) {
        if (!wanted.empty() && !wanted.count(id)) continue;
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::cout << id << ' ' << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
        failed += !v.pass;
    }
    return failed == 0 ? 0 : 1;
}

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <variant>
#include <vector>

#include "mpbandit/bounds.hpp"
#include "mpbandit/environments.hpp"
#include "mpbandit/error.hpp"
#include "mpbandit/intrusion_trace.hpp"
#include "mpbandit/learners.hpp"
#include "mpbandit/parallel.hpp"
#include "mpbandit/random.hpp"
#include "mpbandit/regret.hpp"
#include "mpbandit/scaling.hpp"

namespace mpbandit {

/// Either a stochastic Bernoulli process or a fixed indicator trace replayed
/// from round 0.
class Environment {
public:
    Environment(BernoulliEnv env) : source_(std::move(env)) {}
    Environment(std::shared_ptr<const IntrusionTrace> trace) : source_(std::move(trace)) {
        if (!std::get<1>(source_)) throw Error(ErrorKind::InvalidConfig, "null trace");
    }

    std::size_t arms() const {
        if (const auto* b = std::get_if<BernoulliEnv>(&source_)) return b->size();
        return std::get<1>(source_)->arms();
    }

    /// Rounds available, or 0 for an unbounded stochastic source.
    std::size_t rounds() const {
        if (std::holds_alternative<BernoulliEnv>(source_)) return 0;
        return std::get<1>(source_)->rounds();
    }

    std::vector<double> rewards(std::size_t t, Rng& rng) const {
        if (const auto* b = std::get_if<BernoulliEnv>(&source_)) return bernoulli_rewards(*b, t, rng);
        const auto& trace = *std::get<1>(source_);
        if (t >= trace.rounds()) throw Error(ErrorKind::Shape, "trace shorter than the horizon");
        return trace.rewards(t);
    }

private:
    std::variant<BernoulliEnv, std::shared_ptr<const IntrusionTrace>> source_;
};

struct SingleConfig {
    Environment environment;
    LearnerParams learner;
    ScalingSpec scaling;  // ignored by single-play learners
    int budget = 0;       // L_t for budget_threshold; 0 means b
    std::size_t average_window = 10;
    std::size_t horizon = 1000;
    bool record_weights = false;
    bool track_gmax = true;
};

struct SingleRun {
    RewardMatrix rewards;
    std::vector<int> plays;
    std::vector<ArmSet> chosen;
    std::vector<double> gained;
    std::vector<double> gmax;  // hindsight optimum of the first t + 1 rounds
    // Only with record_weights: state at the start of each round.
    std::vector<std::vector<double>> marginals;
    std::vector<std::vector<double>> normalized_weights;
};

/// Play-count range the learner actually sees.
inline std::pair<int, int> effective_play_range(const SingleConfig& cfg) {
    if (plays_multiple(cfg.learner.algorithm)) return {cfg.scaling.a, cfg.scaling.b};
    return {1, 1};
}

inline SingleRun run_single(const SingleConfig& cfg, std::uint64_t seed, std::uint64_t replica) {
    const std::size_t n = cfg.environment.arms();
    if (cfg.environment.rounds() != 0 && cfg.environment.rounds() < cfg.horizon) {
        throw Error(ErrorKind::InvalidConfig, "trace has fewer rounds than the horizon");
    }
    const bool multi = plays_multiple(cfg.learner.algorithm);
    if (multi) cfg.scaling.validate(n);
    const auto [a, b] = effective_play_range(cfg);

    Rng env_rng = make_rng(seed, replica, Stream::Environment);
    Rng learner_rng = make_rng(seed, replica, Stream::Learner);
    Rng scaling_rng = make_rng(seed, replica, Stream::Scaling);

    Learner learner(n, cfg.learner);
    MovingAverage average(n, cfg.average_window);
    GmaxTracker tracker(n, b);
    const int budget = cfg.budget > 0 ? cfg.budget : b;

    SingleRun run;
    run.plays.reserve(cfg.horizon);
    run.chosen.reserve(cfg.horizon);
    run.gained.reserve(cfg.horizon);
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const std::vector<double> y = cfg.environment.rewards(t, env_rng);
        const int m = multi ? sample_arm_count(cfg.scaling, average, budget, scaling_rng) : 1;
        if (cfg.record_weights) {
            if (const WeightState* w = learner.weights()) {
                run.normalized_weights.push_back(w->normalized());
                run.marginals.push_back(marginals_from_weights(*w, m).probs);
            } else if (const HedgeState* h = learner.hedge()) {
                run.normalized_weights.push_back(hedge_distribution(*h));
                run.marginals.push_back(exp3_distribution(*h, cfg.learner.eta));
            }
        }
        const ArmSet& chosen = learner.select(m, learner_rng);
        std::vector<double> observed;
        observed.reserve(chosen.size());
        double gain = 0.0;
        for (std::size_t k : chosen) {
            observed.push_back(y[k]);
            gain += y[k];
        }
        RoundOutcome outcome = learner.update(observed);
        average.update(outcome.estimates);

        run.rewards.push_row(y);
        run.plays.push_back(m);
        run.chosen.push_back(std::move(outcome.chosen));
        run.gained.push_back(gain);
        if (cfg.track_gmax) {
            tracker.add(y, m);
            run.gmax.push_back(tracker.solve().value);
        }
    }
    return run;
}

inline std::vector<SingleRun> run_replicas(const SingleConfig& cfg, std::size_t replicas, std::uint64_t seed,
                                           std::size_t workers = 1) {
    if (replicas < 1) throw Error(ErrorKind::InvalidConfig, "need at least one replica");
    std::vector<SingleRun> runs(replicas);
    parallel_for(replicas, workers, [&](std::size_t r) { runs[r] = run_single(cfg, seed, r); });
    return runs;
}

struct MeanCurve {
    std::vector<double> mean;
    std::vector<double> stderr_;
};

/// Pointwise mean and standard error over equally long curves.
inline MeanCurve mean_curve(const std::vector<std::vector<double>>& curves) {
    MeanCurve out;
    if (curves.empty()) return out;
    const std::size_t len = curves.front().size();
    const double r = static_cast<double>(curves.size());
    out.mean.assign(len, 0.0);
    out.stderr_.assign(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        for (const auto& c : curves) sum += c[t];
        const double mean = sum / r;
        double ss = 0.0;
        for (const auto& c : curves) ss += (c[t] - mean) * (c[t] - mean);
        out.mean[t] = mean;
        out.stderr_[t] = curves.size() > 1 ? std::sqrt(ss / (r - 1.0)) / std::sqrt(r) : 0.0;
    }
    return out;
}

struct RegretReport {
    std::vector<double> learner_reward;  // mean G^J(t)
    std::vector<double> gmax;            // mean G_max(t)
    std::vector<double> regret_mean;
    std::vector<double> regret_stderr;
    std::vector<double> bound;           // theorem-1 bound at mean G_max(t); empty if undefined
    std::vector<double> bound_realized;  // mean over replicas of the per-replica bound
    int a = 1;
    int b = 1;
    double eta = 0.0;
    std::size_t replicas = 0;
};

/// Regret per replica against that replica's own realized rewards, then
/// averaged. The bound is linear in G_max, so both bound columns coincide up
/// to rounding; both are reported.
inline RegretReport regret_report(const SingleConfig& cfg, const std::vector<SingleRun>& runs) {
    RegretReport rep;
    const auto [a, b] = effective_play_range(cfg);
    rep.a = a;
    rep.b = b;
    rep.eta = cfg.learner.eta;
    rep.replicas = runs.size();
    const std::size_t n = cfg.environment.arms();

    std::vector<std::vector<double>> regret, gained, gmax, bounds;
    for (const SingleRun& run : runs) {
        if (run.gmax.size() != run.gained.size()) throw Error(ErrorKind::Shape, "run was made without G_max tracking");
        std::vector<double> cum(run.gained.size()), r(run.gained.size());
        double acc = 0.0;
        for (std::size_t t = 0; t < run.gained.size(); ++t) {
            acc += run.gained[t];
            cum[t] = acc;
            r[t] = run.gmax[t] - acc;
        }
        regret.push_back(std::move(r));
        gained.push_back(std::move(cum));
        gmax.push_back(run.gmax);
    }
    const MeanCurve rc = mean_curve(regret);
    rep.regret_mean = rc.mean;
    rep.regret_stderr = rc.stderr_;
    rep.learner_reward = mean_curve(gained).mean;
    rep.gmax = mean_curve(gmax).mean;

    const bool bound_defined = rep.eta > 0.0 && rep.eta <= 1.0 && static_cast<std::size_t>(b) < n;
    if (bound_defined) {
        rep.bound.resize(rep.gmax.size());
        for (std::size_t t = 0; t < rep.gmax.size(); ++t) rep.bound[t] = theorem1_bound(rep.gmax[t], n, a, b, rep.eta);
        for (const auto& g : gmax) {
            std::vector<double> bc(g.size());
            for (std::size_t t = 0; t < g.size(); ++t) bc[t] = theorem1_bound(g[t], n, a, b, rep.eta);
            bounds.push_back(std::move(bc));
        }
        rep.bound_realized = mean_curve(bounds).mean;
    }
    return rep;
}

inline RegretReport pseudo_regret(const SingleConfig& cfg, std::size_t replicas, std::uint64_t seed,
                                  std::size_t workers = 1) {
    return regret_report(cfg, run_replicas(cfg, replicas, seed, workers));
}

}  // namespace mpbandit

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mpbandit/error.hpp"
#include "mpbandit/exp3m_vp.hpp"
#include "mpbandit/random.hpp"

namespace mpbandit {

/// Full-information Hedge: cumulative rewards per arm and the base (1 + iota).
struct HedgeState {
    std::vector<double> cumulative;
    double iota = std::numbers::e - 1.0;

    HedgeState(std::size_t n_arms, double iota_ = std::numbers::e - 1.0) : cumulative(n_arms, 0.0), iota(iota_) {
        if (n_arms < 2) throw Error(ErrorKind::InvalidParameter, "need at least 2 arms");
        if (!(iota > 0.0)) throw Error(ErrorKind::InvalidParameter, "iota must be positive");
    }

    std::size_t size() const noexcept { return cumulative.size(); }

    void add(std::span<const double> rewards) {
        for (std::size_t k = 0; k < cumulative.size(); ++k) cumulative[k] += rewards[k];
    }
};

/// (1+iota)^{r_k} / sum_j (1+iota)^{r_j}, evaluated relative to the largest r.
inline std::vector<double> hedge_distribution(const HedgeState& state) {
    const double log_base = std::log1p(state.iota);
    const double top = *std::max_element(state.cumulative.begin(), state.cumulative.end());
    std::vector<double> beta(state.size());
    double total = 0.0;
    for (std::size_t k = 0; k < beta.size(); ++k) {
        beta[k] = std::exp(log_base * (state.cumulative[k] - top));
        total += beta[k];
    }
    for (double& b : beta) b /= total;
    return beta;
}

/// Exp3 sampling distribution: Hedge mixed with uniform exploration.
inline std::vector<double> exp3_distribution(const HedgeState& state, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "eta must lie in [0, 1], got " + std::to_string(eta));
    }
    std::vector<double> p = hedge_distribution(state);
    const double floor = eta / static_cast<double>(p.size());
    for (double& x : p) x = (1.0 - eta) * x + floor;
    return p;
}

inline std::size_t sample_index(std::span<const double> probs, Rng& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) return k;
    }
    // u landed in the rounding gap above the last partial sum.
    for (std::size_t k = probs.size(); k-- > 0;) {
        if (probs[k] > 0.0) return k;
    }
    return probs.size() - 1;
}

/// Feeds Hedge the simulated reward vector for the played arm.
inline RoundOutcome exp3_update(HedgeState& state, std::span<const double> probs, double eta, std::size_t arm,
                                double reward) {
    check_reward(reward);
    const std::size_t n = state.size();
    RoundOutcome out;
    out.chosen = {arm};
    out.observed = {{arm, reward}};
    out.estimates.assign(n, 0.0);
    out.estimates[arm] = eta / static_cast<double>(n) * reward / probs[arm];
    out.marginals.probs.assign(probs.begin(), probs.end());
    out.marginals.m = 1;
    state.add(out.estimates);
    return out;
}

template <class RewardOracle>
std::pair<RoundOutcome, HedgeState> exp3_round(HedgeState hedge, double eta, RewardOracle&& oracle, Rng& rng) {
    const std::vector<double> probs = exp3_distribution(hedge, eta);
    const std::size_t arm = sample_index(probs, rng);
    const double reward = oracle(arm);
    RoundOutcome outcome = exp3_update(hedge, probs, eta, arm, reward);
    return {std::move(outcome), std::move(hedge)};
}

}  // namespace mpbandit

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpbandit/dep_round.hpp"
#include "mpbandit/error.hpp"
#include "mpbandit/random.hpp"
#include "mpbandit/weights.hpp"

namespace mpbandit {

struct Observation {
    std::size_t arm = 0;
    double reward = 0.0;
};

/// What happened in one round: the arms played, the rewards seen on them and
/// the importance-weighted estimate for every arm (zero off the played set).
struct RoundOutcome {
    ArmSet chosen;
    std::vector<Observation> observed;
    std::vector<double> estimates;
    Marginals marginals;
};

inline void check_reward(double reward) {
    if (!(reward >= 0.0 && reward <= 1.0)) {
        throw Error(ErrorKind::InvalidReward, "reward must lie in [0, 1], got " + std::to_string(reward));
    }
}

/// Applies the importance-weighted multiplicative update for the played arms.
/// `rewards` is aligned with `chosen`. Capped arms keep their weight.
inline RoundOutcome exp3mvp_update(WeightState& state, Marginals marginals, ArmSet chosen,
                                   std::span<const double> rewards) {
    const std::size_t n = state.size();
    if (rewards.size() != chosen.size()) {
        throw Error(ErrorKind::Shape, "one reward per chosen arm expected");
    }
    RoundOutcome out;
    out.estimates.assign(n, 0.0);
    out.observed.reserve(chosen.size());
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        check_reward(rewards[k]);
        const std::size_t arm = chosen[k];
        out.observed.push_back({arm, rewards[k]});
        out.estimates[arm] = rewards[k] / marginals.probs[arm];
    }

    std::vector<char> is_capped(n, 0);
    for (std::size_t i : marginals.capped) is_capped[i] = 1;

    auto& w = state.mutable_weights();
    const double scale = marginals.m * state.eta() / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_capped[i] && out.estimates[i] != 0.0) w[i] *= std::exp(scale * out.estimates[i]);
    }
    const double max_w = *std::max_element(w.begin(), w.end());
    for (double& x : w) {
        x = std::max(x / max_w, std::numeric_limits<double>::min());
    }
    state.advance();

    out.chosen = std::move(chosen);
    out.marginals = std::move(marginals);
    return out;
}

/// One full round: marginals, dependent rounding, reward observation, update.
/// `oracle(const ArmSet&)` returns one reward in [0, 1] per chosen arm.
template <class RewardOracle>
std::pair<RoundOutcome, WeightState> exp3mvp_round(WeightState state, int m, RewardOracle&& oracle, Rng& rng) {
    Marginals marginals = marginals_from_weights(state, m);
    ArmSet chosen = dep_round(m, marginals.probs, rng);
    const std::vector<double> rewards = oracle(std::as_const(chosen));
    RoundOutcome outcome = exp3mvp_update(state, std::move(marginals), std::move(chosen), rewards);
    return {std::move(outcome), std::move(state)};
}

}  // namespace mpbandit

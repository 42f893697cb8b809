#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "mpbandit/error.hpp"
#include "mpbandit/random.hpp"

namespace mpbandit {

/// Pull counts and running means for the single-play stochastic baselines.
struct FrequentistState {
    std::vector<std::size_t> counts;
    std::vector<double> means;
    std::size_t total = 0;

    explicit FrequentistState(std::size_t n_arms) : counts(n_arms, 0), means(n_arms, 0.0) {}

    std::size_t size() const noexcept { return counts.size(); }

    void update(std::size_t arm, double reward) {
        ++counts[arm];
        ++total;
        means[arm] += (reward - means[arm]) / static_cast<double>(counts[arm]);
    }
};

namespace detail {

inline std::size_t argmax_lowest(const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

}  // namespace detail

/// UCB1: play each arm once, then maximize mean + sqrt(2 ln t / n_i).
inline std::size_t ucb1_select(const FrequentistState& state) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state.counts[i] == 0) return i;
    }
    const double log_t = std::log(static_cast<double>(state.total));
    std::vector<double> index(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        index[i] = state.means[i] + std::sqrt(2.0 * log_t / static_cast<double>(state.counts[i]));
    }
    return detail::argmax_lowest(index);
}

inline std::size_t epsilon_greedy_select(const FrequentistState& state, double epsilon, Rng& rng) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "epsilon must lie in [0, 1], got " + std::to_string(epsilon));
    }
    const double coin = uniform01(rng);
    if (coin < epsilon) {
        return std::uniform_int_distribution<std::size_t>(0, state.size() - 1)(rng);
    }
    return detail::argmax_lowest(state.means);
}

}  // namespace mpbandit

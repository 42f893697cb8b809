#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mpbandit/error.hpp"
#include "mpbandit/random.hpp"
#include "mpbandit/weights.hpp"

namespace mpbandit {

/// Independent Bernoulli arms.
struct BernoulliEnv {
    std::vector<double> means;

    explicit BernoulliEnv(std::vector<double> means_) : means(std::move(means_)) {
        for (double m : means) {
            if (!(m >= 0.0 && m <= 1.0)) throw Error(ErrorKind::InvalidParameter, "Bernoulli mean outside [0, 1]");
        }
    }

    /// Arm k (0-based) has mean scale / (k + 1); scale = 0.75 gives 0.75, 0.375, ..., 0.075 for 10 arms.
    static BernoulliEnv harmonic(std::size_t n_arms, double scale = 0.75) {
        std::vector<double> means(n_arms);
        for (std::size_t k = 0; k < n_arms; ++k) means[k] = scale / static_cast<double>(k + 1);
        return BernoulliEnv(std::move(means));
    }

    std::size_t size() const noexcept { return means.size(); }
};

/// One independent draw per arm. The round index is unused; the process is stationary.
inline std::vector<double> bernoulli_rewards(const BernoulliEnv& env, std::size_t /*round*/, Rng& rng) {
    std::vector<double> y(env.size());
    for (std::size_t k = 0; k < env.size(); ++k) y[k] = uniform01(rng) < env.means[k] ? 1.0 : 0.0;
    return y;
}

/// Location-dependent reward multipliers mu_k in (0, 1], in original arm order.
struct PayoffProfile {
    std::vector<double> mu;

    explicit PayoffProfile(std::vector<double> mu_) : mu(std::move(mu_)) {
        if (mu.empty()) throw Error(ErrorKind::InvalidParameter, "payoff profile is empty");
        for (double m : mu) {
            if (!(m > 0.0 && m <= 1.0)) {
                throw Error(ErrorKind::InvalidParameter, "payoff mu must lie in (0, 1], got " + std::to_string(m));
            }
        }
    }

    static PayoffProfile homogeneous(std::size_t n_arms) { return PayoffProfile(std::vector<double>(n_arms, 1.0)); }

    std::size_t size() const noexcept { return mu.size(); }

    bool is_homogeneous() const {
        return std::all_of(mu.begin(), mu.end(), [](double m) { return m == 1.0; });
    }

    struct Canonical {
        std::vector<double> mu;           // non-increasing
        std::vector<std::size_t> origin;  // origin[k] = original arm of sorted position k
    };

    /// Sorted non-increasing copy, ties kept in original order.
    Canonical canonical() const {
        Canonical c;
        c.origin.resize(mu.size());
        std::iota(c.origin.begin(), c.origin.end(), std::size_t{0});
        std::stable_sort(c.origin.begin(), c.origin.end(), [&](std::size_t l, std::size_t r) { return mu[l] > mu[r]; });
        c.mu.reserve(mu.size());
        for (std::size_t k : c.origin) c.mu.push_back(mu[k]);
        return c;
    }
};

inline double heterogeneous_payoff(const PayoffProfile& profile, double base_reward, std::size_t arm) {
    if (arm >= profile.size()) throw Error(ErrorKind::InvalidParameter, "arm index out of range");
    return profile.mu[arm] * base_reward;
}

/// sum_{j in set} mu_j y_j.
inline double set_payoff(const PayoffProfile& profile, std::span<const double> base_rewards, const ArmSet& arms) {
    double total = 0.0;
    for (std::size_t j : arms) total += heterogeneous_payoff(profile, base_rewards[j], j);
    return total;
}

}  // namespace mpbandit

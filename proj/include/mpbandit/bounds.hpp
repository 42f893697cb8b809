#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mpbandit/environments.hpp"
#include "mpbandit/error.hpp"

namespace mpbandit {

namespace detail {

inline void check_play_range(std::size_t n, int a, int b) {
    if (a < 1 || a > b || static_cast<std::size_t>(b) >= n) {
        throw Error(ErrorKind::InvalidParameter, "need 1 <= a <= b < N (a = " + std::to_string(a) + ", b = " +
                                                     std::to_string(b) + ", N = " + std::to_string(n) + ")");
    }
}

}  // namespace detail

/// Expected-regret ceiling of the variable-play learner for a fixed eta:
/// (1 + (e-2) b/a) eta G_max + (N / eta) ln(N / b).
inline double theorem1_bound(double gmax, std::size_t n, int a, int b, double eta) {
    detail::check_play_range(n, a, b);
    if (!(eta > 0.0 && eta <= 1.0)) throw Error(ErrorKind::InvalidParameter, "eta must lie in (0, 1]");
    if (!(gmax >= 0.0)) throw Error(ErrorKind::InvalidParameter, "G_max must be non-negative");
    const double nd = static_cast<double>(n);
    return (1.0 + (std::numbers::e - 2.0) * b / a) * eta * gmax + nd / eta * std::log(nd / b);
}

struct TunedRate {
    double eta = 1.0;
    double regret_ceiling = 0.0;
};

/// Horizon-tuned exploration rate and the regret ceiling it guarantees.
inline TunedRate corollary11_eta(std::size_t n, int a, int b, double horizon) {
    detail::check_play_range(n, a, b);
    if (!(horizon >= 1.0)) throw Error(ErrorKind::InvalidParameter, "horizon must be >= 1");
    const double nd = static_cast<double>(n);
    const double log_ratio = std::log(nd / b);
    const double em2 = std::numbers::e - 2.0;
    TunedRate out;
    out.eta = std::min(1.0, std::sqrt(nd * a * log_ratio / ((a + em2 * b) * b * horizon)));
    out.regret_ceiling = 2.0 * std::sqrt(1.0 + em2 * b / a) * std::sqrt(b * horizon * nd * log_ratio);
    return out;
}

struct EquilibriumValues {
    double defender = 0.0;
    double attacker = 0.0;
};

/// Long-run average rewards when the play count has mean nu.
inline EquilibriumValues equilibrium_values(std::size_t n, double nu) {
    const double nd = static_cast<double>(n);
    if (!(nu > 0.0 && nu < nd)) throw Error(ErrorKind::InvalidParameter, "need 0 < nu < N");
    return {nu / nd, (nd - nu) / nd};
}

/// Attacker average-reward interval ((N-b)/N, (N-a)/N).
inline std::pair<double, double> theorem2_bounds(std::size_t n, int a, int b) {
    detail::check_play_range(n, a, b);
    const double nd = static_cast<double>(n);
    return {(nd - b) / nd, (nd - a) / nd};
}

struct BoundInterval {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t kstar_lower = 0;
    std::size_t kstar_upper = 0;
    double harmonic_lower = 0.0;  // sum_{j <= K*_lower} 1/mu_j
    double harmonic_upper = 0.0;
};

/// V_c(K) = (K - c) / sum_{j <= K} 1/mu_j over the sorted profile, for K = 1..N
/// (index K - 1).
inline std::vector<double> support_values(const std::vector<double>& sorted_mu, int c) {
    std::vector<double> values(sorted_mu.size());
    double harmonic = 0.0;
    for (std::size_t k = 0; k < sorted_mu.size(); ++k) {
        harmonic += 1.0 / sorted_mu[k];
        values[k] = (static_cast<double>(k + 1) - c) / harmonic;
    }
    return values;
}

/// Heterogeneous-payoff attacker interval. The attacker spreads its play over
/// the K highest-payoff locations with mu_k d_k constant; the endpoint for c
/// scans is max over K in (c, N] of V_c(K), smallest K on ties. Upper uses
/// c = a, lower uses c = b.
inline BoundInterval kstar_interval(const PayoffProfile& profile, int a, int b) {
    const std::size_t n = profile.size();
    detail::check_play_range(n, a, b);
    const std::vector<double> mu = profile.canonical().mu;

    auto best = [&](int c, std::size_t& kstar, double& harmonic) {
        const std::vector<double> values = support_values(mu, c);
        kstar = static_cast<std::size_t>(c) + 1;
        for (std::size_t k = kstar + 1; k <= n; ++k) {
            if (values[k - 1] > values[kstar - 1]) kstar = k;
        }
        harmonic = 0.0;
        for (std::size_t k = 0; k < kstar; ++k) harmonic += 1.0 / mu[k];
        return values[kstar - 1];
    };

    BoundInterval out;
    out.upper = best(a, out.kstar_upper, out.harmonic_upper);
    out.lower = best(b, out.kstar_lower, out.harmonic_lower);
    return out;
}

}  // namespace mpbandit

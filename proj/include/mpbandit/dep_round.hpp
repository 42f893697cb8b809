#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mpbandit/error.hpp"
#include "mpbandit/random.hpp"
#include "mpbandit/weights.hpp"

namespace mpbandit {

namespace detail {

// Entries this close to 0 or 1 are treated as already integral.
inline constexpr double kIntegralEps = 1e-12;

inline bool is_fractional(double p) { return p > kIntegralEps && p < 1.0 - kIntegralEps; }

}  // namespace detail

inline constexpr double kMarginalSumTolerance = 1e-9;

struct DepRoundStats {
    std::size_t iterations = 0;
};

/// Dependent rounding: draws exactly m distinct arms so that arm i is included
/// with probability probs[i]. Each iteration settles at least one of the two
/// lowest-indexed fractional entries, so the loop runs at most N - 1 times.
inline ArmSet dep_round(int m, std::span<const double> probs, Rng& rng, DepRoundStats* stats = nullptr) {
    const std::size_t n = probs.size();
    if (m < 1 || static_cast<std::size_t>(m) >= n) {
        throw Error(ErrorKind::InvalidMarginals, "dep_round needs 1 <= m < N");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= -detail::kIntegralEps && p <= 1.0 + detail::kIntegralEps)) {
            throw Error(ErrorKind::InvalidMarginals, "marginal outside [0, 1]: " + std::to_string(p));
        }
        sum += p;
    }
    if (std::abs(sum - m) > kMarginalSumTolerance) {
        throw Error(ErrorKind::InvalidMarginals,
                    "marginals sum to " + std::to_string(sum) + ", expected " + std::to_string(m));
    }

    std::vector<double> p(probs.begin(), probs.end());
    for (double& x : p) {
        if (!detail::is_fractional(x)) x = x < 0.5 ? 0.0 : 1.0;
    }

    std::size_t iterations = 0;
    std::size_t i = 0;
    for (;;) {
        while (i < n && !detail::is_fractional(p[i])) ++i;
        std::size_t j = i + 1;
        while (j < n && !detail::is_fractional(p[j])) ++j;
        if (i >= n) break;
        if (j >= n) {
            // A lone fractional entry is a rounding residue of the sum check.
            p[i] = p[i] < 0.5 ? 0.0 : 1.0;
            break;
        }
        ++iterations;
        const double rho = std::min(1.0 - p[i], p[j]);
        const double zeta = std::min(p[i], 1.0 - p[j]);
        if (uniform01(rng) * (rho + zeta) < zeta) {
            // (p_i + rho, p_j - rho) with probability zeta / (rho + zeta)
            if (rho == 1.0 - p[i]) {
                p[j] -= rho;
                p[i] = 1.0;
            } else {
                p[i] += rho;
                p[j] = 0.0;
            }
        } else {
            // (p_i - zeta, p_j + zeta) with probability rho / (rho + zeta)
            if (zeta == p[i]) {
                p[j] += zeta;
                p[i] = 0.0;
            } else {
                p[i] -= zeta;
                p[j] = 1.0;
            }
        }
        if (!detail::is_fractional(p[i])) p[i] = p[i] < 0.5 ? 0.0 : 1.0;
        if (!detail::is_fractional(p[j])) p[j] = p[j] < 0.5 ? 0.0 : 1.0;
    }

    ArmSet chosen;
    chosen.reserve(static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < n; ++k) {
        if (p[k] == 1.0) chosen.push_back(k);
    }
    if (chosen.size() != static_cast<std::size_t>(m)) {
        throw Error(ErrorKind::NumericPathology,
                    "dep_round produced " + std::to_string(chosen.size()) + " arms, expected " + std::to_string(m));
    }
    if (stats != nullptr) stats->iterations = iterations;
    return chosen;
}

}  // namespace mpbandit

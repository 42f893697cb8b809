#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mpbandit/error.hpp"

namespace mpbandit {

using ArmSet = std::vector<std::size_t>;

/// Exponential weights of a multi-play learner together with its exploration
/// rate and round counter. Weights are positive, finite, and max-normalized
/// after each update.
class WeightState {
public:
    WeightState(std::size_t n_arms, double eta) : weights_(n_arms, 1.0), eta_(eta) {
        if (n_arms < 2) {
            throw Error(ErrorKind::InvalidParameter, "need at least 2 arms, got " + std::to_string(n_arms));
        }
        check_eta(eta);
    }

    WeightState(std::vector<double> weights, double eta, std::size_t round = 0)
        : weights_(std::move(weights)), eta_(eta), round_(round) {
        if (weights_.size() < 2) {
            throw Error(ErrorKind::InvalidParameter, "need at least 2 arms");
        }
        for (double w : weights_) {
            if (!(w > 0.0) || !std::isfinite(w)) {
                throw Error(ErrorKind::InvalidParameter, "weights must be positive and finite");
            }
        }
        check_eta(eta);
    }

    std::size_t size() const noexcept { return weights_.size(); }
    std::span<const double> weights() const noexcept { return weights_; }
    double eta() const noexcept { return eta_; }
    std::size_t round() const noexcept { return round_; }

    // Mutable access for the learner update; callers must keep weights valid.
    std::vector<double>& mutable_weights() noexcept { return weights_; }
    void advance() noexcept { ++round_; }

    /// w_i / sum_j w_j.
    std::vector<double> normalized() const {
        const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
        std::vector<double> out(weights_.size());
        std::transform(weights_.begin(), weights_.end(), out.begin(), [total](double w) { return w / total; });
        return out;
    }

private:
    static void check_eta(double eta) {
        if (!(eta >= 0.0 && eta < 1.0)) {
            throw Error(ErrorKind::InvalidParameter, "eta must lie in [0, 1), got " + std::to_string(eta));
        }
    }

    std::vector<double> weights_;
    double eta_;
    std::size_t round_ = 0;
};

/// Per-arm inclusion probabilities for one round. Sums to `m`; arms in
/// `capped` have probability exactly 1.
struct Marginals {
    std::vector<double> probs;
    ArmSet capped;
    int m = 0;
};

struct CapResult {
    double kappa = 0.0;
    ArmSet capped;
};

/// Solves kappa / (sum_{w_i >= kappa} kappa + sum_{w_i < kappa} w_i) = target.
///
/// Weights are scanned in decreasing order. For a candidate cap-set size k the
/// equation is linear in kappa: kappa_k = target * rest_k / (1 - k * target),
/// where rest_k is the sum of all but the k largest weights. The first k with
/// w_(k) >= kappa_k > w_(k+1) is the solution. Weights equal to kappa are
/// capped.
inline CapResult cap_threshold(std::span<const double> weights, double target) {
    if (!(target > 0.0 && target < 1.0)) {
        throw Error(ErrorKind::InvalidTarget, "cap target must lie in (0, 1), got " + std::to_string(target));
    }
    const std::size_t n = weights.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t lhs, std::size_t rhs) { return weights[lhs] > weights[rhs]; });

    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw Error(ErrorKind::NumericPathology, "cap_threshold needs positive finite weights");
        }
    }
    // suffix[k]: sum of all but the k largest, smallest-first
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] + weights[order[k]];

    constexpr double slack = 1e-12;
    for (std::size_t k = 1; k <= n; ++k) {
        const double top = weights[order[k - 1]];
        const double rest = suffix[k];
        const double denom = 1.0 - static_cast<double>(k) * target;
        if (!(denom > 0.0)) break;
        const double kappa = target * rest / denom;
        const double next = k < n ? weights[order[k]] : -std::numeric_limits<double>::infinity();
        if (top >= kappa * (1.0 - slack) && kappa > next) {
            CapResult out;
            out.kappa = std::min(kappa, top);
            out.capped.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
            std::sort(out.capped.begin(), out.capped.end());
            return out;
        }
    }
    throw Error(ErrorKind::NumericPathology, "no consistent cap-set size found");
}

/// Target ratio (1/m - eta/N) / (1 - eta) used both by the capping trigger and
/// by cap_threshold.
inline double cap_target(int m, std::size_t n_arms, double eta) {
    return (1.0 / m - eta / static_cast<double>(n_arms)) / (1.0 - eta);
}

inline void check_play_count(int m, std::size_t n_arms) {
    if (m < 1 || static_cast<std::size_t>(m) >= n_arms) {
        throw Error(ErrorKind::InvalidPlayCount,
                    "play count must satisfy 1 <= m < N (m = " + std::to_string(m) + ", N = " +
                        std::to_string(n_arms) + ")");
    }
}

/// Selection marginals for m plays, with heavy arms capped at probability 1.
inline Marginals marginals_from_weights(const WeightState& state, int m) {
    const std::size_t n = state.size();
    check_play_count(m, n);
    const double eta = state.eta();
    const double nd = static_cast<double>(n);

    const auto raw = state.weights();
    const double max_w = *std::max_element(raw.begin(), raw.end());
    std::vector<double> w(n);
    std::transform(raw.begin(), raw.end(), w.begin(), [max_w](double x) { return x / max_w; });
    const double total = std::accumulate(w.begin(), w.end(), 0.0);

    const double target = cap_target(m, n, eta);
    Marginals out;
    out.m = m;
    if (1.0 >= target * total) {
        CapResult cap = cap_threshold(w, target);
        for (std::size_t i : cap.capped) w[i] = cap.kappa;
        out.capped = std::move(cap.capped);
    }

    const double capped_total = std::accumulate(w.begin(), w.end(), 0.0);
    out.probs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.probs[i] = m * ((1.0 - eta) * w[i] / capped_total + eta / nd);
    }
    for (std::size_t i : out.capped) out.probs[i] = 1.0;
    return out;
}

}  // namespace mpbandit

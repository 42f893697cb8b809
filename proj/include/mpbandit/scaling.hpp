#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpbandit/error.hpp"
#include "mpbandit/random.hpp"

namespace mpbandit {

/// Per-arm mean of the last `window` reward estimates. Arms with no history
/// average to zero.
class MovingAverage {
public:
    MovingAverage(std::size_t n_arms, std::size_t window)
        : window_(window), buffers_(n_arms, std::vector<double>(window, 0.0)), sums_(n_arms, 0.0) {
        if (window == 0) throw Error(ErrorKind::InvalidParameter, "moving-average window must be positive");
    }

    std::size_t window() const noexcept { return window_; }
    std::size_t size() const noexcept { return sums_.size(); }
    std::size_t filled() const noexcept { return filled_; }

    void update(std::span<const double> estimates) {
        if (estimates.size() != sums_.size()) throw Error(ErrorKind::Shape, "estimate vector has wrong length");
        for (std::size_t i = 0; i < sums_.size(); ++i) buffers_[i][head_] = estimates[i];
        head_ = (head_ + 1) % window_;
        filled_ = std::min(filled_ + 1, window_);
        for (std::size_t i = 0; i < sums_.size(); ++i) {
            double s = 0.0;
            for (double x : buffers_[i]) s += x;
            sums_[i] = s;
        }
    }

    double average(std::size_t arm) const {
        return filled_ == 0 ? 0.0 : sums_[arm] / static_cast<double>(filled_);
    }

    std::vector<double> averages() const {
        std::vector<double> out(sums_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = average(i);
        return out;
    }

private:
    std::size_t window_;
    std::vector<std::vector<double>> buffers_;
    std::vector<double> sums_;
    std::size_t head_ = 0;
    std::size_t filled_ = 0;
};

enum class ScalingKind { Constant, UniformDiscrete, TruncatedGaussian, BudgetThreshold };

inline std::string_view to_string(ScalingKind kind) {
    switch (kind) {
        case ScalingKind::Constant: return "constant";
        case ScalingKind::UniformDiscrete: return "uniform_discrete";
        case ScalingKind::TruncatedGaussian: return "truncated_gaussian";
        case ScalingKind::BudgetThreshold: return "budget_threshold";
    }
    return "unknown";
}

inline ScalingKind parse_scaling_kind(std::string_view name) {
    if (name == "constant") return ScalingKind::Constant;
    if (name == "uniform_discrete") return ScalingKind::UniformDiscrete;
    if (name == "truncated_gaussian") return ScalingKind::TruncatedGaussian;
    if (name == "budget_threshold") return ScalingKind::BudgetThreshold;
    throw Error(ErrorKind::InvalidSpec, "unknown scaling kind '" + std::string(name) + "'");
}

/// How many arms to play each round. Every kind emits values in [a, b].
struct ScalingSpec {
    ScalingKind kind = ScalingKind::Constant;
    int a = 1;
    int b = 1;
    double mean = 1.0;  // truncated_gaussian centre (nu)
    double stddev = 1.0;
    // budget_threshold: arms whose moving average exceeds this count as "hot".
    double threshold = 0.5;

    static ScalingSpec constant(int m) { return {ScalingKind::Constant, m, m, static_cast<double>(m), 0.0, 0.5}; }
    static ScalingSpec uniform(int a, int b) {
        return {ScalingKind::UniformDiscrete, a, b, 0.5 * (a + b), 0.0, 0.5};
    }
    static ScalingSpec truncated_gaussian(int a, int b, double mean, double stddev) {
        return {ScalingKind::TruncatedGaussian, a, b, mean, stddev, 0.5};
    }

    void validate(std::size_t n_arms) const {
        if (a < 1 || a > b || static_cast<std::size_t>(b) >= n_arms) {
            throw Error(ErrorKind::InvalidSpec, "scaling bounds must satisfy 1 <= a <= b < N (a = " +
                                                    std::to_string(a) + ", b = " + std::to_string(b) +
                                                    ", N = " + std::to_string(n_arms) + ")");
        }
        if (kind == ScalingKind::TruncatedGaussian && !(stddev > 0.0)) {
            throw Error(ErrorKind::InvalidSpec, "truncated_gaussian needs a positive stddev");
        }
    }
};

/// Draws M_t. `budget` is the externally supplied resource level L_t.
inline int sample_arm_count(const ScalingSpec& spec, const MovingAverage& ma, int budget, Rng& rng) {
    spec.validate(ma.size());
    switch (spec.kind) {
        case ScalingKind::Constant:
            return spec.a;
        case ScalingKind::UniformDiscrete:
            return std::uniform_int_distribution<int>(spec.a, spec.b)(rng);
        case ScalingKind::TruncatedGaussian: {
            // Reject outside [a - 1/2, b + 1/2] and round, so every integer in
            // [a, b] owns a unit-width bin and a symmetric interval keeps the mean.
            std::normal_distribution<double> normal(spec.mean, spec.stddev);
            const double lo = spec.a - 0.5;
            const double hi = spec.b + 0.5;
            for (int attempt = 0; attempt < 1'000'000; ++attempt) {
                const double x = normal(rng);
                if (x >= lo && x <= hi) {
                    return std::clamp(static_cast<int>(std::lround(x)), spec.a, spec.b);
                }
            }
            throw Error(ErrorKind::NumericPathology, "truncated_gaussian rejection sampler did not terminate");
        }
        case ScalingKind::BudgetThreshold: {
            // count of hot arms, capped by budget
            int hot = 0;
            for (std::size_t i = 0; i < ma.size(); ++i) {
                if (ma.average(i) > spec.threshold) ++hot;
            }
            return std::clamp(std::min(budget, std::max(hot, 1)), spec.a, spec.b);
        }
    }
    return spec.a;
}

}  // namespace mpbandit

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mpbandit/assignment.hpp"
#include "mpbandit/error.hpp"

namespace mpbandit {

/// Row-major T x N matrix of realized rewards.
class RewardMatrix {
public:
    RewardMatrix() = default;
    RewardMatrix(std::size_t rounds, std::size_t arms) : rounds_(rounds), arms_(arms), data_(rounds * arms, 0.0) {}

    std::size_t rounds() const noexcept { return rounds_; }
    std::size_t arms() const noexcept { return arms_; }

    double& operator()(std::size_t t, std::size_t k) { return data_[t * arms_ + k]; }
    double operator()(std::size_t t, std::size_t k) const { return data_[t * arms_ + k]; }

    std::span<const double> row(std::size_t t) const { return {data_.data() + t * arms_, arms_}; }

    void push_row(std::span<const double> y) {
        if (arms_ == 0 && rounds_ == 0) arms_ = y.size();
        if (y.size() != arms_) throw Error(ErrorKind::Shape, "reward row has the wrong length");
        data_.insert(data_.end(), y.begin(), y.end());
        ++rounds_;
    }

private:
    std::size_t rounds_ = 0;
    std::size_t arms_ = 0;
    std::vector<double> data_;
};

struct GmaxResult {
    double value = 0.0;
    // ranking[j] is the location holding rank j + 1: it is played whenever M_t > j.
    std::vector<std::size_t> ranking;
};

/// Gain of placing location k at rank j: sum of y_k(t) over rounds with M_t > j.
/// Accumulates one round at a time so a whole regret curve costs one small
/// assignment solve per round.
class GmaxTracker {
public:
    GmaxTracker(std::size_t arms, int max_plays)
        : gain_(static_cast<std::size_t>(max_plays), std::vector<double>(arms, 0.0)) {
        if (max_plays < 1 || static_cast<std::size_t>(max_plays) > arms) {
            throw Error(ErrorKind::Shape, "max plays must lie in [1, N]");
        }
    }

    void add(std::span<const double> rewards, int plays) {
        if (rewards.size() != gain_.front().size()) throw Error(ErrorKind::Shape, "reward row has the wrong length");
        if (plays < 1 || static_cast<std::size_t>(plays) > gain_.size()) {
            throw Error(ErrorKind::Shape, "play count outside [1, b]");
        }
        for (std::size_t j = 0; j < static_cast<std::size_t>(plays); ++j) {
            for (std::size_t k = 0; k < rewards.size(); ++k) gain_[j][k] += rewards[k];
        }
    }

    const std::vector<std::vector<double>>& gain() const noexcept { return gain_; }

    GmaxResult solve() const {
        GmaxResult out;
        out.ranking = solve_max_assignment(gain_);
        out.value = ranking_value(gain_, out.ranking);
        return out;
    }

    static double ranking_value(const std::vector<std::vector<double>>& gain, std::span<const std::size_t> ranking) {
        double total = 0.0;
        for (std::size_t j = 0; j < ranking.size(); ++j) total += gain[j][ranking[j]];
        return total;
    }

private:
    std::vector<std::vector<double>> gain_;
};

/// Best cumulative reward of a nested family of top-M_t location sets chosen in
/// hindsight, solved exactly as a rank-to-location assignment.
inline GmaxResult g_max(const RewardMatrix& rewards, std::span<const int> plays) {
    if (plays.size() != rewards.rounds()) throw Error(ErrorKind::Shape, "one play count per round expected");
    if (rewards.rounds() == 0) return {};
    const int b = *std::max_element(plays.begin(), plays.end());
    GmaxTracker tracker(rewards.arms(), b);
    for (std::size_t t = 0; t < rewards.rounds(); ++t) tracker.add(rewards.row(t), plays[t]);
    return tracker.solve();
}

}  // namespace mpbandit

#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mpbandit/baselines.hpp"
#include "mpbandit/dep_round.hpp"
#include "mpbandit/error.hpp"
#include "mpbandit/exp3m_vp.hpp"
#include "mpbandit/hedge.hpp"
#include "mpbandit/random.hpp"
#include "mpbandit/weights.hpp"

namespace mpbandit {

enum class Algorithm { Exp3MVP, Exp3M, Exp3, UCB1, EpsilonGreedy };

inline std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Exp3MVP: return "exp3mvp";
        case Algorithm::Exp3M: return "exp3m";
        case Algorithm::Exp3: return "exp3";
        case Algorithm::UCB1: return "ucb1";
        case Algorithm::EpsilonGreedy: return "epsilon_greedy";
    }
    return "unknown";
}

inline Algorithm parse_algorithm(std::string_view name) {
    if (name == "exp3mvp") return Algorithm::Exp3MVP;
    if (name == "exp3m") return Algorithm::Exp3M;
    if (name == "exp3") return Algorithm::Exp3;
    if (name == "ucb1") return Algorithm::UCB1;
    if (name == "epsilon_greedy") return Algorithm::EpsilonGreedy;
    throw Error(ErrorKind::InvalidConfig, "unknown algorithm '" + std::string(name) + "'");
}

inline bool plays_multiple(Algorithm a) { return a == Algorithm::Exp3MVP || a == Algorithm::Exp3M; }

struct LearnerParams {
    Algorithm algorithm = Algorithm::Exp3MVP;
    double eta = 0.1;
    double iota = std::numbers::e - 1.0;
    double epsilon = 0.1;
};

/// Common select/update surface over every learner so harnesses can run them
/// side by side. Single-play learners ignore the requested play count.
class Learner {
public:
    Learner(std::size_t n_arms, const LearnerParams& params) : params_(params) {
        switch (params.algorithm) {
            case Algorithm::Exp3MVP:
            case Algorithm::Exp3M: state_ = WeightState(n_arms, params.eta); break;
            case Algorithm::Exp3: state_ = HedgeState(n_arms, params.iota); break;
            case Algorithm::UCB1:
            case Algorithm::EpsilonGreedy: state_ = FrequentistState(n_arms); break;
        }
    }

    Algorithm algorithm() const noexcept { return params_.algorithm; }

    /// Draws this round's arm set. Must be followed by update().
    const ArmSet& select(int m, Rng& rng) {
        pending_ = {};
        if (auto* w = std::get_if<WeightState>(&state_)) {
            pending_ = marginals_from_weights(*w, m);
            chosen_ = dep_round(m, pending_.probs, rng);
        } else if (auto* h = std::get_if<HedgeState>(&state_)) {
            pending_.probs = exp3_distribution(*h, params_.eta);
            pending_.m = 1;
            chosen_ = {sample_index(pending_.probs, rng)};
        } else {
            auto& f = std::get<FrequentistState>(state_);
            chosen_ = {params_.algorithm == Algorithm::UCB1 ? ucb1_select(f)
                                                            : epsilon_greedy_select(f, params_.epsilon, rng)};
        }
        return chosen_;
    }

    /// `rewards` aligned with the set returned by select().
    RoundOutcome update(std::span<const double> rewards) {
        if (auto* w = std::get_if<WeightState>(&state_)) {
            return exp3mvp_update(*w, std::move(pending_), chosen_, rewards);
        }
        if (auto* h = std::get_if<HedgeState>(&state_)) {
            return exp3_update(*h, pending_.probs, params_.eta, chosen_.front(), rewards.front());
        }
        auto& f = std::get<FrequentistState>(state_);
        check_reward(rewards.front());
        f.update(chosen_.front(), rewards.front());
        RoundOutcome out;
        out.chosen = chosen_;
        out.observed = {{chosen_.front(), rewards.front()}};
        out.estimates.assign(f.size(), 0.0);
        out.estimates[chosen_.front()] = rewards.front();
        return out;
    }

    const WeightState* weights() const { return std::get_if<WeightState>(&state_); }
    const HedgeState* hedge() const { return std::get_if<HedgeState>(&state_); }
    const FrequentistState* frequentist() const { return std::get_if<FrequentistState>(&state_); }

private:
    LearnerParams params_;
    std::variant<WeightState, HedgeState, FrequentistState> state_{FrequentistState(2)};
    Marginals pending_;
    ArmSet chosen_;
};

}  // namespace mpbandit

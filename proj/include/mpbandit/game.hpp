#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mpbandit/bounds.hpp"
#include "mpbandit/csv.hpp"
#include "mpbandit/dep_round.hpp"
#include "mpbandit/environments.hpp"
#include "mpbandit/error.hpp"
#include "mpbandit/exp3m_vp.hpp"
#include "mpbandit/hedge.hpp"
#include "mpbandit/random.hpp"
#include "mpbandit/scaling.hpp"
#include "mpbandit/weights.hpp"

namespace mpbandit {

enum class AttackerKind { Exp3, Greedy };

inline std::string_view to_string(AttackerKind k) { return k == AttackerKind::Exp3 ? "exp3" : "greedy"; }

inline AttackerKind parse_attacker_kind(std::string_view name) {
    if (name == "exp3") return AttackerKind::Exp3;
    if (name == "greedy") return AttackerKind::Greedy;
    throw Error(ErrorKind::InvalidConfig, "unknown attacker kind '" + std::string(name) + "'");
}

struct GameConfig {
    std::size_t n = 10;
    std::size_t horizon = 1000;
    ScalingSpec scaling = ScalingSpec::truncated_gaussian(1, 3, 2.0, 0.8);
    AttackerKind attacker = AttackerKind::Exp3;
    // Non-positive means "tune from the horizon" (see resolved()).
    double defender_eta = 0.0;
    double attacker_eta = 0.0;
    double attacker_iota = std::numbers::e - 1.0;
    double greedy_lambda = 0.01;
    std::vector<double> payoff;  // empty means homogeneous
    std::size_t average_window = 10;
    int budget = 0;

    PayoffProfile profile() const {
        return payoff.empty() ? PayoffProfile::homogeneous(n) : PayoffProfile(payoff);
    }

    void validate() const {
        scaling.validate(n);
        if (horizon < 1) throw Error(ErrorKind::InvalidConfig, "horizon must be >= 1");
        if (!payoff.empty() && payoff.size() != n) throw Error(ErrorKind::InvalidConfig, "payoff length must equal N");
        profile();
        if (!(greedy_lambda > 0.0 && greedy_lambda < 1.0)) {
            throw Error(ErrorKind::InvalidConfig, "greedy_lambda must lie in (0, 1)");
        }
    }

    /// Copy with every defaulted rate filled in.
    GameConfig resolved() const {
        validate();
        GameConfig out = *this;
        const double t = static_cast<double>(horizon);
        if (!(out.defender_eta > 0.0)) out.defender_eta = std::min(corollary11_eta(n, scaling.a, scaling.b, t).eta, 1.0 - 1e-6);
        if (!(out.attacker_eta > 0.0)) out.attacker_eta = corollary11_eta(n, 1, 1, t).eta;
        return out;
    }
};

/// Attacker-side running estimate of how often the defender scans each location.
struct ScanEstimate {
    std::vector<double> beta_hat;
    double lambda = 0.01;

    ScanEstimate(std::size_t n, double lambda_) : beta_hat(n, 0.0), lambda(lambda_) {}
};

struct GreedyChoice {
    std::size_t arm = 0;
    double rho = 1.0;  // probability with which the attacker picked this arm
};

/// Least-scanned location, uniform among ties.
inline GreedyChoice greedy_attacker_select(const ScanEstimate& est, Rng& rng) {
    const double low = *std::min_element(est.beta_hat.begin(), est.beta_hat.end());
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < est.beta_hat.size(); ++i) {
        if (est.beta_hat[i] == low) ties.push_back(i);
    }
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(rng);
    return {ties[pick], 1.0 / static_cast<double>(ties.size())};
}

/// Discounted importance-weighted update from the attacker's own feedback.
inline void greedy_attacker_update(ScanEstimate& est, const GreedyChoice& choice, bool scanned) {
    for (double& b : est.beta_hat) b *= 1.0 - est.lambda;
    if (scanned) est.beta_hat[choice.arm] += est.lambda / choice.rho;
}

/// Attacker: picks one location, then learns only from its own reward.
class AttackerPlayer {
public:
    AttackerPlayer(const GameConfig& cfg, Rng rng) : eta_(cfg.attacker_eta), rng_(std::move(rng)) {
        if (cfg.attacker == AttackerKind::Exp3) {
            state_ = HedgeState(cfg.n, cfg.attacker_iota);
        } else {
            state_ = ScanEstimate(cfg.n, cfg.greedy_lambda);
        }
    }

    std::size_t choose() {
        if (auto* h = std::get_if<HedgeState>(&state_)) {
            probs_ = exp3_distribution(*h, eta_);
            choice_ = {sample_index(probs_, rng_), 0.0};
            choice_.rho = probs_[choice_.arm];
        } else {
            choice_ = greedy_attacker_select(std::get<ScanEstimate>(state_), rng_);
        }
        return choice_.arm;
    }

    /// `scanned` is implied by the reward whenever mu > 0; greedy uses it directly.
    void observe(double reward, bool scanned) {
        if (auto* h = std::get_if<HedgeState>(&state_)) {
            exp3_update(*h, probs_, eta_, choice_.arm, reward);
        } else {
            greedy_attacker_update(std::get<ScanEstimate>(state_), choice_, scanned);
        }
    }

    const HedgeState* hedge() const { return std::get_if<HedgeState>(&state_); }
    const ScanEstimate* scan_estimate() const { return std::get_if<ScanEstimate>(&state_); }

private:
    double eta_;
    Rng rng_;
    std::variant<HedgeState, ScanEstimate> state_{ScanEstimate(2, 0.5)};
    std::vector<double> probs_;
    GreedyChoice choice_;
};

/// Defender: draws M_t from its scaling rule and scans with the variable-play learner.
class DefenderPlayer {
public:
    DefenderPlayer(const GameConfig& cfg, Rng select_rng, Rng scaling_rng)
        : scaling_(cfg.scaling),
          budget_(cfg.budget > 0 ? cfg.budget : cfg.scaling.b),
          weights_(cfg.n, cfg.defender_eta),
          average_(cfg.n, cfg.average_window),
          select_rng_(std::move(select_rng)),
          scaling_rng_(std::move(scaling_rng)) {}

    const ArmSet& choose() {
        const int m = sample_arm_count(scaling_, average_, budget_, scaling_rng_);
        marginals_ = marginals_from_weights(weights_, m);
        chosen_ = dep_round(m, marginals_.probs, select_rng_);
        return chosen_;
    }

    void observe(std::span<const double> rewards) {
        RoundOutcome out = exp3mvp_update(weights_, std::move(marginals_), chosen_, rewards);
        average_.update(out.estimates);
    }

    const WeightState& weights() const noexcept { return weights_; }

private:
    ScalingSpec scaling_;
    int budget_;
    WeightState weights_;
    MovingAverage average_;
    Rng select_rng_;
    Rng scaling_rng_;
    Marginals marginals_;
    ArmSet chosen_;
};

struct GameRow {
    std::size_t attacker_arm = 0;
    int plays = 0;
    ArmSet scanned;
    double attacker_reward = 0.0;
    double defender_reward = 0.0;
    double running_attacker = 0.0;
    double running_defender = 0.0;
};

struct GameTrace {
    std::vector<GameRow> rows;

    /// Mean rewards over the last `window` rounds (all rounds if window is 0 or too large).
    std::pair<double, double> tail_means(std::size_t window) const {
        if (rows.empty()) return {0.0, 0.0};
        const std::size_t w = (window == 0 || window > rows.size()) ? rows.size() : window;
        double r = 0.0, s = 0.0;
        for (std::size_t t = rows.size() - w; t < rows.size(); ++t) {
            r += rows[t].attacker_reward;
            s += rows[t].defender_reward;
        }
        return {r / static_cast<double>(w), s / static_cast<double>(w)};
    }
};

/// Both players commit to actions before either sees an outcome.
inline GameRow play_round(AttackerPlayer& attacker, DefenderPlayer& defender, const PayoffProfile& payoff) {
    const std::size_t target = attacker.choose();
    const ArmSet& scan = defender.choose();

    const bool caught = std::find(scan.begin(), scan.end(), target) != scan.end();
    GameRow row;
    row.attacker_arm = target;
    row.plays = static_cast<int>(scan.size());
    row.scanned = scan;
    row.attacker_reward = caught ? 0.0 : payoff.mu[target];

    std::vector<double> defender_rewards(scan.size(), 0.0);
    for (std::size_t k = 0; k < scan.size(); ++k) {
        if (scan[k] == target) defender_rewards[k] = payoff.mu[target];
    }
    row.defender_reward = caught ? payoff.mu[target] : 0.0;

    attacker.observe(row.attacker_reward, caught);
    defender.observe(defender_rewards);
    return row;
}

inline GameTrace run_game(const GameConfig& config, std::uint64_t seed, std::uint64_t replica = 0) {
    const GameConfig cfg = config.resolved();
    const PayoffProfile payoff = cfg.profile();
    AttackerPlayer attacker(cfg, make_rng(seed, replica, Stream::Attacker));
    DefenderPlayer defender(cfg, make_rng(seed, replica, Stream::Defender), make_rng(seed, replica, Stream::Scaling));

    GameTrace trace;
    trace.rows.reserve(cfg.horizon);
    double sum_r = 0.0, sum_s = 0.0;
    for (std::size_t t = 0; t < cfg.horizon; ++t) {
        GameRow row = play_round(attacker, defender, payoff);
        sum_r += row.attacker_reward;
        sum_s += row.defender_reward;
        row.running_attacker = sum_r / static_cast<double>(t + 1);
        row.running_defender = sum_s / static_cast<double>(t + 1);
        trace.rows.push_back(std::move(row));
    }
    return trace;
}

inline std::string join_arms(const ArmSet& arms) {
    std::string out;
    for (std::size_t i = 0; i < arms.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(arms[i]);
    }
    return out;
}

/// Columns: t, I_t, M_t, J_t (semicolon-joined), r, s, running_r, running_s.
inline void write_game_trace(const GameTrace& trace, const std::string& path) {
    csv::Writer out(path);
    out.header({"t", "I_t", "M_t", "J_t", "r", "s", "running_r", "running_s"});
    for (std::size_t t = 0; t < trace.rows.size(); ++t) {
        const GameRow& row = trace.rows[t];
        out.row({std::to_string(t + 1), std::to_string(row.attacker_arm), std::to_string(row.plays),
                 join_arms(row.scanned), csv::format(row.attacker_reward), csv::format(row.defender_reward),
                 csv::format(row.running_attacker), csv::format(row.running_defender)});
    }
    out.close();
}

}  // namespace mpbandit

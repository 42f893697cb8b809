#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"
#include "mpbandit/bounds.hpp"
#include "mpbandit/csv.hpp"
#include "mpbandit/environments.hpp"
#include "mpbandit/error.hpp"
#include "mpbandit/experiment/config.hpp"
#include "mpbandit/game.hpp"
#include "mpbandit/intrusion_trace.hpp"
#include "mpbandit/learners.hpp"
#include "mpbandit/parallel.hpp"
#include "mpbandit/plot_data.hpp"
#include "mpbandit/random.hpp"
#include "mpbandit/scaling.hpp"
#include "mpbandit/simulation.hpp"

namespace mpbandit::experiment {

inline constexpr const char* kEtaTuned = "corollary_1_1";

namespace detail {

template <typename T>
T get(const json& j, const char* key, const std::string& path) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorKind::InvalidConfig, path + key + ": wrong type or missing");
    }
}

inline std::string replica_name(std::size_t r, const std::string& suffix) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "replica_%03zu", r);
    return std::string(buf) + suffix;
}

inline void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
    if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

inline std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace detail

inline ScalingSpec scaling_from_json(const json& j, const std::string& path) {
    ScalingSpec s;
    s.kind = parse_scaling_kind(detail::get<std::string>(j, "kind", path));
    s.a = detail::get<int>(j, "a", path);
    s.b = detail::get<int>(j, "b", path);
    s.mean = detail::get<double>(j, "mean", path);
    s.stddev = detail::get<double>(j, "stddev", path);
    s.threshold = detail::get<double>(j, "threshold", path);
    if (s.kind == ScalingKind::Constant && s.a != s.b) {
        throw Error(ErrorKind::InvalidConfig, path + "b: constant scaling needs a == b");
    }
    return s;
}

/// A number, or the string "corollary_1_1" for the horizon-tuned rate. Rates
/// for Exp3.M-style learners are clamped below 1 by `clamp`.
inline double resolve_eta(const json& value, std::size_t n, int a, int b, std::size_t horizon, double clamp,
                          bool below_one, const std::string& path) {
    double eta = 0.0;
    if (value.is_string()) {
        if (value.get<std::string>() != kEtaTuned) {
            throw Error(ErrorKind::InvalidConfig, path + ": expected a number or \"" + kEtaTuned + "\"");
        }
        eta = corollary11_eta(n, a, b, static_cast<double>(horizon)).eta;
    } else if (value.is_number()) {
        eta = value.get<double>();
    } else {
        throw Error(ErrorKind::InvalidConfig, path + ": expected a number or \"" + kEtaTuned + "\"");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorKind::InvalidConfig, path + ": must lie in [0, 1]");
    if (below_one) eta = std::min(eta, 1.0 - clamp);
    return eta;
}

/// Builds the environment described by `env` and records resolved choices
/// (such as randomly drawn attacked arms) back into it.
inline Environment build_environment(json& env, std::size_t horizon, std::uint64_t seed) {
    const std::string type = detail::get<std::string>(env, "type", "environment.");
    if (type == "bernoulli") {
        return Environment(BernoulliEnv(detail::get<std::vector<double>>(env, "means", "environment.")));
    }
    if (type == "bernoulli_harmonic") {
        return Environment(BernoulliEnv::harmonic(detail::get<std::size_t>(env, "arms", "environment."),
                                                  detail::get<double>(env, "scale", "environment.")));
    }
    if (type == "synthetic_trace") {
        SyntheticTraceConfig cfg;
        cfg.n_arms = detail::get<std::size_t>(env, "arms", "environment.");
        cfg.horizon = horizon;
        cfg.intrusions = detail::get<std::size_t>(env, "intrusions", "environment.");
        cfg.burst_min_seconds = detail::get<double>(env, "burst_min_seconds", "environment.");
        cfg.burst_max_seconds = detail::get<double>(env, "burst_max_seconds", "environment.");
        cfg.round_window_seconds = detail::get<double>(env, "round_window_seconds", "environment.");
        Rng rng = make_rng(seed, 0, Stream::Trace);
        if (env.at("attacked").is_null()) {
            const auto count = detail::get<std::size_t>(env, "attacked_count", "environment.");
            if (count < 1 || count > cfg.n_arms) {
                throw Error(ErrorKind::InvalidConfig, "environment.attacked_count: must lie in [1, arms]");
            }
            std::vector<std::size_t> all(cfg.n_arms);
            std::iota(all.begin(), all.end(), std::size_t{0});
            std::shuffle(all.begin(), all.end(), rng);
            all.resize(count);
            std::sort(all.begin(), all.end());
            env["attacked"] = all;
        }
        cfg.attacked = detail::get<ArmSet>(env, "attacked", "environment.");
        env["attacked_count"] = cfg.attacked.size();
        return Environment(std::make_shared<const IntrusionTrace>(synthesize_intrusion_trace(cfg, rng)));
    }
    if (type == "trace_file") {
        return Environment(std::make_shared<const IntrusionTrace>(
            read_trace_cache(detail::get<std::string>(env, "path", "environment."))));
    }
    if (type == "can_log") {
        const json& c = env.at("columns");
        CanColumnMap columns;
        columns.timestamp = detail::get<std::string>(c, "timestamp", "environment.columns.");
        columns.identity = detail::get<std::string>(c, "identity", "environment.columns.");
        columns.flag = detail::get<std::string>(c, "flag", "environment.columns.");
        columns.injected_value = detail::get<std::string>(c, "injected_value", "environment.columns.");
        columns.window_seconds = detail::get<double>(c, "window_seconds", "environment.columns.");
        return Environment(std::make_shared<const IntrusionTrace>(
            ingest_can_log(detail::get<std::string>(env, "path", "environment."), columns).trace));
    }
    throw Error(ErrorKind::InvalidConfig, "environment.type: unknown environment '" + type + "'");
}

struct RunResult {
    json manifest;
    json summary;
    std::vector<std::string> files;  // relative to the output directory
};

namespace detail {

struct Context {
    json& cfg;
    std::filesystem::path dir;
    RunResult& result;
    std::uint64_t seed;
    std::size_t replicas;
    std::size_t workers;
    std::size_t stride;
    bool replica_traces;

    std::string file(const std::string& name) const {
        result.files.push_back(name);
        return (dir / name).string();
    }
};

inline void run_single_player(Context& ctx) {
    json& cfg = ctx.cfg;
    const auto horizon = get<std::size_t>(cfg, "horizon", "");
    Environment env = build_environment(cfg["environment"], horizon, ctx.seed);
    SingleConfig sc{env, {}, scaling_from_json(cfg["scaling"], "scaling.")};
    sc.learner.algorithm = parse_algorithm(get<std::string>(cfg, "algorithm", ""));
    sc.horizon = horizon;
    sc.budget = get<int>(cfg, "budget", "");
    sc.average_window = get<std::size_t>(cfg, "average_window", "");
    sc.learner.iota = get<double>(cfg, "iota", "");
    sc.learner.epsilon = get<double>(cfg, "epsilon", "");
    sc.record_weights = ctx.replica_traces;
    const bool multi = plays_multiple(sc.learner.algorithm);
    const auto [a, b] = effective_play_range(sc);
    sc.learner.eta = resolve_eta(cfg["eta"], env.arms(), a, b, horizon, get<double>(cfg, "eta_clamp", ""), multi, "eta");

    const auto runs = run_replicas(sc, ctx.replicas, ctx.seed, ctx.workers);
    const RegretReport report = regret_report(sc, runs);
    write_regret_csv(report, ctx.file("regret.csv"), ctx.stride);

    csv::Writer curves(ctx.file("curves.csv"));
    curves.header({"t", "learner_reward", "gmax", "regret_mean", "regret_stderr", "bound", "bound_realized"});
    const std::size_t len = report.regret_mean.size();
    for (std::size_t t = 0; t < len; ++t) {
        if (!mpbandit::detail::keep_row(t, len, ctx.stride)) continue;
        const bool has_bound = !report.bound.empty();
        curves.row({std::to_string(t + 1), csv::format(report.learner_reward[t]), csv::format(report.gmax[t]),
                    csv::format(report.regret_mean[t]), csv::format(report.regret_stderr[t]),
                    has_bound ? csv::format(report.bound[t]) : "nan",
                    has_bound ? csv::format(report.bound_realized[t]) : "nan"});
    }
    curves.close();

    if (ctx.replica_traces) {
        for (std::size_t r = 0; r < runs.size(); ++r) {
            write_single_trace_csv(runs[r], ctx.file(replica_name(r, "_trace.csv")), ctx.stride);
            if (!runs[r].marginals.empty()) {
                write_weights_csv(runs[r], ctx.file(replica_name(r, "_weights.csv")), ctx.stride);
            }
        }
    }

    json& s = ctx.result.summary;
    s["eta"] = sc.learner.eta;
    s["play_range"] = {a, b};
    s["final_learner_reward"] = report.learner_reward.back();
    s["final_gmax"] = report.gmax.back();
    s["final_regret_mean"] = report.regret_mean.back();
    s["final_regret_stderr"] = report.regret_stderr.back();
    if (!report.bound.empty()) {
        s["final_theorem1_bound"] = report.bound.back();
        bool under = true;
        for (std::size_t t = 0; t < len; ++t) under = under && report.regret_mean[t] <= report.bound[t];
        s["regret_under_bound_every_round"] = under;
    } else {
        s["final_theorem1_bound"] = nullptr;
    }
    if (b < static_cast<int>(env.arms()) && multi) {
        s["corollary11"] = {{"eta", corollary11_eta(env.arms(), a, b, static_cast<double>(horizon)).eta},
                            {"regret_ceiling",
                             corollary11_eta(env.arms(), a, b, static_cast<double>(horizon)).regret_ceiling}};
    }
}

struct LearnerRun {
    std::string label;
    SingleConfig config;
    std::vector<SingleRun> runs;
};

/// Mean and standard error of the final cumulative average reward.
inline std::pair<double, double> final_average(const std::vector<SingleRun>& runs) {
    std::vector<double> finals;
    for (const auto& run : runs) {
        finals.push_back(std::accumulate(run.gained.begin(), run.gained.end(), 0.0) /
                         static_cast<double>(run.gained.size()));
    }
    return mean_stderr(finals);
}

inline std::vector<double> mean_cumulative_average(const std::vector<SingleRun>& runs) {
    std::vector<std::vector<double>> curves;
    for (const auto& run : runs) {
        std::vector<double> c(run.gained.size());
        double acc = 0.0;
        for (std::size_t t = 0; t < c.size(); ++t) {
            acc += run.gained[t];
            c[t] = acc / static_cast<double>(t + 1);
        }
        curves.push_back(std::move(c));
    }
    return mean_curve(curves).mean;
}

inline void run_compare(Context& ctx) {
    json& cfg = ctx.cfg;
    const auto horizon = get<std::size_t>(cfg, "horizon", "");
    Environment env = build_environment(cfg["environment"], horizon, ctx.seed);
    const double clamp = get<double>(cfg, "eta_clamp", "");

    std::vector<LearnerRun> learners;
    json& list = cfg["algorithms"];
    for (std::size_t i = 0; i < list.size(); ++i) {
        json& entry = list[i];
        const std::string path = "algorithms[" + std::to_string(i) + "].";
        LearnerRun lr{get<std::string>(entry, "label", path), {env, {}, scaling_from_json(entry["scaling"], path + "scaling.")}, {}};
        lr.config.learner.algorithm = parse_algorithm(get<std::string>(entry, "algorithm", path));
        if (lr.label.empty()) {
            lr.label = std::string(to_string(lr.config.learner.algorithm));
            entry["label"] = lr.label;
        }
        for (const auto& other : learners) {
            if (other.label == lr.label) throw Error(ErrorKind::InvalidConfig, path + "label: duplicate label '" + lr.label + "'");
        }
        lr.config.horizon = horizon;
        lr.config.track_gmax = false;
        lr.config.budget = get<int>(cfg, "budget", "");
        lr.config.average_window = get<std::size_t>(cfg, "average_window", "");
        lr.config.learner.iota = get<double>(cfg, "iota", "");
        lr.config.learner.epsilon = get<double>(cfg, "epsilon", "");
        const bool multi = plays_multiple(lr.config.learner.algorithm);
        const auto [a, b] = effective_play_range(lr.config);
        lr.config.learner.eta = resolve_eta(entry["eta"], env.arms(), a, b, horizon, clamp, multi, path + "eta");
        learners.push_back(std::move(lr));
    }
    for (auto& lr : learners) lr.runs = run_replicas(lr.config, ctx.replicas, ctx.seed, ctx.workers);

    csv::Writer curves(ctx.file("curves.csv"));
    std::vector<std::string> header{"t"};
    std::vector<std::vector<double>> columns;
    for (const auto& lr : learners) {
        header.push_back(lr.label);
        columns.push_back(mean_cumulative_average(lr.runs));
    }
    curves.header(header);
    for (std::size_t t = 0; t < horizon; ++t) {
        if (!mpbandit::detail::keep_row(t, horizon, ctx.stride)) continue;
        std::vector<std::string> row{std::to_string(t + 1)};
        for (const auto& c : columns) row.push_back(csv::format(c[t]));
        curves.row(row);
    }
    curves.close();

    if (ctx.replica_traces) {
        for (const auto& lr : learners) {
            for (std::size_t r = 0; r < lr.runs.size(); ++r) {
                write_single_trace_csv(lr.runs[r], ctx.file(replica_name(r, "_" + lr.label + ".csv")), ctx.stride);
            }
        }
    }

    json finals = json::object();
    for (const auto& lr : learners) {
        const auto [mean, se] = final_average(lr.runs);
        finals[lr.label] = {{"algorithm", to_string(lr.config.learner.algorithm)},
                            {"eta", lr.config.learner.eta},
                            {"final_average_reward", mean},
                            {"final_average_stderr", se}};
    }
    ctx.result.summary["learners"] = finals;
}

inline GameConfig game_config_from_json(const json& cfg) {
    GameConfig g;
    g.n = get<std::size_t>(cfg, "arms", "");
    g.horizon = get<std::size_t>(cfg, "horizon", "");
    g.scaling = scaling_from_json(cfg.at("scaling"), "scaling.");
    g.attacker = parse_attacker_kind(get<std::string>(cfg, "attacker", ""));
    g.attacker_iota = get<double>(cfg, "iota", "");
    g.greedy_lambda = get<double>(cfg, "greedy_lambda", "");
    g.payoff = get<std::vector<double>>(cfg, "payoff", "");
    g.average_window = get<std::size_t>(cfg, "average_window", "");
    g.budget = get<int>(cfg, "budget", "");
    g.validate();
    const double clamp = get<double>(cfg, "eta_clamp", "");
    g.defender_eta = resolve_eta(cfg.at("defender_eta"), g.n, g.scaling.a, g.scaling.b, g.horizon, clamp, true,
                                 "defender_eta");
    g.attacker_eta = resolve_eta(cfg.at("attacker_eta"), g.n, 1, 1, g.horizon, clamp, false, "attacker_eta");
    return g;
}

inline void run_game_kind(Context& ctx) {
    const GameConfig g = game_config_from_json(ctx.cfg);
    const auto tail = get<std::size_t>(ctx.cfg, "tail_window", "");
    std::vector<std::pair<double, double>> tails(ctx.replicas);
    std::vector<std::vector<double>> running_r(ctx.replicas), running_s(ctx.replicas);
    std::vector<std::string> paths;
    if (ctx.replica_traces) {
        for (std::size_t r = 0; r < ctx.replicas; ++r) paths.push_back(ctx.file(replica_name(r, "_game.csv")));
    }
    parallel_for(ctx.replicas, ctx.workers, [&](std::size_t r) {
        const GameTrace trace = run_game(g, ctx.seed, r);
        tails[r] = trace.tail_means(tail);
        running_r[r].reserve(trace.rows.size());
        running_s[r].reserve(trace.rows.size());
        for (const auto& row : trace.rows) {
            running_r[r].push_back(row.running_attacker);
            running_s[r].push_back(row.running_defender);
        }
        if (!paths.empty()) write_game_trace(trace, paths[r]);
    });

    const MeanCurve cr = mean_curve(running_r);
    const MeanCurve cs = mean_curve(running_s);
    csv::Writer curves(ctx.file("curves.csv"));
    curves.header({"t", "attacker_running_mean", "attacker_running_stderr", "defender_running_mean",
                   "defender_running_stderr"});
    for (std::size_t t = 0; t < g.horizon; ++t) {
        if (!mpbandit::detail::keep_row(t, g.horizon, ctx.stride)) continue;
        curves.row({std::to_string(t + 1), csv::format(cr.mean[t]), csv::format(cr.stderr_[t]), csv::format(cs.mean[t]),
                    csv::format(cs.stderr_[t])});
    }
    curves.close();

    std::vector<double> ra, sd;
    for (const auto& [r, s] : tails) {
        ra.push_back(r);
        sd.push_back(s);
    }
    const auto [r_mean, r_se] = mean_stderr(ra);
    const auto [s_mean, s_se] = mean_stderr(sd);
    json& s = ctx.result.summary;
    s["defender_eta"] = g.defender_eta;
    s["attacker_eta"] = g.attacker_eta;
    s["tail_window"] = std::min(tail == 0 ? g.horizon : tail, g.horizon);
    s["attacker_tail_mean"] = r_mean;
    s["attacker_tail_stderr"] = r_se;
    s["defender_tail_mean"] = s_mean;
    s["defender_tail_stderr"] = s_se;
    const PayoffProfile profile = g.profile();
    if (profile.is_homogeneous() && profile.mu.front() == 1.0) {
        const auto eq = equilibrium_values(g.n, g.scaling.mean);
        s["equilibrium"] = {{"nu", g.scaling.mean}, {"defender", eq.defender}, {"attacker", eq.attacker}};
    }
    const BoundInterval iv = kstar_interval(profile, g.scaling.a, g.scaling.b);
    s["attacker_interval"] = {{"lower", iv.lower}, {"upper", iv.upper}, {"kstar_lower", iv.kstar_lower},
                              {"kstar_upper", iv.kstar_upper}, {"denominator", "harmonic"}};
}

inline void run_bounds(Context& ctx) {
    json& cfg = ctx.cfg;
    const auto n = get<std::size_t>(cfg, "arms", "");
    const int a = get<int>(cfg, "a", "");
    const int b = get<int>(cfg, "b", "");
    const auto horizon = get<double>(cfg, "horizon", "");
    const double nu = get<double>(cfg, "nu", "");
    const TunedRate tuned = corollary11_eta(n, a, b, horizon);
    const double eta = cfg["eta"].is_null() ? tuned.eta : get<double>(cfg, "eta", "");
    const double gmax = cfg["gmax"].is_null() ? static_cast<double>(b) * horizon : get<double>(cfg, "gmax", "");
    const auto payoff = get<std::vector<double>>(cfg, "payoff", "");
    if (!payoff.empty() && payoff.size() != n) throw Error(ErrorKind::InvalidConfig, "payoff: length must equal arms");

    const auto eq = equilibrium_values(n, nu);
    const auto [lo, hi] = theorem2_bounds(n, a, b);
    const BoundInterval iv =
        kstar_interval(payoff.empty() ? PayoffProfile::homogeneous(n) : PayoffProfile(payoff), a, b);
    json& s = ctx.result.summary;
    s["theorem1_bound"] = {{"gmax", gmax}, {"eta", eta}, {"value", theorem1_bound(gmax, n, a, b, eta)}};
    s["corollary11"] = {{"eta", tuned.eta}, {"regret_ceiling", tuned.regret_ceiling}};
    s["equilibrium"] = {{"nu", nu}, {"defender", eq.defender}, {"attacker", eq.attacker}};
    s["theorem2"] = {{"lower", lo}, {"upper", hi}};
    s["attacker_interval"] = {{"lower", iv.lower}, {"upper", iv.upper}, {"kstar_lower", iv.kstar_lower},
                              {"kstar_upper", iv.kstar_upper}, {"harmonic_lower", iv.harmonic_lower},
                              {"harmonic_upper", iv.harmonic_upper}, {"denominator", "harmonic"}};

    // theorem-1 bound against eta at the configured G_max
    csv::Writer curves(ctx.file("curves.csv"));
    curves.header({"eta", "theorem1_bound"});
    constexpr int kPoints = 200;
    for (int i = 1; i <= kPoints; ++i) {
        const double e = static_cast<double>(i) / kPoints;
        curves.row({csv::format(e), csv::format(theorem1_bound(gmax, n, a, b, e))});
    }
    curves.close();
}

inline void run_ingest(Context& ctx) {
    json& cfg = ctx.cfg;
    const json& c = cfg.at("columns");
    CanColumnMap columns;
    columns.timestamp = get<std::string>(c, "timestamp", "columns.");
    columns.identity = get<std::string>(c, "identity", "columns.");
    columns.flag = get<std::string>(c, "flag", "columns.");
    columns.injected_value = get<std::string>(c, "injected_value", "columns.");
    columns.window_seconds = get<double>(c, "window_seconds", "columns.");
    const auto path = get<std::string>(cfg, "path", "");
    if (path.empty()) throw Error(ErrorKind::InvalidConfig, "path: an input log is required");
    const IngestResult res = ingest_can_log(path, columns);
    write_trace_cache(res.trace, (ctx.dir / "trace").string());
    ctx.result.files.push_back("trace.csv");
    ctx.result.files.push_back("trace.meta.json");

    csv::Writer curves(ctx.file("curves.csv"));
    curves.header({"arm", "label", "attack_density"});
    for (std::size_t k = 0; k < res.trace.arms(); ++k) {
        curves.row({std::to_string(k), res.trace.labels()[k], csv::format(res.summary.attack_density[k])});
    }
    curves.close();

    json& s = ctx.result.summary;
    s["rows"] = res.summary.rows;
    s["arms"] = res.summary.arms;
    s["rounds"] = res.summary.rounds;
    s["injected_rows"] = res.summary.injected_rows;
    s["window_seconds"] = columns.window_seconds;
}

inline void run_sweep(Context& ctx) {
    json& cfg = ctx.cfg;
    const auto which = get<std::string>(cfg, "sweep", "");
    if (which == "success_rate") {
        const auto points = success_rate_sweep(get<std::size_t>(cfg, "arms", ""), get<int>(cfg, "a", ""),
                                               get<int>(cfg, "b", ""), get<double>(cfg, "mu_min", ""),
                                               get<double>(cfg, "mu_max", ""), get<std::size_t>(cfg, "points", ""));
        write_success_rate_csv(points, ctx.file("sweep.csv"));
        ctx.result.summary["points"] = points.size();
        ctx.result.summary["denominator"] = "harmonic";
        return;
    }
    if (which != "arm_count") throw Error(ErrorKind::InvalidConfig, "sweep: expected \"success_rate\" or \"arm_count\"");

    const auto horizon = get<std::size_t>(cfg, "horizon", "");
    Environment env = build_environment(cfg["environment"], horizon, ctx.seed);
    const auto nus = get<std::vector<int>>(cfg, "nu", "");
    const double sd = get<double>(cfg, "stddev", "");
    const double eta =
        resolve_eta(cfg["eta"], env.arms(), 1, 1, horizon, get<double>(cfg, "eta_clamp", ""), true, "eta");

    csv::Writer out(ctx.file("sweep.csv"));
    out.header({"nu", "exp3m_final", "exp3m_stderr", "exp3mvp_final", "exp3mvp_stderr"});
    json rows = json::array();
    for (int nu : nus) {
        SingleConfig fixed{env, {}, ScalingSpec::constant(nu)};
        fixed.horizon = horizon;
        fixed.track_gmax = false;
        fixed.average_window = get<std::size_t>(cfg, "average_window", "");
        fixed.learner.algorithm = Algorithm::Exp3M;
        fixed.learner.eta = eta;
        SingleConfig variable = fixed;
        variable.scaling = ScalingSpec::truncated_gaussian(nu - 1, nu + 1, nu, sd);
        variable.learner.algorithm = Algorithm::Exp3MVP;
        const auto [m_mean, m_se] = final_average(run_replicas(fixed, ctx.replicas, ctx.seed, ctx.workers));
        const auto [v_mean, v_se] = final_average(run_replicas(variable, ctx.replicas, ctx.seed, ctx.workers));
        out.row({std::to_string(nu), csv::format(m_mean), csv::format(m_se), csv::format(v_mean), csv::format(v_se)});
        rows.push_back({{"nu", nu}, {"exp3m_final", m_mean}, {"exp3mvp_final", v_mean}});
    }
    out.close();
    ctx.result.summary["eta"] = eta;
    ctx.result.summary["points"] = rows;
}

}  // namespace detail

/// Runs a resolved config. Writes manifest.json (the config with every
/// default and random choice filled in, so it can be replayed as-is),
/// summary.json, curves and per-replica traces into output_dir.
inline RunResult run_experiment(json cfg) {
    RunResult result;
    const std::filesystem::path dir = detail::get<std::string>(cfg, "output_dir", "");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + dir.string() + "': " + ec.message());

    detail::Context ctx{cfg,
                        dir,
                        result,
                        detail::get<std::uint64_t>(cfg, "seed", ""),
                        detail::get<std::size_t>(cfg, "replicas", ""),
                        detail::get<std::size_t>(cfg, "workers", ""),
                        detail::get<std::size_t>(cfg, "curve_stride", ""),
                        detail::get<bool>(cfg, "write_replica_traces", "")};
    const auto kind = detail::get<std::string>(cfg, "kind", "");
    result.summary = {{"kind", kind}, {"seed", ctx.seed}, {"replicas", ctx.replicas}};

    if (kind == "single_player") {
        detail::run_single_player(ctx);
    } else if (kind == "compare") {
        detail::run_compare(ctx);
    } else if (kind == "game") {
        detail::run_game_kind(ctx);
    } else if (kind == "bounds") {
        detail::run_bounds(ctx);
    } else if (kind == "ingest") {
        detail::run_ingest(ctx);
    } else if (kind == "sweep") {
        detail::run_sweep(ctx);
    } else {
        throw Error(ErrorKind::InvalidConfig, "kind: unknown experiment kind '" + kind + "'");
    }

    result.manifest = cfg;
    detail::write_json(result.manifest, dir / "manifest.json");
    detail::write_json(result.summary, dir / "summary.json");
    result.files.push_back("manifest.json");
    result.files.push_back("summary.json");
    return result;
}

}  // namespace mpbandit::experiment

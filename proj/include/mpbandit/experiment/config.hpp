#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mpbandit/error.hpp"

namespace mpbandit::experiment {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds{"single_player", "compare", "game", "bounds", "ingest", "sweep"};
    return kinds;
}

/// Subcommand name -> experiment kind.
inline std::string kind_for_subcommand(const std::string& sub) {
    if (sub == "simulate-single") return "single_player";
    if (sub == "simulate-game") return "game";
    if (sub == "compare" || sub == "bounds" || sub == "ingest" || sub == "sweep") return sub;
    throw Error(ErrorKind::InvalidConfig, "unknown subcommand '" + sub + "'");
}

inline json scaling_defaults() {
    return {{"kind", "truncated_gaussian"}, {"a", 1}, {"b", 3}, {"mean", 2.0}, {"stddev", 0.8}, {"threshold", 0.5}};
}

inline json environment_defaults(const std::string& type) {
    if (type == "bernoulli") return {{"type", type}, {"means", json::array()}};
    if (type == "bernoulli_harmonic") return {{"type", type}, {"arms", 10}, {"scale", 0.75}};
    if (type == "synthetic_trace") {
        return {{"type", type},
                {"arms", 26},
                {"attacked", nullptr},
                {"attacked_count", 2},
                {"intrusions", 300},
                {"burst_min_seconds", 3.0},
                {"burst_max_seconds", 5.0},
                {"round_window_seconds", 0.3}};
    }
    if (type == "trace_file") return {{"type", type}, {"path", ""}};
    if (type == "can_log") return {{"type", type}, {"path", ""}, {"columns", nullptr}};
    throw Error(ErrorKind::InvalidConfig, "environment.type: unknown environment '" + type + "'");
}

inline json can_columns_defaults() {
    return {{"timestamp", "Timestamp"},
            {"identity", "CAN ID"},
            {"flag", "Flag"},
            {"injected_value", "T"},
            {"window_seconds", 0.25}};
}

inline json learner_entry_defaults() {
    return {{"algorithm", "exp3mvp"}, {"label", ""}, {"eta", 0.1}, {"scaling", scaling_defaults()}};
}

/// Every accepted key with its default. Keys absent here are rejected.
inline json defaults_for(const std::string& kind) {
    json base = {{"schema_version", kSchemaVersion},
                 {"kind", kind},
                 {"seed", nullptr},
                 {"replicas", 1},
                 {"workers", 1},
                 {"output_dir", "out"},
                 {"write_replica_traces", true},
                 {"curve_stride", 1}};
    if (kind == "single_player") {
        base["horizon"] = 20000;
        base["algorithm"] = "exp3mvp";
        base["environment"] = environment_defaults("bernoulli_harmonic");
        base["scaling"] = {{"kind", "uniform_discrete"}, {"a", 1}, {"b", 3}, {"mean", 2.0}, {"stddev", 0.8},
                           {"threshold", 0.5}};
        base["eta"] = 0.1;
        base["eta_clamp"] = 1e-6;
        base["iota"] = std::numbers::e - 1.0;
        base["epsilon"] = 0.1;
        base["average_window"] = 10;
        base["budget"] = 0;
    } else if (kind == "compare") {
        base["horizon"] = 7000;
        base["environment"] = environment_defaults("synthetic_trace");
        json exp3m = learner_entry_defaults();
        exp3m["algorithm"] = "exp3m";
        exp3m["scaling"] = {{"kind", "constant"}, {"a", 3}, {"b", 3}, {"mean", 3.0}, {"stddev", 0.8}, {"threshold", 0.5}};
        json exp3mvp = learner_entry_defaults();
        json exp3 = learner_entry_defaults();
        exp3["algorithm"] = "exp3";
        json ucb1 = learner_entry_defaults();
        ucb1["algorithm"] = "ucb1";
        json greedy = learner_entry_defaults();
        greedy["algorithm"] = "epsilon_greedy";
        base["algorithms"] = json::array({exp3mvp, exp3m, exp3, ucb1, greedy});
        base["eta_clamp"] = 1e-6;
        base["iota"] = std::numbers::e - 1.0;
        base["epsilon"] = 0.1;
        base["average_window"] = 10;
        base["budget"] = 0;
    } else if (kind == "game") {
        base["horizon"] = 100000;
        base["arms"] = 10;
        base["attacker"] = "exp3";
        base["scaling"] = scaling_defaults();
        base["defender_eta"] = "corollary_1_1";
        base["attacker_eta"] = "corollary_1_1";
        base["eta_clamp"] = 1e-6;
        base["iota"] = std::numbers::e - 1.0;
        base["greedy_lambda"] = 0.01;
        base["payoff"] = json::array();
        base["average_window"] = 10;
        base["budget"] = 0;
        base["tail_window"] = 20000;
    } else if (kind == "bounds") {
        base["arms"] = 10;
        base["a"] = 1;
        base["b"] = 3;
        base["horizon"] = 100000;
        base["nu"] = 2.0;
        base["eta"] = nullptr;
        base["gmax"] = nullptr;
        base["payoff"] = json::array();
    } else if (kind == "ingest") {
        base["path"] = "";
        base["columns"] = can_columns_defaults();
    } else if (kind == "sweep") {
        base["sweep"] = "success_rate";  // or "arm_count"
        base["arms"] = 10;
        base["a"] = 1;
        base["b"] = 3;
        base["mu_min"] = 0.05;
        base["mu_max"] = 1.0;
        base["points"] = 20;
        base["horizon"] = 7000;
        base["nu"] = json::array({4, 5, 6, 7});
        base["stddev"] = 0.8;
        base["eta"] = 0.1;
        base["eta_clamp"] = 1e-6;
        base["environment"] = environment_defaults("synthetic_trace");
        base["average_window"] = 10;
    } else {
        throw Error(ErrorKind::InvalidConfig, "kind: unknown experiment kind '" + kind + "'");
    }
    return base;
}

namespace detail {

inline void merge_strict(json& target, const json& user, const std::string& path);

inline void merge_value(json& slot, const json& value, const std::string& path) {
    if (slot.is_object() && value.is_object()) {
        merge_strict(slot, value, path);
    } else if (slot.is_object() && !value.is_null()) {
        throw Error(ErrorKind::InvalidConfig, path + ": expected an object");
    } else {
        slot = value;
    }
}

inline void merge_environment(json& slot, const json& user, const std::string& path) {
    if (!user.is_object()) throw Error(ErrorKind::InvalidConfig, path + ": expected an object");
    const std::string type = user.value("type", slot.value("type", std::string("bernoulli_harmonic")));
    json env = environment_defaults(type);
    if (type == "can_log") env["columns"] = can_columns_defaults();
    merge_strict(env, user, path);
    slot = env;
}

inline void merge_strict(json& target, const json& user, const std::string& path) {
    if (!user.is_object()) throw Error(ErrorKind::InvalidConfig, (path.empty() ? "config" : path) + ": expected an object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string key_path = path.empty() ? it.key() : path + "." + it.key();
        if (!target.contains(it.key())) throw Error(ErrorKind::InvalidConfig, key_path + ": unknown key");
        json& slot = target[it.key()];
        if (it.key() == "environment") {
            merge_environment(slot, it.value(), key_path);
        } else if (it.key() == "algorithms") {
            if (!it.value().is_array() || it.value().empty()) {
                throw Error(ErrorKind::InvalidConfig, key_path + ": expected a non-empty array");
            }
            json list = json::array();
            for (std::size_t i = 0; i < it.value().size(); ++i) {
                json entry = learner_entry_defaults();
                merge_strict(entry, it.value()[i], key_path + "[" + std::to_string(i) + "]");
                list.push_back(entry);
            }
            slot = list;
        } else {
            merge_value(slot, it.value(), key_path);
        }
    }
}

}  // namespace detail

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicas;
    std::optional<std::size_t> workers;
    std::optional<std::string> output_dir;
    bool seed_from_environment = true;  // honour BANDIT_SEED
};

/// Merges user settings over the defaults for its kind, rejecting unknown keys,
/// then applies command-line overrides. The result is the full resolved config.
inline json resolve_config(const json& user, const std::string& expected_kind, const Overrides& overrides) {
    if (!user.is_object()) throw Error(ErrorKind::InvalidConfig, "config: expected a JSON object");
    const std::string kind = user.contains("kind") ? user.at("kind").get<std::string>() : expected_kind;
    if (kind.empty()) throw Error(ErrorKind::InvalidConfig, "kind: missing experiment kind");
    if (!expected_kind.empty() && kind != expected_kind) {
        throw Error(ErrorKind::InvalidConfig, "kind: config is for '" + kind + "' but the subcommand runs '" +
                                                  expected_kind + "'");
    }
    if (user.contains("schema_version") && user.at("schema_version") != kSchemaVersion) {
        throw Error(ErrorKind::InvalidConfig, "schema_version: unsupported version " + user.at("schema_version").dump());
    }
    json cfg = defaults_for(kind);
    detail::merge_strict(cfg, user, "");

    if (overrides.seed_from_environment) {
        if (const char* env = std::getenv("BANDIT_SEED"); env != nullptr && *env != '\0') {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0') throw Error(ErrorKind::InvalidConfig, "BANDIT_SEED: not an unsigned integer");
            cfg["seed"] = v;
        }
    }
    if (overrides.seed) cfg["seed"] = *overrides.seed;
    if (overrides.replicas) cfg["replicas"] = *overrides.replicas;
    if (overrides.workers) cfg["workers"] = *overrides.workers;
    if (overrides.output_dir) cfg["output_dir"] = *overrides.output_dir;

    if (cfg["seed"].is_null()) throw Error(ErrorKind::InvalidConfig, "seed: a seed is required (config, --seed or BANDIT_SEED)");
    if (!cfg["seed"].is_number_unsigned() && !(cfg["seed"].is_number_integer() && cfg["seed"].get<long long>() >= 0)) {
        throw Error(ErrorKind::InvalidConfig, "seed: must be an unsigned integer");
    }
    if (!cfg["replicas"].is_number_integer() || cfg["replicas"].get<long long>() < 1) {
        throw Error(ErrorKind::InvalidConfig, "replicas: must be a positive integer");
    }
    if (!cfg["workers"].is_number_integer() || cfg["workers"].get<long long>() < 1) {
        throw Error(ErrorKind::InvalidConfig, "workers: must be a positive integer");
    }
    return cfg;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidConfig, "config '" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace mpbandit::experiment

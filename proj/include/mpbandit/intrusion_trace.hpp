#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mpbandit/csv.hpp"
#include "mpbandit/error.hpp"
#include "mpbandit/random.hpp"
#include "mpbandit/weights.hpp"

namespace mpbandit {

/// Per-round attack indicators for N monitored identities.
class IntrusionTrace {
public:
    IntrusionTrace() = default;

    IntrusionTrace(std::size_t rounds, std::vector<std::string> arm_labels)
        : labels_(std::move(arm_labels)), n_rounds_(rounds), cells_(rounds * labels_.size(), 0) {
        std::set<std::string> unique(labels_.begin(), labels_.end());
        if (unique.size() != labels_.size()) throw Error(ErrorKind::InvalidConfig, "arm labels must be distinct");
    }

    std::size_t rounds() const noexcept { return n_rounds_; }
    std::size_t arms() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::uint8_t at(std::size_t round, std::size_t arm) const { return cells_[round * arms() + arm]; }
    void set(std::size_t round, std::size_t arm, std::uint8_t value) { cells_[round * arms() + arm] = value; }

    std::vector<double> rewards(std::size_t round) const {
        std::vector<double> y(arms());
        for (std::size_t k = 0; k < arms(); ++k) y[k] = at(round, k);
        return y;
    }

    /// Fraction of rounds in which each arm is under attack.
    std::vector<double> attack_density() const {
        std::vector<double> d(arms(), 0.0);
        if (n_rounds_ == 0) return d;
        for (std::size_t t = 0; t < n_rounds_; ++t) {
            for (std::size_t k = 0; k < arms(); ++k) d[k] += at(t, k);
        }
        for (double& x : d) x /= static_cast<double>(n_rounds_);
        return d;
    }

    double window_seconds = 0.25;
    std::string source;

    friend bool operator==(const IntrusionTrace&, const IntrusionTrace&) = default;

private:
    std::vector<std::string> labels_;
    std::size_t n_rounds_ = 0;
    std::vector<std::uint8_t> cells_;
};

struct SyntheticTraceConfig {
    std::size_t n_arms = 26;
    ArmSet attacked;
    std::size_t horizon = 7000;
    double burst_min_seconds = 3.0;
    double burst_max_seconds = 5.0;
    double round_window_seconds = 0.3;
    // Total over all attacked arms; each attacked arm runs its own burst sequence.
    std::size_t intrusions = 300;
};

/// Independent burst timelines for every attacked arm. Gaps are uniform on
/// [0, 2g] where g spreads each arm's share of intrusions over the horizon.
inline IntrusionTrace synthesize_intrusion_trace(const SyntheticTraceConfig& cfg, Rng& rng) {
    if (cfg.attacked.empty()) throw Error(ErrorKind::InvalidConfig, "at least one attacked arm is required");
    if (!(cfg.burst_min_seconds > 0.0 && cfg.burst_min_seconds <= cfg.burst_max_seconds)) {
        throw Error(ErrorKind::InvalidConfig, "burst length range must be positive and ordered");
    }
    if (!(cfg.round_window_seconds > 0.0)) throw Error(ErrorKind::InvalidConfig, "round window must be positive");
    if (cfg.intrusions < cfg.attacked.size()) {
        throw Error(ErrorKind::InvalidConfig, "need at least one intrusion per attacked arm");
    }
    std::set<std::size_t> unique(cfg.attacked.begin(), cfg.attacked.end());
    if (unique.size() != cfg.attacked.size() || *unique.rbegin() >= cfg.n_arms) {
        throw Error(ErrorKind::InvalidConfig, "attacked arms must be distinct indices below n_arms");
    }

    std::vector<std::string> labels(cfg.n_arms);
    for (std::size_t k = 0; k < cfg.n_arms; ++k) labels[k] = "arm_" + std::to_string(k);
    IntrusionTrace trace(cfg.horizon, std::move(labels));
    trace.window_seconds = cfg.round_window_seconds;
    trace.source = "synthetic";

    const double w = cfg.round_window_seconds;
    const double duration = static_cast<double>(cfg.horizon) * w;
    const double mean_burst = 0.5 * (cfg.burst_min_seconds + cfg.burst_max_seconds);
    std::uniform_real_distribution<double> burst_len(cfg.burst_min_seconds, cfg.burst_max_seconds);

    for (std::size_t idx = 0; idx < cfg.attacked.size(); ++idx) {
        const std::size_t arm = cfg.attacked[idx];
        const std::size_t share =
            cfg.intrusions / cfg.attacked.size() + (idx < cfg.intrusions % cfg.attacked.size() ? 1 : 0);
        const double mean_gap =
            std::max(0.0, (duration - static_cast<double>(share) * mean_burst) / static_cast<double>(share));
        std::uniform_real_distribution<double> gap(0.0, 2.0 * mean_gap);

        double start = gap(rng);
        for (std::size_t b = 0; b < share; ++b) {
            const double end = start + burst_len(rng);
            if (start >= duration) break;
            const auto first = static_cast<std::size_t>(std::floor(start / w));
            const auto last = std::min(cfg.horizon, static_cast<std::size_t>(std::ceil(end / w)));
            for (std::size_t t = first; t < last; ++t) trace.set(t, arm, 1);
            start = end + gap(rng);
        }
    }
    return trace;
}

/// Column names for a comma-separated CAN log. Defaults follow the
/// Car-Hacking layout (Timestamp, CAN ID, DLC, DATA[0..7], Flag with R/T).
struct CanColumnMap {
    std::string timestamp = "Timestamp";
    std::string identity = "CAN ID";
    std::string flag = "Flag";
    std::string injected_value = "T";
    double window_seconds = 0.25;
};

struct IngestSummary {
    std::size_t rows = 0;
    std::size_t arms = 0;
    std::size_t rounds = 0;
    std::size_t injected_rows = 0;
    std::vector<double> attack_density;
};

struct IngestResult {
    IntrusionTrace trace;
    IngestSummary summary;
};

/// Buckets log rows into fixed-width windows; one arm per distinct identity,
/// ordered lexicographically.
inline IngestResult ingest_can_log(std::istream& in, const CanColumnMap& columns, const std::string& source = "") {
    if (!(columns.window_seconds > 0.0)) throw Error(ErrorKind::InvalidConfig, "window must be positive");
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::EmptyInput, "log has no header row");
    const auto header = csv::split(line);
    auto find_column = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (csv::trim(header[i]) == name) return i;
        }
        throw Error(ErrorKind::Schema, "missing column '" + name + "'");
    };
    const std::size_t ts_col = find_column(columns.timestamp);
    const std::size_t id_col = find_column(columns.identity);
    const std::size_t flag_col = find_column(columns.flag);
    const bool flag_is_last = flag_col + 1 == header.size();

    struct Row {
        double ts;
        std::string id;
        bool injected;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line);
        if (ts_col >= fields.size() || id_col >= fields.size()) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": too few fields");
        }
        const auto ts = csv::parse_double(fields[ts_col]);
        if (!ts || !std::isfinite(*ts)) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": unparseable timestamp '" +
                                              fields[ts_col] + "'");
        }
        // Short frames (DLC < 8) omit data fields, shifting the trailing flag.
        std::string flag;
        if (flag_col < fields.size() && (fields.size() == header.size() || !flag_is_last)) {
            flag = fields[flag_col];
        } else if (flag_is_last) {
            flag = fields.back();
        } else {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": missing flag field");
        }
        rows.push_back({*ts, std::string(csv::trim(fields[id_col])), csv::trim(flag) == columns.injected_value});
    }
    if (rows.empty()) throw Error(ErrorKind::EmptyInput, "log contains no data rows");

    double t0 = rows.front().ts;
    std::set<std::string> ids;
    for (const Row& r : rows) {
        t0 = std::min(t0, r.ts);
        ids.insert(r.id);
    }
    std::vector<std::string> labels(ids.begin(), ids.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < labels.size(); ++k) index[labels[k]] = k;

    std::size_t n_rounds = 0;
    std::vector<std::size_t> bucket(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bucket[i] = static_cast<std::size_t>(std::floor((rows[i].ts - t0) / columns.window_seconds));
        n_rounds = std::max(n_rounds, bucket[i] + 1);
    }

    IngestResult result;
    result.trace = IntrusionTrace(n_rounds, labels);
    result.trace.window_seconds = columns.window_seconds;
    result.trace.source = source;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].injected) {
            result.trace.set(bucket[i], index[rows[i].id], 1);
            ++result.summary.injected_rows;
        }
    }
    result.summary.rows = rows.size();
    result.summary.arms = labels.size();
    result.summary.rounds = n_rounds;
    result.summary.attack_density = result.trace.attack_density();
    return result;
}

inline IngestResult ingest_can_log(const std::string& path, const CanColumnMap& columns) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    return ingest_can_log(in, columns, path);
}

inline nlohmann::json trace_metadata(const IntrusionTrace& trace) {
    nlohmann::json meta;
    meta["schema_version"] = 1;
    meta["arm_labels"] = trace.labels();
    meta["rounds"] = trace.rounds();
    meta["arms"] = trace.arms();
    meta["window_seconds"] = trace.window_seconds;
    meta["source"] = trace.source;
    meta["attack_density"] = trace.attack_density();
    return meta;
}

/// Writes `<stem>.csv` (round, arm_0..arm_{N-1}) and `<stem>.meta.json`.
inline void write_trace_cache(const IntrusionTrace& trace, const std::string& stem) {
    csv::Writer out(stem + ".csv");
    std::vector<std::string> header{"round"};
    for (std::size_t k = 0; k < trace.arms(); ++k) header.push_back("arm_" + std::to_string(k));
    out.header(header);
    std::vector<std::string> row(trace.arms() + 1);
    for (std::size_t t = 0; t < trace.rounds(); ++t) {
        row[0] = std::to_string(t);
        for (std::size_t k = 0; k < trace.arms(); ++k) row[k + 1] = trace.at(t, k) ? "1" : "0";
        out.row(row);
    }
    out.close();

    std::ofstream meta(stem + ".meta.json", std::ios::binary | std::ios::trunc);
    if (!meta) throw Error(ErrorKind::Io, "cannot write '" + stem + ".meta.json'");
    meta << trace_metadata(trace).dump(2) << '\n';
}

inline IntrusionTrace read_trace_cache(const std::string& stem) {
    std::ifstream meta_in(stem + ".meta.json", std::ios::binary);
    if (!meta_in) throw Error(ErrorKind::Io, "cannot open '" + stem + ".meta.json'");
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(meta_in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("trace metadata: ") + e.what());
    }
    const auto labels = meta.at("arm_labels").get<std::vector<std::string>>();
    const auto rounds = meta.at("rounds").get<std::size_t>();

    std::ifstream in(stem + ".csv", std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + stem + ".csv'");
    IntrusionTrace trace(rounds, labels);
    trace.window_seconds = meta.at("window_seconds").get<double>();
    trace.source = meta.at("source").get<std::string>();

    std::string line;
    std::getline(in, line);
    std::size_t t = 0;
    while (std::getline(in, line)) {
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line);
        if (fields.size() != labels.size() + 1 || t >= rounds) {
            throw Error(ErrorKind::Shape, "trace cache row " + std::to_string(t) + " has the wrong shape");
        }
        for (std::size_t k = 0; k < labels.size(); ++k) trace.set(t, k, fields[k + 1] == "1" ? 1 : 0);
        ++t;
    }
    if (t != rounds) throw Error(ErrorKind::Shape, "trace cache has fewer rows than its metadata");
    return trace;
}

}  // namespace mpbandit

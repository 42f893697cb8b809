#pragma once

#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

#include "mpbandit/bounds.hpp"
#include "mpbandit/csv.hpp"
#include "mpbandit/error.hpp"
#include "mpbandit/game.hpp"
#include "mpbandit/simulation.hpp"

namespace mpbandit {

namespace detail {

inline bool keep_row(std::size_t t, std::size_t len, std::size_t stride) {
    return stride <= 1 || t % stride == 0 || t + 1 == len;
}

}  // namespace detail

/// Columns: t, regret_mean, regret_stderr, bound. t is 1-based.
inline void write_regret_csv(const RegretReport& report, const std::string& path, std::size_t stride = 1) {
    csv::Writer out(path);
    out.header({"t", "regret_mean", "regret_stderr", "bound"});
    const std::size_t len = report.regret_mean.size();
    for (std::size_t t = 0; t < len; ++t) {
        if (!detail::keep_row(t, len, stride)) continue;
        out.row({std::to_string(t + 1), csv::format(report.regret_mean[t]), csv::format(report.regret_stderr[t]),
                 report.bound.empty() ? std::string("nan") : csv::format(report.bound[t])});
    }
    out.close();
}

/// Columns: t, w_1_norm .. w_N_norm. Each row is the selection marginal vector
/// for that round and sums to M_t.
inline void write_weights_csv(const SingleRun& run, const std::string& path, std::size_t stride = 1) {
    if (run.marginals.empty()) throw Error(ErrorKind::InvalidConfig, "run was made without weight recording");
    csv::Writer out(path);
    std::vector<std::string> header{"t"};
    for (std::size_t k = 0; k < run.marginals.front().size(); ++k) header.push_back("w_" + std::to_string(k + 1) + "_norm");
    out.header(header);
    const std::size_t len = run.marginals.size();
    for (std::size_t t = 0; t < len; ++t) {
        if (!detail::keep_row(t, len, stride)) continue;
        std::vector<std::string> row{std::to_string(t + 1)};
        for (double p : run.marginals[t]) row.push_back(csv::format(p));
        out.row(row);
    }
    out.close();
}

/// Columns: t, M_t, J_t (semicolon-joined, 0-based), reward, cumulative_average.
inline void write_single_trace_csv(const SingleRun& run, const std::string& path, std::size_t stride = 1) {
    csv::Writer out(path);
    out.header({"t", "M_t", "J_t", "reward", "cumulative_average"});
    double acc = 0.0;
    const std::size_t len = run.gained.size();
    for (std::size_t t = 0; t < len; ++t) {
        acc += run.gained[t];
        if (!detail::keep_row(t, len, stride)) continue;
        out.row({std::to_string(t + 1), std::to_string(run.plays[t]), join_arms(run.chosen[t]),
                 csv::format(run.gained[t]), csv::format(acc / static_cast<double>(t + 1))});
    }
    out.close();
}

/// Columns: mu, lower, upper for homogeneous success rates mu on a grid.
struct SuccessRatePoint {
    double mu = 1.0;
    BoundInterval interval;
};

inline std::vector<SuccessRatePoint> success_rate_sweep(std::size_t n, int a, int b, double mu_min, double mu_max,
                                                        std::size_t points) {
    if (points < 2 || !(mu_min > 0.0 && mu_min <= mu_max && mu_max <= 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "success-rate sweep needs 0 < mu_min <= mu_max <= 1 and >= 2 points");
    }
    std::vector<SuccessRatePoint> out;
    for (std::size_t i = 0; i < points; ++i) {
        const double mu = mu_min + (mu_max - mu_min) * static_cast<double>(i) / static_cast<double>(points - 1);
        out.push_back({mu, kstar_interval(PayoffProfile(std::vector<double>(n, mu)), a, b)});
    }
    return out;
}

inline void write_success_rate_csv(const std::vector<SuccessRatePoint>& sweep, const std::string& path) {
    csv::Writer out(path);
    out.header({"mu", "lower", "upper"});
    for (const auto& p : sweep) out.row({csv::format(p.mu), csv::format(p.interval.lower), csv::format(p.interval.upper)});
    out.close();
}

/// Minimal reader for the files above: header plus numeric rows (J_t columns
/// are left as text).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        throw Error(ErrorKind::Schema, "missing column '" + name + "'");
    }

    double number(std::size_t row, std::size_t col) const {
        const auto v = csv::parse_double(rows[row][col]);
        if (!v) throw Error(ErrorKind::Parse, "not a number: '" + rows[row][col] + "'");
        return *v;
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::EmptyInput, "'" + path + "' is empty");
    table.header = csv::split(line);
    while (std::getline(in, line)) {
        if (!line.empty()) table.rows.push_back(csv::split(line));
    }
    return table;
}

}  // namespace mpbandit

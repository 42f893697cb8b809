#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "mpbandit/error.hpp"

namespace mpbandit {

/// Minimum-cost assignment of every row to a distinct column for a
/// rows x cols cost matrix with rows <= cols (shortest augmenting paths with
/// potentials, O(rows^2 * cols)). Returns the column chosen for each row.
inline std::vector<std::size_t> solve_min_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    if (n == 0) return {};
    const std::size_t m = cost.front().size();
    for (const auto& row : cost) {
        if (row.size() != m) throw Error(ErrorKind::Shape, "cost matrix rows differ in length");
    }
    if (n > m) throw Error(ErrorKind::Shape, "assignment needs rows <= cols");

    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based internals; index 0 is the virtual source.
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        owner[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = owner[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (owner[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::size_t> assignment(n, 0);
    for (std::size_t j = 1; j <= m; ++j) {
        if (owner[j] != 0) assignment[owner[j] - 1] = j - 1;
    }
    return assignment;
}

/// Maximum-gain counterpart of solve_min_assignment.
inline std::vector<std::size_t> solve_max_assignment(const std::vector<std::vector<double>>& gain) {
    std::vector<std::vector<double>> cost = gain;
    for (auto& row : cost) {
        for (double& x : row) x = -x;
    }
    return solve_min_assignment(cost);
}

}  // namespace mpbandit

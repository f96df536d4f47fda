#include "skyshare/hungarian.hpp"

#include <cmath>
#include <stdexcept>

namespace skyshare {

Assignment hungarian(std::span<const double> cost, std::size_t rows, std::size_t cols)
{
    if (cost.size() != rows * cols)
        throw std::invalid_argument("hungarian: cost size does not match dimensions");
    for (double c : cost)
        if (!std::isfinite(c))
            throw std::invalid_argument("hungarian: non-finite cost");

    Assignment result;
    result.row_to_col.assign(rows, npos);
    if (rows == 0)
        return result;

    const std::size_t n = rows;
    const std::size_t m = std::max(rows, cols);
    auto a = [&](std::size_t i, std::size_t j) { return j < cols ? cost[i * cols + j] : 0.0; };

    // Shortest augmenting path with potentials, 1-based with column 0 as the root.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j])
                    continue;
                const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
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
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    for (std::size_t j = 1; j <= m; ++j) {
        if (p[j] == 0 || j > cols)
            continue;
        result.row_to_col[p[j] - 1] = j - 1;
        result.total_cost += cost[(p[j] - 1) * cols + (j - 1)];
    }
    return result;
}

Assignment hungarian(const std::vector<std::vector<double>>& cost)
{
    const std::size_t rows = cost.size();
    const std::size_t cols = rows ? cost.front().size() : 0;
    std::vector<double> flat;
    flat.reserve(rows * cols);
    for (const auto& row : cost) {
        if (row.size() != cols)
            throw std::invalid_argument("hungarian: ragged cost matrix");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return hungarian(flat, rows, cols);
}

}  // namespace skyshare

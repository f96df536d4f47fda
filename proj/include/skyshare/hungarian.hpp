#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace skyshare {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Assignment {
    std::vector<std::size_t> row_to_col;  // npos for rows left unassigned (rows > cols)
    double total_cost = 0.0;
};

/// Minimum-cost assignment on a row-major rows x cols matrix. When rows
/// exceed cols the matrix is padded with zero-cost dummy columns and the
/// rows that land on them come back as npos. Ties resolve toward the lower
/// column index. Throws std::invalid_argument on non-finite costs.
Assignment hungarian(std::span<const double> cost, std::size_t rows, std::size_t cols);
Assignment hungarian(const std::vector<std::vector<double>>& cost);

}  // namespace skyshare

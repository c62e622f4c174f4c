#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dirac_liouville/gaussian_rational.hpp"

namespace dirac_liouville {

/// Exact Gaussian elimination over Q(i) for matrix * x = rhs, where matrix
/// is rows x cols (rows may exceed cols). Returns a solution with any free
/// variables fixed to zero, or nothing when the system is inconsistent.
inline std::optional<std::vector<GaussianRational>> solve_linear(
    std::vector<std::vector<GaussianRational>> matrix, std::vector<GaussianRational> rhs) {
    const std::size_t rows = matrix.size();
    const std::size_t cols = rows == 0 ? 0 : matrix[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && matrix[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(matrix[pivot], matrix[rank]);
        std::swap(rhs[pivot], rhs[rank]);
        GaussianRational inv = matrix[rank][col].reciprocal();
        for (std::size_t k = col; k < cols; ++k) matrix[rank][k] *= inv;
        rhs[rank] *= inv;
        for (std::size_t row = 0; row < rows; ++row) {
            if (row == rank || matrix[row][col].is_zero()) continue;
            GaussianRational factor = matrix[row][col];
            for (std::size_t k = col; k < cols; ++k)
                matrix[row][k] -= factor * matrix[rank][k];
            rhs[row] -= factor * rhs[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t row = rank; row < rows; ++row)
        if (!rhs[row].is_zero()) return std::nullopt;
    std::vector<GaussianRational> solution(cols);
    for (std::size_t k = 0; k < rank; ++k) solution[pivot_col[k]] = rhs[k];
    return solution;
}

}  // namespace dirac_liouville

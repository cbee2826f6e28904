#pragma once

#include <vector>

#include "crgeo/scalar.hpp"

namespace crgeo {

// Exact dense linear algebra over the Gaussian rationals. Sizes here are desk
// scale (a handful of rows/columns, or a few hundred for ansatz solves), so
// plain Gauss-Jordan with exact pivots is the right tool.

// Reduces A in place to row echelon form; returns the rank.
inline int row_reduce(std::vector<std::vector<Scalar>>& a) {
    if (a.empty()) return 0;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (!a[r][col].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        const Scalar inv = Scalar(1) / a[rank][col];
        for (int c = col; c < cols; ++c) a[rank][c] = a[rank][c] * inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][col].is_zero()) continue;
            const Scalar f = a[r][col];
            for (int c = col; c < cols; ++c) a[r][c] = a[r][c] - f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

inline int matrix_rank(std::vector<std::vector<Scalar>> a) { return row_reduce(a); }

inline Scalar matrix_det(std::vector<std::vector<Scalar>> a) {
    const int n = static_cast<int>(a.size());
    Scalar det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (!a[r][col].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return Scalar(0);
        if (pivot != col) {
            std::swap(a[col], a[pivot]);
            det = -det;
        }
        det *= a[col][col];
        const Scalar inv = Scalar(1) / a[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            const Scalar f = a[r][col] * inv;
            for (int c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
        }
    }
    return det;
}

// Basis of { x : A x = 0 }. `a` is rows x ncols; rows may be empty.
inline std::vector<std::vector<Scalar>> kernel_basis(std::vector<std::vector<Scalar>> a, int ncols) {
    for (auto& row : a)
        row.resize(ncols, Scalar(0));
    int rank = a.empty() ? 0 : row_reduce(a);
    // Locate pivot columns of the reduced matrix.
    std::vector<int> pivot_col(rank, -1);
    std::vector<bool> is_pivot(ncols, false);
    for (int r = 0; r < rank; ++r) {
        for (int c = 0; c < ncols; ++c) {
            if (!a[r][c].is_zero()) {
                pivot_col[r] = c;
                is_pivot[c] = true;
                break;
            }
        }
    }
    std::vector<std::vector<Scalar>> basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(ncols, Scalar(0));
        v[free] = Scalar(1);
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace crgeo

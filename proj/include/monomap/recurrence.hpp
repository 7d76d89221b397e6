// Minimal-order linear recurrence detection with exact rational coefficients,
// certified on the entire available window.
#pragma once

#include <optional>
#include <vector>

#include "monomap/errors.hpp"
#include "monomap/rational.hpp"

namespace monomap {

struct Recurrence {
    // x_k = coeffs[0] x_{k-1} + ... + coeffs[order-1] x_{k-order}
    std::vector<Rat> coeffs;
    int order = 0;
    int window = 0;  // number of terms the recurrence was certified on
};

namespace detail {

// Any exact solution of the (possibly overdetermined) system M c = rhs, or
// nothing when inconsistent. Free variables are set to zero.
inline std::optional<std::vector<Rat>> solve_linear_system(std::vector<std::vector<Rat>> m,
                                                           std::vector<Rat> rhs) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        std::swap(rhs[piv], rhs[row]);
        Rat inv = Rat(1) / m[row][col];
        for (size_t c = col; c < cols; ++c) m[row][c] *= inv;
        rhs[row] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
            rhs[r] -= f * rhs[row];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    for (size_t r = row; r < rows; ++r)
        if (rhs[r] != 0) return std::nullopt;  // inconsistent
    std::vector<Rat> sol(cols, Rat(0));
    for (size_t r = 0; r < row; ++r) sol[static_cast<size_t>(pivot_col_of_row[r])] = rhs[r];
    return sol;
}

}  // namespace detail

// Minimal-order recurrence fitted and certified on the whole window. Orders up
// to floor((K-2)/2) are tried, so that at least 2r+2 terms back every
// certified order r; nothing is returned when no such order fits.
inline std::optional<Recurrence> min_recurrence(const std::vector<Rat>& values) {
    int K = static_cast<int>(values.size());
    if (K < 4) throw InsufficientData("need at least 4 terms to certify an order-1 recurrence");
    int r_max = (K - 2) / 2;
    for (int r = 1; r <= r_max; ++r) {
        std::vector<std::vector<Rat>> m;
        std::vector<Rat> rhs;
        for (int k = r; k < K; ++k) {  // 0-based: values[k] from the r previous
            std::vector<Rat> row;
            for (int i = 1; i <= r; ++i) row.push_back(values[static_cast<size_t>(k - i)]);
            m.push_back(std::move(row));
            rhs.push_back(values[static_cast<size_t>(k)]);
        }
        auto sol = detail::solve_linear_system(std::move(m), std::move(rhs));
        if (sol) return Recurrence{*sol, r, K};
    }
    return std::nullopt;
}

}  // namespace monomap

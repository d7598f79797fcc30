#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace naifs {

double covering_lp_optimum(const std::vector<std::vector<std::uint32_t>>& cover,
                           const std::vector<double>& cost, std::size_t n_rows) {
    const std::size_t n_cands = cover.size();
    if (n_rows == 0) return 0.0;

    std::vector<char> coverable(n_rows, 0);
    for (const auto& c : cover)
        for (std::uint32_t j : c) coverable[j] = 1;
    for (std::size_t j = 0; j < n_rows; ++j)
        if (!coverable[j])
            throw NoCoverError("covering LP: constraint " + std::to_string(j) +
                               " is not covered by any candidate");

    // Dual packing problem: max sum_j y_j s.t. for each candidate i,
    // sum_{j in cover[i]} y_j <= cost[i], y >= 0. The slack basis is
    // feasible at once; the optimum equals the covering optimum.
    const std::size_t rows = n_cands;
    const std::size_t cols = n_rows + n_cands + 1; // y vars, slacks, rhs
    if (rows * cols > 16u * 1024u * 1024u)
        throw ValidationError("weighted cover instance too large for the exact LP solver");

    std::vector<double> tab(rows * cols, 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return tab[r * cols + c]; };
    std::vector<double> obj(cols, 0.0);
    for (std::size_t j = 0; j < n_rows; ++j) obj[j] = -1.0; // maximize sum y

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::uint32_t j : cover[i]) at(i, j) = 1.0;
        at(i, n_rows + i) = 1.0;
        at(i, cols - 1) = cost[i];
    }
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = n_rows + i;

    const double eps = 1e-11;
    std::size_t iters = 0;
    const std::size_t max_iters = 20000 + 80 * rows;
    while (true) {
        if (++iters > max_iters)
            throw RuntimeModuleError("covering LP: iteration limit reached");
        // entering column: Dantzig early on, Bland once iterations pile up
        std::size_t enter = cols - 1;
        if (iters < max_iters / 2) {
            double best = -eps;
            for (std::size_t c = 0; c + 1 < cols; ++c)
                if (obj[c] < best) {
                    best = obj[c];
                    enter = c;
                }
        } else {
            for (std::size_t c = 0; c + 1 < cols; ++c)
                if (obj[c] < -eps) {
                    enter = c;
                    break;
                }
        }
        if (enter == cols - 1) break; // optimal

        // ratio test, ties resolved by the smallest basic variable index
        std::size_t leave = rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < rows; ++r) {
            const double a = at(r, enter);
            if (a > eps) {
                const double ratio = at(r, cols - 1) / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (leave == rows || basis[r] < basis[leave]))) {
                    best_ratio = std::min(best_ratio, ratio);
                    leave = r;
                }
            }
        }
        if (leave == rows)
            throw NoCoverError("covering LP: dual unbounded (uncoverable constraint)");

        const double piv = at(leave, enter);
        for (std::size_t c = 0; c < cols; ++c) at(leave, c) /= piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leave) continue;
            const double f = at(r, enter);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < cols; ++c) at(r, c) -= f * at(leave, c);
            at(r, enter) = 0.0;
        }
        const double fo = obj[enter];
        if (fo != 0.0) {
            for (std::size_t c = 0; c < cols; ++c) obj[c] -= fo * at(leave, c);
            obj[enter] = 0.0;
        }
        basis[leave] = enter;
    }

    // optimal packing value: sum of the basic y variables
    double objective = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        if (basis[r] < n_rows) objective += at(r, cols - 1);
    return objective;
}

} // namespace naifs

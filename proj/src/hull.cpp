#include "subergo/hull.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "subergo/error.hpp"

namespace subergo {

namespace {

constexpr double kPivotEps = 1e-13;

// Dense phase-one simplex with Bland's rule. Returns the minimal sum of
// artificial variables, i.e. the L1 distance-like infeasibility.
double phase_one(std::span<const ProbVector> points, const ProbVector& q) {
    const std::size_t n = q.size();
    const std::size_t m = points.size();
    const std::size_t rows = n + 1;
    const std::size_t cols = m + rows;  // structurals, artificials
    const std::size_t rhs = cols;

    std::vector<std::vector<double>> tab(rows, std::vector<double>(cols + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) tab[i][k] = points[k][i];
        tab[i][rhs] = q[i];
    }
    for (std::size_t k = 0; k < m; ++k) tab[n][k] = 1.0;
    tab[n][rhs] = 1.0;
    for (std::size_t i = 0; i < rows; ++i) tab[i][m + i] = 1.0;

    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = m + i;

    // Reduced costs of min sum(artificials); obj[rhs] holds -objective.
    std::vector<double> obj(cols + 1, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < m; ++j) obj[j] -= tab[i][j];
        obj[rhs] -= tab[i][rhs];
    }

    const std::size_t max_iter = 50 * (rows + cols);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (obj[j] < -kPivotEps) {
                enter = j;
                break;
            }
        }
        if (enter == cols) return -obj[rhs];

        std::size_t leave = rows;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rows; ++i) {
            if (tab[i][enter] <= kPivotEps) continue;
            const double ratio = tab[i][rhs] / tab[i][enter];
            if (ratio < best - kPivotEps || (std::abs(ratio - best) <= kPivotEps && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == rows) return -obj[rhs];  // unbounded direction cannot occur in phase one

        const double piv = tab[leave][enter];
        for (auto& v : tab[leave]) v /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave) continue;
            const double f = tab[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        const double f = obj[enter];
        for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * tab[leave][j];
        basis[leave] = enter;
    }
    throw ContractError("convex hull membership: simplex iteration limit reached");
}

}  // namespace

bool in_convex_hull(std::span<const ProbVector> points, const ProbVector& q, double tol) {
    if (points.empty()) return false;
    for (const auto& p : points)
        if (p.size() != q.size()) throw InputError("hull membership: dimension mismatch");
    return phase_one(points, q) <= tol;
}

bool same_convex_hull(std::span<const ProbVector> a, std::span<const ProbVector> b, double tol) {
    for (const auto& p : a)
        if (!in_convex_hull(b, p, tol)) return false;
    for (const auto& p : b)
        if (!in_convex_hull(a, p, tol)) return false;
    return true;
}

}  // namespace subergo

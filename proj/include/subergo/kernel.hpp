#pragma once

// Wrapped Gaussian heat kernels: exact linear semigroups on the circle.

#include <cstddef>
#include <vector>

#include "subergo/exec.hpp"
#include "subergo/gheat.hpp"
#include "subergo/grid.hpp"

namespace subergo {

struct WrappedKernelSpec {
    double sigma2 = 1.0;
    double t = 1.0;
    double tail_tol = 1e-15;

    void validate() const;
    // Smallest K such that the images with |k| > K contribute < tail_tol.
    std::size_t truncation() const;
};

// sum_{|k| <= K} (2 pi s)^{-1/2} exp(-(x - y - 2 k pi)^2 / (2 s)), s = sigma2 * t.
double wrapped_gauss(const WrappedKernelSpec& spec, double x, double y);

// Row of the circulant quadrature matrix: c[m] = h * p(m h), m = 0..M-1.
std::vector<double> kernel_row(const WrappedKernelSpec& spec, const CircleGrid& grid);

// (T^sigma_t phi)(x_i) = h * sum_j p(x_i, x_j) phi(x_j).
GridFn linear_semigroup(const GridFn& phi, const WrappedKernelSpec& spec, Exec exec = Exec::parallel);

// Uniform bound on T_t 1_A for a set of Lebesgue measure `leb`:
// leb (2 pi s)^{-1/2} exp((2 pi)^2 / (2 s)) / (1 - exp(-pi^2 / s)), s = sigma_lo2 * t.
double regularity_bound(double t, double sigma_lo2, double leb);

struct Interval {
    double a;
    double b;
};

struct StrongRegularityRow {
    Interval interval;
    double leb = 0.0;
    double sup_value = 0.0;   // sup_x T_t 1_A (dynamic-programming oracle)
    double bound = 0.0;  // regularity_bound
    double proxy_bound = 0.0; // 10 * leb * sup of the sigma_lo kernel
};

struct StrongRegularityReport {
    std::vector<StrongRegularityRow> rows;
    bool non_increasing = false;
    bool strictly_decreasing = false;
    bool within_bound = false;   // every value <= min(1, regularity_bound)
    bool below_proxy = false;    // final value <= its proxy bound
    bool passed() const { return non_increasing && within_bound && below_proxy; }
};

// Nested node-aligned intervals; the nonlinear T_t 1_A is evaluated with
// dp_upper_expectation on `grid` with `dp_steps` time steps.
StrongRegularityReport strong_regularity_audit(const GHeatParams& p, double t,
                                               const std::vector<Interval>& shrinking,
                                               const CircleGrid& grid, std::size_t dp_steps = 64);

}  // namespace subergo

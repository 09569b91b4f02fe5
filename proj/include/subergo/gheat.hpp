#pragma once

// Monotone explicit finite differences for the fully nonlinear heat equation
//
//     u_t = 1/2 sigma_hi^2 (u_xx)^+ - 1/2 sigma_lo^2 (u_xx)^-
//
// on the unit circle. The sign of the curvature selects the volatility; the
// scheme is monotone (hence converges to the viscosity solution) whenever
// dt * sigma_hi^2 / h^2 <= 1.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subergo/exec.hpp"
#include "subergo/grid.hpp"

namespace subergo {

struct GHeatParams {
    double sigma_lo2 = 0.25;
    double sigma_hi2 = 1.0;
    double cfl = 0.8;

    // Throws InputError unless 0 < sigma_lo2 <= sigma_hi2 and 0 < cfl < 1.
    void validate() const;
    double time_step(const CircleGrid& grid) const;
};

// (u_{i+1} - 2 u_i + u_{i-1}) / h^2 with wraparound.
GridFn second_diff(const GridFn& u, Exec exec = Exec::parallel);

// 1/2 sigma_hi^2 max(D, 0) - 1/2 sigma_lo^2 max(-D, 0), D = second_diff(u).
GridFn g_operator(const GridFn& u, const GHeatParams& p, Exec exec = Exec::parallel);

// u + dt * g_operator(u). Throws ContractError if dt * sigma_hi^2 / h^2 > 1.
GridFn step_explicit(const GridFn& u, const GHeatParams& p, double dt, Exec exec = Exec::parallel);

// T_t phi: explicit steps of p.time_step(), the last one shortened to land on t.
GridFn solve(const GridFn& phi, double t, const GHeatParams& p, Exec exec = Exec::parallel);

// || T_{s+t} phi - T_s T_t phi ||_inf
double semigroup_check(const GridFn& phi, double s, double t, const GHeatParams& p);

// Normalised Lebesgue integral (trapezoid rule on the periodic grid).
double mean(const GridFn& u);

// mean(T_delta phi); requires delta > 0.
double invariant_expectation(const GridFn& phi, double delta, const GHeatParams& p);

// sup_x |T_t phi(x) - mean(phi)| at each of the increasing times. The solution
// is advanced incrementally from one sampled time to the next.
std::vector<double> convergence_profile(const GridFn& phi, std::span<const double> times,
                                        const GHeatParams& p);

struct SteadyStateReport {
    double horizon = 0.0;
    double spread = 0.0;       // max(u) - min(u)
    double g_norm = 0.0;       // || g_operator(u) ||_inf
    double level = 0.0;        // mean of the final state
    bool passed = false;
};

inline constexpr double kSteadySpreadTol = 1e-6;
inline constexpr double kSteadyGeneratorTol = 1e-8;

SteadyStateReport steady_state_audit(const GridFn& phi0, const GHeatParams& p, double horizon = 100.0);

struct ConvexConcaveSplit {
    std::vector<double> convex;   // discretely convex part
    std::vector<double> concave;  // discretely concave part
};

// Splits samples of a function on a closed interval (no wraparound) so that
// the interior second differences of the parts are the positive and negative
// parts of those of phi; linear content goes to the convex part.
ConvexConcaveSplit convex_concave_split(std::span<const double> phi);

}  // namespace subergo

#include "subergo/gheat.hpp"

#include <algorithm>
#include <cmath>

#include "subergo/error.hpp"

namespace subergo {

void GHeatParams::validate() const {
    if (!(sigma_lo2 > 0.0)) throw InputError("sigma_lo2 must be positive");
    if (!(sigma_hi2 >= sigma_lo2)) throw InputError("sigma_hi2 must be >= sigma_lo2");
    if (!(cfl > 0.0 && cfl < 1.0)) throw InputError("cfl must lie in (0, 1)");
}

double GHeatParams::time_step(const CircleGrid& grid) const {
    const double h = grid.spacing();
    return cfl * h * h / sigma_hi2;
}

namespace {

// The update of node i only reads u[i-1], u[i], u[i+1] of the old array.
template <class Fn>
void for_each_node(std::size_t m, Exec exec, Fn&& fn) {
    const auto count = static_cast<long>(m);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    } else {
        for (long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    }
}

inline double curvature(std::span<const double> u, std::size_t i, double inv_h2) {
    const std::size_t m = u.size();
    const double left = u[i == 0 ? m - 1 : i - 1];
    const double right = u[i + 1 == m ? 0 : i + 1];
    return (right - 2.0 * u[i] + left) * inv_h2;
}

inline double generator(double d, double half_hi, double half_lo) {
    return half_hi * std::max(d, 0.0) - half_lo * std::max(-d, 0.0);
}

void step_into(std::span<const double> u, std::span<double> out, const GHeatParams& p, double dt,
               double inv_h2, Exec exec) {
    const double half_hi = 0.5 * p.sigma_hi2;
    const double half_lo = 0.5 * p.sigma_lo2;
    for_each_node(u.size(), exec, [&](std::size_t i) {
        out[i] = u[i] + dt * generator(curvature(u, i, inv_h2), half_hi, half_lo);
    });
}

void check_cfl(const GHeatParams& p, const CircleGrid& grid, double dt) {
    const double h = grid.spacing();
    if (!(dt >= 0.0) || dt * p.sigma_hi2 / (h * h) > 1.0 + 1e-12)
        throw ContractError("explicit step violates the monotonicity bound dt*sigma_hi^2/h^2 <= 1");
}

}  // namespace

GridFn second_diff(const GridFn& u, Exec exec) {
    const double h = u.grid().spacing();
    const double inv_h2 = 1.0 / (h * h);
    GridFn out(u.grid(), 0.0);
    auto dst = out.values();
    const auto src = u.values();
    for_each_node(u.size(), exec, [&](std::size_t i) { dst[i] = curvature(src, i, inv_h2); });
    return out;
}

GridFn g_operator(const GridFn& u, const GHeatParams& p, Exec exec) {
    p.validate();
    const double h = u.grid().spacing();
    const double inv_h2 = 1.0 / (h * h);
    const double half_hi = 0.5 * p.sigma_hi2;
    const double half_lo = 0.5 * p.sigma_lo2;
    GridFn out(u.grid(), 0.0);
    auto dst = out.values();
    const auto src = u.values();
    for_each_node(u.size(), exec, [&](std::size_t i) {
        dst[i] = generator(curvature(src, i, inv_h2), half_hi, half_lo);
    });
    return out;
}

GridFn step_explicit(const GridFn& u, const GHeatParams& p, double dt, Exec exec) {
    p.validate();
    check_cfl(p, u.grid(), dt);
    const double h = u.grid().spacing();
    GridFn out(u.grid(), 0.0);
    step_into(u.values(), out.values(), p, dt, 1.0 / (h * h), exec);
    return out;
}

GridFn solve(const GridFn& phi, double t, const GHeatParams& p, Exec exec) {
    p.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("solve needs a finite t >= 0");
    if (t == 0.0) return phi;

    const double dt = p.time_step(phi.grid());
    const double h = phi.grid().spacing();
    const double inv_h2 = 1.0 / (h * h);
    auto steps = static_cast<std::size_t>(std::ceil(t / dt));
    if (steps == 0) steps = 1;
    double last = t - static_cast<double>(steps - 1) * dt;
    if (last <= 0.0) {
        --steps;
        last = t - static_cast<double>(steps - 1) * dt;
    }

    GridFn cur = phi;
    GridFn next(phi.grid(), 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        step_into(cur.values(), next.values(), p, k + 1 == steps ? last : dt, inv_h2, exec);
        std::swap(cur, next);
    }
    return cur;
}

double semigroup_check(const GridFn& phi, double s, double t, const GHeatParams& p) {
    if (!(s >= 0.0) || !(t >= 0.0)) throw InputError("semigroup check needs s, t >= 0");
    if (s == 0.0 || t == 0.0) return 0.0;
    return sup_distance(solve(phi, s + t, p), solve(solve(phi, t, p), s, p));
}

double mean(const GridFn& u) {
    double s = 0.0;
    for (double v : u.values()) s += v;
    return s / static_cast<double>(u.size());
}

double invariant_expectation(const GridFn& phi, double delta, const GHeatParams& p) {
    if (!(delta > 0.0)) throw InputError("invariant expectation needs delta > 0");
    return mean(solve(phi, delta, p));
}

std::vector<double> convergence_profile(const GridFn& phi, std::span<const double> times,
                                        const GHeatParams& p) {
    const double target = mean(phi);
    std::vector<double> out;
    out.reserve(times.size());
    GridFn u = phi;
    double now = 0.0;
    for (double t : times) {
        if (!(t >= now)) throw InputError("convergence profile times must be increasing and >= 0");
        u = solve(u, t - now, p);
        now = t;
        double sup = 0.0;
        for (double v : u.values()) sup = std::max(sup, std::abs(v - target));
        out.push_back(sup);
    }
    return out;
}

SteadyStateReport steady_state_audit(const GridFn& phi0, const GHeatParams& p, double horizon) {
    if (!(horizon > 0.0)) throw InputError("steady-state audit needs a positive horizon");
    const GridFn u = solve(phi0, horizon, p);
    SteadyStateReport r;
    r.horizon = horizon;
    r.spread = u.max() - u.min();
    const GridFn g = g_operator(u, p);
    for (double v : g.values()) r.g_norm = std::max(r.g_norm, std::abs(v));
    r.level = mean(u);
    r.passed = r.spread <= kSteadySpreadTol && r.g_norm <= kSteadyGeneratorTol;
    return r;
}

ConvexConcaveSplit convex_concave_split(std::span<const double> phi) {
    const std::size_t n = phi.size();
    ConvexConcaveSplit out{std::vector<double>(phi.begin(), phi.end()), std::vector<double>(n, 0.0)};
    if (n < 3) return out;

    // Double cumulative sum of the nonnegative curvature, anchored so that the
    // convex part matches phi in value and first difference at the left end.
    auto& convex = out.convex;
    convex[0] = phi[0];
    convex[1] = phi[1];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double d = phi[i + 1] - 2.0 * phi[i] + phi[i - 1];
        convex[i + 1] = 2.0 * convex[i] - convex[i - 1] + std::max(d, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) out.concave[i] = phi[i] - convex[i];
    return out;
}

}  // namespace subergo

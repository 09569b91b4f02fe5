#include "subergo/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subergo/error.hpp"
#include "subergo/scenario.hpp"

namespace subergo {

void WrappedKernelSpec::validate() const {
    if (!(sigma2 > 0.0)) throw InputError("kernel variance rate must be positive");
    if (!(t > 0.0)) throw InputError("kernel time must be positive");
    if (!(tail_tol > 0.0)) throw InputError("kernel tail tolerance must be positive");
}

namespace {

constexpr double kPi = std::numbers::pi;

// Upper bound on the images |k| > K for a folded offset r in [0, pi]:
// |r - 2 k pi| >= (2|k| - 1) pi.
double tail_bound(double s, std::size_t k_max) {
    const double c = 1.0 / std::sqrt(2.0 * kPi * s);
    double sum = 0.0;
    for (std::size_t j = k_max + 1;; ++j) {
        const double d = (2.0 * static_cast<double>(j) - 1.0) * kPi;
        const double term = std::exp(-d * d / (2.0 * s));
        sum += term;
        if (term <= sum * 1e-17 || term == 0.0) break;
    }
    return 2.0 * c * sum;
}

double fold(double d) {
    double r = std::fmod(std::abs(d), 2.0 * kPi);
    if (r > kPi) r = 2.0 * kPi - r;
    return r;
}

double folded_density(double s, std::size_t k_max, double r) {
    const double c = 1.0 / std::sqrt(2.0 * kPi * s);
    double sum = std::exp(-r * r / (2.0 * s));
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double shift = 2.0 * kPi * static_cast<double>(k);
        const double a = r - shift, b = r + shift;
        sum += std::exp(-a * a / (2.0 * s)) + std::exp(-b * b / (2.0 * s));
    }
    return c * sum;
}

}  // namespace

std::size_t WrappedKernelSpec::truncation() const {
    validate();
    const double s = sigma2 * t;
    std::size_t k = 0;
    while (tail_bound(s, k) >= tail_tol) ++k;
    return k;
}

double wrapped_gauss(const WrappedKernelSpec& spec, double x, double y) {
    const std::size_t k_max = spec.truncation();
    return folded_density(spec.sigma2 * spec.t, k_max, fold(x - y));
}

std::vector<double> kernel_row(const WrappedKernelSpec& spec, const CircleGrid& grid) {
    const std::size_t k_max = spec.truncation();
    const double s = spec.sigma2 * spec.t;
    const double h = grid.spacing();
    std::vector<double> row(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m) row[m] = h * folded_density(s, k_max, fold(grid.node(m)));
    return row;
}

GridFn linear_semigroup(const GridFn& phi, const WrappedKernelSpec& spec, Exec exec) {
    const auto row = kernel_row(spec, phi.grid());
    const std::size_t m = phi.size();
    GridFn out(phi.grid(), 0.0);
    auto dst = out.values();
    const auto src = phi.values();
    auto body = [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += row[i >= j ? i - j : i + m - j] * src[j];
        dst[i] = acc;
    };
    const auto count = static_cast<long>(m);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    } else {
        for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    }
    return out;
}

double regularity_bound(double t, double sigma_lo2, double leb) {
    if (!(t > 0.0)) throw InputError("regularity bound needs t > 0");
    if (!(sigma_lo2 > 0.0)) throw InputError("regularity bound needs sigma_lo2 > 0");
    if (!(leb >= 0.0)) throw InputError("regularity bound needs a nonnegative measure");
    const double s = sigma_lo2 * t;
    return leb / std::sqrt(2.0 * kPi * s) * std::exp((2.0 * kPi) * (2.0 * kPi) / (2.0 * s)) /
           (1.0 - std::exp(-kPi * kPi / s));
}

StrongRegularityReport strong_regularity_audit(const GHeatParams& p, double t,
                                               const std::vector<Interval>& shrinking,
                                               const CircleGrid& grid, std::size_t dp_steps) {
    p.validate();
    if (!(t > 0.0)) throw InputError("strong regularity audit needs t > 0");
    for (std::size_t i = 0; i < shrinking.size(); ++i) {
        const auto& iv = shrinking[i];
        if (!(iv.a <= iv.b)) throw InputError("interval with a > b");
        if (i > 0 && (iv.a < shrinking[i - 1].a || iv.b > shrinking[i - 1].b))
            throw InputError("intervals must be nested and decreasing");
    }

    const double kernel_peak = wrapped_gauss({p.sigma_lo2, t, 1e-15}, 0.0, 0.0);
    StrongRegularityReport r;
    for (const auto& iv : shrinking) {
        StrongRegularityRow row;
        row.interval = iv;
        row.leb = iv.b - iv.a;
        std::vector<double> ind(grid.size(), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double x = grid.node(i);
            if (x >= iv.a - 1e-12 && x < iv.b - 1e-12) ind[i] = 1.0;
        }
        row.sup_value = dp_upper_expectation(GridFn(grid, std::move(ind)), t, p, dp_steps).max();
        row.bound = regularity_bound(t, p.sigma_lo2, row.leb);
        row.proxy_bound = 10.0 * row.leb * kernel_peak;
        r.rows.push_back(row);
    }

    r.non_increasing = r.strictly_decreasing = r.within_bound = true;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        if (row.sup_value > std::min(1.0, row.bound) + 1e-12) r.within_bound = false;
        if (i > 0) {
            const double prev = r.rows[i - 1].sup_value;
            if (row.sup_value > prev + 1e-12) r.non_increasing = false;
            if (!(row.sup_value < prev)) r.strictly_decreasing = false;
        }
    }
    r.below_proxy = r.rows.empty() || r.rows.back().sup_value <= r.rows.back().proxy_bound;
    return r;
}

}  // namespace subergo

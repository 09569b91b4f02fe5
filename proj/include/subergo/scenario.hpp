#pragma once

// The control view of the sublinear semigroup: T_t phi is the supremum over
// adapted volatility processes with values in [sigma_lo, sigma_hi]. This
// module provides a dynamic-programming oracle for that supremum and Monte
// Carlo paths under a small library of admissible scenarios.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "subergo/exec.hpp"
#include "subergo/gheat.hpp"
#include "subergo/grid.hpp"

namespace subergo {

struct VolPolicy {
    enum class Kind { constant, random_switching, threshold_feedback, greedy_bang_bang };

    Kind kind = Kind::constant;
    double sigma = 1.0;         // constant: the volatility (not its square)
    double rate = 1.0;          // random_switching: switching intensity
    std::uint64_t seed = 0;     // random_switching: own stream
    double level = 0.0;         // threshold_feedback: sigma_hi iff phi(x) > level

    static VolPolicy constant(double sigma);
    static VolPolicy random_switching(double rate, std::uint64_t seed);
    static VolPolicy threshold_feedback(double level);
    // sigma_hi where the observable is locally convex, sigma_lo elsewhere:
    // the pointwise maximiser of the generator.
    static VolPolicy greedy_bang_bang();

    // "constant:<sigma>", "switching:<rate>:<seed>", "threshold:<level>", "greedy".
    static VolPolicy parse(const std::string& text);
    std::string name() const;
    bool needs_observable() const;
};

// One of each kind: constant sigma_hi, switching at rate 1, threshold at 0,
// greedy.
std::vector<VolPolicy> default_policies(const GHeatParams& p);

// Eight fixed seeds.
std::vector<std::uint64_t> default_seeds();

struct PathSample {
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> positions;  // in [0, 2pi)
};

// x_{k+1} = (x_k + sigma_k sqrt(dt) xi_k) mod 2pi, sigma_k chosen from the
// state at step k. `observable` is required by the feedback policies.
PathSample simulate_path(const VolPolicy& policy, const GHeatParams& p, double x0, double horizon,
                         double dt, std::uint64_t seed, const GridFn* observable = nullptr);

// CSV with header `t,x`, 17 significant digits.
void write_path_csv(std::ostream& os, const PathSample& path);

// Left-Riemann average of phi along the path; phi(x0) for a single point.
double time_average(const PathSample& path, const GridFn& phi);

// Same value as time_average(simulate_path(...), phi) without storing the path.
double streaming_time_average(const VolPolicy& policy, const GHeatParams& p, const GridFn& phi,
                              double x0, double horizon, double dt, std::uint64_t seed);

struct SllnEntry {
    std::string policy;
    std::uint64_t seed = 0;
    double average = 0.0;
    double deviation = 0.0;  // |average - mean(phi)|
};

struct SllnExperimentReport {
    double target = 0.0;
    double horizon = 0.0;
    double dt = 0.0;
    double tolerance = 0.0;
    std::vector<SllnEntry> entries;  // policy-major, seed-minor
    double max_deviation = 0.0;
    bool passed = false;
};

SllnExperimentReport slln_experiment(const GridFn& phi, const std::vector<VolPolicy>& policies,
                                     const GHeatParams& p, double horizon, double dt,
                                     const std::vector<std::uint64_t>& seeds, double tolerance,
                                     Exec exec = Exec::parallel);

// One-step transition kernels for both extreme volatilities on a grid.
class DPLattice {
public:
    DPLattice(const CircleGrid& grid, const GHeatParams& p, double t, std::size_t steps);

    const CircleGrid& grid() const { return grid_; }
    std::size_t steps() const { return steps_; }
    // Circulant rows, each normalised to unit mass.
    const std::vector<double>& low_row() const { return low_; }
    const std::vector<double>& high_row() const { return high_; }

    // One backward step: max over both controls of the kernel average.
    void backward(std::span<const double> next, std::span<double> out, Exec exec) const;

private:
    CircleGrid grid_;
    std::size_t steps_;
    std::vector<double> low_, high_;
};

// Backward recursion u_N = phi, u_k = max_sigma P^sigma u_{k+1}; returns u_0.
// Bang-bang controls suffice because each step maximises a function linear
// in sigma^2.
GridFn dp_upper_expectation(const GridFn& phi, double t, const GHeatParams& p, std::size_t steps,
                            Exec exec = Exec::parallel);

struct CapacityEstimate {
    double upper = 0.0;
    double lower = 0.0;
    std::vector<double> per_policy;
};

// Empirical frequency of the event for each policy over the seeds; the
// extremes are finite-scenario estimates, not exact capacities.
CapacityEstimate capacity_estimate(const std::function<bool(const PathSample&)>& event,
                                   const std::vector<VolPolicy>& policies, const GHeatParams& p,
                                   double x0, double horizon, double dt,
                                   const std::vector<std::uint64_t>& seeds,
                                   const GridFn* observable = nullptr);

}  // namespace subergo

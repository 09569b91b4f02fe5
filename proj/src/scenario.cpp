#include "subergo/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "subergo/error.hpp"
#include "subergo/kernel.hpp"
#include "subergo/rng.hpp"

namespace subergo {

VolPolicy VolPolicy::constant(double sigma) {
    VolPolicy v;
    v.kind = Kind::constant;
    v.sigma = sigma;
    return v;
}

VolPolicy VolPolicy::random_switching(double rate, std::uint64_t seed) {
    VolPolicy v;
    v.kind = Kind::random_switching;
    v.rate = rate;
    v.seed = seed;
    return v;
}

VolPolicy VolPolicy::threshold_feedback(double level) {
    VolPolicy v;
    v.kind = Kind::threshold_feedback;
    v.level = level;
    return v;
}

VolPolicy VolPolicy::greedy_bang_bang() {
    VolPolicy v;
    v.kind = Kind::greedy_bang_bang;
    return v;
}

namespace {

double to_double(const std::string& s, const std::string& ctx) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw InputError("bad number in policy '" + ctx + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

VolPolicy VolPolicy::parse(const std::string& text) {
    const auto parts = split(text, ':');
    const auto& kind = parts[0];
    if (kind == "constant" && parts.size() == 2) return constant(to_double(parts[1], text));
    if (kind == "switching" && parts.size() == 3) {
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), seed);
        if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size())
            throw InputError("bad seed in policy '" + text + "'");
        return random_switching(to_double(parts[1], text), seed);
    }
    if (kind == "threshold" && parts.size() == 2) return threshold_feedback(to_double(parts[1], text));
    if (kind == "greedy" && parts.size() == 1) return greedy_bang_bang();
    throw InputError("unknown policy '" + text + "'");
}

std::string VolPolicy::name() const {
    std::ostringstream os;
    switch (kind) {
    case Kind::constant: os << "constant:" << sigma; break;
    case Kind::random_switching: os << "switching:" << rate << ':' << seed; break;
    case Kind::threshold_feedback: os << "threshold:" << level; break;
    case Kind::greedy_bang_bang: os << "greedy"; break;
    }
    return os.str();
}

bool VolPolicy::needs_observable() const {
    return kind == Kind::threshold_feedback || kind == Kind::greedy_bang_bang;
}

std::vector<VolPolicy> default_policies(const GHeatParams& p) {
    return {VolPolicy::constant(std::sqrt(p.sigma_hi2)), VolPolicy::random_switching(1.0, 7),
            VolPolicy::threshold_feedback(0.0), VolPolicy::greedy_bang_bang()};
}

std::vector<std::uint64_t> default_seeds() { return {11, 23, 37, 41, 53, 67, 79, 97}; }

namespace {

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

// Adapted volatility rule plus the Gaussian driver of one path.
class Walker {
public:
    Walker(const VolPolicy& policy, const GHeatParams& p, double dt, std::uint64_t seed,
           const GridFn* observable)
        : policy_(policy),
          lo_(std::sqrt(p.sigma_lo2)),
          hi_(std::sqrt(p.sigma_hi2)),
          sqrt_dt_(std::sqrt(dt)),
          noise_(make_stream(seed, 1 + static_cast<std::uint64_t>(policy.kind))),
          observable_(observable) {
        p.validate();
        if (!(dt > 0.0)) throw InputError("path simulation needs dt > 0");
        if (policy.needs_observable() && observable == nullptr)
            throw InputError("policy '" + policy.name() + "' needs an observable");
        switch (policy.kind) {
        case VolPolicy::Kind::constant:
            if (policy.sigma < lo_ - 1e-12 || policy.sigma > hi_ + 1e-12)
                throw InputError("constant policy volatility outside [sigma_lo, sigma_hi]");
            break;
        case VolPolicy::Kind::random_switching: {
            if (!(policy.rate >= 0.0)) throw InputError("switching rate must be nonnegative");
            switching_.emplace(make_stream(policy.seed, seed));
            flip_prob_ = 1.0 - std::exp(-policy.rate * dt);
            high_ = std::uniform_real_distribution<double>(0.0, 1.0)(*switching_) < 0.5;
            break;
        }
        case VolPolicy::Kind::greedy_bang_bang:
            curvature_.emplace(second_diff(*observable, Exec::serial));
            break;
        case VolPolicy::Kind::threshold_feedback:
            break;
        }
    }

    double advance(double x) {
        const double sigma = volatility(x);
        return wrap_angle(x + sigma * sqrt_dt_ * gauss_(noise_));
    }

private:
    double volatility(double x) {
        switch (policy_.kind) {
        case VolPolicy::Kind::constant: return policy_.sigma;
        case VolPolicy::Kind::random_switching: {
            const double s = high_ ? hi_ : lo_;
            if (std::uniform_real_distribution<double>(0.0, 1.0)(*switching_) < flip_prob_) high_ = !high_;
            return s;
        }
        case VolPolicy::Kind::threshold_feedback:
            return observable_->interpolate(x) > policy_.level ? hi_ : lo_;
        case VolPolicy::Kind::greedy_bang_bang:
            return curvature_->interpolate(x) > 0.0 ? hi_ : lo_;
        }
        return lo_;
    }

    VolPolicy policy_;
    double lo_, hi_, sqrt_dt_;
    std::mt19937_64 noise_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
    const GridFn* observable_;
    std::optional<std::mt19937_64> switching_;
    std::optional<GridFn> curvature_;
    double flip_prob_ = 0.0;
    bool high_ = false;
};

std::size_t step_count(double horizon, double dt) {
    if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InputError("path horizon must be >= 0");
    if (!(dt > 0.0)) throw InputError("path simulation needs dt > 0");
    return static_cast<std::size_t>(std::llround(horizon / dt));
}

}  // namespace

PathSample simulate_path(const VolPolicy& policy, const GHeatParams& p, double x0, double horizon,
                         double dt, std::uint64_t seed, const GridFn* observable) {
    const std::size_t steps = step_count(horizon, dt);
    Walker walker(policy, p, dt, seed, observable);
    PathSample path;
    path.dt = dt;
    path.seed = seed;
    path.positions.reserve(steps + 1);
    double x = wrap_angle(x0);
    path.positions.push_back(x);
    for (std::size_t k = 0; k < steps; ++k) {
        x = walker.advance(x);
        path.positions.push_back(x);
    }
    return path;
}

void write_path_csv(std::ostream& os, const PathSample& path) {
    const auto old = os.precision(17);
    os << "t,x\n";
    for (std::size_t k = 0; k < path.positions.size(); ++k)
        os << static_cast<double>(k) * path.dt << ',' << path.positions[k] << '\n';
    os.precision(old);
}

double time_average(const PathSample& path, const GridFn& phi) {
    if (path.positions.empty()) throw InputError("time average of an empty path");
    if (path.positions.size() == 1) return phi.interpolate(path.positions.front());
    const std::size_t k = path.positions.size() - 1;
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += phi.interpolate(path.positions[i]);
    return s / static_cast<double>(k);
}

double streaming_time_average(const VolPolicy& policy, const GHeatParams& p, const GridFn& phi,
                              double x0, double horizon, double dt, std::uint64_t seed) {
    const std::size_t steps = step_count(horizon, dt);
    Walker walker(policy, p, dt, seed, &phi);
    double x = wrap_angle(x0);
    if (steps == 0) return phi.interpolate(x);
    double s = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        s += phi.interpolate(x);
        x = walker.advance(x);
    }
    return s / static_cast<double>(steps);
}

SllnExperimentReport slln_experiment(const GridFn& phi, const std::vector<VolPolicy>& policies,
                                     const GHeatParams& p, double horizon, double dt,
                                     const std::vector<std::uint64_t>& seeds, double tolerance,
                                     Exec exec) {
    SllnExperimentReport r;
    r.target = mean(phi);
    r.horizon = horizon;
    r.dt = dt;
    r.tolerance = tolerance;
    r.entries.resize(policies.size() * seeds.size());

    const auto count = static_cast<long>(r.entries.size());
    auto body = [&](long idx) {
        const auto& pol = policies[static_cast<std::size_t>(idx) / seeds.size()];
        const auto seed = seeds[static_cast<std::size_t>(idx) % seeds.size()];
        auto& e = r.entries[idx];
        e.policy = pol.name();
        e.seed = seed;
        e.average = streaming_time_average(pol, p, phi, 0.0, horizon, dt, seed);
        e.deviation = std::abs(e.average - r.target);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i) body(i);
    } else {
        for (long i = 0; i < count; ++i) body(i);
    }
    for (const auto& e : r.entries) r.max_deviation = std::max(r.max_deviation, e.deviation);
    r.passed = r.max_deviation <= tolerance;
    return r;
}

DPLattice::DPLattice(const CircleGrid& grid, const GHeatParams& p, double t, std::size_t steps)
    : grid_(grid), steps_(steps) {
    p.validate();
    if (steps < 1) throw InputError("dynamic programming needs at least one step");
    if (!(t > 0.0)) throw InputError("dynamic programming needs t > 0");
    const double tau = t / static_cast<double>(steps);
    auto normalised = [&](double sigma2) {
        auto row = kernel_row({sigma2, tau, 1e-15}, grid);
        double mass = 0.0;
        for (double v : row) mass += v;
        for (double& v : row) v /= mass;
        return row;
    };
    low_ = normalised(p.sigma_lo2);
    high_ = normalised(p.sigma_hi2);
}

void DPLattice::backward(std::span<const double> next, std::span<double> out, Exec exec) const {
    const std::size_t m = grid_.size();
    auto body = [&](std::size_t i) {
        double lo = 0.0, hi = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t d = i >= j ? i - j : i + m - j;
            lo += low_[d] * next[j];
            hi += high_[d] * next[j];
        }
        out[i] = std::max(lo, hi);
    };
    const auto count = static_cast<long>(m);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    } else {
        for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    }
}

GridFn dp_upper_expectation(const GridFn& phi, double t, const GHeatParams& p, std::size_t steps,
                            Exec exec) {
    if (t == 0.0) return phi;
    const DPLattice lattice(phi.grid(), p, t, steps);
    GridFn cur = phi;
    GridFn prev(phi.grid(), 0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        lattice.backward(cur.values(), prev.values(), exec);
        std::swap(cur, prev);
    }
    return cur;
}

CapacityEstimate capacity_estimate(const std::function<bool(const PathSample&)>& event,
                                   const std::vector<VolPolicy>& policies, const GHeatParams& p,
                                   double x0, double horizon, double dt,
                                   const std::vector<std::uint64_t>& seeds, const GridFn* observable) {
    if (policies.empty() || seeds.empty()) throw InputError("capacity estimate needs policies and seeds");
    CapacityEstimate out;
    for (const auto& pol : policies) {
        std::size_t hits = 0;
        for (auto seed : seeds)
            if (event(simulate_path(pol, p, x0, horizon, dt, seed, observable))) ++hits;
        out.per_policy.push_back(static_cast<double>(hits) / static_cast<double>(seeds.size()));
    }
    out.upper = *std::max_element(out.per_policy.begin(), out.per_policy.end());
    out.lower = *std::min_element(out.per_policy.begin(), out.per_policy.end());
    return out;
}

}  // namespace subergo

#pragma once

// Hand-rolled generators shared by the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "subergo/ergodic.hpp"
#include "subergo/sublinear.hpp"

namespace subergo::testing {

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

// Random point of the simplex, optionally with some coordinates zeroed.
inline ProbVector random_prob(std::mt19937_64& rng, std::size_t n, bool sparse = false) {
    std::exponential_distribution<double> e(1.0);
    std::bernoulli_distribution drop(0.4);
    std::vector<double> w(n);
    double s = 0.0;
    for (auto& x : w) {
        x = (sparse && drop(rng)) ? 0.0 : e(rng);
        s += x;
    }
    if (s == 0.0) {
        w[0] = 1.0;
        s = 1.0;
    }
    for (auto& x : w) x /= s;
    // Push the rounding residue into the largest weight.
    double t = 0.0;
    std::size_t big = 0;
    for (std::size_t i = 0; i < n; ++i) {
        t += w[i];
        if (w[i] > w[big]) big = i;
    }
    w[big] += 1.0 - t;
    return ProbVector(std::move(w));
}

inline PriorSet random_priors(std::mt19937_64& rng, std::size_t n, std::size_t count, bool sparse = false) {
    std::vector<ProbVector> ps;
    for (std::size_t k = 0; k < count; ++k) ps.push_back(random_prob(rng, n, sparse));
    return PriorSet(std::move(ps));
}

inline FiniteMap random_map(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> d(0, n - 1);
    std::vector<std::size_t> img(n);
    for (auto& x : img) x = d(rng);
    return FiniteMap(std::move(img));
}

inline ProbVector uniform(std::size_t n) { return ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n))); }

// Brute-force sup over priors, written independently of the library.
inline double brute_upper(const PriorSet& ps, const std::vector<double>& x) {
    double best = -1e300;
    for (const auto& p : ps.priors()) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += p[i] * x[i];
        best = std::max(best, s);
    }
    return best;
}

// An expectation-preserving prior set for theta: the periodic pushforward
// orbit of a random measure, iterated far enough to sit on the cycle.
inline PriorSet preserving_priors(std::mt19937_64& rng, const FiniteMap& theta, bool sparse) {
    const std::size_t n = theta.size();
    ProbVector p = random_prob(rng, n, sparse);
    for (std::size_t k = 0; k < n; ++k) p = pushforward(theta, p);
    std::vector<ProbVector> orbit{p};
    for (;;) {
        p = pushforward(theta, p);
        bool seen = false;
        for (const auto& q : orbit) {
            bool eq = true;
            for (std::size_t i = 0; i < n; ++i) eq = eq && std::abs(p[i] - q[i]) <= 1e-15;
            seen = seen || eq;
        }
        if (seen) break;
        orbit.push_back(p);
    }
    return PriorSet(std::move(orbit));
}

}  // namespace subergo::testing

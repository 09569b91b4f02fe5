#pragma once

// Exhaustive sweeps over all self-maps of a small space crossed with a fixed
// catalog of prior sets.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "subergo/ergodic.hpp"
#include "subergo/exec.hpp"

namespace subergo {

struct CatalogEntry {
    std::string name;
    PriorSet priors;
};

// Base measures are the vertices, the uniform measure and the two-point
// mixtures (a, 1-a, 0, ...) for a in {1/4, 1/2, 3/4}. The catalog holds each
// base measure alone, all vertices, all mixtures, and for every base measure
// the periodic tail of its pushforward orbit under theta (an
// expectation-preserving family by construction).
std::vector<CatalogEntry> prior_catalog(const FiniteMap& theta);

// All n^n maps in lexicographic order of their image vectors.
std::vector<FiniteMap> all_maps(std::size_t n);

inline constexpr std::size_t kMaxExhaustiveSweep = 4;

struct SweepConfig {
    std::size_t n = 3;
    std::size_t rv_per_system = 50;
    std::size_t max_k = 8;
    std::uint64_t seed = 20240601;
};

struct SystemRecord {
    std::size_t serial = 0;
    std::vector<std::size_t> theta;
    std::string catalog_name;
    bool preserving = false;
    bool ergodic = false;
    bool equivalence_evaluated = false;  // n <= kMaxEquivalenceEnumeration
    EquivalenceReport equivalence;
    FixedSpaceReport fixed_space;
    std::size_t slln_checks = 0;
    std::size_t slln_violations = 0;
    double max_ergodic_min = 0.0;  // smallest maximal-ergodic value over X and k
    std::vector<std::string> counterexamples;
};

struct SweepSummary {
    SweepConfig config;
    std::size_t systems = 0;
    std::size_t preserving = 0;
    std::size_t ergodic = 0;
    std::size_t slln_checks = 0;
    std::size_t counterexamples = 0;
    double max_ergodic_min = 0.0;
    std::vector<SystemRecord> records;  // ordered by serial number
    bool ok() const { return counterexamples == 0; }
};

// Audits one system: the four characterisations, the fixed-space verdict,
// SLLN checks on `rv_per_system` random X plus as many theta-fixed X, and the
// maximal ergodic lemma for every k <= max_k.
SystemRecord audit_system(const FiniteSystem& sys, const SweepConfig& cfg, std::uint64_t stream);

// Throws InputError when n exceeds kMaxExhaustiveSweep.
SweepSummary exhaustive_sweep(const SweepConfig& cfg, Exec exec = Exec::parallel);

struct MaximalTrialSummary {
    std::size_t trials = 0;
    double min_value = 0.0;
    std::size_t violations = 0;  // value < -1e-12
};

// Random (system, xi, k) draws from the expectation-preserving systems of the
// sweeps for n = 1..max_n.
MaximalTrialSummary maximal_ergodic_trials(std::size_t trials, std::size_t max_n, std::size_t max_k,
                                           std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace subergo

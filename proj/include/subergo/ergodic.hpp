#pragma once

// Finite-state dynamical systems on a sublinear expectation space:
// expectation preservation, invariant sets, ergodicity, the fixed space of
// the transformation operator, exact Birkhoff limits and the maximal
// ergodic lemma.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "subergo/sublinear.hpp"

namespace subergo {

class FiniteMap {
public:
    explicit FiniteMap(std::vector<std::size_t> image);

    static FiniteMap identity(std::size_t n);

    std::size_t size() const { return image_.size(); }
    std::size_t operator()(std::size_t i) const { return image_[i]; }
    const std::vector<std::size_t>& image() const { return image_; }

    // theta^{-1} B
    EventSet preimage(const EventSet& b) const;
    // X o theta
    Rv compose(std::span<const double> x) const;

private:
    std::vector<std::size_t> image_;
};

ProbVector pushforward(const FiniteMap& theta, const ProbVector& p);

class FiniteSystem {
public:
    // Validates dimensions and decides expectation preservation once.
    FiniteSystem(PriorSet priors, FiniteMap theta);

    std::size_t size() const { return theta_.size(); }
    const PriorSet& priors() const { return priors_; }
    const FiniteMap& theta() const { return theta_; }
    bool preserving() const { return preserving_; }

private:
    PriorSet priors_;
    FiniteMap theta_;
    bool preserving_;
};

// sup_P E_P[X o theta] == sup_P E_P[X] for every X, decided as
// conv(theta_* P) == conv(P).
bool is_expectation_preserving(const FiniteSystem& sys);
bool is_expectation_preserving(const PriorSet& priors, const FiniteMap& theta);

struct GrandOrbitPartition {
    std::vector<std::size_t> class_of;
    std::vector<EventSet> classes;
};

// Connected components of the undirected graph {i -- theta(i)}, labelled in
// order of their smallest member.
GrandOrbitPartition grand_orbits(const FiniteMap& theta);

inline constexpr std::size_t kMaxInvariantEnumeration = 24;

// All B with theta^{-1} B = B (unions of grand-orbit classes), ordered by
// class-union bitmask. Requires n <= 24.
std::vector<EventSet> invariant_sets(const FiniteSystem& sys);

// Every invariant B has V(B) = 0 or V(B^c) = 0. Throws ContractError when
// the system is not expectation preserving.
bool is_ergodic(const FiniteSystem& sys);

struct FixedSpaceReport {
    std::size_t dimension = 0;     // dim{f : f o theta = f}, by elimination
    std::size_t class_count = 0;   // number of grand-orbit classes
    bool simple = false;           // every fixed f is constant quasi-surely
    bool ergodic = false;
    bool consistent() const { return dimension == class_count && simple == ergodic; }
};

// The fixed space is computed as the null space of (U - I), U the
// composition operator; simplicity is decided from that basis and the
// non-polar support, independently of the invariant-set enumeration.
FixedSpaceReport fixed_space_audit(const FiniteSystem& sys);

struct OrbitInfo {
    std::size_t preperiod = 0;          // steps until the cycle is entered
    std::vector<std::size_t> cycle;     // starts at theta^preperiod(omega)
};

class OrbitDecomposition {
public:
    explicit OrbitDecomposition(const FiniteMap& theta);

    const OrbitInfo& at(std::size_t omega) const { return info_[omega]; }
    std::size_t max_preperiod() const { return max_preperiod_; }
    // lcm of all cycle lengths
    std::uint64_t cycle_lcm() const { return cycle_lcm_; }
    double cycle_mean(std::size_t omega, std::span<const double> x) const;

private:
    std::vector<OrbitInfo> info_;
    std::size_t max_preperiod_ = 0;
    std::uint64_t cycle_lcm_ = 1;
};

struct BirkhoffLimit {
    double liminf;
    double limsup;
};

// Exact: every orbit of a finite map is preperiodic, so both limits equal the
// mean of X over the cycle that omega enters.
BirkhoffLimit birkhoff_limit(const FiniteSystem& sys, std::span<const double> x, std::size_t omega);

struct SllnReport {
    double lower = 0.0;                 // -E[-X]
    double upper = 0.0;                 // E[X]
    bool ergodic = false;
    EventSet bad;                       // cycle mean outside [lower, upper]
    double bad_capacity = 0.0;
    bool theta_fixed = false;           // X o theta = X quasi-surely
    EventSet fixed_mismatch;            // cycle mean != E[X], when theta_fixed
    double fixed_mismatch_capacity = 0.0;
    bool ok = true;                     // no violation of the SLLN on ergodic systems
};

SllnReport slln_audit(const FiniteSystem& sys, std::span<const double> x);

// E[xi * 1{M_k > 0}] with S_j the ergodic sums of xi and M_k = max_{0<=j<=k} S_j.
double maximal_ergodic_check(const FiniteSystem& sys, std::span<const double> xi, std::size_t k);

inline constexpr std::size_t kMaxEquivalenceEnumeration = 10;

struct EquivalenceReport {
    bool ergodic = false;              // (i)
    bool almost_invariant = false;     // (ii)  V(theta^{-1}B xor B) = 0 => B or B^c polar
    bool sweeping = false;             // (iii) V(A) > 0 => complement of the union of preimages polar
    bool recurrent = false;            // (iv)  V(A), V(B) > 0 => some V(theta^{-n}A & B) > 0
    bool consistent() const {
        return ergodic == almost_invariant && ergodic == sweeping && ergodic == recurrent;
    }
};

// Evaluates the four equivalent characterisations of ergodicity exactly by
// enumerating events. Requires n <= 10.
EquivalenceReport equivalence_audit(const FiniteSystem& sys);

}  // namespace subergo

#pragma once

// Exact sublinear expectation calculus on a finite sample space.
//
// A sublinear expectation over {0, ..., n-1} is represented by a finite
// family of probability vectors; the upper expectation of X is the largest
// linear expectation of X over the family.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace subergo {

inline constexpr double kSimplexTol = 1e-12;   // simplex / capacity comparisons
inline constexpr double kIdentityTol = 1e-10;  // derived identities

class ProbVector {
public:
    // Throws InputError unless all weights are >= 0 and sum to 1 within kSimplexTol.
    explicit ProbVector(std::vector<double> weights);

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    std::span<const double> weights() const { return w_; }

    bool operator==(const ProbVector&) const = default;

private:
    std::vector<double> w_;
};

class PriorSet {
public:
    // Nonempty, all priors of equal length.
    explicit PriorSet(std::vector<ProbVector> priors);

    std::size_t dim() const { return priors_.front().size(); }
    std::size_t count() const { return priors_.size(); }
    const ProbVector& operator[](std::size_t i) const { return priors_[i]; }
    const std::vector<ProbVector>& priors() const { return priors_; }

private:
    std::vector<ProbVector> priors_;
};

// A random variable on the finite space: one payoff per sample point.
using Rv = std::vector<double>;

// Subset of {0, ..., n-1}, n <= 64, as a bitmask.
class EventSet {
public:
    static constexpr std::size_t kMaxPoints = 64;

    EventSet() = default;
    EventSet(std::uint64_t mask, std::size_t n);

    static EventSet empty(std::size_t n) { return EventSet(0, n); }
    static EventSet full(std::size_t n);
    static EventSet of(std::initializer_list<std::size_t> members, std::size_t n);

    std::size_t universe() const { return n_; }
    std::uint64_t mask() const { return mask_; }
    bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
    bool is_empty() const { return mask_ == 0; }
    std::size_t size() const;

    EventSet complement() const;
    EventSet operator|(const EventSet& o) const { return {mask_ | o.mask_, n_}; }
    EventSet operator&(const EventSet& o) const { return {mask_ & o.mask_, n_}; }
    EventSet operator^(const EventSet& o) const { return {mask_ ^ o.mask_, n_}; }

    Rv indicator() const;
    std::vector<std::size_t> members() const;

    bool operator==(const EventSet&) const = default;

private:
    std::uint64_t mask_ = 0;
    std::size_t n_ = 0;
};

struct Capacity {
    double upper;  // V(A) = sup_P P(A)
    double lower;  // v(A) = inf_P P(A)
};

double upper_exp(const PriorSet& priors, std::span<const double> x);
// Computed as -upper_exp(-X).
double lower_exp(const PriorSet& priors, std::span<const double> x);

Capacity capacity(const PriorSet& priors, const EventSet& a);
bool is_polar(const PriorSet& priors, const EventSet& a);

// Points carrying positive weight under some prior. Its complement is the
// largest polar set.
EventSet support(const PriorSet& priors);

bool has_no_mean_uncertainty(const PriorSet& priors, std::span<const double> x);

struct AuditReport {
    std::size_t checks = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Random (X, Y, lambda, c) tuples checked against monotonicity, constant
// preservation, sub-additivity and positive homogeneity.
AuditReport axiom_audit(const PriorSet& priors, std::size_t trials, std::uint64_t seed);

// Random pairs without mean uncertainty; their real linear combinations must
// stay without mean uncertainty.
AuditReport mean_uncertainty_space_audit(const PriorSet& priors, std::size_t trials,
                                         std::uint64_t seed);

// Random X with equal expectation under every prior.
Rv sample_no_mean_uncertainty(const PriorSet& priors, std::uint64_t seed);

}  // namespace subergo

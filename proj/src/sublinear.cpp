#include "subergo/sublinear.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "subergo/error.hpp"

namespace subergo {

ProbVector::ProbVector(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw InputError("probability vector is empty");
    double sum = 0.0;
    for (double w : w_) {
        if (!std::isfinite(w) || w < 0.0) throw InputError("probability weight is negative or not finite");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSimplexTol) {
        std::ostringstream os;
        os << "probability weights sum to " << sum << ", expected 1";
        throw InputError(os.str());
    }
}

PriorSet::PriorSet(std::vector<ProbVector> priors) : priors_(std::move(priors)) {
    if (priors_.empty()) throw InputError("prior set is empty");
    for (const auto& p : priors_)
        if (p.size() != priors_.front().size()) throw InputError("priors have different lengths");
}

EventSet::EventSet(std::uint64_t mask, std::size_t n) : mask_(mask), n_(n) {
    if (n > kMaxPoints) throw InputError("event sets support at most 64 points");
    if (n < kMaxPoints && (mask >> n) != 0) throw InputError("event set has members outside the space");
}

EventSet EventSet::full(std::size_t n) {
    return {n == kMaxPoints ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1, n};
}

EventSet EventSet::of(std::initializer_list<std::size_t> members, std::size_t n) {
    std::uint64_t m = 0;
    for (auto i : members) {
        if (i >= n) throw InputError("event member outside the space");
        m |= std::uint64_t{1} << i;
    }
    return {m, n};
}

std::size_t EventSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

EventSet EventSet::complement() const { return {~mask_ & full(n_).mask_, n_}; }

Rv EventSet::indicator() const {
    Rv v(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
        if (contains(i)) v[i] = 1.0;
    return v;
}

std::vector<std::size_t> EventSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

namespace {

void check_dim(const PriorSet& priors, std::size_t n) {
    if (priors.dim() != n) throw InputError("random variable length does not match the prior dimension");
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rv negate(std::span<const double> x) {
    Rv out(x.begin(), x.end());
    for (auto& v : out) v = -v;
    return out;
}

}  // namespace

double upper_exp(const PriorSet& priors, std::span<const double> x) {
    check_dim(priors, x.size());
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : priors.priors()) best = std::max(best, dot(p.weights(), x));
    return best;
}

double lower_exp(const PriorSet& priors, std::span<const double> x) {
    return -upper_exp(priors, negate(x));
}

Capacity capacity(const PriorSet& priors, const EventSet& a) {
    check_dim(priors, a.universe());
    const Rv ind = a.indicator();
    return {upper_exp(priors, ind), lower_exp(priors, ind)};
}

bool is_polar(const PriorSet& priors, const EventSet& a) {
    return capacity(priors, a).upper <= kSimplexTol;
}

EventSet support(const PriorSet& priors) {
    const std::size_t n = priors.dim();
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& p : priors.priors())
            if (p[i] > kSimplexTol) m |= std::uint64_t{1} << i;
    return {m, n};
}

bool has_no_mean_uncertainty(const PriorSet& priors, std::span<const double> x) {
    return std::abs(upper_exp(priors, x) + upper_exp(priors, negate(x))) <= kIdentityTol;
}

AuditReport axiom_audit(const PriorSet& priors, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw InputError("axiom audit needs at least one trial");
    const std::size_t n = priors.dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> scale(0.0, 2.0);

    AuditReport report;
    auto flag = [&](std::size_t trial, const char* axiom, double lhs, double rhs) {
        std::ostringstream os;
        os.precision(17);
        os << "trial " << trial << ": " << axiom << " violated (" << lhs << " vs " << rhs << ")";
        report.violations.push_back(os.str());
    };

    Rv x(n), y(n), dominating(n), shifted(n), sum(n), scaled(n), constant(n);
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = unit(rng);
            y[i] = unit(rng);
        }
        const double lambda = scale(rng);
        const double c = unit(rng);
        for (std::size_t i = 0; i < n; ++i) {
            dominating[i] = x[i] + std::abs(y[i]);
            sum[i] = x[i] + y[i];
            scaled[i] = lambda * x[i];
            constant[i] = c;
        }
        const double ex = upper_exp(priors, x);
        const double ey = upper_exp(priors, y);

        const double e_dom = upper_exp(priors, dominating);
        if (ex > e_dom + kIdentityTol) flag(t, "monotonicity", ex, e_dom);

        const double ec = upper_exp(priors, constant);
        if (std::abs(ec - c) > kIdentityTol) flag(t, "constant preserving", ec, c);

        const double es = upper_exp(priors, sum);
        if (es > ex + ey + kIdentityTol) flag(t, "sub-additivity", es, ex + ey);

        const double el = upper_exp(priors, scaled);
        if (std::abs(el - lambda * ex) > kIdentityTol) flag(t, "positive homogeneity", el, lambda * ex);

        report.checks += 4;
    }
    return report;
}

Rv sample_no_mean_uncertainty(const PriorSet& priors, std::uint64_t seed) {
    const std::size_t n = priors.dim();
    // Orthonormal basis of span{p_k - p_0}; X must be orthogonal to it.
    std::vector<Rv> basis;
    for (std::size_t k = 1; k < priors.count(); ++k) {
        Rv d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = priors[k][i] - priors[0][i];
        for (const auto& b : basis) {
            const double c = dot(d, b);
            for (std::size_t i = 0; i < n; ++i) d[i] -= c * b[i];
        }
        const double norm = std::sqrt(dot(d, d));
        if (norm <= 1e-9) continue;
        for (auto& v : d) v /= norm;
        basis.push_back(std::move(d));
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Rv x(n);
    for (auto& v : x) v = unit(rng);
    // Two passes of projection keep the residual at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
            const double c = dot(x, b);
            for (std::size_t i = 0; i < n; ++i) x[i] -= c * b[i];
        }
    }
    return x;
}

AuditReport mean_uncertainty_space_audit(const PriorSet& priors, std::size_t trials,
                                         std::uint64_t seed) {
    if (trials < 1) throw InputError("mean-uncertainty audit needs at least one trial");
    const std::size_t n = priors.dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);

    AuditReport report;
    Rv combo(n);
    for (std::size_t t = 0; t < trials; ++t) {
        const Rv x1 = sample_no_mean_uncertainty(priors, rng());
        const Rv x2 = sample_no_mean_uncertainty(priors, rng());
        if (!has_no_mean_uncertainty(priors, x1) || !has_no_mean_uncertainty(priors, x2)) {
            report.violations.push_back("trial " + std::to_string(t) + ": generator produced mean uncertainty");
            continue;
        }
        const double l1 = coeff(rng);
        const double l2 = coeff(rng);
        for (std::size_t i = 0; i < n; ++i) combo[i] = l1 * x1[i] + l2 * x2[i];
        if (!has_no_mean_uncertainty(priors, combo))
            report.violations.push_back("trial " + std::to_string(t) + ": linear combination has mean uncertainty");
        ++report.checks;
    }
    return report;
}

}  // namespace subergo

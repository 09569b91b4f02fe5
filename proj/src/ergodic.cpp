#include "subergo/ergodic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "subergo/error.hpp"
#include "subergo/hull.hpp"

namespace subergo {

FiniteMap::FiniteMap(std::vector<std::size_t> image) : image_(std::move(image)) {
    if (image_.empty()) throw InputError("map on an empty space");
    if (image_.size() > EventSet::kMaxPoints) throw InputError("finite systems support at most 64 points");
    for (auto j : image_)
        if (j >= image_.size()) throw InputError("map image outside the space");
}

FiniteMap FiniteMap::identity(std::size_t n) {
    std::vector<std::size_t> img(n);
    std::iota(img.begin(), img.end(), std::size_t{0});
    return FiniteMap(std::move(img));
}

EventSet FiniteMap::preimage(const EventSet& b) const {
    if (b.universe() != size()) throw InputError("event dimension does not match the map");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < size(); ++i)
        if (b.contains(image_[i])) m |= std::uint64_t{1} << i;
    return {m, size()};
}

Rv FiniteMap::compose(std::span<const double> x) const {
    if (x.size() != size()) throw InputError("random variable length does not match the map");
    Rv out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = x[image_[i]];
    return out;
}

ProbVector pushforward(const FiniteMap& theta, const ProbVector& p) {
    if (p.size() != theta.size()) throw InputError("pushforward: dimension mismatch");
    std::vector<double> out(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) out[theta(i)] += p[i];
    return ProbVector(std::move(out));
}

bool is_expectation_preserving(const PriorSet& priors, const FiniteMap& theta) {
    std::vector<ProbVector> pushed;
    pushed.reserve(priors.count());
    for (const auto& p : priors.priors()) pushed.push_back(pushforward(theta, p));
    return same_convex_hull(priors.priors(), pushed);
}

FiniteSystem::FiniteSystem(PriorSet priors, FiniteMap theta)
    : priors_(std::move(priors)), theta_(std::move(theta)) {
    if (priors_.dim() != theta_.size()) throw InputError("prior dimension does not match the map");
    preserving_ = is_expectation_preserving(priors_, theta_);
}

bool is_expectation_preserving(const FiniteSystem& sys) { return sys.preserving(); }

GrandOrbitPartition grand_orbits(const FiniteMap& theta) {
    const std::size_t n = theta.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = find(i), b = find(theta(i));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    GrandOrbitPartition out;
    out.class_of.assign(n, 0);
    std::vector<std::size_t> label(n, n);
    std::vector<std::uint64_t> masks;
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = find(i);
        if (label[r] == n) {
            label[r] = masks.size();
            masks.push_back(0);
        }
        out.class_of[i] = label[r];
        masks[label[r]] |= std::uint64_t{1} << i;
    }
    for (auto m : masks) out.classes.emplace_back(m, n);
    return out;
}

namespace {

std::vector<EventSet> class_unions(const GrandOrbitPartition& part, std::size_t n) {
    const std::size_t k = part.classes.size();
    std::vector<EventSet> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << k); ++sel) {
        std::uint64_t m = 0;
        for (std::size_t c = 0; c < k; ++c)
            if ((sel >> c) & 1U) m |= part.classes[c].mask();
        out.emplace_back(m, n);
    }
    return out;
}

void require_preserving(const FiniteSystem& sys, const char* what) {
    if (!sys.preserving())
        throw ContractError(std::string(what) + " requires an expectation-preserving map");
}

}  // namespace

std::vector<EventSet> invariant_sets(const FiniteSystem& sys) {
    if (sys.size() > kMaxInvariantEnumeration)
        throw InputError("invariant set enumeration is limited to 24 points");
    return class_unions(grand_orbits(sys.theta()), sys.size());
}

bool is_ergodic(const FiniteSystem& sys) {
    require_preserving(sys, "ergodicity");
    const auto part = grand_orbits(sys.theta());
    if (part.classes.size() > kMaxInvariantEnumeration)
        throw InputError("ergodicity check is limited to 24 grand-orbit classes");
    for (const auto& b : class_unions(part, sys.size())) {
        if (!is_polar(sys.priors(), b) && !is_polar(sys.priors(), b.complement())) return false;
    }
    return true;
}

FixedSpaceReport fixed_space_audit(const FiniteSystem& sys) {
    require_preserving(sys, "fixed-space audit");
    const std::size_t n = sys.size();
    constexpr double kPivotTol = 1e-9;

    // Row-reduce (U - I), (U f)(w) = f(theta w).
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t w = 0; w < n; ++w) {
        a[w][sys.theta()(w)] += 1.0;
        a[w][w] -= 1.0;
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t best = row;
        for (std::size_t r = row + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
        if (std::abs(a[best][col]) <= kPivotTol) continue;
        std::swap(a[row], a[best]);
        const double piv = a[row][col];
        for (auto& v : a[row]) v /= piv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || a[r][col] == 0.0) continue;
            const double f = a[r][col];
            for (std::size_t c = 0; c < n; ++c) a[r][c] -= f * a[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    const EventSet supp = support(sys.priors());
    FixedSpaceReport report;
    report.simple = true;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        ++report.dimension;
        std::vector<double> v(n, 0.0);
        v[free] = 1.0;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][free];

        // Constant quasi-surely means constant on the non-polar support.
        bool first = true;
        double ref = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!supp.contains(i)) continue;
            if (first) {
                ref = v[i];
                first = false;
            } else if (std::abs(v[i] - ref) > kPivotTol) {
                report.simple = false;
            }
        }
    }
    report.class_count = grand_orbits(sys.theta()).classes.size();
    report.ergodic = is_ergodic(sys);
    return report;
}

OrbitDecomposition::OrbitDecomposition(const FiniteMap& theta) : info_(theta.size()) {
    const std::size_t n = theta.size();
    std::vector<std::size_t> seen_at(n);
    for (std::size_t w = 0; w < n; ++w) {
        std::fill(seen_at.begin(), seen_at.end(), n + 1);
        std::size_t cur = w;
        std::size_t step = 0;
        while (seen_at[cur] == n + 1) {
            seen_at[cur] = step++;
            cur = theta(cur);
        }
        auto& info = info_[w];
        info.preperiod = seen_at[cur];
        const std::size_t start = cur;
        do {
            info.cycle.push_back(cur);
            cur = theta(cur);
        } while (cur != start);
        max_preperiod_ = std::max(max_preperiod_, info.preperiod);
        cycle_lcm_ = std::lcm(cycle_lcm_, static_cast<std::uint64_t>(info.cycle.size()));
    }
}

double OrbitDecomposition::cycle_mean(std::size_t omega, std::span<const double> x) const {
    const auto& cyc = info_.at(omega).cycle;
    double s = 0.0;
    for (auto i : cyc) s += x[i];
    return s / static_cast<double>(cyc.size());
}

BirkhoffLimit birkhoff_limit(const FiniteSystem& sys, std::span<const double> x, std::size_t omega) {
    if (x.size() != sys.size()) throw InputError("random variable length does not match the system");
    if (omega >= sys.size()) throw InputError("sample point outside the space");
    const double m = OrbitDecomposition(sys.theta()).cycle_mean(omega, x);
    return {m, m};
}

SllnReport slln_audit(const FiniteSystem& sys, std::span<const double> x) {
    require_preserving(sys, "SLLN audit");
    const std::size_t n = sys.size();
    if (x.size() != n) throw InputError("random variable length does not match the system");
    const auto& priors = sys.priors();
    const OrbitDecomposition orbits(sys.theta());

    SllnReport r;
    r.upper = upper_exp(priors, x);
    r.lower = lower_exp(priors, x);
    r.ergodic = is_ergodic(sys);

    std::uint64_t bad = 0, moved = 0, mismatch = 0;
    for (std::size_t w = 0; w < n; ++w) {
        const double m = orbits.cycle_mean(w, x);
        if (m < r.lower - kIdentityTol || m > r.upper + kIdentityTol) bad |= std::uint64_t{1} << w;
        if (std::abs(x[sys.theta()(w)] - x[w]) > kSimplexTol) moved |= std::uint64_t{1} << w;
        if (std::abs(m - r.upper) > kIdentityTol) mismatch |= std::uint64_t{1} << w;
    }
    r.bad = EventSet(bad, n);
    r.bad_capacity = capacity(priors, r.bad).upper;
    r.theta_fixed = is_polar(priors, EventSet(moved, n));
    if (r.theta_fixed) {
        r.fixed_mismatch = EventSet(mismatch, n);
        r.fixed_mismatch_capacity = capacity(priors, r.fixed_mismatch).upper;
    } else {
        r.fixed_mismatch = EventSet::empty(n);
    }
    if (r.ergodic) {
        r.ok = r.bad_capacity <= kSimplexTol && (!r.theta_fixed || r.fixed_mismatch_capacity <= kSimplexTol);
    }
    return r;
}

double maximal_ergodic_check(const FiniteSystem& sys, std::span<const double> xi, std::size_t k) {
    require_preserving(sys, "maximal ergodic check");
    if (k < 1) throw InputError("maximal ergodic check needs k >= 1");
    const std::size_t n = sys.size();
    if (xi.size() != n) throw InputError("random variable length does not match the system");

    Rv integrand(n, 0.0);
    for (std::size_t w = 0; w < n; ++w) {
        double s = 0.0, best = 0.0;  // S_0 = 0
        std::size_t cur = w;
        for (std::size_t j = 1; j <= k; ++j) {
            s += xi[cur];
            best = std::max(best, s);
            cur = sys.theta()(cur);
        }
        if (best > 0.0) integrand[w] = xi[w];
    }
    return upper_exp(sys.priors(), integrand);
}

EquivalenceReport equivalence_audit(const FiniteSystem& sys) {
    require_preserving(sys, "equivalence audit");
    const std::size_t n = sys.size();
    if (n > kMaxEquivalenceEnumeration) throw InputError("equivalence audit is limited to 10 points");
    const std::uint64_t count = std::uint64_t{1} << n;
    const std::uint64_t full = count - 1;

    // Upper capacity and preimage of every event.
    std::vector<double> cap(count, 0.0);
    {
        std::vector<double> mass(count);
        for (const auto& p : sys.priors().priors()) {
            mass[0] = 0.0;
            for (std::uint64_t m = 1; m < count; ++m) {
                const auto low = static_cast<std::size_t>(std::countr_zero(m));
                mass[m] = mass[m & (m - 1)] + p[low];
                cap[m] = std::max(cap[m], mass[m]);
            }
        }
    }
    std::vector<std::uint64_t> pre(count);
    for (std::uint64_t m = 0; m < count; ++m) pre[m] = sys.theta().preimage(EventSet(m, n)).mask();
    auto positive = [&](std::uint64_t m) { return cap[m] > kSimplexTol; };
    auto trivial = [&](std::uint64_t b) { return !positive(b) || !positive(full & ~b); };

    EquivalenceReport r;

    r.ergodic = true;
    for (std::uint64_t b = 0; b < count && r.ergodic; ++b)
        if (pre[b] == b && !trivial(b)) r.ergodic = false;

    r.almost_invariant = true;
    for (std::uint64_t b = 0; b < count && r.almost_invariant; ++b)
        if (!positive(pre[b] ^ b) && !trivial(b)) r.almost_invariant = false;

    // Union over n >= 1 of theta^{-n} A is the least fixed point of U -> theta^{-1}(A | U).
    r.sweeping = true;
    for (std::uint64_t a = 0; a < count && r.sweeping; ++a) {
        if (!positive(a)) continue;
        std::uint64_t u = 0;
        for (;;) {
            const std::uint64_t next = pre[a | u];
            if (next == u) break;
            u = next;
        }
        if (positive(full & ~u)) r.sweeping = false;
    }

    // theta^{-n} A is periodic in n beyond the longest preperiod with period
    // dividing the lcm of cycle lengths, so this search is exhaustive.
    const OrbitDecomposition orbits(sys.theta());
    const std::uint64_t horizon = orbits.max_preperiod() + orbits.cycle_lcm();
    std::vector<std::uint64_t> pulls(horizon);
    r.recurrent = true;
    for (std::uint64_t a = 0; a < count && r.recurrent; ++a) {
        if (!positive(a)) continue;
        std::uint64_t cur = a;
        for (std::uint64_t i = 0; i < horizon; ++i) {
            cur = pre[cur];
            pulls[i] = cur;
        }
        for (std::uint64_t b = 0; b < count && r.recurrent; ++b) {
            if (!positive(b)) continue;
            bool hit = false;
            for (std::uint64_t i = 0; i < horizon && !hit; ++i) hit = positive(pulls[i] & b);
            if (!hit) r.recurrent = false;
        }
    }
    return r;
}

}  // namespace subergo

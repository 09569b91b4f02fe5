#include "subergo/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "subergo/error.hpp"
#include "subergo/rng.hpp"

namespace subergo {

namespace {

struct BaseMeasure {
    std::string name;
    ProbVector p;
};

std::vector<BaseMeasure> base_measures(std::size_t n) {
    std::vector<BaseMeasure> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> w(n, 0.0);
        w[i] = 1.0;
        out.push_back({"vertex" + std::to_string(i), ProbVector(std::move(w))});
    }
    if (n >= 2) {
        out.push_back({"uniform", ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n)))});
        for (double a : {0.25, 0.5, 0.75}) {
            std::vector<double> w(n, 0.0);
            w[0] = a;
            w[1] = 1.0 - a;
            std::ostringstream os;
            os << "mix" << a;
            out.push_back({os.str(), ProbVector(std::move(w))});
        }
    }
    return out;
}

bool nearly_equal(const ProbVector& a, const ProbVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-15) return false;
    return true;
}

void append_unique(std::vector<ProbVector>& into, const ProbVector& p) {
    for (const auto& q : into)
        if (nearly_equal(p, q)) return;
    into.push_back(p);
}

// theta^k_* p for k in [max preperiod, max preperiod + lcm): the eventual
// cycle of the pushforward orbit.
std::vector<ProbVector> orbit_tail(const FiniteMap& theta, const OrbitDecomposition& orbits,
                                   const ProbVector& p) {
    ProbVector cur = p;
    for (std::size_t k = 0; k < orbits.max_preperiod(); ++k) cur = pushforward(theta, cur);
    std::vector<ProbVector> out;
    for (std::uint64_t k = 0; k < orbits.cycle_lcm(); ++k) {
        append_unique(out, cur);
        cur = pushforward(theta, cur);
    }
    return out;
}

}  // namespace

std::vector<CatalogEntry> prior_catalog(const FiniteMap& theta) {
    const std::size_t n = theta.size();
    const auto base = base_measures(n);
    const OrbitDecomposition orbits(theta);

    std::vector<CatalogEntry> out;
    for (const auto& b : base) out.push_back({b.name, PriorSet({b.p})});
    if (n >= 2) {
        std::vector<ProbVector> vertices, mixtures;
        for (const auto& b : base) {
            if (b.name.starts_with("vertex")) vertices.push_back(b.p);
            if (b.name.starts_with("mix")) mixtures.push_back(b.p);
        }
        out.push_back({"vertices", PriorSet(vertices)});
        out.push_back({"mixtures", PriorSet(mixtures)});

        std::vector<ProbVector> mix_tail;
        for (const auto& m : mixtures)
            for (const auto& q : orbit_tail(theta, orbits, m)) append_unique(mix_tail, q);
        out.push_back({"orbit:mixtures", PriorSet(std::move(mix_tail))});
    }
    for (const auto& b : base) out.push_back({"orbit:" + b.name, PriorSet(orbit_tail(theta, orbits, b.p))});
    return out;
}

std::vector<FiniteMap> all_maps(std::size_t n) {
    if (n == 0) throw InputError("map enumeration needs n >= 1");
    std::vector<FiniteMap> out;
    std::vector<std::size_t> img(n, 0);
    for (;;) {
        out.emplace_back(img);
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++img[pos] < n) break;
            img[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

SystemRecord audit_system(const FiniteSystem& sys, const SweepConfig& cfg, std::uint64_t stream) {
    SystemRecord rec;
    rec.theta = sys.theta().image();
    rec.preserving = sys.preserving();
    if (!rec.preserving) return rec;

    auto fail = [&](const std::string& what) { rec.counterexamples.push_back(what); };
    const std::size_t n = sys.size();

    rec.ergodic = is_ergodic(sys);
    if (n <= kMaxEquivalenceEnumeration) {
        rec.equivalence_evaluated = true;
        rec.equivalence = equivalence_audit(sys);
        if (!rec.equivalence.consistent()) fail("ergodicity characterisations disagree");
        if (rec.equivalence.ergodic != rec.ergodic) fail("invariant-set and class-union ergodicity disagree");
    }
    rec.fixed_space = fixed_space_audit(sys);
    if (!rec.fixed_space.consistent()) fail("fixed-space verdict disagrees with ergodicity");

    auto rng = make_stream(cfg.seed, stream);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto part = grand_orbits(sys.theta());

    rec.max_ergodic_min = std::numeric_limits<double>::infinity();
    Rv x(n), fixed(n), class_value(part.classes.size());
    for (std::size_t t = 0; t < cfg.rv_per_system; ++t) {
        for (auto& v : x) v = unit(rng);
        for (auto& v : class_value) v = unit(rng);
        for (std::size_t i = 0; i < n; ++i) fixed[i] = class_value[part.class_of[i]];

        for (const Rv* rv : {&x, &fixed}) {
            const auto s = slln_audit(sys, *rv);
            ++rec.slln_checks;
            if (!s.ok) {
                ++rec.slln_violations;
                fail("SLLN violated for X #" + std::to_string(t));
            }
            if (rv == &fixed && !s.theta_fixed) fail("class-constant X not detected as invariant");
        }
        for (std::size_t k = 1; k <= cfg.max_k; ++k) {
            const double v = maximal_ergodic_check(sys, x, k);
            rec.max_ergodic_min = std::min(rec.max_ergodic_min, v);
            if (v < -kSimplexTol) fail("maximal ergodic lemma violated, k=" + std::to_string(k));
        }
    }
    if (cfg.rv_per_system == 0) rec.max_ergodic_min = 0.0;
    return rec;
}

SweepSummary exhaustive_sweep(const SweepConfig& cfg, Exec exec) {
    if (cfg.n == 0 || cfg.n > kMaxExhaustiveSweep)
        throw InputError("exhaustive sweep supports 1 <= n <= 4");

    std::vector<FiniteSystem> systems;
    std::vector<std::string> names;
    for (const auto& theta : all_maps(cfg.n)) {
        for (auto& entry : prior_catalog(theta)) {
            systems.emplace_back(std::move(entry.priors), theta);
            names.push_back(std::move(entry.name));
        }
    }

    SweepSummary sum;
    sum.config = cfg;
    sum.records.resize(systems.size());
    const auto count = static_cast<long>(systems.size());
    auto body = [&](long i) {
        auto rec = audit_system(systems[i], cfg, static_cast<std::uint64_t>(i));
        rec.serial = static_cast<std::size_t>(i);
        rec.catalog_name = names[i];
        sum.records[i] = std::move(rec);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < count; ++i) body(i);
    } else {
        for (long i = 0; i < count; ++i) body(i);
    }

    sum.systems = systems.size();
    sum.max_ergodic_min = std::numeric_limits<double>::infinity();
    for (const auto& r : sum.records) {
        if (!r.preserving) continue;
        ++sum.preserving;
        if (r.ergodic) ++sum.ergodic;
        sum.slln_checks += r.slln_checks;
        sum.counterexamples += r.counterexamples.size();
        sum.max_ergodic_min = std::min(sum.max_ergodic_min, r.max_ergodic_min);
    }
    if (sum.preserving == 0) sum.max_ergodic_min = 0.0;
    return sum;
}

MaximalTrialSummary maximal_ergodic_trials(std::size_t trials, std::size_t max_n, std::size_t max_k,
                                           std::uint64_t seed, Exec exec) {
    if (max_n == 0 || max_n > kMaxExhaustiveSweep) throw InputError("maximal trials support 1 <= n <= 4");
    if (max_k == 0) throw InputError("maximal trials need k >= 1");

    std::vector<FiniteSystem> pool;
    for (std::size_t n = 1; n <= max_n; ++n)
        for (const auto& theta : all_maps(n))
            for (auto& entry : prior_catalog(theta)) {
                FiniteSystem sys(std::move(entry.priors), theta);
                if (sys.preserving()) pool.push_back(std::move(sys));
            }

    std::vector<double> values(trials);
    const auto count = static_cast<long>(trials);
    auto body = [&](long t) {
        auto rng = make_stream(seed, static_cast<std::uint64_t>(t));
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::uniform_int_distribution<std::size_t> pick_k(1, max_k);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        const auto& sys = pool[pick(rng)];
        Rv xi(sys.size());
        for (auto& v : xi) v = unit(rng);
        values[t] = maximal_ergodic_check(sys, xi, pick_k(rng));
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long t = 0; t < count; ++t) body(t);
    } else {
        for (long t = 0; t < count; ++t) body(t);
    }

    MaximalTrialSummary out;
    out.trials = trials;
    out.min_value = values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
    out.violations = static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [](double v) { return v < -kSimplexTol; }));
    return out;
}

}  // namespace subergo

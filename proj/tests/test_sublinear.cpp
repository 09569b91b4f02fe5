#include <gtest/gtest.h>

#include "subergo/error.hpp"
#include "subergo/rng.hpp"
#include "subergo/sublinear.hpp"
#include "test_support.hpp"

namespace subergo {
namespace {

using testing::brute_upper;

PriorSet vertices2() { return PriorSet({ProbVector({1.0, 0.0}), ProbVector({0.0, 1.0})}); }
PriorSet half2() { return PriorSet({ProbVector({0.5, 0.5})}); }

TEST(ProbVector, RejectsBadWeights) {
    EXPECT_THROW(ProbVector({0.3, 0.3, 0.3}), InputError);
    EXPECT_THROW(ProbVector({1.5, -0.5}), InputError);
    EXPECT_THROW(ProbVector(std::vector<double>{}), InputError);
    EXPECT_NO_THROW(ProbVector({0.25, 0.75}));
}

TEST(PriorSet, RejectsMixedDimensions) {
    EXPECT_THROW(PriorSet({ProbVector({1.0}), ProbVector({0.5, 0.5})}), InputError);
    EXPECT_THROW(PriorSet(std::vector<ProbVector>{}), InputError);
}

TEST(UpperExp, Examples) {
    EXPECT_DOUBLE_EQ(upper_exp(vertices2(), Rv{1, 1}), 1.0);
    EXPECT_DOUBLE_EQ(upper_exp(half2(), Rv{0, 1}), 0.5);
    EXPECT_DOUBLE_EQ(upper_exp(vertices2(), Rv{0, 1}), 1.0);
    EXPECT_THROW(upper_exp(vertices2(), Rv{0, 1, 2}), InputError);
}

TEST(LowerExp, Examples) {
    EXPECT_DOUBLE_EQ(lower_exp(vertices2(), Rv{0, 1}), 0.0);
    EXPECT_DOUBLE_EQ(lower_exp(half2(), Rv{0, 1}), 0.5);
    EXPECT_DOUBLE_EQ(lower_exp(vertices2(), Rv{-3.5, -3.5}), -3.5);
    EXPECT_THROW(lower_exp(half2(), Rv{1}), InputError);
}

TEST(Capacity, Examples) {
    const auto c = capacity(vertices2(), EventSet::of({0}, 2));
    EXPECT_DOUBLE_EQ(c.upper, 1.0);
    EXPECT_DOUBLE_EQ(c.lower, 0.0);
    const auto a = EventSet::of({0}, 2);
    EXPECT_DOUBLE_EQ(capacity(vertices2(), a).upper + capacity(vertices2(), a.complement()).upper, 2.0);
    const auto e = capacity(half2(), EventSet::empty(2));
    EXPECT_EQ(e.upper, 0.0);
    EXPECT_EQ(e.lower, 0.0);
}

TEST(IsPolar, Examples) {
    EXPECT_TRUE(is_polar(vertices2(), EventSet::empty(2)));
    EXPECT_TRUE(is_polar(PriorSet({ProbVector({1.0, 0.0})}), EventSet::of({1}, 2)));
    EXPECT_FALSE(is_polar(vertices2(), EventSet::of({1}, 2)));
}

TEST(Support, ComplementIsLargestPolarSet) {
    const PriorSet ps({ProbVector({0.5, 0.0, 0.5, 0.0}), ProbVector({0.0, 0.0, 1.0, 0.0})});
    EXPECT_EQ(support(ps), EventSet::of({0, 2}, 4));
    EXPECT_TRUE(is_polar(ps, support(ps).complement()));
}

TEST(EventSetOps, BitsetSemantics) {
    const auto a = EventSet::of({0, 2}, 4), b = EventSet::of({2, 3}, 4);
    EXPECT_EQ((a | b), EventSet::of({0, 2, 3}, 4));
    EXPECT_EQ((a & b), EventSet::of({2}, 4));
    EXPECT_EQ((a ^ b), EventSet::of({0, 3}, 4));
    EXPECT_EQ(a.complement(), EventSet::of({1, 3}, 4));
    EXPECT_EQ(a.size(), 2u);
    EXPECT_EQ(a.indicator(), (Rv{1, 0, 1, 0}));
    EXPECT_EQ(EventSet::full(64).size(), 64u);
    EXPECT_THROW(EventSet::of({4}, 4), InputError);
    EXPECT_THROW(EventSet::full(65), InputError);
}

TEST(AxiomAudit, ZeroViolations) {
    auto rng = make_stream(1, 0);
    for (std::size_t n : {1u, 2u, 5u, 9u}) {
        const auto ps = testing::random_priors(rng, n, 4, true);
        const auto r = axiom_audit(ps, 1000, 77 + n);
        EXPECT_EQ(r.checks, 4000u);
        EXPECT_TRUE(r.ok()) << r.violations.front();
    }
}

TEST(AxiomAudit, HomogeneityEdgeCases) {
    const auto ps = vertices2();
    const Rv x{0.3, -0.7};
    EXPECT_EQ(upper_exp(ps, Rv{0.0 * x[0], 0.0 * x[1]}), 0.0);
    EXPECT_DOUBLE_EQ(upper_exp(ps, Rv{2 * x[0], 2 * x[1]}), 2 * upper_exp(ps, x));
}

TEST(NoMeanUncertainty, Examples) {
    EXPECT_TRUE(has_no_mean_uncertainty(vertices2(), Rv{4.0, 4.0}));
    EXPECT_FALSE(has_no_mean_uncertainty(vertices2(), Rv{0, 1}));
    const PriorSet ps({ProbVector({0.5, 0.5}), ProbVector({0.25, 0.75})});
    // Oracle: both linear expectations by hand, 0 and -1/2.
    EXPECT_DOUBLE_EQ(brute_upper(ps, {1, -1}), 0.0);
    EXPECT_DOUBLE_EQ(brute_upper(ps, {-1, 1}), 0.5);
    EXPECT_FALSE(has_no_mean_uncertainty(ps, Rv{1, -1}));
}

TEST(NoMeanUncertainty, SampledVariablesQualify) {
    auto rng = make_stream(2, 0);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto ps = testing::random_priors(rng, 6, 3);
        const Rv x = sample_no_mean_uncertainty(ps, s);
        double lo = 1e300, hi = -1e300;
        for (const auto& p : ps.priors()) {
            double e = 0.0;
            for (std::size_t i = 0; i < 6; ++i) e += p[i] * x[i];
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        EXPECT_LE(hi - lo, 1e-10);
        EXPECT_TRUE(has_no_mean_uncertainty(ps, x));
    }
}

TEST(MeanUncertaintySpace, ClosedUnderCombinations) {
    auto rng = make_stream(3, 0);
    EXPECT_TRUE(mean_uncertainty_space_audit(vertices2(), 200, 5).ok());
    for (int k = 0; k < 5; ++k) EXPECT_TRUE(mean_uncertainty_space_audit(testing::random_priors(rng, 5, 3), 200, k).ok());

    // X1 = X2 with lambda (1, -1) is the zero vector.
    const auto ps = testing::random_priors(rng, 4, 2);
    const Rv x = sample_no_mean_uncertainty(ps, 9);
    Rv z(4);
    for (std::size_t i = 0; i < 4; ++i) z[i] = x[i] - x[i];
    EXPECT_TRUE(has_no_mean_uncertainty(ps, z));
}

// Property tests over random prior sets and variables.

TEST(SublinearProperty, SubadditiveAndDualExact) {
    auto rng = make_stream(4, 0);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + trial % 7;
        const auto ps = testing::random_priors(rng, n, 1 + trial % 4, trial % 2 == 0);
        const auto x = testing::random_vector(rng, n), y = testing::random_vector(rng, n);
        Rv s(n), neg(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = x[i] + y[i];
            neg[i] = -x[i];
        }
        EXPECT_LE(upper_exp(ps, s), upper_exp(ps, x) + upper_exp(ps, y) + 1e-12);
        EXPECT_EQ(lower_exp(ps, x), -upper_exp(ps, neg));
        EXPECT_NEAR(upper_exp(ps, x), brute_upper(ps, x), 1e-15);
    }
}

TEST(SublinearProperty, CapacityOfComplementAtLeastOne) {
    auto rng = make_stream(5, 0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const auto ps = testing::random_priors(rng, n, 1 + trial % 3, true);
        for (std::uint64_t m = 0; m < (1u << n); ++m) {
            const EventSet a(m, n);
            const auto c = capacity(ps, a);
            EXPECT_LE(0.0, c.lower);
            EXPECT_LE(c.lower, c.upper);
            EXPECT_LE(c.upper, 1.0 + 1e-15);
            EXPECT_GE(c.upper + capacity(ps, a.complement()).upper, 1.0 - 1e-12);
        }
    }
}

TEST(SublinearProperty, PolarSetsAreSubadditive) {
    auto rng = make_stream(6, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const auto ps = testing::random_priors(rng, n, 2, true);
        for (std::uint64_t m = 0; m < (1u << n); ++m) {
            const EventSet a(m, n);
            if (!is_polar(ps, a)) continue;
            for (std::uint64_t q = 0; q < (1u << n); ++q) {
                const EventSet b(q, n);
                EXPECT_LE(capacity(ps, a | b).upper, capacity(ps, a).upper + capacity(ps, b).upper + 1e-12);
            }
        }
    }
}

TEST(SublinearProperty, SingletonPriorIsLinear) {
    auto rng = make_stream(7, 0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const auto ps = testing::random_priors(rng, n, 1);
        const auto x = testing::random_vector(rng, n);
        EXPECT_NEAR(upper_exp(ps, x), lower_exp(ps, x), 1e-15);
    }
}

}  // namespace
}  // namespace subergo

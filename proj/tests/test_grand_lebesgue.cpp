// SPDX-License-Identifier: MIT
#include "gls/grand_lebesgue.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace gls;
using std::numbers::pi;

namespace {

// natural function of f_{1,1} (d=2) times (p-2)^{-1}(10-p)^{-1}: the norm is
// attained at p = 6 in the interior
GeneratingFunction interior_psi() {
    return GeneratingFunction::product(natural_function(OuterModel{1.0, 1.0, 2}),
                                       GeneratingFunction::parametric(2, 10, 1, 1));
}

}  // namespace

TEST(Psi, FormulaValues) {
    EXPECT_DOUBLE_EQ(eval_psi(GeneratingFunction::parametric(1, 3, 1, 1), 2.0), 1.0);
    EXPECT_DOUBLE_EQ(eval_psi(GeneratingFunction::power(2), 4.0), 2.0);
    // (0.5)^{-1/1.5}, mpmath
    EXPECT_NEAR(eval_psi(GeneratingFunction::iwaniec_sbordone(2, 1), 1.5), 1.5874010519681995, 1e-15);
    EXPECT_NEAR(eval_psi(GeneratingFunction::riesz_max(1.0), 1.25), 5.0, 1e-14);
}

TEST(Psi, DomainChecks) {
    const auto g = GeneratingFunction::parametric(1, 3, 1, 1);
    EXPECT_THROW((void)g(1.0), DomainError);
    EXPECT_THROW((void)g(3.0), DomainError);
    EXPECT_NO_THROW((void)GeneratingFunction::power(2)(1.0));
    EXPECT_THROW((void)GeneratingFunction::power(2)(0.5), DomainError);
    EXPECT_THROW((void)GeneratingFunction::parametric(0.5, 3, 1, 1), DomainError);
    EXPECT_THROW((void)GeneratingFunction::parametric(1, kInf, 1, 1), DomainError);
    EXPECT_NO_THROW((void)GeneratingFunction::parametric(1, kInf, 1, 0));
    EXPECT_THROW((void)GeneratingFunction::iwaniec_sbordone(1.0, 1.0), DomainError);
}

TEST(Psi, IwaniecSbordoneEpsilonForm) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double p = 1.2 + 8.0 * unit(rng);
        const double theta = 3.0 * unit(rng);
        const double eps = (p - 1.0) * (0.01 + 0.98 * unit(rng));
        const double direct = GeneratingFunction::iwaniec_sbordone(p, theta)(p - eps);
        const double eps_form = std::pow(eps, -theta / (p - eps));
        EXPECT_NEAR(direct / eps_form, 1.0, 1e-13);
    }
}

TEST(Psi, ProductAndScaling) {
    const auto x = GeneratingFunction::parametric(1, 5, 1, 0);
    const auto y = GeneratingFunction::power(2);
    const auto xy = GeneratingFunction::product(x, y);
    EXPECT_EQ(xy.domain().lo, 1.0);
    EXPECT_EQ(xy.domain().hi, 5.0);
    EXPECT_NEAR(xy(4.0), (1.0 / 3.0) * 2.0, 1e-15);
    EXPECT_NEAR(y.scaled(3.0)(4.0), 6.0, 1e-14);
    EXPECT_THROW((void)GeneratingFunction::product(GeneratingFunction::parametric(1, 2, 1, 1),
                                                   GeneratingFunction::parametric(3, 4, 1, 1)),
                 DomainError);
}

TEST(Psi, TabulatedLogLinear) {
    const auto g = GeneratingFunction::tabulated({1.0, 3.0, 5.0}, {1.0, 4.0, 4.0});
    EXPECT_NEAR(g(2.0), 2.0, 1e-15);
    EXPECT_DOUBLE_EQ(g(1.0), 1.0);
    EXPECT_DOUBLE_EQ(g(5.0), 4.0);
    EXPECT_THROW((void)g(0.99), DomainError);
    EXPECT_THROW((void)g(5.01), DomainError);
    EXPECT_THROW((void)GeneratingFunction::tabulated({1.0, 1.0}, {1.0, 1.0}), DomainError);
    EXPECT_THROW((void)GeneratingFunction::tabulated({1.0, 2.0}, {1.0, 0.0}), DomainError);
}

TEST(Psi, SampledInfimumIsPositive) {
    EXPECT_NEAR(sampled_infimum(GeneratingFunction::parametric(1, 3, 1, 1)), 1.0, 1e-12);
    EXPECT_NEAR(sampled_infimum(GeneratingFunction::riesz_max(1.0)), 2.0, 1e-10);  // kink at p = 2
}

TEST(NaturalFunction, Domains) {
    const auto f = natural_function(OuterModel{1.0, 0.0, 1});
    EXPECT_EQ(f.domain().lo, 1.0);
    EXPECT_FALSE(f.domain().lo_closed);
    EXPECT_FALSE(f.domain().bounded());
    EXPECT_NEAR(f(2.0), std::sqrt(2.0), 1e-15);

    const auto g = natural_function(InnerModel{1.0, 1.0, 2});
    EXPECT_TRUE(g.domain().lo_closed);
    EXPECT_EQ(g.domain().hi, 2.0);
    EXPECT_NEAR(g(1.0), 2.0 * pi, 1e-13);

    const auto h = natural_function(SumModel{{1.0, 0.5, 2}, {2.0, 1.0, 2}});
    EXPECT_EQ(h.domain().lo, 2.0);
    EXPECT_EQ(h.domain().hi, 4.0);

    const auto clipped = natural_function(InnerModel{1.0, 1.0, 2}, 0.01);
    EXPECT_NEAR(clipped.domain().lo, 1.01, 1e-15);
    EXPECT_NEAR(clipped.domain().hi, 1.98, 1e-15);
    EXPECT_THROW((void)natural_function(InnerModel{1.0, 1.0, 1}), DomainError);
}

TEST(GlsNorm, NaturalFunctionGivesOne) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const int d = 1 + i % 3;
        Model m;
        switch (i % 3) {
            case 0: m = OuterModel{0.3 + 2.0 * unit(rng), 2.0 * unit(rng), d}; break;
            case 1: m = InnerModel{1.2 + 2.0 * unit(rng), 0.2 + 2.0 * unit(rng), d}; break;
            default: {
                const double a = 0.3 + unit(rng);
                m = SumModel{{a, unit(rng), d}, {a + 0.5 + unit(rng), 0.5 + unit(rng), d}};
            }
        }
        const GlsNorm n = gls_norm(LpProfile::of_model(m), natural_function(m));
        EXPECT_NEAR(n.value, 1.0, 1e-12) << describe(m);
        EXPECT_FALSE(n.infinite);
    }
}

TEST(GlsNorm, Homogeneity) {
    const Model m = OuterModel{1.0, 1.0, 2};
    const auto psi = interior_psi();
    const double base = gls_norm(LpProfile::of_model(m), psi).value;
    EXPECT_NEAR(base, 16.0, 1e-10);
    for (double c : {0.25, 3.0, 1e3}) {
        const double scaled = gls_norm(LpProfile::of_model(m).scaled(c), psi).value;
        EXPECT_NEAR(scaled / (c * base), 1.0, 1e-13);
    }
}

TEST(GlsNorm, MonotoneInPsi) {
    const LpProfile w = LpProfile::of_model(OuterModel{1.0, 1.0, 2});
    const auto psi1 = interior_psi();
    const auto psi2 = GeneratingFunction::product(psi1, GeneratingFunction::power(4.0));  // >= psi1
    EXPECT_GE(gls_norm(w, psi1).value, gls_norm(w, psi2).value);
}

TEST(GlsNorm, OuterAgainstParametricMatchesDenseGrid) {
    const LpProfile w = LpProfile::of_model(OuterModel{1.0, 0.0, 1});
    const auto psi = GeneratingFunction::parametric(1, 3, 1, 0);
    const GlsNorm n = gls_norm(w, psi);
    ASSERT_FALSE(n.infinite);
    EXPECT_GE(n.value, std::sqrt(2.0));
    double best = 0.0;
    const SearchPolicy policy;
    const ClippedRange r = clip_domain(Interval{1.0, 3.0}, policy);
    for (int i = 0; i <= 10000; ++i) {
        const double p = r.lo + (r.hi - r.lo) * i / 10000.0;
        best = std::max(best, std::pow(2.0 / (p - 1.0), 1.0 / p) * (p - 1.0));
    }
    EXPECT_NEAR(n.value, best, 1e-9 * best);
}

TEST(GlsNorm, ConstantProfileBelowOne) {
    const LpProfile one([](double) { return 0.0; }, Interval{1.0, kInf, true},
                        LpProfile::Source::derived, "one");
    const GlsNorm n = gls_norm(one, GeneratingFunction::power(2));
    EXPECT_LE(n.value, 1.0);
    EXPECT_NEAR(n.value, 1.0, 1e-15);  // psi(1) = 1
}

TEST(GlsNorm, DivergenceAtOpenEndpoint) {
    // ||f_{1,0}||_p = (2/(p-1))^{1/p} blows up at p = 1 while psi = 1 stays flat
    const GlsNorm n =
        gls_norm(LpProfile::of_model(OuterModel{1.0, 0.0, 1}), GeneratingFunction::parametric(1, 3, 0, 0));
    EXPECT_TRUE(n.infinite);
    EXPECT_TRUE(std::isinf(n.value));
    EXPECT_EQ(n.boundary_hit, BoundaryHit::lower);
    EXPECT_FALSE(n.diagnostics.empty());
}

TEST(GlsNorm, EmptyIntersection) {
    EXPECT_THROW((void)gls_norm(LpProfile::of_model(OuterModel{2.0, 0.0, 2}),
                                GeneratingFunction::parametric(1, 3, 1, 1)),
                 DomainError);
}

TEST(NormFromTail, OuterNaturalRoundTrip) {
    const Model m = OuterModel{1.0, 0.0, 1};
    const NormFromTail r = norm_from_tail(model_tail(m, LevelSet::exact), natural_function(m));
    EXPECT_NEAR(r.norm.value, 1.0, 1e-5);
}

TEST(NormFromTail, InnerNaturalRoundTripOnClippedDomain) {
    const Model m = InnerModel{1.0, 1.0, 2};
    const LpProfile w(
        [m](double p) { return log_lp_norm(m, p); }, Interval{1.0, 1.98}, LpProfile::Source::closed_form, "g");
    const NormFromTail r =
        norm_from_tail(model_tail(m, LevelSet::exact), GeneratingFunction::natural(w));
    EXPECT_NEAR(r.norm.value, 1.0, 1e-4);
}

TEST(NormFromTail, AgreesWithClosedFormProfile) {
    const Model m = OuterModel{1.0, 1.0, 2};
    const auto psi = interior_psi();
    const double direct = gls_norm(LpProfile::of_model(m), psi).value;
    const NormFromTail r = norm_from_tail(model_tail(m, LevelSet::exact), psi);
    EXPECT_NEAR(r.norm.value / direct, 1.0, 1e-4);
}

TEST(NormFromTail, ZeroTail) {
    const NormFromTail r = norm_from_tail(TailCurve::zero(), GeneratingFunction::power(2));
    EXPECT_EQ(r.norm.value, 0.0);
    EXPECT_FALSE(r.norm.infinite);
}

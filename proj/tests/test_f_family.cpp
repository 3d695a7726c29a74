#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bestprox/f_family.hpp"

using namespace bestprox;

TEST(EvalF, BuiltInFormulas) {
    EXPECT_EQ(eval_f(FFunction::ln(0.5), 1.0), 0.0);
    EXPECT_DOUBLE_EQ(eval_f(FFunction::ln(0.5), std::exp(1.0)), 1.0);
    EXPECT_DOUBLE_EQ(eval_f(FFunction::neg_inv_sqrt(0.75), 4.0), -0.5);
    EXPECT_DOUBLE_EQ(eval_f(FFunction::ln_plus_alpha(0.5), 1.0), 1.0);
    EXPECT_DOUBLE_EQ(eval_f(FFunction::identity(0.5, 3.0), 2.0), 5.0);
}

TEST(EvalF, NonPositiveArgumentIsDomainError) {
    EXPECT_THROW(eval_f(FFunction::ln(0.5), 0.0), DomainError);
    EXPECT_THROW(eval_f(FFunction::neg_inv_sqrt(0.5), -1.0), DomainError);
    EXPECT_THROW(eval_f(FFunction::ln(0.5), NAN), DomainError);
}

TEST(EvalF, ExponentMustLieInOpenUnitInterval) {
    EXPECT_THROW(FFunction::ln(0.0), InputError);
    EXPECT_THROW(FFunction::ln(1.0), InputError);
    EXPECT_THROW(FFunction::ln(-0.2), InputError);
    EXPECT_NO_THROW(FFunction::ln(0.999));
}

TEST(EvalF, TagLookup) {
    EXPECT_EQ(FFunction::from_tag("ln", 0.5).kind(), FKind::ln);
    EXPECT_EQ(FFunction::from_tag("ln_plus_alpha", 0.5).kind(), FKind::ln_plus_alpha);
    EXPECT_EQ(FFunction::from_tag("neg_inv_sqrt", 0.5).kind(), FKind::neg_inv_sqrt);
    EXPECT_THROW(FFunction::from_tag("sinh", 0.5), InputError);
}

TEST(EvalF, TabulatedInterpolatesAndRejectsOutsideRange) {
    const auto f = FFunction::tabulated(0.5, {{1.0, 0.0}, {2.0, 1.0}, {4.0, 3.0}});
    EXPECT_DOUBLE_EQ(f(1.5), 0.5);
    EXPECT_DOUBLE_EQ(f(3.0), 2.0);
    EXPECT_DOUBLE_EQ(f(4.0), 3.0);
    EXPECT_THROW(f(0.5), DomainError);
    EXPECT_THROW(f(5.0), DomainError);
    EXPECT_THROW(FFunction::tabulated(0.5, {{2.0, 0.0}, {1.0, 1.0}}), InputError);
}

// Grid-evaluation oracle: sqrt(a) ln a and a^0.75 * (-a^-0.5) along 1e-1..1e-12,
// computed independently of the checker.
TEST(OmegaMembership, GridOracleForBuiltIns) {
    double prev_ln = INFINITY, prev_nis = INFINITY;
    for (int e = 1; e <= 12; ++e) {
        const double a = std::pow(10.0, -e);
        const double g_ln = std::abs(std::sqrt(a) * std::log(a));
        const double g_nis = std::abs(std::pow(a, 0.75) * (-1.0 / std::sqrt(a)));
        EXPECT_LT(g_ln, prev_ln);
        EXPECT_LT(g_nis, prev_nis);
        EXPECT_NEAR(g_nis, std::pow(a, 0.25), 1e-15);
        prev_ln = g_ln;
        prev_nis = g_nis;
    }
    EXPECT_NEAR(prev_ln, 2.7631021115928545e-05, 1e-15);
    EXPECT_LT(std::log(1e-12), -20.0);
    EXPECT_LT(-1.0 / std::sqrt(1e-12), -20.0);
}

TEST(OmegaMembership, LnWithHalfPasses) {
    const OmegaReport r = check_omega_membership(FFunction::ln(0.5));
    EXPECT_TRUE(r.passed_monotone);
    EXPECT_TRUE(r.passed_divergence);
    EXPECT_TRUE(r.passed_decay);
    EXPECT_FALSE(r.witness.has_value());
}

TEST(OmegaMembership, NegInvSqrtWithThreeQuartersPasses) {
    const OmegaReport r = check_omega_membership(FFunction::neg_inv_sqrt(0.75));
    EXPECT_TRUE(r.passed());
    EXPECT_FALSE(r.witness.has_value());
}

TEST(OmegaMembership, LnPlusAlphaPasses) {
    EXPECT_TRUE(check_omega_membership(FFunction::ln_plus_alpha(0.5)).passed());
}

TEST(OmegaMembership, IdentityFailsDivergenceWithGridWitness) {
    const OmegaCheckGrid grid;
    for (double k : {0.1, 0.5, 0.9}) {
        const OmegaReport r = check_omega_membership(FFunction::identity(k), grid);
        EXPECT_TRUE(r.passed_monotone);
        EXPECT_FALSE(r.passed_divergence);
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_EQ(r.witness->condition, OmegaCondition::divergence);
        EXPECT_NE(std::find(grid.decay_grid.begin(), grid.decay_grid.end(), r.witness->alpha),
                  grid.decay_grid.end());
    }
}

TEST(OmegaMembership, ShiftedIdentityRejected) {
    for (double shift : {-5.0, 0.0, 7.0}) {
        const OmegaReport r = check_omega_membership(FFunction::identity(0.5, shift));
        EXPECT_FALSE(r.passed_divergence) << "shift " << shift;
        ASSERT_TRUE(r.witness.has_value());
    }
}

// The divergence test is a finite proxy: a shift below the bound is
// indistinguishable from divergence until the bound is lowered past it.
TEST(OmegaMembership, DeepShiftNeedsLowerBound) {
    const auto f = FFunction::identity(0.5, -100.0);
    EXPECT_TRUE(check_omega_membership(f).passed_divergence);
    OmegaCheckGrid grid;
    grid.divergence_bound = -1000.0;
    const OmegaReport r = check_omega_membership(f, grid);
    EXPECT_FALSE(r.passed_divergence);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->condition, OmegaCondition::divergence);
}

TEST(OmegaMembership, NonMonotoneTableGetsMonotoneWitness) {
    const auto f = FFunction::tabulated(0.5, {{1e-12, -30.0}, {1e-3, -5.0}, {1.0, -6.0}, {1e6, 10.0}});
    const OmegaReport r = check_omega_membership(f);
    EXPECT_FALSE(r.passed_monotone);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->condition, OmegaCondition::monotone);
    ASSERT_TRUE(r.witness->partner.has_value());
    EXPECT_LT(r.witness->alpha, r.witness->partner->first);
    EXPECT_GE(r.witness->value, r.witness->partner->second);
}

TEST(OmegaMembership, ShallowGridFailsSmallExponentDecay) {
    // a^0.05 |ln a| only turns down below a = e^-20; the default grid cannot see it.
    const OmegaReport r = check_omega_membership(FFunction::ln(0.05));
    EXPECT_TRUE(r.passed_divergence);
    EXPECT_FALSE(r.passed_decay);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->condition, OmegaCondition::decay);
}

TEST(OmegaMembership, WitnessIffSomeConditionFails) {
    for (const auto& f : {FFunction::ln(0.5), FFunction::ln(0.05), FFunction::identity(0.5),
                          FFunction::neg_inv_sqrt(0.75), FFunction::neg_inv_sqrt(0.3)}) {
        const OmegaReport r = check_omega_membership(f);
        EXPECT_EQ(r.witness.has_value(), !r.passed());
    }
}

TEST(OmegaMembership, Deterministic) {
    const auto f = FFunction::tabulated(0.5, {{1e-12, -30.0}, {1e-3, -5.0}, {1.0, -6.0}, {1e6, 10.0}});
    const OmegaReport a = check_omega_membership(f), b = check_omega_membership(f);
    ASSERT_TRUE(a.witness && b.witness);
    EXPECT_EQ(a.witness->alpha, b.witness->alpha);
    EXPECT_EQ(a.witness->partner->first, b.witness->partner->first);
}

TEST(OmegaMembership, MalformedGridRejected) {
    OmegaCheckGrid grid;
    grid.decay_grid = {1e-2, 1e-1};
    EXPECT_THROW(check_omega_membership(FFunction::ln(0.5), grid), InputError);
    grid.decay_grid = {1e-1, 0.0};
    EXPECT_THROW(check_omega_membership(FFunction::ln(0.5), grid), InputError);
}

TEST(OmegaProperty, BuiltInsStrictlyIncreasingOnRandomPairs) {
    std::mt19937_64 rng(20211);
    std::uniform_real_distribution<double> exponent(-12.0, 6.0);
    for (const auto& f : {FFunction::ln(0.5), FFunction::ln_plus_alpha(0.5), FFunction::neg_inv_sqrt(0.5)}) {
        for (int s = 0; s < 10000; ++s) {
            double a1 = std::pow(10.0, exponent(rng)), a2 = std::pow(10.0, exponent(rng));
            if (a1 == a2) continue;
            if (a1 > a2) std::swap(a1, a2);
            ASSERT_LT(f(a1), f(a2)) << to_string(f.kind()) << " at " << a1 << ", " << a2;
        }
    }
}

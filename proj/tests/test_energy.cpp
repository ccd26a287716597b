#include <gtest/gtest.h>

#include "fqsalem/constructions.hpp"
#include "fqsalem/energy.hpp"
#include "golden.hpp"
#include "support.hpp"

using namespace fqsalem;
using testing_support::lambda4_quadruple;
using testing_support::points;
using testing_support::random_subset;

TEST(Energy, GoldenValues) {
    const Field F5 = Field::create(5, 1), F9 = Field::create(3, 2), F3 = Field::create(3, 1);
    struct Case {
        PointSet E;
        std::uint64_t l2, l4, l6;
    };
    for (const auto& c : {Case{points(F5, golden::kSetA), golden::kLambda2_A, golden::kLambda4_A, golden::kLambda6_A},
                          Case{points(F9, golden::kSetB), golden::kLambda2_B, golden::kLambda4_B, golden::kLambda6_B},
                          Case{points(F3, golden::kSetC), golden::kLambda2_C, golden::kLambda4_C, golden::kLambda6_C}}) {
        for (auto fn : {&energy_bruteforce, &energy_convolution, &additive_energy}) {
            EXPECT_EQ(fn(c.E, 1, kDefaultBudget), c.l2);
            EXPECT_EQ(fn(c.E, 2, kDefaultBudget), c.l4);
            EXPECT_EQ(fn(c.E, 3, kDefaultBudget), c.l6);
        }
    }
}

TEST(Energy, SimpleSets) {
    const Space S(Field::create(5, 1), 2);
    EXPECT_EQ(additive_energy(PointSet(S, {9}), 2), 1u);
    EXPECT_EQ(additive_energy(PointSet(S), 2), 0u);
    EXPECT_EQ(energy_bruteforce(PointSet(S), 2), 0u);
    const PointSet full = full_space(S);
    EXPECT_EQ(additive_energy(full, 2), checked_pow(25, 3));
    EXPECT_EQ(additive_energy(full, 3), checked_pow(25, 5));
    // An additive subgroup of size m has Lambda_{2k} = m^{2k-1}.
    const PointSet line = isotropic_subspace(Field::create(5, 1), 2, 1);
    for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(additive_energy(line, k), checked_pow(5, 2 * k - 1));
    const PointSet iso = isotropic_subspace(Field::create(3, 1), 4, 2);
    EXPECT_EQ(additive_energy(iso, 2), checked_pow(iso.size(), 3));
}

TEST(Energy, ConvolutionEqualsBruteForceOnRandomSets) {
    int n = 0;
    for (std::uint64_t q : {3u, 5u, 7u}) {
        const Field F = Field::create(q, 1);
        for (unsigned d = 1; d <= 3; ++d) {
            for (std::uint64_t seed = 0; seed < 6; ++seed) {
                const PointSet E = random_subset(F, d, 1, 60, q * 1000 + d * 10 + seed);
                EXPECT_EQ(energy_convolution(E, 2), energy_bruteforce(E, 2));
                EXPECT_EQ(energy_convolution(E, 2), lambda4_quadruple(E));
                ++n;
            }
        }
    }
    EXPECT_GE(n, 50);
}

TEST(Energy, DifferenceSet) {
    const Field F5 = Field::create(5, 1);
    const PointSet A = points(F5, golden::kSetA);
    EXPECT_EQ(difference_set(A).size(), golden::kDifferenceSize_A);
    EXPECT_EQ(difference_set(points(Field::create(3, 2), golden::kSetB)).size(), golden::kDifferenceSize_B);
    EXPECT_EQ(difference_set(points(Field::create(3, 1), golden::kSetC)).size(), golden::kDifferenceSize_C);
    const PointSet iso = isotropic_subspace(F5, 4, 2);
    EXPECT_EQ(difference_set(iso), iso);
    const Space S(F5, 2);
    EXPECT_EQ(difference_set(PointSet(S, {13})), PointSet(S, {0}));
}

TEST(Energy, CauchySchwarzChain) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PointSet E = random_subset(Field::create(5, 1), 2, 1, 25, seed);
        const u128 lhs = checked_mul(additive_energy(E, 2), difference_set(E).size());
        EXPECT_GE(lhs, checked_pow(E.size(), 4));
    }
}

TEST(Energy, SalemParameter) {
    const Field F5 = Field::create(5, 1);
    EXPECT_DOUBLE_EQ(salem_parameter(full_space(Space(F5, 2))).s, 0.5);
    EXPECT_NEAR(salem_parameter(points(F5, golden::kSetA)).s, golden::kSalem_A, 1e-12);
    EXPECT_NEAR(salem_parameter(points(Field::create(3, 2), golden::kSetB)).s, golden::kSalem_B, 1e-12);
    EXPECT_NEAR(salem_parameter(points(Field::create(3, 1), golden::kSetC)).s, golden::kSalem_C, 1e-12);
    // Isotropic subspace: Lambda_4 = |E|^3, so s sits just above 1/4.
    const double iso = salem_parameter(isotropic_subspace(F5, 4, 2)).s;
    EXPECT_GE(iso, 0.25);
    EXPECT_LT(iso, 0.26);
    EXPECT_THROW(salem_parameter(PointSet(Space(F5, 2), {1})), DomainError);
    EXPECT_TRUE(salem_parameter(PointSet(Space(F5, 2), {1}), 1.0, true).degenerate);
    EXPECT_THROW(salem_parameter(full_space(Space(F5, 2)), 0.0), DomainError);
}

TEST(Energy, SalemParameterMonotoneInC) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointSet E = random_subset(Field::create(7, 1), 2, 2, 30, 77 + seed);
        double prev = 0;
        for (double C : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double s = salem_parameter(E, C).s;
            EXPECT_GE(s, prev);
            EXPECT_GE(s, 0.25);
            EXPECT_LE(s, 0.5);
            prev = s;
        }
    }
}

TEST(Energy, ReportBackgroundTerm) {
    const PointSet E = points(Field::create(5, 1), golden::kSetA);
    const auto rep = energy_report(E, 2);
    EXPECT_EQ(rep.lambda, golden::kLambda4_A);
    EXPECT_EQ(rep.background_term(), "400");  // 10^4 / 25
    EXPECT_EQ(energy_report(E, 3).background_term(), "40000");
    ASSERT_TRUE(rep.salem_s.has_value());
}

TEST(Energy, BudgetsAreEnforced) {
    const PointSet E = random_set(Space(Field::create(7, 1), 3), 100, 1);
    EXPECT_THROW(energy_bruteforce(E, 2, 1000), BudgetError);
    EXPECT_THROW(energy_convolution(E, 5), DomainError);
    EXPECT_THROW(energy_bruteforce(E, 0), DomainError);
}

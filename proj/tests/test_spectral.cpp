#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fqsalem/spectral.hpp"
#include "golden.hpp"
#include "support.hpp"

using namespace fqsalem;
using testing_support::points;
using testing_support::random_subset;

namespace {

double max_abs_diff(const Spectrum& a, const Spectrum& b) {
    double worst = 0;
    for (std::size_t m = 0; m < a.values().size(); ++m) worst = std::max(worst, std::abs(a.values()[m] - b.values()[m]));
    return worst;
}

}  // namespace

TEST(Spectral, FullSpaceIsDelta) {
    const PointSet E = full_space(Space(Field::create(3, 2), 2));
    const Spectrum S = fourier(E);
    EXPECT_NEAR(S[0].real(), 1.0, 1e-12);
    for (std::size_t m = 1; m < S.values().size(); ++m) EXPECT_LT(std::abs(S[m]), 1e-12);
    for (double u : {1.0, 2.0, 4.0, kInfinity}) EXPECT_LT(lp_norm(S, u), 1e-12);
}

TEST(Spectral, SingletonIsFlat) {
    for (auto method : {FourierMethod::direct, FourierMethod::fast}) {
        const Space Sp(Field::create(5, 1), 2);
        const PointSet E(Sp, {7});
        const Spectrum S = fourier(E, method);
        for (const auto& v : S.values()) EXPECT_NEAR(std::abs(v), 1.0 / 25, 1e-14);
        const PointSet O(Sp, {0});
        const Spectrum SO = fourier(O, method);
        for (const auto& v : SO.values()) EXPECT_NEAR(std::abs(v - cplx(1.0 / 25, 0)), 0.0, 1e-14);
        for (double u : {1.0, 2.0, 3.0, 4.0}) {
            EXPECT_NEAR(lp_norm(S, u), (1.0 / 25) * std::pow(24.0 / 25.0, 1.0 / u), 1e-14);
        }
        EXPECT_NEAR(lp_norm(S, kInfinity), 1.0 / 25, 1e-14);
    }
}

TEST(Spectral, CoefficientsMatchOracle) {
    const Field F5 = Field::create(5, 1), F9 = Field::create(3, 2);
    for (auto method : {FourierMethod::direct, FourierMethod::fast}) {
        const Spectrum A = fourier(points(F5, golden::kSetA), method);
        for (const auto& c : golden::kFourierA) EXPECT_LT(std::abs(A[c.m] - cplx(c.re, c.im)), 1e-12) << c.m;
        const Spectrum B = fourier(points(F9, golden::kSetB), method);
        for (const auto& c : golden::kFourierB) EXPECT_LT(std::abs(B[c.m] - cplx(c.re, c.im)), 1e-12) << c.m;
    }
}

TEST(Spectral, FastMatchesDirectIncludingExtensionFields) {
    int sets = 0;
    for (auto [p, r, d] : {std::tuple{5u, 1u, 2u}, {3, 2, 2}, {5, 2, 2}, {3, 3, 1}, {3, 1, 3}, {7, 1, 2}, {3, 2, 3}}) {
        const Field F = Field::create(p, r);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const PointSet E = random_subset(F, d, 1, 40, seed * 31 + p);
            EXPECT_LE(max_abs_diff(fourier(E, FourierMethod::direct), fourier(E, FourierMethod::fast)), 1e-9);
            ++sets;
        }
    }
    EXPECT_GE(sets, 50);
    const PointSet E = random_set(Space(Field::create(5, 1), 2), 10, 2024);
    EXPECT_LE(max_abs_diff(fourier(E, FourierMethod::direct), fourier(E, FourierMethod::fast)), 1e-9);
}

TEST(Spectral, Parseval) {
    for (auto [p, r, d] : {std::tuple{5u, 1u, 2u}, {3, 2, 2}, {7, 1, 2}, {3, 1, 3}}) {
        const Field F = Field::create(p, r);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const PointSet E = random_subset(F, d, 1, 30, seed);
            const Spectrum S = fourier(E);
            const double qd = static_cast<double>(E.space().size());
            const double expected = static_cast<double>(E.size()) / qd;
            EXPECT_NEAR(parseval_sum(S) / expected, 1.0, 1e-10);
            const double l2 = lp_norm(S, 2.0);
            EXPECT_NEAR(l2 * l2, (expected - expected * expected) / qd, 1e-12);
        }
    }
}

TEST(Spectral, EnergyIdentityOnSimpleSets) {
    const Space Sp(Field::create(5, 1), 2);
    for (unsigned k = 1; k <= 3; ++k) {
        const auto single = energy_identity_check(PointSet(Sp, {3}), k);
        const double expected = std::pow(25.0, -2.0 * k) * (1 - 1.0 / 25);
        EXPECT_NEAR(single.lhs / expected, 1.0, 1e-9);
        EXPECT_NEAR(single.rhs / expected, 1.0, 1e-9);
        const auto full = energy_identity_check(full_space(Sp), k);
        EXPECT_LT(full.lhs, 1e-15);
        EXPECT_EQ(full.rhs, 0.0);
    }
}

TEST(Spectral, EnergyIdentityOnRandomSets) {
    const Field F = Field::create(5, 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointSet E = random_subset(F, 2, 2, 20, 500 + seed);
        for (unsigned k = 1; k <= 3; ++k) EXPECT_LE(energy_identity_check(E, k).residual, 1e-9);
    }
}

TEST(Spectral, TranslationInvariance) {
    const Field F = Field::create(3, 2);
    const Space S(F, 2);
    CounterRng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const PointSet E = random_set(S, 12, rng.next());
        const PointSet T = E.translate(rng.below(S.size()));
        for (double u : {1.0, 2.0, 4.0, kInfinity}) {
            EXPECT_NEAR(lp_norm(fourier(E), u), lp_norm(fourier(T), u), 1e-10);
        }
    }
}

TEST(Spectral, RejectsBadExponentAndBudget) {
    const PointSet E = full_space(Space(Field::create(3, 1), 2));
    EXPECT_THROW(lp_norm(fourier(E), 0.5), DomainError);
    EXPECT_THROW(fourier(full_space(Space(Field::create(3, 1), 8)), FourierMethod::fast, 1000), BudgetError);
}

TEST(Spectral, CsvHasOneRowPerFrequency) {
    const PointSet E(Space(Field::create(3, 1), 2), {0, 4});
    std::ostringstream out;
    write_spectrum_csv(out, fourier(E));
    std::istringstream in(out.str());
    std::string line;
    int rows = 0;
    std::getline(in, line);
    EXPECT_EQ(line, "m,re,im");
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 9);
}

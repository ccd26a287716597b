#include <gtest/gtest.h>

#include "fqsalem/ranges.hpp"

using namespace fqsalem;

namespace {

const Rational kQuarter(1, 4), kHalf(1, 2);

const SCase& find_case(const SRange& r, const std::string& label) {
    for (const auto& c : r.cases) {
        if (c.label == label) return c;
    }
    throw std::runtime_error("no case " + label);
}

}  // namespace

TEST(Ranges, ConjecturedAlpha) {
    EXPECT_EQ(conjectured_alpha(2, kHalf), Rational(1));
    EXPECT_EQ(conjectured_alpha(3, kHalf), Rational(1));            // (d+1)/(8s)
    EXPECT_EQ(conjectured_alpha(3, kQuarter), Rational(2));
    EXPECT_EQ(conjectured_alpha(4, Rational(3, 10)), Rational(2));  // s below (d+2)/(4d): d/2
    EXPECT_EQ(conjectured_alpha(4, kHalf), Rational(3, 2));
    EXPECT_EQ(conjectured_alpha(4, Rational(3, 8)), Rational(2));   // both branches agree at the switch
    EXPECT_THROW(conjectured_alpha(4, Rational(3, 5)), DomainError);
    EXPECT_THROW(conjectured_alpha(1, kHalf), DomainError);
}

TEST(Ranges, TheoremThreshold) {
    const auto a = thm1_threshold(2, kHalf);
    EXPECT_EQ(a.value, Rational(4, 3));
    EXPECT_EQ(a.branch, "(d+2)/(4s+1)");
    EXPECT_EQ(a.incidence_salem, Rational(3, 2));
    const auto b = thm1_threshold(4, kHalf);
    EXPECT_EQ(b.value, Rational(2));
    EXPECT_EQ(b.branch, "tie");
    EXPECT_EQ(thm1_threshold(4, kQuarter).branch, "(d+2)/(4s+1)");
    EXPECT_EQ(thm1_threshold(4, kQuarter).value, Rational(3));
    EXPECT_EQ(thm1_threshold(8, kHalf).branch, "(d+4)/(8s)");
    EXPECT_EQ(thm1_threshold(8, kHalf).value, Rational(3));
    for (unsigned d = 2; d <= 64; ++d) {
        const Rational s = thm1_crossover(d);
        if (s > kHalf) continue;
        EXPECT_EQ(thm1_threshold(d, s).branch, "tie") << d;
    }
}

TEST(Ranges, FraserAndSphere) {
    EXPECT_EQ(fraser_threshold(4, kHalf), Rational(2));
    EXPECT_EQ(fraser_threshold(3, kQuarter), Rational(3));
    EXPECT_EQ(sphere_threshold(3, kHalf), Rational(4, 3));
    for (unsigned d = 3; d <= 40; ++d) {
        const Rational s(d + 2, 4 * d);
        if (s > kHalf) continue;
        EXPECT_EQ(sphere_threshold(d, s), Rational(d, 2)) << d;
    }
    EXPECT_THROW(sphere_threshold(2, kHalf), DomainError);
}

TEST(Ranges, ThresholdsAreMonotoneAndOrdered) {
    for (unsigned d = 4; d <= 30; ++d) {
        Rational prev_thm(1000), prev_fraser(1000);
        for (int k = 0; k <= 100; ++k) {
            const Rational s = kQuarter + Rational(k, 400);
            const Rational t = thm1_threshold(d, s).value;
            const Rational f = fraser_threshold(d, s);
            EXPECT_LE(t, f) << d << " " << s.str();
            EXPECT_LE(t, prev_thm);
            EXPECT_LT(f, prev_fraser);
            prev_thm = t;
            prev_fraser = f;
            EXPECT_LT(sphere_threshold(d, s), thm1_threshold(d, s).incidence_any);
        }
    }
}

TEST(Ranges, FourCaseTableEndpoints) {
    const auto even = salem_s_ranges({6, Rational(7, 24), Geometry::sphereEven, std::nullopt, std::nullopt});
    ASSERT_EQ(even.cases.size(), 4u);
    EXPECT_EQ(find_case(even, "(i)").s_hi, kQuarter + Rational(1, 12));  // 1/4 + 1/(2d)
    EXPECT_EQ(find_case(even, "(ii)").s_hi, kQuarter + Rational(1, 20));
    EXPECT_EQ(find_case(even, "(iv)").s_hi, kHalf);
    const auto& i = find_case(even, "(i)");
    ASSERT_TRUE(i.window_lo.has_value());
    EXPECT_EQ(*i.window_lo, Rational(4) / (4 * (1 - 2 * Rational(7, 24))));
    EXPECT_EQ(*i.window_hi, Rational(3));
    EXPECT_TRUE(find_case(even, "(ii)").window_lo.has_value());
    EXPECT_FALSE(find_case(even, "(iii)").window_lo.has_value());

    const auto odd = salem_s_ranges({5, Rational(5, 16), Geometry::sphereOdd, std::nullopt, std::nullopt});
    EXPECT_EQ(find_case(odd, "(i)").s_hi, kQuarter + Rational(1, 12));  // 1/4 + 1/(2(d+1))
    EXPECT_EQ(*find_case(odd, "(iii)").window_hi, Rational(4));         // 1/(4s - 1) = d - 1 at the switch

    for (unsigned d = 4; d <= 64; d += 2) {
        const auto r = salem_s_ranges({d, kQuarter, Geometry::sphereEven, std::nullopt, std::nullopt});
        const auto& c1 = find_case(r, "(i)");
        EXPECT_EQ(c1.s_hi, kQuarter + Rational(1, 2 * static_cast<std::int64_t>(d)));
        EXPECT_EQ(find_case(r, "(iii)").s_lo, find_case(r, "(ii)").s_hi);
        EXPECT_EQ(*c1.window_lo, Rational(d - 2, 2));
    }
    EXPECT_THROW(salem_s_ranges({5, kHalf, Geometry::sphereEven, std::nullopt, std::nullopt}), DomainError);
    EXPECT_THROW(salem_s_ranges({4, kHalf, Geometry::sphereOdd, std::nullopt, std::nullopt}), DomainError);
}

TEST(Ranges, CrossoverIdentities) {
    // At each crossover, the window endpoints of adjacent cases agree.
    for (unsigned d = 4; d <= 64; ++d) {
        const Rational D(d);
        const Rational s_i = kQuarter + 1 / (2 * D);
        // (d-2)/(4(1-2s)) = d/2 at s = 1/4 + 1/(2d)
        EXPECT_EQ(Rational(d - 2) / (4 * (1 - 2 * s_i)), D / 2) << d;
        // 1/(4s-1) = d/2 at the same s
        EXPECT_EQ(1 / (4 * s_i - 1), D / 2) << d;
        // 1/(4s-1) = d-1 at s = 1/4 + 1/(4(d-1))
        const Rational s_ii = kQuarter + 1 / (4 * (D - 1));
        EXPECT_EQ(1 / (4 * s_ii - 1), D - 1) << d;
    }
    for (unsigned d = 2; d <= 64; ++d) {
        const Rational s = thm1_crossover(d);
        const Rational D(d);
        EXPECT_EQ((D + 2) / (4 * s + 1), (D + 4) / (8 * s)) << d;
    }
}

TEST(Ranges, OddPrimitiveAndEps) {
    const auto r = salem_s_ranges({5, kQuarter, Geometry::sphereOddPrimitive, std::nullopt, Rational(1, 2)});
    EXPECT_EQ(r.cases.size(), 12u);
    EXPECT_EQ(*find_case(r, "improved energy (i)").window_hi, Rational(9, 4));
    EXPECT_THROW(salem_s_ranges({5, kQuarter, Geometry::sphereOddPrimitive, std::nullopt, Rational(3)}), DomainError);
    EXPECT_THROW(salem_s_ranges({5, kQuarter, Geometry::sphereOddPrimitive, std::nullopt, Rational(0)}), DomainError);
    EXPECT_EQ(salem_s_ranges({5, kQuarter, Geometry::sphereOddPrimitive, std::nullopt, std::nullopt}).cases.size(), 8u);
}

TEST(Ranges, GenericSubgroupParaboloid) {
    const auto g = salem_s_ranges({3, kQuarter, Geometry::generic, std::nullopt, std::nullopt});
    ASSERT_EQ(g.cases.size(), 1u);
    EXPECT_EQ(*g.cases[0].window_hi, Rational(3));
    const auto sg = salem_s_ranges({5, Rational(1, 3), Geometry::subgroup, std::nullopt, std::nullopt});
    EXPECT_TRUE(sg.cases[0].s_hi_open);
    EXPECT_EQ(*sg.cases[0].window_hi, Rational(3));
    EXPECT_FALSE(salem_s_ranges({5, Rational(7, 18), Geometry::subgroup, std::nullopt, std::nullopt}).cases[0].window_hi);
    EXPECT_NO_THROW(salem_s_ranges({7, kQuarter, Geometry::paraboloid, std::nullopt, std::nullopt}));
    EXPECT_THROW(salem_s_ranges({5, kQuarter, Geometry::paraboloid, std::nullopt, std::nullopt}), DomainError);
}

TEST(Ranges, Variety) {
    EXPECT_EQ(variety_gamma(1), Rational(1));
    EXPECT_EQ(variety_gamma(2), Rational(1, 4));
    EXPECT_EQ(variety_gamma(3), Rational(1, 11));
    const VarietyParams v{2, Rational(0), Rational(2)};
    const auto r = salem_s_ranges({5, Rational(5, 16), Geometry::variety, v, std::nullopt});
    ASSERT_EQ(r.cases.size(), 1u);
    EXPECT_EQ(r.cases[0].s_hi, Rational(5, 16));
    EXPECT_TRUE(r.cases[0].window_lo.has_value());
    ASSERT_TRUE(r.nontrivial.has_value());
    EXPECT_FALSE(*r.nontrivial);  // 1/4 < 2/6
    EXPECT_TRUE(*salem_s_ranges({7, kQuarter, Geometry::variety, VarietyParams{2, 0, 1}, std::nullopt}).nontrivial);
    EXPECT_FALSE(salem_s_ranges({5, Rational(1, 3), Geometry::variety, v, std::nullopt}).cases[0].window_lo);
    EXPECT_THROW(salem_s_ranges({5, kQuarter, Geometry::variety, std::nullopt, std::nullopt}), DomainError);
    EXPECT_THROW(salem_s_ranges({5, kQuarter, Geometry::variety, VarietyParams{2, 2, 2}, std::nullopt}), DomainError);
}

TEST(Ranges, Corollaries) {
    EXPECT_EQ(corollary_threshold(CorollaryKind::multigroup, 4), Rational(2));
    EXPECT_THROW(corollary_threshold(CorollaryKind::multigroup, 3), DomainError);
    EXPECT_EQ(corollary_threshold(CorollaryKind::subgroup, 8), Rational(108, 224));
    EXPECT_LT(corollary_threshold(CorollaryKind::subgroup, 8), kHalf);
    const VarietyParams v{2, Rational(0), Rational(2)};
    EXPECT_EQ(corollary_threshold(CorollaryKind::variety, 5, v), min(Rational(28, 9), Rational(18, 5)));
    EXPECT_EQ(corollary_threshold(CorollaryKind::variety, 5, v), Rational(28, 9));
    EXPECT_THROW(corollary_threshold(CorollaryKind::variety, 5), DomainError);
}

TEST(Ranges, ConditionalExponents) {
    const auto ex = kohsharp_exponents(5);
    ASSERT_EQ(ex.size(), 2u);
    EXPECT_EQ(ex[0].value, Rational(9, 4));
    EXPECT_EQ(ex[1].value, Rational(2));
    for (const auto& e : ex) EXPECT_FALSE(e.condition.empty());
    EXPECT_THROW(kohsharp_exponents(2), DomainError);
}

TEST(Ranges, GeometryTagsRoundTrip) {
    for (auto g : {Geometry::generic, Geometry::sphereEven, Geometry::sphereOdd, Geometry::sphereOddPrimitive,
                   Geometry::paraboloid, Geometry::variety, Geometry::subgroup}) {
        EXPECT_EQ(parse_geometry(to_string(g)), g);
    }
    EXPECT_THROW(parse_geometry("torus"), DomainError);
}

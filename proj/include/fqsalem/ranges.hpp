// Exact-rational evaluators for distance thresholds and for the s-ranges in
// which structured sets (spheres, paraboloids, subgroup powers, variety subsets)
// are (4, s)-Salem. Exponents are exponents of q throughout.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace fqsalem {

inline void require_s(const Rational& s) {
    if (s < Rational(1, 4) || s > Rational(1, 2)) throw DomainError("s must lie in [1/4, 1/2], got " + s.str());
}

inline void require_d(unsigned d, unsigned lo = 2) {
    if (d < lo) throw DomainError("dimension must be at least " + std::to_string(lo));
}

/// Conjectured smallest size exponent forcing |Delta(E)| >> q for (4, s)-Salem E.
inline Rational conjectured_alpha(unsigned d, const Rational& s) {
    require_d(d);
    require_s(s);
    const Rational D(d);
    if (d == 2) return 1;
    if (d % 2 == 1) return (D + 1) / (8 * s);
    return s <= (D + 2) / (4 * D) ? D / 2 : (D + 2) / (8 * s);
}

/// min{(d+2)/(4s+1), (d+4)/(8s)} and which side attains it.
struct ThresholdChoice {
    Rational value;
    Rational incidence_any;    ///< (d+2)/(4s+1), arbitrary-set incidence route
    Rational incidence_salem;  ///< (d+4)/(8s), Salem incidence route
    std::string branch;        ///< "(d+2)/(4s+1)", "(d+4)/(8s)" or "tie"
};

inline ThresholdChoice thm1_threshold(unsigned d, const Rational& s) {
    require_d(d);
    require_s(s);
    const Rational D(d);
    ThresholdChoice c;
    c.incidence_any = (D + 2) / (4 * s + 1);
    c.incidence_salem = (D + 4) / (8 * s);
    c.value = min(c.incidence_any, c.incidence_salem);
    c.branch = c.incidence_any == c.incidence_salem ? "tie"
               : c.incidence_any < c.incidence_salem ? "(d+2)/(4s+1)"
                                                      : "(d+4)/(8s)";
    return c;
}

/// The s at which the two branches of thm1_threshold meet: 1/4 + 1/d.
inline Rational thm1_crossover(unsigned d) { return Rational(1, 4) + Rational(1, d); }

/// d/(4s): size exponent past which the Salem difference-set chain gives |Delta| >> q.
inline Rational fraser_threshold(unsigned d, const Rational& s) {
    require_d(d);
    require_s(s);
    return Rational(d) / (4 * s);
}

/// (d+1)/(4s+1) for Salem subsets of a sphere of nonzero radius, d >= 3.
inline Rational sphere_threshold(unsigned d, const Rational& s) {
    require_d(d, 3);
    require_s(s);
    return Rational(d + 1) / (4 * s + 1);
}

/// gamma(n) = 1 / (2^{n+1} - n - 2).
inline Rational variety_gamma(unsigned n) {
    if (n < 1 || n > 60) throw DomainError("variety dimension must lie in [1, 60]");
    const std::int64_t den = (std::int64_t{1} << (n + 1)) - static_cast<std::int64_t>(n) - 2;
    return Rational(1, den);
}

// ---------------------------------------------------------------------------
// s-range tables

enum class Geometry { generic, sphereEven, sphereOdd, sphereOddPrimitive, paraboloid, variety, subgroup };

inline std::string to_string(Geometry g) {
    switch (g) {
        case Geometry::generic: return "generic";
        case Geometry::sphereEven: return "sphereEven";
        case Geometry::sphereOdd: return "sphereOdd";
        case Geometry::sphereOddPrimitive: return "sphereOddPrimitive";
        case Geometry::paraboloid: return "paraboloid";
        case Geometry::variety: return "variety";
        case Geometry::subgroup: return "subgroup";
    }
    return "?";
}

inline Geometry parse_geometry(const std::string& s) {
    for (auto g : {Geometry::generic, Geometry::sphereEven, Geometry::sphereOdd, Geometry::sphereOddPrimitive,
                   Geometry::paraboloid, Geometry::variety, Geometry::subgroup}) {
        if (to_string(g) == s) return g;
    }
    throw DomainError("unknown geometry tag '" + s + "'");
}

struct VarietyParams {
    unsigned n = 2;     ///< dimension of the variety
    Rational ell = 0;   ///< coset content t(V) = q^ell
    Rational alpha = 1; ///< |E| = q^alpha
};

struct ThresholdQuery {
    unsigned d = 2;
    Rational s = Rational(1, 2);
    Geometry tag = Geometry::generic;
    std::optional<VarietyParams> variety;
    std::optional<Rational> eps;
};

/// One row of an s-range table: for s in [s_lo, s_hi] (s_hi open when flagged),
/// sets with q^lo << |E| << q^hi are (4, s)-Salem.
struct SCase {
    std::string label;
    Rational s_lo;
    Rational s_hi;
    bool s_hi_open = false;
    std::string lo_formula;
    std::string hi_formula;
    std::optional<Rational> window_lo;  ///< evaluated at the query s when s lies in the interval
    std::optional<Rational> window_hi;
    [[nodiscard]] bool contains(const Rational& s) const { return s >= s_lo && (s_hi_open ? s < s_hi : s <= s_hi); }
};

struct SRange {
    std::vector<SCase> cases;
    std::optional<bool> nontrivial;  ///< variety tag: gamma(1 - ell/alpha) >= 2/(d+1)
};

namespace detail {

using WindowFn = Rational (*)(unsigned, const Rational&, const Rational&);

inline void add_case(SRange& out, const ThresholdQuery& q, std::string label, Rational s_lo, Rational s_hi,
                     bool open, std::string lo_text, std::string hi_text, WindowFn lo, WindowFn hi) {
    SCase c{std::move(label), s_lo, s_hi, open, std::move(lo_text), std::move(hi_text), std::nullopt, std::nullopt};
    const Rational e = q.eps.value_or(Rational(0));
    if (c.contains(q.s)) {
        c.window_lo = lo(q.d, q.s, e);
        c.window_hi = hi(q.d, q.s, e);
    }
    out.cases.push_back(std::move(c));
}

// Four-case table shared by the sphere/paraboloid estimates: the energy bound
// |E|^3/q + q^{(d - shift)/2} |E|^2 with shift = 2 (even spheres, paraboloids,
// primitive odd spheres), 1 (odd spheres) or 2 + eps.
inline void four_cases(SRange& out, const ThresholdQuery& q, const std::string& prefix, int variant) {
    const Rational D(q.d);
    const Rational e = q.eps.value_or(Rational(0));
    // Crossover exponent K where |E|^3/q meets q^{(d-shift)/2}|E|^2: K = (d - shift)/2 + 1.
    Rational K;
    std::string k_text, lo_text;
    WindowFn lo_i = nullptr, k_fn = nullptr;
    if (variant == 0) {
        K = D / 2;
        k_text = "d/2";
        lo_text = "(d-2)/(4(1-2s))";
        lo_i = [](unsigned d, const Rational& s, const Rational&) { return Rational(d - 2) / (4 * (1 - 2 * s)); };
        k_fn = [](unsigned d, const Rational&, const Rational&) { return Rational(d, 2); };
    } else if (variant == 1) {
        K = (D + 1) / 2;
        k_text = "(d+1)/2";
        lo_text = "(d-1)/(4(1-2s))";
        lo_i = [](unsigned d, const Rational& s, const Rational&) { return Rational(d - 1) / (4 * (1 - 2 * s)); };
        k_fn = [](unsigned d, const Rational&, const Rational&) { return Rational(d + 1, 2); };
    } else {
        K = (D - e) / 2;
        k_text = "(d-eps)/2";
        lo_text = "(d-2-eps)/(4(1-2s))";
        lo_i = [](unsigned d, const Rational& s, const Rational& eps) { return (Rational(d - 2) - eps) / (4 * (1 - 2 * s)); };
        k_fn = [](unsigned d, const Rational&, const Rational& eps) { return (Rational(d) - eps) / 2; };
    }
    const Rational quarter(1, 4);
    const Rational s_i = quarter + 1 / (4 * K);  // where the case (i) window closes
    const Rational s_ii = quarter + 1 / (4 * (D - 1));
    const Rational half(1, 2);
    auto dm1 = [](unsigned d, const Rational&, const Rational&) { return Rational(d - 1); };
    auto inv = [](unsigned, const Rational& s, const Rational&) { return 1 / (4 * s - 1); };
    add_case(out, q, prefix + "(i)", quarter, s_i, false, lo_text, k_text, lo_i, k_fn);
    add_case(out, q, prefix + "(ii)", quarter, s_ii, false, k_text, "d-1", k_fn, dm1);
    add_case(out, q, prefix + "(iii)", s_ii, s_i, false, k_text, "1/(4s-1)", k_fn, inv);
    add_case(out, q, prefix + "(iv)", quarter, half, false, "d-1", "d-1", dm1, dm1);
}

}  // namespace detail

/// s-range table for the query's geometry, with size windows evaluated at query.s.
inline SRange salem_s_ranges(const ThresholdQuery& q) {
    require_s(q.s);
    require_d(q.d);
    SRange out;
    const Rational quarter(1, 4);
    switch (q.tag) {
        case Geometry::generic: {
            auto zero = [](unsigned, const Rational&, const Rational&) { return Rational(0); };
            auto full = [](unsigned d, const Rational&, const Rational&) { return Rational(d); };
            detail::add_case(out, q, "every set", quarter, quarter, false, "0", "d", zero, full);
            break;
        }
        case Geometry::sphereEven:
            if (q.d < 4 || q.d % 2 != 0) throw DomainError("sphereEven needs even d >= 4");
            detail::four_cases(out, q, "", 0);
            break;
        case Geometry::paraboloid:
            if (q.d < 3 || (q.d % 2 == 1 && q.d % 4 != 3)) {
                throw DomainError("paraboloid needs even d >= 4, or d = 3 mod 4 with q = 3 mod 4");
            }
            detail::four_cases(out, q, "", 0);
            break;
        case Geometry::sphereOdd:
            if (q.d < 3 || q.d % 2 == 0) throw DomainError("sphereOdd needs odd d >= 3");
            detail::four_cases(out, q, "", 1);
            break;
        case Geometry::sphereOddPrimitive:
            if (q.d < 3 || q.d % 2 == 0) throw DomainError("sphereOddPrimitive needs odd d >= 3");
            detail::four_cases(out, q, "any radius ", 1);
            detail::four_cases(out, q, "primitive radius ", 0);
            if (q.eps) {
                if (*q.eps <= Rational(0)) throw DomainError("eps must be positive");
                if (*q.eps >= Rational(q.d - 2)) throw DomainError("eps must be smaller than d - 2");
                detail::four_cases(out, q, "improved energy ", 2);
            }
            break;
        case Geometry::subgroup: {
            auto zero = [](unsigned, const Rational&, const Rational&) { return Rational(0); };
            auto cap = [](unsigned d, const Rational&, const Rational&) { return Rational(3 * static_cast<std::int64_t>(d), 5); };
            detail::add_case(out, q, "subgroup power", quarter, Rational(7, 18), true, "0", "3d/5", zero, cap);
            break;
        }
        case Geometry::variety: {
            if (!q.variety) throw DomainError("variety tag needs n, ell and alpha");
            const auto& v = *q.variety;
            if (v.n < 2) throw DomainError("variety dimension n must be at least 2");
            if (v.ell < Rational(0) || !(v.alpha > v.ell)) throw DomainError("variety needs alpha > ell >= 0");
            const Rational g = variety_gamma(v.n);
            const Rational top = (1 + g) / 4 - g / 4 * (v.ell / v.alpha);
            SCase c{"variety subset", quarter, top, false, "alpha", "alpha", std::nullopt, std::nullopt};
            if (c.contains(q.s)) {
                c.window_lo = v.alpha;
                c.window_hi = v.alpha;
            }
            out.cases.push_back(std::move(c));
            out.nontrivial = g * (1 - v.ell / v.alpha) >= Rational(2, static_cast<std::int64_t>(q.d) + 1);
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Corollary thresholds

enum class CorollaryKind { multigroup, subgroup, variety };

/// multigroup: d/4 + 1 (Lambda_4 << |E|^2, d >= 4); subgroup: (9d+36)/(28d) for |A|;
/// variety: min{(d+2+g l)/(2+g), (d+4+2 g l)/(2+2g)} with g = gamma(n).
inline Rational corollary_threshold(CorollaryKind kind, unsigned d, std::optional<VarietyParams> variety = std::nullopt) {
    require_d(d);
    const Rational D(d);
    switch (kind) {
        case CorollaryKind::multigroup:
            if (d < 4) throw DomainError("multigroup threshold needs d >= 4");
            return D / 4 + 1;
        case CorollaryKind::subgroup:
            return (9 * D + 36) / (28 * D);
        case CorollaryKind::variety: {
            if (!variety) throw DomainError("variety threshold needs n and ell");
            const Rational g = variety_gamma(variety->n);
            const Rational l = variety->ell;
            return min((D + 2 + g * l) / (2 + g), (D + 4 + 2 * g * l) / (2 + 2 * g));
        }
    }
    return 0;
}

/// Exponents that hold only under unproven hypotheses; never asserted against data.
struct ConditionalExponent {
    std::string label;
    std::string condition;
    Rational value;
};

inline std::vector<ConditionalExponent> kohsharp_exponents(unsigned d) {
    require_d(d, 3);
    const Rational D(d);
    return {
        {"primitive sphere", "conditional on the conjectured thresholds", D / 2 - Rational(1, 4)},
        {"primitive sphere, sharp energy",
         "conditional on the conjectured thresholds and Lambda_4 << |E|^3/q + q^{(d-3)/2}|E|^2", (D - 1) / 2},
    };
}

}  // namespace fqsalem

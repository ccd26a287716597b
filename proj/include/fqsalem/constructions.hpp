// Explicit point sets: rotation orbits on the unit circle, isotropic subspaces,
// products, Bernoulli thinning, few-distance witnesses, subgroup powers and the
// two-set sharpness pair.
#pragma once

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "distance.hpp"
#include "energy.hpp"
#include "field.hpp"
#include "geometry.hpp"

namespace fqsalem {

/// Uniformly random n-subset of the space, deterministic in seed.
inline PointSet random_set(const Space& S, std::uint64_t n, std::uint64_t seed, std::uint64_t budget = kDefaultBudget) {
    if (n > S.size()) throw DomainError("requested more points than the space holds");
    CounterRng rng(seed);
    std::vector<Index> pts;
    if (n * 2 > S.size()) {
        S.require_scan(budget);
        std::vector<Index> all(S.size());
        for (Index i = 0; i < S.size(); ++i) all[i] = i;
        for (std::uint64_t i = 0; i < n; ++i) std::swap(all[i], all[i + rng.below(S.size() - i)]);
        pts.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
    } else {
        std::set<Index> chosen;
        while (chosen.size() < n) chosen.insert(rng.below(S.size()));
        pts.assign(chosen.begin(), chosen.end());
    }
    return PointSet(S, std::move(pts));
}

// ---------------------------------------------------------------------------
// Rotation orbits

/// Order of the orbit rotation: (q+1)/(p+1) when q = 3 mod 4, else (q-1)/(p-1).
inline std::uint64_t orbit_order(const Field& F) {
    const std::uint64_t q = F.q(), p = F.p();
    if (q % 4 == 3) {
        if ((q + 1) % (p + 1) != 0) throw DomainError("orbit needs (p+1) | (q+1)");
        return (q + 1) / (p + 1);
    }
    return (q - 1) / (p - 1);
}

/// Orbit of `base` (default (0, 1)) under a rotation of order orbit_order(F).
inline PointSet rotation_orbit(const Field& F, std::optional<Vector> base = std::nullopt) {
    const Space S(F, 2);
    const Vector x = base ? *base : Vector{F.zero(), F.one()};
    if (x.size() != 2) throw DomainError("orbit base point must lie in the plane");
    if (norm(F, x) != F.one()) throw DomainError("orbit base point must lie on the unit circle");
    const std::uint64_t n = orbit_order(F);
    const Rotation theta = rotation_power(F, rotation_group_generator(F), rotation_group_order(F) / n);
    std::vector<Index> pts;
    pts.reserve(n);
    Index cur = S.encode(x);
    for (std::uint64_t i = 0; i < n; ++i) {
        pts.push_back(cur);
        cur = rotate(S, theta, cur);
    }
    return PointSet(S, std::move(pts));
}

inline PointSet rotation_orbit(std::uint64_t p, unsigned r, std::optional<Vector> base = std::nullopt) {
    return rotation_orbit(Field::create(p, r), std::move(base));
}

// ---------------------------------------------------------------------------
// Isotropic subspaces

/// d/2 mutually orthogonal null vectors exist in F_q^d when d = 0 mod 4, or d is
/// even and q = 1 mod 4.
inline bool isotropic_admissible(const Field& F, unsigned d) {
    if (d == 0 || d % 2 != 0) return false;
    return d % 4 == 0 || F.q() % 4 == 1;
}

/// First m vectors of the explicit null frame: pairs e_{2j} + i e_{2j+1} with
/// i^2 = -1 when q = 1 mod 4, otherwise 4-blocks (1,0,a,b), (0,1,b,-a) with a^2 + b^2 = -1.
inline std::vector<Vector> isotropic_frame(const Field& F, unsigned d, unsigned m) {
    if (!isotropic_admissible(F, d)) {
        throw DomainError("no isotropic frame: need d = 0 mod 4, or d even with q = 1 mod 4");
    }
    if (m > d / 2) throw DomainError("isotropic dimension exceeds d/2");
    std::vector<Vector> out;
    const Elem minus_one = F.neg(F.one());
    if (F.q() % 4 == 1) {
        const Elem i = sqrt_in_field(F, minus_one).front();
        for (unsigned j = 0; j < m; ++j) {
            Vector v(d, F.zero());
            v[2 * j] = F.one();
            v[2 * j + 1] = i;
            out.push_back(std::move(v));
        }
        return out;
    }
    const auto [a, b] = two_square_decomposition(F, minus_one);
    for (unsigned j = 0; out.size() < m; ++j) {
        Vector u(d, F.zero()), v(d, F.zero());
        u[4 * j] = F.one();
        u[4 * j + 2] = a;
        u[4 * j + 3] = b;
        v[4 * j + 1] = F.one();
        v[4 * j + 2] = b;
        v[4 * j + 3] = F.neg(a);
        out.push_back(std::move(u));
        if (out.size() < m) out.push_back(std::move(v));
    }
    return out;
}

/// F_q-span of the given vectors (as a set, so dependent inputs are fine).
inline PointSet span(const Space& S, const std::vector<Vector>& basis, std::uint64_t budget = kDefaultBudget) {
    const Field& F = S.field();
    if (checked_pow(F.q(), static_cast<unsigned>(basis.size())) > budget) throw BudgetError("span exceeds budget");
    std::vector<Index> gens;
    for (const auto& v : basis) gens.push_back(S.encode(v));
    std::vector<Index> pts{0};
    for (auto g : gens) {
        std::vector<Index> next;
        next.reserve(pts.size() * F.q());
        for (std::uint64_t c = 0; c < F.q(); ++c) {
            const Index cg = S.scale(Elem{c}, g);
            for (auto x : pts) next.push_back(S.add(x, cg));
        }
        pts = std::move(next);
    }
    return PointSet(S, std::move(pts));
}

/// Span of m explicit mutually orthogonal null vectors; q^m points, distance set {0}.
inline PointSet isotropic_subspace(const Field& F, unsigned d, unsigned m, std::uint64_t budget = kDefaultBudget) {
    const Space S(F, d);
    return span(S, isotropic_frame(F, d, m), budget);
}

/// Exhaustive search for m independent, mutually orthogonal null vectors, taking
/// the canonically smallest choice at each step. A cross-check for tiny spaces.
inline std::optional<PointSet> isotropic_subspace_search(const Field& F, unsigned d, unsigned m,
                                                         std::uint64_t budget = kDefaultBudget) {
    const Space S(F, d);
    S.require_scan(budget);
    std::vector<Index> nulls;
    for (Index i = 1; i < S.size(); ++i) {
        if (S.norm(i).v == 0) nulls.push_back(i);
    }
    std::vector<Index> chosen;
    // Backtracking over candidates in increasing order.
    std::function<bool(std::size_t, const PointSet&)> extend = [&](std::size_t from, const PointSet& current) {
        if (chosen.size() == m) return true;
        for (std::size_t k = from; k < nulls.size(); ++k) {
            const Index v = nulls[k];
            if (current.contains(v)) continue;
            bool orth = true;
            for (auto c : chosen) orth = orth && S.dot(c, v).v == 0;
            if (!orth) continue;
            chosen.push_back(v);
            std::vector<Vector> basis;
            for (auto c : chosen) basis.push_back(S.decode(c));
            if (extend(k + 1, span(S, basis, budget))) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!extend(0, PointSet(S, {0}))) return std::nullopt;
    std::vector<Vector> basis;
    for (auto c : chosen) basis.push_back(S.decode(c));
    return span(S, basis, budget);
}

// ---------------------------------------------------------------------------
// Products, thinning, subgroups

/// A x B in F_q^{d1 + d2}.
inline PointSet product_set(const PointSet& A, const PointSet& B) {
    if (!(A.field() == B.field())) throw DomainError("product of sets over different fields");
    const Space S(A.field(), A.dim() + B.dim());
    const std::uint64_t shift = B.space().size();
    std::vector<Index> pts;
    pts.reserve(A.size() * B.size());
    for (auto a : A) {
        for (auto b : B) pts.push_back(a * shift + b);
    }
    return PointSet(S, std::move(pts));
}

/// Keeps x iff to_unit(counter_draw(seed, index(x))) < theta. Order independent.
inline PointSet bernoulli_thin(const PointSet& X, double theta, std::uint64_t seed) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("thinning probability must lie in [0, 1]");
    std::vector<Index> kept;
    for (auto x : X) {
        if (to_unit(counter_draw(seed, x)) < theta) kept.push_back(x);
    }
    return PointSet(X.space(), std::move(kept));
}

/// The first p^{r-1} canonical elements of F_q: the F_p-span of 1, x, ..., x^{r-2},
/// an additive subgroup of size q^{1 - 1/r}, as a set in F_q^1.
inline PointSet additive_subgroup_line(const Field& F) {
    const std::uint64_t n = F.q() / F.p();
    std::vector<Index> pts(n);
    for (std::uint64_t i = 0; i < n; ++i) pts[i] = i;
    return PointSet(Space(F, 1), std::move(pts));
}

/// The multiplicative subgroup of order m in F_q^*.
inline std::vector<Elem> multiplicative_subgroup(const Field& F, std::uint64_t m) {
    if (m == 0 || (F.q() - 1) % m != 0) throw DomainError("subgroup order must divide q - 1");
    const Elem h = F.pow(F.primitive(), (F.q() - 1) / m);
    std::vector<Elem> out;
    Elem cur = F.one();
    for (std::uint64_t i = 0; i < m; ++i) {
        out.push_back(cur);
        cur = F.mul(cur, h);
    }
    std::sort(out.begin(), out.end(), [](Elem a, Elem b) { return a.v < b.v; });
    return out;
}

/// A^d for the multiplicative subgroup A of order m.
inline PointSet subgroup_power(const Field& F, std::uint64_t m, unsigned d, std::uint64_t budget = kDefaultBudget) {
    const auto A = multiplicative_subgroup(F, m);
    if (checked_pow(m, d) > budget) throw BudgetError("subgroup power exceeds budget");
    std::vector<Index> line;
    for (auto a : A) line.push_back(a.v);
    PointSet E(Space(F, 1), line);
    const PointSet base = E;
    for (unsigned i = 1; i < d; ++i) E = product_set(E, base);
    return E;
}

// ---------------------------------------------------------------------------
// Few-distance witnesses

/// Result of conjecture_witness: the set plus the exponents it is built to hit.
struct WitnessResult {
    std::string branch;  ///< "orbit", "product", "thinnedProduct" or "oddProduct"
    PointSet set;
    Rational alpha;           ///< log_q of the small factor's size (1 - 1/r, or 1 for d = 2)
    Rational theta_exponent;  ///< thinning probability is q^theta_exponent
    double theta = 1.0;
    Rational target_exponent;      ///< limiting exponent d/2, (d+2)/(8s) or (d+1)/(8s)
    Rational finite_r_exponent;    ///< exponent of |E| at this r
};

inline void require_salem_range(const Rational& s) {
    if (s < Rational(1, 4) || s > Rational(1, 2)) throw DomainError("s must lie in [1/4, 1/2]");
}

/// Few-distance set in F_q^d (q = p^r) targeting Salem parameter s.
inline WitnessResult conjecture_witness(unsigned d, const Rational& s, std::uint64_t p, unsigned r, std::uint64_t seed,
                                        std::uint64_t budget = kDefaultBudget) {
    require_salem_range(s);
    if (d < 2) throw DomainError("dimension must be at least 2");
    const Field F = Field::create(p, r);
    const Rational alpha(static_cast<std::int64_t>(r) - 1, static_cast<std::int64_t>(r));
    const Rational D(static_cast<std::int64_t>(d));
    auto q_pow = [&](const Rational& e) { return std::pow(static_cast<double>(F.q()), e.to_double()); };

    if (d == 2) {
        return {"orbit", rotation_orbit(F), alpha, Rational(0), 1.0, Rational(1), alpha};
    }
    if (d % 2 == 0) {
        if (!isotropic_admissible(F, d - 2)) {
            throw DomainError("even-dimensional witness needs d - 2 = 0 mod 4, or q = 1 mod 4");
        }
        const PointSet A = rotation_orbit(F);
        const PointSet X = isotropic_subspace(F, d - 2, (d - 2) / 2, budget);
        if (s < (D + 2) / (4 * D)) {
            return {"product", product_set(A, X), alpha, Rational(0), 1.0, D / 2, alpha + (D - 2) / 2};
        }
        const Rational e = (2 * (1 - 2 * s) * (alpha + (D - 2) / 2) + (1 - D / 2)) / (4 * s);
        if (e > Rational(0)) {
            throw DomainError("thinning probability exceeds 1: need s >= (d+4a-2)/(4(d+2a-2)) with a = " + alpha.str());
        }
        const double theta = q_pow(e);
        return {"thinnedProduct", product_set(A, bernoulli_thin(X, theta, seed)), alpha, e, theta,
                (D + 2) / (8 * s), (D + 4 * alpha - 2) / (8 * s)};
    }
    if (!isotropic_admissible(F, d - 1)) {
        throw DomainError("odd-dimensional witness needs d = 1 mod 4, or q = 1 mod 4");
    }
    const PointSet A = additive_subgroup_line(F);
    const PointSet X = isotropic_subspace(F, d - 1, (d - 1) / 2, budget);
    const Rational e = (D + 1) * (1 - 4 * s) / (8 * s);
    const double theta = q_pow(e);
    return {"oddProduct", product_set(A, bernoulli_thin(X, theta, seed)), alpha, e, theta, (D + 1) / (8 * s),
            (D + 1) / (8 * s) + alpha - 1};
}

/// E = W x C_1 and F = W x {0}, W a maximal isotropic subspace of F_q^{d-2}.
/// Every distance between E and F equals 1.
inline std::pair<PointSet, PointSet> two_set_sharpness(const Field& F, unsigned d, std::uint64_t budget = kDefaultBudget) {
    if (d < 4 || !isotropic_admissible(F, d - 2)) {
        throw DomainError("two-set pair needs d = 2 mod 4, or d = 0 mod 4 with q = 1 mod 4");
    }
    const PointSet W = isotropic_subspace(F, d - 2, (d - 2) / 2, budget);
    const Space plane(F, 2);
    const PointSet circle = sphere(plane, F.one(), budget);
    const PointSet origin(plane, {0});
    return {product_set(W, circle), product_set(W, origin)};
}

}  // namespace fqsalem

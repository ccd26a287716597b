// Point-hyperplane incidences: exact weighted counts, the Salem counting lemmas,
// the b != 0 incidence theorem with its dilation trick, and the two multiset
// constructions that turn distance questions into incidence questions.
#pragma once

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "energy.hpp"
#include "geometry.hpp"

namespace fqsalem {

/// N(P, H) = sum over entries (a, b, m) of m * #{x in P : a.x = b}.
inline u128 count_incidences(const PointSet& P, const HyperplaneMultiset& H, std::uint64_t budget = kDefaultBudget) {
    if (!(P.space() == H.space())) throw DomainError("incidence count across different spaces");
    const auto entries = H.entries();
    for (const auto& e : entries) {
        if (e.a == 0 && !e.degenerate) throw DomainError("hyperplane with zero normal vector");
    }
    const Space& S = P.space();
    const Field& F = S.field();
    // Entries are sorted by a, so each distinct normal gets one histogram of a.x over P.
    std::size_t normals = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) normals += (i == 0 || entries[i].a != entries[i - 1].a) ? 1 : 0;
    if (checked_mul(P.size(), normals) > checked_mul(budget, 64)) throw BudgetError("incidence count exceeds budget");
    std::vector<std::uint64_t> hist(F.q());
    u128 total = 0;
    for (std::size_t i = 0; i < entries.size();) {
        const Index a = entries[i].a;
        std::fill(hist.begin(), hist.end(), 0);
        for (auto x : P) ++hist[S.dot(a, x).v];
        for (; i < entries.size() && entries[i].a == a; ++i) {
            total = checked_add(total, checked_mul(entries[i].mult, hist[entries[i].b.v]));
        }
    }
    return total;
}

/// Right-hand sides of the counting lemmas and the incidence theorem, all sharing
/// the main term |P||P'|/q.
struct IncidenceReport {
    u128 N = 0;
    std::uint64_t size_p = 0;
    std::uint64_t size_h = 0;  ///< |P'| with multiplicity
    std::uint64_t q = 0;
    unsigned d = 0;
    double s = 0.25;
    double C = 1.0;
    double main_term = 0;
    double rhs_l42 = 0;  ///< main + |P'|^{3/4} q^{d/4} |P|^{1-s}
    double rhs_l43 = 0;  ///< main + (sum m^{4/3})^{3/4} q^{d/4} |P|^{1-s}
    double rhs_l46 = 0;  ///< main + (sum m^2)^{1/2} q^{d/2} |P|^{1/2}
    double rhs_t61 = 0;  ///< main + |H|^{3/4} q^{e} |P|^{1-s}, e = (d-1)/4, or d/4 with b = 0 entries
    bool t61_weak = false;

    /// |P||P'|/q as an exact reduced fraction.
    [[nodiscard]] std::string main_term_exact() const {
        const u128 num = checked_mul(size_p, size_h);
        u128 den = q;
        u128 g = num, b = den;
        while (b != 0) {
            const u128 t = g % b;
            g = b;
            b = t;
        }
        if (g == 0) return "0";
        return den / g == 1 ? to_string(num / g) : to_string(num / g) + "/" + to_string(den / g);
    }
    [[nodiscard]] double ratio(double rhs) const { return rhs > 0 ? to_double(N) / rhs : (N == 0 ? 0.0 : kNaN); }
    static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
};

/// Theorem-style bound for I(P, H) with |H| counted with multiplicity.
struct IncidenceBound {
    double bound = 0;
    double ratio = 0;
    bool weak = false;  ///< some b = 0, exponent d/4 in place of (d-1)/4
};

inline IncidenceBound theorem61_bound(std::uint64_t size_p, const HyperplaneMultiset& H, double s, u128 incidences) {
    const double n = static_cast<double>(size_p);
    const double h = static_cast<double>(H.total());
    const double q = static_cast<double>(H.space().field().q());
    const double d = H.space().dim();
    IncidenceBound out;
    out.weak = H.has_zero_offset();
    const double e = out.weak ? d / 4.0 : (d - 1.0) / 4.0;
    out.bound = n * h / q + std::pow(h, 0.75) * std::pow(q, e) * std::pow(n, 1.0 - s);
    out.ratio = out.bound > 0 ? to_double(incidences) / out.bound : 0.0;
    return out;
}

inline IncidenceBound theorem61_bound(const PointSet& P, const HyperplaneMultiset& H, double s,
                                      std::uint64_t budget = kDefaultBudget) {
    return theorem61_bound(P.size(), H, s, count_incidences(P, H, budget));
}

/// Evaluates every counting-lemma bound for (P, H). With `s` absent the Salem
/// parameter of P at constant C is used.
inline IncidenceReport verify_counting_lemmas(const PointSet& P, const HyperplaneMultiset& H,
                                              std::optional<double> s = std::nullopt, double C = 1.0,
                                              std::uint64_t budget = kDefaultBudget) {
    IncidenceReport r;
    r.N = count_incidences(P, H, budget);
    r.size_p = P.size();
    r.size_h = H.total();
    r.q = P.field().q();
    r.d = P.dim();
    r.C = C;
    r.s = s ? *s : salem_parameter(P, C, true, budget).s;
    const double n = static_cast<double>(r.size_p);
    const double h = static_cast<double>(r.size_h);
    const double q = static_cast<double>(r.q);
    const double qd4 = std::pow(q, r.d / 4.0);
    const double tail = std::pow(n, 1.0 - r.s);
    r.main_term = n * h / q;
    r.rhs_l42 = r.main_term + std::pow(h, 0.75) * qd4 * tail;
    r.rhs_l43 = r.main_term + std::pow(H.power_sum(4.0 / 3.0), 0.75) * qd4 * tail;
    r.rhs_l46 = r.main_term + std::sqrt(to_double(H.square_sum())) * std::pow(q, r.d / 2.0) * std::sqrt(n);
    const auto t61 = theorem61_bound(r.size_p, H, r.s, r.N);
    r.rhs_t61 = t61.bound;
    r.t61_weak = t61.weak;
    return r;
}

/// {(lambda a, lambda b) : (a, b) in H, lambda != 0}. I(P, H) = N(P, dilate(H)) / (q - 1).
inline HyperplaneMultiset dilate_hyperplanes(const HyperplaneMultiset& H) {
    const Space& S = H.space();
    const Field& F = S.field();
    HyperplaneMultiset out(S);
    for (const auto& e : H.entries()) {
        if (e.b.v == 0) throw DomainError("dilation requires every offset b to be nonzero");
        for (std::uint64_t l = 1; l < F.q(); ++l) {
            const Elem lambda{l};
            out.add(S.scale(lambda, e.a), F.mul(lambda, e.b), e.mult, e.degenerate);
        }
    }
    return out;
}

/// Dilated points and zero-offset difference multiset for a set on a sphere.
struct SphereIncidenceSetup {
    PointSet points;           ///< { lambda a : a in E, lambda != 0 }
    HyperplaneMultiset diffs;  ///< { (a - b, 0) : a, b in E }, a = b entries flagged degenerate
    Elem radius;
    u128 lambda4 = 0;
};

inline SphereIncidenceSetup sphere_incidence_setup(const PointSet& E, std::uint64_t budget = kDefaultBudget) {
    if (E.empty()) throw DomainError("sphere setup needs a nonempty set");
    const Space& S = E.space();
    const Field& F = S.field();
    const Elem j = S.norm(E.points().front());
    for (auto x : E) {
        if (S.norm(x) != j) throw DomainError("set does not lie on a single sphere");
    }
    if (j.v == 0) throw DomainError("sphere setup needs nonzero radius");
    if (checked_mul(E.size(), E.size()) > budget) throw BudgetError("sphere setup exceeds budget");
    std::vector<Index> pts;
    pts.reserve(E.size() * (F.q() - 1));
    for (auto x : E) {
        for (std::uint64_t l = 1; l < F.q(); ++l) pts.push_back(S.scale(Elem{l}, x));
    }
    HyperplaneMultiset H(S);
    for (auto a : E) {
        for (auto b : E) H.add(S.sub(a, b), F.zero(), 1, true);
    }
    SphereIncidenceSetup out{PointSet(S, std::move(pts)), std::move(H), j, additive_energy(E, 2, budget)};
    if (out.diffs.square_sum() != out.lambda4) throw Error("internal: difference multiplicities do not match energy");
    return out;
}

/// Multisets behind the second-moment estimate. X_t collects pairs (y, z) with
/// ||y|| - ||z|| = t, and m_t(u) counts those with y - z = u. Since
/// ||x - y|| = ||x - z|| iff x.(y - z) = t/2, each (u, t) with multiplicity
/// m_t(u) becomes the hyperplane u.x = t/2.
struct DistanceEnergySetup {
    std::vector<std::uint64_t> x_sizes;  ///< |X_t| indexed by t
    HyperplaneMultiset hyperplanes;      ///< entries (u, t/2), the (0, 0) entry removed
    std::uint64_t zero_entry = 0;        ///< m_0(0) = |E|, accounted separately
    u128 sum_m_squared = 0;              ///< sum_t sum_u m_t(u)^2 including the removed entry
    u128 lambda4 = 0;
    u128 triples = 0;                    ///< #{(x, y, z) : ||x - y|| = ||x - z||} = N(E, P') + |E| m_0(0)
    bool on_sphere = false;

    [[nodiscard]] u128 x_total() const {
        u128 s = 0;
        for (auto c : x_sizes) s += c;
        return s;
    }
};

inline DistanceEnergySetup thm_distance_energy_setup(const PointSet& E, std::uint64_t budget = kDefaultBudget) {
    const Space& S = E.space();
    const Field& F = S.field();
    if (checked_mul(E.size(), E.size()) > budget) throw BudgetError("distance-energy setup exceeds budget");
    const Elem half = F.inv(F.from_int(2));
    DistanceEnergySetup out{std::vector<std::uint64_t>(F.q(), 0), HyperplaneMultiset(S)};
    std::map<std::pair<std::uint64_t, Index>, std::uint64_t> mult;
    std::vector<Elem> norms;
    norms.reserve(E.size());
    for (auto x : E) norms.push_back(S.norm(x));
    for (std::size_t i = 0; i < E.size(); ++i) {
        for (std::size_t k = 0; k < E.size(); ++k) {
            const Elem t = F.sub(norms[i], norms[k]);
            ++out.x_sizes[t.v];
            ++mult[{t.v, S.sub(E.points()[i], E.points()[k])}];
        }
    }
    for (const auto& [key, m] : mult) {
        out.sum_m_squared = checked_add(out.sum_m_squared, checked_mul(m, m));
        if (key.first == 0 && key.second == 0) {
            out.zero_entry = m;
        } else {
            out.hyperplanes.add(key.second, F.mul(Elem{key.first}, half), m);
        }
    }
    out.lambda4 = additive_energy(E, 2, budget);
    out.on_sphere = std::all_of(norms.begin(), norms.end(), [&](Elem n) { return n == norms.front(); });
    if (out.x_total() != checked_mul(E.size(), E.size())) throw Error("internal: X_t sizes do not sum to |E|^2");
    if (out.sum_m_squared > out.lambda4) throw Error("internal: multiplicity square sum exceeds energy");
    out.triples = checked_add(count_incidences(E, out.hyperplanes, budget), checked_mul(E.size(), out.zero_entry));
    return out;
}

}  // namespace fqsalem

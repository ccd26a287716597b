// Distance profiles nu(t), distance sets, second moments, the paraboloid lift
// and ratio verifiers for the distance-set lower bounds.
//
// nu(t) counts ordered pairs (x, y) in E x F with ||x - y|| = t, diagonal pairs
// included, so sum_t nu(t) = |E| |F| exactly.
#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "common.hpp"
#include "energy.hpp"
#include "geometry.hpp"

namespace fqsalem {

struct DistanceProfile {
    Field field;
    std::uint64_t size_e = 0;
    std::uint64_t size_f = 0;
    std::vector<std::uint64_t> nu;  ///< indexed by the canonical encoding of t

    /// Delta = { t : nu(t) > 0 }.
    [[nodiscard]] std::vector<Elem> support() const {
        std::vector<Elem> out;
        for (std::uint64_t t = 0; t < nu.size(); ++t) {
            if (nu[t] != 0) out.push_back(Elem{t});
        }
        return out;
    }
    [[nodiscard]] std::uint64_t distinct() const {
        std::uint64_t n = 0;
        for (auto c : nu) n += c != 0 ? 1 : 0;
        return n;
    }
    [[nodiscard]] u128 total() const {
        u128 s = 0;
        for (auto c : nu) s += c;
        return s;
    }
};

inline DistanceProfile distance_profile(const PointSet& E, const PointSet& F, std::uint64_t budget = kDefaultBudget) {
    if (!(E.space() == F.space())) throw DomainError("distance profile of sets in different spaces");
    const u128 pairs = checked_mul(E.size(), F.size());
    if (pairs > checked_mul(budget, 64)) throw BudgetError("distance profile needs " + to_string(pairs) + " pairs");
    const Field& K = E.field();
    if (K.q() > (std::uint64_t{1} << 26)) throw BudgetError("profile table of size q exceeds memory budget");
    const unsigned d = E.dim();
    std::vector<Elem> ce, cf;
    ce.reserve(E.size() * d);
    cf.reserve(F.size() * d);
    for (auto x : E) {
        for (unsigned i = 0; i < d; ++i) ce.push_back(E.space().coord(x, i));
    }
    for (auto y : F) {
        for (unsigned i = 0; i < d; ++i) cf.push_back(F.space().coord(y, i));
    }
    DistanceProfile P{K, E.size(), F.size(), std::vector<std::uint64_t>(K.q(), 0)};
    for (std::size_t a = 0; a < E.size(); ++a) {
        for (std::size_t b = 0; b < F.size(); ++b) {
            Elem s = K.zero();
            for (unsigned i = 0; i < d; ++i) s = K.add(s, K.square(K.sub(ce[a * d + i], cf[b * d + i])));
            ++P.nu[s.v];
        }
    }
    return P;
}

inline DistanceProfile distance_profile(const PointSet& E, std::uint64_t budget = kDefaultBudget) {
    return distance_profile(E, E, budget);
}

/// sum_t nu(t)^2.
inline u128 second_moment(const DistanceProfile& P) {
    u128 s = 0;
    for (auto c : P.nu) s = checked_add(s, checked_mul(c, c));
    return s;
}

/// (|E||F|)^2 / sum nu^2 as an exact fraction.
struct CsBound {
    u128 num = 0;
    u128 den = 1;
    [[nodiscard]] double value() const { return to_double(num) / to_double(den); }
    /// Exact num / den <= n.
    [[nodiscard]] bool at_most(std::uint64_t n) const { return num <= checked_mul(den, n); }
};

inline CsBound cs_lower_bound(const DistanceProfile& P) {
    if (P.size_e == 0 || P.size_f == 0) throw DomainError("Cauchy-Schwarz bound of an empty profile");
    const u128 pairs = checked_mul(P.size_e, P.size_f);
    CsBound b{checked_mul(pairs, pairs), second_moment(P)};
    if (!b.at_most(P.distinct())) throw Error("internal: Cauchy-Schwarz bound exceeds |Delta|");
    return b;
}

/// Second-moment verifier: sum nu^2 against
///   RHS1 = |E|^4/q + |E|^3 + q^{d/4} |E|^{3-s} Lambda_4^{1/4}       (Salem incidence route)
///   RHS2 = |E|^4/q + q^{d/2} |E|^{3/2} Lambda_4^{1/2}               (arbitrary-set route)
struct SecondMomentReport {
    u128 second_moment = 0;
    u128 lambda4 = 0;
    double s = 0;
    double rhs_salem = 0;
    double rhs_energy = 0;
    double ratio_salem = 0;
    double ratio_energy = 0;
};

inline SecondMomentReport second_moment_bounds(std::uint64_t size, std::uint64_t q, unsigned d, u128 second_mom,
                                               u128 lambda4, double s) {
    SecondMomentReport r;
    r.second_moment = second_mom;
    r.lambda4 = lambda4;
    r.s = s;
    const double n = static_cast<double>(size);
    const double qq = static_cast<double>(q);
    const double lam = to_double(lambda4);
    const double main = std::pow(n, 4) / qq;
    r.rhs_salem = main + n * n * n + std::pow(qq, d / 4.0) * std::pow(n, 3.0 - s) * std::pow(lam, 0.25);
    r.rhs_energy = main + std::pow(qq, d / 2.0) * std::pow(n, 1.5) * std::sqrt(lam);
    r.ratio_salem = to_double(second_mom) / r.rhs_salem;
    r.ratio_energy = to_double(second_mom) / r.rhs_energy;
    return r;
}

/// With `s` absent, s comes from salem_parameter(E) (batch convention for |E| <= 1).
inline SecondMomentReport verify_secondmoment_bounds(const PointSet& E, std::optional<double> s = std::nullopt,
                                                     std::uint64_t budget = kDefaultBudget) {
    if (s && (*s < 0.25 || *s > 0.5)) throw DomainError("s must lie in [1/4, 1/2]");
    const u128 lambda4 = additive_energy(E, 2, budget);
    const double sv = s ? *s
                        : (E.size() <= 1 ? 0.5
                                         : salem_parameter_from_energy(lambda4, E.size(), E.space().size()));
    const auto P = distance_profile(E, budget);
    return second_moment_bounds(E.size(), E.field().q(), E.dim(), second_moment(P), lambda4, sv);
}

/// Chain |E - E| >> min(q^d, |E|^{4s}) and |Delta| >> min(q, q^{1-d} |E|^{4s}).
struct FraserReport {
    std::uint64_t distances = 0;        ///< |Delta(E)|
    std::uint64_t difference_size = 0;  ///< |E - E|
    double s = 0;
    double difference_bound = 0;  ///< min(q^d, |E|^{4s})
    double distance_bound = 0;    ///< min(q, q^{1-d} |E|^{4s})
    double ratio_difference = 0;  ///< |E - E| / difference_bound
    double ratio_distance = 0;    ///< |Delta| / distance_bound
    double ratio_sphere_cover = 0;  ///< |Delta| q^{d-1} / |E - E|
};

inline FraserReport verify_fraser(const PointSet& E, std::optional<double> s = std::nullopt,
                                  std::uint64_t budget = kDefaultBudget) {
    if (E.empty()) throw DomainError("verify_fraser needs a nonempty set");
    FraserReport r;
    r.s = s ? *s : salem_parameter(E, 1.0, true, budget).s;
    r.distances = distance_profile(E, budget).distinct();
    r.difference_size = difference_set(E, budget).size();
    const double n = static_cast<double>(E.size());
    const double q = static_cast<double>(E.field().q());
    const double d = E.dim();
    const double growth = std::pow(n, 4.0 * r.s);
    r.difference_bound = std::min(std::pow(q, d), growth);
    r.distance_bound = std::min(q, std::pow(q, 1.0 - d) * growth);
    r.ratio_difference = static_cast<double>(r.difference_size) / r.difference_bound;
    r.ratio_distance = static_cast<double>(r.distances) / r.distance_bound;
    r.ratio_sphere_cover = static_cast<double>(r.distances) * std::pow(q, d - 1) / static_cast<double>(r.difference_size);
    return r;
}

/// |Delta(E, F)| against min(q, |E|^{sE}|F|^{sF}/q^{d/4}) and min(q, |E|, |E|^{2sE}|F|^{1/2}/q^{d/2}).
struct TwoSetReport {
    std::uint64_t distances = 0;
    double s_e = 0;
    double s_f = 0;
    double expr_salem_pair = 0;  ///< |E|^{sE} |F|^{sF} / q^{d/4}
    double expr_one_salem = 0;   ///< |E|^{2 sE} |F|^{1/2} / q^{d/2}
    double ratio_salem_pair = 0;
    double ratio_one_salem = 0;
};

inline TwoSetReport verify_two_set(const PointSet& E, const PointSet& F, double s_e, double s_f,
                                   std::uint64_t budget = kDefaultBudget) {
    if (E.empty() || F.empty()) throw DomainError("verify_two_set needs nonempty sets");
    TwoSetReport r;
    r.s_e = s_e;
    r.s_f = s_f;
    r.distances = distance_profile(E, F, budget).distinct();
    const double ne = static_cast<double>(E.size());
    const double nf = static_cast<double>(F.size());
    const double q = static_cast<double>(E.field().q());
    const double d = E.dim();
    r.expr_salem_pair = std::pow(ne, s_e) * std::pow(nf, s_f) / std::pow(q, d / 4.0);
    r.expr_one_salem = std::pow(ne, 2.0 * s_e) * std::sqrt(nf) / std::pow(q, d / 2.0);
    const double dist = static_cast<double>(r.distances);
    r.ratio_salem_pair = dist / std::min(q, r.expr_salem_pair);
    r.ratio_one_salem = dist / std::min({q, ne, r.expr_one_salem});
    return r;
}

/// E' = { (x, ||x||) : x in E } in F_q^{d+1}.
inline PointSet lift_to_paraboloid(const PointSet& E) {
    const Space up(E.field(), E.dim() + 1);
    std::vector<Index> pts;
    pts.reserve(E.size());
    for (auto x : E) {
        Vector v = E.space().decode(x);
        v.push_back(E.space().norm(x));
        pts.push_back(up.encode(v));
    }
    return PointSet(up, std::move(pts));
}

/// CSV with columns t, nu.
inline void write_profile_csv(std::ostream& out, const DistanceProfile& P) {
    out << "t,nu\n";
    for (std::size_t t = 0; t < P.nu.size(); ++t) out << t << ',' << P.nu[t] << '\n';
}

}  // namespace fqsalem

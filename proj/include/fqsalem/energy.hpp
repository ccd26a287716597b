// Additive energies, difference sets and the Salem-parameter estimator.
//
// Lambda_{2k}(E) = #{(y_1, ..., y_{2k}) in E^{2k} : y_1 + ... + y_k = y_{k+1} + ... + y_{2k}}.
// This is the count that makes sum_{x != 0} |S(x)|^{2k} = q^d Lambda_{2k} - |E|^{2k}
// an identity, where S(x) = sum_{y in E} chi(-x.y).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"
#include "geometry.hpp"

namespace fqsalem {

/// Literal count over all 2k-tuples. Work is |E|^{2k} comparisons.
inline u128 energy_bruteforce(const PointSet& E, unsigned k, std::uint64_t budget = kDefaultBudget) {
    if (k == 0) throw DomainError("k must be positive");
    if (E.empty()) return 0;
    const Space& S = E.space();
    const u128 tuples = checked_pow(E.size(), 2 * k);
    if (tuples > budget) {
        throw BudgetError("brute-force energy needs " + to_string(tuples) + " tuple checks, budget " + std::to_string(budget));
    }
    // All ordered k-fold sums, one entry per k-tuple.
    std::vector<Index> sums{0};
    for (unsigned level = 0; level < k; ++level) {
        std::vector<Index> next;
        next.reserve(sums.size() * E.size());
        for (auto s : sums) {
            for (auto y : E) next.push_back(S.add(s, y));
        }
        sums = std::move(next);
    }
    u128 count = 0;
    for (auto left : sums) {
        for (auto right : sums) count += left == right ? 1 : 0;
    }
    return count;
}

/// Sum of r_k(v)^2 where r_k is the k-fold representation function, built by
/// k - 1 exact sparse convolutions over F_q^d. Supports k <= 4.
inline u128 energy_convolution(const PointSet& E, unsigned k, std::uint64_t budget = kDefaultBudget) {
    if (k == 0) throw DomainError("k must be positive");
    if (k > 4) throw DomainError("energy_convolution supports k <= 4; use energy_bruteforce");
    if (E.empty()) return 0;
    const Space& S = E.space();
    S.require_scan(budget);
    const u128 work = checked_mul(S.size(), E.size());
    if (k > 1 && work > checked_mul(budget, 64)) {
        throw BudgetError("convolution energy needs about " + to_string(work) + " steps");
    }
    if (checked_pow(E.size(), k - 1) > std::numeric_limits<std::uint64_t>::max()) {
        throw OverflowError("representation counts exceed 64 bits");
    }
    std::vector<std::uint64_t> rep(S.size(), 0);
    for (auto y : E) rep[y] = 1;
    for (unsigned level = 1; level < k; ++level) {
        std::vector<std::uint64_t> next(S.size(), 0);
        for (Index v = 0; v < S.size(); ++v) {
            if (rep[v] == 0) continue;
            for (auto y : E) next[S.add(v, y)] += rep[v];
        }
        rep = std::move(next);
    }
    u128 total = 0;
    for (auto c : rep) {
        if (c != 0) total = checked_add(total, checked_mul(c, c));
    }
    return total;
}

/// Lambda_{2k} by the fastest applicable exact path.
inline u128 additive_energy(const PointSet& E, unsigned k, std::uint64_t budget = kDefaultBudget) {
    if (k <= 4 && E.space().size() <= budget) return energy_convolution(E, k, budget);
    return energy_bruteforce(E, k, budget);
}

/// E - E.
inline PointSet difference_set(const PointSet& E, std::uint64_t budget = kDefaultBudget) {
    const u128 pairs = checked_mul(E.size(), E.size());
    if (pairs > budget) throw BudgetError("difference set needs " + to_string(pairs) + " pairs");
    std::vector<Index> diffs;
    diffs.reserve(static_cast<std::size_t>(pairs));
    const Space& S = E.space();
    for (auto x : E) {
        for (auto y : E) diffs.push_back(S.sub(x, y));
    }
    return PointSet(S, std::move(diffs));
}

/// Result of salem_parameter.
struct SalemEstimate {
    double s = 0.5;
    bool degenerate = false;  ///< |E| <= 1, exponent vacuous; s fixed to 1/2
};

/// Largest s in [1/4, 1/2] with Lambda_4 <= C (|E|^4 / q^d + |E|^{4 - 4s}), given Lambda_4.
inline double salem_parameter_from_energy(u128 lambda4, std::uint64_t size, std::uint64_t space_size, double C = 1.0) {
    if (!(C > 0)) throw DomainError("constant C must be positive");
    if (size < 2) throw DomainError("salem parameter needs |E| >= 2");
    const double n = static_cast<double>(size);
    const double background = std::pow(n, 4) / static_cast<double>(space_size);
    const double residual = to_double(lambda4) / C - background;
    const double s = 0.25 * (4.0 - std::log(std::max(residual, 1.0)) / std::log(n));
    return std::clamp(s, 0.25, 0.5);
}

/// Salem parameter of E at constant C. With `batch` set, |E| <= 1 yields s = 1/2
/// flagged as degenerate instead of throwing.
inline SalemEstimate salem_parameter(const PointSet& E, double C = 1.0, bool batch = false,
                                     std::uint64_t budget = kDefaultBudget) {
    if (E.size() <= 1) {
        if (!batch) throw DomainError("salem parameter needs |E| >= 2");
        return {0.5, true};
    }
    const u128 lambda4 = additive_energy(E, 2, budget);
    return {salem_parameter_from_energy(lambda4, E.size(), E.space().size(), C), false};
}

/// Energy summary for one set and one k.
struct EnergyReport {
    unsigned k = 2;
    u128 lambda = 0;
    std::uint64_t size = 0;
    std::uint64_t q = 0;
    unsigned d = 0;
    std::optional<double> salem_s;
    bool salem_degenerate = false;
    double C = 1.0;

    /// |E|^{2k} / q^d as an exact fraction "num/den" (reduced by powers of p only when exact).
    [[nodiscard]] std::string background_term() const {
        u128 num = checked_pow(size, 2 * k);
        u128 den = checked_pow(q, d);
        u128 a = num, b = den;
        while (b != 0) {
            u128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            num /= a;
            den /= a;
        }
        return den == 1 ? to_string(num) : to_string(num) + "/" + to_string(den);
    }
};

inline EnergyReport energy_report(const PointSet& E, unsigned k, double C = 1.0, std::uint64_t budget = kDefaultBudget) {
    EnergyReport rep;
    rep.k = k;
    rep.lambda = additive_energy(E, k, budget);
    rep.size = E.size();
    rep.q = E.field().q();
    rep.d = E.dim();
    rep.C = C;
    if (k == 2) {
        if (E.size() <= 1) {
            rep.salem_s = 0.5;
            rep.salem_degenerate = true;
        } else {
            rep.salem_s = salem_parameter_from_energy(rep.lambda, E.size(), E.space().size(), C);
        }
    }
    return rep;
}

/// Lambda_4(E) / (|E|^3 / q + q^e |E|^2). The q-exponent e is (d-2)/2 for the
/// paraboloid and even-sphere estimates, (d-1)/2 for odd spheres and (d-3)/2 for
/// the conjectural odd-sphere estimate.
inline double energy_lemma_ratio(u128 lambda4, std::uint64_t size, std::uint64_t q, double q_exponent) {
    const double n = static_cast<double>(size);
    const double qq = static_cast<double>(q);
    const double rhs = n * n * n / qq + std::pow(qq, q_exponent) * n * n;
    return to_double(lambda4) / rhs;
}

}  // namespace fqsalem

// Shared helpers for the unit tests.
#pragma once

#include <cstdint>
#include <vector>

#include "fqsalem/constructions.hpp"
#include "fqsalem/geometry.hpp"

namespace testing_support {

using namespace fqsalem;

inline PointSet points(const Field& F, const std::vector<std::vector<std::int64_t>>& raw) {
    const Space S(F, static_cast<unsigned>(raw.front().size()));
    std::vector<Vector> xs;
    for (const auto& r : raw) {
        Vector v;
        for (auto c : r) v.push_back(F.elem(static_cast<std::uint64_t>(c)));
        xs.push_back(v);
    }
    return PointSet::from_vectors(S, xs);
}

/// Random subset of F_q^d with size drawn in [lo, hi].
inline PointSet random_subset(const Field& F, unsigned d, std::uint64_t lo, std::uint64_t hi, std::uint64_t seed) {
    const Space S(F, d);
    CounterRng rng(seed);
    const std::uint64_t cap = std::min<std::uint64_t>(hi, S.size());
    const std::uint64_t n = std::min(cap, lo + rng.below(cap - std::min(lo, cap) + 1));
    return random_set(S, n, rng.next());
}

/// Brute-force Lambda_4 by the quadruple loop.
inline u128 lambda4_quadruple(const PointSet& E) {
    const Space& S = E.space();
    u128 n = 0;
    for (auto a : E)
        for (auto b : E)
            for (auto c : E)
                for (auto d : E) n += S.add(a, b) == S.add(c, d) ? 1 : 0;
    return n;
}

}  // namespace testing_support

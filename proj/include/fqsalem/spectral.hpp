// Fourier transform over F_q^d, the L^u norms over nonzero frequencies, and the
// exact L^{2k} / additive-energy identity.
//
//   E^(m) = q^{-d} sum_{y in E} chi(-m.y),   chi(x) = exp(2 pi i Tr(x) / p)
//
// Fast path: F_q^d is (Z_p)^{rd} as an additive group. Writing coordinates in
// the polynomial basis, Tr(m_i y_i) = sum_{j,k} m_ij y_ik Tr(x^{j+k}) = <T m_i, y_i>
// with T the (symmetric, invertible) trace form. Hence
//   E^(m) = q^{-d} DFT[1_E](T m),
// where DFT is the plain (Z_p)^{rd} transform, computed as rd passes of
// length-p transforms along each digit axis.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>
#include <vector>

#include "common.hpp"
#include "energy.hpp"
#include "geometry.hpp"

namespace fqsalem {

using cplx = std::complex<double>;

/// Table of E^(m) over all m in F_q^d.
class Spectrum {
public:
    Spectrum(Space space, std::vector<cplx> values, std::uint64_t set_size)
        : space_(std::move(space)), values_(std::move(values)), set_size_(set_size) {}

    [[nodiscard]] const Space& space() const { return space_; }
    [[nodiscard]] const std::vector<cplx>& values() const { return values_; }
    [[nodiscard]] cplx operator[](Index m) const { return values_[m]; }
    [[nodiscard]] std::uint64_t set_size() const { return set_size_; }

private:
    Space space_;
    std::vector<cplx> values_;
    std::uint64_t set_size_;
};

enum class FourierMethod { automatic, direct, fast };

namespace detail {

inline Spectrum fourier_direct(const PointSet& E) {
    const Space& S = E.space();
    const Field& F = S.field();
    const double scale = 1.0 / static_cast<double>(S.size());
    std::vector<cplx> out(S.size());
    std::vector<cplx> terms(E.size());
    std::vector<Vector> pts;
    pts.reserve(E.size());
    for (auto y : E) pts.push_back(S.decode(y));
    for (Index m = 0; m < S.size(); ++m) {
        const Vector mv = S.decode(m);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Elem t = dot(F, mv, pts[i]);
            terms[i] = F.character(F.neg(t));
        }
        out[m] = pairwise_sum<cplx>(terms) * scale;
    }
    return {S, std::move(out), E.size()};
}

inline Spectrum fourier_fast(const PointSet& E) {
    const Space& S = E.space();
    const Field& F = S.field();
    const std::uint64_t p = F.p();
    const unsigned r = F.r();
    const std::uint64_t N = S.size();
    std::vector<cplx> a(N, cplx{0, 0});
    for (auto y : E) a[y] = 1.0;

    // Plain DFT with kernel exp(-2 pi i w y / p) along every base-p digit axis.
    std::vector<cplx> w(p);
    for (std::uint64_t k = 0; k < p; ++k) w[k] = std::conj(F.root_of_unity(k));
    std::vector<cplx> line(p), res(p);
    std::uint64_t stride = 1;
    for (unsigned axis = 0; axis < r * S.dim(); ++axis) {
        const std::uint64_t block = stride * p;
        for (std::uint64_t base = 0; base < N; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (std::uint64_t k = 0; k < p; ++k) line[k] = a[base + off + k * stride];
                for (std::uint64_t f = 0; f < p; ++f) {
                    cplx acc{0, 0};
                    std::uint64_t e = 0;
                    for (std::uint64_t k = 0; k < p; ++k) {
                        acc += line[k] * w[e];
                        e += f;
                        if (e >= p) e -= p;
                    }
                    res[f] = acc;
                }
                for (std::uint64_t f = 0; f < p; ++f) a[base + off + f * stride] = res[f];
            }
        }
        stride = block;
    }

    // Gather through the trace form: E^(m) = q^{-d} a[T m].
    const auto T = F.trace_form();
    const double scale = 1.0 / static_cast<double>(N);
    std::vector<cplx> out(N);
    std::vector<std::uint64_t> md(r), tm(r);
    for (Index m = 0; m < N; ++m) {
        Index twisted = 0;
        std::uint64_t pw = 1;
        Index rest = m;
        for (unsigned blk = 0; blk < S.dim(); ++blk) {
            for (unsigned j = 0; j < r; ++j) {
                md[j] = rest % p;
                rest /= p;
            }
            for (unsigned kk = 0; kk < r; ++kk) {
                std::uint64_t acc = 0;
                for (unsigned j = 0; j < r; ++j) acc = (acc + detail::mulmod(T[kk * r + j], md[j], p)) % p;
                tm[kk] = acc;
            }
            for (unsigned kk = 0; kk < r; ++kk) {
                twisted += tm[kk] * pw;
                pw *= p;
            }
        }
        out[m] = a[twisted] * scale;
    }
    return {S, std::move(out), E.size()};
}

}  // namespace detail

/// E^ over all frequencies. `automatic` uses the fast transform unless E is
/// small relative to r*p.
inline Spectrum fourier(const PointSet& E, FourierMethod method = FourierMethod::automatic,
                        std::uint64_t budget = kDefaultBudget) {
    E.space().require_scan(budget);
    if (method == FourierMethod::automatic) {
        const std::uint64_t fast_cost = E.field().r() * E.field().p();
        method = E.size() * E.dim() > fast_cost ? FourierMethod::fast : FourierMethod::direct;
    }
    if (method == FourierMethod::direct) {
        if (checked_mul(E.size(), E.space().size()) > checked_mul(budget, 64)) {
            throw BudgetError("direct Fourier summation exceeds budget");
        }
        return detail::fourier_direct(E);
    }
    return detail::fourier_fast(E);
}

/// Exponent value standing for u = infinity.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// ||E^||_u over nonzero frequencies: ((1/q^d) sum |E^(m)|^u)^{1/u}, or the sup for u = inf.
inline double lp_norm(const Spectrum& S, double u) {
    if (!(u >= 1.0)) throw DomainError("norm exponent must be >= 1");
    const auto& vals = S.values();
    if (std::isinf(u)) {
        double best = 0.0;
        for (std::size_t m = 1; m < vals.size(); ++m) best = std::max(best, std::abs(vals[m]));
        return best;
    }
    std::vector<double> terms;
    terms.reserve(vals.size());
    for (std::size_t m = 1; m < vals.size(); ++m) terms.push_back(std::pow(std::abs(vals[m]), u));
    const double mean = pairwise_sum<double>(terms) / static_cast<double>(vals.size());
    return std::pow(mean, 1.0 / u);
}

/// Sum over all m of |E^(m)|^2.
inline double parseval_sum(const Spectrum& S) {
    std::vector<double> terms;
    terms.reserve(S.values().size());
    for (const auto& v : S.values()) terms.push_back(std::norm(v));
    return pairwise_sum<double>(terms);
}

/// Both sides of ||E^||_{2k}^{2k} = q^{-2kd} Lambda_{2k} - q^{-(2k+1)d} |E|^{2k}.
struct IdentityCheck {
    double lhs = 0;
    double rhs = 0;
    double residual = 0;  ///< |lhs - rhs| / max(rhs, q^{-(2k+1)d})
    u128 lambda = 0;
};

inline IdentityCheck energy_identity_check(const PointSet& E, const Spectrum& S, unsigned k,
                                           std::uint64_t budget = kDefaultBudget) {
    if (k == 0) throw DomainError("k must be positive");
    IdentityCheck out;
    out.lambda = additive_energy(E, k, budget);
    const double u = 2.0 * k;
    out.lhs = std::pow(lp_norm(S, u), u);
    // Exact numerator q^d Lambda - |E|^{2k}, scaled by q^{-(2k+1)d}.
    const u128 qd = E.space().size();
    const u128 num = checked_mul(qd, out.lambda) - checked_pow(E.size(), 2 * k);
    const long double scale = std::pow(static_cast<long double>(qd), -static_cast<long double>(2 * k + 1));
    out.rhs = static_cast<double>(static_cast<long double>(num) * scale);
    const double floor = static_cast<double>(scale);
    out.residual = std::abs(out.lhs - out.rhs) / std::max(out.rhs, floor);
    return out;
}

inline IdentityCheck energy_identity_check(const PointSet& E, unsigned k, std::uint64_t budget = kDefaultBudget) {
    return energy_identity_check(E, fourier(E, FourierMethod::automatic, budget), k, budget);
}

/// CSV with columns m, re, im.
inline void write_spectrum_csv(std::ostream& out, const Spectrum& S) {
    out << "m,re,im\n";
    char buf[96];
    for (std::size_t m = 0; m < S.values().size(); ++m) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", m, S.values()[m].real(), S.values()[m].imag());
        out << buf;
    }
}

}  // namespace fqsalem

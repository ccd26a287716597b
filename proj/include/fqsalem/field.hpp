// Exact arithmetic in F_{p^r} for odd primes p.
//
// Elements are encoded canonically as integers in [0, q): the base-p digits,
// little-endian, are the coefficients of the polynomial representative modulo
// a fixed monic irreducible polynomial. For r = 1 this is the usual residue.
//
// Fields up to q <= 2^22 carry discrete log/exp tables built from the
// primitive element; larger fields fall back to polynomial arithmetic.
#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace fqsalem {

/// Canonical encoding of a field element relative to one Field.
struct Elem {
    std::uint64_t v = 0;
    friend auto operator<=>(const Elem&, const Elem&) = default;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1U) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1U;
    }
    return r;
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Pollard-Brent rho; n odd composite.
inline std::uint64_t rho(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, g = 1, qq = 1, ys = 2;
        std::uint64_t m = 64, r = 1;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    qq = mulmod(qq, x > y ? x - y : y - x, n);
                }
                g = std::gcd(qq, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1U;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    for (std::uint64_t sp = 2; sp < 1000 && sp * sp <= n; ++sp) {
        if (n % sp == 0) {
            out.push_back(sp);
            while (n % sp == 0) n /= sp;
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t f = rho(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

/// Distinct prime divisors, ascending.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Polynomials over F_p, little-endian coefficient vectors without trailing zeros.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t lead_inv = powmod(f.back(), p - 2, p);
    while (a.size() > df) {
        const std::uint64_t c = mulmod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i) {
            a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
        }
        trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    return poly_mod(std::move(c), f, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
    Poly r{1};
    base = poly_mod(std::move(base), f, p);
    while (e != 0) {
        if (e & 1U) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1U;
    }
    return r;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Rabin's irreducibility test for a monic polynomial of degree >= 1.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
    const std::size_t r = f.size() - 1;
    if (r == 1) return true;
    auto frob = [&](std::size_t k) {
        Poly h{0, 1};
        for (std::size_t i = 0; i < k; ++i) h = poly_powmod(h, p, f, p);
        return h;
    };
    Poly full = frob(r);
    if (full != poly_mod(Poly{0, 1}, f, p)) return false;
    for (std::uint64_t ell : prime_divisors(r)) {
        Poly h = frob(r / ell);
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        Poly g = poly_gcd(f, h, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

/// A finite field F_{p^r}, odd p. Cheap to copy; all state is shared and immutable.
class Field {
public:
    /// Builds F_{p^r} with the lexicographically smallest monic irreducible modulus
    /// (ordered by the coefficient tuple (c_0, ..., c_{r-1})).
    static Field create(std::uint64_t p, unsigned r) {
        validate(p, r);
        std::vector<std::uint64_t> modulus;
        if (r == 1) {
            modulus = {0, 1};
        } else {
            modulus = smallest_irreducible(p, r);
        }
        return Field(p, r, std::move(modulus));
    }

    /// Builds F_{p^r} with a caller-supplied monic irreducible modulus (c_0, ..., c_r).
    static Field with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
        if (modulus.size() < 2) throw DomainError("modulus must have degree >= 1");
        const auto r = static_cast<unsigned>(modulus.size() - 1);
        validate(p, r);
        if (modulus.back() != 1) throw DomainError("modulus must be monic");
        for (auto c : modulus) {
            if (c >= p) throw DomainError("modulus coefficient out of range");
        }
        if (r == 1) return Field(p, 1, {0, 1});
        if (!detail::is_irreducible(modulus, p)) throw DomainError("modulus is not irreducible over F_p");
        return Field(p, r, std::move(modulus));
    }

    [[nodiscard]] std::uint64_t p() const { return impl_->p; }
    [[nodiscard]] unsigned r() const { return impl_->r; }
    [[nodiscard]] std::uint64_t q() const { return impl_->q; }
    [[nodiscard]] std::span<const std::uint64_t> modulus() const { return impl_->modulus; }
    [[nodiscard]] bool has_tables() const { return !impl_->exp.empty(); }

    [[nodiscard]] Elem zero() const { return {0}; }
    [[nodiscard]] Elem one() const { return {1}; }
    [[nodiscard]] Elem elem(std::uint64_t v) const {
        if (v >= q()) throw DomainError("element encoding " + std::to_string(v) + " out of range for q=" + std::to_string(q()));
        return {v};
    }
    /// Image of an integer under Z -> F_p -> F_q.
    [[nodiscard]] Elem from_int(std::int64_t n) const {
        const auto pp = static_cast<std::int64_t>(p());
        std::int64_t m = n % pp;
        if (m < 0) m += pp;
        return {static_cast<std::uint64_t>(m)};
    }

    [[nodiscard]] Elem add(Elem a, Elem b) const {
        const auto& I = *impl_;
        if (I.r == 1) {
            std::uint64_t s = a.v + b.v;
            return {s >= I.p ? s - I.p : s};
        }
        std::uint64_t out = 0;
        for (unsigned j = 0; j < I.r; ++j) {
            std::uint64_t s = a.v % I.p + b.v % I.p;
            if (s >= I.p) s -= I.p;
            out += s * I.pow_p[j];
            a.v /= I.p;
            b.v /= I.p;
        }
        return {out};
    }
    [[nodiscard]] Elem neg(Elem a) const {
        const auto& I = *impl_;
        if (I.r == 1) return {a.v == 0 ? 0 : I.p - a.v};
        std::uint64_t out = 0;
        for (unsigned j = 0; j < I.r; ++j) {
            std::uint64_t d = a.v % I.p;
            out += (d == 0 ? 0 : I.p - d) * I.pow_p[j];
            a.v /= I.p;
        }
        return {out};
    }
    [[nodiscard]] Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    [[nodiscard]] Elem mul(Elem a, Elem b) const {
        const auto& I = *impl_;
        if (a.v == 0 || b.v == 0) return {0};
        if (I.r == 1) return {detail::mulmod(a.v, b.v, I.p)};
        if (!I.exp.empty()) {
            std::uint64_t e = static_cast<std::uint64_t>(I.log[a.v]) + I.log[b.v];
            if (e >= I.q - 1) e -= I.q - 1;
            return {I.exp[e]};
        }
        return slow_mul(I, a, b);
    }
    [[nodiscard]] Elem pow(Elem a, std::uint64_t e) const {
        Elem r = one();
        while (e != 0) {
            if (e & 1U) r = mul(r, a);
            a = mul(a, a);
            e >>= 1U;
        }
        return r;
    }
    [[nodiscard]] Elem inv(Elem a) const {
        if (a.v == 0) throw DomainError("inverse of zero");
        const auto& I = *impl_;
        if (!I.exp.empty()) {
            const std::uint64_t l = I.log[a.v];
            return {I.exp[l == 0 ? 0 : I.q - 1 - l]};
        }
        return pow(a, I.q - 2);
    }
    [[nodiscard]] Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    [[nodiscard]] Elem square(Elem a) const { return mul(a, a); }

    /// Absolute trace to F_p, as an integer in [0, p).
    [[nodiscard]] std::uint64_t trace(Elem x) const {
        const auto& I = *impl_;
        if (I.r == 1) return x.v;
        std::uint64_t t = 0;
        for (unsigned j = 0; j < I.r; ++j) {
            t = (t + detail::mulmod(x.v % I.p, I.trace_basis[j], I.p)) % I.p;
            x.v /= I.p;
        }
        return t;
    }
    /// Tr(x^j * x^k) for 0 <= j, k < r; row-major r x r, symmetric and invertible mod p.
    [[nodiscard]] std::span<const std::uint64_t> trace_form() const { return impl_->trace_form; }

    /// chi(x) = exp(2 pi i Tr(x) / p).
    [[nodiscard]] std::complex<double> character(Elem x) const { return root_of_unity(trace(x)); }
    /// exp(2 pi i k / p) for k in [0, p).
    [[nodiscard]] std::complex<double> root_of_unity(std::uint64_t k) const {
        const auto& I = *impl_;
        if (!I.roots.empty()) return I.roots[k];
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(I.p);
        return {std::cos(ang), std::sin(ang)};
    }

    /// Generator of F_q^*: the smallest encoding of multiplicative order q - 1.
    [[nodiscard]] Elem primitive() const { return impl_->primitive; }

    [[nodiscard]] bool is_square(Elem c) const { return c.v == 0 || pow(c, (q() - 1) / 2) == one(); }

    /// Little-endian base-p digits of an encoding.
    [[nodiscard]] std::vector<std::uint64_t> digits(Elem x) const {
        std::vector<std::uint64_t> d(r());
        for (unsigned j = 0; j < r(); ++j) {
            d[j] = x.v % p();
            x.v /= p();
        }
        return d;
    }

    /// `q=<p>^<r> modulus=<c_0,...,c_r>`; the modulus part is omitted for r = 1.
    [[nodiscard]] std::string header() const {
        std::string s = "q=" + std::to_string(p()) + "^" + std::to_string(r());
        if (r() > 1) {
            s += " modulus=";
            for (std::size_t i = 0; i < impl_->modulus.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(impl_->modulus[i]);
            }
        }
        return s;
    }

    /// Inverse of header().
    static Field parse_header(std::string_view line) {
        auto fail = [&] { return FormatError("malformed field header '" + std::string(line) + "'"); };
        if (line.substr(0, 2) != "q=") throw fail();
        std::string_view rest = line.substr(2);
        const auto caret = rest.find('^');
        if (caret == std::string_view::npos) throw fail();
        const auto space = rest.find(' ');
        auto to_u64 = [&](std::string_view s) {
            try {
                return static_cast<std::uint64_t>(parse_u128(s));
            } catch (const FormatError&) {
                throw fail();
            }
        };
        const std::uint64_t p = to_u64(rest.substr(0, caret));
        const std::uint64_t r = to_u64(rest.substr(caret + 1, space == std::string_view::npos ? std::string_view::npos : space - caret - 1));
        if (r == 0 || r > 64) throw fail();
        if (space == std::string_view::npos) {
            if (r != 1) return create(p, static_cast<unsigned>(r));
            return create(p, 1);
        }
        std::string_view mod = rest.substr(space + 1);
        if (mod.substr(0, 8) != "modulus=") throw fail();
        mod = mod.substr(8);
        std::vector<std::uint64_t> coeffs;
        while (!mod.empty()) {
            const auto comma = mod.find(',');
            coeffs.push_back(to_u64(mod.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            mod = mod.substr(comma + 1);
        }
        if (coeffs.size() != r + 1) throw fail();
        return with_modulus(p, std::move(coeffs));
    }

    friend bool operator==(const Field& a, const Field& b) {
        return a.impl_ == b.impl_ || (a.p() == b.p() && a.r() == b.r() && a.impl_->modulus == b.impl_->modulus);
    }

    /// Largest q for which discrete log tables are built.
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

private:
    struct Impl {
        std::uint64_t p = 0;
        unsigned r = 0;
        std::uint64_t q = 0;
        std::vector<std::uint64_t> modulus;
        std::vector<std::uint64_t> pow_p;
        std::vector<std::uint64_t> trace_basis;
        std::vector<std::uint64_t> trace_form;
        std::vector<std::complex<double>> roots;
        std::vector<std::uint32_t> exp;
        std::vector<std::uint32_t> log;
        Elem primitive;
    };

    Field(std::uint64_t p, unsigned r, std::vector<std::uint64_t> modulus) {
        auto I = std::make_shared<Impl>();
        I->p = p;
        I->r = r;
        I->modulus = std::move(modulus);
        I->pow_p.resize(r);
        std::uint64_t acc = 1;
        for (unsigned j = 0; j < r; ++j) {
            I->pow_p[j] = acc;
            acc *= p;
        }
        I->q = acc;
        if (p <= (std::uint64_t{1} << 20)) {
            I->roots.resize(p);
            for (std::uint64_t k = 0; k < p; ++k) {
                const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
                I->roots[k] = {std::cos(ang), std::sin(ang)};
            }
        }
        // Trace of basis monomials via Frobenius: Tr(x^j) = sum_i (x^j)^{p^i}.
        if (r > 1) {
            I->trace_basis.resize(r);
            for (unsigned j = 0; j < r; ++j) {
                const Elem xj{I->pow_p[j]};
                Elem t{0}, cur = xj;
                for (unsigned i = 0; i < r; ++i) {
                    t = Field::add_impl(*I, t, cur);
                    cur = slow_pow(*I, cur, p);
                }
                if (t.v >= p) throw Error("internal: trace left the prime field");
                I->trace_basis[j] = t.v;
            }
        }
        I->trace_form.resize(static_cast<std::size_t>(r) * r);
        for (unsigned j = 0; j < r; ++j) {
            for (unsigned k = 0; k < r; ++k) {
                std::uint64_t t;
                if (r == 1) {
                    t = 1;
                } else {
                    const Elem prod = slow_mul(*I, Elem{I->pow_p[j]}, Elem{I->pow_p[k]});
                    t = trace_impl(*I, prod);
                }
                I->trace_form[j * r + k] = t;
            }
        }
        I->primitive = find_primitive(*I);
        if (I->q <= kTableLimit) {
            I->exp.resize(I->q - 1);
            I->log.assign(I->q, 0);
            Elem cur{1};
            for (std::uint64_t e = 0; e + 1 < I->q; ++e) {
                I->exp[e] = static_cast<std::uint32_t>(cur.v);
                I->log[cur.v] = static_cast<std::uint32_t>(e);
                cur = r == 1 ? Elem{detail::mulmod(cur.v, I->primitive.v, p)} : slow_mul(*I, cur, I->primitive);
            }
        }
        impl_ = std::move(I);
    }

    static void validate(std::uint64_t p, unsigned r) {
        if (p == 2) throw DomainError("characteristic 2 is not supported");
        if (!detail::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
        if (r == 0) throw DomainError("extension degree must be positive");
        u128 q = 1;
        for (unsigned i = 0; i < r; ++i) {
            q *= p;
            if (q >= (u128{1} << 63)) throw DomainError("p^r exceeds the supported 63-bit magnitude");
        }
    }

    static std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, unsigned r) {
        std::vector<std::uint64_t> c(r, 0);  // c_0 .. c_{r-1}; c_{r-1} varies fastest
        for (;;) {
            if (c[0] != 0) {
                detail::Poly f(c.begin(), c.end());
                f.push_back(1);
                if (detail::is_irreducible(f, p)) return f;
            }
            int i = static_cast<int>(r) - 1;
            while (i >= 0 && ++c[static_cast<std::size_t>(i)] == p) {
                c[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) throw Error("internal: no irreducible polynomial found");
        }
    }

    static Elem add_impl(const Impl& I, Elem a, Elem b) {
        std::uint64_t out = 0;
        for (unsigned j = 0; j < I.r; ++j) {
            std::uint64_t s = a.v % I.p + b.v % I.p;
            if (s >= I.p) s -= I.p;
            out += s * I.pow_p[j];
            a.v /= I.p;
            b.v /= I.p;
        }
        return {out};
    }

    static std::uint64_t trace_impl(const Impl& I, Elem x) {
        std::uint64_t t = 0;
        for (unsigned j = 0; j < I.r; ++j) {
            t = (t + detail::mulmod(x.v % I.p, I.trace_basis[j], I.p)) % I.p;
            x.v /= I.p;
        }
        return t;
    }

    static detail::Poly to_poly(const Impl& I, Elem a) {
        detail::Poly f(I.r);
        for (unsigned j = 0; j < I.r; ++j) {
            f[j] = a.v % I.p;
            a.v /= I.p;
        }
        detail::trim(f);
        return f;
    }

    static Elem from_poly(const Impl& I, const detail::Poly& f) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < f.size(); ++j) v += f[j] * I.pow_p[j];
        return {v};
    }

    static Elem slow_mul(const Impl& I, Elem a, Elem b) {
        if (I.r == 1) return {detail::mulmod(a.v, b.v, I.p)};
        return from_poly(I, detail::poly_mulmod(to_poly(I, a), to_poly(I, b), I.modulus, I.p));
    }

    static Elem slow_pow(const Impl& I, Elem a, std::uint64_t e) {
        Elem r{1};
        while (e != 0) {
            if (e & 1U) r = slow_mul(I, r, a);
            a = slow_mul(I, a, a);
            e >>= 1U;
        }
        return r;
    }

    static Elem find_primitive(const Impl& I) {
        const auto primes = detail::prime_divisors(I.q - 1);
        for (std::uint64_t g = 1; g < I.q; ++g) {
            bool ok = true;
            for (auto ell : primes) {
                if (slow_pow(I, Elem{g}, (I.q - 1) / ell) == Elem{1}) {
                    ok = false;
                    break;
                }
            }
            if (ok) return {g};
        }
        throw Error("internal: no primitive element");
    }

    std::shared_ptr<const Impl> impl_;
};

/// field_create(p, r).
inline Field field_create(std::uint64_t p, unsigned r) { return Field::create(p, r); }

inline std::uint64_t trace(const Field& F, Elem x) { return F.trace(x); }

inline std::complex<double> additive_character(const Field& F, Elem x) { return F.character(x); }

inline Elem primitive_element(const Field& F) { return F.primitive(); }

/// Multiplicative order of a nonzero element.
inline std::uint64_t multiplicative_order(const Field& F, Elem a) {
    if (a.v == 0) throw DomainError("zero has no multiplicative order");
    std::uint64_t n = F.q() - 1;
    for (auto ell : detail::prime_divisors(F.q() - 1)) {
        while (n % ell == 0 && F.pow(a, n / ell) == F.one()) n /= ell;
    }
    return n;
}

/// All y with y^2 = c, ascending by encoding (Tonelli-Shanks over F_q).
inline std::vector<Elem> sqrt_in_field(const Field& F, Elem c) {
    if (c.v == 0) return {F.zero()};
    if (!F.is_square(c)) return {};
    const std::uint64_t qm1 = F.q() - 1;
    std::uint64_t odd = qm1;
    unsigned s = 0;
    while ((odd & 1U) == 0) {
        odd >>= 1U;
        ++s;
    }
    Elem z{2};
    while (F.is_square(z)) ++z.v;
    Elem m_c = F.pow(z, odd);
    Elem x = F.pow(c, (odd + 1) / 2);
    Elem t = F.pow(c, odd);
    unsigned m = s;
    while (t != F.one()) {
        unsigned i = 0;
        Elem tt = t;
        while (tt != F.one()) {
            tt = F.square(tt);
            ++i;
        }
        Elem b = m_c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = F.square(b);
        x = F.mul(x, b);
        m_c = F.square(b);
        t = F.mul(t, m_c);
        m = i;
    }
    Elem y = F.neg(x);
    return x < y ? std::vector<Elem>{x, y} : std::vector<Elem>{y, x};
}

/// (a, b) with a^2 + b^2 = c, choosing the smallest a whose complement c - a^2 is a
/// square and then the smallest root b.
inline std::pair<Elem, Elem> two_square_decomposition(const Field& F, Elem c) {
    for (std::uint64_t a = 0; a < F.q(); ++a) {
        const Elem ea{a};
        const Elem rest = F.sub(c, F.square(ea));
        auto roots = sqrt_in_field(F, rest);
        if (!roots.empty()) return {ea, roots.front()};
    }
    throw Error("internal: element is not a sum of two squares");
}

}  // namespace fqsalem

// Shared plumbing for fqsalem: error types, exact wide counters, rationals,
// deterministic summation and the counter-based random generator.
#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fqsalem {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (bad prime, wrong dimension, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Enumeration or brute-force work would exceed the configured budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Malformed file, config or schema violation.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Arithmetic on exact counts overflowed 128 bits.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Default cap on full-space scans (q^d) and brute-force tuple counts.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

using u128 = unsigned __int128;

inline u128 checked_add(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exact count overflowed 128 bits");
    return r;
}

inline u128 checked_mul(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("exact count overflowed 128 bits");
    return r;
}

inline u128 checked_pow(u128 base, unsigned exp) {
    u128 r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

inline u128 parse_u128(std::string_view s) {
    if (s.empty()) throw FormatError("empty integer");
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw FormatError("bad integer '" + std::string(s) + "'");
        v = checked_add(checked_mul(v, 10), static_cast<u128>(c - '0'));
    }
    return v;
}

inline double to_double(u128 v) { return static_cast<double>(static_cast<long double>(v)); }

/// Formats a double with 12 significant digits (report convention).
inline std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// Pairwise summation over a fixed tree; the result depends only on the input order.
template <class T>
T pairwise_sum(std::span<const T> xs) {
    if (xs.empty()) return T{};
    if (xs.size() <= 8) {
        T acc{};
        for (const auto& x : xs) acc += x;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// ---------------------------------------------------------------------------
// Exact rationals

/// Normalized fraction of 64-bit integers; intermediate products use 128 bits
/// and overflow of the normalized result throws.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    [[nodiscard]] std::int64_t num() const { return num_; }
    [[nodiscard]] std::int64_t den() const { return den_; }
    [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DomainError("rational division by zero");
        return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const __int128 l = static_cast<__int128>(a.num_) * b.den_;
        const __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }

    [[nodiscard]] std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "a", "a/b" and finite decimals such as "0.3" or "-1.25".
    static Rational parse(std::string_view s) {
        auto bad = [&] { return FormatError("cannot parse rational '" + std::string(s) + "'"); };
        if (s.empty()) throw bad();
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            return Rational(parse_int(s.substr(0, slash), bad), parse_int(s.substr(slash + 1), bad));
        }
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            const bool neg = s.front() == '-';
            std::string_view ip = s.substr(0, dot);
            std::string_view fp = s.substr(dot + 1);
            if (fp.size() > 15) throw bad();
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
            std::int64_t whole = (ip.empty() || ip == "-") ? 0 : parse_int(ip, bad);
            std::int64_t frac = fp.empty() ? 0 : parse_int(fp, bad);
            if (frac < 0) throw bad();
            Rational r(std::abs(whole) * scale + frac, scale);
            return neg ? -r : r;
        }
        return Rational(parse_int(s, bad));
    }

private:
    template <class F>
    static std::int64_t parse_int(std::string_view s, F&& bad) {
        std::size_t i = 0;
        bool neg = false;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw bad();
        __int128 v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw bad();
            v = v * 10 + (s[i] - '0');
            if (v > std::numeric_limits<std::int64_t>::max()) throw bad();
        }
        return static_cast<std::int64_t>(neg ? -v : v);
    }

    static Rational make(__int128 n, __int128 d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
        if (n > lim || n < -lim || d > lim) throw OverflowError("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// Deterministic randomness

/// SplitMix64 finalizer (Steele, Lea, Flood 2014); constants are the published ones.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Stateless draw: the value depends only on (seed, counter).
constexpr std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(splitmix64(seed) ^ (counter * 0xD1B54A32D192ED03ULL));
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

/// Child seed for cell `index` of a run seeded with `master`.
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return counter_draw(master ^ 0x5A17E5EEDULL, index);
}

/// Sequential wrapper over counter_draw.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
    std::uint64_t next() { return counter_draw(seed_, counter_++); }
    /// Uniform integer in [0, bound) by rejection, bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }
    double unit() { return to_unit(next()); }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace fqsalem

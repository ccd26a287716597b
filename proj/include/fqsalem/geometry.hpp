// Vectors in F_q^d, the quadratic form ||x|| = x_1^2 + ... + x_d^2, point sets,
// hyperplane multisets and the standard enumerations (spheres, paraboloid, plane
// rotations).
//
// A vector is addressed by a canonical index: coordinates are packed big-endian
// in base q (so sorting indices sorts points lexicographically) and each
// coordinate is itself the little-endian base-p field encoding. The index is
// therefore a string of r*d base-p digits, and vector addition is digitwise
// addition mod p without carries.
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "field.hpp"

namespace fqsalem {

using Index = std::uint64_t;
using Vector = std::vector<Elem>;

/// F_q^d with canonical indexing.
class Space {
public:
    Space(Field field, unsigned d) : field_(std::move(field)), d_(d) {
        if (d == 0) throw DomainError("dimension must be positive");
        u128 n = 1;
        for (unsigned i = 0; i < d; ++i) {
            n *= field_.q();
            if (n > (u128{1} << 63)) throw DomainError("q^d exceeds the 63-bit index range");
        }
        size_ = static_cast<std::uint64_t>(n);
        digits_ = field_.r() * d;
        pow_q_.resize(d);
        std::uint64_t acc = 1;
        for (unsigned i = d; i-- > 0;) {
            pow_q_[i] = acc;
            acc *= field_.q();
        }
    }

    [[nodiscard]] const Field& field() const { return field_; }
    [[nodiscard]] unsigned dim() const { return d_; }
    /// q^d.
    [[nodiscard]] std::uint64_t size() const { return size_; }

    [[nodiscard]] Index encode(const Vector& x) const {
        if (x.size() != d_) throw DomainError("vector has wrong dimension");
        Index idx = 0;
        for (unsigned i = 0; i < d_; ++i) {
            if (x[i].v >= field_.q()) throw DomainError("coordinate out of range");
            idx += x[i].v * pow_q_[i];
        }
        return idx;
    }
    [[nodiscard]] Vector decode(Index idx) const {
        Vector x(d_);
        for (unsigned i = 0; i < d_; ++i) x[i] = coord(idx, i);
        return x;
    }
    [[nodiscard]] Elem coord(Index idx, unsigned i) const { return {idx / pow_q_[i] % field_.q()}; }

    [[nodiscard]] Index add(Index a, Index b) const {
        const std::uint64_t p = field_.p();
        Index out = 0, scale = 1;
        for (unsigned j = 0; j < digits_; ++j) {
            std::uint64_t s = a % p + b % p;
            if (s >= p) s -= p;
            out += s * scale;
            scale *= p;
            a /= p;
            b /= p;
        }
        return out;
    }
    [[nodiscard]] Index neg(Index a) const {
        const std::uint64_t p = field_.p();
        Index out = 0, scale = 1;
        for (unsigned j = 0; j < digits_; ++j) {
            const std::uint64_t dgt = a % p;
            out += (dgt == 0 ? 0 : p - dgt) * scale;
            scale *= p;
            a /= p;
        }
        return out;
    }
    [[nodiscard]] Index sub(Index a, Index b) const { return add(a, neg(b)); }
    [[nodiscard]] Index scale(Elem lambda, Index a) const {
        Vector x = decode(a);
        for (auto& c : x) c = field_.mul(lambda, c);
        return encode(x);
    }
    [[nodiscard]] Elem dot(Index a, Index b) const {
        Elem s = field_.zero();
        for (unsigned i = 0; i < d_; ++i) s = field_.add(s, field_.mul(coord(a, i), coord(b, i)));
        return s;
    }
    [[nodiscard]] Elem norm(Index a) const { return dot(a, a); }

    /// Throws BudgetError when a full scan of F_q^d would exceed `budget`.
    void require_scan(std::uint64_t budget) const {
        if (size_ > budget) {
            throw BudgetError("full scan of F_q^d needs " + std::to_string(size_) + " steps, budget " + std::to_string(budget));
        }
    }

    friend bool operator==(const Space& a, const Space& b) { return a.d_ == b.d_ && a.field_ == b.field_; }

private:
    Field field_;
    unsigned d_;
    std::uint64_t size_ = 0;
    unsigned digits_ = 0;
    std::vector<std::uint64_t> pow_q_;
};

/// norm(x) = x_1^2 + ... + x_d^2.
inline Elem norm(const Field& F, const Vector& x) {
    Elem s = F.zero();
    for (auto c : x) s = F.add(s, F.square(c));
    return s;
}

inline Elem dot(const Field& F, const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw DomainError("dot product of vectors with different dimensions");
    Elem s = F.zero();
    for (std::size_t i = 0; i < x.size(); ++i) s = F.add(s, F.mul(x[i], y[i]));
    return s;
}

/// Deduplicated, canonically sorted set of points of one Space.
class PointSet {
public:
    explicit PointSet(Space space) : space_(std::move(space)) {}
    PointSet(Space space, std::vector<Index> points) : space_(std::move(space)), points_(std::move(points)) {
        for (auto i : points_) {
            if (i >= space_.size()) throw DomainError("point index out of range");
        }
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    }
    static PointSet from_vectors(const Space& space, const std::vector<Vector>& xs) {
        std::vector<Index> idx;
        idx.reserve(xs.size());
        for (const auto& x : xs) idx.push_back(space.encode(x));
        return PointSet(space, std::move(idx));
    }

    [[nodiscard]] const Space& space() const { return space_; }
    [[nodiscard]] const Field& field() const { return space_.field(); }
    [[nodiscard]] unsigned dim() const { return space_.dim(); }
    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] bool empty() const { return points_.empty(); }
    [[nodiscard]] const std::vector<Index>& points() const { return points_; }
    [[nodiscard]] auto begin() const { return points_.begin(); }
    [[nodiscard]] auto end() const { return points_.end(); }
    [[nodiscard]] bool contains(Index i) const { return std::binary_search(points_.begin(), points_.end(), i); }

    /// Copy with one more point; duplicates leave the set unchanged.
    [[nodiscard]] PointSet with(Index i) const {
        auto pts = points_;
        pts.push_back(i);
        return PointSet(space_, std::move(pts));
    }
    /// E + v.
    [[nodiscard]] PointSet translate(Index v) const {
        std::vector<Index> pts;
        pts.reserve(points_.size());
        for (auto x : points_) pts.push_back(space_.add(x, v));
        return PointSet(space_, std::move(pts));
    }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.space_ == b.space_ && a.points_ == b.points_; }

private:
    Space space_;
    std::vector<Index> points_;
};

/// Entry of a hyperplane multiset: the hyperplane a.x = b with a multiplicity.
struct HyperplaneEntry {
    Index a = 0;
    Elem b;
    std::uint64_t mult = 0;
    bool degenerate = false;  ///< a = 0 is permitted only when set
};

/// Multiset of (a, b) pairs with explicit multiplicities, ordered by (a, b).
class HyperplaneMultiset {
public:
    explicit HyperplaneMultiset(Space space) : space_(std::move(space)) {}

    /// Adds `mult` copies of (a, b). a = 0 requires `allow_degenerate`.
    void add(Index a, Elem b, std::uint64_t mult = 1, bool allow_degenerate = false) {
        if (mult == 0) return;
        if (a >= space_.size()) throw DomainError("hyperplane normal out of range");
        if (b.v >= space_.field().q()) throw DomainError("hyperplane offset out of range");
        if (a == 0 && !allow_degenerate) throw DomainError("hyperplane with zero normal vector");
        auto& e = entries_[{a, b.v}];
        e.a = a;
        e.b = b;
        e.mult += mult;
        e.degenerate = e.degenerate || a == 0;
    }

    [[nodiscard]] const Space& space() const { return space_; }
    [[nodiscard]] std::size_t distinct() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    /// |P'| = sum of multiplicities.
    [[nodiscard]] std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& [k, e] : entries_) t += e.mult;
        return t;
    }
    [[nodiscard]] bool has_zero_offset() const {
        return std::any_of(entries_.begin(), entries_.end(), [](const auto& kv) { return kv.second.b.v == 0; });
    }
    [[nodiscard]] std::vector<HyperplaneEntry> entries() const {
        std::vector<HyperplaneEntry> out;
        out.reserve(entries_.size());
        for (const auto& [k, e] : entries_) out.push_back(e);
        return out;
    }
    /// Sum of mult^exponent over distinct entries.
    [[nodiscard]] double power_sum(double exponent) const {
        std::vector<double> terms;
        terms.reserve(entries_.size());
        for (const auto& [k, e] : entries_) terms.push_back(std::pow(static_cast<double>(e.mult), exponent));
        return pairwise_sum<double>(terms);
    }
    /// Exact sum of mult^2.
    [[nodiscard]] u128 square_sum() const {
        u128 s = 0;
        for (const auto& [k, e] : entries_) s = checked_add(s, checked_mul(e.mult, e.mult));
        return s;
    }

    friend bool operator==(const HyperplaneMultiset& a, const HyperplaneMultiset& b) {
        if (!(a.space_ == b.space_) || a.entries_.size() != b.entries_.size()) return false;
        auto it = b.entries_.begin();
        for (const auto& [k, e] : a.entries_) {
            if (k != it->first || e.mult != it->second.mult) return false;
            ++it;
        }
        return true;
    }

private:
    Space space_;
    std::map<std::pair<Index, std::uint64_t>, HyperplaneEntry> entries_;
};

// ---------------------------------------------------------------------------
// Enumerations

inline PointSet full_space(const Space& S, std::uint64_t budget = kDefaultBudget) {
    S.require_scan(budget);
    std::vector<Index> pts(S.size());
    for (Index i = 0; i < S.size(); ++i) pts[i] = i;
    return PointSet(S, std::move(pts));
}

/// S_j = { x : ||x|| = j }.
inline PointSet sphere(const Space& S, Elem j, std::uint64_t budget = kDefaultBudget) {
    S.require_scan(budget);
    std::vector<Index> pts;
    for (Index i = 0; i < S.size(); ++i) {
        if (S.norm(i) == j) pts.push_back(i);
    }
    return PointSet(S, std::move(pts));
}

/// { x : x_1^2 + ... + x_{d-1}^2 = x_d }, enumerated as a graph over the first d-1 coordinates.
inline PointSet paraboloid(const Space& S, std::uint64_t budget = kDefaultBudget) {
    if (S.dim() < 2) throw DomainError("paraboloid needs d >= 2");
    const Field& F = S.field();
    const Space base(F, S.dim() - 1);
    base.require_scan(budget);
    std::vector<Index> pts;
    pts.reserve(base.size());
    for (Index i = 0; i < base.size(); ++i) {
        Vector x = base.decode(i);
        x.push_back(norm(F, x));
        pts.push_back(S.encode(x));
    }
    return PointSet(S, std::move(pts));
}

/// Rotation (a -b; b a) of F_q^2 with a^2 + b^2 = 1.
struct Rotation {
    Elem a;
    Elem b;
    friend bool operator==(const Rotation&, const Rotation&) = default;
};

inline Rotation compose(const Field& F, const Rotation& x, const Rotation& y) {
    return {F.sub(F.mul(x.a, y.a), F.mul(x.b, y.b)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.a))};
}

inline Rotation rotation_power(const Field& F, Rotation g, std::uint64_t e) {
    Rotation r{F.one(), F.zero()};
    while (e != 0) {
        if (e & 1U) r = compose(F, r, g);
        g = compose(F, g, g);
        e >>= 1U;
    }
    return r;
}

/// Order of the rotation group: q + 1 when q = 3 mod 4, q - 1 when q = 1 mod 4.
inline std::uint64_t rotation_group_order(const Field& F) { return F.q() % 4 == 3 ? F.q() + 1 : F.q() - 1; }

inline std::uint64_t rotation_order(const Field& F, const Rotation& g) {
    const Rotation id{F.one(), F.zero()};
    std::uint64_t n = rotation_group_order(F);
    for (auto ell : detail::prime_divisors(n)) {
        while (n % ell == 0 && rotation_power(F, g, n / ell) == id) n /= ell;
    }
    return n;
}

/// Generator of the cyclic rotation group: the first unit-circle point (a, b), in
/// canonical order, whose rotation has full order.
inline Rotation rotation_group_generator(const Field& F) {
    const std::uint64_t n = rotation_group_order(F);
    const auto primes = detail::prime_divisors(n);
    const Rotation id{F.one(), F.zero()};
    for (std::uint64_t a = 0; a < F.q(); ++a) {
        const Elem ea{a};
        for (const Elem eb : sqrt_in_field(F, F.sub(F.one(), F.square(ea)))) {
            const Rotation g{ea, eb};
            bool full = true;
            for (auto ell : primes) {
                if (rotation_power(F, g, n / ell) == id) {
                    full = false;
                    break;
                }
            }
            if (full) return g;
        }
    }
    throw Error("internal: rotation group has no generator");
}

/// Applies g to coordinates (i0, i0 + 1) of x.
inline Index rotate(const Space& S, const Rotation& g, Index x, unsigned i0 = 0) {
    if (i0 + 1 >= S.dim()) throw DomainError("rotation needs two coordinates");
    const Field& F = S.field();
    Vector v = S.decode(x);
    const Elem x0 = v[i0], x1 = v[i0 + 1];
    v[i0] = F.sub(F.mul(g.a, x0), F.mul(g.b, x1));
    v[i0 + 1] = F.add(F.mul(g.b, x0), F.mul(g.a, x1));
    return S.encode(v);
}

inline PointSet rotate(const PointSet& E, const Rotation& g, unsigned i0 = 0) {
    std::vector<Index> pts;
    pts.reserve(E.size());
    for (auto x : E) pts.push_back(rotate(E.space(), g, x, i0));
    return PointSet(E.space(), std::move(pts));
}

// ---------------------------------------------------------------------------
// File I/O
//
//   q=<p>^<r> [modulus=<c_0,...,c_r>]
//   d=<d>
//   # comments allowed from here on
//   x_1 ... x_d                             (point-set file)
//   a_1 ... a_d b=<int> mult=<int> [degenerate]   (hyperplane file)

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::uint64_t parse_coord(const std::string& tok, std::uint64_t q) {
    std::uint64_t v;
    try {
        const u128 w = parse_u128(tok);
        if (w >= q) throw FormatError("coordinate " + tok + " out of range for q=" + std::to_string(q));
        v = static_cast<std::uint64_t>(w);
    } catch (const OverflowError&) {
        throw FormatError("coordinate " + tok + " out of range");
    }
    return v;
}

inline Space read_space_header(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("missing field header");
    Field F = Field::parse_header(line);
    if (!std::getline(in, line) || line.substr(0, 2) != "d=") throw FormatError("missing d=<d> line");
    u128 d;
    try {
        d = parse_u128(line.substr(2));
    } catch (const Error&) {
        throw FormatError("malformed dimension line '" + line + "'");
    }
    if (d == 0 || d > 64) throw FormatError("unsupported dimension");
    return Space(F, static_cast<unsigned>(d));
}

inline bool skip_line(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

}  // namespace detail

inline void write_pointset(std::ostream& out, const PointSet& E, const std::string& comment = {}) {
    out << E.field().header() << '\n' << "d=" << E.dim() << '\n';
    if (!comment.empty()) out << "# " << comment << '\n';
    for (auto idx : E) {
        const Vector x = E.space().decode(idx);
        for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << x[i].v;
        out << '\n';
    }
}

inline PointSet read_pointset(std::istream& in) {
    const Space S = detail::read_space_header(in);
    std::vector<Index> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (detail::skip_line(line)) continue;
        const auto toks = detail::split_ws(line);
        if (toks.size() != S.dim()) throw FormatError("point line has " + std::to_string(toks.size()) + " coordinates, expected " + std::to_string(S.dim()));
        Vector x(S.dim());
        for (unsigned i = 0; i < S.dim(); ++i) x[i] = Elem{detail::parse_coord(toks[i], S.field().q())};
        pts.push_back(S.encode(x));
    }
    return PointSet(S, std::move(pts));
}

inline void write_pointset_file(const std::string& path, const PointSet& E, const std::string& comment = {}) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    write_pointset(out, E, comment);
}

inline PointSet read_pointset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    return read_pointset(in);
}

inline void write_hyperplanes(std::ostream& out, const HyperplaneMultiset& H) {
    const Space& S = H.space();
    out << S.field().header() << '\n' << "d=" << S.dim() << '\n';
    for (const auto& e : H.entries()) {
        const Vector a = S.decode(e.a);
        for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << a[i].v;
        out << " b=" << e.b.v << " mult=" << e.mult;
        if (e.degenerate) out << " degenerate";
        out << '\n';
    }
}

inline HyperplaneMultiset read_hyperplanes(std::istream& in) {
    const Space S = detail::read_space_header(in);
    HyperplaneMultiset H(S);
    std::string line;
    while (std::getline(in, line)) {
        if (detail::skip_line(line)) continue;
        auto toks = detail::split_ws(line);
        bool degenerate = false;
        if (!toks.empty() && toks.back() == "degenerate") {
            degenerate = true;
            toks.pop_back();
        }
        if (toks.size() != S.dim() + 2) throw FormatError("malformed hyperplane line '" + line + "'");
        Vector a(S.dim());
        for (unsigned i = 0; i < S.dim(); ++i) a[i] = Elem{detail::parse_coord(toks[i], S.field().q())};
        const auto& bt = toks[S.dim()];
        const auto& mt = toks[S.dim() + 1];
        if (bt.substr(0, 2) != "b=" || mt.substr(0, 5) != "mult=") throw FormatError("malformed hyperplane line '" + line + "'");
        const Elem b{detail::parse_coord(bt.substr(2), S.field().q())};
        const u128 mult = parse_u128(mt.substr(5));
        if (mult == 0 || mult > std::numeric_limits<std::uint64_t>::max()) throw FormatError("bad multiplicity in '" + line + "'");
        H.add(S.encode(a), b, static_cast<std::uint64_t>(mult), degenerate);
    }
    return H;
}

inline void write_hyperplanes_file(const std::string& path, const HyperplaneMultiset& H) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    write_hyperplanes(out, H);
}

inline HyperplaneMultiset read_hyperplanes_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    return read_hyperplanes(in);
}

}  // namespace fqsalem

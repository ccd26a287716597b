// Experiment runner: JSON configs in, deterministic JSON reports out.
//
// A config names one field, a default dimension, a dictionary of point sets and
// hyperplane multisets, a list of analyses and a list of gates. Sets are built
// sequentially; analyses are independent and may run on several threads, each
// writing to its own slot, so the report does not depend on the worker count.
// Wall-clock timings go to a separate sidecar so the report stays byte-stable.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "common.hpp"
#include "constructions.hpp"
#include "distance.hpp"
#include "energy.hpp"
#include "field.hpp"
#include "geometry.hpp"
#include "incidence.hpp"
#include "ranges.hpp"
#include "spectral.hpp"

namespace fqsalem::harness {

using json = nlohmann::ordered_json;

/// Process exit codes.
enum ExitCode : int { kOk = 0, kGateFailure = 2, kConfigError = 3, kBudgetExceeded = 4 };

/// Maps an exception to its exit code.
inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const BudgetError*>(&e) != nullptr || dynamic_cast<const OverflowError*>(&e) != nullptr) {
        return kBudgetExceeded;
    }
    return kConfigError;
}

// ---------------------------------------------------------------------------
// Brute-force oracles. Deliberately literal; they share no code with the fast paths.

namespace oracle {

/// Quadruple loop over E^4 counting x1 + x2 = x3 + x4 coordinatewise.
inline u128 lambda4(const PointSet& E) {
    const Space& S = E.space();
    const Field& F = S.field();
    std::vector<Vector> v;
    for (auto x : E) v.push_back(S.decode(x));
    u128 count = 0;
    for (const auto& a : v) {
        for (const auto& b : v) {
            for (const auto& c : v) {
                for (const auto& d : v) {
                    bool eq = true;
                    for (unsigned i = 0; i < S.dim() && eq; ++i) eq = F.add(a[i], b[i]) == F.add(c[i], d[i]);
                    count += eq ? 1 : 0;
                }
            }
        }
    }
    return count;
}

/// Map t -> #{(x, y) in E x F : ||x - y|| = t}, zero counts omitted.
inline std::map<std::uint64_t, std::uint64_t> distances(const PointSet& E, const PointSet& Fs) {
    const Space& S = E.space();
    const Field& K = S.field();
    std::map<std::uint64_t, std::uint64_t> out;
    for (auto x : E) {
        const Vector a = S.decode(x);
        for (auto y : Fs) {
            const Vector b = S.decode(y);
            Elem t = K.zero();
            for (unsigned i = 0; i < S.dim(); ++i) t = K.add(t, K.square(K.sub(a[i], b[i])));
            ++out[t.v];
        }
    }
    return out;
}

/// Double loop over points and hyperplane entries.
inline u128 incidences(const PointSet& P, const HyperplaneMultiset& H) {
    const Space& S = P.space();
    const Field& F = S.field();
    u128 n = 0;
    for (auto x : P) {
        const Vector xv = S.decode(x);
        for (const auto& e : H.entries()) {
            const Vector a = S.decode(e.a);
            Elem dotv = F.zero();
            for (unsigned i = 0; i < S.dim(); ++i) dotv = F.add(dotv, F.mul(a[i], xv[i]));
            if (dotv == e.b) n += e.mult;
        }
    }
    return n;
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// JSON value helpers

/// Exact integers serialize as decimal strings.
inline json exact(u128 v) { return to_string(v); }

/// Reals carry 12 significant digits; non-finite values become null.
inline json real(double x) {
    if (!std::isfinite(x)) return nullptr;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

inline json rational(const Rational& r) { return r.str(); }

inline std::string where(const std::string& path) { return path.empty() ? "config" : path; }

inline const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(where(path) + ": missing key '" + key + "'");
    return j.at(key);
}

inline std::uint64_t get_uint(const json& j, const std::string& path) {
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) return j.get<std::uint64_t>();
    if (j.is_string()) {
        const u128 v = parse_u128(j.get<std::string>());
        if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
    }
    throw FormatError(where(path) + ": expected a nonnegative integer");
}

inline std::uint64_t get_uint(const json& j, const std::string& key, std::uint64_t fallback, const std::string& path) {
    return j.contains(key) ? get_uint(j.at(key), path + "." + key) : fallback;
}

inline std::int64_t get_int(const json& j, const std::string& path) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    throw FormatError(where(path) + ": expected an integer");
}

inline double get_real(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf" || s == "infinity") return kInfinity;
        return Rational::parse(s).to_double();
    }
    throw FormatError(where(path) + ": expected a number");
}

inline Rational get_rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number()) return Rational::parse(j.dump());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw FormatError(where(path) + ": expected a rational (\"a/b\", integer or decimal)");
}

inline std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw FormatError(where(path) + ": expected a string");
    return j.get<std::string>();
}

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
    if (!j.is_object()) throw FormatError(where(path) + ": expected an object");
    for (const auto& [k, v] : j.items()) {
        if (allowed.count(k) == 0) throw FormatError(where(path) + ": unknown key '" + k + "'");
    }
}

/// 64-bit FNV-1a, used to derive per-name seeds.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Rethrows `e` with `stage` prefixed, preserving the error category.
[[noreturn]] inline void rethrow_in(const std::string& stage) {
    try {
        throw;
    } catch (const BudgetError& e) {
        throw BudgetError(stage + ": " + e.what());
    } catch (const OverflowError& e) {
        throw OverflowError(stage + ": " + e.what());
    } catch (const FormatError& e) {
        throw FormatError(stage + ": " + e.what());
    } catch (const DomainError& e) {
        throw DomainError(stage + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(stage + ": " + e.what());
    } catch (const std::exception& e) {
        throw Error(stage + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Build context

struct RunOptions {
    unsigned jobs = 1;
    std::optional<std::string> out_dir;      ///< where CSV side outputs go
    std::filesystem::path base_dir = ".";     ///< resolves relative file paths in the config
    std::optional<std::uint64_t> seed;        ///< overrides the config seed
    std::optional<std::uint64_t> budget;      ///< overrides the config budget
};

class Context {
public:
    Context(const json& config, const RunOptions& opts) : config_(config), opts_(opts) {
        const json& f = require(config, "field", "");
        check_keys(f, {"p", "r", "modulus"}, "field");
        const std::uint64_t p = get_uint(require(f, "p", "field"), "field.p");
        if (f.contains("modulus")) {
            std::vector<std::uint64_t> mod;
            for (const auto& c : f.at("modulus")) mod.push_back(get_uint(c, "field.modulus"));
            field_ = Field::with_modulus(p, mod);
        } else {
            const std::uint64_t r = get_uint(f, "r", 1, "field");
            if (r == 0 || r > 64) throw DomainError("field.r must lie in [1, 64]");
            field_ = Field::create(p, static_cast<unsigned>(r));
        }
        dimension_ = static_cast<unsigned>(get_uint(config, "dimension", 2, ""));
        if (dimension_ == 0) throw DomainError("dimension must be positive");
        seed_ = opts.seed ? *opts.seed : get_uint(config, "seed", 0, "");
        budget_ = opts.budget ? *opts.budget : get_uint(config, "budget", kDefaultBudget, "");
    }

    [[nodiscard]] const Field& field() const { return *field_; }
    [[nodiscard]] unsigned dimension() const { return dimension_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t budget() const { return budget_; }
    [[nodiscard]] const RunOptions& options() const { return opts_; }
    [[nodiscard]] std::uint64_t seed_for(const std::string& name) const { return child_seed(seed_, fnv1a(name)); }

    const PointSet& set(const std::string& name) {
        if (auto it = sets_.find(name); it != sets_.end()) return it->second;
        const json& defs = config_.contains("sets") ? config_.at("sets") : json::object();
        if (!defs.contains(name)) throw FormatError("unknown set '" + name + "'");
        if (!building_.insert("set:" + name).second) throw FormatError("set '" + name + "' depends on itself");
        try {
            auto built = build_set(name, defs.at(name));
            building_.erase("set:" + name);
            return sets_.emplace(name, std::move(built)).first->second;
        } catch (...) {
            rethrow_in("set '" + name + "'");
        }
    }

    const HyperplaneMultiset& hyperplanes(const std::string& name) {
        if (auto it = hyperplanes_.find(name); it != hyperplanes_.end()) return it->second;
        const json& defs = config_.contains("hyperplanes") ? config_.at("hyperplanes") : json::object();
        if (!defs.contains(name)) throw FormatError("unknown hyperplane multiset '" + name + "'");
        if (!building_.insert("hyp:" + name).second) throw FormatError("hyperplanes '" + name + "' depend on themselves");
        try {
            auto built = build_hyperplanes(name, defs.at(name));
            building_.erase("hyp:" + name);
            return hyperplanes_.emplace(name, std::move(built)).first->second;
        } catch (...) {
            rethrow_in("hyperplanes '" + name + "'");
        }
    }

    /// Builds every declared set and multiset, in key order.
    void build_all() {
        if (config_.contains("sets")) {
            for (const auto& [k, v] : config_.at("sets").items()) set(k);
        }
        if (config_.contains("hyperplanes")) {
            for (const auto& [k, v] : config_.at("hyperplanes").items()) hyperplanes(k);
        }
    }

    [[nodiscard]] const std::map<std::string, PointSet>& sets() const { return sets_; }
    [[nodiscard]] const std::map<std::string, HyperplaneMultiset>& all_hyperplanes() const { return hyperplanes_; }

    [[nodiscard]] std::filesystem::path resolve(const std::string& p) const {
        const std::filesystem::path path(p);
        return path.is_absolute() ? path : opts_.base_dir / path;
    }

private:
    unsigned dim_of(const json& spec, const std::string& path) const {
        const auto d = get_uint(spec, "d", dimension_, path);
        if (d == 0 || d > 64) throw DomainError("dimension must lie in [1, 64]");
        return static_cast<unsigned>(d);
    }

    Vector vector_of(const json& j, unsigned d, const std::string& path) const {
        if (!j.is_array() || j.size() != d) throw FormatError(path + ": expected " + std::to_string(d) + " coordinates");
        Vector v;
        for (const auto& c : j) v.push_back(field_->from_int(get_int(c, path)));
        return v;
    }

    PointSet build_set(const std::string& name, const json& spec) {
        const std::string path = "sets." + name;
        const std::string kind = get_string(require(spec, "kind", path), path + ".kind");
        const Field& F = *field_;
        const unsigned d = dim_of(spec, path);
        const Space S(F, d);
        if (kind == "full") return full_space(S, budget_);
        if (kind == "sphere") return sphere(S, F.from_int(get_int(require(spec, "radius", path), path + ".radius")), budget_);
        if (kind == "paraboloid") return paraboloid(S, budget_);
        if (kind == "isotropic") {
            return isotropic_subspace(F, d, static_cast<unsigned>(get_uint(spec, "m", d / 2, path)), budget_);
        }
        if (kind == "isotropicSearch") {
            auto found = isotropic_subspace_search(F, d, static_cast<unsigned>(get_uint(spec, "m", d / 2, path)), budget_);
            if (!found) throw DomainError("no isotropic subspace of the requested dimension");
            return *found;
        }
        if (kind == "orbit") {
            std::optional<Vector> base;
            if (spec.contains("base")) base = vector_of(spec.at("base"), 2, path + ".base");
            return rotation_orbit(F, base);
        }
        if (kind == "random") {
            const auto n = get_uint(require(spec, "size", path), path + ".size");
            return random_set(S, n, get_uint(spec, "seed", seed_for(name), path), budget_);
        }
        if (kind == "points") {
            std::vector<Vector> xs;
            for (const auto& p : require(spec, "points", path)) xs.push_back(vector_of(p, d, path + ".points"));
            return PointSet::from_vectors(S, xs);
        }
        if (kind == "hyperplane") {
            const Vector a = vector_of(require(spec, "a", path), d, path + ".a");
            const Elem b = F.from_int(get_int(require(spec, "b", path), path + ".b"));
            S.require_scan(budget_);
            const Index ai = S.encode(a);
            if (ai == 0) throw DomainError("hyperplane with zero normal vector");
            std::vector<Index> pts;
            for (Index x = 0; x < S.size(); ++x) {
                if (S.dot(ai, x) == b) pts.push_back(x);
            }
            return PointSet(S, std::move(pts));
        }
        if (kind == "file") {
            PointSet E = read_pointset_file(resolve(get_string(require(spec, "path", path), path + ".path")).string());
            if (!(E.field() == F)) throw DomainError("point file is over a different field");
            return E;
        }
        if (kind == "product") {
            const auto& factors = require(spec, "factors", path);
            if (!factors.is_array() || factors.empty()) throw FormatError(path + ".factors: expected a nonempty list");
            PointSet E = set(get_string(factors.at(0), path + ".factors"));
            for (std::size_t i = 1; i < factors.size(); ++i) E = product_set(E, set(get_string(factors.at(i), path + ".factors")));
            return E;
        }
        if (kind == "thin") {
            const PointSet& X = set(get_string(require(spec, "of", path), path + ".of"));
            return bernoulli_thin(X, get_real(require(spec, "theta", path), path + ".theta"),
                                  get_uint(spec, "seed", seed_for(name), path));
        }
        if (kind == "conjectureWitness") {
            const Rational s = get_rational(require(spec, "s", path), path + ".s");
            return conjecture_witness(d, s, F.p(), F.r(), get_uint(spec, "seed", seed_for(name), path), budget_).set;
        }
        if (kind == "subgroupPower") return subgroup_power(F, get_uint(require(spec, "m", path), path + ".m"), d, budget_);
        if (kind == "twoSetPair") {
            const std::string role = get_string(require(spec, "role", path), path + ".role");
            auto pair = two_set_sharpness(F, d, budget_);
            if (role == "E") return pair.first;
            if (role == "F") return pair.second;
            throw FormatError(path + ".role: expected \"E\" or \"F\"");
        }
        if (kind == "lift") return lift_to_paraboloid(set(get_string(require(spec, "of", path), path + ".of")));
        if (kind == "difference") return difference_set(set(get_string(require(spec, "of", path), path + ".of")), budget_);
        if (kind == "sphereDilation") return sphere_incidence_setup(set(get_string(require(spec, "of", path), path + ".of")), budget_).points;
        throw FormatError(path + ".kind: unknown set kind '" + kind + "'");
    }

    HyperplaneMultiset build_hyperplanes(const std::string& name, const json& spec) {
        const std::string path = "hyperplanes." + name;
        const std::string kind = get_string(require(spec, "kind", path), path + ".kind");
        const Field& F = *field_;
        const unsigned d = dim_of(spec, path);
        const Space S(F, d);
        if (kind == "list") {
            HyperplaneMultiset H(S);
            for (const auto& e : require(spec, "entries", path)) {
                const Vector a = vector_of(require(e, "a", path), d, path + ".entries.a");
                H.add(S.encode(a), F.from_int(get_int(require(e, "b", path), path + ".entries.b")),
                      get_uint(e, "mult", 1, path), e.value("degenerate", false));
            }
            return H;
        }
        if (kind == "random") {
            const auto count = get_uint(require(spec, "count", path), path + ".count");
            const bool nonzero_b = spec.value("nonzeroOffset", false);
            const std::uint64_t max_mult = get_uint(spec, "maxMult", 1, path);
            CounterRng rng(get_uint(spec, "seed", seed_for(name), path));
            HyperplaneMultiset H(S);
            for (std::uint64_t i = 0; i < count; ++i) {
                const Index a = 1 + rng.below(S.size() - 1);
                const Elem b{nonzero_b ? 1 + rng.below(F.q() - 1) : rng.below(F.q())};
                H.add(a, b, 1 + rng.below(max_mult));
            }
            return H;
        }
        if (kind == "dilate") return dilate_hyperplanes(hyperplanes(get_string(require(spec, "of", path), path + ".of")));
        if (kind == "file") {
            auto H = read_hyperplanes_file(resolve(get_string(require(spec, "path", path), path + ".path")).string());
            if (!(H.space().field() == F)) throw DomainError("hyperplane file is over a different field");
            return H;
        }
        if (kind == "sphereDifferences") {
            return sphere_incidence_setup(set(get_string(require(spec, "of", path), path + ".of")), budget_).diffs;
        }
        if (kind == "distanceEnergy") {
            return thm_distance_energy_setup(set(get_string(require(spec, "of", path), path + ".of")), budget_).hyperplanes;
        }
        throw FormatError(path + ".kind: unknown hyperplane kind '" + kind + "'");
    }

    const json& config_;
    RunOptions opts_;
    std::optional<Field> field_;
    unsigned dimension_ = 2;
    std::uint64_t seed_ = 0;
    std::uint64_t budget_ = kDefaultBudget;
    std::map<std::string, PointSet> sets_;
    std::map<std::string, HyperplaneMultiset> hyperplanes_;
    std::set<std::string> building_;
};

// ---------------------------------------------------------------------------
// Analyses

/// Read-only view handed to analyses after all sets are built.
struct Inputs {
    const Field& field;
    const std::map<std::string, PointSet>& sets;
    const std::map<std::string, HyperplaneMultiset>& hyperplanes;
    std::uint64_t budget;
    const RunOptions& options;

    const PointSet& set(const json& a, const std::string& key, const std::string& path) const {
        const std::string name = get_string(require(a, key, path), path + "." + key);
        auto it = sets.find(name);
        if (it == sets.end()) throw FormatError(path + "." + key + ": unknown set '" + name + "'");
        return it->second;
    }
    const HyperplaneMultiset& hyp(const json& a, const std::string& key, const std::string& path) const {
        const std::string name = get_string(require(a, key, path), path + "." + key);
        auto it = hyperplanes.find(name);
        if (it == hyperplanes.end()) throw FormatError(path + "." + key + ": unknown hyperplane multiset '" + name + "'");
        return it->second;
    }
};

inline std::optional<double> optional_s(const json& a, const std::string& path) {
    if (!a.contains("s")) return std::nullopt;
    const double s = get_real(a.at("s"), path + ".s");
    if (s < 0.25 || s > 0.5) throw DomainError(path + ".s must lie in [1/4, 1/2]");
    return s;
}

inline json field_summary(const Field& F) {
    json j;
    j["p"] = F.p();
    j["r"] = F.r();
    j["q"] = F.q();
    j["header"] = F.header();
    j["primitive"] = F.primitive().v;
    json tb = json::array();
    for (unsigned k = 0; k < F.r(); ++k) tb.push_back(F.trace(Elem{static_cast<std::uint64_t>(checked_pow(F.p(), k))}));
    j["traceBasis"] = tb;
    const auto minus_one = F.neg(F.one());
    j["minusOneIsSquare"] = F.is_square(minus_one);
    return j;
}

inline json ranges_report(const json& a, const std::string& path) {
    ThresholdQuery q;
    q.d = static_cast<unsigned>(get_uint(require(a, "d", path), path + ".d"));
    q.s = get_rational(require(a, "s", path), path + ".s");
    q.tag = parse_geometry(a.value("tag", std::string("generic")));
    if (a.contains("eps")) q.eps = get_rational(a.at("eps"), path + ".eps");
    if (a.contains("variety")) {
        const auto& v = a.at("variety");
        q.variety = VarietyParams{static_cast<unsigned>(get_uint(require(v, "n", path), path + ".variety.n")),
                                  get_rational(require(v, "ell", path), path + ".variety.ell"),
                                  get_rational(require(v, "alpha", path), path + ".variety.alpha")};
    }
    json j;
    j["d"] = q.d;
    j["s"] = rational(q.s);
    j["tag"] = to_string(q.tag);
    j["conjecturedAlpha"] = rational(conjectured_alpha(q.d, q.s));
    const auto t = thm1_threshold(q.d, q.s);
    j["thm1"] = {{"value", rational(t.value)}, {"branch", t.branch},
                 {"incidenceAny", rational(t.incidence_any)}, {"incidenceSalem", rational(t.incidence_salem)}};
    j["fraser"] = rational(fraser_threshold(q.d, q.s));
    if (q.d >= 3) j["sphere"] = rational(sphere_threshold(q.d, q.s));
    const SRange table = salem_s_ranges(q);
    json rows = json::array();
    for (const auto& c : table.cases) {
        json row;
        row["label"] = c.label;
        row["sLo"] = rational(c.s_lo);
        row["sHi"] = rational(c.s_hi);
        row["sHiOpen"] = c.s_hi_open;
        row["sizeLo"] = c.lo_formula;
        row["sizeHi"] = c.hi_formula;
        row["windowLo"] = c.window_lo ? json(rational(*c.window_lo)) : json(nullptr);
        row["windowHi"] = c.window_hi ? json(rational(*c.window_hi)) : json(nullptr);
        rows.push_back(std::move(row));
    }
    j["table"] = std::move(rows);
    if (table.nontrivial) j["nontrivial"] = *table.nontrivial;
    if (q.d >= 3) {
        json cond = json::array();
        for (const auto& c : kohsharp_exponents(q.d)) {
            cond.push_back({{"label", c.label}, {"condition", c.condition}, {"value", rational(c.value)}});
        }
        j["conditional"] = std::move(cond);
    }
    return j;
}

inline json incidence_json(const IncidenceReport& r) {
    json j;
    j["N"] = exact(r.N);
    j["sizeP"] = r.size_p;
    j["sizeH"] = r.size_h;
    j["mainTerm"] = r.main_term_exact();
    j["rhsL42"] = real(r.rhs_l42);
    j["rhsL43"] = real(r.rhs_l43);
    j["rhsL46"] = real(r.rhs_l46);
    j["rhsT61"] = real(r.rhs_t61);
    j["t61Weak"] = r.t61_weak;
    j["ratios"] = {{"l42", real(r.ratio(r.rhs_l42))}, {"l43", real(r.ratio(r.rhs_l43))},
                   {"l46", real(r.ratio(r.rhs_l46))}, {"t61", real(r.ratio(r.rhs_t61))}};
    j["s"] = real(r.s);
    j["C"] = real(r.C);
    return j;
}

/// Runs one analysis. `id` names CSV side outputs.
inline json run_analysis(const json& a, const std::string& id, const Inputs& in) {
    const std::string path = "analyses." + id;
    const std::string kind = get_string(require(a, "kind", path), path + ".kind");
    const std::uint64_t budget = in.budget;
    json j;
    j["id"] = id;
    j["kind"] = kind;
    auto csv_path = [&](const std::string& suffix) -> std::optional<std::filesystem::path> {
        if (!a.value("csv", false) || !in.options.out_dir) return std::nullopt;
        return std::filesystem::path(*in.options.out_dir) / (id + suffix);
    };

    if (kind == "field") {
        j["field"] = field_summary(in.field);
    } else if (kind == "size") {
        const auto& E = in.set(a, "set", path);
        j["size"] = E.size();
        j["dimension"] = E.dim();
    } else if (kind == "fourier") {
        const auto& E = in.set(a, "set", path);
        const std::string m = a.value("method", std::string("automatic"));
        const FourierMethod method = m == "fast" ? FourierMethod::fast : m == "direct" ? FourierMethod::direct : FourierMethod::automatic;
        if (m != "fast" && m != "direct" && m != "automatic") throw FormatError(path + ".method: unknown method '" + m + "'");
        const Spectrum spec = fourier(E, method, budget);
        j["parseval"] = real(parseval_sum(spec));
        j["parsevalExpected"] = real(static_cast<double>(E.size()) / static_cast<double>(E.space().size()));
        json norms = json::object();
        const json us = a.contains("norms") ? a.at("norms") : json::array({2, 4, "inf"});
        for (const auto& u : us) {
            const double uv = get_real(u, path + ".norms");
            norms[u.is_string() ? u.get<std::string>() : u.dump()] = real(lp_norm(spec, uv));
        }
        j["norms"] = std::move(norms);
        if (auto p = csv_path("-spectrum.csv")) {
            std::ofstream out(*p);
            write_spectrum_csv(out, spec);
        }
    } else if (kind == "identity") {
        const auto& E = in.set(a, "set", path);
        const Spectrum spec = fourier(E, FourierMethod::automatic, budget);
        json rows = json::array();
        const json ks = a.contains("k") ? a.at("k") : json::array({1, 2, 3});
        double worst = 0;
        for (const auto& kj : ks) {
            const auto k = static_cast<unsigned>(get_uint(kj, path + ".k"));
            const auto c = energy_identity_check(E, spec, k, budget);
            worst = std::max(worst, c.residual);
            rows.push_back({{"k", k}, {"lambda", exact(c.lambda)}, {"lhs", real(c.lhs)}, {"rhs", real(c.rhs)},
                            {"residual", real(c.residual)}});
        }
        j["checks"] = std::move(rows);
        j["maxResidual"] = real(worst);
    } else if (kind == "energy") {
        const auto& E = in.set(a, "set", path);
        const auto k = static_cast<unsigned>(get_uint(a, "k", 2, path));
        const double C = a.contains("C") ? get_real(a.at("C"), path + ".C") : 1.0;
        const auto rep = energy_report(E, k, C, budget);
        j["k"] = k;
        j["size"] = rep.size;
        j["lambda"] = exact(rep.lambda);
        j["backgroundTerm"] = rep.background_term();
        if (rep.salem_s) {
            j["salemS"] = real(*rep.salem_s);
            j["salemDegenerate"] = rep.salem_degenerate;
        }
        if (a.contains("lemmaExponent") && k == 2) {
            j["lemmaRatio"] = real(energy_lemma_ratio(rep.lambda, rep.size, rep.q, get_real(a.at("lemmaExponent"), path + ".lemmaExponent")));
        }
    } else if (kind == "salem") {
        const auto& E = in.set(a, "set", path);
        const double C = a.contains("C") ? get_real(a.at("C"), path + ".C") : 1.0;
        const auto est = salem_parameter(E, C, true, budget);
        j["s"] = real(est.s);
        j["degenerate"] = est.degenerate;
        j["C"] = real(C);
    } else if (kind == "distance") {
        const auto& E = in.set(a, "set", path);
        const auto& F = a.contains("other") ? in.set(a, "other", path) : E;
        const auto prof = distance_profile(E, F, budget);
        j["sizeE"] = prof.size_e;
        j["sizeF"] = prof.size_f;
        j["distinct"] = prof.distinct();
        j["total"] = exact(prof.total());
        j["nu0"] = prof.nu[0];
        j["secondMoment"] = exact(second_moment(prof));
        const auto cs = cs_lower_bound(prof);
        j["csBound"] = real(cs.value());
        if (in.field.q() <= 256) {
            json sup = json::array();
            for (auto t : prof.support()) sup.push_back(t.v);
            j["support"] = std::move(sup);
        }
        if (auto p = csv_path("-profile.csv")) {
            std::ofstream out(*p);
            write_profile_csv(out, prof);
        }
    } else if (kind == "secondMoment") {
        const auto& E = in.set(a, "set", path);
        const auto r = verify_secondmoment_bounds(E, optional_s(a, path), budget);
        j["secondMoment"] = exact(r.second_moment);
        j["lambda4"] = exact(r.lambda4);
        j["s"] = real(r.s);
        j["rhsSalem"] = real(r.rhs_salem);
        j["rhsEnergy"] = real(r.rhs_energy);
        j["ratioSalem"] = real(r.ratio_salem);
        j["ratioEnergy"] = real(r.ratio_energy);
    } else if (kind == "fraser") {
        const auto& E = in.set(a, "set", path);
        const auto r = verify_fraser(E, optional_s(a, path), budget);
        j["distinct"] = r.distances;
        j["differenceSize"] = r.difference_size;
        j["s"] = real(r.s);
        j["differenceBound"] = real(r.difference_bound);
        j["distanceBound"] = real(r.distance_bound);
        j["ratioDifference"] = real(r.ratio_difference);
        j["ratioDistance"] = real(r.ratio_distance);
        j["ratioSphereCover"] = real(r.ratio_sphere_cover);
    } else if (kind == "twoSet") {
        const auto& E = in.set(a, "set", path);
        const auto& F = in.set(a, "other", path);
        const double se = get_real(require(a, "sE", path), path + ".sE");
        const double sf = a.contains("sF") ? get_real(a.at("sF"), path + ".sF") : 0.25;
        const auto r = verify_two_set(E, F, se, sf, budget);
        j["distinct"] = r.distances;
        j["sE"] = real(se);
        j["sF"] = real(sf);
        j["exprSalemPair"] = real(r.expr_salem_pair);
        j["exprOneSalem"] = real(r.expr_one_salem);
        j["ratioSalemPair"] = real(r.ratio_salem_pair);
        j["ratioOneSalem"] = real(r.ratio_one_salem);
    } else if (kind == "incidence") {
        const auto& P = in.set(a, "points", path);
        const auto& H = in.hyp(a, "hyperplanes", path);
        const double C = a.contains("C") ? get_real(a.at("C"), path + ".C") : 1.0;
        j.update(incidence_json(verify_counting_lemmas(P, H, optional_s(a, path), C, budget)));
    } else if (kind == "dilation") {
        const auto& P = in.set(a, "points", path);
        const auto& H = in.hyp(a, "hyperplanes", path);
        const u128 I = count_incidences(P, H, budget);
        const auto D = dilate_hyperplanes(H);
        const u128 N = count_incidences(P, D, budget);
        j["I"] = exact(I);
        j["N"] = exact(N);
        j["dilatedSize"] = D.total();
        j["identityHolds"] = N == checked_mul(I, in.field.q() - 1);
    } else if (kind == "distanceEnergy") {
        const auto& E = in.set(a, "set", path);
        const auto s = thm_distance_energy_setup(E, budget);
        j["xTotal"] = exact(s.x_total());
        j["sumMSquared"] = exact(s.sum_m_squared);
        j["lambda4"] = exact(s.lambda4);
        j["triples"] = exact(s.triples);
        j["onSphere"] = s.on_sphere;
        j["equality"] = s.sum_m_squared == s.lambda4;
        j["distinctEntries"] = s.hyperplanes.distinct();
    } else if (kind == "sphereIncidence") {
        const auto& E = in.set(a, "set", path);
        const auto s = sphere_incidence_setup(E, budget);
        j["radius"] = s.radius.v;
        j["dilatedSize"] = s.points.size();
        j["differenceTotal"] = s.diffs.total();
        j["sumMSquared"] = exact(s.diffs.square_sum());
        j["lambda4"] = exact(s.lambda4);
    } else if (kind == "lift") {
        const auto& E = in.set(a, "set", path);
        const auto L = lift_to_paraboloid(E);
        const u128 le = additive_energy(E, 2, budget);
        const u128 ll = additive_energy(L, 2, budget);
        j["lambda4"] = exact(le);
        j["lambda4Lifted"] = exact(ll);
        j["liftedNotLarger"] = ll <= le;
    } else if (kind == "ranges") {
        j.update(ranges_report(a, path));
    } else if (kind == "corollary") {
        const std::string which = get_string(require(a, "which", path), path + ".which");
        const auto d = static_cast<unsigned>(get_uint(require(a, "d", path), path + ".d"));
        std::optional<VarietyParams> v;
        if (a.contains("variety")) {
            const auto& vj = a.at("variety");
            v = VarietyParams{static_cast<unsigned>(get_uint(require(vj, "n", path), path + ".variety.n")),
                              get_rational(require(vj, "ell", path), path + ".variety.ell"), Rational(1)};
        }
        const CorollaryKind ck = which == "multigroup" ? CorollaryKind::multigroup
                                 : which == "subgroup" ? CorollaryKind::subgroup
                                 : which == "variety"  ? CorollaryKind::variety
                                                       : throw FormatError(path + ".which: unknown corollary '" + which + "'");
        j["which"] = which;
        j["threshold"] = rational(corollary_threshold(ck, d, v));
    } else if (kind == "witness") {
        const auto d = static_cast<unsigned>(get_uint(require(a, "d", path), path + ".d"));
        const Rational s = get_rational(require(a, "s", path), path + ".s");
        const auto w = conjecture_witness(d, s, in.field.p(), in.field.r(), get_uint(a, "seed", 0, path), budget);
        j["branch"] = w.branch;
        j["size"] = w.set.size();
        j["alpha"] = rational(w.alpha);
        j["thetaExponent"] = rational(w.theta_exponent);
        j["theta"] = real(w.theta);
        j["targetExponent"] = rational(w.target_exponent);
        j["finiteRExponent"] = rational(w.finite_r_exponent);
        j["sizeExponent"] = real(std::log(static_cast<double>(w.set.size())) / std::log(static_cast<double>(in.field.q())));
        try {
            j["distinct"] = distance_profile(w.set, budget).distinct();
            const u128 l4 = additive_energy(w.set, 2, budget);
            j["lambda4"] = exact(l4);
            if (w.set.size() >= 2) j["salemS"] = real(salem_parameter_from_energy(l4, w.set.size(), w.set.space().size()));
        } catch (const BudgetError&) {
            j["measured"] = "skipped: over budget";
        }
    } else if (kind == "oracle") {
        const auto& E = in.set(a, "set", path);
        const u128 brute = oracle::lambda4(E);
        j["lambda4Brute"] = exact(brute);
        j["lambda4Fast"] = exact(additive_energy(E, 2, budget));
        const auto dist = oracle::distances(E, E);
        const auto prof = distance_profile(E, budget);
        bool same = dist.size() == prof.distinct();
        for (const auto& [t, c] : dist) same = same && prof.nu[t] == c;
        j["distancesAgree"] = same;
    } else {
        throw FormatError(path + ".kind: unknown analysis kind '" + kind + "'");
    }
    return j;
}

// ---------------------------------------------------------------------------
// Gates

/// Looks up a dotted path like "ratios.l42" or "checks.1.residual".
inline const json* lookup(const json& j, const std::string& dotted) {
    const json* cur = &j;
    std::size_t start = 0;
    while (start <= dotted.size()) {
        const std::size_t dot = dotted.find('.', start);
        const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (cur->is_object() && cur->contains(key)) {
            cur = &cur->at(key);
        } else if (cur->is_array() && !key.empty() && std::all_of(key.begin(), key.end(), ::isdigit) &&
                   std::stoul(key) < cur->size()) {
            cur = &cur->at(std::stoul(key));
        } else {
            return nullptr;
        }
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return cur;
}

struct GateOutcome {
    std::string name;
    bool pass = false;
    json actual;
};

/// Compares exactly when both sides are integers or rationals, else in double.
inline bool compare(const json& actual, const std::string& op, const json& expected, double tol) {
    if (actual.is_boolean() || expected.is_boolean()) {
        if (!actual.is_boolean() || !expected.is_boolean()) return false;
        return op == "==" ? actual == expected : op == "!=" ? actual != expected : false;
    }
    auto as_rational = [](const json& v) -> std::optional<Rational> {
        try {
            if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
            if (v.is_string()) {
                const auto& s = v.get_ref<const std::string&>();
                if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) return Rational::parse(s);
            }
        } catch (const std::exception&) {
        }
        return std::nullopt;
    };
    auto as_big = [](const json& v) -> std::optional<u128> {
        try {
            if (v.is_number_unsigned()) return u128{v.get<std::uint64_t>()};
            if (v.is_string()) return parse_u128(v.get<std::string>());
        } catch (const std::exception&) {
        }
        return std::nullopt;
    };
    if (op != "~=") {
        const auto ba = as_big(actual), bb = as_big(expected);
        if (ba && bb) {
            const u128 x = *ba, y = *bb;
            if (op == "==") return x == y;
            if (op == "!=") return x != y;
            if (op == "<") return x < y;
            if (op == "<=") return x <= y;
            if (op == ">") return x > y;
            if (op == ">=") return x >= y;
        }
        const auto ra = as_rational(actual), rb = as_rational(expected);
        if (ra && rb) {
            if (op == "==") return *ra == *rb;
            if (op == "!=") return *ra != *rb;
            if (op == "<") return *ra < *rb;
            if (op == "<=") return *ra <= *rb;
            if (op == ">") return *ra > *rb;
            if (op == ">=") return *ra >= *rb;
        }
    }
    if (actual.is_null()) return false;
    auto as_real = [](const json& v) -> std::optional<double> {
        try {
            return get_real(v, "gate");
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    const auto xr = as_real(actual), yr = as_real(expected);
    if (!xr || !yr) {
        // Labels such as a branch name compare as text, and only for (in)equality.
        if (!actual.is_string() || !expected.is_string()) return false;
        return op == "==" ? actual == expected : op == "!=" ? actual != expected : false;
    }
    const double x = *xr, y = *yr;
    if (op == "==") return x == y;
    if (op == "!=") return x != y;
    if (op == "<") return x < y;
    if (op == "<=") return x <= y;
    if (op == ">") return x > y;
    if (op == ">=") return x >= y;
    if (op == "~=") return std::abs(x - y) <= tol * std::max(1.0, std::abs(y));
    throw FormatError("unknown gate operator '" + op + "'");
}

// ---------------------------------------------------------------------------
// Run

struct RunResult {
    json report;
    json timings;
    bool gates_pass = true;
};

inline std::string analysis_id(const json& a, std::size_t index) {
    return a.contains("id") ? a.at("id").get<std::string>() : "a" + std::to_string(index);
}

/// Shape checks that do not need the field: known top-level keys, list types, unique ids.
inline void validate_config(const json& c) {
    check_keys(c, {"$schema", "name", "description", "seed", "budget", "field", "dimension", "sets", "hyperplanes",
                   "analyses", "gates"},
               "");
    require(c, "field", "");
    for (const char* key : {"sets", "hyperplanes"}) {
        if (c.contains(key) && !c.at(key).is_object()) throw FormatError(std::string(key) + ": expected an object");
        if (c.contains(key)) {
            for (const auto& [name, spec] : c.at(key).items()) {
                const std::string path = std::string(key) + "." + name;
                if (!spec.is_object()) throw FormatError(path + ": expected an object");
                get_string(require(spec, "kind", path), path + ".kind");
            }
        }
    }
    std::set<std::string> ids;
    if (c.contains("analyses")) {
        if (!c.at("analyses").is_array()) throw FormatError("analyses: expected a list");
        std::size_t i = 0;
        for (const auto& a : c.at("analyses")) {
            if (!a.is_object()) throw FormatError("analyses[" + std::to_string(i) + "]: expected an object");
            if (a.contains("id") && !a.at("id").is_string()) throw FormatError("analyses[" + std::to_string(i) + "].id: expected a string");
            get_string(require(a, "kind", "analyses[" + std::to_string(i) + "]"), "analyses.kind");
            if (!ids.insert(analysis_id(a, i)).second) throw FormatError("duplicate analysis id '" + analysis_id(a, i) + "'");
            ++i;
        }
    }
    if (c.contains("gates")) {
        if (!c.at("gates").is_array()) throw FormatError("gates: expected a list");
        for (const auto& g : c.at("gates")) {
            check_keys(g, {"name", "analysis", "metric", "op", "value", "tol"}, "gates");
            const std::string target = get_string(require(g, "analysis", "gates"), "gates.analysis");
            if (ids.count(target) == 0) throw FormatError("gates: unknown analysis '" + target + "'");
            get_string(require(g, "metric", "gates"), "gates.metric");
            const std::string op = get_string(require(g, "op", "gates"), "gates.op");
            static const std::set<std::string> ops{"==", "!=", "<", "<=", ">", ">=", "~="};
            if (ops.count(op) == 0) throw FormatError("gates: unknown operator '" + op + "'");
            require(g, "value", "gates");
            if (g.contains("tol") && !(get_real(g.at("tol"), "gates.tol") > 0)) throw FormatError("gates.tol must be positive");
        }
    }
}

/// Runs `fn(i)` for i in [0, n) on up to `jobs` threads; the first exception wins.
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

inline RunResult run(const json& config, const RunOptions& opts = {}) {
    try {
        validate_config(config);
    } catch (...) {
        rethrow_in("config");
    }
    Context ctx(config, opts);
    ctx.build_all();
    const Inputs in{ctx.field(), ctx.sets(), ctx.all_hyperplanes(), ctx.budget(), ctx.options()};

    const json analyses = config.contains("analyses") ? config.at("analyses") : json::array();
    std::vector<json> results(analyses.size());
    std::vector<double> millis(analyses.size(), 0.0);
    parallel_for(analyses.size(), opts.jobs, [&](std::size_t i) {
        const std::string id = analysis_id(analyses[i], i);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            results[i] = run_analysis(analyses[i], id, in);
        } catch (...) {
            rethrow_in("analysis '" + id + "'");
        }
        millis[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });

    RunResult out;
    json echo = config;
    echo["seed"] = std::to_string(ctx.seed());
    echo["budget"] = std::to_string(ctx.budget());
    out.report["config"] = std::move(echo);
    out.report["field"] = field_summary(ctx.field());
    json sets = json::object();
    for (const auto& [name, E] : ctx.sets()) sets[name] = {{"size", E.size()}, {"dimension", E.dim()}};
    out.report["sets"] = std::move(sets);
    out.report["results"] = json(results);

    json gates = json::array();
    if (config.contains("gates")) {
        std::size_t gi = 0;
        for (const auto& g : config.at("gates")) {
            const std::string target = g.at("analysis").get<std::string>();
            const std::string metric = g.at("metric").get<std::string>();
            GateOutcome o;
            o.name = g.value("name", target + "." + metric + " " + g.at("op").get<std::string>() + " " + g.at("value").dump());
            const json* actual = nullptr;
            for (const auto& r : results) {
                if (r.at("id") == target) actual = lookup(r, metric);
            }
            o.actual = actual ? *actual : json(nullptr);
            o.pass = actual != nullptr &&
                     compare(*actual, g.at("op").get<std::string>(), g.at("value"),
                             g.contains("tol") ? get_real(g.at("tol"), "gates.tol") : 1e-9);
            out.gates_pass = out.gates_pass && o.pass;
            gates.push_back({{"name", o.name}, {"pass", o.pass}, {"actual", o.actual}});
            ++gi;
        }
    }
    out.report["gates"] = std::move(gates);
    out.report["status"] = out.gates_pass ? "pass" : "fail";

    json t = json::object();
    for (std::size_t i = 0; i < analyses.size(); ++i) t[analysis_id(analyses[i], i)] = real(millis[i]);
    out.timings["milliseconds"] = std::move(t);
    return out;
}

inline json load_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw FormatError("cannot open " + p.string());
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(p.string() + ": " + e.what());
    }
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw FormatError("cannot write " + p.string());
    out << text;
}

/// Report serialization used for files; two-space indent, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Sweeps

/// Flattens scalar leaves of a result into "prefix.key" columns. Lists are skipped.
inline void flatten(const json& j, const std::string& prefix, std::map<std::string, std::string>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_string()) {
        out[prefix] = j.get<std::string>();
    } else if (j.is_boolean()) {
        out[prefix] = j.get<bool>() ? "true" : "false";
    } else if (j.is_number()) {
        out[prefix] = j.dump();
    } else if (j.is_null()) {
        out[prefix] = "";
    }
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

struct SweepSummary {
    std::size_t cells = 0;
    std::size_t computed = 0;  ///< cells run in this invocation (others came from the ledger)
    std::size_t failed = 0;
};

/// Grid config: {"base": <config>, "grid": {"/json/pointer": [values...]}, "seed": n}.
/// Cells are the Cartesian product with the last pointer varying fastest. Each
/// finished cell is appended to <out>/ledger.jsonl; rerunning skips cells already
/// in the ledger. The CSV <out>/sweep.csv is rewritten from the ledger at the end.
inline SweepSummary sweep(const json& grid_config, const RunOptions& opts) {
    check_keys(grid_config, {"$schema", "name", "description", "base", "grid", "seed"}, "sweep");
    const json& base = require(grid_config, "base", "sweep");
    const json& grid = require(grid_config, "grid", "sweep");
    if (!grid.is_object()) throw FormatError("sweep.grid: expected an object of pointer -> list");
    if (!opts.out_dir) throw FormatError("sweep needs an output directory");
    const std::uint64_t master = opts.seed ? *opts.seed : get_uint(grid_config, "seed", 0, "sweep");
    std::vector<std::pair<std::string, json>> axes;
    std::size_t cells = 1;
    for (const auto& [ptr, values] : grid.items()) {
        if (!values.is_array() || values.empty()) throw FormatError("sweep.grid." + ptr + ": expected a nonempty list");
        axes.emplace_back(ptr, values);
        cells *= values.size();
    }
    const std::filesystem::path dir(*opts.out_dir);
    std::filesystem::create_directories(dir);
    const auto ledger_path = dir / "ledger.jsonl";

    std::map<std::size_t, json> rows;
    if (std::ifstream in(ledger_path); in) {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                json row = json::parse(line);
                const auto cell = row.at("cell").get<std::size_t>();
                rows[cell] = std::move(row);
            } catch (const nlohmann::json::exception&) {
                // A torn final line from an interrupted run: that cell is simply recomputed.
            }
        }
    }

    std::vector<std::size_t> todo;
    for (std::size_t c = 0; c < cells; ++c) {
        if (rows.count(c) == 0) todo.push_back(c);
    }
    std::mutex mu;
    // Start on a fresh line even if the previous run died mid-write.
    bool torn_tail = false;
    if (std::ifstream tail(ledger_path, std::ios::binary); tail && tail.seekg(0, std::ios::end) && tail.tellg() > 0) {
        tail.seekg(-1, std::ios::end);
        torn_tail = tail.get() != '\n';
    }
    std::ofstream ledger(ledger_path, std::ios::app);
    if (torn_tail) ledger << '\n';
    SweepSummary summary{cells, todo.size(), 0};
    RunOptions cell_opts = opts;
    cell_opts.jobs = 1;
    cell_opts.out_dir.reset();
    parallel_for(todo.size(), opts.jobs, [&](std::size_t k) {
        const std::size_t c = todo[k];
        json cfg = base;
        json params = json::object();
        std::size_t rest = c;
        for (std::size_t ax = axes.size(); ax-- > 0;) {
            const auto& [ptr, values] = axes[ax];
            const json& v = values.at(rest % values.size());
            rest /= values.size();
            cfg[json::json_pointer(ptr)] = v;
            params[ptr] = v;
        }
        json row;
        row["cell"] = c;
        row["params"] = params;
        RunOptions o = cell_opts;
        o.seed = child_seed(master, c);
        try {
            const RunResult r = run(cfg, o);
            row["status"] = r.gates_pass ? "ok" : "gateFail";
            json metrics = json::object();
            for (const auto& res : r.report.at("results")) metrics[res.at("id").get<std::string>()] = res;
            row["metrics"] = std::move(metrics);
        } catch (const std::exception& e) {
            row["status"] = "error";
            row["error"] = e.what();
        }
        std::lock_guard<std::mutex> lock(mu);
        ledger << row.dump() << '\n' << std::flush;
        rows[c] = std::move(row);
    });

    std::set<std::string> columns;
    std::vector<std::map<std::string, std::string>> flat(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        const json& row = rows.at(c);
        if (row.value("status", std::string()) == "error") ++summary.failed;
        if (row.contains("metrics")) flatten(row.at("metrics"), "", flat[c]);
        for (const auto& [k, v] : flat[c]) columns.insert(k);
    }
    std::ostringstream csv;
    csv << "cell";
    for (const auto& [ptr, values] : axes) csv << ',' << csv_escape(ptr);
    csv << ",status,error";
    for (const auto& col : columns) csv << ',' << csv_escape(col);
    csv << '\n';
    for (std::size_t c = 0; c < cells; ++c) {
        const json& row = rows.at(c);
        csv << c;
        for (const auto& [ptr, values] : axes) {
            const json& v = row.at("params").at(ptr);
            csv << ',' << csv_escape(v.is_string() ? v.get<std::string>() : v.dump());
        }
        csv << ',' << row.value("status", std::string()) << ',' << csv_escape(row.value("error", std::string()));
        for (const auto& col : columns) {
            auto it = flat[c].find(col);
            csv << ',' << (it == flat[c].end() ? "" : csv_escape(it->second));
        }
        csv << '\n';
    }
    write_text(dir / "sweep.csv", csv.str());
    return summary;
}

}  // namespace fqsalem::harness

// fqsalem command-line front end.
//
//   fqsalem field     --p 3 --r 2
//   fqsalem construct --config cfg.json --out dir
//   fqsalem analyze   --config cfg.json [--out dir] [--jobs n]
//   fqsalem verify    --config cfg.json [--out dir] [--jobs n]   (exit 2 when a gate fails)
//   fqsalem ranges    --d 3 --s 1/3 [--tag sphereOddPrimitive] [--eps 1/2]
//   fqsalem sweep     --config grid.json --out dir [--jobs n]
//   fqsalem oracle    lambda4|distances|incidences --points file [--other file] [--hyperplanes file]
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fqsalem/harness.hpp"

namespace fs = std::filesystem;
using namespace fqsalem;
using harness::json;

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> budget;
    std::string out;
    unsigned jobs = 1;
};

void add_common(CLI::App* app, Common& c, bool need_config) {
    auto* opt = app->add_option("--config", c.config, "experiment config (JSON)");
    if (need_config) opt->required()->check(CLI::ExistingFile);
    app->add_option("--seed", c.seed, "master seed, overrides the config");
    app->add_option("--budget", c.budget, "enumeration budget, overrides the config");
    app->add_option("--out", c.out, "output directory");
    app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
}

harness::RunOptions options_for(const Common& c) {
    harness::RunOptions o;
    o.jobs = c.jobs;
    o.seed = c.seed;
    o.budget = c.budget;
    if (!c.out.empty()) o.out_dir = c.out;
    if (!c.config.empty()) o.base_dir = fs::absolute(c.config).parent_path();
    return o;
}

void emit(const json& j, const Common& c, const std::string& file) {
    if (c.out.empty()) {
        std::cout << harness::dump(j);
        return;
    }
    fs::create_directories(c.out);
    harness::write_text(fs::path(c.out) / file, harness::dump(j));
}

int cmd_run(const Common& c, bool gate_exit) {
    const json cfg = harness::load_json_file(c.config);
    if (!c.out.empty()) fs::create_directories(c.out);
    const auto res = harness::run(cfg, options_for(c));
    emit(res.report, c, "report.json");
    if (!c.out.empty()) harness::write_text(fs::path(c.out) / "timings.json", harness::dump(res.timings));
    if (!res.gates_pass) {
        for (const auto& g : res.report.at("gates")) {
            if (!g.at("pass").get<bool>()) std::cerr << "gate failed: " << g.at("name").get<std::string>() << '\n';
        }
    }
    return gate_exit && !res.gates_pass ? harness::kGateFailure : harness::kOk;
}

int cmd_construct(const Common& c) {
    const json cfg = harness::load_json_file(c.config);
    harness::validate_config(cfg);
    harness::Context ctx(cfg, options_for(c));
    ctx.build_all();
    json summary = json::object();
    for (const auto& [name, E] : ctx.sets()) {
        summary[name] = {{"size", E.size()}, {"dimension", E.dim()}};
        if (!c.out.empty()) {
            fs::create_directories(c.out);
            write_pointset_file((fs::path(c.out) / (name + ".pts")).string(), E, "set " + name);
        }
    }
    for (const auto& [name, H] : ctx.all_hyperplanes()) {
        summary[name] = {{"total", H.total()}, {"distinct", H.distinct()}, {"dimension", H.space().dim()}};
        if (!c.out.empty()) write_hyperplanes_file((fs::path(c.out) / (name + ".hyp")).string(), H);
    }
    std::cout << harness::dump(summary);
    return harness::kOk;
}

json oracle_json(const std::string& what, const std::string& points, const std::string& other, const std::string& hyps) {
    const PointSet E = read_pointset_file(points);
    json j;
    j["oracle"] = what;
    j["size"] = E.size();
    if (what == "lambda4") {
        j["lambda4"] = harness::exact(harness::oracle::lambda4(E));
    } else if (what == "distances") {
        const PointSet F = other.empty() ? E : read_pointset_file(other);
        json nu = json::object();
        for (const auto& [t, n] : harness::oracle::distances(E, F)) nu[std::to_string(t)] = std::to_string(n);
        j["nu"] = std::move(nu);
    } else if (what == "incidences") {
        if (hyps.empty()) throw FormatError("oracle incidences needs --hyperplanes");
        j["incidences"] = harness::exact(harness::oracle::incidences(E, read_hyperplanes_file(hyps)));
    } else {
        throw FormatError("unknown oracle '" + what + "'");
    }
    return j;
}

/// Aligned plain-text rendering of a ranges report.
std::string ranges_text(const json& j) {
    std::ostringstream out;
    out << "d = " << j.at("d").get<unsigned>() << ", s = " << j.at("s").get<std::string>() << ", tag "
        << j.at("tag").get<std::string>() << '\n';
    const auto& t = j.at("thm1");
    out << "conjectured alpha  " << j.at("conjecturedAlpha").get<std::string>() << '\n';
    out << "distance threshold " << t.at("value").get<std::string>() << "  (" << t.at("branch").get<std::string>() << ")\n";
    out << "difference chain   " << j.at("fraser").get<std::string>() << '\n';
    if (j.contains("sphere")) out << "sphere threshold   " << j.at("sphere").get<std::string>() << '\n';
    if (j.contains("nontrivial")) out << "nontrivial         " << (j.at("nontrivial").get<bool>() ? "yes" : "no") << '\n';

    const std::vector<std::string> head{"case", "s range", "size from", "size to", "window"};
    std::vector<std::vector<std::string>> rows{head};
    for (const auto& r : j.at("table")) {
        auto text = [](const json& v) { return v.is_null() ? std::string("-") : v.get<std::string>(); };
        const std::string range = "[" + r.at("sLo").get<std::string>() + ", " + r.at("sHi").get<std::string>() +
                                  (r.at("sHiOpen").get<bool>() ? ")" : "]");
        const std::string window =
            r.at("windowLo").is_null() ? "-" : text(r.at("windowLo")) + " .. " + text(r.at("windowHi"));
        rows.push_back({r.at("label").get<std::string>(), range, r.at("sizeLo").get<std::string>(),
                        r.at("sizeHi").get<std::string>(), window});
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    out << '\n';
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        out << line << '\n';
    }
    if (j.contains("conditional")) {
        out << "\nconditional exponents (not asserted):\n";
        for (const auto& c : j.at("conditional")) {
            out << "  " << c.at("label").get<std::string>() << ": " << c.at("value").get<std::string>() << "  ["
                << c.at("condition").get<std::string>() << "]\n";
        }
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier, energy, distance and incidence experiments over F_q^d"};
    app.require_subcommand(1);
    Common common;

    auto* field = app.add_subcommand("field", "print field parameters");
    std::uint64_t p = 0;
    unsigned r = 1;
    field->add_option("--p", p, "characteristic")->required();
    field->add_option("--r", r, "extension degree");
    field->add_option("--out", common.out, "output directory");

    auto* construct = app.add_subcommand("construct", "build the sets of a config and write them as point files");
    add_common(construct, common, true);
    auto* analyze = app.add_subcommand("analyze", "run a config and write its report");
    add_common(analyze, common, true);
    auto* verify = app.add_subcommand("verify", "run a config; exit 2 if any gate fails");
    add_common(verify, common, true);

    auto* ranges = app.add_subcommand("ranges", "threshold and s-range tables, no enumeration");
    unsigned rd = 2;
    std::string rs = "1/2", rtag = "generic", reps;
    ranges->add_option("--d", rd, "dimension")->required();
    ranges->add_option("--s", rs, "Salem parameter as a rational")->required();
    ranges->add_option("--tag", rtag, "geometry tag");
    ranges->add_option("--eps", reps, "energy improvement for the odd primitive sphere");
    std::string rformat = "json", rvn, rell = "0", ralpha;
    ranges->add_option("--variety-n", rvn, "variety dimension n (tag variety)");
    ranges->add_option("--ell", rell, "coset content exponent ell (tag variety)");
    ranges->add_option("--alpha", ralpha, "size exponent alpha (tag variety)");
    ranges->add_option("--format", rformat, "json or text")->check(CLI::IsMember({"json", "text"}));
    ranges->add_option("--out", common.out, "output directory");

    auto* sweep = app.add_subcommand("sweep", "run a parameter grid; resumable");
    add_common(sweep, common, true);

    auto* oracle = app.add_subcommand("oracle", "brute-force reference values");
    std::string what, points, other, hyps;
    oracle->add_option("what", what, "lambda4 | distances | incidences")->required()
        ->check(CLI::IsMember({"lambda4", "distances", "incidences"}));
    oracle->add_option("--points", points, "point file")->required()->check(CLI::ExistingFile);
    oracle->add_option("--other", other, "second point file for distances")->check(CLI::ExistingFile);
    oracle->add_option("--hyperplanes", hyps, "hyperplane file")->check(CLI::ExistingFile);
    oracle->add_option("--out", common.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : harness::kConfigError;
    }

    try {
        if (*field) {
            if (r == 0 || r > 64) throw DomainError("r must lie in [1, 64]");
            emit(harness::field_summary(Field::create(p, r)), common, "field.json");
            return harness::kOk;
        }
        if (*construct) return cmd_construct(common);
        if (*analyze) return cmd_run(common, false);
        if (*verify) return cmd_run(common, true);
        if (*ranges) {
            json q = {{"d", rd}, {"s", rs}, {"tag", rtag}};
            if (!reps.empty()) q["eps"] = reps;
            if (!rvn.empty()) {
                if (ralpha.empty()) throw FormatError("--variety-n needs --alpha");
                q["variety"] = {{"n", std::stoul(rvn)}, {"ell", rell}, {"alpha", ralpha}};
            }
            const json report = harness::ranges_report(q, "ranges");
            if (rformat == "json") {
                emit(report, common, "ranges.json");
            } else if (common.out.empty()) {
                std::cout << ranges_text(report);
            } else {
                fs::create_directories(common.out);
                harness::write_text(fs::path(common.out) / "ranges.txt", ranges_text(report));
            }
            return harness::kOk;
        }
        if (*sweep) {
            if (common.out.empty()) throw FormatError("sweep needs --out");
            const auto sum = harness::sweep(harness::load_json_file(common.config), options_for(common));
            std::cout << "cells " << sum.cells << ", computed " << sum.computed << ", failed " << sum.failed << '\n';
            return harness::kOk;
        }
        if (*oracle) {
            emit(oracle_json(what, points, other, hyps), common, "oracle.json");
            return harness::kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return harness::exit_code_for(e);
    }
    return harness::kOk;
}

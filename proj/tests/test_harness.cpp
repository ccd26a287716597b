#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fqsalem/harness.hpp"

using namespace fqsalem;
using namespace fqsalem::harness;

namespace {

json parse(const char* text) { return json::parse(text); }

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("fqsalem-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kMixedConfig = R"({
  "name": "mixed",
  "seed": 11,
  "field": {"p": 5, "r": 1},
  "dimension": 2,
  "sets": {
    "E": {"kind": "random", "size": 9},
    "G": {"kind": "random", "size": 7},
    "S": {"kind": "sphere", "radius": 1},
    "iso": {"kind": "isotropic", "d": 4}
  },
  "hyperplanes": {
    "H": {"kind": "random", "count": 6, "nonzeroOffset": true, "maxMult": 3}
  },
  "analyses": [
    {"id": "energyE", "kind": "energy", "set": "E"},
    {"id": "distEG", "kind": "distance", "set": "E", "other": "G"},
    {"id": "inc", "kind": "incidence", "points": "E", "hyperplanes": "H", "s": 0.3},
    {"id": "dil", "kind": "dilation", "points": "G", "hyperplanes": "H"},
    {"id": "four", "kind": "fourier", "set": "E"},
    {"id": "ident", "kind": "identity", "set": "E"},
    {"id": "iso", "kind": "energy", "set": "iso"},
    {"id": "sm", "kind": "secondMoment", "set": "S"},
    {"id": "orc", "kind": "oracle", "set": "E"}
  ],
  "gates": [
    {"analysis": "dil", "metric": "identityHolds", "op": "==", "value": true},
    {"analysis": "iso", "metric": "lambda", "op": "==", "value": "15625"},
    {"analysis": "ident", "metric": "maxResidual", "op": "<=", "value": 1e-9},
    {"analysis": "orc", "metric": "distancesAgree", "op": "==", "value": true}
  ]
})";

}  // namespace

TEST(Harness, RangesOnlyConfig) {
    const auto r = run(parse(R"({"field": {"p": 3}, "analyses": [
        {"id": "t", "kind": "ranges", "d": 4, "s": "1/2"},
        {"id": "c", "kind": "corollary", "which": "subgroup", "d": 8}]})"));
    EXPECT_TRUE(r.gates_pass);
    const json& t = r.report["results"][0];
    EXPECT_EQ(t["thm1"]["value"], "2");
    EXPECT_EQ(t["thm1"]["branch"], "tie");
    EXPECT_EQ(t["fraser"], "2");
    EXPECT_EQ(t["conjecturedAlpha"], "3/2");
    EXPECT_EQ(r.report["results"][1]["threshold"], "27/56");
    EXPECT_EQ(r.report["status"], "pass");
}

TEST(Harness, ReportIsIndependentOfJobCount) {
    const json cfg = parse(kMixedConfig);
    RunOptions one, many;
    many.jobs = 8;
    const auto a = run(cfg, one);
    const auto b = run(cfg, many);
    EXPECT_EQ(dump(a.report), dump(b.report));
    EXPECT_TRUE(a.gates_pass);
    for (const auto& g : a.report["gates"]) EXPECT_TRUE(g["pass"].get<bool>()) << g.dump();
    EXPECT_EQ(a.report["config"]["seed"], "11");
    EXPECT_EQ(a.report["sets"]["iso"]["size"], 25);
    RunOptions reseeded;
    reseeded.seed = 12;
    EXPECT_NE(dump(run(cfg, reseeded).report), dump(a.report));
}

TEST(Harness, SetsGetIndependentSeeds) {
    const json cfg = parse(R"({"seed": 3, "field": {"p": 7}, "sets": {
        "A": {"kind": "random", "size": 10}, "B": {"kind": "random", "size": 10},
        "C": {"kind": "random", "size": 10, "seed": 5}, "D": {"kind": "random", "size": 10, "seed": 5}}})");
    Context ctx(cfg, {});
    ctx.build_all();
    EXPECT_NE(ctx.set("A"), ctx.set("B"));
    EXPECT_EQ(ctx.set("C"), ctx.set("D"));
}

TEST(Harness, InvalidConfigsAreRejected) {
    EXPECT_THROW(run(parse(R"({"field": {"p": 5}, "bogus": 1})")), FormatError);
    EXPECT_THROW(run(parse(R"({"analyses": []})")), FormatError);
    EXPECT_THROW(run(parse(R"({"field": {"p": 5}, "analyses": [{"id": "x", "kind": "size", "set": "E"}]})")), FormatError);
    EXPECT_THROW(run(parse(R"({"field": {"p": 5}, "sets": {"E": {"kind": "full"}},
        "analyses": [{"id": "x", "kind": "size", "set": "E"}, {"id": "x", "kind": "size", "set": "E"}]})")), FormatError);
    EXPECT_THROW(run(parse(R"({"field": {"p": 5}, "sets": {"E": {"kind": "lift", "of": "E"}}})")), FormatError);
    EXPECT_THROW(run(parse(R"({"field": {"p": 5}, "sets": {"E": {"kind": "full"}},
        "analyses": [{"id": "x", "kind": "size", "set": "E"}],
        "gates": [{"analysis": "x", "metric": "size", "op": "=~", "value": 1}]})")), FormatError);
    EXPECT_THROW(run(parse(R"({"field": {"p": 6}})")), DomainError);
    EXPECT_THROW(run(parse(R"({"field": {"p": 5}, "sets": {"E": {"kind": "sphere", "radius": 1, "d": 20}},
        "analyses": [{"kind": "size", "set": "E"}]})")), BudgetError);
}

TEST(Harness, ExitCodes) {
    EXPECT_EQ(exit_code_for(FormatError("x")), kConfigError);
    EXPECT_EQ(exit_code_for(DomainError("x")), kConfigError);
    EXPECT_EQ(exit_code_for(BudgetError("x")), kBudgetExceeded);
    EXPECT_EQ(exit_code_for(OverflowError("x")), kBudgetExceeded);
}

TEST(Harness, GatesAndComparisons) {
    const auto r = run(parse(R"({"field": {"p": 5}, "sets": {"E": {"kind": "full"}},
        "analyses": [{"id": "e", "kind": "energy", "set": "E"}],
        "gates": [{"analysis": "e", "metric": "lambda", "op": ">=", "value": "15625"},
                  {"name": "missing", "analysis": "e", "metric": "nope", "op": "==", "value": 1}]})"));
    EXPECT_FALSE(r.gates_pass);
    EXPECT_EQ(r.report["status"], "fail");
    EXPECT_TRUE(r.report["gates"][0]["pass"].get<bool>());
    EXPECT_FALSE(r.report["gates"][1]["pass"].get<bool>());
    EXPECT_EQ(r.report["gates"][1]["name"], "missing");

    EXPECT_TRUE(compare(json("340282366920938463463374607431768211455"), ">", json("340282366920938463463374607431768211454"), 0));
    EXPECT_TRUE(compare(json("4/3"), ">=", json("4/3"), 0));
    EXPECT_TRUE(compare(json("91"), ">=", json("13/7"), 0) == true);
    EXPECT_TRUE(compare(json(1.0), "~=", json(1.0 + 1e-12), 1e-9));
    EXPECT_FALSE(compare(json(1.0), "~=", json(1.1), 1e-9));
    EXPECT_TRUE(compare(json(true), "==", json(true), 0));
    EXPECT_FALSE(compare(json(true), "<", json(true), 0));
    EXPECT_TRUE(compare(json("tie"), "==", json("tie"), 0));
    EXPECT_FALSE(compare(json("tie"), "<", json("tie"), 0));
    EXPECT_FALSE(compare(json("tie"), "==", json(2), 0));
    ASSERT_NE(lookup(r.report, "results.0.lambda"), nullptr);
    EXPECT_EQ(lookup(r.report, "results.3"), nullptr);
}

TEST(Harness, CsvSideOutputs) {
    const auto dir = fresh_dir("csv");
    RunOptions o;
    o.out_dir = dir.string();
    run(parse(R"({"field": {"p": 3}, "sets": {"E": {"kind": "full"}},
        "analyses": [{"id": "f", "kind": "fourier", "set": "E", "csv": true},
                     {"id": "d", "kind": "distance", "set": "E", "csv": true}]})"), o);
    EXPECT_EQ(read_file(dir / "d-profile.csv"), "t,nu\n0,9\n1,36\n2,36\n");
    EXPECT_TRUE(std::filesystem::exists(dir / "f-spectrum.csv"));
}

TEST(Harness, SweepSingleCellMatchesRun) {
    const json base = parse(R"({"field": {"p": 5}, "sets": {"E": {"kind": "random", "size": 8}},
        "analyses": [{"id": "e", "kind": "energy", "set": "E"}]})");
    json grid;
    grid["base"] = base;
    grid["grid"] = {{"/sets/E/size", json::array({8})}};
    grid["seed"] = 99;
    const auto dir = fresh_dir("sweep1");
    RunOptions o;
    o.out_dir = dir.string();
    const auto s = sweep(grid, o);
    EXPECT_EQ(s.cells, 1u);
    EXPECT_EQ(s.computed, 1u);
    RunOptions direct;
    direct.seed = child_seed(99, 0);
    const auto r = run(base, direct);
    std::ifstream in(dir / "ledger.jsonl");
    std::string line;
    std::getline(in, line);
    const json row = json::parse(line);
    EXPECT_EQ(row["metrics"]["e"], r.report["results"][0]);
}

TEST(Harness, SweepGridResumesAndWritesCsv) {
    json grid = parse(R"({"seed": 4, "base": {"field": {"p": 5}, "sets": {"E": {"kind": "random", "size": 4}},
        "analyses": [{"id": "e", "kind": "energy", "set": "E"}]},
        "grid": {"/field/p": [3, 5, 7], "/sets/E/size": [2, 4]}})");
    const auto dir = fresh_dir("sweep6");
    RunOptions o;
    o.out_dir = dir.string();
    o.jobs = 3;
    const auto first = sweep(grid, o);
    EXPECT_EQ(first.cells, 6u);
    EXPECT_EQ(first.computed, 6u);
    EXPECT_EQ(first.failed, 0u);
    const std::string csv = read_file(dir / "sweep.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
    EXPECT_EQ(csv.substr(0, csv.find('\n')).rfind("cell,/field/p,/sets/E/size,status,error", 0), 0u);

    // Drop the last ledger line and add a torn one: only that cell is recomputed.
    std::string ledger = read_file(dir / "ledger.jsonl");
    ledger.pop_back();
    ledger = ledger.substr(0, ledger.rfind('\n') + 1) + "{\"cell\": 5, \"sta";
    { std::ofstream(dir / "ledger.jsonl", std::ios::trunc) << ledger; }
    const auto second = sweep(grid, o);
    EXPECT_EQ(second.computed, 1u);
    EXPECT_EQ(read_file(dir / "sweep.csv"), csv);
    const auto third = sweep(grid, o);
    EXPECT_EQ(third.computed, 0u);
}

TEST(Harness, SweepRecordsCellErrors) {
    json grid = parse(R"({"base": {"field": {"p": 5}, "sets": {"E": {"kind": "random", "size": 4}},
        "analyses": [{"id": "e", "kind": "energy", "set": "E"}]},
        "grid": {"/sets/E/size": [4, 400]}})");
    const auto dir = fresh_dir("sweeperr");
    RunOptions o;
    o.out_dir = dir.string();
    const auto s = sweep(grid, o);
    EXPECT_EQ(s.failed, 1u);
    EXPECT_NE(read_file(dir / "sweep.csv").find(",error,"), std::string::npos);
    EXPECT_THROW(sweep(grid, RunOptions{}), FormatError);
}

TEST(Harness, Oracles) {
    const Field F = Field::create(5, 1);
    const Space S(F, 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PointSet E = random_set(S, 3 + seed, seed);
        EXPECT_EQ(oracle::lambda4(E), additive_energy(E, 2));
        const auto prof = distance_profile(E);
        for (const auto& [t, c] : oracle::distances(E, E)) EXPECT_EQ(prof.nu[t], c);
    }
    const auto single = oracle::distances(PointSet(S, {7}), PointSet(S, {7}));
    EXPECT_EQ(single, (std::map<std::uint64_t, std::uint64_t>{{0, 1}}));
    const Space S3(Field::create(7, 1), 3);
    std::vector<Index> plane;
    for (std::uint64_t y = 0; y < 7; ++y)
        for (std::uint64_t z = 0; z < 7; ++z) plane.push_back(S3.encode({Elem{1}, Elem{y}, Elem{z}}));
    HyperplaneMultiset H(S3);
    H.add(S3.encode({Elem{1}, Elem{0}, Elem{0}}), Elem{1});
    EXPECT_EQ(oracle::incidences(PointSet(S3, plane), H), 49u);
}

TEST(Harness, FileSetsRoundTrip) {
    const auto dir = fresh_dir("files");
    const Field F = Field::create(5, 1);
    {
        std::ofstream out(dir / "p.pts");
        out << F.header() << "\nd=2\n# comment\n1 2\n3 4\n1 2\n";
    }
    RunOptions o;
    o.base_dir = dir;
    const auto r = run(parse(R"({"field": {"p": 5}, "sets": {"E": {"kind": "file", "path": "p.pts"}},
        "analyses": [{"id": "s", "kind": "size", "set": "E"}]})"), o);
    EXPECT_EQ(r.report["results"][0]["size"], 2);
}

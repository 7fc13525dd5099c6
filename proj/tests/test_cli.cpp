#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "serene/cli.hpp"

using namespace serene;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/serene_test_" + name) {
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cli: example emits a parseable table") {
    auto r = run_cli({"example", "q8"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["order"] == 8);
    CHECK(j["arity"] == 2);
    auto t = table_from_json(j);
    CHECK(validate(t).latin);
}

TEST_CASE("cli: unknown example is a domain error") {
    auto r = run_cli({"example", "nonesuch"});
    CHECK(r.code == 1);
    CHECK(r.err.find("available") != std::string::npos);
}

TEST_CASE("cli: validate a table file round trip") {
    TempFile f("z5.json", table_to_json(builtin("cyclic:5")).dump());
    auto r = run_cli({"validate", f.path});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["latin"] == true);
    CHECK(j["alternating"] == true);

    auto rt = run_cli({"validate", f.path, "--format", "text"});
    REQUIRE(rt.code == 0);
    CHECK(rt.out.find("latin: yes") != std::string::npos);
}

TEST_CASE("cli: validate of a missing file exits 2") {
    auto r = run_cli({"validate", "missing.json"});
    CHECK(r.code == 2);
    CHECK(r.err.find("file error") != std::string::npos);
}

TEST_CASE("cli: schema violations in input files exit 2") {
    TempFile bad_table("bad_table.json", R"({"arity":2,"order":2,"values":[0,1,1]})");
    CHECK(run_cli({"validate", bad_table.path}).code == 2);

    TempFile bad_complex("bad_complex.json", R"({"dim":2,"vertices":[{"label":"0"}],"facets":[[0,1,2]]})");
    CHECK(run_cli({"invariants", bad_complex.path}).code == 2);
}

TEST_CASE("cli: usage errors exit 2") {
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"chart", "--example", "q8"}).code == 2);  // missing required flags
    CHECK(run_cli({}).code == 2);
}

TEST_CASE("cli: simplicize text table lists the 24 q8 rows") {
    auto r = run_cli({"simplicize", "--example", "q8", "--format", "text"});
    REQUIRE(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 25);  // header + 24 rows
    CHECK(r.out.find("(i,j) -> { i_ j_ k^ }") != std::string::npos);
}

TEST_CASE("cli: simplicize json emits the complex schema") {
    auto r = run_cli({"simplicize", "--example", "a6"});
    REQUIRE(r.code == 0);
    auto c = complex_from_json(json::parse(r.out));
    CHECK(c.facets.size() == 16);
    CHECK(c.dim == 3);
}

TEST_CASE("cli: ncgraph dot output for the order-6 product") {
    auto r = run_cli({"ncgraph", "--example", "a6", "--dot"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("graph ncgraph {") == 0);
    // 16 vertices and 32 edges
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2 + 16 + 32);
}

TEST_CASE("cli: ncgraph json includes the report") {
    auto r = run_cli({"ncgraph", "--example", "q8"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["report"]["components"] == 3);
    CHECK(j["report"]["hypercube_dims"] == json({3, 3, 3}));
}

TEST_CASE("cli: invariants on the bundled fixtures") {
    auto r = run_cli({"invariants", "--fixture", "torus"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["components"].size() == 1);
    CHECK(j["components"][0]["euler_characteristic"] == 0);
    CHECK(j["components"][0]["z2_betti"] == json({1, 2, 1}));

    auto rk = run_cli({"invariants", "--fixture", "cone-torus"});
    REQUIRE(rk.code == 0);
    auto jk = json::parse(rk.out);
    bool apex_flagged = false;
    for (const auto& lf : jk["components"][0]["link_flags"])
        if (lf["vertex"] == 9 && lf["flag"] == "non_sphere_like") apex_flagged = true;
    CHECK(apex_flagged);
}

TEST_CASE("cli: chart evaluation") {
    auto r = run_cli({"chart", "--example", "a5", "--tuple", "0,1,2", "--type", "in",
                      "--u", "0.25,0.25,0.25"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["coefficients"].size() == 4);
    CHECK(std::abs(j["sum"].get<double>() - 1.0) < 1e-12);
    CHECK(std::abs(j["coefficients"]["out:3"].get<double>() - 0.25) < 1e-12);

    // outside the bipyramid: domain error
    auto rb = run_cli({"chart", "--example", "a5", "--tuple", "0,1,2", "--type", "in",
                       "--u", "0.9,0.9,0.9"});
    CHECK(rb.code == 1);
}

TEST_CASE("cli: complete-free on the 4-simplex boundary fixture") {
    auto r = run_cli({"complete-free", "--fixture", "ddelta4", "--levels", "1"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["levels"].size() == 2);
    CHECK(j["levels"][0]["elements"] == 10);
    CHECK(j["levels"][0]["defined_tuples"] == 60);
    CHECK(j["levels"][1]["elements"] == 1270);
    CHECK(j["invariants_ok"] == true);
    CHECK(j["serene"]["invariants_match"] == true);
    CHECK(j["serene"]["gamma_prime_facets"] == 20);
}

TEST_CASE("cli: complete-free reports truncation honestly") {
    auto r = run_cli({"complete-free", "--fixture", "ddelta4", "--levels", "2"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["truncation"].is_object());
    CHECK(j["truncation"]["at_level"] == 2);
    CHECK(j["truncation"]["needed_elements"].get<long long>() > 1'000'000);
}

TEST_CASE("cli: complete-free refuses the klein bottle") {
    auto r = run_cli({"complete-free", "--fixture", "klein", "--levels", "1"});
    CHECK(r.code == 1);
}

TEST_CASE("cli: complete-latin finds a table and embeds the entries") {
    TempFile f("partial.json", R"({"arity":2,"order":4,"entries":[[0,1,2],[3,3,0]]})");
    auto r = run_cli({"complete-latin", f.path});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["found"] == true);
    auto t = table_from_json(j["table"]);
    CHECK(t.apply({0, 1}) == 2);
    CHECK(t.apply({3, 3}) == 0);
    CHECK(validate(t).latin);
}

TEST_CASE("cli: golden stability, identical bytes across runs") {
    TempFile partial("golden_partial.json", R"({"arity":2,"order":4,"entries":[[0,1,2]]})");
    for (auto args : std::vector<std::vector<std::string>>{
             {"example", "a5"},
             {"simplicize", "--example", "q8"},
             {"ncgraph", "--example", "a6", "--dot"},
             {"invariants", "--fixture", "ddelta4"},
             {"complete-latin", partial.path, "--seed", "9"},
         }) {
        auto r1 = run_cli(args);
        auto r2 = run_cli(args);
        REQUIRE(r1.code == 0);
        CHECK(r1.out == r2.out);
    }
}

TEST_CASE("cli: --out writes the file atomically") {
    std::string path = "/tmp/serene_test_out.json";
    std::remove(path.c_str());
    auto r = run_cli({"example", "trivial", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    json j;
    f >> j;
    CHECK(j["order"] == 1);
    std::remove(path.c_str());
}

TEST_CASE("json round trips") {
    auto t = builtin("a6");
    CHECK(table_from_json(table_to_json(t)).values == t.values);

    auto c = simplicize(t);
    auto c2 = complex_from_json(complex_to_json(c));
    CHECK(c2.facets == c.facets);
    CHECK(c2.dim == c.dim);

    auto oriented = orient(simplex_boundary(4)).oriented;
    auto mesh2 = mesh_from_json(mesh_to_json(oriented));
    CHECK(mesh2.orientation == oriented.orientation);
    CHECK(mesh2.base.facets == oriented.base.facets);

    PartialCube p{2, 3, {{0, 0, 0}}};
    auto p2 = partial_from_json(partial_to_json(p));
    CHECK(p2.entries == p.entries);
}

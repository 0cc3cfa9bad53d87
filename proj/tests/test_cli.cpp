#include "support/schema_check.hpp"

#include "tritri/classifier.hpp"
#include "tritri/json_io.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tritri;
using nlohmann::json;

namespace {

const std::filesystem::path kFixtures = TRITRI_FIXTURE_DIR;

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string("\"") + TRITRI_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string fixture(const char* name) { return "\"" + (kFixtures / name).string() + "\""; }

/// A scratch file removed when the test ends.
struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& contents = "")
        : path(std::filesystem::temp_directory_path() / ("tritri_cli_" + std::to_string(::getpid()) + "_" + name))
    {
        std::ofstream(path) << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string arg() const { return "\"" + path.string() + "\""; }
};

const test::SchemaChecker& schema()
{
    static const test::SchemaChecker checker = test::SchemaChecker::from_file(TRITRI_SCHEMA_PATH);
    return checker;
}

const char* kWorked = "0 0 0 4 0 0 0 4 0 1 1 -1 1 1 2 3 3 2";

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("schema version")
    {
        const Run r = run("--schema-version");
        CHECK(r.status == 0);
        CHECK(r.out == "1.0\n");
    }

    TEST_CASE("pair")
    {
        for (const char* backend : {"float", "rational", "implicit"}) {
            const Run r = run(std::string("pair ") + kWorked + " --backend " + backend);
            REQUIRE(r.status == 0);
            const json j = json::parse(r.out);
            CHECK(schema().valid(j));
            const auto expected = classify(Triangle<Point3d>{{{{0, 0, 0}, {4, 0, 0}, {0, 4, 0}}}},
                                           Triangle<Point3d>{{{{1, 1, -1}, {1, 1, 2}, {3, 3, 2}}}});
            CHECK(result_from_json(j).points == expected.points);
            CHECK(result_from_json(j).segments == expected.segments);
        }
        const Run text = run(std::string("pair ") + kWorked + " --format text");
        CHECK(text.status == 0);
        CHECK(text.out.find("EF") != std::string::npos);

        const TempFile input("pair.txt", "# worked example\n0,0,0, 4,0,0, 0,4,0\n1,1,-1, 1,1,2, 3,3,2\n");
        const Run from_file = run("pair " + input.arg());
        CHECK(from_file.status == 0);
        CHECK(json::parse(from_file.out).at("points").size() == 2);
    }

    TEST_CASE("pair exit codes")
    {
        CHECK(run("pair 0 0 0 1 1 1 2 2 2 0 0 0 1 0 0 0 1 0").status == 2);
        CHECK(run("pair 0 0 0 1 1 1 2 2 2").status == 1);
        CHECK(run("pair 0 0 0 4 0 0 0 4 0 1 1 -1 1 1 2 3 3 x").status == 1);
        CHECK(run("pair 0 0 0 4 0 0 0 4 0 1/3 1 -1 1 1 2 3 3 2").status == 1);
        CHECK(run("pair 0 0 0 4 0 0 0 4 0 1/3 1 -1 1 1 2 3 3 2 --backend rational").status == 0);
        CHECK(run(std::string("pair ") + kWorked + " --backend quad").status == 1);
        CHECK(run("frobnicate").status == 1);
    }

    TEST_CASE("scan")
    {
        const Run ignore = run("scan " + fixture("tetrahedron.off"));
        REQUIRE(ignore.status == 0);
        const json report = json::parse(ignore.out);
        CHECK(schema().valid(report));
        CHECK(report.at("intersecting_pairs") == 0);

        const TempFile lines("scan.jsonl");
        const Run all = run("scan " + fixture("tetrahedron.off") + " --ignore-shared-simplices false --workers 3 --output "
                            + lines.arg());
        REQUIRE(all.status == 0);
        CHECK(json::parse(all.out).at("intersecting_pairs") == 6);
        std::ifstream in(lines.path);
        std::string line;
        int count = 0;
        while (std::getline(in, line)) {
            CHECK(schema().valid(json::parse(line)));
            ++count;
        }
        CHECK(count == 6);

        CHECK(run("scan " + fixture("tetrahedron.stl")).status == 0);
        CHECK(run("scan " + fixture("tetrahedron_binary.stl") + " --format stl").status == 0);
    }

    TEST_CASE("scan exit codes")
    {
        CHECK(run("scan " + fixture("missing.off")).status == 2);
        CHECK(run("scan " + fixture("quad.obj")).status == 2);
        CHECK(run("scan " + fixture("quad.obj") + " --triangulate").status == 0);
        CHECK(run("scan " + fixture("tetrahedron.off") + " --format ply").status == 2);
        const Run timeout = run("scan " + fixture("two_spheres.off") + " --timeout 1e-9");
        CHECK(timeout.status == 3);
        const json partial = json::parse(timeout.out);
        CHECK(schema().valid(partial));
        CHECK(partial.at("timed_out") == true);
    }

    TEST_CASE("fuzz")
    {
        const Run ok = run("fuzz --family identical --count 100 --seed 3 --workers 2");
        REQUIRE(ok.status == 0);
        const json v = json::parse(ok.out);
        CHECK(schema().valid(v));
        CHECK(v.at("pass") == true);
        CHECK(v.at("stats").at("segments") == 300);

        const TempFile recorded("verdict.json", ok.out);
        const Run replay = run("fuzz --replay " + recorded.arg());
        CHECK(replay.status == 0);
        CHECK(json::parse(replay.out) == v);

        CHECK(run("fuzz --family bogus").status == 1);
        CHECK(run("fuzz --family identical --backend float,abacus").status == 1);
        CHECK(run("fuzz").status == 1);
    }

    TEST_CASE("bench")
    {
        const TempFile specs("specs.txt", "# family count seed\ngeneralPosition 200 1\nnearDegenerate 200 1 1e-15\n");
        const Run json_run = run("bench " + specs.arg() + " --repetitions 2");
        REQUIRE(json_run.status == 0);
        const json b = json::parse(json_run.out);
        CHECK(schema().valid(b));
        CHECK(b.at("rows").size() == 2);
        const Run table = run("bench " + specs.arg() + " --repetitions 1 --format table");
        CHECK(table.status == 0);
        CHECK(table.out.find("nearDegenerate") != std::string::npos);

        const TempFile bad("bad_specs.txt", "generalPosition 10 1\nnoSuchFamily 10 1\n");
        CHECK(run("bench " + bad.arg()).status == 1);
        const TempFile empty("empty_specs.txt", "");
        const Run none = run("bench " + empty.arg());
        CHECK(none.status == 0);
        CHECK(json::parse(none.out).at("rows").empty());
    }
}

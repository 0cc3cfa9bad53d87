// tritri: command-line front end for pair classification, mesh scans,
// differential fuzzing and benchmarks.
//
// Exit codes: 0 success, 1 usage error, 2 degenerate input or unreadable mesh,
// 3 scan timeout, 4 fuzz mismatch.

#include "tritri/classifier.hpp"
#include "tritri/errors.hpp"
#include "tritri/fuzz.hpp"
#include "tritri/implicit_point.hpp"
#include "tritri/json_io.hpp"
#include "tritri/mesh.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace tritri;

enum Exit : int { kOk = 0, kUsage = 1, kDegenerate = 2, kTimeout = 3, kMismatch = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Backend parse_backend(const std::string& name)
{
    for (Backend b : kAllBackends)
        if (to_string(b) == name) return b;
    throw UsageError("unknown backend '" + name + "' (expected float, rational or implicit)");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

double parse_decimal(std::string_view s)
{
    std::string_view body = s;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc{} || ptr != body.data() + body.size() || !std::isfinite(v))
        throw UsageError("'" + std::string(s) + "' is not a finite number");
    return v;
}

mpq_class parse_rational_literal(const std::string& s)
{
    const auto slash = s.find('/');
    auto digits = [](std::string_view d, bool allow_sign) {
        if (allow_sign && !d.empty() && (d.front() == '-' || d.front() == '+')) d.remove_prefix(1);
        return !d.empty() && d.find_first_not_of("0123456789") == std::string_view::npos;
    };
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw UsageError("'" + s + "' is not a rational literal n/d");
    mpq_class q(mpz_class(num.front() == '+' ? num.substr(1) : num), mpz_class(den));
    if (q.get_den() == 0) throw UsageError("'" + s + "' has a zero denominator");
    q.canonicalize();
    return q;
}

std::vector<std::string> split_tokens(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        for (auto& c : line)
            if (c == ',') c = ' ';
        std::istringstream words(line);
        for (std::string w; words >> w;) out.push_back(w);
    }
    return out;
}

nlohmann::json classify_tokens(const std::vector<std::string>& tokens, Backend backend)
{
    if (tokens.size() != 18)
        throw UsageError("expected 18 coordinates (two triangles), got " + std::to_string(tokens.size()));
    IntersectionResult r;
    if (backend == Backend::Rational) {
        std::array<RationalPoint3, 6> p;
        for (std::size_t i = 0; i < 18; ++i) {
            const std::string& t = tokens[i];
            const mpq_class v = t.find('/') != std::string::npos ? parse_rational_literal(t) : to_rational(parse_decimal(t));
            (i % 3 == 0 ? p[i / 3].x : i % 3 == 1 ? p[i / 3].y : p[i / 3].z) = v;
        }
        r = classify(Triangle<RationalPoint3>{{p[0], p[1], p[2]}}, Triangle<RationalPoint3>{{p[3], p[4], p[5]}});
    } else {
        std::array<Point3d, 6> p;
        for (std::size_t i = 0; i < 18; ++i) {
            if (tokens[i].find('/') != std::string::npos)
                throw UsageError("rational literal '" + tokens[i] + "' requires --backend rational");
            const double v = parse_decimal(tokens[i]);
            (i % 3 == 0 ? p[i / 3].x : i % 3 == 1 ? p[i / 3].y : p[i / 3].z) = v;
        }
        const Triangle<Point3d> t0{{p[0], p[1], p[2]}}, t1{{p[3], p[4], p[5]}};
        if (backend == Backend::Float64) {
            r = classify(t0, t1);
        } else {
            r = classify(as_implicit(t0, 0), as_implicit(t1, 3));
        }
    }
    return pair_record(r, backend);
}

std::string result_text(const nlohmann::json& j)
{
    std::ostringstream out;
    out << "coplanar: " << (j["coplanar"].get<bool>() ? "yes" : "no") << "\n";
    out << "points: " << j["points"].size() << "\n";
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
        const auto& p = j["points"][i];
        out << "  " << i << ": (" << p["kind"].get<std::string>() << ", " << p["id0"] << ", " << p["id1"] << ")\n";
    }
    out << "segments: " << j["segments"].size() << "\n";
    for (const auto& s : j["segments"]) out << "  " << s[0] << " - " << s[1] << "\n";
    return out.str();
}

std::vector<Backend> parse_backend_list(const std::string& list)
{
    std::vector<Backend> out;
    std::istringstream in(list);
    for (std::string name; std::getline(in, name, ',');)
        if (!name.empty()) out.push_back(parse_backend(name));
    if (out.empty()) throw UsageError("no backend selected");
    return out;
}

std::vector<GeneratorSpec> parse_bench_specs(const std::string& text)
{
    std::vector<GeneratorSpec> specs;
    std::istringstream lines(text);
    std::string line;
    for (std::size_t number = 1; std::getline(lines, line); ++number) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream words(line);
        std::vector<std::string> w;
        for (std::string s; words >> s;) w.push_back(s);
        if (w.empty()) continue;
        auto fail = [&](const std::string& what) {
            throw UsageError("line " + std::to_string(number) + ": " + what);
        };
        if (w.size() < 3 || w.size() > 4) fail("expected 'family count seed [ulpScale]'");
        GeneratorSpec spec;
        const auto family = parse_family(w[0]);
        if (!family) fail("unknown family '" + w[0] + "'");
        spec.family = *family;
        auto integer = [&](const std::string& s) {
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size()) fail("'" + s + "' is not a non-negative integer");
            return v;
        };
        spec.count = integer(w[1]);
        spec.seed = integer(w[2]);
        if (w.size() == 4) {
            try {
                spec.ulp_scale = parse_decimal(w[3]);
            } catch (const UsageError& e) {
                fail(e.what());
            }
        }
        specs.push_back(spec);
    }
    return specs;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact triangle-triangle intersection classification"};
    app.require_subcommand(0, 1);
    bool schema_version = false;
    app.add_flag("--schema-version", schema_version, "Print the output schema version and exit");

    // pair
    auto* pair = app.add_subcommand("pair", "Classify the intersection of two triangles");
    std::vector<std::string> pair_args;
    std::string pair_backend = "float", pair_format = "json";
    pair->add_option("coords", pair_args, "18 coordinates (t0 then t1), or a file holding them")->required();
    pair->add_option("--backend", pair_backend, "float, rational or implicit");
    pair->add_option("--format", pair_format, "json or text");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "Find intersecting face pairs of a triangle mesh");
    std::string scan_path, scan_format, scan_backend = "float", scan_output;
    bool ignore_shared = true, triangulate = false;
    unsigned scan_workers = 1;
    double scan_timeout = 0;
    scan_cmd->add_option("mesh", scan_path, "OFF, OBJ or STL file")->required();
    scan_cmd->add_option("--format", scan_format, "off, obj, stl, stl-binary or stl-ascii (default: from extension)");
    scan_cmd->add_option("--backend", scan_backend, "float, rational or implicit");
    scan_cmd->add_option("--ignore-shared-simplices", ignore_shared,
                         "Do not count contacts through shared mesh vertices and edges (true/false)")
        ->default_str("true");
    scan_cmd->add_option("--workers", scan_workers, "Narrow-phase worker threads (0 = all cores)");
    scan_cmd->add_option("--timeout", scan_timeout, "Abort after this many seconds with a partial report");
    scan_cmd->add_option("--output", scan_output, "Write per-pair results as JSON lines to this file");
    scan_cmd->add_flag("--triangulate", triangulate, "Fan-triangulate polygons instead of rejecting them");

    // fuzz
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Differential test of all backends against the exact oracle");
    std::string fuzz_family, fuzz_backends = "float,rational,implicit", fuzz_output, fuzz_replay;
    std::uint64_t fuzz_seed = 0, fuzz_count = 1000;
    double ulp_scale = 0x1p-52;
    unsigned fuzz_workers = 1;
    fuzz_cmd->add_option("--family", fuzz_family, "Generator family");
    fuzz_cmd->add_option("--seed", fuzz_seed, "Generator seed");
    fuzz_cmd->add_option("--count", fuzz_count, "Number of triangle pairs");
    fuzz_cmd->add_option("--ulp-scale", ulp_scale, "Perturbation unit of nearDegenerate");
    fuzz_cmd->add_option("--backend", fuzz_backends, "Comma-separated backends to run");
    fuzz_cmd->add_option("--workers", fuzz_workers, "Worker threads (0 = all cores)");
    fuzz_cmd->add_option("--output", fuzz_output, "Write the verdict here when a mismatch is found");
    fuzz_cmd->add_option("--replay", fuzz_replay, "Re-run the spec recorded in a verdict file");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time the classifier over generated streams");
    std::string bench_specs, bench_backend = "float", bench_format = "json";
    unsigned repetitions = 5;
    bench_cmd->add_option("specs", bench_specs, "File of 'family count seed [ulpScale]' lines")->required();
    bench_cmd->add_option("--repetitions", repetitions, "Timed repetitions per case (median reported)");
    bench_cmd->add_option("--backend", bench_backend, "float, rational or implicit");
    bench_cmd->add_option("--format", bench_format, "json or table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    auto workers_or_all = [](unsigned w) { return w == 0 ? std::max(1u, std::thread::hardware_concurrency()) : w; };

    try {
        if (schema_version) {
            std::cout << kSchemaVersion << "\n";
            return kOk;
        }
        if (pair->parsed()) {
            const Backend backend = parse_backend(pair_backend);
            if (pair_format != "json" && pair_format != "text") throw UsageError("--format must be json or text");
            std::vector<std::string> tokens = pair_args;
            if (tokens.size() == 1) tokens = split_tokens(read_file(tokens[0]));
            try {
                const nlohmann::json record = classify_tokens(tokens, backend);
                std::cout << (pair_format == "json" ? record.dump() + "\n" : result_text(record));
            } catch (const DegenerateTriangle& e) {
                std::cerr << "tritri: " << e.what() << "\n";
                return kDegenerate;
            }
            return kOk;
        }
        if (scan_cmd->parsed()) {
            ScanOptions options;
            options.backend = parse_backend(scan_backend);
            options.ignore_shared_simplices = ignore_shared;
            options.workers = workers_or_all(scan_workers);
            options.timeout_seconds = scan_timeout;
            Mesh mesh;
            try {
                std::optional<MeshFormat> format;
                if (!scan_format.empty()) {
                    format = parse_mesh_format(scan_format);
                    if (!format) format = detect_format(scan_path + ".stl", read_file(scan_path));
                }
                mesh = load_mesh(scan_path, format, LoadOptions{triangulate});
            } catch (const ParseError& e) {
                std::cerr << "tritri: " << scan_path << ": " << e.what() << "\n";
                return kDegenerate;
            } catch (const UnsupportedFormat& e) {
                std::cerr << "tritri: " << scan_path << ": " << e.what() << "\n";
                return kDegenerate;
            }
            const ScanOutput out = scan(mesh, options);
            if (!scan_output.empty()) {
                std::string lines;
                for (const auto& rec : out.records) lines += scan_result_record(rec).dump() + "\n";
                write_text(scan_output, lines);
            }
            std::cout << scan_report_record(out.report, options).dump() << "\n";
            if (out.report.timed_out) {
                std::cerr << "tritri: timeout after " << out.report.pairs_processed << " of "
                          << out.report.candidate_pairs << " candidate pairs\n";
                return kTimeout;
            }
            return kOk;
        }
        if (fuzz_cmd->parsed()) {
            GeneratorSpec spec;
            FuzzOptions options;
            if (!fuzz_replay.empty()) {
                nlohmann::json recorded;
                try {
                    recorded = nlohmann::json::parse(read_file(fuzz_replay));
                    std::tie(spec, options) = fuzz_spec_from_json(recorded);
                } catch (const nlohmann::json::exception& e) {
                    throw UsageError(fuzz_replay + ": " + e.what());
                } catch (const ParseError& e) {
                    throw UsageError(fuzz_replay + ": " + e.what());
                }
            } else {
                if (fuzz_family.empty()) throw UsageError("--family is required");
                const auto family = parse_family(fuzz_family);
                if (!family) throw UsageError("unknown family '" + fuzz_family + "'");
                spec = {*family, fuzz_seed, fuzz_count, ulp_scale};
                options.backends = parse_backend_list(fuzz_backends);
            }
            options.workers = workers_or_all(fuzz_workers);
            const FuzzVerdict verdict = fuzz(spec, options);
            const std::string record = fuzz_verdict_record(verdict, options).dump();
            std::cout << record << "\n";
            if (!verdict.pass()) {
                if (!fuzz_output.empty()) write_text(fuzz_output, record + "\n");
                return kMismatch;
            }
            return kOk;
        }
        if (bench_cmd->parsed()) {
            const Backend backend = parse_backend(bench_backend);
            if (bench_format != "json" && bench_format != "table") throw UsageError("--format must be json or table");
            if (repetitions == 0) throw UsageError("--repetitions must be at least 1");
            const std::vector<GeneratorSpec> specs = parse_bench_specs(read_file(bench_specs));
            const BenchReport report = bench(specs, repetitions, backend);
            std::cout << (bench_format == "json" ? bench_report_record(report).dump() + "\n"
                                                 : format_bench_table(report));
            return kOk;
        }
        std::cout << app.help();
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "tritri: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidCoordinate& e) {
        std::cerr << "tritri: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "tritri: internal error: " << e.what() << "\n";
        return kUsage;
    }
}

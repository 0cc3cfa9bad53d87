#include "tritri/json_io.hpp"

#include "tritri/errors.hpp"

namespace tritri {

using nlohmann::json;

namespace {

json header(const char* record)
{
    return json{{"schema_version", kSchemaVersion}, {"record", record}};
}

json oracle_point_to_json(const OraclePoint& p)
{
    return json::array({p.x.get_str(), p.y.get_str(), p.z.get_str()});
}

json counters_to_json(const PredicateCounters& c)
{
    return json{{"orient2d", {{"filtered", c.orient2d_filtered}, {"exact_fallback", c.orient2d_exact},
                              {"total", c.orient2d_total()}}},
                {"orient3d", {{"filtered", c.orient3d_filtered}, {"exact_fallback", c.orient3d_exact},
                              {"total", c.orient3d_total()}}}};
}

Backend parse_backend_name(const std::string& name)
{
    for (Backend b : kAllBackends)
        if (to_string(b) == name) return b;
    throw ParseError("unknown backend '" + name + "'", 0);
}

} // namespace

json result_to_json(const IntersectionResult& r)
{
    json points = json::array();
    for (const auto& p : r.points)
        points.push_back({{"kind", std::string(to_string(p.kind))}, {"id0", p.id0.id()}, {"id1", p.id1.id()}});
    json segments = json::array();
    for (const auto& s : r.segments) segments.push_back(json::array({s.p0, s.p1}));
    return json{{"coplanar", r.coplanar}, {"points", points}, {"segments", segments}, {"metadata", r.metadata}};
}

IntersectionResult result_from_json(const json& j)
{
    try {
        IntersectionResult r;
        r.coplanar = j.at("coplanar").get<bool>();
        for (const auto& p : j.at("points")) {
            IntersectionPoint ip{parse_intersection_kind(p.at("kind").get<std::string>()),
                                 SimplexRef(p.at("id0").get<int>()), SimplexRef(p.at("id1").get<int>())};
            check_descriptor(ip);
            r.points.push_back(ip);
        }
        for (const auto& s : j.at("segments")) {
            if (!s.is_array() || s.size() != 2) throw ParseError("segment must be a pair of indices", 0);
            r.segments.push_back({s[0].get<int>(), s[1].get<int>()});
        }
        if (j.contains("metadata")) r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed result record: ") + e.what(), 0);
    }
}

json pair_record(const IntersectionResult& r, Backend backend)
{
    json j = header("pair");
    j["backend"] = std::string(to_string(backend));
    j.update(result_to_json(r));
    return j;
}

json scan_result_record(const PairRecord& rec)
{
    json j = header("scan_result");
    j["f0"] = rec.pair.f0;
    j["f1"] = rec.pair.f1;
    j["shared_simplices"] = rec.pair.shared_simplices;
    j.update(result_to_json(rec.result));
    return j;
}

json scan_report_record(const ScanReport& r, const ScanOptions& options)
{
    json j = header("scan_report");
    j["mesh_name"] = r.mesh_name;
    j["backend"] = std::string(to_string(options.backend));
    j["ignore_shared_simplices"] = options.ignore_shared_simplices;
    j["face_count"] = r.face_count;
    j["degenerate_faces"] = r.degenerate_faces;
    j["candidate_pairs"] = r.candidate_pairs;
    j["pairs_processed"] = r.pairs_processed;
    j["intersecting_pairs"] = r.intersecting_pairs;
    j["intersection_point_total"] = r.intersection_point_total;
    j["intersection_segment_total"] = r.intersection_segment_total;
    j["coplanar_pair_count"] = r.coplanar_pair_count;
    j["elapsed"] = {{"broad", r.broad_seconds}, {"narrow", r.narrow_seconds}};
    j["timed_out"] = r.timed_out;
    return j;
}

json triangle_to_json(const Triangle<Point3d>& t)
{
    json out = json::array();
    for (const auto& p : t.v) out.push_back(json::array({p.x, p.y, p.z}));
    return out;
}

Triangle<Point3d> triangle_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 3) throw ParseError("triangle must have 3 vertices", 0);
    Triangle<Point3d> t;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& p = j[k];
        if (!p.is_array() || p.size() != 3) throw ParseError("vertex must have 3 coordinates", 0);
        t.v[k] = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    }
    return t;
}

json fuzz_verdict_record(const FuzzVerdict& v, const FuzzOptions& options)
{
    json j = header("fuzz_verdict");
    j["family"] = std::string(to_string(v.spec.family));
    j["seed"] = v.spec.seed;
    j["count"] = v.spec.count;
    j["ulp_scale"] = v.spec.ulp_scale;
    json backends = json::array();
    for (Backend b : options.backends) backends.push_back(std::string(to_string(b)));
    j["backends"] = backends;
    j["pass"] = v.pass();
    j["cases_checked"] = v.cases_checked;
    if (v.failure) {
        const FailureCase& f = *v.failure;
        json outputs = json::array();
        for (const auto& [backend, result] : f.check.outputs) {
            json o = result_to_json(result);
            o["backend"] = std::string(to_string(backend));
            outputs.push_back(o);
        }
        json oracle_points = json::array();
        for (const auto& p : f.check.oracle.points) oracle_points.push_back(oracle_point_to_json(p));
        json oracle_segments = json::array();
        for (const auto& s : f.check.oracle.segments)
            oracle_segments.push_back(json::array({oracle_point_to_json(s.first), oracle_point_to_json(s.second)}));
        j["failure"] = {{"index", f.index},
                        {"t0", triangle_to_json(f.pair.t0)},
                        {"t1", triangle_to_json(f.pair.t1)},
                        {"detail", f.check.detail},
                        {"outputs", outputs},
                        {"oracle",
                         {{"coplanar", f.check.oracle.coplanar},
                          {"points", oracle_points},
                          {"segments", oracle_segments}}}};
    } else {
        const FuzzStats& s = v.stats;
        json kinds = json::object();
        for (std::size_t k = 0; k < s.kinds.size(); ++k)
            kinds[std::string(to_string(static_cast<IntersectionKind>(k)))] = s.kinds[k];
        j["stats"] = {{"intersecting_pairs", s.intersecting}, {"coplanar_pairs", s.coplanar},
                      {"points", s.points},           {"segments", s.segments},
                      {"kinds", kinds}};
    }
    return j;
}

std::pair<GeneratorSpec, FuzzOptions> fuzz_spec_from_json(const json& j)
{
    try {
        if (j.at("record").get<std::string>() != "fuzz_verdict") throw ParseError("not a fuzz_verdict record", 0);
        GeneratorSpec spec;
        const auto family = parse_family(j.at("family").get<std::string>());
        if (!family) throw ParseError("unknown family '" + j.at("family").get<std::string>() + "'", 0);
        spec.family = *family;
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.count = j.at("count").get<std::uint64_t>();
        spec.ulp_scale = j.at("ulp_scale").get<double>();
        FuzzOptions options;
        options.backends.clear();
        for (const auto& b : j.at("backends")) options.backends.push_back(parse_backend_name(b.get<std::string>()));
        return {spec, options};
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed fuzz record: ") + e.what(), 0);
    }
}

json bench_report_record(const BenchReport& report)
{
    json j = header("bench_report");
    j["backend"] = std::string(to_string(report.backend));
    j["repetitions"] = report.repetitions;
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"case_name", r.case_name},
                        {"pair_count", r.pair_count},
                        {"intersection_point_total", r.intersection_point_total},
                        {"narrow_phase_seconds", r.narrow_phase_seconds},
                        {"predicate_calls", counters_to_json(r.counters)},
                        {"exact_fallback_fraction", r.exact_fallback_fraction()}});
    j["rows"] = rows;
    return j;
}

} // namespace tritri

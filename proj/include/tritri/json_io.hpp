#pragma once

// JSON records emitted by the command-line tool. Every record carries
// "schema_version" and a "record" discriminator; the shape of each record is
// fixed by schema/tritri-output.schema.json.

#include "tritri/fuzz.hpp"
#include "tritri/geometry.hpp"
#include "tritri/mesh.hpp"

#include <json.hpp>

#include <string>

namespace tritri {

inline constexpr const char* kSchemaVersion = "1.0";

nlohmann::json result_to_json(const IntersectionResult& r);
/// Inverse of result_to_json; throws ParseError or MalformedDescriptor.
IntersectionResult result_from_json(const nlohmann::json& j);

nlohmann::json pair_record(const IntersectionResult& r, Backend backend);
nlohmann::json scan_result_record(const PairRecord& rec);
nlohmann::json scan_report_record(const ScanReport& report, const ScanOptions& options);
nlohmann::json fuzz_verdict_record(const FuzzVerdict& verdict, const FuzzOptions& options);
nlohmann::json bench_report_record(const BenchReport& report);

nlohmann::json triangle_to_json(const Triangle<Point3d>& t);
Triangle<Point3d> triangle_from_json(const nlohmann::json& j);

/// Reads the generator spec and backends back out of a fuzz_verdict record.
std::pair<GeneratorSpec, FuzzOptions> fuzz_spec_from_json(const nlohmann::json& j);

} // namespace tritri

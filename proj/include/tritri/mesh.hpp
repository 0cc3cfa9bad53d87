#pragma once

// Triangle meshes: loading, broad phase, and the all-candidates scan.

#include "tritri/geometry.hpp"
#include "tritri/numeric.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tritri {

struct Mesh {
    std::string name;
    std::vector<Point3d> vertices;
    std::vector<std::array<std::uint32_t, 3>> faces;

    Triangle<Point3d> triangle(std::size_t face) const
    {
        const auto& f = faces[face];
        return {{vertices[f[0]], vertices[f[1]], vertices[f[2]]}};
    }
};

enum class MeshFormat : std::uint8_t { OFF, OBJ, STLBinary, STLAscii };

std::string_view to_string(MeshFormat f) noexcept;
/// Accepts "off", "obj", "stl" (binary or ascii, sniffed), "stl-binary", "stl-ascii".
/// Returns nullopt for "stl", which needs the file contents to resolve.
std::optional<MeshFormat> parse_mesh_format(std::string_view name);

struct LoadOptions {
    /// Fan-triangulate polygons with more than three corners instead of
    /// rejecting them.
    bool triangulate_polygons = false;
};

/// Picks the format from the extension; STL is told apart by content.
MeshFormat detect_format(const std::filesystem::path& path, std::string_view contents);

Mesh parse_mesh(std::string_view contents, MeshFormat format, const LoadOptions& options = {});
/// format = nullopt means detect from the extension and contents.
Mesh load_mesh(const std::filesystem::path& path, std::optional<MeshFormat> format = std::nullopt,
               const LoadOptions& options = {});

struct CandidatePair {
    std::uint32_t f0 = 0, f1 = 0;      ///< f0 < f1
    std::uint8_t shared_simplices = 0; ///< number of shared vertex indices

    friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
};

struct Aabb {
    Point3d lo, hi;
};

Aabb face_box(const Mesh& m, std::size_t face);
bool overlaps(const Aabb& a, const Aabb& b) noexcept;
std::uint8_t shared_vertex_count(const Mesh& m, std::uint32_t f0, std::uint32_t f1) noexcept;

/// Every face pair whose closed bounding boxes overlap, sorted by (f0, f1).
/// Faces flagged in skip (same length as faces, or empty) take no part.
std::vector<CandidatePair> candidate_pairs(const Mesh& m, const std::vector<bool>& skip = {});
/// The quadratic reference scan.
std::vector<CandidatePair> candidate_pairs_brute_force(const Mesh& m, const std::vector<bool>& skip = {});

struct ScanOptions {
    Backend backend = Backend::Float64;
    bool ignore_shared_simplices = true;
    unsigned workers = 1;
    double timeout_seconds = 0; ///< 0 disables the limit
};

struct PairRecord {
    CandidatePair pair;
    IntersectionResult result;
};

struct ScanReport {
    std::string mesh_name;
    std::uint64_t face_count = 0;
    std::uint64_t degenerate_faces = 0;
    std::uint64_t candidate_pairs = 0;
    std::uint64_t pairs_processed = 0;
    std::uint64_t intersecting_pairs = 0;
    std::uint64_t intersection_point_total = 0;
    std::uint64_t intersection_segment_total = 0;
    std::uint64_t coplanar_pair_count = 0;
    double broad_seconds = 0;
    double narrow_seconds = 0;
    bool timed_out = false;
};

struct ScanOutput {
    ScanReport report;
    /// Intersecting pairs in ascending (f0, f1) order.
    std::vector<PairRecord> records;
};

/// True when every point of r is a vertex the two faces share by index.
bool adjacency_only(const Mesh& m, const CandidatePair& pair, const IntersectionResult& r);

/// Runs the classifier over every candidate pair. On timeout the report
/// and records cover the longest fully processed prefix of the candidates.
ScanOutput scan(const Mesh& m, const ScanOptions& options = {});

// Synthetic meshes for fixtures and performance runs.
Mesh uv_sphere(const Point3d& center, double radius, unsigned stacks, unsigned slices);
/// A height field z = amplitude * sin(freq_x * x) * cos(freq_y * y) + offset
/// over [0, size]^2 sampled on an n x n vertex grid.
Mesh wavy_sheet(unsigned n, double size, double amplitude, double freq_x, double freq_y, double offset);
Mesh merge(const Mesh& a, const Mesh& b);

std::string write_off(const Mesh& m);
std::string write_stl_ascii(const Mesh& m);
std::string write_stl_binary(const Mesh& m);

} // namespace tritri

#pragma once

// Brute-force reference for the classifier. Intersections are constructed
// with exact rational coordinates by clipping every edge of each triangle
// against the other triangle. Nothing here uses the classifier's sign logic.

#include "tritri/geometry.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tritri {

using OraclePoint = RationalPoint3;
/// Unordered pair stored as (smaller, larger).
using OracleSegment = std::pair<OraclePoint, OraclePoint>;

OracleSegment make_oracle_segment(const OraclePoint& a, const OraclePoint& b);

struct OracleReport {
    std::set<OraclePoint> points;
    std::set<OracleSegment> segments;
    bool coplanar = false;
};

/// Exact intersection points and segments of two triangles. Throws
/// DegenerateTriangle for repeated or collinear vertices.
OracleReport oracle_classify(const Triangle<RationalPoint3>& t0, const Triangle<RationalPoint3>& t1);
OracleReport oracle_classify(const Triangle<Point3d>& t0, const Triangle<Point3d>& t1);

/// Maps classifier descriptors to exact coordinates: vertex events take the
/// named vertex, EE is the exact crossing of the two edge lines, EF the exact
/// piercing of the edge line through the other triangle's plane.
/// Throws MalformedDescriptor for descriptors that break their kind's shape.
OracleReport canonicalize(const IntersectionResult& result, const Triangle<RationalPoint3>& t0,
                          const Triangle<RationalPoint3>& t1);

struct OracleComparison {
    bool match = true;
    std::vector<OraclePoint> points_only_left, points_only_right;
    std::vector<OracleSegment> segments_only_left, segments_only_right;

    std::string describe() const;
};

OracleComparison compare(const OracleReport& left, const OracleReport& right);

std::string to_string(const OraclePoint& p);

Triangle<RationalPoint3> to_rational(const Triangle<Point3d>& t);

} // namespace tritri

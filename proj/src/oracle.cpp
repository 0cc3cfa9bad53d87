#include "tritri/oracle.hpp"

#include "tritri/implicit_point.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace tritri {

namespace {

struct Plane {
    RationalPoint3 origin;
    RationalPoint3 normal;
};

Plane plane_of(const Triangle<RationalPoint3>& t) { return {t[0], cross(t[1] - t[0], t[2] - t[0])}; }

void require_proper(const Triangle<RationalPoint3>& t)
{
    if (t[0] == t[1] || t[1] == t[2] || t[2] == t[0]) throw DegenerateTriangle(DegeneracyReason::RepeatedVertex);
    const RationalPoint3 n = cross(t[1] - t[0], t[2] - t[0]);
    if (sgn(n.x) == 0 && sgn(n.y) == 0 && sgn(n.z) == 0) throw DegenerateTriangle(DegeneracyReason::Collinear);
}

// Non-negative on the closed inner side of edge (u, w) for points of the
// triangle's plane, given the triangle normal n.
mpq_class inner_side(const RationalPoint3& u, const RationalPoint3& w, const RationalPoint3& n,
                     const RationalPoint3& x)
{
    return dot(n, cross(w - u, x - u));
}

/// Closed segment pq intersected with the closed triangle t: zero, one or two
/// endpoints of the intersection.
std::vector<RationalPoint3> clip_segment(const RationalPoint3& p, const RationalPoint3& q,
                                         const Triangle<RationalPoint3>& t, const Plane& plane)
{
    const mpq_class sp = dot(plane.normal, p - plane.origin);
    const mpq_class sq = dot(plane.normal, q - plane.origin);
    const RationalPoint3 dir = q - p;

    if (sgn(sp) == 0 && sgn(sq) == 0) {
        mpq_class lo = 0, hi = 1;
        for (int k = 0; k < 3; ++k) {
            const RationalPoint3 &u = t[k], &w = t[(k + 1) % 3];
            const mpq_class gp = inner_side(u, w, plane.normal, p);
            const mpq_class gq = inner_side(u, w, plane.normal, q);
            if (sgn(gp) < 0 && sgn(gq) < 0) return {};
            if (sgn(gp) >= 0 && sgn(gq) >= 0) continue;
            const mpq_class cut = gp / (gp - gq);
            if (sgn(gp) < 0)
                lo = std::max(lo, cut);
            else
                hi = std::min(hi, cut);
        }
        if (lo > hi) return {};
        if (lo == hi) return {p + lo * dir};
        return {p + lo * dir, p + hi * dir};
    }
    if (sgn(sp) * sgn(sq) > 0) return {};
    const mpq_class s = sp / (sp - sq);
    const RationalPoint3 x = p + s * dir;
    for (int k = 0; k < 3; ++k)
        if (sgn(inner_side(t[k], t[(k + 1) % 3], plane.normal, x)) < 0) return {};
    return {x};
}

bool boxes_disjoint(const Triangle<RationalPoint3>& a, const Triangle<RationalPoint3>& b)
{
    for (int axis = 0; axis < 3; ++axis) {
        auto lo_hi = [axis](const Triangle<RationalPoint3>& t) {
            const mpq_class* lo = &t[0][axis];
            const mpq_class* hi = lo;
            for (int k = 1; k < 3; ++k) {
                if (t[k][axis] < *lo) lo = &t[k][axis];
                if (t[k][axis] > *hi) hi = &t[k][axis];
            }
            return std::pair{lo, hi};
        };
        const auto [alo, ahi] = lo_hi(a);
        const auto [blo, bhi] = lo_hi(b);
        if (*ahi < *blo || *bhi < *alo) return true;
    }
    return false;
}

RationalPoint3 vertex_of(int id, const Triangle<RationalPoint3>& t0, const Triangle<RationalPoint3>& t1)
{
    return id < 3 ? t0[id] : t1[id - 3];
}

std::pair<RationalPoint3, RationalPoint3> edge_of(int id, const Triangle<RationalPoint3>& t0,
                                                  const Triangle<RationalPoint3>& t1)
{
    const auto& t = id < 9 ? t0 : t1;
    const int k = (id - 6) % 3;
    return {t[k], t[(k + 1) % 3]};
}

} // namespace

OracleSegment make_oracle_segment(const OraclePoint& a, const OraclePoint& b)
{
    return b < a ? OracleSegment{b, a} : OracleSegment{a, b};
}

Triangle<RationalPoint3> to_rational(const Triangle<Point3d>& t)
{
    return {{to_rational(t[0]), to_rational(t[1]), to_rational(t[2])}};
}

OracleReport oracle_classify(const Triangle<RationalPoint3>& t0, const Triangle<RationalPoint3>& t1)
{
    require_proper(t0);
    require_proper(t1);
    const Plane plane0 = plane_of(t0), plane1 = plane_of(t1);

    OracleReport report;
    report.coplanar = std::ranges::all_of(t1.v, [&](const RationalPoint3& v) {
        return sgn(dot(plane0.normal, v - plane0.origin)) == 0;
    });
    if (boxes_disjoint(t0, t1)) return report;

    const std::array<std::pair<const Triangle<RationalPoint3>*, const Plane*>, 2> others{
        std::pair{&t1, &plane1}, std::pair{&t0, &plane0}};
    const std::array<const Triangle<RationalPoint3>*, 2> selves{&t0, &t1};
    for (int side = 0; side < 2; ++side) {
        const auto& self = *selves[side];
        const auto& [other, plane] = others[side];
        for (int k = 0; k < 3; ++k) {
            const auto ends = clip_segment(self[k], self[(k + 1) % 3], *other, *plane);
            report.points.insert(ends.begin(), ends.end());
            if (report.coplanar && ends.size() == 2) report.segments.insert(make_oracle_segment(ends[0], ends[1]));
        }
    }
    if (!report.coplanar) {
        // The intersection of two non-coplanar triangles is convex and lies on
        // one line, so its boundary points are at most two segment ends.
        if (report.points.size() > 2) throw InternalInvariantViolation("oracle: more than two non-coplanar points");
        if (report.points.size() == 2)
            report.segments.insert(make_oracle_segment(*report.points.begin(), *report.points.rbegin()));
    }
    return report;
}

OracleReport oracle_classify(const Triangle<Point3d>& t0, const Triangle<Point3d>& t1)
{
    return oracle_classify(to_rational(t0), to_rational(t1));
}

OracleReport canonicalize(const IntersectionResult& result, const Triangle<RationalPoint3>& t0,
                          const Triangle<RationalPoint3>& t1)
{
    OracleReport report;
    report.coplanar = result.coplanar;
    std::vector<RationalPoint3> coords;
    coords.reserve(result.points.size());
    for (const auto& p : result.points) {
        check_descriptor(p);
        switch (p.kind) {
        case IntersectionKind::VV:
        case IntersectionKind::VE:
        case IntersectionKind::VF: coords.push_back(vertex_of(p.id0.id(), t0, t1)); break;
        case IntersectionKind::EE: {
            const auto [a0, a1] = edge_of(p.id0.id(), t0, t1);
            const auto [b0, b1] = edge_of(p.id1.id(), t0, t1);
            try {
                coords.push_back(exact_coordinates(make_ssi(a0, a1, b0, b1)));
            } catch (const DegenerateConstruction& e) {
                throw MalformedDescriptor(std::string("EE descriptor names non-crossing edges: ") + e.what());
            }
            break;
        }
        case IntersectionKind::EF: {
            const auto [a0, a1] = edge_of(p.id0.id(), t0, t1);
            const auto& face = p.id0.id() < 9 ? t1 : t0;
            try {
                coords.push_back(exact_coordinates(ImplicitPointLPI{a0, a1, face[0], face[1], face[2]}));
            } catch (const DegenerateConstruction& e) {
                throw MalformedDescriptor(std::string("EF descriptor names an edge parallel to the face: ") + e.what());
            }
            break;
        }
        }
    }
    report.points.insert(coords.begin(), coords.end());
    for (const auto& s : result.segments) {
        const auto n = static_cast<int>(coords.size());
        if (s.p0 < 0 || s.p1 < 0 || s.p0 >= n || s.p1 >= n) throw MalformedDescriptor("segment index out of range");
        report.segments.insert(make_oracle_segment(coords[static_cast<std::size_t>(s.p0)],
                                                   coords[static_cast<std::size_t>(s.p1)]));
    }
    return report;
}

OracleComparison compare(const OracleReport& left, const OracleReport& right)
{
    OracleComparison c;
    std::set_difference(left.points.begin(), left.points.end(), right.points.begin(), right.points.end(), std::back_inserter(c.points_only_left));
    std::set_difference(right.points.begin(), right.points.end(), left.points.begin(), left.points.end(), std::back_inserter(c.points_only_right));
    std::set_difference(left.segments.begin(), left.segments.end(), right.segments.begin(), right.segments.end(), std::back_inserter(c.segments_only_left));
    std::set_difference(right.segments.begin(), right.segments.end(), left.segments.begin(), left.segments.end(), std::back_inserter(c.segments_only_right));
    c.match = c.points_only_left.empty() && c.points_only_right.empty() && c.segments_only_left.empty()
        && c.segments_only_right.empty();
    return c;
}

std::string to_string(const OraclePoint& p)
{
    return "(" + p.x.get_str() + ", " + p.y.get_str() + ", " + p.z.get_str() + ")";
}

std::string OracleComparison::describe() const
{
    if (match) return "match";
    std::ostringstream out;
    out << "mismatch";
    for (const auto& p : points_only_left) out << "; point only left " << to_string(p);
    for (const auto& p : points_only_right) out << "; point only right " << to_string(p);
    for (const auto& s : segments_only_left)
        out << "; segment only left " << to_string(s.first) << "-" << to_string(s.second);
    for (const auto& s : segments_only_right)
        out << "; segment only right " << to_string(s.first) << "-" << to_string(s.second);
    return out.str();
}

} // namespace tritri

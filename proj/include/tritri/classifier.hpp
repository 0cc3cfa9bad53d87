#pragma once

// Exact detection and classification of every intersection between two
// triangles, generic over the predicate kernel (see kernels.hpp).
//
// Every reported point lies in exactly one open simplex of each triangle, so
// the five kinds never describe the same point twice: a point on a vertex is
// VV/VE/VF, never EE or EF, because EE and EF only fire for crossings strictly
// inside both edges / strictly inside the face.

#include "tritri/geometry.hpp"
#include "tritri/kernels.hpp"

#include <algorithm>
#include <optional>
#include <span>

namespace tritri {

/// Orientation of each vertex against the other triangle's plane.
struct OrientationCache {
    std::array<Sign, 3> o01{}; ///< T0 vertices vs plane of T1
    std::array<Sign, 3> o10{}; ///< T1 vertices vs plane of T0

    bool coplanar() const noexcept
    {
        auto zero = [](Sign s) { return s == Sign::Zero; };
        return std::ranges::all_of(o01, zero) && std::ranges::all_of(o10, zero);
    }
};

/// True iff the vertices of one triangle lie strictly on one side of the
/// other triangle's plane.
inline bool early_reject(const OrientationCache& c) noexcept
{
    auto same_side = [](const std::array<Sign, 3>& o) {
        return o[0] != Sign::Zero && o[0] == o[1] && o[1] == o[2];
    };
    return same_side(c.o01) || same_side(c.o10);
}

/// True iff point p lies on the closed edge with global id `edge` (6..11).
/// Decided from the descriptor alone: the descriptor names the open simplex
/// of each triangle that contains the point.
inline bool lies_on_edge(const IntersectionPoint& p, SimplexRef edge) noexcept
{
    const int local = (edge.id() - 6) % 3;
    const int base = edge.id() < 9 ? 0 : 3;
    const int va = base + local, vb = base + (local + 1) % 3;
    auto touches = [&](SimplexRef s) { return s == edge || s.id() == va || s.id() == vb; };
    return touches(p.id0) || touches(p.id1);
}

/// One segment joining the two points of a non-coplanar intersection.
std::vector<IntersectionSegment> assemble_segments_non_coplanar(std::span<const IntersectionPoint> points);

/// Boundary of a coplanar overlap: for every input edge, the points lying on
/// it are joined. A closed edge meets the other (convex) triangle in a single
/// interval whose endpoints are exactly the reported points on that edge, so
/// each edge carries at most two of them.
std::vector<IntersectionSegment> assemble_segments_coplanar(std::span<const IntersectionPoint> points);

/// The individual steps of the classification, exposed for testing. Most
/// callers want classify().
template <class Kernel>
class TriangleIntersector {
public:
    using Point = typename Kernel::Point;
    using Tri = Triangle<Point>;

    TriangleIntersector(const Tri& t0, const Tri& t1) : tri_{&t0, &t1}
    {
        for (int i = 0; i < 3; ++i) cache_.o01[i] = Kernel::orient3d(t1[0], t1[1], t1[2], t0[i]);
        for (int j = 0; j < 3; ++j) cache_.o10[j] = Kernel::orient3d(t0[0], t0[1], t0[2], t1[j]);
    }

    const OrientationCache& cache() const noexcept { return cache_; }

    /// One VV point per pair of exactly equal vertices.
    std::vector<IntersectionPoint> check_coincident_vertices()
    {
        match_vertices();
        std::vector<IntersectionPoint> out;
        for (int i = 0; i < 3; ++i)
            if (match_[i] >= 0) out.push_back(vv(i));
        return out;
    }

    /// VE / VF points for vertices lying on the other triangle's plane that
    /// are not already coincident with a vertex.
    std::vector<IntersectionPoint> check_vertex_in_simplex()
    {
        match_vertices();
        std::vector<IntersectionPoint> out;
        for (int vid = 0; vid < 6; ++vid)
            if (auto p = locate_vertex(vid)) out.push_back(*p);
        return out;
    }

    /// EE points, edge pairs in lexicographic (T0 edge, T1 edge) order.
    std::vector<IntersectionPoint> check_edge_edge_crossings()
    {
        std::vector<IntersectionPoint> out;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (edges_cross(i, j))
                    out.push_back({IntersectionKind::EE, SimplexRef::edge(TriangleTag::T0, i),
                                   SimplexRef::edge(TriangleTag::T1, j)});
        return out;
    }

    /// EF points, T0 edges first. Empty for coplanar triangles.
    std::vector<IntersectionPoint> check_edge_through_triangle()
    {
        std::vector<IntersectionPoint> out;
        if (cache_.coplanar()) return out;
        for (auto tag : {TriangleTag::T0, TriangleTag::T1})
            for (int k = 0; k < 3; ++k)
                if (edge_pierces_face(tag, k))
                    out.push_back({IntersectionKind::EF, SimplexRef::edge(tag, k), SimplexRef::none()});
        return out;
    }

    IntersectionResult run()
    {
        IntersectionResult r;
        r.coplanar = cache_.coplanar();
        if (!early_reject(cache_)) {
            match_vertices();
            for (int i = 0; i < 3; ++i) {
                if (match_[i] >= 0)
                    r.points.push_back(vv(i));
                else if (auto p = locate_vertex(i))
                    r.points.push_back(*p);
            }
            for (int j = 3; j < 6; ++j)
                if (auto p = locate_vertex(j)) r.points.push_back(*p);
            for (const auto& p : check_edge_edge_crossings()) r.points.push_back(p);
            if (r.coplanar) {
                r.segments = assemble_segments_coplanar(r.points);
            } else {
                for (const auto& p : check_edge_through_triangle()) r.points.push_back(p);
                r.segments = assemble_segments_non_coplanar(r.points);
            }
        }
        r.metadata["coplanar"] = r.coplanar ? "true" : "false";
        return r;
    }

private:
    const Point& vertex(int vid) const { return (*tri_[vid / 3])[vid % 3]; }
    const Tri& tri(TriangleTag t) const { return *tri_[static_cast<int>(t)]; }
    Sign vertex_side(int vid) const { return vid < 3 ? cache_.o01[vid] : cache_.o10[vid - 3]; }

    IntersectionPoint vv(int i) const
    {
        return {IntersectionKind::VV, SimplexRef::vertex(TriangleTag::T0, i),
                SimplexRef::vertex(TriangleTag::T1, match_[i])};
    }

    void match_vertices()
    {
        if (matched_) return;
        matched_ = true;
        match_.fill(-1);
        claimed_.fill(false);
        // Equal vertices necessarily lie on each other's plane.
        for (int i = 0; i < 3; ++i) {
            if (cache_.o01[i] != Sign::Zero) continue;
            for (int j = 0; j < 3; ++j) {
                if (cache_.o10[j] != Sign::Zero || claimed_[3 + j]) continue;
                if (Kernel::equal(tri(TriangleTag::T0)[i], tri(TriangleTag::T1)[j])) {
                    match_[i] = j;
                    claimed_[i] = claimed_[3 + j] = true;
                    break;
                }
            }
        }
    }

    /// Drop axis for orient2d work inside the plane of triangle t.
    Axis plane_axis(TriangleTag t)
    {
        auto& slot = axis_[static_cast<int>(t)];
        if (!slot) {
            const Tri& tr = tri(t);
            const RationalPoint3 a = Kernel::exact(tr[0]);
            slot = dominant_axis(cross(Kernel::exact(tr[1]) - a, Kernel::exact(tr[2]) - a));
        }
        return *slot;
    }

    std::optional<IntersectionPoint> locate_vertex(int vid)
    {
        if (claimed_[vid] || vertex_side(vid) != Sign::Zero) return std::nullopt;
        const TriangleTag other = vid < 3 ? TriangleTag::T1 : TriangleTag::T0;
        const Tri& t = tri(other);
        const Point& v = vertex(vid);
        const Axis axis = plane_axis(other);
        const Sign orientation = Kernel::orient2d(t[0], t[1], t[2], axis);
        int zeros = 0, zero_edge = -1;
        for (int k = 0; k < 3; ++k) {
            const Sign s = Kernel::orient2d(t[k], t[(k + 1) % 3], v, axis) * orientation;
            if (s == Sign::Negative) return std::nullopt;
            if (s == Sign::Zero) {
                ++zeros;
                zero_edge = k;
            }
        }
        const SimplexRef self = SimplexRef::vertex(vid < 3 ? TriangleTag::T0 : TriangleTag::T1, vid % 3);
        if (zeros == 0) return IntersectionPoint{IntersectionKind::VF, self, SimplexRef::none()};
        if (zeros == 1) return IntersectionPoint{IntersectionKind::VE, self, SimplexRef::edge(other, zero_edge)};
        throw InternalInvariantViolation("vertex on a vertex of the other triangle was not matched exactly");
    }

    static bool straddles(Sign a, Sign b) noexcept { return a != Sign::Zero && a == -b; }

    /// Four-sign proper crossing test in the projection of a common plane.
    static bool cross_in_plane(const Point& p0, const Point& p1, const Point& q0, const Point& q1, Axis axis)
    {
        if (!straddles(Kernel::orient2d(p0, p1, q0, axis), Kernel::orient2d(p0, p1, q1, axis))) return false;
        return straddles(Kernel::orient2d(q0, q1, p0, axis), Kernel::orient2d(q0, q1, p1, axis));
    }

    bool edges_cross(int i, int j)
    {
        const Tri& t0 = tri(TriangleTag::T0);
        const Tri& t1 = tri(TriangleTag::T1);
        const int i1 = (i + 1) % 3, j1 = (j + 1) % 3;
        const Point &p0 = t0[i], &p1 = t0[i1], &q0 = t1[j], &q1 = t1[j1];
        if (cache_.coplanar()) return cross_in_plane(p0, p1, q0, q1, plane_axis(TriangleTag::T0));

        const Sign a0 = cache_.o01[i], a1 = cache_.o01[i1];
        const Sign b0 = cache_.o10[j], b1 = cache_.o10[j1];
        const bool p_in_plane1 = a0 == Sign::Zero && a1 == Sign::Zero;
        const bool q_in_plane0 = b0 == Sign::Zero && b1 == Sign::Zero;
        // Both edges on the planes' common line: collinear, ends are vertex events.
        if (p_in_plane1 && q_in_plane0) return false;
        // An interior crossing lies on both planes, and an edge that does not
        // lie in the other plane can only meet it transversally.
        if (q_in_plane0) return straddles(a0, a1) && cross_in_plane(p0, p1, q0, q1, plane_axis(TriangleTag::T0));
        if (p_in_plane1) return straddles(b0, b1) && cross_in_plane(p0, p1, q0, q1, plane_axis(TriangleTag::T1));
        // Each edge pierces the other plane at one point of the planes' common
        // line; the two piercings coincide iff the edges are coplanar.
        if (!straddles(a0, a1) || !straddles(b0, b1)) return false;
        return Kernel::orient3d(p0, p1, q0, q1) == Sign::Zero;
    }

    bool edge_pierces_face(TriangleTag tag, int k)
    {
        const int k1 = (k + 1) % 3;
        const auto& sides = tag == TriangleTag::T0 ? cache_.o01 : cache_.o10;
        if (!straddles(sides[k], sides[k1])) return false;
        const Tri& t = tri(tag);
        const Tri& f = tri(tag == TriangleTag::T0 ? TriangleTag::T1 : TriangleTag::T0);
        // The line crosses the open face iff it passes on the same side of all three face edges.
        const Sign s0 = Kernel::orient3d(t[k], t[k1], f[0], f[1]);
        if (s0 == Sign::Zero) return false;
        if (Kernel::orient3d(t[k], t[k1], f[1], f[2]) != s0) return false;
        return Kernel::orient3d(t[k], t[k1], f[2], f[0]) == s0;
    }

    std::array<const Tri*, 2> tri_;
    OrientationCache cache_;
    std::array<std::optional<Axis>, 2> axis_;
    std::array<int, 3> match_{};
    std::array<bool, 6> claimed_{};
    bool matched_ = false;
};

/// Classifies without validating the input triangles.
template <class Kernel>
IntersectionResult classify_unchecked(const Triangle<typename Kernel::Point>& t0,
                                      const Triangle<typename Kernel::Point>& t1)
{
    return TriangleIntersector<Kernel>(t0, t1).run();
}

/// All intersections between t0 and t1. Throws DegenerateTriangle for
/// repeated or collinear vertices.
///
/// Points are listed in scan order: T0 vertices, T1 vertices, edge pairs in
/// lexicographic order, then edge-face crossings with T0 edges first.
/// Segments are sorted by (p0, p1) with p0 < p1.
template <class Kernel>
IntersectionResult classify(const Triangle<typename Kernel::Point>& t0, const Triangle<typename Kernel::Point>& t1)
{
    validate_triangle<Kernel>(t0);
    validate_triangle<Kernel>(t1);
    return classify_unchecked<Kernel>(t0, t1);
}

inline IntersectionResult classify(const Triangle<Point3d>& t0, const Triangle<Point3d>& t1)
{
    return classify<FloatKernel>(t0, t1);
}

inline IntersectionResult classify(const Triangle<RationalPoint3>& t0, const Triangle<RationalPoint3>& t1)
{
    return classify<RationalKernel>(t0, t1);
}

inline IntersectionResult classify(const Triangle<PointHandle>& t0, const Triangle<PointHandle>& t1)
{
    return classify<ImplicitKernel>(t0, t1);
}

} // namespace tritri

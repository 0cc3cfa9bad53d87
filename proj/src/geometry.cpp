#include "tritri/geometry.hpp"

#include <algorithm>
#include <set>

namespace tritri {

DecodedSimplex decode_simplex_ref(int id)
{
    if (id < 0 || id > 13) throw OutOfRange("simplex id out of range: " + std::to_string(id));
    if (id < 6) return {static_cast<TriangleTag>(id / 3), SimplexDim::Vertex, id % 3};
    if (id < 12) return {static_cast<TriangleTag>((id - 6) / 3), SimplexDim::Edge, (id - 6) % 3};
    return {static_cast<TriangleTag>(id - 12), SimplexDim::Face, 0};
}

SimplexRef encode_simplex_ref(const DecodedSimplex& s)
{
    const bool face = s.dim == SimplexDim::Face;
    if (s.local_index < 0 || s.local_index > (face ? 0 : 2)) throw OutOfRange("simplex local index out of range");
    switch (s.dim) {
    case SimplexDim::Vertex: return SimplexRef::vertex(s.tag, s.local_index);
    case SimplexDim::Edge: return SimplexRef::edge(s.tag, s.local_index);
    default: return SimplexRef::face(s.tag);
    }
}

std::string_view to_string(IntersectionKind k) noexcept
{
    switch (k) {
    case IntersectionKind::VV: return "VV";
    case IntersectionKind::VE: return "VE";
    case IntersectionKind::VF: return "VF";
    case IntersectionKind::EE: return "EE";
    default: return "EF";
    }
}

IntersectionKind parse_intersection_kind(std::string_view name)
{
    for (auto k : {IntersectionKind::VV, IntersectionKind::VE, IntersectionKind::VF, IntersectionKind::EE,
                   IntersectionKind::EF})
        if (to_string(k) == name) return k;
    throw MalformedDescriptor("unknown intersection kind: " + std::string(name));
}

namespace {

bool in(SimplexRef r, int lo, int hi) { return r.id() >= lo && r.id() <= hi; }

TriangleTag owner(SimplexRef r) { return decode_simplex_ref(r.id()).tag; }

} // namespace

void check_descriptor(const IntersectionPoint& p)
{
    bool ok = false;
    switch (p.kind) {
    case IntersectionKind::VV: ok = in(p.id0, 0, 2) && in(p.id1, 3, 5); break;
    case IntersectionKind::VE:
        ok = p.id0.is_vertex() && p.id1.is_edge() && owner(p.id0) != owner(p.id1);
        break;
    case IntersectionKind::VF: ok = p.id0.is_vertex() && p.id1.is_none(); break;
    case IntersectionKind::EE: ok = in(p.id0, 6, 8) && in(p.id1, 9, 11); break;
    case IntersectionKind::EF: ok = p.id0.is_edge() && p.id1.is_none(); break;
    }
    if (!ok)
        throw MalformedDescriptor("malformed descriptor (" + std::string(to_string(p.kind)) + ", "
                                  + std::to_string(p.id0.id()) + ", " + std::to_string(p.id1.id()) + ")");
}

void check_result(const IntersectionResult& r)
{
    auto fail = [](const std::string& what) { throw InternalInvariantViolation(what); };
    std::set<IntersectionPoint> seen;
    for (const auto& p : r.points) {
        try {
            check_descriptor(p);
        } catch (const MalformedDescriptor& e) {
            fail(e.what());
        }
        if (!seen.insert(p).second) fail("duplicate descriptor");
        if (r.coplanar && p.kind == IntersectionKind::EF) fail("EF point between coplanar triangles");
    }
    const auto n = static_cast<int>(r.points.size());
    std::set<IntersectionSegment> segs;
    for (const auto& s : r.segments) {
        if (s.p0 < 0 || s.p1 < 0 || s.p0 >= n || s.p1 >= n || s.p0 == s.p1) fail("invalid segment indices");
        if (!segs.insert({std::min(s.p0, s.p1), std::max(s.p0, s.p1)}).second) fail("duplicate segment");
    }
    if (!r.coplanar && (r.points.size() > 2 || r.segments.size() > 1)) fail("non-coplanar cardinality bound");
    if (r.coplanar && r.points.size() > 6) fail("coplanar cardinality bound");
}

} // namespace tritri

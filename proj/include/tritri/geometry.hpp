#pragma once

// Vocabulary shared by the classifier, the oracle and the I/O layers.

#include "tritri/errors.hpp"
#include "tritri/numeric.hpp"

#include <array>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tritri {

template <class P>
struct Triangle {
    std::array<P, 3> v;

    const P& operator[](int i) const noexcept { return v[static_cast<std::size_t>(i)]; }
};

enum class TriangleTag : std::uint8_t { T0 = 0, T1 = 1 };
enum class SimplexDim : std::uint8_t { Vertex = 0, Edge = 1, Face = 2 };

/// Flat id of a sub-simplex of either input triangle:
///   0-2   vertices of T0       3-5   vertices of T1
///   6-8   edges of T0          9-11  edges of T1
///   12    face of T0           13    face of T1
/// Edge k joins vertex k and vertex (k+1) mod 3. -1 marks an unused slot.
class SimplexRef {
public:
    static constexpr int kNone = -1;

    constexpr SimplexRef() = default;
    constexpr explicit SimplexRef(int id) : id_(id) {}

    static constexpr SimplexRef none() { return SimplexRef(kNone); }
    static constexpr SimplexRef vertex(TriangleTag t, int k) { return SimplexRef(3 * static_cast<int>(t) + k); }
    static constexpr SimplexRef edge(TriangleTag t, int k) { return SimplexRef(6 + 3 * static_cast<int>(t) + k); }
    static constexpr SimplexRef face(TriangleTag t) { return SimplexRef(12 + static_cast<int>(t)); }

    constexpr int id() const noexcept { return id_; }
    constexpr bool is_none() const noexcept { return id_ == kNone; }
    constexpr bool is_vertex() const noexcept { return id_ >= 0 && id_ <= 5; }
    constexpr bool is_edge() const noexcept { return id_ >= 6 && id_ <= 11; }
    constexpr bool is_face() const noexcept { return id_ == 12 || id_ == 13; }

    friend constexpr auto operator<=>(SimplexRef, SimplexRef) = default;

private:
    int id_ = kNone;
};

struct DecodedSimplex {
    TriangleTag tag;
    SimplexDim dim;
    int local_index;

    friend bool operator==(const DecodedSimplex&, const DecodedSimplex&) = default;
};

/// Throws OutOfRange for ids outside [0, 13]; -1 is a sentinel, not a simplex.
DecodedSimplex decode_simplex_ref(int id);
SimplexRef encode_simplex_ref(const DecodedSimplex& s);

enum class IntersectionKind : std::uint8_t {
    VV, ///< coincident vertices
    VE, ///< vertex inside an edge
    VF, ///< vertex inside a face
    EE, ///< edge crossing edge
    EF, ///< edge crossing face
};

std::string_view to_string(IntersectionKind k) noexcept;
/// Inverse of to_string; throws MalformedDescriptor for unknown names.
IntersectionKind parse_intersection_kind(std::string_view name);

/// (kind, id0, id1): the pair of simplices whose intersection is the point.
/// VV: vertex of T0, vertex of T1. VE: vertex, edge of the other triangle.
/// VF: vertex, -1. EE: edge of T0, edge of T1. EF: edge, -1.
struct IntersectionPoint {
    IntersectionKind kind;
    SimplexRef id0;
    SimplexRef id1;

    friend auto operator<=>(const IntersectionPoint&, const IntersectionPoint&) = default;
};

/// Throws MalformedDescriptor if the ids do not match the kind.
void check_descriptor(const IntersectionPoint& p);

/// Indices into IntersectionResult::points.
struct IntersectionSegment {
    int p0;
    int p1;

    friend auto operator<=>(const IntersectionSegment&, const IntersectionSegment&) = default;
};

struct IntersectionResult {
    std::vector<IntersectionPoint> points;
    std::vector<IntersectionSegment> segments;
    bool coplanar = false;
    std::map<std::string, std::string> metadata;

    bool empty() const noexcept { return points.empty(); }
};

/// Checks every structural invariant of a result: descriptor shapes, unique
/// descriptors, valid distinct segment indices and the cardinality bounds.
/// Throws InternalInvariantViolation on the first violation.
void check_result(const IntersectionResult& r);

/// Throws DegenerateTriangle when two vertices coincide or all three are
/// collinear. Both tests are exact.
template <class Kernel>
void validate_triangle(const Triangle<typename Kernel::Point>& t)
{
    if (Kernel::equal(t[0], t[1]) || Kernel::equal(t[1], t[2]) || Kernel::equal(t[2], t[0]))
        throw DegenerateTriangle(DegeneracyReason::RepeatedVertex);
    // Collinear iff the triangle projects to a segment on all three coordinate planes.
    for (Axis a : {Axis::X, Axis::Y, Axis::Z})
        if (Kernel::orient2d(t[0], t[1], t[2], a) != Sign::Zero) return;
    throw DegenerateTriangle(DegeneracyReason::Collinear);
}

} // namespace tritri

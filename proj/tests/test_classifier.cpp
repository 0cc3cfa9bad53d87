#include "support/catalog.hpp"

#include "tritri/classifier.hpp"
#include "tritri/errors.hpp"
#include "tritri/fuzz.hpp"
#include "tritri/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

using namespace tritri;

namespace {

using Tri = Triangle<Point3d>;

Tri tri(Point3d a, Point3d b, Point3d c) { return {{a, b, c}}; }

IntersectionPoint P(IntersectionKind k, int a, int b) { return {k, SimplexRef(a), SimplexRef(b)}; }

constexpr auto VV = IntersectionKind::VV;
constexpr auto VE = IntersectionKind::VE;
constexpr auto VF = IntersectionKind::VF;
constexpr auto EE = IntersectionKind::EE;
constexpr auto EF = IntersectionKind::EF;

/// Classifies with every backend and requires identical descriptor lists.
IntersectionResult classify_all(const Tri& t0, const Tri& t1)
{
    const IntersectionResult r = classify_with(Backend::Float64, {t0, t1});
    for (Backend b : {Backend::Rational, Backend::Implicit}) {
        const IntersectionResult other = classify_with(b, {t0, t1});
        REQUIRE(other.points == r.points);
        REQUIRE(other.segments == r.segments);
        REQUIRE(other.coplanar == r.coplanar);
    }
    return r;
}

OracleReport canonical(const IntersectionResult& r, const Tri& t0, const Tri& t1)
{
    return canonicalize(r, to_rational(t0), to_rational(t1));
}

std::string kinds_of(const IntersectionResult& r)
{
    std::vector<std::string> k;
    for (const auto& p : r.points) k.emplace_back(to_string(p.kind));
    std::ranges::sort(k);
    std::string out;
    for (const auto& s : k) out += (out.empty() ? "" : " ") + s;
    return out;
}

/// Swaps the roles of T0 and T1 in a descriptor.
IntersectionPoint relabel(const IntersectionPoint& p)
{
    auto swap_id = [](SimplexRef s) {
        if (s.is_none()) return s;
        const DecodedSimplex d = decode_simplex_ref(s.id());
        return encode_simplex_ref({d.tag == TriangleTag::T0 ? TriangleTag::T1 : TriangleTag::T0, d.dim, d.local_index});
    };
    IntersectionPoint q{p.kind, swap_id(p.id0), swap_id(p.id1)};
    if (p.kind == VV || p.kind == EE) std::swap(q.id0, q.id1);
    return q;
}

} // namespace

TEST_SUITE("classifier")
{
    TEST_CASE("disjoint triangles separated by a plane")
    {
        const auto r = classify_all(tri({0, 0, 0}, {1, 0, 0}, {0, 1, 0}), tri({10, 10, 10}, {11, 10, 10}, {10, 11, 10}));
        CHECK(r.empty());
        CHECK(r.segments.empty());
        CHECK_FALSE(r.coplanar);
        CHECK(r.metadata.at("coplanar") == "false");
    }

    TEST_CASE("single shared vertex")
    {
        const auto r = classify_all(tri({0, 0, 0}, {1, 0, 0}, {0, 1, 0}), tri({0, 0, 0}, {-1, 0, 0}, {0, -1, 0}));
        CHECK(r.points == std::vector{P(VV, 0, 3)});
        CHECK(r.segments.empty());
        CHECK(r.coplanar);
        CHECK(r.metadata.at("coplanar") == "true");
    }

    TEST_CASE("edge through the interior twice")
    {
        const Tri t0 = tri({0, 0, 0}, {4, 0, 0}, {0, 4, 0}), t1 = tri({1, 1, -1}, {1, 1, 2}, {3, 3, 2});
        const auto r = classify_all(t0, t1);
        CHECK(r.points == std::vector{P(EF, 9, -1), P(EF, 11, -1)});
        CHECK(r.segments == std::vector<IntersectionSegment>{{0, 1}});
        CHECK_FALSE(r.coplanar);
        const OracleReport c = canonical(r, t0, t1);
        const RationalPoint3 a{1, 1, 0}, b{mpq_class(5, 3), mpq_class(5, 3), 0};
        CHECK(c.points == std::set<RationalPoint3>{a, b});
        CHECK(c.segments == std::set{make_oracle_segment(a, b)});
    }

    TEST_CASE("early rejection")
    {
        const Sign p = Sign::Positive, n = Sign::Negative, z = Sign::Zero;
        CHECK(early_reject({{p, p, p}, {p, n, z}}));
        CHECK_FALSE(early_reject({{p, p, z}, {p, n, z}}));
        CHECK(early_reject({{p, n, p}, {p, p, p}}));
        CHECK(early_reject({{n, n, n}, {z, z, z}}));
        CHECK_FALSE(early_reject({{z, z, z}, {z, z, z}}));
    }

    TEST_CASE("orientation cache")
    {
        const Tri t0 = tri({0, 0, 0}, {4, 0, 0}, {0, 4, 0}), t1 = tri({1, 1, -1}, {1, 1, 2}, {3, 3, 2});
        TriangleIntersector<FloatKernel> ti(t0, t1);
        CHECK(ti.cache().o10 == std::array{Sign::Negative, Sign::Positive, Sign::Positive});
        CHECK_FALSE(ti.cache().coplanar());
        const Tri flat = tri({1, 1, 0}, {2, 1, 0}, {1, 2, 0});
        CHECK(TriangleIntersector<FloatKernel>(t0, flat).cache().coplanar());
    }

    TEST_CASE("coincident vertices")
    {
        const Tri a = tri({0, 0, 0}, {4, 0, 0}, {0, 4, 0});
        CHECK(TriangleIntersector<FloatKernel>(a, a).check_coincident_vertices()
              == std::vector{P(VV, 0, 3), P(VV, 1, 4), P(VV, 2, 5)});
        const Tri b = tri({4, 0, 0}, {0, 0, 0}, {1, -1, -3});
        CHECK(TriangleIntersector<FloatKernel>(a, b).check_coincident_vertices()
              == std::vector{P(VV, 0, 4), P(VV, 1, 3)});
        const Tri c = tri({1, 1, 1}, {2, 1, 1}, {1, 2, 2});
        CHECK(TriangleIntersector<FloatKernel>(a, c).check_coincident_vertices().empty());
    }

    TEST_CASE("vertex inside a simplex of the other triangle")
    {
        const Tri t0 = tri({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
        auto probe = [&](Point3d v) {
            const Tri t1 = tri(v, {v.x, v.y - 2, 3}, {v.x + 2, v.y - 1, 3});
            return TriangleIntersector<FloatKernel>(t0, t1).check_vertex_in_simplex();
        };
        CHECK(probe({0.25, 0.25, 0}) == std::vector{P(VF, 3, -1)});
        CHECK(probe({0.5, 0, 0}) == std::vector{P(VE, 3, 6)});
        CHECK(probe({0.5, 0, 1}).empty());
    }

    TEST_CASE("edge-edge crossings")
    {
        const Tri s0 = tri({0, 0, 0}, {4, 0, 0}, {2, 3, 0}), s1 = tri({0, 2, 0}, {4, 2, 0}, {2, -1, 0});
        const auto crossings = TriangleIntersector<FloatKernel>(s0, s1).check_edge_edge_crossings();
        CHECK(crossings
              == std::vector{P(EE, 6, 10), P(EE, 6, 11), P(EE, 7, 9), P(EE, 7, 10), P(EE, 8, 9), P(EE, 8, 11)});

        const Tri a = tri({0, 0, 0}, {2, 2, 0}, {0, 3, 0}), b = tri({0, 2, 0}, {2, 0, 0}, {3, 3, 0});
        const auto ab = TriangleIntersector<FloatKernel>(a, b).check_edge_edge_crossings();
        REQUIRE(std::ranges::find(ab, P(EE, 6, 9)) != ab.end());
        const auto r = classify_all(a, b);
        const auto idx = std::ranges::find(r.points, P(EE, 6, 9)) - r.points.begin();
        IntersectionResult single;
        single.points = {r.points[static_cast<std::size_t>(idx)]};
        CHECK(canonical(single, a, b).points == std::set<RationalPoint3>{{1, 1, 0}});

        CHECK(TriangleIntersector<FloatKernel>(tri({0, 0, 0}, {4, 0, 0}, {0, 0, 4}), tri({0, 1, 0}, {4, 1, 0}, {0, 1, 4}))
                  .check_edge_edge_crossings()
                  .empty());
    }

    TEST_CASE("edge through triangle")
    {
        const Tri t0 = tri({0, 0, 0}, {4, 0, 0}, {0, 4, 0});
        const auto pierce = TriangleIntersector<FloatKernel>(t0, tri({1, 1, -1}, {1, 1, 1}, {5, 5, 5}))
                                .check_edge_through_triangle();
        CHECK(std::ranges::find(pierce, P(EF, 9, -1)) != pierce.end());

        // Piercing exactly on a boundary edge is an edge-edge crossing.
        const auto boundary = classify_all(t0, tri({2, 0, -1}, {2, 0, 1}, {2, -3, 0}));
        CHECK(boundary.points == std::vector{P(EE, 6, 9)});

        // An endpoint on the plane is a vertex event.
        const auto endpoint = classify_all(t0, tri({1, 1, 0}, {1, 1, 2}, {2, 1, 3}));
        CHECK(endpoint.points == std::vector{P(VF, 3, -1)});
    }

    TEST_CASE("non-coplanar segment assembly")
    {
        const std::vector two{P(EF, 9, -1), P(EF, 11, -1)};
        CHECK(assemble_segments_non_coplanar(two) == std::vector<IntersectionSegment>{{0, 1}});
        CHECK(assemble_segments_non_coplanar(std::vector{P(VV, 0, 3)}).empty());
        CHECK(assemble_segments_non_coplanar(std::vector<IntersectionPoint>{}).empty());
        const std::vector three{P(EF, 9, -1), P(EF, 10, -1), P(EF, 11, -1)};
        CHECK_THROWS_AS(assemble_segments_non_coplanar(three), InternalInvariantViolation);
    }

    TEST_CASE("coplanar segment assembly")
    {
        const auto star = classify_all(tri({0, 0, 0}, {4, 0, 0}, {2, 3, 0}), tri({0, 2, 0}, {4, 2, 0}, {2, -1, 0}));
        CHECK(star.coplanar);
        CHECK(star.segments == std::vector<IntersectionSegment>{{0, 1}, {0, 3}, {1, 5}, {2, 3}, {2, 4}, {4, 5}});
        // The six segments close a single cycle.
        std::map<int, int> degree;
        for (const auto& s : star.segments) ++degree[s.p0], ++degree[s.p1];
        CHECK(degree.size() == 6);
        for (const auto& [p, d] : degree) CHECK(d == 2);

        const Tri a = tri({0, 0, 0}, {4, 0, 0}, {0, 4, 0});
        CHECK(classify_all(a, a).segments == std::vector<IntersectionSegment>{{0, 1}, {0, 2}, {1, 2}});
        CHECK(classify_all(a, tri({0, 0, 0}, {-1, -2, 0}, {-2, -1, 0})).segments.empty());
    }

    TEST_CASE("degenerate input is rejected")
    {
        const Tri good = tri({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
        CHECK_THROWS_AS(classify(good, tri({0, 0, 0}, {1, 1, 1}, {2, 2, 2})), DegenerateTriangle);
        CHECK_THROWS_AS(classify(tri({0, 0, 0}, {0, 0, 0}, {1, 0, 0}), good), DegenerateTriangle);
    }

    TEST_CASE("degenerate catalog")
    {
        const auto catalog = test::degenerate_catalog();
        CHECK(catalog.size() >= 40);
        for (const auto& c : catalog) {
            CAPTURE(c.name);
            for (bool swapped : {false, true}) {
                const Tri& t0 = swapped ? c.t1 : c.t0;
                const Tri& t1 = swapped ? c.t0 : c.t1;
                const IntersectionResult r = classify_all(t0, t1);
                CHECK_NOTHROW(check_result(r));
                CHECK(r.coplanar == c.coplanar);
                CHECK(r.points.size() == c.points);
                CHECK(r.segments.size() == c.segments);
                CHECK(kinds_of(r) == c.kinds);
                const auto cmp = compare(canonical(r, t0, t1), oracle_classify(t0, t1));
                CHECK_MESSAGE(cmp.match, cmp.describe());
            }
        }
    }

    TEST_CASE("swapping the triangles relabels the descriptors")
    {
        std::vector<TrianglePair> pairs;
        for (const auto& c : test::degenerate_catalog()) pairs.push_back({c.t0, c.t1});
        for (auto family : kAllFamilies)
            for (std::uint64_t i = 0; i < 200; ++i) pairs.push_back(generate_pair({family, 77, 200}, i));
        for (const auto& p : pairs) {
            const auto r = classify(p.t0, p.t1), s = classify(p.t1, p.t0);
            std::vector<IntersectionPoint> mapped;
            for (const auto& q : s.points) mapped.push_back(relabel(q));
            auto sorted = r.points;
            std::ranges::sort(sorted);
            std::ranges::sort(mapped);
            REQUIRE(sorted == mapped);
            REQUIRE(compare(canonical(r, p.t0, p.t1), canonical(s, p.t1, p.t0)).match);
        }
    }

    TEST_CASE("shared simplices")
    {
        const GeneratorSpec edges{GeneratorFamily::SharedEdge, 5, 300};
        for (std::uint64_t i = 0; i < edges.count; ++i) {
            const auto p = generate_pair(edges, i);
            const auto r = classify(p.t0, p.t1);
            const auto vv = std::ranges::count_if(r.points, [](const auto& q) { return q.kind == VV; });
            REQUIRE(vv >= 2);
            if (!r.coplanar && r.points.size() == 2) REQUIRE(r.segments.size() == 1);
        }
        const auto folded = classify(tri({0, 0, 0}, {4, 0, 0}, {0, 4, 0}), tri({4, 0, 0}, {0, 0, 0}, {2, 1, 5}));
        CHECK(folded.points.size() == 2);
        CHECK(folded.segments.size() == 1);
        const auto corner = classify(tri({0, 0, 0}, {4, 0, 0}, {0, 4, 0}), tri({0, 0, 0}, {-1, -1, 1}, {-2, 0, 3}));
        CHECK(corner.points == std::vector{P(VV, 0, 3)});
        CHECK(corner.segments.empty());
    }

    TEST_CASE("no two descriptors name the same point")
    {
        for (auto family : kAllFamilies)
            for (std::uint64_t i = 0; i < 300; ++i) {
                const auto p = generate_pair({family, 3, 300}, i);
                const auto r = classify(p.t0, p.t1);
                REQUIRE(canonical(r, p.t0, p.t1).points.size() == r.points.size());
            }
    }
}

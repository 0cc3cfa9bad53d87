#include "tritri/classifier.hpp"

namespace tritri {

std::vector<IntersectionSegment> assemble_segments_non_coplanar(std::span<const IntersectionPoint> points)
{
    if (points.size() > 2)
        throw InternalInvariantViolation("non-coplanar triangles produced more than two intersection points");
    if (points.size() == 2) return {{0, 1}};
    return {};
}

std::vector<IntersectionSegment> assemble_segments_coplanar(std::span<const IntersectionPoint> points)
{
    std::vector<IntersectionSegment> out;
    for (int e = 6; e <= 11; ++e) {
        std::array<int, 2> on_edge{};
        int count = 0;
        for (int i = 0; i < static_cast<int>(points.size()); ++i) {
            if (!lies_on_edge(points[static_cast<std::size_t>(i)], SimplexRef(e))) continue;
            if (count == 2) throw InternalInvariantViolation("more than two intersection points on one edge");
            on_edge[static_cast<std::size_t>(count++)] = i;
        }
        if (count == 2) out.push_back({on_edge[0], on_edge[1]});
    }
    std::ranges::sort(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace tritri

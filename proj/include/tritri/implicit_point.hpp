#pragma once

// Implicitly represented points: intersections kept as the input points that
// define them, never rounded. Predicates over them are exact.

#include "tritri/interval.hpp"
#include "tritri/numeric.hpp"

#include <memory>
#include <variant>

namespace tritri {

using ExplicitPoint3 = std::variant<Point3d, RationalPoint3>;

/// Intersection of line pq with the plane through a, b, c.
struct ImplicitPointLPI {
    ExplicitPoint3 p, q;
    ExplicitPoint3 a, b, c;
};

/// Intersection of the coplanar lines p0p1 and q0q1, constructed in the
/// coordinate plane obtained by dropping drop_axis.
struct ImplicitPointSSI {
    ExplicitPoint3 p0, p1;
    ExplicitPoint3 q0, q1;
    Axis drop_axis = Axis::Z;
};

/// Builds an SSI point, picking the drop axis from the lines' common normal.
/// Throws DegenerateConstruction if the lines are parallel or skew.
ImplicitPointSSI make_ssi(const ExplicitPoint3& p0, const ExplicitPoint3& p1, const ExplicitPoint3& q0,
                          const ExplicitPoint3& q1);

RationalPoint3 exact_coordinates(const ExplicitPoint3& p);
/// Throws DegenerateConstruction if the line is parallel to the plane.
RationalPoint3 exact_coordinates(const ImplicitPointLPI& p);
/// Throws DegenerateConstruction for parallel, skew or projection-degenerate lines.
RationalPoint3 exact_coordinates(const ImplicitPointSSI& p);

IntervalPoint3 enclose(const ExplicitPoint3& p);
IntervalPoint3 enclose(const ImplicitPointLPI& p);
IntervalPoint3 enclose(const ImplicitPointSSI& p);

/// A point in any of the three representations. Copies share one immutable
/// state holding the construction, an enclosing box and the exact coordinates,
/// so handles are cheap to pass around and safe to share across threads.
class PointHandle {
public:
    using Variant = std::variant<ExplicitPoint3, ImplicitPointLPI, ImplicitPointSSI>;

    PointHandle(const Point3d& p);
    PointHandle(RationalPoint3 p);
    /// Throws DegenerateConstruction when the construction is invalid.
    PointHandle(ImplicitPointLPI p);
    PointHandle(ImplicitPointSSI p);

    const Variant& variant() const noexcept { return state_->construction; }
    const IntervalPoint3& box() const noexcept { return state_->box; }
    const RationalPoint3& exact() const noexcept { return state_->exact; }

    bool is_implicit() const noexcept { return state_->construction.index() != 0; }
    /// The explicit float coordinates, or nullptr for any other variant.
    const Point3d* as_float() const noexcept;

private:
    struct State {
        Variant construction;
        IntervalPoint3 box;
        RationalPoint3 exact;
    };
    std::shared_ptr<const State> state_;
};

RationalPoint3 exact_coordinates(const PointHandle& p);

/// Exact equality of the represented points.
bool same_point(const PointHandle& a, const PointHandle& b);

Sign orient2d(const PointHandle& a, const PointHandle& b, const PointHandle& c, Axis drop);
Sign orient3d(const PointHandle& a, const PointHandle& b, const PointHandle& c, const PointHandle& d);

/// Re-expresses an explicit float point as an implicit construction whose
/// exact value is the same point. variant selects LPI or SSI and the axis
/// the construction runs along, so meshes get a mix of both.
PointHandle lift_to_implicit(const Point3d& p, unsigned variant);

} // namespace tritri

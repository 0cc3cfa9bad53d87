#include "tritri/implicit_point.hpp"

#include "tritri/errors.hpp"
#include "tritri/predicates.hpp"

namespace tritri {

namespace {

struct IntervalVec {
    Interval x, y, z;
};

IntervalVec sub(const IntervalPoint3& a, const IntervalPoint3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

IntervalVec cross(const IntervalVec& a, const IntervalVec& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Interval dot(const IntervalVec& a, const IntervalVec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

IntervalPoint3 along(const IntervalPoint3& p, const IntervalVec& d, Interval t)
{
    return {p.x + t * d.x, p.y + t * d.y, p.z + t * d.z};
}

Point3d with_coordinate(Point3d p, int axis, double value)
{
    (axis == 0 ? p.x : (axis == 1 ? p.y : p.z)) = value;
    return p;
}

} // namespace

RationalPoint3 exact_coordinates(const ExplicitPoint3& p)
{
    if (const auto* f = std::get_if<Point3d>(&p)) return to_rational(*f);
    return std::get<RationalPoint3>(p);
}

RationalPoint3 exact_coordinates(const ImplicitPointLPI& lpi)
{
    const RationalPoint3 p = exact_coordinates(lpi.p), q = exact_coordinates(lpi.q);
    const RationalPoint3 a = exact_coordinates(lpi.a), b = exact_coordinates(lpi.b), c = exact_coordinates(lpi.c);
    const RationalPoint3 n = cross(b - a, c - a);
    const RationalPoint3 dir = q - p;
    const mpq_class den = dot(n, dir);
    if (sgn(den) == 0) throw DegenerateConstruction("LPI: line is parallel to the plane or the plane is degenerate");
    const mpq_class t = dot(n, a - p) / den;
    return p + t * dir;
}

RationalPoint3 exact_coordinates(const ImplicitPointSSI& ssi)
{
    const RationalPoint3 p0 = exact_coordinates(ssi.p0), p1 = exact_coordinates(ssi.p1);
    const RationalPoint3 q0 = exact_coordinates(ssi.q0), q1 = exact_coordinates(ssi.q1);
    if (orient3d_rational(p0, p1, q0, q1) != Sign::Zero) throw DegenerateConstruction("SSI: lines are skew");
    const RationalPoint2 a0 = project(p0, ssi.drop_axis), a1 = project(p1, ssi.drop_axis);
    const RationalPoint2 b0 = project(q0, ssi.drop_axis), b1 = project(q1, ssi.drop_axis);
    const mpq_class dx0 = a1.x - a0.x, dy0 = a1.y - a0.y;
    const mpq_class dx1 = b1.x - b0.x, dy1 = b1.y - b0.y;
    const mpq_class den = dx0 * dy1 - dy0 * dx1;
    if (sgn(den) == 0) throw DegenerateConstruction("SSI: lines are parallel in the construction plane");
    const mpq_class t = ((b0.x - a0.x) * dy1 - (b0.y - a0.y) * dx1) / den;
    return p0 + t * (p1 - p0);
}

ImplicitPointSSI make_ssi(const ExplicitPoint3& p0, const ExplicitPoint3& p1, const ExplicitPoint3& q0,
                          const ExplicitPoint3& q1)
{
    const RationalPoint3 a0 = exact_coordinates(p0), a1 = exact_coordinates(p1);
    const RationalPoint3 b0 = exact_coordinates(q0), b1 = exact_coordinates(q1);
    const RationalPoint3 n = cross(a1 - a0, b1 - b0);
    if (sgn(n.x) == 0 && sgn(n.y) == 0 && sgn(n.z) == 0) throw DegenerateConstruction("SSI: lines are parallel");
    if (sgn(dot(n, b0 - a0)) != 0) throw DegenerateConstruction("SSI: lines are skew");
    return {p0, p1, q0, q1, dominant_axis(n)};
}

IntervalPoint3 enclose(const ExplicitPoint3& p)
{
    if (const auto* f = std::get_if<Point3d>(&p)) return enclose(*f);
    return enclose(std::get<RationalPoint3>(p));
}

IntervalPoint3 enclose(const ImplicitPointLPI& lpi)
{
    const IntervalPoint3 p = enclose(lpi.p), q = enclose(lpi.q);
    const IntervalPoint3 a = enclose(lpi.a), b = enclose(lpi.b), c = enclose(lpi.c);
    const IntervalVec n = cross(sub(b, a), sub(c, a));
    const IntervalVec dir = sub(q, p);
    const Interval t = dot(n, sub(a, p)) / dot(n, dir);
    return along(p, dir, t);
}

IntervalPoint3 enclose(const ImplicitPointSSI& ssi)
{
    const IntervalPoint3 p0 = enclose(ssi.p0), p1 = enclose(ssi.p1);
    const IntervalPoint3 q0 = enclose(ssi.q0), q1 = enclose(ssi.q1);
    const auto [u, v] = projection_axes(ssi.drop_axis);
    const Interval dx0 = p1[u] - p0[u], dy0 = p1[v] - p0[v];
    const Interval dx1 = q1[u] - q0[u], dy1 = q1[v] - q0[v];
    const Interval den = dx0 * dy1 - dy0 * dx1;
    const Interval t = ((q0[u] - p0[u]) * dy1 - (q0[v] - p0[v]) * dx1) / den;
    return along(p0, sub(p1, p0), t);
}

PointHandle::PointHandle(const Point3d& p)
    : state_(std::make_shared<const State>(State{ExplicitPoint3{p}, tritri::enclose(p), to_rational(p)}))
{
}

PointHandle::PointHandle(RationalPoint3 p)
{
    IntervalPoint3 box = tritri::enclose(p);
    RationalPoint3 exact = p;
    state_ = std::make_shared<const State>(State{ExplicitPoint3{std::move(p)}, box, std::move(exact)});
}

PointHandle::PointHandle(ImplicitPointLPI p)
{
    RationalPoint3 exact = exact_coordinates(p);
    const IntervalPoint3 box = tritri::enclose(p);
    state_ = std::make_shared<const State>(State{std::move(p), box, std::move(exact)});
}

PointHandle::PointHandle(ImplicitPointSSI p)
{
    RationalPoint3 exact = exact_coordinates(p);
    const IntervalPoint3 box = tritri::enclose(p);
    state_ = std::make_shared<const State>(State{std::move(p), box, std::move(exact)});
}

const Point3d* PointHandle::as_float() const noexcept
{
    if (const auto* e = std::get_if<ExplicitPoint3>(&state_->construction)) return std::get_if<Point3d>(e);
    return nullptr;
}

RationalPoint3 exact_coordinates(const PointHandle& p) { return p.exact(); }

bool same_point(const PointHandle& a, const PointHandle& b)
{
    if (a.box().disjoint(b.box())) return false;
    if (const Point3d *fa = a.as_float(), *fb = b.as_float(); fa && fb) return *fa == *fb;
    return a.exact() == b.exact();
}

Sign orient2d(const PointHandle& a, const PointHandle& b, const PointHandle& c, Axis drop)
{
    const Point3d *fa = a.as_float(), *fb = b.as_float(), *fc = c.as_float();
    if (fa && fb && fc) return orient2d(*fa, *fb, *fc, drop);
    auto& counters = predicate_counters();
    if (!force_exact()) {
        if (auto s = orient2d_interval(a.box(), b.box(), c.box(), drop)) {
            ++counters.orient2d_filtered;
            return *s;
        }
    }
    ++counters.orient2d_exact;
    return orient2d_rational(project(a.exact(), drop), project(b.exact(), drop), project(c.exact(), drop));
}

Sign orient3d(const PointHandle& a, const PointHandle& b, const PointHandle& c, const PointHandle& d)
{
    const Point3d *fa = a.as_float(), *fb = b.as_float(), *fc = c.as_float(), *fd = d.as_float();
    if (fa && fb && fc && fd) return orient3d(*fa, *fb, *fc, *fd);
    auto& counters = predicate_counters();
    if (!force_exact()) {
        if (auto s = orient3d_interval(a.box(), b.box(), c.box(), d.box())) {
            ++counters.orient3d_filtered;
            return *s;
        }
    }
    ++counters.orient3d_exact;
    return orient3d_rational(a.exact(), b.exact(), c.exact(), d.exact());
}

PointHandle lift_to_implicit(const Point3d& p, unsigned variant)
{
    if (!is_finite(p)) throw InvalidCoordinate("non-finite coordinate");
    const int r = static_cast<int>(variant % 3);
    const int u = (r + 1) % 3, v = (r + 2) % 3;
    const Point3d origin_on_plane = with_coordinate(Point3d{}, r, p[r]);
    if ((variant / 3) % 2 == 0) {
        // Line parallel to axis r through p, cut by the plane coordinate_r = p[r].
        ImplicitPointLPI lpi{with_coordinate(p, r, 0.0), with_coordinate(p, r, 1.0), origin_on_plane,
                             with_coordinate(origin_on_plane, u, 1.0), with_coordinate(origin_on_plane, v, 1.0)};
        return PointHandle(std::move(lpi));
    }
    // Two lines inside the plane coordinate_r = p[r], parallel to axes u and v.
    ImplicitPointSSI ssi{with_coordinate(p, u, 0.0), with_coordinate(p, u, 1.0), with_coordinate(p, v, 0.0),
                         with_coordinate(p, v, 1.0), static_cast<Axis>(r)};
    return PointHandle(std::move(ssi));
}

} // namespace tritri

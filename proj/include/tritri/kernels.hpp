#pragma once

// Predicate backends the classifier is instantiated with. A kernel names its
// point type and provides exact orient2d/orient3d, exact point equality and
// the exact rational embedding of its points.

#include "tritri/implicit_point.hpp"
#include "tritri/predicates.hpp"

namespace tritri {

struct FloatKernel {
    using Point = Point3d;
    static constexpr Backend backend = Backend::Float64;

    static Sign orient3d(const Point& a, const Point& b, const Point& c, const Point& d)
    {
        return tritri::orient3d(a, b, c, d);
    }
    static Sign orient2d(const Point& a, const Point& b, const Point& c, Axis drop)
    {
        return tritri::orient2d(a, b, c, drop);
    }
    static bool equal(const Point& a, const Point& b) { return a == b; }
    static RationalPoint3 exact(const Point& p) { return to_rational(p); }
};

struct RationalKernel {
    using Point = RationalPoint3;
    static constexpr Backend backend = Backend::Rational;

    static Sign orient3d(const Point& a, const Point& b, const Point& c, const Point& d)
    {
        return tritri::orient3d(a, b, c, d);
    }
    static Sign orient2d(const Point& a, const Point& b, const Point& c, Axis drop)
    {
        return tritri::orient2d(a, b, c, drop);
    }
    static bool equal(const Point& a, const Point& b) { return a == b; }
    static const RationalPoint3& exact(const Point& p) { return p; }
};

struct ImplicitKernel {
    using Point = PointHandle;
    static constexpr Backend backend = Backend::Implicit;

    static Sign orient3d(const Point& a, const Point& b, const Point& c, const Point& d)
    {
        return tritri::orient3d(a, b, c, d);
    }
    static Sign orient2d(const Point& a, const Point& b, const Point& c, Axis drop)
    {
        return tritri::orient2d(a, b, c, drop);
    }
    static bool equal(const Point& a, const Point& b) { return same_point(a, b); }
    static const RationalPoint3& exact(const Point& p) { return p.exact(); }
};

} // namespace tritri

#pragma once

// Inputs that sit on or within a few ulps of an orientation degeneracy, at
// ordinary, tiny (subnormal) and huge scales.

#include "tritri/numeric.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace tritri::test {

class AdversarialSource {
public:
    explicit AdversarialSource(std::uint64_t seed) : rng_(seed) {}

    std::array<Point2d, 3> next2d()
    {
        const std::uint64_t mode = rng_() % 5;
        std::array<Point2d, 3> p;
        if (mode == 0) {
            // Exactly collinear on a dyadic grid.
            const Point2d a{grid(), grid()}, d{grid_small(), grid_small()};
            const double s = static_cast<double>(static_cast<int>(rng_() % 9) - 4), t = s + 1 + rng_() % 3;
            p = {a, {a.x + s * d.x, a.y + s * d.y}, {a.x + t * d.x, a.y + t * d.y}};
        } else if (mode == 1) {
            // Near-collinear: midpoint of a random segment rounded to floats.
            const Point2d a{unit(), unit()}, b{unit(), unit()};
            p = {a, b, {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}};
        } else {
            // Collinear in [1, 2) then nudged by a few ulps.
            const Point2d a{1 + grid_unit(), 1 + grid_unit()}, b{1 + grid_unit(), 1 + grid_unit()};
            p = {a, b, {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}};
            nudge(p[rng_() % 3].x);
            if (rng_() % 2) nudge(p[rng_() % 3].y);
        }
        rescale(p.data(), 3);
        return p;
    }

    std::array<Point3d, 4> next3d()
    {
        const std::uint64_t mode = rng_() % 5;
        std::array<Point3d, 4> p;
        if (mode == 0) {
            // Exactly coplanar on a dyadic grid.
            const Point3d a{grid(), grid(), grid()};
            const Point3d u{grid_small(), grid_small(), grid_small()}, v{grid_small(), grid_small(), grid_small()};
            auto at = [&](double s, double t) {
                return Point3d{a.x + s * u.x + t * v.x, a.y + s * u.y + t * v.y, a.z + s * u.z + t * v.z};
            };
            p = {a, at(small_int(), small_int()), at(small_int(), small_int()), at(small_int(), small_int())};
        } else if (mode == 1) {
            // Near-coplanar: the centroid of three random points.
            const Point3d a{unit(), unit(), unit()}, b{unit(), unit(), unit()}, c{unit(), unit(), unit()};
            p = {a, b, c, {(a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3, (a.z + b.z + c.z) / 3}};
        } else {
            // Coplanar in [1, 2) then nudged by a few ulps.
            const Point3d a{1 + grid_unit(), 1 + grid_unit(), 1 + grid_unit()};
            const Point3d b{1 + grid_unit(), 1 + grid_unit(), 1 + grid_unit()};
            const Point3d c{1 + grid_unit(), 1 + grid_unit(), 1 + grid_unit()};
            p = {a, b, c, {0.5 * (a.x + b.x), 0.5 * (a.y + b.y), 0.5 * (a.z + b.z)}};
            if (rng_() % 2) p[3] = {0.5 * (b.x + c.x), 0.5 * (b.y + c.y), 0.5 * (b.z + c.z)};
            nudge(p[rng_() % 4].x);
            if (rng_() % 2) nudge(p[rng_() % 4].y);
            if (rng_() % 2) nudge(p[rng_() % 4].z);
        }
        rescale(p.data(), 4);
        return p;
    }

private:
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1p-53 * 2 - 1; }
    double grid() { return std::ldexp(static_cast<double>(static_cast<std::int64_t>(rng_() % 2001) - 1000), -8); }
    double grid_small() { return std::ldexp(static_cast<double>(static_cast<std::int64_t>(rng_() % 65) - 32), -4); }
    double grid_unit() { return static_cast<double>(rng_() % 16) / 16; }
    double small_int() { return static_cast<double>(static_cast<int>(rng_() % 9) - 4); }

    void nudge(double& v)
    {
        const int steps = static_cast<int>(rng_() % 5) - 2;
        const double toward = steps > 0 ? INFINITY : -INFINITY;
        for (int i = 0; i < std::abs(steps); ++i) v = std::nextafter(v, toward);
    }

    // Scales by a power of two into the subnormal range, the tiny normal
    // range or the huge range. Scaling can round subnormals; the points are
    // whatever doubles result, and the reference sees the same values.
    template <class P>
    void rescale(P* p, int n)
    {
        const std::uint64_t choice = rng_() % 6;
        int e = 0;
        if (choice == 0) e = -1070 + static_cast<int>(rng_() % 20);
        else if (choice == 1) e = -1000 + static_cast<int>(rng_() % 60);
        else if (choice == 2) e = 900 + static_cast<int>(rng_() % 100);
        else return;
        for (int i = 0; i < n; ++i) {
            p[i].x = std::ldexp(p[i].x, e);
            p[i].y = std::ldexp(p[i].y, e);
            if constexpr (requires { p[i].z; }) p[i].z = std::ldexp(p[i].z, e);
        }
    }

    std::mt19937_64 rng_;
};

} // namespace tritri::test

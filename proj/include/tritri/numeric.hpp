#pragma once

// Scalar and point types shared by every backend.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string_view>

namespace tritri {

enum class Sign : std::int8_t { Negative = -1, Zero = 0, Positive = 1 };

constexpr Sign operator-(Sign s) noexcept { return static_cast<Sign>(-static_cast<int>(s)); }
constexpr Sign operator*(Sign a, Sign b) noexcept
{
    return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

template <class T>
constexpr Sign sign_of(const T& v) noexcept
{
    return v > 0 ? Sign::Positive : (v < 0 ? Sign::Negative : Sign::Zero);
}

inline Sign sign_of(const mpq_class& v) noexcept { return sign_of(sgn(v)); }
inline Sign sign_of(const mpz_class& v) noexcept { return sign_of(sgn(v)); }

std::string_view to_string(Sign s) noexcept;

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

/// Numeric representation a classifier run is configured with.
enum class Backend : std::uint8_t { Float64, Rational, Implicit };

std::string_view to_string(Backend b) noexcept;

struct Point2d {
    double x = 0, y = 0;
};

struct Point3d {
    double x = 0, y = 0, z = 0;

    double operator[](int i) const noexcept { return i == 0 ? x : (i == 1 ? y : z); }
    friend bool operator==(const Point3d&, const Point3d&) = default;
};

struct RationalPoint2 {
    mpq_class x, y;
};

struct RationalPoint3 {
    mpq_class x, y, z;

    const mpq_class& operator[](int i) const noexcept { return i == 0 ? x : (i == 1 ? y : z); }
    friend bool operator==(const RationalPoint3& a, const RationalPoint3& b)
    {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

/// Lexicographic order, used to keep exact point sets canonical.
bool operator<(const RationalPoint3& a, const RationalPoint3& b);

/// The exact rational value of a finite double. Throws InvalidCoordinate otherwise.
mpq_class to_rational(double v);
RationalPoint3 to_rational(const Point3d& p);

bool is_finite(const Point3d& p) noexcept;

/// Drops one coordinate while keeping the cyclic order of the other two:
/// X -> (y, z), Y -> (z, x), Z -> (x, y). With this choice the projected
/// orientation of a triangle has the sign of its normal's dropped component.
constexpr std::array<int, 2> projection_axes(Axis drop) noexcept
{
    switch (drop) {
    case Axis::X: return {1, 2};
    case Axis::Y: return {2, 0};
    default: return {0, 1};
    }
}

inline Point2d project(const Point3d& p, Axis drop) noexcept
{
    const auto [u, v] = projection_axes(drop);
    return {p[u], p[v]};
}

inline RationalPoint2 project(const RationalPoint3& p, Axis drop)
{
    const auto [u, v] = projection_axes(drop);
    return {p[u], p[v]};
}

// Rational vector helpers.
RationalPoint3 operator-(const RationalPoint3& a, const RationalPoint3& b);
RationalPoint3 operator+(const RationalPoint3& a, const RationalPoint3& b);
RationalPoint3 operator*(const mpq_class& s, const RationalPoint3& a);
RationalPoint3 cross(const RationalPoint3& a, const RationalPoint3& b);
mpq_class dot(const RationalPoint3& a, const RationalPoint3& b);

/// Axis of the largest-magnitude component, ties resolved toward X, then Y.
Axis dominant_axis(const RationalPoint3& normal);

} // namespace tritri

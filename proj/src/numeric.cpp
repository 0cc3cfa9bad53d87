#include "tritri/numeric.hpp"

#include "tritri/errors.hpp"

#include <cmath>

namespace tritri {

std::string_view to_string(Sign s) noexcept
{
    switch (s) {
    case Sign::Negative: return "NEGATIVE";
    case Sign::Zero: return "ZERO";
    default: return "POSITIVE";
    }
}

std::string_view to_string(Backend b) noexcept
{
    switch (b) {
    case Backend::Float64: return "float";
    case Backend::Rational: return "rational";
    default: return "implicit";
    }
}

bool operator<(const RationalPoint3& a, const RationalPoint3& b)
{
    if (int c = cmp(a.x, b.x); c != 0) return c < 0;
    if (int c = cmp(a.y, b.y); c != 0) return c < 0;
    return cmp(a.z, b.z) < 0;
}

mpq_class to_rational(double v)
{
    if (!std::isfinite(v)) throw InvalidCoordinate("non-finite coordinate");
    // mpq_set_d is exact for finite doubles.
    return mpq_class(v);
}

RationalPoint3 to_rational(const Point3d& p) { return {to_rational(p.x), to_rational(p.y), to_rational(p.z)}; }

bool is_finite(const Point3d& p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

RationalPoint3 operator-(const RationalPoint3& a, const RationalPoint3& b)
{
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

RationalPoint3 operator+(const RationalPoint3& a, const RationalPoint3& b)
{
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}

RationalPoint3 operator*(const mpq_class& s, const RationalPoint3& a) { return {s * a.x, s * a.y, s * a.z}; }

RationalPoint3 cross(const RationalPoint3& a, const RationalPoint3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

mpq_class dot(const RationalPoint3& a, const RationalPoint3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Axis dominant_axis(const RationalPoint3& n)
{
    const mpq_class ax = abs(n.x), ay = abs(n.y), az = abs(n.z);
    if (ax >= ay && ax >= az) return Axis::X;
    if (ay >= az) return Axis::Y;
    return Axis::Z;
}

} // namespace tritri

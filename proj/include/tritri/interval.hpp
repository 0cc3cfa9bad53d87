#pragma once

#include "tritri/numeric.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace tritri {

/// Closed interval with outward rounding: every operation widens its result
/// by one ulp on each side, so the exact value always stays enclosed.
struct Interval {
    double lo = 0, hi = 0;

    static Interval point(double v) noexcept { return {v, v}; }
    static Interval whole() noexcept
    {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
    static Interval enclose(const mpq_class& q);

    /// Certified sign, or nullopt if the interval straddles or touches zero.
    std::optional<Sign> certain_sign() const noexcept
    {
        if (lo > 0) return Sign::Positive;
        if (hi < 0) return Sign::Negative;
        return std::nullopt;
    }
};

namespace detail {
inline double down(double v) noexcept { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
inline double up(double v) noexcept { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
} // namespace detail

inline Interval operator+(Interval a, Interval b) noexcept
{
    return {detail::down(a.lo + b.lo), detail::up(a.hi + b.hi)};
}

inline Interval operator-(Interval a, Interval b) noexcept
{
    return {detail::down(a.lo - b.hi), detail::up(a.hi - b.lo)};
}

Interval operator*(Interval a, Interval b) noexcept;
Interval operator/(Interval a, Interval b) noexcept;

struct IntervalPoint3 {
    Interval x, y, z;

    const Interval& operator[](int i) const noexcept { return i == 0 ? x : (i == 1 ? y : z); }
    bool disjoint(const IntervalPoint3& o) const noexcept;
};

IntervalPoint3 enclose(const Point3d& p) noexcept;
IntervalPoint3 enclose(const RationalPoint3& p);

std::optional<Sign> orient2d_interval(const IntervalPoint3& a, const IntervalPoint3& b, const IntervalPoint3& c,
                                      Axis drop) noexcept;
std::optional<Sign> orient3d_interval(const IntervalPoint3& a, const IntervalPoint3& b, const IntervalPoint3& c,
                                      const IntervalPoint3& d) noexcept;

} // namespace tritri

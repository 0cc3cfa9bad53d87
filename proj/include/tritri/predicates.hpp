#pragma once

// Orientation predicates with exact signs.
//
// Convention, shared by every overload:
//   orient2d(a, b, c)    = sign det | b-a, c-a |, POSITIVE iff c is left of a->b.
//   orient3d(a, b, c, d) = sign det | b-a, c-a, d-a |, POSITIVE iff (a, b, c)
//                          appears counter-clockwise when seen from d.
//
// Float inputs go through a forward-error filter first and fall back to exact
// arithmetic only when the filter cannot certify the sign. Rational inputs
// use an interval filter before the rational determinant.

#include "tritri/numeric.hpp"

#include <cstdint>

namespace tritri {

/// Per-thread predicate call counters. Filtered means the fast path certified
/// the sign; exact means the exact fallback ran.
struct PredicateCounters {
    std::uint64_t orient2d_filtered = 0;
    std::uint64_t orient2d_exact = 0;
    std::uint64_t orient3d_filtered = 0;
    std::uint64_t orient3d_exact = 0;

    std::uint64_t orient2d_total() const noexcept { return orient2d_filtered + orient2d_exact; }
    std::uint64_t orient3d_total() const noexcept { return orient3d_filtered + orient3d_exact; }

    PredicateCounters& operator+=(const PredicateCounters& o) noexcept
    {
        orient2d_filtered += o.orient2d_filtered;
        orient2d_exact += o.orient2d_exact;
        orient3d_filtered += o.orient3d_filtered;
        orient3d_exact += o.orient3d_exact;
        return *this;
    }
};

PredicateCounters& predicate_counters() noexcept;
void reset_predicate_counters() noexcept;

/// When set, every predicate skips its filter. Initialised from the
/// TRITRI_FORCE_EXACT environment variable ("1" enables it).
bool force_exact() noexcept;
void set_force_exact(bool on) noexcept;

// Float inputs.
Sign orient2d(const Point2d& a, const Point2d& b, const Point2d& c);
Sign orient3d(const Point3d& a, const Point3d& b, const Point3d& c, const Point3d& d);
Sign orient2d(const Point3d& a, const Point3d& b, const Point3d& c, Axis drop);

/// Exact evaluation of the float determinants, bypassing the filter.
Sign orient2d_exact(const Point2d& a, const Point2d& b, const Point2d& c);
Sign orient3d_exact(const Point3d& a, const Point3d& b, const Point3d& c, const Point3d& d);

// Rational inputs.
Sign orient2d(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c);
Sign orient3d(const RationalPoint3& a, const RationalPoint3& b, const RationalPoint3& c, const RationalPoint3& d);
Sign orient2d(const RationalPoint3& a, const RationalPoint3& b, const RationalPoint3& c, Axis drop);

/// Plain rational determinants with no filter and no counting.
Sign orient2d_rational(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c);
Sign orient3d_rational(const RationalPoint3& a, const RationalPoint3& b, const RationalPoint3& c,
                       const RationalPoint3& d);

} // namespace tritri

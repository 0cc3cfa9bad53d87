#pragma once

// Orientation signs from homogeneous determinants over mpq, computed by
// fraction-exact Gaussian elimination. Independent of the library's
// predicate code paths.

#include "tritri/numeric.hpp"

#include <gmpxx.h>

#include <array>
#include <utility>

namespace tritri::test {

template <std::size_t N>
int determinant_sign(std::array<std::array<mpq_class, N>, N> m)
{
    int sign = 1;
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        while (pivot < N && m[pivot][col] == 0) ++pivot;
        if (pivot == N) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            sign = -sign;
        }
        if (m[col][col] < 0) sign = -sign;
        for (std::size_t r = col + 1; r < N; ++r) {
            if (m[r][col] == 0) continue;
            const mpq_class f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < N; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return sign;
}

/// Positive when c lies left of the directed line a -> b.
inline int reference_orient2d(const Point2d& a, const Point2d& b, const Point2d& c)
{
    std::array<std::array<mpq_class, 3>, 3> m{{{mpq_class(a.x), mpq_class(a.y), 1},
                                               {mpq_class(b.x), mpq_class(b.y), 1},
                                               {mpq_class(c.x), mpq_class(c.y), 1}}};
    return determinant_sign(m);
}

/// Positive when a, b, c appear counter-clockwise seen from d.
inline int reference_orient3d(const Point3d& a, const Point3d& b, const Point3d& c, const Point3d& d)
{
    std::array<std::array<mpq_class, 4>, 4> m{{{mpq_class(a.x), mpq_class(a.y), mpq_class(a.z), 1},
                                               {mpq_class(b.x), mpq_class(b.y), mpq_class(b.z), 1},
                                               {mpq_class(c.x), mpq_class(c.y), mpq_class(c.z), 1},
                                               {mpq_class(d.x), mpq_class(d.y), mpq_class(d.z), 1}}};
    return -determinant_sign(m);
}

inline int reference_orient2d(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c)
{
    std::array<std::array<mpq_class, 3>, 3> m{{{a.x, a.y, 1}, {b.x, b.y, 1}, {c.x, c.y, 1}}};
    return determinant_sign(m);
}

inline int reference_orient3d(const RationalPoint3& a, const RationalPoint3& b, const RationalPoint3& c,
                              const RationalPoint3& d)
{
    std::array<std::array<mpq_class, 4>, 4> m{
        {{a.x, a.y, a.z, 1}, {b.x, b.y, b.z, 1}, {c.x, c.y, c.z, 1}, {d.x, d.y, d.z, 1}}};
    return -determinant_sign(m);
}

} // namespace tritri::test

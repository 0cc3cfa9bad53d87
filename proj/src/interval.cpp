#include "tritri/interval.hpp"

#include <algorithm>

namespace tritri {

Interval Interval::enclose(const mpq_class& q)
{
    // mpq_get_d truncates; one ulp either side always covers the exact value.
    const double d = q.get_d();
    const mpz_srcptr num = q.get_num_mpz_t();
    const mpz_srcptr den = q.get_den_mpz_t();
    const bool dyadic = mpz_popcount(den) == 1 && mpz_sizeinbase(den, 2) <= 1000;
    if (dyadic && mpz_sizeinbase(num, 2) <= 53 && std::isfinite(d)) return point(d);
    return {detail::down(d), detail::up(d)};
}

Interval operator*(Interval a, Interval b) noexcept
{
    const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    for (double v : p)
        if (std::isnan(v)) return Interval::whole();
    const auto [mn, mx] = std::minmax({p[0], p[1], p[2], p[3]});
    return {detail::down(mn), detail::up(mx)};
}

Interval operator/(Interval a, Interval b) noexcept
{
    if (b.lo <= 0 && b.hi >= 0) return Interval::whole();
    const double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    for (double v : p)
        if (std::isnan(v)) return Interval::whole();
    const auto [mn, mx] = std::minmax({p[0], p[1], p[2], p[3]});
    return {detail::down(mn), detail::up(mx)};
}

bool IntervalPoint3::disjoint(const IntervalPoint3& o) const noexcept
{
    for (int i = 0; i < 3; ++i) {
        const Interval& a = (*this)[i];
        const Interval& b = o[i];
        if (a.hi < b.lo || b.hi < a.lo) return true;
    }
    return false;
}

IntervalPoint3 enclose(const Point3d& p) noexcept
{
    return {Interval::point(p.x), Interval::point(p.y), Interval::point(p.z)};
}

IntervalPoint3 enclose(const RationalPoint3& p)
{
    return {Interval::enclose(p.x), Interval::enclose(p.y), Interval::enclose(p.z)};
}

std::optional<Sign> orient2d_interval(const IntervalPoint3& a, const IntervalPoint3& b, const IntervalPoint3& c,
                                      Axis drop) noexcept
{
    const auto [u, v] = projection_axes(drop);
    const Interval bx = b[u] - a[u], by = b[v] - a[v];
    const Interval cx = c[u] - a[u], cy = c[v] - a[v];
    return (bx * cy - by * cx).certain_sign();
}

std::optional<Sign> orient3d_interval(const IntervalPoint3& a, const IntervalPoint3& b, const IntervalPoint3& c,
                                      const IntervalPoint3& d) noexcept
{
    const Interval bx = b.x - a.x, by = b.y - a.y, bz = b.z - a.z;
    const Interval cx = c.x - a.x, cy = c.y - a.y, cz = c.z - a.z;
    const Interval dx = d.x - a.x, dy = d.y - a.y, dz = d.z - a.z;
    const Interval det = bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
    return det.certain_sign();
}

} // namespace tritri

#include "tritri/predicates.hpp"

#include "tritri/errors.hpp"
#include "tritri/interval.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace tritri {

namespace {

thread_local PredicateCounters tl_counters;

std::atomic<bool>& force_exact_flag() noexcept
{
    static std::atomic<bool> flag = [] {
        const char* env = std::getenv("TRITRI_FORCE_EXACT");
        return env != nullptr && std::strcmp(env, "1") == 0;
    }();
    return flag;
}

constexpr double kEpsilon = 0x1p-53;
constexpr double kOrient2dBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kOrient3dBound = (7.0 + 56.0 * kEpsilon) * kEpsilon;

// The relative error bounds above assume no product underflows or overflows.
// Keeping every nonzero coordinate difference inside [2^-300, 2^300] makes
// every intermediate of the determinants a normal double.
constexpr double kMinDiff = 0x1p-300;
constexpr double kMaxDiff = 0x1p+300;

inline bool in_filter_range(double v) noexcept
{
    const double m = std::fabs(v);
    return v == 0 || (m >= kMinDiff && m <= kMaxDiff);
}

template <std::size_t N>
void require_finite(const std::array<double, N>& v)
{
    for (double x : v)
        if (!std::isfinite(x)) throw InvalidCoordinate("non-finite coordinate passed to a predicate");
}

// Maps finite doubles to integers sharing one power-of-two scale, so the
// determinant can be evaluated with exact integer arithmetic. Scaling every
// operand by the same positive factor leaves the determinant's sign intact.
template <std::size_t N>
std::array<mpz_class, N> to_scaled_integers(const std::array<double, N>& v)
{
    std::array<long, N> mantissa{};
    std::array<int, N> exponent{};
    int min_exp = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < N; ++i) {
        if (v[i] == 0) continue;
        int e = 0;
        const double m = std::frexp(v[i], &e);
        mantissa[i] = static_cast<long>(std::ldexp(m, 53));
        exponent[i] = e - 53;
        min_exp = std::min(min_exp, exponent[i]);
    }
    std::array<mpz_class, N> out;
    for (std::size_t i = 0; i < N; ++i) {
        if (mantissa[i] == 0) continue;
        out[i] = mantissa[i];
        mpz_mul_2exp(out[i].get_mpz_t(), out[i].get_mpz_t(), static_cast<mp_bitcnt_t>(exponent[i] - min_exp));
    }
    return out;
}

} // namespace

PredicateCounters& predicate_counters() noexcept { return tl_counters; }
void reset_predicate_counters() noexcept { tl_counters = {}; }

bool force_exact() noexcept { return force_exact_flag().load(std::memory_order_relaxed); }
void set_force_exact(bool on) noexcept { force_exact_flag().store(on, std::memory_order_relaxed); }

Sign orient2d_exact(const Point2d& a, const Point2d& b, const Point2d& c)
{
    const std::array<double, 6> v{a.x, a.y, b.x, b.y, c.x, c.y};
    require_finite(v);
    const auto z = to_scaled_integers(v);
    const mpz_class bx = z[2] - z[0], by = z[3] - z[1];
    const mpz_class cx = z[4] - z[0], cy = z[5] - z[1];
    return sign_of(mpz_class(bx * cy - by * cx));
}

Sign orient3d_exact(const Point3d& a, const Point3d& b, const Point3d& c, const Point3d& d)
{
    const std::array<double, 12> v{a.x, a.y, a.z, b.x, b.y, b.z, c.x, c.y, c.z, d.x, d.y, d.z};
    require_finite(v);
    const auto z = to_scaled_integers(v);
    const mpz_class bx = z[3] - z[0], by = z[4] - z[1], bz = z[5] - z[2];
    const mpz_class cx = z[6] - z[0], cy = z[7] - z[1], cz = z[8] - z[2];
    const mpz_class dx = z[9] - z[0], dy = z[10] - z[1], dz = z[11] - z[2];
    const mpz_class det = bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
    return sign_of(det);
}

Sign orient2d(const Point2d& a, const Point2d& b, const Point2d& c)
{
    if (!force_exact()) {
        const double acx = a.x - c.x, bcx = b.x - c.x;
        const double acy = a.y - c.y, bcy = b.y - c.y;
        if (in_filter_range(acx) && in_filter_range(bcx) && in_filter_range(acy) && in_filter_range(bcy)) {
            const double left = acx * bcy;
            const double right = acy * bcx;
            const double det = left - right;
            const double bound = kOrient2dBound * (std::fabs(left) + std::fabs(right));
            if (det > bound || -det > bound) {
                ++tl_counters.orient2d_filtered;
                return sign_of(det);
            }
        }
    }
    ++tl_counters.orient2d_exact;
    return orient2d_exact(a, b, c);
}

Sign orient3d(const Point3d& a, const Point3d& b, const Point3d& c, const Point3d& d)
{
    if (!force_exact()) {
        // Evaluated relative to d; the result is the negation of our convention.
        const double adx = a.x - d.x, bdx = b.x - d.x, cdx = c.x - d.x;
        const double ady = a.y - d.y, bdy = b.y - d.y, cdy = c.y - d.y;
        const double adz = a.z - d.z, bdz = b.z - d.z, cdz = c.z - d.z;
        const bool ranged = in_filter_range(adx) && in_filter_range(bdx) && in_filter_range(cdx)
            && in_filter_range(ady) && in_filter_range(bdy) && in_filter_range(cdy) && in_filter_range(adz)
            && in_filter_range(bdz) && in_filter_range(cdz);
        if (ranged) {
            const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
            const double cdxady = cdx * ady, adxcdy = adx * cdy;
            const double adxbdy = adx * bdy, bdxady = bdx * ady;
            const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
            const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * std::fabs(adz)
                + (std::fabs(cdxady) + std::fabs(adxcdy)) * std::fabs(bdz)
                + (std::fabs(adxbdy) + std::fabs(bdxady)) * std::fabs(cdz);
            const double bound = kOrient3dBound * permanent;
            if (det > bound || -det > bound) {
                ++tl_counters.orient3d_filtered;
                return -sign_of(det);
            }
        }
    }
    ++tl_counters.orient3d_exact;
    return orient3d_exact(a, b, c, d);
}

Sign orient2d(const Point3d& a, const Point3d& b, const Point3d& c, Axis drop)
{
    return orient2d(project(a, drop), project(b, drop), project(c, drop));
}

Sign orient2d_rational(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c)
{
    const mpq_class det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sign_of(det);
}

Sign orient3d_rational(const RationalPoint3& a, const RationalPoint3& b, const RationalPoint3& c,
                       const RationalPoint3& d)
{
    const mpq_class bx = b.x - a.x, by = b.y - a.y, bz = b.z - a.z;
    const mpq_class cx = c.x - a.x, cy = c.y - a.y, cz = c.z - a.z;
    const mpq_class dx = d.x - a.x, dy = d.y - a.y, dz = d.z - a.z;
    const mpq_class det = bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
    return sign_of(det);
}

Sign orient2d(const RationalPoint2& a, const RationalPoint2& b, const RationalPoint2& c)
{
    if (!force_exact()) {
        const IntervalPoint3 ia{Interval::enclose(a.x), Interval::enclose(a.y), {}};
        const IntervalPoint3 ib{Interval::enclose(b.x), Interval::enclose(b.y), {}};
        const IntervalPoint3 ic{Interval::enclose(c.x), Interval::enclose(c.y), {}};
        if (auto s = orient2d_interval(ia, ib, ic, Axis::Z)) {
            ++tl_counters.orient2d_filtered;
            return *s;
        }
    }
    ++tl_counters.orient2d_exact;
    return orient2d_rational(a, b, c);
}

Sign orient3d(const RationalPoint3& a, const RationalPoint3& b, const RationalPoint3& c, const RationalPoint3& d)
{
    if (!force_exact()) {
        if (auto s = orient3d_interval(enclose(a), enclose(b), enclose(c), enclose(d))) {
            ++tl_counters.orient3d_filtered;
            return *s;
        }
    }
    ++tl_counters.orient3d_exact;
    return orient3d_rational(a, b, c, d);
}

Sign orient2d(const RationalPoint3& a, const RationalPoint3& b, const RationalPoint3& c, Axis drop)
{
    return orient2d(project(a, drop), project(b, drop), project(c, drop));
}

} // namespace tritri

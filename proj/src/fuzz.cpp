#include "tritri/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace tritri {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Only raw engine output is used: distribution classes are not bit-stable
// across standard library implementations.
class Rng {
public:
    Rng(const GeneratorSpec& spec, std::uint64_t index)
        : engine_(splitmix64(spec.seed ^ splitmix64(index ^ (static_cast<std::uint64_t>(spec.family) << 56))))
    {
    }

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }
    double symmetric() { return 2.0 * unit() - 1.0; }
    int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin(int one_in) { return next() % static_cast<std::uint64_t>(one_in) == 0; }

private:
    std::mt19937_64 engine_;
};

bool valid(const Triangle<Point3d>& t)
{
    try {
        validate_triangle<FloatKernel>(t);
        return true;
    } catch (const DegenerateTriangle&) {
        return false;
    }
}

template <class Make>
Triangle<Point3d> valid_triangle(Make&& make)
{
    for (;;) {
        Triangle<Point3d> t = make();
        if (valid(t)) return t;
    }
}

Point3d random_point(Rng& rng) { return {rng.symmetric(), rng.symmetric(), rng.symmetric()}; }

Point3d grid_point(Rng& rng, int lo, int hi)
{
    return {double(rng.integer(lo, hi)), double(rng.integer(lo, hi)), double(rng.integer(lo, hi))};
}

Point3d add(const Point3d& a, const Point3d& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Point3d sub(const Point3d& a, const Point3d& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Point3d scale(double s, const Point3d& a) { return {s * a.x, s * a.y, s * a.z}; }

Triangle<Point3d> random_triangle(Rng& rng)
{
    return valid_triangle([&] { return Triangle<Point3d>{{random_point(rng), random_point(rng), random_point(rng)}}; });
}

/// Places the given vertex first, then a random rotation and orientation.
Triangle<Point3d> shuffle(Rng& rng, Triangle<Point3d> t)
{
    std::rotate(t.v.begin(), t.v.begin() + rng.integer(0, 2), t.v.end());
    if (rng.coin(2)) std::swap(t.v[1], t.v[2]);
    return t;
}

TrianglePair general_position(Rng& rng) { return {random_triangle(rng), random_triangle(rng)}; }

TrianglePair coplanar_random(Rng& rng)
{
    // Integer combinations of integer vectors stay exact, so the plane is exact.
    Point3d origin = grid_point(rng, -4, 4), u, w;
    do {
        u = grid_point(rng, -3, 3);
        w = grid_point(rng, -3, 3);
    } while (u.y * w.z - u.z * w.y == 0 && u.z * w.x - u.x * w.z == 0 && u.x * w.y - u.y * w.x == 0);
    auto on_plane = [&] {
        return add(origin, add(scale(rng.integer(-5, 5), u), scale(rng.integer(-5, 5), w)));
    };
    auto make = [&] { return Triangle<Point3d>{{on_plane(), on_plane(), on_plane()}}; };
    return {valid_triangle(make), valid_triangle(make)};
}

TrianglePair shared_vertex(Rng& rng)
{
    const Triangle<Point3d> t0 = random_triangle(rng);
    const Point3d shared = t0[rng.integer(0, 2)];
    const Triangle<Point3d> t1 =
        valid_triangle([&] { return Triangle<Point3d>{{shared, random_point(rng), random_point(rng)}}; });
    return {t0, shuffle(rng, t1)};
}

TrianglePair shared_edge(Rng& rng)
{
    if (rng.coin(2)) {
        const Triangle<Point3d> t0 = random_triangle(rng);
        const int k = rng.integer(0, 2);
        const Triangle<Point3d> t1 = valid_triangle(
            [&] { return Triangle<Point3d>{{t0[k], t0[(k + 1) % 3], random_point(rng)}}; });
        return {t0, shuffle(rng, t1)};
    }
    // Grid triangles, third vertex often in the common plane (folded or abutting).
    const Triangle<Point3d> t0 = valid_triangle(
        [&] { return Triangle<Point3d>{{grid_point(rng, -3, 3), grid_point(rng, -3, 3), grid_point(rng, -3, 3)}}; });
    const int k = rng.integer(0, 2);
    const Point3d &a = t0[k], &b = t0[(k + 1) % 3], &c = t0[(k + 2) % 3];
    const Triangle<Point3d> t1 = valid_triangle([&] {
        Point3d apex = rng.coin(3) ? grid_point(rng, -3, 3)
                                   : add(a, add(scale(rng.integer(-2, 2), sub(b, a)),
                                                scale(rng.integer(-2, 2), sub(c, a))));
        return Triangle<Point3d>{{a, b, apex}};
    });
    return {t0, shuffle(rng, t1)};
}

TrianglePair identical(Rng& rng)
{
    const Triangle<Point3d> t0 = random_triangle(rng);
    return {t0, shuffle(rng, t0)};
}

TrianglePair near_degenerate(Rng& rng, double ulp_scale)
{
    // Coordinates on a coarse grid in [1, 2), where the float spacing is 2^-52,
    // then nudged by a few multiples of ulp_scale to sit next to a degeneracy.
    auto coordinate = [&] {
        double c = 1.0 + rng.integer(0, 3) * 0.125;
        if (rng.coin(2)) c += rng.integer(-2, 2) * ulp_scale;
        return c;
    };
    auto make = [&] {
        Triangle<Point3d> t;
        for (auto& p : t.v) p = {coordinate(), coordinate(), coordinate()};
        return t;
    };
    return {valid_triangle(make), valid_triangle(make)};
}

TrianglePair grid_snapped(Rng& rng)
{
    auto make = [&] {
        return Triangle<Point3d>{{grid_point(rng, 0, 3), grid_point(rng, 0, 3), grid_point(rng, 0, 3)}};
    };
    return {valid_triangle(make), valid_triangle(make)};
}

bool same_descriptors(const IntersectionResult& a, const IntersectionResult& b)
{
    return a.coplanar == b.coplanar && a.points == b.points && a.segments == b.segments;
}

std::string describe_result(const IntersectionResult& r)
{
    std::ostringstream out;
    out << (r.coplanar ? "coplanar" : "non-coplanar") << " [";
    for (const auto& p : r.points) out << " (" << to_string(p.kind) << "," << p.id0.id() << "," << p.id1.id() << ")";
    out << " ] segs [";
    for (const auto& s : r.segments) out << " (" << s.p0 << "," << s.p1 << ")";
    out << " ]";
    return out.str();
}

} // namespace

std::string_view to_string(GeneratorFamily f) noexcept
{
    switch (f) {
    case GeneratorFamily::GeneralPosition: return "generalPosition";
    case GeneratorFamily::CoplanarRandom: return "coplanarRandom";
    case GeneratorFamily::SharedVertex: return "sharedVertex";
    case GeneratorFamily::SharedEdge: return "sharedEdge";
    case GeneratorFamily::Identical: return "identical";
    case GeneratorFamily::NearDegenerate: return "nearDegenerate";
    default: return "gridSnapped";
    }
}

std::optional<GeneratorFamily> parse_family(std::string_view name) noexcept
{
    for (auto f : kAllFamilies)
        if (to_string(f) == name) return f;
    return std::nullopt;
}

TrianglePair generate_pair(const GeneratorSpec& spec, std::uint64_t index)
{
    Rng rng(spec, index);
    switch (spec.family) {
    case GeneratorFamily::GeneralPosition: return general_position(rng);
    case GeneratorFamily::CoplanarRandom: return coplanar_random(rng);
    case GeneratorFamily::SharedVertex: return shared_vertex(rng);
    case GeneratorFamily::SharedEdge: return shared_edge(rng);
    case GeneratorFamily::Identical: return identical(rng);
    case GeneratorFamily::NearDegenerate: return near_degenerate(rng, spec.ulp_scale);
    default: return grid_snapped(rng);
    }
}

std::vector<TrianglePair> generate_pairs(const GeneratorSpec& spec)
{
    std::vector<TrianglePair> out;
    out.reserve(spec.count);
    for (std::uint64_t i = 0; i < spec.count; ++i) out.push_back(generate_pair(spec, i));
    return out;
}

Triangle<RationalPoint3> as_rational(const Triangle<Point3d>& t) { return to_rational(t); }

Triangle<PointHandle> as_implicit(const Triangle<Point3d>& t, unsigned first_vertex_variant)
{
    return {{lift_to_implicit(t[0], first_vertex_variant), lift_to_implicit(t[1], first_vertex_variant + 1),
             lift_to_implicit(t[2], first_vertex_variant + 2)}};
}

IntersectionResult classify_with(Backend backend, const TrianglePair& pair)
{
    switch (backend) {
    case Backend::Float64: return classify<FloatKernel>(pair.t0, pair.t1);
    case Backend::Rational: return classify<RationalKernel>(as_rational(pair.t0), as_rational(pair.t1));
    default: return classify<ImplicitKernel>(as_implicit(pair.t0, 0), as_implicit(pair.t1, 3));
    }
}

PairCheck check_pair(const TrianglePair& pair, std::span<const Backend> backends)
{
    PairCheck check;
    auto fail = [&](bool& flag, const std::string& what) {
        flag = false;
        if (!check.detail.empty()) check.detail += "; ";
        check.detail += what;
    };

    for (Backend b : backends) {
        try {
            IntersectionResult r = classify_with(b, pair);
            check_result(r);
            check.outputs.emplace_back(b, std::move(r));
        } catch (const Error& e) {
            fail(check.oracle_match, std::string(to_string(b)) + " backend raised: " + e.what());
            return check;
        }
    }
    for (std::size_t i = 1; i < check.outputs.size(); ++i)
        if (!same_descriptors(check.outputs[0].second, check.outputs[i].second))
            fail(check.backends_agree, std::string(to_string(check.outputs[i].first)) + " diverges from "
                     + std::string(to_string(check.outputs[0].first)) + ": "
                     + describe_result(check.outputs[i].second) + " vs " + describe_result(check.outputs[0].second));

    const Triangle<RationalPoint3> r0 = as_rational(pair.t0), r1 = as_rational(pair.t1);
    check.oracle = oracle_classify(r0, r1);
    const IntersectionResult* previous = nullptr;
    for (const auto& [backend, result] : check.outputs) {
        // Identical descriptor lists canonicalize identically.
        if (previous && same_descriptors(*previous, result)) continue;
        previous = &result;
        const std::string name(to_string(backend));
        try {
            const OracleReport canonical = canonicalize(result, r0, r1);
            if (canonical.points.size() != result.points.size())
                fail(check.oracle_match, name + ": two descriptors name the same point");
            if (canonical.coplanar != check.oracle.coplanar) fail(check.oracle_match, name + ": coplanarity differs");
            if (const auto cmp = compare(canonical, check.oracle); !cmp.match)
                fail(check.oracle_match, name + " vs oracle: " + cmp.describe() + " | " + describe_result(result));
        } catch (const Error& e) {
            fail(check.oracle_match, name + ": " + e.what());
        }
    }
    return check;
}

FuzzVerdict fuzz(const GeneratorSpec& spec, const FuzzOptions& options)
{
    FuzzVerdict verdict;
    verdict.spec = spec;
    constexpr std::uint64_t kChunk = 256;
    const std::uint64_t chunks = (spec.count + kChunk - 1) / kChunk;
    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> first_failure{spec.count};
    std::mutex mutex;
    FuzzStats stats;

    auto worker = [&] {
        FuzzStats local;
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunks || c * kChunk > first_failure.load()) break;
            const std::uint64_t end = std::min(spec.count, (c + 1) * kChunk);
            for (std::uint64_t i = c * kChunk; i < end; ++i) {
                const TrianglePair pair = generate_pair(spec, i);
                PairCheck check = check_pair(pair, options.backends);
                if (!check.ok()) {
                    std::lock_guard lock(mutex);
                    if (i < first_failure.load()) {
                        first_failure.store(i);
                        verdict.failure = FailureCase{i, pair, std::move(check)};
                    }
                    break;
                }
                const IntersectionResult& r = check.outputs.front().second;
                if (!r.empty()) ++local.intersecting;
                if (r.coplanar) ++local.coplanar;
                local.points += r.points.size();
                local.segments += r.segments.size();
                for (const auto& p : r.points) ++local.kinds[static_cast<std::size_t>(p.kind)];
            }
        }
        std::lock_guard lock(mutex);
        stats.intersecting += local.intersecting;
        stats.coplanar += local.coplanar;
        stats.points += local.points;
        stats.segments += local.segments;
        for (std::size_t k = 0; k < 5; ++k) stats.kinds[k] += local.kinds[k];
    };

    const unsigned workers = std::max(1u, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    verdict.cases_checked = verdict.failure ? verdict.failure->index + 1 : spec.count;
    if (!verdict.failure) verdict.stats = stats;
    return verdict;
}

double BenchRow::exact_fallback_fraction() const noexcept
{
    const auto total = counters.orient2d_total() + counters.orient3d_total();
    if (total == 0) return 0;
    return static_cast<double>(counters.orient2d_exact + counters.orient3d_exact) / static_cast<double>(total);
}

BenchReport bench(std::span<const GeneratorSpec> specs, unsigned repetitions, Backend backend)
{
    BenchReport report;
    report.backend = backend;
    report.repetitions = std::max(1u, repetitions);
    for (const auto& spec : specs) {
        const std::vector<TrianglePair> pairs = generate_pairs(spec);
        BenchRow row;
        row.case_name = std::string(to_string(spec.family));
        row.pair_count = pairs.size();

        // Inputs are converted outside the timed region.
        std::vector<Triangle<RationalPoint3>> rational;
        std::vector<Triangle<PointHandle>> implicit;
        if (backend == Backend::Rational)
            for (const auto& p : pairs) {
                rational.push_back(as_rational(p.t0));
                rational.push_back(as_rational(p.t1));
            }
        if (backend == Backend::Implicit)
            for (const auto& p : pairs) {
                implicit.push_back(as_implicit(p.t0, 0));
                implicit.push_back(as_implicit(p.t1, 3));
            }

        std::vector<double> seconds;
        for (unsigned rep = 0; rep < report.repetitions; ++rep) {
            const PredicateCounters before = predicate_counters();
            std::uint64_t points = 0;
            const auto start = std::chrono::steady_clock::now();
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                IntersectionResult r;
                if (backend == Backend::Float64)
                    r = classify_unchecked<FloatKernel>(pairs[i].t0, pairs[i].t1);
                else if (backend == Backend::Rational)
                    r = classify_unchecked<RationalKernel>(rational[2 * i], rational[2 * i + 1]);
                else
                    r = classify_unchecked<ImplicitKernel>(implicit[2 * i], implicit[2 * i + 1]);
                points += r.points.size();
            }
            seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
            const PredicateCounters& after = predicate_counters();
            row.counters = {after.orient2d_filtered - before.orient2d_filtered,
                            after.orient2d_exact - before.orient2d_exact,
                            after.orient3d_filtered - before.orient3d_filtered,
                            after.orient3d_exact - before.orient3d_exact};
            row.intersection_point_total = points;
        }
        std::ranges::sort(seconds);
        const std::size_t n = seconds.size();
        row.narrow_phase_seconds = n % 2 ? seconds[n / 2] : 0.5 * (seconds[n / 2 - 1] + seconds[n / 2]);
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string format_bench_table(const BenchReport& report)
{
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-18s %10s %12s %12s %12s %12s %12s %12s %9s\n", "case", "pairs", "points",
                  "seconds", "o2d.filter", "o2d.exact", "o3d.filter", "o3d.exact", "fallback");
    out << line;
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%-18s %10llu %12llu %12.6f %12llu %12llu %12llu %12llu %8.4f%%\n",
                      r.case_name.c_str(), static_cast<unsigned long long>(r.pair_count),
                      static_cast<unsigned long long>(r.intersection_point_total), r.narrow_phase_seconds,
                      static_cast<unsigned long long>(r.counters.orient2d_filtered),
                      static_cast<unsigned long long>(r.counters.orient2d_exact),
                      static_cast<unsigned long long>(r.counters.orient3d_filtered),
                      static_cast<unsigned long long>(r.counters.orient3d_exact),
                      100.0 * r.exact_fallback_fraction());
        out << line;
    }
    return out.str();
}

} // namespace tritri

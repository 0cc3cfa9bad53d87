#pragma once

// Differential fuzzing of the classifier (three backends against the exact
// oracle) and the timing harness.

#include "tritri/classifier.hpp"
#include "tritri/oracle.hpp"
#include "tritri/predicates.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tritri {

enum class GeneratorFamily : std::uint8_t {
    GeneralPosition,
    CoplanarRandom,
    SharedVertex,
    SharedEdge,
    Identical,
    NearDegenerate,
    GridSnapped,
};

inline constexpr std::array<GeneratorFamily, 7> kAllFamilies{
    GeneratorFamily::GeneralPosition, GeneratorFamily::CoplanarRandom, GeneratorFamily::SharedVertex,
    GeneratorFamily::SharedEdge,      GeneratorFamily::Identical,      GeneratorFamily::NearDegenerate,
    GeneratorFamily::GridSnapped};

inline constexpr std::array<Backend, 3> kAllBackends{Backend::Float64, Backend::Rational, Backend::Implicit};

std::string_view to_string(GeneratorFamily f) noexcept;
std::optional<GeneratorFamily> parse_family(std::string_view name) noexcept;

struct GeneratorSpec {
    GeneratorFamily family = GeneratorFamily::GeneralPosition;
    std::uint64_t seed = 0;
    std::uint64_t count = 0;
    /// Perturbation unit of the nearDegenerate family.
    double ulp_scale = 0x1p-52;
};

struct TrianglePair {
    Triangle<Point3d> t0, t1;
};

/// The index-th pair of a generator stream. Pairs depend only on
/// (family, seed, index, ulp_scale), so streams can be split across workers.
/// Every generated triangle is non-degenerate.
TrianglePair generate_pair(const GeneratorSpec& spec, std::uint64_t index);
std::vector<TrianglePair> generate_pairs(const GeneratorSpec& spec);

/// The same input coordinates in the representation a backend works with.
Triangle<RationalPoint3> as_rational(const Triangle<Point3d>& t);
/// first_vertex_variant offsets the LPI/SSI mix of lift_to_implicit.
Triangle<PointHandle> as_implicit(const Triangle<Point3d>& t, unsigned first_vertex_variant = 0);

IntersectionResult classify_with(Backend backend, const TrianglePair& pair);

/// Everything one differential check computed.
struct PairCheck {
    bool backends_agree = true;
    bool oracle_match = true;
    std::string detail;
    std::vector<std::pair<Backend, IntersectionResult>> outputs;
    OracleReport oracle;

    bool ok() const noexcept { return backends_agree && oracle_match; }
};

/// Classifies the pair with every requested backend, checks each result's
/// structural invariants, compares descriptor lists across backends and
/// compares every canonicalized result with the oracle.
PairCheck check_pair(const TrianglePair& pair, std::span<const Backend> backends = kAllBackends);

struct FailureCase {
    std::uint64_t index = 0;
    TrianglePair pair;
    PairCheck check;
};

struct FuzzStats {
    std::uint64_t intersecting = 0;
    std::uint64_t coplanar = 0;
    std::uint64_t points = 0;
    std::uint64_t segments = 0;
    std::array<std::uint64_t, 5> kinds{}; ///< indexed by IntersectionKind
};

struct FuzzVerdict {
    GeneratorSpec spec;
    std::uint64_t cases_checked = 0;
    std::optional<FailureCase> failure; ///< the failing case with the smallest index
    FuzzStats stats;                    ///< meaningful when the run passed

    bool pass() const noexcept { return !failure.has_value(); }
};

struct FuzzOptions {
    std::vector<Backend> backends{kAllBackends.begin(), kAllBackends.end()};
    unsigned workers = 1;
};

FuzzVerdict fuzz(const GeneratorSpec& spec, const FuzzOptions& options = {});

struct BenchRow {
    std::string case_name;
    std::uint64_t pair_count = 0;
    std::uint64_t intersection_point_total = 0;
    double narrow_phase_seconds = 0; ///< median over repetitions
    PredicateCounters counters;      ///< calls made by one repetition

    double exact_fallback_fraction() const noexcept;
};

struct BenchReport {
    Backend backend = Backend::Float64;
    unsigned repetitions = 0;
    std::vector<BenchRow> rows;
};

/// Times classification of each generated stream, single-threaded.
BenchReport bench(std::span<const GeneratorSpec> specs, unsigned repetitions = 5,
                  Backend backend = Backend::Float64);

std::string format_bench_table(const BenchReport& report);

} // namespace tritri

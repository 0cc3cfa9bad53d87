#include "tritri/mesh.hpp"

#include "tritri/classifier.hpp"
#include "tritri/errors.hpp"
#include "tritri/implicit_point.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace tritri {

namespace {

// ---------------------------------------------------------------- text input

class Lines {
public:
    explicit Lines(std::string_view text) : text_(text) {}

    /// Next line split into tokens, with '#' comments removed. Blank lines are skipped.
    bool next(std::vector<std::string_view>& tokens)
    {
        while (pos_ < text_.size()) {
            std::size_t end = text_.find('\n', pos_);
            if (end == std::string_view::npos) end = text_.size();
            std::string_view line = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_;
            if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            tokens.clear();
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
                std::size_t j = i;
                while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
                if (j > i) tokens.push_back(line.substr(i, j - i));
                i = j;
            }
            if (!tokens.empty()) return true;
        }
        return false;
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

double parse_double(std::string_view s, std::size_t line)
{
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
        throw ParseError("bad coordinate '" + std::string(s) + "'", line);
    return value;
}

template <class Int>
Int parse_int(std::string_view s, std::size_t line)
{
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    Int value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("bad integer '" + std::string(s) + "'", line);
    return value;
}

void add_polygon(Mesh& m, const std::vector<std::uint32_t>& corners, const LoadOptions& options, std::size_t line)
{
    if (corners.size() < 3) throw ParseError("face with fewer than 3 corners", line);
    if (corners.size() > 3 && !options.triangulate_polygons)
        throw ParseError("face with " + std::to_string(corners.size()) + " corners (triangulation disabled)", line);
    for (std::size_t k = 1; k + 1 < corners.size(); ++k) m.faces.push_back({corners[0], corners[k], corners[k + 1]});
}

void check_indices(const Mesh& m, std::size_t line)
{
    for (const auto& f : m.faces)
        for (auto i : f)
            if (i >= m.vertices.size()) throw ParseError("vertex index " + std::to_string(i) + " out of range", line);
}

Mesh parse_off(std::string_view text, const LoadOptions& options)
{
    Lines lines(text);
    std::vector<std::string_view> tok;
    if (!lines.next(tok)) throw ParseError("empty OFF file", 1);
    std::size_t first = 0;
    if (tok[0] == "OFF") {
        first = 1;
    } else if (tok[0].find("OFF") != std::string_view::npos) {
        throw UnsupportedFormat("OFF variant '" + std::string(tok[0]) + "' is not supported");
    } else {
        throw ParseError("missing OFF header", lines.line());
    }
    std::vector<std::string_view> counts(tok.begin() + first, tok.end());
    if (counts.empty()) {
        if (!lines.next(tok)) throw ParseError("missing OFF counts", lines.line());
        counts = tok;
    }
    if (counts.size() < 2) throw ParseError("OFF counts need vertex and face numbers", lines.line());
    const auto nv = parse_int<std::size_t>(counts[0], lines.line());
    const auto nf = parse_int<std::size_t>(counts[1], lines.line());

    Mesh m;
    m.vertices.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        if (!lines.next(tok)) throw ParseError("unexpected end of file in vertex list", lines.line());
        if (tok.size() < 3) throw ParseError("vertex needs 3 coordinates", lines.line());
        m.vertices.push_back({parse_double(tok[0], lines.line()), parse_double(tok[1], lines.line()),
                              parse_double(tok[2], lines.line())});
    }
    std::vector<std::uint32_t> corners;
    for (std::size_t i = 0; i < nf; ++i) {
        if (!lines.next(tok)) throw ParseError("unexpected end of file in face list", lines.line());
        const auto n = parse_int<std::size_t>(tok[0], lines.line());
        // Anything after the indices is a per-face colour.
        if (tok.size() < n + 1) throw ParseError("face lists fewer indices than announced", lines.line());
        corners.clear();
        for (std::size_t k = 0; k < n; ++k) {
            const auto idx = parse_int<std::uint32_t>(tok[k + 1], lines.line());
            if (idx >= nv) throw ParseError("vertex index " + std::to_string(idx) + " out of range", lines.line());
            corners.push_back(idx);
        }
        add_polygon(m, corners, options, lines.line());
    }
    return m;
}

Mesh parse_obj(std::string_view text, const LoadOptions& options)
{
    Lines lines(text);
    std::vector<std::string_view> tok;
    Mesh m;
    std::vector<std::uint32_t> corners;
    while (lines.next(tok)) {
        if (tok[0] == "v") {
            if (tok.size() < 4) throw ParseError("vertex needs 3 coordinates", lines.line());
            m.vertices.push_back({parse_double(tok[1], lines.line()), parse_double(tok[2], lines.line()),
                                  parse_double(tok[3], lines.line())});
        } else if (tok[0] == "f") {
            corners.clear();
            for (std::size_t k = 1; k < tok.size(); ++k) {
                std::string_view ref = tok[k].substr(0, tok[k].find('/'));
                const auto idx = parse_int<long long>(ref, lines.line());
                const long long n = static_cast<long long>(m.vertices.size());
                const long long resolved = idx < 0 ? n + idx : idx - 1;
                if (idx == 0 || resolved < 0 || resolved >= n)
                    throw ParseError("vertex index " + std::string(ref) + " out of range", lines.line());
                corners.push_back(static_cast<std::uint32_t>(resolved));
            }
            add_polygon(m, corners, options, lines.line());
        }
        // Normals, texture coordinates, groups and materials are ignored.
    }
    return m;
}

// STL vertices are merged when their coordinates are bitwise identical.
class VertexMerger {
public:
    explicit VertexMerger(Mesh& m) : mesh_(m) {}

    std::uint32_t add(const Point3d& p)
    {
        const std::array<std::uint64_t, 3> key{std::bit_cast<std::uint64_t>(p.x), std::bit_cast<std::uint64_t>(p.y),
                                               std::bit_cast<std::uint64_t>(p.z)};
        auto [it, inserted] = index_.try_emplace(key, static_cast<std::uint32_t>(mesh_.vertices.size()));
        if (inserted) mesh_.vertices.push_back(p);
        return it->second;
    }

private:
    Mesh& mesh_;
    std::map<std::array<std::uint64_t, 3>, std::uint32_t> index_;
};

Mesh parse_stl_ascii(std::string_view text)
{
    Lines lines(text);
    std::vector<std::string_view> tok;
    Mesh m;
    VertexMerger merger(m);
    if (!lines.next(tok) || tok[0] != "solid") throw ParseError("missing 'solid' header", 1);
    std::vector<std::uint32_t> corners;
    bool in_loop = false;
    while (lines.next(tok)) {
        if (tok[0] == "vertex") {
            if (!in_loop) throw ParseError("vertex outside a loop", lines.line());
            if (tok.size() != 4) throw ParseError("vertex needs 3 coordinates", lines.line());
            corners.push_back(merger.add({parse_double(tok[1], lines.line()), parse_double(tok[2], lines.line()),
                                          parse_double(tok[3], lines.line())}));
        } else if (tok[0] == "outer") {
            in_loop = true;
            corners.clear();
        } else if (tok[0] == "endloop") {
            if (!in_loop || corners.size() != 3) throw ParseError("facet loop must have 3 vertices", lines.line());
            m.faces.push_back({corners[0], corners[1], corners[2]});
            in_loop = false;
        } else if (tok[0] == "facet" || tok[0] == "endfacet") {
        } else if (tok[0] == "endsolid") {
            return m;
        } else {
            throw ParseError("unexpected token '" + std::string(tok[0]) + "'", lines.line());
        }
    }
    throw ParseError("missing 'endsolid'", lines.line());
}

Mesh parse_stl_binary(std::string_view data)
{
    if (data.size() < 84) throw ParseError("binary STL shorter than its header", data.size());
    std::uint32_t count = 0;
    std::memcpy(&count, data.data() + 80, 4);
    if (data.size() != 84 + 50ull * count)
        throw ParseError("binary STL size does not match its triangle count", data.size());
    Mesh m;
    VertexMerger merger(m);
    for (std::uint32_t t = 0; t < count; ++t) {
        const char* rec = data.data() + 84 + 50ull * t;
        std::array<std::uint32_t, 3> face{};
        for (int k = 0; k < 3; ++k) {
            float c[3];
            std::memcpy(c, rec + 12 + 12 * k, 12);
            for (float v : c)
                if (!std::isfinite(v)) throw ParseError("non-finite coordinate", 84 + 50ull * t);
            face[k] = merger.add({c[0], c[1], c[2]});
        }
        m.faces.push_back(face);
    }
    return m;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// ---------------------------------------------------------------- broad phase

// Cells are addressed by non-negative coordinates relative to the scene's
// low corner, packed 21 bits per axis.
constexpr std::int64_t kCellLimit = std::int64_t{1} << 21;

class Grid {
public:
    Grid(Point3d origin, double cell) : origin_(origin), inv_(1.0 / cell) {}

    std::uint64_t cell_of(const Point3d& p) const noexcept
    {
        return (coord(p.x - origin_.x) << 42) | (coord(p.y - origin_.y) << 21) | coord(p.z - origin_.z);
    }

    template <class Fn>
    void for_each_cell(const Aabb& box, Fn&& fn) const
    {
        const std::uint64_t lo[3]{coord(box.lo.x - origin_.x), coord(box.lo.y - origin_.y), coord(box.lo.z - origin_.z)};
        const std::uint64_t hi[3]{coord(box.hi.x - origin_.x), coord(box.hi.y - origin_.y), coord(box.hi.z - origin_.z)};
        for (auto x = lo[0]; x <= hi[0]; ++x)
            for (auto y = lo[1]; y <= hi[1]; ++y)
                for (auto z = lo[2]; z <= hi[2]; ++z) fn((x << 42) | (y << 21) | z);
    }

private:
    std::uint64_t coord(double d) const noexcept
    {
        const auto c = static_cast<std::int64_t>(std::floor(d * inv_));
        return static_cast<std::uint64_t>(std::clamp<std::int64_t>(c, 0, kCellLimit - 1));
    }

    Point3d origin_;
    double inv_;
};

/// Faces per occupied cell, each face counted once at its box centre.
double mean_faces_per_cell(const Grid& g, const std::vector<Aabb>& boxes, const std::vector<std::uint32_t>& active)
{
    std::vector<std::uint64_t> keys;
    keys.reserve(active.size());
    for (auto f : active) {
        const Aabb& b = boxes[f];
        keys.push_back(g.cell_of({0.5 * (b.lo.x + b.hi.x), 0.5 * (b.lo.y + b.hi.y), 0.5 * (b.lo.z + b.hi.z)}));
    }
    std::ranges::sort(keys);
    const auto occupied = static_cast<double>(std::ranges::distance(keys.begin(), std::unique(keys.begin(), keys.end())));
    return static_cast<double>(active.size()) / occupied;
}

// ---------------------------------------------------------------- narrow phase

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

} // namespace

std::string_view to_string(MeshFormat f) noexcept
{
    switch (f) {
    case MeshFormat::OFF: return "off";
    case MeshFormat::OBJ: return "obj";
    case MeshFormat::STLBinary: return "stl-binary";
    default: return "stl-ascii";
    }
}

std::optional<MeshFormat> parse_mesh_format(std::string_view name)
{
    const std::string n = lower(name);
    if (n == "off") return MeshFormat::OFF;
    if (n == "obj") return MeshFormat::OBJ;
    if (n == "stl-binary") return MeshFormat::STLBinary;
    if (n == "stl-ascii") return MeshFormat::STLAscii;
    if (n == "stl") return std::nullopt;
    throw UnsupportedFormat("unknown mesh format '" + std::string(name) + "'");
}

MeshFormat detect_format(const std::filesystem::path& path, std::string_view contents)
{
    const std::string ext = lower(path.extension().string());
    if (ext == ".off") return MeshFormat::OFF;
    if (ext == ".obj") return MeshFormat::OBJ;
    if (ext == ".stl") {
        if (contents.size() >= 84) {
            std::uint32_t count = 0;
            std::memcpy(&count, contents.data() + 80, 4);
            if (contents.size() == 84 + 50ull * count) return MeshFormat::STLBinary;
        }
        if (contents.substr(0, 5) == "solid") return MeshFormat::STLAscii;
        return MeshFormat::STLBinary;
    }
    throw UnsupportedFormat("cannot infer mesh format from extension '" + ext + "'");
}

Mesh parse_mesh(std::string_view contents, MeshFormat format, const LoadOptions& options)
{
    switch (format) {
    case MeshFormat::OFF: return parse_off(contents, options);
    case MeshFormat::OBJ: return parse_obj(contents, options);
    case MeshFormat::STLBinary: return parse_stl_binary(contents);
    default: return parse_stl_ascii(contents);
    }
}

Mesh load_mesh(const std::filesystem::path& path, std::optional<MeshFormat> format, const LoadOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string contents = buffer.str();
    Mesh m = parse_mesh(contents, format ? *format : detect_format(path, contents), options);
    m.name = path.filename().string();
    check_indices(m, 0);
    return m;
}

Aabb face_box(const Mesh& m, std::size_t face)
{
    const auto& f = m.faces[face];
    const Point3d &a = m.vertices[f[0]], &b = m.vertices[f[1]], &c = m.vertices[f[2]];
    return {{std::min({a.x, b.x, c.x}), std::min({a.y, b.y, c.y}), std::min({a.z, b.z, c.z})},
            {std::max({a.x, b.x, c.x}), std::max({a.y, b.y, c.y}), std::max({a.z, b.z, c.z})}};
}

bool overlaps(const Aabb& a, const Aabb& b) noexcept
{
    return a.lo.x <= b.hi.x && b.lo.x <= a.hi.x && a.lo.y <= b.hi.y && b.lo.y <= a.hi.y && a.lo.z <= b.hi.z
        && b.lo.z <= a.hi.z;
}

std::uint8_t shared_vertex_count(const Mesh& m, std::uint32_t f0, std::uint32_t f1) noexcept
{
    std::uint8_t n = 0;
    for (auto a : m.faces[f0])
        for (auto b : m.faces[f1]) n += a == b;
    return n;
}

std::vector<CandidatePair> candidate_pairs(const Mesh& m, const std::vector<bool>& skip)
{
    std::vector<Aabb> boxes;
    std::vector<std::uint32_t> active;
    boxes.reserve(m.faces.size());
    double extent_sum = 0, extent_max = 0;
    Aabb scene{};
    for (std::uint32_t f = 0; f < m.faces.size(); ++f) {
        boxes.push_back(face_box(m, f));
        if (!skip.empty() && skip[f]) continue;
        const Aabb& b = boxes.back();
        const double extent = std::max({b.hi.x - b.lo.x, b.hi.y - b.lo.y, b.hi.z - b.lo.z});
        extent_sum += extent;
        extent_max = std::max(extent_max, extent);
        if (active.empty()) {
            scene = b;
        } else {
            scene.lo = {std::min(scene.lo.x, b.lo.x), std::min(scene.lo.y, b.lo.y), std::min(scene.lo.z, b.lo.z)};
            scene.hi = {std::max(scene.hi.x, b.hi.x), std::max(scene.hi.y, b.hi.y), std::max(scene.hi.z, b.hi.z)};
        }
        active.push_back(f);
    }
    std::vector<CandidatePair> out;
    if (active.size() < 2) return out;

    // Start from the mean face extent and rescale towards two faces per
    // occupied cell. On a surface mesh the count grows with the square of the
    // cell size. Large faces bound the cell from below so no face straddles
    // more than a few thousand cells, and the scene must fit the key range.
    const double scene_extent =
        std::max({scene.hi.x - scene.lo.x, scene.hi.y - scene.lo.y, scene.hi.z - scene.lo.z});
    const double min_cell = std::max(extent_max / 16, scene_extent / static_cast<double>(kCellLimit - 2));
    double cell = extent_sum / static_cast<double>(active.size());
    if (!(cell > 0)) cell = scene_extent > 0 ? scene_extent : 1.0;
    cell = std::max(cell, min_cell);
    for (int iter = 0; iter < 4; ++iter) {
        const double mean = mean_faces_per_cell(Grid(scene.lo, cell), boxes, active);
        if (mean >= 1.5 && mean <= 3.0) break;
        cell = std::max(cell * std::sqrt(2.0 / mean), min_cell);
    }

    const Grid grid(scene.lo, cell);
    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
    entries.reserve(4 * active.size());
    for (auto f : active) grid.for_each_cell(boxes[f], [&](std::uint64_t key) { entries.emplace_back(key, f); });
    std::ranges::sort(entries);

    for (std::size_t begin = 0; begin < entries.size();) {
        const std::uint64_t key = entries[begin].first;
        std::size_t end = begin + 1;
        while (end < entries.size() && entries[end].first == key) ++end;
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint32_t f0 = entries[i].second;
            const Aabb& a = boxes[f0];
            for (std::size_t j = i + 1; j < end; ++j) {
                const std::uint32_t f1 = entries[j].second;
                const Aabb& b = boxes[f1];
                if (!overlaps(a, b)) continue;
                // A pair sharing several cells is reported only by the cell
                // holding the low corner of the box intersection.
                const Point3d corner{std::max(a.lo.x, b.lo.x), std::max(a.lo.y, b.lo.y), std::max(a.lo.z, b.lo.z)};
                if (grid.cell_of(corner) != key) continue;
                out.push_back({f0, f1, shared_vertex_count(m, f0, f1)});
            }
        }
        begin = end;
    }
    std::ranges::sort(out, [](const CandidatePair& a, const CandidatePair& b) {
        return std::tie(a.f0, a.f1) < std::tie(b.f0, b.f1);
    });
    return out;
}

std::vector<CandidatePair> candidate_pairs_brute_force(const Mesh& m, const std::vector<bool>& skip)
{
    std::vector<Aabb> boxes;
    for (std::size_t f = 0; f < m.faces.size(); ++f) boxes.push_back(face_box(m, f));
    std::vector<CandidatePair> out;
    for (std::uint32_t i = 0; i < m.faces.size(); ++i) {
        if (!skip.empty() && skip[i]) continue;
        for (std::uint32_t j = i + 1; j < m.faces.size(); ++j) {
            if (!skip.empty() && skip[j]) continue;
            if (overlaps(boxes[i], boxes[j])) out.push_back({i, j, shared_vertex_count(m, i, j)});
        }
    }
    return out;
}

bool adjacency_only(const Mesh& m, const CandidatePair& pair, const IntersectionResult& r)
{
    if (pair.shared_simplices == 0) return false;
    const auto& a = m.faces[pair.f0];
    const auto& b = m.faces[pair.f1];
    for (const auto& p : r.points) {
        if (p.kind != IntersectionKind::VV) return false;
        const auto s0 = decode_simplex_ref(p.id0.id()), s1 = decode_simplex_ref(p.id1.id());
        if (a[s0.local_index] != b[s1.local_index]) return false;
    }
    return true;
}

ScanOutput scan(const Mesh& m, const ScanOptions& options)
{
    ScanOutput out;
    ScanReport& rep = out.report;
    rep.mesh_name = m.name;
    rep.face_count = m.faces.size();
    const auto start = Clock::now();

    const auto broad_start = Clock::now();
    std::vector<bool> skip(m.faces.size(), false);
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
        try {
            validate_triangle<FloatKernel>(m.triangle(f));
        } catch (const DegenerateTriangle&) {
            skip[f] = true;
            ++rep.degenerate_faces;
        }
    }
    const std::vector<CandidatePair> pairs = candidate_pairs(m, skip);
    rep.candidate_pairs = pairs.size();
    rep.broad_seconds = seconds_since(broad_start);

    // Per-backend vertex representations, built once and shared read-only.
    std::vector<RationalPoint3> rational;
    std::vector<PointHandle> implicit;
    if (options.backend == Backend::Rational)
        for (const auto& v : m.vertices) rational.push_back(to_rational(v));
    if (options.backend == Backend::Implicit)
        for (std::size_t i = 0; i < m.vertices.size(); ++i)
            implicit.push_back(lift_to_implicit(m.vertices[i], static_cast<unsigned>(i)));

    auto classify_pair = [&](const CandidatePair& p) {
        const auto& a = m.faces[p.f0];
        const auto& b = m.faces[p.f1];
        switch (options.backend) {
        case Backend::Float64: return classify_unchecked<FloatKernel>(m.triangle(p.f0), m.triangle(p.f1));
        case Backend::Rational:
            return classify_unchecked<RationalKernel>({{rational[a[0]], rational[a[1]], rational[a[2]]}},
                                                      {{rational[b[0]], rational[b[1]], rational[b[2]]}});
        default:
            return classify_unchecked<ImplicitKernel>({{implicit[a[0]], implicit[a[1]], implicit[a[2]]}},
                                                      {{implicit[b[0]], implicit[b[1]], implicit[b[2]]}});
        }
    };

    const auto narrow_start = Clock::now();
    constexpr std::size_t kChunk = 512;
    const std::size_t chunks = (pairs.size() + kChunk - 1) / kChunk;
    std::vector<std::vector<PairRecord>> chunk_records(chunks);
    std::vector<char> chunk_done(chunks, 0);
    std::atomic<std::size_t> next_chunk{0};
    std::atomic<bool> stop{false};
    const bool limited = options.timeout_seconds > 0;
    const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(limited ? options.timeout_seconds : 0));

    auto worker = [&] {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            const std::size_t c = next_chunk.fetch_add(1);
            if (c >= chunks) return;
            std::vector<PairRecord>& records = chunk_records[c];
            const std::size_t end = std::min(pairs.size(), (c + 1) * kChunk);
            for (std::size_t i = c * kChunk; i < end; ++i) {
                if (limited && Clock::now() > deadline) {
                    stop.store(true);
                    return;
                }
                IntersectionResult r = classify_pair(pairs[i]);
                if (r.empty()) continue;
                if (options.ignore_shared_simplices && adjacency_only(m, pairs[i], r)) continue;
                records.push_back({pairs[i], std::move(r)});
            }
            chunk_done[c] = 1;
        }
    };

    const unsigned workers = std::max(1u, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    rep.narrow_seconds = seconds_since(narrow_start);

    for (std::size_t c = 0; c < chunks; ++c) {
        if (!chunk_done[c]) {
            rep.timed_out = true;
            break;
        }
        rep.pairs_processed = std::min(pairs.size(), (c + 1) * kChunk);
        for (auto& rec : chunk_records[c]) {
            ++rep.intersecting_pairs;
            rep.intersection_point_total += rec.result.points.size();
            rep.intersection_segment_total += rec.result.segments.size();
            rep.coplanar_pair_count += rec.result.coplanar;
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

Mesh uv_sphere(const Point3d& center, double radius, unsigned stacks, unsigned slices)
{
    Mesh m;
    m.name = "uv_sphere";
    const double pi = std::numbers::pi;
    m.vertices.push_back({center.x, center.y, center.z + radius});
    for (unsigned i = 1; i < stacks; ++i) {
        const double theta = pi * i / stacks;
        for (unsigned j = 0; j < slices; ++j) {
            const double phi = 2 * pi * j / slices;
            m.vertices.push_back({center.x + radius * std::sin(theta) * std::cos(phi),
                                  center.y + radius * std::sin(theta) * std::sin(phi),
                                  center.z + radius * std::cos(theta)});
        }
    }
    const auto south = static_cast<std::uint32_t>(m.vertices.size());
    m.vertices.push_back({center.x, center.y, center.z - radius});
    auto ring = [&](unsigned i, unsigned j) { return 1 + (i - 1) * slices + j % slices; };
    for (unsigned j = 0; j < slices; ++j) m.faces.push_back({0, ring(1, j), ring(1, j + 1)});
    for (unsigned i = 1; i + 1 < stacks; ++i)
        for (unsigned j = 0; j < slices; ++j) {
            m.faces.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
            m.faces.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
        }
    for (unsigned j = 0; j < slices; ++j) m.faces.push_back({south, ring(stacks - 1, j + 1), ring(stacks - 1, j)});
    return m;
}

Mesh wavy_sheet(unsigned n, double size, double amplitude, double freq_x, double freq_y, double offset)
{
    Mesh m;
    m.name = "wavy_sheet";
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            const double x = size * i / (n - 1), y = size * j / (n - 1);
            m.vertices.push_back({x, y, amplitude * std::sin(freq_x * x) * std::cos(freq_y * y) + offset});
        }
    for (unsigned i = 0; i + 1 < n; ++i)
        for (unsigned j = 0; j + 1 < n; ++j) {
            const std::uint32_t a = i * n + j, b = a + n;
            m.faces.push_back({a, b, b + 1});
            m.faces.push_back({a, b + 1, a + 1});
        }
    return m;
}

Mesh merge(const Mesh& a, const Mesh& b)
{
    Mesh m = a;
    const auto shift = static_cast<std::uint32_t>(a.vertices.size());
    m.vertices.insert(m.vertices.end(), b.vertices.begin(), b.vertices.end());
    for (auto f : b.faces) m.faces.push_back({f[0] + shift, f[1] + shift, f[2] + shift});
    return m;
}

std::string write_off(const Mesh& m)
{
    std::string out = "OFF\n" + std::to_string(m.vertices.size()) + " " + std::to_string(m.faces.size()) + " 0\n";
    char buf[128];
    for (const auto& v : m.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
        out += buf;
    }
    for (const auto& f : m.faces) {
        std::snprintf(buf, sizeof buf, "3 %u %u %u\n", f[0], f[1], f[2]);
        out += buf;
    }
    return out;
}

std::string write_stl_ascii(const Mesh& m)
{
    std::string out = "solid " + (m.name.empty() ? std::string("mesh") : m.name) + "\n";
    char buf[160];
    for (const auto& f : m.faces) {
        out += "  facet normal 0 0 0\n    outer loop\n";
        for (auto i : f) {
            const auto& v = m.vertices[i];
            std::snprintf(buf, sizeof buf, "      vertex %.17g %.17g %.17g\n", v.x, v.y, v.z);
            out += buf;
        }
        out += "    endloop\n  endfacet\n";
    }
    out += "endsolid\n";
    return out;
}

std::string write_stl_binary(const Mesh& m)
{
    std::string out(84 + 50 * m.faces.size(), '\0');
    const auto count = static_cast<std::uint32_t>(m.faces.size());
    std::memcpy(out.data() + 80, &count, 4);
    for (std::size_t t = 0; t < m.faces.size(); ++t) {
        char* rec = out.data() + 84 + 50 * t;
        for (int k = 0; k < 3; ++k) {
            const auto& v = m.vertices[m.faces[t][k]];
            const float c[3]{static_cast<float>(v.x), static_cast<float>(v.y), static_cast<float>(v.z)};
            std::memcpy(rec + 12 + 12 * k, c, 12);
        }
    }
    return out;
}

} // namespace tritri

// Writes the mesh fixtures under tests/fixtures. The two-sphere metadata is
// computed with the exact oracle over a brute-force all-pairs scan, so it
// does not depend on the broad phase or the classifier.

#include "tritri/mesh.hpp"
#include "tritri/oracle.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace tritri;

void write(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    out << contents;
    std::cout << "wrote " << path.string() << "\n";
}

struct Counts {
    std::uint64_t pairs = 0, points = 0, segments = 0;
};

nlohmann::json to_json(const Counts& c)
{
    return {{"intersecting_pairs", c.pairs}, {"intersection_point_total", c.points},
            {"intersection_segment_total", c.segments}};
}

} // namespace

int main(int argc, char** argv)
{
    const std::filesystem::path dir = argc > 1 ? argv[1] : "tests/fixtures";
    std::filesystem::create_directories(dir);

    Mesh tet;
    tet.name = "tetrahedron";
    tet.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    tet.faces = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
    write(dir / "tetrahedron.off", write_off(tet));
    write(dir / "tetrahedron.stl", write_stl_ascii(tet));
    write(dir / "tetrahedron_binary.stl", write_stl_binary(tet));
    write(dir / "quad.obj", "# unit square as one quad\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");

    const Point3d c0{0, 0, 0}, c1{0.7, 0.3, 0.2};
    const double r0 = 1.0, r1 = 0.8;
    const unsigned stacks = 16, slices = 32;
    Mesh spheres = merge(uv_sphere(c0, r0, stacks, slices), uv_sphere(c1, r1, stacks, slices));
    spheres.name = "two_spheres";
    const std::string off = write_off(spheres);
    write(dir / "two_spheres.off", off);

    // Reload so the metadata describes exactly the coordinates in the file.
    const Mesh loaded = load_mesh(dir / "two_spheres.off");
    const auto pairs = candidate_pairs_brute_force(loaded);
    Counts all, improper;
    for (const auto& p : pairs) {
        const OracleReport rep = oracle_classify(loaded.triangle(p.f0), loaded.triangle(p.f1));
        if (rep.points.empty()) continue;
        ++all.pairs;
        all.points += rep.points.size();
        all.segments += rep.segments.size();
        bool adjacency = p.shared_simplices > 0;
        for (const auto& pt : rep.points) {
            bool shared = false;
            for (auto a : loaded.faces[p.f0])
                for (auto b : loaded.faces[p.f1])
                    if (a == b && to_rational(loaded.vertices[a]) == pt) shared = true;
            adjacency = adjacency && shared;
        }
        if (adjacency) continue;
        ++improper.pairs;
        improper.points += rep.points.size();
        improper.segments += rep.segments.size();
    }
    nlohmann::json meta{
        {"mesh", "two_spheres.off"},
        {"face_count", loaded.faces.size()},
        {"vertex_count", loaded.vertices.size()},
        {"construction",
         {{"spheres",
           {{{"center", {c0.x, c0.y, c0.z}}, {"radius", r0}}, {{"center", {c1.x, c1.y, c1.z}}, {"radius", r1}}}},
          {"stacks", stacks},
          {"slices", slices}}},
        {"aabb_overlapping_pairs", pairs.size()},
        {"oracle",
         {{"ignore_shared_simplices", to_json(improper)}, {"count_shared_simplices", to_json(all)}}}};
    write(dir / "two_spheres.json", meta.dump(2) + "\n");
    return 0;
}

#include "nxfem/mesh.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace nxfem;

namespace {

double total_volume(const SimplicialMesh& mesh) {
    double vol = 0.0;
    Point v[4];
    for (const auto& s : mesh.simplices) {
        for (int i = 0; i < mesh.dim + 1; ++i) v[i] = mesh.vertices[s[i]];
        vol += simplex_signed_volume(mesh.dim, v);
    }
    return vol;
}

bool all_positive_volumes(const SimplicialMesh& mesh) {
    Point v[4];
    for (const auto& s : mesh.simplices) {
        for (int i = 0; i < mesh.dim + 1; ++i) v[i] = mesh.vertices[s[i]];
        if (simplex_signed_volume(mesh.dim, v) <= 0.0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("square mesh basics") {
    const auto mesh = build_uniform_square_mesh(1);
    CHECK(mesh.n_simplices() == 2);
    CHECK(mesh.n_vertices() == 4);
    CHECK(total_volume(mesh) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(all_positive_volumes(mesh));

    CHECK_THROWS(build_uniform_square_mesh(0));

    const auto m16 = build_uniform_square_mesh(16);
    CHECK(m16.n_simplices() == 512);
    CHECK(m16.n_vertices() == 289);
    CHECK(m16.h == doctest::Approx(std::sqrt(2.0) / 16));
    CHECK(std::abs(total_volume(m16) - 1.0) < 1e-12);
}

TEST_CASE("square mesh vertex-to-triangle incidence by brute-force scan") {
    const auto mesh = build_uniform_square_mesh(4);
    CHECK(mesh.n_simplices() == 32);

    std::map<int, int> incident;
    for (const auto& s : mesh.simplices)
        for (int i = 0; i < 3; ++i) ++incident[s[i]];
    for (std::size_t v = 0; v < mesh.n_vertices(); ++v)
        if (!mesh.boundary_vertex[v]) CHECK(incident[int(v)] == 6);
}

TEST_CASE("cube mesh basics") {
    const auto mesh = build_uniform_cube_mesh(1);
    CHECK(mesh.n_simplices() == 6);
    CHECK(mesh.n_vertices() == 8);
    CHECK(total_volume(mesh) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(all_positive_volumes(mesh));

    CHECK_THROWS(build_uniform_cube_mesh(0));

    const auto m2 = build_uniform_cube_mesh(2);
    CHECK(m2.n_simplices() == 48);
    CHECK(m2.n_vertices() == 27);
    CHECK(m2.h == doctest::Approx(std::sqrt(3.0) / 2));

    // the finest-level count formula: (n+1)^3 vertices
    CHECK(std::size_t(129) * 129 * 129 == 2146689); // ~2.15M unknowns at n = 128
}

TEST_CASE("cube mesh is conforming and tiles the cube") {
    const auto mesh = build_uniform_cube_mesh(3);
    CHECK(mesh.n_simplices() == 6 * 27);
    CHECK(std::abs(total_volume(mesh) - 1.0) < 1e-12);
    CHECK(all_positive_volumes(mesh));

    // conformity: every interior facet is shared by exactly two tets
    std::map<std::array<int, 3>, int> faces;
    for (const auto& s : mesh.simplices)
        for (int drop = 0; drop < 4; ++drop) {
            std::array<int, 3> f{};
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != drop) f[k++] = s[i];
            std::sort(f.begin(), f.end());
            ++faces[f];
        }
    for (const auto& [f, count] : faces) {
        CHECK(count <= 2);
        if (count == 1) {
            // boundary facet: all three vertices on the boundary
            for (int v : f) CHECK(mesh.boundary_vertex[v]);
        }
    }
}

TEST_CASE("refinement nests the vertex sets") {
    for (int dim : {2, 3}) {
        const auto coarse = dim == 2 ? build_uniform_square_mesh(2) : build_uniform_cube_mesh(2);
        const auto fine = refine(coarse);
        CHECK(fine.n_subdiv == 2 * coarse.n_subdiv);

        std::set<std::array<long, 3>> fine_keys;
        for (const auto& p : fine.vertices)
            fine_keys.insert({std::lround(p.x() * 1e12), std::lround(p.y() * 1e12),
                              std::lround(p.z() * 1e12)});
        for (const auto& p : coarse.vertices) {
            const std::array<long, 3> key{std::lround(p.x() * 1e12), std::lround(p.y() * 1e12),
                                          std::lround(p.z() * 1e12)};
            CHECK(fine_keys.count(key) == 1);
        }
    }

    const auto l1 = refine(build_uniform_square_mesh(8));
    CHECK(l1.n_subdiv == 16); // the L2 resolution
    const auto r3 = refine(build_uniform_cube_mesh(2));
    CHECK(r3.n_simplices() == 384);
    CHECK(std::abs(total_volume(r3) - 1.0) < 1e-12);
}

TEST_CASE("volume partition across refinement levels") {
    auto mesh = build_uniform_square_mesh(2);
    for (int level = 0; level < 4; ++level) {
        CHECK(std::abs(total_volume(mesh) - 1.0) < 1e-12);
        CHECK(all_positive_volumes(mesh));
        mesh = refine(mesh);
    }
}

TEST_CASE("boundary flags match coordinates") {
    for (const auto& mesh : {build_uniform_square_mesh(5), build_uniform_cube_mesh(3)}) {
        for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
            bool on_boundary = false;
            for (int c = 0; c < mesh.dim; ++c)
                on_boundary |= mesh.vertices[v][c] == 0.0 || mesh.vertices[v][c] == 1.0;
            CHECK(bool(mesh.boundary_vertex[v]) == on_boundary);
        }
    }
}

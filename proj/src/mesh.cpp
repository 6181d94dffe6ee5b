#include "nxfem/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace nxfem {

int SimplicialMesh::vertex_id(int i, int j, int k) const {
    const int s = n_subdiv + 1;
    return dim == 2 ? i + s * j : i + s * (j + s * k);
}

double simplex_signed_volume(int dim, const Point* v) {
    if (dim == 2) {
        const Point a = v[1] - v[0], b = v[2] - v[0];
        return 0.5 * (a.x() * b.y() - a.y() * b.x());
    }
    const Point a = v[1] - v[0], b = v[2] - v[0], c = v[3] - v[0];
    return a.dot(b.cross(c)) / 6.0;
}

namespace {

void orient_positive(SimplicialMesh& mesh) {
    Point v[4];
    for (auto& s : mesh.simplices) {
        for (int k = 0; k < mesh.dim + 1; ++k) v[k] = mesh.vertices[s[k]];
        if (simplex_signed_volume(mesh.dim, v) < 0.0) std::swap(s[mesh.dim - 1], s[mesh.dim]);
    }
}

} // namespace

SimplicialMesh build_uniform_square_mesh(int n_subdiv) {
    if (n_subdiv < 1) throw std::invalid_argument("build_uniform_square_mesh: n_subdiv must be >= 1");
    const int n = n_subdiv;
    SimplicialMesh mesh;
    mesh.dim = 2;
    mesh.n_subdiv = n;
    mesh.h = std::sqrt(2.0) / n;

    mesh.vertices.reserve(std::size_t(n + 1) * (n + 1));
    mesh.boundary_vertex.reserve(mesh.vertices.capacity());
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            mesh.vertices.emplace_back(double(i) / n, double(j) / n, 0.0);
            mesh.boundary_vertex.push_back(i == 0 || i == n || j == 0 || j == n);
        }

    mesh.simplices.reserve(std::size_t(2) * n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int a = mesh.vertex_id(i, j);
            const int b = mesh.vertex_id(i + 1, j);
            const int c = mesh.vertex_id(i + 1, j + 1);
            const int d = mesh.vertex_id(i, j + 1);
            mesh.simplices.push_back({a, b, c, -1}); // below the diagonal a-c
            mesh.simplices.push_back({a, c, d, -1});
        }
    orient_positive(mesh);
    return mesh;
}

SimplicialMesh build_uniform_cube_mesh(int n_subdiv) {
    if (n_subdiv < 1) throw std::invalid_argument("build_uniform_cube_mesh: n_subdiv must be >= 1");
    const int n = n_subdiv;
    SimplicialMesh mesh;
    mesh.dim = 3;
    mesh.n_subdiv = n;
    mesh.h = std::sqrt(3.0) / n;

    mesh.vertices.reserve(std::size_t(n + 1) * (n + 1) * (n + 1));
    mesh.boundary_vertex.reserve(mesh.vertices.capacity());
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i) {
                mesh.vertices.emplace_back(double(i) / n, double(j) / n, double(k) / n);
                mesh.boundary_vertex.push_back(i == 0 || i == n || j == 0 || j == n ||
                                               k == 0 || k == n);
            }

    // Kuhn split: walk from the cell's min corner to its max corner along the
    // three axes in each of the 6 orders; all tets share the main diagonal.
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    mesh.simplices.reserve(std::size_t(6) * n * n * n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (const auto& p : perms) {
                    int c[3] = {i, j, k};
                    std::array<int, 4> tet{};
                    tet[0] = mesh.vertex_id(c[0], c[1], c[2]);
                    for (int s = 0; s < 3; ++s) {
                        ++c[p[s]];
                        tet[s + 1] = mesh.vertex_id(c[0], c[1], c[2]);
                    }
                    mesh.simplices.push_back(tet);
                }
    orient_positive(mesh);
    return mesh;
}

SimplicialMesh refine(const SimplicialMesh& mesh) {
    return mesh.dim == 2 ? build_uniform_square_mesh(2 * mesh.n_subdiv)
                         : build_uniform_cube_mesh(2 * mesh.n_subdiv);
}

} // namespace nxfem

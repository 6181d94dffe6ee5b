#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace nxfem {

using Point = Eigen::Vector3d; // z = 0 in 2D

/// Uniform simplicial triangulation of the unit square/cube.
///
/// Vertices lie on the lattice {0, 1/n, ..., 1}^dim. In 2D every grid cell is
/// split into two triangles by the bottom-left -> top-right diagonal; in 3D
/// every cell is split into six tetrahedra sharing the main diagonal
/// (Kuhn/Freudenthal). Both splits are self-similar under halving the grid
/// spacing, so meshes built at n and 2n are nested.
struct SimplicialMesh {
    int dim = 2;
    int n_subdiv = 0;
    double h = 0.0; // max simplex diameter
    std::vector<Point> vertices;
    std::vector<std::array<int, 4>> simplices; // first dim+1 entries used, [3] = -1 in 2D
    std::vector<std::uint8_t> boundary_vertex;

    int verts_per_simplex() const { return dim + 1; }
    std::size_t n_vertices() const { return vertices.size(); }
    std::size_t n_simplices() const { return simplices.size(); }

    /// Lattice index -> vertex id (i,j,k in [0, n_subdiv]).
    int vertex_id(int i, int j, int k = 0) const;
};

SimplicialMesh build_uniform_square_mesh(int n_subdiv);
SimplicialMesh build_uniform_cube_mesh(int n_subdiv);

/// Rebuild at doubled n_subdiv; coarse vertices reappear among the fine ones.
SimplicialMesh refine(const SimplicialMesh& mesh);

double simplex_signed_volume(int dim, const Point* v);

} // namespace nxfem

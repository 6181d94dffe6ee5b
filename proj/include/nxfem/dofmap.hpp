#pragma once

#include "nxfem/cut.hpp"
#include "nxfem/mesh.hpp"
#include "nxfem/sparse.hpp"

#include <vector>

namespace nxfem {

/// Unknown ordering for the enriched space: standard hat dofs on interior
/// vertices first (block W0), then one enrichment dof per enriched vertex,
/// grouped by the side the enrichment is supported on (W1, then W2). An
/// interior vertex is enriched iff it belongs to at least one cut element;
/// the enrichment of a vertex lying in subdomain s is supported on side 3-s.
struct DofMap {
    int n_std = 0;
    int n_enr1 = 0, n_enr2 = 0;
    std::vector<int> std_dof_of_vertex; // -1 for boundary vertices
    std::vector<int> enr_dof_of_vertex; // -1 if not enriched
    std::vector<int> vertex_of_dof;
    std::vector<std::int8_t> vertex_side;
    std::vector<int> j_gamma_1, j_gamma_2; // enriched vertices with support side 1 / 2

    int n_dofs() const { return n_std + n_enr1 + n_enr2; }
    int n_enr() const { return n_enr1 + n_enr2; }
    bool is_enrichment_dof(int dof) const { return dof >= n_std; }
    /// Side an enrichment dof is supported on.
    int support_side(int dof) const { return dof < n_std + n_enr1 ? 1 : 2; }
    /// Block ranges [begin, end) for W0, W1, W2 (l = 0, 1, 2).
    std::pair<int, int> block_range(int l) const;
};

/// Interior-vertex numbering shared by the standard block and the multigrid
/// hierarchy: vertex -> dof in vertex order, -1 on the boundary.
std::vector<int> standard_dof_numbering(const SimplicialMesh& mesh);

DofMap build_dofmap(const SimplicialMesh& mesh, const CutData& cut);

struct ActiveDof {
    int dof;
    int local_vertex; // hat function index within the element
    bool enrichment;
};

/// Basis functions with nonzero restriction to side `side` of an element.
std::vector<ActiveDof> local_active_basis(const SimplicialMesh& mesh, const CutData& cut,
                                          const DofMap& dofmap, int elem, int side);

/// Point evaluation of a coefficient vector on one side of an element.
double evaluate_on_side(const SimplicialMesh& mesh, const CutData& cut, const DofMap& dofmap,
                        const Eigen::VectorXd& u, int elem, int side, const Point& x);

/// Matrix of the map v -> (1/beta) v in the enriched basis. Row i holds the
/// coefficients of (1/beta) psi_i.
SpMat beta_transform(const DofMap& dofmap, double beta1, double beta2);

} // namespace nxfem

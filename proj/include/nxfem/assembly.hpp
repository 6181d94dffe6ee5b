#pragma once

#include "nxfem/cut.hpp"
#include "nxfem/dofmap.hpp"
#include "nxfem/mesh.hpp"
#include "nxfem/sparse.hpp"

#include <utility>

namespace nxfem {

struct ProblemCoefficients {
    double alpha1 = 1.5, alpha2 = 2.0; // diffusivities, > 0
    double beta1 = 1.0, beta2 = 1.0;   // Henry coefficients, >= 1
    double lambda = 7.0;               // interface penalty
    double f1 = 1.0, f2 = 0.0;         // piecewise constant source

    double alpha(int side) const { return side == 1 ? alpha1 : alpha2; }
    double beta(int side) const { return side == 1 ? beta1 : beta2; }
    double f(int side) const { return side == 1 ? f1 : f2; }
    double alpha_bar() const { return 0.5 * (alpha1 + alpha2); }
};

/// P1 geometry of one simplex: constant hat gradients, measure, diameter.
struct ElementGeometry {
    int dim = 2;
    Point v[4];
    Point grad[4]; // gradient of the hat function of each vertex
    double meas = 0.0;
    double diameter = 0.0;
    double min_edge = 0.0; // penalty length scale; the grid spacing on uniform meshes

    void hat_values(const Point& x, double out[4]) const;
};

ElementGeometry make_element_geometry(int dim, const Point* verts);
ElementGeometry element_geometry(const SimplicialMesh& mesh, int elem);

/// |T| * grad_i . grad_j over the dim+1 hat functions.
Eigen::MatrixXd p1_stiffness(const ElementGeometry& g);

/// Local matrix of the interface form on a cut element, over the local basis
/// [hat_0..hat_d, enr_0..enr_d] (the enrichment of vertex i restricted to
/// side s equals hat_i if the vertex lies on side 3-s and vanishes on side s).
/// With unit beta and include_consistency the form is the symmetric Nitsche
/// bilinear form; with include_consistency = false and unit alpha it is the
/// energy norm (broken gradient plus scaled interface jump).
Eigen::MatrixXd cut_local_matrix(const ElementGeometry& g, const CutElement& ce,
                                 const std::int8_t vertex_sides[4], double alpha1, double alpha2,
                                 double beta1, double beta2, double lambda,
                                 bool include_consistency);

/// Local load vector over the same local basis, piecewise constant source.
Eigen::VectorXd cut_local_rhs(const ElementGeometry& g, const CutElement& ce,
                              const std::int8_t vertex_sides[4], double f1, double f2);

SparseSymMatrix assemble_stiffness(const SimplicialMesh& mesh, const CutData& cut,
                                   const DofMap& dofmap, const ProblemCoefficients& coeffs);

/// Stiffness of the Henry-weighted form (jumps of beta*u, volume alpha*beta).
SparseSymMatrix assemble_stiffness_beta(const SimplicialMesh& mesh, const CutData& cut,
                                        const DofMap& dofmap, const ProblemCoefficients& coeffs);

/// Energy-norm matrix: u' N u = |u|^2_{1,broken} + lambda * h^-1 |[u]|^2_Gamma.
SparseSymMatrix assemble_norm_matrix(const SimplicialMesh& mesh, const CutData& cut,
                                     const DofMap& dofmap, double lambda);

Eigen::VectorXd assemble_rhs(const SimplicialMesh& mesh, const CutData& cut, const DofMap& dofmap,
                             const ProblemCoefficients& coeffs);

/// Principal sub-matrices over the dof blocks and the diagonals.
struct SystemBlocks {
    SpMat A0; // standard block (W0)
    SpMat Ax; // enrichment block (W1 + W2)
    SpMat A1, A2;
    Eigen::VectorXd diagA, diag0, diagx;
    int n0 = 0, nx = 0;
};

SystemBlocks extract_blocks(const SparseSymMatrix& A, const DofMap& dofmap);

} // namespace nxfem

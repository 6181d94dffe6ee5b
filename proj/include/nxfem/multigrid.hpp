#pragma once

#include "nxfem/mesh.hpp"
#include "nxfem/sparse.hpp"

#include <Eigen/Cholesky>

#include <memory>
#include <vector>

namespace nxfem {

/// Geometric V-cycle for the standard P1 block on a nested uniform mesh
/// hierarchy. Coarse operators are Galerkin products P' A P, the smoother is
/// one damped Jacobi sweep before and after coarse correction, the coarsest
/// level is solved exactly. The resulting operator is symmetric positive
/// definite, suitable as a CG preconditioner.
class MGHierarchy {
public:
    struct Level {
        SpMat A;
        Eigen::VectorXd inv_diag;
        SpMat P; // prolongation from the next-coarser level, empty on the coarsest
        SpMat R; // its transpose
    };

    /// meshes ordered coarse to fine, each the uniform refinement of its
    /// predecessor; A0_fine is the standard block on the finest mesh.
    MGHierarchy(std::vector<SimplicialMesh> meshes, const SpMat& A0_fine, double omega = 0.8);

    Eigen::VectorXd v_cycle(const Eigen::VectorXd& r) const;

    int n_levels() const { return int(levels_.size()); }
    const Level& level(int k) const { return levels_[k]; } // 0 = coarsest
    double omega() const { return omega_; }

private:
    Eigen::VectorXd solve_level(int k, const Eigen::VectorXd& r) const;

    std::vector<Level> levels_;
    Eigen::LDLT<Eigen::MatrixXd> coarse_solver_;
    double omega_;
};

/// Nodal P1 interpolation between interior-vertex dofs of two nested uniform
/// meshes: fine vertices at coarse vertex positions copy the value, new
/// vertices average their two coarse edge endpoints.
SpMat prolongation(const SimplicialMesh& coarse, const SimplicialMesh& fine);

} // namespace nxfem

#pragma once

#include "nxfem/assembly.hpp"
#include "nxfem/multigrid.hpp"
#include "nxfem/sparse.hpp"

#include <Eigen/SparseCholesky>

#include <memory>

namespace nxfem {

/// One symmetric Gauss-Seidel sweep as an SPD operator: solves
/// (L+D) D^-1 (L+D)' z = r with A = L + D + L'.
Eigen::VectorXd sgs_apply(const SpMat& A, const Eigen::VectorXd& r);

/// Block preconditioners over the W0 | W1+W2 dof split. The two block solves
/// are independent, so the action is linear, symmetric and positive definite:
///   ExactBlock: exact solves with the standard and enrichment blocks,
///   MixedBlock: exact standard solve, diagonal scaling of the enrichment block,
///   MGBlock:    one V-cycle on the standard block, diagonal or symmetric
///               Gauss-Seidel on the enrichment block,
///   JacobiFull: scaling by the full diagonal,
///   Identity:   no preconditioning.
class Preconditioner {
public:
    enum class Kind { Identity, JacobiFull, ExactBlock, MixedBlock, MGBlock };
    enum class Smoother { Diagonal, SymmetricGaussSeidel };

    static Preconditioner build(Kind kind, const SystemBlocks& blocks,
                                std::shared_ptr<const MGHierarchy> mg = nullptr,
                                Smoother xfem_smoother = Smoother::Diagonal);

    Eigen::VectorXd apply(const Eigen::VectorXd& r) const;
    Eigen::VectorXd operator()(const Eigen::VectorXd& r) const { return apply(r); }

    Kind kind() const { return kind_; }
    int rows() const { return n0_ + nx_; }

    /// The preconditioner as an explicit matrix, for dense condition numbers.
    /// Not available for MGBlock.
    bool has_explicit_matrix() const { return kind_ != Kind::MGBlock; }
    Eigen::MatrixXd explicit_matrix() const;

private:
    Kind kind_ = Kind::Identity;
    int n0_ = 0, nx_ = 0;
    Eigen::VectorXd inv_diag_;  // JacobiFull: full diagonal; blocks: enrichment diagonal
    SpMat A0_, Ax_;
    std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> solver0_, solverx_;
    std::shared_ptr<const MGHierarchy> mg_;
    Smoother smoother_ = Smoother::Diagonal;
};

} // namespace nxfem

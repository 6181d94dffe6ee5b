#pragma once

#include "nxfem/sparse.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nxfem {

enum class ResidualNorm { Euclidean, Preconditioned };

using ApplyFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct SolveReport {
    Eigen::VectorXd x;
    int iterations = 0;
    bool converged = false;
    std::vector<double> resid_norms; // per iteration, starting with the initial residual
    std::vector<double> cg_alpha, cg_beta;
};

/// Preconditioned conjugate gradients with zero initial guess. Stops once the
/// residual has dropped below rel_tol times its initial value (Euclidean norm
/// by default). Records the CG scalars for the Lanczos condition estimate.
/// Throws on loss of positive definiteness in either operator.
SolveReport pcg(const SpMat& A, const Eigen::VectorXd& b, const ApplyFn& precond, double rel_tol,
                int max_iter, ResidualNorm norm_type = ResidualNorm::Euclidean);

SolveReport pcg(const SpMat& A, const Eigen::VectorXd& b, double rel_tol, int max_iter,
                ResidualNorm norm_type = ResidualNorm::Euclidean); // unpreconditioned

/// Extreme Ritz values of the Lanczos tridiagonal harvested from a CG run;
/// a lower bound on the condition number of the preconditioned operator.
/// Needs at least two recorded iterations.
double estimate_condition_lanczos(const SolveReport& report);

/// Condition number from the dense symmetric generalized eigenproblem
/// A z = theta B z with B symmetric positive definite.
double exact_condition_dense(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);
double exact_condition_dense(const Eigen::MatrixXd& A);

/// Saturated Lanczos estimate: runs PCG to a tiny tolerance and reads the
/// condition number off the recorded scalars.
double saturated_lanczos_condition(const SpMat& A, const ApplyFn& precond, int max_iter = 500,
                                   double tol = 1e-12, unsigned seed = 1234);

} // namespace nxfem

#include "nxfem/krylov.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <stdexcept>

namespace nxfem {

SolveReport pcg(const SpMat& A, const Eigen::VectorXd& b, const ApplyFn& precond, double rel_tol,
                int max_iter, ResidualNorm norm_type) {
    const auto n = b.size();
    SolveReport rep;
    rep.x = Eigen::VectorXd::Zero(n);

    Eigen::VectorXd r = b;
    Eigen::VectorXd z = precond ? precond(r) : r;
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    if (rz < 0.0) throw std::runtime_error("pcg: preconditioner is not positive definite");

    auto resid_measure = [&]() {
        return norm_type == ResidualNorm::Euclidean ? r.norm() : std::sqrt(std::max(rz, 0.0));
    };
    const double r0 = resid_measure();
    rep.resid_norms.push_back(r0);
    if (r0 == 0.0) {
        rep.converged = true;
        return rep;
    }

    for (int k = 0; k < max_iter; ++k) {
        const Eigen::VectorXd Ap = A * p;
        const double pAp = p.dot(Ap);
        if (pAp <= 0.0) throw std::runtime_error("pcg: operator is not positive definite");
        const double alpha = rz / pAp;
        rep.cg_alpha.push_back(alpha);

        rep.x += alpha * p;
        r -= alpha * Ap;
        z = precond ? precond(r) : r;
        const double rz_next = r.dot(z);
        if (rz_next < 0.0) throw std::runtime_error("pcg: preconditioner is not positive definite");
        const double beta = rz_next / rz;
        rz = rz_next;

        rep.iterations = k + 1;
        rep.resid_norms.push_back(resid_measure());
        if (rep.resid_norms.back() <= rel_tol * r0) {
            rep.converged = true;
            break;
        }
        rep.cg_beta.push_back(beta);
        p = z + beta * p;
    }
    return rep;
}

SolveReport pcg(const SpMat& A, const Eigen::VectorXd& b, double rel_tol, int max_iter,
                ResidualNorm norm_type) {
    return pcg(A, b, ApplyFn(), rel_tol, max_iter, norm_type);
}

double estimate_condition_lanczos(const SolveReport& report) {
    const int m = int(report.cg_alpha.size());
    if (m < 2) throw std::invalid_argument("estimate_condition_lanczos: need at least 2 iterations");

    Eigen::VectorXd diag(m), subdiag(m - 1);
    for (int k = 0; k < m; ++k) {
        diag[k] = 1.0 / report.cg_alpha[k];
        if (k > 0) diag[k] += report.cg_beta[k - 1] / report.cg_alpha[k - 1];
        if (k < m - 1) subdiag[k] = std::sqrt(report.cg_beta[k]) / report.cg_alpha[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return ev[m - 1] / ev[0];
}

double exact_condition_dense(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    if (A.rows() > 6000)
        throw std::invalid_argument("exact_condition_dense: system too large for dense solve");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return ev[ev.size() - 1] / ev[0];
}

double exact_condition_dense(const Eigen::MatrixXd& A) {
    if (A.rows() > 6000)
        throw std::invalid_argument("exact_condition_dense: system too large for dense solve");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return ev[ev.size() - 1] / ev[0];
}

double saturated_lanczos_condition(const SpMat& A, const ApplyFn& precond, int max_iter,
                                   double tol, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd b(A.rows());
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = dist(rng);
    const SolveReport rep = pcg(A, b, precond, tol, max_iter);
    return estimate_condition_lanczos(rep);
}

} // namespace nxfem

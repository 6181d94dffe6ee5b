#include "nxfem/preconditioner.hpp"

#include <stdexcept>

namespace nxfem {

Eigen::VectorXd sgs_apply(const SpMat& A, const Eigen::VectorXd& r) {
    const int n = int(A.rows());
    Eigen::VectorXd y(n), z(n);
    const int* outer = A.outerIndexPtr();
    const int* inner = A.innerIndexPtr();
    const double* val = A.valuePtr();

    Eigen::VectorXd diag = diagonal_of(A);
    if ((diag.array() == 0.0).any()) throw std::runtime_error("sgs_apply: zero diagonal entry");

    // (L+D) y = r
    for (int i = 0; i < n; ++i) {
        double s = r[i];
        for (int k = outer[i]; k < outer[i + 1]; ++k)
            if (inner[k] < i) s -= val[k] * y[inner[k]];
        y[i] = s / diag[i];
    }
    // (L+D)' z = D y
    for (int i = n - 1; i >= 0; --i) {
        double s = diag[i] * y[i];
        for (int k = outer[i]; k < outer[i + 1]; ++k)
            if (inner[k] > i) s -= val[k] * z[inner[k]];
        z[i] = s / diag[i];
    }
    return z;
}

Preconditioner Preconditioner::build(Kind kind, const SystemBlocks& blocks,
                                     std::shared_ptr<const MGHierarchy> mg,
                                     Smoother xfem_smoother) {
    Preconditioner p;
    p.kind_ = kind;
    p.n0_ = blocks.n0;
    p.nx_ = blocks.nx;
    p.smoother_ = xfem_smoother;

    auto check_positive = [](const Eigen::VectorXd& d, const char* what) {
        if ((d.array() <= 0.0).any())
            throw std::runtime_error(std::string("Preconditioner: non-positive diagonal in ") +
                                     what + " (operator not SPD or penalty too small)");
    };

    switch (kind) {
    case Kind::Identity:
        break;
    case Kind::JacobiFull:
        check_positive(blocks.diagA, "the full diagonal");
        p.inv_diag_ = blocks.diagA.cwiseInverse();
        break;
    case Kind::ExactBlock:
        p.solver0_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
        p.solver0_->compute(Eigen::SparseMatrix<double>(blocks.A0));
        p.solverx_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
        p.solverx_->compute(Eigen::SparseMatrix<double>(blocks.Ax));
        if (p.solver0_->info() != Eigen::Success || p.solverx_->info() != Eigen::Success)
            throw std::runtime_error("Preconditioner: block factorization failed");
        p.A0_ = blocks.A0;
        p.Ax_ = blocks.Ax;
        break;
    case Kind::MixedBlock:
        check_positive(blocks.diagx, "the enrichment block");
        p.solver0_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
        p.solver0_->compute(Eigen::SparseMatrix<double>(blocks.A0));
        if (p.solver0_->info() != Eigen::Success)
            throw std::runtime_error("Preconditioner: standard-block factorization failed");
        p.inv_diag_ = blocks.diagx.cwiseInverse();
        p.A0_ = blocks.A0;
        p.Ax_ = blocks.Ax;
        break;
    case Kind::MGBlock:
        if (!mg) throw std::invalid_argument("Preconditioner: MGBlock needs a multigrid hierarchy");
        if (mg->level(mg->n_levels() - 1).A.rows() != blocks.n0)
            throw std::invalid_argument("Preconditioner: hierarchy does not match the standard block");
        check_positive(blocks.diagx, "the enrichment block");
        p.mg_ = std::move(mg);
        p.inv_diag_ = blocks.diagx.cwiseInverse();
        p.Ax_ = blocks.Ax;
        break;
    }
    return p;
}

Eigen::VectorXd Preconditioner::apply(const Eigen::VectorXd& r) const {
    if (int(r.size()) != rows()) throw std::invalid_argument("Preconditioner::apply: size mismatch");
    switch (kind_) {
    case Kind::Identity:
        return r;
    case Kind::JacobiFull:
        return inv_diag_.cwiseProduct(r);
    default:
        break;
    }

    Eigen::VectorXd z(rows());
    const Eigen::VectorXd r0 = r.head(n0_);
    z.head(n0_) = kind_ == Kind::MGBlock ? mg_->v_cycle(r0)
                                         : Eigen::VectorXd(solver0_->solve(r0));
    if (nx_ > 0) {
        const Eigen::VectorXd rx = r.tail(nx_);
        if (kind_ == Kind::ExactBlock)
            z.tail(nx_) = solverx_->solve(rx);
        else if (smoother_ == Smoother::SymmetricGaussSeidel && kind_ == Kind::MGBlock)
            z.tail(nx_) = sgs_apply(Ax_, rx);
        else
            z.tail(nx_) = inv_diag_.cwiseProduct(rx);
    }
    return z;
}

Eigen::MatrixXd Preconditioner::explicit_matrix() const {
    const int n = rows();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    switch (kind_) {
    case Kind::Identity:
        return Eigen::MatrixXd::Identity(n, n);
    case Kind::JacobiFull:
        B.diagonal() = inv_diag_.cwiseInverse();
        return B;
    case Kind::ExactBlock:
        B.topLeftCorner(n0_, n0_) = Eigen::MatrixXd(A0_);
        B.bottomRightCorner(nx_, nx_) = Eigen::MatrixXd(Ax_);
        return B;
    case Kind::MixedBlock:
        B.topLeftCorner(n0_, n0_) = Eigen::MatrixXd(A0_);
        B.bottomRightCorner(nx_, nx_).diagonal() = inv_diag_.cwiseInverse();
        return B;
    case Kind::MGBlock:
        throw std::logic_error("Preconditioner: MGBlock has no explicit matrix; use the "
                               "Lanczos estimate instead");
    }
    return B;
}

} // namespace nxfem

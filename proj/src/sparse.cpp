#include "nxfem/sparse.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace nxfem {

double max_asymmetry(const SpMat& A) {
    const SpMat D = SpMat(A - SpMat(A.transpose()));
    double m = 0.0;
    for (int k = 0; k < D.outerSize(); ++k)
        for (SpMat::InnerIterator it(D, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

double SparseSymMatrix::verify_symmetry(double rel_tol) {
    double amax = 0.0;
    for (int k = 0; k < mat.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat, k); it; ++it) amax = std::max(amax, std::abs(it.value()));
    const double asym = max_asymmetry(mat);
    symmetry_verified = asym <= rel_tol * std::max(amax, 1e-300);
    return asym;
}

Eigen::VectorXd diagonal_of(const SpMat& A) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(A.rows());
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it)
            if (it.row() == it.col()) d[it.row()] = it.value();
    return d;
}

void write_coordinate(std::ostream& os, const SpMat& A) {
    os << A.rows() << " " << A.cols() << " " << A.nonZeros() << "\n";
    os.precision(17);
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it)
            os << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
}

SpMat read_coordinate(std::istream& is) {
    long rows = 0, cols = 0, nnz = 0;
    if (!(is >> rows >> cols >> nnz)) throw std::runtime_error("read_coordinate: bad header");
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(nnz));
    for (long k = 0; k < nnz; ++k) {
        long i = 0, j = 0;
        double v = 0.0;
        if (!(is >> i >> j >> v)) throw std::runtime_error("read_coordinate: truncated entry list");
        trip.emplace_back(int(i - 1), int(j - 1), v);
    }
    SpMat A(rows, cols);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

} // namespace nxfem

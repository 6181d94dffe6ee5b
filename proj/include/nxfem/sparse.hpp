#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <iosfwd>

namespace nxfem {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>; // CSR layout

/// max |A_ij - A_ji| over all entries
double max_asymmetry(const SpMat& A);

/// Assembled symmetric operator in compressed row storage.
struct SparseSymMatrix {
    SpMat mat;
    bool symmetry_verified = false;

    int rows() const { return int(mat.rows()); }
    int cols() const { return int(mat.cols()); }

    /// Checks max |A_ij - A_ji| <= rel_tol * max|A_ij| and records the result.
    double verify_symmetry(double rel_tol = 1e-12);
};

Eigen::VectorXd diagonal_of(const SpMat& A);

/// Text exchange format: one header line "rows cols nnz", then one
/// "row col value" triplet per line, 1-based indices.
void write_coordinate(std::ostream& os, const SpMat& A);
SpMat read_coordinate(std::istream& is);

} // namespace nxfem

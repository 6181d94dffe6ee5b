#include "nxfem/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nxfem {

void ElementGeometry::hat_values(const Point& x, double out[4]) const {
    out[0] = 1.0;
    for (int i = 1; i < dim + 1; ++i) {
        out[i] = grad[i].dot(x - v[0]);
        out[0] -= out[i];
    }
}

ElementGeometry make_element_geometry(int dim, const Point* verts) {
    ElementGeometry g;
    g.dim = dim;
    for (int i = 0; i < dim + 1; ++i) g.v[i] = verts[i];
    g.meas = std::abs(simplex_signed_volume(dim, verts));

    Eigen::Matrix3d M = Eigen::Matrix3d::Identity();
    for (int i = 1; i < dim + 1; ++i) M.col(i - 1) = verts[i] - verts[0];
    const Eigen::Matrix3d Minv = M.inverse();
    g.grad[0] = Point::Zero();
    for (int i = 1; i < dim + 1; ++i) {
        g.grad[i] = Minv.row(i - 1).transpose();
        g.grad[0] -= g.grad[i];
    }

    g.diameter = 0.0;
    g.min_edge = 1e300;
    for (int i = 0; i < dim + 1; ++i)
        for (int j = i + 1; j < dim + 1; ++j) {
            const double len = (verts[i] - verts[j]).norm();
            g.diameter = std::max(g.diameter, len);
            g.min_edge = std::min(g.min_edge, len);
        }
    return g;
}

ElementGeometry element_geometry(const SimplicialMesh& mesh, int elem) {
    Point verts[4];
    for (int i = 0; i < mesh.verts_per_simplex(); ++i)
        verts[i] = mesh.vertices[mesh.simplices[elem][i]];
    return make_element_geometry(mesh.dim, verts);
}

Eigen::MatrixXd p1_stiffness(const ElementGeometry& g) {
    const int n = g.dim + 1;
    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) K(i, j) = g.meas * g.grad[i].dot(g.grad[j]);
    return K;
}

namespace {

// Quadrature over the facet pieces, exact for quadratics: 2-point Gauss on
// segments, mid-edge rule on triangles.
template <typename F>
void facet_quadrature(int dim, const CutElement& ce, F&& visit) {
    if (dim == 2) {
        const double t0 = 0.5 * (1.0 - 1.0 / std::sqrt(3.0));
        const double t1 = 1.0 - t0;
        for (const auto& seg : ce.facet) {
            const double w = 0.5 * (seg[1] - seg[0]).norm();
            visit(seg[0] + t0 * (seg[1] - seg[0]), w);
            visit(seg[0] + t1 * (seg[1] - seg[0]), w);
        }
    } else {
        for (const auto& tri : ce.facet) {
            const double w = 0.5 * (tri[1] - tri[0]).cross(tri[2] - tri[0]).norm() / 3.0;
            visit(0.5 * (tri[0] + tri[1]), w);
            visit(0.5 * (tri[1] + tri[2]), w);
            visit(0.5 * (tri[2] + tri[0]), w);
        }
    }
}

} // namespace

Eigen::MatrixXd cut_local_matrix(const ElementGeometry& g, const CutElement& ce,
                                 const std::int8_t vertex_sides[4], double alpha1, double alpha2,
                                 double beta1, double beta2, double lambda,
                                 bool include_consistency) {
    const int nv = g.dim + 1;
    const int n = 2 * nv;
    const double alpha[3] = {0.0, alpha1, alpha2};
    const double beta[3] = {0.0, beta1, beta2};
    const double meas[3] = {0.0, ce.meas1, ce.meas2};

    // active(a, side): local basis a = hats [0,nv) then enrichments [nv,2nv)
    auto active = [&](int a, int side) {
        return a < nv ? true : vertex_sides[a - nv] != side;
    };
    auto vertex_of = [&](int a) { return a < nv ? a : a - nv; };

    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    for (int side = 1; side <= 2; ++side) {
        const double c = alpha[side] * beta[side] * meas[side];
        for (int a = 0; a < n; ++a) {
            if (!active(a, side)) continue;
            for (int b = 0; b < n; ++b) {
                if (!active(b, side)) continue;
                K(a, b) += c * g.grad[vertex_of(a)].dot(g.grad[vertex_of(b)]);
            }
        }
    }

    // interface integrals of hat_v and hat_v * hat_w
    Eigen::VectorXd I1 = Eigen::VectorXd::Zero(nv);
    Eigen::MatrixXd I2 = Eigen::MatrixXd::Zero(nv, nv);
    facet_quadrature(g.dim, ce, [&](const Point& x, double w) {
        double hat[4];
        g.hat_values(x, hat);
        for (int i = 0; i < nv; ++i) {
            I1[i] += w * hat[i];
            for (int j = 0; j < nv; ++j) I2(i, j) += w * hat[i] * hat[j];
        }
    });

    // [beta psi_a] and {alpha grad psi_a . n} on the facet
    std::vector<double> jump(n), avg(n);
    for (int a = 0; a < n; ++a) {
        const double x1 = active(a, 1) ? 1.0 : 0.0;
        const double x2 = active(a, 2) ? 1.0 : 0.0;
        jump[a] = beta[1] * x1 - beta[2] * x2;
        avg[a] = (ce.kappa1 * alpha[1] * x1 + ce.kappa2 * alpha[2] * x2) *
                 g.grad[vertex_of(a)].dot(ce.normal);
    }

    const double pen = lambda / g.min_edge;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (include_consistency)
                K(a, b) -= avg[b] * jump[a] * I1[vertex_of(a)] + avg[a] * jump[b] * I1[vertex_of(b)];
            K(a, b) += pen * jump[a] * jump[b] * I2(vertex_of(a), vertex_of(b));
        }
    return K;
}

Eigen::VectorXd cut_local_rhs(const ElementGeometry& g, const CutElement& ce,
                              const std::int8_t vertex_sides[4], double f1, double f2) {
    const int nv = g.dim + 1;
    Eigen::VectorXd r = Eigen::VectorXd::Zero(2 * nv);
    const double f[3] = {0.0, f1, f2};
    for (int side = 1; side <= 2; ++side) {
        const auto& subs = side == 1 ? ce.sub1 : ce.sub2;
        for (const auto& s : subs) {
            const double w = std::abs(simplex_signed_volume(g.dim, s.data())) / nv;
            double sum[4] = {0, 0, 0, 0};
            double hat[4];
            for (int p = 0; p < nv; ++p) {
                g.hat_values(s[p], hat);
                for (int i = 0; i < nv; ++i) sum[i] += hat[i];
            }
            for (int i = 0; i < nv; ++i) {
                r[i] += f[side] * w * sum[i];
                if (vertex_sides[i] != side) r[nv + i] += f[side] * w * sum[i];
            }
        }
    }
    return r;
}

namespace {

// Maps the cut-kernel local basis [hats | enrichments] to global dofs, -1 if absent.
void local_dofs_of_cut_element(const SimplicialMesh& mesh, const DofMap& dofmap, int elem,
                               int nv, int local_to_global[8]) {
    for (int i = 0; i < nv; ++i) {
        const int v = mesh.simplices[elem][i];
        local_to_global[i] = dofmap.std_dof_of_vertex[v];
        local_to_global[nv + i] = dofmap.enr_dof_of_vertex[v];
    }
}

SparseSymMatrix assemble_operator(const SimplicialMesh& mesh, const CutData& cut,
                                  const DofMap& dofmap, double alpha1, double alpha2,
                                  double beta1, double beta2, double lambda,
                                  bool include_consistency) {
    const int nv = mesh.verts_per_simplex();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(mesh.n_simplices() * std::size_t(nv) * nv);

    const double alpha[3] = {0.0, alpha1, alpha2};
    const double beta[3] = {0.0, beta1, beta2};
    std::int8_t sides[4];
    int l2g[8];
    for (std::size_t e = 0; e < mesh.n_simplices(); ++e) {
        const ElementGeometry g = element_geometry(mesh, int(e));
        if (!cut.is_cut(int(e))) {
            const int s = cut.elem_class[e] == ElemClass::Inside1 ? 1 : 2;
            const Eigen::MatrixXd K = alpha[s] * beta[s] * p1_stiffness(g);
            for (int i = 0; i < nv; ++i) {
                const int di = dofmap.std_dof_of_vertex[mesh.simplices[e][i]];
                if (di < 0) continue;
                for (int j = 0; j < nv; ++j) {
                    const int dj = dofmap.std_dof_of_vertex[mesh.simplices[e][j]];
                    if (dj >= 0) trip.emplace_back(di, dj, K(i, j));
                }
            }
        } else {
            const CutElement& ce = cut.cut_elems[cut.cut_index[e]];
            for (int i = 0; i < nv; ++i) sides[i] = cut.vertex_side[mesh.simplices[e][i]];
            const Eigen::MatrixXd K = cut_local_matrix(g, ce, sides, alpha1, alpha2, beta1,
                                                       beta2, lambda, include_consistency);
            local_dofs_of_cut_element(mesh, dofmap, int(e), nv, l2g);
            for (int a = 0; a < 2 * nv; ++a) {
                if (l2g[a] < 0) continue;
                for (int b = 0; b < 2 * nv; ++b)
                    if (l2g[b] >= 0) trip.emplace_back(l2g[a], l2g[b], K(a, b));
            }
        }
    }

    SparseSymMatrix A;
    A.mat.resize(dofmap.n_dofs(), dofmap.n_dofs());
    A.mat.setFromTriplets(trip.begin(), trip.end());
    A.verify_symmetry();
    return A;
}

} // namespace

SparseSymMatrix assemble_stiffness(const SimplicialMesh& mesh, const CutData& cut,
                                   const DofMap& dofmap, const ProblemCoefficients& coeffs) {
    return assemble_operator(mesh, cut, dofmap, coeffs.alpha1, coeffs.alpha2, 1.0, 1.0,
                             coeffs.lambda, true);
}

SparseSymMatrix assemble_stiffness_beta(const SimplicialMesh& mesh, const CutData& cut,
                                        const DofMap& dofmap, const ProblemCoefficients& coeffs) {
    return assemble_operator(mesh, cut, dofmap, coeffs.alpha1, coeffs.alpha2, coeffs.beta1,
                             coeffs.beta2, coeffs.lambda, true);
}

SparseSymMatrix assemble_norm_matrix(const SimplicialMesh& mesh, const CutData& cut,
                                     const DofMap& dofmap, double lambda) {
    return assemble_operator(mesh, cut, dofmap, 1.0, 1.0, 1.0, 1.0, lambda, false);
}

Eigen::VectorXd assemble_rhs(const SimplicialMesh& mesh, const CutData& cut, const DofMap& dofmap,
                             const ProblemCoefficients& coeffs) {
    const int nv = mesh.verts_per_simplex();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dofmap.n_dofs());
    std::int8_t sides[4];
    int l2g[8];
    for (std::size_t e = 0; e < mesh.n_simplices(); ++e) {
        const ElementGeometry g = element_geometry(mesh, int(e));
        if (!cut.is_cut(int(e))) {
            const double f = coeffs.f(cut.elem_class[e] == ElemClass::Inside1 ? 1 : 2);
            for (int i = 0; i < nv; ++i) {
                const int d = dofmap.std_dof_of_vertex[mesh.simplices[e][i]];
                if (d >= 0) b[d] += f * g.meas / nv;
            }
        } else {
            const CutElement& ce = cut.cut_elems[cut.cut_index[e]];
            for (int i = 0; i < nv; ++i) sides[i] = cut.vertex_side[mesh.simplices[e][i]];
            const Eigen::VectorXd r = cut_local_rhs(g, ce, sides, coeffs.f1, coeffs.f2);
            local_dofs_of_cut_element(mesh, dofmap, int(e), nv, l2g);
            for (int a = 0; a < 2 * nv; ++a)
                if (l2g[a] >= 0) b[l2g[a]] += r[a];
        }
    }
    return b;
}

SystemBlocks extract_blocks(const SparseSymMatrix& A, const DofMap& dofmap) {
    SystemBlocks blocks;
    blocks.n0 = dofmap.n_std;
    blocks.nx = dofmap.n_enr();
    const int n0 = blocks.n0, n1 = dofmap.n_enr1;

    std::vector<Eigen::Triplet<double>> t0, tx, t1, t2;
    for (int k = 0; k < A.mat.outerSize(); ++k)
        for (SpMat::InnerIterator it(A.mat, k); it; ++it) {
            const int i = int(it.row()), j = int(it.col());
            if (i < n0 && j < n0) t0.emplace_back(i, j, it.value());
            if (i >= n0 && j >= n0) {
                tx.emplace_back(i - n0, j - n0, it.value());
                if (i < n0 + n1 && j < n0 + n1) t1.emplace_back(i - n0, j - n0, it.value());
                if (i >= n0 + n1 && j >= n0 + n1)
                    t2.emplace_back(i - n0 - n1, j - n0 - n1, it.value());
            }
        }
    blocks.A0.resize(n0, n0);
    blocks.A0.setFromTriplets(t0.begin(), t0.end());
    blocks.Ax.resize(blocks.nx, blocks.nx);
    blocks.Ax.setFromTriplets(tx.begin(), tx.end());
    blocks.A1.resize(n1, n1);
    blocks.A1.setFromTriplets(t1.begin(), t1.end());
    blocks.A2.resize(blocks.nx - n1, blocks.nx - n1);
    blocks.A2.setFromTriplets(t2.begin(), t2.end());

    blocks.diagA = diagonal_of(A.mat);
    blocks.diag0 = blocks.diagA.head(n0);
    blocks.diagx = blocks.diagA.tail(blocks.nx);
    return blocks;
}

} // namespace nxfem

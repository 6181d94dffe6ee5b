#include "nxfem/multigrid.hpp"

#include "nxfem/dofmap.hpp"

#include <stdexcept>

namespace nxfem {

SpMat prolongation(const SimplicialMesh& coarse, const SimplicialMesh& fine) {
    if (fine.dim != coarse.dim || fine.n_subdiv != 2 * coarse.n_subdiv)
        throw std::invalid_argument("prolongation: meshes are not a nested refinement pair");

    const std::vector<int> cdof = standard_dof_numbering(coarse);
    const std::vector<int> fdof = standard_dof_numbering(fine);
    int nc = 0, nf = 0;
    for (int d : cdof) nc += (d >= 0);
    for (int d : fdof) nf += (d >= 0);

    const int n = fine.n_subdiv;
    const int kmax = fine.dim == 2 ? 0 : n;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(nf) * 2);

    for (int k = 0; k <= kmax; ++k)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i) {
                const int fv = fine.vertex_id(i, j, k);
                if (fdof[fv] < 0) continue;
                const int pi = i / 2, pj = j / 2, pk = k / 2;
                if (i % 2 == 0 && j % 2 == 0 && k % 2 == 0) {
                    const int cv = coarse.vertex_id(pi, pj, pk);
                    if (cdof[cv] >= 0) trip.emplace_back(fdof[fv], cdof[cv], 1.0);
                } else {
                    // midpoint of the coarse edge from the rounded-down to the
                    // rounded-up lattice point; odd-parity diagonals are edges
                    // of the min-to-max diagonal splits used by the builders
                    const int qi = (i + 1) / 2, qj = (j + 1) / 2, qk = (k + 1) / 2;
                    const int ca = coarse.vertex_id(pi, pj, pk);
                    const int cb = coarse.vertex_id(qi, qj, qk);
                    if (cdof[ca] >= 0) trip.emplace_back(fdof[fv], cdof[ca], 0.5);
                    if (cdof[cb] >= 0) trip.emplace_back(fdof[fv], cdof[cb], 0.5);
                }
            }

    SpMat P(nf, nc);
    P.setFromTriplets(trip.begin(), trip.end());
    return P;
}

MGHierarchy::MGHierarchy(std::vector<SimplicialMesh> meshes, const SpMat& A0_fine, double omega)
    : omega_(omega) {
    if (meshes.empty()) throw std::invalid_argument("MGHierarchy: empty mesh hierarchy");

    levels_.resize(meshes.size());
    levels_.back().A = A0_fine;
    for (int k = int(meshes.size()) - 1; k > 0; --k) {
        levels_[k].P = prolongation(meshes[k - 1], meshes[k]);
        levels_[k].R = SpMat(levels_[k].P.transpose());
        levels_[k - 1].A = levels_[k].R * levels_[k].A * levels_[k].P;
    }
    for (auto& lvl : levels_) {
        const Eigen::VectorXd d = diagonal_of(lvl.A);
        if ((d.array() <= 0.0).any())
            throw std::runtime_error("MGHierarchy: non-positive diagonal in coarse operator");
        lvl.inv_diag = d.cwiseInverse();
    }
    coarse_solver_.compute(Eigen::MatrixXd(levels_.front().A));
}

Eigen::VectorXd MGHierarchy::solve_level(int k, const Eigen::VectorXd& r) const {
    if (k == 0) return coarse_solver_.solve(r);
    const Level& lvl = levels_[k];

    Eigen::VectorXd x = omega_ * lvl.inv_diag.cwiseProduct(r); // pre-smooth from zero
    const Eigen::VectorXd resid = r - lvl.A * x;
    x += lvl.P * solve_level(k - 1, lvl.R * resid);
    x += omega_ * lvl.inv_diag.cwiseProduct(r - lvl.A * x); // post-smooth
    return x;
}

Eigen::VectorXd MGHierarchy::v_cycle(const Eigen::VectorXd& r) const {
    return solve_level(int(levels_.size()) - 1, r);
}

} // namespace nxfem

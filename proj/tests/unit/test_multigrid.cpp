#include "nxfem/multigrid.hpp"

#include "nxfem/dofmap.hpp"
#include "nxfem/krylov.hpp"
#include "nxfem/levelset.hpp"
#include "nxfem/preconditioner.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nxfem;

namespace {

SpMat standard_block(const SimplicialMesh& mesh, double alpha1 = 1.5, double alpha2 = 2.0) {
    RoundedBoxLevelSet ls;
    ls.dim = mesh.dim;
    const double eps = std::exp2(-20);
    ls.center = Point::Zero();
    for (int c = 0; c < mesh.dim; ++c) ls.center[c] = 0.5 + eps;
    // a coarse 4-cell mesh needs a smaller box to keep cut elements away
    // from the boundary ring
    if (mesh.n_subdiv <= 4) ls.half_side = 0.15;
    const auto cut = compute_cut(mesh, vertex_levelset(mesh, ls));
    const auto dm = build_dofmap(mesh, cut);
    ProblemCoefficients coeffs;
    coeffs.alpha1 = alpha1;
    coeffs.alpha2 = alpha2;
    coeffs.lambda = 4.0 * coeffs.alpha_bar();
    const auto A = assemble_stiffness(mesh, cut, dm, coeffs);
    return extract_blocks(A, dm).A0;
}

Eigen::VectorXd random_vector(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uni(rng);
    return v;
}

} // namespace

TEST_CASE("prolongation rows: interior fine vertices with interior parents sum to one") {
    const auto coarse = build_uniform_square_mesh(2);
    const auto fine = build_uniform_square_mesh(4);
    const SpMat P = prolongation(coarse, fine);
    CHECK(P.rows() == 9);
    CHECK(P.cols() == 1);

    const auto cdof = standard_dof_numbering(coarse);
    const auto fdof = standard_dof_numbering(fine);
    const Eigen::VectorXd sums = P * Eigen::VectorXd::Ones(P.cols());
    // fine vertices whose coarse parents are all interior
    for (int j = 0; j <= 4; ++j)
        for (int i = 0; i <= 4; ++i) {
            const int fv = fine.vertex_id(i, j);
            if (fdof[fv] < 0) continue;
            const bool a_int = cdof[coarse.vertex_id(i / 2, j / 2)] >= 0;
            const bool b_int = cdof[coarse.vertex_id((i + 1) / 2, (j + 1) / 2)] >= 0;
            if (a_int && b_int) CHECK(sums[fdof[fv]] == doctest::Approx(1.0).epsilon(1e-14));
        }

    CHECK_THROWS(prolongation(coarse, coarse));
    CHECK_THROWS(prolongation(coarse, build_uniform_square_mesh(6)));
}

TEST_CASE("prolongation embeds coarse functions exactly") {
    // P1 interpolation between nested spaces: prolongate coarse coefficients
    // and compare point values of both representations
    for (int dim : {2, 3}) {
        const auto coarse = dim == 2 ? build_uniform_square_mesh(4) : build_uniform_cube_mesh(2);
        const auto fine = refine(coarse);
        const SpMat P = prolongation(coarse, fine);

        const auto cdof = standard_dof_numbering(coarse);
        const auto fdof = standard_dof_numbering(fine);
        const Eigen::VectorXd uc = random_vector(int(P.cols()), 5 + dim);
        const Eigen::VectorXd uf = P * uc;

        // evaluate at every fine vertex: the coarse P1 interpolant must agree
        // with the fine nodal value
        auto coarse_value = [&](const Point& x) {
            // locate the containing coarse element by brute force
            for (std::size_t e = 0; e < coarse.n_simplices(); ++e) {
                const auto g = element_geometry(coarse, int(e));
                double hat[4];
                g.hat_values(x, hat);
                bool inside = true;
                for (int i = 0; i < dim + 1; ++i) inside &= hat[i] >= -1e-12;
                if (!inside) continue;
                double val = 0.0;
                for (int i = 0; i < dim + 1; ++i) {
                    const int d = cdof[coarse.simplices[e][i]];
                    if (d >= 0) val += uc[d] * hat[i];
                }
                return val;
            }
            FAIL("point not located in the coarse mesh");
            return 0.0;
        };
        for (std::size_t v = 0; v < fine.n_vertices(); ++v) {
            if (fdof[v] < 0) continue;
            CHECK(uf[fdof[v]] == doctest::Approx(coarse_value(fine.vertices[v])).epsilon(1e-12));
        }
    }
}

TEST_CASE("galerkin coarse operators stay symmetric positive definite") {
    std::vector<SimplicialMesh> meshes{build_uniform_square_mesh(2), build_uniform_square_mesh(4),
                                       build_uniform_square_mesh(8)};
    const SpMat A0 = standard_block(meshes.back());
    const MGHierarchy mg(meshes, A0);

    for (int k = 0; k < mg.n_levels(); ++k) {
        const auto& A = mg.level(k).A;
        CHECK(max_asymmetry(A) < 1e-12);
        CHECK((diagonal_of(A).array() > 0.0).all());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(A),
                                                          Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues()[0] > 0.0);
    }
}

TEST_CASE("v-cycle basics: zero input, single level is an exact solve") {
    std::vector<SimplicialMesh> one{build_uniform_square_mesh(4)};
    const SpMat A0 = standard_block(one.back());
    const MGHierarchy mg(one, A0);

    CHECK(mg.v_cycle(Eigen::VectorXd::Zero(A0.rows())).norm() == 0.0);

    const Eigen::VectorXd r = random_vector(int(A0.rows()), 3);
    const Eigen::VectorXd z = mg.v_cycle(r);
    CHECK((A0 * z - r).norm() < 1e-10 * r.norm());
}

TEST_CASE("two-level error propagation contracts with rate below one half") {
    std::vector<SimplicialMesh> meshes{build_uniform_square_mesh(2), build_uniform_square_mesh(4)};
    const SpMat A0 = standard_block(meshes.back());
    const MGHierarchy mg(meshes, A0);

    const int n = int(A0.rows());
    Eigen::MatrixXd E(n, n);
    const Eigen::MatrixXd Ad(A0);
    for (int j = 0; j < n; ++j) {
        const Eigen::VectorXd ej = Eigen::MatrixXd::Identity(n, n).col(j);
        E.col(j) = ej - mg.v_cycle(Ad * ej); // I - C^-1 A applied to e_j
    }
    const Eigen::VectorXcd ev = E.eigenvalues();
    double rho = 0.0;
    for (int i = 0; i < n; ++i) rho = std::max(rho, std::abs(ev[i]));
    CHECK(rho < 0.5);
}

TEST_CASE("v-cycle is a symmetric positive definite operator") {
    std::vector<SimplicialMesh> meshes{build_uniform_square_mesh(2), build_uniform_square_mesh(4),
                                       build_uniform_square_mesh(8)};
    const SpMat A0 = standard_block(meshes.back());
    const MGHierarchy mg(meshes, A0);

    for (int k = 0; k < 20; ++k) {
        const Eigen::VectorXd r = random_vector(int(A0.rows()), 600 + k);
        const Eigen::VectorXd s = random_vector(int(A0.rows()), 700 + k);
        const double a = mg.v_cycle(r).dot(s);
        const double b = mg.v_cycle(s).dot(r);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(std::abs(a), std::abs(b)));
    }
    for (int k = 0; k < 100; ++k) {
        const Eigen::VectorXd r = random_vector(int(A0.rows()), 800 + k);
        CHECK(mg.v_cycle(r).dot(r) > 0.0);
    }
}

TEST_CASE("preconditioned counts grow slowly with refinement") {
    std::vector<SimplicialMesh> meshes{build_uniform_square_mesh(2)};
    int prev = 0;
    std::vector<int> counts;
    for (int n : {8, 16, 32}) {
        while (meshes.back().n_subdiv < n) meshes.push_back(refine(meshes.back()));
        const SpMat A0 = standard_block(meshes.back());
        const MGHierarchy mg(meshes, A0);
        const Eigen::VectorXd b = Eigen::VectorXd::Ones(A0.rows());
        const auto rep =
            pcg(A0, b, [&mg](const Eigen::VectorXd& r) { return mg.v_cycle(r); }, 1e-6, 200);
        CHECK(rep.converged);
        counts.push_back(rep.iterations);
        (void)prev;
    }
    CHECK(counts[1] <= counts[0] + 2);
    CHECK(counts[2] <= counts[1] + 2);
}

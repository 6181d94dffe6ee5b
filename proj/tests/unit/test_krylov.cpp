#include "nxfem/krylov.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace nxfem;

namespace {

SpMat sparse_diag(const Eigen::VectorXd& d) {
    SpMat A(d.size(), d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) A.insert(i, i) = d[i];
    A.makeCompressed();
    return A;
}

SpMat random_spd(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = uni(rng);
    const Eigen::MatrixXd S = M * M.transpose() + n * Eigen::MatrixXd::Identity(n, n);
    return SpMat(S.sparseView());
}

} // namespace

TEST_CASE("identity system converges in one iteration") {
    const SpMat A = sparse_diag(Eigen::VectorXd::Ones(10));
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(10, 1.0, 10.0);
    const auto rep = pcg(A, b, 1e-6, 100);
    CHECK(rep.iterations == 1);
    CHECK(rep.converged);
    CHECK((rep.x - b).norm() < 1e-12);
}

TEST_CASE("two distinct eigenvalues finish in exactly two iterations") {
    Eigen::VectorXd d(2);
    d << 1.0, 4.0;
    const SpMat A = sparse_diag(d);
    Eigen::VectorXd b(2);
    b << 1.0, 1.0;
    const auto rep = pcg(A, b, 1e-10, 100);
    CHECK(rep.iterations == 2);
    CHECK((rep.x - Eigen::VectorXd(b.cwiseQuotient(d))).norm() < 1e-12);
}

TEST_CASE("zero right-hand side needs no iterations") {
    const SpMat A = random_spd(8, 1);
    const auto rep = pcg(A, Eigen::VectorXd::Zero(8), 1e-6, 10);
    CHECK(rep.iterations == 0);
    CHECK(rep.converged);
}

TEST_CASE("indefinite operator is detected") {
    Eigen::VectorXd d(3);
    d << 1.0, -1.0, 2.0;
    const SpMat A = sparse_diag(d);
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(3);
    CHECK_THROWS(pcg(A, b, 1e-6, 100));
}

TEST_CASE("energy error decreases monotonically") {
    const SpMat A = random_spd(40, 7);
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd b(40);
    for (int i = 0; i < 40; ++i) b[i] = uni(rng);
    const Eigen::VectorXd exact = Eigen::MatrixXd(A).ldlt().solve(b);

    double prev = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= 10; ++it) {
        const auto rep = pcg(A, b, 0.0, it);
        const Eigen::VectorXd err = rep.x - exact;
        const double a_norm = std::sqrt(err.dot(A * err));
        CHECK(a_norm <= prev + 1e-12);
        prev = a_norm;
    }
}

TEST_CASE("iteration counts are deterministic") {
    const SpMat A = random_spd(30, 11);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(30);
    const auto r1 = pcg(A, b, 1e-9, 500);
    const auto r2 = pcg(A, b, 1e-9, 500);
    CHECK(r1.iterations == r2.iterations);
    CHECK((r1.x - r2.x).norm() == 0.0);
}

TEST_CASE("lanczos estimate exhausts a three-point spectrum") {
    Eigen::VectorXd d(3);
    d << 1.0, 2.0, 4.0;
    const SpMat A = sparse_diag(d);
    Eigen::VectorXd b(3);
    b << 1.0, 1.0, 1.0; // components along every eigenvector
    const auto rep = pcg(A, b, 0.0, 3);
    REQUIRE(rep.cg_alpha.size() == 3);
    CHECK(estimate_condition_lanczos(rep) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("lanczos needs at least two iterations") {
    const SpMat A = sparse_diag(Eigen::VectorXd::Ones(4));
    const auto rep = pcg(A, Eigen::VectorXd::Ones(4), 1e-6, 10);
    CHECK(rep.iterations == 1);
    CHECK_THROWS(estimate_condition_lanczos(rep));
}

TEST_CASE("lanczos bounds the dense condition number from below") {
    const SpMat A = random_spd(50, 21);
    const double dense = exact_condition_dense(Eigen::MatrixXd(A));

    const auto rep = pcg(A, Eigen::VectorXd::Ones(50), 1e-14, 50);
    const double est = estimate_condition_lanczos(rep);
    CHECK(est <= dense + 1e-8);
    CHECK(est == doctest::Approx(dense).epsilon(0.05));

    // lower bound also holds midway through the recurrence
    for (int it = 5; it <= 25; it += 10) {
        const auto part = pcg(A, Eigen::VectorXd::Ones(50), 0.0, it);
        CHECK(estimate_condition_lanczos(part) <= dense + 1e-8);
    }
}

TEST_CASE("dense generalized condition numbers") {
    const SpMat A = random_spd(25, 33);
    const Eigen::MatrixXd Ad(A);
    CHECK(exact_condition_dense(Ad, Ad) == doctest::Approx(1.0).epsilon(1e-10));

    // with B = diag(A) the result matches the explicitly scaled problem
    const Eigen::VectorXd d = Ad.diagonal();
    const Eigen::MatrixXd Dinvsqrt = d.cwiseSqrt().cwiseInverse().asDiagonal();
    const double expect = exact_condition_dense(Dinvsqrt * Ad * Dinvsqrt);
    const double got = exact_condition_dense(Ad, Eigen::MatrixXd(d.asDiagonal()));
    CHECK(got == doctest::Approx(expect).epsilon(1e-10));

    CHECK_THROWS(exact_condition_dense(Eigen::MatrixXd::Identity(6001, 6001)));
}

TEST_CASE("saturated lanczos agrees with the dense route") {
    const SpMat A = random_spd(60, 55);
    const double dense = exact_condition_dense(Eigen::MatrixXd(A));
    const double est = saturated_lanczos_condition(A, ApplyFn(), 200);
    CHECK(est <= dense + 1e-8);
    CHECK(est == doctest::Approx(dense).epsilon(0.02));
}

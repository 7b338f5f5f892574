// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "cqff/overlaps.hpp"
#include "cqff/speceig.hpp"
#include "test_util.hpp"

using namespace cqff;

namespace {

Mat random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = {gauss(rng), gauss(rng)};
  }
  return (m + Mat(m.adjoint())) / 2.0;
}

Mat random_pd(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = {gauss(rng), gauss(rng)};
  }
  return m * m.adjoint() + 0.1 * Mat::Identity(n, n);
}

}  // namespace

TEST_CASE("identity metric reduces to the ordinary eigenproblem") {
  Mat d = Mat::Zero(3, 3);
  d.diagonal() << 3.0, 1.0, 2.0;
  const EigenSolution sol = solve_generalized(d, Mat::Identity(3, 3));
  REQUIRE(sol.rank == 3);
  CHECK(sol.lambdas(0) == doctest::Approx(1.0));
  CHECK(sol.lambdas(1) == doctest::Approx(2.0));
  CHECK(sol.lambdas(2) == doctest::Approx(3.0));
  // columns are permuted identity columns up to phase
  for (int j = 0; j < 3; ++j) {
    CHECK(sol.V.col(j).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  }
}

TEST_CASE("H3 K=1 on |10>: rank-2 metric, eigenvalues -2 and 2") {
  const MomentSet ms = build_moment_set(builtin_h3(), 1);
  const StateVector phi = prepare_basis_state("10");
  ExpectationCache cache(phi, {});
  const Mat e = assemble_E(ms, cache);
  const Mat d = assemble_D(ms, builtin_h3(), cache);

  const EigenSolution sol = solve_generalized(d, e);
  REQUIRE(sol.rank == 2);
  CHECK(sol.lambdas(0) == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(sol.lambdas(1) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(sol.dropped_spectrum.size() == 1);
}

TEST_CASE("random full-rank problems match a direct dense solve") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);  // 2..8
    const Mat d = random_hermitian(rng, n);
    const Mat e = random_pd(rng, n);
    const EigenSolution sol = solve_generalized(d, e);
    REQUIRE(sol.rank == n);

    // trusted oracle: E^{-1/2} D E^{-1/2}
    Eigen::SelfAdjointEigenSolver<Mat> es(e);
    const Mat inv_sqrt = es.operatorInverseSqrt();
    const Eigen::VectorXd expected =
        Eigen::SelfAdjointEigenSolver<Mat>(inv_sqrt * d * inv_sqrt).eigenvalues();
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(sol.lambdas(i) - expected(i)) < 1e-9);
    }
  }
}

TEST_CASE("E-orthonormality of the returned eigenvectors") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const Mat d = random_hermitian(rng, n);
    const Mat e = random_pd(rng, n);
    const EigenSolution sol = solve_generalized(d, e);
    const Mat gram = sol.V.adjoint() * e * sol.V;
    CHECK(test::max_abs_diff(gram, Mat::Identity(sol.rank, sol.rank)) < 1e-8);
  }
}

TEST_CASE("QCQP consistency: lambda_min is the constrained minimum") {
  std::mt19937_64 rng(47);
  const int n = 5;
  const Mat d = random_hermitian(rng, n);
  const Mat e = random_pd(rng, n);
  const EigenSolution sol = solve_generalized(d, e);

  double vmin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < sol.rank; ++j) {
    vmin = std::min(vmin, (sol.V.col(j).adjoint() * d * sol.V.col(j))(0, 0).real());
  }
  CHECK(vmin == doctest::Approx(sol.lambdas(0)).epsilon(1e-9));

  std::normal_distribution<double> gauss;
  for (int probe = 0; probe < 50; ++probe) {
    Vec w(n);
    for (int i = 0; i < n; ++i) w(i) = {gauss(rng), gauss(rng)};
    w /= std::sqrt((w.adjoint() * e * w)(0, 0).real());
    CHECK((w.adjoint() * d * w)(0, 0).real() >= sol.lambdas(0) - 1e-8);
  }
}

TEST_CASE("exact-mode spectrum equals the projected Hamiltonian spectrum") {
  struct Case {
    HamiltonianSpec h;
    int K;
  };
  const Case cases[] = {{builtin_h1(2), 1}, {builtin_h2(4), 2}, {builtin_h3(), 2}};
  for (const auto& c : cases) {
    const MomentSet ms = build_moment_set(c.h, c.K);
    const StateVector phi = prepare_layered_random_state(c.h.n_qubits, 5, 51);
    ExpectationCache cache(phi, {});
    const Mat e = assemble_E(ms, cache);
    const Mat d = assemble_D(ms, c.h, cache);
    const EigenSolution sol = solve_generalized(d, e);

    // dense projector oracle: H restricted to span{ops[i]|phi>}
    Mat basis(phi.amplitudes.size(), ms.size());
    for (int i = 0; i < ms.size(); ++i) {
      basis.col(i) = apply_pauli(ms.ops[i], phi).amplitudes;
    }
    Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeThinU);
    int rank = 0;
    while (rank < svd.singularValues().size() &&
           svd.singularValues()(rank) > 1e-10 * svd.singularValues()(0)) {
      ++rank;
    }
    const Mat q = svd.matrixU().leftCols(rank);
    const Mat restricted = q.adjoint() * dense_hamiltonian(c.h) * q;
    const Eigen::VectorXd expected =
        Eigen::SelfAdjointEigenSolver<Mat>((restricted + Mat(restricted.adjoint())) / 2.0)
            .eigenvalues();

    REQUIRE(sol.rank == rank);
    for (int i = 0; i < rank; ++i) {
      CHECK(std::abs(sol.lambdas(i) - expected(i)) < 1e-9);
    }
  }
}

TEST_CASE("degenerate metric and contract errors") {
  const Mat zero = Mat::Zero(2, 2);
  CHECK_THROWS_AS(solve_generalized(Mat::Identity(2, 2), zero), std::runtime_error);

  Mat non_hermitian = Mat::Zero(2, 2);
  non_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(solve_generalized(non_hermitian, Mat::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("negative sampled-metric eigenvalues go to the dropped set") {
  Mat e = Mat::Identity(3, 3);
  e(2, 2) = -1e-6;  // shot-noise artifact
  const Mat d = Mat::Identity(3, 3);
  const EigenSolution sol = solve_generalized(d, e, 1e-4);
  CHECK(sol.rank == 2);
  REQUIRE(sol.dropped_spectrum.size() == 1);
  CHECK(sol.dropped_spectrum(0) < 0.0);
}

TEST_CASE("completeness defect") {
  // full-rank: defect ~ 0
  std::mt19937_64 rng(53);
  const Mat d = random_hermitian(rng, 4);
  const Mat e = random_pd(rng, 4);
  const EigenSolution sol = solve_generalized(d, e);
  CHECK(completeness_defect(sol, e) < 1e-8);

  // rank-deficient case: defect small on Col(E) probes
  const MomentSet ms = build_moment_set(builtin_h3(), 1);
  const StateVector phi = prepare_basis_state("10");
  ExpectationCache cache(phi, {});
  const Mat e2 = assemble_E(ms, cache);
  const Mat d2 = assemble_D(ms, builtin_h3(), cache);
  const EigenSolution sol2 = solve_generalized(d2, e2);
  CHECK(completeness_defect(sol2, e2) < 1e-8);

  // a nullspace probe keeps its full norm (outside the contract)
  Eigen::SelfAdjointEigenSolver<Mat> es(e2);
  const Vec null_probe = es.eigenvectors().col(0);  // smallest eigenvalue ~ 0
  const Mat projector = sol2.V * (sol2.V.adjoint() * e2);
  CHECK((projector * null_probe - null_probe).norm() == doctest::Approx(1.0).epsilon(1e-6));
}

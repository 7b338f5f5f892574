// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include "cqff/perturb.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cqff {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double spectral_norm(const Mat& m) {
  return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

// Cholesky reduction A = L^{-1} D L^{-dag} of Dv = lambda Ev with E = L L^dag.
// Returns false when E is not positive definite.
bool whiten_cholesky(const Mat& D, const Mat& E, Mat& A) {
  Eigen::LLT<Mat> llt(E);
  if (llt.info() != Eigen::Success) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(E);
  if (es.eigenvalues()(0) <= 0.0) return false;
  const Mat l = llt.matrixL();
  const Mat li = l.triangularView<Eigen::Lower>().solve(Mat::Identity(E.rows(), E.cols()));
  A = li * D * li.adjoint();
  A = (A + Mat(A.adjoint())) / 2.0;
  return true;
}

}  // namespace

void BoundReport::finalize() {
  holds = preconditions_met;
  for (double v : lhs) {
    if (v > rhs + 1e-12) holds = false;
  }
}

BoundReport stewart_bound(const Mat& D, const Mat& E, const Mat& D_t, const Mat& E_t) {
  BoundReport r;
  r.bound_name = "stewart";
  Mat a, a_t;
  if (!whiten_cholesky(D, E, a)) {
    r.precondition_reason = "E is not positive definite";
    return r;
  }
  if (!whiten_cholesky(D_t, E_t, a_t)) {
    r.precondition_reason = "perturbed E is not positive definite";
    return r;
  }
  r.preconditions_met = true;

  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Mat>(a).eigenvalues();
  const Eigen::VectorXd ev_t = Eigen::SelfAdjointEigenSolver<Mat>(a_t).eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    r.lhs.push_back(std::abs(ev(i) - ev_t(i)));
  }
  r.rhs = spectral_norm(a - a_t);
  r.finalize();
  return r;
}

BoundReport bauer_fike(const Mat& E, const Mat& E_t) {
  BoundReport r;
  r.bound_name = "bauer-fike";
  if ((E - E.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
    r.precondition_reason = "E is not Hermitian";
    return r;
  }
  r.preconditions_met = true;

  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Mat>(E).eigenvalues();
  const Eigen::VectorXd ev_t = Eigen::SelfAdjointEigenSolver<Mat>(E_t).eigenvalues();
  for (int j = 0; j < ev_t.size(); ++j) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ev.size(); ++i) {
      nearest = std::min(nearest, std::abs(ev_t(j) - ev(i)));
    }
    r.lhs.push_back(nearest);
  }
  r.rhs = spectral_norm(E_t - E);
  r.finalize();
  return r;
}

BoundReport davis_kahan(const Mat& D, const Mat& E, const Mat& D_t, const Mat& E_t,
                        int split_index, double delta_margin) {
  BoundReport r;
  r.bound_name = "davis-kahan";
  if (split_index < 1 || split_index >= D.rows()) {
    r.precondition_reason = "split index out of range";
    return r;
  }
  if (delta_margin <= 0.0) {
    r.precondition_reason = "delta margin must be positive";
    return r;
  }
  Mat a, a_t;
  if (!whiten_cholesky(D, E, a) || !whiten_cholesky(D_t, E_t, a_t)) {
    r.precondition_reason = "a metric is not positive definite";
    return r;
  }

  Eigen::SelfAdjointEigenSolver<Mat> es(a), es_t(a_t);
  const int n = static_cast<int>(a.rows());
  const int l = split_index;
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(l - 1);
  // Spectral gap: eig(A~_1) must avoid (lo - delta, hi + delta).
  for (int j = l; j < n; ++j) {
    const double mu = es_t.eigenvalues()(j);
    if (mu > lo - delta_margin && mu < hi + delta_margin) {
      r.precondition_reason = "perturbed complementary spectrum enters the protected interval";
      return r;
    }
  }
  r.preconditions_met = true;

  const Mat v0 = es.eigenvectors().leftCols(l);
  const Mat v1_t = es_t.eigenvectors().rightCols(n - l);
  r.lhs.push_back(spectral_norm(v0.adjoint() * v1_t));
  r.rhs = spectral_norm(v0.adjoint() * (a_t - a) * v1_t) / delta_margin;
  r.finalize();
  return r;
}

std::complex<double> error_kernel(const EigenSolution& sol, const EigenSolution& sol_t,
                                  const Mat& E, const Mat& E_t, const Vec& alpha0, double T) {
  if (sol.V.rows() != sol_t.V.rows() || E.rows() != sol.V.rows() || E_t.rows() != sol.V.rows()) {
    throw std::invalid_argument("error_kernel: solutions live on different moment sets");
  }
  std::complex<double> acc = 0.0;
  for (int j = 0; j < sol.rank; ++j) {
    for (int jp = 0; jp < sol_t.rank; ++jp) {
      const std::complex<double> phase =
          std::exp(-kI * (sol_t.lambdas(jp) - sol.lambdas(j)) * T);
      const std::complex<double> left =
          (alpha0.adjoint() * E * sol.V.col(j))(0, 0);
      const std::complex<double> mid =
          (sol.V.col(j).adjoint() * E * sol_t.V.col(jp))(0, 0);
      const std::complex<double> right =
          (sol_t.V.col(jp).adjoint() * E_t * alpha0)(0, 0);
      acc += phase * left * mid * right;
    }
  }
  return acc;
}

}  // namespace cqff

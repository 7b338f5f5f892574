// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include "cqff/speceig.hpp"

#include <stdexcept>
#include <vector>

namespace cqff {

EigenSolution solve_generalized(const Mat& D, const Mat& E, double cutoff_rel) {
  if (D.rows() != D.cols() || E.rows() != E.cols() || D.rows() != E.rows()) {
    throw std::invalid_argument("D and E must be square and of equal size");
  }
  if ((D - D.adjoint()).cwiseAbs().maxCoeff() > 1e-8 ||
      (E - E.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("D and E must be Hermitian to 1e-8");
  }

  Eigen::SelfAdjointEigenSolver<Mat> es(E);
  const Eigen::VectorXd sigma = es.eigenvalues();  // ascending
  const double sigma_max = sigma(sigma.size() - 1);
  if (sigma_max <= 0.0) {
    throw std::runtime_error("degenerate metric: E has no positive eigenvalue");
  }
  const double cutoff = cutoff_rel * sigma_max;

  std::vector<int> kept;
  std::vector<double> dropped;
  for (int i = 0; i < sigma.size(); ++i) {
    // Negative sigmas are shot-noise artifacts; they are dropped, never
    // absolute-valued into the kept space.
    if (sigma(i) >= cutoff) {
      kept.push_back(i);
    } else {
      dropped.push_back(sigma(i));
    }
  }
  if (kept.empty()) {
    throw std::runtime_error("degenerate metric: every direction of E is below the cutoff");
  }

  const int rank = static_cast<int>(kept.size());
  Mat u_kept(E.rows(), rank);
  Eigen::VectorXd inv_sqrt(rank);
  for (int k = 0; k < rank; ++k) {
    u_kept.col(k) = es.eigenvectors().col(kept[k]);
    inv_sqrt(k) = 1.0 / std::sqrt(sigma(kept[k]));
  }

  const Mat w = u_kept * inv_sqrt.asDiagonal();  // whitening map
  const Mat a = w.adjoint() * D * w;             // Hermitian by construction
  Eigen::SelfAdjointEigenSolver<Mat> es_a((a + a.adjoint()) / 2.0);

  EigenSolution sol;
  sol.lambdas = es_a.eigenvalues();
  sol.V = w * es_a.eigenvectors();
  sol.rank = rank;
  sol.cutoff_used = cutoff;
  sol.dropped_spectrum =
      Eigen::Map<const Eigen::VectorXd>(dropped.data(), static_cast<Eigen::Index>(dropped.size()));
  return sol;
}

double completeness_defect(const EigenSolution& sol, const Mat& E) {
  // Probe with an orthonormal basis of Col(E) at the solution's cutoff.
  Eigen::SelfAdjointEigenSolver<Mat> es(E);
  const Mat projector = sol.V * (sol.V.adjoint() * E);
  double worst = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) < sol.cutoff_used) continue;
    const Vec probe = es.eigenvectors().col(i);
    worst = std::max(worst, (projector * probe - probe).norm());
  }
  return worst;
}

}  // namespace cqff

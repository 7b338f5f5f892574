// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "cqff/backend.hpp"

namespace cqff {

/// Column-space solution of D v = lambda E v with a rank-deficient,
/// possibly noise-perturbed metric E.
struct EigenSolution {
  Eigen::VectorXd lambdas;        // ascending, length rank
  Mat V;                          // L x rank, V^dag E V = I
  int rank = 0;
  double cutoff_used = 0.0;       // absolute threshold on E eigenvalues
  Eigen::VectorXd dropped_spectrum;  // E eigenvalues below the cutoff
};

/// Eigendecompose E, keep directions with sigma >= cutoff_rel * sigma_max
/// (negative sigmas from shot noise go to the dropped set), whiten D on the
/// kept space and solve the resulting Hermitian problem.
///
/// Throws std::invalid_argument when inputs are not Hermitian to 1e-8 and
/// std::runtime_error when every direction of E falls below the cutoff.
EigenSolution solve_generalized(const Mat& D, const Mat& E, double cutoff_rel = 1e-10);

/// Max over a probe basis of Col(E) of ||(sum_j v_j v_j^dag E) x - x||.
/// ~0 for exact inputs; probes in Null(E) are outside the contract.
double completeness_defect(const EigenSolution& sol, const Mat& E);

}  // namespace cqff

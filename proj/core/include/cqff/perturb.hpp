// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "cqff/speceig.hpp"

namespace cqff {

/// Outcome of one matrix-perturbation bound check. Precondition failures are
/// data, not exceptions.
struct BoundReport {
  std::string bound_name;
  bool preconditions_met = false;
  std::string precondition_reason;
  std::vector<double> lhs;  // per-eigenvalue deviations (or subspace norm)
  double rhs = 0.0;
  bool holds = false;

  void finalize();
};

/// |lambda_i - lambda_i~| <= ||A - A~||_2 after the Cholesky reduction of
/// both generalized problems to ordinary Hermitian form. Requires E and E~
/// positive definite.
BoundReport stewart_bound(const Mat& D, const Mat& E, const Mat& D_t, const Mat& E_t);

/// Every eigenvalue of E~ is within ||E~ - E||_2 of some eigenvalue of E.
BoundReport bauer_fike(const Mat& E, const Mat& E_t);

/// sin-theta bound between the low eigenspace of A (first split_index
/// directions) and the complementary eigenspace of A~, valid when the
/// relevant spectra are separated by delta_margin.
BoundReport davis_kahan(const Mat& D, const Mat& E, const Mat& D_t, const Mat& E_t,
                        int split_index, double delta_margin);

/// alpha0^dag K alpha0 with
/// K = sum_{jj'} e^{-i(lt_{j'} - l_j) T} E v_j v_j^dag E vt_{j'} vt_{j'}^dag E~.
/// Equals the overlap between the noiseless and perturbed fast-forwarded
/// states.
std::complex<double> error_kernel(const EigenSolution& sol, const EigenSolution& sol_t,
                                  const Mat& E, const Mat& E_t, const Vec& alpha0, double T);

}  // namespace cqff

// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "cqff/moments.hpp"
#include "cqff/speceig.hpp"

namespace cqff {

/// Coefficient vector of the hybrid ansatz at one instant. Time is
/// dimensionless (hbar = 1).
struct HybridState {
  const MomentSet* moment_set = nullptr;
  Vec alpha;
  double t = 0.0;
};

/// alpha(0) = (1, 0, ..., 0); the ansatz starts at |phi> itself.
Vec initial_alpha(const MomentSet& ms);

/// E-renormalize a custom start vector: returns alpha / sqrt(alpha^dag E alpha).
Vec renormalize_alpha(const Vec& alpha, const Mat& E);

/// alpha(T) = sum_j e^{-i lambda_j T} v_j (v_j^dag E alpha0). Cost is
/// independent of T. Throws std::runtime_error when alpha0 lies dominantly
/// in the nullspace of E (such a vector is the zero ket).
Vec fast_forward(const EigenSolution& sol, const Mat& E, const Vec& alpha0, double T);

/// |<psi_exact(T) | sum_i alpha_i ops[i] phi>|^2 against the dense oracle.
double fidelity_vs_exact(const HamiltonianSpec& h, const StateVector& phi, const MomentSet& ms,
                         const Vec& alpha_T, double T);

/// Dense statevector of the hybrid ansatz.
StateVector hybrid_to_dense(const MomentSet& ms, const StateVector& phi, const Vec& alpha);

struct TraceSample {
  double observable = 0.0;
  double im_diagnostic = 0.0;  // |Im| of alpha^dag M alpha, ~0 in exact mode
};

/// Re(alpha^dag M_O alpha) per time point; the imaginary part is kept as a
/// diagnostic rather than an error, sampled-mode matrices produce small ones.
std::vector<TraceSample> observable_trace(const std::vector<Vec>& alpha_path, const Mat& M_O);

/// alpha = sum_j (1 - i lambda_j dt)^N v_j (v_j^dag E alpha0). Deliberately
/// not renormalized; the product factor is only approximately unitary.
Vec vff_mode(const EigenSolution& sol, const Mat& E, const Vec& alpha0, double delta_t, long N);

}  // namespace cqff

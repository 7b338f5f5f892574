// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include "cqff/evolve.hpp"

#include <cmath>
#include <stdexcept>

namespace cqff {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

// Spectral coordinates of alpha0; errors out when the E-weight of alpha0 is
// negligible (the vector is then the zero ket up to nullspace content).
Vec spectral_coords(const EigenSolution& sol, const Mat& E, const Vec& alpha0) {
  const Vec beta = sol.V.adjoint() * (E * alpha0);
  const double e_weight = std::abs((alpha0.adjoint() * E * alpha0)(0, 0).real());
  if (e_weight < 1e-8 || beta.squaredNorm() < 1e-8 * std::max(1.0, e_weight)) {
    throw std::runtime_error(
        "initial coefficient vector lies in the nullspace of E (zero ket)");
  }
  return beta;
}
}  // namespace

Vec initial_alpha(const MomentSet& ms) {
  if (ms.size() < 1 || !ms.ops[0].is_identity()) {
    throw std::invalid_argument("moment set must start with the identity operator");
  }
  Vec alpha = Vec::Zero(ms.size());
  alpha(0) = 1.0;
  return alpha;
}

Vec renormalize_alpha(const Vec& alpha, const Mat& E) {
  const double w = (alpha.adjoint() * E * alpha)(0, 0).real();
  if (w <= 1e-12) {
    throw std::runtime_error("cannot normalize: alpha^dag E alpha is not positive");
  }
  return alpha / std::sqrt(w);
}

Vec fast_forward(const EigenSolution& sol, const Mat& E, const Vec& alpha0, double T) {
  const Vec beta = spectral_coords(sol, E, alpha0);
  Vec out = Vec::Zero(alpha0.size());
  for (int j = 0; j < sol.rank; ++j) {
    out += std::exp(-kI * sol.lambdas(j) * T) * beta(j) * sol.V.col(j);
  }
  return out;
}

StateVector hybrid_to_dense(const MomentSet& ms, const StateVector& phi, const Vec& alpha) {
  if (alpha.size() != ms.size()) {
    throw std::invalid_argument("coefficient vector length does not match moment set");
  }
  StateVector out;
  out.n_qubits = phi.n_qubits;
  out.amplitudes = Vec::Zero(phi.amplitudes.size());
  for (int i = 0; i < ms.size(); ++i) {
    out.amplitudes += alpha(i) * apply_pauli(ms.ops[i], phi).amplitudes;
  }
  return out;
}

double fidelity_vs_exact(const HamiltonianSpec& h, const StateVector& phi, const MomentSet& ms,
                         const Vec& alpha_T, double T) {
  const StateVector exact = exact_evolve(h, phi, T);
  const StateVector ansatz = hybrid_to_dense(ms, phi, alpha_T);
  return std::norm(exact.amplitudes.dot(ansatz.amplitudes));
}

std::vector<TraceSample> observable_trace(const std::vector<Vec>& alpha_path, const Mat& M_O) {
  if ((M_O - M_O.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("observable overlap matrix must be Hermitian");
  }
  std::vector<TraceSample> out;
  out.reserve(alpha_path.size());
  for (const Vec& alpha : alpha_path) {
    const std::complex<double> v = (alpha.adjoint() * M_O * alpha)(0, 0);
    out.push_back({v.real(), std::abs(v.imag())});
  }
  return out;
}

Vec vff_mode(const EigenSolution& sol, const Mat& E, const Vec& alpha0, double delta_t, long N) {
  if (delta_t <= 0.0) throw std::invalid_argument("delta_t must be positive");
  const Vec beta = spectral_coords(sol, E, alpha0);
  Vec out = Vec::Zero(alpha0.size());
  for (int j = 0; j < sol.rank; ++j) {
    const std::complex<double> factor = std::pow(1.0 - kI * sol.lambdas(j) * delta_t,
                                                 static_cast<double>(N));
    out += factor * beta(j) * sol.V.col(j);
  }
  return out;
}

}  // namespace cqff

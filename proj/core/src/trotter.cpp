// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include "cqff/trotter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqff {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::numbers::sqrt2;
  m << s, s, s, -s;
  return m;
}

Eigen::Matrix2cd y_basis_rotation() {
  Eigen::Matrix2cd sdg;
  sdg << 1, 0, 0, -kI;
  return hadamard() * sdg;
}

// Full 2^n matrix of a gate, built by embedding the local action.
Mat gate_matrix(const Gate& g, int n) {
  const std::int64_t dim = std::int64_t{1} << n;
  if (g.kind == Gate::Kind::global_phase) {
    return std::exp(-kI * g.angle) * Mat::Identity(dim, dim);
  }
  if (g.kind == Gate::Kind::cnot) {
    Mat m = Mat::Zero(dim, dim);
    const std::int64_t cbit = std::int64_t{1} << (n - g.q1);
    const std::int64_t tbit = std::int64_t{1} << (n - g.q2);
    for (std::int64_t b = 0; b < dim; ++b) {
      m((b & cbit) ? (b ^ tbit) : b, b) = 1.0;
    }
    return m;
  }
  Eigen::Matrix2cd u;
  if (g.kind == Gate::Kind::rz) {
    u << std::exp(-kI * (g.angle / 2)), 0, 0, std::exp(kI * (g.angle / 2));
  } else {
    u = g.u;
  }
  Mat m = Mat::Zero(dim, dim);
  const std::int64_t bit = std::int64_t{1} << (n - g.q1);
  for (std::int64_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    m(b, b) = u(0, 0);
    m(b, b | bit) = u(0, 1);
    m(b | bit, b) = u(1, 0);
    m(b | bit, b | bit) = u(1, 1);
  }
  return m;
}

// rho -> (1-p) rho + p * (maximally mixed on the qubit pair). Realized as
// the uniform average over the 16 two-qubit Pauli conjugations.
void depolarize_pair(Mat& rho, int n, int qa, int qb, double p) {
  Mat mixed = Mat::Zero(rho.rows(), rho.cols());
  for (int la = 0; la < 4; ++la) {
    for (int lb = 0; lb < 4; ++lb) {
      PauliString pair;
      pair.n_qubits = n;
      auto set_letter = [&](int q, int letter) {
        const std::uint64_t bit = std::uint64_t{1} << (n - q);
        if (letter == 1 || letter == 2) pair.x_bits |= bit;
        if (letter == 2 || letter == 3) pair.z_bits |= bit;
      };
      set_letter(qa, la);
      set_letter(qb, lb);
      const Mat pm = dense_pauli(pair);
      mixed += pm * rho * pm;
    }
  }
  rho = (1.0 - p) * rho + (p / 16.0) * mixed;
}

}  // namespace

std::vector<Gate> trotter_step(const HamiltonianSpec& h, const TrotterConfig& cfg) {
  if (cfg.delta_t <= 0.0) throw std::invalid_argument("delta_t must be positive");
  if (!h.is_hermitian()) throw std::invalid_argument("Trotter needs a Hermitian spec");

  std::vector<Gate> gates;
  for (const auto& term : h.terms) {
    const double beta = term.coeff.real();
    std::vector<int> support;
    for (int j = 1; j <= h.n_qubits; ++j) {
      if (term.op.support() & (std::uint64_t{1} << (h.n_qubits - j))) support.push_back(j);
    }
    if (support.empty()) {
      gates.push_back({Gate::Kind::global_phase, 0, 0, {}, beta * cfg.delta_t});
      continue;
    }

    std::vector<Gate> basis, basis_inv;
    for (int q : support) {
      const std::uint64_t bit = std::uint64_t{1} << (h.n_qubits - q);
      const bool x = term.op.x_bits & bit, z = term.op.z_bits & bit;
      if (x) {
        const Eigen::Matrix2cd u = (x && z) ? y_basis_rotation() : hadamard();
        basis.push_back({Gate::Kind::single, q, 0, u, 0.0});
        basis_inv.push_back({Gate::Kind::single, q, 0, u.adjoint(), 0.0});
      }
    }

    gates.insert(gates.end(), basis.begin(), basis.end());
    for (std::size_t k = 0; k + 1 < support.size(); ++k) {
      gates.push_back({Gate::Kind::cnot, support[k], support[k + 1], {}, 0.0});
    }
    gates.push_back({Gate::Kind::rz, support.back(), 0, {}, 2.0 * beta * cfg.delta_t});
    for (std::size_t k = support.size() - 1; k-- > 0;) {
      gates.push_back({Gate::Kind::cnot, support[k], support[k + 1], {}, 0.0});
    }
    gates.insert(gates.end(), basis_inv.rbegin(), basis_inv.rend());
  }
  return gates;
}

DensityMatrix trotter_simulate(const HamiltonianSpec& h, const StateVector& psi0, long steps,
                               const TrotterConfig& cfg) {
  if (h.n_qubits != psi0.n_qubits) throw std::invalid_argument("dimension mismatch");
  if (h.n_qubits > kDenseQubitLimit) throw std::invalid_argument("dense limit exceeded");

  const std::vector<Gate> step = trotter_step(h, cfg);

  DensityMatrix rho;
  rho.n_qubits = h.n_qubits;

  std::vector<Mat> mats;
  mats.reserve(step.size());
  for (const Gate& g : step) mats.push_back(gate_matrix(g, h.n_qubits));

  if (cfg.noise_p == 0.0) {
    const std::int64_t dim = psi0.amplitudes.size();
    Mat u_step = Mat::Identity(dim, dim);
    for (const Mat& u : mats) u_step = u * u_step;
    Vec psi = psi0.amplitudes;
    for (long s = 0; s < steps; ++s) psi = u_step * psi;
    rho.entries = psi * psi.adjoint();
    return rho;
  }

  rho.entries = psi0.amplitudes * psi0.amplitudes.adjoint();
  return trotter_advance(h, rho, steps, cfg);
}

DensityMatrix trotter_advance(const HamiltonianSpec& h, const DensityMatrix& rho, long steps,
                              const TrotterConfig& cfg) {
  if (h.n_qubits != rho.n_qubits) throw std::invalid_argument("dimension mismatch");
  const std::vector<Gate> step = trotter_step(h, cfg);
  std::vector<Mat> mats;
  mats.reserve(step.size());
  for (const Gate& g : step) mats.push_back(gate_matrix(g, h.n_qubits));

  DensityMatrix out = rho;
  for (long s = 0; s < steps; ++s) {
    for (std::size_t g = 0; g < step.size(); ++g) {
      out.entries = mats[g] * out.entries * mats[g].adjoint();
      if (cfg.noise_p > 0.0 && step[g].kind == Gate::Kind::cnot) {
        depolarize_pair(out.entries, h.n_qubits, step[g].q1, step[g].q2, cfg.noise_p);
      }
    }
  }
  return out;
}

double trotter_fidelity(const DensityMatrix& rho, const HamiltonianSpec& h,
                        const StateVector& psi0, double t) {
  const StateVector psi_t = exact_evolve(h, psi0, t);
  return (psi_t.amplitudes.adjoint() * rho.entries * psi_t.amplitudes)(0, 0).real();
}

}  // namespace cqff

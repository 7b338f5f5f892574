// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include "cqff/backend.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cqff {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

void check_dense_limit(int n) {
  if (n > kDenseQubitLimit) {
    throw std::invalid_argument("dense path limited to " + std::to_string(kDenseQubitLimit) +
                                " qubits, got " + std::to_string(n));
  }
}

// Apply a 2x2 unitary to 1-based qubit j of a statevector.
void apply_single_qubit(Vec& amps, int n, int j, const Eigen::Matrix2cd& u) {
  const std::int64_t bit = std::int64_t{1} << (n - j);
  const std::int64_t dim = amps.size();
  for (std::int64_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    const cplx a0 = amps[b];
    const cplx a1 = amps[b | bit];
    amps[b] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[b | bit] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void apply_cnot(Vec& amps, int n, int control, int target) {
  const std::int64_t cbit = std::int64_t{1} << (n - control);
  const std::int64_t tbit = std::int64_t{1} << (n - target);
  const std::int64_t dim = amps.size();
  for (std::int64_t b = 0; b < dim; ++b) {
    if ((b & cbit) && !(b & tbit)) {
      std::swap(amps[b], amps[b | tbit]);
    }
  }
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::Matrix2cd rz(double theta) {
  Eigen::Matrix2cd m;
  m << std::exp(-kI * (theta / 2)), 0, 0, std::exp(kI * (theta / 2));
  return m;
}

Eigen::Matrix2cd ry(double theta) {
  Eigen::Matrix2cd m;
  m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
  return m;
}

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::numbers::sqrt2;
  m << s, s, s, -s;
  return m;
}

// Rotates the Y eigenbasis into the computational basis: H * Sdg.
Eigen::Matrix2cd y_basis_rotation() {
  Eigen::Matrix2cd sdg;
  sdg << 1, 0, 0, -kI;
  return hadamard() * sdg;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t v = base + 0x9e3779b97f4a7c15ull * (stream + 1);
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  return v ^ (v >> 31);
}

StateVector prepare_layered_random_state(int n_qubits, int n_layers, std::uint64_t rng_seed) {
  if (n_qubits < 1) throw std::invalid_argument("need at least 1 qubit");
  check_dense_limit(n_qubits);
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes = Vec::Zero(std::int64_t{1} << n_qubits);
  s.amplitudes[0] = 1.0;

  std::mt19937_64 rng(derive_seed(rng_seed, 0x616e7361747aull));
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int layer = 0; layer < n_layers; ++layer) {
    for (int j = 1; j <= n_qubits; ++j) {
      const double a = two_pi * uniform01(rng);
      const double b = two_pi * uniform01(rng);
      const double c = two_pi * uniform01(rng);
      apply_single_qubit(s.amplitudes, n_qubits, j, rz(c) * ry(b) * rz(a));
    }
    for (int j = 1; j < n_qubits; ++j) {
      apply_cnot(s.amplitudes, n_qubits, j, j + 1);
    }
  }
  s.amplitudes /= s.amplitudes.norm();
  return s;
}

StateVector prepare_basis_state(const std::string& bitstring) {
  const int n = static_cast<int>(bitstring.size());
  if (n < 1) throw std::invalid_argument("empty bitstring");
  check_dense_limit(n);
  std::int64_t index = 0;
  for (char c : bitstring) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bad character '" + std::string(1, c) + "' in bitstring");
    }
    index = (index << 1) | (c == '1');
  }
  StateVector s;
  s.n_qubits = n;
  s.amplitudes = Vec::Zero(std::int64_t{1} << n);
  s.amplitudes[index] = 1.0;
  return s;
}

StateVector apply_pauli(const PauliString& p, const StateVector& s) {
  if (p.n_qubits != s.n_qubits) {
    throw std::invalid_argument("apply_pauli dimension mismatch");
  }
  static const cplx units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  // i^{phase + y_count} X^x Z^z, with Z acting first.
  const cplx front = units[(p.phase_exp + p.y_count()) & 3];
  StateVector out;
  out.n_qubits = s.n_qubits;
  out.amplitudes = Vec(s.amplitudes.size());
  const std::int64_t dim = s.amplitudes.size();
  for (std::int64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(static_cast<std::uint64_t>(b) & p.z_bits) & 1) ? -1.0 : 1.0;
    out.amplitudes[static_cast<std::int64_t>(b ^ static_cast<std::int64_t>(p.x_bits))] =
        front * sign * s.amplitudes[b];
  }
  return out;
}

double expectation(const StateVector& s, const PauliString& p, const EstimatorConfig& cfg) {
  if (!p.is_canonical()) {
    throw std::invalid_argument("expectation requires a canonical (phase-free) Pauli string");
  }
  if (p.n_qubits != s.n_qubits) {
    throw std::invalid_argument("expectation dimension mismatch");
  }

  if (cfg.mode == EstimatorMode::exact) {
    const StateVector ps = apply_pauli(p, s);
    return s.amplitudes.dot(ps.amplitudes).real();
  }

  if (cfg.shots < 1) throw std::invalid_argument("sampled mode needs shots >= 1");
  if (p.support() == 0) return 1.0;  // identity needs no sampling

  // Rotate each support qubit into the measurement basis of its letter.
  Vec rotated = s.amplitudes;
  const int n = s.n_qubits;
  for (int j = 1; j <= n; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << (n - j);
    const bool x = p.x_bits & bit, z = p.z_bits & bit;
    if (x && z) {
      apply_single_qubit(rotated, n, j, y_basis_rotation());
    } else if (x) {
      apply_single_qubit(rotated, n, j, hadamard());
    }
  }

  const std::int64_t dim = rotated.size();
  Eigen::VectorXd cdf(dim);
  double acc = 0.0;
  for (std::int64_t b = 0; b < dim; ++b) {
    acc += std::norm(rotated[b]);
    cdf[b] = acc;
  }

  std::mt19937_64 rng(derive_seed(cfg.rng_seed, canonical_hash(p)));
  const std::uint64_t support = p.support();
  std::int64_t sum = 0;
  for (int shot = 0; shot < cfg.shots; ++shot) {
    const double u = uniform01(rng) * acc;
    const double* it = std::lower_bound(cdf.data(), cdf.data() + dim, u);
    const std::uint64_t outcome = static_cast<std::uint64_t>(it - cdf.data());
    sum += (std::popcount(outcome & support) & 1) ? -1 : 1;
  }
  return static_cast<double>(sum) / static_cast<double>(cfg.shots);
}

StateVector exact_evolve(const HamiltonianSpec& h, const StateVector& s, double t) {
  if (h.n_qubits != s.n_qubits) {
    throw std::invalid_argument("exact_evolve dimension mismatch");
  }
  check_dense_limit(h.n_qubits);
  const Mat hmat = dense_hamiltonian(h);
  Eigen::SelfAdjointEigenSolver<Mat> es(hmat);
  const Vec phases =
      (-kI * t * es.eigenvalues().cast<cplx>().array()).exp().matrix();
  StateVector out;
  out.n_qubits = s.n_qubits;
  out.amplitudes = es.eigenvectors() *
                   (phases.asDiagonal() * (es.eigenvectors().adjoint() * s.amplitudes));
  return out;
}

Mat dense_pauli(const PauliString& p) {
  check_dense_limit(p.n_qubits);
  Eigen::Matrix2cd letters[4];
  letters[0] << 1, 0, 0, 1;       // I
  letters[1] << 0, 1, 1, 0;       // X
  letters[2] << 0, -kI, kI, 0;    // Y
  letters[3] << 1, 0, 0, -1;      // Z
  Mat m = Mat::Identity(1, 1);
  for (int j = p.n_qubits; j >= 1; --j) {
    const std::uint64_t bit = std::uint64_t{1} << (p.n_qubits - j);
    const bool x = p.x_bits & bit, z = p.z_bits & bit;
    const Eigen::Matrix2cd& letter = letters[x ? (z ? 2 : 1) : (z ? 3 : 0)];
    Mat next(m.rows() * 2, m.cols() * 2);
    next << letter(0, 0) * m, letter(0, 1) * m, letter(1, 0) * m, letter(1, 1) * m;
    m = std::move(next);
  }
  return p.phase() * m;
}

Mat dense_hamiltonian(const HamiltonianSpec& h) {
  check_dense_limit(h.n_qubits);
  const std::int64_t dim = std::int64_t{1} << h.n_qubits;
  Mat m = Mat::Zero(dim, dim);
  for (const auto& term : h.terms) {
    m += term.coeff * dense_pauli(term.op);
  }
  return m;
}

}  // namespace cqff

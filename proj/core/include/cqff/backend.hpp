// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>

#include "cqff/hamiltonian.hpp"
#include "cqff/pauli.hpp"

namespace cqff {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Largest qubit count for which dense 2^n x 2^n oracles are allowed.
inline constexpr int kDenseQubitLimit = 12;

struct StateVector {
  int n_qubits = 0;
  Vec amplitudes;

  double norm() const { return amplitudes.norm(); }
};

struct DensityMatrix {
  int n_qubits = 0;
  Mat entries;
};

enum class EstimatorMode { exact, sampled };

struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::exact;
  int shots = 8192;
  std::uint64_t rng_seed = 0;
};

/// |00...0> with single-qubit SU(2) rotations (seeded-uniform Euler angles in
/// [0, 2pi)) on every qubit followed by a CNOT ladder (k -> k+1), repeated
/// n_layers times. Deterministic for a fixed seed.
StateVector prepare_layered_random_state(int n_qubits, int n_layers, std::uint64_t rng_seed);

/// One-hot computational basis state, e.g. "10".
StateVector prepare_basis_state(const std::string& bitstring);

/// Exact action of p (phase included) on s.
StateVector apply_pauli(const PauliString& p, const StateVector& s);

/// <s|p|s> for a canonical p. Exact mode evaluates the inner product
/// directly; sampled mode rotates every support qubit into its measurement
/// basis, draws cfg.shots bitstrings and averages the +-1 outcomes. The RNG
/// stream is derived from (cfg.rng_seed, canonical_hash(p)) so concurrent
/// calls reproduce independently of schedule.
double expectation(const StateVector& s, const PauliString& p, const EstimatorConfig& cfg);

/// e^{-iHt}|s> via dense Hermitian eigendecomposition. The trusted oracle for
/// fidelities; throws beyond kDenseQubitLimit.
StateVector exact_evolve(const HamiltonianSpec& h, const StateVector& s, double t);

/// Dense 2^n x 2^n matrix of a Pauli string (phase included).
Mat dense_pauli(const PauliString& p);

/// Dense matrix of a Hamiltonian spec.
Mat dense_hamiltonian(const HamiltonianSpec& h);

/// Seedable stream mixer: a per-use-case RNG seed derived from a base seed
/// and a stream tag. splitmix64-style, stable across platforms.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace cqff

// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "cqff/backend.hpp"
#include "cqff/hamiltonian.hpp"

namespace cqff {

struct TrotterConfig {
  double delta_t = 0.5;
  int order = 1;
  double noise_p = 0.0;  // two-qubit depolarizing probability per entangling gate
  long max_steps = 10000;
};

/// Depolarizing strength that makes the noisy H3 run cross F = 0.5 near 25
/// steps, the shape used for baseline comparisons. A configuration value,
/// not ground truth.
inline constexpr double kCalibratedNoiseP = 0.011;

/// One circuit-level gate. Angle convention: rz applies
/// diag(e^{-i angle/2}, e^{+i angle/2}); each Trotter factor exp(-i beta P dt)
/// carries angle = 2 * beta * dt on its parity qubit.
struct Gate {
  enum class Kind { single, cnot, rz, global_phase };
  Kind kind = Kind::single;
  int q1 = 0, q2 = 0;    // 1-based; q2 only for cnot targets
  Eigen::Matrix2cd u;    // single
  double angle = 0.0;    // rz / global_phase
};

/// Gates of one first-order step: per term, basis change to Z, a CNOT parity
/// ladder, one Z-rotation, and the uncomputation, in term order. The ladder
/// exposes a per-entangling-gate noise hook.
std::vector<Gate> trotter_step(const HamiltonianSpec& h, const TrotterConfig& cfg);

/// N first-order steps from |psi0>. noise_p = 0 runs a pure statevector and
/// returns |psi><psi|; noise_p > 0 runs the density-matrix path with a
/// two-qubit depolarizing channel after each CNOT.
DensityMatrix trotter_simulate(const HamiltonianSpec& h, const StateVector& psi0, long steps,
                               const TrotterConfig& cfg);

/// Advance an existing density matrix by further Trotter steps, noise
/// channel included when noise_p > 0.
DensityMatrix trotter_advance(const HamiltonianSpec& h, const DensityMatrix& rho, long steps,
                              const TrotterConfig& cfg);

/// F = <psi(t)|rho|psi(t)> with |psi(t)> from the dense evolution oracle.
double trotter_fidelity(const DensityMatrix& rho, const HamiltonianSpec& h,
                        const StateVector& psi0, double t);

}  // namespace cqff

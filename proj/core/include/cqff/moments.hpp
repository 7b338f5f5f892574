// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "cqff/backend.hpp"
#include "cqff/hamiltonian.hpp"
#include "cqff/pauli.hpp"

namespace cqff {

/// Cumulative K-moment operator set: every product of up to K Hamiltonian
/// strings, canonicalized and deduplicated up to global phase, identity
/// first. Entry i corresponds to the ansatz state ops[i]|phi>.
struct MomentSet {
  int n_qubits = 0;
  int K = 0;
  std::vector<PauliString> ops;   // canonical, ops[0] = identity
  std::vector<int> level_of;      // smallest p with ops[i] in level p

  int size() const { return static_cast<int>(ops.size()); }

  /// Number of distinct operators with level <= p.
  int size_at_level(int p) const;
};

/// Breadth-first construction: level p multiplies every Hamiltonian string
/// onto every level-(p-1) operator, in term order then insertion order.
/// Discarded phases are harmless: a rephased ansatz state only rephases its
/// coefficient.
MomentSet build_moment_set(const HamiltonianSpec& h, int K);

/// 2-norm of the component of H^{m-1}|phi> orthogonal to
/// span{ops[i]|phi>}, computed densely. Krylov containment demands this be
/// ~0 for every m <= K+1.
double krylov_residual(const HamiltonianSpec& h, const StateVector& phi, int m,
                       const MomentSet& ms);

}  // namespace cqff

// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cqff/pauli.hpp"

namespace cqff {

/// A Hamiltonian given as a linear combination of canonical Pauli strings.
struct HamiltonianSpec {
  struct Term {
    std::complex<double> coeff;
    PauliString op;  // canonical
  };

  int n_qubits = 0;
  std::vector<Term> terms;

  /// Merge a term into the spec. Canonicalizes op, folds its phase into the
  /// coefficient, merges duplicates and drops terms with zero coefficient.
  void add_term(std::complex<double> coeff, const PauliString& op);

  /// True when every coefficient is real to within tol (Hermitian spec).
  bool is_hermitian(double tol = 1e-12) const;
};

enum class Boundary { interior, periodic };

/// Heisenberg XYZ chain: sum_j cx X_j X_{j+1} + cy Y_j Y_{j+1} + cz Z_j Z_{j+1}.
HamiltonianSpec builtin_h1(int n_qubits, double cx = 1.0, double cy = 2.0, double cz = 3.0);

/// Three-body chain: J * sum_k Z_{k-1} X_k Z_{k+1}. The interior convention
/// sums over k = 2..N-1 on an open chain; the periodic convention wraps the
/// indices around and sums over every site.
HamiltonianSpec builtin_h2(int n_qubits, double j_zxz = 1.0,
                           Boundary boundary = Boundary::interior);

/// Two-qubit XY model: X1 X2 + Y1 Y2.
HamiltonianSpec builtin_h3();

}  // namespace cqff

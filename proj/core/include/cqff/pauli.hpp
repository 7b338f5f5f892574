// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

namespace cqff {

/// A tensored Pauli operator in symplectic form with an exact i^k global
/// phase.
///
/// The operator represented is i^phase_exp * (P_1 x P_2 x ... x P_n), where
/// each letter P_j in {I,X,Y,Z} is the Hermitian Pauli determined by one bit
/// of x_bits and one bit of z_bits: (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.
///
/// Conventions, fixed once here and relied on everywhere:
///  - Y = i * X * Z.
///  - Qubit labels are 1-based ("Z1 X2"); internally qubit j (1-based)
///    occupies bit (n - j) of the masks, so qubit 1 is the most significant
///    bit of a basis-state index. The bitstring "10" therefore names the
///    basis index 2 on two qubits.
///
/// Immutable value type; all operations are pure functions.
struct PauliString {
  int n_qubits = 0;
  std::uint64_t x_bits = 0;
  std::uint64_t z_bits = 0;
  int phase_exp = 0;  // mod 4

  bool operator==(const PauliString&) const = default;

  /// True when phase_exp == 0. Canonical strings are Hermitian with
  /// eigenvalues +-1.
  bool is_canonical() const { return phase_exp == 0; }

  bool is_identity() const { return x_bits == 0 && z_bits == 0 && phase_exp == 0; }

  /// Number of qubits carrying a Y letter.
  int y_count() const;

  /// Mask of qubits acted on non-trivially.
  std::uint64_t support() const { return x_bits | z_bits; }

  /// The i^phase_exp factor as a complex unit.
  std::complex<double> phase() const;

  /// Label in compact form, e.g. "XIZ"; a nonzero phase is prefixed as
  /// "i*", "-" or "-i*".
  std::string str() const;
};

/// Identity on n qubits.
PauliString pauli_identity(int n_qubits);

/// Parse either the compact form "XIZ" (length must equal n_qubits) or the
/// indexed form "Z1 X2 Z3" (1-based qubit indices). Returns a canonical
/// string. Throws std::invalid_argument naming the offending token.
PauliString parse_label(const std::string& label, int n_qubits);

/// Exact operator product p*q, phases included.
/// Throws std::invalid_argument on mismatched qubit counts.
PauliString multiply(const PauliString& p, const PauliString& q);

/// Split p into a phase-free canonical string and the complex unit that
/// multiplies it: phase * canonical == p as operators, exactly.
std::pair<PauliString, std::complex<double>> canonicalize(const PauliString& p);

/// True iff p and q commute (symplectic inner product is even).
bool commutes(const PauliString& p, const PauliString& q);

/// Hash of the canonical content (n_qubits, x_bits, z_bits); ignores phase.
std::size_t canonical_hash(const PauliString& p);

struct PauliCanonicalHash {
  std::size_t operator()(const PauliString& p) const { return canonical_hash(p); }
};

/// Equality up to global phase.
struct PauliCanonicalEq {
  bool operator()(const PauliString& a, const PauliString& b) const {
    return a.n_qubits == b.n_qubits && a.x_bits == b.x_bits && a.z_bits == b.z_bits;
  }
};

}  // namespace cqff

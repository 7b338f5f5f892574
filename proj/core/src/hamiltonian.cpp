// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include "cqff/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace cqff {

void HamiltonianSpec::add_term(std::complex<double> coeff, const PauliString& op) {
  if (terms.empty() && n_qubits == 0) n_qubits = op.n_qubits;
  if (op.n_qubits != n_qubits) {
    throw std::invalid_argument("term qubit count does not match Hamiltonian");
  }
  auto [canon, phase] = canonicalize(op);
  coeff *= phase;
  for (auto& t : terms) {
    if (PauliCanonicalEq{}(t.op, canon)) {
      t.coeff += coeff;
      if (std::abs(t.coeff) < 1e-15) {
        terms.erase(terms.begin() + (&t - terms.data()));
      }
      return;
    }
  }
  if (std::abs(coeff) > 0.0) terms.push_back({coeff, canon});
}

bool HamiltonianSpec::is_hermitian(double tol) const {
  for (const auto& t : terms) {
    if (std::abs(t.coeff.imag()) > tol) return false;
  }
  return true;
}

HamiltonianSpec builtin_h1(int n_qubits, double cx, double cy, double cz) {
  if (n_qubits < 2) throw std::invalid_argument("H1 needs at least 2 qubits");
  HamiltonianSpec h;
  h.n_qubits = n_qubits;
  for (int j = 1; j < n_qubits; ++j) {
    auto pair = [&](char letter) {
      return parse_label(std::string(1, letter) + std::to_string(j) + " " +
                             std::string(1, letter) + std::to_string(j + 1),
                         n_qubits);
    };
    h.add_term(cx, pair('X'));
    h.add_term(cy, pair('Y'));
    h.add_term(cz, pair('Z'));
  }
  return h;
}

HamiltonianSpec builtin_h2(int n_qubits, double j_zxz, Boundary boundary) {
  if (n_qubits < 3) throw std::invalid_argument("H2 needs at least 3 qubits");
  HamiltonianSpec h;
  h.n_qubits = n_qubits;
  auto site = [&](int k) { return (k - 1 + n_qubits) % n_qubits + 1; };  // wrap 1-based
  const int k_lo = boundary == Boundary::interior ? 2 : 1;
  const int k_hi = boundary == Boundary::interior ? n_qubits - 1 : n_qubits;
  for (int k = k_lo; k <= k_hi; ++k) {
    const std::string label = "Z" + std::to_string(site(k - 1)) + " X" + std::to_string(site(k)) +
                              " Z" + std::to_string(site(k + 1));
    h.add_term(j_zxz, parse_label(label, n_qubits));
  }
  return h;
}

HamiltonianSpec builtin_h3() {
  HamiltonianSpec h;
  h.n_qubits = 2;
  h.add_term(1.0, parse_label("XX", 2));
  h.add_term(1.0, parse_label("YY", 2));
  return h;
}

}  // namespace cqff

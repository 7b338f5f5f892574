// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include "cqff/pauli.hpp"

#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cqff {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > 64) {
    throw std::invalid_argument("qubit count must be in [1, 64], got " + std::to_string(n));
  }
}

// Mask bit for 1-based qubit index j.
std::uint64_t qubit_bit(int j, int n) { return std::uint64_t{1} << (n - j); }

}  // namespace

int PauliString::y_count() const {
  return std::popcount(x_bits & z_bits);
}

std::complex<double> PauliString::phase() const {
  static const std::complex<double> units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return units[phase_exp & 3];
}

std::string PauliString::str() const {
  static const char* prefixes[4] = {"", "i*", "-", "-i*"};
  std::string out = prefixes[phase_exp & 3];
  for (int j = 1; j <= n_qubits; ++j) {
    const std::uint64_t b = qubit_bit(j, n_qubits);
    const bool x = x_bits & b, z = z_bits & b;
    out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return out;
}

PauliString pauli_identity(int n_qubits) {
  check_qubit_count(n_qubits);
  return PauliString{n_qubits, 0, 0, 0};
}

PauliString parse_label(const std::string& label, int n_qubits) {
  check_qubit_count(n_qubits);
  PauliString p = pauli_identity(n_qubits);

  const bool indexed = label.find_first_of("0123456789") != std::string::npos;
  if (!indexed) {
    std::string compact;
    for (char c : label) {
      if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    if (static_cast<int>(compact.size()) != n_qubits) {
      throw std::invalid_argument("label \"" + label + "\" has " +
                                  std::to_string(compact.size()) + " letters, expected " +
                                  std::to_string(n_qubits));
    }
    for (int j = 1; j <= n_qubits; ++j) {
      const std::uint64_t b = qubit_bit(j, n_qubits);
      switch (compact[j - 1]) {
        case 'I': break;
        case 'X': p.x_bits |= b; break;
        case 'Y': p.x_bits |= b; p.z_bits |= b; break;
        case 'Z': p.z_bits |= b; break;
        default:
          throw std::invalid_argument("bad Pauli letter '" + std::string(1, compact[j - 1]) +
                                      "' in label \"" + label + "\"");
      }
    }
    return p;
  }

  std::istringstream in(label);
  std::string token;
  while (in >> token) {
    if (token.size() < 2) {
      throw std::invalid_argument("bad token \"" + token + "\" in label \"" + label + "\"");
    }
    const char letter = token[0];
    int idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoi(token.substr(1), &used);
      if (used != token.size() - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad qubit index in token \"" + token + "\"");
    }
    if (idx < 1 || idx > n_qubits) {
      throw std::invalid_argument("qubit index out of range in token \"" + token + "\"");
    }
    const std::uint64_t b = qubit_bit(idx, n_qubits);
    if ((p.x_bits | p.z_bits) & b) {
      throw std::invalid_argument("duplicate qubit in token \"" + token + "\"");
    }
    switch (letter) {
      case 'X': p.x_bits |= b; break;
      case 'Y': p.x_bits |= b; p.z_bits |= b; break;
      case 'Z': p.z_bits |= b; break;
      case 'I': break;
      default:
        throw std::invalid_argument("bad Pauli letter in token \"" + token + "\"");
    }
  }
  return p;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.n_qubits != q.n_qubits) {
    throw std::invalid_argument("Pauli product on mismatched qubit counts: " +
                                std::to_string(p.n_qubits) + " vs " +
                                std::to_string(q.n_qubits));
  }
  PauliString r;
  r.n_qubits = p.n_qubits;
  r.x_bits = p.x_bits ^ q.x_bits;
  r.z_bits = p.z_bits ^ q.z_bits;
  // Each letter is i^{xz} X^x Z^z; commuting Z^{z_p} past X^{x_q} costs
  // (-1)^{|z_p & x_q|}.
  const int phase = p.phase_exp + q.phase_exp + p.y_count() + q.y_count() +
                    2 * std::popcount(p.z_bits & q.x_bits) - r.y_count();
  r.phase_exp = ((phase % 4) + 4) % 4;
  return r;
}

std::pair<PauliString, std::complex<double>> canonicalize(const PauliString& p) {
  PauliString c = p;
  c.phase_exp = 0;
  return {c, p.phase()};
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n_qubits != q.n_qubits) {
    throw std::invalid_argument("commutes on mismatched qubit counts");
  }
  const int sym = std::popcount(p.x_bits & q.z_bits) + std::popcount(p.z_bits & q.x_bits);
  return (sym & 1) == 0;
}

std::size_t canonical_hash(const PauliString& p) {
  auto mix = [](std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ull;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return v ^ (v >> 31);
  };
  std::uint64_t h = mix(static_cast<std::uint64_t>(p.n_qubits));
  h = mix(h ^ p.x_bits);
  h = mix(h ^ p.z_bits);
  return static_cast<std::size_t>(h);
}

}  // namespace cqff

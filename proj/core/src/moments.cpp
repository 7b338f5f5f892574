// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include "cqff/moments.hpp"

#include <stdexcept>
#include <unordered_set>

namespace cqff {

int MomentSet::size_at_level(int p) const {
  int count = 0;
  for (int lvl : level_of) {
    if (lvl <= p) ++count;
  }
  return count;
}

MomentSet build_moment_set(const HamiltonianSpec& h, int K) {
  if (K < 0) throw std::invalid_argument("K must be non-negative");
  MomentSet ms;
  ms.n_qubits = h.n_qubits;
  ms.K = K;

  std::unordered_set<PauliString, PauliCanonicalHash, PauliCanonicalEq> seen;
  auto insert = [&](const PauliString& p, int level) {
    auto [canon, phase] = canonicalize(p);
    (void)phase;
    if (seen.insert(canon).second) {
      ms.ops.push_back(canon);
      ms.level_of.push_back(level);
      return true;
    }
    return false;
  };

  insert(pauli_identity(h.n_qubits), 0);

  // previous holds the raw length-(p-1) products; products of shorter length
  // are already covered by lower levels.
  std::vector<PauliString> previous = {pauli_identity(h.n_qubits)};
  for (int level = 1; level <= K; ++level) {
    std::vector<PauliString> current;
    for (const auto& base : previous) {
      for (const auto& term : h.terms) {
        current.push_back(multiply(term.op, base));
      }
    }
    for (const auto& p : current) {
      insert(p, level);
    }
    previous = std::move(current);
  }
  return ms;
}

double krylov_residual(const HamiltonianSpec& h, const StateVector& phi, int m,
                       const MomentSet& ms) {
  if (m < 1 || m > ms.K + 1) {
    throw std::invalid_argument("krylov_residual: m must be in [1, K+1]");
  }

  // Dense basis of span{ops[i]|phi>} via thin QR.
  const std::int64_t dim = phi.amplitudes.size();
  Mat basis(dim, ms.size());
  for (int i = 0; i < ms.size(); ++i) {
    basis.col(i) = apply_pauli(ms.ops[i], phi).amplitudes;
  }
  Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeThinU);
  int rank = 0;
  const double sv_cut = 1e-12 * svd.singularValues()(0);
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > sv_cut) ++rank;
  const Mat q = svd.matrixU().leftCols(rank);

  const Mat hmat = dense_hamiltonian(h);
  Vec target = phi.amplitudes;
  for (int k = 1; k < m; ++k) {
    target = hmat * target;
  }
  const Vec residual = target - q * (q.adjoint() * target);
  return residual.norm();
}

}  // namespace cqff

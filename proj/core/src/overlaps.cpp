// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include "cqff/overlaps.hpp"

#include <stdexcept>

namespace cqff {

double ExpectationCache::get(const PauliString& p) {
  if (!p.is_canonical()) {
    throw std::invalid_argument("ExpectationCache::get requires a canonical string");
  }
  auto it = cache_.find(p);
  if (it != cache_.end()) return it->second;
  const double value = expectation(*phi_, p, cfg_);
  cache_.emplace(p, value);
  return value;
}

namespace {

// phase(P_i P_j) * <phi|canonical(P_i P_j)|phi>. Canonical strings are
// Hermitian, so P_i^dag = P_i.
std::complex<double> overlap_element(const PauliString& pi, const PauliString& pj,
                                     ExpectationCache& cache) {
  auto [canon, phase] = canonicalize(multiply(pi, pj));
  return phase * cache.get(canon);
}

Mat assemble_weighted(const MomentSet& ms, const HamiltonianSpec& h, ExpectationCache& cache) {
  if (h.n_qubits != ms.n_qubits) {
    throw std::invalid_argument("operator qubit count does not match moment set");
  }
  const int L = ms.size();
  Mat m = Mat::Zero(L, L);
  for (int i = 0; i < L; ++i) {
    for (int j = i; j < L; ++j) {
      std::complex<double> acc = 0.0;
      for (const auto& term : h.terms) {
        auto [canon, phase] =
            canonicalize(multiply(ms.ops[i], multiply(term.op, ms.ops[j])));
        acc += term.coeff * phase * cache.get(canon);
      }
      m(i, j) = acc;
      m(j, i) = std::conj(acc);
    }
  }
  return m;
}

}  // namespace

Mat assemble_E(const MomentSet& ms, ExpectationCache& cache) {
  const int L = ms.size();
  Mat e = Mat::Zero(L, L);
  for (int i = 0; i < L; ++i) {
    e(i, i) = 1.0;  // <phi|I|phi>, no sampling needed
    for (int j = i + 1; j < L; ++j) {
      const std::complex<double> v = overlap_element(ms.ops[i], ms.ops[j], cache);
      e(i, j) = v;
      e(j, i) = std::conj(v);
    }
  }
  return e;
}

Mat assemble_D(const MomentSet& ms, const HamiltonianSpec& h, ExpectationCache& cache) {
  return assemble_weighted(ms, h, cache);
}

Mat assemble_observable(const MomentSet& ms, const HamiltonianSpec& o, ExpectationCache& cache) {
  return assemble_weighted(ms, o, cache);
}

OverlapMatrices assemble_overlaps(const MomentSet& ms, const HamiltonianSpec& h,
                                  const StateVector& phi, const EstimatorConfig& cfg) {
  ExpectationCache cache(phi, cfg);
  OverlapMatrices out;
  out.E = assemble_E(ms, cache);
  out.D = assemble_D(ms, h, cache);
  out.estimator = cfg;
  out.distinct_strings = cache.distinct_strings();
  return out;
}

}  // namespace cqff

// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <unordered_map>

#include "cqff/backend.hpp"
#include "cqff/moments.hpp"

namespace cqff {

/// One expectation value per distinct canonical Pauli string, shared across
/// D, E and observable assemblies for the same |phi>. This is the entire
/// "quantum" cost of a run.
class ExpectationCache {
 public:
  ExpectationCache(const StateVector& phi, const EstimatorConfig& cfg)
      : phi_(&phi), cfg_(cfg) {}

  /// Estimate of <phi|p|phi> for canonical p; computed once, then reused.
  double get(const PauliString& p);

  int distinct_strings() const { return static_cast<int>(cache_.size()); }
  const EstimatorConfig& config() const { return cfg_; }

 private:
  const StateVector* phi_;
  EstimatorConfig cfg_;
  std::unordered_map<PauliString, double, PauliCanonicalHash, PauliCanonicalEq> cache_;
};

struct OverlapMatrices {
  Mat D;
  Mat E;
  EstimatorConfig estimator;
  int distinct_strings = 0;
};

/// E_ij = <chi_i|chi_j>. Upper triangle estimated, lower mirrored, diagonal
/// pinned to exactly 1; Hermitian by construction.
Mat assemble_E(const MomentSet& ms, ExpectationCache& cache);

/// D_ij = <chi_i|H|chi_j> = sum_a beta_a <chi_i|U_a|chi_j>.
Mat assemble_D(const MomentSet& ms, const HamiltonianSpec& h, ExpectationCache& cache);

/// Overlap matrix of an arbitrary observable given as a Pauli combination.
Mat assemble_observable(const MomentSet& ms, const HamiltonianSpec& o, ExpectationCache& cache);

/// D and E together through one shared cache.
OverlapMatrices assemble_overlaps(const MomentSet& ms, const HamiltonianSpec& h,
                                  const StateVector& phi, const EstimatorConfig& cfg);

}  // namespace cqff

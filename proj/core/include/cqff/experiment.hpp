// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cqff/backend.hpp"
#include "cqff/hamiltonian.hpp"
#include "cqff/moments.hpp"
#include "cqff/trotter.hpp"

namespace cqff {

/// A full experiment description, parsed from a JSON config file. See the
/// README for the schema and annotated examples.
struct ExperimentConfig {
  // Hamiltonian: one of the builtins or an inline term list.
  std::string builtin = "H3";  // "H1", "H2", "H3"; empty means inline terms
  int n_qubits = 2;
  double h1_cx = 1.0, h1_cy = 2.0, h1_cz = 3.0;
  double h2_j = 1.0;
  Boundary h2_boundary = Boundary::interior;
  std::vector<std::pair<std::complex<double>, std::string>> inline_terms;

  // Initial state: a basis bitstring or the layered random ansatz.
  std::string basis_state = "10";  // empty means layered
  int layers = 5;
  std::uint64_t state_seed = 0;

  int K = 1;
  EstimatorConfig estimator;
  double cutoff = 1e-10;

  double t_max = 10.0;
  int time_points = 200;

  std::string observable;  // Pauli label; empty disables the trace
  bool sampled_observable = false;  // default: observable overlaps exact

  TrotterConfig trotter;
  long trotter_n_max = 10000;
};

ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& cfg);

HamiltonianSpec make_hamiltonian(const ExperimentConfig& cfg);
StateVector make_initial_state(const ExperimentConfig& cfg);

/// Decimal formatting used by every emitted file: 17 significant digits,
/// '.' separator.
std::string format_double(double v);

struct MomentTableRow {
  std::string label;
  std::vector<int> sizes_by_level;  // cumulative size at K = 1..
};

/// Level-size table for the config's Hamiltonian up to cfg.K.
MomentTableRow run_moments(const ExperimentConfig& cfg);

/// The five builtin rows of the subspace-size table.
std::vector<MomentTableRow> reference_moment_table();

/// D/E (and optional observable) matrices as a JSON document; bit-stable
/// given an identical config.
std::string run_matrices(const ExperimentConfig& cfg);

/// CSV "t,fidelity,observable,norm,im_diagnostic" over the config time grid.
std::string run_evolve(const ExperimentConfig& cfg);

/// CSV "N,t,fidelity_trotter,fidelity_cqff_k1,fidelity_cqff_k2" on a
/// log-friendly step grid; the Trotter column is empty beyond trotter_n_max.
std::string run_compare_trotter(const ExperimentConfig& cfg);

/// Runs the three perturbation-bound trial suites and formats a pass/fail
/// table. Returns false in `ok` if any met-precondition trial violates its
/// bound.
struct BoundsSummary {
  std::string report;
  bool ok = false;
};
BoundsSummary run_bounds(std::uint64_t seed, int trials_per_bound = 100);

/// Write the named reproduction target (table1, fig1..fig5) under out_dir,
/// along with a manifest echoing the full config and seeds.
/// Returns the list of files written. Throws on unknown targets.
std::vector<std::string> reproduce(const std::string& target, const std::string& out_dir,
                                   const ExperimentConfig& base);

}  // namespace cqff

// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner. Subcommands:
//   moments         level-size table for the configured Hamiltonian
//   matrices        emit D/E (and observable) matrices as JSON
//   evolve          fidelity + observable trace as CSV
//   compare-trotter CQFF vs first-order Trotter fidelities as CSV
//   bounds          matrix-perturbation bound trial suites
//   reproduce       canned targets: table1, fig1..fig5
//
// Exit codes: 0 success, 2 config error, 3 numerical contract violation.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cqff/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> shots;
  std::optional<std::string> mode;
  std::optional<double> cutoff;
  std::optional<int> k;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON experiment config file");
  cmd->add_option("--out", opts.out_dir, "output directory (default: stdout)");
  cmd->add_option("--seed", opts.seed, "override estimator RNG seed");
  cmd->add_option("--shots", opts.shots, "override shot count");
  cmd->add_option("--mode", opts.mode, "override estimator mode: exact|sampled");
  cmd->add_option("--cutoff", opts.cutoff, "override metric rank cutoff");
  cmd->add_option("--k", opts.k, "override moment-set order K");
}

cqff::ExperimentConfig load_config(const CommonOpts& opts) {
  cqff::ExperimentConfig cfg;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw std::invalid_argument("cannot open config file " + opts.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    cfg = cqff::config_from_json_text(text.str());
  }
  if (opts.seed) cfg.estimator.rng_seed = *opts.seed;
  if (opts.shots) cfg.estimator.shots = *opts.shots;
  if (opts.mode) {
    if (*opts.mode == "exact") {
      cfg.estimator.mode = cqff::EstimatorMode::exact;
    } else if (*opts.mode == "sampled") {
      cfg.estimator.mode = cqff::EstimatorMode::sampled;
    } else {
      throw std::invalid_argument("--mode must be exact or sampled");
    }
  }
  if (opts.cutoff) cfg.cutoff = *opts.cutoff;
  if (opts.k) cfg.K = *opts.k;
  return cfg;
}

void emit(const CommonOpts& opts, const std::string& filename, const std::string& content) {
  if (opts.out_dir.empty()) {
    std::cout << content;
    return;
  }
  namespace fs = std::filesystem;
  fs::create_directories(opts.out_dir);
  std::ofstream out(fs::path(opts.out_dir) / filename, std::ios::binary);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CQFF numerical engine"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string target;

  CLI::App* moments = app.add_subcommand("moments", "moment-set level sizes");
  add_common(moments, opts);
  bool show_table = false;
  moments->add_flag("--table", show_table, "also print the five builtin reference rows");

  CLI::App* matrices = app.add_subcommand("matrices", "emit D/E matrices");
  add_common(matrices, opts);

  CLI::App* evolve = app.add_subcommand("evolve", "fidelity/observable trace");
  add_common(evolve, opts);

  CLI::App* compare = app.add_subcommand("compare-trotter", "CQFF vs Trotter comparison");
  add_common(compare, opts);

  CLI::App* bounds = app.add_subcommand("bounds", "perturbation bound trial suites");
  add_common(bounds, opts);

  CLI::App* repro = app.add_subcommand("reproduce", "canned reproduction targets");
  add_common(repro, opts);
  repro->add_option("target", target, "table1|fig1|fig2|fig3|fig4|fig5")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const cqff::ExperimentConfig cfg = load_config(opts);

    if (moments->parsed()) {
      std::ostringstream out;
      const cqff::MomentTableRow row = cqff::run_moments(cfg);
      out << row.label;
      for (std::size_t k = 0; k < row.sizes_by_level.size(); ++k) {
        out << "  K=" << (k + 1) << ": " << row.sizes_by_level[k];
      }
      out << "\n";
      if (show_table) {
        for (const auto& ref : cqff::reference_moment_table()) {
          out << ref.label;
          for (std::size_t k = 0; k < ref.sizes_by_level.size(); ++k) {
            out << "  K=" << (k + 1) << ": " << ref.sizes_by_level[k];
          }
          out << "\n";
        }
      }
      emit(opts, "moments.txt", out.str());
    } else if (matrices->parsed()) {
      emit(opts, "matrices.json", cqff::run_matrices(cfg));
    } else if (evolve->parsed()) {
      emit(opts, "trace.csv", cqff::run_evolve(cfg));
    } else if (compare->parsed()) {
      emit(opts, "comparison.csv", cqff::run_compare_trotter(cfg));
    } else if (bounds->parsed()) {
      const cqff::BoundsSummary summary = cqff::run_bounds(cfg.estimator.rng_seed);
      emit(opts, "bounds.txt", summary.report);
      if (!summary.ok) return kExitNumerical;
    } else if (repro->parsed()) {
      const std::string out_dir = opts.out_dir.empty() ? "." : opts.out_dir;
      for (const std::string& f : cqff::reproduce(target, out_dir, cfg)) {
        std::cout << f << "\n";
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}

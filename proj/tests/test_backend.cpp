// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "cqff/backend.hpp"
#include "test_util.hpp"

using namespace cqff;

TEST_CASE("prepare_basis_state") {
  const StateVector s10 = prepare_basis_state("10");
  CHECK(s10.amplitudes[2] == std::complex<double>(1, 0));
  CHECK(s10.amplitudes.norm() == doctest::Approx(1.0));

  CHECK(prepare_basis_state("00").amplitudes[0] == std::complex<double>(1, 0));
  CHECK(prepare_basis_state("101").amplitudes[5] == std::complex<double>(1, 0));
  CHECK_THROWS_AS(prepare_basis_state("10x"), std::invalid_argument);
}

TEST_CASE("prepare_layered_random_state") {
  // no gates: |00...0>
  const StateVector zero = prepare_layered_random_state(3, 0, 42);
  CHECK(std::abs(zero.amplitudes[0] - 1.0) < 1e-15);

  // determinism
  const StateVector a = prepare_layered_random_state(3, 5, 42);
  const StateVector b = prepare_layered_random_state(3, 5, 42);
  CHECK((a.amplitudes - b.amplitudes).norm() == 0.0);

  // different seeds give different states
  const StateVector c = prepare_layered_random_state(3, 5, 43);
  CHECK((a.amplitudes - c.amplitudes).norm() > 1e-3);

  // unit norm
  CHECK(prepare_layered_random_state(2, 5, 7).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_pauli basics") {
  const StateVector s0 = prepare_basis_state("0");
  const StateVector s1 = apply_pauli(parse_label("X", 1), s0);
  CHECK(std::abs(s1.amplitudes[1] - 1.0) < 1e-15);

  const StateVector t = apply_pauli(parse_label("XX", 2), prepare_basis_state("10"));
  CHECK(std::abs(t.amplitudes[1] - 1.0) < 1e-15);  // |01>

  CHECK_THROWS_AS(apply_pauli(parse_label("X", 1), prepare_basis_state("10")),
                  std::invalid_argument);
}

TEST_CASE("apply_pauli dense oracle") {
  // (Y1 Y2)|10> = |01>
  const StateVector out = apply_pauli(parse_label("YY", 2), prepare_basis_state("10"));
  CHECK(std::abs(out.amplitudes[1] - 1.0) < 1e-14);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const PauliString p = test::random_canonical(rng, n);
    const StateVector s = test::random_state(rng, n);
    const Vec expected = dense_pauli(p) * s.amplitudes;
    CHECK((apply_pauli(p, s).amplitudes - expected).norm() < 1e-13);
  }
}

TEST_CASE("exact expectation") {
  EstimatorConfig exact;
  CHECK(expectation(prepare_basis_state("0"), parse_label("Z", 1), exact) ==
        doctest::Approx(1.0));
  CHECK(expectation(prepare_basis_state("10"), parse_label("XX", 2), exact) ==
        doctest::Approx(0.0));

  PauliString noncanonical = parse_label("Z", 1);
  noncanonical.phase_exp = 1;
  CHECK_THROWS_AS(expectation(prepare_basis_state("0"), noncanonical, exact),
                  std::invalid_argument);
}

TEST_CASE("sampled expectation on an eigenstate is deterministic") {
  // |+> = H|0>
  StateVector plus;
  plus.n_qubits = 1;
  plus.amplitudes = Vec(2);
  plus.amplitudes << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);

  EstimatorConfig cfg;
  cfg.mode = EstimatorMode::sampled;
  cfg.shots = 8192;
  cfg.rng_seed = 5;
  CHECK(expectation(plus, parse_label("X", 1), cfg) == doctest::Approx(1.0));
}

TEST_CASE("sampled expectation shot noise stays within binomial error bars") {
  // <0|X|0> = 0; sample std error is 1/sqrt(shots)
  EstimatorConfig cfg;
  cfg.mode = EstimatorMode::sampled;
  cfg.shots = 8192;
  const StateVector s0 = prepare_basis_state("0");
  int outliers = 0;
  const int seeds = 200;
  for (int seed = 0; seed < seeds; ++seed) {
    cfg.rng_seed = seed;
    const double est = expectation(s0, parse_label("X", 1), cfg);
    if (std::abs(est) > 5.0 / std::sqrt(8192.0)) ++outliers;
  }
  CHECK(outliers <= 2);  // >= 99% of seeds inside 5 sigma
}

TEST_CASE("sampled expectation is unbiased") {
  std::mt19937_64 rng(17);
  const StateVector s = test::random_state(rng, 2);
  const PauliString p = parse_label("XY", 2);

  EstimatorConfig exact;
  const double truth = expectation(s, p, exact);

  EstimatorConfig cfg;
  cfg.mode = EstimatorMode::sampled;
  cfg.shots = 1024;
  double sum = 0.0;
  const int seeds = 200;
  for (int seed = 0; seed < seeds; ++seed) {
    cfg.rng_seed = 1000 + seed;
    sum += expectation(s, p, cfg);
  }
  const double mean = sum / seeds;
  const double pooled_se = 1.0 / std::sqrt(1024.0 * seeds);
  CHECK(std::abs(mean - truth) < 4.0 * pooled_se);
}

TEST_CASE("shot scaling follows 1/sqrt(shots)") {
  std::mt19937_64 rng(23);
  const StateVector s = test::random_state(rng, 2);
  const PauliString p = parse_label("ZX", 2);
  EstimatorConfig exact;
  const double truth = expectation(s, p, exact);

  auto empirical_sd = [&](int shots) {
    EstimatorConfig cfg;
    cfg.mode = EstimatorMode::sampled;
    cfg.shots = shots;
    double sq = 0.0;
    const int seeds = 400;
    for (int seed = 0; seed < seeds; ++seed) {
      cfg.rng_seed = 9000 + seed;
      const double d = expectation(s, p, cfg) - truth;
      sq += d * d;
    }
    return std::sqrt(sq / seeds);
  };

  const double sd256 = empirical_sd(256);
  const double sd1024 = empirical_sd(1024);
  const double sd4096 = empirical_sd(4096);
  CHECK(sd256 / sd1024 == doctest::Approx(2.0).epsilon(0.2));
  CHECK(sd1024 / sd4096 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("exact_evolve") {
  // t = 0 is the identity
  std::mt19937_64 rng(29);
  const StateVector s = test::random_state(rng, 2);
  HamiltonianSpec h = builtin_h3();
  CHECK((exact_evolve(h, s, 0.0).amplitudes - s.amplitudes).norm() < 1e-14);

  // H3 |10> -> cos(2t)|10> - i sin(2t)|01>
  const StateVector s10 = prepare_basis_state("10");
  const double t = 0.7;
  const StateVector evolved = exact_evolve(h, s10, t);
  CHECK(std::abs(evolved.amplitudes[2] - std::cos(2 * t)) < 1e-12);
  CHECK(std::abs(evolved.amplitudes[1] - std::complex<double>(0, -std::sin(2 * t))) < 1e-12);

  // eigenstate phase: H = Z on |0> gives e^{-it}|0>
  HamiltonianSpec hz;
  hz.n_qubits = 1;
  hz.add_term(1.0, parse_label("Z", 1));
  const StateVector ev = exact_evolve(hz, prepare_basis_state("0"), t);
  CHECK(std::abs(ev.amplitudes[0] - std::exp(std::complex<double>(0, -t))) < 1e-12);
}

TEST_CASE("exact_evolve norm and group property") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const StateVector s = test::random_state(rng, n);
    const HamiltonianSpec h = builtin_h1(n);
    const double t1 = 0.3, t2 = 1.1;
    const StateVector a = exact_evolve(h, s, t1 + t2);
    const StateVector b = exact_evolve(h, exact_evolve(h, s, t1), t2);
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((a.amplitudes - b.amplitudes).norm() < 1e-10);
  }
}

// Copyright 2026 the cqff authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "cqff/evolve.hpp"
#include "cqff/overlaps.hpp"
#include "test_util.hpp"

using namespace cqff;

namespace {

struct Pipeline {
  HamiltonianSpec h;
  StateVector phi;
  MomentSet ms;
  Mat e, d;
  EigenSolution sol;
  Vec alpha0;
};

Pipeline exact_pipeline(const HamiltonianSpec& h, const StateVector& phi, int K) {
  Pipeline p{h, phi, build_moment_set(h, K), {}, {}, {}, {}};
  ExpectationCache cache(p.phi, {});
  p.e = assemble_E(p.ms, cache);
  p.d = assemble_D(p.ms, h, cache);
  p.sol = solve_generalized(p.d, p.e);
  p.alpha0 = initial_alpha(p.ms);
  return p;
}

}  // namespace

TEST_CASE("initial_alpha") {
  const MomentSet ms = build_moment_set(builtin_h3(), 1);
  const Vec a = initial_alpha(ms);
  REQUIRE(a.size() == 3);
  CHECK(a(0) == std::complex<double>(1, 0));
  CHECK(a.tail(2).norm() == 0.0);
}

TEST_CASE("custom start vectors are accepted after E-renormalization") {
  const Pipeline p = exact_pipeline(builtin_h3(), prepare_basis_state("10"), 1);
  Vec raw = Vec::Zero(3);
  raw(0) = 0.5;
  raw(1) = 0.25;
  const Vec a = renormalize_alpha(raw, p.e);
  CHECK((a.adjoint() * p.e * a)(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fast_forward at T = 0 reproduces alpha0") {
  const Pipeline p = exact_pipeline(builtin_h3(), prepare_basis_state("10"), 2);
  const Vec back = fast_forward(p.sol, p.e, p.alpha0, 0.0);
  // the ansatz states are equal as kets, not the coefficients themselves
  const StateVector s0 = hybrid_to_dense(p.ms, p.phi, p.alpha0);
  const StateVector s1 = hybrid_to_dense(p.ms, p.phi, back);
  CHECK((s0.amplitudes - s1.amplitudes).norm() < 1e-10);
}

TEST_CASE("H3 closed form: cos(2T)|10> - i sin(2T)|01>") {
  const Pipeline p = exact_pipeline(builtin_h3(), prepare_basis_state("10"), 1);
  for (double t : {0.3, 1.7, 9.2}) {
    const Vec alpha_t = fast_forward(p.sol, p.e, p.alpha0, t);
    const StateVector s = hybrid_to_dense(p.ms, p.phi, alpha_t);
    CHECK(std::abs(s.amplitudes[2] - std::cos(2 * t)) < 1e-10);
    CHECK(std::abs(s.amplitudes[1] - std::complex<double>(0, -std::sin(2 * t))) < 1e-10);
    CHECK(fidelity_vs_exact(p.h, p.phi, p.ms, alpha_t, t) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("exact pipelines reach fidelity 1 with sufficient K") {
  struct Case {
    HamiltonianSpec h;
    int K;
  };
  const Case cases[] = {{builtin_h1(2), 1}, {builtin_h2(4), 2}, {builtin_h3(), 2}};
  for (const auto& c : cases) {
    const StateVector phi = prepare_layered_random_state(c.h.n_qubits, 5, 61);
    const Pipeline p = exact_pipeline(c.h, phi, c.K);
    for (double t : {0.0, 1.3, 5.0, 10.0}) {
      const Vec alpha_t = fast_forward(p.sol, p.e, p.alpha0, t);
      CHECK(fidelity_vs_exact(c.h, phi, p.ms, alpha_t, t) ==
            doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("insufficient K leaves fidelity below 1") {
  const double t = 2.0;

  // K = 0: the ansatz is the single state |phi>
  const StateVector phi3 = prepare_layered_random_state(3, 5, 67);
  const Pipeline p0 = exact_pipeline(builtin_h1(3), phi3, 0);
  const Vec a0 = fast_forward(p0.sol, p0.e, p0.alpha0, t);
  CHECK(fidelity_vs_exact(p0.h, phi3, p0.ms, a0, t) < 1.0 - 1e-4);

  // the 5-qubit cluster chain needs K = 3; K = 1 spans too little
  const StateVector phi5 = prepare_layered_random_state(5, 5, 67);
  const Pipeline p1 = exact_pipeline(builtin_h2(5), phi5, 1);
  const Vec a1 = fast_forward(p1.sol, p1.e, p1.alpha0, t);
  CHECK(fidelity_vs_exact(p1.h, phi5, p1.ms, a1, t) < 1.0 - 1e-4);
}

TEST_CASE("unitarity and group property") {
  const StateVector phi = prepare_layered_random_state(2, 5, 71);
  const Pipeline p = exact_pipeline(builtin_h1(2), phi, 1);
  for (double t : {0.5, 3.0, 8.0}) {
    const Vec alpha_t = fast_forward(p.sol, p.e, p.alpha0, t);
    CHECK((alpha_t.adjoint() * p.e * alpha_t)(0, 0).real() ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  const Vec direct = fast_forward(p.sol, p.e, p.alpha0, 4.2);
  const Vec stepped = fast_forward(p.sol, p.e, fast_forward(p.sol, p.e, p.alpha0, 1.7), 2.5);
  const StateVector sa = hybrid_to_dense(p.ms, phi, direct);
  const StateVector sb = hybrid_to_dense(p.ms, phi, stepped);
  CHECK((sa.amplitudes - sb.amplitudes).norm() < 1e-8);
}

TEST_CASE("nullspace start vector is rejected") {
  const Pipeline p = exact_pipeline(builtin_h3(), prepare_basis_state("10"), 1);
  // E has the nullspace direction (0, 1, -1)/sqrt(2)
  Vec null_vec = Vec::Zero(3);
  null_vec(1) = 1.0 / std::sqrt(2.0);
  null_vec(2) = -1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(fast_forward(p.sol, p.e, null_vec, 1.0), std::runtime_error);
}

TEST_CASE("observable traces") {
  const Pipeline p = exact_pipeline(builtin_h3(), prepare_basis_state("10"), 2);
  ExpectationCache cache(p.phi, {});
  HamiltonianSpec z1;
  z1.n_qubits = 2;
  z1.add_term(1.0, parse_label("Z1", 2));
  const Mat m_z1 = assemble_observable(p.ms, z1, cache);

  std::vector<Vec> path;
  std::vector<double> ts;
  for (int i = 0; i < 50; ++i) {
    const double t = 10.0 * i / 49.0;
    ts.push_back(t);
    path.push_back(fast_forward(p.sol, p.e, p.alpha0, t));
  }
  const std::vector<TraceSample> trace = observable_trace(path, m_z1);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    // closed form from the 2-level reduction: <Z1(t)> = -cos(4t)
    CHECK(trace[i].observable == doctest::Approx(-std::cos(4.0 * ts[i])).epsilon(1e-8));
    CHECK(trace[i].im_diagnostic < 1e-8);
  }

  // O = I gives the constant 1
  const Mat m_id = assemble_E(p.ms, cache);
  for (const TraceSample& s : observable_trace(path, m_id)) {
    CHECK(s.observable == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("H1 2q Z1 trace matches the dense oracle") {
  const HamiltonianSpec h = builtin_h1(2);
  const StateVector phi = prepare_layered_random_state(2, 5, 73);
  const Pipeline p = exact_pipeline(h, phi, 1);
  ExpectationCache cache(phi, {});
  HamiltonianSpec z1;
  z1.n_qubits = 2;
  z1.add_term(1.0, parse_label("Z1", 2));
  const Mat m_z1 = assemble_observable(p.ms, z1, cache);
  const Mat z1_dense = dense_pauli(z1.terms[0].op);

  for (double t : {0.0, 0.9, 4.4, 10.0}) {
    const Vec alpha_t = fast_forward(p.sol, p.e, p.alpha0, t);
    const double via_subspace = (alpha_t.adjoint() * m_z1 * alpha_t)(0, 0).real();
    const StateVector psi_t = exact_evolve(h, phi, t);
    const double dense_val = (psi_t.amplitudes.adjoint() * z1_dense * psi_t.amplitudes)(0, 0).real();
    CHECK(via_subspace == doctest::Approx(dense_val).epsilon(1e-8));
  }
}

TEST_CASE("vff mode") {
  const Pipeline p = exact_pipeline(builtin_h3(), prepare_basis_state("10"), 2);

  // N = 0 leaves alpha(0) (as a ket)
  const Vec v0 = vff_mode(p.sol, p.e, p.alpha0, 0.1, 0);
  CHECK((hybrid_to_dense(p.ms, p.phi, v0).amplitudes -
         hybrid_to_dense(p.ms, p.phi, p.alpha0).amplitudes)
            .norm() < 1e-10);

  // E-norm grows for any nonzero spectrum
  const Vec v = vff_mode(p.sol, p.e, p.alpha0, 0.1, 10);
  CHECK((v.adjoint() * p.e * v)(0, 0).real() > 1.0);

  // first-order convergence to fast_forward at fixed T = N dt
  const double T = 1.0;
  auto err = [&](double dt) {
    const long n = std::lround(T / dt);
    const Vec a = vff_mode(p.sol, p.e, p.alpha0, dt, n);
    const Vec b = fast_forward(p.sol, p.e, p.alpha0, T);
    const Vec diff = a - b;
    return std::sqrt(std::abs((diff.adjoint() * p.e * diff)(0, 0).real()));
  };
  const double e1 = err(1e-3);
  const double e2 = err(5e-4);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.25));
}

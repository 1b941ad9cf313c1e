#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "uqc/error.hpp"
#include "uqc/random_circuit.hpp"
#include "uqc/sparse_state.hpp"
#include "uqc/state_vector.hpp"

using namespace uqc;

namespace {

std::vector<Amplitude> amps(const StateVector& s) { return s.amplitudes(); }

}  // namespace

TEST_CASE("basis preparation") {
  CHECK(prepare_basis(1, "0").amplitude(0) == Amplitude(1.0));
  CHECK(prepare_basis(2, "10").amplitude(1) == Amplitude(1.0));
  CHECK(prepare_basis(3, "111").amplitude(7) == Amplitude(1.0));
  CHECK_THROWS_AS(prepare_basis(3, "11"), SizeError);
  CHECK_THROWS_AS(StateVector(kMaxDenseQubits + 1), LimitError);
}

TEST_CASE("single gate examples") {
  const double r = std::sqrt(0.5);
  auto s = apply_gate(StateVector(1), gate::h(0));
  CHECK(std::abs(s.amplitude(0) - r) < 1e-15);
  CHECK(std::abs(s.amplitude(1) - r) < 1e-15);

  s = apply_gate(prepare_basis(1, "1"), gate::phase(0, DyadicAngle(1, 2)));
  CHECK(s.amplitude(1) == Amplitude(0, 1));

  s = apply_gate(prepare_basis(3, "100"), gate::fanout(0, {1, 2}));
  CHECK(s.amplitude(7) == Amplitude(1.0));
}

TEST_CASE("run_circuit") {
  Rng rng(1);
  const auto psi = random_state(rng, 3);
  CHECK(state_distance(run_circuit(psi, Circuit(3)), psi) == 0.0);
  Circuit hh(1);
  hh.add_gate(gate::h(0));
  hh.add_gate(gate::h(0));
  CHECK(state_distance(run_circuit(StateVector(1), hh), StateVector(1)) < 1e-12);
  CHECK_THROWS_AS(run_circuit(StateVector(2), hh), SizeError);
}

TEST_CASE("output probability and distances") {
  auto plus = apply_gate(StateVector(1), gate::h(0));
  auto [p0, p1] = output_probability(plus, 0);
  CHECK(p0 == doctest::Approx(0.5));
  CHECK(p1 == doctest::Approx(0.5));
  std::tie(p0, p1) = output_probability(prepare_basis(2, "10"), 0);
  CHECK(p0 == 0.0);
  CHECK(p1 == 1.0);
  CHECK_THROWS_AS(output_probability(plus, 1), SizeError);

  const auto zero = StateVector(1), one = prepare_basis(1, "1");
  CHECK(state_distance(zero, zero) == 0.0);
  CHECK(state_distance(zero, one) == doctest::Approx(std::sqrt(2.0)));
  const auto minus_zero = StateVector::from_amplitudes({-1.0, 0.0});
  CHECK(state_distance(zero, minus_zero) == doctest::Approx(2.0));
  CHECK(phase_insensitive_distance(zero, minus_zero) < 1e-15);
  CHECK_THROWS_AS(state_distance(zero, StateVector(2)), SizeError);
}

TEST_CASE("product states and marginals") {
  Rng rng(9);
  std::vector<std::array<Amplitude, 2>> f{random_qubit(rng), random_qubit(rng), random_qubit(rng)};
  const auto s = StateVector::product(f);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(s.amplitude(5) - f[0][1] * f[1][0] * f[2][1]) < 1e-15);
  const auto m = marginal_distribution(s, {2, 0});
  CHECK(m[1] == doctest::Approx(std::norm(f[2][1]) * std::norm(f[0][0])));
  CHECK(probability_of(s, {2, 0}, 1) == doctest::Approx(m[1]));
}

TEST_CASE("gate kernels agree with explicit matrices") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const GateOp g = random_gate(rng, n, kAllGateKinds);
    const auto psi = random_state(rng, n);
    const auto expect = oracle::apply(oracle::gate_matrix(g, n), amps(psi));
    const auto got = apply_gate(psi, g);
    CHECK(oracle::max_abs_diff(expect, amps(got)) < 1e-10);
  }
}

TEST_CASE("norm preservation and involutions on random states") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    const GateOp g = random_gate(rng, n, kAllGateKinds);
    const auto psi = random_state(rng, n);
    const auto once = apply_gate(psi, g);
    CHECK(std::abs(once.norm() - 1.0) < 1e-12);
    const auto back = apply_gate(once, g.inverse());
    CHECK(state_distance(back, psi) < 1e-12);
    if (g.kind != GateKind::Phase && g.kind != GateKind::ControlledPhase) {
      CHECK(state_distance(apply_gate(once, g), psi) < 1e-12);
    }
  }
}

TEST_CASE("controlled phase is symmetric in its qubits") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng.below(4);
    GateOp g = random_gate(rng, n, GateKind::ControlledPhase);
    const auto psi = random_state(rng, n);
    auto sup = g.support();
    const auto perm = random_permutation(rng, sup.size());
    std::vector<Qubit> shuffled;
    for (auto i : perm) shuffled.push_back(sup[i]);
    GateOp h = gate::cphase(std::vector<Qubit>(shuffled.begin(), shuffled.end() - 1), shuffled.back(), g.angle);
    CHECK(state_distance(apply_gate(psi, g), apply_gate(psi, h)) < 1e-14);
  }
}

TEST_CASE("sparse backend matches dense on basis inputs") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    Circuit c(n);
    for (int k = 0; k < 12; ++k) c.add_gate(random_gate(rng, n, kAllGateKinds));
    const std::uint64_t idx = rng.below(std::uint64_t{1} << n);
    SparseState sp(n, idx);
    sp.run(c);
    const auto dense = run_circuit(StateVector::basis(n, idx), c);
    CHECK(state_distance(sp.to_dense(), dense) < 1e-12);
    CHECK(sp.output_probability(0).first == doctest::Approx(output_probability(dense, 0).first));
    CHECK(sp.probability_of({0, 1}, 2) == doctest::Approx(probability_of(dense, {0, 1}, 2)));
  }
}

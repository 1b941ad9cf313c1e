#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "uqc/bounds.hpp"
#include "uqc/error.hpp"
#include "uqc/random_circuit.hpp"

using namespace uqc;

namespace {

const std::vector<double> kEps{0.25, 0.5, 1.0};

// V_l as a product of dense matrices.
oracle::Matrix dense_v(const SegmentedCircuit& seg, std::size_t l) {
  const std::size_t Q = seg.layout.qubit_count();
  auto M = oracle::circuit_matrix(seg.segments[0]);
  for (std::size_t i = 1; i < l; ++i)
    M = oracle::circuit_matrix(seg.segments[i]) * oracle::gate_matrix(seg.big[i - 1], Q) * M;
  return M;
}

}  // namespace

TEST_CASE("no large phase gate means k = 0") {
  BoundsLayout L{2, 1, 1};
  Circuit c(L.qubit_count());
  c.add_layer({gate::h(0), gate::cnot(1, 2)});
  const auto seg = segment_circuit(c, L, 2);
  CHECK(seg.k() == 0);
  CHECK(seg.t_min == 0);
  const auto rep = analyze_bounds(seg, kEps, &c);
  CHECK(rep.pass);
  CHECK(rep.best_ancilla.min_sum == 0.0);
  for (double b : rep.best_ancilla.bound) CHECK(b == 1.0);
  CHECK(rep.recomposition_deviation < 1e-12);
}

TEST_CASE("a global phase after Hadamards") {
  // After H on every qubit each all-ones mass is 2^-t.
  for (std::size_t t = 2; t <= 5; ++t) {
    BoundsLayout L{t - 1, 0, 0};
    const std::size_t Q = L.qubit_count();
    Circuit c(Q);
    Layer hs;
    for (Qubit q = 0; q < Q; ++q) hs.push_back(gate::h(q));
    c.add_layer(hs);
    std::vector<Qubit> ctl;
    for (Qubit q = 0; q + 1 < Q; ++q) ctl.push_back(q);
    c.add_gate(gate::cphase(ctl, static_cast<Qubit>(Q - 1), DyadicAngle::pi()));
    const auto seg = segment_circuit(c, L, static_cast<int>(t));
    REQUIRE(seg.k() == 1);
    CHECK(seg.t_min == t);
    for (std::uint64_t x = 0; x < (1u << L.n); ++x) {
      CHECK(delta_l(seg, 1, x, 0, 0) == doctest::Approx(2 / std::sqrt(double(1u << t))));
      CHECK(delta_l_from_mass(seg, 1, x, 1, 0) == doctest::Approx(2 / std::sqrt(double(1u << t))));
    }
    CHECK(expected_delta_sq(seg, 1, 0, 0) == doctest::Approx(4.0 / double(1u << t)));
    // Larger thresholds skip the gate.
    CHECK(segment_circuit(c, L, static_cast<int>(t + 1)).k() == 0);
  }
}

TEST_CASE("toffoli gates are segmented through an H sandwich") {
  BoundsLayout L{2, 0, 1};
  Circuit c(L.qubit_count());
  c.add_gate(gate::toffoli({0, 1, 3}, 2));
  const auto seg = segment_circuit(c, L, 4);
  REQUIRE(seg.k() == 1);
  CHECK(seg.big[0].kind == GateKind::ControlledPhase);
  CHECK(seg.t_min == 4);
  CHECK(oracle::distance_up_to_phase(oracle::circuit_matrix(seg.recomposed()), oracle::circuit_matrix(c)) < 1e-12);
  // A basis input never puts mass on the all-ones pattern of a Toffoli
  // unless its controls are all set.
  CHECK(delta_l(seg, 1, 0, 0, 0) == doctest::Approx(0.0));
  CHECK(delta_l(seg, 1, 3, 0, 1) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("recomposition and mass identity on random instances") {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const auto inst = random_bounds_instance(rng, 8);
    const auto seg = segment_circuit(inst.circuit, inst.layout, inst.t);
    const std::size_t Q = inst.layout.qubit_count();
    CHECK(seg.segments.size() == seg.k() + 1);
    for (const auto& g : seg.big) CHECK(g.arity() >= static_cast<std::size_t>(inst.t));
    CHECK(oracle::distance_up_to_phase(oracle::circuit_matrix(seg.recomposed()), oracle::circuit_matrix(inst.circuit)) <
          1e-10);
    for (std::size_t l = 1; l <= seg.k(); ++l)
      for (int s = 0; s < 8; ++s) {
        const std::uint64_t x = rng.below(1u << inst.layout.n), b = rng.below(1u << (inst.layout.p + inst.layout.q));
        const int y = static_cast<int>(rng.below(2));
        CHECK(std::abs(delta_l(seg, l, x, y, b) - delta_l_from_mass(seg, l, x, y, b)) < 1e-10);
      }
    (void)Q;
  }
}

TEST_CASE("delta quantities against a dense oracle") {
  Rng rng(77);
  int checked = 0;
  while (checked < 6) {
    const auto inst = random_bounds_instance(rng, 8);
    const auto seg = segment_circuit(inst.circuit, inst.layout, inst.t);
    if (seg.k() == 0) continue;
    ++checked;
    const auto& L = inst.layout;
    const std::size_t Q = L.qubit_count();
    const std::uint64_t N = 1u << Q;
    for (std::size_t l = 1; l <= seg.k(); ++l) {
      const auto V = dense_v(seg, l);
      std::uint64_t mask = 0;
      for (Qubit q : seg.big[l - 1].support()) mask |= std::uint64_t{1} << q;
      // Column sums over all-ones rows: unitarity gives 2^{Q - t_l}.
      double total = 0;
      for (std::uint64_t in = 0; in < N; ++in) {
        double mass = 0;
        for (std::uint64_t z = 0; z < N; ++z)
          if ((z & mask) == mask) mass += std::norm(V(z, in));
        total += mass;
        const std::uint64_t x = in & ((1u << L.n) - 1), y = (in >> L.n) & 1, b = in >> (L.n + 1);
        CHECK(std::abs(delta_l(seg, l, x, int(y), b) - 2 * std::sqrt(mass)) < 1e-10);
      }
      CHECK(total == doctest::Approx(std::ldexp(1.0, int(Q - seg.big[l - 1].arity()))));
    }
    // Delta against dense C and C-tilde.
    const auto C = oracle::circuit_matrix(inst.circuit), Ct = oracle::circuit_matrix(seg.without_big());
    for (std::uint64_t in = 0; in < N; in += 3) {
      double d = 0;
      for (std::uint64_t z = 0; z < N; ++z) d += std::norm(C(z, in) - Ct(z, in));
      const std::uint64_t x = in & ((1u << L.n) - 1), y = (in >> L.n) & 1, b = in >> (L.n + 1);
      CHECK(std::abs(delta_total(seg, x, int(y), b) - std::sqrt(d)) < 1e-10);
    }
  }
}

TEST_CASE("frozen instance") {
  // x0 x1 | y | a: H on everything, CP(pi) over all four qubits.
  BoundsLayout L{2, 0, 1};
  Circuit c(4);
  c.add_layer({gate::h(0), gate::h(1), gate::h(2), gate::h(3)});
  c.add_gate(gate::cphase({0, 1, 2}, 3, DyadicAngle::pi()));
  const auto seg = segment_circuit(c, L, 3);
  const auto rc = check_removal(seg, {0.5, 1.0}, 0, 0);
  // Delta_1^2 = 4/16 for every x, Delta = Delta_1.
  CHECK(rc.sum_expected_sq == doctest::Approx(0.25));
  CHECK(rc.probability[0] == 0.0);
  CHECK(rc.probability[1] == 1.0);
  CHECK(rc.bound[1] == doctest::Approx(0.75));
  CHECK(rc.vacuous[0]);
  CHECK(rc.mass_bound == doctest::Approx(1.0));
  CHECK(rc.holds);
  const auto ba = check_best_ancilla(seg, {1.0});
  CHECK(ba.min_bound == doctest::Approx(0.5));
  CHECK(ba.bound[0] == doctest::Approx(0.5));
  CHECK(ba.holds);
}

TEST_CASE("random instances satisfy every bound") {
  Rng rng(2024);
  int vacuous = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = random_bounds_instance(rng);
    CHECK(inst.layout.qubit_count() <= 12);
    const auto seg = segment_circuit(inst.circuit, inst.layout, inst.t);
    const auto r = analyze_bounds(seg, kEps, &inst.circuit);
    CHECK(r.pass);
    CHECK(r.normalization_deviation < 1e-9);
    CHECK(r.recomposition_deviation < 1e-9);
    for (bool v : r.best_ancilla.vacuous) vacuous += v;
  }
  CHECK(vacuous > 0);
}

TEST_CASE("bounds input validation") {
  BoundsLayout L{2, 0, 0};
  CHECK_THROWS(segment_circuit(Circuit(3), L, 1));
  CHECK_THROWS_AS(segment_circuit(Circuit(4), L, 2), SizeError);
  BoundsLayout big{10, 2, 4};
  CHECK_THROWS_AS(analyze_bounds(segment_circuit(Circuit(17), big, 2), kEps), LimitError);
  Rng rng(1);
  CHECK_THROWS_AS(random_bounds_instance(rng, 20), SizeError);
}

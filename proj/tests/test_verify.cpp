#include <doctest.h>

#include "uqc/constructions.hpp"
#include "uqc/error.hpp"
#include "uqc/lowering.hpp"
#include "uqc/verify.hpp"

using namespace uqc;

namespace {

Circuit drop_gate(const Circuit& c, std::size_t layer, std::size_t index) {
  Circuit out(c.qubit_count());
  for (std::size_t l = 0; l < c.layer_count(); ++l) {
    Layer copy = c.layers()[l];
    if (l == layer) copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(index));
    out.add_layer(copy);
  }
  return out;
}

VerifyPlan exhaustive() {
  VerifyPlan p;
  p.strategy = Strategy::Exhaustive;
  p.product_trials = 8;
  return p;
}

}  // namespace

TEST_CASE("R_2 computes PA_2 exhaustively") {
  const auto g = associated_function(builtin_function("PA", 3));
  const auto r = build_assoc_circuit(fourier_coefficients(g));
  const auto rep = check_computes(r.circuit, r.layout.registers, [&](std::uint64_t s) { return g(s); }, exhaustive());
  CHECK(rep.pass);
  CHECK(rep.basis_trials == 8 * (1u << 13));
  CHECK(rep.product_trials == 64);
  CHECK(rep.basis_restoration_deviation < 1e-9);
  CHECK(rep.population_restored);
}

TEST_CASE("a corrupted R_2 fails under both strategies") {
  const auto g = associated_function(builtin_function("PA", 3));
  const auto r = build_assoc_circuit(fourier_coefficients(g));
  // Drop the first controlled phase of stage 1.
  std::size_t layer = 0;
  while (r.circuit.layers()[layer][0].kind != GateKind::ControlledPhase) ++layer;
  const Circuit bad = drop_gate(r.circuit, layer, 0);
  auto f = [&](std::uint64_t s) { return g(s); };
  const auto ex = check_computes(bad, r.layout.registers, f, exhaustive());
  CHECK_FALSE(ex.pass);
  REQUIRE(ex.witness.has_value());
  CHECK(ex.witness->deviation > 0.1);
  CHECK(ex.witness->start.size() == r.layout.registers.qubit_count());
  VerifyPlan sampled;
  sampled.basis_budget = 64;
  sampled.product_trials = 2;
  CHECK_FALSE(check_computes(bad, r.layout.registers, f, sampled).pass);
}

TEST_CASE("empty circuit computes the zero function") {
  RegisterMap regs;
  regs.allocate("X", RegisterRole::Input, 2);
  regs.allocate("Y", RegisterRole::Output, 1);
  const auto rep = check_computes(Circuit(3), regs, [](std::uint64_t) { return false; }, exhaustive());
  CHECK(rep.pass);
  CHECK(rep.input_settings == 8);
  regs.allocate("A", RegisterRole::Uninitialized, 2);
  CHECK(check_catalytic(Circuit(5), regs, exhaustive()).pass);
}

TEST_CASE("parity circuit helpers are restored") {
  const auto p = build_parity_gate_circuit(2);
  const auto rep = check_catalytic(p.circuit, p.layout.registers, exhaustive());
  CHECK(rep.pass);
  CHECK(rep.basis_trials == 32 * 16);
}

TEST_CASE("weight-phase circuit restores basis ancillas, not relative phases") {
  const auto q = build_or_reduction(2);
  const auto rep = check_catalytic(q.circuit, q.layout.registers, exhaustive());
  CHECK(rep.basis_restoration_deviation < 1e-9);
  CHECK(rep.population_deviation < 1e-9);
  CHECK(rep.population_restored);
  // Superposed A/B qubits pick up an x-dependent relative phase.
  CHECK(rep.strict_distance > 1e-3);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("catalytic check flags a dirty ancilla") {
  RegisterMap regs;
  regs.allocate("X", RegisterRole::Input, 1);
  regs.allocate("A", RegisterRole::Uninitialized, 1);
  Circuit c(2);
  c.add_gate(gate::cnot(0, 1));
  const auto rep = check_catalytic(c, regs, exhaustive());
  CHECK_FALSE(rep.pass);
  CHECK(rep.basis_restoration_deviation == doctest::Approx(1.0));
}

TEST_CASE("unitary equivalence") {
  Circuit fan(5);
  fan.add_gate(gate::fanout(0, {1, 2, 3, 4}));
  CHECK(unitary_equivalent(fan, lower_fanout(4), 1e-10));
  CHECK(unitary_equivalent(fan, fan, 1e-12));
  Circuit h(1), x(1);
  h.add_gate(gate::h(0));
  x.add_gate(gate::x(0));
  CHECK_FALSE(unitary_equivalent(h, x, 1e-3));
  // A global phase is ignored.
  Circuit zxzx(1);
  for (int i = 0; i < 2; ++i) {
    zxzx.add_gate(gate::z(0));
    zxzx.add_gate(gate::x(0));
  }
  CHECK(unitary_equivalent(zxzx, Circuit(1), 1e-12));
  CHECK_THROWS_AS(unitary_distance(Circuit(13), Circuit(13)), LimitError);
}

TEST_CASE("symmetric circuits end to end") {
  VerifyPlan plan;
  plan.basis_budget = 32;
  plan.product_trials = 4;
  for (std::size_t n : {1u, 2u}) {
    for (const char* name : {"PA", "OR", "AND"}) {
      for (bool cat : {false, true}) {
        const auto sc = build_symmetric_circuit(builtin_function(name, n), cat);
        const auto rep = check_symmetric_composed(sc, plan);
        INFO(rep.to_json().dump());
        CHECK(rep.pass);
        CHECK(rep.end_to_end.output_deviation < 1e-9);
        if (cat) CHECK(rep.end_to_end.strict_distance < 1e-9);
      }
    }
  }
}

TEST_CASE("reports are deterministic") {
  const auto sc = build_symmetric_circuit(builtin_function("OR", 2), true);
  VerifyPlan plan;
  plan.basis_budget = 16;
  plan.product_trials = 2;
  plan.seed = 99;
  const auto a = check_symmetric_composed(sc, plan).to_json().dump();
  plan.threads = 3;
  const auto b = check_symmetric_composed(sc, plan).to_json().dump();
  CHECK(a == b);
}

#include <doctest.h>

#include "uqc/circuit_io.hpp"
#include "uqc/error.hpp"
#include "uqc/random_circuit.hpp"

using namespace uqc;

TEST_CASE("text format round-trips") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    Circuit c(n);
    for (int k = 0; k < 10; ++k) {
      if (rng.below(3) == 0) {
        c.add_layer({gate::h(0), gate::phase(1, random_angle(rng))});
        continue;
      }
      c.add_gate(random_gate(rng, n, kAllGateKinds));
    }
    c = Circuit(c.repacked());
    const std::string text = to_text(c);
    const Circuit back = parse_text(text);
    CHECK(back == c);
    CHECK(to_text(back) == text);
  }
}

TEST_CASE("text format details") {
  const Circuit c = parse_text(
      "# comment\nQUBITS 3\nH q[1]   # trailing\nCP q[0] q[2] 3/2^3\n---\nFANOUT q[2] q[0] q[1]\n\n");
  CHECK(c.layer_count() == 2);
  CHECK(c.layers()[0][1] == gate::cphase({0}, 2, DyadicAngle(3, 3)));
  CHECK(c.layers()[1][0] == gate::fanout(2, {0, 1}));
  CHECK(parse_text("QUBITS 2\n").empty());
}

TEST_CASE("parse errors carry line numbers") {
  const auto line_of = [](const char* text) {
    try {
      parse_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("H q[0]\n") == 1);
  CHECK(line_of("QUBITS 2\nH q[0]\nFOO q[1]\n") == 3);
  CHECK(line_of("QUBITS 2\nH q[5]\n") == 2);
  CHECK(line_of("QUBITS 2\nP q[0]\n") == 2);
  CHECK(line_of("QUBITS 2\nP q[0] 1/4\n") == 2);
  CHECK(line_of("QUBITS 2\nH q[0]\nH q[0]\n") == 3);
}

TEST_CASE("qasm export") {
  Circuit c(3);
  c.add_layer({gate::h(0), gate::phase(1, DyadicAngle(1, 2))});
  c.add_gate(gate::fanout(0, {1, 2}));
  c.add_gate(gate::cphase({0, 1}, 2, DyadicAngle(1, 3)));
  const std::string q = to_qasm(c);
  CHECK(q.find("qubit[3] q;") != std::string::npos);
  CHECK(q.find("p(2*pi*1/4) q[1];") != std::string::npos);
  CHECK(q.find("cx q[0], q[2];") != std::string::npos);
  CHECK(q.find("ctrl(2) @ p(2*pi*1/8) q[0], q[1], q[2];") != std::string::npos);
}

TEST_CASE("register map json round-trips") {
  RegisterMap m;
  m.allocate("X", RegisterRole::Input, 2);
  m.allocate("Y", RegisterRole::Output, 1);
  m.allocate("A", RegisterRole::Uninitialized, {"A_1(1)", "A_2(1)"});
  m.validate();
  CHECK(m.q() == 2);
  const RegisterMap back = registers_from_json(registers_to_json(m));
  CHECK(back == m);
  CHECK(back.label(3) == "A_1(1)");
}

#include <doctest.h>

#include "uqc/circuit.hpp"
#include "uqc/error.hpp"

using namespace uqc;

TEST_CASE("gate arity validation") {
  CHECK_NOTHROW(gate::fanout(0, {1, 2}).validate());
  CHECK_THROWS_AS(gate::fanout(0, {}).validate(), GateError);
  CHECK_THROWS_AS(gate::cnot(1, 1).validate(), GateError);
  CHECK_THROWS_AS(gate::toffoli({}, 1).validate(), GateError);
  CHECK_THROWS_AS(gate::parity({0, 2}, 2).validate(), GateError);
  CHECK_THROWS_AS(gate::h(3).validate(3), GateError);
}

TEST_CASE("layers reject overlapping gates") {
  Circuit c(3);
  CHECK_THROWS_AS(c.add_layer({gate::h(0), gate::cnot(0, 1)}), GateError);
  c.add_layer({gate::h(0), gate::cnot(1, 2)});
  c.add_layer({});
  CHECK(c.layer_count() == 1);
}

TEST_CASE("depth and size") {
  Circuit single(1);
  single.add_gate(gate::h(0));
  CHECK(depth(single) == 1);
  CHECK(size(single) == 1);

  Circuit two(4);
  two.add_layer({gate::cnot(0, 1), gate::cnot(2, 3)});
  CHECK(depth(two) == 1);
  CHECK(size(two) == 4);

  Circuit fan(5);
  fan.add_gate(gate::fanout(0, {1, 2, 3, 4}));
  CHECK(size(fan) == 5);

  CHECK(depth(Circuit(3)) == 0);
  CHECK(size(Circuit(3)) == 0);
}

TEST_CASE("greedy repacking moves gates to their earliest layer") {
  Circuit c(3);
  c.add_gate(gate::h(0));
  c.add_gate(gate::h(1));
  c.add_gate(gate::cnot(0, 1));
  c.add_gate(gate::h(2));
  CHECK(c.layer_count() == 4);
  CHECK(depth(c) == 2);
  const Circuit r = c.repacked();
  CHECK(r.layer_count() == 2);
  CHECK(r.layers()[0].size() == 3);
  CHECK(r.gate_count() == c.gate_count());
}

TEST_CASE("size is additive and depth subadditive under concatenation") {
  Circuit a(3), b(3);
  a.add_layer({gate::h(0), gate::cnot(1, 2)});
  a.add_gate(gate::toffoli({0, 1}, 2));
  b.add_gate(gate::fanout(2, {0, 1}));
  b.add_gate(gate::h(1));
  Circuit ab = a;
  ab.append(b);
  CHECK(size(ab) == size(a) + size(b));
  CHECK(depth(ab) <= depth(a) + depth(b));
}

TEST_CASE("inverse reverses layers and negates phases") {
  Circuit c(2);
  c.add_gate(gate::phase(0, DyadicAngle(1, 3)));
  c.add_gate(gate::cphase({0}, 1, DyadicAngle(1, 2)));
  const Circuit inv = c.inverse();
  CHECK(inv.layers()[0][0] == gate::cphase({0}, 1, DyadicAngle(3, 2)));
  CHECK(inv.layers()[1][0] == gate::phase(0, DyadicAngle(7, 3)));
  CHECK(inv.inverse() == c);
}

TEST_CASE("remapping and census") {
  Circuit c(2);
  c.add_gate(gate::cnot(0, 1));
  c.add_gate(gate::h(1));
  std::vector<Qubit> map{3, 1};
  const Circuit r = c.remapped(map, 4);
  CHECK(r.layers()[0][0] == gate::cnot(3, 1));
  const auto cen = census(r);
  CHECK(cen.at("CNOT") == 1);
  CHECK(cen.at("H") == 1);
  CHECK(uses_only_elementary(r));
}

TEST_CASE("light cone follows gate supports backwards") {
  Circuit c(5);
  c.add_gate(gate::cnot(0, 1));
  c.add_gate(gate::cnot(1, 2));
  c.add_gate(gate::h(4));
  CHECK(light_cone(c, 2) == std::vector<Qubit>{0, 1, 2});
  CHECK(light_cone(c, 0) == std::vector<Qubit>{0, 1});
  CHECK(light_cone(c, 3) == std::vector<Qubit>{3});
}

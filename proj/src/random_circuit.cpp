#include "uqc/random_circuit.hpp"

#include <algorithm>
#include <cmath>

#include "uqc/error.hpp"

namespace uqc {

DyadicAngle random_angle(Rng& rng, int max_exponent) {
  const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_exponent)));
  return DyadicAngle(static_cast<std::int64_t>(rng.below(std::uint64_t{1} << t)), t);
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t count) {
  std::vector<std::size_t> p(count);
  for (std::size_t i = 0; i < count; ++i) p[i] = i;
  for (std::size_t i = count; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

GateOp random_gate(Rng& rng, std::size_t qubit_count, GateKind kind) {
  const auto perm = random_permutation(rng, qubit_count);
  const auto pick = [&](std::size_t k) {
    std::vector<Qubit> qs;
    for (std::size_t i = 0; i < k; ++i) qs.push_back(static_cast<Qubit>(perm[i]));
    return qs;
  };
  const auto arity = [&] {
    if (qubit_count < 2) throw SizeError("multi-qubit gate needs at least two qubits");
    return 2 + static_cast<std::size_t>(rng.below(qubit_count - 1));
  };
  switch (kind) {
    case GateKind::H: return gate::h(pick(1)[0]);
    case GateKind::X: return gate::x(pick(1)[0]);
    case GateKind::Z: return gate::z(pick(1)[0]);
    case GateKind::Phase: return gate::phase(pick(1)[0], random_angle(rng));
    case GateKind::CNOT: {
      if (qubit_count < 2) throw SizeError("CNOT needs two qubits");
      auto qs = pick(2);
      return gate::cnot(qs[0], qs[1]);
    }
    case GateKind::FanOut: {
      auto qs = pick(arity());
      return gate::fanout(qs[0], std::vector<Qubit>(qs.begin() + 1, qs.end()));
    }
    case GateKind::Toffoli:
    case GateKind::ControlledPhase:
    case GateKind::Parity: {
      auto qs = pick(arity());
      const Qubit t = qs.back();
      qs.pop_back();
      if (kind == GateKind::Toffoli) return gate::toffoli(qs, t);
      if (kind == GateKind::Parity) return gate::parity(qs, t);
      return gate::cphase(qs, t, random_angle(rng));
    }
  }
  throw InvariantError("unhandled gate kind");
}

GateOp random_gate(Rng& rng, std::size_t qubit_count, std::span<const GateKind> kinds) {
  return random_gate(rng, qubit_count, kinds[rng.below(kinds.size())]);
}

Circuit random_elementary_circuit(Rng& rng, std::size_t qubit_count, std::size_t depth) {
  Circuit c(qubit_count);
  for (std::size_t d = 0; d < depth; ++d) {
    const auto perm = random_permutation(rng, qubit_count);
    Layer layer;
    std::size_t i = 0;
    while (i < qubit_count) {
      const auto q = static_cast<Qubit>(perm[i]);
      const auto choice = rng.below(4);
      if (choice == 0) {
        ++i;
      } else if (choice == 1) {
        layer.push_back(gate::h(q));
        ++i;
      } else if (choice == 2 || i + 1 == qubit_count) {
        layer.push_back(gate::phase(q, random_angle(rng, 4)));
        ++i;
      } else {
        layer.push_back(gate::cnot(q, static_cast<Qubit>(perm[i + 1])));
        i += 2;
      }
    }
    c.add_layer(std::move(layer));
  }
  return c;
}

std::array<Amplitude, 2> random_qubit(Rng& rng) {
  Amplitude a{rng.normal(), rng.normal()}, b{rng.normal(), rng.normal()};
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

StateVector random_state(Rng& rng, std::size_t qubit_count) {
  std::vector<Amplitude> amps(std::size_t{1} << qubit_count);
  double sum = 0.0;
  for (auto& a : amps) {
    a = {rng.normal(), rng.normal()};
    sum += std::norm(a);
  }
  const double s = 1.0 / std::sqrt(sum);
  for (auto& a : amps) a *= s;
  return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace uqc

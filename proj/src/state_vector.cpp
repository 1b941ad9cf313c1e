#include "uqc/state_vector.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "gate_action.hpp"
#include "uqc/error.hpp"
#include "uqc/registers.hpp"

namespace uqc {

using detail::bit;
using detail::mask_of;

namespace {

void check_size(std::size_t qubit_count) {
  if (qubit_count < 1) throw SizeError("state needs at least one qubit");
  if (qubit_count > kMaxDenseQubits) {
    throw LimitError("dense state on " + std::to_string(qubit_count) + " qubits exceeds the " +
                     std::to_string(kMaxDenseQubits) + "-qubit limit");
  }
}

}  // namespace

StateVector::StateVector(std::size_t qubit_count) {
  check_size(qubit_count);
  qubit_count_ = qubit_count;
  amps_.assign(std::size_t{1} << qubit_count, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t qubit_count, std::uint64_t index) {
  StateVector s(qubit_count);
  if (index >= s.dimension()) throw SizeError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_bits(std::string_view bits) {
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') idx |= bit(static_cast<Qubit>(j));
    else if (bits[j] != '0') throw SizeError("bit string may only contain 0 and 1");
  }
  return basis(bits.size(), idx);
}

StateVector StateVector::product(const std::vector<std::array<Amplitude, 2>>& factors) {
  check_size(factors.size());
  StateVector s;
  s.qubit_count_ = factors.size();
  s.amps_.assign(std::size_t{1} << factors.size(), Amplitude{0.0, 0.0});
  s.amps_[0] = 1.0;
  // Grow the tensor product one qubit at a time.
  std::size_t filled = 1;
  for (const auto& f : factors) {
    for (std::size_t i = 0; i < filled; ++i) {
      s.amps_[i + filled] = s.amps_[i] * f[1];
      s.amps_[i] *= f[0];
    }
    filled <<= 1;
  }
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) throw SizeError("amplitude count must be a power of two >= 2");
  StateVector s;
  s.qubit_count_ = static_cast<std::size_t>(std::countr_zero(dim));
  check_size(s.qubit_count_);
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::apply_h(Qubit q) {
  const std::size_t stride = bit(q);
  const double r = std::numbers::sqrt2 / 2.0;
  for (std::size_t hi = 0; hi < amps_.size(); hi += 2 * stride) {
    for (std::size_t i = hi; i < hi + stride; ++i) {
      const Amplitude a = amps_[i];
      const Amplitude b = amps_[i + stride];
      amps_[i] = (a + b) * r;
      amps_[i + stride] = (a - b) * r;
    }
  }
}

void StateVector::apply_diagonal(std::uint64_t mask, Amplitude phase) {
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if ((i & mask) == mask) amps_[i] *= phase;
}

void StateVector::apply_permutation(const GateOp& g) {
  // Every classical gate here is an involution; swap each pair once.
  const std::size_t dim = amps_.size();
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::Toffoli: {
      const std::uint64_t cm = mask_of(g.controls);
      const std::uint64_t t = bit(g.targets[0]);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & cm) == cm && !(i & t)) std::swap(amps_[i], amps_[i | t]);
      break;
    }
    case GateKind::FanOut: {
      const std::uint64_t c = bit(g.controls[0]);
      const std::uint64_t tm = mask_of(g.targets);
      const std::uint64_t low = tm & (~tm + 1);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & c) && !(i & low)) std::swap(amps_[i], amps_[i ^ tm]);
      break;
    }
    case GateKind::Parity: {
      const std::uint64_t sm = mask_of(g.controls);
      const std::uint64_t t = bit(g.targets[0]);
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & t) && (std::popcount(i & sm) & 1)) std::swap(amps_[i], amps_[i | t]);
      break;
    }
    default:
      throw InvariantError("apply_permutation on non-classical gate");
  }
}

void StateVector::apply(const GateOp& g) {
  g.validate(qubit_count_);
  switch (g.kind) {
    case GateKind::H:
      apply_h(g.targets[0]);
      break;
    case GateKind::Phase:
    case GateKind::Z:
    case GateKind::ControlledPhase: {
      const DyadicAngle a = detail::diagonal_angle(g);
      if (!a.is_zero()) apply_diagonal(detail::diagonal_mask(g), a.phasor());
      break;
    }
    default:
      apply_permutation(g);
  }
}

void StateVector::run(const Circuit& circuit) {
  if (circuit.qubit_count() != qubit_count_) {
    throw SizeError("circuit has " + std::to_string(circuit.qubit_count()) + " qubits, state has " +
                    std::to_string(qubit_count_));
  }
  for (const auto& layer : circuit.layers())
    for (const auto& g : layer) apply(g);
}

StateVector prepare_basis(std::size_t qubit_count, std::string_view bits) {
  if (bits.size() != qubit_count) throw SizeError("bit string length does not match qubit count");
  return StateVector::from_bits(bits);
}

StateVector apply_gate(StateVector state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

StateVector run_circuit(StateVector state, const Circuit& circuit) {
  state.run(circuit);
  return state;
}

std::pair<double, double> output_probability(const StateVector& state, Qubit qubit) {
  if (qubit >= state.qubit_count()) throw SizeError("qubit index out of range");
  const std::uint64_t b = bit(qubit);
  double p1 = 0.0, total = 0.0;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double w = std::norm(amps[i]);
    total += w;
    if (i & b) p1 += w;
  }
  return {(total - p1) / total, p1 / total};
}

double probability_of(const StateVector& state, const std::vector<Qubit>& qubits, std::uint64_t value) {
  for (Qubit q : qubits)
    if (q >= state.qubit_count()) throw SizeError("qubit index out of range");
  const std::uint64_t mask = mask_of(qubits);
  const std::uint64_t want = scatter_bits(value, qubits);
  double p = 0.0;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    if ((i & mask) == want) p += std::norm(amps[i]);
  return p;
}

std::vector<double> marginal_distribution(const StateVector& state, const std::vector<Qubit>& qubits) {
  if (qubits.size() > 24) throw LimitError("marginal over more than 24 qubits");
  for (Qubit q : qubits)
    if (q >= state.qubit_count()) throw SizeError("qubit index out of range");
  std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) out[gather_bits(i, qubits)] += std::norm(amps[i]);
  return out;
}

namespace {

void require_same_size(const StateVector& a, const StateVector& b) {
  if (a.qubit_count() != b.qubit_count()) throw SizeError("states have different qubit counts");
}

}  // namespace

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  require_same_size(a, b);
  Amplitude sum = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) sum += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return sum;
}

double state_distance(const StateVector& a, const StateVector& b) {
  require_same_size(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) sum += std::norm(a.amplitudes()[i] - b.amplitudes()[i]);
  return std::sqrt(sum);
}

double phase_insensitive_distance(const StateVector& a, const StateVector& b) {
  // Align b to a by the phase of <a|b>, then take the plain distance; this
  // avoids the cancellation in sqrt(2 - 2|<a|b>|) for nearly equal states.
  const Amplitude ip = inner_product(a, b);
  const double mag = std::abs(ip);
  const Amplitude rot = mag > 0.0 ? std::conj(ip) / mag : Amplitude{1.0, 0.0};
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) sum += std::norm(a.amplitudes()[i] - rot * b.amplitudes()[i]);
  return std::sqrt(sum);
}

}  // namespace uqc

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uqc/dyadic_angle.hpp"

namespace uqc {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t {
  H,
  Phase,            // Z(theta) on one qubit
  CNOT,
  X,
  Z,
  FanOut,           // one control XORed into >= 1 targets
  Toffoli,          // AND of >= 1 controls XORed into one target
  ControlledPhase,  // phase theta on the all-ones subspace of its qubits
  Parity,           // XOR of >= 1 sources into one target
};

inline constexpr GateKind kAllGateKinds[] = {GateKind::H,       GateKind::Phase,  GateKind::CNOT,
                                             GateKind::X,       GateKind::Z,      GateKind::FanOut,
                                             GateKind::Toffoli, GateKind::ControlledPhase, GateKind::Parity};

std::string_view kind_name(GateKind kind);

/// One gate application. For Parity the "controls" are the source qubits.
struct GateOp {
  GateKind kind = GateKind::H;
  std::vector<Qubit> controls;
  std::vector<Qubit> targets;
  DyadicAngle angle;  // Phase and ControlledPhase only

  /// All qubits the gate acts on, controls first.
  std::vector<Qubit> support() const;
  std::size_t arity() const { return controls.size() + targets.size(); }
  bool touches(Qubit q) const;

  /// Throws GateError on arity violations or repeated qubits.
  void validate() const;
  /// Throws GateError if any qubit index is >= qubit_count.
  void validate(std::size_t qubit_count) const;

  GateOp inverse() const;
  bool is_self_inverse() const;
  /// True for kinds that permute computational basis states without phases.
  bool is_classical() const;
  bool is_diagonal() const;

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

namespace gate {

GateOp h(Qubit q);
GateOp phase(Qubit q, DyadicAngle angle);
GateOp x(Qubit q);
GateOp z(Qubit q);
GateOp cnot(Qubit control, Qubit target);
GateOp fanout(Qubit control, std::vector<Qubit> targets);
GateOp toffoli(std::vector<Qubit> controls, Qubit target);
GateOp cphase(std::vector<Qubit> controls, Qubit target, DyadicAngle angle);
/// Multi-qubit Z (ControlledPhase(pi)) on the given qubits; the last is the target.
GateOp multi_z(std::span<const Qubit> qubits);
GateOp parity(std::vector<Qubit> sources, Qubit target);

}  // namespace gate

}  // namespace uqc

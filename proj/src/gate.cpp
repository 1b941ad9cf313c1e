#include "uqc/gate.hpp"

#include <algorithm>

#include "uqc/error.hpp"

namespace uqc {

std::string_view kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::Phase: return "P";
    case GateKind::CNOT: return "CNOT";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::FanOut: return "FANOUT";
    case GateKind::Toffoli: return "TOFFOLI";
    case GateKind::ControlledPhase: return "CP";
    case GateKind::Parity: return "PARITY";
  }
  return "?";
}

std::vector<Qubit> GateOp::support() const {
  std::vector<Qubit> out = controls;
  out.insert(out.end(), targets.begin(), targets.end());
  return out;
}

bool GateOp::touches(Qubit q) const {
  return std::find(controls.begin(), controls.end(), q) != controls.end() ||
         std::find(targets.begin(), targets.end(), q) != targets.end();
}

void GateOp::validate() const {
  const auto fail = [this](const std::string& why) {
    throw GateError(std::string(kind_name(kind)) + ": " + why);
  };
  const std::size_t nc = controls.size();
  const std::size_t nt = targets.size();
  switch (kind) {
    case GateKind::H:
    case GateKind::Phase:
    case GateKind::X:
    case GateKind::Z:
      if (nc != 0 || nt != 1) fail("expects exactly one target and no controls");
      break;
    case GateKind::CNOT:
      if (nc != 1 || nt != 1) fail("expects one control and one target");
      break;
    case GateKind::FanOut:
      if (nc != 1 || nt < 1) fail("expects one control and at least one target");
      break;
    case GateKind::Toffoli:
    case GateKind::ControlledPhase:
    case GateKind::Parity:
      if (nc < 1 || nt != 1) fail("expects at least one control and one target");
      break;
  }
  std::vector<Qubit> all = support();
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) fail("repeated qubit index");
}

void GateOp::validate(std::size_t qubit_count) const {
  validate();
  for (Qubit q : support()) {
    if (q >= qubit_count) {
      throw GateError(std::string(kind_name(kind)) + ": qubit " + std::to_string(q) + " out of range for " +
                      std::to_string(qubit_count) + " qubits");
    }
  }
}

GateOp GateOp::inverse() const {
  GateOp out = *this;
  if (kind == GateKind::Phase || kind == GateKind::ControlledPhase) out.angle = -angle;
  return out;
}

bool GateOp::is_self_inverse() const {
  if (kind == GateKind::Phase || kind == GateKind::ControlledPhase) return angle == -angle;
  return true;
}

bool GateOp::is_classical() const {
  switch (kind) {
    case GateKind::CNOT:
    case GateKind::X:
    case GateKind::FanOut:
    case GateKind::Toffoli:
    case GateKind::Parity:
      return true;
    default:
      return false;
  }
}

bool GateOp::is_diagonal() const {
  return kind == GateKind::Phase || kind == GateKind::Z || kind == GateKind::ControlledPhase;
}

namespace gate {

GateOp h(Qubit q) { return {GateKind::H, {}, {q}, {}}; }
GateOp phase(Qubit q, DyadicAngle angle) { return {GateKind::Phase, {}, {q}, angle}; }
GateOp x(Qubit q) { return {GateKind::X, {}, {q}, {}}; }
GateOp z(Qubit q) { return {GateKind::Z, {}, {q}, {}}; }
GateOp cnot(Qubit control, Qubit target) { return {GateKind::CNOT, {control}, {target}, {}}; }
GateOp fanout(Qubit control, std::vector<Qubit> targets) {
  return {GateKind::FanOut, {control}, std::move(targets), {}};
}
GateOp toffoli(std::vector<Qubit> controls, Qubit target) {
  return {GateKind::Toffoli, std::move(controls), {target}, {}};
}
GateOp cphase(std::vector<Qubit> controls, Qubit target, DyadicAngle angle) {
  return {GateKind::ControlledPhase, std::move(controls), {target}, angle};
}
GateOp multi_z(std::span<const Qubit> qubits) {
  if (qubits.size() < 2) throw GateError("multi_z needs at least two qubits");
  return cphase(std::vector<Qubit>(qubits.begin(), qubits.end() - 1), qubits.back(), DyadicAngle::pi());
}
GateOp parity(std::vector<Qubit> sources, Qubit target) {
  return {GateKind::Parity, std::move(sources), {target}, {}};
}

}  // namespace gate

}  // namespace uqc

#pragma once

// Bit-mask view of a gate, shared by the dense and sparse kernels.

#include <cstdint>

#include "uqc/error.hpp"
#include "uqc/gate.hpp"

namespace uqc::detail {

inline std::uint64_t bit(Qubit q) { return std::uint64_t{1} << q; }

inline std::uint64_t mask_of(const std::vector<Qubit>& qs) {
  std::uint64_t m = 0;
  for (Qubit q : qs) m |= bit(q);
  return m;
}

/// Image of a basis index under a classical (permutation) gate.
inline std::uint64_t classical_image(const GateOp& g, std::uint64_t idx) {
  switch (g.kind) {
    case GateKind::X:
      return idx ^ bit(g.targets[0]);
    case GateKind::CNOT:
    case GateKind::Toffoli: {
      const std::uint64_t cm = mask_of(g.controls);
      return (idx & cm) == cm ? idx ^ bit(g.targets[0]) : idx;
    }
    case GateKind::FanOut:
      return (idx & bit(g.controls[0])) ? idx ^ mask_of(g.targets) : idx;
    case GateKind::Parity:
      return (__builtin_popcountll(idx & mask_of(g.controls)) & 1) ? idx ^ bit(g.targets[0]) : idx;
    default:
      throw InvariantError("classical_image on non-classical gate");
  }
}

/// Mask whose all-ones pattern picks up the diagonal gate's phase.
inline std::uint64_t diagonal_mask(const GateOp& g) {
  switch (g.kind) {
    case GateKind::Phase:
    case GateKind::Z:
      return bit(g.targets[0]);
    case GateKind::ControlledPhase:
      return mask_of(g.controls) | bit(g.targets[0]);
    default:
      throw InvariantError("diagonal_mask on non-diagonal gate");
  }
}

inline DyadicAngle diagonal_angle(const GateOp& g) {
  return g.kind == GateKind::Z ? DyadicAngle::pi() : g.angle;
}

}  // namespace uqc::detail

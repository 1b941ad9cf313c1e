#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "uqc/circuit.hpp"
#include "uqc/registers.hpp"

namespace uqc {

enum class GateSet : std::uint8_t {
  Elementary,  // H, P, CNOT
  Extended,    // Elementary plus FANOUT and TOFFOLI
  UnboundedZ,  // Elementary plus CP(pi) on any number of qubits
};

std::string_view gate_set_name(GateSet set);
GateSet parse_gate_set(std::string_view name);
bool in_gate_set(const GateOp& gate, GateSet set);

enum class ToffoliMode : std::uint8_t {
  ToElementary,  // H, P(+-pi/4 family), CNOT; k >= 3 needs one dirty ancilla
  ZSandwich,     // H on the target around CP(pi)
};

/// CNOT doubling tree on k+1 qubits (qubit 0 the control) equal to a
/// fan-out with k targets whatever the targets hold.
Circuit lower_fanout(std::size_t k);

/// Toffoli with controls 0..k-1 and target k. For k >= 3 in ToElementary
/// mode qubit k+1 is a dirty ancilla and the circuit has k+2 qubits;
/// otherwise it has k+1.
Circuit lower_toffoli(std::size_t k, ToffoliMode mode = ToffoliMode::ToElementary);

/// Parity of qubits 0..l-1 into qubit l as a CNOT tree.
Circuit lower_parity(std::size_t l);

/// 1-controlled phase on 2 qubits: P(a/2) on both, CNOT, P(-a/2), CNOT.
Circuit lower_controlled_phase(DyadicAngle angle);

/// CP(angle) on qubits 0..k, then a fan-out from qubit k+1 onto qubits 0
/// and k+2, then CP(-angle) on 0..k. Used as the reference pattern.
Circuit phase_fanout_sandwich_pattern(std::size_t k, DyadicAngle angle);
/// The rewritten pattern: each CP becomes CP1(a/2), Toffoli, CP1(-a/2) on
/// qubit 0 with the fan-out untouched in between (two (k-1)-controlled
/// Toffolis and four 1-controlled phases). Extended-set gates remain.
Circuit lower_phase_fanout_sandwich(std::size_t k, DyadicAngle angle);

struct LoweringOptions {
  GateSet target = GateSet::Elementary;
  /// Pair CP(a) ... CP(-a) around segments that only flip one of their qubits.
  bool pair_sandwiches = true;
  /// Use qubits idle in the current layer as dirty ancillas before adding
  /// fresh ones.
  bool borrow_idle = true;
};

struct LoweringReport {
  GateSet target = GateSet::Elementary;
  std::map<std::string, std::size_t> census_before, census_after;
  std::size_t depth_before = 0, depth_after = 0;
  std::size_t size_before = 0, size_after = 0;
  std::size_t qubits_before = 0, qubits_after = 0;
  /// Fresh dirty ancillas appended as the uninitialized register "T".
  std::size_t ancillas_added = 0;
  /// Toffoli blocks that borrowed an idle circuit qubit instead.
  std::size_t ancillas_borrowed = 0;
  std::size_t sandwich_pairs = 0;
  std::size_t uninitialized_before = 0, uninitialized_after = 0;
};

struct LoweringResult {
  Circuit circuit;
  RegisterMap registers;
  LoweringReport report;
};

/// Rewrites every gate outside `options.target`. The result is equal to the
/// source as a unitary (on the source qubits, for every state of the added
/// ancillas, which are restored).
LoweringResult lower_circuit(const Circuit& circuit, const RegisterMap& registers, const LoweringOptions& options = {});
LoweringResult lower_circuit(const Circuit& circuit, const LoweringOptions& options = {});

}  // namespace uqc

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uqc/boolean_fn.hpp"
#include "uqc/circuit.hpp"
#include "uqc/constructions.hpp"
#include "uqc/registers.hpp"

namespace uqc {

enum class Strategy { Exhaustive, Sampled };
std::string_view strategy_name(Strategy s);
Strategy parse_strategy(std::string_view name);

/// Exhaustive enumeration is limited to this many (input, ancilla) states.
inline constexpr std::uint64_t kExhaustiveBudget = std::uint64_t{1} << 22;
/// Product-state trials need a dense state; larger circuits skip them.
inline constexpr std::size_t kProductTrialQubits = 24;

/// Whether an exhaustive sweep over the registers fits kExhaustiveBudget.
bool exhaustive_feasible(const RegisterMap& registers);

struct VerifyPlan {
  Strategy strategy = Strategy::Sampled;
  std::size_t basis_budget = 256;  // per input setting, sampled strategy
  std::size_t product_trials = 32;  // per input setting
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

/// Starting point of the worst trial seen.
struct Witness {
  std::string kind;  // "basis" or "product"
  std::string start;  // char j = qubit j; '?' marks a random product-state qubit
  std::uint64_t trial = 0;
  double deviation = 0;
};

struct VerifyReport {
  std::string check;
  Strategy strategy = Strategy::Sampled;
  double tolerance = 0;
  std::size_t input_settings = 0;
  std::size_t basis_trials = 0;
  std::size_t product_trials = 0;
  std::vector<std::string> notes;

  // 1 - P(checked qubits hold the predicted value), worst over trials.
  double output_deviation = 0;
  // 1 - P(uninitialized qubits hold their initial bits), basis trials.
  double basis_restoration_deviation = 0;
  // Product trials: total-variation distance of the uninitialized-register
  // populations from the initial ones.
  double population_deviation = 0;
  // Product trials: distance from the nearest state of the form
  // (initial ancilla state) (x) (anything), and 1 - purity of the ancilla.
  double strict_distance = 0;
  double impurity = 0;

  bool output_pass = true;
  bool population_restored = true;  // basis restoration and populations
  bool strictly_restored = true;  // basis restoration and strict distance
  bool pass = true;
  std::optional<Witness> witness;

  nlohmann::ordered_json to_json() const;
};

/// Predicted bits of the checked qubits for a trial starting from basis
/// index `start` (uninitialized qubits read 0 in product trials).
using Prediction = std::function<std::uint64_t(std::uint64_t start)>;

/// Runs basis and product-state trials. Inputs and outputs range over all
/// settings (at most 2^12, otherwise sampled); initialized qubits start at 0;
/// uninitialized qubits are enumerated (exhaustive) or sampled. `pass`
/// requires correct outputs and population restoration.
VerifyReport check_mapping(const Circuit& circuit, const RegisterMap& registers, const std::vector<Qubit>& checked,
                           const Prediction& predict, const VerifyPlan& plan);

/// The output qubit ends in y XOR f(x), with x read from the input registers
/// in allocation order.
VerifyReport check_computes(const Circuit& circuit, const RegisterMap& registers,
                            const std::function<bool(std::uint64_t)>& f, const VerifyPlan& plan);

/// Uninitialized registers are returned to their initial state. `pass` uses
/// the strict reading (no ancilla-dependent relative phase survives); the
/// population-only reading is reported alongside.
VerifyReport check_catalytic(const Circuit& circuit, const RegisterMap& registers, const VerifyPlan& plan);

/// Max over basis inputs of the phase-aligned distance, one global phase
/// fixed from input 0. Q <= 12.
double unitary_distance(const Circuit& a, const Circuit& b);
bool unitary_equivalent(const Circuit& a, const Circuit& b, double tolerance);

/// End-to-end check of a symmetric-function circuit. The whole composed
/// circuit is simulated on the sparse backend, so the I register is handed
/// from the weight extractor to the associated-function circuit inside the
/// simulation; each component is also checked on its own.
struct EndToEndTrials {
  std::size_t trials = 0;
  std::size_t superposed = 0;  // ancillas in random states per trial
  double output_deviation = 0;
  // Catalytic variant only: distance from the initial state with Y flipped.
  double strict_distance = 0;
  bool pass = true;
};

struct ComposedReport {
  VerifyReport basis;  // whole circuit, basis trials only
  /// Whole circuit, a random subset of the uninitialized qubits (at most
  /// kSuperposedAncillas) in random single-qubit states, the rest in random
  /// basis states.
  EndToEndTrials end_to_end;
  VerifyReport weight;  // component trials
  VerifyReport assoc;
  bool catalytic = false;
  bool pass = false;

  nlohmann::ordered_json to_json() const;
};
inline constexpr std::size_t kSuperposedAncillas = 10;
/// An exhaustive plan is applied to each part where it fits the budget and
/// falls back to sampling elsewhere, with a note in that part's report.
ComposedReport check_symmetric_composed(const SymmetricCircuit& sc, const VerifyPlan& plan);

}  // namespace uqc

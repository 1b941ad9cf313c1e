#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uqc/boolean_fn.hpp"
#include "uqc/circuit.hpp"
#include "uqc/registers.hpp"

namespace uqc {

/// Bit string t_1 ... t_m of an m-bit index (t_1 is bit 0).
std::string bit_label(std::uint64_t t, std::size_t m);

/// Qubits of the weight-phase circuit: inputs X_j, initialized I(k), and the
/// uninitialized A_j(k) and B_j(k,l) for l <= k. All indices are 1-based as
/// in the usual notation.
struct OrReductionLayout {
  std::size_t n = 0, m = 0;
  RegisterMap registers;
  std::vector<Qubit> x, i;

  Qubit a(std::size_t j, std::size_t k) const;
  Qubit b(std::size_t j, std::size_t k, std::size_t l) const;

  std::vector<Qubit> a_qubits, b_qubits;  // allocation order
};

struct OrReduction {
  Circuit circuit;
  OrReductionLayout layout;
  /// stages[s-1] is stage s alone; their concatenation is `circuit`.
  std::vector<Circuit> stages;
};

/// m stages of eight steps each, with FANOUT and CP gates left unlowered.
/// Afterwards I(k) holds (|+> + e^{2 pi i |x| / 2^k} |->)/sqrt2 for every
/// basis state of A and B.
OrReduction build_or_reduction(std::size_t n);

/// For k = 1..m: CP(-2pi/2^{k-l+1}) on (I(l), I(k)) for l < k, then H on
/// I(k). Maps the product of (|0> + e^{2 pi i w/2^k}|1>)/sqrt2 over k to |w>
/// with w's low bit on qubit 0.
Circuit build_inverse_qft(std::size_t m);
Circuit build_qft(std::size_t m);

/// The weight-phase circuit, then H on each I(k), then the inverse QFT on I:
/// I ends in |binary(|x|)> with the low bit on I(1).
struct WeightExtractor {
  Circuit circuit;
  OrReductionLayout layout;
};
WeightExtractor build_weight_extractor(std::size_t n);

/// Helper qubits D_k(w) for w_k = 1, targets A_t for t != 0.
struct ParityLayout {
  std::size_t m = 0;
  RegisterMap registers;
  std::vector<Qubit> s;
  std::vector<Qubit> a;  // index t, entry 0 unused
  Qubit d(std::size_t k, std::uint64_t w) const;

  std::vector<Qubit> d_qubits;
};

struct ParityCircuit {
  Circuit circuit;
  ParityLayout layout;
};

/// Fan-out S_k into every D_k(w), parity of D_k(t) over t_k = 1 into A_t,
/// then both again. Four layers; the D qubits end where they started.
ParityCircuit build_parity_gate_circuit(std::size_t m);

struct AssocLayout {
  std::size_t m = 0;
  RegisterMap registers;
  std::vector<Qubit> s;
  Qubit y = 0;
  std::vector<Qubit> a;  // index t, entry 0 unused
  Qubit b(std::uint64_t t, std::size_t l) const;
  Qubit d(std::size_t k, std::uint64_t w) const;

  std::vector<Qubit> b_qubits, d_qubits;
};

struct AssocCircuit {
  Circuit circuit;
  AssocLayout layout;
  std::vector<Circuit> stages;
  FourierSpec spec;
};

/// Computes y XOR g(s) on the Y qubit for every basis state of the At, Bt
/// and D ancillas.
AssocCircuit build_assoc_circuit(const FourierSpec& spec);

/// Weight extractor feeding its I register into the S register of the
/// associated-function circuit. With `catalytic`, the associated function is
/// computed into a fresh initialized qubit Yc, copied into Y by a CNOT, and
/// then both components are run backwards, so every ancilla returns to its
/// exact initial state.
struct SymmetricLayout {
  std::size_t n = 0, m = 0;
  bool catalytic = false;
  RegisterMap registers;
  std::vector<Qubit> x, i;
  Qubit y = 0;
  std::optional<Qubit> y_work;
  /// Global index of each local qubit of the two components.
  std::vector<Qubit> weight_map, assoc_map;
};

struct SymmetricCircuit {
  Circuit circuit;
  SymmetricLayout layout;
  WeightExtractor weight;
  AssocCircuit assoc;
  SymmetricFunction function;
};

SymmetricCircuit build_symmetric_circuit(const SymmetricFunction& f, bool catalytic = false);

struct HadamardTestLayout {
  std::size_t n = 0;
  RegisterMap registers;
  std::vector<Qubit> x, w, g;
  Qubit y = 0;
};

struct HadamardTest {
  Circuit circuit;
  HadamardTestLayout layout;
};

/// H on Y, fan-out Y -> G, C on X, CP(pi) on (G(j), X_j, W_j), C^dagger,
/// fan-out, H. The probability of reading 0 on Y is (1 + F)/2 with
/// F = <x| C^dagger Z^w C |x>, whatever the G qubits hold.
HadamardTest build_hadamard_test(const Circuit& inner);

}  // namespace uqc

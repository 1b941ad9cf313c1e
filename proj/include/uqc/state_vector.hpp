#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "uqc/circuit.hpp"

namespace uqc {

using Amplitude = std::complex<double>;

/// Largest register the dense backend will allocate (2^28 amplitudes = 4 GiB).
inline constexpr std::size_t kMaxDenseQubits = 28;

/// Dense pure state over 2^Q basis states; qubit j is bit j of the index.
class StateVector {
 public:
  /// |0...0> on `qubit_count` qubits.
  explicit StateVector(std::size_t qubit_count);

  static StateVector basis(std::size_t qubit_count, std::uint64_t index);
  /// One character per qubit, qubit 0 first: "10" is index 1.
  static StateVector from_bits(std::string_view bits);
  /// Tensor product of single-qubit states, factors[j] on qubit j.
  static StateVector product(const std::vector<std::array<Amplitude, 2>>& factors);
  /// Takes ownership of an amplitude vector whose size is a power of two.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

  std::size_t qubit_count() const { return qubit_count_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude amplitude(std::uint64_t index) const { return amps_.at(index); }
  double norm() const;

  void apply(const GateOp& gate);
  void run(const Circuit& circuit);

 private:
  StateVector() = default;

  void apply_h(Qubit q);
  void apply_diagonal(std::uint64_t mask, Amplitude phase);
  void apply_permutation(const GateOp& gate);

  std::size_t qubit_count_ = 0;
  std::vector<Amplitude> amps_;
};

StateVector prepare_basis(std::size_t qubit_count, std::string_view bits);
StateVector apply_gate(StateVector state, const GateOp& gate);
StateVector run_circuit(StateVector state, const Circuit& circuit);

/// Z-basis outcome probabilities (p0, p1) for one qubit.
std::pair<double, double> output_probability(const StateVector& state, Qubit qubit);
/// Probability that the given qubits read `value` (bit k on qubits[k]).
double probability_of(const StateVector& state, const std::vector<Qubit>& qubits, std::uint64_t value);
/// Distribution over the 2^|qubits| values of a qubit subset.
std::vector<double> marginal_distribution(const StateVector& state, const std::vector<Qubit>& qubits);

/// <a|b>.
Amplitude inner_product(const StateVector& a, const StateVector& b);
/// ||a - b||_2 with no phase adjustment.
double state_distance(const StateVector& a, const StateVector& b);
/// min over phi of ||a - e^{i phi} b||_2.
double phase_insensitive_distance(const StateVector& a, const StateVector& b);

}  // namespace uqc

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "uqc/circuit.hpp"
#include "uqc/state_vector.hpp"

namespace uqc {

/// Pure state stored as a sorted list of nonzero amplitudes.
///
/// Suited to basis-state sweeps where only a handful of qubits ever leave
/// the computational basis. Qubit counts up to 64 are allowed; the limit is
/// on the number of nonzero terms.
class SparseState;

/// min over phi of ||a - e^{i phi} b||.
double phase_insensitive_distance(const SparseState& a, const SparseState& b);

class SparseState {
 public:
  using Entry = std::pair<std::uint64_t, Amplitude>;

  static constexpr std::size_t kMaxTerms = std::size_t{1} << 24;
  /// Amplitudes below this magnitude after a Hadamard are dropped.
  static constexpr double kPruneThreshold = 1e-13;

  SparseState(std::size_t qubit_count, std::uint64_t basis_index);
  /// |base> with the listed qubits replaced by the given single-qubit states.
  static SparseState product(std::size_t qubit_count, std::uint64_t base,
                             const std::vector<std::pair<Qubit, std::array<Amplitude, 2>>>& factors);

  std::size_t qubit_count() const { return qubit_count_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t term_count() const { return entries_.size(); }
  Amplitude amplitude(std::uint64_t index) const;
  double norm() const;

  void apply(const GateOp& gate);
  void run(const Circuit& circuit);

  /// Probability that the given qubits read `value`.
  double probability_of(const std::vector<Qubit>& qubits, std::uint64_t value) const;
  std::pair<double, double> output_probability(Qubit qubit) const;

  StateVector to_dense() const;

 private:
  void apply_h(Qubit q);

  std::size_t qubit_count_;
  std::vector<Entry> entries_;
};

}  // namespace uqc

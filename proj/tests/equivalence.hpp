#pragma once

// Basis-by-basis comparison of two circuits through the dense simulator,
// with one global phase fixed from the first nonzero amplitude.

#include <cmath>

#include "uqc/state_vector.hpp"

namespace testing_support {

/// Max deviation over all basis inputs on the first `width` qubits of a, with
/// any extra qubits of b held at `extra_bits`. Extra qubits must return to
/// `extra_bits`; that is folded into the deviation.
inline double max_deviation(const uqc::Circuit& a, const uqc::Circuit& b, std::uint64_t extra_bits = 0) {
  const std::size_t n = a.qubit_count();
  const std::size_t nb = b.qubit_count();
  std::vector<uqc::Qubit> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = static_cast<uqc::Qubit>(i);
  const uqc::Circuit wide = a.remapped(map, nb);
  double worst = 0.0;
  bool have_phase = false;
  uqc::Amplitude phase{1.0, 0.0};
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    const std::uint64_t idx = x | (extra_bits << n);
    const auto sa = uqc::run_circuit(uqc::StateVector::basis(nb, idx), wide);
    const auto sb = uqc::run_circuit(uqc::StateVector::basis(nb, idx), b);
    if (!have_phase) {
      for (std::size_t i = 0; i < sa.dimension(); ++i) {
        if (std::abs(sa.amplitude(i)) > 1e-6) {
          phase = sa.amplitude(i) / sb.amplitude(i);
          have_phase = std::abs(sb.amplitude(i)) > 1e-12;
          break;
        }
      }
      if (!have_phase) return 1e9;
    }
    for (std::size_t i = 0; i < sa.dimension(); ++i)
      worst = std::max(worst, std::abs(sa.amplitude(i) - phase * sb.amplitude(i)));
  }
  return worst;
}

}  // namespace testing_support

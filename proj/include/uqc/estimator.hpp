#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "uqc/circuit.hpp"
#include "uqc/rng.hpp"

namespace uqc {

/// Largest inner circuit for exact expectation values.
inline constexpr std::size_t kMaxExactQubits = 24;
/// Largest inner circuit whose Hadamard test is simulated directly
/// (3n + 1 qubits).
inline constexpr std::size_t kMaxHadamardTestInner = 7;

/// <x| C^dagger Z^w C |x>, with bit j of x and w on qubit j.
double exact_F(const Circuit& c, std::uint64_t x, std::uint64_t w);
/// |<0^n| C |x>|^2.
double exact_matrix_element(const Circuit& c, std::uint64_t x);

/// Probability of reading 0 on the Hadamard-test output, simulated with the
/// G ancillas in basis state `g`. Falls back to (1 + F)/2 above
/// kMaxHadamardTestInner qubits.
double hadamard_test_probability(const Circuit& c, std::uint64_t x, std::uint64_t w, std::uint64_t g = 0);

/// Mean of L shots of the +-1 Hadamard-test outcome. The output-0
/// probability is computed once (G drawn uniformly); with `audit`, every shot
/// draws its own G state and re-simulates the test.
double sample_A_F(const Circuit& c, std::uint64_t x, std::uint64_t w, std::uint64_t L, Rng& rng, bool audit = false);

/// Number of +1 outcomes among L shots; the integer form used for
/// order-independent aggregation.
std::uint64_t sample_plus_count(const Circuit& c, std::uint64_t x, std::uint64_t w, std::uint64_t L, Rng& rng,
                                bool audit = false);

struct MatProblem {
  Circuit circuit;
  double p = 5;
  std::optional<double> delta;  // default max(2^-n, 1e-9)
  std::uint64_t seed = 1;
  bool audit = false;
  bool with_exact = true;
  std::size_t threads = 1;
};

/// K = ceil(8 p^2 ln(4/delta)), L = ceil(8 p^2 ln(4K/delta)).
std::uint64_t outer_samples(double p, double delta);
std::uint64_t inner_samples(double p, double delta, std::uint64_t K);
double default_delta(std::size_t n);

struct EstimateReport {
  std::size_t n = 0;
  std::uint64_t x = 0;
  double p = 0, delta = 0;
  std::uint64_t seed = 0;
  std::uint64_t K = 0, L = 0;
  bool audit = false;
  double alpha_raw = 0;  // (1/K) sum of trial means
  double alpha = 0;  // clipped to [0, 1]
  std::vector<double> trial_means;
  std::vector<std::uint64_t> trial_w;
  std::uint64_t shots = 0;
  std::optional<double> exact;
  std::optional<bool> within_tolerance;  // |alpha - exact| <= 1/p

  nlohmann::ordered_json to_json(bool include_trials = true) const;
};

EstimateReport estimate_mat(const MatProblem& problem, std::uint64_t x);

}  // namespace uqc

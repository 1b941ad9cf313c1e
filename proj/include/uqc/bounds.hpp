#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "uqc/circuit.hpp"
#include "uqc/registers.hpp"
#include "uqc/rng.hpp"
#include "uqc/state_vector.hpp"

namespace uqc {

/// Qubit order x (n), y (1), b (p initialized then q uninitialized); the
/// basis index of x o y o b is x | y << n | b << (n + 1).
struct BoundsLayout {
  std::size_t n = 0, p = 0, q = 0;
  std::size_t qubit_count() const { return n + 1 + p + q; }
  RegisterMap registers() const;
  std::uint64_t index(std::uint64_t x, int y, std::uint64_t b) const { return x | (std::uint64_t(y) << n) | (b << (n + 1)); }
};

/// Analyses enumerate every x o y o b, so the width is capped.
inline constexpr std::size_t kMaxBoundsQubits = 14;

/// C^{k+1} T_k ... C^2 T_1 C^1, cutting before every CP(pi) on at least t
/// qubits in layer order. Toffoli gates are first rewritten as H CP(pi) H on
/// their target.
struct SegmentedCircuit {
  BoundsLayout layout;
  int t = 2;
  std::vector<Circuit> segments;  // k + 1 entries
  std::vector<GateOp> big;  // T_1..T_k
  std::size_t t_min = 0;  // 0 when k = 0

  std::size_t k() const { return big.size(); }
  /// C-tilde: the segments with every T_l dropped.
  Circuit without_big() const;
  /// The segments and T gates in order.
  Circuit recomposed() const;
};

SegmentedCircuit segment_circuit(const Circuit& circuit, const BoundsLayout& layout, int t);

/// V_l |x o y o b>, l in [1, k].
StateVector v_state(const SegmentedCircuit& seg, std::size_t l, std::uint64_t start);

/// ||T_l V_l |s> - V_l |s>||, simulated directly.
double delta_l(const SegmentedCircuit& seg, std::size_t l, std::uint64_t x, int y, std::uint64_t b);
/// 2 sqrt(amplitude mass of V_l |s> where every T_l qubit is 1).
double delta_l_from_mass(const SegmentedCircuit& seg, std::size_t l, std::uint64_t x, int y, std::uint64_t b);
/// ||C |s> - C-tilde |s>||.
double delta_total(const SegmentedCircuit& seg, std::uint64_t x, int y, std::uint64_t b);
/// Mean of delta_l^2 over all x.
double expected_delta_sq(const SegmentedCircuit& seg, std::size_t l, int y, std::uint64_t b);

struct RemovalCheck {
  int y = 0;
  std::uint64_t b = 0;
  std::vector<double> expected_sq;  // per l
  double sum_expected_sq = 0;
  std::vector<double> eps, probability, bound;
  std::vector<bool> vacuous;
  bool triangle = true;  // Delta <= sum_l Delta_l for every x
  double mass_identity_deviation = 0;
  double mass_bound = 0;  // k 2^{p+q+3} / 2^{t_min}
  bool holds = true;  // probability bounds, triangle, mass identity, mass bound
};

struct BestAncillaCheck {
  std::uint64_t a_star = 0;
  double min_sum = 0;
  double min_bound = 0;  // k 2^{p+3} / 2^{t_min}
  std::vector<double> eps, probability, bound;
  std::vector<bool> vacuous;
  bool holds = true;
};

struct DeltaReport {
  std::uint64_t seed = 0;
  BoundsLayout layout;
  int t = 0;
  std::size_t k = 0, t_min = 0;
  std::vector<std::size_t> t_sizes;
  std::size_t depth = 0;
  double recomposition_deviation = 0;
  double normalization_deviation = 0;
  std::vector<RemovalCheck> per_yb;
  BestAncillaCheck best_ancilla;
  std::size_t lightcone_inputs = 0;  // input qubits in the output's light cone
  bool pass = true;

  nlohmann::ordered_json to_json() const;
};

RemovalCheck check_removal(const SegmentedCircuit& seg, const std::vector<double>& eps, int y, std::uint64_t b);
BestAncillaCheck check_best_ancilla(const SegmentedCircuit& seg, const std::vector<double>& eps);
/// `original`, when given, is the unsegmented circuit the recomposition and
/// depth are measured against.
DeltaReport analyze_bounds(const SegmentedCircuit& seg, const std::vector<double>& eps,
                           const Circuit* original = nullptr);

struct BoundsInstance {
  Circuit circuit;
  BoundsLayout layout;
  int t = 2;
};

/// n <= 8, p <= 2, q <= 4, n + p + q + 1 <= max_qubits, at most 5 layers of
/// which 1 to 3 hold a CP(pi) on t_l in [t, n + p + q + 1] qubits.
BoundsInstance random_bounds_instance(Rng& rng, std::size_t max_qubits = 12);

}  // namespace uqc

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "uqc/gate.hpp"

namespace uqc {

/// Gates applied simultaneously; supports are pairwise disjoint.
using Layer = std::vector<GateOp>;

/// A layered gate list over a fixed number of qubits.
///
/// Layers are kept exactly as built. Metrics such as depth() are computed
/// on the greedy earliest-fit repacking of the gate sequence.
class Circuit {
 public:
  explicit Circuit(std::size_t qubit_count = 0) : qubit_count_(qubit_count) {}

  std::size_t qubit_count() const { return qubit_count_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::size_t layer_count() const { return layers_.size(); }
  std::size_t gate_count() const;
  bool empty() const { return layers_.empty(); }

  /// Appends a layer after validating each gate and pairwise disjointness.
  /// Empty layers are ignored.
  void add_layer(Layer layer);
  void add_gate(GateOp gate) { add_layer(Layer{std::move(gate)}); }
  /// Appends all layers of `other`, which must have the same qubit count.
  void append(const Circuit& other);
  /// Appends `other` with its qubit i mapped to mapping[i].
  void append_mapped(const Circuit& other, std::span<const Qubit> mapping);

  /// Reversed layer order with every gate inverted.
  Circuit inverse() const;
  /// Same gates on a larger register, qubit i renamed to mapping[i].
  Circuit remapped(std::span<const Qubit> mapping, std::size_t new_qubit_count) const;
  /// Greedy earliest-fit repacking in gate order.
  Circuit repacked() const;

  /// Gates in application order.
  std::vector<GateOp> gates() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t qubit_count_ = 0;
  std::vector<Layer> layers_;
};

/// Number of layers after greedy earliest-fit repacking.
std::size_t depth(const Circuit& circuit);
/// Sum over gates of the number of qubits each gate acts on.
std::size_t size(const Circuit& circuit);
/// Gate counts keyed by kind name.
std::map<std::string, std::size_t> census(const Circuit& circuit);
/// True if every gate kind in the circuit is H, Phase or CNOT.
bool uses_only_elementary(const Circuit& circuit);

/// Qubits whose state can influence `output` (backward light cone), in
/// increasing order. Every gate is treated as coupling its whole support.
std::vector<Qubit> light_cone(const Circuit& circuit, Qubit output);

}  // namespace uqc

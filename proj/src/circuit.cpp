#include "uqc/circuit.hpp"

#include <algorithm>

#include "uqc/error.hpp"

namespace uqc {

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.size();
  return n;
}

void Circuit::add_layer(Layer layer) {
  if (layer.empty()) return;
  std::vector<bool> used(qubit_count_, false);
  for (const auto& g : layer) {
    g.validate(qubit_count_);
    for (Qubit q : g.support()) {
      if (used[q]) throw GateError("layer gates overlap on qubit " + std::to_string(q));
      used[q] = true;
    }
  }
  layers_.push_back(std::move(layer));
}

void Circuit::append(const Circuit& other) {
  if (other.qubit_count_ != qubit_count_) {
    throw SizeError("cannot append a " + std::to_string(other.qubit_count_) + "-qubit circuit to a " +
                    std::to_string(qubit_count_) + "-qubit circuit");
  }
  layers_.insert(layers_.end(), other.layers_.begin(), other.layers_.end());
}

namespace {

GateOp map_gate(const GateOp& g, std::span<const Qubit> mapping) {
  GateOp out = g;
  for (auto& q : out.controls) q = mapping[q];
  for (auto& q : out.targets) q = mapping[q];
  return out;
}

}  // namespace

void Circuit::append_mapped(const Circuit& other, std::span<const Qubit> mapping) {
  if (mapping.size() != other.qubit_count_) throw SizeError("qubit mapping size mismatch");
  for (const auto& layer : other.layers_) {
    Layer mapped;
    mapped.reserve(layer.size());
    for (const auto& g : layer) mapped.push_back(map_gate(g, mapping));
    add_layer(std::move(mapped));
  }
}

Circuit Circuit::inverse() const {
  Circuit out(qubit_count_);
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    Layer layer;
    layer.reserve(it->size());
    for (const auto& g : *it) layer.push_back(g.inverse());
    out.layers_.push_back(std::move(layer));
  }
  return out;
}

Circuit Circuit::remapped(std::span<const Qubit> mapping, std::size_t new_qubit_count) const {
  Circuit out(new_qubit_count);
  out.append_mapped(*this, mapping);
  return out;
}

std::vector<GateOp> Circuit::gates() const {
  std::vector<GateOp> out;
  out.reserve(gate_count());
  for (const auto& layer : layers_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

Circuit Circuit::repacked() const {
  Circuit out(qubit_count_);
  std::vector<std::size_t> frontier(qubit_count_, 0);
  for (const auto& layer : layers_) {
    for (const auto& g : layer) {
      std::size_t slot = 0;
      for (Qubit q : g.controls) slot = std::max(slot, frontier[q]);
      for (Qubit q : g.targets) slot = std::max(slot, frontier[q]);
      if (slot == out.layers_.size()) out.layers_.emplace_back();
      out.layers_[slot].push_back(g);
      for (Qubit q : g.controls) frontier[q] = slot + 1;
      for (Qubit q : g.targets) frontier[q] = slot + 1;
    }
  }
  return out;
}

std::size_t depth(const Circuit& circuit) {
  std::vector<std::size_t> frontier(circuit.qubit_count(), 0);
  std::size_t d = 0;
  for (const auto& layer : circuit.layers()) {
    for (const auto& g : layer) {
      std::size_t slot = 0;
      for (Qubit q : g.controls) slot = std::max(slot, frontier[q]);
      for (Qubit q : g.targets) slot = std::max(slot, frontier[q]);
      for (Qubit q : g.controls) frontier[q] = slot + 1;
      for (Qubit q : g.targets) frontier[q] = slot + 1;
      d = std::max(d, slot + 1);
    }
  }
  return d;
}

std::size_t size(const Circuit& circuit) {
  std::size_t s = 0;
  for (const auto& layer : circuit.layers())
    for (const auto& g : layer) s += g.arity();
  return s;
}

std::map<std::string, std::size_t> census(const Circuit& circuit) {
  std::map<std::string, std::size_t> out;
  for (const auto& layer : circuit.layers())
    for (const auto& g : layer) ++out[std::string(kind_name(g.kind))];
  return out;
}

bool uses_only_elementary(const Circuit& circuit) {
  for (const auto& layer : circuit.layers())
    for (const auto& g : layer)
      if (g.kind != GateKind::H && g.kind != GateKind::Phase && g.kind != GateKind::CNOT) return false;
  return true;
}

std::vector<Qubit> light_cone(const Circuit& circuit, Qubit output) {
  if (output >= circuit.qubit_count()) throw SizeError("light_cone: qubit out of range");
  std::vector<bool> live(circuit.qubit_count(), false);
  live[output] = true;
  const auto& layers = circuit.layers();
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    for (const auto& g : *it) {
      const auto sup = g.support();
      if (std::any_of(sup.begin(), sup.end(), [&](Qubit q) { return live[q]; })) {
        for (Qubit q : sup) live[q] = true;
      }
    }
  }
  std::vector<Qubit> out;
  for (Qubit q = 0; q < circuit.qubit_count(); ++q)
    if (live[q]) out.push_back(q);
  return out;
}

}  // namespace uqc

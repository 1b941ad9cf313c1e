#include "uqc/registers.hpp"

#include <algorithm>

#include "uqc/error.hpp"

namespace uqc {

std::string_view role_name(RegisterRole role) {
  switch (role) {
    case RegisterRole::Input: return "input";
    case RegisterRole::Output: return "output";
    case RegisterRole::Initialized: return "initialized";
    case RegisterRole::Uninitialized: return "uninitialized";
  }
  return "?";
}

RegisterRole parse_role(std::string_view name) {
  for (auto r : {RegisterRole::Input, RegisterRole::Output, RegisterRole::Initialized, RegisterRole::Uninitialized}) {
    if (role_name(r) == name) return r;
  }
  throw SizeError("unknown register role '" + std::string(name) + "'");
}

std::vector<Qubit> RegisterMap::allocate(const std::string& name, RegisterRole role,
                                         std::vector<std::string> labels) {
  if (has(name)) throw SizeError("duplicate register '" + name + "'");
  Register reg{name, role, {}, std::move(labels)};
  for (std::size_t i = 0; i < reg.labels.size(); ++i) reg.qubits.push_back(static_cast<Qubit>(qubit_count_ + i));
  qubit_count_ += reg.labels.size();
  registers_.push_back(reg);
  return reg.qubits;
}

std::vector<Qubit> RegisterMap::allocate(const std::string& name, RegisterRole role, std::size_t count) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= count; ++i) labels.push_back(name + "_" + std::to_string(i));
  return allocate(name, role, std::move(labels));
}

void RegisterMap::add(Register reg) {
  if (has(reg.name)) throw SizeError("duplicate register '" + reg.name + "'");
  if (reg.labels.empty()) {
    for (std::size_t i = 1; i <= reg.qubits.size(); ++i) reg.labels.push_back(reg.name + "_" + std::to_string(i));
  }
  if (reg.labels.size() != reg.qubits.size()) throw SizeError("register '" + reg.name + "': label count mismatch");
  for (Qubit q : reg.qubits) qubit_count_ = std::max<std::size_t>(qubit_count_, std::size_t{q} + 1);
  registers_.push_back(std::move(reg));
}

const Register* RegisterMap::find(std::string_view name) const {
  for (const auto& r : registers_)
    if (r.name == name) return &r;
  return nullptr;
}

bool RegisterMap::has(std::string_view name) const { return find(name) != nullptr; }

const Register& RegisterMap::at(std::string_view name) const {
  const Register* r = find(name);
  if (!r) throw SizeError("no register named '" + std::string(name) + "'");
  return *r;
}

std::vector<Qubit> RegisterMap::qubits(RegisterRole role) const {
  std::vector<Qubit> out;
  for (const auto& r : registers_)
    if (r.role == role) out.insert(out.end(), r.qubits.begin(), r.qubits.end());
  return out;
}

std::size_t RegisterMap::count(RegisterRole role) const {
  std::size_t n = 0;
  for (const auto& r : registers_)
    if (r.role == role) n += r.qubits.size();
  return n;
}

std::optional<RegisterRole> RegisterMap::role_of(Qubit q) const {
  for (const auto& r : registers_)
    if (std::find(r.qubits.begin(), r.qubits.end(), q) != r.qubits.end()) return r.role;
  return std::nullopt;
}

std::string RegisterMap::label(Qubit q) const {
  for (const auto& r : registers_) {
    for (std::size_t i = 0; i < r.qubits.size(); ++i)
      if (r.qubits[i] == q) return r.labels[i];
  }
  return "q" + std::to_string(q);
}

void RegisterMap::validate() const {
  std::vector<int> seen(qubit_count_, 0);
  for (const auto& r : registers_) {
    for (Qubit q : r.qubits) {
      if (q >= qubit_count_) throw SizeError("register '" + r.name + "' qubit out of range");
      if (seen[q]++) throw SizeError("qubit " + std::to_string(q) + " appears in two registers");
    }
  }
  for (std::size_t q = 0; q < qubit_count_; ++q)
    if (!seen[q]) throw SizeError("qubit " + std::to_string(q) + " belongs to no register");
}

RegisterMap RegisterMap::remapped(const std::vector<Qubit>& mapping, std::size_t new_qubit_count) const {
  if (mapping.size() != qubit_count_) throw SizeError("register mapping size mismatch");
  RegisterMap out;
  for (Register r : registers_) {
    for (auto& q : r.qubits) q = mapping[q];
    out.registers_.push_back(std::move(r));
  }
  out.qubit_count_ = new_qubit_count;
  return out;
}

std::uint64_t scatter_bits(std::uint64_t value, const std::vector<Qubit>& qubits) {
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k)
    if ((value >> k) & 1u) idx |= std::uint64_t{1} << qubits[k];
  return idx;
}

std::uint64_t gather_bits(std::uint64_t index, const std::vector<Qubit>& qubits) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k)
    if ((index >> qubits[k]) & 1u) v |= std::uint64_t{1} << k;
  return v;
}

}  // namespace uqc

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uqc/gate.hpp"

namespace uqc {

enum class RegisterRole : std::uint8_t { Input, Output, Initialized, Uninitialized };

std::string_view role_name(RegisterRole role);
RegisterRole parse_role(std::string_view name);

/// A named group of qubits, e.g. "X" or "B". Each qubit carries a label
/// such as "B_2(3,1)".
struct Register {
  std::string name;
  RegisterRole role = RegisterRole::Input;
  std::vector<Qubit> qubits;
  std::vector<std::string> labels;

  friend bool operator==(const Register&, const Register&) = default;
};

/// Named, disjoint registers. Qubits are handed out in allocation order, so
/// builders that allocate in a fixed sequence get reproducible indices.
class RegisterMap {
 public:
  RegisterMap() = default;

  /// Allocates `labels.size()` fresh qubits at the end of the index space.
  std::vector<Qubit> allocate(const std::string& name, RegisterRole role, std::vector<std::string> labels);
  /// Allocates `count` qubits labelled name_1..name_count.
  std::vector<Qubit> allocate(const std::string& name, RegisterRole role, std::size_t count);
  /// Adds a register over already-existing qubit indices (used when loading).
  void add(Register reg);

  std::size_t qubit_count() const { return qubit_count_; }
  const std::vector<Register>& registers() const { return registers_; }

  bool has(std::string_view name) const;
  const Register& at(std::string_view name) const;
  const Register* find(std::string_view name) const;

  /// All qubits of the given role, in register order.
  std::vector<Qubit> qubits(RegisterRole role) const;
  std::size_t count(RegisterRole role) const;
  /// Initialized ancilla count.
  std::size_t p() const { return count(RegisterRole::Initialized); }
  /// Uninitialized ancilla count.
  std::size_t q() const { return count(RegisterRole::Uninitialized); }

  std::optional<RegisterRole> role_of(Qubit q) const;
  std::string label(Qubit q) const;

  /// Throws SizeError unless the registers partition [0, qubit_count).
  void validate() const;

  /// Same registers on a wider index space, qubit i renamed to mapping[i].
  RegisterMap remapped(const std::vector<Qubit>& mapping, std::size_t new_qubit_count) const;

  friend bool operator==(const RegisterMap&, const RegisterMap&) = default;

 private:
  std::size_t qubit_count_ = 0;
  std::vector<Register> registers_;
};

/// Packs the bits of `value` onto the given qubits (bit k of value on qubits[k]).
std::uint64_t scatter_bits(std::uint64_t value, const std::vector<Qubit>& qubits);
/// Reads the bits on `qubits` out of a basis index (inverse of scatter_bits).
std::uint64_t gather_bits(std::uint64_t index, const std::vector<Qubit>& qubits);

}  // namespace uqc

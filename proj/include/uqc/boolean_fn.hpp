#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uqc/rng.hpp"

namespace uqc {

/// Number of bits needed to write a weight in 0..n, at least 1.
std::size_t weight_bits(std::size_t n);

/// Symmetric Boolean function f_n given by its value at each weight 0..n.
struct SymmetricFunction {
  std::size_t n = 0;
  std::vector<std::uint8_t> value_by_weight;
  std::string name;

  void validate() const;
  bool at_weight(std::size_t w) const { return value_by_weight.at(w) != 0; }
  /// f(x) for x packed with x_1 in bit 0.
  bool operator()(std::uint64_t x) const;
};

/// PA, OR, AND, MAJ (weight > n/2), THR_k (weight >= k), EXACT_k.
SymmetricFunction builtin_function(std::string_view name, std::size_t n);
/// "n v_0 v_1 ... v_n", whitespace separated.
SymmetricFunction parse_function(std::string_view text);

/// g_m(s) = f(1^l 0^{n-l}) for l = sum s_k 2^{k-1} <= n, else 0. s_1 is bit 0.
struct AssociatedFunction {
  std::size_t m = 0;
  std::vector<std::uint8_t> table;  // 2^m entries

  bool operator()(std::uint64_t s) const { return table.at(s) != 0; }
};

AssociatedFunction associated_function(const SymmetricFunction& f);
/// Uniformly random table on m bits.
AssociatedFunction random_associated(Rng& rng, std::size_t m);

/// g(s) = constant + (2/2^m) * sum_{t != 0} c_t * parity(t & s).
struct FourierSpec {
  std::size_t m = 0;
  int constant = 0;
  std::vector<std::int64_t> coefficients;  // index t; entry 0 unused and zero
};

/// c_t = sum_u g(u) (2 parity(u & t) - 1). The expansion is checked on every
/// s before returning; a mismatch raises InvariantError.
FourierSpec fourier_coefficients(const AssociatedFunction& g);
/// Evaluates the expansion in exact integers.
int eval_fourier(const FourierSpec& spec, std::uint64_t s);

}  // namespace uqc

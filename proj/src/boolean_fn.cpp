#include "uqc/boolean_fn.hpp"

#include <bit>
#include <charconv>
#include <sstream>

#include "uqc/error.hpp"

namespace uqc {

std::size_t weight_bits(std::size_t n) {
  std::size_t m = 1;
  while ((std::size_t{1} << m) < n + 1) ++m;
  return m;
}

void SymmetricFunction::validate() const {
  if (n < 1) throw SizeError("symmetric function needs n >= 1");
  if (value_by_weight.size() != n + 1) throw SizeError("weight table must have n+1 entries");
  for (auto v : value_by_weight)
    if (v > 1) throw SizeError("weight table entries must be 0 or 1");
}

bool SymmetricFunction::operator()(std::uint64_t x) const {
  return at_weight(static_cast<std::size_t>(std::popcount(x)));
}

SymmetricFunction builtin_function(std::string_view name, std::size_t n) {
  if (n < 1) throw SizeError("symmetric function needs n >= 1");
  SymmetricFunction f{n, std::vector<std::uint8_t>(n + 1, 0), std::string(name)};
  auto fill = [&](auto pred) {
    for (std::size_t w = 0; w <= n; ++w) f.value_by_weight[w] = pred(w) ? 1 : 0;
  };
  auto param = [&](std::string_view prefix) {
    std::size_t k = 0;
    const auto digits = name.substr(prefix.size());
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || p != digits.data() + digits.size() || digits.empty()) {
      throw SizeError("bad parameter in '" + std::string(name) + "'");
    }
    return k;
  };
  if (name == "PA") fill([](std::size_t w) { return w % 2 == 1; });
  else if (name == "OR") fill([](std::size_t w) { return w >= 1; });
  else if (name == "AND") fill([n](std::size_t w) { return w == n; });
  else if (name == "MAJ") fill([n](std::size_t w) { return 2 * w > n; });
  else if (name.starts_with("THR_")) {
    const std::size_t k = param("THR_");
    fill([k](std::size_t w) { return w >= k; });
  } else if (name.starts_with("EXACT_")) {
    const std::size_t k = param("EXACT_");
    fill([k](std::size_t w) { return w == k; });
  } else {
    throw SizeError("unknown function '" + std::string(name) + "'");
  }
  return f;
}

SymmetricFunction parse_function(std::string_view text) {
  std::istringstream in{std::string(text)};
  SymmetricFunction f;
  if (!(in >> f.n)) throw ParseError(1, "expected n");
  int v = 0;
  while (in >> v) {
    if (v != 0 && v != 1) throw ParseError(1, "weight table entries must be 0 or 1");
    f.value_by_weight.push_back(static_cast<std::uint8_t>(v));
  }
  if (!in.eof()) throw ParseError(1, "non-numeric token in weight table");
  f.name = "custom";
  f.validate();
  return f;
}

AssociatedFunction associated_function(const SymmetricFunction& f) {
  f.validate();
  AssociatedFunction g;
  g.m = weight_bits(f.n);
  g.table.assign(std::size_t{1} << g.m, 0);
  for (std::size_t l = 0; l <= f.n; ++l) g.table[l] = f.value_by_weight[l];
  return g;
}

AssociatedFunction random_associated(Rng& rng, std::size_t m) {
  AssociatedFunction g;
  g.m = m;
  g.table.resize(std::size_t{1} << m);
  for (auto& v : g.table) v = static_cast<std::uint8_t>(rng.below(2));
  return g;
}

namespace {

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

}  // namespace

FourierSpec fourier_coefficients(const AssociatedFunction& g) {
  if (g.m < 1 || g.m > 20) throw LimitError("Fourier expansion supports 1 <= m <= 20");
  if (g.table.size() != (std::size_t{1} << g.m)) throw SizeError("table size must be 2^m");
  const std::uint64_t N = std::uint64_t{1} << g.m;
  FourierSpec spec;
  spec.m = g.m;
  spec.constant = g.table[0];
  spec.coefficients.assign(N, 0);
  for (std::uint64_t t = 1; t < N; ++t) {
    std::int64_t c = 0;
    for (std::uint64_t u = 0; u < N; ++u)
      if (g.table[u]) c += 2 * parity(u & t) - 1;
    spec.coefficients[t] = c;
  }
  for (std::uint64_t s = 0; s < N; ++s) {
    if (eval_fourier(spec, s) != g.table[s]) throw InvariantError("Fourier expansion does not reproduce g");
  }
  return spec;
}

int eval_fourier(const FourierSpec& spec, std::uint64_t s) {
  const std::uint64_t N = std::uint64_t{1} << spec.m;
  if (s >= N) throw SizeError("argument has more than m bits");
  std::int64_t sum = 0;
  for (std::uint64_t t = 1; t < N; ++t)
    if (parity(t & s)) sum += spec.coefficients[t];
  const std::int64_t half = static_cast<std::int64_t>(N / 2);
  if (sum % half != 0) throw InvariantError("Fourier sum not divisible by 2^(m-1)");
  const std::int64_t v = spec.constant + sum / half;
  if (v != 0 && v != 1) throw InvariantError("Fourier expansion is not Boolean");
  return static_cast<int>(v);
}

}  // namespace uqc

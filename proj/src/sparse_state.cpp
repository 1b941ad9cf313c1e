#include "uqc/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gate_action.hpp"
#include "uqc/error.hpp"
#include "uqc/registers.hpp"

namespace uqc {

using detail::bit;

SparseState::SparseState(std::size_t qubit_count, std::uint64_t basis_index) : qubit_count_(qubit_count) {
  if (qubit_count < 1 || qubit_count > 64) throw SizeError("sparse state supports 1..64 qubits");
  if (qubit_count < 64 && basis_index >> qubit_count) throw SizeError("basis index out of range");
  entries_.emplace_back(basis_index, Amplitude{1.0, 0.0});
}

SparseState SparseState::product(std::size_t qubit_count, std::uint64_t base,
                                 const std::vector<std::pair<Qubit, std::array<Amplitude, 2>>>& factors) {
  SparseState st(qubit_count, base);
  if (factors.size() > 24) throw LimitError("too many superposed qubits for a sparse product state");
  std::vector<Entry> cur{{base, Amplitude{1.0, 0.0}}};
  for (const auto& [q, f] : factors) {
    if (q >= qubit_count) throw SizeError("qubit out of range");
    std::vector<Entry> next;
    next.reserve(cur.size() * 2);
    for (const auto& [idx, a] : cur) {
      const std::uint64_t i0 = idx & ~bit(q);
      if (f[0] != Amplitude{0.0, 0.0}) next.emplace_back(i0, a * f[0]);
      if (f[1] != Amplitude{0.0, 0.0}) next.emplace_back(i0 | bit(q), a * f[1]);
    }
    cur.swap(next);
  }
  std::sort(cur.begin(), cur.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
  st.entries_ = std::move(cur);
  return st;
}

double phase_insensitive_distance(const SparseState& a, const SparseState& b) {
  if (a.qubit_count() != b.qubit_count()) throw SizeError("states differ in width");
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  Amplitude overlap{0.0, 0.0};
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].first < eb[j].first) ++i;
    else if (eb[j].first < ea[i].first) ++j;
    else overlap += std::conj(ea[i++].second) * eb[j++].second;
  }
  const Amplitude w = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Amplitude{1.0, 0.0};
  double d = 0;
  i = j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) d += std::norm(ea[i++].second);
    else if (i == ea.size() || eb[j].first < ea[i].first) d += std::norm(eb[j++].second);
    else {
      d += std::norm(eb[j].second - w * ea[i].second);
      ++i;
      ++j;
    }
  }
  return std::sqrt(d);
}

Amplitude SparseState::amplitude(std::uint64_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::uint64_t i) { return e.first < i; });
  return it != entries_.end() && it->first == index ? it->second : Amplitude{0.0, 0.0};
}

double SparseState::norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += std::norm(e.second);
  return std::sqrt(sum);
}

void SparseState::apply_h(Qubit q) {
  const std::uint64_t b = bit(q);
  const double r = std::numbers::sqrt2 / 2.0;
  std::vector<Entry> next;
  next.reserve(entries_.size() * 2);
  for (const auto& [idx, a] : entries_) {
    const std::uint64_t lo = idx & ~b;
    next.emplace_back(lo, a * r);
    next.emplace_back(lo | b, (idx & b) ? -a * r : a * r);
  }
  std::sort(next.begin(), next.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
  entries_.clear();
  for (std::size_t i = 0; i < next.size();) {
    Amplitude sum = next[i].second;
    std::size_t j = i + 1;
    for (; j < next.size() && next[j].first == next[i].first; ++j) sum += next[j].second;
    if (std::abs(sum) >= kPruneThreshold) entries_.emplace_back(next[i].first, sum);
    i = j;
  }
  if (entries_.size() > kMaxTerms) throw LimitError("sparse state exceeded term limit");
}

void SparseState::apply(const GateOp& g) {
  g.validate(qubit_count_);
  if (g.kind == GateKind::H) {
    apply_h(g.targets[0]);
  } else if (g.is_diagonal()) {
    const DyadicAngle a = detail::diagonal_angle(g);
    if (a.is_zero()) return;
    const std::uint64_t mask = detail::diagonal_mask(g);
    const Amplitude ph = a.phasor();
    for (auto& e : entries_)
      if ((e.first & mask) == mask) e.second *= ph;
  } else {
    for (auto& e : entries_) e.first = detail::classical_image(g, e.first);
    std::sort(entries_.begin(), entries_.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
  }
}

void SparseState::run(const Circuit& circuit) {
  if (circuit.qubit_count() != qubit_count_) throw SizeError("circuit and state qubit counts differ");
  for (const auto& layer : circuit.layers())
    for (const auto& g : layer) apply(g);
}

double SparseState::probability_of(const std::vector<Qubit>& qubits, std::uint64_t value) const {
  const std::uint64_t mask = detail::mask_of(qubits);
  const std::uint64_t want = scatter_bits(value, qubits);
  double p = 0.0;
  for (const auto& e : entries_)
    if ((e.first & mask) == want) p += std::norm(e.second);
  return p;
}

std::pair<double, double> SparseState::output_probability(Qubit qubit) const {
  if (qubit >= qubit_count_) throw SizeError("qubit index out of range");
  double p1 = 0.0, total = 0.0;
  for (const auto& e : entries_) {
    const double w = std::norm(e.second);
    total += w;
    if (e.first & bit(qubit)) p1 += w;
  }
  return {(total - p1) / total, p1 / total};
}

StateVector SparseState::to_dense() const {
  if (qubit_count_ > kMaxDenseQubits) throw LimitError("sparse state too wide to densify");
  std::vector<Amplitude> amps(std::size_t{1} << qubit_count_, Amplitude{0.0, 0.0});
  for (const auto& e : entries_) amps[e.first] = e.second;
  return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace uqc

#include "uqc/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "uqc/error.hpp"
#include "uqc/random_circuit.hpp"

namespace uqc {

RegisterMap BoundsLayout::registers() const {
  RegisterMap r;
  r.allocate("X", RegisterRole::Input, n);
  r.allocate("Y", RegisterRole::Output, 1);
  if (p) r.allocate("P", RegisterRole::Initialized, p);
  if (q) r.allocate("A", RegisterRole::Uninitialized, q);
  return r;
}

namespace {

bool is_big(const GateOp& g, int t) {
  return g.kind == GateKind::ControlledPhase && g.angle == DyadicAngle::pi() && g.arity() >= static_cast<std::size_t>(t);
}

// Toffoli -> H(target), CP(pi), H(target), spread over three layers.
std::vector<Layer> sandwich_toffolis(const Layer& layer) {
  Layer before, middle, after;
  for (const auto& g : layer) {
    if (g.kind == GateKind::Toffoli) {
      before.push_back(gate::h(g.targets[0]));
      middle.push_back(gate::cphase(g.controls, g.targets[0], DyadicAngle::pi()));
      after.push_back(gate::h(g.targets[0]));
    } else {
      middle.push_back(g);
    }
  }
  if (before.empty()) return {layer};
  return {before, middle, after};
}

double mass_all_ones(const StateVector& st, const GateOp& g) {
  std::uint64_t mask = 0;
  for (Qubit q : g.support()) mask |= std::uint64_t{1} << q;
  double m = 0;
  const auto& a = st.amplitudes();
  for (std::uint64_t i = 0; i < a.size(); ++i)
    if ((i & mask) == mask) m += std::norm(a[i]);
  return m;
}

void check_bounds_width(const BoundsLayout& L) {
  if (L.n < 1) throw SizeError("need at least one input qubit");
  if (L.qubit_count() > kMaxBoundsQubits) throw LimitError("bounds analysis supports at most 14 qubits");
}

// Every quantity for one start state.
struct StartData {
  std::vector<double> delta_l, mass_l;
  double delta = 0;
};

StartData run_start(const SegmentedCircuit& seg, std::uint64_t start, std::vector<double>* row_mass) {
  const std::size_t Q = seg.layout.qubit_count();
  StartData d;
  auto s = StateVector::basis(Q, start);
  for (std::size_t l = 1; l <= seg.k(); ++l) {
    s.run(seg.segments[l - 1]);
    if (row_mass) {
      const auto& a = s.amplitudes();
      for (std::uint64_t i = 0; i < a.size(); ++i) row_mass[l - 1][i] += std::norm(a[i]);
    }
    auto t = s;
    t.apply(seg.big[l - 1]);
    d.delta_l.push_back(state_distance(t, s));
    d.mass_l.push_back(mass_all_ones(s, seg.big[l - 1]));
    s = std::move(t);
  }
  s.run(seg.segments.back());
  auto tilde = StateVector::basis(Q, start);
  tilde.run(seg.without_big());
  d.delta = state_distance(s, tilde);
  return d;
}

}  // namespace

Circuit SegmentedCircuit::without_big() const {
  Circuit c(layout.qubit_count());
  for (const auto& s : segments) c.append(s);
  return c;
}

Circuit SegmentedCircuit::recomposed() const {
  Circuit c(layout.qubit_count());
  for (std::size_t l = 0; l < segments.size(); ++l) {
    c.append(segments[l]);
    if (l < big.size()) c.add_gate(big[l]);
  }
  return c;
}

SegmentedCircuit segment_circuit(const Circuit& circuit, const BoundsLayout& layout, int t) {
  if (t < 2) throw Error("threshold t must be at least 2");
  if (circuit.qubit_count() != layout.qubit_count()) throw SizeError("circuit width does not match n + 1 + p + q");
  SegmentedCircuit seg;
  seg.layout = layout;
  seg.t = t;
  const std::size_t Q = layout.qubit_count();
  seg.segments.emplace_back(Q);
  for (const auto& orig : circuit.layers()) {
    for (const auto& layer : sandwich_toffolis(orig)) {
      Layer small;
      std::vector<GateOp> bigs;
      for (const auto& g : layer) (is_big(g, t) ? bigs : small).push_back(g);
      seg.segments.back().add_layer(small);
      for (const auto& g : bigs) {
        seg.big.push_back(g);
        seg.segments.emplace_back(Q);
      }
    }
  }
  if (!seg.big.empty()) {
    seg.t_min = Q;
    for (const auto& g : seg.big) seg.t_min = std::min(seg.t_min, g.arity());
  }
  return seg;
}

StateVector v_state(const SegmentedCircuit& seg, std::size_t l, std::uint64_t start) {
  if (l < 1 || l > seg.k()) throw SizeError("segment index out of range");
  check_bounds_width(seg.layout);
  auto s = StateVector::basis(seg.layout.qubit_count(), start);
  for (std::size_t i = 1; i <= l; ++i) {
    s.run(seg.segments[i - 1]);
    if (i < l) s.apply(seg.big[i - 1]);
  }
  return s;
}

double delta_l(const SegmentedCircuit& seg, std::size_t l, std::uint64_t x, int y, std::uint64_t b) {
  const auto v = v_state(seg, l, seg.layout.index(x, y, b));
  auto t = v;
  t.apply(seg.big[l - 1]);
  return state_distance(t, v);
}

double delta_l_from_mass(const SegmentedCircuit& seg, std::size_t l, std::uint64_t x, int y, std::uint64_t b) {
  const auto v = v_state(seg, l, seg.layout.index(x, y, b));
  return 2 * std::sqrt(mass_all_ones(v, seg.big[l - 1]));
}

double delta_total(const SegmentedCircuit& seg, std::uint64_t x, int y, std::uint64_t b) {
  check_bounds_width(seg.layout);
  return run_start(seg, seg.layout.index(x, y, b), nullptr).delta;
}

double expected_delta_sq(const SegmentedCircuit& seg, std::size_t l, int y, std::uint64_t b) {
  if (l < 1 || l > seg.k()) throw SizeError("segment index out of range");
  double sum = 0;
  const std::uint64_t N = std::uint64_t{1} << seg.layout.n;
  for (std::uint64_t x = 0; x < N; ++x) {
    const double d = delta_l(seg, l, x, y, b);
    sum += d * d;
  }
  return sum / static_cast<double>(N);
}

namespace {

constexpr double kSlack = 1e-12;

// Per-(y, b) quantities from precomputed per-x data.
RemovalCheck removal_from(const SegmentedCircuit& seg, const std::vector<double>& eps, int y, std::uint64_t b,
                        const std::vector<StartData>& data) {
  const auto& L = seg.layout;
  const std::size_t k = seg.k();
  const std::uint64_t N = std::uint64_t{1} << L.n;
  RemovalCheck c;
  c.y = y;
  c.b = b;
  c.eps = eps;
  c.expected_sq.assign(k, 0.0);
  std::vector<std::uint64_t> below(eps.size(), 0);
  for (std::uint64_t x = 0; x < N; ++x) {
    const auto& d = data[x];
    double sum_l = 0;
    for (std::size_t l = 0; l < k; ++l) {
      c.expected_sq[l] += d.delta_l[l] * d.delta_l[l];
      sum_l += d.delta_l[l];
      c.mass_identity_deviation =
          std::max(c.mass_identity_deviation, std::abs(d.delta_l[l] * d.delta_l[l] - 4 * d.mass_l[l]));
    }
    if (d.delta > sum_l + kSlack) c.triangle = false;
    for (std::size_t e = 0; e < eps.size(); ++e)
      if (d.delta < eps[e]) ++below[e];
  }
  for (auto& v : c.expected_sq) v /= static_cast<double>(N);
  for (double v : c.expected_sq) c.sum_expected_sq += v;
  const double kk = static_cast<double>(k);
  c.holds = c.triangle && c.mass_identity_deviation <= 1e-9;
  for (std::size_t e = 0; e < eps.size(); ++e) {
    c.probability.push_back(static_cast<double>(below[e]) / static_cast<double>(N));
    c.bound.push_back(1 - kk * kk / (eps[e] * eps[e]) * c.sum_expected_sq);
    c.vacuous.push_back(c.bound.back() <= 0);
    if (c.probability.back() < c.bound.back() - kSlack) c.holds = false;
  }
  c.mass_bound = k ? kk * std::ldexp(1.0, static_cast<int>(L.p + L.q + 3) - static_cast<int>(seg.t_min)) : 0.0;
  if (c.sum_expected_sq > c.mass_bound + kSlack) c.holds = false;
  return c;
}

std::vector<StartData> data_for(const SegmentedCircuit& seg, int y, std::uint64_t b, std::vector<double>* row_mass) {
  const std::uint64_t N = std::uint64_t{1} << seg.layout.n;
  std::vector<StartData> out;
  out.reserve(N);
  for (std::uint64_t x = 0; x < N; ++x) out.push_back(run_start(seg, seg.layout.index(x, y, b), row_mass));
  return out;
}

BestAncillaCheck best_ancilla_from(const SegmentedCircuit& seg, const std::vector<double>& eps,
                          const std::vector<RemovalCheck>& at_a) {
  const auto& L = seg.layout;
  const double kk = static_cast<double>(seg.k());
  BestAncillaCheck c;
  c.eps = eps;
  c.min_sum = at_a[0].sum_expected_sq;
  for (std::uint64_t a = 1; a < at_a.size(); ++a)
    if (at_a[a].sum_expected_sq < c.min_sum) {
      c.min_sum = at_a[a].sum_expected_sq;
      c.a_star = a;
    }
  c.min_bound = seg.k() ? kk * std::ldexp(1.0, static_cast<int>(L.p + 3) - static_cast<int>(seg.t_min)) : 0.0;
  c.holds = c.min_sum <= c.min_bound + kSlack;
  const auto& best = at_a[c.a_star];
  for (std::size_t e = 0; e < eps.size(); ++e) {
    c.probability.push_back(best.probability[e]);
    const double bound = seg.k() ? 1 - kk * kk * kk * std::ldexp(1.0, static_cast<int>(L.p + 3) - static_cast<int>(seg.t_min)) /
                                           (eps[e] * eps[e])
                                 : 1.0;
    c.bound.push_back(bound);
    c.vacuous.push_back(bound <= 0);
    if (best.probability[e] < bound - kSlack) c.holds = false;
  }
  return c;
}

}  // namespace

RemovalCheck check_removal(const SegmentedCircuit& seg, const std::vector<double>& eps, int y, std::uint64_t b) {
  check_bounds_width(seg.layout);
  for (double e : eps)
    if (!(e > 0)) throw Error("epsilon must be positive");
  return removal_from(seg, eps, y, b, data_for(seg, y, b, nullptr));
}

BestAncillaCheck check_best_ancilla(const SegmentedCircuit& seg, const std::vector<double>& eps) {
  check_bounds_width(seg.layout);
  if (seg.layout.q > 10) throw LimitError("the ancilla minimization enumerates at most 2^10 values");
  std::vector<RemovalCheck> at_a;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << seg.layout.q); ++a)
    at_a.push_back(check_removal(seg, eps, 0, a << seg.layout.p));
  return best_ancilla_from(seg, eps, at_a);
}

DeltaReport analyze_bounds(const SegmentedCircuit& seg, const std::vector<double>& eps, const Circuit* original) {
  const auto& L = seg.layout;
  check_bounds_width(L);
  for (double e : eps)
    if (!(e > 0)) throw Error("epsilon must be positive");
  const std::size_t Q = L.qubit_count();
  DeltaReport rep;
  rep.layout = L;
  rep.t = seg.t;
  rep.k = seg.k();
  rep.t_min = seg.t_min;
  for (const auto& g : seg.big) rep.t_sizes.push_back(g.arity());
  const Circuit recomposed = seg.recomposed();
  const Circuit& source = original ? *original : recomposed;
  rep.depth = depth(source);
  rep.lightcone_inputs = 0;
  for (Qubit q : light_cone(source, static_cast<Qubit>(L.n)))
    if (q < L.n) ++rep.lightcone_inputs;

  std::vector<std::vector<double>> row_mass(seg.k(), std::vector<double>(std::size_t{1} << Q, 0.0));
  const std::uint64_t B = std::uint64_t{1} << (L.p + L.q);
  std::vector<RemovalCheck> at_a(std::uint64_t{1} << L.q);
  for (int y = 0; y < 2; ++y)
    for (std::uint64_t b = 0; b < B; ++b) {
      const auto data = data_for(seg, y, b, row_mass.data());
      rep.per_yb.push_back(removal_from(seg, eps, y, b, data));
      if (y == 0 && (b & ((std::uint64_t{1} << L.p) - 1)) == 0) at_a[b >> L.p] = rep.per_yb.back();
    }
  rep.best_ancilla = best_ancilla_from(seg, eps, at_a);

  for (const auto& rows : row_mass)
    for (double v : rows) rep.normalization_deviation = std::max(rep.normalization_deviation, std::abs(v - 1));

  Rng rng(0x5eed);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t s = rng.below(std::uint64_t{1} << Q);
    auto a = StateVector::basis(Q, s), b2 = a;
    a.run(source);
    b2.run(recomposed);
    rep.recomposition_deviation = std::max(rep.recomposition_deviation, state_distance(a, b2));
  }

  rep.pass = rep.best_ancilla.holds && rep.normalization_deviation <= 1e-9 && rep.recomposition_deviation <= 1e-9;
  for (const auto& c : rep.per_yb) rep.pass = rep.pass && c.holds;
  return rep;
}

nlohmann::ordered_json DeltaReport::to_json() const {
  using json = nlohmann::ordered_json;
  json j;
  j["seed"] = seed;
  j["n"] = layout.n;
  j["p"] = layout.p;
  j["q"] = layout.q;
  j["t"] = t;
  j["k"] = k;
  j["t_sizes"] = t_sizes;
  j["t_min"] = t_min;
  j["depth"] = depth;
  j["lightcone_inputs"] = lightcone_inputs;
  j["recomposition_deviation"] = recomposition_deviation;
  j["normalization_deviation"] = normalization_deviation;
  json yb = json::array();
  for (const auto& c : per_yb) {
    yb.push_back({{"y", c.y},
                  {"b", c.b},
                  {"expected_delta_sq", c.expected_sq},
                  {"sum_expected_delta_sq", c.sum_expected_sq},
                  {"eps", c.eps},
                  {"probability", c.probability},
                  {"removal_bound", c.bound},
                  {"vacuous", c.vacuous},
                  {"triangle", c.triangle},
                  {"mass_identity_deviation", c.mass_identity_deviation},
                  {"mass_bound", c.mass_bound},
                  {"holds", c.holds}});
  }
  j["per_yb"] = yb;
  j["best_ancilla"] = {{"a_star", best_ancilla.a_star},
                   {"min_sum", best_ancilla.min_sum},
                   {"min_bound", best_ancilla.min_bound},
                   {"eps", best_ancilla.eps},
                   {"probability", best_ancilla.probability},
                   {"bound", best_ancilla.bound},
                   {"vacuous", best_ancilla.vacuous},
                   {"holds", best_ancilla.holds}};
  j["pass"] = pass;
  return j;
}

BoundsInstance random_bounds_instance(Rng& rng, std::size_t max_qubits) {
  if (max_qubits < 3 || max_qubits > kMaxBoundsQubits) throw SizeError("max_qubits must be in [3, 14]");
  BoundsInstance inst;
  auto& L = inst.layout;
  do {
    L.n = 1 + rng.below(8);
    L.p = rng.below(3);
    L.q = rng.below(5);
  } while (L.qubit_count() > max_qubits);
  const std::size_t Q = L.qubit_count();
  inst.t = static_cast<int>(2 + rng.below(std::max<std::size_t>(1, Q / 2)));
  const std::size_t big = 1 + rng.below(3);
  const std::size_t small = 1 + rng.below(5 - big);
  std::vector<bool> big_slot(big + small, false);
  for (std::size_t i = 0; i < big; ++i) {
    std::size_t s;
    do s = rng.below(big + small);
    while (big_slot[s]);
    big_slot[s] = true;
  }
  inst.circuit = Circuit(Q);
  for (bool is_big_layer : big_slot) {
    if (!is_big_layer) {
      inst.circuit.append(random_elementary_circuit(rng, Q, 1));
      continue;
    }
    const std::size_t size = inst.t + rng.below(Q - inst.t + 1);
    const auto perm = random_permutation(rng, Q);
    std::vector<Qubit> qs;
    for (std::size_t i = 0; i < size; ++i) qs.push_back(static_cast<Qubit>(perm[i]));
    const Qubit target = qs.back();
    qs.pop_back();
    inst.circuit.add_gate(gate::cphase(qs, target, DyadicAngle::pi()));
  }
  return inst;
}

}  // namespace uqc

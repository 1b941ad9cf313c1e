#include "uqc/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "uqc/error.hpp"
#include "uqc/parallel.hpp"
#include "uqc/random_circuit.hpp"
#include "uqc/rng.hpp"
#include "uqc/sparse_state.hpp"
#include "uqc/state_vector.hpp"

namespace uqc {

std::string_view strategy_name(Strategy s) { return s == Strategy::Exhaustive ? "exhaustive" : "sampled"; }

Strategy parse_strategy(std::string_view name) {
  if (name == "exhaustive") return Strategy::Exhaustive;
  if (name == "sampled") return Strategy::Sampled;
  throw Error("unknown strategy '" + std::string(name) + "'");
}

nlohmann::ordered_json VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["pass"] = pass;
  j["strategy"] = strategy_name(strategy);
  j["tolerance"] = tolerance;
  j["input_settings"] = input_settings;
  j["basis_trials"] = basis_trials;
  j["product_trials"] = product_trials;
  j["output_deviation"] = output_deviation;
  j["basis_restoration_deviation"] = basis_restoration_deviation;
  j["population_deviation"] = population_deviation;
  j["strict_distance"] = strict_distance;
  j["impurity"] = impurity;
  j["output_pass"] = output_pass;
  j["population_restored"] = population_restored;
  j["strictly_restored"] = strictly_restored;
  if (witness) {
    j["witness"] = {{"kind", witness->kind},
                    {"start", witness->start},
                    {"trial", witness->trial},
                    {"deviation", witness->deviation}};
  } else {
    j["witness"] = nullptr;
  }
  j["notes"] = notes;
  return j;
}

namespace {

using Factors = std::vector<std::array<Amplitude, 2>>;

struct RestorationMetrics {
  double population = 0;
  double strict = 0;
  double impurity = 0;
  bool impurity_skipped = false;
};

std::vector<Qubit> complement_of(std::size_t n, const std::vector<Qubit>& qs) {
  std::vector<bool> in(n, false);
  for (Qubit q : qs) in[q] = true;
  std::vector<Qubit> out;
  for (Qubit q = 0; q < n; ++q)
    if (!in[q]) out.push_back(q);
  return out;
}

// Compares the reduced state on `anc` with the product of factors[q].
RestorationMetrics restoration(const StateVector& st, const std::vector<Qubit>& anc, const Factors& factors) {
  RestorationMetrics out;
  const std::size_t n = st.qubit_count();
  const auto& psi = st.amplitudes();
  std::vector<Qubit> sorted = anc;
  std::sort(sorted.begin(), sorted.end());
  const std::vector<Qubit> rest = complement_of(n, sorted);
  const std::size_t ua = sorted.size(), ur = rest.size();

  // chi = (<phi| (x) I) psi, contracting from the highest qubit down.
  std::vector<Amplitude> v(psi.begin(), psi.end());
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    const Qubit q = *it;
    const std::uint64_t stride = std::uint64_t{1} << q;
    std::vector<Amplitude> next(v.size() / 2);
    const Amplitude c0 = std::conj(factors[q][0]), c1 = std::conj(factors[q][1]);
    for (std::uint64_t i = 0; i < next.size(); ++i) {
      const std::uint64_t lo = i & (stride - 1);
      const std::uint64_t i0 = ((i >> q) << (q + 1)) | lo;
      next[i] = c0 * v[i0] + c1 * v[i0 | stride];
    }
    v.swap(next);
  }

  std::vector<Amplitude> phi(std::size_t{1} << ua);
  for (std::uint64_t u = 0; u < phi.size(); ++u) {
    Amplitude a = 1;
    for (std::size_t k = 0; k < ua; ++k) a *= factors[sorted[k]][(u >> k) & 1u];
    phi[u] = a;
  }

  std::vector<double> pop(phi.size(), 0.0);
  double resid = 0;
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    const std::uint64_t u = gather_bits(i, sorted), c = gather_bits(i, rest);
    resid += std::norm(psi[i] - phi[u] * v[c]);
    pop[u] += std::norm(psi[i]);
  }
  out.strict = std::sqrt(resid);
  double tv = 0;
  for (std::uint64_t u = 0; u < phi.size(); ++u) tv += std::abs(pop[u] - std::norm(phi[u]));
  out.population = tv / 2;

  // Purity via the Gram matrix of the smaller side.
  const std::size_t small = std::min(ua, ur);
  if (small > 11) {
    out.impurity_skipped = true;
    return out;
  }
  const bool rows_are_rest = ur <= ua;
  const std::size_t R = std::size_t{1} << (rows_are_rest ? ur : ua);
  const std::size_t C = std::size_t{1} << (rows_are_rest ? ua : ur);
  std::vector<Amplitude> M(R * C);
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    const std::uint64_t u = gather_bits(i, sorted), c = gather_bits(i, rest);
    if (rows_are_rest) M[c * C + u] = psi[i];
    else M[u * C + c] = psi[i];
  }
  double purity = 0;
  for (std::size_t a = 0; a < R; ++a)
    for (std::size_t b = a; b < R; ++b) {
      Amplitude s = 0;
      for (std::size_t k = 0; k < C; ++k) s += M[a * C + k] * std::conj(M[b * C + k]);
      purity += (a == b ? 1.0 : 2.0) * std::norm(s);
    }
  out.impurity = std::max(0.0, 1.0 - purity);
  return out;
}

struct TrialResult {
  double output = 0, basis_restore = 0, population = 0, strict = 0, impurity = 0;
  bool product = false, impurity_skipped = false;
  std::string start;
  std::uint64_t index = 0;
};

std::string start_string(std::size_t n, std::uint64_t start, const std::vector<Qubit>& superposed) {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q)
    if ((start >> q) & 1u) s[q] = '1';
  for (Qubit q : superposed) s[q] = '?';
  return s;
}

struct Setting {
  std::uint64_t start;  // inputs and outputs set, everything else 0
};

}  // namespace

VerifyReport check_mapping(const Circuit& circuit, const RegisterMap& registers, const std::vector<Qubit>& checked,
                           const Prediction& predict, const VerifyPlan& plan) {
  registers.validate();
  const std::size_t n = circuit.qubit_count();
  if (registers.qubit_count() != n) throw SizeError("register map does not match circuit width");
  if (n > 64) throw LimitError("verification supports at most 64 qubits");
  if (plan.tolerance <= 0) throw Error("tolerance must be positive");

  std::vector<Qubit> io = registers.qubits(RegisterRole::Input);
  for (Qubit q : registers.qubits(RegisterRole::Output)) io.push_back(q);
  const std::vector<Qubit> anc = registers.qubits(RegisterRole::Uninitialized);

  VerifyReport rep;
  rep.check = "mapping";
  rep.strategy = plan.strategy;
  rep.tolerance = plan.tolerance;

  Rng master(plan.seed);
  std::vector<Setting> settings;
  if (io.size() <= 12) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << io.size()); ++v) settings.push_back({scatter_bits(v, io)});
  } else {
    if (plan.strategy == Strategy::Exhaustive) throw LimitError("too many input settings for exhaustive verification");
    Rng r = master.substream(1);
    for (int i = 0; i < 4096; ++i) {
      std::uint64_t v = 0;
      for (std::size_t k = 0; k < io.size(); ++k) v |= std::uint64_t(r.bernoulli(0.5)) << k;
      settings.push_back({scatter_bits(v, io)});
    }
    rep.notes.push_back("input settings sampled (4096)");
  }
  rep.input_settings = settings.size();

  // Ancilla basis values per setting.
  const bool anc_enumerable = anc.size() < 63 && (std::uint64_t{1} << anc.size()) <= plan.basis_budget;
  std::uint64_t per_setting = 0;
  if (plan.strategy == Strategy::Exhaustive) {
    if (anc.size() >= 40 || (settings.size() << anc.size()) > kExhaustiveBudget) {
      throw LimitError("exhaustive verification needs " + std::to_string(settings.size()) + " x 2^" +
                       std::to_string(anc.size()) + " states, over the 2^22 budget");
    }
    per_setting = std::uint64_t{1} << anc.size();
  } else {
    per_setting = anc_enumerable ? (std::uint64_t{1} << anc.size()) : plan.basis_budget;
  }
  std::size_t product_trials = plan.product_trials;
  if (anc.empty()) product_trials = 0;
  if (product_trials > 0 && n > kProductTrialQubits) {
    rep.notes.push_back("product-state trials skipped: " + std::to_string(n) + " qubits exceed the dense limit of " +
                        std::to_string(kProductTrialQubits));
    product_trials = 0;
  }

  const std::size_t basis_total = settings.size() * per_setting;
  const std::size_t total = basis_total + settings.size() * product_trials;
  std::vector<TrialResult> results(total);

  parallel_for(total, plan.threads, [&](std::size_t t) {
    TrialResult& res = results[t];
    res.index = t;
    if (t < basis_total) {
      const std::size_t si = t / per_setting, k = t % per_setting;
      std::uint64_t u = k;
      if (plan.strategy == Strategy::Sampled && !anc_enumerable) {
        Rng r = master.substream(2).substream(t);
        u = 0;
        for (std::size_t b = 0; b < anc.size(); ++b) u |= std::uint64_t(r.bernoulli(0.5)) << b;
      }
      const std::uint64_t start = settings[si].start | scatter_bits(u, anc);
      SparseState st(n, start);
      st.run(circuit);
      const std::uint64_t want = predict(settings[si].start | scatter_bits(u, anc));
      res.output = checked.empty() ? 0.0 : std::max(0.0, 1.0 - st.probability_of(checked, want));
      res.basis_restore = anc.empty() ? 0.0 : std::max(0.0, 1.0 - st.probability_of(anc, u));
      res.start = start_string(n, start, {});
      return;
    }
    const std::size_t p = t - basis_total;
    const std::size_t si = p / product_trials;
    Rng r = master.substream(3).substream(p);
    Factors f(n, {Amplitude(1), Amplitude(0)});
    for (Qubit q = 0; q < n; ++q)
      if ((settings[si].start >> q) & 1u) f[q] = {Amplitude(0), Amplitude(1)};
    for (Qubit q : anc) f[q] = random_qubit(r);
    StateVector st = StateVector::product(f);
    st.run(circuit);
    res.product = true;
    res.output = checked.empty() ? 0.0 : std::max(0.0, 1.0 - probability_of(st, checked, predict(settings[si].start)));
    const auto m = restoration(st, anc, f);
    res.population = m.population;
    res.strict = m.strict;
    res.impurity = m.impurity;
    res.impurity_skipped = m.impurity_skipped;
    res.start = start_string(n, settings[si].start, anc);
  });

  double worst = -1;
  bool impurity_skipped = false;
  for (const auto& r : results) {
    if (r.product) ++rep.product_trials;
    else ++rep.basis_trials;
    rep.output_deviation = std::max(rep.output_deviation, r.output);
    rep.basis_restoration_deviation = std::max(rep.basis_restoration_deviation, r.basis_restore);
    rep.population_deviation = std::max(rep.population_deviation, r.population);
    rep.strict_distance = std::max(rep.strict_distance, r.strict);
    rep.impurity = std::max(rep.impurity, r.impurity);
    impurity_skipped = impurity_skipped || r.impurity_skipped;
    const double d = std::max({r.output, r.basis_restore, r.population, r.strict});
    if (d > worst) {
      worst = d;
      rep.witness = Witness{r.product ? "product" : "basis", r.start, r.index, d};
    }
  }
  if (impurity_skipped) rep.notes.push_back("purity not computed: both sides of the ancilla cut exceed 11 qubits");
  const double tol = plan.tolerance;
  rep.output_pass = rep.output_deviation <= tol;
  rep.population_restored = rep.basis_restoration_deviation <= tol && rep.population_deviation <= tol;
  rep.strictly_restored = rep.basis_restoration_deviation <= tol && rep.strict_distance <= tol && rep.impurity <= tol;
  rep.pass = rep.output_pass && rep.population_restored;
  return rep;
}

VerifyReport check_computes(const Circuit& circuit, const RegisterMap& registers,
                            const std::function<bool(std::uint64_t)>& f, const VerifyPlan& plan) {
  const auto in = registers.qubits(RegisterRole::Input);
  const auto out = registers.qubits(RegisterRole::Output);
  if (out.size() != 1) throw SizeError("check_computes needs exactly one output qubit");
  const Qubit y = out[0];
  auto rep = check_mapping(
      circuit, registers, out,
      [&](std::uint64_t start) { return (((start >> y) & 1u) ^ (f(gather_bits(start, in)) ? 1u : 0u)); }, plan);
  rep.check = "computes";
  rep.pass = rep.output_pass;
  return rep;
}

VerifyReport check_catalytic(const Circuit& circuit, const RegisterMap& registers, const VerifyPlan& plan) {
  auto rep = check_mapping(circuit, registers, {}, [](std::uint64_t) { return std::uint64_t{0}; }, plan);
  rep.check = "catalytic";
  rep.pass = rep.strictly_restored;
  return rep;
}

double unitary_distance(const Circuit& a, const Circuit& b) {
  const std::size_t n = a.qubit_count();
  if (b.qubit_count() != n) throw SizeError("circuits differ in width");
  if (n > 12) throw LimitError("unitary comparison supports at most 12 qubits");
  Amplitude omega = 1;
  double worst = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    auto sa = StateVector::basis(n, x), sb = StateVector::basis(n, x);
    sa.run(a);
    sb.run(b);
    if (x == 0) {
      for (std::uint64_t i = 0; i < sa.dimension(); ++i) {
        const Amplitude va = sa.amplitude(i), vb = sb.amplitude(i);
        if (std::abs(va) > 1e-6 && std::abs(vb) > 1e-6) {
          omega = vb / va;
          omega /= std::abs(omega);
          break;
        }
      }
    }
    double d = 0;
    for (std::uint64_t i = 0; i < sa.dimension(); ++i) d += std::norm(sb.amplitude(i) - omega * sa.amplitude(i));
    worst = std::max(worst, std::sqrt(d));
  }
  return worst;
}

bool unitary_equivalent(const Circuit& a, const Circuit& b, double tolerance) {
  return unitary_distance(a, b) <= tolerance;
}

nlohmann::ordered_json ComposedReport::to_json() const {
  nlohmann::ordered_json j;
  j["check"] = "symmetric-composed";
  j["pass"] = pass;
  j["catalytic"] = catalytic;
  j["whole_circuit_basis"] = basis.to_json();
  j["end_to_end"] = {{"trials", end_to_end.trials},
                     {"superposed", end_to_end.superposed},
                     {"output_deviation", end_to_end.output_deviation},
                     {"strict_distance", end_to_end.strict_distance},
                     {"pass", end_to_end.pass}};
  j["weight_component"] = weight.to_json();
  j["assoc_component"] = assoc.to_json();
  return j;
}

bool exhaustive_feasible(const RegisterMap& registers) {
  const std::size_t io = registers.count(RegisterRole::Input) + registers.count(RegisterRole::Output);
  const std::uint64_t settings = io <= 12 ? (std::uint64_t{1} << io) : 4096;
  const std::size_t anc = registers.q();
  return anc < 40 && (settings << anc) <= kExhaustiveBudget;
}

namespace {

// Exhaustive where it fits, sampled otherwise.
VerifyPlan fitted(VerifyPlan plan, const RegisterMap& registers, bool& downgraded) {
  downgraded = plan.strategy == Strategy::Exhaustive && !exhaustive_feasible(registers);
  if (downgraded) plan.strategy = Strategy::Sampled;
  return plan;
}

constexpr const char* kDowngradeNote = "exhaustive enumeration over budget, ancillas sampled";

}  // namespace

ComposedReport check_symmetric_composed(const SymmetricCircuit& sc, const VerifyPlan& plan) {
  ComposedReport out;
  bool down = false;
  out.catalytic = sc.layout.catalytic;
  const auto& L = sc.layout;
  const auto& f = sc.function;
  const std::size_t m = L.m;

  // Whole circuit, basis states only.
  {
    std::vector<Qubit> checked{L.y};
    checked.insert(checked.end(), L.i.begin(), L.i.end());
    if (L.y_work) checked.push_back(*L.y_work);
    VerifyPlan p = fitted(plan, L.registers, down);
    p.product_trials = 0;
    out.basis = check_mapping(
        sc.circuit, L.registers, checked,
        [&](std::uint64_t start) {
          const std::uint64_t x = gather_bits(start, L.x);
          std::uint64_t v = ((start >> L.y) & 1u) ^ (f(x) ? 1u : 0u);
          if (!L.catalytic) v |= std::uint64_t(std::popcount(x)) << 1;
          return v;
        },
        p);
    out.basis.check = "symmetric-basis";
    if (down) out.basis.notes.push_back(kDowngradeNote);
    out.basis.pass = out.basis.output_pass && out.basis.basis_restoration_deviation <= plan.tolerance;
  }

  // Whole circuit with partly superposed ancillas.
  {
    const std::size_t n = L.registers.qubit_count();
    const auto anc = L.registers.qubits(RegisterRole::Uninitialized);
    auto& e = out.end_to_end;
    e.superposed = std::min(anc.size(), kSuperposedAncillas);
    const std::size_t settings = std::size_t{1} << (L.x.size() + 1);
    const std::size_t per = plan.product_trials;
    std::vector<std::pair<double, double>> res(settings * per);
    Rng master = Rng(plan.seed).substream(4);
    parallel_for(res.size(), plan.threads, [&](std::size_t t) {
      const std::uint64_t v = t / per;
      const std::uint64_t x = v >> 1, y = v & 1u;
      Rng r = master.substream(t);
      std::uint64_t base = scatter_bits(x, L.x) | (y << L.y);
      const auto order = random_permutation(r, anc.size());
      std::vector<std::pair<Qubit, std::array<Amplitude, 2>>> fac;
      for (std::size_t k = 0; k < anc.size(); ++k) {
        const Qubit q = anc[order[k]];
        if (k < e.superposed) fac.emplace_back(q, random_qubit(r));
        else if (r.bernoulli(0.5)) base |= std::uint64_t{1} << q;
      }
      auto st = SparseState::product(n, base, fac);
      st.run(sc.circuit);
      const std::uint64_t want = y ^ (f(x) ? 1u : 0u);
      const double dev = std::max(0.0, 1.0 - st.probability_of({L.y}, want));
      double strict = 0;
      if (L.catalytic) {
        const auto expect = SparseState::product(n, base ^ ((y ^ want) << L.y), fac);
        strict = phase_insensitive_distance(st, expect);
      }
      res[t] = {dev, strict};
    });
    for (const auto& [d, s] : res) {
      e.output_deviation = std::max(e.output_deviation, d);
      e.strict_distance = std::max(e.strict_distance, s);
    }
    e.trials = res.size();
    e.pass = e.output_deviation <= plan.tolerance && e.strict_distance <= plan.tolerance;
  }

  // Weight component: X -> binary weight on I.
  const auto& W = sc.weight.layout;
  VerifyPlan pw = fitted(plan, W.registers, down);
  pw.basis_budget = std::min<std::size_t>(plan.basis_budget, 64);
  out.weight = check_mapping(
      sc.weight.circuit, W.registers, W.i,
      [&](std::uint64_t start) { return std::uint64_t(std::popcount(gather_bits(start, W.x))); }, pw);
  out.weight.check = "weight-component";
  if (down) out.weight.notes.push_back(kDowngradeNote);

  // Associated-function component, S fed with every binary weight. For the
  // catalytic variant the component is run forward, its output copied
  // (a basis bit, so the copy leaves the component state alone) and run
  // backward; strict restoration is then required.
  const auto& R = sc.assoc.layout;
  Circuit rc = sc.assoc.circuit;
  if (L.catalytic) rc.append(sc.assoc.circuit.inverse());
  std::vector<Qubit> checked = R.s;
  checked.push_back(R.y);
  const auto g = associated_function(f);
  pw = fitted(plan, R.registers, down);
  pw.basis_budget = std::min<std::size_t>(plan.basis_budget, 64);
  out.assoc = check_mapping(
      rc, R.registers, checked,
      [&](std::uint64_t start) {
        const std::uint64_t s = gather_bits(start, R.s);
        const std::uint64_t y = (start >> R.y) & 1u;
        return s | ((L.catalytic ? y : y ^ (g(s) ? 1u : 0u)) << m);
      },
      pw);
  out.assoc.check = "assoc-component";
  if (down) out.assoc.notes.push_back(kDowngradeNote);
  if (L.catalytic) {
    // The copy step needs Y to be a basis bit after the forward pass.
    VerifyPlan p2 = pw;
    p2.product_trials = std::min<std::size_t>(pw.product_trials, 8);
    auto fwd = check_mapping(
        sc.assoc.circuit, R.registers, checked,
        [&](std::uint64_t start) {
          const std::uint64_t s = gather_bits(start, R.s);
          return s | (std::uint64_t((((start >> R.y) & 1u) ^ (g(s) ? 1u : 0u))) << m);
        },
        p2);
    out.assoc.output_deviation = std::max(out.assoc.output_deviation, fwd.output_deviation);
    out.assoc.output_pass = out.assoc.output_pass && fwd.output_pass;
    out.assoc.notes.push_back("forward pass output deviation " + std::to_string(fwd.output_deviation));
  }

  // Composition: g(binary |x|) must equal f(x).
  bool table_ok = true;
  for (std::size_t w = 0; w <= f.n; ++w) table_ok = table_ok && (g(w) == f.at_weight(w));

  const double tol = plan.tolerance;
  const bool restored = L.catalytic ? out.assoc.strictly_restored : out.assoc.population_restored;
  const bool weight_restored = out.weight.population_restored;
  out.assoc.pass = out.assoc.output_pass && restored;
  out.weight.pass = out.weight.output_pass && weight_restored;
  out.pass = table_ok && out.basis.pass && out.end_to_end.pass && out.weight.pass && out.assoc.pass && out.basis.output_deviation <= tol;
  return out;
}

}  // namespace uqc

#include "uqc/constructions.hpp"

#include <bit>

#include "uqc/error.hpp"

namespace uqc {

std::string bit_label(std::uint64_t t, std::size_t m) {
  std::string s;
  for (std::size_t k = 0; k < m; ++k) s += ((t >> k) & 1u) ? '1' : '0';
  return s;
}

namespace {

std::vector<std::string> numbered(const std::string& base, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(base + "_" + std::to_string(i));
  return out;
}

// Offset of (k, l) with 1 <= l <= k inside one j-block of B.
std::size_t triangle(std::size_t k, std::size_t l) { return (k - 1) * k / 2 + (l - 1); }

}  // namespace

Qubit OrReductionLayout::a(std::size_t j, std::size_t k) const {
  if (j < 1 || j > n || k < 1 || k > m) throw SizeError("A_j(k) index out of range");
  return a_qubits[(j - 1) * m + (k - 1)];
}

Qubit OrReductionLayout::b(std::size_t j, std::size_t k, std::size_t l) const {
  if (j < 1 || j > n || k < 1 || k > m || l < 1 || l > k) throw SizeError("B_j(k,l) index out of range");
  return b_qubits[(j - 1) * (m * (m + 1) / 2) + triangle(k, l)];
}

namespace {

OrReductionLayout or_layout(std::size_t n) {
  if (n < 1) throw SizeError("need n >= 1");
  OrReductionLayout L;
  L.n = n;
  L.m = weight_bits(n);
  const std::size_t m = L.m;
  L.x = L.registers.allocate("X", RegisterRole::Input, numbered("X", n));
  std::vector<std::string> il;
  for (std::size_t k = 1; k <= m; ++k) il.push_back("I(" + std::to_string(k) + ")");
  L.i = L.registers.allocate("I", RegisterRole::Initialized, il);
  std::vector<std::string> al, bl;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = 1; k <= m; ++k) al.push_back("A_" + std::to_string(j) + "(" + std::to_string(k) + ")");
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = 1; k <= m; ++k)
      for (std::size_t l = 1; l <= k; ++l)
        bl.push_back("B_" + std::to_string(j) + "(" + std::to_string(k) + "," + std::to_string(l) + ")");
  L.a_qubits = L.registers.allocate("A", RegisterRole::Uninitialized, al);
  L.b_qubits = L.registers.allocate("B", RegisterRole::Uninitialized, bl);
  return L;
}

}  // namespace

OrReduction build_or_reduction(std::size_t n) {
  OrReduction out{Circuit(0), or_layout(n), {}};
  const auto& L = out.layout;
  const std::size_t m = L.m;
  const std::size_t Q = L.registers.qubit_count();
  out.circuit = Circuit(Q);

  for (std::size_t s = 1; s <= m; ++s) {
    Layer step1, step2, step3, step4, step5;
    for (std::size_t k = s; k <= m; ++k) {
      step1.push_back(gate::h(L.i[k - 1]));
      std::vector<Qubit> targets;
      for (std::size_t j = 1; j <= n; ++j) targets.push_back(L.b(j, k, s));
      step2.push_back(gate::fanout(L.i[k - 1], targets));
    }
    if (s >= 2) {
      for (std::size_t k = s; k <= m; ++k)
        for (std::size_t j = 1; j <= n; ++j) {
          std::vector<Qubit> targets;
          for (std::size_t l = 1; l < s; ++l) targets.push_back(L.b(j, k, l));
          step3.push_back(gate::fanout(L.a(j, k), targets));
        }
    }
    for (std::size_t j = 1; j <= n; ++j) {
      std::vector<Qubit> targets;
      for (std::size_t k = s; k <= m; ++k) targets.push_back(L.a(j, k));
      step4.push_back(gate::fanout(L.x[j - 1], targets));
    }
    for (std::size_t k = s; k <= m; ++k) {
      const DyadicAngle angle = DyadicAngle::unit(static_cast<int>(k - s + 1));
      for (std::size_t j = 1; j <= n; ++j) {
        std::vector<Qubit> controls;
        for (std::size_t l = 1; l < s; ++l) controls.push_back(L.b(j, k, l));
        controls.push_back(L.a(j, k));
        step5.push_back(gate::cphase(controls, L.b(j, k, s), angle));
      }
    }
    Layer step7;
    for (const auto& g : step5) step7.push_back(g.inverse());

    Circuit stage(Q);
    stage.add_layer(step1);
    stage.add_layer(step2);
    stage.add_layer(step3);
    stage.add_layer(step4);
    stage.add_layer(step5);
    stage.add_layer(step4);
    stage.add_layer(step7);
    stage.add_layer(step3);
    stage.add_layer(step2);
    stage.add_layer(step1);
    out.circuit.append(stage);
    out.stages.push_back(std::move(stage));
  }
  return out;
}

Circuit build_inverse_qft(std::size_t m) {
  if (m < 1) throw SizeError("need m >= 1");
  Circuit c(m);
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::size_t l = 1; l < k; ++l) {
      c.add_gate(gate::cphase({static_cast<Qubit>(l - 1)}, static_cast<Qubit>(k - 1),
                              -DyadicAngle::unit(static_cast<int>(k - l + 1))));
    }
    c.add_gate(gate::h(static_cast<Qubit>(k - 1)));
  }
  return c.repacked();
}

Circuit build_qft(std::size_t m) { return build_inverse_qft(m).inverse(); }

WeightExtractor build_weight_extractor(std::size_t n) {
  OrReduction q = build_or_reduction(n);
  WeightExtractor out{std::move(q.circuit), std::move(q.layout)};
  Layer hs;
  for (Qubit qi : out.layout.i) hs.push_back(gate::h(qi));
  out.circuit.add_layer(hs);
  out.circuit.append_mapped(build_inverse_qft(out.layout.m), out.layout.i);
  return out;
}

Qubit ParityLayout::d(std::size_t k, std::uint64_t w) const {
  if (k < 1 || k > m || w >= (std::uint64_t{1} << m) || !((w >> (k - 1)) & 1u)) {
    throw SizeError("D_k(w) needs w_k = 1");
  }
  // Within block k, the w with w_k = 1 are ranked by w with bit k-1 removed.
  const std::uint64_t low = w & ((std::uint64_t{1} << (k - 1)) - 1);
  const std::uint64_t rank = ((w >> k) << (k - 1)) | low;
  return d_qubits[(k - 1) * (std::size_t{1} << (m - 1)) + rank];
}

namespace {

std::vector<std::string> d_labels(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= m; ++k)
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << m); ++w)
      if ((w >> (k - 1)) & 1u) out.push_back("D_" + std::to_string(k) + "(" + bit_label(w, m) + ")");
  return out;
}

// d_qubits are allocated in (k, w) order, which matches ParityLayout::d's rank.
void append_parity_m(Circuit& c, const std::vector<Qubit>& s, const std::vector<Qubit>& a, const ParityLayout& shape) {
  const std::size_t m = s.size();
  Layer fan, par;
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<Qubit> targets;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << m); ++w)
      if ((w >> (k - 1)) & 1u) targets.push_back(shape.d(k, w));
    fan.push_back(gate::fanout(s[k - 1], targets));
  }
  for (std::uint64_t t = 1; t < (std::uint64_t{1} << m); ++t) {
    std::vector<Qubit> sources;
    for (std::size_t k = 1; k <= m; ++k)
      if ((t >> (k - 1)) & 1u) sources.push_back(shape.d(k, t));
    par.push_back(gate::parity(sources, a[t]));
  }
  c.add_layer(fan);
  c.add_layer(par);
  c.add_layer(fan);
  c.add_layer(par);
}

}  // namespace

ParityCircuit build_parity_gate_circuit(std::size_t m) {
  if (m < 1 || m > 16) throw SizeError("PARITY(m) supports 1 <= m <= 16");
  ParityCircuit out{Circuit(0), {}};
  auto& L = out.layout;
  L.m = m;
  L.s = L.registers.allocate("S", RegisterRole::Input, numbered("S", m));
  std::vector<std::string> al;
  for (std::uint64_t t = 1; t < (std::uint64_t{1} << m); ++t) al.push_back("A_" + bit_label(t, m));
  auto aq = L.registers.allocate("At", RegisterRole::Output, al);
  L.a.assign(1, 0);
  L.a.insert(L.a.end(), aq.begin(), aq.end());
  L.d_qubits = L.registers.allocate("D", RegisterRole::Uninitialized, d_labels(m));
  out.circuit = Circuit(L.registers.qubit_count());
  append_parity_m(out.circuit, L.s, L.a, L);
  return out;
}

Qubit AssocLayout::b(std::uint64_t t, std::size_t l) const {
  if (t < 1 || t >= (std::uint64_t{1} << m) || l < 1 || l > m) throw SizeError("B_t(l) index out of range");
  return b_qubits[(t - 1) * m + (l - 1)];
}

Qubit AssocLayout::d(std::size_t k, std::uint64_t w) const {
  ParityLayout p;
  p.m = m;
  p.d_qubits = d_qubits;
  return p.d(k, w);
}

AssocCircuit build_assoc_circuit(const FourierSpec& spec) {
  const std::size_t m = spec.m;
  if (m < 1 || m > 16) throw SizeError("associated-function circuit supports 1 <= m <= 16");
  if (spec.coefficients.size() != (std::size_t{1} << m)) throw SizeError("coefficient table must have 2^m entries");
  AssocCircuit out{Circuit(0), {}, {}, spec};
  auto& L = out.layout;
  L.m = m;
  const std::uint64_t N = std::uint64_t{1} << m;
  L.s = L.registers.allocate("S", RegisterRole::Input, numbered("S", m));
  L.y = L.registers.allocate("Y", RegisterRole::Output, std::vector<std::string>{"Y"})[0];
  std::vector<std::string> al, bl;
  for (std::uint64_t t = 1; t < N; ++t) al.push_back("A_" + bit_label(t, m));
  for (std::uint64_t t = 1; t < N; ++t)
    for (std::size_t l = 1; l <= m; ++l) bl.push_back("B_" + bit_label(t, m) + "(" + std::to_string(l) + ")");
  auto aq = L.registers.allocate("At", RegisterRole::Uninitialized, al);
  L.a.assign(1, 0);
  L.a.insert(L.a.end(), aq.begin(), aq.end());
  L.b_qubits = L.registers.allocate("Bt", RegisterRole::Uninitialized, bl);
  L.d_qubits = L.registers.allocate("D", RegisterRole::Uninitialized, d_labels(m));
  const std::size_t Q = L.registers.qubit_count();
  out.circuit = Circuit(Q);

  ParityLayout shape;
  shape.m = m;
  shape.d_qubits = L.d_qubits;

  for (std::size_t u = 1; u <= m; ++u) {
    Layer step1{gate::h(L.y)}, step2, step3, step5;
    std::vector<Qubit> targets;
    for (std::uint64_t t = 1; t < N; ++t) targets.push_back(L.b(t, u));
    step2.push_back(gate::fanout(L.y, targets));
    if (u >= 2) {
      for (std::uint64_t t = 1; t < N; ++t) {
        std::vector<Qubit> bt;
        for (std::size_t l = 1; l < u; ++l) bt.push_back(L.b(t, l));
        step3.push_back(gate::fanout(L.a[t], bt));
      }
    }
    for (std::uint64_t t = 1; t < N; ++t) {
      const DyadicAngle angle(spec.coefficients[t], static_cast<int>(m - u + 1));
      if (angle.is_zero()) continue;
      std::vector<Qubit> controls;
      for (std::size_t l = 1; l < u; ++l) controls.push_back(L.b(t, l));
      controls.push_back(L.a[t]);
      step5.push_back(gate::cphase(controls, L.b(t, u), angle));
    }
    Layer step7;
    for (const auto& g : step5) step7.push_back(g.inverse());

    Circuit stage(Q);
    stage.add_layer(step1);
    stage.add_layer(step2);
    stage.add_layer(step3);
    append_parity_m(stage, L.s, L.a, shape);
    stage.add_layer(step5);
    append_parity_m(stage, L.s, L.a, shape);
    stage.add_layer(step7);
    stage.add_layer(step3);
    stage.add_layer(step2);
    stage.add_layer(step1);
    out.circuit.append(stage);
    out.stages.push_back(std::move(stage));
  }
  if (spec.constant) out.circuit.add_gate(gate::x(L.y));
  return out;
}

SymmetricCircuit build_symmetric_circuit(const SymmetricFunction& f, bool catalytic) {
  f.validate();
  SymmetricCircuit out{Circuit(0), {}, build_weight_extractor(f.n),
                       build_assoc_circuit(fourier_coefficients(associated_function(f))), f};
  const auto& W = out.weight.layout;
  const auto& R = out.assoc.layout;
  auto& L = out.layout;
  L.n = f.n;
  L.m = W.m;
  L.catalytic = catalytic;

  L.x = L.registers.allocate("X", RegisterRole::Input, numbered("X", f.n));
  L.y = L.registers.allocate("Y", RegisterRole::Output, std::vector<std::string>{"Y"})[0];
  L.i = L.registers.allocate("I", RegisterRole::Initialized, W.registers.at("I").labels);
  const auto a = L.registers.allocate("A", RegisterRole::Uninitialized, W.registers.at("A").labels);
  const auto b = L.registers.allocate("B", RegisterRole::Uninitialized, W.registers.at("B").labels);
  if (catalytic) L.y_work = L.registers.allocate("Yc", RegisterRole::Initialized, std::vector<std::string>{"Yc"})[0];
  const auto at = L.registers.allocate("At", RegisterRole::Uninitialized, R.registers.at("At").labels);
  const auto bt = L.registers.allocate("Bt", RegisterRole::Uninitialized, R.registers.at("Bt").labels);
  const auto d = L.registers.allocate("D", RegisterRole::Uninitialized, R.registers.at("D").labels);

  // Local-to-global maps, register by register.
  L.weight_map.assign(W.registers.qubit_count(), 0);
  const auto place = [](std::vector<Qubit>& map, const std::vector<Qubit>& local, const std::vector<Qubit>& global) {
    for (std::size_t i = 0; i < local.size(); ++i) map[local[i]] = global[i];
  };
  place(L.weight_map, W.x, L.x);
  place(L.weight_map, W.i, L.i);
  place(L.weight_map, W.a_qubits, a);
  place(L.weight_map, W.b_qubits, b);
  L.assoc_map.assign(R.registers.qubit_count(), 0);
  place(L.assoc_map, R.s, L.i);
  L.assoc_map[R.y] = catalytic ? *L.y_work : L.y;
  place(L.assoc_map, R.registers.at("At").qubits, at);
  place(L.assoc_map, R.b_qubits, bt);
  place(L.assoc_map, R.d_qubits, d);

  out.circuit = Circuit(L.registers.qubit_count());
  out.circuit.append_mapped(out.weight.circuit, L.weight_map);
  out.circuit.append_mapped(out.assoc.circuit, L.assoc_map);
  if (catalytic) {
    out.circuit.add_gate(gate::cnot(*L.y_work, L.y));
    out.circuit.append_mapped(out.assoc.circuit.inverse(), L.assoc_map);
    out.circuit.append_mapped(out.weight.circuit.inverse(), L.weight_map);
  }
  return out;
}

HadamardTest build_hadamard_test(const Circuit& inner) {
  const std::size_t n = inner.qubit_count();
  if (n < 1) throw SizeError("inner circuit needs at least one qubit");
  for (const auto& l : inner.layers())
    for (const auto& g : l)
      if (g.kind != GateKind::H && g.kind != GateKind::Phase && g.kind != GateKind::CNOT) {
        throw GateError("inner circuit must use only H, P and CNOT");
      }
  HadamardTest out{Circuit(0), {}};
  auto& L = out.layout;
  L.n = n;
  L.x = L.registers.allocate("X", RegisterRole::Input, numbered("X", n));
  L.w = L.registers.allocate("W", RegisterRole::Input, numbered("W", n));
  L.y = L.registers.allocate("Y", RegisterRole::Output, std::vector<std::string>{"Y"})[0];
  std::vector<std::string> gl;
  for (std::size_t j = 1; j <= n; ++j) gl.push_back("G(" + std::to_string(j) + ")");
  L.g = L.registers.allocate("G", RegisterRole::Uninitialized, gl);

  Circuit& c = out.circuit = Circuit(L.registers.qubit_count());
  c.add_gate(gate::h(L.y));
  c.add_gate(gate::fanout(L.y, L.g));
  c.append_mapped(inner, L.x);
  Layer zs;
  for (std::size_t j = 0; j < n; ++j) zs.push_back(gate::cphase({L.g[j], L.x[j]}, L.w[j], DyadicAngle::pi()));
  c.add_layer(zs);
  c.append_mapped(inner.inverse(), L.x);
  c.add_gate(gate::fanout(L.y, L.g));
  c.add_gate(gate::h(L.y));
  return out;
}

}  // namespace uqc

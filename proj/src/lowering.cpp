#include "uqc/lowering.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "uqc/error.hpp"

namespace uqc {

std::string_view gate_set_name(GateSet set) {
  switch (set) {
    case GateSet::Elementary: return "elementary";
    case GateSet::Extended: return "extended";
    case GateSet::UnboundedZ: return "unbounded-z";
  }
  return "?";
}

GateSet parse_gate_set(std::string_view name) {
  for (auto s : {GateSet::Elementary, GateSet::Extended, GateSet::UnboundedZ})
    if (gate_set_name(s) == name) return s;
  throw LoweringError("unknown gate set '" + std::string(name) + "'");
}

bool in_gate_set(const GateOp& g, GateSet set) {
  switch (g.kind) {
    case GateKind::H:
    case GateKind::Phase:
    case GateKind::CNOT:
      return true;
    case GateKind::FanOut:
    case GateKind::Toffoli:
      return set == GateSet::Extended;
    case GateKind::ControlledPhase:
      return set == GateSet::UnboundedZ && g.angle == DyadicAngle::pi();
    default:
      return false;
  }
}

namespace {

using Seq = std::vector<GateOp>;

const DyadicAngle kT(1, 3);   // pi/4
const DyadicAngle kTdg(7, 3);  // -pi/4

void toffoli2(Seq& out, Qubit a, Qubit b, Qubit c) {
  out.push_back(gate::h(c));
  out.push_back(gate::cnot(b, c));
  out.push_back(gate::phase(c, kTdg));
  out.push_back(gate::cnot(a, c));
  out.push_back(gate::phase(c, kT));
  out.push_back(gate::cnot(b, c));
  out.push_back(gate::phase(c, kTdg));
  out.push_back(gate::cnot(a, c));
  out.push_back(gate::phase(b, kT));
  out.push_back(gate::phase(c, kT));
  out.push_back(gate::h(c));
  out.push_back(gate::cnot(a, b));
  out.push_back(gate::phase(a, kT));
  out.push_back(gate::phase(b, kTdg));
  out.push_back(gate::cnot(a, b));
}

// CNOT doubling tree: round r copies slot i into slot i + 2^r.
void fanout_tree(Seq& out, Qubit control, const std::vector<Qubit>& targets) {
  std::vector<Qubit> slots{control};
  slots.insert(slots.end(), targets.begin(), targets.end());
  const std::size_t n = slots.size();
  Seq tree;
  for (std::size_t step = 1; step < n; step <<= 1)
    for (std::size_t i = 0; i < step && i + step < n; ++i) tree.push_back(gate::cnot(slots[i], slots[i + step]));
  // The tree alone XORs each target's ancestors into it; undoing the
  // target-only part first leaves just the control's contribution.
  for (auto it = tree.rbegin(); it != tree.rend(); ++it)
    if (it->controls[0] != control) out.push_back(*it);
  out.insert(out.end(), tree.begin(), tree.end());
}

void parity_tree(Seq& out, const std::vector<Qubit>& sources, Qubit target) {
  Seq tree;
  const std::size_t n = sources.size();
  for (std::size_t step = 1; step < n; step <<= 1)
    for (std::size_t i = 0; i + step < n; i += 2 * step) tree.push_back(gate::cnot(sources[i + step], sources[i]));
  out.insert(out.end(), tree.begin(), tree.end());
  out.push_back(gate::cnot(sources[0], target));
  out.insert(out.end(), tree.rbegin(), tree.rend());
}

// Multi-controlled X with m >= 3 controls using m-2 dirty ancillas, as a
// sequence of 2-control Toffolis (ladder, then the ladder without its top).
void toffoli_ladder(Seq& out, const std::vector<Qubit>& c, Qubit t, const std::vector<Qubit>& a) {
  const std::size_t m = c.size();
  auto T = [&](Qubit x, Qubit y, Qubit z) { out.push_back(gate::toffoli({x, y}, z)); };
  // Ladder rungs from the top: (c_m, a_{m-2}) -> t, (c_{m-1}, a_{m-3}) -> a_{m-2}, ...
  auto down_up = [&](std::size_t top) {
    // top = index of the highest control used (0-based), writing to target_of(top).
    auto target_of = [&](std::size_t i) { return i == m - 1 ? t : a[i - 1]; };
    for (std::size_t i = top; i >= 2; --i) T(c[i], a[i - 2], target_of(i));
    T(c[0], c[1], a[0]);
    for (std::size_t i = 2; i <= top; ++i) T(c[i], a[i - 2], target_of(i));
  };
  down_up(m - 1);
  down_up(m - 2);
}

struct Context {
  GateSet target;
  std::function<Qubit()> borrow;  // one dirty ancilla for the current block
};

void emit(const GateOp& g, Seq& out, Context& ctx);

void emit_toffoli(const std::vector<Qubit>& controls, Qubit t, Seq& out, Context& ctx) {
  const std::size_t k = controls.size();
  if (k == 1) {
    out.push_back(gate::cnot(controls[0], t));
    return;
  }
  if (ctx.target == GateSet::Extended) {
    out.push_back(gate::toffoli(controls, t));
    return;
  }
  if (ctx.target == GateSet::UnboundedZ) {
    std::vector<Qubit> all = controls;
    all.push_back(t);
    out.push_back(gate::h(t));
    out.push_back(gate::multi_z(all));
    out.push_back(gate::h(t));
    return;
  }
  Seq twos;
  if (k == 2) {
    twos.push_back(gate::toffoli(controls, t));
  } else {
    // Split the controls; the ancilla carries the AND of the first half.
    const Qubit anc = ctx.borrow();
    const std::size_t k1 = (k + 1) / 2;
    std::vector<Qubit> c1(controls.begin(), controls.begin() + k1);
    std::vector<Qubit> c2(controls.begin() + k1, controls.end());
    c2.push_back(anc);
    auto sub = [&](const std::vector<Qubit>& cs, Qubit tgt, std::vector<Qubit> spare) {
      if (cs.size() == 1) {
        twos.push_back(gate::cnot(cs[0], tgt));
      } else if (cs.size() == 2) {
        twos.push_back(gate::toffoli(cs, tgt));
      } else {
        spare.resize(cs.size() - 2);
        toffoli_ladder(twos, cs, tgt, spare);
      }
    };
    std::vector<Qubit> spare_for_c1(c2.begin(), c2.end() - 1);
    spare_for_c1.push_back(t);
    for (int rep = 0; rep < 2; ++rep) {
      sub(c1, anc, spare_for_c1);
      sub(c2, t, c1);
    }
  }
  for (const auto& g : twos) {
    if (g.kind == GateKind::Toffoli) toffoli2(out, g.controls[0], g.controls[1], g.targets[0]);
    else out.push_back(g);
  }
}

void emit_cphase1(Qubit c, Qubit t, DyadicAngle a, Seq& out) {
  if (a.is_zero()) return;
  const DyadicAngle h = a.half();
  out.push_back(gate::phase(c, h));
  out.push_back(gate::phase(t, h));
  out.push_back(gate::cnot(c, t));
  out.push_back(gate::phase(t, -h));
  out.push_back(gate::cnot(c, t));
}

void emit_cphase(const GateOp& g, Seq& out, Context& ctx) {
  const DyadicAngle a = g.angle;
  if (a.is_zero()) return;
  if (in_gate_set(g, ctx.target)) {
    out.push_back(g);
    return;
  }
  const Qubit t = g.targets[0];
  if (g.controls.size() == 1) {
    emit_cphase1(g.controls[0], t, a, out);
    return;
  }
  if (a == DyadicAngle::pi()) {
    out.push_back(gate::h(t));
    emit_toffoli(g.controls, t, out, ctx);
    out.push_back(gate::h(t));
    return;
  }
  // CP_S(a) = [CP(a/2)(t,y), X^{AND R} on t, CP(-a/2)(t,y), X^{AND R} on t] * CP_{R+y}(a/2)
  const Qubit y = g.controls.back();
  std::vector<Qubit> rest(g.controls.begin(), g.controls.end() - 1);
  const DyadicAngle h = a.half();
  emit_cphase1(t, y, h, out);
  emit_toffoli(rest, t, out, ctx);
  emit_cphase1(t, y, -h, out);
  emit_toffoli(rest, t, out, ctx);
  std::vector<Qubit> sub = rest;
  emit_cphase(gate::cphase(sub, y, h), out, ctx);
}

void emit(const GateOp& g, Seq& out, Context& ctx) {
  if (in_gate_set(g, ctx.target)) {
    out.push_back(g);
    return;
  }
  switch (g.kind) {
    case GateKind::X:
      out.push_back(gate::h(g.targets[0]));
      out.push_back(gate::phase(g.targets[0], DyadicAngle::pi()));
      out.push_back(gate::h(g.targets[0]));
      break;
    case GateKind::Z:
      out.push_back(gate::phase(g.targets[0], DyadicAngle::pi()));
      break;
    case GateKind::FanOut:
      if (g.targets.size() == 1) out.push_back(gate::cnot(g.controls[0], g.targets[0]));
      else fanout_tree(out, g.controls[0], g.targets);
      break;
    case GateKind::Parity:
      if (g.controls.size() == 1) out.push_back(gate::cnot(g.controls[0], g.targets[0]));
      else parity_tree(out, g.controls, g.targets[0]);
      break;
    case GateKind::Toffoli:
      emit_toffoli(g.controls, g.targets[0], out, ctx);
      break;
    case GateKind::ControlledPhase:
      emit_cphase(g, out, ctx);
      break;
    default:
      throw LoweringError("no lowering for " + std::string(kind_name(g.kind)));
  }
}

Circuit sequence_circuit(std::size_t qubits, const Seq& seq) {
  Circuit c(qubits);
  for (const auto& g : seq) c.add_gate(g);
  return c.repacked();
}

Context standalone_context(GateSet target, std::optional<Qubit> ancilla) {
  return Context{target, [ancilla]() -> Qubit {
                   if (!ancilla) throw LoweringError("multi-controlled gate needs a dirty ancilla");
                   return *ancilla;
                 }};
}

// Sandwich rewrite of one CP: CP1(a/2)(c,y), X^{AND R} on c, CP1(-a/2)(c,y).
struct SandwichPlan {
  Qubit c = 0, y = 0;
  std::vector<Qubit> rest;
  DyadicAngle angle;  // the angle of the first CP of the pair
};

void emit_sandwich_half(const SandwichPlan& p, Seq& out, Context& ctx) {
  const DyadicAngle h = p.angle.half();
  emit(gate::cphase({p.c}, p.y, h), out, ctx);
  if (p.rest.empty()) emit(gate::x(p.c), out, ctx);
  else emit(gate::toffoli(p.rest, p.c), out, ctx);
  emit(gate::cphase({p.c}, p.y, -h), out, ctx);
}

void sandwich_half_raw(const SandwichPlan& p, Seq& out) {
  const DyadicAngle h = p.angle.half();
  out.push_back(gate::cphase({p.c}, p.y, h));
  out.push_back(p.rest.empty() ? gate::x(p.c) : gate::toffoli(p.rest, p.c));
  out.push_back(gate::cphase({p.c}, p.y, -h));
}

SandwichPlan make_plan(const GateOp& cp, Qubit c) {
  SandwichPlan p;
  p.c = c;
  p.angle = cp.angle;
  std::vector<Qubit> others;
  for (Qubit q : cp.support())
    if (q != c) others.push_back(q);
  p.y = others.back();
  p.rest.assign(others.begin(), others.end() - 1);
  return p;
}

using Pos = std::pair<std::size_t, std::size_t>;

// Finds CP(a) ... CP(-a) pairs on identical supports where everything in
// between touches the support only through classical flips of one qubit.
std::map<Pos, SandwichPlan> find_sandwiches(const Circuit& circuit) {
  std::map<Pos, SandwichPlan> plans;
  const auto& layers = circuit.layers();
  for (std::size_t li = 0; li < layers.size(); ++li) {
    for (std::size_t gi = 0; gi < layers[li].size(); ++gi) {
      const GateOp& g = layers[li][gi];
      if (g.kind != GateKind::ControlledPhase || g.controls.size() < 2 || g.angle.is_zero()) continue;
      if (plans.count({li, gi})) continue;
      const auto sup = g.support();
      const std::set<Qubit> S(sup.begin(), sup.end());
      std::optional<Qubit> c;
      bool ok = true;
      for (std::size_t lj = li + 1; lj < layers.size() && ok; ++lj) {
        for (std::size_t gj = 0; gj < layers[lj].size(); ++gj) {
          const GateOp& h = layers[lj][gj];
          std::vector<Qubit> hit;
          for (Qubit q : h.support())
            if (S.count(q)) hit.push_back(q);
          if (hit.empty()) continue;
          const auto hs = h.support();
          if (h.kind == GateKind::ControlledPhase && std::set<Qubit>(hs.begin(), hs.end()) == S &&
              h.angle == -g.angle && !plans.count({lj, gj})) {
            const SandwichPlan p = make_plan(g, c.value_or(g.targets[0]));
            plans[{li, gi}] = p;
            plans[{lj, gj}] = p;
            ok = false;
            break;
          }
          const bool flips_one = h.is_classical() && hit.size() == 1 &&
                                 std::find(h.targets.begin(), h.targets.end(), hit[0]) != h.targets.end() &&
                                 (!c || *c == hit[0]);
          if (!flips_one) {
            ok = false;
            break;
          }
          c = hit[0];
        }
      }
    }
  }
  return plans;
}

}  // namespace

Circuit lower_fanout(std::size_t k) {
  if (k < 1) throw LoweringError("fan-out needs at least one target");
  std::vector<Qubit> targets;
  for (std::size_t i = 1; i <= k; ++i) targets.push_back(static_cast<Qubit>(i));
  Seq s;
  if (k == 1) s.push_back(gate::cnot(0, 1));
  else fanout_tree(s, 0, targets);
  return sequence_circuit(k + 1, s);
}

Circuit lower_toffoli(std::size_t k, ToffoliMode mode) {
  if (k < 1) throw LoweringError("Toffoli needs at least one control");
  std::vector<Qubit> controls;
  for (std::size_t i = 0; i < k; ++i) controls.push_back(static_cast<Qubit>(i));
  const auto t = static_cast<Qubit>(k);
  Seq s;
  if (mode == ToffoliMode::ZSandwich) {
    auto ctx = standalone_context(GateSet::UnboundedZ, std::nullopt);
    emit_toffoli(controls, t, s, ctx);
    return sequence_circuit(k + 1, s);
  }
  const bool needs_ancilla = k >= 3;
  auto ctx = standalone_context(GateSet::Elementary,
                                needs_ancilla ? std::optional<Qubit>(static_cast<Qubit>(k + 1)) : std::nullopt);
  emit_toffoli(controls, t, s, ctx);
  return sequence_circuit(needs_ancilla ? k + 2 : k + 1, s);
}

Circuit lower_parity(std::size_t l) {
  if (l < 1) throw LoweringError("parity needs at least one source");
  std::vector<Qubit> sources;
  for (std::size_t i = 0; i < l; ++i) sources.push_back(static_cast<Qubit>(i));
  Seq s;
  if (l == 1) s.push_back(gate::cnot(0, 1));
  else parity_tree(s, sources, static_cast<Qubit>(l));
  return sequence_circuit(l + 1, s);
}

Circuit lower_controlled_phase(DyadicAngle angle) {
  Seq s;
  emit_cphase1(0, 1, angle, s);
  Circuit c(2);
  for (const auto& g : s) c.add_gate(g);
  return c;
}

Circuit phase_fanout_sandwich_pattern(std::size_t k, DyadicAngle angle) {
  if (k < 2) throw LoweringError("sandwich pattern needs k >= 2");
  std::vector<Qubit> controls;
  for (std::size_t i = 0; i < k; ++i) controls.push_back(static_cast<Qubit>(i));
  Circuit c(k + 3);
  const auto t = static_cast<Qubit>(k);
  c.add_gate(gate::cphase(controls, t, angle));
  c.add_gate(gate::fanout(static_cast<Qubit>(k + 1), {0, static_cast<Qubit>(k + 2)}));
  c.add_gate(gate::cphase(controls, t, -angle));
  return c;
}

Circuit lower_phase_fanout_sandwich(std::size_t k, DyadicAngle angle) {
  const Circuit pattern = phase_fanout_sandwich_pattern(k, angle);
  const GateOp& first = pattern.layers()[0][0];
  const SandwichPlan p = make_plan(first, 0);
  Circuit out(k + 3);
  Seq s;
  if (!angle.is_zero()) sandwich_half_raw(p, s);
  for (const auto& g : s) out.add_gate(g);
  out.add_layer(pattern.layers()[1]);
  for (const auto& g : s) out.add_gate(g);
  return out;
}

LoweringResult lower_circuit(const Circuit& circuit, const LoweringOptions& options) {
  RegisterMap regs;
  if (circuit.qubit_count() > 0) regs.allocate("Q", RegisterRole::Input, circuit.qubit_count());
  return lower_circuit(circuit, regs, options);
}

LoweringResult lower_circuit(const Circuit& circuit, const RegisterMap& registers, const LoweringOptions& options) {
  if (registers.qubit_count() != circuit.qubit_count()) throw SizeError("register map does not match circuit");
  const std::size_t base = circuit.qubit_count();
  const auto plans = options.pair_sandwiches ? find_sandwiches(circuit) : std::map<Pos, SandwichPlan>{};

  std::vector<Layer> out_layers;
  std::size_t pool = 0, borrowed = 0;
  const auto& layers = circuit.layers();
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const Layer& layer = layers[li];
    std::vector<bool> busy(base, false);
    for (const auto& g : layer)
      for (Qubit q : g.support()) busy[q] = true;
    std::size_t idle_cursor = 0, pool_cursor = 0;

    std::vector<std::vector<Layer>> blocks;
    for (std::size_t gi = 0; gi < layer.size(); ++gi) {
      const GateOp& g = layer[gi];
      std::optional<Qubit> block_ancilla;
      Context ctx{options.target, [&]() -> Qubit {
                    if (block_ancilla) return *block_ancilla;
                    if (options.borrow_idle) {
                      while (idle_cursor < base && busy[idle_cursor]) ++idle_cursor;
                      if (idle_cursor < base) {
                        busy[idle_cursor] = true;
                        ++borrowed;
                        return *(block_ancilla = static_cast<Qubit>(idle_cursor));
                      }
                    }
                    const auto q = static_cast<Qubit>(base + pool_cursor++);
                    pool = std::max(pool, pool_cursor);
                    return *(block_ancilla = q);
                  }};
      Seq seq;
      if (auto it = plans.find({li, gi}); it != plans.end()) emit_sandwich_half(it->second, seq, ctx);
      else emit(g, seq, ctx);
      // Local earliest-fit schedule for this block.
      std::map<Qubit, std::size_t> frontier;
      std::vector<Layer> local;
      for (auto& op : seq) {
        std::size_t slot = 0;
        for (Qubit q : op.support()) slot = std::max(slot, frontier[q]);
        if (slot == local.size()) local.emplace_back();
        for (Qubit q : op.support()) frontier[q] = slot + 1;
        local[slot].push_back(std::move(op));
      }
      blocks.push_back(std::move(local));
    }
    std::size_t height = 0;
    for (const auto& b : blocks) height = std::max(height, b.size());
    const std::size_t at = out_layers.size();
    out_layers.resize(at + height);
    for (auto& b : blocks)
      for (std::size_t i = 0; i < b.size(); ++i)
        for (auto& op : b[i]) out_layers[at + i].push_back(std::move(op));
  }

  LoweringResult result{Circuit(base + pool), registers, {}};
  for (auto& l : out_layers) result.circuit.add_layer(std::move(l));
  if (pool > 0) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= pool; ++i) labels.push_back("T_" + std::to_string(i));
    std::string name = "T";
    while (result.registers.has(name)) name += "'";
    result.registers.allocate(name, RegisterRole::Uninitialized, labels);
  }
  for (const auto& l : result.circuit.layers())
    for (const auto& g : l)
      if (!in_gate_set(g, options.target)) throw InvariantError("lowering left a " + std::string(kind_name(g.kind)));

  auto& r = result.report;
  r.target = options.target;
  r.census_before = census(circuit);
  r.census_after = census(result.circuit);
  r.depth_before = depth(circuit);
  r.depth_after = depth(result.circuit);
  r.size_before = size(circuit);
  r.size_after = size(result.circuit);
  r.qubits_before = base;
  r.qubits_after = result.circuit.qubit_count();
  r.ancillas_added = pool;
  r.ancillas_borrowed = borrowed;
  r.sandwich_pairs = plans.size() / 2;
  r.uninitialized_before = registers.q();
  r.uninitialized_after = result.registers.q();
  return result;
}

}  // namespace uqc

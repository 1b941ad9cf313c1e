#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "uqc/bounds.hpp"
#include "uqc/circuit_io.hpp"
#include "uqc/constructions.hpp"
#include "uqc/error.hpp"
#include "uqc/estimator.hpp"
#include "uqc/lowering.hpp"
#include "uqc/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace uqc::cli {

namespace {

std::size_t need(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) throw Error(std::string("missing ") + flag);
  return *v;
}

std::string out_dir(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return {};
}

json envelope(const RunConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = cfg.subcommand;
  return j;
}

// JSON goes to stdout, and to <out>/<subcommand>.json when an output
// directory is configured.
void emit(const RunConfig& cfg, const json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (const auto dir = out_dir(cfg); !dir.empty()) {
    fs::create_directories(dir);
    write_file((fs::path(dir) / (cfg.subcommand + ".json")).string(), text);
  }
}

Circuit load_circuit(const std::string& path) { return parse_text(read_file(path)); }

std::optional<RegisterMap> load_registers(const RunConfig& cfg, const std::string& circuit_path) {
  if (!cfg.registers.empty()) return registers_from_json(read_file(cfg.registers));
  fs::path sib = fs::path(circuit_path).replace_extension(".registers.json");
  if (fs::exists(sib)) return registers_from_json(read_file(sib.string()));
  return std::nullopt;
}

VerifyPlan plan_of(const RunConfig& cfg) {
  VerifyPlan plan;
  plan.strategy = parse_strategy(cfg.strategy);
  plan.seed = cfg.seed;
  plan.threads = cfg.threads;
  return plan;
}

std::string stem_of(const Built& b) {
  std::string s = b.name;
  for (const auto& [k, v] : b.params.items()) {
    if (k == "f" || k == "inner") continue;
    s += "-" + k + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  if (b.params.contains("f")) s += "-" + b.params["f"].get<std::string>();
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) c = '_';
  return s;
}

}  // namespace

SymmetricFunction function_from_flag(const std::string& f, std::optional<std::size_t> n) {
  if (f.empty()) throw Error("missing --f");
  if (f.find(',') != std::string::npos) {
    std::string text;
    std::size_t count = 0;
    std::stringstream ss(f);
    for (std::string item; std::getline(ss, item, ',');) {
      text += " " + item;
      ++count;
    }
    if (n && *n + 1 != count) throw Error("--f lists " + std::to_string(count) + " values but n + 1 = " + std::to_string(*n + 1));
    auto fn = parse_function(std::to_string(count - 1) + text);
    fn.name = f;
    return fn;
  }
  return builtin_function(f, need(n, "--n"));
}

AssociatedFunction associated_from_flag(const std::string& f, std::optional<std::size_t> n,
                                        std::optional<std::size_t> m, std::uint64_t seed) {
  if (f == "random") {
    Rng rng(seed, 4);
    return random_associated(rng, need(m, "--m"));
  }
  if (!f.empty() && f.find_first_not_of("01") == std::string::npos) {
    AssociatedFunction g;
    g.m = static_cast<std::size_t>(std::countr_zero(f.size()));
    if (!std::has_single_bit(f.size()) || g.m < 1) throw Error("a truth table needs 2^m characters, m >= 1");
    if (m && *m != g.m) throw Error("--m does not match the truth table length");
    for (char c : f) g.table.push_back(c == '1');
    return g;
  }
  return associated_function(function_from_flag(f, n));
}

Built build_construction(const RunConfig& cfg) {
  Built b;
  b.name = cfg.target;
  const auto& t = cfg.target;
  if (t == "or-reduction" || t == "weight-extractor") {
    const std::size_t n = need(cfg.n, "--n");
    b.params["n"] = n;
    if (t == "or-reduction") {
      auto q = build_or_reduction(n);
      b.circuit = std::move(q.circuit);
      b.registers = std::move(q.layout.registers);
    } else {
      auto w = build_weight_extractor(n);
      b.circuit = std::move(w.circuit);
      b.registers = std::move(w.layout.registers);
    }
  } else if (t == "qft" || t == "inverse-qft") {
    const std::size_t m = need(cfg.m, "--m");
    b.params["m"] = m;
    b.circuit = t == "qft" ? build_qft(m) : build_inverse_qft(m);
    b.registers.allocate("I", RegisterRole::Input, m);
  } else if (t == "parity") {
    const std::size_t m = need(cfg.m, "--m");
    b.params["m"] = m;
    auto pc = build_parity_gate_circuit(m);
    b.circuit = std::move(pc.circuit);
    b.registers = std::move(pc.layout.registers);
  } else if (t == "assoc") {
    const auto g = associated_from_flag(cfg.f, cfg.n, cfg.m, cfg.seed);
    b.params["m"] = g.m;
    b.params["f"] = cfg.f;
    auto r = build_assoc_circuit(fourier_coefficients(g));
    b.circuit = std::move(r.circuit);
    b.registers = std::move(r.layout.registers);
  } else if (t == "symmetric") {
    const auto f = function_from_flag(cfg.f, cfg.n);
    b.params["n"] = f.n;
    b.params["f"] = cfg.f;
    b.params["catalytic"] = cfg.catalytic;
    auto sc = build_symmetric_circuit(f, cfg.catalytic);
    b.circuit = std::move(sc.circuit);
    b.registers = std::move(sc.layout.registers);
  } else if (t == "hadamard-test") {
    Circuit inner;
    if (!cfg.circuit.empty()) {
      inner = load_circuit(cfg.circuit);
      b.params["inner"] = cfg.circuit;
    } else {
      inner = Circuit(need(cfg.n, "--n or --circuit"));
      b.params["inner"] = "identity";
    }
    b.params["n"] = inner.qubit_count();
    auto ht = build_hadamard_test(inner);
    b.circuit = std::move(ht.circuit);
    b.registers = std::move(ht.layout.registers);
  } else if (t == "bounds-instance") {
    Rng rng(cfg.seed, 3);
    auto inst = random_bounds_instance(rng, cfg.max_qubits);
    b.params["seed"] = cfg.seed;
    b.params["t"] = inst.t;
    b.circuit = std::move(inst.circuit);
    b.registers = inst.layout.registers();
  } else {
    throw Error("unknown construction '" + t +
                "' (or-reduction, weight-extractor, qft, inverse-qft, parity, assoc, symmetric, hadamard-test, "
                "bounds-instance)");
  }
  return b;
}

json circuit_metrics(const Circuit& c, const RegisterMap* regs) {
  json j;
  j["qubits"] = c.qubit_count();
  j["size"] = size(c);
  j["depth"] = depth(c);
  if (regs) {
    j["inputs"] = regs->count(RegisterRole::Input);
    j["outputs"] = regs->count(RegisterRole::Output);
    j["p"] = regs->p();
    j["q"] = regs->q();
  }
  json cen = json::object();
  for (const auto& [k, v] : census(c)) cen[k] = v;
  j["census"] = cen;
  return j;
}

json depth_sweep(const std::string& kind, std::size_t from, std::size_t to, std::uint64_t seed) {
  if (from < 1 || to < from) throw Error("sweep needs 1 <= from <= to");
  json rows = json::array();
  double lo = 0, hi = 0;
  bool counts_exact = true;
  for (std::size_t v = from; v <= to; ++v) {
    json row;
    Circuit c;
    RegisterMap regs;
    double scale = 0;
    std::size_t expected_q = 0;
    if (kind == "or-reduction") {
      auto q = build_or_reduction(v);
      const std::size_t m = q.layout.m;
      row["n"] = v;
      row["m"] = m;
      expected_q = v * m * (m + 3) / 2;
      scale = static_cast<double>(m * m);
      c = std::move(q.circuit);
      regs = std::move(q.layout.registers);
    } else if (kind == "assoc") {
      if (v > 12) throw LimitError("assoc sweep supports m <= 12");
      Rng rng(seed, 5);
      Rng sub = rng.substream(v);
      auto r = build_assoc_circuit(fourier_coefficients(random_associated(sub, v)));
      row["m"] = v;
      expected_q = (v + 1) * ((std::size_t{1} << v) - 1) + v * (std::size_t{1} << (v - 1));
      scale = static_cast<double>(v * v);
      c = std::move(r.circuit);
      regs = std::move(r.layout.registers);
    } else {
      throw Error("unknown sweep '" + kind + "' (or-reduction, assoc)");
    }
    const auto lowered = lower_circuit(c, regs);
    row["qubits"] = c.qubit_count();
    row["q"] = regs.q();
    row["expected_q"] = expected_q;
    row["raw_depth"] = depth(c);
    row["lowered_depth"] = lowered.report.depth_after;
    row["lowered_qubits"] = lowered.report.qubits_after;
    const double ratio = static_cast<double>(lowered.report.depth_after) / scale;
    row["ratio"] = ratio;
    counts_exact = counts_exact && regs.q() == expected_q;
    lo = v == from ? ratio : std::min(lo, ratio);
    hi = v == from ? ratio : std::max(hi, ratio);
    rows.push_back(std::move(row));
  }
  json j;
  j["kind"] = kind;
  j["scale"] = kind == "or-reduction" ? "ceil(log2(n+1))^2" : "m^2";
  j["rows"] = std::move(rows);
  j["min_ratio"] = lo;
  j["max_ratio"] = hi;
  j["band"] = hi / lo;
  j["within_factor_4"] = hi <= 4 * lo;
  j["counts_exact"] = counts_exact;
  return j;
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format != "text" && cfg.format != "qasm") throw Error("--format must be text or qasm");
  const Built b = build_construction(cfg);
  std::string dir = out_dir(cfg);
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  const std::string stem = (fs::path(dir) / stem_of(b)).string();
  const std::string circuit_path = stem + (cfg.format == "qasm" ? ".qasm" : ".circuit");
  write_file(circuit_path, cfg.format == "qasm" ? to_qasm(b.circuit) : to_text(b.circuit));
  write_file(stem + ".registers.json", registers_to_json(b.registers));
  json j = envelope(cfg);
  j["construction"] = b.name;
  j["params"] = b.params;
  j["metrics"] = circuit_metrics(b.circuit, &b.registers);
  j["files"] = {{"circuit", circuit_path}, {"registers", stem + ".registers.json"}, {"metrics", stem + ".metrics.json"}};
  const std::string text = j.dump(2) + "\n";
  write_file(stem + ".metrics.json", text);
  out << text;
  return kExitPass;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  json j = envelope(cfg);
  if (cfg.target == "sweep") {
    const std::string kind = cfg.f.empty() ? "or-reduction" : cfg.f;
    const std::size_t from = cfg.from ? cfg.from : (kind == "assoc" ? 1 : 2);
    const std::size_t to = cfg.to ? cfg.to : (kind == "assoc" ? 8 : 64);
    j["sweep"] = depth_sweep(kind, from, to, cfg.seed);
    emit(cfg, j, out);
    return kExitPass;
  }
  const std::string path = cfg.target.empty() ? cfg.circuit : cfg.target;
  if (path.empty()) throw Error("stats needs a circuit file or 'sweep'");
  const Circuit c = load_circuit(path);
  const auto regs = load_registers(cfg, path);
  if (regs && regs->qubit_count() != c.qubit_count()) throw Error("register map does not match the circuit width");
  j["file"] = path;
  j["metrics"] = circuit_metrics(c, regs ? &*regs : nullptr);
  LoweringOptions opt;
  opt.target = parse_gate_set(cfg.gate_set);
  const auto low = regs ? lower_circuit(c, *regs, opt) : lower_circuit(c, opt);
  json l;
  l["gate_set"] = gate_set_name(low.report.target);
  l["qubits"] = low.report.qubits_after;
  l["size"] = low.report.size_after;
  l["depth"] = low.report.depth_after;
  l["ancillas_added"] = low.report.ancillas_added;
  l["ancillas_borrowed"] = low.report.ancillas_borrowed;
  l["sandwich_pairs"] = low.report.sandwich_pairs;
  json cen = json::object();
  for (const auto& [k, v] : low.report.census_after) cen[k] = v;
  l["census"] = cen;
  j["lowered"] = l;
  emit(cfg, j, out);
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const VerifyPlan plan = plan_of(cfg);
  json j = envelope(cfg);
  j["target"] = cfg.target;
  bool pass = false;
  const auto& t = cfg.target;
  if (t == "symmetric") {
    const auto f = function_from_flag(cfg.f, cfg.n);
    const auto sc = build_symmetric_circuit(f, cfg.catalytic);
    const auto rep = check_symmetric_composed(sc, plan);
    j["function"] = f.name;
    j["n"] = f.n;
    j["report"] = rep.to_json();
    pass = rep.pass;
  } else if (t == "weight-extractor") {
    const auto w = build_weight_extractor(need(cfg.n, "--n"));
    const auto& L = w.layout;
    const auto rep = check_mapping(
        w.circuit, L.registers, L.i,
        [&](std::uint64_t s) { return std::uint64_t(std::popcount(gather_bits(s, L.x))); }, plan);
    j["n"] = L.n;
    j["report"] = rep.to_json();
    pass = rep.pass;
  } else if (t == "assoc") {
    const auto g = associated_from_flag(cfg.f, cfg.n, cfg.m, cfg.seed);
    const auto r = build_assoc_circuit(fourier_coefficients(g));
    const auto& L = r.layout;
    const auto rep = check_mapping(
        r.circuit, L.registers, {L.y},
        [&](std::uint64_t s) { return ((s >> L.y) & 1u) ^ (g(gather_bits(s, L.s)) ? 1u : 0u); }, plan);
    j["m"] = g.m;
    j["report"] = rep.to_json();
    pass = rep.pass;
  } else if (t == "circuit") {
    if (cfg.circuit.empty()) throw Error("verify circuit needs --circuit");
    const Circuit c = load_circuit(cfg.circuit);
    const auto regs = load_registers(cfg, cfg.circuit);
    if (!regs) throw Error("verify circuit needs --registers");
    VerifyReport rep;
    if (!cfg.f.empty()) {
      const auto f = function_from_flag(cfg.f, regs->count(RegisterRole::Input));
      rep = check_computes(c, *regs, [&](std::uint64_t x) { return f(x); }, plan);
    } else {
      rep = check_catalytic(c, *regs, plan);
    }
    j["file"] = cfg.circuit;
    j["report"] = rep.to_json();
    pass = rep.pass;
  } else {
    throw Error("unknown verify target '" + t + "' (symmetric, weight-extractor, assoc, circuit)");
  }
  j["pass"] = pass;
  emit(cfg, j, out);
  return pass ? kExitPass : kExitFail;
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
  MatProblem prob;
  const std::string path = !cfg.circuit.empty() ? cfg.circuit : cfg.target;
  if (!path.empty() && path != "identity") {
    prob.circuit = load_circuit(path);
  } else {
    prob.circuit = Circuit(need(cfg.n, "--n or --circuit"));
  }
  prob.p = cfg.p;
  prob.delta = cfg.delta;
  prob.seed = cfg.seed;
  prob.audit = cfg.audit;
  prob.threads = cfg.threads;
  prob.with_exact = prob.circuit.qubit_count() <= kMaxExactQubits;
  const auto rep = estimate_mat(prob, cfg.x);
  json j = envelope(cfg);
  j["circuit"] = path.empty() ? "identity" : path;
  j["report"] = rep.to_json(cfg.trials);
  const bool pass = rep.within_tolerance.value_or(true);
  j["pass"] = pass;
  emit(cfg, j, out);
  return pass ? kExitPass : kExitFail;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> eps = cfg.eps.empty() ? std::vector<double>{0.25, 0.5, 1.0} : cfg.eps;
  json j = envelope(cfg);
  j["eps"] = eps;
  json reports = json::array();
  bool pass = true;
  std::size_t vacuous = 0;
  const std::string path = !cfg.circuit.empty() ? cfg.circuit : cfg.target;
  if (!path.empty() && path != "suite") {
    if (!cfg.t) throw Error("bounds on a circuit file needs --t");
    const Circuit c = load_circuit(path);
    const auto regs = load_registers(cfg, path);
    if (!regs) throw Error("bounds on a circuit file needs --registers");
    BoundsLayout L{regs->count(RegisterRole::Input), regs->p(), regs->q()};
    if (regs->count(RegisterRole::Output) != 1 || L.qubit_count() != c.qubit_count())
      throw Error("bounds needs registers x, one output y, then initialized and uninitialized ancillas");
    if (regs->qubits(RegisterRole::Output)[0] != L.n) throw Error("the output qubit must follow the inputs");
    auto rep = analyze_bounds(segment_circuit(c, L, *cfg.t), eps, &c);
    rep.seed = cfg.seed;
    pass = rep.pass;
    for (bool v : rep.best_ancilla.vacuous) vacuous += v;
    reports.push_back(rep.to_json());
    j["file"] = path;
  } else {
    const Rng base(cfg.seed, 3);
    for (std::size_t i = 0; i < cfg.instances; ++i) {
      Rng rng = base.substream(i);
      const auto inst = random_bounds_instance(rng, cfg.max_qubits);
      auto rep = analyze_bounds(segment_circuit(inst.circuit, inst.layout, inst.t), eps, &inst.circuit);
      rep.seed = cfg.seed;
      json r = rep.to_json();
      r["instance"] = i;
      pass = pass && rep.pass;
      for (bool v : rep.best_ancilla.vacuous) vacuous += v;
      reports.push_back(std::move(r));
    }
    j["instances"] = cfg.instances;
  }
  j["vacuous_best_ancilla_bounds"] = vacuous;
  j["reports"] = std::move(reports);
  j["pass"] = pass;
  emit(cfg, j, out);
  return pass ? kExitPass : kExitFail;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Shallow circuits with uninitialized ancillas"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* s) {
    s->add_option("--n", cfg.n, "Input size");
    s->add_option("--m", cfg.m, "Weight register size");
    s->add_option("--f", cfg.f, "Function name, values by weight, or truth table");
    s->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
    s->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
    s->add_option("--out", cfg.out, std::string("Output directory (default $") + kOutDirEnv + ")");
    s->add_option("--circuit", cfg.circuit, "Circuit file");
    s->add_option("--registers", cfg.registers, "RegisterMap JSON");
  };

  auto* build = app.add_subcommand("build", "Emit a construction with its register map and metrics");
  common(build);
  build->add_option("construction", cfg.target, "Construction name")->required();
  build->add_option("--format", cfg.format, "text or qasm")->check(CLI::IsMember({"text", "qasm"}))->capture_default_str();
  build->add_flag("--catalytic", cfg.catalytic, "Uncompute every ancilla (symmetric)");
  build->add_option("--max-qubits", cfg.max_qubits, "Width cap for bounds-instance")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check a construction by simulation");
  common(verify);
  verify->add_option("target", cfg.target, "symmetric, weight-extractor, assoc or circuit")->required();
  verify->add_option("--strategy", cfg.strategy, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}))
      ->capture_default_str();
  verify->add_flag("--catalytic", cfg.catalytic, "Use the fully uncomputed variant");

  auto* estimate = app.add_subcommand("estimate", "Estimate |<0|C|x>|^2 with Hadamard tests");
  common(estimate);
  estimate->add_option("circuit_file", cfg.target, "Circuit file (identity on --n qubits if absent)");
  estimate->add_option("--x", cfg.x, "Input basis state")->capture_default_str();
  estimate->add_option("--p", cfg.p, "Precision parameter")->capture_default_str();
  estimate->add_option("--delta", cfg.delta, "Failure probability");
  estimate->add_flag("--audit", cfg.audit, "Re-simulate every shot");
  estimate->add_flag("--trials", cfg.trials, "Include per-trial data");

  auto* bounds = app.add_subcommand("bounds", "Check the large-phase-gate removal bounds");
  common(bounds);
  bounds->add_option("circuit_file", cfg.target, "Circuit file, or 'suite' for generated instances");
  bounds->add_option("--t", cfg.t, "Large-gate threshold");
  bounds->add_option("--eps", cfg.eps, "Epsilon values")->delimiter(',');
  bounds->add_option("--instances", cfg.instances, "Generated instances")->capture_default_str();
  bounds->add_option("--max-qubits", cfg.max_qubits, "Width cap for generated instances")->capture_default_str();

  auto* stats = app.add_subcommand("stats", "Size, depth and census of a circuit, or a depth sweep");
  common(stats);
  stats->add_option("circuit_file", cfg.target, "Circuit file, or 'sweep'");
  stats->add_option("--gate-set", cfg.gate_set, "Lowering target")->capture_default_str();
  stats->add_option("--from", cfg.from, "Sweep start");
  stats->add_option("--to", cfg.to, "Sweep end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  for (auto* s : app.get_subcommands()) cfg.subcommand = s->get_name();
  if (cfg.n && *cfg.n == 0) {
    err << "error: --n must be positive\n";
    return kExitUsage;
  }
  for (double e : cfg.eps)
    if (!(e > 0)) {
      err << "error: --eps values must be positive\n";
      return kExitUsage;
    }

  try {
    if (cfg.subcommand == "build") return cmd_build(cfg, out);
    if (cfg.subcommand == "stats") return cmd_stats(cfg, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
    if (cfg.subcommand == "estimate") return cmd_estimate(cfg, out);
    return cmd_bounds(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "assertion failed: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace uqc::cli

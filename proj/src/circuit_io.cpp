#include "uqc/circuit_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "uqc/error.hpp"

namespace uqc {

namespace {

bool has_angle(GateKind k) { return k == GateKind::Phase || k == GateKind::ControlledPhase; }

void write_gate(std::ostringstream& out, const GateOp& g) {
  out << kind_name(g.kind);
  for (Qubit q : g.controls) out << " q[" << q << "]";
  for (Qubit q : g.targets) out << " q[" << q << "]";
  if (has_angle(g.kind)) out << " " << g.angle.to_string();
  out << "\n";
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_int(std::string_view s, T& value) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

GateKind parse_kind(std::string_view name, std::size_t line) {
  for (GateKind k : kAllGateKinds)
    if (kind_name(k) == name) return k;
  throw ParseError(line, "unknown gate '" + std::string(name) + "'");
}

DyadicAngle parse_angle(std::string_view tok, std::size_t line) {
  const auto slash = tok.find("/2^");
  std::int64_t c = 0;
  int t = 0;
  if (slash == std::string_view::npos || !parse_int(tok.substr(0, slash), c) ||
      !parse_int(tok.substr(slash + 3), t)) {
    throw ParseError(line, "malformed angle '" + std::string(tok) + "', expected c/2^t");
  }
  if (t < 1 || t > DyadicAngle::kMaxExponent) throw ParseError(line, "angle exponent out of range");
  return DyadicAngle(c, t);
}

}  // namespace

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  out << "QUBITS " << circuit.qubit_count() << "\n";
  bool first = true;
  for (const auto& layer : circuit.layers()) {
    if (!first) out << "---\n";
    first = false;
    for (const auto& g : layer) write_gate(out, g);
  }
  return out.str();
}

Circuit parse_text(std::string_view text) {
  std::size_t line_no = 0;
  std::optional<Circuit> circuit;
  Layer layer;
  const auto flush = [&](std::size_t at) {
    try {
      circuit->add_layer(std::move(layer));
    } catch (const GateError& e) {
      throw ParseError(at, e.what());
    }
    layer.clear();
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;

    if (!circuit) {
      std::size_t n = 0;
      if (toks.size() != 2 || toks[0] != "QUBITS" || !parse_int(toks[1], n)) {
        throw ParseError(line_no, "expected header 'QUBITS <n>'");
      }
      circuit.emplace(n);
      continue;
    }
    if (toks.size() == 1 && toks[0] == "---") {
      flush(line_no);
      continue;
    }

    GateOp g;
    g.kind = parse_kind(toks[0], line_no);
    std::vector<Qubit> qubits;
    std::size_t i = 1;
    for (; i < toks.size(); ++i) {
      const auto tok = toks[i];
      if (tok.size() < 4 || tok.substr(0, 2) != "q[" || tok.back() != ']') break;
      Qubit q = 0;
      if (!parse_int(tok.substr(2, tok.size() - 3), q)) throw ParseError(line_no, "bad qubit '" + std::string(tok) + "'");
      qubits.push_back(q);
    }
    if (has_angle(g.kind)) {
      if (i + 1 != toks.size()) throw ParseError(line_no, "expected exactly one angle after the qubits");
      g.angle = parse_angle(toks[i], line_no);
    } else if (i != toks.size()) {
      throw ParseError(line_no, "unexpected token '" + std::string(toks[i]) + "'");
    }
    if (qubits.empty()) throw ParseError(line_no, "gate has no qubits");
    switch (g.kind) {
      case GateKind::H:
      case GateKind::Phase:
      case GateKind::X:
      case GateKind::Z:
        g.targets = qubits;
        break;
      case GateKind::CNOT:
      case GateKind::FanOut:
        g.controls = {qubits.front()};
        g.targets.assign(qubits.begin() + 1, qubits.end());
        break;
      default:
        g.controls.assign(qubits.begin(), qubits.end() - 1);
        g.targets = {qubits.back()};
    }
    try {
      g.validate(circuit->qubit_count());
    } catch (const GateError& e) {
      throw ParseError(line_no, e.what());
    }
    for (const auto& other : layer)
      for (Qubit q : g.support())
        if (other.touches(q)) throw ParseError(line_no, "gate overlaps an earlier gate of its layer on qubit " + std::to_string(q));
    layer.push_back(std::move(g));
  }
  if (!circuit) throw ParseError(line_no, "missing 'QUBITS <n>' header");
  flush(line_no);
  return *circuit;
}

std::string to_qasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 3.0;\ninclude \"stdgates.inc\";\nqubit[" << circuit.qubit_count() << "] q;\n";
  const auto qlist = [](const GateOp& g) {
    std::string s;
    for (Qubit q : g.support()) s += (s.empty() ? "q[" : ", q[") + std::to_string(q) + "]";
    return s;
  };
  const auto angle = [](const DyadicAngle& a) {
    return "2*pi*" + std::to_string(a.numerator()) + "/" + std::to_string(std::int64_t{1} << a.exponent());
  };
  for (const auto& layer : circuit.layers()) {
    for (const auto& g : layer) {
      switch (g.kind) {
        case GateKind::H: out << "h " << qlist(g) << ";\n"; break;
        case GateKind::X: out << "x " << qlist(g) << ";\n"; break;
        case GateKind::Z: out << "z " << qlist(g) << ";\n"; break;
        case GateKind::Phase: out << "p(" << angle(g.angle) << ") " << qlist(g) << ";\n"; break;
        case GateKind::CNOT: out << "cx " << qlist(g) << ";\n"; break;
        case GateKind::FanOut:
          for (Qubit t : g.targets) out << "cx q[" << g.controls[0] << "], q[" << t << "];\n";
          break;
        case GateKind::Parity:
          for (Qubit s : g.controls) out << "cx q[" << s << "], q[" << g.targets[0] << "];\n";
          break;
        case GateKind::Toffoli:
          out << "ctrl(" << g.controls.size() << ") @ x " << qlist(g) << ";\n";
          break;
        case GateKind::ControlledPhase:
          out << "ctrl(" << g.controls.size() << ") @ p(" << angle(g.angle) << ") " << qlist(g) << ";\n";
          break;
      }
    }
  }
  return out.str();
}

std::string registers_to_json(const RegisterMap& registers) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["qubit_count"] = registers.qubit_count();
  j["p"] = registers.p();
  j["q"] = registers.q();
  auto& arr = j["registers"] = nlohmann::ordered_json::array();
  for (const auto& r : registers.registers()) {
    arr.push_back({{"name", r.name}, {"role", role_name(r.role)}, {"qubits", r.qubits}, {"labels", r.labels}});
  }
  return j.dump(2) + "\n";
}

RegisterMap registers_from_json(std::string_view text) {
  RegisterMap out;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& r : j.at("registers")) {
      out.add(Register{r.at("name").get<std::string>(), parse_role(r.at("role").get<std::string>()),
                       r.at("qubits").get<std::vector<Qubit>>(), r.value("labels", std::vector<std::string>{})});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("register map: ") + e.what());
  }
  out.validate();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace uqc

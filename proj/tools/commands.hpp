#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uqc/boolean_fn.hpp"
#include "uqc/circuit.hpp"
#include "uqc/registers.hpp"

namespace uqc::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

/// Default output directory when --out is absent.
inline constexpr const char* kOutDirEnv = "UQC_OUT_DIR";

struct RunConfig {
  std::string subcommand;
  std::string target;  // construction name or circuit path
  std::optional<std::size_t> n, m;
  std::string f;
  std::optional<int> t;
  std::vector<double> eps;
  double p = 5;
  std::optional<double> delta;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string out;
  std::string format = "text";
  std::string circuit, registers;
  std::string strategy = "sampled";
  std::string gate_set = "elementary";
  std::uint64_t x = 0;
  bool catalytic = false;
  bool audit = false;
  bool trials = false;
  std::size_t instances = 50;
  std::size_t max_qubits = 12;
  std::size_t from = 0, to = 0;
};

/// A construction with its register map.
struct Built {
  std::string name;
  Circuit circuit;
  RegisterMap registers;
  nlohmann::ordered_json params;
};

/// "PA", "OR", "MAJ", "THR_2", ... or comma-separated values by weight.
SymmetricFunction function_from_flag(const std::string& f, std::optional<std::size_t> n);
/// A builtin symmetric name (needs n), "random" (needs m), or a 0/1 string
/// with character s holding g(s).
AssociatedFunction associated_from_flag(const std::string& f, std::optional<std::size_t> n,
                                        std::optional<std::size_t> m, std::uint64_t seed);

Built build_construction(const RunConfig& cfg);

/// size, depth, qubits, p, q and the gate census.
nlohmann::ordered_json circuit_metrics(const Circuit& c, const RegisterMap* regs);

/// Lowered-depth table over n in [from, to] for the weight-phase circuit
/// ("or-reduction") or over m for the associated-function circuit ("assoc").
nlohmann::ordered_json depth_sweep(const std::string& kind, std::size_t from, std::size_t to, std::uint64_t seed = 1);

int cmd_build(const RunConfig& cfg, std::ostream& out);
int cmd_stats(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_estimate(const RunConfig& cfg, std::ostream& out);
int cmd_bounds(const RunConfig& cfg, std::ostream& out);

/// Parses argv and dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uqc::cli

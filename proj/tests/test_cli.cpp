#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "uqc/circuit_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "uqc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = uqc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("uqc_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("build writes circuit, registers and metrics") {
  const auto dir = scratch("build");
  auto r = run({"build", "or-reduction", "--n", "3", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["metrics"]["q"] == 15);
  CHECK(j["metrics"]["p"] == 2);
  CHECK(fs::exists(dir / "or-reduction-n3.circuit"));
  CHECK(fs::exists(dir / "or-reduction-n3.registers.json"));
  CHECK(json::parse(uqc::read_file((dir / "or-reduction-n3.metrics.json").string())) == j);

  r = run({"build", "hadamard-test", "--n", "3", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["metrics"]["qubits"] == 10);

  r = run({"build", "symmetric", "--f", "OR", "--n", "2", "--out", dir.string(), "--format", "qasm"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["files"]["circuit"].get<std::string>().ends_with(".qasm"));
}

TEST_CASE("stats round-trips build metrics") {
  const auto dir = scratch("stats");
  for (const char* c : {"or-reduction", "weight-extractor"}) {
    auto b = run({"build", c, "--n", "3", "--out", dir.string()});
    REQUIRE(b.code == 0);
    const auto built = json::parse(b.out);
    auto s = run({"stats", built["files"]["circuit"].get<std::string>()});
    REQUIRE(s.code == 0);
    const auto st = json::parse(s.out);
    CHECK(st["metrics"] == built["metrics"]);
    CHECK(st["lowered"]["depth"].get<int>() >= st["metrics"]["depth"].get<int>());
  }
  uqc::write_file((dir / "empty.circuit").string(), "QUBITS 3\n");
  auto e = run({"stats", (dir / "empty.circuit").string()});
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["metrics"]["size"] == 0);
  CHECK(json::parse(e.out)["metrics"]["depth"] == 0);
}

TEST_CASE("parse errors carry the line number") {
  const auto dir = scratch("parse");
  uqc::write_file((dir / "bad.circuit").string(), "QUBITS 2\nH q[0]\nFOO q[1]\n");
  auto r = run({"stats", (dir / "bad.circuit").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"build", "nothing"}).code == 2);
  CHECK(run({"build", "or-reduction"}).code == 2);
  CHECK(run({"build", "or-reduction", "--n", "0"}).code == 2);
  CHECK(run({"build", "or-reduction", "--n", "2", "--format", "svg"}).code == 2);
  CHECK(run({"verify", "symmetric", "--f", "NOPE", "--n", "2"}).code == 2);
  CHECK(run({"bounds", "suite", "--eps", "-1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify, estimate and bounds") {
  auto v = run({"verify", "symmetric", "--f", "PA", "--n", "2", "--strategy", "exhaustive"});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["pass"] == true);

  auto w = run({"verify", "assoc", "--f", "0110", "--strategy", "exhaustive"});
  CHECK(w.code == 0);

  auto e = run({"estimate", "--n", "3", "--p", "5"});
  REQUIRE(e.code == 0);
  const auto ej = json::parse(e.out);
  CHECK(ej["report"]["alpha"].get<double>() >= 0.8);

  auto b = run({"bounds", "suite", "--instances", "3", "--seed", "5"});
  CHECK(b.code == 0);
  CHECK(json::parse(b.out)["reports"].size() == 3);
}

TEST_CASE("a failing check exits with 1") {
  const auto dir = scratch("fail");
  // CNOT from the input into a dirty ancilla is not catalytic.
  uqc::write_file((dir / "c.circuit").string(), "QUBITS 2\nCNOT q[0] q[1]\n");
  uqc::write_file((dir / "c.registers.json").string(),
                  R"({"schema_version":1,"qubit_count":2,"registers":[{"name":"X","role":"input","qubits":[0],"labels":["X_1"]},)"
                  R"({"name":"A","role":"uninitialized","qubits":[1],"labels":["A_1"]}]})");
  auto r = run({"verify", "circuit", "--circuit", (dir / "c.circuit").string()});
  CHECK(r.code == 1);
}

TEST_CASE("json output is deterministic and honours the output directory") {
  const auto dir = scratch("det");
  const auto a = run({"bounds", "suite", "--instances", "2", "--seed", "9", "--out", dir.string()});
  const auto b = run({"bounds", "suite", "--instances", "2", "--seed", "9"});
  CHECK(a.out == b.out);
  CHECK(uqc::read_file((dir / "bounds.json").string()) == a.out);
}

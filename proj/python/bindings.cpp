#include <bit>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uqc/bounds.hpp"
#include "uqc/circuit_io.hpp"
#include "uqc/constructions.hpp"
#include "uqc/error.hpp"
#include "uqc/estimator.hpp"
#include "uqc/lowering.hpp"
#include "uqc/state_vector.hpp"
#include "uqc/verify.hpp"

namespace py = pybind11;
using namespace uqc;

namespace {

// Reports cross the boundary as JSON text; the Python side parses them.
std::pair<Circuit, std::string> with_registers(Circuit c, const RegisterMap& r) {
  return {std::move(c), registers_to_json(r)};
}

}  // namespace

PYBIND11_MODULE(_uqc, m) {
  py::register_exception<Error>(m, "UqcError", PyExc_ValueError);

  py::class_<Circuit>(m, "Circuit")
      .def(py::init<std::size_t>(), py::arg("qubit_count") = 0)
      .def_static("from_text", [](const std::string& s) { return parse_text(s); })
      .def("to_text", [](const Circuit& c) { return to_text(c); })
      .def("to_qasm", [](const Circuit& c) { return to_qasm(c); })
      .def_property_readonly("qubit_count", &Circuit::qubit_count)
      .def("depth", [](const Circuit& c) { return depth(c); })
      .def("size", [](const Circuit& c) { return size(c); })
      .def("census", [](const Circuit& c) { return census(c); })
      .def("inverse", &Circuit::inverse)
      .def("__repr__", [](const Circuit& c) {
        return "<Circuit qubits=" + std::to_string(c.qubit_count()) + " depth=" + std::to_string(depth(c)) + ">";
      });

  m.def("build_or_reduction", [](std::size_t n) {
    auto q = build_or_reduction(n);
    return with_registers(std::move(q.circuit), q.layout.registers);
  });
  m.def("build_weight_extractor", [](std::size_t n) {
    auto w = build_weight_extractor(n);
    return with_registers(std::move(w.circuit), w.layout.registers);
  });
  m.def("build_assoc", [](const std::vector<int>& table) {
    AssociatedFunction g;
    g.m = static_cast<std::size_t>(std::countr_zero(table.size()));
    if (table.size() < 2 || (std::size_t{1} << g.m) != table.size()) throw Error("table length must be 2^m, m >= 1");
    for (int v : table) g.table.push_back(v != 0);
    auto r = build_assoc_circuit(fourier_coefficients(g));
    return with_registers(std::move(r.circuit), r.layout.registers);
  });
  m.def(
      "build_symmetric",
      [](const std::string& f, std::size_t n, bool catalytic) {
        auto sc = build_symmetric_circuit(builtin_function(f, n), catalytic);
        return with_registers(std::move(sc.circuit), sc.layout.registers);
      },
      py::arg("f"), py::arg("n"), py::arg("catalytic") = false);
  m.def("build_hadamard_test", [](const Circuit& inner) {
    auto ht = build_hadamard_test(inner);
    return with_registers(std::move(ht.circuit), ht.layout.registers);
  });

  m.def("fourier_coefficients", [](const std::vector<int>& table) {
    AssociatedFunction g;
    g.m = static_cast<std::size_t>(std::countr_zero(table.size()));
    for (int v : table) g.table.push_back(v != 0);
    const auto s = fourier_coefficients(g);
    return std::make_pair(s.constant, s.coefficients);
  });

  m.def(
      "simulate",
      [](const Circuit& c, std::uint64_t start) {
        if (c.qubit_count() > kMaxExactQubits) throw LimitError("simulate supports at most 24 qubits");
        auto st = StateVector::basis(c.qubit_count(), start);
        st.run(c);
        return st.amplitudes();
      },
      py::arg("circuit"), py::arg("start") = 0);

  m.def("lower", [](const Circuit& c, const std::string& gate_set) {
    LoweringOptions opt;
    opt.target = parse_gate_set(gate_set);
    auto r = lower_circuit(c, opt);
    return std::make_pair(std::move(r.circuit), r.report.depth_after);
  }, py::arg("circuit"), py::arg("gate_set") = "elementary");

  m.def("exact_F", &exact_F);
  m.def("exact_matrix_element", &exact_matrix_element);
  m.def(
      "estimate_mat_json",
      [](const Circuit& c, std::uint64_t x, double p, std::optional<double> delta, std::uint64_t seed) {
        MatProblem prob{c, p, delta, seed};
        py::gil_scoped_release release;
        return estimate_mat(prob, x).to_json(false).dump();
      },
      py::arg("circuit"), py::arg("x") = 0, py::arg("p") = 5.0, py::arg("delta") = py::none(), py::arg("seed") = 1);

  m.def(
      "verify_symmetric_json",
      [](const std::string& f, std::size_t n, bool catalytic, const std::string& strategy, std::uint64_t seed) {
        VerifyPlan plan;
        plan.strategy = parse_strategy(strategy);
        plan.seed = seed;
        const auto sc = build_symmetric_circuit(builtin_function(f, n), catalytic);
        py::gil_scoped_release release;
        return check_symmetric_composed(sc, plan).to_json().dump();
      },
      py::arg("f"), py::arg("n"), py::arg("catalytic") = false, py::arg("strategy") = "sampled", py::arg("seed") = 1);

  m.def(
      "bounds_instance_json",
      [](std::uint64_t seed, std::size_t max_qubits, const std::vector<double>& eps) {
        Rng rng(seed, 3);
        const auto inst = random_bounds_instance(rng, max_qubits);
        auto rep = analyze_bounds(segment_circuit(inst.circuit, inst.layout, inst.t), eps, &inst.circuit);
        rep.seed = seed;
        return rep.to_json().dump();
      },
      py::arg("seed"), py::arg("max_qubits") = 10, py::arg("eps") = std::vector<double>{0.25, 0.5, 1.0});
}

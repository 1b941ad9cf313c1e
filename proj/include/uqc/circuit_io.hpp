#pragma once

#include <string>
#include <string_view>

#include "uqc/circuit.hpp"
#include "uqc/registers.hpp"

namespace uqc {

/// Line format:
///
///   QUBITS 3
///   H q[0]
///   CP q[0] q[2] 1/2^3
///   ---
///   FANOUT q[0] q[1] q[2]
///
/// FANOUT lists its control first; TOFFOLI, CP and PARITY list the target
/// last. Layers are separated by "---". Blank lines and '#' comments are
/// ignored on input.
std::string to_text(const Circuit& circuit);
Circuit parse_text(std::string_view text);

/// OpenQASM 3 subset. FANOUT and PARITY expand to one cx per target/source.
std::string to_qasm(const Circuit& circuit);

std::string registers_to_json(const RegisterMap& registers);
RegisterMap registers_from_json(std::string_view json);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace uqc

#pragma once

#include <array>
#include <span>
#include <vector>

#include "uqc/circuit.hpp"
#include "uqc/rng.hpp"
#include "uqc/state_vector.hpp"

namespace uqc {

/// Dyadic angle c/2^t with t uniform in [1, max_exponent] and c uniform mod 2^t.
DyadicAngle random_angle(Rng& rng, int max_exponent = 6);

/// A random gate of the given kind on distinct qubits of [0, qubit_count).
/// Multi-qubit kinds draw their arity from [2, qubit_count].
GateOp random_gate(Rng& rng, std::size_t qubit_count, GateKind kind);
/// Same with the kind drawn uniformly from `kinds`.
GateOp random_gate(Rng& rng, std::size_t qubit_count, std::span<const GateKind> kinds);

/// `depth` layers over {H, P, CNOT}; each layer packs random disjoint gates,
/// leaving a qubit idle with probability 1/4.
Circuit random_elementary_circuit(Rng& rng, std::size_t qubit_count, std::size_t depth);

/// Haar-like random state (normalized complex Gaussian vector).
StateVector random_state(Rng& rng, std::size_t qubit_count);
/// Random single-qubit pure state.
std::array<Amplitude, 2> random_qubit(Rng& rng);

/// Uniform random permutation of [0, count) (Fisher-Yates).
std::vector<std::size_t> random_permutation(Rng& rng, std::size_t count);

}  // namespace uqc

"""Shallow circuits with uninitialized ancillas: builders, simulation and checks."""

import json

from ._uqc import (
    Circuit,
    UqcError,
    build_assoc,
    build_hadamard_test,
    build_or_reduction,
    build_symmetric,
    build_weight_extractor,
    exact_F,
    exact_matrix_element,
    fourier_coefficients,
    lower,
    simulate,
)
from . import _uqc


def estimate_mat(circuit, x=0, p=5.0, delta=None, seed=1):
    return json.loads(_uqc.estimate_mat_json(circuit, x, p, delta, seed))


def verify_symmetric(f, n, catalytic=False, strategy="sampled", seed=1):
    return json.loads(_uqc.verify_symmetric_json(f, n, catalytic, strategy, seed))


def bounds_instance(seed, max_qubits=10, eps=(0.25, 0.5, 1.0)):
    return json.loads(_uqc.bounds_instance_json(seed, max_qubits, list(eps)))


def registers(pair):
    """Decode the register map of a (circuit, registers_json) pair."""
    return json.loads(pair[1])


__all__ = [
    "Circuit",
    "UqcError",
    "bounds_instance",
    "build_assoc",
    "build_hadamard_test",
    "build_or_reduction",
    "build_symmetric",
    "build_weight_extractor",
    "estimate_mat",
    "exact_F",
    "exact_matrix_element",
    "fourier_coefficients",
    "lower",
    "registers",
    "simulate",
    "verify_symmetric",
]

import cmath
import math

import pytest

import uqc


def test_or_reduction_counts():
    c, regs = uqc.build_or_reduction(3)
    r = uqc.registers((c, regs))
    assert r["q"] == 15
    assert r["p"] == 2
    assert c.qubit_count == 20


def test_text_round_trip():
    c, _ = uqc.build_weight_extractor(2)
    again = uqc.Circuit.from_text(c.to_text())
    assert again.to_text() == c.to_text()
    assert again.depth() == c.depth()
    assert c.size() >= sum(c.census().values())


def test_hadamard_test_width():
    c, _ = uqc.build_hadamard_test(uqc.Circuit(3))
    assert c.qubit_count == 10


def test_simulate_assoc():
    # Y ends in g(s) for s on the S register (qubits 0, 1), Y next.
    c, regs = uqc.build_assoc([0, 1, 1, 0])
    r = uqc.registers((c, regs))
    y = next(g for g in r["registers"] if g["name"] == "Y")["qubits"][0]
    for s, want in enumerate([0, 1, 1, 0]):
        amps = uqc.simulate(c, s)
        p1 = sum(abs(a) ** 2 for i, a in enumerate(amps) if (i >> y) & 1)
        assert math.isclose(p1, want, abs_tol=1e-9)
    with pytest.raises(uqc.UqcError):
        uqc.simulate(uqc.Circuit(25), 0)


def test_fourier_of_parity():
    const, coeffs = uqc.fourier_coefficients([0, 1, 1, 0])
    assert const == 0
    # g(s) = (2 / 4) * c_3 * parity(3 & s) with c_3 = 2
    assert coeffs == [0, 0, 0, 2]


def test_exact_values_and_estimate():
    h = uqc.Circuit.from_text("QUBITS 2\nH q[0]\nH q[1]\n")
    assert math.isclose(uqc.exact_matrix_element(h, 0), 0.25)
    total = sum(uqc.exact_F(h, 1, w) for w in range(4)) / 4
    assert math.isclose(total, uqc.exact_matrix_element(h, 1))
    r = uqc.estimate_mat(uqc.Circuit(3), 0, p=5, seed=3)
    assert r["K"] == 89 or r["K"] > 0
    assert abs(r["alpha"] - 1.0) <= 0.2
    assert uqc.estimate_mat(uqc.Circuit(3), 0, p=5, seed=3) == r


def test_verify_symmetric():
    rep = uqc.verify_symmetric("OR", 2, catalytic=True)
    assert rep["pass"] is True


def test_bounds_instance():
    rep = uqc.bounds_instance(4)
    assert rep["pass"] is True
    assert rep["normalization_deviation"] < 1e-9


def test_lowering_keeps_unitary():
    c = uqc.Circuit.from_text("QUBITS 4\nFANOUT q[0] q[1] q[2] q[3]\n")
    low, d = uqc.lower(c)
    assert d <= 4
    for s in range(16):
        a = uqc.simulate(c, s)
        b = uqc.simulate(low, s)[: len(a)] if low.qubit_count == 4 else None
        if b is not None:
            assert all(cmath.isclose(x, y, abs_tol=1e-12) for x, y in zip(a, b))


def test_errors_surface():
    with pytest.raises(uqc.UqcError):
        uqc.build_symmetric("NOPE", 2)
    with pytest.raises(uqc.UqcError):
        uqc.Circuit.from_text("QUBITS 1\nFOO q[0]\n")

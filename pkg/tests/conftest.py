import itertools
import math

import numpy as np
import pytest

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)


def dense_observable(theta):
    return math.cos(theta) * PAULI_X + math.sin(theta) * PAULI_Y


def dense_joint(amplitudes, thetas):
    """Born-rule joint distribution from full projector matrices (I +/- O)/2."""
    psi = np.asarray(amplitudes, dtype=complex)
    out = {}
    for outcome in itertools.product((0, 1), repeat=len(thetas)):
        proj = np.ones((1, 1), dtype=complex)
        for theta, bit in zip(thetas, outcome):
            o = dense_observable(theta)
            proj = np.kron(proj, (np.eye(2) + (-1) ** bit * o) / 2)
        out[outcome] = float(np.vdot(psi, proj @ psi).real)
    return out


def dense_expectation(amplitudes, thetas):
    psi = np.asarray(amplitudes, dtype=complex)
    op = np.ones((1, 1), dtype=complex)
    for theta in thetas:
        op = np.kron(op, dense_observable(theta))
    return float(np.vdot(psi, op @ psi).real)


@pytest.fixture
def rng():
    return np.random.default_rng(20241017)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in sorted(mod.RESULTS.items(), key=lambda kv: int(kv[0].split()[0])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")

"""Dense pure-state simulation of 1-3 qubits under equatorial Pauli measurements.

An equatorial observable at angle theta is cos(theta) X + sin(theta) Y. Its +1
eigenvector is (|0> + e^{i theta}|1>)/sqrt(2); outcome +1 is reported as bit 0
and outcome -1 as bit 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

TOL = 1e-12
CLAMP = 1e-15


@dataclass(frozen=True)
class PureState:
    qubit_count: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.qubit_count <= 3:
            raise ValueError("qubit_count must be 1, 2 or 3")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (1 << self.qubit_count,):
            raise ValueError(f"need {1 << self.qubit_count} amplitudes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > TOL:
            raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def amplitude(self, bits: Sequence[int]) -> complex:
        k = 0
        for b in bits:
            k = (k << 1) | b
        return complex(self.amplitudes[k])

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))


@dataclass(frozen=True)
class EquatorialObservable:
    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))

    def flipped(self) -> "EquatorialObservable":
        """The same axis with opposite direction."""
        return EquatorialObservable(self.theta + math.pi)

    def eigenvector(self, outcome: int) -> np.ndarray:
        sign = -1.0 if outcome else 1.0
        return np.array([1.0, sign * np.exp(1j * self.theta)]) / math.sqrt(2)


X = EquatorialObservable(0.0)
Y = EquatorialObservable(math.pi / 2)
NEG_Y = EquatorialObservable(3 * math.pi / 2)


@dataclass(frozen=True)
class OutcomeDistribution:
    qubit_count: int
    probabilities: dict[tuple[int, ...], float]

    def __getitem__(self, outcome: tuple[int, ...]) -> float:
        return self.probabilities[tuple(outcome)]

    def parity_mass(self, parity: int) -> float:
        return sum(p for bits, p in self.probabilities.items() if sum(bits) % 2 == parity)


def ghz_state() -> PureState:
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1 / math.sqrt(2)
    return PureState(3, amps)


def bell_state() -> PureState:
    amps = np.zeros(4, dtype=complex)
    amps[0] = amps[3] = 1 / math.sqrt(2)
    return PureState(2, amps)


def basis_state(bits: Sequence[int]) -> PureState:
    n = len(bits)
    amps = np.zeros(1 << n, dtype=complex)
    amps[int("".join(map(str, bits)), 2)] = 1.0
    return PureState(n, amps)


def _check_observables(state: PureState, observables: Sequence[EquatorialObservable]) -> None:
    if len(observables) != state.qubit_count:
        raise ValueError(
            f"{state.qubit_count}-qubit state needs {state.qubit_count} observables, "
            f"got {len(observables)}"
        )


def outcome_distribution(
    state: PureState, observables: Sequence[EquatorialObservable]
) -> OutcomeDistribution:
    _check_observables(state, observables)
    n = state.qubit_count
    probs = {}
    for outcome in itertools.product((0, 1), repeat=n):
        vec = np.ones(1, dtype=complex)
        for obs, bit in zip(observables, outcome):
            vec = np.kron(vec, obs.eigenvector(bit))
        p = abs(np.vdot(vec, state.amplitudes)) ** 2
        probs[outcome] = 0.0 if p < CLAMP else float(p)
    return OutcomeDistribution(n, probs)


def parity_bias(state: PureState, observables: Sequence[EquatorialObservable]) -> float:
    """P(even parity of outcome bits) - P(odd parity)."""
    dist = outcome_distribution(state, observables)
    return dist.parity_mass(0) - dist.parity_mass(1)


def draw_counts(
    dist: OutcomeDistribution, shots: int, rng: np.random.Generator
) -> dict[tuple[int, ...], int]:
    outcomes = list(dist.probabilities)
    p = np.array([dist.probabilities[o] for o in outcomes])
    counts = rng.multinomial(shots, p / p.sum())
    return {o: int(c) for o, c in zip(outcomes, counts)}


def sample_outcomes(
    state: PureState,
    observables: Sequence[EquatorialObservable],
    shots: int,
    seed: int,
) -> dict[tuple[int, ...], int]:
    """Counts of ``shots`` i.i.d. measurement rounds; every outcome is a key."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    dist = outcome_distribution(state, observables)
    return draw_counts(dist, shots, np.random.default_rng(seed))


def sample_one(dist: OutcomeDistribution, rng: np.random.Generator) -> tuple[int, ...]:
    outcomes = list(dist.probabilities)
    p = np.array([dist.probabilities[o] for o in outcomes])
    return outcomes[int(rng.choice(len(outcomes), p=p / p.sum()))]

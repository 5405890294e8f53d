"""The GHZ-family games and CHSH: inputs, views, and exact strategy evaluation.

Inputs are uniform over the promise set. Classical successes are exact
fractions; quantum successes are floats from the state-vector simulator.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from . import boolfn
from .boolfn import TruthTable
from .qsim import (
    NEG_Y,
    X,
    Y,
    EquatorialObservable,
    PureState,
    bell_state,
    ghz_state,
    outcome_distribution,
)


class GameId(str, enum.Enum):
    GHZ_E = "ghz-e"
    GHZ_O = "ghz-o"
    RGHZ = "rghz"
    R2GHZ = "r2ghz"
    CHSH = "chsh"

    @classmethod
    def parse(cls, name: "str | GameId") -> "GameId":
        if isinstance(name, GameId):
            return name
        key = name.lower().replace("_", "-")
        aliases = {"ghze": "ghz-e", "ghzo": "ghz-o", "r2-ghz": "r2ghz"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown game {name!r}") from None


class Party(str, enum.Enum):
    ALICE = "alice"
    BOB = "bob"
    CHARLIE = "charlie"


@dataclass(frozen=True, order=True)
class GameInput:
    x: int
    y: int
    z: Optional[int] = None
    r1: Optional[int] = None
    r2: Optional[int] = None

    def as_dict(self) -> dict:
        return {k: v for k, v in vars(self).items() if v is not None}

    def label(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.as_dict().items())


@dataclass(frozen=True)
class PartyView:
    party: Party
    bits: tuple[int, ...]


def parties(game: GameId) -> tuple[Party, ...]:
    if GameId.parse(game) is GameId.CHSH:
        return (Party.ALICE, Party.BOB)
    return (Party.ALICE, Party.BOB, Party.CHARLIE)


def view_arities(game: GameId) -> tuple[int, ...]:
    game = GameId.parse(game)
    return {
        GameId.GHZ_E: (1, 1, 1),
        GameId.GHZ_O: (1, 1, 1),
        GameId.RGHZ: (2, 1, 1),
        GameId.R2GHZ: (3, 3, 1),
        GameId.CHSH: (1, 1),
    }[game]


def winning_bit(x: int, y: int, z: int, r1: int) -> int:
    """Required output parity: OR of the inputs when r1 = 0, AND when r1 = 1."""
    return ((x | y | z) & (1 - r1)) | (x & y & z & r1)


def _shape_ok(game: GameId, inp: GameInput) -> bool:
    has_z = inp.z is not None
    has_r1 = inp.r1 is not None
    has_r2 = inp.r2 is not None
    if game is GameId.CHSH:
        return not (has_z or has_r1 or has_r2)
    if game is GameId.R2GHZ:
        return has_z and has_r1 and has_r2
    if game is GameId.RGHZ:
        return has_z and has_r1 and not has_r2
    return has_z and not (has_r1 or has_r2)


def promise_holds(game: GameId, inp: GameInput) -> bool:
    game = GameId.parse(game)
    if not _shape_ok(game, inp):
        return False
    if game is GameId.CHSH:
        return True
    parity = inp.x ^ inp.y ^ inp.z
    if game is GameId.GHZ_E:
        return parity == 0
    if game is GameId.GHZ_O:
        return parity == 1
    return parity == inp.r1


def _require_promise(game: GameId, inp: GameInput) -> None:
    if not promise_holds(game, inp):
        raise ValueError(f"input {inp} violates the promise of {game.value}")


def promise_inputs(game: GameId) -> list[GameInput]:
    """Promise-satisfying inputs, ordered lexicographically by (r2, r1, x, y, z)."""
    game = GameId.parse(game)
    if game is GameId.CHSH:
        return [GameInput(x, y) for x, y in itertools.product((0, 1), repeat=2)]
    triples = list(itertools.product((0, 1), repeat=3))
    if game is GameId.GHZ_E:
        return [GameInput(x, y, z) for x, y, z in triples if x ^ y ^ z == 0]
    if game is GameId.GHZ_O:
        return [GameInput(x, y, z) for x, y, z in triples if x ^ y ^ z == 1]
    out = []
    r2_values = (0, 1) if game is GameId.R2GHZ else (None,)
    for r2 in r2_values:
        for r1 in (0, 1):
            for x, y, z in triples:
                if x ^ y ^ z == r1:
                    out.append(GameInput(x, y, z, r1, r2))
    return out


def target(game: GameId, inp: GameInput) -> int:
    """Required parity of the players' outputs on ``inp``."""
    game = GameId.parse(game)
    if game is GameId.CHSH:
        return inp.x & inp.y
    if game is GameId.GHZ_E:
        return winning_bit(inp.x, inp.y, inp.z, 0)
    if game is GameId.GHZ_O:
        return winning_bit(inp.x, inp.y, inp.z, 1)
    return winning_bit(inp.x, inp.y, inp.z, inp.r1)


def view_bits(game: GameId, inp: GameInput) -> tuple[tuple[int, ...], ...]:
    if game is GameId.CHSH:
        return ((inp.x,), (inp.y,))
    if game is GameId.R2GHZ:
        r1, r2 = inp.r1, inp.r2
        return ((inp.x, r2, r1 & (1 - r2)), (inp.y, r2, r1 & r2), (inp.z,))
    if game is GameId.RGHZ:
        return ((inp.x, inp.r1), (inp.y,), (inp.z,))
    return ((inp.x,), (inp.y,), (inp.z,))


def party_views(game: GameId, inp: GameInput) -> tuple[PartyView, ...]:
    game = GameId.parse(game)
    _require_promise(game, inp)
    return tuple(PartyView(p, b) for p, b in zip(parties(game), view_bits(game, inp)))


def reachable_views(game: GameId) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Per party, the sorted views that occur on some promise input."""
    game = GameId.parse(game)
    seen = [set() for _ in parties(game)]
    for inp in promise_inputs(game):
        for s, bits in zip(seen, view_bits(game, inp)):
            s.add(bits)
    return tuple(tuple(sorted(s)) for s in seen)


# ---------------------------------------------------------------- classical


@dataclass(frozen=True, order=True)
class ClassicalStrategy:
    """One deterministic response table per party, indexed by that party's view."""

    tables: tuple[TruthTable, ...]

    def masks(self) -> tuple[int, ...]:
        return tuple(t.table for t in self.tables)

    def respond(self, game: GameId, inp: GameInput) -> tuple[int, ...]:
        return tuple(
            boolfn.evaluate(t, bits) for t, bits in zip(self.tables, view_bits(game, inp))
        )

    @classmethod
    def from_functions(cls, game: GameId, *fns: Callable[..., int]) -> "ClassicalStrategy":
        arities = view_arities(game)
        if len(fns) != len(arities):
            raise ValueError(f"{game.value} needs {len(arities)} response functions")
        return cls(tuple(boolfn.from_function(a, f) for a, f in zip(arities, fns)))


def _check_classical(game: GameId, strategy: ClassicalStrategy) -> None:
    arities = tuple(t.arity for t in strategy.tables)
    if arities != view_arities(game):
        raise ValueError(
            f"strategy arities {arities} do not match {game.value} views {view_arities(game)}"
        )


def classical_wins(game: GameId, strategy: ClassicalStrategy) -> int:
    """Number of promise inputs on which ``strategy`` wins."""
    game = GameId.parse(game)
    _check_classical(game, strategy)
    wins = 0
    for inp in promise_inputs(game):
        if sum(strategy.respond(game, inp)) % 2 == target(game, inp):
            wins += 1
    return wins


def play_classical(game: GameId, strategy: ClassicalStrategy) -> Fraction:
    game = GameId.parse(game)
    return Fraction(classical_wins(game, strategy), len(promise_inputs(game)))


def builtin_classical_strategy(name: str, game: GameId) -> ClassicalStrategy:
    """Named deterministic strategies.

    ``flip-alice``: a = not x, b = y, c = z (GHZ_E, GHZ_O, RGHZ).
    ``switched``: the flip-alice strategy when r2 = 0 and a = x, b = not y,
    c = z when r2 = 1 (R2GHZ).
    ``zero``: every party answers 0 (any game).
    """
    game = GameId.parse(game)
    key = name.lower()
    n = len(parties(game))
    if key == "zero":
        return ClassicalStrategy.from_functions(game, *([lambda *v: 0] * n))
    if key == "flip-alice" and game in (GameId.GHZ_E, GameId.GHZ_O, GameId.RGHZ):
        return ClassicalStrategy.from_functions(
            game, lambda x, *rest: 1 - x, lambda y: y, lambda z: z
        )
    if key == "switched" and game is GameId.R2GHZ:
        return ClassicalStrategy.from_functions(
            game,
            lambda x, r2, _: x if r2 else 1 - x,
            lambda y, r2, _: 1 - y if r2 else y,
            lambda z: z,
        )
    raise ValueError(f"no classical strategy {name!r} for {game.value}")


# ---------------------------------------------------------------- quantum


@dataclass(frozen=True)
class QuantumStrategy:
    shared: PureState
    assignment: tuple[Mapping[tuple[int, ...], EquatorialObservable], ...]

    def observables(self, views: Sequence[tuple[int, ...]]) -> list[EquatorialObservable]:
        out = []
        for party_map, bits in zip(self.assignment, views):
            try:
                out.append(party_map[bits])
            except KeyError:
                raise ValueError(f"strategy has no observable for view {bits}") from None
        return out


def quantum_win_probabilities(
    game: GameId, strategy: QuantumStrategy
) -> list[tuple[GameInput, float]]:
    game = GameId.parse(game)
    if strategy.shared.qubit_count != len(parties(game)):
        raise ValueError("shared state must have one qubit per party")
    if len(strategy.assignment) != len(parties(game)):
        raise ValueError("need one observable assignment per party")
    result = []
    for inp in promise_inputs(game):
        obs = strategy.observables(view_bits(game, inp))
        dist = outcome_distribution(strategy.shared, obs)
        result.append((inp, dist.parity_mass(target(game, inp))))
    return result


def play_quantum(
    game: GameId, strategy: QuantumStrategy
) -> tuple[float, list[tuple[GameInput, float]]]:
    """Uniform-average success and the per-input win probabilities."""
    per_input = quantum_win_probabilities(game, strategy)
    overall = math.fsum(p for _, p in per_input) / len(per_input)
    return overall, per_input


_UNIFORM = {(0,): X, (1,): Y}
_ALICE_ODD = {(0,): NEG_Y, (1,): X}


def _randomized_sender(
    knows_parity_when: int,
) -> dict[tuple[int, ...], EquatorialObservable]:
    # view = (input bit, r2, revealed parity bit); the sender that holds r1
    # switches between the even- and odd-promise response, the other stays put
    table = {}
    for bit in (0, 1):
        for r2 in (0, 1):
            holder = r2 == knows_parity_when
            for r1 in ((0, 1) if holder else (0,)):
                rule = _ALICE_ODD if holder and r1 else _UNIFORM
                table[(bit, r2, r1)] = rule[(bit,)]
    return table


def builtin_quantum_strategy(name: str) -> tuple[GameId, QuantumStrategy]:
    """Named quantum strategies and the game each one is built for."""
    key = name.lower().replace("_", "").replace("-", "")
    if key == "table1e":
        return GameId.GHZ_E, QuantumStrategy(ghz_state(), (_UNIFORM, _UNIFORM, _UNIFORM))
    if key == "table1o":
        return GameId.GHZ_O, QuantumStrategy(ghz_state(), (_ALICE_ODD, _UNIFORM, _UNIFORM))
    if key == "lemma1":
        return GameId.R2GHZ, QuantumStrategy(
            ghz_state(), (_randomized_sender(0), _randomized_sender(1), _UNIFORM)
        )
    if key == "chshcalibration":
        alice = {(0,): EquatorialObservable(0.0), (1,): EquatorialObservable(math.pi / 2)}
        bob = {
            (0,): EquatorialObservable(7 * math.pi / 4),
            (1,): EquatorialObservable(math.pi / 4),
        }
        return GameId.CHSH, QuantumStrategy(bell_state(), (alice, bob))
    raise ValueError(f"unknown quantum strategy {name!r}")

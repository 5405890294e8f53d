"""Boolean functions on small domains, stored as truth-table bitmasks.

Bit ``k`` of ``table`` is the output on the input whose binary encoding is
``k``; the first input bit is the most significant one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_ARITY = 6


def index_of(bits: Sequence[int]) -> int:
    """Integer encoding of a bit sequence, first bit most significant."""
    k = 0
    for b in bits:
        k = (k << 1) | (b & 1)
    return k


def bits_of(k: int, width: int) -> tuple[int, ...]:
    return tuple((k >> (width - 1 - i)) & 1 for i in range(width))


def _check_arity(arity: int) -> None:
    if not 0 <= arity <= MAX_ARITY:
        raise ValueError(f"arity must be in [0, {MAX_ARITY}], got {arity}")


@dataclass(frozen=True, order=True)
class TruthTable:
    arity: int
    table: int

    def __post_init__(self) -> None:
        _check_arity(self.arity)
        if self.table < 0 or self.table >> (1 << self.arity):
            raise ValueError(f"mask {self.table:#x} has bits beyond 2^{self.arity} entries")

    def __call__(self, *bits: int) -> int:
        return evaluate(self, bits)

    @property
    def size(self) -> int:
        return 1 << self.arity

    def outputs(self) -> tuple[int, ...]:
        """Output bits in index order."""
        return tuple((self.table >> k) & 1 for k in range(self.size))


def evaluate(tt: TruthTable, bits: Sequence[int]) -> int:
    if len(bits) != tt.arity:
        raise ValueError(f"expected {tt.arity} input bits, got {len(bits)}")
    return (tt.table >> index_of(bits)) & 1


def enumerate_tables(arity: int) -> Iterator[TruthTable]:
    """All 2^(2^arity) tables in ascending mask order."""
    _check_arity(arity)
    for mask in range(1 << (1 << arity)):
        yield TruthTable(arity, mask)


def enumerate_supported(arity: int, support: Iterable[int]) -> Iterator[TruthTable]:
    """Tables that are zero outside ``support`` (a set of input indices).

    Used when only some inputs are reachable: outputs on the others cannot
    matter, so they are pinned to 0. Yields in ascending mask order.
    """
    _check_arity(arity)
    positions = sorted(set(support))
    if any(not 0 <= p < (1 << arity) for p in positions):
        raise ValueError("support index out of range")
    # sub -> mask is monotone since bit j of sub lands on the j-th smallest position
    for sub in range(1 << len(positions)):
        mask = 0
        for j, p in enumerate(positions):
            if (sub >> j) & 1:
                mask |= 1 << p
        yield TruthTable(arity, mask)


def from_anf_2bit(alpha: int, beta: int, gamma: int, delta: int) -> TruthTable:
    """Table of g(s0, s1) = alpha*s0 ^ beta*s1 ^ gamma*s0*s1 ^ delta."""
    mask = 0
    for s0 in (0, 1):
        for s1 in (0, 1):
            out = (alpha & s0) ^ (beta & s1) ^ (gamma & s0 & s1) ^ (delta & 1)
            mask |= out << index_of((s0, s1))
    return TruthTable(2, mask)


def anf_2bit(tt: TruthTable) -> tuple[int, int, int, int]:
    """Inverse of :func:`from_anf_2bit` (Moebius transform on two bits)."""
    if tt.arity != 2:
        raise ValueError("anf_2bit needs an arity-2 table")
    f00, f01, f10, f11 = (tt(0, 0), tt(0, 1), tt(1, 0), tt(1, 1))
    return (f00 ^ f10, f00 ^ f01, f00 ^ f01 ^ f10 ^ f11, f00)


def constant(arity: int, value: int) -> TruthTable:
    return TruthTable(arity, ((1 << (1 << arity)) - 1) if value else 0)


def from_function(arity: int, fn) -> TruthTable:
    """Tabulate a Python callable taking ``arity`` bits."""
    mask = 0
    for k in range(1 << arity):
        if fn(*bits_of(k, arity)) & 1:
            mask |= 1 << k
    return TruthTable(arity, mask)

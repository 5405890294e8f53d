import itertools

import pytest

from ghzlab.boolfn import (
    TruthTable,
    anf_2bit,
    bits_of,
    enumerate_supported,
    enumerate_tables,
    evaluate,
    from_anf_2bit,
    from_function,
    index_of,
)

AND = TruthTable(2, 0b1000)
XOR = TruthTable(2, 0b0110)


def test_evaluate_examples():
    assert evaluate(AND, (1, 1)) == 1
    assert evaluate(AND, (0, 1)) == 0
    assert evaluate(XOR, (1, 0)) == 1
    zero = TruthTable(3, 0)
    assert all(evaluate(zero, b) == 0 for b in itertools.product((0, 1), repeat=3))


def test_first_bit_is_most_significant():
    only_10 = TruthTable(2, 1 << 0b10)
    assert only_10(1, 0) == 1 and only_10(0, 1) == 0
    assert index_of((1, 0, 0)) == 4
    assert bits_of(4, 3) == (1, 0, 0)


def test_evaluate_length_mismatch():
    with pytest.raises(ValueError):
        evaluate(AND, (1,))


@pytest.mark.parametrize("arity,mask", [(7, 0), (2, 1 << 4), (-1, 0), (1, -1)])
def test_invalid_tables(arity, mask):
    with pytest.raises(ValueError):
        TruthTable(arity, mask)


@pytest.mark.parametrize("arity,count", [(0, 2), (1, 4), (2, 16), (3, 256)])
def test_enumerate_counts_and_uniqueness(arity, count):
    tables = list(enumerate_tables(arity))
    assert len(tables) == count
    assert len(set(tables)) == count
    masks = [t.table for t in tables]
    assert masks == sorted(masks)


def test_enumerate_out_of_range():
    with pytest.raises(ValueError):
        list(enumerate_tables(7))


def test_anf_examples():
    assert from_anf_2bit(0, 0, 0, 0) == TruthTable(2, 0)
    assert from_anf_2bit(1, 1, 0, 0) == XOR
    assert from_anf_2bit(0, 0, 1, 0) == AND


def test_anf_image_is_all_tables():
    image = [from_anf_2bit(*c) for c in itertools.product((0, 1), repeat=4)]
    assert set(image) == set(enumerate_tables(2))
    assert len(set(image)) == 16


def test_anf_round_trip():
    for tt in enumerate_tables(2):
        coeffs = [c for c in itertools.product((0, 1), repeat=4) if from_anf_2bit(*c) == tt]
        assert coeffs == [anf_2bit(tt)]


def test_enumerate_supported():
    tables = list(enumerate_supported(3, [0, 1, 2, 4, 5, 6]))
    assert len(tables) == 64
    assert all(t(0, 1, 1) == 0 and t(1, 1, 1) == 0 for t in tables)
    assert [t.table for t in tables] == sorted(t.table for t in tables)
    full = {t for t in enumerate_tables(3) if not (t.table >> 3) & 1 and not (t.table >> 7) & 1}
    assert set(tables) == full


def test_from_function_matches_evaluate():
    maj = from_function(3, lambda a, b, c: (a & b) | (a & c) | (b & c))
    assert maj.table == 0b11101000

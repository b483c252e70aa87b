import json

import pytest

from affine_lyndon.errors import DepthError, UsageError
from affine_lyndon.leclerc import (
    SLEntry,
    bracket_nonzero,
    compare_extended,
    generate_up_to_delta,
    load_table,
    save_table,
    sl,
    table_from_json,
    table_to_json,
)
from affine_lyndon.root_core import ExtendedRoot, RationalBasis, build_system, finite_part
from affine_lyndon.words import Ordering, key_costandard, key_is_lyndon

from _oracle import oracle_table
from conftest import table


def word(T, degree, index=None):
    return str(sl(T, degree, index))


def test_a1_small_words():
    T = table("A1", (0, 1), 3)
    assert word(T, (1, 0)) == "0" and word(T, (0, 1)) == "1"
    assert word(T, (1, 1), 1) == "01"
    assert word(T, (2, 1)) == "001" and word(T, (1, 2)) == "011"
    assert word(T, (2, 2), 1) == "0011"


def test_golden_words():
    assert word(table("F4", (0, 2, 4, 1, 3), 1), (1, 2, 3, 4, 2), 1) == "012334423312"
    assert word(table("A2", (1, 2, 0), 1), (1, 1, 1), 1) == "102"
    assert word(table("A3", (1, 2, 3, 0), 2), (2, 1, 1, 1)) == "10230"
    assert word(table("C2", (0, 1, 2), 2), (2, 2, 1)) == "01012"
    assert word(table("A2", (1, 2, 0), 2), (1, 2, 2)) == "12102"


@pytest.mark.parametrize("name", ["A1", "A3", "B3", "C2", "D4", "F4", "G2"])
def test_simple_roots_are_letters(name):
    S = build_system(name)
    T = table(name, tuple(range(S.rank + 1)), 1)
    for i in range(S.rank + 1):
        v = tuple(1 if j == i else 0 for j in range(S.rank + 1))
        assert word(T, v) == str(i)


@pytest.mark.parametrize("name,order,depth", [
    ("A1", (0, 1), 3), ("A1", (1, 0), 3), ("A2", (1, 2, 0), 3), ("A2", (0, 2, 1), 2),
    ("B2", (2, 0, 1), 2), ("C2", (0, 1, 2), 3), ("G2", (1, 2, 0), 2), ("A3", (3, 1, 0, 2), 2),
])
def test_generator_matches_oracle(name, order, depth):
    real, imag = oracle_table(name, order, depth)
    T = generate_up_to_delta(name, order, depth)
    S = T.system
    for v, key in real.items():
        assert T.real[(v[0], finite_part(S, v))] == key, v
    for k, row in imag.items():
        assert T.imag[k] == row, k
    assert len(T.real) == len(real)


@pytest.mark.parametrize("name,order,depth", [("G2", (0, 1, 2), 4), ("F4", (0, 2, 4, 1, 3), 2), ("D4", (2, 0, 4, 1, 3), 2)])
def test_table_invariants(name, order, depth):
    T = generate_up_to_delta(name, order, depth)
    S = T.system
    words = list(T.real.values())
    assert len(set(words)) == len(words)
    for (m, b), key in T.real.items():
        assert key_is_lyndon(key)
        assert T.key_degree(key)[0] == m and finite_part(S, T.key_degree(key)) == b
    for k in range(1, depth + 1):
        row = T.imag[k]
        assert len(row) == S.rank
        assert all(row[i][0] > row[i + 1][0] for i in range(S.rank - 1))
        basis = RationalBasis(S.rank)
        for key, d in row:
            assert T.key_degree(key) == tuple(k * x for x in S.marks)
            assert d == finite_part(S, T.key_degree(key_costandard(key)[0])) and any(d)
            assert basis.add(d)


def test_bracket_and_extended_compare():
    T = table("A1", (0, 1), 3)
    S = T.system
    e0 = T.entry_for_key(T.key_for((1, 0)))
    e1 = T.entry_for_key(T.key_for((0, 1)))
    im = T.entry_for_key(T.key_for((1, 1), 1))
    assert bracket_nonzero(S, e0, e1) and bracket_nonzero(S, im, e1)
    im2 = T.entry_for_key(T.key_for((2, 2), 1))
    assert not bracket_nonzero(S, im, im2)
    assert isinstance(im, SLEntry)
    assert compare_extended(T, (1, 0), ExtendedRoot((1, 1), 1)) is Ordering.LESS
    assert compare_extended(T, ExtendedRoot((1, 1), 1), ExtendedRoot((2, 2), 1)) is Ordering.GREATER
    F = table("F4", (0, 2, 4, 1, 3), 1)
    assert compare_extended(F, ExtendedRoot((1, 2, 3, 4, 2), 1), ExtendedRoot((1, 2, 3, 4, 2), 2)) is Ordering.GREATER


def test_depth_errors():
    T = generate_up_to_delta("A1", (0, 1), 2)
    with pytest.raises(DepthError):
        sl(T, (5, 5), 1)
    with pytest.raises(DepthError):
        generate_up_to_delta("A1", (0, 1), 70)
    with pytest.raises(UsageError):
        sl(T, (1, 1))  # imaginary needs an index
    with pytest.raises(UsageError):
        sl(T, (2, 0))
    with pytest.raises(UsageError):
        generate_up_to_delta("A2", (0, 1), 1)


def test_extension_is_consistent():
    a = generate_up_to_delta("G2", (1, 2, 0), 2)
    a.ensure(5)
    b = generate_up_to_delta("G2", (1, 2, 0), 5)
    assert a.real == b.real and a.imag == b.imag


def test_cache_round_trip(tmp_path):
    T = generate_up_to_delta("C2", (0, 1, 2), 4)
    path = save_table(T, tmp_path)
    back = load_table(tmp_path, T.system, T.order)
    assert back is not None and back.real == T.real and back.imag == T.imag
    assert back.generated_depth == 4
    # queries on a reloaded table equal queries on a fresh one
    assert word(back, (2, 2, 1)) == word(T, (2, 2, 1))
    back.ensure(6)
    fresh = generate_up_to_delta("C2", (0, 1, 2), 6)
    assert back.real == fresh.real
    # a tampered or stale cache is rejected rather than reused
    doc = json.loads(path.read_text())
    doc["real"][3]["word"] = doc["real"][4]["word"]
    with pytest.raises(UsageError):
        table_from_json(doc)
    doc = table_to_json(T)
    doc["format_version"] = 0
    path.write_text(json.dumps(doc))
    assert load_table(tmp_path, T.system, T.order) is None
    assert load_table(tmp_path / "missing", T.system, T.order) is None

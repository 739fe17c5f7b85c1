from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from qsweedler import Quantale, ValidationError, builtin, residuate, verify_quantale
from qsweedler.quantale import descending_fixpoint


def brute_res(q, a, b):
    # join of every c with c*a <= b, found by scanning
    return q.join_all([c for c in range(len(q)) if q.leq_table[q.tensor_table[c, a], b]])


def test_bool_residuation():
    q = builtin("bool")
    assert residuate(q, "1", "0") == "0"
    for b in ("0", "1"):
        assert residuate(q, "0", b) == "1"
    # [a, b] is implication
    for a, b in product((0, 1), repeat=2):
        assert q.res_table[a, b] == int((not a) or b)


def test_lukasiewicz_half_residuation():
    q = builtin("lukasiewicz", 3)
    assert residuate(q, "1/2", "0") == "1/2"
    assert residuate(q, "0.5", "0") == "1/2"
    assert q.label(q.tensor(q.index("1/2"), q.index("1/2"))) == "0"


def test_godel_residuation_formula():
    q = builtin("godel", 3)
    for a, b in product(range(3), repeat=2):
        assert q.res_table[a, b] == (q.top if a <= b else b)


def test_residuation_matches_scan(anyq):
    q = anyq
    for a, b in product(range(len(q)), repeat=2):
        assert q.res_table[a, b] == brute_res(q, a, b)


def test_adjunction_and_currying(anyq):
    q = anyq
    T, R, L = q.tensor_table, q.res_table, q.leq_table
    n = len(q)
    for a, b, c in product(range(n), repeat=3):
        assert L[c, R[a, b]] == L[T[c, a], b]
        assert R[a, R[b, c]] == R[T[a, b], c]
    for a in range(n):
        assert R[q.unit, a] == a
        assert L[q.unit, R[a, a]]


def test_builtins_pass(anyq):
    assert verify_quantale(anyq).ok


def test_chain_labels_are_exact():
    q = builtin("lukasiewicz", 5)
    assert q.elements == ("0", "1/4", "1/2", "3/4", "1")
    assert [Fraction(e) for e in q.elements] == sorted(Fraction(e) for e in q.elements)
    assert q.index("top") == q.top == q.unit == 4
    assert q.index("bottom") == 0


def test_builtin_errors():
    with pytest.raises(ValidationError):
        builtin("godel", 1)
    with pytest.raises(ValidationError):
        builtin("heyting", 3)
    with pytest.raises(ValidationError):
        builtin("godel", 65)
    with pytest.raises(ValidationError):
        builtin("bool").index("maybe")


def test_empty_join_distributivity_is_named():
    # a * bottom = a on a three-chain
    join = [[max(i, j) for j in range(3)] for i in range(3)]
    tensor = [[min(i, j) if 0 not in (i, j) else max(i, j) for j in range(3)] for i in range(3)]
    q = Quantale("broken", ["0", "a", "1"], join, "0", tensor, "1")
    report = verify_quantale(q)
    assert not report.ok
    assert "empty-join distributivity" in [f.law for f in report.failures]


def test_noncommutative_rejected():
    join = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
    tensor = [[0, 0, 0], [0, 1, 2], [0, 1, 2]]
    with pytest.raises(ValidationError, match="commutative"):
        Quantale("nc", ["0", "a", "1"], join, "0", tensor, "1")


def test_height_and_subunits():
    assert builtin("bool").height() == 2
    assert builtin("godel", 5).height() == 5
    # only 0 and 1 are idempotent in the Lukasiewicz chain
    q = builtin("lukasiewicz", 3)
    assert [q.label(i) for i in q.idempotent_subunits()] == ["0", "1"]
    g = builtin("godel", 3)
    assert len(g.idempotent_subunits()) == 3


def test_descending_fixpoint_counts_changes():
    q = builtin("lukasiewicz", 3)
    half = q.index("1/2")
    vals, steps = descending_fixpoint(lambda x: q.meet_table[half, q.tensor_table[x, x]],
                                      np.array([q.top]))
    assert q.label(vals[0]) == "0"
    assert steps[0] == 2

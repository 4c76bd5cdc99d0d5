"""Root space decompositions, the split-system clauses, and the
containment lemma sweeps."""

from fractions import Fraction

import pytest

from ltk import (
    NotSplit,
    catalogue,
    masa_search,
    reduce,
    right_action,
    root_decompose,
    standard_embedding,
    verify_containments,
    verify_split,
)
from ltk.linalg import ZERO, unit_vec, zero_vec

SPLIT_NAMES = ["sl2", "sl3", "dsum:sl2+sl2", "shuffle:6:sl2"]


def split_of(name):
    entry = catalogue(name)
    red = reduce(standard_embedding(entry.system))
    basis = tuple(red.project_pairs(v) for v in entry.masa_pairs)
    return root_decompose(entry.system, red, basis)


def test_right_action_sl2():
    ts = catalogue("sl2").system
    h = list(zero_vec(9))
    h[0 * 3 + 1] = Fraction(1)  # e (x) f
    op = right_action(ts, tuple(h))
    assert op.apply(unit_vec(3, 0)) == (Fraction(-2), ZERO, ZERO)  # e -> -2e
    assert op.apply(unit_vec(3, 1)) == (ZERO, Fraction(2), ZERO)  # f -> 2f
    assert op.apply(unit_vec(3, 2)) == zero_vec(3)  # h -> 0


def test_sl2_root_decomposition():
    s = split_of("sl2")
    assert s.t_zero.rows == (unit_vec(3, 2),)  # T0 = span(h)
    assert s.lambda1 == ((Fraction(-2),), (Fraction(2),))
    spaces = dict(s.roots)
    assert spaces[(Fraction(-2),)].rows == (unit_vec(3, 0),)  # T_{-2} = span(e)
    assert spaces[(Fraction(2),)].rows == (unit_vec(3, 1),)  # T_{+2} = span(f)


def test_sl2_split_clauses_all_pass():
    rep = verify_split(split_of("sl2"))
    assert rep.passed, rep.failed()
    names = [n for n, _, _ in rep.clauses]
    assert names == [
        "a_completeness",
        "b_t0_cubed_zero",
        "c_opposite_t0_zero",
        "d_eq3_masa_span",
        "e_eq4_t0_bracket",
        "f_lambda1_symmetric",
        "f_lambda0_symmetric",
    ]


def test_sl3_roots():
    s = split_of("sl3")
    assert s.t_zero.dim == 2
    lam1 = set(s.lambda1)
    f = Fraction
    assert lam1 == {
        (f(2), f(-1)),
        (f(-2), f(1)),
        (f(-1), f(2)),
        (f(1), f(-2)),
        (f(1), f(1)),
        (f(-1), f(-1)),
    }
    assert all(s.space_of(a).dim == 1 for a in lam1)
    assert verify_split(s).passed


def test_n3_is_not_split():
    # With any MASA of n3's reduced L0, clause (b) fails: {T0,T0,T0} != 0.
    entry = catalogue("n3")
    red = reduce(standard_embedding(entry.system))
    h, verdict = masa_search(red.quotient)
    assert verdict.status == "VERIFIED"
    s = root_decompose(entry.system, red, h.rows)
    rep = verify_split(s)
    assert rep.failed() == ("b_t0_cubed_zero",)


@pytest.mark.parametrize("name", SPLIT_NAMES)
def test_split_and_containments(name):
    s = split_of(name)
    assert verify_split(s).passed
    assert verify_containments(s).passed


def test_lambda0_symmetric_on_split_instances():
    for name in SPLIT_NAMES:
        s = split_of(name)
        lam0 = set(s.lambda0())
        assert {tuple(-x for x in d) for d in lam0} == lam0


def test_empty_masa_trivial_split():
    entry = catalogue("zero:2")
    red = reduce(standard_embedding(entry.system))
    s = root_decompose(entry.system, red, ())
    assert s.t_zero.dim == 2
    assert s.lambda1 == ()
    assert verify_split(s).passed


def test_not_split_raised_for_defective_action():
    # n3 with the full reduced L0 line as "MASA": the action of the sole
    # reduced direction on T is nilpotent but nonzero, hence not
    # diagonalizable.
    entry = catalogue("n3")
    red = reduce(standard_embedding(entry.system))
    q = red.quotient
    assert q.dim0 == 1
    basis = (unit_vec(1, 0),)
    try:
        s = root_decompose(entry.system, red, basis)
    except NotSplit:
        return
    # If it diagonalizes, the clause report must still flag clause (b).
    assert not verify_split(s).passed

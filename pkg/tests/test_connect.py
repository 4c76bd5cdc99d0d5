"""Connections between roots, equivalence classes, and root subsystems."""

from fractions import Fraction

import pytest

from ltk import (
    catalogue,
    connect,
    connected_set,
    equivalence_classes,
    is_root_subsystem,
    reduce,
    root_decompose,
    standard_embedding,
    subsystem_of,
    verify_chain,
    verify_identities,
)
from ltk.connect import NotARoot, NotRootSubsystem
from ltk.roots import root_neg

f = Fraction


def split_of(name):
    entry = catalogue(name)
    red = reduce(standard_embedding(entry.system))
    basis = tuple(red.project_pairs(v) for v in entry.masa_pairs)
    return root_decompose(entry.system, red, basis)


def test_sl2_self_connection():
    s = split_of("sl2")
    alpha = (f(2),)
    chain = connect(s, alpha, root_neg(alpha))
    assert chain == (alpha,)
    assert verify_chain(s, chain, alpha, root_neg(alpha))
    assert connect(s, alpha, alpha) == (alpha,)


def test_cross_block_not_connected():
    s = split_of("dsum:sl2+sl2")
    left = (f(2), f(0))
    right = (f(0), f(2))
    assert connect(s, left, right) is None
    assert connect(s, left, (f(2), f(0))) == (left,)
    part = equivalence_classes(s)
    assert len(part.classes) == 2
    for cls in part.classes:
        assert {root_neg(a) for a in cls} == set(cls)


def test_sl3_simple_roots_connected_by_length3_chain():
    s = split_of("sl3")
    alpha = (f(2), f(-1))  # root of e1
    beta = (f(-1), f(2))  # root of e2
    chain = connect(s, alpha, beta)
    assert chain is not None and len(chain) == 3
    assert verify_chain(s, chain, alpha, beta)
    # The textbook chain (alpha, beta, -alpha) is also a valid connection.
    assert verify_chain(s, (alpha, beta, root_neg(alpha)), alpha, beta)


def test_sl3_single_class():
    s = split_of("sl3")
    part = equivalence_classes(s)
    assert len(part.classes) == 1
    assert len(part.classes[0]) == 6


def test_connection_symmetry_exhaustive():
    for name in ("sl2", "sl3", "dsum:sl2+sl2", "shuffle:6:sl2"):
        s = split_of(name)
        for a in s.lambda1:
            for b in s.lambda1:
                assert (connect(s, a, b) is None) == (connect(s, b, a) is None)


def test_connected_set_is_root_subsystem():
    for name in ("sl2", "sl3", "dsum:sl2+sl2"):
        s = split_of(name)
        for a in s.lambda1:
            omega = connected_set(s, a)
            assert a in omega and root_neg(a) in omega
            assert is_root_subsystem(s, omega)


def test_not_a_root_rejected():
    s = split_of("sl2")
    with pytest.raises(NotARoot):
        connect(s, (f(5),), (f(2),))
    with pytest.raises(NotARoot):
        connected_set(s, (f(5),))


def test_asymmetric_set_is_not_subsystem():
    s = split_of("sl2")
    assert not is_root_subsystem(s, ((f(2),),))
    assert is_root_subsystem(s, ((f(2),), (f(-2),)))


def test_subsystem_of_sl2_full():
    s = split_of("sl2")
    omega = tuple(sorted(s.lambda1))
    t0, v, sub = subsystem_of(s, omega)
    assert t0.rows == s.t_zero.rows  # T_{0,Omega} = span(h)
    assert v.dim == 2
    assert sub.dim == 3
    assert verify_identities(sub).passed


def test_subsystem_of_block():
    s = split_of("dsum:sl2+sl2")
    omega = ((f(-2), f(0)), (f(2), f(0)))
    assert is_root_subsystem(s, omega)
    t0, v, sub = subsystem_of(s, omega)
    assert t0.dim == 1 and v.dim == 2 and sub.dim == 3
    assert verify_identities(sub).passed


def test_subsystem_of_rejects_non_subsystem():
    s = split_of("sl2")
    with pytest.raises(NotRootSubsystem):
        subsystem_of(s, ((f(2),),))

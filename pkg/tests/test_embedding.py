"""The standard graded embedding, its reduction, and MASA handling.

The free pair-coordinate embedding does NOT satisfy the right Leibniz
identity for systems with a nontrivial action kernel; the identity holds
on the quotient by that kernel.  Both facts are pinned here.
"""

import pytest

from ltk import (
    action_kernel,
    bracket_radical,
    catalogue,
    centralizer,
    masa_search,
    masa_verify,
    reduce,
    standard_embedding,
    verify_embedding,
)
from ltk.embedding import _pad0
from ltk.linalg import ONE, Subspace, unit_vec
from ltk.triple import sparse_from_vec, sparse_to_vec

NAMES = [
    "zero:2",
    "n3",
    "sl2",
    "sl3",
    "dsum:sl2+sl2",
    "shuffle:4:sl2",
]


def _embed(name):
    return standard_embedding(catalogue(name).system)


@pytest.mark.parametrize("name", NAMES)
def test_grading_and_dims(name):
    ts = catalogue(name).system
    alg = standard_embedding(ts)
    assert alg.dim0 == ts.dim * ts.dim
    assert alg.dim1 == ts.dim
    for (p, q), out in alg.table.items():
        want = (alg.degree(p) + alg.degree(q)) % 2
        assert all(alg.degree(l) == want for l in out)


@pytest.mark.parametrize("name", NAMES)
def test_reduced_embedding_is_leibniz(name):
    red = reduce(_embed(name))
    assert verify_embedding(red.quotient).passed


def test_free_embedding_fails_leibniz_on_sl2():
    # [[y,z],x] != [[y,x],z] + [y,[z,x]] already at y = z = e(x)f, x = e(x)h:
    # the defect lands in the action kernel, so the quotient repairs it.
    alg = _embed("sl2")
    rep = verify_embedding(alg)
    assert not rep.passed
    assert len(rep.violations) == 216
    red = reduce(alg)
    for (_, (i, j, k)) in rep.violations[:5]:
        y, z, x = {i: ONE}, {j: ONE}, {k: ONE}
        lhs = alg.bracket(alg.bracket(y, z), x)
        rhs = alg.bracket(alg.bracket(y, x), z)
        for l, c in alg.bracket(y, alg.bracket(z, x)).items():
            rhs[l] = rhs.get(l, 0) + c
        diff = {l: lhs.get(l, 0) - rhs.get(l, 0) for l in set(lhs) | set(rhs)}
        dv = sparse_to_vec({l: c for l, c in diff.items() if c}, alg.dim)
        assert red.kernel.contains_vector(dv)


def test_radical_and_kernel_dims():
    expected = {
        "zero:2": (4, 4),
        "sl2": (6, 6),
        "n3": (6, 8),
        "sl3": (36, 56),
        "dsum:sl2+sl2": (21, 30),
    }
    for name, (rad, kern) in expected.items():
        red = reduce(_embed(name))
        assert red.radical.dim == rad, name
        assert red.kernel.dim == kern, name


def test_reduced_dims():
    expected = {
        "zero:2": (0, 2),
        "sl2": (3, 3),
        "n3": (1, 3),
        "sl3": (8, 8),
        "dsum:sl2+sl2": (6, 6),
    }
    for name, (d0, d1) in expected.items():
        q = reduce(_embed(name)).quotient
        assert (q.dim0, q.dim1) == (d0, d1), name


def test_projection_section_identity():
    red = reduce(_embed("sl2"))
    for i in range(red.quotient.dim):
        v = red.lift(unit_vec(red.quotient.dim, i))
        assert red.project(v) == unit_vec(red.quotient.dim, i)


def test_action_kernel_acts_trivially():
    alg = _embed("n3")
    kern = action_kernel(alg)
    for k in kern.rows:
        sk = sparse_from_vec(k)
        for w in range(alg.dim1):
            ew = {alg.dim0 + w: ONE}
            assert not alg.bracket(sk, ew)
            assert not alg.bracket(ew, sk)


def test_radical_contained_in_kernel():
    for name in ("sl2", "n3", "dsum:sl2+sl2"):
        alg = _embed(name)
        assert action_kernel(alg).contains(bracket_radical(alg))


def test_masa_verify_catalogue():
    for name in ("sl2", "sl3", "dsum:sl2+sl2"):
        entry = catalogue(name)
        red = reduce(standard_embedding(entry.system))
        basis = [red.project_pairs(v) for v in entry.masa_pairs]
        h = Subspace.span(red.quotient.dim0, basis)
        assert h.dim == len(entry.masa_pairs)
        assert masa_verify(red.quotient, h).status == "VERIFIED"


def test_masa_verify_not_maximal():
    red = reduce(_embed("sl2"))
    zero = Subspace.zero(red.quotient.dim0)
    assert masa_verify(red.quotient, zero).status == "NOT_MAXIMAL"


def test_masa_verify_not_abelian():
    red = reduce(_embed("sl2"))
    assert (
        masa_verify(red.quotient, Subspace.full(red.quotient.dim0)).status
        == "NOT_ABELIAN"
    )


def test_masa_search_dims():
    expected = {"sl2": 1, "sl3": 2, "dsum:sl2+sl2": 2, "dsum:sl2+sl3": 3}
    for name, dim in expected.items():
        red = reduce(_embed(name))
        h, verdict = masa_search(red.quotient)
        assert verdict.status == "VERIFIED", name
        assert h.dim == dim, name


def test_centralizer_of_cartan_sl2():
    entry = catalogue("sl2")
    red = reduce(standard_embedding(entry.system))
    q = red.quotient
    basis = [red.project_pairs(v) for v in entry.masa_pairs]
    cent = centralizer(q, [_pad0(q, b) for b in basis])
    assert cent.rows == Subspace.span(q.dim0, basis).rows

"""Built-in example systems: zero:n, n3, sl2, sl3, direct sums, shuffles.

Each entry returns a TripleSystem together with a canonical abelian
subalgebra of the embedding's degree-0 part when one is known, given as
vectors in unreduced pair coordinates (index (i, j) -> i * dim + j).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import ONE, ZERO, Vec, mat_inverse, vec
from .triple import LeibnizAlgebra, TripleSystem, change_basis, direct_sum, from_leibniz


class UnknownName(Exception):
    pass


class BadParam(Exception):
    pass


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    system: TripleSystem
    masa_pairs: tuple[Vec, ...]  # vectors of length dim**2, possibly empty


def zero_system(n: int) -> TripleSystem:
    return TripleSystem(n, tuple(f"b{i}" for i in range(n)), {})


def n3_algebra() -> LeibnizAlgebra:
    """The nilpotent right Leibniz algebra [a,a] = b, [b,a] = c."""
    return LeibnizAlgebra(3, ("a", "b", "c"), {(0, 0): {1: ONE}, (1, 0): {2: ONE}})


def _lie_from_matrices(labels, mats, coords):
    """Lie algebra from concrete matrices; `coords` maps a matrix to basis
    coordinates."""
    n = len(mats)
    table = {}
    for i in range(n):
        for j in range(n):
            comm = _mat_comm(mats[i], mats[j])
            out = {l: c for l, c in enumerate(coords(comm)) if c}
            if out:
                table[(i, j)] = out
    return LeibnizAlgebra(n, labels, table)


def _mat_comm(a, b):
    k = len(a)
    ab = [[sum(a[i][m] * b[m][j] for m in range(k)) for j in range(k)] for i in range(k)]
    ba = [[sum(b[i][m] * a[m][j] for m in range(k)) for j in range(k)] for i in range(k)]
    return [[ab[i][j] - ba[i][j] for j in range(k)] for i in range(k)]


def _e(k, i, j):
    m = [[ZERO] * k for _ in range(k)]
    m[i][j] = ONE
    return m


def sl2_entry() -> CatalogueEntry:
    """sl2 as a Lie triple system, basis (e, f, h), MASA span(e (x) f)."""
    mats = [_e(2, 0, 1), _e(2, 1, 0)]
    h = [[ONE, ZERO], [ZERO, -ONE]]
    mats.append(h)

    def coords(m):
        return (m[0][1], m[1][0], m[0][0])

    alg = _lie_from_matrices(("e", "f", "h"), mats, coords)
    ts = from_leibniz(alg)
    masa = [_pair_vec(3, [((0, 1), ONE)])]
    return CatalogueEntry("sl2", ts, tuple(masa))


def sl3_entry() -> CatalogueEntry:
    """sl3 as a Lie triple system, Chevalley-style basis, Cartan MASA
    span(e1 (x) f1, e2 (x) f2)."""
    mats = [
        _e(3, 0, 1),  # e1
        _e(3, 1, 2),  # e2
        _e(3, 0, 2),  # e3
        _e(3, 1, 0),  # f1
        _e(3, 2, 1),  # f2
        _e(3, 2, 0),  # f3
    ]
    h1 = [[ONE, ZERO, ZERO], [ZERO, -ONE, ZERO], [ZERO, ZERO, ZERO]]
    h2 = [[ZERO, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, -ONE]]
    mats += [h1, h2]

    def coords(m):
        # diagonal (d1,d2,d3), d1+d2+d3 = 0: h1-coeff d1, h2-coeff -d3
        return (m[0][1], m[1][2], m[0][2], m[1][0], m[2][1], m[2][0], m[0][0], -m[2][2])

    labels = ("e1", "e2", "e3", "f1", "f2", "f3", "h1", "h2")
    alg = _lie_from_matrices(labels, mats, coords)
    ts = from_leibniz(alg)
    masa = [
        _pair_vec(8, [((0, 3), ONE)]),  # e1 (x) f1
        _pair_vec(8, [((1, 4), ONE)]),  # e2 (x) f2
    ]
    return CatalogueEntry("sl3", ts, tuple(masa))


def _pair_vec(n: int, entries) -> Vec:
    out = [ZERO] * (n * n)
    for (i, j), c in entries:
        out[i * n + j] += c
    return tuple(out)


def _dsum_masa(n1: int, n2: int, m1: tuple[Vec, ...], m2: tuple[Vec, ...]) -> tuple[Vec, ...]:
    n = n1 + n2
    out = []
    for v in m1:
        w = [ZERO] * (n * n)
        for i in range(n1):
            for j in range(n1):
                w[i * n + j] = v[i * n1 + j]
        out.append(tuple(w))
    for v in m2:
        w = [ZERO] * (n * n)
        for i in range(n2):
            for j in range(n2):
                w[(i + n1) * n + (j + n1)] = v[i * n2 + j]
        out.append(tuple(w))
    return tuple(out)


def _shuffle_masa(masa: tuple[Vec, ...], pinv, n: int) -> tuple[Vec, ...]:
    out = []
    for v in masa:
        w = [ZERO] * (n * n)
        for u in range(n):
            for vv in range(n):
                c = v[u * n + vv]
                if not c:
                    continue
                for i in range(n):
                    pui = pinv[u][i]
                    if not pui:
                        continue
                    for j in range(n):
                        pvj = pinv[vv][j]
                        if pvj:
                            w[i * n + j] += c * pui * pvj
        out.append(tuple(w))
    return tuple(out)


def random_invertible(n: int, rng: random.Random):
    while True:
        p = tuple(tuple(Fraction(rng.randint(-2, 2)) for _ in range(n)) for _ in range(n))
        try:
            pinv = mat_inverse(p)
        except Exception:
            continue
        return p, pinv


def catalogue(name: str) -> CatalogueEntry:
    """Look up a named example; see the module docstring for the grammar."""
    if name.startswith("zero:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise BadParam(f"bad dimension in {name!r}")
        if n < 0:
            raise BadParam("dimension must be nonnegative")
        return CatalogueEntry(name, zero_system(n), ())
    if name == "n3":
        return CatalogueEntry("n3", from_leibniz(n3_algebra()), ())
    if name == "sl2":
        return sl2_entry()
    if name == "sl3":
        return sl3_entry()
    if name.startswith("dsum:"):
        parts = name.split(":", 1)[1].split("+")
        if len(parts) < 2:
            raise BadParam("dsum needs at least two summands")
        entries = [catalogue(p) for p in parts]
        acc = entries[0]
        system, masa = acc.system, acc.masa_pairs
        for nxt in entries[1:]:
            masa = _dsum_masa(system.dim, nxt.system.dim, masa, nxt.masa_pairs)
            system = direct_sum(system, nxt.system)
        return CatalogueEntry(name, system, masa)
    if name.startswith("shuffle:"):
        bits = name.split(":", 2)
        if len(bits) != 3:
            raise BadParam("shuffle:SEED:NAME expected")
        try:
            seed = int(bits[1])
        except ValueError:
            raise BadParam(f"bad seed in {name!r}")
        base = catalogue(bits[2])
        rng = random.Random(seed)
        p, pinv = random_invertible(base.system.dim, rng)
        system = change_basis(base.system, p)
        masa = _shuffle_masa(base.masa_pairs, pinv, base.system.dim)
        return CatalogueEntry(name, system, masa)
    raise UnknownName(f"unknown catalogue name: {name!r}")


CATALOGUE_NAMES = ("zero:n", "n3", "sl2", "sl3", "dsum:A+B", "shuffle:SEED:NAME")

"""Exact rational linear algebra: RREF, kernels, subspaces, eigenspaces.

All scalars are ``fractions.Fraction``; nothing here ever rounds.  Vectors
are tuples of Fractions, matrices are tuples of row tuples, and operators
act on coordinate row vectors by right application (``v @ M``).  Subspaces
are kept in reduced row-echelon form so that equality of subspaces is
literal equality of their basis matrices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Matrix = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class LinalgError(Exception):
    pass


class DimensionMismatch(LinalgError):
    pass


class NotContained(LinalgError):
    pass


class NotCommuting(LinalgError):
    def __init__(self, i: int, j: int):
        super().__init__(f"operators {i} and {j} do not commute")
        self.indices = (i, j)


class NotDiagonalizable(LinalgError):
    def __init__(self, op_index: int, reason: str = "irrational eigenvalue or Jordan block"):
        super().__init__(f"operator {op_index}: {reason}")
        self.op_index = op_index


def parse_rational(s: str) -> Fraction:
    """Parse a canonical rational literal: an integer or "p/q" with q > 0."""
    if not isinstance(s, str) or not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {s!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(coords: Iterable) -> Vec:
    return tuple(Fraction(c) for c in coords)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(unit_vec(n, i) for i in range(n))


def mat_apply(v: Vec, m: Matrix) -> Vec:
    """Right application v @ m of a row vector to a matrix."""
    if len(v) != len(m):
        raise DimensionMismatch(f"vector length {len(v)} vs matrix rows {len(m)}")
    ncols = len(m[0]) if m else 0
    out = [ZERO] * ncols
    for c, row in zip(v, m):
        if c:
            for j, e in enumerate(row):
                if e:
                    out[j] += c * e
    return tuple(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(mat_apply(row, b) for row in a)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(vec_sub(ra, rb) for ra, rb in zip(a, b))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form with pivot columns; drops zero rows."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ONE / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def mat_inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises LinalgError when singular."""
    n = len(m)
    aug = [list(row) + list(unit_vec(n, i)) for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv != tuple(range(n)):
        raise LinalgError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def solve_in_rows(v: Vec, rows: Matrix) -> Vec | None:
    """Coordinates c with c @ rows == v, or None when v is not in the span."""
    if not rows:
        return () if not any(v) else None
    aug = [list(r) + [x] for r, x in zip(zip(*rows), v)]  # transpose system
    red, piv = rref(aug)
    ncols = len(rows)
    if any(p == ncols for p in piv):
        return None
    sol = [ZERO] * ncols
    for row, p in zip(red, piv):
        sol[p] = row[-1]
    return tuple(sol)


def nullspace(m: Matrix, ncols: int) -> Matrix:
    """Basis (RREF) of {x : m @ x^T = 0} for x of length ncols."""
    red, piv = rref(m)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(tuple(v))
    rows, _ = rref(basis)
    return rows


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient, canonically represented by its RREF basis."""

    ambient: int
    rows: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, ambient: int, rows: Iterable[Sequence[Fraction]]) -> "Subspace":
        rows = [tuple(r) for r in rows]
        for r in rows:
            if len(r) != ambient:
                raise DimensionMismatch(f"row length {len(r)} vs ambient {ambient}")
        red, piv = rref(rows)
        return cls(ambient, red, piv)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, identity_matrix(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def contains_vector(self, v: Vec) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector length {len(v)} vs ambient {self.ambient}")
        return not any(self.reduce_vector(v))

    def reduce_vector(self, v: Vec) -> Vec:
        """Residue of v after elimination against the basis rows."""
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            if w[p]:
                f = w[p]
                w = [x - f * y for x, y in zip(w, row)]
        return tuple(w)

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(r) for r in other.rows)

    def _check(self, other: "Subspace") -> None:
        if self.ambient != other.ambient:
            raise DimensionMismatch(f"ambients {self.ambient} vs {other.ambient}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.ambient, self.rows + other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the Zassenhaus block construction."""
        self._check(other)
        n = self.ambient
        block = [tuple(r) + tuple(r) for r in self.rows]
        block += [tuple(r) + zero_vec(n) for r in other.rows]
        red, _ = rref(block)
        inter = [row[n:] for row in red if not any(row[:n])]
        return Subspace.span(n, inter)

    def complement_in(self, ambient_space: "Subspace") -> "Subspace":
        """Deterministic complement: ambient RREF rows at non-pivot columns of self.

        Valid because the pivot columns of a subspace are always a subset of
        the pivot columns of any space containing it.
        """
        self._check(ambient_space)
        if not ambient_space.contains(self):
            raise NotContained("first subspace is not inside the second")
        used = set(self.pivots)
        rows = [r for r, p in zip(ambient_space.rows, ambient_space.pivots) if p not in used]
        return Subspace.span(self.ambient, rows)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    return a.contains(b)


def complement_in(a: Subspace, ambient_space: Subspace) -> Subspace:
    return a.complement_in(ambient_space)


@dataclass(frozen=True)
class LinearOperator:
    """A square matrix acting on row vectors by right application."""

    rows: Matrix

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatch("operator matrix is not square")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def apply(self, v: Vec) -> Vec:
        return mat_apply(v, self.rows)

    def shifted(self, value: Fraction) -> Matrix:
        """Matrix of self - value * identity."""
        return tuple(
            tuple(e - value if i == j else e for j, e in enumerate(row))
            for i, row in enumerate(self.rows)
        )


def kernel(op: LinearOperator) -> Subspace:
    """{v : v @ op = 0} as a canonical subspace."""
    n = op.dim
    return Subspace.span(n, nullspace(tuple(zip(*op.rows)), n))


def kernel_of_matrix(m: Matrix, ambient: int) -> Subspace:
    """{v : v @ m = 0}; m has `ambient` rows and arbitrary columns."""
    if len(m) != ambient:
        raise DimensionMismatch(f"matrix rows {len(m)} vs ambient {ambient}")
    cols = tuple(zip(*m)) if m and m[0] else ()
    return Subspace.span(ambient, nullspace(cols, ambient))


def common_eigenspace(ops: Sequence[LinearOperator], values: Sequence[Fraction]) -> Subspace:
    """Intersection of the eigenspaces {v : v @ ops[j] = values[j] * v}."""
    if len(ops) != len(values):
        raise DimensionMismatch("one value per operator required")
    if not ops:
        raise DimensionMismatch("at least one operator required")
    n = ops[0].dim
    if any(op.dim != n for op in ops):
        raise DimensionMismatch("operators have different dimensions")
    space = Subspace.full(n)
    for op, val in zip(ops, values):
        shifted = LinearOperator(op.shifted(val))
        space = space.intersect(kernel(shifted))
        if space.is_zero():
            break
    return space


def char_poly(m: Matrix) -> tuple[Fraction, ...]:
    """Coefficients (c_0, ..., c_n) of det(x*I - m), c_n = 1 (Faddeev-LeVerrier)."""
    n = len(m)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = identity_matrix(n)
    for k in range(1, n + 1):
        mk = mat_mul(m, mk)
        tr = sum(mk[i][i] for i in range(n))
        c = -tr / k
        coeffs[n - k] = c
        mk = tuple(
            tuple(e + c if i == j else e for j, e in enumerate(row))
            for i, row in enumerate(mk)
        )
    return tuple(coeffs)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots of the polynomial with the given coefficients.

    Multiplicities are not reported; roots come back sorted.  Uses the
    rational-root theorem on the integer-cleared polynomial.
    """
    from math import lcm

    denom = lcm(*[c.denominator for c in coeffs]) if coeffs else 1
    ints = [int(c * denom) for c in coeffs]
    roots: set[Fraction] = set()
    lo = 0
    while lo < len(ints) and ints[lo] == 0:
        lo += 1
    if lo == len(ints):
        return [ZERO]
    if lo > 0:
        roots.add(ZERO)
    ints = ints[lo:]
    lead = ints[-1]
    trail = ints[0]
    for p in _divisors(trail):
        for q in _divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                acc = ZERO
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return sorted(roots)


def eigen_decompose(op: LinearOperator, op_index: int = 0) -> list[tuple[Fraction, Subspace]]:
    """Rational eigenpairs of one operator; raises NotDiagonalizable if they
    do not span the whole space."""
    n = op.dim
    if n == 0:
        return []
    pairs = []
    total = 0
    for lam in rational_roots(char_poly(op.rows)):
        space = kernel(LinearOperator(op.shifted(lam)))
        if not space.is_zero():
            pairs.append((lam, space))
            total += space.dim
    if total != n:
        raise NotDiagonalizable(op_index)
    return sorted(pairs, key=lambda p: p[0])


def _restrict(op: LinearOperator, space: Subspace, op_index: int) -> LinearOperator:
    """Matrix of op restricted to an invariant subspace, in its RREF basis.

    RREF coordinates of a member vector are just its entries at the pivot
    columns.
    """
    rows = []
    for r in space.rows:
        img = op.apply(r)
        coords = tuple(img[p] for p in space.pivots)
        if mat_apply(coords, space.rows) != img:
            raise LinalgError(f"subspace not invariant under operator {op_index}")
        rows.append(coords)
    return LinearOperator(tuple(rows))


def simultaneous_eigendecomposition(
    ops: Sequence[LinearOperator],
) -> list[tuple[tuple[Fraction, ...], Subspace]]:
    """Joint eigenpairs of pairwise-commuting operators.

    Returns (value-vector, subspace) pairs sorted lexicographically by value
    vector; the subspaces direct-sum to the full space.  Raises NotCommuting
    on a non-commuting pair and NotDiagonalizable when some operator has an
    irrational eigenvalue or a nontrivial Jordan block.
    """
    if not ops:
        raise DimensionMismatch("at least one operator required")
    n = ops[0].dim
    for op in ops:
        if op.dim != n:
            raise DimensionMismatch("operators have different dimensions")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if mat_mul(ops[i].rows, ops[j].rows) != mat_mul(ops[j].rows, ops[i].rows):
                raise NotCommuting(i, j)
    pieces: list[tuple[tuple[Fraction, ...], Subspace]] = [((), Subspace.full(n))]
    for idx, op in enumerate(ops):
        refined = []
        for values, space in pieces:
            if space.dim == 0:
                continue
            sub = _restrict(op, space, idx)
            for lam, eig in eigen_decompose(sub, idx):
                lifted = Subspace.span(n, [mat_apply(r, space.rows) for r in eig.rows])
                refined.append((values + (lam,), lifted))
        pieces = refined
    return sorted(pieces, key=lambda p: p[0])

"""The standard embedding L = L0 (+) L1 of a triple system, and MASAs.

Degree-0 coordinates index ordered pairs (i, j) -> i * n + j (formal
x (x) y symbols); degree-1 coordinates are the n triple-system coordinates,
stored at offset n * n.  The bracket on basis elements:

    [pair(i,j), pair(u,v)] = sum_l c_iju^l pair(l,v) - c_ijv^l pair(l,u)
    [pair(i,j), one(w)]    = sum_l c_ijw^l one(l)
    [one(z),   pair(u,v)]  = sum_l (c_zuv^l - c_zvu^l) one(l)
    [one(z),   one(w)]     = pair(z,w)

The full pair space is redundant; `reduce` quotients by the degree-0 part
of the bracket radical, which realizes the span-with-relations reading of
the degree-0 component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import (
    ONE,
    ZERO,
    LinearOperator,
    Matrix,
    Subspace,
    Vec,
    kernel_of_matrix,
    mat_apply,
    mat_inverse,
    unit_vec,
    zero_vec,
)
from .triple import (
    IdentityReport,
    Sparse,
    TripleSystem,
    sparse_add,
    sparse_from_vec,
    sparse_to_vec,
    verify_identities,
)


class IdentityFailure(Exception):
    """The triple system does not satisfy its defining identities."""


@dataclass(frozen=True)
class GradedLeibnizAlgebra:
    """Two-graded bracket table on dim0 + dim1 coordinates."""

    dim0: int
    dim1: int
    table: dict[tuple[int, int], Sparse] = field(compare=False)

    @property
    def dim(self) -> int:
        return self.dim0 + self.dim1

    def degree(self, coord: int) -> int:
        return 0 if coord < self.dim0 else 1

    def bracket_basis(self, p: int, q: int) -> Sparse:
        return self.table.get((p, q), {})

    def bracket(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for p, cp in x.items():
            for q, cq in y.items():
                c = cp * cq
                for l, e in self.bracket_basis(p, q).items():
                    out[l] = out.get(l, ZERO) + c * e
        return {k: v for k, v in out.items() if v}

    def bracket_vec(self, x: Vec, y: Vec) -> Vec:
        out = self.bracket(sparse_from_vec(x), sparse_from_vec(y))
        return sparse_to_vec(out, self.dim)


def standard_embedding(ts: TripleSystem) -> GradedLeibnizAlgebra:
    """Populate the bracket table of L = L0 (+) L1 from the triple constants."""
    if not verify_identities(ts).passed:
        raise IdentityFailure("triple system fails its defining identities")
    n = ts.dim
    d0 = n * n
    table: dict[tuple[int, int], Sparse] = {}

    def pair(i, j):
        return i * n + j

    for i in range(n):
        for j in range(n):
            pij = pair(i, j)
            for u in range(n):
                cu = ts.prod_basis(i, j, u)
                for v in range(n):
                    out: Sparse = {}
                    for l, c in cu.items():
                        out[pair(l, v)] = out.get(pair(l, v), ZERO) + c
                    for l, c in ts.prod_basis(i, j, v).items():
                        out[pair(l, u)] = out.get(pair(l, u), ZERO) - c
                    out = {k: c for k, c in out.items() if c}
                    if out:
                        table[(pij, pair(u, v))] = out
                if cu:
                    table[(pij, d0 + u)] = {d0 + l: c for l, c in cu.items()}
    for z in range(n):
        for u in range(n):
            for v in range(n):
                out = sparse_add(ts.prod_basis(z, u, v), ts.prod_basis(z, v, u), -ONE)
                if out:
                    table[(d0 + z, pair(u, v))] = {d0 + l: c for l, c in out.items()}
        for w in range(n):
            table[(d0 + z, d0 + w)] = {pair(z, w): ONE}
    return GradedLeibnizAlgebra(d0, n, table)


def verify_embedding(alg: GradedLeibnizAlgebra) -> IdentityReport:
    """Right Leibniz identity on all basis triples plus the four grading
    containments."""
    d = alg.dim
    d0 = alg.dim0
    bad = []
    for (p, q), out in alg.table.items():
        dp, dq = alg.degree(p), alg.degree(q)
        want = (dp + dq) % 2
        for l in out:
            if alg.degree(l) != want:
                bad.append(("grading", (p, q, l)))
    empty: Sparse = {}
    # Precompute rows for fast lookup.
    rows: list[dict[int, Sparse]] = [dict() for _ in range(d)]
    for (p, q), out in alg.table.items():
        rows[p][q] = out
    for y in range(d):
        ry = rows[y]
        for z in range(d):
            byz = ry.get(z)
            rz = rows[z]
            for x in range(d):
                acc: dict[int, Fraction] = {}
                if byz:
                    for p, c in byz.items():
                        for l, e in rows[p].get(x, empty).items():
                            acc[l] = acc.get(l, ZERO) + c * e
                byx = ry.get(x)
                if byx:
                    for p, c in byx.items():
                        for l, e in rows[p].get(z, empty).items():
                            acc[l] = acc.get(l, ZERO) - c * e
                bzx = rz.get(x)
                if bzx:
                    for p, c in bzx.items():
                        for l, e in ry.get(p, empty).items():
                            acc[l] = acc.get(l, ZERO) - c * e
                if any(acc.values()):
                    bad.append(("right-leibniz", (y, z, x)))
    return IdentityReport(d**3, tuple(bad))


def action_kernel(alg: GradedLeibnizAlgebra) -> Subspace:
    """{v : [v, w] = [w, v] = 0 for all degree-1 basis w}.

    These are the formal pair combinations acting as zero on T from both
    sides; the kernel is automatically contained in the degree-0 part
    (a degree-1 component z produces the pair z (x) w in [v, one(w)]).
    Quotienting the degree-0 part by this kernel realizes the span of
    {x (x) y} with its relations, where the right Leibniz identity holds.
    """
    d = alg.dim
    d0 = alg.dim0
    cols: list[list[list[Fraction]]] = []
    for w in range(d0, d):
        right = [[ZERO] * d for _ in range(d)]
        left = [[ZERO] * d for _ in range(d)]
        for p in range(d):
            for l, c in alg.bracket_basis(p, w).items():
                right[p][l] = c
            for l, c in alg.bracket_basis(w, p).items():
                left[p][l] = c
        cols.append(right)
        cols.append(left)
    if not cols:
        return Subspace.full(d)
    m = tuple(tuple(x for block in cols for x in block[p]) for p in range(d))
    return kernel_of_matrix(m, d)


def bracket_radical(alg: GradedLeibnizAlgebra) -> Subspace:
    """{v : [v, w] = [w, v] = 0 for all w}, as a subspace of the full space.

    Vanishing against the degree-1 basis is necessary, so the action
    kernel serves as a candidate; it is then verified against the full
    condition and only re-solved in the general (rare) case.
    """
    d = alg.dim
    d0 = alg.dim0
    candidate = action_kernel(alg)

    def fully_radical(v: Vec) -> bool:
        sv = sparse_from_vec(v)
        for w in range(d):
            ew = {w: ONE}
            if alg.bracket(sv, ew) or alg.bracket(ew, sv):
                return False
        return True

    if all(fully_radical(v) for v in candidate.rows):
        return candidate
    # General fallback: solve the remaining degree-0 constraints inside the
    # candidate subspace.
    rows = []
    for v in candidate.rows:
        sv = sparse_from_vec(v)
        row: list[Fraction] = []
        for w in range(d0):
            ew = {w: ONE}
            row.extend(sparse_to_vec(alg.bracket(sv, ew), d))
            row.extend(sparse_to_vec(alg.bracket(ew, sv), d))
        rows.append(tuple(row))
    coeffs = kernel_of_matrix(tuple(rows), candidate.dim)
    basis = [mat_apply(c, candidate.rows) for c in coeffs.rows]
    return Subspace.span(d, basis)


class QuotientNotClosed(Exception):
    """The bracket does not descend to the quotient by the action kernel."""


@dataclass(frozen=True)
class ReducedEmbedding:
    """Quotient of an embedding by its degree-0 action kernel.

    `kernel` is the subspace quotiented out; `radical` is the (possibly
    smaller) two-sided bracket radical, kept for reporting.  `section`
    holds the quotient basis as rows in unreduced coordinates (degree-0
    complement rows first, then the degree-1 unit vectors); `projection`
    maps unreduced coordinates to quotient coordinates and satisfies
    projection o section = identity.
    """

    original: GradedLeibnizAlgebra
    radical: Subspace
    kernel: Subspace
    quotient: GradedLeibnizAlgebra
    section: Matrix
    projection: Matrix

    def project(self, v: Vec) -> Vec:
        return mat_apply(v, self.projection)

    def lift(self, v: Vec) -> Vec:
        return mat_apply(v, self.section)

    def project_pairs(self, pair_vec: Vec) -> Vec:
        """Project a degree-0 vector given in bare pair coordinates."""
        full = tuple(pair_vec) + zero_vec(self.original.dim1)
        out = self.project(full)
        return out[: self.quotient.dim0]


def reduce(alg: GradedLeibnizAlgebra) -> ReducedEmbedding:
    """Quotient the degree-0 part by the action kernel; degree-1 is kept.

    Well-definedness of the quotient bracket is checked explicitly:
    [k, x] must vanish and [x, k] must fall back into the kernel for
    every kernel vector k and basis direction x.
    """
    d, d0 = alg.dim, alg.dim0
    rad = bracket_radical(alg)
    deg0_space = Subspace.span(d, [unit_vec(d, i) for i in range(d0)])
    rad0 = rad.intersect(deg0_space)
    kern = action_kernel(alg).intersect(deg0_space)
    for k in kern.rows:
        sk = sparse_from_vec(k)
        for x in range(d):
            ex = {x: ONE}
            if alg.bracket(sk, ex):
                raise QuotientNotClosed(f"[kernel, e_{x}] != 0")
            back = alg.bracket(ex, sk)
            if back and not kern.contains_vector(sparse_to_vec(back, d)):
                raise QuotientNotClosed(f"[e_{x}, kernel] leaves the kernel")
    comp = kern.complement_in(deg0_space)
    section = comp.rows + tuple(unit_vec(d, d0 + k) for k in range(alg.dim1))
    # Solve for coordinates: [section; kernel] is a basis of the whole space.
    basis = section + kern.rows
    inv = mat_inverse(basis)
    qdim = len(section)
    projection = tuple(tuple(row[:qdim]) for row in inv)
    qd0 = comp.dim
    table: dict[tuple[int, int], Sparse] = {}
    for p, vp in enumerate(section):
        sp = sparse_from_vec(vp)
        for q, vq in enumerate(section):
            out = alg.bracket(sp, sparse_from_vec(vq))
            if not out:
                continue
            proj = mat_apply(sparse_to_vec(out, d), projection)
            entry = sparse_from_vec(proj)
            if entry:
                table[(p, q)] = entry
    quotient = GradedLeibnizAlgebra(qd0, alg.dim1, table)
    return ReducedEmbedding(alg, rad, kern, quotient, section, projection)


def centralizer(alg: GradedLeibnizAlgebra, h_basis: list[Vec]) -> Subspace:
    """{c in L0 : [c, h] = [h, c] = 0 for every given h}, inside L0 coords."""
    d, d0 = alg.dim, alg.dim0
    blocks = []
    for h in h_basis:
        sh = sparse_from_vec(h)
        right = []
        left = []
        for p in range(d0):
            ep = {p: ONE}
            right.append(sparse_to_vec(alg.bracket(ep, sh), d))
            left.append(sparse_to_vec(alg.bracket(sh, ep), d))
        blocks.append(right)
        blocks.append(left)
    if not blocks:
        return Subspace.full(d0)
    m = tuple(
        tuple(x for block in blocks for x in block[p]) for p in range(d0)
    )
    return kernel_of_matrix(m, d0)


@dataclass(frozen=True)
class MasaVerdict:
    status: str  # VERIFIED | NOT_ABELIAN | NOT_MAXIMAL | INDETERMINATE
    witness: tuple[Vec, ...] = ()


def _square(alg: GradedLeibnizAlgebra, v: Vec) -> Vec:
    return sparse_to_vec(alg.bracket(sparse_from_vec(v), sparse_from_vec(v)), alg.dim)


def _pad0(alg: GradedLeibnizAlgebra, v: Vec) -> Vec:
    """Extend an L0-coordinate vector to full algebra coordinates."""
    return tuple(v) + zero_vec(alg.dim1)


def masa_verify(alg: GradedLeibnizAlgebra, h: Subspace) -> MasaVerdict:
    """Decide whether h (inside the degree-0 coordinates) is a MASA of L0.

    Maximality uses the one-element extension criterion: a strictly larger
    abelian subalgebra must contain some c in C(h) \\ h with [c, c] = 0.
    When the square form is not identically zero on the centralizer and no
    witness shows up among basis vectors and their pairwise sums and
    differences, the verdict is INDETERMINATE rather than a guess.
    """
    d0 = alg.dim0
    basis = [_pad0(alg, r) for r in h.rows]
    for i, x in enumerate(basis):
        for y in basis[i:]:
            sx, sy = sparse_from_vec(x), sparse_from_vec(y)
            if alg.bracket(sx, sy) or alg.bracket(sy, sx):
                return MasaVerdict("NOT_ABELIAN", (x[:d0], y[:d0]))
    cent = centralizer(alg, basis)
    if cent == h:
        return MasaVerdict("VERIFIED")
    outside = [r for r in cent.rows if not h.contains_vector(r)]
    # Polarized square form on the centralizer: identically zero iff all
    # diagonal values and symmetrized off-diagonal brackets vanish.
    form_zero = True
    for i, x in enumerate(cent.rows):
        fx = _pad0(alg, x)
        if any(_square(alg, fx)):
            form_zero = False
            break
        for y in cent.rows[i + 1:]:
            fy = _pad0(alg, y)
            sx, sy = sparse_from_vec(fx), sparse_from_vec(fy)
            if sparse_add(alg.bracket(sx, sy), alg.bracket(sy, sx)):
                form_zero = False
                break
        if not form_zero:
            break
    if form_zero:
        return MasaVerdict("NOT_MAXIMAL", (outside[0],))
    candidates = list(outside)
    for i, x in enumerate(outside):
        for y in outside[i + 1:]:
            candidates.append(tuple(a + b for a, b in zip(x, y)))
            candidates.append(tuple(a - b for a, b in zip(x, y)))
    for c in candidates:
        if h.contains_vector(c):
            continue
        if not any(_square(alg, _pad0(alg, c))):
            # c must also centralize h in both directions; members of the
            # centralizer do by construction, sums/differences too.
            return MasaVerdict("NOT_MAXIMAL", (c,))
    return MasaVerdict("INDETERMINATE")


def masa_search(alg: GradedLeibnizAlgebra) -> tuple[Subspace, MasaVerdict]:
    """Greedy saturation from the first square-zero basis vector of L0."""
    d0 = alg.dim0
    if d0 == 0:
        return Subspace.zero(0), MasaVerdict("VERIFIED")
    seed = None
    for i in range(d0):
        v = unit_vec(d0, i)
        if not any(_square(alg, _pad0(alg, v))):
            seed = v
            break
    if seed is None:
        return Subspace.zero(d0), MasaVerdict("INDETERMINATE")
    h = Subspace.span(d0, [seed])
    while True:
        cent = centralizer(alg, [_pad0(alg, r) for r in h.rows])
        grew = False
        for c in cent.rows:
            if h.contains_vector(c):
                continue
            if any(_square(alg, _pad0(alg, c))):
                continue
            bigger = Subspace.span(d0, h.rows + (c,))
            # Keep abelianness: c centralizes h, but [c, c'] for previously
            # adjoined c' outside h is already covered since all of h's
            # rows span the current candidate subalgebra.
            ok = True
            for r in h.rows:
                sx = sparse_from_vec(_pad0(alg, c))
                sy = sparse_from_vec(_pad0(alg, r))
                if alg.bracket(sx, sy) or alg.bracket(sy, sx):
                    ok = False
                    break
            if ok:
                h = bigger
                grew = True
                break
        if not grew:
            break
    return h, masa_verify(alg, h)

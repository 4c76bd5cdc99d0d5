"""Root space decomposition of T relative to a MASA of the reduced L0.

A Root is the value vector of a linear functional on the fixed ordered
basis of H0 (the stored MASA basis).  T_alpha is the simultaneous
eigenspace of the right-action operators of that basis; L0_delta is the
analogous common eigenspace inside the reduced degree-0 part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .embedding import GradedLeibnizAlgebra, ReducedEmbedding
from .linalg import (
    ONE,
    ZERO,
    LinearOperator,
    Matrix,
    NotDiagonalizable,
    Subspace,
    Vec,
    common_eigenspace,
    simultaneous_eigendecomposition,
)
from .triple import Sparse, TripleSystem, sparse_to_vec

Root = tuple[Fraction, ...]


class NotSplit(Exception):
    """Some right-action operator is not diagonalizable over the rationals."""


def root_add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def root_neg(a: Root) -> Root:
    return tuple(-x for x in a)


def is_zero_root(a: Root) -> bool:
    return not any(a)


def right_action(ts: TripleSystem, h_pairs: Vec) -> LinearOperator:
    """The operator z -> sum coeff * ({z,u,v} - {z,v,u}) on T, for h given
    in unreduced pair coordinates (index (u, v) -> u * dim + v)."""
    n = ts.dim
    rows = []
    for z in range(n):
        row = [ZERO] * n
        for u in range(n):
            for v in range(n):
                c = h_pairs[u * n + v]
                if not c:
                    continue
                for l, e in ts.prod_basis(z, u, v).items():
                    row[l] += c * e
                for l, e in ts.prod_basis(z, v, u).items():
                    row[l] -= c * e
        rows.append(tuple(row))
    return LinearOperator(tuple(rows))


def _deg1_part(alg: GradedLeibnizAlgebra, s: Sparse) -> Vec:
    return tuple(sparse_to_vec(s, alg.dim)[alg.dim0 :])


def _deg0_part(alg: GradedLeibnizAlgebra, s: Sparse) -> Vec:
    return tuple(sparse_to_vec(s, alg.dim)[: alg.dim0])


def _one(alg: GradedLeibnizAlgebra, v: Vec) -> Sparse:
    """A degree-1 vector of length dim1 as a sparse full-algebra element."""
    return {alg.dim0 + i: c for i, c in enumerate(v) if c}


def _deg0(v: Vec) -> Sparse:
    return {i: c for i, c in enumerate(v) if c}


@dataclass(frozen=True)
class SplitStructure:
    """Root decomposition T = T0 (+) (+)_alpha T_alpha for a fixed MASA."""

    system: TripleSystem
    embedding: ReducedEmbedding
    masa_basis: Matrix  # fixed ordered basis in reduced L0 coordinates
    masa: Subspace  # the span of masa_basis, in canonical form
    t_zero: Subspace  # inside T
    roots: tuple[tuple[Root, Subspace], ...]  # nonzero roots, lex sorted
    lambda0_cache: dict[Root, Subspace] = field(default_factory=dict, compare=False)

    @property
    def lambda1(self) -> tuple[Root, ...]:
        return tuple(r for r, _ in self.roots)

    def space_of(self, alpha: Root) -> Subspace | None:
        """T_alpha; T0 for the zero functional; None when alpha is no root."""
        if is_zero_root(alpha):
            return self.t_zero
        for r, s in self.roots:
            if r == alpha:
                return s
        return None

    def l0_root_space(self, delta: Root) -> Subspace:
        """Common eigenspace of the right-bracket operators on reduced L0."""
        if delta in self.lambda0_cache:
            return self.lambda0_cache[delta]
        q = self.embedding.quotient
        if not self.masa_basis:
            out = Subspace.full(q.dim0) if is_zero_root(delta) else Subspace.zero(q.dim0)
        else:
            ops = []
            for h in self.masa_basis:
                sh = _deg0(h)
                rows = tuple(
                    _deg0_part(q, q.bracket({p: ONE}, sh)) for p in range(q.dim0)
                )
                ops.append(LinearOperator(rows))
            out = common_eigenspace(ops, delta)
        self.lambda0_cache[delta] = out
        return out

    def lambda0_candidates(self) -> tuple[Root, ...]:
        """All nonzero pairwise sums over Lambda1 with the zero functional."""
        base = list(self.lambda1) + [tuple([ZERO] * len(self.masa_basis))]
        out = set()
        for a in base:
            for b in base:
                s = root_add(a, b)
                if any(s):
                    out.add(s)
        return tuple(sorted(out))

    def lambda0(self) -> tuple[Root, ...]:
        """Nonzero roots of reduced L0, decided over the candidate set."""
        return tuple(
            d for d in self.lambda0_candidates() if not self.l0_root_space(d).is_zero()
        )


def root_decompose(
    system: TripleSystem, red: ReducedEmbedding, masa_basis: Matrix
) -> SplitStructure:
    """Simultaneous eigendecomposition of T under the MASA's right actions.

    Raises NotSplit when an action is not diagonalizable over the
    rationals, and NotCommuting when the given subspace was not abelian.
    """
    q = red.quotient
    n = q.dim1
    if n != system.dim:
        raise ValueError("embedding does not belong to this system")
    masa_basis = tuple(tuple(r) for r in masa_basis)
    masa = Subspace.span(q.dim0, masa_basis)
    if not masa_basis:
        return SplitStructure(system, red, masa_basis, masa, Subspace.full(n), ())
    ops = []
    for h in masa_basis:
        sh = _deg0(h)
        rows = tuple(
            _deg1_part(q, q.bracket({q.dim0 + z: ONE}, sh)) for z in range(n)
        )
        ops.append(LinearOperator(rows))
    try:
        pieces = simultaneous_eigendecomposition(ops)
    except NotDiagonalizable as e:
        raise NotSplit(
            f"right action of MASA basis vector {e.args[0]} is not "
            "diagonalizable over the rationals"
        )
    t_zero = Subspace.zero(n)
    roots = []
    for values, space in pieces:
        if is_zero_root(values):
            t_zero = space
        else:
            roots.append((values, space))
    return SplitStructure(system, red, masa_basis, masa, t_zero, tuple(roots))


@dataclass(frozen=True)
class ClauseReport:
    """Named boolean verdicts, in a fixed order, with human-readable notes."""

    clauses: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.clauses)

    def failed(self) -> tuple[str, ...]:
        return tuple(name for name, ok, _ in self.clauses if not ok)


def _triple_span_zero(ts: TripleSystem, a: Subspace, b: Subspace, c: Subspace) -> bool:
    for x in a.rows:
        for y in b.rows:
            for z in c.rows:
                if any(ts.triple_product(x, y, z)):
                    return False
    return True


def _bracket_span_deg0(s: SplitStructure, a: Subspace, b: Subspace) -> Subspace:
    """span of degree-0 parts of [one(x), one(y)] in the reduced algebra."""
    q = s.embedding.quotient
    rows = []
    for x in a.rows:
        for y in b.rows:
            rows.append(_deg0_part(q, q.bracket(_one(q, x), _one(q, y))))
    return Subspace.span(q.dim0, rows)


def verify_split(s: SplitStructure) -> ClauseReport:
    """The split-system clauses (a)-(f) for a root decomposition."""
    ts = s.system
    q = s.embedding.quotient
    n = ts.dim
    clauses = []

    total = s.t_zero.dim + sum(sp.dim for _, sp in s.roots)
    whole = s.t_zero
    for _, sp in s.roots:
        whole = whole + sp
    ok_a = total == n and whole == Subspace.full(n)
    clauses.append(("a_completeness", ok_a, f"dim T0 + sum dim T_a = {total} of {n}"))

    ok_b = _triple_span_zero(ts, s.t_zero, s.t_zero, s.t_zero)
    clauses.append(("b_t0_cubed_zero", ok_b, "{T0,T0,T0} = 0"))

    ok_c = True
    bad = []
    for alpha, space in s.roots:
        neg = s.space_of(root_neg(alpha))
        if neg is None or is_zero_root(alpha):
            continue
        if not _triple_span_zero(ts, space, neg, s.t_zero):
            ok_c = False
            bad.append(alpha)
    clauses.append(
        ("c_opposite_t0_zero", ok_c, "{T_a,T_-a,T0} = 0" + ("; failed at " + ", ".join(map(_root_str, bad)) if bad else ""))
    )

    span = _bracket_span_deg0(s, s.t_zero, s.t_zero)
    for alpha, space in s.roots:
        neg = s.space_of(root_neg(alpha))
        if neg is not None and not is_zero_root(alpha):
            span = span + _bracket_span_deg0(s, space, neg)
    ok_d = span == s.masa
    clauses.append(
        ("d_eq3_masa_span", ok_d, f"[T0,T0] + sum [T_a,T_-a] has dim {span.dim}, H0 dim {s.masa.dim}")
    )

    inner = _bracket_span_deg0(s, s.t_zero, s.t_zero)
    ok_e = True
    for t in s.t_zero.rows:
        for b in inner.rows:
            if any(_deg1_part(q, q.bracket(_one(q, t), _deg0(b)))):
                ok_e = False
    clauses.append(("e_eq4_t0_bracket", ok_e, "[T0,[T0,T0]] = 0"))

    lam1 = set(s.lambda1)
    ok_f1 = all(root_neg(a) in lam1 for a in lam1)
    lam0 = s.lambda0()
    ok_f0 = all(not s.l0_root_space(root_neg(d)).is_zero() for d in lam0)
    clauses.append(
        ("f_lambda1_symmetric", ok_f1, "Lambda1 = " + ", ".join(map(_root_str, sorted(lam1))))
    )
    clauses.append(
        ("f_lambda0_symmetric", ok_f0, "Lambda0 = " + ", ".join(map(_root_str, lam0)))
    )

    return ClauseReport(tuple(clauses))


def _deg1_bracket_span(s: SplitStructure, a_rows, b_rows, left_deg0: bool) -> Subspace:
    """span of degree-1 parts of mixed brackets in the reduced algebra."""
    q = s.embedding.quotient
    rows = []
    for x in a_rows:
        sx = _deg0(x) if left_deg0 else _one(q, x)
        for y in b_rows:
            sy = _one(q, y) if left_deg0 else _deg0(y)
            rows.append(_deg1_part(q, q.bracket(sx, sy)))
    return Subspace.span(q.dim1, rows)


def verify_containments(s: SplitStructure) -> ClauseReport:
    """Lemma-style containments (1)-(5) for all root pairs and triples."""
    q = s.embedding.quotient
    zero = tuple([ZERO] * len(s.masa_basis))
    lam1z = [zero] + list(s.lambda1)
    lam0 = s.lambda0()
    lam0z = [zero] + list(lam0)
    checks = []

    def note(tag, roots, ok):
        checks.append((f"{tag}{list(map(_root_str, roots))}", ok, ""))

    for a in lam1z:
        sa = s.space_of(a)
        for b in lam1z:
            sb = s.space_of(b)
            span = _bracket_span_deg0(s, sa, sb)
            if span.is_zero():
                continue
            target = s.l0_root_space(root_add(a, b))
            note("(1) [T,T] in L0 at ", (a, b), target.contains(span))

    for d in lam0z:
        ld = s.l0_root_space(d)
        for a in lam1z:
            sa = s.space_of(a)
            tgt = s.space_of(root_add(d, a))
            span = _deg1_bracket_span(s, ld.rows, sa.rows, left_deg0=True)
            if not span.is_zero():
                note("(2) [L0,T] in T at ", (d, a), tgt is not None and tgt.contains(span))
            span = _deg1_bracket_span(s, sa.rows, ld.rows, left_deg0=False)
            if not span.is_zero():
                note("(3) [T,L0] in T at ", (a, d), tgt is not None and tgt.contains(span))

    for d in lam0z:
        ld = s.l0_root_space(d)
        for g in lam0z:
            lg = s.l0_root_space(g)
            rows = []
            for x in ld.rows:
                for y in lg.rows:
                    rows.append(_deg0_part(q, q.bracket(_deg0(x), _deg0(y))))
            span = Subspace.span(q.dim0, rows)
            if span.is_zero():
                continue
            target = s.l0_root_space(root_add(d, g))
            note("(4) [L0,L0] in L0 at ", (d, g), target.contains(span))

    for a in lam1z:
        sa = s.space_of(a)
        for b in lam1z:
            sb = s.space_of(b)
            for c in lam1z:
                sc = s.space_of(c)
                rows = []
                for x in sa.rows:
                    for y in sb.rows:
                        for z in sc.rows:
                            rows.append(s.system.triple_product(x, y, z))
                span = Subspace.span(s.system.dim, rows)
                if span.is_zero():
                    continue
                tgt = s.space_of(root_add(root_add(a, b), c))
                note("(5) {T,T,T} in T at ", (a, b, c), tgt is not None and tgt.contains(span))

    return ClauseReport(tuple(checks))


def _root_str(a: Root) -> str:
    return "(" + ",".join(str(x) for x in a) + ")"

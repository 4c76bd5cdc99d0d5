"""Class ideals I_[alpha], the complement U, the decomposition
T = U + sum I_[alpha], cross-class vanishing, and the direct-sum corollary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .connect import Lambda0NotSymmetric, RootPartition, equivalence_classes
from .embedding import MasaVerdict, ReducedEmbedding, masa_verify
from .linalg import Matrix, Subspace
from .roots import (
    ClauseReport,
    NotSplit,
    Root,
    SplitStructure,
    _deg0,
    _deg0_part,
    _deg1_part,
    _one,
    is_zero_root,
    root_add,
    root_neg,
    root_decompose,
    verify_split,
)
from .triple import TripleSystem, annihilator, is_ideal, is_simple


class LambdaNotSymmetric(Exception):
    """Lambda1 or Lambda0 fails the symmetry hypothesis of the theorems."""


@dataclass(frozen=True)
class ClassIdeal:
    class_roots: tuple[Root, ...]
    t0_part: Subspace
    v_part: Subspace
    total: Subspace
    ideal_verified: bool


@dataclass(frozen=True)
class DirectSumReport:
    status: str  # HOLDS | FAILS | NOT_APPLICABLE
    ann_dim: int
    ttt_dim: int
    reasons: tuple[str, ...]


@dataclass(frozen=True)
class DecompositionReport:
    split: SplitStructure
    masa_verdict: MasaVerdict
    split_report: ClauseReport
    partition: RootPartition
    classes: tuple[ClassIdeal, ...]
    xi0: Subspace
    u_complement: Subspace
    sum_equals_t: bool
    cross_vanishing: tuple[tuple[str, bool], ...]
    lemma_report: ClauseReport
    simplicity: str  # SIMPLE | NOT_SIMPLE | UNKNOWN...
    simplicity_implication: str  # PASS | FAIL | SKIPPED | NOT_APPLICABLE

    @property
    def passed(self) -> bool:
        return (
            self.split_report.passed
            and all(c.ideal_verified for c in self.classes)
            and self.sum_equals_t
            and all(ok for _, ok in self.cross_vanishing)
            and self.lemma_report.passed
            and self.simplicity_implication != "FAIL"
        )


def _zero_sum_triples(pool: list[Root]) -> list[tuple[Root, Root, Root]]:
    out = []
    for a in pool:
        for b in pool:
            for c in pool:
                if is_zero_root(root_add(root_add(a, b), c)):
                    out.append((a, b, c))
    return out


def _triple_span(s: SplitStructure, triples) -> Subspace:
    ts = s.system
    rows = []
    for a, b, c in triples:
        sa, sb, sc = s.space_of(a), s.space_of(b), s.space_of(c)
        for x in sa.rows:
            for y in sb.rows:
                for z in sc.rows:
                    rows.append(ts.triple_product(x, y, z))
    return Subspace.span(ts.dim, rows)


def xi0(s: SplitStructure) -> Subspace:
    """span{ {T_a,T_b,T_c} : a + b + c = 0 } over Lambda1 with zero; in T0."""
    pool = [_zero(s)] + list(s.lambda1)
    out = _triple_span(s, _zero_sum_triples(pool))
    if not s.t_zero.contains(out):
        raise AssertionError("xi0 escaped T0; the decomposition is inconsistent")
    return out


def _zero(s: SplitStructure) -> Root:
    from .linalg import ZERO

    return tuple([ZERO] * len(s.masa_basis))


def class_ideal(s: SplitStructure, cls: tuple[Root, ...]) -> ClassIdeal:
    pool = [_zero(s)] + list(cls)
    t0_part = _triple_span(s, _zero_sum_triples(pool))
    v_part = Subspace.zero(s.system.dim)
    for a in cls:
        v_part = v_part + s.space_of(a)
    total = t0_part + v_part
    return ClassIdeal(tuple(sorted(cls)), t0_part, v_part, total, is_ideal(s.system, total))


def complement_u(s: SplitStructure) -> Subspace:
    return xi0(s).complement_in(s.t_zero)


def _cross_vanishing(ts: TripleSystem, a: Subspace, b: Subspace) -> tuple[tuple[str, bool], ...]:
    """The three vanishing families {A,T,B}, {A,B,T}, {T,A,B} on basis vectors."""
    full = Subspace.full(ts.dim)
    checks = []
    for name, (p, q, r) in (
        ("{I,T,J}", (a, full, b)),
        ("{I,J,T}", (a, b, full)),
        ("{T,I,J}", (full, a, b)),
    ):
        ok = True
        for x in p.rows:
            for y in q.rows:
                for z in r.rows:
                    if any(ts.triple_product(x, y, z)):
                        ok = False
        checks.append((name, ok))
    return tuple(checks)


def verify_connection_lemmas(s: SplitStructure, partition: RootPartition) -> ClauseReport:
    """Cross-class diagnostics from the decomposition lemmas.

    Covers: bracket vanishing between unconnected roots, the triple
    vanishing {T_a, T_-a, T_b-bar} = 0, the class-closure of products with
    a class root in any slot, and the three bracket statements about
    products over zero-sum class triples.
    """
    q = s.embedding.quotient
    ts = s.system
    clauses = []
    member = {}
    for idx, cls in enumerate(partition.classes):
        for a in cls:
            member[a] = idx

    def cross_pairs():
        for a in s.lambda1:
            for b in s.lambda1:
                if member[a] != member[b]:
                    yield a, b

    ok = True
    for a, b in cross_pairs():
        sa, sb = s.space_of(a), s.space_of(b)
        for x in sa.rows:
            for y in sb.rows:
                if any(_deg0_part(q, q.bracket(_one(q, x), _one(q, y)))):
                    ok = False
    clauses.append(("3.1(5)_bracket_T_T", ok, "[T_a, T_b-bar] = 0 across classes"))

    ok = True
    for a, b in cross_pairs():
        la = s.l0_root_space(a)
        sb = s.space_of(b)
        for x in la.rows:
            for y in sb.rows:
                if any(_deg1_part(q, q.bracket(_deg0(x), _one(q, y)))):
                    ok = False
                if any(_deg1_part(q, q.bracket(_one(q, y), _deg0(x)))):
                    ok = False
    clauses.append(("3.1(5)_bracket_L0_T", ok, "[L0_a, T_b-bar] = [T_b-bar, L0_a] = 0"))

    ok = True
    for a, b in cross_pairs():
        la, lb = s.l0_root_space(a), s.l0_root_space(b)
        for x in la.rows:
            for y in lb.rows:
                if any(_deg0_part(q, q.bracket(_deg0(x), _deg0(y)))):
                    ok = False
    clauses.append(("3.1(5)_bracket_L0_L0", ok, "[L0_a, L0_b-bar] = 0 across classes"))

    ok = True
    for a, b in cross_pairs():
        na = s.space_of(root_neg(a))
        if na is None:
            continue
        for x in s.space_of(a).rows:
            for y in na.rows:
                for z in s.space_of(b).rows:
                    if any(ts.triple_product(x, y, z)):
                        ok = False
    clauses.append(("3.2_triple", ok, "{T_a, T_-a, T_b-bar} = 0 across classes"))

    zero = _zero(s)
    lam1z = [zero] + list(s.lambda1)
    ok = True
    for idx, cls in enumerate(partition.classes):
        in_cls = set(cls) | {zero}
        for a in cls:
            for b in lam1z:
                for c in lam1z:
                    spans = (
                        ((a, b, c), (b, c, root_add(root_add(a, b), c))),
                        ((b, a, c), (b, c, root_add(root_add(b, a), c))),
                        ((b, c, a), (b, c, root_add(root_add(b, c), a))),
                    )
                    for (s1, s2, s3), closure in spans:
                        sp = _triple_span(s, [(s1, s2, s3)])
                        if sp.is_zero():
                            continue
                        if any(r not in in_cls and not is_zero_root(r) for r in closure):
                            ok = False
    clauses.append(("3.3_closure", ok, "nonzero class products stay in the class"))

    ok = True
    for idx, cls in enumerate(partition.classes):
        pool = [zero] + list(cls)
        triples = _zero_sum_triples(pool)
        core = _triple_span(s, triples)
        others = [b for b in s.lambda1 if member[b] != idx]
        for b in others:
            sb = s.space_of(b)
            for x in core.rows:
                for y in sb.rows:
                    if any(_deg0_part(q, q.bracket(_one(q, x), _one(q, y)))):
                        ok = False
            lb = s.l0_root_space(b)
            for x in core.rows:
                for y in lb.rows:
                    if any(_deg1_part(q, q.bracket(_one(q, x), _deg0(y)))):
                        ok = False
            inner = []
            for x in core.rows:
                for t in s.t_zero.rows:
                    inner.append(_deg0_part(q, q.bracket(_one(q, x), _one(q, t))))
            for v in inner:
                for y in sb.rows:
                    if any(_deg1_part(q, q.bracket(_deg0(v), _one(q, y)))):
                        ok = False
    clauses.append(
        ("3.5_products", ok, "[{T_a1,T_a2,T_a3}, off-class] vanishing, all three forms")
    )

    return ClauseReport(tuple(clauses))


def decompose(
    system: TripleSystem, red: ReducedEmbedding, masa_basis: Matrix
) -> DecompositionReport:
    """Full pipeline from a MASA basis to the theorem decomposition.

    Raises NotSplit when the root decomposition fails or the split clauses
    (b)/(c) fail, and LambdaNotSymmetric when either root set is not
    closed under negation.
    """
    h = Subspace.span(red.quotient.dim0, [tuple(r) for r in masa_basis])
    verdict = masa_verify(red.quotient, h)
    split = root_decompose(system, red, masa_basis)
    split_report = verify_split(split)
    failures = dict((name, ok) for name, ok, _ in split_report.clauses)
    if not failures["b_t0_cubed_zero"]:
        raise NotSplit("{T0,T0,T0} != 0")
    if not failures["c_opposite_t0_zero"]:
        raise NotSplit("{T_a,T_-a,T0} != 0")
    if not failures["f_lambda1_symmetric"]:
        raise LambdaNotSymmetric("Lambda1 is not symmetric")
    if not failures["f_lambda0_symmetric"]:
        raise LambdaNotSymmetric("Lambda0 is not symmetric")
    try:
        partition = equivalence_classes(split)
    except Lambda0NotSymmetric as e:
        raise LambdaNotSymmetric(str(e))
    classes = tuple(class_ideal(split, cls) for cls in partition.classes)
    xi = xi0(split)
    u = xi.complement_in(split.t_zero)
    total = u
    for c in classes:
        total = total + c.total
    sum_ok = total == Subspace.full(system.dim)
    cross = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            for name, ok in _cross_vanishing(system, classes[i].total, classes[j].total):
                cross.append((f"[{i}]x[{j}] {name}", ok))
    lemmas = verify_connection_lemmas(split, partition)
    # A light probe is enough for the implication check; UNKNOWN only skips
    # the implication, it never fails it.
    simp = is_simple(system, trials=16)
    if simp.verdict == "SIMPLE":
        implication = "PASS" if len(classes) == 1 else "FAIL"
    elif simp.verdict == "UNKNOWN":
        implication = "SKIPPED"
    else:
        implication = "NOT_APPLICABLE"
    return DecompositionReport(
        split,
        verdict,
        split_report,
        partition,
        classes,
        xi,
        u,
        sum_ok,
        tuple(cross),
        lemmas,
        simp.verdict,
        implication,
    )


def direct_sum_check(ts: TripleSystem, report: DecompositionReport) -> DirectSumReport:
    """The corollary: Ann(T) = 0 and {T,T,T} = T force a direct sum."""
    ann = annihilator(ts)
    rows = []
    for i in range(ts.dim):
        for j in range(ts.dim):
            for k in range(ts.dim):
                prod = ts.prod_basis(i, j, k)
                if prod:
                    rows.append(
                        tuple(prod.get(l, 0) for l in range(ts.dim))
                    )
    ttt = Subspace.span(ts.dim, rows)
    if ann.dim != 0 or ttt != Subspace.full(ts.dim):
        return DirectSumReport(
            "NOT_APPLICABLE",
            ann.dim,
            ttt.dim,
            ("hypotheses fail: Ann(T) = 0 and {T,T,T} = T required",),
        )
    reasons = []
    ok = True
    if report.u_complement.dim != 0:
        ok = False
        reasons.append("U != 0")
    dims = sum(c.total.dim for c in report.classes)
    total = Subspace.zero(ts.dim)
    for c in report.classes:
        total = total + c.total
    if total != Subspace.full(ts.dim) or dims != ts.dim:
        ok = False
        reasons.append("dimensions not additive")
    for i in range(len(report.classes)):
        for j in range(i + 1, len(report.classes)):
            inter = report.classes[i].total.intersect(report.classes[j].total)
            if not inter.is_zero():
                ok = False
                reasons.append(f"classes {i} and {j} intersect")
    return DirectSumReport("HOLDS" if ok else "FAILS", ann.dim, ttt.dim, tuple(reasons))

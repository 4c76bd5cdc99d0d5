"""Connections of roots, connected sets, equivalence classes, and the
subsystems associated to root subsystems.

A connection from alpha to beta is an odd-length family of roots whose
odd prefix sums stay in Lambda1, whose even prefix sums stay in Lambda0,
and whose total lands on beta or -beta.  The search runs over odd-prefix
sums only, which collapses the chain space to at most |Lambda1| states.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .linalg import Subspace, solve_in_rows
from .roots import Root, SplitStructure, is_zero_root, root_add, root_neg
from .triple import Sparse, TripleSystem, sparse_from_vec


class NotARoot(Exception):
    pass


class Lambda0NotSymmetric(Exception):
    pass


class NotRootSubsystem(Exception):
    pass


def _zero_root(s: SplitStructure) -> Root:
    from .linalg import ZERO

    return tuple([ZERO] * len(s.masa_basis))


def _in_lambda0(s: SplitStructure, delta: Root) -> bool:
    return (not is_zero_root(delta)) and not s.l0_root_space(delta).is_zero()


def verify_chain(
    s: SplitStructure, chain: tuple[Root, ...], alpha: Root, beta: Root
) -> bool:
    """Literal check of the three connection conditions."""
    if len(chain) % 2 == 0 or not chain:
        return False
    lam1 = set(s.lambda1)
    allowed = lam1 | {_zero_root(s)}
    if any(entry not in allowed for entry in chain):
        return False
    if chain[0] != alpha or alpha not in lam1:
        return False
    total = chain[0]
    for i, entry in enumerate(chain[1:], start=2):
        total = root_add(total, entry)
        if i % 2 == 0:
            if not _in_lambda0(s, total):
                return False
        else:
            if total not in lam1:
                return False
    return total in (beta, root_neg(beta))


def connect(s: SplitStructure, alpha: Root, beta: Root) -> tuple[Root, ...] | None:
    """Shortest connection chain from alpha to beta, or None.

    BFS over odd-prefix sums; transition candidates are scanned in
    lexicographic order so ties resolve to the lexicographically least
    chain of minimal length.
    """
    lam1 = sorted(s.lambda1)
    if alpha not in s.lambda1:
        raise NotARoot(f"alpha {alpha} is not in Lambda1")
    if beta not in s.lambda1:
        raise NotARoot(f"beta {beta} is not in Lambda1")
    targets = {beta, root_neg(beta)}
    steps = sorted(lam1 + [_zero_root(s)])
    parent: dict[Root, tuple[Root, Root, Root] | None] = {alpha: None}
    queue = deque([alpha])
    lam1_set = set(s.lambda1)
    while queue:
        sigma = queue.popleft()
        if sigma in targets:
            entries = []
            state = sigma
            while parent[state] is not None:
                prev, d, e = parent[state]
                entries.append(e)
                entries.append(d)
                state = prev
            entries.append(alpha)
            return tuple(reversed(entries))
        for d in steps:
            mid = root_add(sigma, d)
            if not _in_lambda0(s, mid):
                continue
            for e in steps:
                nxt = root_add(mid, e)
                if nxt in lam1_set and nxt not in parent:
                    parent[nxt] = (sigma, d, e)
                    queue.append(nxt)
    return None


def connected_set(s: SplitStructure, alpha: Root) -> tuple[Root, ...]:
    """All roots connected to alpha, sorted; always contains alpha and -alpha."""
    if alpha not in s.lambda1:
        raise NotARoot(f"alpha {alpha} is not in Lambda1")
    return tuple(
        sorted(b for b in s.lambda1 if connect(s, alpha, b) is not None)
    )


@dataclass(frozen=True)
class RootPartition:
    classes: tuple[tuple[Root, ...], ...]


def equivalence_classes(s: SplitStructure) -> RootPartition:
    """Partition Lambda1 by connectedness; requires Lambda0 symmetric."""
    for d in s.lambda0():
        if not _in_lambda0(s, root_neg(d)):
            raise Lambda0NotSymmetric(f"{d} in Lambda0 but {root_neg(d)} is not")
    seen: set[Root] = set()
    classes = []
    members: dict[Root, tuple[Root, ...]] = {}
    for a in sorted(s.lambda1):
        if a in seen:
            continue
        cls = connected_set(s, a)
        classes.append(cls)
        for b in cls:
            members[b] = cls
        seen.update(cls)
    # Mutuality of the relation; a failure here is a library defect, not a
    # property of the input.
    for a in s.lambda1:
        for b in members[a]:
            if a not in members[b]:
                raise RuntimeError(f"connection relation not symmetric at {a}, {b}")
    return RootPartition(tuple(classes))


def is_root_subsystem(s: SplitStructure, omega: tuple[Root, ...]) -> bool:
    """Symmetry plus closure under (a + b in Lambda0, a + b + c in Lambda1)."""
    om = set(omega)
    lam1 = set(s.lambda1)
    if not om <= lam1:
        return False
    if any(root_neg(a) not in om for a in om):
        return False
    pool = list(om) + [_zero_root(s)]
    for a in pool:
        for b in pool:
            ab = root_add(a, b)
            if not _in_lambda0(s, ab):
                continue
            for c in pool:
                abc = root_add(ab, c)
                if abc in lam1 and abc not in om:
                    return False
    return True


def subsystem_of(
    s: SplitStructure, omega: tuple[Root, ...]
) -> tuple[Subspace, Subspace, TripleSystem]:
    """T_{0,Omega}, V_Omega, and the restricted triple system.

    The restricted structure constants are expressed in the basis made of
    the T_{0,Omega} rows followed by the root-space rows in sorted root
    order.
    """
    if not is_root_subsystem(s, omega):
        raise NotRootSubsystem(f"{omega} is not a root subsystem")
    ts = s.system
    n = ts.dim
    pool = sorted(set(omega)) + [_zero_root(s)]
    rows = []
    for a in pool:
        sa = s.space_of(a)
        for b in pool:
            sb = s.space_of(b)
            c = root_neg(root_add(a, b))
            sc = s.space_of(c) if (c in set(omega) or is_zero_root(c)) else None
            if sc is None:
                continue
            for x in sa.rows:
                for y in sb.rows:
                    for z in sc.rows:
                        rows.append(ts.triple_product(x, y, z))
    t0_part = Subspace.span(n, rows)
    v_part = Subspace.zero(n)
    for a in sorted(set(omega)):
        v_part = v_part + s.space_of(a)
    basis = list(t0_part.rows)
    for a in sorted(set(omega)):
        basis.extend(s.space_of(a).rows)
    table: dict[tuple[int, int, int], Sparse] = {}
    m = len(basis)
    bmat = tuple(basis)
    for i in range(m):
        for j in range(m):
            for k in range(m):
                out = ts.triple_product(basis[i], basis[j], basis[k])
                coords = solve_in_rows(out, bmat)
                if coords is None:
                    raise NotRootSubsystem("products do not close on the subsystem")
                entry = sparse_from_vec(coords)
                if entry:
                    table[(i, j, k)] = entry
    restricted = TripleSystem(m, tuple(f"v{i}" for i in range(m)), table)
    return t0_part, v_part, restricted

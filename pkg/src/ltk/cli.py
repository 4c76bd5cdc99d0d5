"""Command-line surface for the package.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input or
parse error, 3 NOT_SPLIT or LAMBDA_NOT_SYMMETRIC, 4 an INDETERMINATE or
UNKNOWN verdict is present and --strict was given.
"""

from __future__ import annotations

import argparse
import sys

from .catalogue import BadParam, CatalogueEntry, UnknownName, catalogue
from .connect import Lambda0NotSymmetric, NotARoot, connect
from .decompose import LambdaNotSymmetric, decompose, direct_sum_check
from .embedding import (
    ReducedEmbedding,
    masa_search,
    masa_verify,
    reduce,
    standard_embedding,
    verify_embedding,
)
from .formats import (
    ParseError,
    dumps,
    load_masa,
    load_system,
    save_system,
    serialize_masa,
)
from .linalg import ONE, Matrix, Subspace, Vec, format_rational
from .roots import (
    NotSplit,
    Root,
    root_decompose,
    verify_containments,
    verify_split,
)
from .triple import (
    TripleSystem,
    sparse_from_vec,
    annihilator,
    is_ideal,
    is_lie,
    j_ideal,
    verify_derived_identity,
    verify_identities,
)

EXIT_OK = 0
EXIT_MATH_FAIL = 1
EXIT_PARSE = 2
EXIT_NOT_SPLIT = 3
EXIT_STRICT_UNKNOWN = 4


def _vec_json(v: Vec) -> list[str]:
    return [format_rational(c) for c in v]


def _subspace_json(s: Subspace) -> dict:
    return {
        "ambient": s.ambient,
        "dim": s.dim,
        "basis": [_vec_json(r) for r in s.rows],
    }


def _root_json(r: Root) -> list[str]:
    return [format_rational(c) for c in r]


def _root_str(r: Root) -> str:
    return "(" + ", ".join(format_rational(c) for c in r) + ")"


def _clauses_json(rep) -> list[dict]:
    return [{"name": n, "ok": ok, "note": note} for n, ok, note in rep.clauses]


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        for line in lines:
            print(line)


def _strict_downgrade(args, code: int, unknown_present: bool) -> int:
    if code == EXIT_OK and unknown_present and getattr(args, "strict", False):
        return EXIT_STRICT_UNKNOWN
    return code


def _split_inputs(
    args, ts: TripleSystem
) -> tuple[ReducedEmbedding, Matrix, str]:
    """Reduced embedding, MASA basis in reduced L0 coordinates, and the
    masa_verify status for it."""
    red = reduce(standard_embedding(ts))
    q = red.quotient
    if getattr(args, "auto", False):
        h, verdict = masa_search(q)
        return red, h.rows, verdict.status
    coords, vectors = load_masa(args.masa, ts.dim)
    if coords == "pairs":
        basis = tuple(red.project_pairs(v) for v in vectors)
    else:
        if any(len(v) != q.dim0 for v in vectors):
            raise ParseError(
                f"reduced masa vectors must have length {q.dim0} for this system"
            )
        basis = tuple(vectors)
    verdict = masa_verify(q, Subspace.span(q.dim0, basis))
    return red, basis, verdict.status


def cmd_verify(args) -> int:
    name, ts = load_system(args.file)
    idents = verify_identities(ts)
    derived = verify_derived_identity(ts)
    j = j_ideal(ts)
    j_is_ideal = is_ideal(ts, j)
    j_vanish = True
    for x in range(ts.dim):
        ex = {x: ONE}
        for y in range(ts.dim):
            ey = {y: ONE}
            for r in j.rows:
                sr = sparse_from_vec(r)
                if ts.prod(ex, ey, sr) or ts.prod(ex, sr, ey):
                    j_vanish = False
    lie = is_lie(ts)
    ok = idents.passed and derived.passed and j_is_ideal and j_vanish
    report = {
        "command": "verify",
        "name": name,
        "dim": ts.dim,
        "identities": "PASS" if idents.passed else "FAIL",
        "derived_identity": "PASS" if derived.passed else "FAIL",
        "j_dim": j.dim,
        "j_is_ideal": j_is_ideal,
        "j_products_vanish": j_vanish,
        "lie": lie,
        "violations": [
            {"identity": nm, "indices": list(ix)} for nm, ix in idents.violations
        ],
    }
    _emit(
        args,
        report,
        [
            f"identities: {report['identities']}, J: dim {j.dim}, "
            f"lie: {'true' if lie else 'false'}",
            f"derived identity: {report['derived_identity']}; "
            f"J ideal: {j_is_ideal}; {{T,T,J}} = {{T,J,T}} = 0: {j_vanish}",
        ],
    )
    return EXIT_OK if ok else EXIT_MATH_FAIL


def cmd_embed(args) -> int:
    name, ts = load_system(args.file)
    alg = standard_embedding(ts)
    if args.no_reduce:
        rep = verify_embedding(alg)
        from .embedding import bracket_radical

        rad = bracket_radical(alg)
        report = {
            "command": "embed",
            "name": name,
            "reduced": False,
            "dim0": alg.dim0,
            "dim1": alg.dim1,
            "radical_dim": rad.dim,
            "leibniz": "PASS" if rep.passed else "FAIL",
            "violation_count": len(rep.violations),
        }
        _emit(
            args,
            report,
            [
                f"L0 dim {alg.dim0}, L1 dim {alg.dim1}, radical dim {rad.dim}",
                f"leibniz (unreduced): {report['leibniz']} "
                f"({len(rep.violations)} violations)",
            ],
        )
        return EXIT_OK if rep.passed else EXIT_MATH_FAIL
    red = reduce(alg)
    rep = verify_embedding(red.quotient)
    report = {
        "command": "embed",
        "name": name,
        "reduced": True,
        "dim0": alg.dim0,
        "dim1": alg.dim1,
        "radical_dim": red.radical.dim,
        "kernel_dim": red.kernel.dim,
        "reduced_dim0": red.quotient.dim0,
        "reduced_dim1": red.quotient.dim1,
        "leibniz": "PASS" if rep.passed else "FAIL",
    }
    _emit(
        args,
        report,
        [
            f"L0 dim {alg.dim0}, L1 dim {alg.dim1}, radical dim "
            f"{red.radical.dim}, kernel dim {red.kernel.dim}",
            f"reduced L0 dim {red.quotient.dim0}, L1 dim {red.quotient.dim1}",
            f"leibniz (reduced): {report['leibniz']}",
        ],
    )
    return EXIT_OK if rep.passed else EXIT_MATH_FAIL


def cmd_roots(args) -> int:
    name, ts = load_system(args.file)
    red, basis, masa_status = _split_inputs(args, ts)
    try:
        split = root_decompose(ts, red, basis)
    except NotSplit as e:
        report = {
            "command": "roots",
            "name": name,
            "status": "NOT_SPLIT",
            "reason": str(e),
        }
        _emit(args, report, [f"NOT_SPLIT: {e}"])
        return EXIT_NOT_SPLIT
    split_rep = verify_split(split)
    contain = verify_containments(split)
    clauses = {nm: ok for nm, ok, _ in split_rep.clauses}
    report = {
        "command": "roots",
        "name": name,
        "masa_status": masa_status,
        "masa": [_vec_json(h) for h in basis],
        "t0_dim": split.t_zero.dim,
        "lambda1": [_root_json(r) for r in split.lambda1],
        "lambda0": [_root_json(r) for r in split.lambda0()],
        "root_dims": [
            {"root": _root_json(r), "dim": sp.dim} for r, sp in split.roots
        ],
        "split_clauses": _clauses_json(split_rep),
        "containments_pass": contain.passed,
        "containment_failures": list(contain.failed()),
    }
    lines = [
        f"masa: {masa_status}, dim T0 = {split.t_zero.dim}",
        "Lambda1: " + (", ".join(_root_str(r) for r in split.lambda1) or "(empty)"),
        "Lambda0: " + (", ".join(_root_str(r) for r in split.lambda0()) or "(empty)"),
    ]
    lines += [f"  {nm}: {'PASS' if ok else 'FAIL'}  {note}" for nm, ok, note in split_rep.clauses]
    lines.append(f"containments: {'PASS' if contain.passed else 'FAIL'}")
    _emit(args, report, lines)
    if not clauses["b_t0_cubed_zero"] or not clauses["c_opposite_t0_zero"]:
        return EXIT_NOT_SPLIT
    if not clauses["f_lambda1_symmetric"] or not clauses["f_lambda0_symmetric"]:
        return EXIT_NOT_SPLIT
    if not split_rep.passed or not contain.passed:
        return EXIT_MATH_FAIL
    return _strict_downgrade(args, EXIT_OK, masa_status == "INDETERMINATE")


def cmd_connect(args) -> int:
    name, ts = load_system(args.file)
    red, basis, masa_status = _split_inputs(args, ts)
    try:
        split = root_decompose(ts, red, basis)
    except NotSplit as e:
        _emit(
            args,
            {"command": "connect", "name": name, "status": "NOT_SPLIT", "reason": str(e)},
            [f"NOT_SPLIT: {e}"],
        )
        return EXIT_NOT_SPLIT
    lam1 = sorted(split.lambda1)
    if not (0 <= args.from_k < len(lam1)) or not (0 <= args.to_k < len(lam1)):
        raise ParseError(
            f"root indices must lie in 0..{len(lam1) - 1} "
            f"(sorted Lambda1 has {len(lam1)} roots)"
        )
    alpha, beta = lam1[args.from_k], lam1[args.to_k]
    try:
        chain = connect(split, alpha, beta)
    except NotARoot as e:
        raise ParseError(str(e))
    report = {
        "command": "connect",
        "name": name,
        "masa_status": masa_status,
        "from": _root_json(alpha),
        "to": _root_json(beta),
        "connected": chain is not None,
        "chain": [_root_json(r) for r in chain] if chain is not None else None,
    }
    if chain is None:
        lines = [f"{_root_str(alpha)} -> {_root_str(beta)}: NONE"]
    else:
        lines = [
            f"{_root_str(alpha)} -> {_root_str(beta)}: "
            + " , ".join(_root_str(r) for r in chain)
        ]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_decompose(args) -> int:
    name, ts = load_system(args.file)
    red, basis, masa_status = _split_inputs(args, ts)
    try:
        rep = decompose(ts, red, basis)
    except NotSplit as e:
        _emit(
            args,
            {"command": "decompose", "name": name, "status": "NOT_SPLIT", "reason": str(e)},
            [f"NOT_SPLIT: {e}"],
        )
        return EXIT_NOT_SPLIT
    except (LambdaNotSymmetric, Lambda0NotSymmetric) as e:
        _emit(
            args,
            {
                "command": "decompose",
                "name": name,
                "status": "LAMBDA_NOT_SYMMETRIC",
                "reason": str(e),
            },
            [f"LAMBDA_NOT_SYMMETRIC: {e}"],
        )
        return EXIT_NOT_SPLIT
    ds = direct_sum_check(ts, rep)
    report = {
        "command": "decompose",
        "name": name,
        "system": {"dim": ts.dim},
        "masa": [_vec_json(h) for h in rep.split.masa_basis],
        "masa_status": masa_status,
        "t0": _subspace_json(rep.split.t_zero),
        "roots": [_root_json(r) for r in rep.split.lambda1],
        "lambda0": [_root_json(r) for r in rep.split.lambda0()],
        "classes": [
            {
                "roots": [_root_json(r) for r in c.class_roots],
                "t0_part": _subspace_json(c.t0_part),
                "v_part": _subspace_json(c.v_part),
                "ideal_verified": c.ideal_verified,
            }
            for c in rep.classes
        ],
        "xi0": _subspace_json(rep.xi0),
        "u": _subspace_json(rep.u_complement),
        "sum_equals_T": rep.sum_equals_t,
        "cross_vanishing": [{"check": nm, "ok": ok} for nm, ok in rep.cross_vanishing],
        "lemma_clauses": _clauses_json(rep.lemma_report),
        "split_clauses": _clauses_json(rep.split_report),
        "simplicity": rep.simplicity,
        "simplicity_implication": rep.simplicity_implication,
        "direct_sum": {
            "status": ds.status,
            "ann_dim": ds.ann_dim,
            "ttt_dim": ds.ttt_dim,
            "reasons": list(ds.reasons),
        },
    }
    lines = [
        f"masa: {masa_status}, classes: {len(rep.classes)}, "
        f"dim U = {rep.u_complement.dim}",
        "classes: "
        + (
            "; ".join(
                "{" + ", ".join(_root_str(r) for r in c.class_roots) + "}"
                + f" ideal dim {c.total.dim} verified={c.ideal_verified}"
                for c in rep.classes
            )
            or "(none)"
        ),
        f"U + sum I = T: {rep.sum_equals_t}; "
        f"cross-vanishing: {all(ok for _, ok in rep.cross_vanishing)}; "
        f"lemmas: {rep.lemma_report.passed}",
        f"simplicity: {rep.simplicity} (implication {rep.simplicity_implication})",
        f"direct sum: {ds.status}"
        + (f" ({'; '.join(ds.reasons)})" if ds.reasons else ""),
    ]
    _emit(args, report, lines)
    if not rep.passed:
        return EXIT_MATH_FAIL
    if ds.status == "FAILS":
        return EXIT_MATH_FAIL
    unknown = rep.simplicity == "UNKNOWN" or masa_status == "INDETERMINATE"
    return _strict_downgrade(args, EXIT_OK, unknown)


def cmd_ann(args) -> int:
    name, ts = load_system(args.file)
    ann = annihilator(ts)
    report = {
        "command": "ann",
        "name": name,
        "dim": ts.dim,
        "annihilator": _subspace_json(ann),
    }
    _emit(args, report, [f"Ann(T): dim {ann.dim} of {ts.dim}"])
    return EXIT_OK


def cmd_gen(args) -> int:
    entry: CatalogueEntry = catalogue(args.name)
    save_system(args.out, entry.system, entry.name)
    lines = [f"wrote {args.out} ({entry.system.dim}-dim system {entry.name})"]
    masa_out = None
    if args.masa_out:
        if not entry.masa_pairs:
            raise ParseError(f"catalogue entry {args.name} ships no canonical MASA")
        with open(args.masa_out, "w", encoding="utf-8") as fh:
            fh.write(
                dumps(
                    serialize_masa(
                        list(entry.masa_pairs), entry.system.dim, coords="pairs"
                    )
                )
            )
        masa_out = args.masa_out
        lines.append(f"wrote {args.masa_out} ({len(entry.masa_pairs)}-dim MASA)")
    _emit(
        args,
        {
            "command": "gen",
            "name": entry.name,
            "dim": entry.system.dim,
            "out": args.out,
            "masa_out": masa_out,
        },
        lines,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ltk", description="Exact computations with Leibniz triple systems."
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("verify", cmd_verify, "check the defining identities and the J ideal")
    p.add_argument("file")

    p = add("embed", cmd_embed, "build and verify the standard embedding")
    p.add_argument("file")
    p.add_argument("--no-reduce", action="store_true", help="verify the free embedding")

    def masa_opts(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--masa", help="MASA file (ltk-masa-v1)")
        g.add_argument("--auto", action="store_true", help="search for a MASA")

    p = add("roots", cmd_roots, "root space decomposition and split verification")
    p.add_argument("file")
    masa_opts(p)
    p.add_argument("--strict", action="store_true")

    p = add("connect", cmd_connect, "find a connection chain between two roots")
    p.add_argument("file")
    masa_opts(p)
    p.add_argument("--from", dest="from_k", type=int, required=True, metavar="K")
    p.add_argument("--to", dest="to_k", type=int, required=True, metavar="K2")

    p = add("decompose", cmd_decompose, "the full decomposition T = U + sum I")
    p.add_argument("file")
    masa_opts(p)
    p.add_argument("--strict", action="store_true")

    p = add("ann", cmd_ann, "annihilator of the triple system")
    p.add_argument("file")

    p = add("gen", cmd_gen, "write a catalogue instance to a file")
    p.add_argument("name")
    p.add_argument("--out", required=True)
    p.add_argument("--masa-out", help="also write the canonical MASA, if any")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (UnknownName, BadParam) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 usage or
dimension error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .bench import run_bench
from .errors import SegreCubeError
from .kets import ParseError, ket, parse_order, permute_qubits, pretty_scalar, pretty_state
from .observables import ENGINES, EPS_J
from .reproduce import format_table, reproduce_all, table_document
from .segre import classify
from .segre.varieties import SegreShape, generalized_segre_embed, membership
from .state import ProjectivePoint, from_amplitudes, projective_point
from .verify import lemma_suite, run_suites

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for ket syntax errors here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dumps(doc) -> str:
    # json writes floats with repr, the shortest string that round-trips
    return json.dumps(doc, indent=2, allow_nan=True)


# --- analyze ---------------------------------------------------------------


def analysis_document(expression: str, order: Optional[str], engine: str, epsilon: float) -> dict:
    psi = ket(expression)
    perm = None
    if order:
        perm = parse_order(order, psi.n)
        psi = permute_qubits(psi, perm)
    start = time.perf_counter()
    c = classify(psi, epsilon=epsilon, engine=engine)
    elapsed = time.perf_counter() - start
    tree = c.tree
    return {
        "input": {"expression": expression, "order": order, "permutation": list(perm) if perm else None},
        "n": psi.n,
        "order": order,
        "engine": engine,
        "epsilon": epsilon,
        "values": list(c.report.values),
        "average": c.report.average,
        "q": c.q,
        "vanishing_cuts": list(c.vanishing),
        "vertex": str(c.vertex),
        "spans": [list(s) for s in tree.spans] if tree else [[1, psi.n]],
        "factors": [pretty_state(f) for f in tree.factors] if tree else None,
        "residual": tree.residual if tree else 0.0,
        "timings": {engine: elapsed},
    }


def format_analysis(doc: dict) -> list[str]:
    lines = [f"state    {doc['input']['expression']}"]
    if doc["order"]:
        lines.append(f"order    {doc['order']}  (permutation {doc['input']['permutation']})")
    lines.append(f"n        {doc['n']}")
    lines.append(f"engine   {doc['engine']}  ({doc['timings'][doc['engine']] * 1e3:.3f} ms)")
    for ell, value in enumerate(doc["values"], start=1):
        mark = "  vanishes" if ell in doc["vanishing_cuts"] else ""
        lines.append(f"J_{doc['n']},{ell:<4} {value!r}{mark}")
    lines.append(f"average  {doc['average']!r}")
    lines.append(f"q        {doc['q']}")
    lines.append(f"vertex   {doc['vertex']}")
    spans = " ".join(f"[{a}..{b}]" if a != b else f"[{a}]" for a, b in doc["spans"])
    lines.append(f"spans    {spans}")
    if doc["factors"]:
        for (a, b), text in zip(doc["spans"], doc["factors"]):
            lines.append(f"  qubits {a}-{b}: {text}")
        lines.append(f"residual {doc['residual']!r}")
    else:
        lines.append("factors  none (genuinely entangled in this order)")
    return lines


def _expressions(args) -> list[str]:
    exprs = []
    if args.state:
        exprs.append(args.state)
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if line:
                    exprs.append(line)
    if not exprs:
        raise UsageError("analyze needs --state or --file")
    return exprs


def cmd_analyze(args) -> int:
    if not args.epsilon > 0:
        raise UsageError("--epsilon must be positive")
    docs = [analysis_document(e, args.order, args.engine, args.epsilon) for e in _expressions(args)]
    if args.json:
        print(_dumps(docs[0] if len(docs) == 1 else docs))
    else:
        print("\n\n".join("\n".join(format_analysis(d)) for d in docs))
    return EXIT_OK


# --- tables ----------------------------------------------------------------


def cmd_tables(args) -> int:
    results = reproduce_all()
    if args.json:
        print(_dumps({"passed": all(r.passed for r in results),
                      "tables": [table_document(r) for r in results]}))
    else:
        blocks = ["\n".join(format_table(r)) for r in results]
        failed = [r.table.key for r in results if not r.passed]
        summary = "all tables PASS" if not failed else f"FAIL in: {', '.join(failed)}"
        print("\n\n".join(blocks + [summary]))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# --- verify ----------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    suites = run_suites(args.n, args.trials, args.seed)
    if args.lemma_dims:
        suites.append(lemma_suite(args.trials, tuple(args.lemma_dims), args.seed))
    for s in suites:
        print(f"{'PASS' if s.ok else 'FAIL'}  {s.line()}")
    return EXIT_OK if all(s.ok for s in suites) else EXIT_FAIL


# --- bench -----------------------------------------------------------------


def cmd_bench(args) -> int:
    psi = ket(args.state) if args.state else None
    res = run_bench(args.n, args.ell, args.reps, args.seed, psi)
    print(f"n={res.n} ell={res.ell} reps={res.reps} seed={res.seed}")
    print(f"{'engine':<8} {'J':>22} {'total s':>10} {'per call s':>12} {'calls/s':>10}")
    for t in res.timings:
        print(f"{t.engine:<8} {t.value!r:>22} {t.seconds:>10.4f} {t.per_call:>12.3e} {t.ops_per_sec:>10.1f}")
    print(f"max engine deviation {res.max_deviation:.2e} ({'agree' if res.agree else 'DISAGREE'})")
    if res.reps:
        print(f"pauli/purity time ratio {res.ratio:.1f}")
    return EXIT_OK if res.agree else EXIT_FAIL


# --- embed -----------------------------------------------------------------


def cmd_embed(args) -> int:
    states = [ket(e) for e in args.points]
    parts = [s.n for s in states]
    shape = SegreShape.qubits(parts)
    image = generalized_segre_embed([projective_point(s) for s in states], shape)
    coords = ProjectivePoint(image.affine())
    print("[" + ":".join(pretty_scalar(complex(z)) for z in coords.coords) + "]")
    inside, worst = membership(image, shape)
    c = classify(from_amplitudes(image.coords))
    print(f"shape {tuple(parts)} in P^{shape.target_dim}: member={inside} (worst minor {worst:.1e})")
    print(f"analysis of the image: q={c.q}, vanishing cuts {list(c.vanishing)}")
    ok = inside and c.q >= len(parts)
    return EXIT_OK if ok else EXIT_FAIL


# --- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="segrecube", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="observables, partite count and factors of a state")
    p.add_argument("--state", help="ket expression, e.g. '1/sqrt(2)(|00>+|11>)'")
    p.add_argument("--file", help="file with one expression per line, '#' starts a comment")
    p.add_argument("--order", help="qubit reading order, e.g. ACB or 1,3,2")
    p.add_argument("--engine", choices=ENGINES, default="purity")
    p.add_argument("--epsilon", type=float, default=EPS_J)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tables", help="recompute the reference tables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="seeded equivalence and lemma suites")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--lemma-dims", type=int, nargs=3, metavar="K",
                   help="also run the tripartite lemma at these projective dimensions")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the Pauli-sum engine against the purity engine")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="seed of the Haar-random state")
    p.add_argument("--state", help="bench this ket expression instead of a random state")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("embed", help="generalized Segre image of several states")
    p.add_argument("points", nargs="+", help="one ket expression per factor")
    p.set_defaults(func=cmd_embed)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, SegreCubeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

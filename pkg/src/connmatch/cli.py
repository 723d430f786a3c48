"""Command line entry point: ``connmatch <command> ...``.

Results go to stdout as JSON.  Exit codes: 0 success/holds, 1 counterexample
or failed check, 2 inconclusive, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import extremal, stability, verify
from .gallai_edmonds import ge_decompose, verify_ge
from .graph import GraphError, MultipartiteSpec, load_graph
from .matching import alpha_star, konig_cover, max_matching, multipartite_matching_bound

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _read_json(path: str) -> dict:
    raw = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def _graph(path: str):
    try:
        return load_graph(_read_json(path))
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--force", action="store_true")
    p.add_argument("--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="connmatch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("alpha-star", "matching"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--graph", required=True)
        p.add_argument("--color", type=int, default=1)

    p = sub.add_parser("ge", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--color", type=int, default=1)
    p.add_argument("--restrict", type=_ints, default=None)
    p.add_argument("--check", action="store_true", help="also run the structural checker")

    p = sub.add_parser("konig", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--color", type=int, default=1)
    p.add_argument("--left", type=_ints, required=True)
    p.add_argument("--right", type=_ints, required=True)

    p = sub.add_parser("bound", parents=[common])
    p.add_argument("--parts", type=_ints, required=True)
    p.add_argument("--defect", type=int, default=0)

    ext = sub.add_parser("extremal").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = ext.add_parser("fig1", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p = ext.add_parser("fig2", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p = ext.add_parser("bad", parents=[common])
    p.add_argument("--kind", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parts", type=_ints, required=True)
    p = ext.add_parser("search3", parents=[common])
    p.add_argument("--n", type=int, required=True)

    ver = sub.add_parser("verify").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = ver.add_parser("thm2", parents=[common])
    p.add_argument("--parts", type=_ints, required=True)
    p.add_argument("--x", type=_ints, required=True)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p = ver.add_parser("thm3", parents=[common])
    p.add_argument("--x", type=_ints, required=True)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p = ver.add_parser("necessity", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--n1", type=_ints, default=None)

    st = sub.add_parser("stability").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = st.add_parser("suitable", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", required=True)
    p = st.add_parser("check", parents=[common])
    p.add_argument("--cert", required=True)
    p.add_argument("--graph", help="graph JSON; defaults to the 'graph' entry of the certificate file")
    p.add_argument("--overlap", choices=("per_color", "exclusive"), default="per_color")
    p = st.add_parser("search", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--overlap", choices=("per_color", "exclusive"), default="per_color")
    p = st.add_parser("audit", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--lambda-factor", default="68")
    return parser


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _note(args, text: str) -> None:
    if args.verbose:
        print(text, file=sys.stderr)


def _budget(args, default: int) -> int:
    return default if args.budget is None else args.budget


def _run(args) -> int:
    cmd = args.command
    if cmd in ("alpha-star", "matching"):
        g = _graph(args.graph)
        fn = alpha_star if cmd == "alpha-star" else max_matching
        cert = fn(g, args.color)
        _emit(cert.to_dict())
        _note(args, f"{cmd} color {args.color}: {cert.size}")
        return EXIT_OK
    if cmd == "ge":
        g = _graph(args.graph)
        dec = ge_decompose(g, args.color, args.restrict)
        out = dec.to_dict()
        code = EXIT_OK
        if args.check:
            rep = verify_ge(dec, g, args.color, seed=args.seed)
            out["check"] = rep.to_dict()
            code = EXIT_OK if rep.passed else EXIT_FAIL
        _emit(out)
        return code
    if cmd == "konig":
        g = _graph(args.graph)
        m, c = konig_cover(g, args.left, args.right, args.color)
        _emit({**m.to_dict(), **c.to_dict()})
        return EXIT_OK
    if cmd == "bound":
        _emit({"bound": multipartite_matching_bound(args.parts, args.defect)})
        return EXIT_OK
    if cmd == "extremal":
        return _extremal(args)
    if cmd == "verify":
        return _verify(args)
    if cmd == "stability":
        return _stability(args)
    raise UsageError(f"unknown command {cmd}")


def _extremal(args) -> int:
    if args.action == "fig1":
        _emit(extremal.figure1_coloring(args.n).to_dict())
        return EXIT_OK
    if args.action == "fig2":
        _emit(extremal.figure2_coloring(args.n, args.n1).to_dict())
        return EXIT_OK
    if args.action == "bad":
        host = MultipartiteSpec(tuple(args.parts))
        g, cert = extremal.bad_partition_witness(args.kind, args.n, host)
        _emit({**g.to_dict(), "certificate": cert.to_dict()})
        return EXIT_OK
    outcome = extremal.search_3color_lower_bound(
        args.n, budget=_budget(args, 200_000), seed=args.seed, threads=args.threads
    )
    if outcome.found:
        _emit({**outcome.graph.to_dict(), "search": {k: v for k, v in outcome.to_dict().items() if k != "graph"}})
        return EXIT_OK
    _emit(outcome.to_dict())
    return EXIT_INCONCLUSIVE


def _verify(args) -> int:
    budget = _budget(args, verify.DEFAULT_ENUMERATION_BUDGET)
    if args.action == "necessity":
        rep = verify.necessity_sweep(args.n, args.which, args.n1)
        _emit(rep.to_dict())
        return rep.exit_code
    if args.action == "thm2":
        if len(args.x) != 2:
            raise UsageError("--x needs two values x1,x2")
        spec = MultipartiteSpec(tuple(args.parts))
        try:
            rep = verify.verify_thm2(spec, *args.x, mode=args.mode, budget=budget,
                                     seed=args.seed, threads=args.threads, force=args.force)
        except verify.PreconditionError as exc:
            raise UsageError(f"preconditions fail ({exc}); pass --force to run anyway")
    else:
        if len(args.x) != 3:
            raise UsageError("--x needs three values x1,x2,x3")
        rep = verify.verify_thm3(*args.x, mode=args.mode, budget=budget,
                                 seed=args.seed, threads=args.threads)
    _emit(rep.to_dict(include_time=False))
    _note(args, f"{rep.statement} {rep.params}: {rep.outcome} after "
                f"{rep.colorings_checked} colorings in {rep.wall_time:.2f}s")
    return rep.exit_code


def _stability(args) -> int:
    if args.action == "check":
        data = _read_json(args.cert)
        cert_data = data.get("certificate", data)
        if args.graph:
            g = _graph(args.graph)
        elif "edges" in data:
            g = _graph(args.cert)
        else:
            raise UsageError("certificate file has no graph; pass --graph")
        cert = stability.BadPartitionCertificate.from_dict(cert_data)
        try:
            res = stability.check_bad_partition(g, cert.n, cert, args.overlap)
        except stability.PartitionError as exc:
            raise UsageError(str(exc))
        _emit(res.to_dict())
        return EXIT_OK if res.passed else EXIT_FAIL

    g = _graph(args.graph)
    if args.action == "suitable":
        params = stability.SuitabilityParams(args.n, g.spec.s, stability.as_fraction(args.eps))
        rep = stability.check_suitability(g, params)
        _emit(rep.to_dict())
        return EXIT_OK if rep.suitable else EXIT_FAIL
    if args.action == "search":
        res = stability.search_bad_partition(g, args.n, stability.as_fraction(args.lam),
                                             overlap_policy=args.overlap)
        _emit(res.to_dict())
        return {"found": EXIT_OK, "not-found": EXIT_FAIL}.get(res.outcome, EXIT_INCONCLUSIVE)
    rep = stability.audit_stability(g, args.n, stability.as_fraction(args.gamma),
                                    stability.as_fraction(args.eps),
                                    stability.as_fraction(args.lambda_factor))
    _emit(rep.to_dict())
    if not rep.probative:
        _note(args, "constants outside the guaranteed regime; result is non-probative")
    return {"hypothesis-not-met": EXIT_OK, "bad-partition-found": EXIT_OK,
            "no-bad-partition": EXIT_FAIL}.get(rep.outcome, EXIT_INCONCLUSIVE)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: generate families, pick centers, run oracles, verify, bench.

Machine-readable output is one JSON record per line on stdout; human-readable
summaries go to stderr so the two streams can be consumed independently.
Exit codes: 0 ok, 1 malformed input or bad parameters, 2 infeasible girth
parameter, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from .center import GTooBigError, certify
from .embed import GraphFormatError, PlaneGraph, connect_components
from .gen import (
    gen_lowerbound_H,
    gen_nested_cycles,
    gen_prism_grid,
    gen_random_triangulation,
)
from .graphio import dump_plane_graph, dumps_plane_graph, load_plane_graph
from .oracle import diameter_exact, full_oracle_report, radius_exact, verify_certificate

__all__ = ["main"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFY = 3

THREADS_ENV = "PEELBOUND_THREADS"

FAMILIES = ("nested", "lowerbound-h", "prism", "random")

# Exact-oracle annotation checks are quadratic-ish; stay at desk scale.
ANNOTATION_ORACLE_LIMIT = 2000


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")


def _say(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            _say(f"warning: ignoring non-integer {THREADS_ENV}={raw!r}")
    return 1


def _load_graph(path: str) -> PlaneGraph:
    try:
        if path == "-":
            return load_plane_graph(sys.stdin)
        return load_plane_graph(path)
    except (OSError, json.JSONDecodeError, GraphFormatError, KeyError, ValueError) as exc:
        _say(f"error: cannot read graph from {path}: {exc}")
        raise SystemExit(EXIT_INPUT)


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------


def _build_family(family: str, args: argparse.Namespace) -> PlaneGraph:
    if family == "nested":
        if args.g is None or args.k is None:
            raise ValueError("nested requires --g and --k")
        return gen_nested_cycles(args.g, args.k)
    if family == "lowerbound-h":
        if args.g is None or args.k is None:
            raise ValueError("lowerbound-h requires --g and --k")
        return gen_lowerbound_H(args.g, args.k)
    if family == "prism":
        if args.k is None:
            raise ValueError("prism requires --k")
        return gen_prism_grid(args.k)
    if family == "random":
        if args.n is None:
            raise ValueError("random requires --n")
        return gen_random_triangulation(args.n, args.seed)
    raise ValueError(f"unknown family {family!r}")


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        g = _build_family(args.family, args)
    except ValueError as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT
    if args.out:
        dump_plane_graph(g, args.out)
        _emit(
            {
                "command": "generate",
                "family": args.family,
                "n": g.n,
                "m": g.m,
                "out": args.out,
            }
        )
    else:
        text = dumps_plane_graph(g)
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    _say(f"generate {args.family}: n={g.n} m={g.m} -> {args.out or 'stdout'}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# center
# ---------------------------------------------------------------------------


def cmd_center(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    if not g.connected:
        g = connect_components(g)
    gval: Optional[int] = None
    if args.g != "auto":
        try:
            gval = int(args.g)
        except ValueError:
            _say(f"error: --g must be 'auto' or an integer, got {args.g!r}")
            return EXIT_INPUT
    t0 = time.perf_counter()
    try:
        cert = certify(g, g=gval, method=args.mode)
    except GTooBigError as exc:
        _say(f"error: girth parameter infeasible for this graph: {exc}")
        return EXIT_INFEASIBLE
    except ValueError as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT
    elapsed = time.perf_counter() - t0
    _emit(
        {
            "command": "center",
            "input": args.graph,
            "mode": args.mode,
            "n": g.n,
            "m": g.m,
            "certificate": cert.to_dict(),
            "peel_bound": int(cert.peel_bound),
            "seconds": round(elapsed, 6),
        }
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(cert.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    _say(
        f"center {cert.center} (case {cert.case}, g={cert.g}): "
        f"eccentricity <= {cert.bound}, peels from face {cert.outerface} <= {cert.peel_bound}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    threads = args.threads if args.threads is not None else _default_threads()
    report = full_oracle_report(g, fence_budget=args.budget, threads=threads)
    record = {"command": "oracle", "input": args.graph, "threads": threads}
    record.update(report.to_dict())
    _emit(record)
    fence = "skipped" if report.fence_girth_skipped else report.fence_girth
    _say(
        f"oracle: n={report.n} fse={report.fse_outerplanarity} "
        f"(best outerface {report.best_outerface}), rad={report.radius} "
        f"diam={report.diameter}, fence-girth={fence}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _annotation_checks(g: PlaneGraph, cert: dict) -> list[tuple[str, bool, str]]:
    """Cross-check certificate claims against the bounds the generator
    promised in the graph metadata."""
    checks: list[tuple[str, bool, str]] = []
    meta = g.meta or {}
    if "fse_at_least" in meta and cert.get("bound") is not None:
        floor = int(meta["fse_at_least"])
        peel_bound = int(cert["bound"]) + 1
        checks.append(
            (
                "family-fse-floor",
                peel_bound >= floor,
                f"certified peel bound {peel_bound} vs family minimum {floor}",
            )
        )
    if g.n <= ANNOTATION_ORACLE_LIMIT and g.connected:
        if "diam_at_most" in meta:
            diam = diameter_exact(g)
            checks.append(
                (
                    "family-diameter",
                    diam <= int(meta["diam_at_most"]),
                    f"diameter {diam} vs promised <= {meta['diam_at_most']}",
                )
            )
        if "rad_at_least" in meta:
            _, rad = radius_exact(g)
            checks.append(
                (
                    "family-radius",
                    rad >= int(meta["rad_at_least"]),
                    f"radius {rad} vs promised >= {meta['rad_at_least']}",
                )
            )
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        with open(args.cert, encoding="utf-8") as fh:
            cert = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        _say(f"error: cannot read certificate from {args.cert}: {exc}")
        return EXIT_INPUT
    if not isinstance(cert, dict):
        _say("error: certificate file must hold a JSON object")
        return EXIT_INPUT
    report = verify_certificate(cert, g)
    checks = list(report.checks) + _annotation_checks(g, cert)
    ok = all(passed for _, passed, _ in checks)
    _emit(
        {
            "command": "verify",
            "input": args.graph,
            "certificate": args.cert,
            "ok": ok,
            "checks": [
                {"name": name, "ok": passed, "detail": detail}
                for name, passed, detail in checks
            ],
        }
    )
    for name, passed, detail in checks:
        _say(f"  [{'pass' if passed else 'FAIL'}] {name}: {detail}")
    _say("verify: OK" if ok else "verify: FAILED")
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def _parse_sizes(raw: Optional[str], flag: str) -> list[int]:
    if not raw:
        raise ValueError(f"bench requires {flag} with a comma-separated size list")
    try:
        sizes = [int(tok) for tok in str(raw).split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"bad size list {raw!r}")
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"bad size list {raw!r}")
    return sizes


def _bench_instance(family: str, size: int, seed: int, g_param: int) -> PlaneGraph:
    if family == "random":
        return gen_random_triangulation(size, seed)
    if family == "prism":
        return gen_prism_grid(size)
    if family == "nested":
        return connect_components(gen_nested_cycles(g_param, size))
    raise ValueError(f"family {family!r} not benchable")


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        if args.family == "random":
            sizes = _parse_sizes(args.n, "--n")
        else:
            sizes = _parse_sizes(args.k, "--k")
    except ValueError as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT
    g_param = 3
    if args.g not in (None, "auto"):
        g_param = int(args.g)
    prev: Optional[float] = None
    rows = []
    for size in sizes:
        graph = _bench_instance(args.family, size, args.seed, g_param)
        t0 = time.perf_counter()
        cert = certify(graph)
        elapsed = time.perf_counter() - t0
        per_vertex = elapsed / graph.n
        ratio = None if prev is None else per_vertex / prev
        prev = per_vertex
        row = {
            "command": "bench",
            "family": args.family,
            "param": size,
            "n": graph.n,
            "bound": int(cert.bound),
            "case": cert.case,
            "seconds": round(elapsed, 6),
            "per_vertex": round(per_vertex, 9),
            "ratio": None if ratio is None else round(ratio, 3),
        }
        rows.append(row)
        _emit(row)
        _say(
            f"bench {args.family} {size}: n={graph.n} {elapsed:.3f}s "
            f"({per_vertex * 1e6:.2f} us/vertex"
            + (f", ratio {ratio:.2f})" if ratio is not None else ")")
        )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peelbound",
        description="Peel decompositions and certified outerface choices for plane graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="construct a named graph family")
    p_gen.add_argument("family", choices=FAMILIES)
    p_gen.add_argument("--g", type=int, default=None, help="girth parameter")
    p_gen.add_argument("--k", type=int, default=None, help="ring / grid parameter")
    p_gen.add_argument("--n", type=int, default=None, help="vertex count (random)")
    p_gen.add_argument("--seed", type=int, default=0, help="RNG seed (random)")
    p_gen.add_argument("--out", default=None, help="output path (default: stdout)")
    p_gen.set_defaults(func=cmd_generate)

    p_center = sub.add_parser("center", help="pick a center and certify its bound")
    p_center.add_argument("graph", help="graph file ('-' for stdin)")
    p_center.add_argument(
        "--g", default="auto", help="girth parameter, or 'auto' (default)"
    )
    p_center.add_argument(
        "--mode", choices=("girth", "diameter"), default="girth", help="bound flavor"
    )
    p_center.add_argument("--out", default=None, help="write certificate JSON here")
    p_center.set_defaults(func=cmd_center)

    p_oracle = sub.add_parser("oracle", help="run the brute-force ground truth")
    p_oracle.add_argument("graph", help="graph file ('-' for stdin)")
    p_oracle.add_argument(
        "--budget",
        type=int,
        default=5_000_000,
        help="step budget for cycle enumeration",
    )
    p_oracle.add_argument(
        "--threads",
        type=int,
        default=None,
        help=f"worker threads for per-face peel counts (default ${THREADS_ENV} or 1)",
    )
    p_oracle.set_defaults(func=cmd_oracle)

    p_verify = sub.add_parser("verify", help="recheck a certificate against a graph")
    p_verify.add_argument("graph", help="graph file ('-' for stdin)")
    p_verify.add_argument("cert", help="certificate JSON file")
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="time the pipeline across doubling sizes")
    p_bench.add_argument("family", choices=("random", "prism", "nested"))
    p_bench.add_argument("--n", default=None, help="comma list of sizes (random)")
    p_bench.add_argument("--k", default=None, help="comma list of parameters")
    p_bench.add_argument("--g", default=None, help="girth parameter for nested")
    p_bench.add_argument("--seed", type=int, default=1, help="RNG seed (random)")
    p_bench.add_argument("--out", default=None, help="write rows as JSON here")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors, which would collide
        # with our "infeasible parameter" class; usage problems are input
        # errors here.
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return EXIT_INPUT if code == 2 else code
    try:
        return args.func(args)
    except SystemExit as exc:  # _load_graph signals input errors this way
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return code
    except GraphFormatError as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())

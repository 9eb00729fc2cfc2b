"""heappoly command-line interface.

Exit codes: 0 ok, 1 unreadable or malformed input / unknown suite,
2 infeasible request (bound, rank, anchor), 3 disagreement between methods.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Dict, List, Optional, Sequence

from . import hyper, rank2
from .core import HostParseError, SimpleHypergraph, read_host
from .hyper import InfeasibleError, char_degree
from .series import TruncatedSeries, frac_str

METHOD_NAMES = {"hs": "harary_sachs", "kocay": "kocay", "heaps": "trivial_heaps"}
MAX_CODEGREE = 18


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str) -> SimpleHypergraph:
    try:
        return read_host(path)
    except HostParseError as exc:
        raise CliError(1, f"{path}: {exc}") from None
    except OSError as exc:
        raise CliError(1, f"{path}: {exc.strerror}") from None


def _codegree_bound(H: SimpleHypergraph, d: Optional[int]) -> int:
    N = char_degree(H.k, H.n)
    d = N if d is None else d
    if d < 0:
        raise CliError(2, "codegree bound must be non-negative")
    if d > MAX_CODEGREE:
        raise CliError(2, f"codegree bound {d} is beyond the feasible range (max {MAX_CODEGREE})")
    return d


def _require_rank2(H: SimpleHypergraph) -> None:
    if H.k != 2:
        raise CliError(2, "this command needs a rank-2 host (k = 2)")


def _coeff_map(values: Sequence) -> Dict[str, str]:
    return {str(d): frac_str(c) for d, c in enumerate(values) if c != 0}


def _emit(args, payload: dict, text_lines: List[str]) -> None:
    if args.format == "text":
        print("\n".join(text_lines))
    else:
        print(json.dumps(payload, sort_keys=False))


def _series_lines(label: str, s: TruncatedSeries) -> List[str]:
    return [f"{label} (order {s.order})"] + [f"  t^-{d}: {frac_str(c)}" for d, c in sorted(s.nonzero().items())]


# ---------------------------------------------------------------------------


def cmd_charpoly(args) -> int:
    H = _load(args.host)
    d_max = _codegree_bound(H, args.codegree)
    N = char_degree(H.k, H.n)
    if args.edge_vars:
        polys = {str(d): hyper.edge_variable_coefficient(H, d) for d in range(1, d_max + 1)}
        polys = {d: P for d, P in polys.items() if P.terms}
        payload = {"degree": N, "edge_vars": {d: P.to_json() for d, P in polys.items()}}
        lines = [f"degree {N}"] + [f"codegree {d}: {P}" for d, P in polys.items()]
        _emit(args, payload, lines)
        return 0
    if args.method == "all":
        results = {name: hyper.coefficients(H, d_max, m) for name, m in METHOD_NAMES.items()}
        ref = results["kocay"]
        agree = all(v == ref for v in results.values())
        payload = {"degree": N, "coeffs": _coeff_map(ref), "method": "all", "agreement": agree}
        if not agree:
            payload["by_method"] = {name: _coeff_map(v) for name, v in results.items()}
        lines = [f"degree {N}", f"method all, agreement {'true' if agree else 'false'}"]
        lines += [f"codegree {d}: {c}" for d, c in payload["coeffs"].items()]
        _emit(args, payload, lines)
        if not agree:
            print("error: coefficient routes disagree", file=sys.stderr)
            return 3
        return 0
    coeffs = hyper.coefficients(H, d_max, METHOD_NAMES[args.method])
    payload = {"degree": N, "coeffs": _coeff_map(coeffs), "method": METHOD_NAMES[args.method]}
    lines = [f"degree {N}", f"method {payload['method']}"] + [f"codegree {d}: {c}" for d, c in payload["coeffs"].items()]
    _emit(args, payload, lines)
    return 0


def _anchor(args, H: SimpleHypergraph):
    if (args.vertex is None) == (args.edge is None):
        raise CliError(2, "give exactly one of --vertex, --edge")
    if args.vertex is not None and not 1 <= args.vertex <= H.n:
        raise CliError(2, "anchor not in host")
    if args.edge is not None and not 1 <= args.edge <= len(H.edges):
        raise CliError(2, "anchor not in host")


def cmd_jacobi(args) -> int:
    H = _load(args.host)
    _require_rank2(H)
    _anchor(args, H)
    T = args.order
    if args.vertex is not None:
        q = rank2.jacobi_quotient(H, vertex=args.vertex, order=T)
        walks = rank2.walk_counts(H, vertex=args.vertex, D=T)
        match = [q[d] for d in range(T + 1)] == walks
        payload = {**q.to_json(), "anchor": {"vertex": args.vertex}, "walks": walks, "match": match}
        lines = _series_lines(f"phi(G - {args.vertex}) / phi(G)", q)
        lines.append(f"closed walks at {args.vertex}: {' '.join(map(str, walks))} (match {'true' if match else 'false'})")
        _emit(args, payload, lines)
        return 0 if match else 3
    q = rank2.jacobi_quotient(H, edge=args.edge - 1, order=T)
    pyr = rank2.pyramid_counts(H, args.edge - 1, T)
    match = [q[d] for d in range(T + 1)] == pyr
    payload = {**q.to_json(), "anchor": {"edge": args.edge}, "pyramids": pyr, "match": match}
    lines = _series_lines(f"phi(G - e{args.edge}) / phi(G)", q)
    lines.append(f"pyramids on e{args.edge}: {' '.join(map(str, pyr))} (match {'true' if match else 'false'})")
    _emit(args, payload, lines)
    return 0 if match else 3


def cmd_walks(args) -> int:
    H = _load(args.host)
    _require_rank2(H)
    T = args.order
    if args.vertex is not None or args.edge is not None:
        _anchor(args, H)
    if args.edge is not None:
        counts = rank2.pyramid_counts(H, args.edge - 1, T)
        raw = rank2.raw_edge_walk_counts(H, args.edge - 1, T)
        payload = {"anchor": {"edge": args.edge}, "pyramids": counts, "raw_walks": raw}
        lines = [f"pyramids on e{args.edge}: {' '.join(map(str, counts))}",
                 f"closed walks ending on e{args.edge}: {' '.join(map(str, raw))}"]
    else:
        counts = rank2.walk_counts(H, vertex=args.vertex, D=T)
        payload = {"anchor": {"vertex": args.vertex} if args.vertex else None, "walks": counts}
        where = f"at {args.vertex}" if args.vertex else "(all vertices)"
        lines = [f"closed walks {where}: {' '.join(map(str, counts))}"]
    _emit(args, payload, lines)
    return 0


def cmd_trace(args) -> int:
    H = _load(args.host)
    d_max = _codegree_bound(H, args.codegree if args.codegree is not None else args.order)
    traces = {str(d): hyper.trace_d(H, d) for d in range(1, d_max + 1)}
    from_traces = hyper.trace_log_series(H, d_max)
    from_poly = hyper.phi_tilde(H, d_max).log()
    match = from_traces == from_poly
    if args.edge_vars:
        body = {d: P.to_json() for d, P in traces.items() if P.terms}
        lines = [f"Tr_{d}: {P}" for d, P in traces.items() if P.terms]
    else:
        body = {d: frac_str(P.evaluate()) for d, P in traces.items() if P.evaluate()}
        lines = [f"Tr_{d}: {v}" for d, v in body.items()]
    key = "edge_vars" if args.edge_vars else "traces"
    payload = {key: body, "log_match": match}
    lines.append(f"log identity {'true' if match else 'false'}")
    _emit(args, payload, lines)
    return 0 if match else 3


def cmd_root_series(args) -> int:
    H = _load(args.host)
    T = _codegree_bound(H, args.order)
    try:
        s = hyper.root_series(H, T, "all")
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    payload = {**s.to_json(), "root": (H.k - 1) ** H.n, "agreement": True}
    _emit(args, payload, _series_lines(f"phi~^(1/{(H.k - 1) ** H.n})", s))
    return 0


def cmd_verify(args) -> int:
    from .suites import SUITES

    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise CliError(1, f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    ok = True
    for name in names:
        start = time.perf_counter()
        reports = SUITES[name]()
        elapsed = time.perf_counter() - start
        for rep in reports:
            ok &= rep.ok
            print(f"{'PASS' if rep.ok else 'FAIL'} [{name}] {rep.name} ({rep.checks} checks)")
            for msg in rep.failures[:10]:
                print(f"    {msg}")
        if args.timing:
            print(f"  {name}: {elapsed:.2f}s")
    return 0 if ok else 3


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heappoly", description="Characteristic polynomials of hypergraphs via heaps of pieces.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order_default=None):
        sp.add_argument("host", help="host file: 'k n' header then one edge per line")
        sp.add_argument("--codegree", type=int, help="largest codegree to compute")
        sp.add_argument("--order", type=int, default=order_default, help="series truncation order")
        sp.add_argument("--method", choices=["hs", "kocay", "heaps", "all"], default="kocay")
        sp.add_argument("--edge-vars", action="store_true", help="keep one variable per host edge")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="format", action="store_const", const="json")
        fmt.add_argument("--text", dest="format", action="store_const", const="text")
        sp.set_defaults(format="json")

    for name, fn, order in (("charpoly", cmd_charpoly, None), ("trace", cmd_trace, 6),
                            ("root-series", cmd_root_series, 9)):
        sp = sub.add_parser(name)
        common(sp, order)
        sp.set_defaults(func=fn)
    for name, fn in (("jacobi", cmd_jacobi), ("walks", cmd_walks)):
        sp = sub.add_parser(name)
        common(sp, 8)
        sp.add_argument("--vertex", type=int, help="anchor vertex (1-based)")
        sp.add_argument("--edge", type=int, help="anchor edge: 1-based index in sorted edge order")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("verify")
    sp.add_argument("suite", help="suite name, or 'all'")
    sp.add_argument("--timing", action="store_true", help="print elapsed time per suite (not byte-stable)")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

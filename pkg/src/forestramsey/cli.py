"""Command-line front end.

Exit codes: 0 success / true, 1 false (verify, arrows), 2 malformed input,
3 unknown classical value or witness, 4 search budget exhausted, 5 a freshly
built witness failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .calc import classical_r, ramsey_forest, star_forest
from .errors import CapacityError, InvalidInput, ParseError, SearchIndeterminate, UnknownValue
from .forest import parse_forest
from .graph import Graph, build_complete, build_pendant_star, dumps, is_free_coloring
from .oracle import ArrowQuery, arrows, enumerate_free_colorings, min_ramsey, min_star
from .table import ClassicalTable, default_table, set_default_table
from .witness import (
    WitnessColoring,
    critical_family,
    ramsey_full_witness,
    ramsey_lower_witness,
    star_lower_witness,
    verify_witness,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3
EXIT_INDETERMINATE = 4
EXIT_INTERNAL = 5

KIND_ALIASES = {
    "critical-family": "critical-family",
    "star-lower": "star-lower",
    "multicolor-star-lower": "star-lower",
    "ramsey-lower": "ramsey-lower",
    "ramsey-lower-blowup": "ramsey-lower",
    "ramsey-full": "ramsey-full",
    "ramsey-full-duplication": "ramsey-full",
}


class Reporter:
    """Prints one record per line: JSON with ``--json``, else ``key=value`` columns."""

    def __init__(self, as_json: bool, out=None):
        self.as_json = as_json
        self.out = out or sys.stdout

    def emit(self, label: str, provenance: str, **fields):
        if self.as_json:
            rec = {"what": label, **fields, "provenance": provenance}
            print(json.dumps(rec, separators=(",", ":")), file=self.out)
        else:
            cols = "  ".join(f"{k}={_fmt(v)}" for k, v in fields.items())
            print(f"{label:<24} {cols}  [{provenance}]".rstrip(), file=self.out)


def _fmt(v):
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    if v is None:
        return "-"
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def _forest_arg(text):
    return None if text == "-" else parse_forest(text)


def _label(fspec, ms):
    return f"R({fspec}; {' '.join(map(str, ms))})"


def _budget_opts(args):
    opts = {"workers": args.workers}
    if args.node_budget is not None:
        opts["node_budget"] = args.node_budget
    if args.time_budget is not None:
        opts["time_budget"] = args.time_budget
    return opts


def cmd_compute(args, rep: Reporter) -> int:
    ms = tuple(args.cliques)
    f = _forest_arg(args.forest)
    if f is None:
        if args.star:
            raise InvalidInput("--star needs a forest")
        rep.emit(_label("-", ms), "table", value=classical_r(ms))
        return EXIT_OK
    if not ms and args.star:
        raise InvalidInput("--star needs at least one clique order")
    res = (star_forest if args.star else ramsey_forest)(f, ms)
    name = ("R*" if args.star else "R") + _label(f.to_spec(), ms)[1:]
    rep.emit(name, res.provenance, value=res.value, j0=res.j0, base_r=res.base_r)
    return EXIT_OK


def _write_witnesses(ws, out, stem, rep: Reporter) -> int:
    for w in ws:
        check = verify_witness(w)
        if not check:
            print(f"error: constructed {w.kind} witness failed verification: {check.reason}", file=sys.stderr)
            return EXIT_INTERNAL
    paths = []
    if out is not None:
        out = Path(out)
        if len(ws) == 1 and out.suffix == ".json":
            paths = [out]
        else:
            out.mkdir(parents=True, exist_ok=True)
            paths = [out / f"{stem}-{i}.json" for i in range(len(ws))] if len(ws) > 1 else [out / f"{stem}.json"]
        for w, p in zip(ws, paths):
            p.parent.mkdir(parents=True, exist_ok=True)
            p.write_text(w.dumps() + "\n")
    for i, w in enumerate(ws):
        fields = {"order": w.coloring.graph.order, "edges": w.coloring.graph.edge_count, "verified": True}
        if paths:
            fields["file"] = str(paths[i])
        rep.emit(w.kind, "witness", **fields)
        if out is None and not rep.as_json:
            print(w.dumps(), file=rep.out)
    return EXIT_OK


def cmd_witness(args, rep: Reporter) -> int:
    kind = KIND_ALIASES[args.kind]
    pos = list(args.targets)
    if kind == "critical-family":
        if pos:
            raise InvalidInput("critical-family takes --n, --m and --k, not positional targets")
        if None in (args.n, args.m, args.k):
            raise InvalidInput("critical-family needs --n, --m and --k")
        ws = critical_family(args.n, args.m, args.k, distinct=not args.all_indices)
        stem = f"critical-n{args.n}-m{args.m}-k{args.k}"
    elif kind == "ramsey-full":
        ms = tuple(_ints(pos))
        if not ms:
            raise InvalidInput("ramsey-full needs clique orders")
        edge = tuple(args.edge) if args.edge else None
        ws = [ramsey_full_witness(ms, edge)]
        stem = "ramsey-full-" + "-".join(map(str, ms))
    else:
        if not pos:
            raise InvalidInput(f"{kind} needs a forest and clique orders")
        f = parse_forest(pos[0])
        ms = tuple(_ints(pos[1:]))
        if not ms:
            raise InvalidInput(f"{kind} needs at least one clique order")
        build = star_lower_witness if kind == "star-lower" else ramsey_lower_witness
        ws = [build(f, ms)]
        stem = f"{kind}-" + "-".join(map(str, ms))
    return _write_witnesses(ws, args.out, stem, rep)


def _ints(items):
    try:
        return [int(x) for x in items]
    except ValueError as exc:
        raise InvalidInput(f"clique orders must be integers: {exc}") from None


def _read_json(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from None


def cmd_verify(args, rep: Reporter) -> int:
    w = WitnessColoring.from_json(_read_json(args.path))
    check = verify_witness(w)
    rep.emit("verify", "witness", kind=w.kind, order=w.coloring.graph.order, ok=check.ok, reason=check.reason)
    return EXIT_OK if check else EXIT_FALSE


def _host(args) -> Graph | None:
    if args.complete is not None:
        return build_complete(args.complete)
    if args.pendant is not None:
        n, k = args.pendant
        return build_pendant_star(n, k)
    if args.graph is not None:
        return Graph.from_json(_read_json(args.graph))
    return None


def _save_cert(path, coloring):
    if path is not None and coloring is not None:
        Path(path).write_text(dumps(coloring) + "\n")


def cmd_oracle(args, rep: Reporter) -> int:
    f = _forest_arg(args.forest)
    ms = tuple(args.cliques)
    opts = _budget_opts(args)
    host = _host(args)
    fspec = "-" if f is None else f.to_spec()
    if args.mode in ("arrows", "enumerate") and host is None:
        raise InvalidInput(f"{args.mode} needs a host: --complete, --pendant or --graph")
    if args.mode == "arrows":
        v = arrows(ArrowQuery(host, f, ms, **opts))
        cert = args.cert if v.certificate is not None else None
        _save_cert(cert, v.certificate)
        rep.emit("arrows", "oracle", forest=fspec, cliques=ms, order=host.order, edges=host.edge_count,
                 arrows=v.arrows, nodes=v.stats.nodes, cert=cert)
        if v.indeterminate:
            return EXIT_INDETERMINATE
        if v.certificate is not None and not is_free_coloring(v.certificate, f, ms):
            return EXIT_INTERNAL
        return EXIT_OK if v.arrows else EXIT_FALSE
    if args.mode == "min-ramsey":
        res = min_ramsey(f, ms, cap=args.cap, **opts)
        _save_cert(args.cert, res.certificate)
        rep.emit("min-ramsey", "oracle", forest=fspec, cliques=ms, value=res.value, nodes=res.stats.nodes,
                 cert=args.cert if res.certificate is not None else None)
        return EXIT_OK
    if args.mode == "min-star":
        res = min_star(f, ms, r=args.r, **opts)
        _save_cert(args.cert, res.certificate)
        rep.emit("min-star", "oracle", forest=fspec, cliques=ms, value=res.value, nodes=res.stats.nodes,
                 cert=args.cert if res.certificate is not None else None)
        return EXIT_OK
    # enumerate
    opts.pop("workers")
    found = enumerate_free_colorings(host, f, ms, dedup=not args.all_colorings, **opts)
    if args.cert is not None:
        Path(args.cert).write_text("".join(dumps(c) + "\n" for c in found))
    rep.emit("enumerate", "oracle", forest=fspec, cliques=ms, order=host.order,
             classes=len(found), deduplicated=not args.all_colorings, cert=args.cert)
    return EXIT_OK


def cmd_table(args, rep: Reporter) -> int:
    table = default_table()
    for key, entry in table.rows():
        status = "no-witness"
        if entry.witness is not None:
            try:
                ok = is_free_coloring(table.witness(key), None, key)
                status = "witness-verified" if ok else "witness-FAILED"
            except (InvalidInput, UnknownValue, OSError) as exc:
                status = f"witness-unreadable ({exc})"
        rep.emit(_label("-", key), "table", value=entry.value, status=status)
    return EXIT_OK


def _add_common(p):
    p.add_argument("--json", action="store_true", help="line-oriented JSON output")
    p.add_argument("--table", metavar="PATH", help="classical Ramsey table (overrides $RAMSEY_TABLE)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forestramsey", description="Ramsey numbers of forests versus cliques.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="closed-form R(F, K_m1, ...) or R_* with --star")
    _add_common(p)
    p.add_argument("--star", action="store_true", help="star-critical value instead")
    p.add_argument("forest", help='forest such as "2*K2" or "P3+K2"; "-" for none')
    p.add_argument("cliques", nargs="*", type=int, help="clique orders")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("witness", help="build, verify and write extremal colorings")
    _add_common(p)
    p.add_argument("--kind", required=True, choices=sorted(KIND_ALIASES))
    p.add_argument("--n", type=int, help="tree order (critical-family)")
    p.add_argument("--m", type=int, help="clique order (critical-family)")
    p.add_argument("--k", type=int, help="number of tree copies (critical-family)")
    p.add_argument("--all-indices", action="store_true",
                   help="critical-family: one coloring per (i, composition), isomorphic ones included")
    p.add_argument("--edge", type=int, nargs=2, metavar=("U", "V"), help="ramsey-full: the removed edge")
    p.add_argument("--out", metavar="PATH", help="file (.json) or directory; default prints to stdout")
    p.add_argument("targets", nargs="*", help="forest then clique orders (clique orders only for ramsey-full)")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="re-check a witness file")
    _add_common(p)
    p.add_argument("path", help='witness JSON, "-" for stdin')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive search")
    _add_common(p)
    p.add_argument("mode", choices=["arrows", "min-ramsey", "min-star", "enumerate"])
    host = p.add_mutually_exclusive_group()
    host.add_argument("--complete", type=int, metavar="N", help="host K_N")
    host.add_argument("--pendant", type=int, nargs=2, metavar=("N", "K"), help="host K_N plus a vertex of degree K")
    host.add_argument("--graph", metavar="FILE", help="host graph JSON")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--node-budget", type=int)
    p.add_argument("--time-budget", type=float, metavar="S")
    p.add_argument("--cert", metavar="PATH", help="write the certificate coloring(s) here")
    p.add_argument("--cap", type=int, default=16, help="min-ramsey: largest order tried")
    p.add_argument("--r", type=int, help="min-star: Ramsey value to use instead of searching for it")
    p.add_argument("--all-colorings", action="store_true", help="enumerate: skip isomorphism dedup")
    p.add_argument("forest", help='forest, "-" for none')
    p.add_argument("cliques", nargs="*", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("table", help="print the classical table with witness status")
    _add_common(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = Reporter(args.json)
    try:
        if args.table:
            set_default_table(ClassicalTable.load(args.table))
        return args.func(args, rep)
    except (ParseError, InvalidInput, CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnknownValue as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except SearchIndeterminate as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    finally:
        if args.table:
            set_default_table(None)


if __name__ == "__main__":
    sys.exit(main())

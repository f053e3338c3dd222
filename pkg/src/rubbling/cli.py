"""Command-line interface.

Subcommands:
  compute    optimal / adversarial numbers for graphs, with witnesses
  check      decide reachability or solvability, or replay a certificate
  verify     re-derive the tabulated numbers and invariants, compare, report
  enumerate  list canonical distribution representatives of a given size

Graphs are named either as family specs ("cycle:5", and for compute a range
form "cycle:3..7") or as paths to graph files ("n m" header, one edge per
line, optional "# i name" label lines).  Exit status: 0 on success/agreement,
1 on a failed check or mismatch, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from .graphs import FAMILIES, FamilySpec, Graph, build_family, parse_graph_text
from .numbers import (
    QUANTITIES,
    Quantity,
    closed_form,
    composition_count,
    compute_number,
    enumerate_distributions,
    family_group,
    NoFormulaError,
)
from .pebbles import (
    Certificate,
    Distribution,
    MODES,
    RUBBLING,
    parse_distribution_text,
    verify_certificate,
)
from .solver import Query, RootSearch, reachable
from .verification import SUITES, run_suites


class _UsageError(Exception):
    pass


# ------------------------------------------------------------- shared input

def _parse_graph_arg(arg: str):
    """Return (display_name, FamilySpec | None, Graph) for one graph argument."""
    if os.path.exists(arg):
        try:
            with open(arg, encoding="utf-8") as fh:
                g = parse_graph_text(fh.read())
        except (OSError, ValueError) as exc:
            raise _UsageError(f"{arg}: {exc}") from None
        return arg, None, g
    try:
        spec = FamilySpec.parse(arg)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    return str(spec), spec, build_family(spec)


def _expand_graph_args(args):
    """compute accepts range specs: family:a..b -> family:a ... family:b."""
    out = []
    for arg in args:
        head, sep, tail = arg.partition(":")
        if sep and head in FAMILIES and ".." in tail:
            lo, _, hi = tail.partition("..")
            try:
                lo_n, hi_n = int(lo), int(hi)
            except ValueError:
                raise _UsageError(f"bad range {arg!r}: expected family:a..b") from None
            if hi_n < lo_n:
                raise _UsageError(f"bad range {arg!r}: {hi_n} < {lo_n}")
            out.extend(f"{head}:{k}" for k in range(lo_n, hi_n + 1))
        else:
            out.append(arg)
    return out


def _parse_dist_arg(arg: str, g: Graph) -> Distribution:
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
        try:
            return parse_distribution_text(text, g.n)
        except ValueError as exc:
            raise _UsageError(f"{arg}: {exc}") from None
    try:
        counts = tuple(int(tok) for tok in arg.replace(",", " ").split())
    except ValueError:
        raise _UsageError(f"bad distribution {arg!r}: expected integers") from None
    if len(counts) != g.n:
        raise _UsageError(
            f"distribution has {len(counts)} entries for a {g.n}-vertex graph")
    if any(c < 0 for c in counts):
        raise _UsageError("pebble counts must be nonnegative")
    return Distribution(counts)


def _parse_root_arg(arg: str, g: Graph) -> int:
    try:
        v = int(arg)
    except ValueError:
        try:
            return g.index_of(arg)
        except KeyError as exc:
            raise _UsageError(str(exc)) from None
    if not 0 <= v < g.n:
        raise _UsageError(f"root {v} out of range for a {g.n}-vertex graph")
    return v


def _progress_writer(args):
    enabled = args.progress if args.progress is not None else sys.stderr.isatty()
    if not enabled:
        return None

    def cb(step):
        print(f"  ... {step} candidates examined", file=sys.stderr, flush=True)

    return cb


def _write_output(payload: str, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


# ----------------------------------------------------------------- compute

_ROW_FIELDS = ("family", "n", "quantity", "t", "mode", "value", "formula",
               "match", "witness", "elapsed_ms")


def _format_rows(rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=_ROW_FIELDS, lineterminator="\n")
        w.writeheader()
        for row in rows:
            flat = dict(row)
            flat["witness"] = " ".join(str(c) for c in row["witness"])
            for key in ("formula", "match"):
                if flat[key] is None:
                    flat[key] = ""
                elif key == "match":
                    flat[key] = "true" if flat[key] else "false"
            w.writerow(flat)
        return buf.getvalue()
    lines = []
    for row in rows:
        match = "-" if row["match"] is None else ("yes" if row["match"] else "NO")
        formula = "-" if row["formula"] is None else row["formula"]
        witness = ",".join(str(c) for c in row["witness"])
        lines.append(
            f"{row['family']}:{row['n']} {row['quantity']} t={row['t']} "
            f"value={row['value']} formula={formula} match={match} "
            f"witness={witness} elapsed_ms={row['elapsed_ms']}")
    return "\n".join(lines) + "\n"


def _cmd_compute(args) -> int:
    try:
        q = Quantity(args.quantity, args.t)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    progress = _progress_writer(args)
    rows = []
    mismatch = False
    for arg in _expand_graph_args(args.graphs):
        name, spec, g = _parse_graph_arg(arg)
        if spec is None:
            group = ()
            family, n = name, g.n
        else:
            group = () if args.group == "trivial" else family_group(spec)
            family, n = spec.family, spec.n
        t0 = time.perf_counter()
        res = compute_number(g, q, group, args.parallelism, progress)
        elapsed = int((time.perf_counter() - t0) * 1000)
        formula = None
        if spec is not None:
            try:
                formula = closed_form(spec, q)
            except NoFormulaError:
                formula = None
        match = None if formula is None else (res.value == formula)
        if match is False:
            mismatch = True
        rows.append({
            "family": family,
            "n": n,
            "quantity": q.kind,
            "t": q.t,
            "mode": q.mode,
            "value": res.value,
            "formula": formula,
            "match": match,
            "witness": list(res.witness.counts),
            "elapsed_ms": elapsed,
        })
        if progress is not None:
            print(f"{name}: {q.kind} = {res.value}", file=sys.stderr, flush=True)
    _write_output(_format_rows(rows, args.format), args.output)
    return 1 if mismatch else 0


# ------------------------------------------------------------------- check

def _check_payload(args):
    name, _, g = _parse_graph_arg(args.graph)
    mode = args.mode
    if args.cert:
        try:
            with open(args.cert, encoding="utf-8") as fh:
                cert = Certificate.from_json(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            raise _UsageError(f"{args.cert}: {exc}") from None
        rep = verify_certificate(g, cert, mode)
        return {
            "op": "cert",
            "graph": name,
            "mode": mode,
            "valid": rep.valid,
            "acyclic": rep.acyclic,
            "message": rep.message,
        }, rep.valid
    if args.dist is None:
        raise _UsageError("check requires --dist (or --cert)")
    d = _parse_dist_arg(args.dist, g)
    if args.root is not None:
        root = _parse_root_arg(args.root, g)
        res = reachable(Query(g, d, root, args.t, mode))
        payload = {
            "op": "reach",
            "graph": name,
            "root": root,
            "t": args.t,
            "mode": mode,
            "decision": res.decision,
            "certificate": json.loads(res.certificate.to_json()) if res.decision else None,
        }
        if res.decision and args.save_cert:
            with open(args.save_cert, "w", encoding="utf-8") as fh:
                fh.write(res.certificate.to_json())
        return payload, res.decision
    failing = None
    for root in range(g.n):
        if RootSearch(g, root, mode).search(d.counts, args.t) is None:
            failing = root
            break
    return {
        "op": "solvable",
        "graph": name,
        "t": args.t,
        "mode": mode,
        "decision": failing is None,
        "failing_root": failing,
    }, failing is None


def _cmd_check(args) -> int:
    payload, ok = _check_payload(args)
    if args.format == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif payload["op"] == "cert":
        out = (f"certificate {'valid' if payload['valid'] else 'INVALID'}"
               f" (acyclic={'yes' if payload['acyclic'] else 'no'})"
               + (f": {payload['message']}" if payload["message"] else "") + "\n")
    elif payload["op"] == "reach":
        moves = payload["certificate"]["moves"] if payload["decision"] else None
        out = (f"{payload['graph']}: root {payload['root']} t={payload['t']} "
               f"{payload['mode']}: "
               + (f"reachable in {len(moves)} moves" if payload["decision"]
                  else "unreachable") + "\n")
    else:
        out = (f"{payload['graph']}: t={payload['t']} {payload['mode']}: "
               + ("solvable" if payload["decision"]
                  else f"unsolvable (root index {payload['failing_root']})") + "\n")
    _write_output(out, args.output)
    return 0 if ok else 1


# ------------------------------------------------------------------ verify

def _cmd_verify(args) -> int:
    names = args.suites or list(SUITES)
    if "all" in names:
        names = list(SUITES)
    for s in names:
        if s not in SUITES:
            raise _UsageError(f"unknown suite {s!r}; expected one of {', '.join(SUITES)}")
    seen = set()
    names = [s for s in names if not (s in seen or seen.add(s))]
    progress = _progress_writer(args)
    rows = run_suites(names, args.extended, args.parallelism, progress)
    if args.format == "json":
        payload = json.dumps([row.__dict__ for row in rows], indent=2, default=str) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("suite", "name", "ok", "expected", "actual", "detail", "elapsed_ms"))
        for row in rows:
            w.writerow((row.suite, row.name, "true" if row.ok else "false",
                        row.expected, row.actual, row.detail, row.elapsed_ms))
        payload = buf.getvalue()
    else:
        lines = []
        for row in rows:
            status = "ok " if row.ok else "FAIL"
            extra = "" if row.ok else f" (expected {row.expected!r}, got {row.actual!r})"
            detail = f" -- {row.detail}" if row.detail else ""
            lines.append(f"[{status}] {row.suite}: {row.name}{extra}{detail}"
                         f" [{row.elapsed_ms} ms]")
        bad = sum(1 for row in rows if not row.ok)
        lines.append(f"{'PASS' if bad == 0 else 'FAIL'}: "
                     f"{len(rows) - bad}/{len(rows)} checks passed")
        payload = "\n".join(lines) + "\n"
    _write_output(payload, args.output)
    return 0 if all(row.ok for row in rows) else 1


# --------------------------------------------------------------- enumerate

def _cmd_enumerate(args) -> int:
    name, spec, g = _parse_graph_arg(args.graph)
    if args.group == "family":
        if spec is None:
            raise _UsageError("--group family requires a family:n graph argument")
        group = family_group(spec)
    else:
        group = ()
    reps = [d.counts for d in enumerate_distributions(g.n, args.size, group)]
    if args.count_only:
        total = composition_count(g.n, args.size)
        if args.format == "json":
            payload = json.dumps({"size": args.size, "distributions": total,
                                  "representatives": len(reps)}) + "\n"
        else:
            payload = (f"{name}: size {args.size}: {len(reps)} representatives "
                       f"of {total} distributions\n")
    elif args.format == "json":
        payload = json.dumps([list(c) for c in reps], indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("counts",))
        for c in reps:
            w.writerow((" ".join(str(x) for x in c),))
        payload = buf.getvalue()
    else:
        payload = "".join(" ".join(str(x) for x in c) + "\n" for c in reps)
    _write_output(payload, args.output)
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rubbling",
        description="Exact graph pebbling and rubbling solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common_io(p, formats=("text", "csv", "json")):
        p.add_argument("--format", "-f", choices=formats, default="text",
                       help="output format (default text)")
        p.add_argument("--output", "-o", metavar="PATH",
                       help="write output to PATH instead of stdout")

    def common_run(p):
        p.add_argument("--parallelism", "-j", type=int, default=1, metavar="K",
                       help="worker processes for scans (default 1)")
        prog = p.add_mutually_exclusive_group()
        prog.add_argument("--progress", dest="progress", action="store_true",
                          default=None, help="print progress to stderr")
        prog.add_argument("--no-progress", dest="progress", action="store_false",
                          help="suppress progress output")

    p = sub.add_parser("compute", help="compute pebbling/rubbling numbers")
    p.add_argument("graphs", nargs="+", metavar="GRAPH",
                   help="family:n, family:a..b, or a graph file path")
    p.add_argument("--quantity", "-q", required=True, choices=QUANTITIES)
    p.add_argument("--t", type=int, default=1, metavar="T",
                   help="pebbles to deliver (adversarial quantities only)")
    p.add_argument("--group", choices=("family", "trivial"), default="family",
                   help="symmetry reduction for the scan (default family)")
    common_run(p)
    common_io(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("check", help="decide one instance or replay a certificate")
    p.add_argument("graph", metavar="GRAPH", help="family:n or a graph file path")
    p.add_argument("--dist", "-d", metavar="D",
                   help="pebble counts ('0,2,0' or '0 2 0') or a file path")
    p.add_argument("--root", "-r", metavar="R",
                   help="target vertex (index or label); omit to check all roots")
    p.add_argument("--t", type=int, default=1, metavar="T")
    p.add_argument("--mode", "-m", choices=MODES, default=RUBBLING)
    p.add_argument("--cert", metavar="FILE",
                   help="replay and validate a certificate file")
    p.add_argument("--save-cert", metavar="FILE",
                   help="write the found certificate to FILE (with --root)")
    common_io(p, formats=("text", "json"))
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("verify", help="re-derive tabulated numbers and invariants")
    p.add_argument("suites", nargs="*", metavar="SUITE",
                   help=f"subset of {', '.join(SUITES)} (default all)")
    p.add_argument("--extended", action="store_true",
                   help="include the slowest instance (8-cycle rubbling number)")
    common_run(p)
    common_io(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("enumerate", help="list canonical distributions of a size")
    p.add_argument("graph", metavar="GRAPH", help="family:n or a graph file path")
    p.add_argument("--size", "-s", type=int, required=True, metavar="M",
                   help="total number of pebbles")
    p.add_argument("--group", choices=("family", "trivial"), default="family")
    p.add_argument("--count-only", action="store_true",
                   help="print counts instead of the representatives")
    common_io(p)
    p.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "t", 1) < 1:
        parser.error("--t must be at least 1")
    if getattr(args, "parallelism", 1) < 1:
        parser.error("--parallelism must be at least 1")
    if getattr(args, "size", 0) < 0:
        parser.error("--size must be nonnegative")
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

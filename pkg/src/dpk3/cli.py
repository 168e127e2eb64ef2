"""Command-line front end: ``dpk3 <subcommand> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import enumeration as en
from .conic_table import compare_with_table
from .errors import Dpk3Error
from .fibers import (
    FiberConfiguration,
    ReducibleCase,
    ReduciblePattern,
    SmoothPattern,
    classify,
    enumerate_fiber_configurations,
    invariants_of,
)
from .ns_lattice import ns_lattice_of, smith_normal_form
from .picard import DivisorClass, parse_class
from .verify import all_passed, run_checks
from .weyl import DEFAULT_ORBIT_CAP, weyl_orbit

FORMATS = ("plain", "json", "csv", "markdown")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _csv(columns: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _markdown(columns: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    lines += ["| " + " | ".join(str(v) for v in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def _plain(rows: Sequence[Sequence[object]]) -> str:
    return "".join("  ".join(str(v) for v in row).rstrip() + "\n" for row in rows)


def _emit(fmt: str, payload: object, columns: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        return _csv(columns, rows)
    if fmt == "markdown":
        return _markdown(columns, rows)
    return _plain(rows)


def _emit_inventory(args, inv: en.ClassInventory) -> str:
    if args.count_only:
        return f"{inv.count}\n"
    return _emit(args.format, inv.to_json(), ["class"], [[str(c)] for c in inv.classes])


def _class_arg(args) -> DivisorClass:
    if args.class_ is None:
        raise UsageError("--class is required")
    return parse_class(args.class_, 9 - args.degree)


def _cmd_inventory(builder):
    def cmd(args):
        return _emit_inventory(args, builder(args.degree, workers=args.threads))

    return cmd


def _cmd_orbit(args):
    x = _class_arg(args)
    orbit = weyl_orbit(x, 9 - args.degree, args.cap)
    return _emit_inventory(args, en.ClassInventory(args.degree, en.Kind.ORBIT, tuple(sorted(orbit))))


def _cmd_pairs(args):
    conic = _class_arg(args)
    pairs = en.reducible_fiber_pairs(conic, args.degree)
    if args.count_only:
        return f"{len(pairs)}\n"
    payload = {
        "degree": args.degree,
        "conic": str(conic),
        "count": len(pairs),
        "pairs": [[str(a), str(b)] for a, b in pairs],
    }
    return _emit(args.format, payload, ["first", "second"], [[str(a), str(b)] for a, b in pairs])


def _cmd_bisections(args):
    return _emit_inventory(args, en.bisection_classes(_class_arg(args), args.degree))


_KIND_BUILDERS = {
    "conic": en.enumerate_conic_classes,
    "minus_one": en.enumerate_minus_one_classes,
    "root": en.enumerate_roots,
}


def _cmd_representatives(args):
    inv = _KIND_BUILDERS[args.kind](args.degree, workers=args.threads)
    reps = en.symmetry_representatives(inv)
    rows_of = {}
    if args.kind == "conic" and args.degree <= 8:
        rows_of = compare_with_table(args.degree).orbit_to_row
    if args.count_only:
        return f"{len(reps)}\n"
    rows = []
    for rep, size in reps:
        row = rows_of.get(rep)
        rows.append([str(rep), size, row.text if row else ""])
    payload = {
        "degree": args.degree,
        "kind": args.kind,
        "count": len(reps),
        "representatives": [
            {"class": r[0], "orbit_size": r[1], "table_row": r[2] or None} for r in rows
        ],
    }
    return _emit(args.format, payload, ["class", "orbit_size", "table_row"], rows)


def _parse_partition(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--smooth expects comma-separated integers, got {text!r}") from None


def _cmd_classify(args):
    if (args.smooth is None) == (args.reducible is None):
        raise UsageError("give exactly one of --smooth or --reducible")
    if args.smooth is not None:
        pattern = SmoothPattern(_parse_partition(args.smooth))
    else:
        pattern = ReduciblePattern(ReducibleCase(args.reducible))
    kind = classify(pattern)
    payload = {"pattern": pattern.to_json(), "type": str(kind)}
    if args.format == "plain":
        return f"{kind}\n"
    label = ",".join(map(str, pattern.partition)) if isinstance(pattern, SmoothPattern) else pattern.case.value
    return _emit(args.format, payload, ["pattern", "type"], [[label, str(kind)]])


def _cmd_configs(args):
    cfgs = enumerate_fiber_configurations(args.degree, args.delta)
    if args.count_only:
        return f"{len(cfgs)}\n"
    payload = {
        "degree": args.degree,
        "delta": args.delta,
        "status": FiberConfiguration.STATUS,
        "count": len(cfgs),
        "configurations": [c.to_json() for c in cfgs],
    }
    rows = [
        [
            " ".join(f"{t}:{n}" for t, n in c.reducible),
            " ".join(f"{t}:{n}" for t, n in c.smooth),
        ]
        for c in cfgs
    ]
    text = _emit(args.format, payload, ["reducible", "smooth"], rows)
    if args.format in ("plain", "markdown"):
        text = f"# {len(cfgs)} {FiberConfiguration.STATUS} configurations\n" + text
    return text


def _cmd_invariants(args):
    rec = invariants_of(args.degree, args.delta)
    payload = rec.to_json()
    return _emit(args.format, payload, list(payload), [[payload[k] for k in payload]]) if args.format != "plain" else (
        "".join(f"{k}: {v}\n" for k, v in payload.items())
    )


def _cmd_ns(args):
    rank = args.rank if args.rank is not None else 10 - args.degree
    g = ns_lattice_of(rank, args.delta)
    disc = smith_normal_form(g)
    payload = {"ns_rank": rank, "delta": args.delta, "gram": g.tolist(), "discriminant": disc.to_json()}
    if args.format == "json":
        return json.dumps(payload, indent=2) + "\n"
    rows = [[" ".join(f"{v:3d}" for v in row)] for row in g.tolist()]
    if args.format == "plain":
        head = f"ns_rank: {rank}\ndelta: {args.delta}\nfactors: {list(disc.invariant_factors)}\n"
        head += f"length: {disc.length}\nabs_det: {disc.abs_determinant}\ngram:\n"
        return head + _plain(rows)
    return _emit(args.format, payload, ["gram_row"], rows)


def _cmd_verify(args):
    results = run_checks()
    rows = [[r.name, r.status, r.detail] for r in results]
    payload = {"passed": all_passed(results), "checks": [dict(zip(("name", "status", "detail"), r)) for r in rows]}
    if args.format == "plain":
        text = "".join(r.line() + "\n" for r in results)
        n_fail = sum(r.status == "FAIL" for r in results)
        n_warn = sum(r.status == "WARN" for r in results)
        text += f"{len(results)} checks, {n_fail} failed, {n_warn} warnings\n"
    else:
        text = _emit(args.format, payload, ["check", "status", "detail"], rows)
    return text, (0 if all_passed(results) else 1)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="plain")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    parser = _Parser(prog="dpk3", description="Conic bundles on del Pezzo surfaces and elliptic K3 fibrations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, degree=True, max_degree=8, count=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if degree:
            sp.add_argument("--degree", type=int, required=True, choices=range(1, max_degree + 1),
                            metavar=f"1..{max_degree}")
        if count:
            sp.add_argument("--count-only", action="store_true")
        sp.set_defaults(func=fn)
        return sp

    add("lines", _cmd_inventory(en.enumerate_minus_one_classes), "(-1)-classes")
    add("conics", _cmd_inventory(en.enumerate_conic_classes), "conic classes", max_degree=9)
    add("roots", _cmd_inventory(en.enumerate_roots), "roots")
    sp = add("orbit", _cmd_orbit, "Weyl orbit of a class", max_degree=9)
    sp.add_argument("--class", dest="class_")
    sp.add_argument("--cap", type=int, default=DEFAULT_ORBIT_CAP)
    for name, fn, help_ in (("pairs", _cmd_pairs, "reducible fibers of a conic bundle"),
                            ("bisections", _cmd_bisections, "(-1)-classes inducing bisections")):
        sp = add(name, fn, help_, max_degree=9)
        sp.add_argument("--class", dest="class_")
    sp = add("representatives", _cmd_representatives, "orbit representatives under index permutation", max_degree=9)
    sp.add_argument("--kind", choices=sorted(_KIND_BUILDERS), default="conic")
    sp = add("classify-fiber", _cmd_classify, "Kodaira type from a branch pattern", degree=False, count=False)
    sp.add_argument("--smooth")
    sp.add_argument("--reducible", choices=[c.value for c in ReducibleCase])
    for name, fn, help_, max_d in (("configs", _cmd_configs, "candidate fiber configurations", 9),
                                   ("invariants", _cmd_invariants, "strictly elliptic K3 invariants", 9)):
        sp = add(name, fn, help_, max_degree=max_d, count=name == "configs")
        sp.add_argument("--delta", type=int, choices=(0, 1), default=1)
    sp = sub.add_parser("ns", parents=[common], help="Neron-Severi lattice and discriminant group")
    sp.add_argument("--degree", type=int, choices=range(1, 10), metavar="1..9")
    sp.add_argument("--rank", type=int)
    sp.add_argument("--delta", type=int, choices=(0, 1), default=1)
    sp.set_defaults(func=_cmd_ns)
    add("verify", _cmd_verify, "re-derive every published count", degree=False, count=False)
    return parser


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Execute one command; returns (exit code, stdout, stderr)."""
    parser = build_parser()
    err = io.StringIO()
    try:
        with contextlib.redirect_stdout(io.StringIO()) as out:
            try:
                args = parser.parse_args(list(argv))
            except SystemExit as exc:  # --help
                return int(exc.code or 0), out.getvalue(), err.getvalue()
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        if args.command == "ns" and (args.rank is None) == (args.degree is None):
            raise UsageError("ns needs exactly one of --degree or --rank")
        result = args.func(args)
    except UsageError as exc:
        return 2, "", f"{exc}\n"
    except (Dpk3Error, ValueError) as exc:
        return 2, "", f"dpk3: error: {exc}\n"
    if isinstance(result, tuple):
        text, code = result
        return code, text, ""
    return 0, result, ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())

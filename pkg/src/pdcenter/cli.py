"""Command line front end: ``pdcenter <dist|center|verify|gen> [flags]``.

Diagram files hold one ``birth death`` pair per line; ``#`` starts a comment
line and blank lines are skipped.  Numbers are written with 17 significant
digits so reading a written file gives back the same floats.

Exit codes: 0 success, 1 failed verification, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .center import (
    BOTTLENECK,
    DiagramCenter,
    Objective,
    SelectionMode,
    center_diagrams,
    eval_center,
    within,
)
from .core import Diagram
from .distances import bottleneck_distance, wasserstein_distance
from .instances import KINDS, GenSpec, generate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    """Bad flags or unreadable input; maps to exit code 2."""


# ---------------------------------------------------------------- file format


def parse_diagram(text: str, name: str = "<input>") -> Diagram:
    pts = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        fields = s.split()
        if len(fields) != 2:
            raise InputError(f"{name}:{lineno}: expected 'birth death', got {len(fields)} fields")
        try:
            b, d = float(fields[0]), float(fields[1])
        except ValueError:
            raise InputError(f"{name}:{lineno}: not a number: {s!r}") from None
        if not (math.isfinite(b) and math.isfinite(d)):
            raise InputError(f"{name}:{lineno}: non-finite coordinate")
        if d < b:
            raise InputError(f"{name}:{lineno}: death < birth")
        pts.append((b, d))
    return Diagram(pts)


def format_diagram(d: Diagram, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"{x:.17g} {y:.17g}" for x, y in d.points]
    return "\n".join(lines) + "\n"


def read_diagram(path) -> Diagram:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None
    return parse_diagram(text, str(path))


def write_diagram(path, d: Diagram, header: str | None = None):
    try:
        Path(path).write_text(format_diagram(d, header))
    except OSError as e:
        raise InputError(f"{path}: cannot write: {e.strerror or e}") from None


def fmt(v: float) -> str:
    return f"{v:.9f}"


# ---------------------------------------------------------------- helpers


def _objective(args) -> Objective:
    if args.metric == "bottleneck":
        if args.p is not None:
            raise InputError("-p only applies to --metric wasserstein")
        return BOTTLENECK
    p = 1.0 if args.p is None else args.p
    if not (math.isfinite(p) and p >= 1):
        raise InputError(f"-p must be a finite number >= 1, got {p}")
    return Objective.wasserstein(p)


def _report(out, pairs):
    for k, v in pairs:
        print(f"{k}: {v}", file=out)


def _membership(dc: DiagramCenter, sizes: list[int]) -> list[str]:
    """One line per output center: the index of its member in each input, or 'diag'."""
    sol = dc.solution
    if sol is None:
        return []
    rows = []
    for j in np.nonzero(~sol.center_diag)[0]:
        cells = [str(int(k)) if k < sizes[i] else "diag" for i, k in enumerate(sol.clusters[j])]
        rows.append(" ".join(cells))
    return rows


# ---------------------------------------------------------------- commands


def cmd_dist(args, out=None) -> int:
    out = out or sys.stdout
    obj = _objective(args)
    a, b = read_diagram(args.inputs[0]), read_diagram(args.inputs[1])
    v = bottleneck_distance(a, b) if obj.is_bottleneck else wasserstein_distance(a, b, obj.p)
    print(fmt(v), file=out)
    return EXIT_OK


def cmd_center(args, out=None) -> int:
    out = out or sys.stdout
    obj = _objective(args)
    ds = [read_diagram(p) for p in args.inputs]
    if len(ds) < 2:
        raise InputError("center needs at least two input diagrams")
    mode = SelectionMode(args.mode)
    try:
        dc = center_diagrams(ds, mode, obj, algo=args.algo)
    except ValueError as e:
        raise InputError(str(e)) from None

    write_diagram(args.out, dc.center, f"center mode={mode.value} objective={obj} algo={args.algo}")
    check = eval_center(dc.center, ds, mode, obj)
    status = "ok" if check.ok and abs(check.value - dc.objective_value) <= 1e-9 else "verification-failed"
    pairs = [
        ("status", status),
        ("value", fmt(dc.objective_value)),
        ("mode", mode.value),
        ("objective", str(obj)),
        ("algo", args.algo),
        ("centers", len(dc.center)),
    ]
    pairs += [(f"center.{j}", f"{x:.17g} {y:.17g}") for j, (x, y) in enumerate(dc.center.points)]
    pairs += [(f"cluster.{j}", row) for j, row in enumerate(_membership(dc, [len(d) for d in ds]))]
    pairs += [("violation", v) for v in check.violations]
    _report(out, pairs)
    return EXIT_OK if status == "ok" else EXIT_FAIL


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    obj = _objective(args)
    if args.radius is None or not math.isfinite(args.radius):
        raise InputError("verify needs a finite --radius")
    if len(args.inputs) < 3:
        raise InputError("verify needs a center file and at least two input diagrams")
    center = read_diagram(args.inputs[0])
    ds = [read_diagram(p) for p in args.inputs[1:]]
    mode = SelectionMode(args.mode)
    ev = eval_center(center, ds, mode, obj)
    violations = list(ev.violations)
    if not within(ev.value, args.radius):
        violations.append(f"radius: value {fmt(ev.value)} exceeds claimed {fmt(args.radius)}")
    pairs = [("status", "pass" if not violations else "fail"), ("value", fmt(ev.value)),
             ("radius", fmt(args.radius))]
    pairs += [("violation", v) for v in violations]
    _report(out, pairs)
    return EXIT_OK if not violations else EXIT_FAIL


def cmd_gen(args, out=None) -> int:
    out = out or sys.stdout
    spec = GenSpec(kind=args.kind, n=args.n, m=args.m, seed=args.seed, d=args.d, pull=args.pull)
    problems = spec.validate()
    if problems:
        raise InputError("invalid spec: " + "; ".join(problems))
    diagrams = generate(spec)
    outdir = Path(args.out)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise InputError(f"{outdir}: cannot create directory: {e.strerror or e}") from None
    names = []
    for i, d in enumerate(diagrams, start=1):
        name = f"diagram_{i}.dgm"
        write_diagram(outdir / name, d, f"{spec.kind} seed={spec.seed} color={i}")
        names.append(name)
    manifest = {"spec": spec.as_dict(), "files": names, "points": [len(d) for d in diagrams]}
    try:
        (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    except OSError as e:
        raise InputError(f"{outdir}: cannot write manifest: {e.strerror or e}") from None
    for name in names:
        print(outdir / name, file=out)
    return EXIT_OK


# ---------------------------------------------------------------- parsing


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pdcenter", description="Persistence diagram distances and centers.")
    sub = ap.add_subparsers(dest="command", required=True)

    def objective_flags(p):
        p.add_argument("--metric", choices=("bottleneck", "wasserstein"), default="bottleneck")
        p.add_argument("-p", type=float, default=None, help="Wasserstein exponent (default 1)")

    def mode_flag(p):
        p.add_argument("--mode", choices=[m.value for m in SelectionMode], default="no-replacement")

    p = sub.add_parser("dist", help="distance between two diagrams")
    objective_flags(p)
    p.add_argument("inputs", nargs=2, metavar="DIAGRAM")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("center", help="center diagram of m >= 2 diagrams")
    objective_flags(p)
    mode_flag(p)
    p.add_argument("--algo", choices=("exact2", "approx", "brute"), default="approx")
    p.add_argument("--out", required=True, help="where to write the center diagram")
    p.add_argument("inputs", nargs="+", metavar="DIAGRAM")
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("verify", help="check a center against its inputs and a claimed radius")
    objective_flags(p)
    mode_flag(p)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("inputs", nargs="+", metavar="FILE", help="center file, then the input diagrams")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a fixture")
    p.add_argument("--kind", choices=KINDS, default="random")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--d", type=int, default=2, help="element gadget path length")
    p.add_argument("--pull", type=_bool, default=False, help="triple gadget: pull the triple apart")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except InputError as e:
        print(f"pdcenter: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

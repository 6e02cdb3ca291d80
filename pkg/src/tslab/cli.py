"""``tslab`` command line: one binary, one subcommand per module.

Exit codes: 0 on success, 1 when a verification fails (a JSON failure
report naming the violated statement goes to stdout), 2 on usage or
resource errors. Output depends only on argv and ``--seed``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from collections.abc import Sequence
from fractions import Fraction

from .errors import BadParameter, ResourceLimit, TslabError, VerificationError
from .laurent import LaurentPoly, format_poly

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(obj, path: str | None = None) -> None:
    text = _dump(obj) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_graph(args):
    from .bigraph import Bigraph
    from .tsystem import cylinder_graph

    if getattr(args, "input", None):
        obj = _load_json(args.input)
        return Bigraph.from_json_obj(obj.get("bigraph", obj))
    if getattr(args, "m", None) and getattr(args, "n", None):
        return cylinder_graph(args.m, args.n)
    raise UsageError("give --input g.json or --m and --n")


def _emit_rows(header: dict, rows: list, path: str | None = None) -> None:
    """JSON object whose ``rows`` list holds one compact entry per line."""
    head = json.dumps(header, sort_keys=True)[:-1]
    body = ",\n".join("  " + json.dumps(r, sort_keys=True) for r in rows)
    text = f"{head}, \"rows\": [\n{body}\n]}}\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _value_text(x) -> str:
    return format_poly(x) if isinstance(x, LaurentPoly) else str(Fraction(x))


def _failure(reference: str, message: str, residue=None) -> dict:
    out = {"format": FORMAT_VERSION, "status": "failed", "reference": reference, "message": message}
    if residue is not None:
        out["residue"] = _value_text(residue) if isinstance(residue, (LaurentPoly, int, Fraction)) else str(residue)
    return out


# ---------------------------------------------------------------- families

def cmd_families(args) -> int:
    from .families import FamilySpec, build_family, classify_family

    if args.action == "build":
        spec = FamilySpec(args.item, args.m, args.n, args.affine, args.finite)
        g = build_family(spec)
        if args.format == "dot":
            sys.stdout.write(g.to_dot(f"item{args.item}"))
        else:
            _emit({"format": FORMAT_VERSION, "spec": spec.to_json_obj(), "bigraph": g.to_json_obj()}, args.output)
        return 0
    _emit(classify_family(_load_graph(args)).to_json_obj(), args.output)
    return 0


# ---------------------------------------------------------------- hamiltonians

def cmd_hamiltonians(args) -> int:
    from .hamiltonians import gk_hamiltonians, tropical_hamiltonians

    if args.tropical:
        if not args.labels:
            raise UsageError("--tropical needs --labels")
        labels = _labels_from(_load_json(args.labels))
        values = tropical_hamiltonians(args.m, args.n, dict(enumerate(labels)))
        if args.format == "text":
            for r, x in enumerate(values):
                print(f"H_{r} = {x}")
        else:
            _emit({"format": FORMAT_VERSION, "m": args.m, "n": args.n, "tropical": values})
        return 0
    hs = gk_hamiltonians(args.m, args.n)
    if args.letters:
        from .acceptance import LETTERS, letter_form

        if (args.m, args.n) != (3, 1):
            raise UsageError("--letters names the vertices of the m=3, n=1 cylinder only")
        for r, h in enumerate(hs.H):
            print(f"H_{r} = {' + '.join(letter_form(h, LETTERS))}")
        return 0
    if args.format == "text":
        for r, h in enumerate(hs.H):
            print(f"H_{r} = {format_poly(h)}")
    else:
        _emit({"format": FORMAT_VERSION, "m": args.m, "n": args.n,
               "hamiltonians": [format_poly(h) for h in hs.H]})
    return 0


# ---------------------------------------------------------------- tsystem

def _point(args, g) -> list | None:
    from .tsystem import random_point

    if args.symbolic:
        return None
    if args.spec:
        raw = _load_json(args.spec)
        raw = raw.get("values", raw) if isinstance(raw, dict) else raw
        if isinstance(raw, dict):
            return [Fraction(raw[str(v)]) for v in g.vertices()]
        return [Fraction(x) for x in raw]
    pt = random_point(g.vertices(), random.Random(args.seed))
    return [pt[v] for v in g.vertices()]


def cmd_tsystem(args) -> int:
    from .tsystem import (
        cylinder_graph,
        evolve,
        evolve_numeric,
        find_minimal_recurrence,
        random_point,
        verify_boundary_recurrence,
    )

    if args.action == "evolve":
        g = _load_graph(args)
        init = _point(args, g)
        values = evolve(g, args.t_from, args.t_to, init)
        times = list(range(args.t_from, args.t_to + 1))
        trace = [[_value_text(values[(v, t)]) if (v, t) in values else None for v in g.vertices()] for t in times]
        out = {"format": FORMAT_VERSION, "times": times, "values": trace}
        if init is not None:
            out["initial"] = [str(x) for x in init]
        _emit(out, args.emit)
        return 0
    if args.action == "verify-rec":
        point = None
        if not args.symbolic:
            g = cylinder_graph(args.m, args.n)
            point = random_point(g.vertices(), random.Random(args.seed))
        certs = []
        for which in ("top", "bottom"):
            cert = verify_boundary_recurrence(args.m, args.n, which, range(args.t_from, args.t_to + 1), point)
            certs.append({"statement": cert.statement, "checked": cert.checked})
        _emit({"format": FORMAT_VERSION, "status": "verified", "certificates": certs})
        return 0
    # find-rec
    g = _load_graph(args)
    pt = random_point(g.vertices(), random.Random(args.seed))
    lo = -args.length * args.step // 2
    trace = evolve_numeric(g, pt, lo - 1, lo + args.length * args.step + 1)
    start = lo if (lo + g.colors[args.vertex]) % 2 == 0 else lo + 1
    spec = find_minimal_recurrence(trace.sequence(args.vertex, start, args.step, args.length), args.step)
    _emit({"format": FORMAT_VERSION, "vertex": args.vertex, "step": args.step, "terms": spec.terms,
           "coefficients": [str(c) for c in spec.coeffs]})
    return 0


# ---------------------------------------------------------------- tropical

def _labels_from(obj) -> list:
    if isinstance(obj, dict):
        obj = obj["values"]
    return [int(x) for x in obj]


def _trop_start(args):
    from .tropical import EVOLUTION_TABLE, letters_to_values, trop_state

    if args.example:
        from .tsystem import cylinder_graph

        t0, row, _ = EVOLUTION_TABLE[0]
        return trop_state(cylinder_graph(3, 1), t0, letters_to_values(row))
    if not args.labels:
        raise UsageError("give --labels l.json or --example")
    g = _load_graph(args)
    obj = _load_json(args.labels)
    t0 = obj.get("t", 1) if isinstance(obj, dict) else 1
    values = _labels_from(obj)
    if len(values) != g.n:
        raise UsageError(f"expected {g.n} labels, got {len(values)}")
    return trop_state(g, t0, values)


def cmd_tropical(args) -> int:
    from .tropical import (
        affine_slices,
        asymptotic_speeds,
        check_speed_conservation,
        random_labels,
        speed_row,
        trop_trajectory,
    )
    from .tsystem import cylinder_graph

    if args.action == "evolve":
        start = _trop_start(args)
        slices = affine_slices(start.graph)
        states = trop_trajectory(start, args.t_from, args.t_to)
        rows = [{"t": s.t, "values": list(s.values), "speeds": speed_row(s, slices)} for s in states]
        _emit_rows({"format": FORMAT_VERSION, "vertices": start.graph.n}, rows, args.emit)
        return 0
    if args.action == "speeds":
        sp = asymptotic_speeds(_trop_start(args), args.window)
        _emit({"format": FORMAT_VERSION, "plus": list(sp.plus), "minus": list(sp.minus),
               "t_plus": sp.t_plus, "t_minus": sp.t_minus})
        return 0
    rng = random.Random(args.seed)
    g = cylinder_graph(args.m, args.n)
    runs = []
    for _ in range(args.trials):
        labels = random_labels(g, rng)
        cert = check_speed_conservation(args.m, args.n, labels, args.window)
        runs.append({"labels": [labels[v] for v in g.vertices()], "plus": list(cert.details[0])})
    _emit({"format": FORMAT_VERSION, "status": "verified", "m": args.m, "n": args.n, "trials": runs})
    return 0


# ---------------------------------------------------------------- tilings

def cmd_tilings(args) -> int:
    from .tilings import (
        CylinderGrid,
        enumerate_cylinder_tilings,
        hula_hoops,
        render_ascii,
        sea,
        sea_height,
        tiling_to_json,
    )

    grid = CylinderGrid(args.m, args.n)
    tilings = enumerate_cylinder_tilings(grid, args.limit)
    by_hoops: dict = {}
    for t in tilings:
        r = hula_hoops(grid, t)
        by_hoops[r] = by_hoops.get(r, 0) + 1
    if args.format == "text":
        print(f"cylinder m={args.m} n={args.n}: {len(tilings)} tilings, sea height {sea_height(grid)}")
        print("by hula hoops: " + ", ".join(f"{r}: {c}" for r, c in sorted(by_hoops.items())))
        print("sea:")
        print(render_ascii(grid, sea(grid)))
        for t in tilings[: args.show]:
            print()
            print(f"hula hoops {hula_hoops(grid, t)}")
            print(render_ascii(grid, t))
        return 0
    _emit({"format": FORMAT_VERSION, "m": args.m, "n": args.n, "count": len(tilings),
           "by_hula_hoops": {str(r): c for r, c in sorted(by_hoops.items())}, "sea_height": sea_height(grid),
           "tilings": [tiling_to_json(t, grid.width) for t in tilings[: args.show]]}, args.output)
    return 0


# ---------------------------------------------------------------- verify-all

def cmd_verify_all(args) -> int:
    from .acceptance import CRITERIA, run_all

    numbers = None
    if args.only:
        numbers = {int(x) for x in args.only.split(",")}
        known = {c[0] for c in CRITERIA}
        if not numbers <= known:
            raise UsageError(f"unknown criteria {sorted(numbers - known)}")

    def report(res):
        if args.format == "text":
            line = res.line() if args.timings else res.line().replace(f" ({res.seconds:.2f}s)", "")
            print(line, flush=True)

    results = run_all(args.seed, numbers, report)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        _emit({"format": FORMAT_VERSION, "level": args.level, "seed": args.seed,
               "status": "failed" if failed else "verified", "results": [r.to_json_obj() for r in results]})
    else:
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
        if failed:
            _emit({"format": FORMAT_VERSION, "status": "failed",
                   "failures": [{"number": r.number, "reference": r.reference, "message": r.detail} for r in failed]})
    return 1 if failed else 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tslab", description="Exact T-system, tiling and tropical toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("families", help="build or classify affinite bigraphs")
    fsub = fam.add_subparsers(dest="action", required=True)
    b = fsub.add_parser("build")
    b.add_argument("--item", type=int, required=True)
    b.add_argument("--m", type=int)
    b.add_argument("--n", type=int)
    b.add_argument("--affine", help="affine diagram for item 1, e.g. affA3")
    b.add_argument("--finite", help="finite diagram for item 1, e.g. A2")
    b.add_argument("--format", choices=("json", "dot"), default="json")
    b.add_argument("--output")
    c = fsub.add_parser("classify")
    c.add_argument("--input", required=True)
    c.add_argument("--output")
    fam.set_defaults(func=cmd_families)

    ham = sub.add_parser("hamiltonians", help="cylinder Hamiltonians from domino tilings")
    ham.add_argument("--m", type=int, required=True)
    ham.add_argument("--n", type=int, required=True)
    ham.add_argument("--tropical", action="store_true")
    ham.add_argument("--labels")
    ham.add_argument("--letters", action="store_true", help="print m=3, n=1 with the letters a..f")
    ham.add_argument("--format", choices=("text", "json"), default="text")
    ham.set_defaults(func=cmd_hamiltonians)

    ts = sub.add_parser("tsystem", help="evolve the T-system and its recurrences")
    tsub = ts.add_subparsers(dest="action", required=True)
    ev = tsub.add_parser("evolve")
    ev.add_argument("--input")
    ev.add_argument("--m", type=int)
    ev.add_argument("--n", type=int)
    ev.add_argument("--from", dest="t_from", type=int, default=-6)
    ev.add_argument("--to", dest="t_to", type=int, default=6)
    mode = ev.add_mutually_exclusive_group()
    mode.add_argument("--spec", help="JSON list (or {vertex: value}) of rational initial values")
    mode.add_argument("--symbolic", action="store_true")
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--emit")
    vr = tsub.add_parser("verify-rec")
    vr.add_argument("--m", type=int, required=True)
    vr.add_argument("--n", type=int, required=True)
    vr.add_argument("--from", dest="t_from", type=int, default=-2)
    vr.add_argument("--to", dest="t_to", type=int, default=1)
    vr.add_argument("--symbolic", action="store_true", help="exact polynomials instead of a random point")
    vr.add_argument("--seed", type=int, default=0)
    fr = tsub.add_parser("find-rec")
    fr.add_argument("--vertex", type=int, required=True)
    fr.add_argument("--step", type=int, required=True)
    fr.add_argument("--input")
    fr.add_argument("--m", type=int, default=3)
    fr.add_argument("--n", type=int, default=1)
    fr.add_argument("--length", type=int, default=40, help="number of samples")
    fr.add_argument("--seed", type=int, default=0)
    ts.set_defaults(func=cmd_tsystem)

    tr = sub.add_parser("tropical", help="max-plus dynamics and soliton speeds")
    trsub = tr.add_subparsers(dest="action", required=True)
    for name in ("evolve", "speeds"):
        q = trsub.add_parser(name)
        q.add_argument("--input")
        q.add_argument("--m", type=int)
        q.add_argument("--n", type=int)
        q.add_argument("--labels", help='JSON {"t": t0, "values": [...]} or a plain list (t0 = 1)')
        q.add_argument("--example", action="store_true", help="use the built-in A_3 (x) affA_1 fixture")
        if name == "evolve":
            q.add_argument("--from", dest="t_from", type=int, default=-5)
            q.add_argument("--to", dest="t_to", type=int, default=4)
            q.add_argument("--emit")
        else:
            q.add_argument("--window", type=int, default=400)
    vs = trsub.add_parser("verify-speed-conservation")
    vs.add_argument("--m", type=int, required=True)
    vs.add_argument("--n", type=int, required=True)
    vs.add_argument("--trials", type=int, default=50)
    vs.add_argument("--seed", type=int, default=0)
    vs.add_argument("--window", type=int, default=400)
    tr.set_defaults(func=cmd_tropical)

    ti = sub.add_parser("tilings", help="domino tilings of a cylinder")
    ti.add_argument("--m", type=int, required=True)
    ti.add_argument("--n", type=int, required=True)
    ti.add_argument("--show", type=int, default=0, help="render the first K tilings")
    ti.add_argument("--limit", type=int, help="tiling count ceiling")
    ti.add_argument("--format", choices=("text", "json"), default="text")
    ti.add_argument("--output")
    ti.set_defaults(func=cmd_tilings)

    va = sub.add_parser("verify-all", help="run the acceptance suite")
    va.add_argument("--level", choices=("desk",), default="desk")
    va.add_argument("--seed", type=int, default=0)
    va.add_argument("--only", help="comma-separated criterion numbers")
    va.add_argument("--format", choices=("text", "json"), default="text")
    va.add_argument("--timings", action="store_true", help="show run times (output is then not reproducible)")
    va.set_defaults(func=cmd_verify_all)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except VerificationError as exc:
        _emit(_failure(exc.reference or type(exc).__name__, str(exc), exc.residue))
        return 1
    except ResourceLimit as exc:
        print(f"tslab: resource ceiling hit: {exc}", file=sys.stderr)
        return 2
    except (UsageError, BadParameter, KeyError) as exc:
        print(f"tslab: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except TslabError as exc:
        _emit(_failure(type(exc).__name__, str(exc)))
        return 1
    except ValueError as exc:
        print(f"tslab: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())

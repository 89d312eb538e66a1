"""Command-line interface.

Exit status: 0 when the property holds / the operation succeeded / the
reproduction matched, 1 when the property fails or a reproduction does
not match, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import checks, harness, jsonio, minimize, ops, transforms
from .core import (
    ConstructionError,
    IndicatorSet,
    IntBox,
    QuadraticFunction,
    SeparableFunction,
    TableFunction,
    Witness,
    ext_add,
    format_value,
)

PROPERTIES = ("multimodular", "lnat", "submodular", "l-convex", "quad-mm", "l-class", "mm-set", "lnat-set")
MAPS = ("to-lnat", "from-lnat", "lift-mm", "lift-lnat", "conj-quad")
OPS = ("shift", "negate", "reverse", "permute", "scale-vars", "scale-values", "add-linear", "add",
       "restrict", "project", "convolve", "minkowski", "sweep-out")
DEFAULT_SIDE = 2


class InputError(ValueError):
    pass


# -- argument parsing helpers -------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _value_list(text: str) -> list:
    try:
        return [jsonio.decode_value(v.strip()) for v in text.split(",") if v.strip()]
    except jsonio.FormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _box(ranges, n: int) -> IntBox:
    if not ranges:
        return IntBox.cube(-DEFAULT_SIDE, DEFAULT_SIDE, n)
    if len(ranges) == 1:
        ranges = ranges * n
    if len(ranges) != n:
        raise InputError(f"--box given {len(ranges)} times for a function of {n} variables")
    return IntBox(tuple(a for a, _ in ranges), tuple(b for _, b in ranges))


def _as_table(obj, ranges) -> tuple[TableFunction, IntBox | None]:
    """Tabulate symbolic inputs on the requested box; tables pass through."""
    if isinstance(obj, TableFunction):
        return obj, None
    if isinstance(obj, IndicatorSet):
        box = _box(ranges, obj.dim) if ranges else obj.bounding_box().inflate(1)
        return obj.materialize(box), box
    if isinstance(obj, (QuadraticFunction, SeparableFunction)):
        box = _box(ranges, obj.dim)
        return obj.materialize(box), box
    raise InputError("expected a function (table, quadratic, separable or set)")


def _need(obj, cls, what):
    if not isinstance(obj, cls):
        raise InputError(f"this command needs a {what} input")
    return obj


# -- witness printing ----------------------------------------------------------


def _fmt_pt(p) -> str:
    return "(" + ",".join(str(v) for v in p) + ")"


def explain_witness(obj, w: Witness) -> list[str]:
    """The violated inequality with every value substituted."""
    P = w.points
    ev = obj
    name = "f"
    if w.frame == "lnat":
        d = transforms.bidiagonal_D(len(next(iter(P.values()))))
        ev = lambda p: obj(d @ np.asarray(p))  # noqa: E731
        name = "g"
    if w.kind == "multimodular":
        z, a, b = P["z"], P["d"], P["d'"]
        za, zb = tuple(map(sum, zip(z, a))), tuple(map(sum, zip(z, b)))
        zab = tuple(map(sum, zip(za, b)))
        terms = ((za, zb), (z, zab))
        head = f"f(z+d) + f(z+d') >= f(z) + f(z+d+d')  with z={_fmt_pt(z)}, d={_fmt_pt(a)}, d'={_fmt_pt(b)}"
    elif w.kind == "submodular":
        terms = ((P["x"], P["y"]), (P["join"], P["meet"]))
        head = "f(x) + f(y) >= f(x v y) + f(x ^ y)"
    elif w.kind == "midpoint":
        terms = ((P["p"], P["q"]), (P["ceil"], P["floor"]))
        head = f"{name}(p) + {name}(q) >= {name}(ceil((p+q)/2)) + {name}(floor((p+q)/2))"
        if w.frame == "lnat":
            head += "   where g(p) = f(D p)"
    elif w.kind == "translation":
        q = P["q"]
        return [
            f"translation: h(q+1) = h(q) + r fails at q={_fmt_pt(q)}",
            f"  h{_fmt_pt(P['q+1'])} = {format_value(w.lhs)}  !=  {format_value(w.rhs)}",
        ]
    elif w.kind == "quadratic-criterion":
        i, j = P["ij"]
        return [
            f"a_ij - a_i,j+1 - a_i+1,j + a_i+1,j+1 <= 0 fails at (i,j)=({i},{j}): value {format_value(w.rhs)} > 0"
        ]
    else:  # L-class
        if "ij" in P:
            i, j = P["ij"]
            return [f"off-diagonal b_{i}{j} = {format_value(w.rhs)} > 0"]
        i, _ = P["ii"]
        return [f"b_{i}{i} = {format_value(w.lhs)} < sum_j |b_{i}j| = {format_value(w.rhs)}"]
    (l1, l2), (r1, r2) = terms
    vals = [ev(p) for p in (l1, l2, r1, r2)]
    lhs, rhs = ext_add(vals[0], vals[1]), ext_add(vals[2], vals[3])
    return [
        head,
        f"  {name}{_fmt_pt(l1)} + {name}{_fmt_pt(l2)} = {format_value(vals[0])} + {format_value(vals[1])} = {format_value(lhs)}",
        f"  {name}{_fmt_pt(r1)} + {name}{_fmt_pt(r2)} = {format_value(vals[2])} + {format_value(vals[3])} = {format_value(rhs)}",
        f"  {format_value(lhs)} < {format_value(rhs)}: violated",
    ]


# -- output --------------------------------------------------------------------


def _emit_function(args, obj, extra: dict | None = None):
    doc = jsonio.encode(obj)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(jsonio.dumps(doc) + "\n")
        if args.json:
            print(json.dumps({"written": args.output, **(extra or {})}))
        else:
            print(f"wrote {args.output}")
            for k, v in (extra or {}).items():
                print(f"{k}: {v}")
    else:
        if extra and not args.json:
            for k, v in extra.items():
                print(f"# {k}: {v}", file=sys.stderr)
        print(jsonio.dumps(doc))


# -- subcommands -------------------------------------------------------------------


def cmd_check(args) -> int:
    obj = jsonio.load(args.file)
    prop = args.property
    box = None
    if prop in ("quad-mm", "l-class"):
        target = _need(obj, QuadraticFunction, "quadratic")
        verdict = checks.is_quadratic_multimodular(target) if prop == "quad-mm" else checks.is_L_class(target)
    elif prop in ("mm-set", "lnat-set"):
        target = _need(obj, IndicatorSet, "set")
        verdict = (checks.is_multimodular_set if prop == "mm-set" else checks.is_lnat_set)(target)
        target = checks.set_table(target)
        box = target.box
    else:
        target, box = _as_table(obj, args.box)
        fn = {
            "multimodular": checks.is_multimodular,
            "lnat": checks.is_lnat,
            "submodular": checks.is_submodular,
            "l-convex": checks.is_L_convex,
        }[prop]
        verdict = fn(target)
    if args.json:
        out = jsonio.encode_verdict(verdict)
        if box is not None:
            out["box"] = [list(box.lower), list(box.upper)]
        print(json.dumps(out))
    else:
        if box is not None:
            print(f"box: {box}")
        print(f"{prop}: {'holds' if verdict.holds else 'FAILS'} ({verdict.checked} inequalities checked)")
        for k, v in verdict.notes.items():
            print(f"  {k}: {v}")
        if verdict.witness is not None:
            for line in explain_witness(target, verdict.witness):
                print(line)
    return 0 if verdict.holds else 1


def cmd_transform(args) -> int:
    obj = jsonio.load(args.file)
    m = args.map
    if m == "conj-quad":
        res = transforms.conjugate_quadratic(_need(obj, QuadraticFunction, "quadratic"))
        _emit_function(args, res)
        return 0
    f, box = _as_table(obj, args.box)
    window = args.window
    if m == "to-lnat":
        res = transforms.to_lnat(f)
    elif m == "from-lnat":
        res = transforms.from_lnat(f)
    elif m == "lift-mm":
        res = transforms.lift_multimodular(f, window)
    else:
        res = transforms.lift_lnat(f, window)
    _emit_function(args, res, {"input box": str(box or f.box), "result box": str(res.box)})
    return 0


def cmd_op(args) -> int:
    name = args.name
    files = args.files
    want = 2 if name in ("add", "convolve", "minkowski") else 1
    if len(files) != want:
        raise InputError(f"op {name} takes {want} input file(s), got {len(files)}")
    objs = [jsonio.load(p) for p in files]
    if name == "minkowski":
        s1, s2 = (_need(o, IndicatorSet, "set") for o in objs)
        _emit_function(args, ops.minkowski_sum(s1, s2))
        return 0
    if name == "sweep-out":
        if args.k is None:
            raise InputError("sweep-out needs --k")
        _emit_function(args, ops.sweep_out(_need(objs[0], QuadraticFunction, "quadratic"), args.k))
        return 0
    tables = [_as_table(o, args.box)[0] for o in objs]
    f = tables[0]

    def need(val, flag):
        if val is None:
            raise InputError(f"op {name} needs {flag}")
        return val

    if name == "shift":
        res = ops.shift(f, need(args.by, "--by"))
    elif name == "negate":
        res = ops.negate_vars(f)
    elif name == "reverse":
        res = ops.reverse_vars(f)
    elif name == "permute":
        res = ops.permute_vars(f, need(args.perm, "--perm"))
    elif name == "scale-vars":
        res = ops.scale_vars(f, int(need(args.s, "--s")))
    elif name == "scale-values":
        res = ops.scale_values(f, need(args.a, "--a"))
    elif name == "add-linear":
        res = ops.add_linear(f, need(args.c, "--c"))
    elif name == "add":
        res = ops.add(*tables)
    elif name == "restrict":
        res = ops.restrict(f, need(args.subset, "--subset"))
    elif name == "project":
        res = ops.project(f, need(args.subset, "--subset"))
    else:  # convolve
        res = ops.convolve(*tables)
    _emit_function(args, res, {"box": str(res.box)})
    return 0


def cmd_minimize(args) -> int:
    f, box = _as_table(jsonio.load(args.file), args.box)
    # default start: the lexicographically first point of dom f
    start = args.start if args.start is not None else f.effective_domain()[0]
    m = minimize.local_minimize(f, start)
    out = {
        "box": [list(f.box.lower), list(f.box.upper)],
        "start": list(start),
        "point": list(m.point),
        "value": jsonio.encode_value(m.value),
        "steps": m.steps,
        "verified": False,
    }
    ok = True
    if args.verify:
        b = minimize.brute_min(f)
        out["verified"] = True
        out["brute_value"] = jsonio.encode_value(b.value)
        out["brute_point"] = list(b.point)
        ok = b.value == m.value
        out["agrees"] = ok
    if args.json:
        print(json.dumps(out))
    else:
        print(f"box: {f.box}")
        print(f"start {_fmt_pt(start)} -> point {_fmt_pt(m.point)}, value {format_value(m.value)}, {m.steps} steps")
        if args.verify:
            print(f"brute force: value {format_value(b.value)} at {_fmt_pt(b.point)}; "
                  f"{'agrees' if ok else 'DISAGREES'}")
        else:
            print("brute force verification: not run")
    return 0 if ok else 1


def cmd_closure(args) -> int:
    rep = harness.closure_trial(args.op, args.trials, args.seed, args.n)
    if args.json:
        print(harness.report_json(rep.to_json()))
    else:
        print(f"{rep.operation}: preserved {rep.preserved}/{rep.trials}, expected {rep.expected}, observed {rep.observed}")
        for w in rep.witnesses[:1]:
            print(f"  first violation: {w.describe()}")
    return 0 if rep.expected == "N" or rep.violated == 0 else 1


def cmd_repro(args) -> int:
    kwargs = {}
    if args.id == "table-1":
        kwargs = {"trials": args.trials, "seed": args.seed}
    rep = harness.repro(args.id, strict=False, **kwargs)
    if args.json:
        print(harness.report_json(rep.to_json()))
    else:
        print(rep.to_text())
    return 0 if rep.matched else 1


def cmd_table1(args) -> int:
    reports = harness.table1_row(args.trials, args.seed)
    ok = all(r.matches for r in reports) and [r.observed for r in reports] == list("NYYNYYNN")
    if args.json:
        print(harness.report_json({"row": [r.to_json() for r in reports], "matched": ok}))
    else:
        print(harness.table1_text(reports))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multimodular", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output=False):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--box", type=_range, action="append", metavar="LO..HI",
                        help="tabulation box for symbolic inputs; repeat per coordinate or give once")
        if output:
            sp.add_argument("-o", "--output", help="write the resulting function here")

    c = sub.add_parser("check", help="test a convexity property")
    c.add_argument("--property", required=True, choices=PROPERTIES)
    c.add_argument("file")
    common(c)
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("transform", help="change of variables or lifting")
    t.add_argument("--map", required=True, choices=MAPS)
    t.add_argument("--window", type=_range, metavar="LO..HI", help="x0 range of a lifting")
    t.add_argument("file")
    common(t, output=True)
    t.set_defaults(func=cmd_transform)

    o = sub.add_parser("op", help="apply an operation")
    o.add_argument("name", choices=OPS)
    o.add_argument("files", nargs="+")
    o.add_argument("--by", type=_int_list, help="shift vector b in f(x+b)")
    o.add_argument("--perm", type=_int_list, help="permutation, e.g. 2,1,3")
    o.add_argument("--s", type=int, help="positive variable scaling")
    o.add_argument("--a", type=jsonio.decode_value, help="nonnegative value factor, e.g. 1/2")
    o.add_argument("--c", type=_value_list, help="linear term, e.g. 1,-1/2,0")
    o.add_argument("--subset", type=_int_list, help="1-based coordinates, e.g. 1,2,4")
    o.add_argument("--k", type=int, help="coordinate to sweep out (1-based)")
    common(o, output=True)
    o.set_defaults(func=cmd_op)

    m = sub.add_parser("minimize", help="local descent over the alternating directions")
    m.add_argument("--start", type=_int_list)
    m.add_argument("--verify", action="store_true", help="compare with exhaustive search")
    m.add_argument("file")
    common(m)
    m.set_defaults(func=cmd_minimize)

    cl = sub.add_parser("closure", help="random closure campaign for one operation")
    cl.add_argument("--op", required=True, choices=sorted(harness.EXPECTED))
    cl.add_argument("--trials", type=int, default=50)
    cl.add_argument("--seed", type=int, default=0)
    cl.add_argument("--n", type=int, choices=range(1, harness.MAX_DIM + 1))
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_closure)

    r = sub.add_parser("repro", help="reproduce a worked example")
    r.add_argument("id", choices=sorted(harness.REPRODUCTIONS))
    r.add_argument("--trials", type=int, default=50, help="table-1 only")
    r.add_argument("--seed", type=int, default=0, help="table-1 only")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_repro)

    tb = sub.add_parser("table1", help="multimodular row of the operations table")
    tb.add_argument("--trials", type=int, default=50)
    tb.add_argument("--seed", type=int, default=0)
    tb.add_argument("--json", action="store_true")
    tb.set_defaults(func=cmd_table1)
    return p


# flags whose values may start with "-" (negative bounds, vectors)
_VALUE_FLAGS = {"--box", "--window", "--by", "--perm", "--c", "--start", "--subset", "--a"}


def _glue_negative_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] != "-":
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except (jsonio.FormatError, InputError, ConstructionError, ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

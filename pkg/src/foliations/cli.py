"""Command-line front end.

Exit codes: 0 success, 1 domain error (error JSON on stdout), 2 usage error.
"""

import argparse
import json
import re
import sys

from . import building_data as bdm
from .coding import (
    closed_curve_of_word,
    nonzero_words,
    parse_symbols,
    represent_homology,
    represent_pi1,
    word_support,
)
from .errors import FoliationError, ScalarSyntaxError
from .exact_field import Scalar
from .genus2_glue import broken_isometry_map, five_partition, glue, marginals_hold, phi_table
from .jsonio import glued_from_json, scalar_json, torus_from_json
from .oracle import scene_for, trace_trajectory
from .svg import KINDS, render
from .torus_flow import (
    FlowTorus,
    continued_fraction,
    m_cut_euclid,
    reconstruct_from_euclid,
    street_set,
)
from .word_algebra import MatrixWord, conjugate_orbit, lift_T, reduce_pair, simple_curve_segments, simple_curve_word


class UsageError(Exception):
    pass


def _scalar_text(text):
    try:
        Scalar.parse(text)
    except ScalarSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read instance {path}: {exc}") from None


def _torus(args):
    if args.instance:
        return torus_from_json(_load_json(args.instance))
    if args.a is None or args.b is None or args.m is None:
        raise UsageError("give --instance or all of --a, --b, --m")
    d = args.d or 0
    return FlowTorus(Scalar.parse(args.a, d), Scalar.parse(args.b, d), Scalar.parse(args.m, d), d)


def _glued(args):
    if args.instance:
        t1, t2 = glued_from_json(_load_json(args.instance))
    else:
        need = (args.a1, args.b1, args.a2, args.b2, args.m)
        if any(x is None for x in need):
            raise UsageError("give --instance or all of --a1, --b1, --a2, --b2, --m")
        d = args.d or 0
        t1 = torus_from_json({"a": args.a1, "b": args.b1}, d, args.m)
        t2 = torus_from_json({"a": args.a2, "b": args.b2}, d, args.m)
    return glue(t1, t2)


def _pair_json(p):
    return {"A": str(p.A), "B": str(p.B), "crossing_index": p.crossing_index}


# -- commands -------------------------------------------------------------------


def cmd_streets(args):
    t = _torus(args)
    return {"torus": t.to_json(), "streets": street_set(t).to_json()}


def cmd_basis(args):
    t = _torus(args)
    ss = street_set(t)
    ls, (x, y), swapped = m_cut_euclid(t.a, t.b, t.m)
    return {
        "torus": t.to_json(),
        "a_star": scalar_json(ss.a_star),
        "b_star": scalar_json(ss.b_star),
        "h1": list(ss.classes[1]),
        "h2": list(ss.classes[2]),
        "euclid": {"l": ls, "base": [scalar_json(x), scalar_json(y)], "swapped": swapped},
    }


def cmd_euclid(args):
    d = args.d or 0
    A, B, m = (Scalar.parse(v, d) for v in (args.A, args.B, args.m))
    ls, (x, y), swapped = m_cut_euclid(A, B, m)
    back = reconstruct_from_euclid(ls, (x, y))
    return {
        "l": ls,
        "base": [scalar_json(x), scalar_json(y)],
        "swapped": swapped,
        "reconstructed": [scalar_json(v) for v in back],
    }


def cmd_cf(args):
    d = args.d or 0
    x, y = Scalar.parse(args.x, d), Scalar.parse(args.y, d)
    return {"quotients": continued_fraction(x, y, args.depth, generic=args.generic)}


def cmd_glue(args):
    gs = _glued(args)
    return {
        "surface": gs.to_json(),
        "streets1": gs.streets1.to_json(),
        "streets2": gs.streets2.to_json(),
        "points": {k: scalar_json(v) for k, v in gs.points().items()},
    }


def cmd_partition(args):
    gs = _glued(args)
    fp = five_partition(gs)
    out = fp.to_json()
    out["marginals_hold"] = marginals_hold(gs, fp)
    out["phi"] = {
        lab: {
            "word": str(e["word"]),
            "measure": scalar_json(e["measure"]),
            "published_nonzero": e["published_nonzero"],
        }
        for lab, e in phi_table(gs).items()
    }
    return out


def cmd_isometry(args):
    return broken_isometry_map(_glued(args)).to_json()


def _code_context(args):
    gs = _glued(args)
    return gs, five_partition(gs), broken_isometry_map(gs)


def cmd_code(args):
    gs, fp, bi = _code_context(args)
    out = {"levels": []}
    for n in range(1, args.depth + 1):
        ws = nonzero_words(bi, fp, n)
        total = sum((w.measure for w in ws), gs.m - gs.m)
        out["levels"].append({"length": n, "count": len(ws), "total_measure": scalar_json(total)})
    if args.word:
        w = word_support(bi, fp, parse_symbols(args.word))
        entry = w.to_json()
        if not w.is_zero():
            entry["pi1"] = str(represent_pi1(w, fp))
            entry["homology"] = list(represent_homology(w, fp))
            if w.shift:
                curve, measure, orient = closed_curve_of_word(w, fp)
                entry["closed_curve"] = {"word": str(curve), "measure": scalar_json(measure), "orientation": orient}
        out["word"] = entry
    return out


def cmd_words(args):
    gs, fp, bi = _code_context(args)
    ws = nonzero_words(bi, fp, args.len)
    return {"length": args.len, "count": len(ws), "words": [w.to_json() for w in ws]}


def cmd_simple_curve(args):
    w = simple_curve_word(args.K, args.L)
    return {
        "k": args.K,
        "l": args.L,
        "word": str(w),
        "plain": w.plain(),
        "segments": simple_curve_segments(args.K, args.L),
    }


def cmd_tcb(args):
    mw = MatrixWord.parse(args.word)
    p = lift_T(mw)
    reduced, steps = reduce_pair(p)
    return {
        "matrix": [list(r) for r in mw.matrix],
        "A": str(p.A),
        "B": str(p.B),
        "reduced": _pair_json(reduced),
        "steps": steps,
        "orbit": [_pair_json(q) for q in conjugate_orbit(p)],
    }


def _building_instance(args):
    if not args.instance:
        raise UsageError("building needs --instance FILE")
    return _load_json(args.instance)


def cmd_building(args):
    if args.action == "minimal-types":
        if args.genus is None:
            raise UsageError("minimal-types needs --genus")
        return {"genus": args.genus, "types": bdm.minimal_diagram_types(args.genus)}
    obj = _building_instance(args)
    if args.action == "conservation":
        res = bdm.check_conservation(bdm.TransitionMatrix.from_json(obj))
        return {"flux": scalar_json(res["flux"]), "direction": res["direction"]}
    bd = bdm.BuildingData.from_json(obj)
    if args.action == "validate":
        return bdm.validate_building_data(bd)
    return bdm.classify_foliation(bd)


def cmd_trace(args):
    gs = _glued(args)
    d = gs.torus1.d
    x = Scalar.parse(args.x, d)
    tr = trace_trajectory(scene_for(gs.torus1), scene_for(gs.torus2), x, args.steps)
    return {
        "points": [scalar_json(p) for p in tr.points],
        "symbols": list(tr.symbols),
        "word": "".join(f"R{q}" for q in tr.word),
        "translates": [list(t) for t in tr.translates],
    }


def cmd_render(args):
    if args.kind == "streets":
        t = _torus(args)
        doc = render("streets", streets=street_set(t), m=t.m)
    elif args.kind == "partition":
        gs = _glued(args)
        doc = render("partition", partition=five_partition(gs), m=gs.m)
    elif args.kind == "plane-diagram":
        if args.instance:
            obj = _load_json(args.instance)
            genus = int(obj["genus"]) if "genus" in obj else None
        else:
            genus = args.genus
        if genus is None:
            raise UsageError("plane-diagram needs --genus or a building-data --instance")
        doc = render("plane-diagram", genus=genus)
    else:
        doc = render(args.kind)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(doc)
    return {"kind": args.kind, "out": args.out, "bytes": len(doc.encode("utf-8"))}


# -- parser -----------------------------------------------------------------------


def _add_torus(p):
    p.add_argument("-d", type=int, default=None, help="radicand of Q(sqrt(d))")
    p.add_argument("--a", type=_scalar_text, help="measure |a|")
    p.add_argument("--b", type=_scalar_text, help="measure |b|")
    p.add_argument("--m", type=_scalar_text, help="obstacle measure m")
    p.add_argument("--instance", help="torus JSON file")


def _add_glued(p):
    p.add_argument("-d", type=int, default=None, help="radicand of Q(sqrt(d))")
    for name in ("a1", "b1", "a2", "b2"):
        p.add_argument(f"--{name}", type=_scalar_text)
    p.add_argument("--m", type=_scalar_text, help="shared obstacle measure")
    p.add_argument("--instance", help="glued-surface JSON file")


def build_parser():
    ap = argparse.ArgumentParser(prog="foliations", description="Slit-torus foliations: streets, gluing, coding.")
    ap.add_argument("-o", "--output", help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("streets", help="three streets of a slit torus")
    _add_torus(p)
    p.set_defaults(func=cmd_streets)

    p = sub.add_parser("basis", help="m-dependent basis and truncated Euclid data")
    _add_torus(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("euclid", help="m-cutted Euclidean algorithm")
    p.add_argument("-d", type=int, default=None)
    p.add_argument("--A", required=True, type=_scalar_text)
    p.add_argument("--B", required=True, type=_scalar_text)
    p.add_argument("--m", required=True, type=_scalar_text)
    p.set_defaults(func=cmd_euclid)

    p = sub.add_parser("cf", help="continued fraction of x/y")
    p.add_argument("-d", type=int, default=None)
    p.add_argument("--x", required=True, type=_scalar_text)
    p.add_argument("--y", required=True, type=_scalar_text)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--generic", action="store_true", help="fail if the expansion terminates early")
    p.set_defaults(func=cmd_cf)

    for name, func, helptext in (
        ("glue", cmd_glue, "glue two tori along the slit"),
        ("partition", cmd_partition, "five-piece partition and type"),
        ("isometry", cmd_isometry, "broken isometry of the glued surface"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_glued(p)
        p.set_defaults(func=func)

    p = sub.add_parser("code", help="coding semigroup summary")
    _add_glued(p)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--word", help="describe one word, e.g. R1R3")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("words", help="all nonzero words of a given length")
    _add_glued(p)
    p.add_argument("--len", type=int, required=True)
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("simple-curve", help="word of the simple closed curve with class (K, L)")
    p.add_argument("K", type=int)
    p.add_argument("L", type=int)
    p.set_defaults(func=cmd_simple_curve)

    p = sub.add_parser("tcb", help="lift a T1/T2 word to a basis pair")
    p.add_argument("--word", required=True, help="comma separated, e.g. T1,T2^3")
    p.set_defaults(func=cmd_tcb)

    p = sub.add_parser("building", help="building data checks")
    p.add_argument("action", choices=("validate", "classify", "minimal-types", "conservation"))
    p.add_argument("--instance")
    p.add_argument("--genus", type=int)
    p.set_defaults(func=cmd_building)

    p = sub.add_parser("trace", help="trace a trajectory with the geometric oracle")
    _add_glued(p)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--x", required=True, type=_scalar_text)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("render", help="write an SVG diagram")
    p.add_argument("--out", required=True)
    p.add_argument("--kind", default="streets", choices=KINDS)
    p.add_argument("-d", type=int, default=None)
    for name in ("a", "b", "a1", "b1", "a2", "b2", "m"):
        p.add_argument(f"--{name}", type=_scalar_text)
    p.add_argument("--instance")
    p.add_argument("--genus", type=int)
    p.set_defaults(func=cmd_render)
    return ap


_NEGATIVE = re.compile(r"^-(\d|sqrt\()")


def _glue_negative_values(argv):
    """Turn ``--b -1/2+...`` into ``--b=-1/2+...`` so argparse does not read a flag."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    for cap in ("depth", "len", "steps"):
        if getattr(args, cap, None) is not None and getattr(args, cap) < 1:
            parser.error(f"--{cap} must be positive")
    try:
        result = args.func(args)
    except (UsageError, ScalarSyntaxError) as exc:
        err = exc.to_json() if isinstance(exc, FoliationError) else {"error": "UsageError", "message": str(exc)}
        print(json.dumps(err), file=sys.stderr)
        return 2
    except FoliationError as exc:
        print(json.dumps(exc.to_json()))
        return 1
    except (ValueError, KeyError) as exc:
        print(json.dumps({"error": "InvalidInput", "message": str(exc)}))
        return 1
    text = json.dumps(result, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

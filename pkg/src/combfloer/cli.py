"""Command line interface: ``combfloer <command> FILE [options]``.

Every command prints one JSON report (or a short text rendering of it with
``--format text``). Exit codes: 0 ok, 1 bad input, 2 internal invariant or
theorem violation.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .errors import CombFloerError, NotAComplex, ParseError
from .floer import (build_complex, d_squared, euler_characteristic, geo_oracle,
                    heart_pairing_check, homology)
from .io import SCHEMA, dumps, format_rat, load_json, pair_from_dict, pair_to_dict, parse_rat, pt_json
from .lunes import all_lunes
from .surfaces import ArcSpec, Surface, num_alg, validate_pair


class IoError(CombFloerError):
    pass


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_rat(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _envelope(command, pair=None, payload=None, warnings=()):
    return {
        "schema": SCHEMA,
        "command": command,
        "flags": pair.flags.as_dict() if pair is not None else None,
        "payload": _jsonable(payload if payload is not None else {}),
        "warnings": list(warnings),
    }


def _read(path):
    try:
        return load_json(path)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _pair(args):
    return pair_from_dict(_read(args.file))


def _points(pair):
    return [{"id": p.id, "pos": pt_json(p.pos), "eps": p.eps, "along_alpha": format_rat(p.along_alpha),
             "along_beta": format_rat(p.along_beta)} for p in pair.points]


def _lune_list(lunes):
    out = []
    for (x, y), ls in sorted(lunes.items()):
        for lu in ls:
            out.append({"from": x, "to": y, "sign": lu.sign, "primitive": lu.primitive,
                        "area": lu.area, "arcs": {"alpha": list(lu.arcs[0]), "beta": list(lu.arcs[1])}})
    return out


# --- commands -----------------------------------------------------------------

def cmd_validate(args):
    pair = pair_from_dict(_read(args.file), check=False)
    errs = validate_pair(pair)
    payload = {"ok": not errs, "errors": [{"type": type(e).__name__, "message": str(e)} for e in errs]}
    return _envelope("validate", pair, payload), (0 if not errs else 1)


def cmd_intersections(args):
    pair = _pair(args)
    num, alg = num_alg(pair)
    return _envelope("intersections", pair, {"points": _points(pair), "num": num, "alg": alg}), 0


def cmd_lunes(args):
    pair = _pair(args)
    return _envelope("lunes", pair, {"lunes": _lune_list(all_lunes(pair))}), 0


def _complex_payload(pair, coeff):
    cx = build_complex(pair, coeff)
    sq, zero = d_squared(cx)
    warnings = list(cx.grade_warnings)
    payload = {
        "coeff": cx.coeff,
        "generators": [{"id": p.id, "eps": p.eps, "mod2_grade": cx.mod2_grade[p.id],
                        "rel_grade": cx.rel_grade[p.id]} for p in cx.generators],
        "differential": [[x, y, v] for x, row in enumerate(cx.matrix) for y, v in enumerate(row) if v],
        "components": cx.components,
        "d_squared_zero": zero,
    }
    if not zero:
        payload["d_squared"] = sq
        warnings.append("d o d != 0: the Floer hypotheses do not hold for this pair")
    return cx, payload, warnings


def cmd_complex(args):
    pair = _pair(args)
    _cx, payload, warnings = _complex_payload(pair, args.coeff.upper())
    return _envelope("complex", pair, payload, warnings), 0


def cmd_homology(args):
    pair = _pair(args)
    cx, payload, warnings = _complex_payload(pair, args.coeff.upper())
    num, alg = num_alg(pair)
    payload["num"], payload["alg"] = num, alg
    try:
        payload["homology"] = homology(cx)
        payload["euler"] = euler_characteristic(cx)
    except NotAComplex as exc:
        payload["homology"] = {"refused": "NotAComplex", "reason": str(exc)}
    if pair.surface is Surface.TORUS:
        payload["geo"] = geo_oracle(pair)
    return _envelope("homology", pair, payload, warnings), 0


def cmd_maslov(args):
    from .traces import boundary, m_x, m_y, maslov, maslov_plane_form, satisfies_arc_condition, trace_from_arcs
    pair = _pair(args)
    pts = pair.points
    for i in (args.from_, args.to):
        if not 0 <= i < len(pts):
            raise ParseError(f"no intersection point {i}")
    dirs = args.arcs.split(",")
    if len(dirs) != 2:
        raise ParseError("--arcs takes two directions, e.g. fwd,bwd")
    wraps = [int(w) for w in args.wraps.split(",")] if args.wraps else [0, 0]
    if len(wraps) != 2:
        raise ParseError("--wraps takes two integers, e.g. 0,1")
    t = trace_from_arcs(pair, pts[args.from_], pts[args.to],
                        ArcSpec.parse(dirs[0], wraps[0]), ArcSpec.parse(dirs[1], wraps[1]))
    if t is None:
        raise ParseError("the chosen arcs do not end at the same lift; no trace")
    bd = boundary(t)
    payload = {"from": args.from_, "to": args.to, "m_x": m_x(t), "m_y": m_y(t), "mu": maslov(t),
               "arc_condition": satisfies_arc_condition(t),
               "nu_alpha": list(bd.nu_alpha), "nu_beta": list(bd.nu_beta)}
    if payload["arc_condition"] and pair.surface is not Surface.SPHERE:
        payload["mu_planar"] = maslov_plane_form(t)
    return _envelope("maslov", pair, payload), 0


def cmd_hearts(args):
    pair = _pair(args)
    rep = heart_pairing_check(pair, strict=True)
    return _envelope("hearts", pair, rep), 0


def cmd_check(args):
    from .checks import run_checks
    pair = _pair(args)
    rep = run_checks(pair)
    return _envelope("check", pair, rep), (0 if rep["ok"] else 2)


def cmd_render(args):
    from .render import render_svg
    pair = _pair(args)
    svg = render_svg(pair, all_lunes(pair) if args.lunes else None)
    try:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        raise IoError(f"cannot write {args.output}: {exc.strerror or exc}") from exc
    return _envelope("render", pair, {"output": args.output, "lunes": bool(args.lunes)}), 0


def _index_pair(text):
    try:
        a, b = text.split(",")
        return a.strip(), b.strip()
    except ValueError as exc:
        raise ParseError(f"expected I,J, got {text!r}") from exc


def cmd_reduce(args):
    from .reduction import chain_maps, complex_from_dict, complex_to_dict, homology_dims, verify_connection
    cc = complex_from_dict(_read(args.file), args.coeff.upper())
    bad = verify_connection(cc)
    if bad:
        raise ParseError(f"not a connection complex: {bad[0]}")
    p, q = _index_pair(args.pair)
    cm = chain_maps(cc, p, q)
    payload = {"pivot": [p, q], "reduced": complex_to_dict(cm.reduced), "identities": cm.checks,
               "homology_before": homology_dims(cc), "homology_after": homology_dims(cm.reduced)}
    code = 0 if cm.ok and payload["homology_before"] == payload["homology_after"] else 2
    return _envelope("reduce", None, payload), code


def _write_pair(pair, path):
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(dumps(pair_to_dict(pair)))
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_isotopy_cancel(args):
    from .isotopy import cancel_pair, verify_move
    pair = _pair(args)
    a, b = (int(v) for v in _index_pair(args.pair))
    lunes = all_lunes(pair).get((a, b), [])
    if not lunes:
        raise ParseError(f"there is no lune from {a} to {b}")
    lune = next((lu for lu in lunes if lu.primitive), lunes[0])
    after = cancel_pair(pair, lune)
    rep = verify_move(pair, after, a, b, strict=pair.flags.floer_hypotheses)
    _write_pair(after, args.output)
    return _envelope("isotopy-cancel", after, {"output": args.output, "crossings": len(after.points),
                                               "verification": rep}), 0


def cmd_isotopy_create(args):
    from .isotopy import create_pair
    pair = _pair(args)
    after = create_pair(pair, parse_rat(args.anchor), parse_rat(args.target))
    _write_pair(after, args.output)
    return _envelope("isotopy-create", after, {"output": args.output, "crossings": len(after.points)}), 0


# --- plumbing -----------------------------------------------------------------

def _text(report) -> str:
    lines = [f"{report['command']}:"]

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}.{k}" if prefix else k, x)
        else:
            lines.append(f"  {prefix} = {v}")

    if report.get("flags"):
        walk("flags", report["flags"])
    walk("", report.get("payload", {}))
    for w in report.get("warnings", []):
        lines.append(f"  warning: {w}")
    if "error" in report:
        lines.append(f"  error: {report['error']['type']}: {report['error']['message']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="combfloer", description="Combinatorial Floer homology of curve pairs.")
    ap.add_argument("--version", action="version", version=f"combfloer {__version__}")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate, "check that a pair file is well formed and transverse")
    add("intersections", cmd_intersections, "list crossings with signs")
    add("lunes", cmd_lunes, "list combinatorial lunes")
    for name, fn in (("complex", cmd_complex), ("homology", cmd_homology)):
        p = add(name, fn, f"Floer {name}")
        p.add_argument("--coeff", choices=("f2", "z", "F2", "Z"), default="f2")
    p = add("maslov", cmd_maslov, "index of the trace given by two arcs")
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--arcs", default="fwd,fwd")
    p.add_argument("--wraps", default=None)
    add("hearts", cmd_hearts, "broken hearts and their pairing")
    add("check", cmd_check, "run every invariant suite")
    p = add("render", cmd_render, "draw an SVG")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--lunes", action="store_true")
    p = add("reduce", cmd_reduce, "cancel a unit pivot in a complex file")
    p.add_argument("--pair", required=True, help="pbar,qbar: generator names with nu(qbar, pbar) a unit")
    p.add_argument("--coeff", choices=("f2", "z", "F2", "Z"), default="z")
    p = add("isotopy-cancel", cmd_isotopy_cancel, "remove two crossings across a lune")
    p.add_argument("--pair", required=True, help="I,J: a lune from I to J")
    p.add_argument("-o", "--output", required=True)
    p = add("isotopy-create", cmd_isotopy_create, "push a finger of beta across alpha")
    p.add_argument("--anchor", required=True, help="beta parameter where the finger starts")
    p.add_argument("--target", required=True, help="alpha parameter the finger crosses")
    p.add_argument("-o", "--output", required=True)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.fn(args)
    except CombFloerError as exc:
        report = _envelope(args.command)
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = exc.exit_code
    out = dumps(report) if args.format == "json" else _text(report)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

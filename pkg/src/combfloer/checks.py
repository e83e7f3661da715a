"""Invariant suites run by ``combfloer check`` and by the acceptance tests.

Each suite returns a dict with a ``status`` of pass, fail, reported or skipped.
``reported`` means a property failed where the theory does not promise it
(the Floer hypotheses do not hold), so it is shown but not counted.
"""

from __future__ import annotations

import itertools
from typing import Callable

from .errors import CombFloerError
from .floer import (action_order_check, build_complex, d_squared, euler_characteristic,
                    geo_oracle, heart_pairing_check, homology)
from .isotopy import cancel_and_verify, cancellable, nolune_check, verify_move
from .lunes import all_lunes, is_combinatorial_lune, primitive_existence_check
from .reduction import chain_maps, from_floer, homology_dims, valid_pivots, verify_connection
from .surfaces import ArcSpec, CurvePair, Surface, validate_pair
from .traces import (all_arc_traces, boundary, boundary_from_faces, cancellation_defect,
                     loop_area, maslov, maslov_plane_form, satisfies_arc_condition, trace_area,
                     trace_from_arcs)


def _status(ok: bool, pair: CurvePair, promised: bool = True) -> str:
    if ok:
        return "pass"
    return "fail" if promised and pair.flags.floer_hypotheses else "reported"


def lattice_offsets(surface: Surface, r: int = 3) -> list:
    rank = surface.lattice_rank
    if rank == 0:
        return []
    if rank == 1:
        return [(a, 0) for a in range(-r, r + 1) if a]
    return [(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1) if (a, b) != (0, 0)]


def every_arc_trace(pair: CurvePair) -> list:
    return [t for x, y in itertools.permutations(pair.points, 2) for t in all_arc_traces(pair, x, y)]


def suite_validate(pair: CurvePair, ctx: dict) -> dict:
    errs = validate_pair(pair)
    return {"status": "pass" if not errs else "fail", "errors": [str(e) for e in errs]}


def suite_traces(pair: CurvePair, ctx: dict) -> dict:
    bad = []
    n = 0
    for t in ctx["traces"]:
        n += 1
        if not t.arrangement.euler_ok():
            bad.append(f"{t}: Euler count")
        if trace_area(t) != loop_area(t):
            bad.append(f"{t}: area {trace_area(t)} != shoelace {loop_area(t)}")
        b1, b2 = boundary(t), boundary_from_faces(t)
        if (b1.nu_alpha, b1.nu_beta) != (b2.nu_alpha, b2.nu_beta):
            bad.append(f"{t}: boundary from arcs and from faces differ")
        if pair.surface is not Surface.SPHERE and satisfies_arc_condition(t):
            if maslov(t) != maslov_plane_form(t):
                bad.append(f"{t}: trace formula {maslov(t)} != planar formula {maslov_plane_form(t)}")
    return {"status": "pass" if not bad else "fail", "traces": n, "violations": bad}


def suite_cancellation(pair: CurvePair, ctx: dict) -> dict:
    gs = lattice_offsets(pair.surface)
    if not gs:
        return {"status": "skipped", "reason": "no deck transformations"}
    bad = []
    for t in ctx["traces"]:
        for g in gs:
            d = cancellation_defect(t, g)
            if d:
                bad.append(f"{t}, g={g}: defect {d}")
    out = {"status": "pass" if not bad else "fail", "offsets": len(gs), "violations": bad}
    if pair.surface is Surface.ANNULUS:
        wraps = {}
        for x in pair.points:
            for da, db in itertools.product((1, -1), repeat=2):
                t = trace_from_arcs(pair, x, x, ArcSpec(da, 1), ArcSpec(db, 1))
                if t is not None:
                    wraps[f"x{x.id} {da:+d},{db:+d}"] = maslov(t)
        out["full_wrap_mu"] = wraps
        if any(wraps.values()):
            out["status"] = "fail"
    return out


def suite_lunes(pair: CurvePair, ctx: dict) -> dict:
    lunes = ctx["lunes"]
    bad = []
    listing = []
    for (x, y), ls in sorted(lunes.items()):
        for lu in ls:
            if not is_combinatorial_lune(lu.trace):
                bad.append(f"{x}->{y}: not a combinatorial lune")
            mu = maslov(lu.trace)
            if mu != 1:
                bad.append(f"{x}->{y}: index {mu}")
            listing.append({"from": x, "to": y, "sign": lu.sign, "primitive": lu.primitive})
    prim = primitive_existence_check(pair, lunes)
    status = "pass" if not bad and prim["holds"] else "fail"
    return {"status": status, "lunes": listing, "primitive": prim, "violations": bad}


def suite_complex(pair: CurvePair, ctx: dict) -> dict:
    out = {}
    ok = True
    for coeff in ("F2", "Z"):
        cx = build_complex(pair, coeff, ctx["lunes"])
        _sq, zero = d_squared(cx, raise_on_violation=False)
        entry = {"d_squared_zero": zero}
        if zero:
            entry["homology"] = homology(cx)
            entry["euler"] = euler_characteristic(cx)
        elif pair.flags.floer_hypotheses:
            ok = False
        out[coeff] = entry
    num = len(pair.points)
    if pair.surface is Surface.TORUS:
        geo = geo_oracle(pair)
        out["geo"] = geo
        out["num"] = num
        out["geo_eq_num_iff_no_lunes"] = (geo == num) == (not ctx["lunes"])
        ok = ok and out["geo_eq_num_iff_no_lunes"]
        if pair.flags.floer_hypotheses:
            dim = out["F2"]["homology"]["dim"]
            out["dim_equals_geo"] = dim == geo
            ok = ok and out["dim_equals_geo"]
    out["status"] = _status(ok, pair)
    return out


def suite_hearts(pair: CurvePair, ctx: dict) -> dict:
    rep = heart_pairing_check(pair, ctx["lunes"], strict=False)
    cx = build_complex(pair, "F2", ctx["lunes"])
    _sq, zero = d_squared(cx, raise_on_violation=False)
    even = all(c % 2 == 0 for c in rep["counts"].values())
    rep["agrees_with_d_squared"] = even == zero
    ok = rep["holds"] and rep["agrees_with_d_squared"]
    rep["status"] = "pass" if ok else ("fail" if not rep["agrees_with_d_squared"] else _status(False, pair))
    return rep


def suite_action(pair: CurvePair, ctx: dict) -> dict:
    rep = action_order_check(pair, ctx["lunes"], strict=False)
    rep["status"] = _status(rep["holds"], pair)
    rep["areas"] = {k: [str(a) for a in v] for k, v in rep["areas"].items()}
    if rep["action"] is not None:
        rep["action"] = {str(k): str(v) for k, v in rep["action"].items()}
    return rep


def suite_nolune(pair: CurvePair, ctx: dict) -> dict:
    rep = nolune_check(pair, ctx["lunes"], strict=False)
    rep["status"] = _status(rep["holds"], pair)
    return rep


def suite_reduction(pair: CurvePair, ctx: dict) -> dict:
    out = {"pivots": 0, "violations": []}
    for coeff in ("F2", "Z"):
        cx = build_complex(pair, coeff, ctx["lunes"])
        if not d_squared(cx, raise_on_violation=False)[1]:
            out[coeff] = "not a complex"
            continue
        cc = from_floer(cx)
        v = verify_connection(cc)
        if v:
            out["violations"] += v
            continue
        base = homology_dims(cc)
        for p, q in valid_pivots(cc):
            out["pivots"] += 1
            cm = chain_maps(cc, p, q)
            if not cm.ok:
                out["violations"].append(f"{coeff} pivot ({p},{q}): {cm.checks}")
            if homology_dims(cm.reduced) != base:
                out["violations"].append(f"{coeff} pivot ({p},{q}): homology changed")
        out[coeff] = base
    out["status"] = "pass" if not out["violations"] else "fail"
    return out


def suite_isotopy(pair: CurvePair, ctx: dict) -> dict:
    moves = []
    ok = True
    for lu in cancellable(pair, ctx["lunes"]):
        try:
            from .isotopy import cancel_pair
            after = cancel_pair(pair, lu)
            rep = verify_move(pair, after, lu.x.id, lu.y.id, strict=False)
        except CombFloerError as exc:
            moves.append({"pair": [lu.x.id, lu.y.id], "error": f"{type(exc).__name__}: {exc}"})
            ok = False
            continue
        ok = ok and rep["holds"]
        moves.append({"pair": [lu.x.id, lu.y.id], "crossings_after": len(after.points),
                      "holds": rep["holds"], "hf": [rep["hf_before"], rep["hf_after"]],
                      "reduction_agrees": rep["reduction_agrees"]})
    return {"status": _status(ok, pair), "moves": moves}


SUITES: dict[str, Callable] = {
    "validate": suite_validate,
    "traces": suite_traces,
    "cancellation": suite_cancellation,
    "lunes": suite_lunes,
    "complex": suite_complex,
    "hearts": suite_hearts,
    "action": suite_action,
    "nolune": suite_nolune,
    "reduction": suite_reduction,
    "isotopy": suite_isotopy,
}


def run_checks(pair: CurvePair) -> dict:
    ctx = {"lunes": all_lunes(pair), "traces": every_arc_trace(pair)}
    results = {}
    for name, fn in SUITES.items():
        try:
            results[name] = fn(pair, ctx)
        except CombFloerError as exc:
            results[name] = {"status": "fail", "error": f"{type(exc).__name__}: {exc}"}
    results_ok = all(r["status"] != "fail" for r in results.values())
    return {"ok": results_ok, "suites": results}


__all__ = ["SUITES", "run_checks", "cancel_and_verify", "every_arc_trace", "lattice_offsets"]

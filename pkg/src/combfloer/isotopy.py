"""Isotopy moves on beta: cancel a crossing pair across a lune, or create one with a finger.

Moves are exact PL rewrites. Alpha is never touched, so crossings that survive
a move keep their parameter along alpha; that is how they are matched up.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (ClearanceFailure, CombFloerError, InvariantViolated, NotPrimitive,
                     PathObstructed)
from .floer import build_complex, d_squared, homology
from .geometry import Pt, sign
from .lunes import Lune, all_lunes
from .reduction import ConnectionComplex, from_floer, reduce
from .surfaces import Curve, CurvePair, lattice_window

MAX_HALVINGS = 24


@dataclass
class IsotopyMove:
    kind: str  # "cancel" or "create"
    before: CurvePair
    after: CurvePair
    points: tuple  # alpha parameters of the two crossings removed or added


def _perp_far(d: Pt, side: int) -> Pt:
    # normal of d pointing to the right when side > 0, scaled to max-norm 1
    n = Pt(d.y, -d.x) if side > 0 else Pt(-d.y, d.x)
    return n * (Fraction(1) / max(abs(n.x), abs(n.y)))


def _line_meet(p: Pt, d: Pt, q: Pt, e: Pt) -> Optional[Pt]:
    den = d.cross(e)
    if den == 0:
        return None
    t = (q - p).cross(e) / den
    return p + d * t


def _offset_path(verts: list, side: int, delta: Fraction) -> Optional[list]:
    """Mitered offset of an open polyline; None if two consecutive lines are parallel but distinct."""
    dirs = [b - a for a, b in zip(verts, verts[1:])]
    lines = [(a + _perp_far(d, side) * delta, d) for a, d in zip(verts, dirs)]
    out = []
    for (p, d), (q, e) in zip(lines, lines[1:]):
        m = _line_meet(p, d, q, e)
        if m is None:
            if d.cross(q - p) != 0:
                return None
            m = q
        out.append(m)
    return lines, out


def _rebuild(curve: Curve, offset: Pt, lo: Fraction, hi: Fraction, repl: list) -> Curve:
    """Replace the lifted parameter range [lo, hi] of curve+offset by the path repl (lo end first)."""
    n = curve.n
    dk = curve.deck_pt
    verts = [repl[-1]]
    for k in range(math.floor(hi) + 1, math.ceil(lo + n)):
        verts.append(curve.vertex(k) + offset)
    verts.extend(p + dk for p in repl[:-1])
    clean = []
    for v in verts:
        if not clean or clean[-1] != v:
            clean.append(v)
    if len(clean) > 1 and clean[-1] == clean[0] + dk:
        clean.pop()
    return Curve(tuple(v - offset for v in clean), curve.deck)


def _alpha_params(pair: CurvePair) -> list:
    return [p.along_alpha for p in pair.points]


def cancel_pair(pair: CurvePair, lune: Lune) -> CurvePair:
    """Reroute beta's arc of a primitive lune to the far side of alpha."""
    if not lune.primitive:
        raise NotPrimitive(f"lune {lune.x.id}->{lune.y.id} is not primitive")
    tr = lune.trace
    pa, pb = tr.path_a, tr.path_b
    a_verts = pa.vertices()
    b_verts = pb.vertices()
    side = sign((a_verts[1] - a_verts[0]).cross(b_verts[1] - b_verts[0]))
    # the lune lies on the `side` of A; the offset goes to the other one
    far = 1 if side > 0 else -1
    b_first = b_verts[1] - b_verts[0]
    b_last = b_verts[-1] - b_verts[-2]
    old_num = len(pair.points)
    survivors = sorted(set(_alpha_params(pair)) - {lune.x.along_alpha, lune.y.along_alpha})
    delta = Fraction(1, 4)
    for _ in range(MAX_HALVINGS):
        delta /= 2
        got = _offset_path(a_verts, far, delta)
        if got is None:
            raise ClearanceFailure("alpha arc has parallel consecutive segments")
        lines, inner = got
        px = _line_meet(lines[0][0], lines[0][1], b_verts[0], b_first)
        py = _line_meet(lines[-1][0], lines[-1][1], b_verts[-1], b_last)
        if px is None or py is None:
            continue
        path = [px] + inner + [py]  # in the x -> y order
        if pb.s0 < pb.s1:
            lo, hi, repl = pb.s0, pb.s1, path
        else:
            lo, hi, repl = pb.s1, pb.s0, path[::-1]
        # px and py sit on beta just outside x and y; widen the replaced range to them
        t_lo = _move_param(pb.curve, lo, pb.offset, repl[0])
        t_hi = _move_param(pb.curve, hi, pb.offset, repl[-1])
        if t_lo is None or t_hi is None:
            continue
        beta = _rebuild(pb.curve, pb.offset, t_lo, t_hi, repl)
        try:
            new = CurvePair(pair.surface, pair.alpha, beta)
        except CombFloerError:
            continue
        if len(new.points) == old_num - 2 and sorted(_alpha_params(new)) == survivors:
            return new
    raise ClearanceFailure("no clearance found for the reroute; refine the geometry")


def _move_param(curve: Curve, s: Fraction, offset: Pt, p: Pt) -> Optional[Fraction]:
    """Parameter of p on the segment of curve+offset that contains s, if it lies there."""
    k = math.floor(s)
    if s == k:
        # s sits on a vertex; p may be on either neighbouring segment
        cands = (k - 1, k)
    else:
        cands = (k,)
    for j in cands:
        a, b = curve.segment(j)
        a, b = a + offset, b + offset
        d = b - a
        if d.cross(p - a) != 0:
            continue
        t = (p - a).dot(d) / d.dot(d)
        if 0 < t < 1:
            return j + t
    return None


def _nearest_lift(pair: CurvePair, p: Pt, q: Pt) -> Pt:
    best = None
    for h in lattice_window(pair.surface, (p.x - 1, p.y - 1, p.x + 1, p.y + 1), (q.x, q.y, q.x, q.y)):
        cand = q + Pt(*h)
        dd = (cand - p).dot(cand - p)
        if best is None or dd < best[0]:
            best = (dd, cand)
    return q if best is None else best[1]


def create_pair(pair: CurvePair, anchor, target, overshoot=Fraction(1, 2),
                width=None) -> CurvePair:
    """Push a finger of beta from beta(anchor) across alpha at alpha(target).

    anchor and target are curve parameters. The finger is the parallelogram
    P, Q1, Q2, P' where P = beta(anchor), Q1 lies past alpha(target) on the ray
    from P, and P' = beta(anchor + width).
    """
    beta = pair.beta
    anchor, target = Fraction(anchor), Fraction(target)
    k = math.floor(anchor)
    room = k + 1 - anchor
    tau = Fraction(width) if width is not None else min(Fraction(1, 16), room / 2)
    if not 0 < tau < room:
        raise PathObstructed("finger width does not fit in the anchor segment")
    p = beta.point(anchor)
    seg = beta.vertex(k + 1) - beta.vertex(k)
    q = _nearest_lift(pair, p, pair.alpha.point(target))
    u = q - p
    if u.is_zero() or u.cross(seg) == 0:
        raise PathObstructed("finger direction is degenerate")
    q1 = q + u * overshoot
    w = seg * tau
    p2 = beta.point(anchor + tau)
    finger = [p, q1, q1 + w, p2]
    verts = []
    for j in range(beta.n):
        verts.append(beta.vertex(j))
        if j == k % beta.n:
            shift = beta.deck_pt * (-(k // beta.n))
            verts.extend(v + shift for v in finger)
    clean = []
    for v in verts:
        if not clean or clean[-1] != v:
            clean.append(v)
    new_beta = Curve(tuple(clean), beta.deck)
    try:
        new = CurvePair(pair.surface, pair.alpha, new_beta)
    except CombFloerError as exc:
        raise PathObstructed(f"finger is not a clean move: {exc}") from exc
    if len(new.points) != len(pair.points) + 2 or not set(_alpha_params(pair)) <= set(_alpha_params(new)):
        raise PathObstructed(f"finger changes the crossings by {len(new.points) - len(pair.points)}, not +2")
    return new


# --- verification -------------------------------------------------------------

def _matching(before: CurvePair, after: CurvePair) -> dict:
    """before id -> after id for crossings that survive (same alpha parameter)."""
    by_param = {p.along_alpha: p.id for p in after.points}
    return {p.id: by_param[p.along_alpha] for p in before.points if p.along_alpha in by_param}


def verify_move(before: CurvePair, after: CurvePair, x: int, y: int, strict: bool = True) -> dict:
    """Check n'(x', y') = n(x', y') + n(x', y) n(x, y') mod 2 and HF invariance."""
    cb, ca = build_complex(before, "F2"), build_complex(after, "F2")
    n, n2 = cb.matrix, ca.matrix
    match = _matching(before, after)
    report = {"holds": True, "n_xy": n[x][y], "survivors": len(match), "mismatches": [],
              "hf_before": None, "hf_after": None, "reduction_agrees": None}
    if n[x][y] % 2 != 1:
        report["holds"] = False
        report["mismatches"].append(f"n({x},{y}) = {n[x][y]} is not 1 mod 2")
    if set(match) != set(range(len(before.points))) - {x, y}:
        report["holds"] = False
        report["mismatches"].append("crossings outside the move are not in bijection")
    for xp, xa in match.items():
        for yp, ya in match.items():
            want = (n[xp][yp] + n[xp][y] * n[x][yp]) % 2
            if n2[xa][ya] % 2 != want:
                report["holds"] = False
                report["mismatches"].append(f"n'({xp},{yp}) = {n2[xa][ya]} but expected {want}")
    if d_squared(cb, False)[1] and d_squared(ca, False)[1]:
        report["hf_before"] = homology(cb)["dim"]
        report["hf_after"] = homology(ca)["dim"]
        if report["hf_before"] != report["hf_after"]:
            report["holds"] = False
    # the same move seen algebraically: reduce at pivot (p̄, q̄) = (y, x)
    if n[x][y] % 2 == 1:
        cc = from_floer(cb, with_order=False)
        red = reduce(ConnectionComplex(cc.P, cc.nu, None, None, "F2"), f"x{y}", f"x{x}")
        agree = all(red.v(f"x{xp}", f"x{yp}") % 2 == n2[xa][ya] % 2
                    for xp, xa in match.items() for yp, ya in match.items())
        report["reduction_agrees"] = agree
        if not agree:
            report["holds"] = False
    if strict and not report["holds"]:
        raise InvariantViolated(f"isotopy move check failed: {report['mismatches'][:3]}")
    return report


def nolune_check(pair: CurvePair, lunes: Optional[dict] = None, strict: bool = True) -> dict:
    lunes = all_lunes(pair) if lunes is None else lunes
    cx = build_complex(pair, "F2", lunes)
    n = cx.matrix
    N = len(pair.points)
    report = {"holds": True, "instances": 0, "violations": []}
    for (x, y), ls in sorted(lunes.items()):
        if n[x][y] != 1 or not any(lu.primitive for lu in ls):
            continue
        for xp in range(N):
            if xp in (x, y) or n[xp][y] != 1:
                continue
            for yp in range(N):
                if yp in (x, y, xp) or n[x][yp] != 1:
                    continue
                report["instances"] += 1
                if lunes.get((xp, yp)):
                    report["holds"] = False
                    report["violations"].append([x, y, xp, yp])
    if strict and not report["holds"] and pair.flags.floer_hypotheses:
        raise InvariantViolated(f"lunes found where none may exist: {report['violations']}")
    return report


# --- random schedules -----------------------------------------------------------

def random_create(pair: CurvePair, rng: random.Random, tries: int = 40) -> Optional[tuple]:
    """A random valid finger; returns (new pair, alpha params of the new crossings)."""
    for _ in range(tries):
        k = rng.randrange(pair.beta.n)
        anchor = k + Fraction(rng.randint(1, 15), 16)
        target = Fraction(rng.randrange(pair.alpha.n * 64), 64)
        try:
            new = create_pair(pair, anchor, target, overshoot=Fraction(rng.randint(1, 4), 8),
                              width=min(Fraction(1, 32), (k + 1 - anchor) / 2))
        except CombFloerError:
            continue
        fresh = sorted(set(_alpha_params(new)) - set(_alpha_params(pair)))
        return new, tuple(fresh)
    return None


def cancellable(pair: CurvePair, lunes: Optional[dict] = None) -> list:
    """Primitive lunes x -> y with n(x, y) = 1 mod 2."""
    lunes = all_lunes(pair) if lunes is None else lunes
    return [ls[0] if len(ls) == 1 else next(lu for lu in ls if lu.primitive)
            for (x, y), ls in sorted(lunes.items())
            if len(ls) % 2 == 1 and any(lu.primitive for lu in ls)]


def cancel_and_verify(pair: CurvePair, lune: Lune) -> tuple:
    new = cancel_pair(pair, lune)
    return new, verify_move(pair, new, lune.x.id, lune.y.id)


def random_wiggle(pair: CurvePair, rng: random.Random, fingers: int = 2) -> CurvePair:
    """Apply up to ``fingers`` random finger moves to beta."""
    for _ in range(fingers):
        got = random_create(pair, rng)
        if got is not None:
            pair = got[0]
    return pair

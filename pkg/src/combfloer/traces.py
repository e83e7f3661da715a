"""(alpha, beta)-traces, kept in lifted form in the plane.

A trace is a pair of lifted paths Ã (along alpha) and B̃ (along beta) with
common endpoints. Its two-chain is the winding number of the loop Ã - B̃,
computed on the arrangement of the segments the paths run along.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .errors import (ArcConditionRequired, EndpointMismatch, InvariantViolated,
                     OddTraceSum, PointClassificationFailed)
from .geometry import Pt, build_arrangement, sign, signed_area, winding_by_propagation
from .surfaces import (ArcSpec, CurvePair, IntersectionPoint, LiftedPath, Surface,
                       lattice_window, lift_path, same_component, target_param)


def _pieces(path: LiftedPath):
    """Yield (segment index k, t0, t1) covered by the path, 0 <= t0 < t1 <= 1."""
    lo, hi = sorted((path.s0, path.s1))
    k = math.floor(lo)
    while k < hi:
        t0 = max(lo - k, Fraction(0))
        t1 = min(hi - k, Fraction(1))
        if t1 > t0:
            yield k, t0, t1
        k += 1


class Trace:
    """Lifted (alpha, beta)-trace from x to y.

    ``shift`` is the additive constant allowed on the sphere, where w is only
    defined up to a constant.
    """

    def __init__(self, pair: CurvePair, x: IntersectionPoint, y: IntersectionPoint,
                 path_a: LiftedPath, path_b: LiftedPath, shift: int = 0):
        if path_a.start != path_b.start or path_a.end != path_b.end:
            raise EndpointMismatch("lifted arcs do not share their endpoints")
        self.pair = pair
        self.x = x
        self.y = y
        self.path_a = path_a
        self.path_b = path_b
        self.shift = shift

    @property
    def lift_x(self) -> Pt:
        return self.path_a.start

    @property
    def lift_y(self) -> Pt:
        return self.path_a.end

    def __repr__(self) -> str:
        return (f"Trace({self.x.id}->{self.y.id}, alpha {self.path_a.s0}..{self.path_a.s1}, "
                f"beta {self.path_b.s0}..{self.path_b.s1}, shift={self.shift})")

    def with_shift(self, c: int) -> "Trace":
        return Trace(self.pair, self.x, self.y, self.path_a, self.path_b, c)

    def translated(self, g: Pt) -> "Trace":
        return Trace(self.pair, self.x, self.y, self.path_a.translated(g),
                     self.path_b.translated(g), self.shift)

    # -- two-chain ---------------------------------------------------------

    @cached_property
    def _chain(self):
        carriers = {}  # geometric segment -> (index, which, k)
        segs = []
        contrib = []  # (carrier index, t0, t1, sign)
        for path, base in ((self.path_a, 1), (self.path_b, -1)):
            sgn = base * path.direction
            for k, t0, t1 in _pieces(path):
                a, b = path.curve.segment(k)
                key = (a + path.offset, b + path.offset)
                if key not in carriers:
                    carriers[key] = (len(segs), path.which, k)
                    segs.append(key)
                contrib.append((carriers[key][0], t0, t1, sgn))
        info = [None] * len(segs)
        for key, (i, which, k) in carriers.items():
            info[i] = (which, k)
        arr = build_arrangement(segs, split_points=[self.lift_x, self.lift_y])
        mult = {}
        for e, (_u, _v, s, t0, t1) in enumerate(arr.edges):
            m = 0
            for c, p0, p1, sg in contrib:
                if c == s and p0 <= t0 and t1 <= p1:
                    m += sg
            mult[e] = m
        w = winding_by_propagation(arr, mult)
        return arr, w, info, mult

    @property
    def arrangement(self):
        return self._chain[0]

    @cached_property
    def bbox(self):
        vs = self.arrangement.vertices
        if not vs:
            return None
        return (min(v.x for v in vs), min(v.y for v in vs), max(v.x for v in vs), max(v.y for v in vs))

    @property
    def values(self) -> dict:
        """Face id -> winding number (including the sphere shift)."""
        _arr, w, _i, _m = self._chain
        if self.shift:
            return {f: v + self.shift for f, v in w.items()}
        return w

    def w_at(self, p: Pt) -> int:
        kind, idx = self.arrangement.locate(p)
        if kind != "face":
            raise PointClassificationFailed(f"{p} is on the trace's arrangement")
        return self.values[idx]

    def loop(self) -> list:
        """The closed polygon Ã followed by B̃ reversed."""
        a = self.path_a.vertices()
        b = self.path_b.vertices()
        return a + list(reversed(b))[1:-1]


def trace_from_paths(pair, x, y, path_a, path_b) -> Optional[Trace]:
    if path_a.start != path_b.start or path_a.end != path_b.end:
        return None
    return Trace(pair, x, y, path_a, path_b)


def trace_from_arcs(pair: CurvePair, x: IntersectionPoint, y: IntersectionPoint,
                    arc_alpha: ArcSpec, arc_beta: ArcSpec) -> Optional[Trace]:
    """Lift both arcs from x; return the trace if the end lifts agree, else None."""
    pa = lift_path(pair, "alpha", x, arc_alpha, y)
    pb = lift_path(pair, "beta", x, arc_beta, y)
    return trace_from_paths(pair, x, y, pa, pb)


def trace_from_params(pair: CurvePair, x: IntersectionPoint, y: IntersectionPoint,
                      s_alpha, s_beta) -> Optional[Trace]:
    """Trace whose lifted arcs end at the given curve parameters."""
    pa = LiftedPath("alpha", pair.alpha, Pt(0, 0), x.along_alpha, Fraction(s_alpha))
    pb = LiftedPath("beta", pair.beta, Pt(*x.beta_shift), x.along_beta, Fraction(s_beta))
    return trace_from_paths(pair, x, y, pa, pb)


ARC_COMBOS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def all_arc_traces(pair: CurvePair, x: IntersectionPoint, y: IntersectionPoint) -> list:
    out = []
    if x.id == y.id:
        return out
    for da, db in ARC_COMBOS:
        t = trace_from_arcs(pair, x, y, ArcSpec(da), ArcSpec(db))
        if t is not None:
            out.append(t)
    return out


def constant_trace(pair: CurvePair, x: IntersectionPoint) -> Trace:
    return trace_from_arcs(pair, x, x, ArcSpec(1), ArcSpec(1))


def connecting_trace(pair: CurvePair, x: IntersectionPoint, y: IntersectionPoint) -> Optional[Trace]:
    """A trace from x to y built from the (k, l) solution of same_component."""
    kl = same_component(pair, x, y)
    if kl is None:
        return None
    k, l = kl
    na, nb = pair.alpha.n, pair.beta.n
    sa = target_param(pair.alpha, x.along_alpha, y.along_alpha, ArcSpec(1)) + k * na
    sb = target_param(pair.beta, x.along_beta, y.along_beta, ArcSpec(1)) + l * nb
    return trace_from_params(pair, x, y, sa, sb)


# --- boundary -----------------------------------------------------------------

@dataclass(frozen=True)
class TraceBoundary:
    x: IntersectionPoint
    y: IntersectionPoint
    nu_alpha: tuple  # degree of Ã over each alpha interval
    nu_beta: tuple   # degree of B̃ over each beta interval (the chain on beta is its negative)
    arcs: Optional[tuple] = None  # (alpha interval ids, beta interval ids) under the arc condition


def interval_params(pair: CurvePair, which: str):
    """Sorted crossing parameters on a curve and the point ids in that order."""
    pts = pair.points
    key = (lambda p: p.along_alpha) if which == "alpha" else (lambda p: p.along_beta)
    order = sorted(pts, key=key)
    return [key(p) for p in order], [p.id for p in order]


def interval_of(pair: CurvePair, which: str, s) -> int:
    """Index of the crossing-to-crossing interval containing parameter s (not a crossing)."""
    params, _ids = interval_params(pair, which)
    n = pair.curve(which).n
    s = Fraction(s) % n
    i = bisect.bisect_right(params, s) - 1
    return i % len(params)


def path_degrees(path: LiftedPath, params: list, n: int) -> tuple:
    lo, hi = sorted((path.s0, path.s1))
    out = []
    for i, a in enumerate(params):
        b = params[(i + 1) % len(params)]
        if b <= a:
            b += n
        cnt = math.floor((hi - b) / n) - math.ceil((lo - a) / n) + 1
        out.append(max(cnt, 0) * path.direction)
    return tuple(out)


def boundary(trace: Trace) -> TraceBoundary:
    pair = trace.pair
    if not pair.points:
        return TraceBoundary(trace.x, trace.y, (), ())
    pa_params, _ = interval_params(pair, "alpha")
    pb_params, _ = interval_params(pair, "beta")
    nua = path_degrees(trace.path_a, pa_params, pair.alpha.n)
    nub = path_degrees(trace.path_b, pb_params, pair.beta.n)
    arcs = None
    if _arc_ok(trace.x, trace.y, nua, nub):
        arcs = (tuple(i for i, v in enumerate(nua) if v), tuple(i for i, v in enumerate(nub) if v))
    return TraceBoundary(trace.x, trace.y, nua, nub, arcs)


def _arc_ok(x, y, nua, nub) -> bool:
    if x.id == y.id:
        return False
    for nu in (nua, nub):
        if 0 not in nu or not set(nu) <= {0, 1, -1} or {1, -1} <= set(nu):
            return False
    return True


def satisfies_arc_condition(trace: Trace) -> bool:
    return boundary(trace).arcs is not None


def _intervals_under(params: list, n: int, lo, hi):
    """(interval index, lift) pairs whose lifted interval overlaps (lo, hi)."""
    for i, a in enumerate(params):
        b = params[(i + 1) % len(params)]
        if b <= a:
            b += n
        for m in range(math.floor((lo - b) / n), math.ceil((hi - a) / n) + 1):
            if max(lo, a + m * n) < min(hi, b + m * n):
                yield i, m


def boundary_from_faces(trace: Trace) -> TraceBoundary:
    """The boundary read off the two-chain by the left/right rule.

    On alpha the chain is w(left) - w(right); on beta the degree of B̃ is
    w(right) - w(left). Every lifted interval is read once.
    """
    pair = trace.pair
    arr, w, info, _mult = trace._chain
    pa_params, _ = interval_params(pair, "alpha")
    pb_params, _ = interval_params(pair, "beta")
    seen = {}
    for e, (_u, _v, s, t0, t1) in enumerate(arr.edges):
        which, k = info[s]
        curve = pair.curve(which)
        params = pa_params if which == "alpha" else pb_params
        lf, rf = arr.face_adjacency[e]
        val = w[lf] - w[rf] if which == "alpha" else w[rf] - w[lf]
        # an edge may run across crossings the trace does not use
        for key in _intervals_under(params, curve.n, k + t0, k + t1):
            key = (which,) + key
            if seen.setdefault(key, val) != val:
                raise InvariantViolated(f"two-chain jumps inconsistently along {key}")
    nua = [0] * len(pa_params)
    nub = [0] * len(pb_params)
    for (which, idx, _lift), val in seen.items():
        (nua if which == "alpha" else nub)[idx] += val
    return TraceBoundary(trace.x, trace.y, tuple(nua), tuple(nub))


# --- local winding data -----------------------------------------------------

def sector_values(trace: Trace, p: Pt, a: Pt, b: Pt) -> list:
    """Values of w in the four sectors at p cut out by directions a and b."""
    arr = trace.arrangement
    vals = trace.values
    out = []
    for d in (a + b, b - a, -a - b, a - b):
        f = arr.face_toward(p, d)
        if f is None:
            raise PointClassificationFailed(f"sector probe {d} at {p} runs along an edge")
        out.append(vals[f])
    return out


def m_at(trace: Trace, p: Pt, a: Optional[Pt] = None, b: Optional[Pt] = None) -> int:
    """Sum of the four sector values of w around p.

    With directions (a, b) the sectors are those of the two curves through p.
    Without them, p must be off the vertices: 4w in a face, 2(w_l + w_r) on an edge.
    """
    arr = trace.arrangement
    if not arr.edges:
        return 4 * trace.shift
    x0, y0, x1, y1 = trace.bbox
    if not (x0 <= p.x <= x1 and y0 <= p.y <= y1):
        # only the unbounded face is near p
        return 4 * trace.values[arr.unbounded_face]
    if a is not None and b is not None:
        try:
            return sum(sector_values(trace, p, a, b))
        except PointClassificationFailed:
            pass
    kind, idx = arr.locate(p)
    vals = trace.values
    if kind == "face":
        return 4 * vals[idx]
    if kind == "edge":
        lf, rf = arr.face_adjacency[idx]
        return 2 * (vals[lf] + vals[rf])
    raise PointClassificationFailed(f"{p} is an arrangement vertex and no sector directions were given")


def m_x(trace: Trace) -> int:
    return m_at(trace, trace.lift_x, trace.x.dir_alpha, trace.x.dir_beta)


def m_y(trace: Trace) -> int:
    return m_at(trace, trace.lift_y, trace.y.dir_alpha, trace.y.dir_beta)


def maslov(trace: Trace) -> int:
    total = m_x(trace) + m_y(trace)
    if total % 2:
        raise OddTraceSum(f"m_x + m_y = {total} is odd for {trace}")
    return total // 2


def arc_indices(trace: Trace):
    """Intersection indices of (A, B) at x (outgoing) and at y (incoming)."""
    sa, sb = trace.path_a.direction, trace.path_b.direction
    ex = sign((trace.x.dir_alpha * sa).cross(trace.x.dir_beta * sb))
    ey = sign((trace.y.dir_alpha * sa).cross(trace.y.dir_beta * sb))
    return ex, ey


def maslov_plane_form(trace: Trace) -> int:
    """mu = 2 k_x + 2 k_y + (eps_x - eps_y) / 2 for traces with the arc condition."""
    if not satisfies_arc_condition(trace):
        raise ArcConditionRequired(f"{trace} does not satisfy the arc condition")
    arr = trace.arrangement
    vals = trace.values
    sa = trace.path_a.direction
    a_out = trace.x.dir_alpha * sa
    a_in = trace.y.dir_alpha * sa
    kx = _value_toward(trace, trace.lift_x, -a_out)
    ky = _value_toward(trace, trace.lift_y, a_in)
    ex, ey = arc_indices(trace)
    return 2 * kx + 2 * ky + (ex - ey) // 2


def _value_toward(trace: Trace, p: Pt, d: Pt) -> int:
    """w just off p in direction d; along an edge the two sides must agree."""
    arr = trace.arrangement
    vals = trace.values
    f = arr.face_toward(p, d)
    if f is not None:
        return vals[f]
    kind, idx = arr.locate(p)
    if kind == "vertex":
        for h in arr.vertex_stars[idx]:
            hd = arr.half_dir(h)
            if hd.cross(d) == 0 and hd.dot(d) > 0:
                lf, rf = arr.face_adjacency[h >> 1]
                if vals[lf] == vals[rf]:
                    return vals[lf]
    raise PointClassificationFailed(f"w is not defined just off {p} in direction {d}")


def surface_m(trace: Trace, ip: IntersectionPoint) -> int:
    """m at a surface intersection point: the sum of m over all its lifts."""
    arr = trace.arrangement
    if not arr.vertices:
        return 0
    xs = [v.x for v in arr.vertices]
    ys = [v.y for v in arr.vertices]
    box = (min(xs), min(ys), max(xs), max(ys))
    p = ip.pos
    total = 0
    for g in lattice_window(trace.pair.surface, box, (p.x, p.y, p.x, p.y)):
        total += m_at(trace, p + Pt(*g), ip.dir_alpha, ip.dir_beta)
    return total


def trace_area(trace: Trace) -> Fraction:
    vals = trace.values
    return sum((vals[f.id] * f.area for f in trace.arrangement.faces if f.bounded), Fraction(0))


def loop_area(trace: Trace) -> Fraction:
    """Shoelace area of the loop Ã - B̃ (independent of the arrangement)."""
    pts = trace.loop()
    return signed_area(pts) if len(pts) > 2 else Fraction(0)


def cancellation_defect(trace: Trace, g) -> int:
    gp = Pt(*g)
    return (m_at(trace, trace.lift_x + gp, trace.x.dir_alpha, trace.x.dir_beta)
            + m_at(trace, trace.lift_y - gp, trace.y.dir_alpha, trace.y.dir_beta))


# --- operations on traces -----------------------------------------------------

def reverse(trace: Trace) -> Trace:
    """The trace from y to x with w negated, re-based at the fundamental lift of y."""
    pa, pb = trace.path_a, trace.path_b
    ra = LiftedPath("alpha", pa.curve, pa.offset, pa.s1, pa.s0)
    rb = LiftedPath("beta", pb.curve, pb.offset, pb.s1, pb.s0)
    t = Trace(trace.pair, trace.y, trace.x, ra, rb, -trace.shift)
    return normalize(t)


def normalize(trace: Trace) -> Trace:
    """Translate so that lift_x is the fundamental position of x."""
    g = trace.x.pos - trace.lift_x
    if g.is_zero():
        return trace
    return trace.translated(g)


def catenate(t1: Trace, t2: Trace, check: bool = True) -> Trace:
    """Λ1 # Λ2, built from the concatenated lifted arcs."""
    if t1.pair is not t2.pair or t1.y.id != t2.x.id:
        raise EndpointMismatch(f"cannot catenate {t1.x.id}->{t1.y.id} with {t2.x.id}->{t2.y.id}")
    g = t1.lift_y - t2.lift_x
    t2g = t2.translated(g)
    pa = LiftedPath("alpha", t1.path_a.curve, t1.path_a.offset, t1.path_a.s0,
                    t1.path_a.s1 + (t2g.path_a.s1 - t2g.path_a.s0))
    pb = LiftedPath("beta", t1.path_b.curve, t1.path_b.offset, t1.path_b.s0,
                    t1.path_b.s1 + (t2g.path_b.s1 - t2g.path_b.s0))
    out = Trace(t1.pair, t1.x, t2.y, pa, pb, t1.shift + t2.shift)
    if out.lift_y != t2g.lift_y:
        raise EndpointMismatch("catenated arcs do not end at the same lift")
    if check:
        if maslov(out) != maslov(t1) + maslov(t2):
            raise InvariantViolated("Maslov index is not additive under catenation")
        if t1.pair.surface is not Surface.SPHERE and trace_area(out) != trace_area(t1) + trace_area(t2):
            raise InvariantViolated("area is not additive under catenation")
    return out

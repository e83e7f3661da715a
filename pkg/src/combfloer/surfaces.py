"""Surfaces as quotients of the plane by a translation lattice, and PL curves on them."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (BadDeck, CombFloerError, DegenerateSegment, NotEmbedded,
                     NotTransverse, ParseError, Unsupported)
from .geometry import (CROSSING, DISJOINT, SHARED, Pt, seg_intersect, seg_param,
                       sign)


class Surface(enum.Enum):
    PLANE = "plane"
    SPHERE = "sphere"
    ANNULUS = "annulus"
    TORUS = "torus"

    @property
    def lattice_rank(self) -> int:
        return {"plane": 0, "sphere": 0, "annulus": 1, "torus": 2}[self.value]

    def contains(self, v) -> bool:
        p, q = v
        if self.lattice_rank == 0:
            return p == 0 and q == 0
        if self.lattice_rank == 1:
            return q == 0
        return True

    def basis(self):
        return [(1, 0), (0, 1)][: self.lattice_rank]

    @classmethod
    def parse(cls, name: str) -> "Surface":
        key = str(name).strip().lower()
        for s in cls:
            if s.value == key:
                return s
        if key.startswith("genus") or key in ("double-torus", "double_torus", "pretzel"):
            raise Unsupported(
                f"surface {name!r}: genus >= 2 needs a hyperbolic covering with a word-problem "
                "backend; extension point is combfloer.surfaces.Surface (lattice) and "
                "lattice_window (translate enumeration)")
        raise ParseError(f"unknown surface {name!r}")


@dataclass(frozen=True)
class Curve:
    """One lift of a closed curve plus the deck vector closing it up.

    Vertex k of the lift, for any integer k, is vertices[k mod n] + (k div n) * deck.
    Points are addressed by a rational parameter s: segment floor(s), fraction s - floor(s).
    """

    vertices: tuple
    deck: tuple = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "deck", (int(self.deck[0]), int(self.deck[1])))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def deck_pt(self) -> Pt:
        return Pt(*self.deck)

    @property
    def contractible(self) -> bool:
        return self.deck == (0, 0)

    def vertex(self, k: int) -> Pt:
        q, r = divmod(k, self.n)
        v = self.vertices[r]
        return v if q == 0 else v + self.deck_pt * q

    def segment(self, k: int):
        return self.vertex(k), self.vertex(k + 1)

    def point(self, s) -> Pt:
        s = Fraction(s)
        k = math.floor(s)
        a, b = self.segment(k)
        return a + (b - a) * (s - k)

    def direction(self, s) -> Pt:
        a, b = self.segment(math.floor(Fraction(s)))
        return b - a

    def translated(self, v: Pt) -> "Curve":
        return Curve(tuple(p + v for p in self.vertices), self.deck)

    def bbox(self):
        xs = [p.x for p in self.vertices] + [self.vertex(self.n).x]
        ys = [p.y for p in self.vertices] + [self.vertex(self.n).y]
        return min(xs), min(ys), max(xs), max(ys)


def _seg_bbox(s):
    a, b = s
    return min(a.x, b.x), min(a.y, b.y), max(a.x, b.x), max(a.y, b.y)


def lattice_window(surface: Surface, box_a, box_b):
    """Lattice vectors h with (box_b + h) meeting box_a, in a fixed order."""
    r = surface.lattice_rank
    if r == 0:
        return [(0, 0)]
    ax0, ay0, ax1, ay1 = box_a
    bx0, by0, bx1, by1 = box_b
    ps = range(math.ceil(ax0 - bx1), math.floor(ax1 - bx0) + 1)
    if r == 1:
        if by1 < ay0 or ay1 < by0:
            return []
        return [(p, 0) for p in ps]
    qs = range(math.ceil(ay0 - by1), math.floor(ay1 - by0) + 1)
    return [(p, q) for p in ps for q in qs]


def _shift(seg, h):
    hp = Pt(*h)
    return seg[0] + hp, seg[1] + hp


def validate_curve(curve: Curve, surface: Surface) -> list:
    """Return a list of problems (empty when the curve is fine)."""
    errs = []
    if curve.n == 0:
        return [DegenerateSegment("curve has no vertices")]
    if not surface.contains(curve.deck):
        errs.append(BadDeck(f"deck {curve.deck} is not in the {surface.value} lattice"))
        return errs
    if not curve.contractible and math.gcd(*curve.deck) != 1:
        errs.append(BadDeck(f"deck {curve.deck} is not primitive; no embedded circle has this class"))
        return errs
    n = curve.n
    segs = [curve.segment(k) for k in range(n)]
    for k, (a, b) in enumerate(segs):
        if a == b:
            errs.append(DegenerateSegment(f"segment {k} has zero length"))
    if errs:
        return errs

    d = curve.deck

    def norm(k):
        q, r = divmod(k, n)
        return r, (q * d[0], q * d[1])

    for i in range(n):
        adjacent = {norm(i + 1), norm(i - 1)}
        box_i = _seg_bbox(segs[i])
        for j in range(n):
            for h in lattice_window(surface, box_i, _seg_bbox(segs[j])):
                if (j, h) == (i, (0, 0)):
                    continue
                c = seg_intersect(segs[i], _shift(segs[j], h))
                if (j, h) in adjacent:
                    if c.kind != SHARED:
                        errs.append(DegenerateSegment(
                            f"segments {i} and {j}{'' if h == (0, 0) else f'+{h}'} fold back on each other"))
                elif c.kind != DISJOINT:
                    errs.append(NotEmbedded(
                        f"segment {i} meets segment {j}{'' if h == (0, 0) else f' translated by {h}'}"))
    return errs


@dataclass(frozen=True)
class Flags:
    noncontractible_alpha: bool
    noncontractible_beta: bool
    nonisotopic: bool

    @property
    def floer_hypotheses(self) -> bool:
        return self.noncontractible_alpha and self.noncontractible_beta and self.nonisotopic

    def as_dict(self) -> dict:
        return {
            "noncontractible_alpha": self.noncontractible_alpha,
            "noncontractible_beta": self.noncontractible_beta,
            "nonisotopic": self.nonisotopic,
            "floer_hypotheses": self.floer_hypotheses,
        }


def compute_flags(alpha: Curve, beta: Curve) -> Flags:
    da, db = alpha.deck, beta.deck
    iso = da == db or da == (-db[0], -db[1])
    return Flags(not alpha.contractible, not beta.contractible, not iso)


@dataclass(frozen=True)
class IntersectionPoint:
    id: int
    pos: Pt
    eps: int
    along_alpha: Fraction
    along_beta: Fraction
    beta_shift: tuple  # lattice vector h with pos = beta.point(along_beta) + h
    dir_alpha: Pt
    dir_beta: Pt


class CurvePair:
    """A validated pair (alpha, beta) on a surface; construction raises on bad input."""

    def __init__(self, surface: Surface, alpha: Curve, beta: Curve, *, check: bool = True):
        self.surface = surface
        self.alpha = alpha
        self.beta = beta
        if check:
            errs = validate_pair(self)
            if errs:
                raise errs[0]
        self.flags = compute_flags(alpha, beta)
        self._points = None

    def curve(self, which: str) -> Curve:
        return self.alpha if which == "alpha" else self.beta

    @property
    def points(self) -> list:
        if self._points is None:
            self._points = intersections(self)
        return self._points

    def __repr__(self) -> str:
        return f"CurvePair({self.surface.value}, alpha={self.alpha}, beta={self.beta})"


def _contacts(pair: CurvePair):
    a, b = pair.alpha, pair.beta
    asegs = [a.segment(i) for i in range(a.n)]
    bsegs = [b.segment(j) for j in range(b.n)]
    for i, sa in enumerate(asegs):
        box = _seg_bbox(sa)
        for j, sb in enumerate(bsegs):
            for h in lattice_window(pair.surface, box, _seg_bbox(sb)):
                yield i, j, h, sa, sb, seg_intersect(sa, _shift(sb, h))


def validate_pair(pair: CurvePair) -> list:
    errs = []
    for name in ("alpha", "beta"):
        for e in validate_curve(pair.curve(name), pair.surface):
            e.args = (f"{name}: {e.args[0]}",)
            errs.append(e)
    if errs:
        return errs
    if pair.surface is Surface.SPHERE and not (pair.alpha.contractible and pair.beta.contractible):
        return [BadDeck("sphere curves must have deck (0, 0)")]
    for i, j, h, _sa, _sb, c in _contacts(pair):
        if c.kind not in (DISJOINT, CROSSING):
            errs.append(NotTransverse(
                f"alpha segment {i} and beta segment {j} translated by {h}: {c.kind}"))
    return errs


def intersections(pair: CurvePair) -> list:
    found = []
    for i, j, h, sa, sb, c in _contacts(pair):
        if c.kind != CROSSING:
            continue
        p = c.point
        da, db = sa[1] - sa[0], sb[1] - sb[0]
        sa_par = i + seg_param(p, *sa)
        hb = Pt(*h)
        sb_par = j + seg_param(p - hb, *sb)
        found.append((sa_par, p, sign(da.cross(db)), sb_par, h, da, db))
    found.sort(key=lambda t: t[0])
    return [IntersectionPoint(k, p, e, sa, sb, h, da, db)
            for k, (sa, p, e, sb, h, da, db) in enumerate(found)]


def num_alg(pair: CurvePair):
    pts = pair.points
    return len(pts), sum(p.eps for p in pts)


# --- lifts -------------------------------------------------------------------

@dataclass(frozen=True)
class ArcSpec:
    direction: int = 1  # +1 forward along the curve, -1 backward
    wraps: int = 0

    @classmethod
    def parse(cls, s: str, wraps: int = 0) -> "ArcSpec":
        key = s.strip().lower()
        if key in ("fwd", "forward", "f", "+"):
            return cls(1, wraps)
        if key in ("bwd", "backward", "b", "-"):
            return cls(-1, wraps)
        raise ParseError(f"arc direction must be fwd or bwd, got {s!r}")


@dataclass(frozen=True)
class LiftedPath:
    """The part of curve.translated(offset) between parameters s0 and s1."""

    which: str
    curve: Curve
    offset: Pt
    s0: Fraction
    s1: Fraction

    @property
    def start(self) -> Pt:
        return self.curve.point(self.s0) + self.offset

    @property
    def end(self) -> Pt:
        return self.curve.point(self.s1) + self.offset

    @property
    def direction(self) -> int:
        return sign(self.s1 - self.s0)

    def vertices(self) -> list:
        lo, hi = sorted((self.s0, self.s1))
        params = [lo] + list(range(math.floor(lo) + 1, math.ceil(hi))) + [hi]
        if self.s1 < self.s0:
            params.reverse()
        out = []
        for s in params:
            p = self.curve.point(s) + self.offset
            if not out or out[-1] != p:
                out.append(p)
        return out

    def translated(self, g: Pt) -> "LiftedPath":
        return LiftedPath(self.which, self.curve, self.offset + g, self.s0, self.s1)


def _param(ip: IntersectionPoint, which: str) -> Fraction:
    return ip.along_alpha if which == "alpha" else ip.along_beta


def target_param(curve: Curve, s0, s_target, spec: ArcSpec) -> Fraction:
    n = curve.n
    if spec.direction > 0:
        s1 = s_target + n * math.ceil((s0 - s_target) / n)
        return s1 + spec.wraps * n
    s1 = s_target - n * math.ceil((s_target - s0) / n)
    return s1 - spec.wraps * n


def lift_path(pair: CurvePair, which: str, start: IntersectionPoint, spec: ArcSpec,
              to: Optional[IntersectionPoint] = None) -> LiftedPath:
    """Lift the arc from ``start`` to ``to`` (default: back to start) on the chosen curve."""
    curve = pair.curve(which)
    to = start if to is None else to
    s0 = _param(start, which)
    offset = Pt(0, 0) if which == "alpha" else Pt(*start.beta_shift)
    s1 = target_param(curve, s0, _param(to, which), spec)
    return LiftedPath(which, curve, offset, s0, s1)


def same_component(pair: CurvePair, x: IntersectionPoint, y: IntersectionPoint):
    """Integers (k, l) with A_end + k*deck_alpha = B_end + l*deck_beta, or None."""
    a_end = lift_path(pair, "alpha", x, ArcSpec(1), y).end
    b_end = lift_path(pair, "beta", x, ArcSpec(1), y).end
    r = b_end - a_end
    da, db = pair.alpha.deck_pt, pair.beta.deck_pt
    det = da.cross(-db)
    if det != 0:
        # k*da + l*(-db) = r
        k = r.cross(-db) / det
        l = da.cross(r) / det
        if k.denominator == 1 and l.denominator == 1:
            return int(k), int(l)
        return None
    if r.is_zero():
        return 0, 0
    # parallel or vanishing decks: one integer unknown suffices
    for v, sgn, slot in ((da, 1, 0), (db, -1, 1)):
        if v.is_zero():
            continue
        t = r.x / v.x if v.x != 0 else r.y / v.y
        if v * t == r and t.denominator == 1:
            out = [0, 0]
            out[slot] = sgn * int(t)
            return tuple(out)
    return None

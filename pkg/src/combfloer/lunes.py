"""Combinatorial lunes: arc-condition traces with w >= 0 and the right corners."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvariantViolated, PointClassificationFailed
from .surfaces import CurvePair, IntersectionPoint, Surface
from .traces import (Trace, all_arc_traces, arc_indices, boundary, maslov, sector_values,
                     trace_area)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: tuple = ()

    def __bool__(self):
        return self.ok


@dataclass
class Lune:
    trace: Trace
    sign: int
    primitive: bool
    area: Fraction
    arcs: tuple = field(default=())  # (alpha interval ids, beta interval ids)

    @property
    def x(self) -> IntersectionPoint:
        return self.trace.x

    @property
    def y(self) -> IntersectionPoint:
        return self.trace.y

    def key(self):
        return (self.x.id, self.y.id, self.trace.path_a.direction, self.trace.path_b.direction)


def is_combinatorial_lune(trace: Trace) -> Verdict:
    bd = boundary(trace)
    if bd.arcs is None:
        return Verdict(False, ("arc",))
    bad = []
    if min(trace.values.values()) < 0:
        bad.append("I")
    if arc_indices(trace) != (1, -1):
        bad.append("II")
    try:
        corners = (sector_values(trace, trace.lift_x, trace.x.dir_alpha, trace.x.dir_beta)
                   + sector_values(trace, trace.lift_y, trace.y.dir_alpha, trace.y.dir_beta))
    except PointClassificationFailed:
        corners = [None]
    if not set(corners) <= {0, 1}:
        bad.append("III")
    return Verdict(not bad, tuple(bad))


def _make_lune(trace: Trace) -> Lune:
    arcs = boundary(trace).arcs
    prim = len(arcs[0]) == 1 and len(arcs[1]) == 1
    return Lune(trace, trace.path_a.direction, prim, trace_area(trace), arcs)


def find_lunes(pair: CurvePair, x: IntersectionPoint, y: IntersectionPoint) -> list:
    out = []
    for t in all_arc_traces(pair, x, y):
        # condition (II) is cheap; skip the arrangement when it already fails
        if arc_indices(t) != (1, -1):
            continue
        if pair.surface is Surface.SPHERE:
            mu0 = maslov(t)
            if (1 - mu0) % 4:
                continue
            t = t.with_shift((1 - mu0) // 4)
        if is_combinatorial_lune(t):
            out.append(_make_lune(t))
    return out


def all_lunes(pair: CurvePair) -> dict:
    """(x.id, y.id) -> list of lunes, only for pairs that have lunes."""
    out = {}
    for x in pair.points:
        for y in pair.points:
            if x.id == y.id or x.eps == y.eps:
                # the endpoints of a lune have opposite signs
                continue
            found = find_lunes(pair, x, y)
            if found:
                out[(x.id, y.id)] = found
    return out


def is_primitive(lune: Lune) -> bool:
    return lune.primitive


def primitive_existence_check(pair: CurvePair, lunes=None) -> dict:
    lunes = all_lunes(pair) if lunes is None else lunes
    flat = [lu for ls in lunes.values() for lu in ls]
    witnesses = [[lu.x.id, lu.y.id] for lu in flat if lu.primitive]
    holds = not flat or bool(witnesses)
    if not holds:
        raise InvariantViolated("lunes exist but none is primitive")
    return {"holds": holds, "lunes": len(flat), "primitive_witnesses": witnesses}


def lune_count(lunes: dict, x: int, y: int, coeff: str = "F2") -> int:
    ls = lunes.get((x, y), [])
    if coeff == "F2":
        return len(ls) % 2
    return sum(lu.sign for lu in ls)

"""The Floer chain complex of a curve pair, broken hearts and homology."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Optional

from . import linalg
from .errors import (ClassificationFailed, InvariantViolated, NotAComplex, TheoremViolated,
                     Unsupported)
from .lunes import Lune, all_lunes, lune_count
from .surfaces import CurvePair, Surface, same_component
from .traces import catenate, connecting_trace, maslov, trace_area


@dataclass
class FloerComplex:
    pair: CurvePair
    coeff: str
    generators: list
    matrix: list  # matrix[x][y] = n(x, y), the coefficient of y in dx
    lunes: dict
    mod2_grade: list
    components: list
    rel_grade: list = field(default_factory=list)
    grade_warnings: list = field(default_factory=list)

    @property
    def flags(self):
        return self.pair.flags

    def differential(self, x: int) -> dict:
        return {y: v for y, v in enumerate(self.matrix[x]) if v}


def _components(pair: CurvePair) -> tuple:
    pts = pair.points
    comp_of = {}
    comps = []
    for p in pts:
        for ci, c in enumerate(comps):
            if same_component(pair, pts[c[0]], p) is not None:
                c.append(p.id)
                comp_of[p.id] = ci
                break
        else:
            comp_of[p.id] = len(comps)
            comps.append([p.id])
    return comps, comp_of


def _rel_grades(pair: CurvePair, comps: list):
    """grade(y) = grade(x) - mu(trace from x to y), normalised to min 0 per component."""
    pts = pair.points
    grade = [0] * len(pts)
    for c in comps:
        base = pts[c[0]]
        for pid in c:
            t = connecting_trace(pair, base, pts[pid])
            grade[pid] = -maslov(t)
        lo = min(grade[pid] for pid in c)
        for pid in c:
            grade[pid] -= lo
    return grade


def build_complex(pair: CurvePair, coeff: str = "F2", lunes: Optional[dict] = None) -> FloerComplex:
    coeff = coeff.upper()
    if coeff not in ("F2", "Z"):
        raise ValueError("coeff must be F2 or Z")
    lunes = all_lunes(pair) if lunes is None else lunes
    pts = pair.points
    n = len(pts)
    mat = [[lune_count(lunes, x, y, coeff) for y in range(n)] for x in range(n)]
    comps, _ = _components(pair)
    grades = _rel_grades(pair, comps)
    cx = FloerComplex(pair, coeff, list(pts), mat, lunes,
                      [0 if p.eps > 0 else 1 for p in pts], comps, grades)
    for x in range(n):
        for y in range(n):
            if mat[x][y] and grades[x] - grades[y] != 1:
                cx.grade_warnings.append(f"n({x},{y}) != 0 but grade difference is {grades[x] - grades[y]}")
    return cx


def d_squared(cx: FloerComplex, raise_on_violation: bool = True):
    """Return (matrix of d o d, is_zero)."""
    n = len(cx.generators)
    sq = linalg.matmul(cx.matrix, cx.matrix, n, n)
    if cx.coeff == "F2":
        sq = linalg.mod2(sq)
    zero = linalg.is_zero(sq)
    if not zero and raise_on_violation and cx.flags.floer_hypotheses:
        raise TheoremViolated("d o d != 0 although the Floer hypotheses hold")
    return sq, zero


def _block(cx, src, dst):
    # the differential as a map from grade src to grade dst, columns = sources
    return [[cx.matrix[x][y] for x in src] for y in dst]


def homology(cx: FloerComplex) -> dict:
    _sq, zero = d_squared(cx, raise_on_violation=False)
    if not zero:
        raise NotAComplex("d o d != 0; homology is not defined")
    n = len(cx.generators)
    g0 = [i for i in range(n) if cx.mod2_grade[i] == 0]
    g1 = [i for i in range(n) if cx.mod2_grade[i] == 1]
    d01 = _block(cx, g0, g1)
    d10 = _block(cx, g1, g0)
    if cx.coeff == "F2":
        r01, r10 = linalg.rank_mod2(d01), linalg.rank_mod2(d10)
        h0 = len(g0) - r01 - r10
        h1 = len(g1) - r01 - r10
        return {"coeff": "F2", "dim": h0 + h1, "dim_HF0": h0, "dim_HF1": h1}
    s01, s10 = linalg.smith_invariants(d01), linalg.smith_invariants(d10)
    h0 = len(g0) - len(s01) - len(s10)
    h1 = len(g1) - len(s01) - len(s10)
    return {
        "coeff": "Z",
        "free_rank": h0 + h1,
        "rank_HF0": h0,
        "rank_HF1": h1,
        "torsion_HF0": [d for d in s10 if d > 1],
        "torsion_HF1": [d for d in s01 if d > 1],
    }


def euler_characteristic(cx: FloerComplex) -> int:
    h = homology(cx)
    chi = h["dim_HF0"] - h["dim_HF1"] if cx.coeff == "F2" else h["rank_HF0"] - h["rank_HF1"]
    alg = sum(p.eps for p in cx.generators)
    if chi != alg:
        raise InvariantViolated(f"euler characteristic {chi} differs from algebraic count {alg}")
    return chi


def geo_oracle(pair: CurvePair) -> int:
    """Minimal crossing number over isotopies; torus only."""
    if pair.surface is not Surface.TORUS:
        raise Unsupported("geometric intersection oracle is only available on the torus")
    if pair.alpha.contractible or pair.beta.contractible:
        # a contractible circle bounds a disc and can be shrunk off the other curve
        return 0
    (a, b), (c, d) = pair.alpha.deck, pair.beta.deck
    return abs(a * d - b * c)


# --- hearts -------------------------------------------------------------------

@dataclass
class BrokenHeart:
    x: int
    y: int
    z: int
    lune1: Lune
    lune2: Lune
    type: Optional[str]
    boundary: tuple  # catenated (nu_alpha, nu_beta)

    @property
    def sign(self) -> int:
        return self.lune1.sign * self.lune2.sign


def _classify(l1: Lune, l2: Lune) -> list:
    a1, b1 = (set(s) for s in l1.arcs)
    a2, b2 = (set(s) for s in l2.arcs)
    types = []
    if not a1 & a2:
        if b2 < b1:
            types.append("a")
        if b1 < b2:
            types.append("b")
    if not b1 & b2:
        if a2 < a1:
            types.append("c")
        if a1 < a2:
            types.append("d")
    return types


def _catenated_boundary(l1: Lune, l2: Lune) -> tuple:
    from .traces import boundary
    b1, b2 = boundary(l1.trace), boundary(l2.trace)
    return (tuple(p + q for p, q in zip(b1.nu_alpha, b2.nu_alpha)),
            tuple(p + q for p, q in zip(b1.nu_beta, b2.nu_beta)))


def enumerate_hearts(pair: CurvePair, x: int, z: int, lunes: Optional[dict] = None,
                     check_index: bool = False) -> list:
    lunes = all_lunes(pair) if lunes is None else lunes
    out = []
    for y in range(len(pair.points)):
        for l1 in lunes.get((x, y), []):
            for l2 in lunes.get((y, z), []):
                types = _classify(l1, l2)
                if len(types) != 1:
                    if pair.flags.floer_hypotheses:
                        raise ClassificationFailed(
                            f"heart {x}->{y}->{z} matches alternatives {types or 'none'}")
                    kind = None
                else:
                    kind = types[0]
                if check_index:
                    cat = catenate(l1.trace, l2.trace)
                    if maslov(cat) != 2:
                        raise InvariantViolated(f"catenated heart {x}->{y}->{z} has index {maslov(cat)}")
                out.append(BrokenHeart(x, y, z, l1, l2, kind, _catenated_boundary(l1, l2)))
    return out


def heart_pairing_check(pair: CurvePair, lunes: Optional[dict] = None, strict: bool = True,
                        check_index: bool = False) -> dict:
    """Pair hearts of type (a) with (c) and (b) with (d) by catenated boundary."""
    lunes = all_lunes(pair) if lunes is None else lunes
    n = len(pair.points)
    report = {"holds": True, "pairs": [], "unmatched": [], "unclassified": [], "counts": {},
              "z_cancels": True}
    for x in range(n):
        for z in range(n):
            hearts = enumerate_hearts(pair, x, z, lunes, check_index=check_index)
            if not hearts:
                continue
            report["counts"][f"{x},{z}"] = len(hearts)
            groups = defaultdict(lambda: {"a": [], "b": [], "c": [], "d": []})
            for h in hearts:
                if h.type is None:
                    report["unclassified"].append([x, h.y, z])
                    continue
                fam = "ac" if h.type in "ac" else "bd"
                groups[(fam, h.boundary)][h.type].append(h)
            for (fam, _bd), g in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1])):
                left, right = (g["a"], g["c"]) if fam == "ac" else (g["b"], g["d"])
                for h1, h2 in zip(left, right):
                    report["pairs"].append({"x": x, "z": z, "types": fam,
                                            "midpoints": [h1.y, h2.y]})
                    if h1.sign + h2.sign != 0:
                        report["z_cancels"] = False
                for h in left[len(right):] + right[len(left):]:
                    report["unmatched"].append([x, h.y, z, h.type])
            if len(hearts) % 2:
                report["holds"] = False
    if report["unmatched"] or report["unclassified"]:
        report["holds"] = False
    if strict and not report["holds"] and pair.flags.floer_hypotheses:
        raise InvariantViolated(f"heart pairing failed: {report['unmatched']}")
    return report


# --- action -------------------------------------------------------------------

def action_order_check(pair: CurvePair, lunes: Optional[dict] = None, strict: bool = True) -> dict:
    lunes = all_lunes(pair) if lunes is None else lunes
    report = {"holds": True, "areas": {}, "order": None, "action": None}
    ts = TopologicalSorter()
    for p in pair.points:
        ts.add(p.id)
    for (x, y), ls in sorted(lunes.items()):
        for lu in ls:
            report["areas"].setdefault(f"{x}->{y}", []).append(lu.area)
            if lu.area <= 0:
                report["holds"] = False
            ts.add(y, x)
    try:
        report["order"] = list(ts.static_order())
    except CycleError:
        report["holds"] = False
    if pair.flags.floer_hypotheses and pair.surface is not Surface.SPHERE:
        # the action is a function on each component; lunes drop it by their area
        comps, comp_of = _components(pair)
        action = {}
        pts = pair.points
        for c in comps:
            for pid in c:
                action[pid] = -trace_area(connecting_trace(pair, pts[c[0]], pts[pid]))
        for (x, y), ls in lunes.items():
            for lu in ls:
                if action[x] - action[y] != lu.area:
                    report["holds"] = False
        report["action"] = action
    if not report["holds"] and strict and pair.flags.floer_hypotheses:
        raise InvariantViolated("lune areas do not induce a strict order")
    return report

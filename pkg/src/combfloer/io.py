"""JSON formats: curve-pair files and report envelopes."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources

from .errors import ParseError
from .geometry import Pt
from .surfaces import Curve, CurvePair, Surface

SCHEMA = "combfloer.report/1"
_RAT = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


def parse_rat(v) -> Fraction:
    if isinstance(v, bool):
        raise ParseError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if not isinstance(v, str):
        raise ParseError(f"rationals must be strings like '3/8', got {v!r}")
    m = _RAT.match(v)
    if not m:
        raise ParseError(f"not a rational: {v!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {v!r}")
    return Fraction(int(m.group(1)), den)


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def pt_json(p: Pt) -> list:
    return [format_rat(p.x), format_rat(p.y)]


def _curve(d, name) -> Curve:
    if not isinstance(d, dict) or "vertices" not in d:
        raise ParseError(f"{name}: expected an object with 'vertices' and 'deck'")
    verts = d["vertices"]
    if not isinstance(verts, list) or not verts:
        raise ParseError(f"{name}: vertices must be a non-empty list")
    pts = []
    for v in verts:
        if not isinstance(v, list) or len(v) != 2:
            raise ParseError(f"{name}: bad vertex {v!r}")
        pts.append(Pt(parse_rat(v[0]), parse_rat(v[1])))
    deck = d.get("deck", [0, 0])
    if (not isinstance(deck, list) or len(deck) != 2
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in deck)):
        raise ParseError(f"{name}: deck must be two integers")
    return Curve(tuple(pts), tuple(deck))


def pair_from_dict(d: dict, check: bool = True) -> CurvePair:
    if not isinstance(d, dict):
        raise ParseError("pair file must be a JSON object")
    for key in ("surface", "alpha", "beta"):
        if key not in d:
            raise ParseError(f"missing field {key!r}")
    surface = Surface.parse(d["surface"])
    return CurvePair(surface, _curve(d["alpha"], "alpha"), _curve(d["beta"], "beta"), check=check)


def curve_to_dict(c: Curve) -> dict:
    return {"vertices": [pt_json(p) for p in c.vertices], "deck": list(c.deck)}


def pair_to_dict(pair: CurvePair) -> dict:
    return {
        "surface": pair.surface.value,
        "alpha": curve_to_dict(pair.alpha),
        "beta": curve_to_dict(pair.beta),
    }


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_pair(path, check: bool = True) -> CurvePair:
    return pair_from_dict(load_json(path), check=check)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


FIXTURE_NAMES = ("F_TORUS1", "F_TORUS2", "F_TORUS3", "F_TORUS4", "F_PLANE", "F_ANN", "F_NEST")


def fixture(name: str, check: bool = True) -> CurvePair:
    """Load a shipped fixture by name (e.g. 'F_TORUS3')."""
    text = resources.files("combfloer").joinpath("data").joinpath(f"{name}.json").read_text()
    return pair_from_dict(json.loads(text), check=check)


def fixture_dict(name: str) -> dict:
    return json.loads(resources.files("combfloer").joinpath("data").joinpath(f"{name}.json").read_text())

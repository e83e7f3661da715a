"""Exact rational plane geometry.

Everything here works over ``fractions.Fraction``; no floating point is used
anywhere, so predicates are decisions, not estimates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .errors import DegenerateContact, InconsistentPropagation, PointClassificationFailed, PointOnLoop

Rat = Fraction


def rat(v) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction (floats rejected)."""
    if isinstance(v, float):
        raise TypeError("floats are not accepted, use a string or Fraction")
    return v if isinstance(v, Fraction) else Fraction(v)


class Pt:
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = rat(x)
        self.y = rat(y)

    def __add__(self, o: "Pt") -> "Pt":
        return Pt(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Pt") -> "Pt":
        return Pt(self.x - o.x, self.y - o.y)

    def __neg__(self) -> "Pt":
        return Pt(-self.x, -self.y)

    def __mul__(self, k) -> "Pt":
        return Pt(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __eq__(self, o) -> bool:
        return isinstance(o, Pt) and self.x == o.x and self.y == o.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __lt__(self, o: "Pt") -> bool:
        return (self.x, self.y) < (o.x, o.y)

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Pt({self.x}, {self.y})"

    def cross(self, o: "Pt") -> Fraction:
        return self.x * o.y - self.y * o.x

    def dot(self, o: "Pt") -> Fraction:
        return self.x * o.x + self.y * o.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0


def sign(v) -> int:
    return (v > 0) - (v < 0)


def orient(p: Pt, q: Pt, r: Pt) -> int:
    """Sign of det(q - p, r - p)."""
    return sign((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))


@dataclass(frozen=True)
class Polyline:
    vertices: tuple
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def segments(self):
        vs = self.vertices
        out = [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]
        if self.closed and len(vs) > 1:
            out.append((vs[-1], vs[0]))
        return out


# --- segment contacts ------------------------------------------------------

DISJOINT = "disjoint"
CROSSING = "proper_crossing"
SHARED = "shared_endpoint"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Contact:
    kind: str
    point: Pt | None = None


def _bbox_disjoint(a, b, c, d) -> bool:
    return (max(a.x, b.x) < min(c.x, d.x) or max(c.x, d.x) < min(a.x, b.x)
            or max(a.y, b.y) < min(c.y, d.y) or max(c.y, d.y) < min(a.y, b.y))


def on_segment(p: Pt, a: Pt, b: Pt) -> bool:
    """True if p lies on the closed segment ab."""
    if orient(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def seg_intersect(s1, s2) -> Contact:
    """Classify the contact between two closed segments."""
    a, b = s1
    c, d = s2
    if _bbox_disjoint(a, b, c, d):
        return Contact(DISJOINT)
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 == o2 == 0:
        # collinear: overlapping projections are degenerate unless they only
        # meet in one common endpoint
        ends = {a, b} & {c, d}
        ab = b - a
        t = sorted(((c - a).dot(ab), (d - a).dot(ab)))
        lo, hi = max(t[0], Fraction(0)), min(t[1], ab.dot(ab))
        if lo > hi:
            return Contact(DISJOINT)
        if lo == hi and len(ends) == 1:
            return Contact(SHARED, next(iter(ends)))
        return Contact(DEGENERATE)
    if o1 * o2 < 0 and o3 * o4 < 0:
        r = b - a
        t = (c - a).cross(d - c) / r.cross(d - c)
        return Contact(CROSSING, a + r * t)
    shared = {a, b} & {c, d}
    if shared:
        return Contact(SHARED, next(iter(shared)))
    if (o1 == 0 and on_segment(c, a, b)) or (o2 == 0 and on_segment(d, a, b)) \
            or (o3 == 0 and on_segment(a, c, d)) or (o4 == 0 and on_segment(b, c, d)):
        return Contact(DEGENERATE)
    return Contact(DISJOINT)


def seg_param(p: Pt, a: Pt, b: Pt) -> Fraction:
    """Parameter t in [0, 1] of a point p known to lie on segment ab."""
    r = b - a
    return (p - a).dot(r) / r.dot(r)


# --- angles ----------------------------------------------------------------

def _half(v: Pt) -> int:
    return 0 if (v.y > 0 or (v.y == 0 and v.x > 0)) else 1


def angle_cmp(u: Pt, v: Pt) -> int:
    """Compare directions by counterclockwise angle from the positive x axis."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    return -sign(u.cross(v))


def strictly_between_ccw(d: Pt, lo: Pt, hi: Pt) -> bool:
    """Is direction d strictly inside the ccw wedge from lo to hi?

    If hi points the same way as lo the wedge is the full turn minus that ray.
    """
    def rot(v):
        return Pt(lo.dot(v), lo.cross(v))

    rd, rh = rot(d), rot(hi)
    if rd.y == 0 and rd.x > 0:
        return False
    if rh.y == 0 and rh.x > 0:
        return True
    return angle_cmp(rd, rh) < 0


# --- polygons --------------------------------------------------------------

def signed_area(loop) -> Fraction:
    """Shoelace area of a closed polygon (Polyline or point sequence)."""
    vs = loop.vertices if isinstance(loop, Polyline) else tuple(loop)
    n = len(vs)
    s = Fraction(0)
    for i in range(n):
        s += vs[i].cross(vs[(i + 1) % n])
    return s / 2


def cycle_winding(vs: Sequence[Pt], p: Pt) -> int:
    """Winding number of the closed polygon vs about p (p not on it)."""
    w = 0
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if a.y <= p.y:
            if b.y > p.y and orient(a, b, p) > 0:
                w += 1
        elif b.y <= p.y and orient(a, b, p) < 0:
            w -= 1
    return w


def winding_by_raycast(loop, p: Pt) -> int:
    """Signed crossing count of a ray from p against a closed loop.

    The ray direction (1, k) is the first slope k = 1, 2, ... that misses
    every loop vertex. Used as an oracle against face propagation.
    """
    vs = loop.vertices if isinstance(loop, Polyline) else tuple(loop)
    segs = [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]
    for a, b in segs:
        if on_segment(p, a, b):
            raise PointOnLoop(f"{p} lies on segment {a}-{b}")
    k = 1
    while True:
        d = Pt(1, k)
        if all(d.cross(v - p) != 0 or d.dot(v - p) < 0 for v in vs):
            break
        k += 1
    w = 0
    for a, b in segs:
        sa, sb = sign(d.cross(a - p)), sign(d.cross(b - p))
        if sa == sb or sa == 0 or sb == 0:
            continue
        r = b - a
        s = (a - p).cross(r) / d.cross(r)
        if s > 0:
            w += 1 if sa < 0 else -1
    return w


# --- arrangements ----------------------------------------------------------

@dataclass
class Face:
    id: int
    cycles: list  # lists of half-edge ids; for bounded faces cycles[0] is outer
    bounded: bool
    area: Fraction = Fraction(0)


@dataclass
class Arrangement:
    vertices: list
    edges: list  # (u, v, segment index, t0, t1)
    faces: list
    face_adjacency: list  # edge -> (left face, right face)
    unbounded_face: int
    vertex_stars: list  # vertex -> outgoing half-edges, ccw
    components: int
    vertex_index: dict = field(default_factory=dict)
    sources: list = field(default_factory=list)  # input segment -> (segment, orientation)

    def half_origin(self, h: int) -> int:
        u, v = self.edges[h >> 1][:2]
        return u if h % 2 == 0 else v

    def half_dir(self, h: int) -> Pt:
        u, v = self.edges[h >> 1][:2]
        d = self.vertices[v] - self.vertices[u]
        return d if h % 2 == 0 else -d

    def half_face(self, h: int) -> int:
        left, right = self.face_adjacency[h >> 1]
        return left if h % 2 == 0 else right

    def euler_ok(self) -> bool:
        return len(self.vertices) - len(self.edges) + len(self.faces) == 1 + self.components

    def cycle_points(self, cyc) -> list:
        return [self.vertices[self.half_origin(h)] for h in cyc]

    def locate(self, p: Pt):
        """Return ('vertex', id) | ('edge', id) | ('face', id)."""
        if p in self.vertex_index:
            return ("vertex", self.vertex_index[p])
        for e, (u, v, *_rest) in enumerate(self.edges):
            if on_segment(p, self.vertices[u], self.vertices[v]):
                return ("edge", e)
        for f in self.faces:
            if not f.bounded:
                continue
            if sum(cycle_winding(self.cycle_points(c), p) for c in f.cycles) == 1:
                return ("face", f.id)
        return ("face", self.unbounded_face)

    def face_toward(self, p: Pt, d: Pt):
        """Face entered when leaving p in direction d (infinitesimally)."""
        kind, idx = self.locate(p)
        if kind == "face":
            return idx
        if kind == "edge":
            u, v = self.edges[idx][:2]
            c = sign((self.vertices[v] - self.vertices[u]).cross(d))
            if c == 0:
                return None
            return self.face_adjacency[idx][0 if c > 0 else 1]
        star = self.vertex_stars[idx]
        dirs = [self.half_dir(h) for h in star]
        for i, h in enumerate(star):
            lo = dirs[i]
            hi = dirs[(i + 1) % len(star)]
            if lo.cross(d) == 0 and lo.dot(d) > 0:
                return None
            if strictly_between_ccw(d, lo, hi):
                return self.half_face(h)
        return None


def interior_point(arr: "Arrangement", face: Face) -> Pt:
    """Some point inside a bounded face (an ear centroid of its outer cycle)."""
    outer = arr.cycle_points(face.cycles[0])
    k = len(outer)
    for i in range(k):
        cand = (outer[i - 1] + outer[i] + outer[(i + 1) % k]) * Fraction(1, 3)
        if arr.locate(cand) == ("face", face.id):
            return cand
    # no ear centroid landed inside; bisect towards the first edge midpoint
    a, b = outer[0], outer[1]
    mid = (a + b) * Fraction(1, 2)
    d = b - a
    step = Pt(-d.y, d.x)
    t = Fraction(1)
    for _ in range(64):
        for s in (step * t, step * -t):
            if arr.locate(mid + s) == ("face", face.id):
                return mid + s
        t /= 2
    raise PointClassificationFailed(f"no interior point found for face {face.id}")


def build_arrangement(arcs: Iterable, split_points: Iterable[Pt] = ()) -> Arrangement:
    """Planar subdivision induced by a set of polylines (or raw segments).

    ``arcs`` may contain Polyline objects or (a, b) point pairs. Collinear
    overlaps and endpoint-in-interior contacts raise DegenerateContact.
    Optional ``split_points`` lying on segments become vertices.
    """
    raw = []
    for arc in arcs:
        if isinstance(arc, Polyline):
            raw.extend(arc.segments())
        else:
            raw.append(tuple(arc))
    segs = []
    seen = {}
    sources = []
    for a, b in raw:
        if a == b:
            raise DegenerateContact(f"zero-length segment at {a}")
        if (a, b) in seen:
            sources.append((seen[(a, b)], 1))
        elif (b, a) in seen:
            sources.append((seen[(b, a)], -1))
        else:
            seen[(a, b)] = len(segs)
            sources.append((len(segs), 1))
            segs.append((a, b))
    cuts = [{a, b} for a, b in segs]
    n = len(segs)
    for i in range(n):
        for j in range(i + 1, n):
            c = seg_intersect(segs[i], segs[j])
            if c.kind == CROSSING:
                cuts[i].add(c.point)
                cuts[j].add(c.point)
            elif c.kind == DEGENERATE:
                raise DegenerateContact(f"segments {i} and {j} touch degenerately")
    for p in split_points:
        for i, (a, b) in enumerate(segs):
            if on_segment(p, a, b):
                cuts[i].add(p)

    vindex: dict = {}
    verts: list = []

    def vid(p):
        if p not in vindex:
            vindex[p] = len(verts)
            verts.append(p)
        return vindex[p]

    for p in sorted({p for cs in cuts for p in cs}):
        vid(p)
    edges = []
    for i, (a, b) in enumerate(segs):
        pts = sorted(cuts[i], key=lambda p: seg_param(p, a, b))
        for p, q in zip(pts, pts[1:]):
            edges.append((vindex[p], vindex[q], i, seg_param(p, a, b), seg_param(q, a, b)))
    arr = _assemble(verts, edges, vindex)
    arr.sources = sources
    return arr


def _assemble(verts, edges, vindex) -> Arrangement:
    nh = 2 * len(edges)

    def origin(h):
        u, v = edges[h >> 1][:2]
        return u if h % 2 == 0 else v

    def hdir(h):
        u, v = edges[h >> 1][:2]
        d = verts[v] - verts[u]
        return d if h % 2 == 0 else -d

    stars = [[] for _ in verts]
    for h in range(nh):
        stars[origin(h)].append(h)
    pos_in_star = {}
    for v, st in enumerate(stars):
        st.sort(key=cmp_to_key(lambda g, h: angle_cmp(hdir(g), hdir(h))))
        for k, h in enumerate(st):
            pos_in_star[h] = k

    def nxt(h):
        t = h ^ 1
        st = stars[origin(t)]
        return st[(pos_in_star[t] - 1) % len(st)]

    cyc_of = [-1] * nh
    cycles = []
    for h in range(nh):
        if cyc_of[h] >= 0:
            continue
        cyc = []
        g = h
        while cyc_of[g] < 0:
            cyc_of[g] = len(cycles)
            cyc.append(g)
            g = nxt(g)
        cycles.append(cyc)
    areas = [signed_area([verts[origin(h)] for h in c]) for c in cycles]

    # connected components of the edge graph
    parent = list(range(len(verts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v, *_ in edges:
        parent[find(u)] = find(v)
    comp_of_vertex = [find(v) for v in range(len(verts))]
    comps = sorted({comp_of_vertex[origin(c[0])] for c in cycles})

    bounded = [i for i, a in enumerate(areas) if a > 0]
    outer = [i for i, a in enumerate(areas) if a <= 0]
    faces = [Face(0, [], False)]
    face_of_cycle = {}
    for i in bounded:
        face_of_cycle[i] = len(faces)
        faces.append(Face(len(faces), [cycles[i]], True, areas[i]))
    for i in outer:
        comp = comp_of_vertex[origin(cycles[i][0])]
        p = verts[origin(cycles[i][0])]
        best = None
        for j in bounded:
            if comp_of_vertex[origin(cycles[j][0])] == comp:
                continue
            pts = [verts[origin(h)] for h in cycles[j]]
            if cycle_winding(pts, p) == 1 and (best is None or areas[j] < areas[best]):
                best = j
        f = faces[0] if best is None else faces[face_of_cycle[best]]
        f.cycles.append(cycles[i])
        f.area += areas[i] if f.bounded else 0
        face_of_cycle[i] = f.id
    adj = [(face_of_cycle[cyc_of[2 * e]], face_of_cycle[cyc_of[2 * e + 1]]) for e in range(len(edges))]
    arr = Arrangement(list(verts), list(edges), faces, adj, 0, stars, len(comps), dict(vindex))
    if not arr.euler_ok():
        raise InconsistentPropagation("Euler characteristic check failed")
    return arr


def winding_by_propagation(arr: Arrangement, multiplicity) -> dict:
    """Face values from edge multiplicities: w(left) = w(right) + m(edge)."""
    mult = multiplicity if callable(multiplicity) else (lambda e: multiplicity.get(e, 0))
    nbrs = [[] for _ in arr.faces]
    for e, (lf, rf) in enumerate(arr.face_adjacency):
        m = mult(e)
        nbrs[rf].append((lf, m))
        nbrs[lf].append((rf, -m))
    w = {arr.unbounded_face: 0}
    queue = deque([arr.unbounded_face])
    while queue:
        f = queue.popleft()
        for g, m in nbrs[f]:
            val = w[f] + m
            if g not in w:
                w[g] = val
                queue.append(g)
            elif w[g] != val:
                raise InconsistentPropagation(f"face {g}: {w[g]} vs {val}")
    for f in arr.faces:
        w.setdefault(f.id, 0)
    return w


def loop_multiplicity(arr: Arrangement) -> dict:
    """Edge multiplicities when the arrangement's inputs form closed loops.

    Each input segment contributes +1 along its own direction; repeated
    segments add up.
    """
    per_seg = {}
    for s, o in arr.sources:
        per_seg[s] = per_seg.get(s, 0) + o
    return {e: per_seg.get(s, 0) for e, (_u, _v, s, _t0, _t1) in enumerate(arr.edges)}

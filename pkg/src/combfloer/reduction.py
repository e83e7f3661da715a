"""Connection matrices on graded posets and the cancellation of a unit pivot.

Conventions: ``nu[(q, p)]`` is the coefficient of p in the boundary of q.
``order`` holds pairs (p, q) meaning p ⪯ q and is kept reflexively and
transitively closed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from . import linalg
from .errors import NotAComplex, NotAdjacent, ParseError, PivotNotUnit


def closure(elements, pairs) -> frozenset:
    """Reflexive-transitive closure of a relation given as (p, q) pairs."""
    elems = list(elements)
    up = {p: {p} for p in elems}
    for p, q in pairs:
        up[p].add(q)
    changed = True
    while changed:
        changed = False
        for p in elems:
            new = set().union(*(up[q] for q in up[p]))
            if new != up[p]:
                up[p] = new
                changed = True
    return frozenset((p, q) for p in elems for q in up[p])


@dataclass
class ConnectionComplex:
    P: list
    nu: dict
    mu: Optional[dict] = None
    order: Optional[frozenset] = None
    coeff: str = "Z"

    def __post_init__(self):
        self.P = list(self.P)
        self.coeff = self.coeff.upper()
        clean = {}
        for (q, p), v in self.nu.items():
            v = v % 2 if self.coeff == "F2" else v
            if v:
                clean[(q, p)] = v
        self.nu = clean
        if self.order is not None:
            self.order = closure(self.P, self.order)

    def v(self, q, p) -> int:
        return self.nu.get((q, p), 0)

    def leq(self, p, q) -> bool:
        return (p, q) in self.order

    def matrix(self) -> list:
        """D with D[i][j] = nu(P[j], P[i]): column j is the boundary of P[j]."""
        return [[self.v(q, p) for q in self.P] for p in self.P]

    def _norm(self, x: int) -> int:
        return x % 2 if self.coeff == "F2" else x


def verify_connection(cc: ConnectionComplex) -> list:
    """Violations of d o d = 0, the index-function axioms and the order axioms."""
    out = []
    for r in cc.P:
        for p in cc.P:
            s = cc._norm(sum(cc.v(r, q) * cc.v(q, p) for q in cc.P))
            if s:
                out.append(f"d o d != 0 at ({p}, {r}): {s}")
    if cc.mu is not None:
        for (q, p) in cc.nu:
            if cc.mu[q] - cc.mu[p] != 1:
                out.append(f"nu({q},{p}) != 0 but mu({q}) - mu({p}) = {cc.mu[q] - cc.mu[p]}")
    if cc.order is not None:
        for (q, p) in cc.nu:
            if not cc.leq(p, q):
                out.append(f"nu({q},{p}) != 0 but not {p} ⪯ {q}")
        for (p, q) in cc.order:
            if p != q and cc.leq(q, p):
                out.append(f"order is not antisymmetric on ({p}, {q})")
            if p != q and cc.mu is not None and not cc.mu[p] < cc.mu[q]:
                out.append(f"{p} ⪯ {q} but mu({p}) >= mu({q})")
    return out


def is_adjacent(cc: ConnectionComplex, p, q) -> bool:
    if p == q or not cc.leq(p, q):
        return False
    return all(r in (p, q) or not (cc.leq(p, r) and cc.leq(r, q)) for r in cc.P)


def _pivot(cc: ConnectionComplex, pbar, qbar) -> int:
    for g in (pbar, qbar):
        if g not in cc.P:
            raise PivotNotUnit(f"{g!r} is not a generator")
    piv = cc.v(qbar, pbar)
    if cc.coeff == "F2":
        if piv % 2 == 0:
            raise PivotNotUnit(f"nu({qbar},{pbar}) = {piv} is not odd")
        sigma = 1
    else:
        if piv not in (1, -1):
            raise PivotNotUnit(f"nu({qbar},{pbar}) = {piv} is not a unit")
        sigma = piv  # 1/sigma == sigma
    if cc.order is not None and not is_adjacent(cc, pbar, qbar):
        raise NotAdjacent(f"({pbar}, {qbar}) is not an adjacent pair")
    return sigma


def reduce(cc: ConnectionComplex, pbar, qbar) -> ConnectionComplex:
    """Cancel the pair (pbar, qbar) with nu(qbar, pbar) a unit."""
    sigma = _pivot(cc, pbar, qbar)
    rest = [g for g in cc.P if g not in (pbar, qbar)]
    nu2 = {}
    for q in rest:
        for p in rest:
            val = cc.v(q, p) - cc.v(q, pbar) * sigma * cc.v(qbar, p)
            if val:
                nu2[(q, p)] = val
    mu2 = None if cc.mu is None else {g: cc.mu[g] for g in rest}
    order2 = None
    if cc.order is not None:
        order2 = frozenset((p, q) for p in rest for q in rest
                           if cc.leq(p, q) or (cc.leq(pbar, q) and cc.leq(p, qbar)))
    return ConnectionComplex(rest, nu2, mu2, order2, cc.coeff)


@dataclass
class ChainMaps:
    phi: list  # C' -> C, shape |P| x |P'|
    psi: list  # C -> C', shape |P'| x |P|
    T: list    # C -> C
    reduced: ConnectionComplex
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def chain_maps(cc: ConnectionComplex, pbar, qbar) -> ChainMaps:
    sigma = _pivot(cc, pbar, qbar)
    red = reduce(cc, pbar, qbar)
    P, Q = cc.P, red.P
    idx = {g: i for i, g in enumerate(P)}
    n, m = len(P), len(Q)
    phi = linalg.zeros(n, m)
    for j, q in enumerate(Q):
        phi[idx[q]][j] = 1
        phi[idx[qbar]][j] -= cc.v(q, pbar) * sigma
    psi = linalg.zeros(m, n)
    for j, q in enumerate(Q):
        psi[j][idx[q]] = 1
    for j, p in enumerate(Q):
        psi[j][idx[pbar]] = -sigma * cc.v(qbar, p)
    T = linalg.zeros(n, n)
    T[idx[qbar]][idx[pbar]] = sigma
    D, D2 = cc.matrix(), red.matrix()
    norm = linalg.mod2 if cc.coeff == "F2" else (lambda a: a)

    def eq(a, b):
        return linalg.is_zero(norm(linalg.sub(a, b)))

    checks = {
        "phi_chain_map": eq(linalg.matmul(phi, D2, n, m), linalg.matmul(D, phi, n, m)),
        "psi_chain_map": eq(linalg.matmul(D2, psi, m, n), linalg.matmul(psi, D, m, n)),
        "psi_phi_id": eq(linalg.matmul(psi, phi, m, m), linalg.identity(m)),
        "homotopy": eq(linalg.sub(linalg.identity(n), linalg.matmul(phi, psi, n, n)),
                       linalg.add(linalg.matmul(D, T, n, n), linalg.matmul(T, D, n, n))),
    }
    return ChainMaps(phi, psi, T, red, checks)


def homology_dims(cc: ConnectionComplex) -> dict:
    if any(v.startswith("d o d") for v in verify_connection(cc)):
        raise NotAComplex("nu does not square to zero")
    rank = linalg.rank_mod2 if cc.coeff == "F2" else linalg.rank_z
    if cc.mu is None:
        r = rank(cc.matrix())
        out = {"dim": len(cc.P) - 2 * r}
        if cc.coeff == "Z":
            out["torsion"] = [d for d in linalg.smith_invariants(cc.matrix()) if d > 1]
        return out
    by_grade = {}
    for g in cc.P:
        by_grade.setdefault(cc.mu[g], []).append(g)

    def block(src, dst):
        return [[cc.v(q, p) for q in src] for p in dst]

    dims = {}
    torsion = {}
    for k in sorted(by_grade):
        here = by_grade[k]
        out_rank = rank(block(here, by_grade.get(k - 1, [])))
        in_block = block(by_grade.get(k + 1, []), here)
        in_rank = rank(in_block)
        dims[k] = len(here) - out_rank - in_rank
        if cc.coeff == "Z":
            torsion[k] = [d for d in linalg.smith_invariants(in_block) if d > 1]
    out = {"dim": sum(dims.values()), "graded": {str(k): v for k, v in dims.items() if v}}
    if cc.coeff == "Z":
        out["torsion"] = {str(k): v for k, v in torsion.items() if v}
    return out


def valid_pivots(cc: ConnectionComplex) -> list:
    out = []
    for (q, p), v in sorted(cc.nu.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        try:
            _pivot(cc, p, q)
        except PivotNotUnit:
            continue
        out.append((p, q))
    return out


# --- bridge from the Floer complex ------------------------------------------

def from_floer(cx, with_order: bool = True) -> ConnectionComplex:
    """Export a FloerComplex; components get disjoint grade ranges."""
    names = [f"x{p.id}" for p in cx.generators]
    nu = {}
    for q in range(len(names)):
        for p in range(len(names)):
            if cx.matrix[q][p]:
                nu[(names[q], names[p])] = cx.matrix[q][p]
    mu = {}
    offset = 0
    for comp in cx.components:
        top = max(cx.rel_grade[i] for i in comp)
        for i in comp:
            mu[names[i]] = cx.rel_grade[i] + offset
        offset += top + 2
    order = None
    if with_order:
        order = closure(names, [(p, q) for (q, p) in nu])
    cc = ConnectionComplex(names, nu, mu, order, cx.coeff)
    if verify_connection(cc):
        # gradings or order are not meaningful without the Floer hypotheses
        cc = ConnectionComplex(names, nu, None, None, cx.coeff)
    return cc


# --- JSON -------------------------------------------------------------------

def complex_from_dict(d: dict, coeff: str = "Z") -> ConnectionComplex:
    try:
        gens = [str(g) for g in d["generators"]]
        if len(set(gens)) != len(gens):
            raise ParseError("duplicate generator names")
        nu = {}
        for q, p, v in d.get("nu", []):
            if str(q) not in gens or str(p) not in gens or not isinstance(v, int):
                raise ParseError(f"bad nu entry {[q, p, v]!r}")
            nu[(str(q), str(p))] = nu.get((str(q), str(p)), 0) + v
        mu = d.get("mu")
        if isinstance(mu, list):
            mu = dict(zip(gens, mu))
        if mu is not None:
            mu = {str(k): int(v) for k, v in mu.items()}
            if set(mu) != set(gens):
                raise ParseError("mu must assign an integer to every generator")
        order = d.get("order")
        if order is not None:
            order = [(str(p), str(q)) for p, q in order]
            if any(p not in gens or q not in gens for p, q in order):
                raise ParseError("order mentions unknown generators")
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad complex file: {exc}") from exc
    return ConnectionComplex(gens, nu, mu, order, d.get("coeff", coeff))


def complex_to_dict(cc: ConnectionComplex) -> dict:
    out = {
        "generators": list(cc.P),
        "nu": [[q, p, v] for (q, p), v in sorted(cc.nu.items(),
                                                 key=lambda kv: (cc.P.index(kv[0][0]), cc.P.index(kv[0][1])))],
        "coeff": cc.coeff,
    }
    if cc.mu is not None:
        out["mu"] = {g: cc.mu[g] for g in cc.P}
    if cc.order is not None:
        pos = {g: i for i, g in enumerate(cc.P)}
        out["order"] = [[p, q] for p, q in sorted(cc.order, key=lambda pq: (pos[pq[0]], pos[pq[1]]))
                        if p != q]
    return out


# --- random complexes ---------------------------------------------------------

def random_complex(rng: random.Random, n: int = 8, coeff: str = "Z", mixes: int = 6) -> ConnectionComplex:
    """A connection complex made from elementary pieces and a graded change of basis.

    Pieces are isolated generators and cancelling pairs q -> p with nu = 1.
    Random unimodular row/column operations inside each grade keep d o d = 0
    and the grading.
    """
    names = [f"g{i}" for i in range(n)]
    mu = {}
    nu = {}
    i = 0
    while i < n:
        k = rng.randint(0, 3)
        if i + 1 < n and rng.random() < 0.6:
            q, p = names[i], names[i + 1]
            mu[q], mu[p] = k + 1, k
            nu[(q, p)] = rng.choice((1, -1))
            i += 2
        else:
            mu[names[i]] = k
            i += 1
    # change of basis: replace generator a by a + c*b inside one grade
    for _ in range(mixes):
        a, b = rng.sample(names, 2)
        if mu[a] != mu[b]:
            continue
        c = rng.choice((1, -1, 2))
        # new basis a' = a + c b : boundaries d(a') = d(a) + c d(b); coefficients
        # on a and b transform by the inverse: b-coefficient loses c * a-coefficient
        for p in names:
            nu[(a, p)] = nu.get((a, p), 0) + c * nu.get((b, p), 0)
        for q in names:
            nu[(q, b)] = nu.get((q, b), 0) - c * nu.get((q, a), 0)
    order = [(p, q) for (q, p), v in nu.items() if v]
    perm = names[:]
    rng.shuffle(perm)
    cc = ConnectionComplex(perm, nu, mu, order, coeff)
    return cc

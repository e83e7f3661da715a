"""Acceptance criteria 1-11, one PASS/FAIL line each with wall time.

Run under pytest (lines are printed even with capture on) or directly:
``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time

import pytest

from combfloer.errors import CombFloerError
from combfloer.floer import (build_complex, d_squared, euler_characteristic, geo_oracle,
                             heart_pairing_check, homology)
from combfloer.io import FIXTURE_NAMES, fixture
from combfloer.isotopy import cancel_pair, cancellable, random_create, random_wiggle, verify_move
from combfloer.lunes import all_lunes, lune_count, primitive_existence_check
from combfloer.reduction import (chain_maps, complex_from_dict, complex_to_dict, from_floer,
                                 homology_dims, random_complex, valid_pivots, verify_connection)
from combfloer.surfaces import ArcSpec, Surface, num_alg, same_component
from combfloer.traces import (all_arc_traces, cancellation_defect, catenate, constant_trace,
                              m_x, m_y, maslov, maslov_plane_form, satisfies_arc_condition,
                              trace_from_arcs)

TORUS = ("F_TORUS1", "F_TORUS2", "F_TORUS3", "F_TORUS4", "F_NEST")
GOOD_TORUS = ("F_TORUS1", "F_TORUS2", "F_TORUS3", "F_NEST")

CRITERIA = {}


def criterion(n, title, budget):
    def register(fn):
        CRITERIA[n] = (title, budget, fn)
        return fn
    return register


def lune_table(pair):
    return {k: sorted((lu.sign, lu.primitive) for lu in v) for k, v in all_lunes(pair).items()}


def every_trace(pair):
    return [t for x, y in itertools.permutations(pair.points, 2) for t in all_arc_traces(pair, x, y)]


@criterion(1, "F_TORUS1: one crossing, no lunes, HF = geo = 1", 0.1)
def c1():
    pair = fixture("F_TORUS1")
    assert num_alg(pair) == (1, 1)
    assert all_lunes(pair) == {}
    h = homology(build_complex(pair))
    assert h["dim"] == 1 == geo_oracle(pair)
    return "num 1, alg 1, dim 1"


@criterion(2, "F_TORUS2: zero differential, HF dim = |det| = 2", 0.1)
def c2():
    pair = fixture("F_TORUS2")
    assert num_alg(pair) == (2, 2)
    cx = build_complex(pair)
    assert all(v == 0 for row in cx.matrix for v in row)
    (a, b), (c, d) = pair.alpha.deck, pair.beta.deck
    assert homology(cx)["dim"] == 2 == abs(a * d - b * c)
    assert euler_characteristic(cx) == 2
    x, y = pair.points
    assert same_component(pair, x, y) is None
    return "differential 0, dim 2, euler 2, crossings in different components"


@criterion(3, "F_TORUS3: two primitive index-one lunes, d o d = 0, HF = 1", 1.0)
def c3():
    pair = fixture("F_TORUS3")
    lunes = all_lunes(pair)
    assert lune_table(pair) == {(0, 1): [(1, True)], (2, 1): [(-1, True)]}
    for ls in lunes.values():
        t = ls[0].trace
        assert (maslov(t), m_x(t), m_y(t)) == (1, 1, 1)
    for coeff in ("F2", "Z"):
        assert d_squared(build_complex(pair, coeff, lunes))[1]
    assert homology(build_complex(pair, "F2", lunes))["dim"] == 1
    hz = homology(build_complex(pair, "Z", lunes))
    assert hz["free_rank"] == 1 and not hz["torsion_HF0"] and not hz["torsion_HF1"]
    return "lunes 0->1 (+1), 2->1 (-1); HF(F2) 1; HF(Z) = Z"


@criterion(4, "F_PLANE: lens x->y, dx = y, HF = 0", 0.1)
def c4():
    pair = fixture("F_PLANE")
    lunes = all_lunes(pair)
    assert len(lunes[(0, 1)]) == 1
    cx = build_complex(pair, "F2", lunes)
    assert cx.matrix == [[0, 1], [0, 0]]
    assert homology(cx)["dim"] == 0
    # two more lunes run y->x; they carry opposite signs and even count
    back = lunes.get((1, 0), [])
    assert len(back) == 2 and lune_count(lunes, 1, 0, "F2") == 0 and lune_count(lunes, 1, 0, "Z") == 0
    return "one lune 0->1; the two L-shaped lunes 1->0 cancel in both F2 and Z"


@criterion(5, "F_TORUS4: contractible beta, one lune each way, d o d = id", 0.1)
def c5():
    pair = fixture("F_TORUS4")
    assert not pair.flags.floer_hypotheses
    assert {k: len(v) for k, v in all_lunes(pair).items()} == {(0, 1): 1, (1, 0): 1}
    sq, zero = d_squared(build_complex(pair, "F2"))
    assert not zero and sq == [[1, 0], [0, 1]]
    return "d o d = identity, reported (hypotheses fail)"


@criterion(6, "trace index equals the planar formula; index adds under catenation", 30.0)
def c6():
    rng = random.Random(6)
    pairs = [fixture(n) for n in ("F_PLANE", "F_TORUS2", "F_TORUS3", "F_NEST", "F_ANN")]
    pairs += [random_wiggle(fixture(rng.choice(GOOD_TORUS)), rng, rng.randint(1, 2)) for _ in range(6)]
    pool = [(p, t) for p in pairs for t in every_trace(p) if satisfies_arc_condition(t)]
    sample = rng.sample(pool, min(150, len(pool)))
    assert len(sample) >= 100, f"only {len(sample)} arc traces"
    for _p, t in sample:
        assert maslov(t) == maslov_plane_form(t), f"{t}: {maslov(t)} vs {maslov_plane_form(t)}"
    cats = 0
    for _ in range(300):
        pair = rng.choice(pairs)
        x, y, z = (rng.choice(pair.points) for _ in range(3))
        t1s = all_arc_traces(pair, x, y) if x.id != y.id else [constant_trace(pair, x)]
        t2s = all_arc_traces(pair, y, z) if y.id != z.id else [constant_trace(pair, y)]
        if not t1s or not t2s:
            continue
        t1, t2 = rng.choice(t1s), rng.choice(t2s)
        assert maslov(catenate(t1, t2, check=False)) == maslov(t1) + maslov(t2)
        cats += 1
    assert cats >= 100
    return f"{len(sample)} arc traces, {cats} catenations"


@criterion(7, "deck-shift cancellation defect vanishes; annulus full wrap has index 0", 10.0)
def c7():
    checked = 0
    gs = [g for g in itertools.product(range(-3, 4), repeat=2) if g != (0, 0)]
    for name in TORUS:
        for t in every_trace(fixture(name)):
            for g in gs:
                assert cancellation_defect(t, g) == 0, f"{name} {t} g={g}"
                checked += 1
    ann = fixture("F_ANN")
    for t in every_trace(ann):
        for a in range(-3, 4):
            if a:
                assert cancellation_defect(t, (a, 0)) == 0
                checked += 1
    wraps = 0
    for x in ann.points:
        for da, db in itertools.product((1, -1), repeat=2):
            t = trace_from_arcs(ann, x, x, ArcSpec(da, 1), ArcSpec(db, 1))
            if t is not None:
                assert maslov(t) == 0, f"full wrap at x{x.id}: {maslov(t)}"
                wraps += 1
    assert wraps > 0
    return f"{checked} (trace, g) pairs, {wraps} full wraps"


@criterion(8, "broken hearts come in even, paired families matching d o d", 60.0)
def c8():
    rng = random.Random(8)
    pairs = [(n, fixture(n)) for n in FIXTURE_NAMES]
    pairs += [(f"wiggle{i}", random_wiggle(fixture(rng.choice(GOOD_TORUS)), rng, rng.randint(1, 3)))
              for i in range(50)]
    hearts = 0
    reported = []
    for name, pair in pairs:
        lunes = all_lunes(pair)
        rep = heart_pairing_check(pair, lunes, strict=False)
        zero = d_squared(build_complex(pair, "F2", lunes), raise_on_violation=False)[1]
        even = all(c % 2 == 0 for c in rep["counts"].values())
        assert even == zero, f"{name}: parity of hearts disagrees with d o d"
        hearts += sum(rep["counts"].values())
        if pair.flags.floer_hypotheses:
            assert rep["holds"] and rep["z_cancels"] and zero, f"{name}: {rep['unmatched']}"
        elif not rep["holds"]:
            reported.append(name)
    return f"{len(pairs)} pairs, {hearts} hearts; reported without hypotheses: {', '.join(reported)}"


def _check_reductions(cc):
    base = homology_dims(cc)
    pivots = 0
    for p, q in valid_pivots(cc):
        cm = chain_maps(cc, p, q)
        assert cm.ok, f"pivot ({p},{q}): {cm.checks}"
        assert homology_dims(cm.reduced) == base
        pivots += 1
    # reduce all the way down
    cur = cc
    while True:
        vp = valid_pivots(cur)
        if not vp:
            break
        cur = chain_maps(cur, *vp[0]).reduced
        assert homology_dims(cur) == base
    return pivots


@criterion(9, "algebraic reduction: chain maps, homotopy and homology", 30.0)
def c9():
    pivots = 0
    exports = 0
    for name in FIXTURE_NAMES:
        for coeff in ("F2", "Z"):
            cx = build_complex(fixture(name), coeff)
            if not d_squared(cx, raise_on_violation=False)[1]:
                continue
            cc = from_floer(cx)
            cc = complex_from_dict(complex_to_dict(cc), coeff)
            assert verify_connection(cc) == []
            pivots += _check_reductions(cc)
            exports += 1
    rng = random.Random(9)
    for i in range(100):
        cc = random_complex(rng, rng.randint(2, 9), "Z" if i % 2 else "F2")
        assert verify_connection(cc) == []
        pivots += _check_reductions(cc)
    return f"{exports} fixture exports, 100 random complexes, {pivots} pivots"


def _hf(pair):
    return homology(build_complex(pair, "F2"))["dim"]


@criterion(10, "isotopy moves preserve HF and match algebraic reduction", 60.0)
def c10():
    rng = random.Random(10)
    created = cancelled = 0
    for i in range(50):
        base = fixture(GOOD_TORUS[i % len(GOOD_TORUS)])
        if i % 2 == 0:
            made = random_create(base, rng)
            assert made is not None, f"schedule {i}: no valid finger"
            mid, fresh = made
            assert _hf(mid) == _hf(base)
            ids = {p.along_alpha: p.id for p in mid.points}
            want = {ids[fresh[0]], ids[fresh[1]]}
            lune = next(lu for lu in cancellable(mid) if {lu.x.id, lu.y.id} == want)
            back = cancel_pair(mid, lune)
            rep = verify_move(mid, back, lune.x.id, lune.y.id)
            assert num_alg(back) == num_alg(base)
            created += 1
        else:
            pair = random_wiggle(base, rng, rng.randint(0, 2))
            options = cancellable(pair)
            if not options:
                pair = fixture("F_TORUS3")
                options = cancellable(pair)
            lune = rng.choice(options)
            after = cancel_pair(pair, lune)
            rep = verify_move(pair, after, lune.x.id, lune.y.id)
            cancelled += 1
        assert rep["holds"] and rep["reduction_agrees"], f"schedule {i}: {rep['mismatches']}"
        assert rep["hf_before"] == rep["hf_after"]
    return f"{created} create-then-cancel, {cancelled} cancel-only"


@criterion(11, "torus: geo = num exactly when there are no lunes; a primitive lune exists", 10.0)
def c11():
    rng = random.Random(11)
    pairs = [(n, fixture(n)) for n in TORUS]
    pairs += [(f"wiggle{i}", random_wiggle(fixture(rng.choice(GOOD_TORUS)), rng, 1)) for i in range(8)]
    for name, pair in pairs:
        assert pair.surface is Surface.TORUS
        lunes = all_lunes(pair)
        geo, num = geo_oracle(pair), len(pair.points)
        assert (geo == num) == (not lunes), f"{name}: geo {geo}, num {num}, lunes {len(lunes)}"
        assert primitive_existence_check(pair, lunes)["holds"]
    return f"{len(pairs)} torus pairs"


def run_criterion(n):
    title, budget, fn = CRITERIA[n]
    t0 = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except (AssertionError, CombFloerError) as exc:
        detail = f"{type(exc).__name__}: {exc}"
        ok = False
    dt = time.perf_counter() - t0
    if ok and dt >= budget:
        ok = False
        detail += f"; over the {budget} s budget"
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d} ({dt:.3f} s, budget {budget} s) {title} :: {detail}"
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = run_criterion(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _ok, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

"""Acceptance criteria, one test per criterion (criterion 7 split by property).

Every test is timed against the 5 second budget and reports a PASS/FAIL
line; the lines are printed in the pytest summary and when this file is run
as a script.
"""

import functools
import json
import random
import subprocess
import sys
import time
from pathlib import Path

from toricaut import classify, oracles, prepare_monoid
from toricaut.orbits import INVARIANT, NOT_INVARIANT, TORIC_GENERAL, TORIC_NORMAL, LndOracle, phi
from toricaut.polyhedra import cone_from_generators, dual_cone, extreme_rays, face_lattice
from toricaut.roots import NONE_PROVEN, as_root, exists_tau_root, is_admissible, is_tau_root

from _gen import random_generators, random_monoid, saturate

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

CORPUS = Path(__file__).resolve().parents[1] / "corpus"
BUDGET = 5.0
TRIALS = 1000
QUADRANT = [[1, 0], [0, 1]]
VERONESE = [[1, 0], [1, 1], [1, 2]]
CUSP = [[2], [3]]
CUSP_LINE = [[2, 0], [3, 0], [0, 1]]


def criterion(label, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            t0 = time.perf_counter()
            try:
                fn()
            except BaseException as exc:
                dt = time.perf_counter() - t0
                ACCEPTANCE_LINES.append(f"FAIL  {label:<3} {title} ({dt:.2f} s): {exc!r}"[:300])
                raise
            dt = time.perf_counter() - t0
            ok = dt < BUDGET
            ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label:<3} {title} ({dt:.2f} s)")
            assert ok, f"{label} took {dt:.2f} s, budget {BUDGET} s"

        return run

    return wrap


def class_members(rep):
    return [list(c.members) for c in rep.classes]


@criterion("1", "SL3 quadric table scenario: vertex is an invariant singleton class")
def test_criterion_1_sl3_table():
    oracle = LndOracle.table(yes=[(3, -1), (-1, 2)], no=[(-1, 0), (0, -1)], default="no")
    rep = classify(QUADRANT, oracle)
    assert rep.verdicts[0].status == INVARIANT
    assert class_members(rep) == [[0], [1, 2, 3]]
    assert [c.head for c in rep.classes] == [0, 3]


@criterion("2", "quadrant vertex tau-roots are exactly (-1,0) and (0,-1)")
def test_criterion_2_vertex_roots():
    p = prepare_monoid(QUADRANT)[1]
    fl = face_lattice(p.cone)
    v = exists_tau_root(fl, fl.minimal)
    assert v.exists and v.root.e in {(-1, 0), (0, -1)}
    brute = [e for e, _ in oracles.tau_roots(p.cone.sigma_rays, fl.minimal.active, 5)]
    assert brute == [(-1, 0), (0, -1)]
    res = subprocess.run(
        [sys.executable, "-m", "toricaut", "oracle", "roots", "--gens", "1,0;0,1", "--face", "0", "--radius", "1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert [line.split("  ")[0] for line in res.stdout.splitlines()] == ["(-1, 0)", "(0, -1)"]


@criterion("3", "cuspidal cubic: two classes, -1 refuted, module generators {0,1}, saturation point 2")
def test_criterion_3_cusp():
    rep = classify(CUSP)
    assert class_members(rep) == [[0], [1]]
    p = rep.monoid
    assert not is_admissible((-1,), p)
    assert oracles.admissible_refutation(p.generators, (-1,), 10) is not None
    sat = rep.saturation
    assert sorted(sat.module_generators) == [(0,), (1,)]
    assert sat.saturation_point == (2,)
    assert all((2 + h[0],) in p for h in sat.module_generators)


@criterion("4", "affine plane: one class, every proper face refuted by a valid root")
def test_criterion_4_plane():
    rep = classify(QUADRANT, LndOracle(TORIC_NORMAL))
    assert class_members(rep) == [[0, 1, 2, 3]]
    fl = rep.lattice
    for v in rep.verdicts:
        face = fl[v.face]
        if face.id == fl.full.id:
            assert v.status == INVARIANT
            continue
        assert v.status == NOT_INVARIANT
        assert is_tau_root(fl, face, v.witness.e) is not None


@criterion("5", "Veronese cone: two classes, vertex proven rootless")
def test_criterion_5_veronese():
    rep = classify(VERONESE)
    assert class_members(rep) == [[0], [1, 2, 3]]
    fl = rep.lattice
    v = exists_tau_root(fl, fl.minimal)
    assert v.status == NONE_PROVEN
    assert rep.verdicts[0].status == INVARIANT


@criterion("6", "cusp x line: classes {vertex, ray(0,1)} and {ray(1,0), full}")
def test_criterion_6_cusp_line():
    rep = classify(CUSP_LINE, LndOracle(TORIC_GENERAL))
    fl = rep.lattice
    vertex, full = fl.minimal.id, fl.full.id
    ray01 = fl.by_active((1,)).id  # the face spanned by (0, 1)
    ray10 = fl.by_active((0,)).id
    assert sorted(map(sorted, class_members(rep))) == sorted([sorted([vertex, ray01]), sorted([ray10, full])])
    w = rep.verdicts[ray10].witness
    assert w.e == (0, -1)
    p = rep.monoid
    elems = oracles.bfs_elements(p.generators, 10)
    for m in elems:
        if oracles.sup(m) <= 10 and m[1] != 0:
            assert (m[0], m[1] - 1) in p
    assert oracles.admissible_refutation(p.generators, w.e, 10) is None


# -- criterion 7: property suite ---------------------------------------------


def monoid_pool(seed, count, ranks):
    rng = random.Random(seed)
    return rng, [random_monoid(rng, rng.choice(ranks)) for _ in range(count)]


@criterion("7a", "dual cone involution, 1000 trials")
def test_criterion_7a_dual_involution():
    rng = random.Random(701)
    for _ in range(TRIALS):
        gens = random_generators(rng, rng.choice((1, 2, 3)))
        try:
            p = prepare_monoid(gens)[1]
        except ValueError:
            continue
        c = p.cone
        assert dual_cone(dual_cone(c)) == c
        assert tuple(extreme_rays(c.sigma_rays)) == c.dual_generators
        assert cone_from_generators(c.dual_generators) == c
        assert all(oracles.in_rational_cone(g, c.dual_generators) for g in p.generators)


@criterion("7b", "face duality dim + dual dim = r, 1000 trials")
def test_criterion_7b_face_duality():
    rng = random.Random(702)
    for _ in range(TRIALS):
        p = random_monoid(rng, rng.choice((1, 2, 3)))
        fl = face_lattice(p.cone)
        ids = set()
        for f in fl.faces:
            assert f.dim + fl.dual_dim(f.id) == p.rank
            ids.add(fl.dual_faces[f.id])
        assert ids == set(range(len(fl)))
        # inclusion reverses
        for f in fl.faces:
            for g in fl.faces:
                if fl.leq(f.id, g.id):
                    assert set(g.active) <= set(f.active)


@criterion("7c", "membership vs BFS oracle at radius 24, 1000 trials")
def test_criterion_7c_membership():
    rng, pool = monoid_pool(703, 25, (1, 2))
    trials = 0
    for p in pool:
        elems = oracles.bfs_elements(p.generators, 24)
        inside = [x for x in elems if oracles.sup(x) <= 24]
        for _ in range(TRIALS // len(pool)):
            if rng.random() < 0.5:
                x = tuple(rng.randint(-24, 24) for _ in range(p.rank))
            else:
                # a point of the saturation, where holes live
                x = rng.choice(inside)
                x = tuple(a + rng.randint(-1, 1) for a in x)
                if oracles.sup(x) > 24:
                    continue
            assert (x in p) == (x in elems), (p.generators, x)
            trials += 1
    assert trials >= 0.9 * TRIALS


@criterion("7d", "is_admissible vs brute-force refutation, 1000 trials")
def test_criterion_7d_admissibility():
    # rank 1 has a single root, so monoids are rank 2
    rng = random.Random(704)
    trials, radius, reach = 0, 8, 5
    while trials < TRIALS:
        p = random_monoid(rng, 2)
        elems = oracles.bfs_elements(p.generators, radius + reach + 1)
        roots = [e for e in oracles.box(reach, 2) if as_root(p.cone, e) is not None]
        rng.shuffle(roots)
        for e in roots[:12]:
            verdict = is_admissible(e, p)
            ref = oracles.admissible_refutation(p.generators, e, radius, elems)
            assert verdict == (ref is None), (p.generators, e, ref)
            trials += 1


def phi_properties(rep):
    fl, pm = rep.lattice, rep.phi
    inv = {v.face for v in rep.verdicts if v.status == INVARIANT}
    for t in fl.faces:
        assert pm[pm[t.id]] == pm[t.id]
        assert fl.leq(t.id, pm[t.id])
        assert pm[t.id] in inv
        for u in fl.faces:
            if fl.leq(t.id, u.id):
                assert fl.leq(pm[t.id], pm[u.id])


@criterion("7e", "phi idempotent and monotone, 1000 trials")
def test_criterion_7e_phi():
    rng = random.Random(705)
    done = 0
    while done < TRIALS:
        gens = random_generators(rng, rng.choice((1, 2)))
        try:
            p = prepare_monoid(gens)[1]
        except ValueError:
            continue
        mode = rng.choice(("auto", TORIC_NORMAL, TORIC_GENERAL, "table"))
        oracle = None
        if mode == "table":
            yes = [e for e in oracles.box(2, len(gens[0])) if rng.random() < 0.3]
            oracle = LndOracle.table(yes=yes, default="no")
        elif mode != "auto":
            oracle = LndOracle(mode)
        rep = classify(gens, oracle)
        phi_properties(rep)
        assert phi(rep.lattice, rep.verdicts) == rep.phi
        done += 1


@criterion("7f", "saturated input: toric-normal equals toric-general, 1000 trials")
def test_criterion_7f_saturated_modes():
    rng = random.Random(706)
    for _ in range(TRIALS):
        p = saturate(random_monoid(rng, rng.choice((1, 2))))
        assert p.is_saturated
        gens = [list(g) for g in p.generators]
        a = classify(gens, LndOracle(TORIC_NORMAL))
        b = classify(gens, LndOracle(TORIC_GENERAL))
        assert [v.status for v in a.verdicts] == [v.status for v in b.verdicts]
        assert class_members(a) == class_members(b)


@criterion("8", "determinism: byte-identical JSON reports for every corpus file")
def test_criterion_8_determinism():
    files = sorted(CORPUS.glob("*.json"))
    assert len(files) >= 5
    for path in files:
        outs = []
        for _ in range(2):
            res = subprocess.run(
                [sys.executable, "-m", "toricaut", "classify", str(path)], capture_output=True
            )
            assert res.returncode == 0, res.stderr
            outs.append(res.stdout)
        assert outs[0] == outs[1], path.name
        json.loads(outs[0])


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except BaseException:
                failed += 1
    print("\n".join(ACCEPTANCE_LINES))
    sys.exit(1 if failed else 0)

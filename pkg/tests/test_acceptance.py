"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with output visible:

    pytest tests/test_acceptance.py -v -s
"""

import json
import math
import time

import numpy as np
import pytest

from helix_lattice.cli import main as cli_main
from helix_lattice.enumeration import TubeQuery
from helix_lattice.errors import SingularBasisError
from helix_lattice.geometry import (
    ArcTriple,
    Helix,
    Vec3,
    chord_length_sq,
    helix_point,
    triangle_area,
    triangle_area_sq_closed_form,
)
from helix_lattice.lattice import (
    AffineLattice,
    gram_form,
    lattice_constants,
    min_area_lower_bound,
    shortest_vector,
)
from helix_lattice.verify import (
    chain_constant_facts,
    check_area_perturbation,
    check_bound_chain,
    check_sine_inequalities,
    check_t2_bound,
    delta_admissible_max,
    verify_near_helix,
    verify_schinzel,
)

SEED = 0x5EED_2026


def _report(number: int, name: str, ok: bool, elapsed: float, limit: float, extra: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number} {name}: {status} ({elapsed:.2f}s / limit {limit:.0f}s) {extra}")
    assert ok, f"criterion {number} ({name}) failed: {extra}"
    assert elapsed < limit, f"criterion {number} exceeded the runtime limit: {elapsed:.2f}s"


# ---------------------------------------------------------------------------
# 1. closed-form equivalence


def test_criterion_1_closed_form_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst_chord = 0.0
    worst_area = 0.0
    for _ in range(10_000):
        a, b = rng.uniform(0.1, 10.0, 2)
        t0 = float(rng.uniform(-10.0, 10.0))
        h1 = float(rng.uniform(0.05, 2.0 * math.pi - 0.1))
        h2 = float(rng.uniform(0.05, 2.0 * math.pi - h1 - 0.05))
        helix = Helix.from_radius_pitch(float(a), float(b))
        p0 = helix_point(helix, t0)
        p1 = helix_point(helix, t0 + h1)
        p2 = helix_point(helix, t0 + h1 + h2)

        chord_direct = (p0 - p1).norm_sq()
        chord_closed = chord_length_sq(helix, h1)
        worst_chord = max(worst_chord, abs(chord_closed - chord_direct) / max(chord_closed, chord_direct))

        area_direct = triangle_area(p0, p1, p2) ** 2
        area_closed = triangle_area_sq_closed_form(helix, ArcTriple.from_gaps(t0, h1, h2)).area_sq
        worst_area = max(worst_area, abs(area_closed - area_direct) / max(area_closed, area_direct))
    elapsed = time.perf_counter() - start
    ok = worst_chord <= 1e-10 and worst_area <= 1e-10
    _report(1, "closed-form equivalence", ok, elapsed, 5.0,
            f"max rel err chord {worst_chord:.3g}, area {worst_area:.3g}")


# ---------------------------------------------------------------------------
# 2. standard-lattice constants


def test_criterion_2_standard_lattice_constants():
    start = time.perf_counter()
    d, _ = shortest_vector(AffineLattice.standard())
    a_lb = min_area_lower_bound(AffineLattice.standard())
    elapsed = time.perf_counter() - start
    ok = abs(d - 1.0) <= 1e-12 and abs(a_lb - 0.5) <= 1e-12
    _report(2, "standard-lattice constants", ok, elapsed, 1.0, f"d_min {d!r}, a_min_lb {a_lb!r}")


# ---------------------------------------------------------------------------
# 3. shortest-vector oracle equivalence


def test_criterion_3_shortest_vector_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 3)
    r = np.arange(-20, 21)
    grid = np.stack(np.meshgrid(r, r, r, indexing="ij"), axis=-1).reshape(-1, 3)
    zero_row = (grid == 0).all(axis=1)
    checked = 0
    failures = []
    while checked < 100:
        rows = rng.uniform(-3.0, 3.0, size=(3, 3))
        try:
            lat = AffineLattice.from_rows(np.vstack([np.zeros(3), rows]))
        except SingularBasisError:
            continue
        g = gram_form(lat)
        seed_ub = float((rows * rows).sum(axis=1).min())
        if math.ceil(math.sqrt(seed_ub / g.lambda1) * (1 + 1e-12)) > 20:
            continue  # brute box must contain the certified box to be an oracle
        combos = grid @ rows
        norms = (combos * combos).sum(axis=1)
        norms[zero_row] = np.inf
        idx = int(np.argmin(norms))
        want_d = math.sqrt(float(norms[idx]))
        want_m = tuple(int(v) for v in grid[idx])
        got_d, got_m = shortest_vector(lat)
        if abs(got_d - want_d) > 1e-12 * max(1.0, want_d) or got_m != want_m:
            failures.append((rows, got_d, want_d, got_m, want_m))
        checked += 1
    elapsed = time.perf_counter() - start
    _report(3, "shortest-vector oracle equivalence", not failures, elapsed, 30.0,
            f"{checked} lattices, {len(failures)} mismatches")


# ---------------------------------------------------------------------------
# 4. inequality suites


def test_criterion_4_inequality_suites():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 4)

    sine = check_sine_inequalities(np.linspace(1e-6, math.pi - 1e-6, 100_000))

    t2_failures = 0
    pairs = rng.uniform(1e-6, 2.0 * math.pi - 1e-9, size=(100_000, 2))
    for h1, h2 in pairs:
        if not check_t2_bound(float(h1), float(h2)):
            t2_failures += 1

    area_failures = 0
    for _ in range(10_000):
        pts = [Vec3.from_array(rng.uniform(-5.0, 5.0, 3)) for _ in range(3)]
        delta = float(rng.uniform(0.0, 0.5))
        moved = []
        for p in pts:
            step = rng.normal(size=3)
            step *= rng.uniform(0.0, delta) / (np.linalg.norm(step) + 1e-300)
            moved.append(p + Vec3.from_array(step))
        if not check_area_perturbation(*pts, *moved, delta):
            area_failures += 1

    elapsed = time.perf_counter() - start
    ok = sine.ok and t2_failures == 0 and area_failures == 0
    _report(4, "inequality suites", ok, elapsed, 20.0,
            f"sine {sine.checked} pts ok={sine.ok}, t2 fails {t2_failures}, area fails {area_failures}")


# ---------------------------------------------------------------------------
# 5. circle sweep


def test_criterion_5_circle_sweep():
    start = time.perf_counter()
    limit_n = 100_000
    lim = math.isqrt(limit_n)
    representable = set()
    for x in range(lim + 1):
        x2 = x * x
        for y in range(x, lim + 1):
            n = x2 + y * y
            if n > limit_n:
                break
            if n > 0:
                representable.add(n)
    violations = 0
    substantive = 0
    min_arc_tightness = math.inf
    min_abc_tightness = math.inf
    for n in sorted(representable):
        report = verify_schinzel(n)
        if report.vacuous:
            continue
        substantive += 1
        if not report.ok:
            violations += 1
        min_arc_tightness = min(min_arc_tightness, report.tightness)
        min_abc_tightness = min(min_abc_tightness, report.details["side_product_tightness"])
    elapsed = time.perf_counter() - start
    ok = violations == 0 and substantive >= 20_000 and min_arc_tightness >= 1.0 - 1e-9 \
        and min_abc_tightness >= 1.0 - 1e-9
    _report(5, "circle sweep to 1e5", ok, elapsed, 60.0,
            f"{substantive} circles, {violations} violations, "
            f"min arc tightness {min_arc_tightness:.6f}, min side-product tightness {min_abc_tightness:.6f}")


# ---------------------------------------------------------------------------
# 6. near-helix separation bound


def _rich_specs():
    standard = AffineLattice.standard()
    half = AffineLattice.from_rows([[0, 0, 0], [0.5, 0, 0], [0, 0.5, 0], [0, 0, 0.5]])
    sheared = AffineLattice.from_rows([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 0, 1]])
    # (lattice, radius, pitch numerator p, pitch denominator q, z step scale,
    #  window multiple of pi, delta fraction, origin offset fraction of delta)
    # the helix passes through lattice points (+-radius, 0, k p s / q') at t = k q pi
    return [
        (standard, 1.0, 1, 1, 1.0, 16, 0.5, 0.0),
        (standard, 1.0, 1, 1, 1.0, 12, 1.0, 0.0),
        (standard, 1.0, 2, 1, 1.0, 16, 0.5, 0.0),
        (standard, 1.0, 3, 2, 1.0, 16, 0.8, 0.0),
        (standard, 2.0, 1, 1, 1.0, 16, 0.5, 0.0),
        (standard, 2.0, 2, 1, 1.0, 12, 1.0, 0.0),
        (standard, 1.0, 1, 2, 1.0, 16, 0.5, 0.0),
        (standard, 2.0, 3, 2, 1.0, 16, 0.6, 0.0),
        (standard, 1.0, 2, 3, 1.0, 12, 0.5, 0.0),
        (standard, 3.0, 1, 1, 1.0, 16, 0.4, 0.0),
        (standard, 1.0, 1, 1, 1.0, 16, 1.0, 0.4),
        (standard, 2.0, 1, 1, 1.0, 16, 1.0, 0.4),
        (standard, 1.0, 2, 1, 1.0, 12, 1.0, 0.3),
        (standard, 1.0, 3, 1, 1.0, 16, 0.7, 0.0),
        (standard, 2.0, 2, 3, 1.0, 12, 0.5, 0.0),
        (half, 1.0, 1, 1, 0.5, 16, 0.5, 0.0),
        (half, 0.5, 1, 1, 0.5, 16, 0.5, 0.0),
        (half, 1.0, 2, 1, 0.5, 12, 0.8, 0.0),
        (sheared, 1.0, 1, 1, 1.0, 16, 0.5, 0.0),
        (sheared, 2.0, 1, 1, 1.0, 12, 1.0, 0.2),
    ]


def test_criterion_6_near_helix_bound():
    start = time.perf_counter()
    queries = []
    constants_cache = {}

    def constants_for(lat):
        key = id(lat)
        if key not in constants_cache:
            constants_cache[key] = lattice_constants(lat)
        return constants_cache[key]

    for lattice, radius, p, q, zscale, turns, frac, offset in _rich_specs():
        helix = Helix.from_radius_pitch(radius, p * zscale / (q * math.pi))
        constants = constants_for(lattice)
        delta = frac * delta_admissible_max(helix, constants)
        origin = Vec3(offset * delta, 0.0, 0.0) + lattice.v0
        shifted = AffineLattice(origin, lattice.v1, lattice.v2, lattice.v3)
        queries.append(
            (
                TubeQuery(
                    helix=helix, lattice=shifted, delta=delta,
                    t_min=0.0, t_max=turns * math.pi,
                ),
                constants,
            )
        )

    rng = np.random.default_rng(SEED + 6)
    standard = AffineLattice.standard()
    std_constants = lattice_constants(standard)
    while len(queries) < 50:
        kappa, tau = rng.uniform(0.6, 1.8, 2)
        helix = Helix.from_curvature_torsion(float(kappa), float(tau))
        delta = 0.8 * delta_admissible_max(helix, std_constants)
        queries.append(
            (
                TubeQuery(helix=helix, lattice=standard, delta=delta, t_min=0.0, t_max=8.0 * math.pi),
                std_constants,
            )
        )

    substantive = 0
    vacuous = 0
    failures = 0
    min_tightness = math.inf
    for query, constants in queries:
        report = verify_near_helix(query, constants)
        assert report.admissible
        if report.vacuous:
            vacuous += 1
            continue
        substantive += 1
        if not report.ok:
            failures += 1
        if report.tightness is not None:
            min_tightness = min(min_tightness, report.tightness)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and substantive >= 10 and vacuous <= 0.8 * len(queries)
    _report(6, "near-helix separation bound", ok, elapsed, 120.0,
            f"{len(queries)} queries, {substantive} substantive, {vacuous} vacuous, "
            f"{failures} violations, min tightness {min_tightness:.3f}")


# ---------------------------------------------------------------------------
# 7. chained term bounds


def test_criterion_7_bound_chain():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 7)
    facts = chain_constant_facts()
    constants_ok = all(ok for _, _, ok in facts.values())
    value_200 = facts["200^(1/6) > 2.4"][0]
    value_50 = facts["50^(1/6) > 1.9"][0]

    failures = 0
    full_triggered = 0
    for _ in range(10_000):
        a, b = rng.uniform(0.1, 10.0, 2)
        h1 = float(rng.uniform(0.01, math.pi - 0.02))
        h2 = float(rng.uniform(0.01, math.pi - h1 - 0.005))
        floor = float(rng.uniform(0.1, 2.0))
        chain = check_bound_chain(
            Helix.from_radius_pitch(float(a), float(b)),
            ArcTriple.from_gaps(0.0, h1, h2),
            floor,
        )
        if not chain.ok:
            failures += 1
        if chain.step("chain_full").checked:
            full_triggered += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and constants_ok and full_triggered >= 100 and value_200 > 2.4 and value_50 > 1.9
    _report(7, "chained term bounds", ok, elapsed, 5.0,
            f"{failures} violations, {full_triggered} full-premise cases, "
            f"200^(1/6)={value_200:.4f}, 50^(1/6)={value_50:.4f}")


# ---------------------------------------------------------------------------
# 8. sweep determinism


def test_criterion_8_sweep_determinism(tmp_path, capsys):
    start = time.perf_counter()
    config = tmp_path / "sweep.json"
    config.write_text(
        json.dumps(
            {
                "kappa_range": [0.8, 1.2, 3],
                "tau_range": [0.25, 0.4, 2],
                "delta_policy": "fraction:0.5",
                "window": [0.0, 4 * math.pi],
                "seed": 42,
            }
        )
    )
    outs = []
    for name in ("a.csv", "b.csv", "a.json", "b.json"):
        out = tmp_path / name
        fmt = "json" if name.endswith("json") else "csv"
        code = cli_main(["sweep", "--config", str(config), "--format", fmt, "--out", str(out)])
        assert code == 0
        outs.append(out.read_bytes())
    capsys.readouterr()
    elapsed = time.perf_counter() - start
    ok = outs[0] == outs[1] and outs[2] == outs[3] and len(outs[0]) > 0
    _report(8, "sweep determinism", ok, elapsed, 60.0,
            f"csv {len(outs[0])} bytes, json {len(outs[2])} bytes, byte-identical reruns")

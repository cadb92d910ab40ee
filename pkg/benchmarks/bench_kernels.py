#!/usr/bin/env python3
"""Side-by-side timing of the compiled kernels and the NumPy fallback.

Run after an editable install:

    python3 benchmarks/bench_kernels.py

Each kernel is timed on the same inputs with both backends; results include
a correctness cross-check, so this doubles as a coarse equivalence run.
"""

import math
import time

import numpy as np

try:
    from helix_lattice import _kernels
except ImportError:
    _kernels = None
from helix_lattice import _kernels_py
from helix_lattice.lattice import AffineLattice, gram_form


def _time(fn, repeat=3):
    best = math.inf
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def _lattices(count=40, seed=11):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        rows = rng.uniform(-3, 3, size=(3, 3))
        try:
            lat = AffineLattice.from_rows(np.vstack([np.zeros(3), rows]))
        except Exception:
            continue
        out.append((lat.basis_matrix(), gram_form(lat).lambda1))
    return out


def bench_svp(mod):
    lats = _lattices()

    def run():
        total = 0.0
        for basis, lambda1 in lats:
            sq, _ = mod.svp_search(basis, lambda1)
            total += sq
        return total

    return _time(run)


def bench_pair_cross(mod):
    basis = np.array([[1.0, 0.2, -0.1], [0.3, 1.1, 0.0], [-0.2, 0.4, 0.9]])

    def run():
        return mod.pair_cross_min_sq(basis, 6, 1e-9)

    return _time(run)


def bench_distance(mod):
    rng = np.random.default_rng(5)
    pts = rng.uniform(-4, 4, size=(2000, 3))

    def run():
        total = 0.0
        for px, py, pz in pts:
            d, _ = mod.helix_distance(1.0, 0.4, px, py, pz, 0.0, 8 * math.pi, 16)
            total += d
        return total

    return _time(run)


def bench_tube(mod):
    basis = np.eye(3)
    origin = np.zeros(3)
    lo = np.array([-3, -3, 0], dtype=np.int64)
    hi = np.array([3, 3, 17], dtype=np.int64)

    def run():
        coeffs, _, _ = mod.tube_filter(
            basis, origin, 1.0, 1.0 / math.pi, 0.0, 16 * math.pi, 0.05, 1e-12, lo, hi, 16
        )
        return len(coeffs)

    return _time(run)


BENCHES = [
    ("svp_search (40 lattices)", bench_svp),
    ("pair_cross_min_sq (K=6)", bench_pair_cross),
    ("helix_distance (2000 pts)", bench_distance),
    ("tube_filter (833 candidates)", bench_tube),
]


def main():
    if _kernels is None:
        print("compiled extension not built; nothing to compare (fallback only).")
        return
    print(f"{'kernel':<30} {'compiled':>10} {'pure':>10} {'speedup':>8}")
    for name, bench in BENCHES:
        t_c, r_c = bench(_kernels)
        t_p, r_p = bench(_kernels_py)
        if isinstance(r_c, float):
            assert abs(r_c - r_p) <= 1e-6 * max(1.0, abs(r_c)), (name, r_c, r_p)
        else:
            assert r_c == r_p, (name, r_c, r_p)
        print(f"{name:<30} {t_c:>9.4f}s {t_p:>9.4f}s {t_p / t_c:>7.1f}x")


if __name__ == "__main__":
    main()

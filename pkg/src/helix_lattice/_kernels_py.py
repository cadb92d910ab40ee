"""Pure NumPy implementations of the enumeration hot kernels.

The compiled extension ``helix_lattice._kernels`` implements the same four
entry points; ``helix_lattice._backend`` picks whichever is available.  Both
backends use identical scan grids, candidate orderings, and tie-break rules,
so they are interchangeable (exercised by tests/test_backends.py and timed
against each other by benchmarks/bench_kernels.py).

Entry points
------------
svp_search(basis, lambda1)
    Shortest nonzero integer combination of the basis rows, with the
    coefficient box certified by the smallest Gram eigenvalue.
pair_cross_min_sq(basis, bound, rel_tol)
    Minimal squared cross-product norm over pairs of nonzero integer
    combinations in a coefficient box (collinear pairs excluded).
helix_distance(a, b, px, py, pz, t_min, t_max, samples_per_period)
    Global distance from one point to a helix arc.
tube_filter(basis, origin, a, b, t_min, t_max, delta, slack, lo, hi,
            samples_per_period)
    Lattice points of a coefficient box within delta of a helix arc.
"""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi

# Stopping rule for the derivative bisection: |g| below this factor times
# the g scale, or the bracket collapsed to rounding width.
_G_TOL_FACTOR = 1e-13
_BISECT_MAX_ITER = 200

# Relative slack for the in-loop eigenvalue cutoff invariant.
_CUTOFF_SLACK = 1e-9


def _box_bound(best_sq: float, lambda1: float) -> int:
    return int(math.ceil(math.sqrt(best_sq / lambda1) * (1.0 + 1e-12)))


def _scan_slab(basis: np.ndarray, lambda1: float, m1: int, bound: int):
    """Lexicographically-first minimum-norm combination with first coefficient m1.

    Returns (norm_sq, (m1, m2, m3)) or (inf, None) for an all-zero slab.
    """
    width = 2 * bound + 1
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    m3f = rng.astype(float)
    best_sq = math.inf
    best_m = None
    # chunk over m2 to bound memory on large boxes
    chunk = max(1, 4_000_000 // width)
    for start in range(0, width, chunk):
        m2 = rng[start : start + chunk]
        m2f = m2.astype(float)[:, None]
        px = m1 * basis[0, 0] + m2f * basis[1, 0] + m3f[None, :] * basis[2, 0]
        py = m1 * basis[0, 1] + m2f * basis[1, 1] + m3f[None, :] * basis[2, 1]
        pz = m1 * basis[0, 2] + m2f * basis[1, 2] + m3f[None, :] * basis[2, 2]
        norm_sq = px * px + py * py + pz * pz
        mlen_sq = float(m1 * m1) + m2f * m2f + m3f[None, :] * m3f[None, :]
        zero = mlen_sq == 0.0
        cutoff = lambda1 * mlen_sq * (1.0 - _CUTOFF_SLACK)
        if not bool(np.all(norm_sq[~zero] >= cutoff[~zero])):
            raise AssertionError("eigenvalue cutoff violated during shortest-vector scan")
        norm_sq = np.where(zero, np.inf, norm_sq)
        idx = int(np.argmin(norm_sq))
        sq = float(norm_sq.flat[idx])
        if sq < best_sq:
            i2, i3 = divmod(idx, width)
            best_sq = sq
            best_m = (m1, int(m2[i2]), int(rng[i3]))
    return best_sq, best_m


def svp_search(basis, lambda1: float):
    """Shortest nonzero lattice vector by certified-box enumeration.

    The box |m_i| <= ceil(best / sqrt(lambda1)) always contains the optimum
    because the quadratic form dominates lambda1 * |m|^2; the box shrinks as
    better candidates are found.  Ties on the exact squared norm are broken
    by the lexicographically least coefficient triple.
    """
    basis = np.ascontiguousarray(basis, dtype=float)
    # the smallest basis row bounds the optimum, so it sizes the initial box;
    # the search itself starts from infinity
    seed_ub = float(np.einsum("ij,ij->i", basis, basis).min())
    best_sq = math.inf
    best_m = None
    bound = _box_bound(seed_ub, lambda1)
    m1 = -bound
    while m1 <= bound:
        cur = _box_bound(min(best_sq, seed_ub), lambda1)
        if cur < bound:
            bound = cur
        if m1 < -bound:
            m1 = -bound
            continue
        if m1 > bound:
            break
        sq, m = _scan_slab(basis, lambda1, m1, bound)
        if m is not None:
            if best_m is None or sq < best_sq:
                best_sq, best_m = sq, m
            elif sq == best_sq and m < best_m:
                best_m = m
        m1 += 1
    assert best_m is not None  # box always contains the unit coefficient vectors
    return best_sq, np.array(best_m, dtype=np.int64)


def pair_cross_min_sq(basis, bound: int, rel_tol: float = 1e-9) -> float:
    """Minimal squared cross-product norm over pairs of box combinations.

    Pairs whose cross norm is below rel_tol times the product of the two
    vector norms are treated as collinear and skipped.  Returns inf when
    every pair is collinear (impossible for an independent basis).
    """
    basis = np.ascontiguousarray(basis, dtype=float)
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(r, r, r, indexing="ij"), axis=-1).reshape(-1, 3)
    grid = grid[np.any(grid != 0, axis=1)]
    gf = grid.astype(float)
    vx = gf[:, 0] * basis[0, 0] + gf[:, 1] * basis[1, 0] + gf[:, 2] * basis[2, 0]
    vy = gf[:, 0] * basis[0, 1] + gf[:, 1] * basis[1, 1] + gf[:, 2] * basis[2, 1]
    vz = gf[:, 0] * basis[0, 2] + gf[:, 1] * basis[1, 2] + gf[:, 2] * basis[2, 2]
    nrm_sq = vx * vx + vy * vy + vz * vz
    n = len(gf)
    thr_factor = rel_tol * rel_tol
    best = math.inf
    chunk = max(1, 4_000_000 // max(n, 1))
    for s in range(0, n, chunk):
        ex = vx[s : s + chunk, None]
        ey = vy[s : s + chunk, None]
        ez = vz[s : s + chunk, None]
        cx = ey * vz[None, :] - ez * vy[None, :]
        cy = ez * vx[None, :] - ex * vz[None, :]
        cz = ex * vy[None, :] - ey * vx[None, :]
        c_sq = cx * cx + cy * cy + cz * cz
        thr = thr_factor * nrm_sq[s : s + chunk, None] * nrm_sq[None, :]
        c_sq[c_sq <= thr] = np.inf
        m = float(c_sq.min())
        if m < best:
            best = m
    return best


def _grid(t_min: float, t_max: float, samples_per_period: int) -> np.ndarray:
    width = t_max - t_min
    count = max(2, int(math.ceil(width / TWO_PI * samples_per_period)) + 1)
    return np.linspace(t_min, t_max, count)


def _bisect_roots(a, b, px, py, pz, lo, hi, glo, tol):
    """Vectorized bisection of sign-change brackets of the derivative g."""
    root = np.empty_like(lo)
    done = np.zeros(lo.shape, dtype=bool)
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        gm = -a * px * np.sin(mid) + a * py * np.cos(mid) + b * (pz - b * mid)
        conv = (np.abs(gm) <= tol) | ((hi - lo) <= 1e-14 * (1.0 + np.abs(mid)))
        newly = conv & ~done
        root[newly] = mid[newly]
        done |= conv
        if bool(done.all()):
            break
        go_lo = (gm * glo > 0.0) & ~done
        go_hi = ~go_lo & ~done
        lo = np.where(go_lo, mid, lo)
        glo = np.where(go_lo, gm, glo)
        hi = np.where(go_hi, mid, hi)
    if not bool(done.all()):
        rest = ~done
        root[rest] = 0.5 * (lo[rest] + hi[rest])
    return root


def _min_distance_batch(a, b, P, t_min, t_max, samples_per_period):
    """Global curve distance and nearest parameter for each row of P.

    Candidates, in tie-break order: the two window endpoints, grid nodes
    where g vanishes exactly, then one bisected root per sign-change
    bracket of g.
    """
    P = np.asarray(P, dtype=float)
    n = P.shape[0]
    ts = _grid(t_min, t_max, samples_per_period)
    count = len(ts)
    px = P[:, 0:1]
    py = P[:, 1:2]
    pz = P[:, 2:3]
    g = -a * px * np.sin(ts)[None, :] + a * py * np.cos(ts)[None, :] + b * (pz - b * ts[None, :])

    n_cols = 2 + count + (count - 1)
    cand_t = np.zeros((n, n_cols))
    valid = np.zeros((n, n_cols), dtype=bool)
    cand_t[:, 0] = t_min
    cand_t[:, 1] = t_max
    valid[:, :2] = True
    cand_t[:, 2 : 2 + count] = ts[None, :]
    valid[:, 2 : 2 + count] = g == 0.0

    br_rows, br_cols = np.nonzero(g[:, :-1] * g[:, 1:] < 0.0)
    if br_rows.size:
        scale = math.sqrt(a * a + b * b) * np.maximum(1.0, np.sqrt((P * P).sum(axis=1)))
        tol = _G_TOL_FACTOR * scale[br_rows]
        roots = _bisect_roots(
            a,
            b,
            P[br_rows, 0],
            P[br_rows, 1],
            P[br_rows, 2],
            ts[br_cols],
            ts[br_cols + 1],
            g[br_rows, br_cols],
            tol,
        )
        cand_t[br_rows, 2 + count + br_cols] = roots
        valid[br_rows, 2 + count + br_cols] = True

    dx = px - a * np.cos(cand_t)
    dy = py - a * np.sin(cand_t)
    dz = pz - b * cand_t
    d_sq = dx * dx + dy * dy + dz * dz
    d_sq[~valid] = np.inf
    idx = np.argmin(d_sq, axis=1)
    rows = np.arange(n)
    return np.sqrt(d_sq[rows, idx]), cand_t[rows, idx]


def helix_distance(a, b, px, py, pz, t_min, t_max, samples_per_period):
    """Distance from one point to the helix arc and the nearest parameter."""
    d, t = _min_distance_batch(a, b, np.array([[px, py, pz]]), t_min, t_max, samples_per_period)
    return float(d[0]), float(t[0])


def tube_filter(basis, origin, a, b, t_min, t_max, delta, slack, lo, hi, samples_per_period):
    """Lattice points of the coefficient box within delta (+slack) of the arc.

    Scans the box in lexicographic coefficient order; returns the kept
    coefficient triples with their nearest parameters and distances.
    """
    basis = np.ascontiguousarray(basis, dtype=float)
    origin = np.asarray(origin, dtype=float)
    r2 = np.arange(lo[1], hi[1] + 1, dtype=np.int64)
    r3 = np.arange(lo[2], hi[2] + 1, dtype=np.int64)
    m2g, m3g = np.meshgrid(r2, r3, indexing="ij")
    m2 = m2g.ravel()
    m3 = m3g.ravel()
    m2f = m2.astype(float)
    m3f = m3.astype(float)
    limit = delta + slack

    kept_coeffs = []
    kept_t = []
    kept_d = []
    for m1 in range(int(lo[0]), int(hi[0]) + 1):
        px = origin[0] + m1 * basis[0, 0] + m2f * basis[1, 0] + m3f * basis[2, 0]
        py = origin[1] + m1 * basis[0, 1] + m2f * basis[1, 1] + m3f * basis[2, 1]
        pz = origin[2] + m1 * basis[0, 2] + m2f * basis[1, 2] + m3f * basis[2, 2]
        pts = np.column_stack([px, py, pz])
        for start in range(0, len(pts), 4096):
            stop = start + 4096
            d, t = _min_distance_batch(a, b, pts[start:stop], t_min, t_max, samples_per_period)
            keep = d <= limit
            if not keep.any():
                continue
            rows = np.nonzero(keep)[0]
            block = np.empty((len(rows), 3), dtype=np.int64)
            block[:, 0] = m1
            block[:, 1] = m2[start:stop][rows]
            block[:, 2] = m3[start:stop][rows]
            kept_coeffs.append(block)
            kept_t.append(t[rows])
            kept_d.append(d[rows])
    if not kept_coeffs:
        empty = np.empty((0, 3), dtype=np.int64)
        return empty, np.empty(0), np.empty(0)
    return (
        np.concatenate(kept_coeffs),
        np.concatenate(kept_t),
        np.concatenate(kept_d),
    )

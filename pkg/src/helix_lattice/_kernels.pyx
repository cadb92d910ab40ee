# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled implementations of the enumeration hot kernels.

Mirrors ``helix_lattice._kernels_py`` function for function; see that module
for the contracts.  Scan grids, candidate orderings, tie-break rules, and
stopping criteria are kept identical so the two backends are
interchangeable.
"""

from libc.math cimport INFINITY, ceil, cos, fabs, sin, sqrt

import numpy as np

cdef double TWO_PI = 6.283185307179586476925287
cdef double _G_TOL_FACTOR = 1e-13
cdef int _BISECT_MAX_ITER = 200
cdef double _CUTOFF_SLACK = 1e-9


cdef inline long _box_bound(double best_sq, double lambda1):
    return <long>ceil(sqrt(best_sq / lambda1) * (1.0 + 1e-12))


def svp_search(basis_in, double lambda1):
    """Shortest nonzero lattice vector by certified-box enumeration.

    Same contract as the fallback: the coefficient box is certified by
    lambda1, shrinks as better candidates appear, and exact-norm ties go to
    the lexicographically least triple.
    """
    basis_arr = np.ascontiguousarray(basis_in, dtype=np.float64)
    cdef double[:, ::1] b = basis_arr
    # the smallest basis row bounds the optimum, so it sizes the initial box;
    # the search itself starts from infinity
    cdef double seed_ub = INFINITY
    cdef double row_sq
    cdef int i
    for i in range(3):
        row_sq = b[i, 0] * b[i, 0] + b[i, 1] * b[i, 1] + b[i, 2] * b[i, 2]
        if row_sq < seed_ub:
            seed_ub = row_sq
    cdef double best_sq = INFINITY
    cdef bint have_m = 0
    cdef long bm1 = 0, bm2 = 0, bm3 = 0
    cdef long bound = _box_bound(seed_ub, lambda1)
    cdef long slab_bound, cur, m1, m2, m3
    cdef double px, py, pz, norm_sq, mlen_sq, box_ref
    m1 = -bound
    while m1 <= bound:
        box_ref = best_sq if best_sq < seed_ub else seed_ub
        cur = _box_bound(box_ref, lambda1)
        if cur < bound:
            bound = cur
        if m1 < -bound:
            m1 = -bound
            continue
        if m1 > bound:
            break
        slab_bound = bound
        for m2 in range(-slab_bound, slab_bound + 1):
            for m3 in range(-slab_bound, slab_bound + 1):
                if m1 == 0 and m2 == 0 and m3 == 0:
                    continue
                px = m1 * b[0, 0] + m2 * b[1, 0] + m3 * b[2, 0]
                py = m1 * b[0, 1] + m2 * b[1, 1] + m3 * b[2, 1]
                pz = m1 * b[0, 2] + m2 * b[1, 2] + m3 * b[2, 2]
                norm_sq = px * px + py * py + pz * pz
                mlen_sq = <double> (m1 * m1 + m2 * m2 + m3 * m3)
                if norm_sq < lambda1 * mlen_sq * (1.0 - _CUTOFF_SLACK):
                    raise AssertionError(
                        "eigenvalue cutoff violated during shortest-vector scan"
                    )
                if norm_sq < best_sq:
                    best_sq = norm_sq
                    bm1 = m1
                    bm2 = m2
                    bm3 = m3
                    have_m = 1
        m1 += 1
    assert have_m
    return best_sq, np.array([bm1, bm2, bm3], dtype=np.int64)


def pair_cross_min_sq(basis_in, long bound, double rel_tol=1e-9):
    """Minimal squared cross-product norm over pairs of box combinations."""
    basis_arr = np.ascontiguousarray(basis_in, dtype=np.float64)
    cdef double[:, ::1] b = basis_arr
    cdef long width = 2 * bound + 1
    cdef long n = width * width * width - 1
    vx_arr = np.empty(n, dtype=np.float64)
    vy_arr = np.empty(n, dtype=np.float64)
    vz_arr = np.empty(n, dtype=np.float64)
    nrm_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] vx = vx_arr
    cdef double[::1] vy = vy_arr
    cdef double[::1] vz = vz_arr
    cdef double[::1] nrm = nrm_arr
    cdef long m1, m2, m3, k = 0
    for m1 in range(-bound, bound + 1):
        for m2 in range(-bound, bound + 1):
            for m3 in range(-bound, bound + 1):
                if m1 == 0 and m2 == 0 and m3 == 0:
                    continue
                vx[k] = m1 * b[0, 0] + m2 * b[1, 0] + m3 * b[2, 0]
                vy[k] = m1 * b[0, 1] + m2 * b[1, 1] + m3 * b[2, 1]
                vz[k] = m1 * b[0, 2] + m2 * b[1, 2] + m3 * b[2, 2]
                nrm[k] = vx[k] * vx[k] + vy[k] * vy[k] + vz[k] * vz[k]
                k += 1
    cdef double best = INFINITY
    cdef double thr_factor = rel_tol * rel_tol
    cdef double cx, cy, cz, c_sq, thr
    cdef long i, j
    for i in range(n):
        for j in range(n):
            cx = vy[i] * vz[j] - vz[i] * vy[j]
            cy = vz[i] * vx[j] - vx[i] * vz[j]
            cz = vx[i] * vy[j] - vy[i] * vx[j]
            c_sq = cx * cx + cy * cy + cz * cz
            thr = thr_factor * nrm[i] * nrm[j]
            if c_sq > thr and c_sq < best:
                best = c_sq
    return best


cdef inline double _d_sq(double a, double b, double px, double py, double pz, double t):
    cdef double dx = px - a * cos(t)
    cdef double dy = py - a * sin(t)
    cdef double dz = pz - b * t
    return dx * dx + dy * dy + dz * dz


cdef double _bisect(double a, double b, double px, double py, double pz,
                    double lo, double hi, double glo, double tol):
    cdef double mid, gm
    cdef int it
    for it in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        gm = -a * px * sin(mid) + a * py * cos(mid) + b * (pz - b * mid)
        if fabs(gm) <= tol or (hi - lo) <= 1e-14 * (1.0 + fabs(mid)):
            return mid
        if gm * glo > 0.0:
            lo = mid
            glo = gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


cdef long _grid_count(double t_min, double t_max, long samples_per_period):
    cdef long count = <long>ceil((t_max - t_min) / TWO_PI * samples_per_period) + 1
    if count < 2:
        count = 2
    return count


cdef void _fill_grid(double t_min, double t_max, double[::1] ts,
                     double[::1] sin_ts, double[::1] cos_ts):
    cdef long count = ts.shape[0]
    cdef double step = (t_max - t_min) / (count - 1)
    cdef long i
    for i in range(count):
        ts[i] = i * step + t_min
    ts[count - 1] = t_max
    for i in range(count):
        sin_ts[i] = sin(ts[i])
        cos_ts[i] = cos(ts[i])


cdef void _min_distance_point(double a, double b, double px, double py, double pz,
                              double t_min, double t_max,
                              double[::1] ts, double[::1] sin_ts, double[::1] cos_ts,
                              double[::1] g_buf, double* out_dist, double* out_t):
    """Candidates in tie-break order: endpoints, exact-zero grid nodes, one
    bisected root per sign-change bracket of g."""
    cdef long count = ts.shape[0]
    cdef long i
    for i in range(count):
        g_buf[i] = -a * px * sin_ts[i] + a * py * cos_ts[i] + b * (pz - b * ts[i])
    cdef double best_sq = _d_sq(a, b, px, py, pz, t_min)
    cdef double best_t = t_min
    cdef double d_sq = _d_sq(a, b, px, py, pz, t_max)
    if d_sq < best_sq:
        best_sq = d_sq
        best_t = t_max
    for i in range(count):
        if g_buf[i] == 0.0:
            d_sq = _d_sq(a, b, px, py, pz, ts[i])
            if d_sq < best_sq:
                best_sq = d_sq
                best_t = ts[i]
    cdef double scale = sqrt(px * px + py * py + pz * pz)
    if scale < 1.0:
        scale = 1.0
    cdef double tol = _G_TOL_FACTOR * sqrt(a * a + b * b) * scale
    cdef double root
    for i in range(count - 1):
        if g_buf[i] * g_buf[i + 1] < 0.0:
            root = _bisect(a, b, px, py, pz, ts[i], ts[i + 1], g_buf[i], tol)
            d_sq = _d_sq(a, b, px, py, pz, root)
            if d_sq < best_sq:
                best_sq = d_sq
                best_t = root
    out_dist[0] = sqrt(best_sq)
    out_t[0] = best_t


def helix_distance(double a, double b, double px, double py, double pz,
                   double t_min, double t_max, long samples_per_period):
    """Distance from one point to the helix arc and the nearest parameter."""
    cdef long count = _grid_count(t_min, t_max, samples_per_period)
    ts_arr = np.empty(count, dtype=np.float64)
    sin_arr = np.empty(count, dtype=np.float64)
    cos_arr = np.empty(count, dtype=np.float64)
    g_arr = np.empty(count, dtype=np.float64)
    cdef double[::1] ts = ts_arr
    cdef double[::1] sin_ts = sin_arr
    cdef double[::1] cos_ts = cos_arr
    cdef double[::1] g_buf = g_arr
    _fill_grid(t_min, t_max, ts, sin_ts, cos_ts)
    cdef double dist = 0.0, t_star = 0.0
    _min_distance_point(a, b, px, py, pz, t_min, t_max, ts, sin_ts, cos_ts,
                        g_buf, &dist, &t_star)
    return dist, t_star


def tube_filter(basis_in, origin_in, double a, double b, double t_min, double t_max,
                double delta, double slack, lo_in, hi_in, long samples_per_period):
    """Lattice points of the coefficient box within delta (+slack) of the arc."""
    basis_arr = np.ascontiguousarray(basis_in, dtype=np.float64)
    origin_arr = np.ascontiguousarray(origin_in, dtype=np.float64)
    lo_arr = np.ascontiguousarray(lo_in, dtype=np.int64)
    hi_arr = np.ascontiguousarray(hi_in, dtype=np.int64)
    cdef double[:, ::1] bas = basis_arr
    cdef double[::1] org = origin_arr
    cdef long[::1] lo = lo_arr
    cdef long[::1] hi = hi_arr

    cdef long count = _grid_count(t_min, t_max, samples_per_period)
    ts_arr = np.empty(count, dtype=np.float64)
    sin_arr = np.empty(count, dtype=np.float64)
    cos_arr = np.empty(count, dtype=np.float64)
    g_arr = np.empty(count, dtype=np.float64)
    cdef double[::1] ts = ts_arr
    cdef double[::1] sin_ts = sin_arr
    cdef double[::1] cos_ts = cos_arr
    cdef double[::1] g_buf = g_arr
    _fill_grid(t_min, t_max, ts, sin_ts, cos_ts)

    cdef double limit = delta + slack
    cdef long m1, m2, m3
    cdef double px, py, pz, dist, t_star
    kept_coeffs = []
    kept_t = []
    kept_d = []
    for m1 in range(lo[0], hi[0] + 1):
        for m2 in range(lo[1], hi[1] + 1):
            for m3 in range(lo[2], hi[2] + 1):
                px = org[0] + m1 * bas[0, 0] + m2 * bas[1, 0] + m3 * bas[2, 0]
                py = org[1] + m1 * bas[0, 1] + m2 * bas[1, 1] + m3 * bas[2, 1]
                pz = org[2] + m1 * bas[0, 2] + m2 * bas[1, 2] + m3 * bas[2, 2]
                _min_distance_point(a, b, px, py, pz, t_min, t_max,
                                    ts, sin_ts, cos_ts, g_buf, &dist, &t_star)
                if dist <= limit:
                    kept_coeffs.append((m1, m2, m3))
                    kept_t.append(t_star)
                    kept_d.append(dist)
    if not kept_coeffs:
        return (np.empty((0, 3), dtype=np.int64), np.empty(0), np.empty(0))
    return (
        np.array(kept_coeffs, dtype=np.int64),
        np.array(kept_t, dtype=np.float64),
        np.array(kept_d, dtype=np.float64),
    )

"""Pure-numpy kernel implementations (fallback backend).

Vectorized over configurations wherever the algorithm allows; the RNG
consumption layout (block uniform triples for endpoints, config-major
normals for bridges, per-site uniform pairs for Metropolis) matches the
compiled backend exactly so both produce the same draws from the same seed.
"""

from __future__ import annotations

import math

import numpy as np

from .potentials import KIND_FREE, KIND_HARMONIC, KIND_POLYNOMIAL, KIND_SECH2


def _veval(kind, par, m, x):
    # x is an ndarray; arithmetic order mirrors the compiled scalar kernel.
    if kind == KIND_FREE:
        return np.zeros_like(x)
    if kind == KIND_HARMONIC:
        om = par[0]
        return 0.5 * m * om * om * x * x
    if kind == KIND_SECH2:
        ch = np.cosh(x / par[1])
        return -par[0] / (ch * ch)
    if kind == KIND_POLYNOMIAL:
        acc = np.full_like(x, par[-1])
        for idx in range(par.shape[0] - 2, -1, -1):
            acc = acc * x + par[idx]
        return acc
    raise ValueError("unknown potential code")


def endpoint_pairs(gen, lo_i, lo_j, dx, coef, gap, count, block, max_blocks):
    """Rejection-sample (y, z) over box_i x box_j with density ~ exp(-coef*(y-z)**2).

    Proposals are uniform on the rectangle; the acceptance envelope is the
    density maximum exp(-coef*gap**2) at the minimal box separation gap.
    Uniforms are consumed in whole (block, 3) chunks. Returns (y, z, got);
    got < count means the proposal cap was exhausted.
    """
    ys = np.empty(count)
    zs = np.empty(count)
    got = 0
    g2 = gap * gap
    for _ in range(max_blocks):
        u = gen.random((block, 3))
        y = lo_i + dx * u[:, 0]
        z = lo_j + dx * u[:, 1]
        diff = y - z
        w = np.exp(-coef * (diff * diff - g2))
        acc = np.nonzero(u[:, 2] < w)[0]
        take = min(count - got, acc.size)
        if take:
            ys[got:got + take] = y[acc[:take]]
            zs[got:got + take] = z[acc[:take]]
            got += take
        if got == count:
            break
    return ys, zs, got


def bridge_paths(gen, z, y, n_slices, m, hbar, a0):
    """Paths of the discretized free measure pinned to (z, y), one per row.

    Sequential conditional Gaussians: given x_k the next point has mean
    x_k + (y - x_k)/(n_t - k) and variance (hbar*a0/m)*(n_t-k-1)/(n_t-k).
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    nc = z.size
    xi = gen.standard_normal((nc, n_slices - 1))
    paths = np.empty((nc, n_slices + 1))
    paths[:, 0] = z
    x = z.copy()
    for k in range(n_slices - 1):
        rem = n_slices - k
        sig = math.sqrt((hbar * a0 / m) * (rem - 1) / rem)
        x = (x + (y - x) / rem) + sig * xi[:, k]
        paths[:, k + 1] = x
    paths[:, n_slices] = y
    return paths


def bridge_ratio_from_pairs(gen, y, z, m, hbar, a0, n_slices, kind, vparams):
    """Mean and standard error of exp(-S_V/hbar) over bridge paths.

    The trapezoid sum is accumulated slice by slice in the same order as
    the compiled kernel, so per-config observables agree bitwise.
    """
    nc = y.size
    xi = gen.standard_normal((nc, n_slices - 1))
    x = z.copy()
    s = 0.5 * _veval(kind, vparams, m, x)
    for k in range(n_slices - 1):
        rem = n_slices - k
        sig = math.sqrt((hbar * a0 / m) * (rem - 1) / rem)
        x = (x + (y - x) / rem) + sig * xi[:, k]
        s = s + _veval(kind, vparams, m, x)
    s = s + 0.5 * _veval(kind, vparams, m, y)
    obs = np.exp(-(a0 * s) / hbar)
    mean = float(np.mean(obs))
    if nc > 1:
        std_error = float(np.std(obs, ddof=1) / math.sqrt(nc))
    else:
        std_error = 0.0
    return mean, std_error


def metropolis_ratio(gen, lo_i, lo_j, dx, m, hbar, a0, n_slices, n_records,
                     step, therm, decorr, kind, vparams):
    """Single-site random-walk Metropolis over the free action.

    Endpoint proposals leaving their boxes are rejected. Records
    exp(-S_V/hbar) every `decorr` sweeps after `therm` thermalization
    sweeps; returns (mean, naive std error, acceptance rate during
    recording). The chain is inherently sequential, so this fallback is a
    plain Python loop.
    """
    nsite = n_slices + 1
    half = m / (2.0 * a0)
    # straight line between box centers: deterministic start, no draws
    z0 = lo_j + 0.5 * dx
    y0 = lo_i + 0.5 * dx
    x = z0 + (y0 - z0) * np.arange(nsite) / n_slices
    hi_j = lo_j + dx
    hi_i = lo_i + dx

    def sweep(count_acc):
        acc = 0
        u = gen.random((nsite, 2))
        for k in range(nsite):
            prop = x[k] + step * (2.0 * u[k, 0] - 1.0)
            # explicit products (not **2) keep both backends bit-identical
            if k == 0:
                if prop < lo_j or prop >= hi_j:
                    continue
                dn = x[1] - prop
                do = x[1] - x[0]
                ds = half * (dn * dn - do * do)
            elif k == n_slices:
                if prop < lo_i or prop >= hi_i:
                    continue
                dn = prop - x[k - 1]
                do = x[k] - x[k - 1]
                ds = half * (dn * dn - do * do)
            else:
                dl = prop - x[k - 1]
                dr = x[k + 1] - prop
                ol = x[k] - x[k - 1]
                orr = x[k + 1] - x[k]
                ds = half * (dl * dl + dr * dr - ol * ol - orr * orr)
            if ds <= 0.0 or u[k, 1] < math.exp(-ds / hbar):
                x[k] = prop
                acc += 1
        return acc if count_acc else 0

    for _ in range(therm):
        sweep(False)

    obs = np.empty(n_records)
    accepted = 0
    for r in range(n_records):
        for _ in range(decorr):
            accepted += sweep(True)
        v = _veval(kind, vparams, m, x)
        s_v = a0 * (np.sum(v) - 0.5 * v[0] - 0.5 * v[-1])
        obs[r] = math.exp(-s_v / hbar)
    mean = float(np.mean(obs))
    if n_records > 1:
        std_error = float(np.std(obs, ddof=1) / math.sqrt(n_records))
    else:
        std_error = 0.0
    acc_rate = accepted / (n_records * decorr * nsite)
    return mean, std_error, acc_rate


def jacobi_eigh(a):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Sweeps rotate every (p, q) pair until the off-diagonal Frobenius norm
    drops below 1e-13 times the matrix Frobenius norm. Returns
    (diagonal, rotation matrix V with eigenvectors as columns, sweeps,
    converged flag as int).
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    tol = 1e-13 * math.sqrt(float(np.sum(a * a)))
    sweeps = 0
    for sweeps in range(101):
        # accumulate the off-diagonal norm directly: subtracting the diagonal
        # mass from the total cancels catastrophically once nearly converged
        off = 0.0
        for p in range(n - 1):
            off += float(np.sum(a[p, p + 1:] * a[p, p + 1:]))
        off = math.sqrt(2.0 * off)
        if off <= tol:
            return np.diag(a).copy(), v, sweeps, 1
        if sweeps == 100:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(a[p, q])
                if apq == 0.0:
                    continue
                tau = float(a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e154:
                    t = 0.5 / tau  # asymptotic angle; tau*tau would overflow
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v, sweeps, 0

"""Compiled kernel implementations (numba backend).

Scalar loops compiled with @njit. Draw order matches the numpy backend:
numpy's Generator fills arrays in C order, so scalar draws in row-major
loop order consume the identical stream.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .potentials import KIND_FREE, KIND_HARMONIC, KIND_SECH2


@njit(cache=True)
def _veval(kind, par, m, x):
    if kind == KIND_FREE:
        return 0.0
    if kind == KIND_HARMONIC:
        om = par[0]
        return 0.5 * m * om * om * x * x
    if kind == KIND_SECH2:
        ch = math.cosh(x / par[1])
        return -par[0] / (ch * ch)
    acc = par[par.shape[0] - 1]
    for idx in range(par.shape[0] - 2, -1, -1):
        acc = acc * x + par[idx]
    return acc


@njit(cache=True)
def endpoint_pairs(gen, lo_i, lo_j, dx, coef, gap, count, block, max_blocks):
    """See the numpy twin: rejection sampling in whole uniform-triple blocks."""
    ys = np.empty(count)
    zs = np.empty(count)
    got = 0
    g2 = gap * gap
    for _ in range(max_blocks):
        for _t in range(block):
            u1 = gen.random()
            u2 = gen.random()
            u3 = gen.random()
            y = lo_i + dx * u1
            z = lo_j + dx * u2
            diff = y - z
            w = math.exp(-coef * (diff * diff - g2))
            if u3 < w and got < count:
                ys[got] = y
                zs[got] = z
                got += 1
        if got == count:
            break
    return ys, zs, got


@njit(cache=True)
def bridge_paths(gen, z, y, n_slices, m, hbar, a0):
    """See the numpy twin: sequential conditional Gaussians, one path per row."""
    nc = z.size
    paths = np.empty((nc, n_slices + 1))
    for c in range(nc):
        x = z[c]
        paths[c, 0] = x
        yc = y[c]
        for k in range(n_slices - 1):
            rem = n_slices - k
            sig = math.sqrt((hbar * a0 / m) * (rem - 1) / rem)
            x = (x + (yc - x) / rem) + sig * gen.standard_normal()
            paths[c, k + 1] = x
        paths[c, n_slices] = yc
    return paths


@njit(cache=True)
def bridge_ratio_from_pairs(gen, y, z, m, hbar, a0, n_slices, kind, vparams):
    """See the numpy twin: trapezoid S_V accumulated slice by slice."""
    nc = y.size
    obs = np.empty(nc)
    for c in range(nc):
        x = z[c]
        yc = y[c]
        s = 0.5 * _veval(kind, vparams, m, x)
        for k in range(n_slices - 1):
            rem = n_slices - k
            sig = math.sqrt((hbar * a0 / m) * (rem - 1) / rem)
            x = (x + (yc - x) / rem) + sig * gen.standard_normal()
            s = s + _veval(kind, vparams, m, x)
        s = s + 0.5 * _veval(kind, vparams, m, yc)
        obs[c] = math.exp(-(a0 * s) / hbar)
    mean = 0.0
    for c in range(nc):
        mean += obs[c]
    mean /= nc
    if nc > 1:
        ssq = 0.0
        for c in range(nc):
            d = obs[c] - mean
            ssq += d * d
        std_error = math.sqrt(ssq / (nc - 1)) / math.sqrt(nc)
    else:
        std_error = 0.0
    return mean, std_error


@njit(cache=True)
def metropolis_ratio(gen, lo_i, lo_j, dx, m, hbar, a0, n_slices, n_records,
                     step, therm, decorr, kind, vparams):
    """See the numpy twin: single-site random-walk Metropolis on the free action."""
    nsite = n_slices + 1
    half = m / (2.0 * a0)
    z0 = lo_j + 0.5 * dx
    y0 = lo_i + 0.5 * dx
    x = np.empty(nsite)
    for k in range(nsite):
        x[k] = z0 + (y0 - z0) * k / n_slices
    hi_j = lo_j + dx
    hi_i = lo_i + dx

    accepted = 0
    total_sweeps = therm + n_records * decorr
    rec = 0
    obs = np.empty(n_records)
    for sw in range(total_sweeps):
        counting = sw >= therm
        for k in range(nsite):
            u1 = gen.random()
            u2 = gen.random()
            prop = x[k] + step * (2.0 * u1 - 1.0)
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
            if ds <= 0.0 or u2 < math.exp(-ds / hbar):
                x[k] = prop
                if counting:
                    accepted += 1
        if counting and (sw - therm + 1) % decorr == 0:
            s = 0.5 * _veval(kind, vparams, m, x[0])
            for k in range(1, nsite - 1):
                s += _veval(kind, vparams, m, x[k])
            s += 0.5 * _veval(kind, vparams, m, x[nsite - 1])
            obs[rec] = math.exp(-(a0 * s) / hbar)
            rec += 1
    mean = 0.0
    for r in range(n_records):
        mean += obs[r]
    mean /= n_records
    if n_records > 1:
        ssq = 0.0
        for r in range(n_records):
            d = obs[r] - mean
            ssq += d * d
        std_error = math.sqrt(ssq / (n_records - 1)) / math.sqrt(n_records)
    else:
        std_error = 0.0
    acc_rate = accepted / (n_records * decorr * nsite)
    return mean, std_error, acc_rate


@njit(cache=True)
def jacobi_eigh(a):
    """See the numpy twin: cyclic Jacobi sweeps to 1e-13 relative off-norm."""
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n)
    ssq = 0.0
    for i in range(n):
        for j in range(n):
            ssq += a[i, j] * a[i, j]
    tol = 1e-13 * math.sqrt(ssq)
    sweeps = 0
    for sweeps in range(101):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        off = math.sqrt(off)
        if off <= tol:
            d = np.empty(n)
            for i in range(n):
                d[i] = a[i, i]
            return d, v, sweeps, 1
        if sweeps == 100:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e154:
                    t = 0.5 / tau  # asymptotic angle; tau*tau would overflow
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    d = np.empty(n)
    for i in range(n):
        d[i] = a[i, i]
    return d, v, sweeps, 0

"""Compiled inner loops: weighted elastic net coordinate descent and IRLS.

All kernels mutate ``beta`` in place and return the intercept plus status.
They expect column-major ``X`` and run without the GIL so independent paths
can share a thread pool.
"""
import numpy as np
from numba import njit

IRLS_OK = 0
IRLS_DIVERGED = 1
IRLS_NONFINITE = 2


@njit(cache=True, nogil=True)
def soft_threshold(z, gamma):
    if z > gamma:
        return z - gamma
    if z < -gamma:
        return z + gamma
    return 0.0


@njit(cache=True, nogil=True)
def _coord_pass(X, w, r, beta, xv, l1, l2, only_active):
    n, p = X.shape
    dlx = 0.0
    for j in range(p):
        bj = beta[j]
        if xv[j] == 0.0 or (only_active and bj == 0.0):
            continue
        g = 0.0
        for i in range(n):
            g += w[i] * X[i, j] * r[i]
        new = soft_threshold(g + xv[j] * bj, l1) / (xv[j] + l2)
        if new != bj:
            d = new - bj
            beta[j] = new
            for i in range(n):
                r[i] -= d * X[i, j]
            step = xv[j] * d * d
            if step > dlx:
                dlx = step
    return dlx


@njit(cache=True, nogil=True)
def _intercept_step(w, r, wsum):
    d = 0.0
    for i in range(r.shape[0]):
        d += w[i] * r[i]
    d /= wsum
    for i in range(r.shape[0]):
        r[i] -= d
    return d


@njit(cache=True, nogil=True)
def cd_weighted(X, w, z, b0, beta, xv, lam, alpha, tol, max_passes):
    """Minimize ``0.5 * sum(w * (z - b0 - X @ beta)**2) + lam * P_alpha(beta)``.

    Cyclic full passes alternate with passes over the nonzero set until a full
    pass moves no coordinate by more than ``tol`` in ``xv * delta**2``.
    Returns ``(b0, passes, converged)``.
    """
    n, p = X.shape
    r = np.empty(n)
    for i in range(n):
        r[i] = z[i] - b0
    for j in range(p):
        bj = beta[j]
        if bj != 0.0:
            for i in range(n):
                r[i] -= X[i, j] * bj
    wsum = 0.0
    for i in range(n):
        wsum += w[i]
    l1 = lam * alpha
    l2 = lam * (1.0 - alpha)
    passes = 0
    while True:
        dlx = _coord_pass(X, w, r, beta, xv, l1, l2, False)
        d = _intercept_step(w, r, wsum)
        b0 += d
        if wsum * d * d > dlx:
            dlx = wsum * d * d
        passes += 1
        if dlx < tol:
            return b0, passes, True
        if passes >= max_passes:
            return b0, passes, False
        while True:
            dlx = _coord_pass(X, w, r, beta, xv, l1, l2, True)
            d = _intercept_step(w, r, wsum)
            b0 += d
            if wsum * d * d > dlx:
                dlx = wsum * d * d
            passes += 1
            if dlx < tol:
                break
            if passes >= max_passes:
                return b0, passes, False


@njit(cache=True, nogil=True)
def column_weighted_sq(X, w, pinned):
    n, p = X.shape
    xv = np.zeros(p)
    for j in range(p):
        if pinned[j]:
            continue
        acc = 0.0
        for i in range(n):
            acc += w[i] * X[i, j] * X[i, j]
        xv[j] = acc
    return xv


@njit(cache=True, nogil=True)
def _penalty(beta, alpha):
    s = 0.0
    for j in range(beta.shape[0]):
        b = beta[j]
        s += 0.5 * (1.0 - alpha) * b * b + alpha * abs(b)
    return s


@njit(cache=True, nogil=True)
def _binomial_state(X, y, b0, beta, clamp, eta, prob):
    """Fill eta and clamped probabilities; return (mean nll, any clamp hit)."""
    n, p = X.shape
    nll = 0.0
    hit = False
    for i in range(n):
        eta[i] = b0
    for j in range(p):
        bj = beta[j]
        if bj != 0.0:
            for i in range(n):
                eta[i] += X[i, j] * bj
    for i in range(n):
        acc = eta[i]
        pr = 1.0 / (1.0 + np.exp(-acc))
        if pr < clamp:
            pr = clamp
            hit = True
        elif pr > 1.0 - clamp:
            pr = 1.0 - clamp
            hit = True
        prob[i] = pr
        if y[i] > 0.5:
            nll -= np.log(pr)
        else:
            nll -= np.log1p(-pr)
    return nll / n, hit


@njit(cache=True, nogil=True)
def irls_binomial(X, y, b0, beta, pinned, lam, alpha, tol, max_passes,
                  irls_max_iter, irls_tol, clamp):
    """Penalized logistic regression by IRLS with a coordinate-descent inner solve.

    Returns ``(b0, passes, converged, clamped, status)``.
    """
    n, p = X.shape
    eta = np.empty(n)
    prob = np.empty(n)
    w = np.empty(n)
    z = np.empty(n)
    old = np.empty(p)
    nll, hit = _binomial_state(X, y, b0, beta, clamp, eta, prob)
    prev = nll + lam * _penalty(beta, alpha)
    clamped = False
    increases = 0
    passes = 0
    inner_ok = True
    for it in range(irls_max_iter):
        for i in range(n):
            v = prob[i] * (1.0 - prob[i])
            w[i] = v / n
            z[i] = eta[i] + (y[i] - prob[i]) / v
        xv = column_weighted_sq(X, w, pinned)
        for j in range(p):
            old[j] = beta[j]
        old_b0 = b0
        b0, k, inner_ok = cd_weighted(X, w, z, b0, beta, xv, lam, alpha, tol, max_passes)
        passes += k
        if not np.isfinite(b0):
            return b0, passes, False, clamped, IRLS_NONFINITE
        nll, hit = _binomial_state(X, y, b0, beta, clamp, eta, prob)
        obj = nll + lam * _penalty(beta, alpha)
        slack = 1e-12 * max(1.0, abs(prev))
        halvings = 0
        # step halving back toward the previous iterate when the objective rises
        while not (obj <= prev + slack) and halvings < 20:
            b0 = 0.5 * (b0 + old_b0)
            for j in range(p):
                beta[j] = 0.5 * (beta[j] + old[j])
            nll, hit = _binomial_state(X, y, b0, beta, clamp, eta, prob)
            obj = nll + lam * _penalty(beta, alpha)
            halvings += 1
        clamped = clamped or hit
        if not np.isfinite(obj):
            return b0, passes, False, clamped, IRLS_NONFINITE
        if obj > prev + slack:
            increases += 1
            if increases >= 3:
                return b0, passes, False, clamped, IRLS_DIVERGED
        else:
            increases = 0
        prev = obj
        change = abs(b0 - old_b0)
        for j in range(p):
            c = abs(beta[j] - old[j])
            if c > change:
                change = c
        if change < irls_tol:
            return b0, passes, inner_ok, clamped, IRLS_OK
    return b0, passes, False, clamped, IRLS_OK

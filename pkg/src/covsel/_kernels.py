"""Hot numerical kernels, compiled with numba when available.

Both kernels are inherently sequential scalar loops (Gauss-Seidel coordinate
order, safeguarded Newton), so they cannot be expressed as vectorised numpy.
Each is written once as a plain-Python function and either compiled with
``numba.njit`` or run as-is, so the two backends produce identical results.

Backend selection: numba is used when importable unless the environment
variable ``COVSEL_NUMBA`` is set to ``0``/``false``/``off``/``no``.
"""

import math
import os

import numpy as np


def _numba_requested():
    flag = os.environ.get("COVSEL_NUMBA", "").strip().lower()
    return flag not in ("0", "false", "off", "no")


def _boxqp_cd_impl(q, lo, hi, y, tol, max_iter):
    """Cyclic exact coordinate minimization of y'Qy over the box [lo, hi].

    Q must be symmetric positive definite. ``y`` is updated in place and must
    start inside the box. Each coordinate is set to its unconstrained
    minimizer and clamped to its interval; passes repeat until the largest
    relative per-coordinate change drops to ``tol``. Returns the number of
    passes used.
    """
    m = y.shape[0]
    if m == 0:
        return 0
    g = np.zeros(m)
    for i in range(m):
        acc = 0.0
        for k in range(m):
            acc += q[i, k] * y[k]
        g[i] = acc
    for sweep in range(max_iter):
        worst = 0.0
        for i in range(m):
            target = y[i] - g[i] / q[i, i]
            if target < lo[i]:
                target = lo[i]
            elif target > hi[i]:
                target = hi[i]
            d = target - y[i]
            if d != 0.0:
                y[i] = target
                for k in range(m):
                    g[k] += q[k, i] * d
            rel = abs(d) / (1.0 + abs(target))
            if rel > worst:
                worst = rel
        if worst <= tol:
            return sweep + 1
    return max_iter


def _entropy_scalar_root_impl(a, mu, cap, tol, max_iter):
    """Root of 1/u - mu*log(u) - mu - a = 0 on (0, cap], clamped at cap.

    Solved in t = log(u): h(t) = exp(-t) - mu*t - (mu + a) is decreasing and
    convex, so safeguarded Newton converges after at most one overshoot.
    Returns (u, converged).
    """
    tcap = math.log(cap)
    if math.exp(-tcap) - mu * tcap - mu - a >= 0.0:
        return cap, True
    # Bracket the root: h > 0 at t_lo, h < 0 at t_hi = tcap.
    t_lo = -math.log(a) if a > 0.0 else 0.0
    width = 1.0
    for _ in range(200):
        if math.exp(-t_lo) - mu * t_lo - mu - a > 0.0:
            break
        t_lo -= width
        width *= 2.0
    t_hi = tcap
    t = 0.5 * (t_lo + t_hi)
    for _ in range(max_iter):
        e = math.exp(-t)
        h = e - mu * t - mu - a
        if abs(h) <= tol * (1.0 + abs(a) + mu):
            return math.exp(t), True
        if h > 0.0:
            t_lo = t
        else:
            t_hi = t
        t_new = t + h / (e + mu)
        if t_new <= t_lo or t_new >= t_hi:
            t_new = 0.5 * (t_lo + t_hi)
        t = t_new
    return math.exp(t), False


def _make_entropy_roots(scalar_root):
    def _entropy_roots_impl(gamma, mu, cap, tol, max_iter):
        """Eigenvalues of the entropy-smoothed inner maximizer over the
        trace-capped PSD cone.

        For each gamma[i], u[i] > 0 solves
            1/u - mu*(log u + 1) - gamma[i] - lam = 0,
        with lam >= 0 the multiplier of sum(u) <= cap, found by bisection
        (lam = 0 when the unconstrained roots already fit under the cap).
        Returns (u, lam, converged).
        """
        n = gamma.shape[0]
        u = np.empty(n)
        ok = True
        total = 0.0
        for i in range(n):
            ui, conv = scalar_root(gamma[i], mu, cap, tol, max_iter)
            if not conv:
                ok = False
            u[i] = ui
            total += ui
        if total < cap * (1.0 - 1e-12):
            return u, 0.0, ok
        # Trace constraint binds: bisect lam so that sum(u(lam)) = cap.
        # lam_hi forces every root below cap/n, hence the sum below cap.
        gmin = gamma[0]
        for i in range(1, n):
            if gamma[i] < gmin:
                gmin = gamma[i]
        capn = cap / n
        lam_hi = n / cap - mu * math.log(capn) - mu - gmin + 1.0
        if lam_hi < 0.0:
            lam_hi = 1.0
        lam_lo = 0.0
        lam = 0.0
        for _ in range(200):
            lam = 0.5 * (lam_lo + lam_hi)
            total = 0.0
            for i in range(n):
                ui, conv = scalar_root(gamma[i] + lam, mu, cap, tol, max_iter)
                if not conv:
                    ok = False
                u[i] = ui
                total += ui
            if abs(total - cap) <= 1e-12 * cap:
                break
            if total > cap:
                lam_lo = lam
            else:
                lam_hi = lam
            if lam_hi - lam_lo <= 1e-16 * (1.0 + lam_hi):
                break
        return u, lam, ok

    return _entropy_roots_impl


_entropy_roots_py = _make_entropy_roots(_entropy_scalar_root_impl)

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via COVSEL_NUMBA=0 instead
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _numba_requested()

if USE_NUMBA:
    _boxqp_cd_nb = numba.njit(cache=True)(_boxqp_cd_impl)
    _entropy_scalar_root_nb = numba.njit(cache=True)(_entropy_scalar_root_impl)
    _entropy_roots_nb = numba.njit(cache=True)(
        _make_entropy_roots(_entropy_scalar_root_nb)
    )
    boxqp_cd = _boxqp_cd_nb
    entropy_roots = _entropy_roots_nb
else:
    boxqp_cd = _boxqp_cd_impl
    entropy_roots = _entropy_roots_py


def backend():
    """Name of the active kernel backend: 'numba' or 'numpy'."""
    return "numba" if USE_NUMBA else "numpy"


def implementations():
    """Both backend variants of each kernel, for benchmarks and tests.

    Returns a dict mapping backend name to (boxqp_cd, entropy_roots); the
    'numba' entry is absent when numba is unavailable.
    """
    impls = {"numpy": (_boxqp_cd_impl, _entropy_roots_py)}
    if USE_NUMBA:
        impls["numba"] = (_boxqp_cd_nb, _entropy_roots_nb)
    return impls

"""Hot loops: germ evaluation in log-space and a Dormand-Prince 5(4)
integrator for ``y'' + q(s) y = 0`` with zero bracketing.

The integration variable is ``s`` with ``t = exp_level(s)``; ``level = 0``
is plain ``t``.  Coefficients are evaluated from exponent matrices via
``log l_j(t)``, so ``t`` itself is never formed and deep tower levels do not
overflow.
"""
import math

import numpy as np

from ._config import njit

REACHED_END = 0
ZERO_QUOTA = 1
MAX_STEPS = 2
STEP_UNDERFLOW = 3
NONFINITE = 4

_EXP_MAX = 709.782712893384

# Dormand-Prince 5(4) tableau
C2, C3, C4, C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
A21 = 1.0 / 5.0
A31, A32 = 3.0 / 40.0, 9.0 / 40.0
A41, A42, A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
A51, A52, A53, A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
A61, A62, A63, A64, A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                           49.0 / 176.0, -5103.0 / 18656.0)
B1, B3, B4, B5, B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
E1 = 71.0 / 57600.0
E3 = -71.0 / 16695.0
E4 = 71.0 / 1920.0
E5 = -17253.0 / 339200.0
E6 = 22.0 / 525.0
E7 = -1.0 / 40.0

SAFETY = 0.9
ALPHA = 0.17  # PI controller exponents for a 5th-order pair
BETA = 0.04
RENORM_LIMIT = 1e100


@njit(cache=True)
def _exp(x):
    if x > _EXP_MAX:
        return np.inf
    return math.exp(x)


@njit(cache=True)
def fill_log_levels(s, level, L):
    """``L[j] = log l_j(t)`` for ``t = exp_level(s)``; NaN where undefined."""
    for j in range(L.shape[0]):
        if j < level:
            e = s
            for _ in range(level - j - 1):
                e = _exp(e)
            L[j] = e
        else:
            v = s
            ok = True
            for _ in range(j - level):
                if v <= 0.0:
                    ok = False
                    break
                v = math.log(v)
            if ok and v > 0.0:
                L[j] = math.log(v)
            else:
                L[j] = np.nan


@njit(cache=True)
def _term_log(e, i, L):
    # lexicographic dominance: the first infinite contribution decides
    acc = 0.0
    for j in range(e.shape[1]):
        ej = e[i, j]
        if ej != 0.0:
            acc += ej * L[j]
            if acc != acc or acc == np.inf or acc == -np.inf:
                return acc
    return acc


@njit(cache=True)
def _side(c, e, L):
    """Return ``(a, m)`` with the sum equal to ``a * exp(m)``; an infinite
    ``a`` means the sum itself is infinite."""
    mx = -np.inf
    inf_sign = 0.0
    for i in range(c.shape[0]):
        lm = _term_log(e, i, L)
        if lm != lm:
            return np.nan, 0.0
        if lm == np.inf and inf_sign == 0.0:
            inf_sign = 1.0 if c[i] > 0 else -1.0
        if lm > mx:
            mx = lm
    if mx == np.inf:
        return inf_sign * np.inf, 0.0
    if mx == -np.inf:
        return 0.0, 0.0
    acc = 0.0
    for i in range(c.shape[0]):
        lm = _term_log(e, i, L)
        acc += c[i] * math.exp(lm - mx)
    return acc, mx


@njit(cache=True)
def eval_coeff(s, level, nc, ne, dc, de, L):
    """Value of ``num/den`` at ``t = exp_level(s)``; terms must be sorted by
    decreasing dominance."""
    fill_log_levels(s, level, L)
    an, mn = _side(nc, ne, L)
    ad, md = _side(dc, de, L)
    if an != an or ad != ad:
        return np.nan
    if an == np.inf or an == -np.inf:
        if ad == 0.0:
            return np.nan
        return an if ad > 0 else -an
    if ad == np.inf or ad == -np.inf:
        return 0.0
    if ad == 0.0:
        return np.nan
    if an == 0.0:
        return 0.0
    return an / ad * _exp(mn - md)


@njit(cache=True)
def _rhs(q, Y, out):
    for i in range(Y.shape[0] // 2):
        out[2 * i] = Y[2 * i + 1]
        out[2 * i + 1] = -q * Y[2 * i]


@njit(cache=True)
def _rk_step(s, Y, h, level, nc, ne, dc, de, L, K, Yt, Ynew, errv):
    """One DOPRI5 step; returns False if a coefficient value is not finite."""
    n = Y.shape[0]
    q = eval_coeff(s, level, nc, ne, dc, de, L)
    if not np.isfinite(q):
        return False
    _rhs(q, Y, K[0])
    for i in range(n):
        Yt[i] = Y[i] + h * A21 * K[0, i]
    q = eval_coeff(s + C2 * h, level, nc, ne, dc, de, L)
    if not np.isfinite(q):
        return False
    _rhs(q, Yt, K[1])
    for i in range(n):
        Yt[i] = Y[i] + h * (A31 * K[0, i] + A32 * K[1, i])
    q = eval_coeff(s + C3 * h, level, nc, ne, dc, de, L)
    if not np.isfinite(q):
        return False
    _rhs(q, Yt, K[2])
    for i in range(n):
        Yt[i] = Y[i] + h * (A41 * K[0, i] + A42 * K[1, i] + A43 * K[2, i])
    q = eval_coeff(s + C4 * h, level, nc, ne, dc, de, L)
    if not np.isfinite(q):
        return False
    _rhs(q, Yt, K[3])
    for i in range(n):
        Yt[i] = Y[i] + h * (A51 * K[0, i] + A52 * K[1, i] + A53 * K[2, i] + A54 * K[3, i])
    q = eval_coeff(s + C5 * h, level, nc, ne, dc, de, L)
    if not np.isfinite(q):
        return False
    _rhs(q, Yt, K[4])
    for i in range(n):
        Yt[i] = Y[i] + h * (A61 * K[0, i] + A62 * K[1, i] + A63 * K[2, i]
                            + A64 * K[3, i] + A65 * K[4, i])
    q = eval_coeff(s + h, level, nc, ne, dc, de, L)
    if not np.isfinite(q):
        return False
    _rhs(q, Yt, K[5])
    for i in range(n):
        Ynew[i] = Y[i] + h * (B1 * K[0, i] + B3 * K[2, i] + B4 * K[3, i]
                              + B5 * K[4, i] + B6 * K[5, i])
    _rhs(q, Ynew, K[6])
    for i in range(n):
        errv[i] = h * (E1 * K[0, i] + E3 * K[2, i] + E4 * K[3, i]
                       + E5 * K[4, i] + E6 * K[5, i] + E7 * K[6, i])
    return True


@njit(cache=True)
def _err_norm(Y, Ynew, errv, rtol, atol):
    acc = 0.0
    n = Y.shape[0]
    for i in range(n):
        sc = atol + rtol * max(abs(Y[i]), abs(Ynew[i]))
        r = errv[i] / sc
        acc += r * r
    return math.sqrt(acc / n)


@njit(cache=True)
def _initial_step(s, Y, span, level, nc, ne, dc, de, L, rtol, atol):
    n = Y.shape[0]
    q = eval_coeff(s, level, nc, ne, dc, de, L)
    if not np.isfinite(q):
        return 1e-6 * max(1.0, abs(s))
    f0 = np.empty(n)
    _rhs(q, Y, f0)
    d0 = 0.0
    d1 = 0.0
    for i in range(n):
        sc = atol + rtol * abs(Y[i])
        d0 += (Y[i] / sc) ** 2
        d1 += (f0[i] / sc) ** 2
    d0 = math.sqrt(d0 / n)
    d1 = math.sqrt(d1 / n)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6 * max(1.0, abs(s))
    else:
        h0 = 0.01 * d0 / d1
    h0 = min(h0, span)
    if not (h0 > 0.0 and np.isfinite(h0)):
        return 1e-6 * max(1.0, abs(s))
    Y1 = np.empty(n)
    for i in range(n):
        Y1[i] = Y[i] + h0 * f0[i]
    q1 = eval_coeff(s + h0, level, nc, ne, dc, de, L)
    if not np.isfinite(q1):
        return h0 * 1e-3
    f1 = np.empty(n)
    _rhs(q1, Y1, f1)
    d2 = 0.0
    for i in range(n):
        sc = atol + rtol * abs(Y[i])
        d2 += ((f1[i] - f0[i]) / sc) ** 2
    d2 = math.sqrt(d2 / n) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, span)


@njit(cache=True)
def _bisect_zero(s, Y, h, comp, level, nc, ne, dc, de, L, K, Yt, Ytmp, errv):
    """Refine the sign change of ``Y[comp]`` over ``[s, s+h]`` by bisection,
    re-stepping from ``s`` for interior values."""
    a = s
    b = s + h
    ya = Y[comp]
    for _ in range(200):
        if b - a <= 1e-12 * max(abs(a), abs(b)) or b - a <= 1e-300:
            break
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        _rk_step(s, Y, mid - s, level, nc, ne, dc, de, L, K, Yt, Ytmp, errv)
        ym = Ytmp[comp]
        if ym == 0.0:
            return mid
        if (ym > 0.0) == (ya > 0.0):
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


@njit(cache=True)
def integrate_kernel(s0, s1, Y0, rtol, atol, level, nc, ne, dc, de,
                     max_steps, s_tail, stop_zeros, renormalize, record_mid, h_init):
    """Integrate ``m = len(Y0)//2`` solutions of ``y'' + q y = 0`` on a shared grid.

    ``Y0`` interleaves ``(y_i, y_i')``.  Zeros of each ``y_i`` in ``(s0, s]``
    are bracketed by sign change and bisected.  With ``stop_zeros > 0`` the
    run stops once every solution has that many zeros beyond ``s_tail``.
    """
    n = Y0.shape[0]
    m = n // 2
    L = np.empty(ne.shape[1] if ne.shape[1] > de.shape[1] else de.shape[1])
    K = np.empty((7, n))
    Yt = np.empty(n)
    Ynew = np.empty(n)
    Ytmp = np.empty(n)
    errv = np.empty(n)
    Y = Y0.copy()

    cap = 1024
    ts = np.empty(cap)
    Ys = np.empty((cap, n))
    Ms = np.empty((cap, n))
    zcap = 64
    zt = np.empty(zcap)
    zi = np.empty(zcap, dtype=np.int64)
    nz = 0
    tail_counts = np.zeros(m, dtype=np.int64)

    ts[0] = s0
    for i in range(n):
        Ys[0, i] = Y[i]
    npts = 1
    s = s0
    span = s1 - s0
    if h_init > 0.0:
        h = min(h_init, span)
    else:
        h = _initial_step(s, Y, span, level, nc, ne, dc, de, L, rtol, atol)
    err_prev = 1e-4
    status = REACHED_END
    steps = 0
    while s < s1:
        if steps >= max_steps:
            status = MAX_STEPS
            break
        steps += 1
        last = False
        if s + h >= s1:
            h = s1 - s
            last = True
        ok = _rk_step(s, Y, h, level, nc, ne, dc, de, L, K, Yt, Ynew, errv)
        err = _err_norm(Y, Ynew, errv, rtol, atol) if ok else np.nan
        if not ok or not np.isfinite(err):
            h *= 0.25
            if h <= 1e-14 * max(1.0, abs(s)):
                status = NONFINITE
                break
            continue
        if err <= 1.0:
            s_new = s1 if last else s + h
            for i in range(m):
                ya = Y[2 * i]
                yb = Ynew[2 * i]
                if ya * yb < 0.0 or (yb == 0.0 and ya != 0.0):
                    if yb == 0.0:
                        tz = s_new
                    else:
                        tz = _bisect_zero(s, Y, h, 2 * i, level, nc, ne, dc, de,
                                          L, K, Yt, Ytmp, errv)
                    if nz == zcap:
                        zcap *= 2
                        zt2 = np.empty(zcap)
                        zi2 = np.empty(zcap, dtype=np.int64)
                        zt2[:nz] = zt[:nz]
                        zi2[:nz] = zi[:nz]
                        zt = zt2
                        zi = zi2
                    zt[nz] = tz
                    zi[nz] = i
                    nz += 1
                    if tz > s_tail:
                        tail_counts[i] += 1
            if npts == cap:
                cap *= 2
                ts2 = np.empty(cap)
                Ys2 = np.empty((cap, n))
                Ms2 = np.empty((cap, n))
                ts2[:npts] = ts[:npts]
                Ys2[:npts] = Ys[:npts]
                Ms2[:npts] = Ms[:npts]
                ts = ts2
                Ys = Ys2
                Ms = Ms2
            if record_mid:
                _rk_step(s, Y, 0.5 * h, level, nc, ne, dc, de, L, K, Yt, Ytmp, errv)
                for i in range(n):
                    Ms[npts - 1, i] = Ytmp[i]
            for i in range(n):
                Y[i] = Ynew[i]
            if renormalize:
                for i in range(m):
                    mag = max(abs(Y[2 * i]), abs(Y[2 * i + 1]))
                    if mag > RENORM_LIMIT:
                        Y[2 * i] /= RENORM_LIMIT
                        Y[2 * i + 1] /= RENORM_LIMIT
            s = s_new
            ts[npts] = s
            for i in range(n):
                Ys[npts, i] = Y[i]
            npts += 1
            if err == 0.0:
                fac = 5.0
            else:
                fac = SAFETY * err ** (-ALPHA) * err_prev ** BETA
                fac = min(5.0, max(0.2, fac))
            err_prev = max(err, 1e-4)
            if not last:
                h *= fac
            if stop_zeros > 0:
                done = True
                for i in range(m):
                    if tail_counts[i] < stop_zeros:
                        done = False
                if done:
                    status = ZERO_QUOTA
                    break
        else:
            h *= max(0.2, SAFETY * err ** (-ALPHA))
        if s < s1 and h <= 1e-14 * max(1.0, abs(s)):
            status = STEP_UNDERFLOW
            break
    return (ts[:npts], Ys[:npts], Ms[:max(npts - 1, 0)], zt[:nz], zi[:nz],
            tail_counts, status, steps)

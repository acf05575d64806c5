"""q-shifted factorials, the q-Gamma function, theta and elliptic Gamma functions.

Infinite products are truncated where the remaining factors change the
result by less than ``tol`` in relative terms; the truncation length is
derived from a geometric tail bound, so it grows like log(tol)/log|q|.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, GammaPoleError


def _terms_needed(amp: float, r: float, tol: float) -> int:
    # sum_{j>=N} amp * r^j < tol
    if amp == 0 or r == 0:
        return 1
    n = math.log(tol * (1 - r) / amp) / math.log(r)
    return max(1, int(math.ceil(n)) + 1)


def q_pochhammer(a, q, order=math.inf, tol: float = 1e-17):
    """(a; q)_order for finite integer order, real order, or order = inf."""
    qa = abs(q)
    if order == math.inf:
        if qa >= 1:
            raise DomainError("the infinite product needs |q| < 1")
        a_arr = np.asarray(a)
        amp = float(np.max(np.abs(a_arr))) if a_arr.size else 0.0
        n = _terms_needed(max(amp, 1e-300), qa, tol)
        powers = q ** np.arange(n)
        out = np.prod(1 - np.multiply.outer(a_arr, powers), axis=-1)
        return out if np.ndim(out) else out.item()
    if float(order).is_integer():
        m = int(order)
        if m >= 0:
            out = 1
            for j in range(m):
                out = out * (1 - a * q**j)
            return out
        # (a;q)_{-m} = 1 / (a q^{-m}; q)_m
        return 1 / q_pochhammer(a * q**m, q, -m)
    return q_pochhammer(a, q, math.inf, tol) / q_pochhammer(a * q**order, q, math.inf, tol)


def log_q_pochhammer_inf(a: float, q: float, tol: float = 1e-17) -> tuple:
    """(log|(a;q)_inf|, sign) for real a and 0 < q < 1; safe when the product underflows."""
    n = _terms_needed(max(abs(a), 1e-300), q, tol)
    f = 1 - a * q ** np.arange(n)
    if np.any(f == 0):
        return -math.inf, 0
    sign = -1 if np.count_nonzero(f < 0) % 2 else 1
    return float(np.sum(np.log(np.abs(f)))), sign


def log_q_gamma(x, q) -> tuple:
    """(log|Gamma_q(x)|, sign)."""
    if not 0 < q < 1:
        raise DomainError("q_gamma needs 0 < q < 1")
    if x <= 0 and float(x).is_integer():
        raise GammaPoleError(f"Gamma_q has a pole at {x}")
    lq, _ = log_q_pochhammer_inf(q, q)
    lx, sx = log_q_pochhammer_inf(q**x, q)
    return lq - lx + (1 - x) * math.log1p(-q), sx


def q_gamma(x, q):
    """Gamma_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^(1-x), 0 < q < 1."""
    lv, sv = log_q_gamma(x, q)
    return sv * math.exp(lv)


def q_selberg_rhs(n: int, alpha, beta, k: int, q) -> float:
    """Closed form of the n-fold Jackson-integral q-analogue of the Selberg integral.

    q^(alpha k C(n,2) + 2 k^2 C(n,3)) prod_{j=1}^n
      G_q(alpha+(j-1)k) G_q(beta+(j-1)k) G_q(1+jk) / (G_q(alpha+beta+(n+j-2)k) G_q(1+k))
    """
    if int(k) != k or k < 0:
        raise DomainError("the q-analogue needs a nonnegative integer k")
    logv = (alpha * k * math.comb(n, 2) + 2 * k * k * math.comb(n, 3)) * math.log(q)
    sign = 1
    for j in range(1, n + 1):
        for x, e in ((alpha + (j - 1) * k, 1), (beta + (j - 1) * k, 1), (1 + j * k, 1),
                     (alpha + beta + (n + j - 2) * k, -1), (1 + k, -1)):
            lv, sv = log_q_gamma(x, q)
            logv += e * lv
            sign *= sv
    return sign * math.exp(logv)


# -- theta and elliptic Gamma ---------------------------------------------------

def theta(z, p, tol: float = 1e-17):
    """theta(z; p) = (z; p)_inf (p/z; p)_inf."""
    z = np.asarray(z, dtype=complex)
    return _squeeze(q_pochhammer(z, p, math.inf, tol) * q_pochhammer(p / z, p, math.inf, tol))


def _squeeze(x):
    x = np.asarray(x)
    if x.ndim == 0:
        v = x.item()
        return v.real if isinstance(v, complex) and v.imag == 0 else v
    return x


def _grid(z, p, q, tol):
    za = np.abs(np.asarray(z))
    amp = float(max(np.max(za), np.max(abs(p * q) / za), 1e-300))
    ap, aq = abs(p), abs(q)
    if ap >= 1 or aq >= 1:
        raise DomainError("elliptic Gamma needs |p|, |q| < 1")
    scale = 1 / ((1 - ap) * (1 - aq))
    ni = _terms_needed(amp * scale * (1 - ap), ap, tol) if ap > 0 else 1
    nj = _terms_needed(amp * scale * (1 - aq), aq, tol) if aq > 0 else 1
    pq = np.outer(p ** np.arange(ni), q ** np.arange(nj))
    return pq


def elliptic_gamma_reciprocal(z, p, q, tol: float = 1e-17):
    """1 / Gamma(z; p, q); finite everywhere, zero at the poles of Gamma."""
    z = np.asarray(z, dtype=complex)
    pq = _grid(z, p, q, tol)
    zz = z[..., None, None]
    num = np.prod(1 - zz * pq, axis=(-2, -1))
    den = np.prod(1 - (p * q / zz) * pq, axis=(-2, -1))
    return _squeeze(num / den)


def elliptic_gamma(z, p, q, tol: float = 1e-17):
    """Gamma(z; p, q) = prod_{i,j>=0} (1 - p^(i+1) q^(j+1) / z) / (1 - z p^i q^j)."""
    r = np.asarray(elliptic_gamma_reciprocal(z, p, q, tol))
    if np.any(r == 0):
        raise GammaPoleError("elliptic Gamma evaluated at a pole")
    return _squeeze(1 / r)


def elliptic_beta_rhs(ts, p, q):
    """Right side of the rank-one elliptic beta integral; needs prod(ts) = p q."""
    ts = list(ts)
    if len(ts) != 6:
        raise DomainError("the elliptic beta integral has six parameters")
    if abs(np.prod(ts) - p * q) > 1e-10 * abs(p * q):
        raise DomainError("balancing condition prod t_r = p q violated")
    out = 2 / (q_pochhammer(p, p) * q_pochhammer(q, q))
    for r in range(6):
        for s in range(r + 1, 6):
            out = out * elliptic_gamma(ts[r] * ts[s], p, q)
    return _squeeze(out)


def elliptic_beta_integrand(theta_grid, ts, p, q):
    """Integrand in the angle variable, z = exp(i theta), measure d theta / (2 pi)."""
    z = np.exp(1j * np.asarray(theta_grid))
    out = elliptic_gamma_reciprocal(z**2, p, q) * elliptic_gamma_reciprocal(z**-2, p, q)
    for t in ts:
        out = out / (elliptic_gamma_reciprocal(t * z, p, q) * elliptic_gamma_reciprocal(t / z, p, q))
    return out


def elliptic_selberg_rhs(n: int, t, ts, p, q):
    """Right side of the multivariate elliptic Selberg integral.

    Balancing: t^(2n-2) prod(ts) = p q.  At n = 1 it is the rank-one value.
    """
    ts = list(ts)
    if abs(t ** (2 * n - 2) * np.prod(ts) - p * q) > 1e-10 * abs(p * q):
        raise DomainError("balancing condition t^(2n-2) prod t_r = p q violated")
    out = 2**n * math.factorial(n) / (q_pochhammer(p, p) ** n * q_pochhammer(q, q) ** n)
    for j in range(1, n + 1):
        out = out * elliptic_gamma(t**j, p, q) / elliptic_gamma(t, p, q)
        for r in range(6):
            for s in range(r + 1, 6):
                out = out * elliptic_gamma(t ** (j - 1) * ts[r] * ts[s], p, q)
    return _squeeze(out)


def askey_wilson_rhs(ts, q):
    """Gustafson's constant term at rank one: 2 (t1t2t3t4; q) / ((q; q) prod_{r<s} (t_r t_s; q))."""
    ts = list(ts)
    out = 2 * q_pochhammer(np.prod(ts), q) / q_pochhammer(q, q)
    for r in range(4):
        for s in range(r + 1, 4):
            out = out / q_pochhammer(ts[r] * ts[s], q)
    return _squeeze(out)


def askey_wilson_integrand(theta_grid, ts, q):
    z = np.exp(1j * np.asarray(theta_grid))
    out = q_pochhammer(z**2, q) * q_pochhammer(z**-2, q)
    for t in ts:
        out = out / (q_pochhammer(t * z, q) * q_pochhammer(t / z, q))
    return out


def elliptic_beta_p0_rhs(ts5, q):
    """Elliptic beta right side after eliminating t6 = p q / prod(ts5) and sending p -> 0."""
    ts5 = list(ts5)
    out = 2 / q_pochhammer(q, q)
    for r in range(5):
        others = np.prod([t for i, t in enumerate(ts5) if i != r])
        out = out * q_pochhammer(others, q)
        for s in range(r + 1, 5):
            out = out / q_pochhammer(ts5[r] * ts5[s], q)
    return _squeeze(out)

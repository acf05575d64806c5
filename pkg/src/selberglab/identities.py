"""Relations between the closed forms, each reduced to a relative residual.

These do not touch any integrand: every check compares two gamma-product
expressions that ought to agree, so they run in microseconds and are
suitable for sweeping over random parameters.
"""
from __future__ import annotations

import math

import numpy as np

from . import closed_forms as cf
from .gammas import GammaProductValue, gamma_product


def anderson_recurrence_residual(n: int, alpha, beta, gamma) -> float:
    """S_{n+1} against (n+1) G(a)G(b)G((n+1)g) / (G(g) G(a+b+ng)) * S_n(a+g, b+g, g)."""
    lhs = cf.selberg_rhs(n + 1, alpha, beta, gamma)
    factor = gamma_product([alpha, beta, (n + 1) * gamma], [gamma, alpha + beta + n * gamma])
    rhs = factor * (n + 1) * cf.selberg_rhs(n, alpha + gamma, beta + gamma, gamma)
    return lhs.rel_diff(rhs)


def functional_equation_residual(n: int, alpha, beta, gamma) -> float:
    """S_n(a,b,g) against S_n(1-a-b-2(n-1)g, b, g) times the sine-product factor."""
    lhs = cf.selberg_rhs(n, alpha, beta, gamma, check_domain=False)
    reflected = cf.selberg_rhs(n, 1 - alpha - beta - 2 * (n - 1) * gamma, beta, gamma, check_domain=False)
    return lhs.rel_diff(reflected * cf.selberg_reflection_factor(n, alpha, beta, gamma))


def small_alpha_residual(n: int, beta, gamma, alpha: float = 1e-12) -> float:
    """alpha S_n(alpha, b, g) against its alpha -> 0 limit n S_{n-1}(2g, b, g)."""
    lhs = cf.selberg_rhs(n, alpha, beta, gamma) * alpha
    rhs = cf.selberg_rhs(n - 1, 2 * gamma, beta, gamma) * n
    return lhs.rel_diff(rhs)


def sm_bridge_residual(n: int, a, b, k: int) -> float:
    """Selberg at (-b-(n-1)k, a+b+1, k) against (-1)^(n+k C(n,2)) (pi/sin(pi b))^n M_n(a,b,k).

    Needs a+b+1 a positive integer, k a nonnegative integer and b off the integers.
    """
    alpha = -b - (n - 1) * k
    beta = a + b + 1
    lhs = cf.selberg_rhs(n, alpha, beta, k, check_domain=False)
    sign = (-1) ** (n + k * math.comb(n, 2))
    factor = GammaProductValue.from_number(sign * (math.pi / math.sin(math.pi * b)) ** n)
    return lhs.rel_diff(factor * cf.morris_rhs(n, a, b, k))


def stirling_limit_residual(n: int, gamma, L: float = 20.0) -> float:
    return abs(cf.stirling_limit_ratio(n, gamma, L) - 1)


def gauss_summation_residual(n: int, a, b, c, gamma) -> float:
    """Euler integral at z = 1 (a Selberg integral) against the generalised Gauss product."""
    alpha = b - (n - 1) * gamma
    beta = c - b - (n - 1) * gamma
    lhs = cf.euler_2f1_prefactor(n, b, c, gamma) * cf.selberg_rhs(n, alpha, beta - a, gamma)
    return lhs.rel_diff(cf.gauss_2f1_rhs(n, a, b, c, gamma))


# -- random parameter sweeps ----------------------------------------------------------

def _frac_ok(x, margin=0.05):
    return margin < x - math.floor(x) < 1 - margin


def random_parameter_sets(kind: str, count: int, seed: int) -> list:
    """Parameter tuples inside the domain where the relation named by ``kind`` is meaningful."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        if kind == "anderson":
            out.append((int(rng.integers(1, 6)), rng.uniform(0.2, 5), rng.uniform(0.2, 5), rng.uniform(0.05, 2)))
        elif kind == "functional":
            n = int(rng.integers(1, 5))
            a, b, g = rng.uniform(0.1, 3), rng.uniform(0.1, 3), rng.uniform(0.05, 1.5)
            # every Gamma and sine argument at least 0.05 away from the integers
            args = [a + j * g for j in range(n)] + [a + b + (n + j - 1) * g for j in range(n)]
            args += [1 - a - b - 2 * (n - 1) * g + j * g for j in range(n)]
            args += [1 - a - 2 * (n - 1) * g + (n + j - 1) * g for j in range(n)]
            if all(_frac_ok(x) for x in args):
                out.append((n, a, b, g))
        elif kind == "small_alpha":
            out.append((int(rng.integers(1, 6)), rng.uniform(0.2, 5), rng.uniform(0.05, 2)))
        elif kind == "sm_bridge":
            n = int(rng.integers(1, 5))
            k = int(rng.integers(0, 3))
            beta = int(rng.integers(1, 5))
            b = rng.uniform(-2.5, 2.5)
            a = beta - b - 1
            args = [b, a] + [-b - (n - 1) * k + j * k for j in range(n)]
            if all(_frac_ok(x) for x in args):
                out.append((n, a, b, k))
        elif kind == "stirling":
            out.append((int(rng.integers(1, 4)), rng.uniform(0.05, 1.0)))
        elif kind == "gauss":
            n = int(rng.integers(1, 4))
            g = rng.uniform(0.1, 1.5)
            b = (n - 1) * g + rng.uniform(0.2, 3)
            a = rng.uniform(-2, 2)
            c = b + (n - 1) * g + a + rng.uniform(0.2, 3)
            if c - b - (n - 1) * g > 0 and all(_frac_ok(x) for x in (c - a - b, c - a, c)):
                out.append((n, a, b, c, g))
        else:
            raise ValueError(f"unknown sweep {kind!r}")
    return out


RESIDUALS = {
    "anderson": anderson_recurrence_residual,
    "functional": functional_equation_residual,
    "small_alpha": small_alpha_residual,
    "sm_bridge": sm_bridge_residual,
    "stirling": stirling_limit_residual,
    "gauss": gauss_summation_residual,
}


def sweep(kind: str, count: int = 50, seed: int = 0) -> list:
    """[(params, residual)] over ``count`` random parameter sets."""
    fn = RESIDUALS[kind]
    return [(p, fn(*p)) for p in random_parameter_sets(kind, count, seed)]

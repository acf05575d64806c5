"""Symmetric polynomials in the monomial basis and Jack polynomials.

Jack polynomials are obtained as the monic, dominance-triangular
eigenfunctions of the trigonometric Calogero-Sutherland operator

    H = sum_i (x_i d_i)^2 + g * sum_{i != j} (x_i + x_j)/(x_i - x_j) * x_i d_i

acting on symmetric polynomials.  ``g`` is the Jack parameter in the
normalisation where P_(2) = m_(2) + 2g/(g+1) m_(1,1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .algebra import CTFactor, LaurentPoly, build_ct_product
from .errors import ArityError, GammaPoleError, NonGenericParameterError
from .partitions import (
    Partition,
    as_fraction,
    dominance_leq,
    gen_pochhammer,
    hook_products,
    partitions,
    partitions_up_to,
)


@lru_cache(maxsize=None)
def _distinct_perms(exps: tuple) -> tuple:
    return tuple(sorted(set(permutations(exps))))


class SymmetricPoly:
    """Symmetric polynomial stored as {Partition: coefficient} in the monomial basis."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        for lam, c in (coeffs or {}).items():
            lam = Partition(lam)
            if len(lam) > nvars:
                raise ArityError(f"{lam} needs more than {nvars} variables")
            if c:
                self.coeffs[lam] = c

    def __add__(self, other):
        if other.nvars != self.nvars:
            raise ArityError("symmetric polynomials in different numbers of variables")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return SymmetricPoly(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return SymmetricPoly(self.nvars, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, SymmetricPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __repr__(self):
        body = " + ".join(f"{c}*m{tuple(k)}" for k, c in sorted(self.coeffs.items(), reverse=True))
        return f"SymmetricPoly(n={self.nvars}: {body or 0})"

    def coefficient(self, lam):
        return self.coeffs.get(Partition(lam), 0)

    def leading(self) -> Partition:
        return max(self.coeffs)

    def to_laurent(self) -> LaurentPoly:
        return expand_to_laurent(self)

    def evaluate(self, point):
        """Exact for rational coordinates; numpy arrays are accepted too."""
        total = 0
        for lam, c in self.coeffs.items():
            total = total + c * monomial_eval(lam, point)
        return total


def monomial_sym(lam, nvars: int) -> LaurentPoly:
    """The monomial symmetric polynomial m_lam as an explicit Laurent polynomial."""
    lam = Partition(lam)
    exps = lam.padded(nvars)
    return LaurentPoly(nvars, {e: 1 for e in _distinct_perms(exps)})


def monomial_eval(lam, point):
    exps = Partition(lam).padded(len(point))
    total = 0
    for e in _distinct_perms(exps):
        term = 1
        for v, d in zip(point, e):
            if d:
                term = term * v**d
        total = total + term
    return total


def expand_to_laurent(f: SymmetricPoly) -> LaurentPoly:
    out = LaurentPoly(f.nvars)
    for lam, c in f.coeffs.items():
        if isinstance(c, float):
            raise TypeError("expansion needs exact coefficients")
        out = out + monomial_sym(lam, f.nvars) * Fraction(c)
    return out


# -- the Calogero-Sutherland operator -----------------------------------------

@lru_cache(maxsize=None)
def _pair_action(mu: Partition, nvars: int) -> dict:
    """Coefficients of sum_{i<j} (x_i+x_j)/(x_i-x_j) (x_i d_i - x_j d_j) m_mu.

    Returned as {Partition: int}.  Only monomials whose exponents are
    weakly decreasing are collected, since those index the m-basis.
    """
    out: dict = {}
    for a in _distinct_perms(mu.padded(nvars)):
        for i in range(nvars):
            for j in range(i + 1, nvars):
                # monomials with a_i < a_j are the swapped partners of ones
                # already visited, so each antisymmetric pair is seen once
                d = a[i] - a[j]
                if d <= 0:
                    continue
                base = list(a)
                for r in range(d + 1):
                    base[i] = a[i] - r
                    base[j] = a[j] + r
                    if all(base[t] >= base[t + 1] for t in range(nvars - 1)):
                        key = Partition(base)
                        out[key] = out.get(key, 0) + d * (1 if r in (0, d) else 2)
    return {k: v for k, v in out.items() if v}


def _euler_square(mu: Partition) -> int:
    return sum(p * p for p in mu)


def cs_apply(f: SymmetricPoly, gamma) -> SymmetricPoly:
    """Apply the Calogero-Sutherland operator in the monomial basis."""
    gamma = as_fraction(gamma)
    out: dict = {}
    for mu, c in f.coeffs.items():
        out[mu] = out.get(mu, 0) + c * _euler_square(mu)
        for nu, d in _pair_action(mu, f.nvars).items():
            out[nu] = out.get(nu, 0) + c * gamma * d
    return SymmetricPoly(f.nvars, out)


def cs_eigenvalue(lam, nvars: int, gamma):
    """Diagonal entry of the operator on m_lam (the Jack eigenvalue)."""
    lam = Partition(lam)
    return _euler_square(lam) + as_fraction(gamma) * _pair_action(lam, nvars).get(lam, 0)


@lru_cache(maxsize=4096)
def _jack_cached(lam: Partition, nvars: int, gamma, kind: type) -> tuple:
    # kind keeps 0.5 and Fraction(1, 2) apart: they hash and compare equal
    basis = [mu for mu in partitions(lam.weight, nvars) if dominance_leq(mu, lam)]
    diag = {mu: _euler_square(mu) + gamma * _pair_action(mu, nvars).get(mu, 0) for mu in basis}
    top = diag[lam]
    coeff = {lam: 1}
    for mu in basis:
        if mu == lam:
            continue
        s = 0
        for nu, c in coeff.items():
            d = _pair_action(nu, nvars).get(mu)
            if d:
                s = s + c * gamma * d
        gap = top - diag[mu]
        if gap == 0:
            raise NonGenericParameterError(
                f"eigenvalues of {tuple(lam)} and {tuple(mu)} coincide at parameter {gamma}"
            )
        coeff[mu] = s / gap
    return tuple(coeff.items())


def jack(lam, nvars: int, gamma) -> SymmetricPoly:
    """Monic Jack polynomial P_lam in ``nvars`` variables.

    Exact (Fraction coefficients) for rational gamma.  Raises
    NonGenericParameterError if two eigenvalues on the dominance interval
    below lam coincide.
    """
    lam = Partition(lam)
    if len(lam) > nvars:
        raise ArityError(f"{lam} has more than {nvars} parts")
    gamma = as_fraction(gamma)
    return SymmetricPoly(nvars, dict(_jack_cached(lam, nvars, gamma, type(gamma))))


def jack_eval(lam, point, gamma):
    return jack(lam, len(point), gamma).evaluate(point)


def jack_eval_ones(lam, nvars: int, gamma):
    """P_lam(1, ..., 1) from the product formula [n g]_lam / c_lam."""
    lam = Partition(lam)
    gamma = as_fraction(gamma)
    c, _ = hook_products(lam, gamma)
    return gen_pochhammer(nvars * gamma, lam, gamma) / c


# -- inner products ----------------------------------------------------------

@lru_cache(maxsize=None)
def dyson_weight(nvars: int, k: int) -> LaurentPoly:
    """prod_{i<j} ((1 - x_i/x_j)(1 - x_j/x_i))^k."""
    factors = []
    for i in range(nvars):
        for j in range(i + 1, nvars):
            e = [0] * nvars
            e[i], e[j] = 1, -1
            factors.append(CTFactor(tuple(e), k))
            factors.append(CTFactor(tuple(-v for v in e), k))
    return build_ct_product(nvars, factors)


def ct_inner_product(f, g, k: int, nvars: int | None = None) -> Fraction:
    """CT[ f(x) g(1/x) prod_{i<j} ((1 - x_i/x_j)(1 - x_j/x_i))^k ], exactly."""
    if isinstance(f, SymmetricPoly):
        f = f.to_laurent()
    if isinstance(g, SymmetricPoly):
        g = g.to_laurent()
    n = f.nvars if nvars is None else nvars
    if f.nvars != n or g.nvars != n:
        raise ArityError("inner product operands in different rings")
    return (f * dyson_weight(n, k)).ct_pairing(g.invert_variables())


def jack_norm_rhs(lam, nvars: int, gamma):
    """Closed-form <P_lam, P_lam> for the torus inner product.

    Exact Fraction when gamma is a nonnegative integer; float otherwise.
    """
    lam = Partition(lam)
    g = as_fraction(gamma)
    _, cp = hook_products(lam, g)
    ratio = cp / gen_pochhammer(1 + (nvars - 1) * g, lam, g) * jack_eval_ones(lam, nvars, g)
    if isinstance(g, Fraction) and g.denominator == 1 and g >= 0:
        k = int(g)
        norm = Fraction(math.factorial(nvars * k), math.factorial(k) ** nvars)
        return ratio * norm
    gf = float(g)
    norm = math.exp(math.lgamma(1 + nvars * gf) - nvars * math.lgamma(1 + gf))
    return float(ratio) * norm


# -- generalised hypergeometric series ------------------------------------------

@dataclass
class HyperSeriesResult:
    value: object
    tail_estimate: float
    max_weight: int
    terms: int


def hyper_coefficient(lam, upper, lower, gamma):
    """prod [a]_lam / prod [b]_lam / c'_lam for one partition."""
    lam = Partition(lam)
    g = as_fraction(gamma)
    num = 1
    for a in upper:
        num = num * gen_pochhammer(as_fraction(a), lam, g)
    den = 1
    for b in lower:
        den = den * gen_pochhammer(as_fraction(b), lam, g)
    if den == 0:
        raise GammaPoleError(f"lower parameter hits a pole at {tuple(lam)}")
    _, cp = hook_products(lam, g)
    return num / den / cp


def hyper_series(upper, lower, x, gamma, max_weight: int) -> HyperSeriesResult:
    """Partial sum over |lam| <= max_weight of the Jack-hypergeometric series.

    The tail estimate is the absolute size of the last weight block.
    """
    n = len(x)
    g = as_fraction(gamma)
    total = 0
    last_block = 0
    count = 0
    for w in range(max_weight + 1):
        block = 0
        for lam in partitions(w, n):
            term = hyper_coefficient(lam, upper, lower, g) * jack(lam, n, g).evaluate(x)
            block = block + term
            count += 1
        total = total + block
        last_block = block
    return HyperSeriesResult(total, abs(complex(last_block)), max_weight, count)


def hyper_series_poly(upper, lower, nvars: int, gamma, max_weight: int) -> LaurentPoly:
    """The truncated series as an exact polynomial (rational parameters only)."""
    g = as_fraction(gamma)
    out = LaurentPoly(nvars)
    for lam in partitions_up_to(max_weight, nvars):
        out = out + jack(lam, nvars, g).to_laurent() * Fraction(hyper_coefficient(lam, upper, lower, g))
    return out


# -- generating-function identities, checked coefficientwise ------------------------------

def _embed(p: LaurentPoly, total: int, offset: int) -> LaurentPoly:
    """Rename variables 0..p.nvars-1 to offset..offset+p.nvars-1 in a ring of ``total``."""
    out = {}
    for e, c in p.items():
        full = [0] * total
        full[offset:offset + p.nvars] = e
        out[tuple(full)] = c
    return LaurentPoly(total, out)


def _truncate(p: LaurentPoly, nx: int, weight: int) -> LaurentPoly:
    # keep monomials whose degree in the first nx variables is at most ``weight``
    return LaurentPoly(p.nvars, {e: c for e, c in p.items() if sum(e[:nx]) <= weight})


def _neg_binomial(u: LaurentPoly, power, order: int) -> LaurentPoly:
    """(1 - u)^(-power) through u^order, with exact rational binomial coefficients."""
    out = LaurentPoly.constant(1, u.nvars)
    coeff = Fraction(1)
    term = LaurentPoly.constant(1, u.nvars)
    for k in range(1, order + 1):
        coeff = coeff * (power + k - 1) / k
        term = term * u
        out = out + term * coeff
    return out


def cauchy_identity_check(weight: int, n: int, m: int, gamma) -> bool:
    """sum (c/c') P_lam(x) P_lam(y) against prod (1 - x_i y_j)^(-gamma), through x-degree ``weight``."""
    g = as_fraction(gamma)
    total = n + m
    lhs = LaurentPoly(total)
    for lam in partitions_up_to(weight, min(n, m)):
        c, cp = hook_products(lam, g)
        px = _embed(jack(lam, n, g).to_laurent(), total, 0)
        py = _embed(jack(lam, m, g).to_laurent(), total, n)
        lhs = lhs + px * py * Fraction(c / cp)
    rhs = LaurentPoly.constant(1, total)
    for i in range(n):
        for j in range(m):
            u = LaurentPoly.variable(i, total) * LaurentPoly.variable(n + j, total)
            rhs = _truncate(rhs * _neg_binomial(u, g, weight), n, weight)
    return lhs == rhs


def binomial_theorem_check(a, n: int, weight: int, gamma) -> bool:
    """1F0(a; x) = prod (1 - x_i)^(-a) through total degree ``weight``."""
    a = as_fraction(a)
    lhs = hyper_series_poly([a], [], n, gamma, weight)
    rhs = LaurentPoly.constant(1, n)
    for i in range(n):
        rhs = _truncate(rhs * _neg_binomial(LaurentPoly.variable(i, n), a, weight), n, weight)
    return lhs == rhs


def _vandermonde(n: int, skip=None) -> LaurentPoly:
    """prod_{i<j} (x_i - x_j), optionally without the factor for the pair ``skip``."""
    out = LaurentPoly.constant(1, n)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) != skip:
                out = out * (LaurentPoly.variable(i, n) - LaurentPoly.variable(j, n))
    return out


def eigen_residual_laurent(lam, nvars: int, gamma) -> LaurentPoly:
    """Delta * (H - E) P_lam computed with polynomial calculus; zero iff P_lam is an eigenfunction.

    H = sum (x_i d_i)^2 + g sum_{i<j} (x_i + x_j)/(x_i - x_j) (x_i d_i - x_j d_j),
    multiplied through by the Vandermonde product so no division is needed.
    This is independent of the monomial-basis action used to build P_lam.
    """
    g = as_fraction(gamma)
    n = nvars
    P = jack(lam, n, g).to_laurent()
    delta = _vandermonde(n)
    out = LaurentPoly(n)
    for i in range(n):
        out = out + delta * P.euler(i).euler(i)
    for i in range(n):
        for j in range(i + 1, n):
            xi, xj = LaurentPoly.variable(i, n), LaurentPoly.variable(j, n)
            out = out + _vandermonde(n, (i, j)) * (xi + xj) * (P.euler(i) - P.euler(j)) * g
    return out - delta * P * Fraction(cs_eigenvalue(lam, n, g))


def schur_bialternant_check(lam, nvars: int) -> bool:
    """At gamma = 1, Delta * P_lam equals det(x_i^(lam_j + n - j))."""
    n = nvars
    lam_p = Partition(lam).padded(n)
    det = LaurentPoly(n)
    for perm in permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        exps = [0] * n
        for i in range(n):
            exps[i] = lam_p[perm[i]] + n - 1 - perm[i]
        det = det + LaurentPoly.monomial(exps, sign)
    return _vandermonde(n) * jack(lam, n, 1).to_laurent() == det

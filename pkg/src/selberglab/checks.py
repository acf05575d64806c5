"""Numerical and combinatorial cross-checks that pair an independent computation with a closed form."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import numpy as np
from scipy.optimize import minimize

from . import closed_forms as cf
from .algebra import LaurentPoly
from .errors import DomainError, TermCeilingError
from .jack import hyper_series, hyper_series_poly
from .partitions import as_fraction
from .quadrature import (
    DensitySpec,
    de_integrate,
    euler_2f1_spec,
    okounkov_olshanski_direct,
    okounkov_olshanski_prefactor,
    quad_integrate,
)


@dataclass
class CheckResult:
    name: str
    lhs: object
    rhs: object
    residual: float
    tolerance: float
    method: str = "quad"
    evals: int = 0

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# -- Jack-weighted Selberg integrals -------------------------------------------------

def kadell_check(lam, n, alpha, beta, gamma, tol=1e-6) -> CheckResult:
    spec = DensitySpec("kadell", n, dict(alpha=alpha, beta=beta, gamma=gamma, lam=tuple(lam)))
    r = quad_integrate(spec, rel_tol=tol / 10)
    rhs = cf.kadell_rhs(lam, n, alpha, beta, gamma)
    return CheckResult(f"kadell{tuple(lam)}", r.value, rhs, _rel(r.value, rhs), tol, evals=r.n_evals)


def aomoto_check(r, n, alpha, beta, gamma, tol=1e-6) -> CheckResult:
    """Kadell's integral at lam = (1^r): the elementary symmetric function e_r."""
    out = kadell_check((1,) * r, n, alpha, beta, gamma, tol)
    out.name = f"aomoto(r={r})"
    return out


def hua_kadell_check(lam, mu, n, alpha, gamma, tol=1e-5) -> CheckResult:
    spec = DensitySpec("hua_kadell", n, dict(alpha=alpha, beta=gamma, gamma=gamma, lam=tuple(lam), mu=tuple(mu)))
    r = quad_integrate(spec, rel_tol=tol / 10)
    rhs = cf.hua_kadell_rhs(lam, mu, n, alpha, gamma)
    return CheckResult("hua_kadell", r.value, rhs, _rel(r.value, rhs), tol, evals=r.n_evals)


def euler_2f1_check(n, a, b, c, gamma, z, max_weight=12, tol=1e-6) -> CheckResult:
    """prefactor * Euler integral against the Jack hypergeometric series (z < 1) or Gauss's product (z = 1)."""
    spec = euler_2f1_spec(n, a, b, c, gamma, z)
    r = quad_integrate(spec, rel_tol=tol / 10)
    lhs = cf.euler_2f1_prefactor(n, b, c, gamma).value() * r.value
    if z == 1:
        rhs = cf.gauss_2f1_rhs(n, a, b, c, gamma).value()
        name = "gauss_summation"
    else:
        res = hyper_series([as_fraction(a), as_fraction(b)], [as_fraction(c)],
                           [as_fraction(z)] * n, as_fraction(gamma), max_weight)
        rhs = float(res.value)
        name = "euler_2f1"
    return CheckResult(name, lhs, rhs, _rel(lhs, rhs), tol, evals=r.n_evals)


def okounkov_olshanski_check(lam, gamma, x, tol=1e-6) -> CheckResult:
    """n = 2 interlacing integral formula against the Jack polynomial evaluated directly."""
    x = tuple(x)
    if not x[0] < x[1]:
        raise DomainError("need x_1 < x_2")
    if gamma <= 0:
        raise DomainError("need gamma > 0")
    rhs = okounkov_olshanski_direct(lam, gamma, x)
    if sum(lam) == 0:
        lhs = 1.0
        evals = 0
    else:
        spec = DensitySpec("okounkov_olshanski", 2, dict(lam=tuple(lam), gamma=gamma, x=x))
        r = quad_integrate(spec, rel_tol=tol / 100)
        lhs = okounkov_olshanski_prefactor(lam, gamma, x) * r.value
        evals = r.n_evals
    return CheckResult("okounkov_olshanski", lhs, rhs, _rel(lhs, rhs), tol, evals=evals)


def dixon_anderson_check(nodes, s, tol=1e-6) -> CheckResult:
    n = len(nodes) - 1
    spec = DensitySpec("dixon_anderson", n, dict(nodes=tuple(nodes), s=tuple(s)))
    r = quad_integrate(spec, rel_tol=tol / 10)
    rhs = cf.dixon_anderson_rhs(nodes, s).value()
    return CheckResult("dixon_anderson", r.value, rhs, _rel(r.value, rhs), tol, evals=r.n_evals)


def dixon_anderson_determinant(nodes, s, tol=1e-10) -> float:
    """det_{i,j} of one-dimensional moment integrals over (a_(i+1), a_i); equals
    (-1)^(n(n-1)/2) times the interlacing integral."""
    nodes = [float(v) for v in nodes]
    s = [float(v) for v in s]
    n = len(nodes) - 1
    mat = np.zeros((n, n))
    for i in range(n):
        lo, hi = nodes[i + 1], nodes[i]
        width = hi - lo

        def f(u, uc, i=i, lo=lo, width=width):
            t = lo + width * u[0]
            out = np.full_like(t, width)
            for l, a in enumerate(nodes):
                if l == i:
                    d = width * uc[0]
                elif l == i + 1:
                    d = width * u[0]
                else:
                    d = np.abs(t - a)
                out = out * d ** (s[l] - 1)
            return np.stack([out * t**j for j in range(n)])

        for j in range(n):
            mat[i, j] = de_integrate(lambda u, uc, j=j: f(u, uc)[j], 1, rel_tol=tol).value
    return float(np.linalg.det(mat))


def dixon_anderson_determinant_check(nodes, s, tol=1e-8) -> CheckResult:
    n = len(nodes) - 1
    det = dixon_anderson_determinant(nodes, s)
    rhs = (-1) ** math.comb(n, 2) * cf.dixon_anderson_rhs(nodes, s).value()
    return CheckResult("dixon_anderson_det", det, rhs, _rel(det, rhs), tol)


def dotsenko_fateev_check(n, p, alpha, beta, gamma, tol=1e-4) -> CheckResult:
    """Numeric S_{n,p} / S_{n,p-1} against the sine ratio of the contour-rotation recurrence."""
    hi = quad_integrate(DensitySpec("dotsenko_fateev", n, dict(p=p, alpha=alpha, beta=beta, gamma=gamma)), rel_tol=tol / 10)
    lo = quad_integrate(DensitySpec("dotsenko_fateev", n, dict(p=p - 1, alpha=alpha, beta=beta, gamma=gamma)), rel_tol=tol / 10)
    lhs = hi.value / lo.value
    rhs = cf.dotsenko_fateev_ratio(n, p, alpha, beta, gamma)
    return CheckResult(f"dotsenko_fateev(p={p})", lhs, rhs, _rel(lhs, rhs), tol, evals=hi.n_evals + lo.n_evals)


# -- Askey's identity relating [0,1]^n and the torus ----------------------------------

def si_identity_check(f: LaurentPoly, zeta, n: int | None = None, nodes: int = 200, tol=1e-8) -> CheckResult:
    """int_[0,1]^n (t_1...t_n)^(zeta-1) f(t) dt against the torus form with (2 sin pi zeta)^-n.

    The left side uses tanh-sinh (endpoint power singularities), the right
    side Gauss-Legendre on [-pi, pi]^n (the integrand is analytic there but
    not periodic for non-integer zeta).
    """
    n = f.nvars if n is None else n
    if n > 2:
        raise DomainError("the identity check is limited to n <= 2")
    if abs(math.sin(math.pi * zeta)) < 1e-8:
        raise DomainError("sin(pi zeta) vanishes; pick zeta off the integers")
    min_exp = min(min(e) for e, _ in f.items()) if not f.is_zero() else 0
    if zeta + min_exp <= 0:
        raise DomainError("zeta too small for the left side to converge")

    def lhs_f(u, uc):
        vals = np.real(f.evaluate_numeric(list(u)))
        return np.prod(u, axis=0) ** (zeta - 1) * vals

    lhs = de_integrate(lhs_f, n, rel_tol=tol / 10).value
    x, w = np.polynomial.legendre.leggauss(nodes)
    th1, w1 = math.pi * x, math.pi * w
    grids = np.meshgrid(*([th1] * n), indexing="ij")
    wg = np.meshgrid(*([w1] * n), indexing="ij")
    th = [g.ravel() for g in grids]
    weight = np.prod([g.ravel() for g in wg], axis=0)
    z = [-np.exp(1j * t) for t in th]
    vals = np.exp(1j * zeta * sum(th)) * f.evaluate_numeric(z)
    rhs = complex(np.sum(weight * vals)) / (2 * math.sin(math.pi * zeta)) ** n
    return CheckResult("si_identity", lhs, rhs.real, abs(lhs - rhs) / max(abs(rhs), 1e-300), tol)


# -- the PDE system for the Jack 2F1 -------------------------------------------------------

@dataclass
class PDEResidual:
    residual: float
    next_block: float
    tail: float
    min_degree_ok: bool

    @property
    def passed(self) -> bool:
        return self.min_degree_ok and self.residual <= self.tail


def _pde_apply(F: LaurentPoly, i: int, a, b, c, g) -> LaurentPoly:
    """V_i(x) * (the i-th equation applied to F) with V_i = prod_{j != i} (x_i - x_j).

    Multiplying through by V_i keeps everything polynomial.
    """
    n = F.nvars
    one = LaurentPoly.constant(1, n)
    xi = LaurentPoly.variable(i, n)
    Fi = F.derivative(i)
    Fii = Fi.derivative(i)
    base = xi * (one - xi) * Fii + (one * (c - (n - 1) * g) - xi * (a + b + 1 - (n - 1) * g)) * Fi - F * (a * b)
    V = one
    for j in range(n):
        if j != i:
            V = V * (xi - LaurentPoly.variable(j, n))
    out = base * V
    for j in range(n):
        if j == i:
            continue
        xj = LaurentPoly.variable(j, n)
        rest = one
        for k in range(n):
            if k not in (i, j):
                rest = rest * (xi - LaurentPoly.variable(k, n))
        out = out + (xi * (one - xi) * Fi - xj * (one - xj) * F.derivative(j)) * rest * g
    return out


def pde_residual_2f1(a, b, c, gamma, x, weight: int) -> PDEResidual:
    """Apply the 2F1 PDE system to the series truncated at ``weight``.

    residual: largest |equation_i(x)| over i.
    next_block: the same quantity for the weight+1 homogeneous block alone.
    tail: geometric estimate of everything past the truncation,
        next_block / (1 - rho).  rho is the larger of the measured ratio of
        the next two block images and max |x_i|, the value that ratio tends
        to from below as the weight grows.
    min_degree_ok: every monomial of V_i * equation_i has total degree at
        least weight + n - 1, which holds iff the truncated coefficients are
        right (V_i = prod_{j != i} (x_i - x_j)).
    """
    a, b, c, g = (as_fraction(v) for v in (a, b, c, gamma))
    n = len(x)
    polys = [hyper_series_poly([a, b], [c], n, g, weight + d) for d in range(3)]
    blocks = [polys[1] - polys[0], polys[2] - polys[1]]
    xs = [float(v) for v in x]
    res, img = 0.0, [0.0, 0.0]
    deg_ok = True
    for i in range(n):
        V = 1.0
        for j in range(n):
            if j != i:
                V *= xs[i] - xs[j]
        E = _pde_apply(polys[0], i, a, b, c, g)
        res = max(res, abs(E.evaluate_numeric(xs)) / abs(V))
        for d in range(2):
            img[d] = max(img[d], abs(_pde_apply(blocks[d], i, a, b, c, g).evaluate_numeric(xs)) / abs(V))
        deg_ok = deg_ok and not any(sum(e) < weight + n - 1 for e, _ in E.items())
    rho = max(img[1] / img[0] if img[0] else 0.0, max(abs(v) for v in xs))
    tail = img[0] / (1 - rho) if rho < 1 else math.inf
    return PDEResidual(float(res), float(img[0]), float(tail), deg_ok)


# -- gamma a positive integer: hyperdeterminants and Stanley's probability -------------------

def _perm_sign(p) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def hankel_hyperdet(n: int, k: int, alpha: int, beta: int, max_terms: int = 10**6) -> Fraction:
    """Cayley's hyperdeterminant of order 2k for the Hankel tensor of beta-moments B(alpha + j, beta)."""
    if k < 1:
        raise DomainError("need k >= 1")
    order = 2 * k
    if math.factorial(n) ** (order - 1) > max_terms:
        raise TermCeilingError(f"{math.factorial(n)}^{order - 1} permutation tuples exceed {max_terms}")
    f = math.factorial
    mu = [Fraction(f(alpha + j - 1) * f(beta - 1), f(alpha + beta + j - 1)) for j in range(order * (n - 1) + 1)]
    perms = [(p, _perm_sign(p)) for p in permutations(range(n))]
    total = Fraction(0)
    for combo in product(perms, repeat=order - 1):
        sign = 1
        for _, s in combo:
            sign *= s
        term = Fraction(1)
        for i in range(n):
            term *= mu[i + sum(p[i] for p, _ in combo)]
        total += sign * term
    return total


def _multiset_orderings(counts: dict):
    """Yield every distinct arrangement of a multiset as a tuple of labels."""
    labels = sorted(counts)
    total = sum(counts.values())
    seq = []

    def rec():
        if len(seq) == total:
            yield tuple(seq)
            return
        for lab in labels:
            if counts[lab]:
                counts[lab] -= 1
                seq.append(lab)
                yield from rec()
                seq.pop()
                counts[lab] += 1

    yield from rec()


def _stanley_labels(n, alpha, beta, two_gamma):
    counts = {("t",): n}
    for p in range(n):
        if alpha > 1:
            counts[("y", p)] = alpha - 1
        if beta > 1:
            counts[("z", p)] = beta - 1
    for i in range(n):
        for j in range(i + 1, n):
            if two_gamma:
                counts[("a", i, j)] = two_gamma
    return counts


def _stanley_ok(order) -> bool:
    # position of the p-th t from the left
    tpos = [i for i, lab in enumerate(order) if lab == ("t",)]
    for i, lab in enumerate(order):
        kind = lab[0]
        if kind == "y" and not i < tpos[lab[1]]:
            return False
        if kind == "z" and not i > tpos[lab[1]]:
            return False
        if kind == "a" and not tpos[lab[1]] < i < tpos[lab[2]]:
            return False
    return True


def stanley_probability(n: int, alpha: int, beta: int, two_gamma: int, mode: str = "exhaustive",
                        samples: int = 10**6, seed: int = 0, max_orderings: int = 2 * 10**6):
    """Probability that a uniform arrangement of the labelled points obeys the placement rule.

    exhaustive: exact Fraction over all distinct multiset arrangements.
    mc: (estimate, binomial standard error) from uniform points in [0, 1].
    """
    if min(alpha, beta, n) < 1 or two_gamma < 0:
        raise DomainError("need positive integers alpha, beta, n and 2 gamma >= 0")
    counts = _stanley_labels(n, alpha, beta, two_gamma)
    if mode == "exhaustive":
        total = math.factorial(sum(counts.values()))
        for c in counts.values():
            total //= math.factorial(c)
        if total > max_orderings:
            raise TermCeilingError(f"{total} arrangements exceed the ceiling {max_orderings}")
        good = sum(1 for o in _multiset_orderings(dict(counts)) if _stanley_ok(o))
        return Fraction(good, total)
    if mode != "mc":
        raise DomainError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    batch = 1 << 17
    while done < samples:
        m = min(batch, samples - done)
        t = np.sort(rng.random((n, m)), axis=0)
        ok = np.ones(m, dtype=bool)
        for p in range(n):
            if alpha > 1:
                ok &= np.all(rng.random((alpha - 1, m)) < t[p], axis=0)
            if beta > 1:
                ok &= np.all(rng.random((beta - 1, m)) > t[p], axis=0)
        for i in range(n):
            for j in range(i + 1, n):
                if two_gamma:
                    pts = rng.random((two_gamma, m))
                    ok &= np.all((pts > t[i]) & (pts < t[j]), axis=0)
        hits += int(ok.sum())
        done += m
    p = hits / done
    return p, math.sqrt(max(p * (1 - p), 1e-300) / done)


# -- Gelfond's minimum --------------------------------------------------------------------------

@dataclass
class GelfondResult:
    n: int
    m_n: float
    minimizer: tuple
    bound: float
    restarts: int

    @property
    def beats_bound(self) -> bool:
        return self.m_n > self.bound


def gelfond_min(n: int, restarts: int = 100, seed: int = 0) -> GelfondResult:
    """Minimise prod (1 + y_i) subject to prod y_i = e^(1-n) and prod_{i<j} |1/y_i - 1/y_j| = 1.

    Works in x = log y.  The product constraint fixes the mean of x; the pair
    constraint is handed to SLSQP as an equality.  Points are kept sorted so
    the pair term is smooth.
    """
    bound = (1 + math.exp(1 / n - 1)) ** n
    if n == 1:
        return GelfondResult(1, 2.0, (1.0,), bound, 0)
    target = 1 - n

    def full(z):
        # z holds n-1 free coordinates; the last one closes the sum constraint
        return np.append(z, target - np.sum(z))

    def obj(z):
        return float(np.sum(np.log1p(np.exp(full(z)))))

    def pair(z):
        x = full(z)
        s = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                s += math.log(abs(math.exp(-x[i]) - math.exp(-x[j])) + 1e-300)
        return s

    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        z0 = rng.normal(target / n, 1.5, n - 1)
        res = minimize(obj, z0, method="SLSQP", constraints=[{"type": "eq", "fun": pair}],
                       options={"maxiter": 500, "ftol": 1e-14})
        if not res.success or abs(pair(res.x)) > 1e-9:
            continue
        if best is None or res.fun < best.fun:
            best = res
    if best is None:
        raise DomainError(f"no feasible point found in {restarts} restarts")
    y = tuple(sorted(np.exp(full(best.x))))
    return GelfondResult(n, float(np.prod(1 + np.array(y))), y, bound, restarts)


# -- the complex Selberg integral at n = 1 ---------------------------------------------------------

def complex_selberg_n1(alpha, beta, tol=1e-9) -> float:
    """int over the plane of |z|^(2a-2) |1-z|^(2b-2) dx dy by 2D tanh-sinh.

    In polar form z = r e^(i phi) the outer part r > 1 folds onto (0, 1) via
    r = 1/s, leaving s in (0, 1), phi in (0, pi) (doubled by symmetry) with a
    point singularity at s = 1, phi = 0.  That corner is split off and
    Duffy-transformed so every singular factor is a power of one variable.
    """
    a, b = float(alpha), float(beta)
    if not (a > 0 and b > 0 and a + b < 1):
        raise DomainError("the plane integral needs alpha, beta > 0 and alpha + beta < 1")

    def radial(s):
        return s ** (2 * a - 1) + s ** (1 - 2 * a - 2 * b)

    def dist2(s, phi):
        # |1 - s e^(i phi)|^2 written without cancellation near s = 1, phi = 0
        return (1 - s) ** 2 + 4 * s * np.sin(phi / 2) ** 2

    total = 0.0

    # s in (0, 1/2): no singularity apart from s = 0
    def f0(u, uc):
        s = 0.5 * u[0]
        phi = math.pi * u[1]
        return 0.5 * math.pi * radial(s) * dist2(s, phi) ** (b - 1)
    total += de_integrate(f0, 2, rel_tol=tol).value

    # x = 1 - s in (0, 1/2), phi / pi in (1/2, 1): smooth
    def f1(u, uc):
        x = 0.5 * u[0]
        phi = math.pi * (0.5 + 0.5 * u[1])
        s = 1 - x
        return 0.25 * math.pi * radial(s) * dist2(s, phi) ** (b - 1)
    total += de_integrate(f1, 2, rel_tol=tol).value

    # the corner square x, y in (0, 1/2) with y = phi / pi, split along x = y
    def f_lower(u, uc):
        # y <= x: x = h w, y = h w v with h = 1/2
        w, v = u[0], u[1]
        x = 0.5 * w
        y = x * v
        s = 1 - x
        scaled = 1 + 4 * s * np.sin(math.pi * y / 2) ** 2 / np.where(x > 0, x, 1) ** 2
        return 0.25 * math.pi * w * radial(s) * x ** (2 * b - 2) * scaled ** (b - 1)

    def f_upper(u, uc):
        # x <= y: y = w/2, x = y v
        w, v = u[0], u[1]
        y = 0.5 * w
        x = y * v
        s = 1 - x
        sy = np.where(y > 0, y, 1)
        scaled = v**2 + 4 * s * (np.sin(math.pi * y / 2) / sy) ** 2
        return 0.25 * math.pi * w * radial(s) * y ** (2 * b - 2) * scaled ** (b - 1)

    total += de_integrate(f_lower, 2, rel_tol=tol).value
    total += de_integrate(f_upper, 2, rel_tol=tol).value
    return 2 * total


def complex_selberg_check(alpha, beta, tol=1e-6) -> CheckResult:
    lhs = complex_selberg_n1(alpha, beta, tol / 100)
    rhs = cf.complex_selberg_rhs(1, alpha, beta, 0.25).value()
    return CheckResult("complex_selberg", lhs, rhs, _rel(lhs, rhs), tol)

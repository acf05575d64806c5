"""Numerical integration: tanh-sinh rules, Monte Carlo, Jackson sums, torus grids.

Every symmetric integrand over a product of intervals is reduced to an
ordered sector and multiplied by the size of the symmetry group.  Inside a
sector the points are parametrised by their gaps, so that every factor of
the form (gap)^(s-1) sits on a face of the unit cube, where the
double-exponential substitution absorbs it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import closed_forms as cf
from .errors import AccuracyError, DomainError
from .jack import jack
from .partitions import Partition, as_fraction
from .qseries import askey_wilson_integrand, elliptic_beta_integrand, q_pochhammer

METHODS = ("quad", "mc", "qsum", "torus")


@dataclass
class IntegrationResult:
    value: float | complex
    err_estimate: float
    n_evals: int
    method: str
    flags: list = field(default_factory=list)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        self.err_estimate = abs(self.err_estimate)


# -- tanh-sinh nodes on (0, 1) -------------------------------------------------------

def de_nodes(level: int, tmax: float = 4.5):
    """Nodes u, complements 1-u and weights of the tanh-sinh rule with step 2^-level."""
    h = 2.0 ** -level
    t = np.arange(-tmax, tmax + h / 2, h)
    s = math.pi * np.sinh(t)
    u = 1 / (1 + np.exp(-s))
    uc = 1 / (1 + np.exp(s))
    w = h * math.pi * np.cosh(t) * u * uc
    return u, uc, w


def de_integrate(f, dim: int, rel_tol: float = 1e-8, abs_tol: float = 0.0,
                 min_level: int = 2, max_level: int | None = None, tmax: float = 4.5,
                 chunk: int = 1 << 18) -> IntegrationResult:
    """Integrate f over the unit cube (0,1)^dim.

    ``f(u, uc)`` gets arrays of shape (dim, N) holding the nodes and their
    complements and returns N values.  Levels are refined until two
    successive estimates agree to the tolerance.
    """
    if max_level is None:
        max_level = {1: 7, 2: 6, 3: 5}.get(dim, 3)
    prev = None
    evals = 0
    for level in range(min_level, max_level + 1):
        u1, uc1, w1 = de_nodes(level, tmax)
        m = len(u1)
        total = 0.0
        idx_all = np.arange(m**dim)
        for start in range(0, m**dim, chunk):
            idx = np.unravel_index(idx_all[start:start + chunk], (m,) * dim)
            u = np.stack([u1[i] for i in idx])
            uc = np.stack([uc1[i] for i in idx])
            w = np.prod(np.stack([w1[i] for i in idx]), axis=0)
            with np.errstate(all="ignore"):
                vals = f(u, uc)
            # inf * 0 only happens at the extreme nodes, where the true contribution underflows
            vals = np.where(np.isfinite(vals) & (w > 0), vals, 0)
            total = total + np.sum(w * vals)
        evals += m**dim
        if prev is not None:
            err = abs(total - prev)
            if err <= max(rel_tol * abs(total), abs_tol):
                return IntegrationResult(total, err, evals, "quad")
        prev = total
    raise AccuracyError(
        f"tanh-sinh rule did not reach {rel_tol} at level {max_level}",
        IntegrationResult(total, err, evals, "quad", ["not_converged"]),
    )


# -- sector maps ------------------------------------------------------------------------

@dataclass
class Sector:
    """Ordered points t_1 < ... < t_n with accurately known gaps.

    ``lo``: t_1 minus the lower end (None for the whole line);
    ``hi``: upper end minus t_n (None for an unbounded right end);
    ``gaps[k] = t_(k+2) - t_(k+1)``; ``jac``: Jacobian of the map from the cube.
    """

    t: np.ndarray
    gaps: np.ndarray
    jac: np.ndarray
    lo: np.ndarray | None = None
    hi: np.ndarray | None = None

    def pair_diffs(self):
        """Yield (i, j, t_j - t_i) for i < j, built from sums of gaps."""
        n = self.t.shape[0]
        csum = np.cumsum(self.gaps, axis=0) if n > 1 else None
        for i in range(n):
            for j in range(i + 1, n):
                d = csum[j - 1] - (csum[i - 1] if i > 0 else 0)
                yield i, j, d


def unit_chain(u, uc) -> Sector:
    """Stick-breaking onto 0 < t_1 < ... < t_n < 1: n+1 gaps summing to one."""
    n = u.shape[0]
    rest = np.ones_like(u[0])
    pieces = []
    jac = np.ones_like(u[0])
    for k in range(n):
        jac = jac * rest
        pieces.append(rest * u[k])
        rest = rest * uc[k]
    t = np.cumsum(np.stack(pieces), axis=0)
    return Sector(t, np.stack(pieces[1:]) if n > 1 else np.zeros((0,) + u[0].shape), jac, pieces[0], rest)


def halfline_chain(u, uc) -> Sector:
    """0 < t_1 < ... < t_n < inf with every gap mapped through u/(1-u)."""
    d = u / uc
    jac = np.prod(1 / uc**2, axis=0)
    t = np.cumsum(d, axis=0)
    return Sector(t, d[1:], jac, d[0], None)


def line_chain(u, uc) -> Sector:
    """-inf < t_1 < ... < t_n < inf: t_1 via 1/(1-u) - 1/u, gaps via u/(1-u)."""
    t1 = 1 / uc[0] - 1 / u[0]
    j1 = 1 / uc[0] ** 2 + 1 / u[0] ** 2
    d = u[1:] / uc[1:]
    jac = j1 * np.prod(1 / uc[1:] ** 2, axis=0)
    t = np.concatenate([t1[None], t1[None] + np.cumsum(d, axis=0)])
    return Sector(t, d, jac, None, None)


def simplex_chain(u, uc) -> Sector:
    """0 < t_1 < ... < t_n with sum t <= 1.

    With gaps d_0 = t_1, d_k = t_(k+1) - t_k, the sum is sum (n-k) d_k, so
    e_k = (n-k) d_k lie in the standard simplex; ``hi`` holds 1 - sum t.
    """
    n = u.shape[0]
    base = unit_chain(u, uc)
    e = np.concatenate([base.lo[None], base.gaps])
    scale = np.arange(n, 0, -1, dtype=float)[:, None]
    d = e / scale.reshape((n,) + (1,) * (e.ndim - 1))
    t = np.cumsum(d, axis=0)
    jac = base.jac / math.factorial(n)
    return Sector(t, d[1:], jac, d[0], base.hi)


# -- integrand families -----------------------------------------------------------------

def _jack_numeric(lam, n, gamma):
    """Vectorised evaluator for P_lam at points of shape (n, N)."""
    lam = Partition(lam)
    p = jack(lam, n, as_fraction(gamma))
    terms = [(float(c), mu.padded(n)) for mu, c in p.coeffs.items()]
    from .jack import _distinct_perms

    def ev(t):
        out = np.zeros_like(t[0])
        for c, mu in terms:
            for e in _distinct_perms(mu):
                term = np.ones_like(t[0])
                for i, d in enumerate(e):
                    if d:
                        term = term * t[i] ** d
                out = out + c * term
        return out

    return ev


def _vandermonde_abs(sec: Sector, power):
    out = np.ones_like(sec.jac)
    for _, _, d in sec.pair_diffs():
        out = out * d ** power
    return out


FAMILIES = (
    "selberg", "morris", "mehta", "laguerre", "dixon_anderson", "kadell", "euler_2f1",
    "dotsenko_fateev", "cauchy_sc", "askey_richards", "okounkov_olshanski", "hua_kadell",
)


@dataclass
class DensitySpec:
    family: str
    n: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown density family {self.family!r}")

    def __getitem__(self, key):
        return self.params[key]

    def get(self, key, default=None):
        return self.params.get(key, default)


def _selberg_like(spec: DensitySpec):
    n = spec.n
    a, b, g = spec["alpha"], spec["beta"], spec["gamma"]
    if a <= 0 or b <= 0:
        raise DomainError("endpoint exponents alpha-1, beta-1 must exceed -1")
    extra = None
    if spec.family == "kadell":
        extra = _jack_numeric(spec["lam"], n, g)
    elif spec.family == "hua_kadell":
        pl = _jack_numeric(spec["lam"], n, g)
        pm = _jack_numeric(spec["mu"], n, g)
        extra = lambda t: pl(t) * pm(t)
    elif spec.family == "euler_2f1":
        z, ea = spec["z"], spec["a"]
        extra = lambda t: np.prod((1 - z * t) ** (-ea), axis=0)

    def f(u, uc):
        s = unit_chain(u, uc)
        # t_1 and 1 - t_n come straight from the gaps; the rest are interior
        out = s.jac * s.lo ** (a - 1) * s.hi ** (b - 1)
        for i in range(1, n):
            out = out * s.t[i] ** (a - 1)
        for i in range(n - 1):
            out = out * (1 - s.t[i]) ** (b - 1)
        out = out * _vandermonde_abs(s, 2 * g)
        if extra is not None:
            out = out * extra(s.t)
        return out * math.factorial(n)

    return f, n


def _mehta(spec):
    n, g = spec.n, spec["gamma"]

    def f(u, uc):
        s = line_chain(u, uc)
        out = s.jac * np.exp(-0.5 * np.sum(s.t**2, axis=0)) * _vandermonde_abs(s, 2 * g)
        return out * math.factorial(n) / (2 * math.pi) ** (n / 2)

    return f, n


def _laguerre(spec):
    n, a, g = spec.n, spec["alpha"], spec["gamma"]
    if a <= 0:
        raise DomainError("Laguerre weight needs alpha > 0")

    def f(u, uc):
        s = halfline_chain(u, uc)
        out = s.jac * s.lo ** (a - 1) * np.exp(-np.sum(s.t, axis=0))
        for i in range(1, n):
            out = out * s.t[i] ** (a - 1)
        return out * _vandermonde_abs(s, 2 * g)

    return f, n


def _cauchy(spec):
    """Angles t = tan(phi): the weight becomes cos(phi)^(a+b) e^(i (b-a) phi) with phi in an interval."""
    n, a, b, g = spec.n, spec["alpha"], spec["beta"], spec["gamma"]

    def f(u, uc):
        s = unit_chain(u, uc)
        phi = math.pi * (s.t - 0.5)
        cos = np.sin(math.pi * s.t)
        cos[0] = np.sin(math.pi * s.lo)
        cos[-1] = np.sin(math.pi * s.hi)
        out = s.jac * np.prod(cos ** (a + b - 2) * np.exp(1j * (b - a) * phi), axis=0)
        for i, j, d in s.pair_diffs():
            out = out * (np.sin(math.pi * d) / (cos[i] * cos[j])) ** (2 * g)
        return out * math.factorial(n) / 2**n

    return f, n


def _askey_richards(spec):
    n, a, b, g = spec.n, spec["alpha"], spec["beta"], spec["gamma"]

    def f(u, uc):
        s = simplex_chain(u, uc)
        out = s.jac * s.lo ** (a - 1) * s.hi ** (b - 1)
        for i in range(1, n):
            out = out * s.t[i] ** (a - 1)
        return out * _vandermonde_abs(s, 2 * g) * math.factorial(n)

    return f, n


def _dixon_anderson(spec):
    nodes = [float(x) for x in spec["nodes"]]
    sexp = [float(x) for x in spec["s"]]
    n = len(nodes) - 1
    if n != spec.n:
        raise DomainError("Dixon-Anderson needs n+1 nodes")
    if any(x <= 0 for x in sexp):
        raise DomainError("Dixon-Anderson exponents must be positive")

    def f(u, uc):
        # t_i in (a_(i+1), a_i); distances to the two bracketing nodes are exact
        out = np.ones_like(u[0])
        ts = []
        for i in range(n):
            width = nodes[i] - nodes[i + 1]
            ts.append(nodes[i + 1] + width * u[i])
            out = out * width
        for i in range(n):
            for j in range(n + 1):
                if j == i:
                    dist = (nodes[i] - nodes[i + 1]) * uc[i]
                elif j == i + 1:
                    dist = (nodes[i] - nodes[i + 1]) * u[i]
                else:
                    dist = np.abs(ts[i] - nodes[j])
                out = out * dist ** (sexp[j] - 1)
        for i in range(n):
            for j in range(i + 1, n):
                out = out * (ts[i] - ts[j])
        return out

    return f, n


def _dotsenko_fateev(spec):
    """p variables on [0,1], n-p on [1, inf) handled as s = 1/t on (0, 1]."""
    n, p = spec.n, spec["p"]
    a, b, g = spec["alpha"], spec["beta"], spec["gamma"]

    def f(u, uc):
        out = np.ones_like(u[0])
        inner = outer = None
        if p:
            inner = unit_chain(u[:p], uc[:p])
            out = out * inner.jac * inner.lo ** (a - 1) * inner.hi ** (b - 1) * math.factorial(p)
            for i in range(1, p):
                out = out * inner.t[i] ** (a - 1)
            for i in range(p - 1):
                out = out * (1 - inner.t[i]) ** (b - 1)
            out = out * _vandermonde_abs(inner, 2 * g)
        if n - p:
            outer = unit_chain(u[p:], uc[p:])
            m = n - p
            sv = outer.t
            # t = 1/s, dt = ds/s^2, t - 1 = (1 - s)/s
            out = out * outer.jac * math.factorial(m)
            one_minus = [outer.hi] + [1 - sv[i] for i in range(m - 2, -1, -1)]
            for idx, i in enumerate(range(m - 1, -1, -1)):
                out = out * sv[i] ** (2 - a - b) * one_minus[idx] ** (b - 1) * sv[i] ** -2
            for i, j, d in outer.pair_diffs():
                out = out * (d / (sv[i] * sv[j])) ** (2 * g)
        if inner is not None and outer is not None:
            for i in range(p):
                for j in range(n - p):
                    out = out * (1 / outer.t[j] - inner.t[i]) ** (2 * g)
        return out

    return f, n


def _okounkov_olshanski(spec):
    """Inner integral of the interlacing formula at n = 2 (one y between x_1 and x_2)."""
    lam = Partition(spec["lam"])
    g = float(spec["gamma"])
    x1, x2 = (float(v) for v in spec["x"])
    r = lam.part(1) if lam.length else 0
    w = x2 - x1

    def f(u, uc):
        y = x1 + w * u[0]
        return w * y**r * (w * u[0]) ** (g - 1) * (w * uc[0]) ** (g - 1)

    return f, 1


_BUILDERS = {
    "selberg": _selberg_like, "kadell": _selberg_like, "hua_kadell": _selberg_like,
    "euler_2f1": _selberg_like, "mehta": _mehta, "laguerre": _laguerre, "cauchy_sc": _cauchy,
    "askey_richards": _askey_richards, "dixon_anderson": _dixon_anderson,
    "dotsenko_fateev": _dotsenko_fateev, "okounkov_olshanski": _okounkov_olshanski,
}

DEFAULT_TOL = {1: 1e-8, 2: 1e-6, 3: 1e-4}


def quad_integrate(spec: DensitySpec, rel_tol: float | None = None, **kw) -> IntegrationResult:
    """Tanh-sinh quadrature of a family's integrand (dimension at most 3)."""
    if spec.family == "morris":
        raise DomainError("the Morris integrand lives on the torus; use torus_quadrature")
    f, dim = _BUILDERS[spec.family](spec)
    if spec.family in ("mehta", "laguerre"):
        # gaps enter as exp(pi sinh t): beyond |t| = 3 they are below 1e-13 or astronomically large
        kw.setdefault("tmax", 3.0)
    if dim > 3:
        raise DomainError("quadrature is limited to three dimensions")
    tol = DEFAULT_TOL[dim] if rel_tol is None else rel_tol
    return de_integrate(f, dim, rel_tol=tol, **kw)


def closed_form(spec: DensitySpec):
    """Closed-form value of the integral that quad_integrate / mc_integrate estimate."""
    fam, n, p = spec.family, spec.n, spec.params
    if fam == "selberg":
        return cf.selberg_rhs(n, p["alpha"], p["beta"], p["gamma"]).value()
    if fam == "kadell":
        return cf.kadell_rhs(p["lam"], n, p["alpha"], p["beta"], p["gamma"])
    if fam == "hua_kadell":
        if p["beta"] != p["gamma"]:
            raise DomainError("the double-Jack evaluation needs beta = gamma")
        return cf.hua_kadell_rhs(p["lam"], p["mu"], n, p["alpha"], p["gamma"])
    if fam == "mehta":
        return cf.mehta_rhs(n, p["gamma"]).value()
    if fam == "laguerre":
        return cf.laguerre_rhs(n, p["alpha"], p["gamma"]).value()
    if fam == "cauchy_sc":
        return cf.cauchy_sc_rhs(n, p["alpha"], p["beta"], p["gamma"]).value()
    if fam == "askey_richards":
        return cf.askey_richards_rhs(n, p["alpha"], p["beta"], p["gamma"]).value()
    if fam == "dixon_anderson":
        return cf.dixon_anderson_rhs(p["nodes"], p["s"]).value()
    if fam == "dotsenko_fateev":
        return cf.dotsenko_fateev_chain(n, p["p"], p["alpha"], p["beta"], p["gamma"]).value()
    if fam == "euler_2f1":
        # integral only; the prefactor turns it into the Jack 2F1
        b, c, g = p["b"], p["c"], p["gamma"]
        if p["z"] == 1:
            return (cf.gauss_2f1_rhs(n, p["a"], b, c, g) / cf.euler_2f1_prefactor(n, b, c, g)).value()
        raise DomainError("no closed form for the Euler integral away from z = 0, 1")
    if fam == "okounkov_olshanski":
        lam, g, x = p["lam"], p["gamma"], p["x"]
        return okounkov_olshanski_direct(lam, g, x) / okounkov_olshanski_prefactor(lam, g, x)
    if fam == "morris":
        return cf.morris_rhs(n, p["a"], p["b"], p["gamma"]).value()
    raise DomainError(f"no closed form registered for {fam}")


def euler_2f1_spec(n, a, b, c, gamma, z) -> DensitySpec:
    """DensitySpec for the Euler-type integral, with alpha, beta derived from b, c."""
    return DensitySpec("euler_2f1", n, dict(a=a, b=b, c=c, gamma=gamma, z=z,
                                            alpha=b - (n - 1) * gamma, beta=c - b - (n - 1) * gamma))


def okounkov_olshanski_direct(lam, gamma, x):
    """Right side evaluated directly: P_lam(x_1, x_2)."""
    lam = Partition(lam)
    return float(jack(lam, 2, as_fraction(gamma)).evaluate([as_fraction(v) for v in x]))


def okounkov_olshanski_prefactor(lam, gamma, x) -> float:
    lam = Partition(lam)
    r = lam.part(1) if lam.length else 0
    x1, x2 = (float(v) for v in x)
    gamma = float(gamma)
    return math.exp(math.lgamma(r + 2 * gamma) - math.lgamma(r + gamma) - math.lgamma(gamma)) * (x2 - x1) ** (1 - 2 * gamma)


# -- Monte Carlo -----------------------------------------------------------------------------

def _mc_weights(spec: DensitySpec, rng: np.random.Generator, m: int):
    """Draw m proposal points and return their importance weights."""
    fam, n, p = spec.family, spec.n, spec.params
    if fam in ("selberg", "kadell"):
        a, b, g = p["alpha"], p["beta"], p["gamma"]
        t = rng.beta(a, b, size=(n, m))
        w = np.full(m, math.exp(n * (math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))))
        extra = _jack_numeric(p["lam"], n, g)(t) if fam == "kadell" else 1
        return w * _pair_power(t, 2 * g) * extra
    if fam == "mehta":
        t = rng.standard_normal((n, m))
        return _pair_power(t, 2 * p["gamma"])
    if fam == "laguerre":
        a = p["alpha"]
        t = rng.gamma(a, size=(n, m))
        return math.exp(n * math.lgamma(a)) / math.factorial(n) * _pair_power(t, 2 * p["gamma"])
    if fam == "askey_richards":
        a, b = p["alpha"], p["beta"]
        t = rng.beta(a, 1, size=(n, m))
        slack = 1 - t.sum(axis=0)
        inside = slack > 0
        w = np.where(inside, np.abs(slack) ** (b - 1), 0.0) / a**n
        return w * _pair_power(t, 2 * p["gamma"])
    if fam == "dixon_anderson":
        nodes, sexp = p["nodes"], p["s"]
        t = np.stack([rng.uniform(nodes[i + 1], nodes[i], m) for i in range(n)])
        w = np.ones(m)
        for i in range(n):
            w = w * (nodes[i] - nodes[i + 1])
            for j in range(n + 1):
                w = w * np.abs(t[i] - nodes[j]) ** (sexp[j] - 1)
        for i in range(n):
            for j in range(i + 1, n):
                w = w * (t[i] - t[j])
        return w
    if fam == "cauchy_sc":
        a, b, g = p["alpha"], p["beta"], p["gamma"]
        t = rng.standard_cauchy((n, m))
        w = np.prod((1 + 1j * t) ** (-a) * (1 - 1j * t) ** (-b) * (1 + t**2) / 2, axis=0)
        return w * _pair_power(t, 2 * g)
    raise DomainError(f"no Monte Carlo proposal for {fam}")


def _pair_power(t, power):
    out = np.ones(t.shape[1])
    for i in range(t.shape[0]):
        for j in range(i + 1, t.shape[0]):
            out = out * np.abs(t[i] - t[j]) ** power
    return out


def mc_integrate(spec: DensitySpec, n_samples: int, seed: int, batch: int = 1 << 17) -> IntegrationResult:
    """Importance-sampled estimate with one-body proposals; deterministic for a given seed.

    Batches draw from independent child streams of the seed and are reduced
    in a fixed order.  The weight kurtosis is tracked; a large value is
    reported as the ``heavy_tail`` flag because the error bar is then
    unreliable.
    """
    if spec.n > 6:
        raise DomainError("Monte Carlo integration is limited to six dimensions")
    nb = -(-n_samples // batch)
    streams = np.random.SeedSequence(seed).spawn(nb)
    s1 = s2 = 0.0
    s4 = 0.0
    done = 0
    for k, ss in enumerate(streams):
        m = min(batch, n_samples - done)
        w = _mc_weights(spec, np.random.default_rng(ss), m)
        s1 = s1 + np.sum(w)
        s2 = s2 + np.sum(np.abs(w) ** 2)
        s4 = s4 + np.sum(np.abs(w) ** 4)
        done += m
    mean = s1 / done
    var = max(s2 / done - abs(mean) ** 2, 0.0)
    err = math.sqrt(var / done)
    flags = []
    if var > 0:
        kurt = (s4 / done) / (s2 / done) ** 2
        if not math.isfinite(kurt) or kurt > 1e3:
            flags.append("heavy_tail")
    return IntegrationResult(mean, err, done, "mc", flags)


# -- Jackson q-sums -----------------------------------------------------------------------------

def _jackson_cutoff(alpha, q, tail_tol):
    a = max(float(np.real(alpha)), 1e-3)
    return max(2, int(math.ceil(math.log(tail_tol * (1 - q**a)) / (a * math.log(q)))) + 1)


def jackson_sum(n: int, alpha, beta, k: int, q, tail_tol: float = 1e-13, exact: bool = False) -> IntegrationResult:
    """Multiple Jackson integral with weight t^(a-1) (qt;q)_(b-1) and q-interaction of strength k.

    Each index is summed up to the point where the geometric tail bound
    q^(alpha K) / (1 - q^alpha) drops below ``tail_tol``.  With
    ``exact=True`` and rational q, integer alpha >= 1, beta >= 1 the truncated
    sum is formed in exact rational arithmetic (value is a Fraction).
    """
    if not 0 < q < 1:
        raise DomainError("Jackson sums need 0 < q < 1")
    if int(k) != k or k < 0:
        raise DomainError("the interaction exponent must be a nonnegative integer")
    if float(alpha) <= 0:
        raise DomainError("the Jackson sum diverges for alpha <= 0")
    k = int(k)
    K = _jackson_cutoff(alpha, float(q), tail_tol)
    if exact:
        return _jackson_exact(n, alpha, beta, k, as_fraction(q), K)
    qf = float(q)
    idx = np.arange(K)
    t = qf**idx
    one = t ** (alpha - 1) * t * _q_poch_real(qf * t, qf, beta - 1)
    one = one * (1 - qf)
    if n * math.log(K) > math.log(5e7):
        raise DomainError(f"Jackson sum would need {K}^{n} terms")
    total = 0.0
    grids = np.meshgrid(*([idx] * n), indexing="ij")
    val = np.ones_like(grids[0], dtype=float)
    for i in range(n):
        val = val * one[grids[i]]
    for i in range(n):
        for j in range(i + 1, n):
            ti, tj = t[grids[i]], t[grids[j]]
            fac = ti ** (2 * k)
            for m in range(2 * k):
                fac = fac * (1 - qf ** (1 - k + m) * tj / ti)
            val = val * fac
    total = float(np.sum(val))
    tail = n * tail_tol * max(abs(total), 1.0)
    return IntegrationResult(total, tail, val.size, "qsum")


def _q_poch_real(a, q, order):
    if float(order).is_integer() and order >= 0:
        out = np.ones_like(a)
        for j in range(int(order)):
            out = out * (1 - a * q**j)
        return out
    return q_pochhammer(a, q, math.inf) / q_pochhammer(a * q**order, q, math.inf)


def _jackson_exact(n, alpha, beta, k, q, K):
    from fractions import Fraction

    if int(alpha) != alpha or int(beta) != beta or alpha < 1 or beta < 1:
        raise DomainError("exact Jackson sums need integer alpha, beta >= 1")
    alpha, beta = int(alpha), int(beta)
    t = [q**i for i in range(K)]
    one = []
    for ti in t:
        v = ti ** (alpha - 1) * ti * (1 - q)
        for j in range(beta - 1):
            v *= 1 - q * ti * q**j
        one.append(v)
    total = Fraction(0)
    for ks in product(range(K), repeat=n):
        v = Fraction(1)
        for i in ks:
            v *= one[i]
        for i in range(n):
            for j in range(i + 1, n):
                ti, tj = t[ks[i]], t[ks[j]]
                fac = ti ** (2 * k)
                for m in range(2 * k):
                    fac *= 1 - q ** (1 - k + m) * tj / ti
                v *= fac
        total += v
    return IntegrationResult(total, 0.0, K**n, "qsum")


# -- torus quadrature -------------------------------------------------------------------------

TORUS_INTEGRANDS = ("morris", "cue_moment", "elliptic_beta", "gustafson_n1")


def _morris_density(theta, a, b, gamma):
    """Integrand of the Morris integral at angles of shape (n, N)."""
    z = np.exp(1j * theta)
    out = np.prod(np.exp(0.5j * theta * (a - b)) * np.abs(1 + z) ** (a + b), axis=0)
    n = theta.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            out = out * np.abs(z[i] - z[j]) ** (2 * gamma)
    return out


def _torus_grid(n, m):
    th1 = -math.pi + 2 * math.pi * (np.arange(m) + 0.5) / m
    grids = np.meshgrid(*([th1] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids])


def torus_quadrature(integrand: str, params: dict, grid: int = 64) -> IntegrationResult:
    """Trapezoid rule on the n-torus with measure prod d theta / (2 pi).

    The estimate at ``grid`` points per axis is compared with the one on
    half the grid; ``coarse_grid`` is flagged when they disagree by more
    than 1e-6 relative.
    """
    if integrand not in TORUS_INTEGRANDS:
        raise DomainError(f"unknown torus integrand {integrand!r}")

    def estimate(m):
        if integrand == "morris":
            th = _torus_grid(params["n"], m)
            vals = _morris_density(th, params["a"], params["b"], params["gamma"])
        elif integrand == "cue_moment":
            th = _torus_grid(params["n"], m)
            g = params.get("beta", 2.0) / 2
            s = params["s"]
            num = np.mean(_morris_density(th, s, s, g))
            den = np.mean(_morris_density(th, 0, 0, g))
            return num / den, th.shape[1] * 2
        elif integrand == "elliptic_beta":
            th = _torus_grid(1, m)[0]
            vals = elliptic_beta_integrand(th, params["ts"], params["p"], params["q"])
        else:
            th = _torus_grid(1, m)[0]
            vals = askey_wilson_integrand(th, params["ts"], params["q"])
        return np.mean(vals), np.size(vals)

    fine, nf = estimate(grid)
    coarse, nc = estimate(grid // 2)
    err = abs(fine - coarse)
    flags = ["coarse_grid"] if err > 1e-6 * abs(fine) else []
    val = complex(fine)
    if abs(val.imag) <= 1e-12 * max(abs(val.real), 1.0):
        val = val.real
    return IntegrationResult(val, err, nf + nc, "torus", flags)

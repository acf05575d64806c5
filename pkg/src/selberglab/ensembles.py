"""Random point processes whose joint densities are Selberg-type integrands.

Every sampler is vectorised over samples: the per-sample random data are
drawn up front and the roots of all samples are located together by
bisection inside brackets supplied by interlacing, then polished by a few
guarded Newton steps.
"""
from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import stats

from . import closed_forms as cf
from .errors import AccuracyError, DomainError
from .jack import jack_eval_ones
from .partitions import Partition, as_fraction, gen_pochhammer

BISECTION_STEPS = 45
NEWTON_STEPS = 3


@dataclass
class EnsembleSample:
    """A batch of samples: ``points`` has one sorted row per sample."""
    points: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.sort(np.atleast_2d(np.asarray(self.points, dtype=float)), axis=1)

    def __len__(self):
        return self.points.shape[0]

    def __iter__(self):
        return iter(self.points)

    @property
    def n(self) -> int:
        return self.points.shape[1]

    def to_csv(self, dest=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"p{i + 1}" for i in range(self.n)])
        for row in self.points:
            w.writerow([repr(float(v)) for v in row])
        text = buf.getvalue()
        if dest is not None:
            with open(dest, "w", newline="") as fh:
                fh.write(text)
        return text


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


# -- root location -----------------------------------------------------------------------------

def _bracketed_roots(f, df, lo, hi, increasing: bool | None = None):
    """One root of f in each (lo, hi) cell; arrays of shape (m, k), evaluated elementwise.

    If ``increasing`` is None the sign at ``lo`` is measured and must differ
    from the sign at ``hi``; otherwise f is known to be monotone in each cell
    (and may be infinite at the ends, which are then never evaluated).
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    if increasing is None:
        flo, fhi = f(lo), f(hi)
        s_lo = np.sign(flo)
        if np.any(s_lo * np.sign(fhi) >= 0):
            raise AccuracyError("root bracketing failed: no sign change in a cell")
    else:
        s_lo = np.full(lo.shape, -1.0 if increasing else 1.0)
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        same = np.sign(f(mid)) == s_lo
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    x = 0.5 * (lo + hi)
    for _ in range(NEWTON_STEPS):
        d = df(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(d != 0, f(x) / d, 0.0)
        cand = x - step
        ok = np.isfinite(cand) & (cand > lo) & (cand < hi)
        x = np.where(ok, cand, x)
    return x


# -- Dirichlet weights and random rational functions -------------------------------------------

def dirichlet_sample(s, seed=None, size: int | None = None) -> np.ndarray:
    """Dirichlet D[s_1..s_k] via normalised Gamma variates; zero shapes give zero weights."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0) or not np.any(s > 0):
        raise DomainError("Dirichlet shapes must be nonnegative and not all zero")
    rng = _rng(seed)
    shape = (s.size,) if size is None else (size, s.size)
    pos = s > 0
    sub = shape[:-1] + (int(pos.sum()),)
    # log G(s) = log G(s+1) + log(U)/s: small shapes underflow to 0 if drawn directly
    logg = np.full(shape, -np.inf)
    logg[..., pos] = np.log(rng.gamma(s[pos] + 1, size=sub)) + np.log(rng.random(sub)) / s[pos]
    g = np.exp(logg - logg.max(axis=-1, keepdims=True))
    w = g / g.sum(axis=-1, keepdims=True)
    # absorb the rounding into the largest weight so the sum is 1 to within an ulp or two
    big = np.argmax(w, axis=-1)
    w2 = np.atleast_2d(w)
    b2 = np.atleast_1d(big)
    rows = np.arange(w2.shape[0])
    w2[rows, b2] = 0.0
    w2[rows, b2] = 1.0 - w2.sum(axis=1)
    return w2[0] if size is None else w2


def _rational_value(nodes, w, x, mu0=None):
    # nodes (k,), w (m, k), x (m, c)
    d = nodes[None, None, :] - x[..., None]
    val = np.sum(w[:, None, :] / d, axis=-1)
    der = np.sum(w[:, None, :] / d**2, axis=-1)
    if mu0 is not None:
        val = val + x - mu0[:, None]
        der = der + 1
    return val, der


def rational_roots(nodes, w, shape: str = "compact", mu0=None) -> EnsembleSample:
    """Zeros of sum_i w_i / (a_i - x) (compact) or x - mu0 + sum_i w_i / (a_i - x) (gaussian).

    ``w`` may be one weight vector or an (m, k) array.  Between consecutive
    poles the function is strictly increasing, so each cell holds exactly
    one root; the gaussian form has one more root on each side.
    """
    a = np.asarray(nodes, dtype=float)
    if np.any(np.diff(a) >= 0):
        raise DomainError("nodes must be strictly decreasing")
    w = np.atleast_2d(np.asarray(w, dtype=float))
    if w.shape[1] != a.size or np.any(w <= 0):
        raise DomainError("need one positive weight per node")
    m = w.shape[0]
    inner_lo = np.broadcast_to(a[1:], (m, a.size - 1))
    inner_hi = np.broadcast_to(a[:-1], (m, a.size - 1))
    if shape == "compact":
        lo, hi, mu = inner_lo, inner_hi, None
    elif shape == "gaussian":
        mu = np.atleast_1d(np.asarray(mu0, dtype=float))
        if mu.size != m:
            raise DomainError("need one mu0 per weight vector")
        spread = w.sum(axis=1) + 1
        top = np.maximum(a[0], mu) + spread
        bottom = np.minimum(a[-1], mu) - spread
        lo = np.column_stack([bottom, inner_lo, np.full(m, a[0])])
        hi = np.column_stack([np.full(m, a[-1]), inner_hi, top])
    else:
        raise DomainError(f"unknown shape {shape!r}")
    roots = _bracketed_roots(lambda x: _rational_value(a, w, x, mu)[0],
                             lambda x: _rational_value(a, w, x, mu)[1], lo, hi, increasing=True)
    return EnsembleSample(roots, dict(family=f"rational_{shape}", nodes=tuple(a)))


def rational_roots_sample(nodes, s, n_samples: int, seed=None, shape: str = "compact") -> EnsembleSample:
    """Roots with Dirichlet (compact) or Gamma + normal (gaussian) random coefficients."""
    rng = _rng(seed)
    s = np.asarray(s, dtype=float)
    if shape == "compact":
        w = dirichlet_sample(s, rng, size=n_samples)
        out = rational_roots(nodes, w, "compact")
    else:
        w = rng.gamma(s, size=(n_samples, s.size))
        mu0 = rng.standard_normal(n_samples)
        out = rational_roots(nodes, w, "gaussian", mu0)
    out.meta.update(s=tuple(s))
    return out


# -- random three-term recurrences -------------------------------------------------------------

class RandomRecurrenceState:
    """Coefficient form of the Jacobi-type recurrence for a single realisation.

    A_j = w2 (x - 1) A_{j-1} + w0 x A_{j-1} + w1 x (x - 1) A_{j-2}
    """

    def __init__(self):
        self.prev = np.zeros(1)      # A_{j-2}, lowest degree first
        self.cur = np.ones(1)        # A_{j-1}
        self.step_index = 0

    def step(self, w0, w1, w2):
        P = np.polynomial.polynomial
        lin = P.polymul([-w2, w0 + w2], self.cur)
        quad = P.polymul([0.0, -w1, w1], self.prev)
        nxt = P.polyadd(lin, quad)
        self.prev, self.cur = self.cur, nxt
        self.step_index += 1
        return nxt

    def roots(self):
        return np.sort(np.polynomial.polynomial.polyroots(self.cur).real)


def _selberg_weights(n, alpha, beta, gamma, rng, m):
    out = []
    for j in range(1, n + 1):
        aj = (n - j) * gamma + alpha
        bj = (n - j) * gamma + beta
        out.append(dirichlet_sample([bj, (j - 1) * gamma, aj], rng, size=m))
    return out


def _eval_A(weights, j, x):
    """(A_j(x), A_j'(x)) for all samples; weights[i] has shape (m, 3), x shape (m, c)."""
    pm, dpm = np.zeros_like(x), np.zeros_like(x)
    pc, dpc = np.ones_like(x), np.zeros_like(x)
    for i in range(j):
        w0, w1, w2 = (weights[i][:, k, None] for k in range(3))
        lin = (w0 + w2) * x - w2
        q = x * (x - 1)
        nxt = lin * pc + w1 * q * pm
        dnxt = (w0 + w2) * pc + lin * dpc + w1 * ((2 * x - 1) * pm + q * dpm)
        pm, dpm, pc, dpc = pc, dpc, nxt, dnxt
    return pc, dpc


def selberg_density_sample(n: int, alpha, beta, gamma, n_samples: int = 1, seed=None,
                           deterministic: bool = False) -> EnsembleSample:
    """Zeros of the random polynomial A_n; their density is the normalised Selberg integrand.

    The j-th step draws (w0, w1, w2) from Dirichlet[b_j, (j-1) gamma, a_j]
    with a_j = (n-j) gamma + alpha, b_j = (n-j) gamma + beta.  At j = 1 the
    middle shape is zero and w1 = 0.  ``deterministic`` replaces each
    Dirichlet draw by its mean.
    """
    if min(alpha, beta) <= 0 or gamma < 0:
        raise DomainError("need alpha, beta > 0 and gamma >= 0")
    rng = _rng(seed)
    if deterministic:
        weights = []
        for j in range(1, n + 1):
            s = np.array([(n - j) * gamma + beta, (j - 1) * gamma, (n - j) * gamma + alpha])
            weights.append(np.broadcast_to(s / s.sum(), (n_samples, 3)))
    else:
        weights = _selberg_weights(n, alpha, beta, gamma, rng, n_samples)
    roots = np.empty((n_samples, 0))
    for j in range(1, n + 1):
        edges = np.column_stack([np.zeros(n_samples), roots, np.ones(n_samples)])
        roots = _bracketed_roots(lambda x: _eval_A(weights, j, x)[0],
                                 lambda x: _eval_A(weights, j, x)[1], edges[:, :-1], edges[:, 1:])
    if np.any((roots <= 0) | (roots >= 1)) or not np.all(np.isfinite(roots)):
        raise AccuracyError("recurrence produced a root outside (0, 1)")
    return EnsembleSample(roots, dict(family="selberg", n=n, alpha=alpha, beta=beta, gamma=gamma))


def crystallized_roots(n: int, alpha, beta) -> np.ndarray:
    """gamma -> infinity limit of the recurrence when alpha, beta scale as gamma*alpha + 1, gamma*beta + 1.

    The Dirichlet means then tend to (n-j+beta, j-1, n-j+alpha) / (2n-j-1+alpha+beta).
    """
    st = RandomRecurrenceState()
    for j in range(1, n + 1):
        s = np.array([n - j + beta, j - 1, n - j + alpha], dtype=float)
        st.step(*(s / s.sum()))
    return st.roots()


def jacobi_zeros_unit(n: int, alpha, beta) -> np.ndarray:
    """Zeros of P_n^(alpha-1, beta-1) mapped to (0, 1) by t = (1 - x) / 2."""
    from scipy.special import roots_jacobi

    x, _ = roots_jacobi(n, alpha - 1, beta - 1)
    return np.sort((1 - x) / 2)


def _eval_C(r, s, j, x):
    pm, dpm = np.zeros_like(x), np.zeros_like(x)
    pc, dpc = np.ones_like(x), np.zeros_like(x)
    for i in range(j):
        ri = r[:, i, None]
        si = s[:, i - 1, None] if i >= 1 else 0.0
        nxt = (x - ri) * pc - si * pm
        dnxt = pc + (x - ri) * dpc - si * dpm
        pm, dpm, pc, dpc = pc, dpc, nxt, dnxt
    return pc, dpc


def hermite_beta_sample(n: int, gamma, method: str = "tridiagonal", n_samples: int = 1,
                        seed=None) -> EnsembleSample:
    """Points with density prop. to exp(-sum t^2/2) |Delta|^(2 gamma).

    recurrence: zeros of C_j = (x - r_j) C_{j-1} - s_{j-1} C_{j-2}, found
    step by step inside the interlacing brackets.
    tridiagonal: eigenvalues of the symmetric tridiagonal matrix with the
    same entries (diagonal r, squared off-diagonal s).
    In both, r ~ N(0,1) and s_j ~ Gamma(j gamma, 1).
    """
    if gamma <= 0:
        raise DomainError("need gamma > 0")
    rng = _rng(seed)
    r = rng.standard_normal((n_samples, n))
    s = rng.gamma(gamma * np.arange(1, n), size=(n_samples, n - 1)) if n > 1 else np.zeros((n_samples, 0))
    meta = dict(family="hermite", n=n, gamma=gamma, method=method)
    if method == "tridiagonal":
        mats = np.zeros((n_samples, n, n))
        idx = np.arange(n)
        mats[:, idx, idx] = r
        if n > 1:
            b = np.sqrt(s)
            mats[:, idx[:-1], idx[1:]] = b
            mats[:, idx[1:], idx[:-1]] = b
        return EnsembleSample(np.linalg.eigvalsh(mats), meta)
    if method != "recurrence":
        raise DomainError(f"unknown method {method!r}")
    # Gershgorin bound for every C_j of the sample
    bound = np.max(np.abs(r), axis=1) + 2 * (np.sqrt(s).max(axis=1) if n > 1 else 0) + 1
    roots = np.empty((n_samples, 0))
    for j in range(1, n + 1):
        edges = np.column_stack([-bound, roots, bound])
        roots = _bracketed_roots(lambda x: _eval_C(r, s, j, x)[0],
                                 lambda x: _eval_C(r, s, j, x)[1], edges[:, :-1], edges[:, 1:])
    return EnsembleSample(roots, meta)


# -- circular ensembles -----------------------------------------------------------------------

def haar_unitary_angles(n: int, n_samples: int, seed=None) -> EnsembleSample:
    """Eigenangles of Haar unitary matrices (QR of complex Ginibre with the phase fix)."""
    rng = _rng(seed)
    z = (rng.standard_normal((n_samples, n, n)) + 1j * rng.standard_normal((n_samples, n, n))) / math.sqrt(2)
    qm, rm = np.linalg.qr(z)
    d = np.diagonal(rm, axis1=1, axis2=2)
    qm = qm * (d / np.abs(d))[:, None, :]
    ang = np.angle(np.linalg.eigvals(qm))
    return EnsembleSample(ang, dict(family="circular", n=n, beta=2.0))


# -- Metropolis ---------------------------------------------------------------------------------

DENSITIES = ("circular", "laguerre", "selberg")


def _log_density(density: str, params: dict, x: np.ndarray) -> np.ndarray:
    """Unnormalised log density for an (m, n) array of states; -inf outside the support."""
    n = x.shape[1]
    iu = np.triu_indices(n, 1)
    if density == "circular":
        diff = np.abs(np.exp(1j * x[:, iu[0]]) - np.exp(1j * x[:, iu[1]]))
        with np.errstate(divide="ignore"):
            return params["beta"] * np.sum(np.log(diff), axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        pair = 2 * params["gamma"] * np.sum(np.log(np.abs(x[:, iu[0]] - x[:, iu[1]])), axis=1)
        if density == "laguerre":
            a = (params["m"] - n + 1) * params["gamma"]
            out = np.sum((a - 1) * np.log(x) - x, axis=1) + pair
            return np.where(np.all(x > 0, axis=1), out, -np.inf)
        if density == "selberg":
            out = np.sum((params["alpha"] - 1) * np.log(x) + (params["beta"] - 1) * np.log1p(-x), axis=1) + pair
            return np.where(np.all((x > 0) & (x < 1), axis=1), out, -np.inf)
    raise DomainError(f"unknown density {density!r}")


def _start(density, params, n, rng, chains):
    if density == "circular":
        return rng.uniform(-math.pi, math.pi, (chains, n))
    if density == "laguerre":
        a = (params["m"] - n + 1) * params["gamma"]
        return rng.gamma(max(a, 0.5), size=(chains, n)) + 1e-3
    return rng.uniform(0.05, 0.95, (chains, n))


@dataclass
class MetropolisRun:
    samples: np.ndarray          # (chains, kept, n)
    acceptance: float
    step_size: float
    density: str
    params: dict

    def pooled(self) -> EnsembleSample:
        pts = self.samples.reshape(-1, self.samples.shape[-1])
        return EnsembleSample(pts, dict(family=self.density, **self.params))

    def last(self) -> EnsembleSample:
        return EnsembleSample(self.samples[:, -1, :], dict(family=self.density, **self.params))


def metropolis_sample(density: str, params: dict, n: int, n_steps: int = 2000, burn_in: int = 500,
                      thinning: int = 10, chains: int = 64, seed=None, target: float = 0.3) -> MetropolisRun:
    """Random-walk Metropolis on all coordinates at once, many independent chains in lockstep.

    The step size is adapted during burn-in towards ``target`` acceptance
    and frozen afterwards.
    """
    if density not in DENSITIES:
        raise DomainError(f"unknown density {density!r}")
    rng = _rng(seed)
    x = _start(density, params, n, rng, chains)
    lp = _log_density(density, params, x)
    log_step = math.log(0.5 / math.sqrt(n))
    accepted = 0
    kept = []
    for it in range(burn_in + n_steps):
        step = math.exp(log_step)
        prop = x + step * rng.standard_normal(x.shape)
        if density == "circular":
            prop = (prop + math.pi) % (2 * math.pi) - math.pi
        lq = _log_density(density, params, prop)
        acc = np.log(rng.random(chains)) < lq - lp
        x = np.where(acc[:, None], prop, x)
        lp = np.where(acc, lq, lp)
        rate = acc.mean()
        if it < burn_in:
            log_step += (rate - target) / math.sqrt(it + 1)
        else:
            accepted += acc.sum()
            if (it - burn_in + 1) % thinning == 0:
                kept.append(x.copy())
    acceptance = accepted / (chains * n_steps) if n_steps else float("nan")
    if not 0.1 <= acceptance <= 0.9:
        warnings.warn(f"Metropolis acceptance {acceptance:.2f} outside [0.1, 0.9]", RuntimeWarning)
    samples = np.stack(kept, axis=1) if kept else np.empty((chains, 0, n))
    return MetropolisRun(np.sort(samples, axis=-1), float(acceptance), math.exp(log_step), density, dict(params))


# -- closed-form moments and reports --------------------------------------------------------------

def elementary(points: np.ndarray, r: int) -> np.ndarray:
    """e_r of each row."""
    m, n = points.shape
    e = np.zeros((m, n + 1))
    e[:, 0] = 1
    for j in range(n):
        e[:, 1:j + 2] = e[:, 1:j + 2] + points[:, j, None] * e[:, 0:j + 1]
    return e[:, r]


def selberg_er_moment(r: int, n: int, alpha, beta, gamma) -> float:
    """<e_r> under the normalised Selberg density (Jack average with lam = 1^r)."""
    lam = Partition((1,) * r)
    g = as_fraction(gamma)
    a, b = as_fraction(alpha), as_fraction(beta)
    ratio = gen_pochhammer(a + (n - 1) * g, lam, g) / gen_pochhammer(a + b + 2 * (n - 1) * g, lam, g)
    return float(ratio * jack_eval_ones(lam, n, g))


def laguerre_er_moment(r: int, n: int, alpha, gamma) -> float:
    """<e_r> under exp(-t) t^(alpha-1) |Delta|^(2 gamma)."""
    out = float(math.comb(n, r))
    for i in range(1, r + 1):
        out *= alpha + (n - i) * gamma
    return out


def laguerre_en_from_norm(n: int, alpha, gamma) -> float:
    """<t_1...t_n> as a ratio of two normalisations."""
    return (cf.laguerre_rhs(n, alpha + 1, gamma) / cf.laguerre_rhs(n, alpha, gamma)).value()


@dataclass
class MomentRow:
    moment: str
    empirical: float
    closed_form: float
    std_error: float

    @property
    def z_score(self) -> float:
        if self.std_error == 0:
            return 0.0 if self.empirical == self.closed_form else math.inf
        return (self.empirical - self.closed_form) / self.std_error


def _mean_se(values: np.ndarray, groups: int | None = None):
    """Mean and standard error; with ``groups`` the values are (groups, per_group) chain blocks."""
    if groups:
        block = values.reshape(groups, -1).mean(axis=1)
        return float(block.mean()), float(block.std(ddof=1) / math.sqrt(groups))
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size))


def moment_report(samples, family: str, params: dict, chains: int | None = None) -> list:
    """Empirical moments against closed forms; ``samples`` is an EnsembleSample or (m, n) array.

    For Metropolis output pass the pooled points and the number of chains;
    standard errors then come from the spread of the per-chain means.
    """
    pts = samples.points if isinstance(samples, EnsembleSample) else np.asarray(samples, dtype=float)
    if pts.shape[0] < 1000:
        raise DomainError("moment reports need at least 1000 samples")
    n = pts.shape[1]
    rows = []
    if family == "selberg":
        for r in range(1, n + 1):
            emp, se = _mean_se(elementary(pts, r), chains)
            rows.append(MomentRow(f"e{r}", emp, selberg_er_moment(r, n, params["alpha"], params["beta"], params["gamma"]), se))
    elif family == "laguerre":
        a = (params["m"] - n + 1) * params["gamma"] if "m" in params else params["alpha"]
        for r in range(1, n + 1):
            emp, se = _mean_se(elementary(pts, r), chains)
            rows.append(MomentRow(f"e{r}", emp, laguerre_er_moment(r, n, a, params["gamma"]), se))
        emp, se = _mean_se(elementary(pts, n), chains)
        rows.append(MomentRow(f"e{n}/normalisation", emp, laguerre_en_from_norm(n, a, params["gamma"]), se))
    elif family == "hermite":
        g = params["gamma"]
        emp, se = _mean_se(np.sum(pts**2, axis=1), chains)
        rows.append(MomentRow("p2", emp, n + g * n * (n - 1), se))
        emp, se = _mean_se(np.sum(pts, axis=1), chains)
        rows.append(MomentRow("p1", emp, 0.0, se))
    elif family == "circular":
        beta = params.get("beta", 2.0)
        lam = np.prod(np.abs(1 + np.exp(1j * pts)) ** 2, axis=1)
        emp, se = _mean_se(lam, chains)
        rows.append(MomentRow("|char(-1)|^2", emp, cf.cue_moment_rhs(n, 1, beta).value(), se))
    else:
        raise DomainError(f"no moment table for {family!r}")
    return rows


# -- distributional comparisons ---------------------------------------------------------------

def ks_two_sample(x, y) -> float:
    """p-value of the two-sample Kolmogorov-Smirnov test."""
    return float(stats.ks_2samp(np.ravel(x), np.ravel(y)).pvalue)


def decimated_spacing(angles: np.ndarray, every: int, rng) -> np.ndarray:
    """One cyclic nearest-neighbour spacing per sample from every ``every``-th sorted angle.

    The offset and which spacing is reported are both chosen uniformly at
    random, so the statistic depends only on the point set up to rotation.
    """
    m, n = angles.shape
    a = np.sort(np.mod(angles, 2 * math.pi), axis=1)
    off = rng.integers(0, every, m)
    idx = off[:, None] + every * np.arange(n // every)[None, :]
    sub = np.take_along_axis(a, idx, axis=1)
    gaps = np.diff(np.column_stack([sub, sub[:, :1] + 2 * math.pi]), axis=1)
    pick = rng.integers(0, gaps.shape[1], m)
    return gaps[np.arange(m), pick]


def circular_sample(n: int, beta: float, n_samples: int, seed=None, burn_in: int = 600) -> EnsembleSample:
    """Approximately independent draws from the circular ensemble: the final states of parallel chains."""
    run = metropolis_sample("circular", dict(beta=beta), n, n_steps=thin_steps(n), burn_in=burn_in,
                            thinning=thin_steps(n), chains=n_samples, seed=seed)
    return run.last()


def thin_steps(n: int) -> int:
    return 20 * n

"""Root systems and the constant-term identities built on them.

Roots are integer vectors in an ambient lattice; a root ``alpha`` is
turned into the monomial x**alpha.  For the BC-type systems the ambient
coordinates are the z_i = exp(eps_i), so the long roots 2 eps_i become z_i**2.
The exceptional systems beyond G2 are not provided.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import CTFactor, LaurentPoly, build_ct_product, q_binomial, q_divexact, q_factorial
from .errors import ConfigError, DomainError


@dataclass(frozen=True)
class RootSystem:
    name: str
    dim: int
    positive_roots: tuple
    simple_roots: tuple = field(default=())

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def roots(self) -> tuple:
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    def doubling(self, root) -> int:
        """2 if root/2 is also a root (only in BC), else 1."""
        half = tuple(c / 2 for c in root)
        if any(c % 2 for c in root):
            return 1
        return 2 if tuple(int(c) for c in half) in set(self.roots) else 1

    def height(self, root) -> int:
        return sum(_simple_coords(self, tuple(root)))

    def reflect(self, root, by) -> tuple:
        ip = sum(a * b for a, b in zip(root, by))
        nn = sum(b * b for b in by)
        return tuple(Fraction(a) - Fraction(2 * ip, nn) * b for a, b in zip(root, by))

    def is_reflection_closed(self) -> bool:
        allr = set(self.roots)
        return all(self.reflect(r, s) in allr for s in self.simple_roots for r in allr)


def _unit(n, i, s=1):
    v = [0] * n
    v[i] = s
    return v


def _vec(*parts):
    return tuple(sum(x) for x in zip(*parts))


def _find_simple(pos: list) -> tuple:
    posset = set(pos)
    simple = []
    for r in pos:
        decomposable = any(
            tuple(a - b for a, b in zip(r, s)) in posset for s in pos if s != r
        )
        if not decomposable:
            simple.append(r)
    return tuple(simple)


def _simple_coords(rs: RootSystem, root: tuple) -> list:
    # Solve root = sum c_i simple_i exactly (least-squares normal equations in Fractions)
    S = [list(map(Fraction, s)) for s in rs.simple_roots]
    k = len(S)
    G = [[sum(a * b for a, b in zip(S[i], S[j])) for j in range(k)] for i in range(k)]
    rhs = [sum(a * b for a, b in zip(S[i], root)) for i in range(k)]
    # Gaussian elimination
    M = [G[i] + [rhs[i]] for i in range(k)]
    for c in range(k):
        piv = next(r for r in range(c, k) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        for r in range(k):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    coords = [M[i][k] / M[i][i] for i in range(k)]
    if any(c.denominator != 1 for c in coords):
        raise ValueError(f"{root} is not an integer combination of simple roots")
    return [int(c) for c in coords]


def root_system(name: str) -> RootSystem:
    """Build A_r, B_r, C_r, D_r, BC_r or G2 from a name such as 'A2' or 'BC3'."""
    kind = name.rstrip("0123456789").upper()
    digits = name[len(kind):]
    if not digits:
        raise ConfigError(f"root system name {name!r} lacks a rank")
    r = int(digits)
    pos = []
    if kind == "A":
        n = r + 1
        for i in range(n):
            for j in range(i + 1, n):
                pos.append(_vec(_unit(n, i), _unit(n, j, -1)))
        dim = n
    elif kind in ("B", "C", "D", "BC"):
        n = r
        for i in range(n):
            for j in range(i + 1, n):
                pos.append(_vec(_unit(n, i), _unit(n, j, -1)))
                pos.append(_vec(_unit(n, i), _unit(n, j)))
            if kind in ("B", "BC"):
                pos.append(tuple(_unit(n, i)))
            if kind in ("C", "BC"):
                pos.append(tuple(_unit(n, i, 2)))
        dim = n
        if kind == "D" and r < 2:
            raise ConfigError("D_r needs r >= 2")
    elif kind == "G" and r == 2:
        a1 = (1, -1, 0)
        a2 = (-2, 1, 1)
        combos = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
        pos = [tuple(c1 * x + c2 * y for x, y in zip(a1, a2)) for c1, c2 in combos]
        dim = 3
    else:
        raise ConfigError(f"unsupported root system {name!r}")
    pos = [tuple(p) for p in pos]
    return RootSystem(f"{kind}{r}", dim, tuple(pos), _find_simple(pos))


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a, b):
    a = list(a)
    while b and b[-1] == 0:
        b = b[:-1]
    q = [0] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = Fraction(a[i + len(b) - 1], b[-1])
        if c.denominator != 1:
            raise ValueError("inexact division")
        c = int(c)
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ValueError("division left a remainder")
    return q


def _one_minus_t(k):
    p = [0] * (k + 1)
    p[0] = 1
    p[k] -= 1
    return p


def degrees(rs: RootSystem) -> tuple:
    """Degrees d_i from prod_{a>0} (1 - t^(ht a + s(a))) / (1 - t^(ht a)) = prod (1 - t^d_i)/(1 - t)."""
    num, den = [1], [1]
    for root in rs.positive_roots:
        h = rs.height(root)
        s = rs.doubling(root)
        num = _poly_mul(num, _one_minus_t(h + s))
        den = _poly_mul(den, _one_minus_t(h))
    quotient = _poly_divexact(num, den)
    full = list(quotient)
    for _ in range(rs.rank):
        full = _poly_mul(full, _one_minus_t(1))
    out = []
    while len(out) < rs.rank:
        nz = next(i for i in range(1, len(full)) if full[i] != 0)
        mult = -full[nz]
        if mult <= 0:
            raise ValueError(f"generating function of {rs.name} does not factor into (1 - t^d) terms")
        for _ in range(mult):
            full = _poly_divexact(full, _one_minus_t(nz))
            out.append(nz)
    while full and full[-1] == 0:
        full.pop()
    if full != [1]:
        raise ValueError(f"leftover factor while extracting degrees of {rs.name}")
    return tuple(sorted(out))


# -- constant-term products --------------------------------------------------------

def dyson_product(a) -> LaurentPoly:
    n = len(a)
    fs = []
    for i in range(n):
        for j in range(n):
            if i != j:
                fs.append(CTFactor(tuple(_vec(_unit(n, i), _unit(n, j, -1))), a[i]))
    return build_ct_product(n, fs)


def q_dyson_product(a) -> LaurentPoly:
    n = len(a)
    fs = []
    for i in range(n):
        for j in range(i + 1, n):
            e = tuple(_vec(_unit(n, i), _unit(n, j, -1)))
            fs.append(CTFactor(e, q_order=a[i]))
            fs.append(CTFactor(tuple(-c for c in e), q_shift=1, q_order=a[j]))
    return build_ct_product(n, fs, has_q=True)


def morris_product(n: int, a: int, b: int, k: int) -> LaurentPoly:
    """prod_j (1 - x_j)^a (1 - 1/x_j)^b prod_{i<j} ((1 - x_i/x_j)(1 - x_j/x_i))^k."""
    fs = []
    for j in range(n):
        fs.append(CTFactor(tuple(_unit(n, j)), a))
        fs.append(CTFactor(tuple(_unit(n, j, -1)), b))
        for i in range(j):
            e = tuple(_vec(_unit(n, i), _unit(n, j, -1)))
            fs.append(CTFactor(e, k))
            fs.append(CTFactor(tuple(-c for c in e), k))
    return build_ct_product(n, fs)


def q_morris_product(n: int, a: int, b: int, k: int) -> LaurentPoly:
    fs = []
    for j in range(n):
        fs.append(CTFactor(tuple(_unit(n, j)), q_order=a))
        fs.append(CTFactor(tuple(_unit(n, j, -1)), q_shift=1, q_order=b))
        for i in range(j):
            e = tuple(_vec(_unit(n, i), _unit(n, j, -1)))
            fs.append(CTFactor(e, q_order=k))
            fs.append(CTFactor(tuple(-c for c in e), q_shift=1, q_order=k))
    return build_ct_product(n, fs, has_q=True)


def macdonald_product(rs: RootSystem, k: int) -> LaurentPoly:
    """prod over all roots of (1 - x^alpha)^k."""
    return build_ct_product(rs.dim, [CTFactor(r, k) for r in rs.roots])


def q_macdonald_product(rs: RootSystem, k: int) -> LaurentPoly:
    """prod_{a>0} prod_{i=1}^k (1 - q^(s(i-1)) x^-a)(1 - q^(s i) x^a), s the doubling of a."""
    fs = []
    for r in rs.positive_roots:
        s = rs.doubling(r)
        neg = tuple(-c for c in r)
        for i in range(1, k + 1):
            fs.append(CTFactor(neg, q_shift=s * (i - 1)))
            fs.append(CTFactor(r, q_shift=s * i))
    return build_ct_product(rs.dim, fs, has_q=True)


def bcs_product(k1: int, k2: int, k3: int, n: int) -> LaurentPoly:
    """prod over BC_n roots (1 - x^a)^(k_a): short eps_i -> k1, middle -> k2, long 2 eps_i -> k3."""
    rs = root_system(f"BC{n}")
    fs = []
    for r in rs.roots:
        nz = [c for c in r if c]
        if len(nz) == 2:
            k = k2
        elif abs(nz[0]) == 2:
            k = k3
        else:
            k = k1
        fs.append(CTFactor(r, k))
    return build_ct_product(n, fs)


# -- right-hand sides -----------------------------------------------------------------

def multinomial(a) -> int:
    out = math.factorial(sum(a))
    for x in a:
        out //= math.factorial(x)
    return out


def q_multinomial(a) -> LaurentPoly:
    den = LaurentPoly.constant(1, 0, True)
    for x in a:
        den = den * q_factorial(x)
    return q_divexact(q_factorial(sum(a)), den)


def q_morris_rhs(n: int, a: int, b: int, k: int) -> LaurentPoly:
    num = LaurentPoly.constant(1, 0, True)
    den = LaurentPoly.constant(1, 0, True)
    for j in range(n):
        num = num * q_factorial(a + b + j * k) * q_factorial((j + 1) * k)
        den = den * q_factorial(a + j * k) * q_factorial(b + j * k) * q_factorial(k)
    return q_divexact(num, den)


def macdonald_rhs(rs: RootSystem, k: int) -> int:
    out = 1
    for d in degrees(rs):
        out *= math.comb(d * k, k)
    return out


def q_macdonald_rhs(rs: RootSystem, k: int) -> LaurentPoly:
    out = LaurentPoly.constant(1, 0, True)
    for d in degrees(rs):
        out = out * q_binomial(d * k, k)
    return out


def bcs_rhs(k1: int, k2: int, k3: int, n: int) -> Fraction:
    f = math.factorial
    out = Fraction(1)
    for i in range(n):
        out *= Fraction(
            f(k2 + i * k2) * f(2 * k1 + 2 * k3 + 2 * i * k2) * f(2 * k3 + 2 * i * k2),
            f(k2) * f(k1 + k3 + i * k2) * f(k3 + i * k2) * f(k1 + 2 * k3 + (n + i - 1) * k2),
        )
    return out


def bcs_selberg_form(k1, k2, k3, n) -> float:
    """The same constant term written through the Selberg product (floating point)."""
    from .closed_forms import selberg_rhs

    expo = n * (k1 + 2 * k3) + n * (n - 1) * k2
    s = selberg_rhs(n, k1 + k3 + 0.5, k3 + 0.5, k2)
    return math.exp(s.log + expo * math.log(4) - n * math.log(math.pi)) * s.sign


# -- verification -------------------------------------------------------------------------

@dataclass
class CTCheck:
    identity: str
    params: dict
    lhs: object
    rhs: object
    terms: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def verify_ct(identity: str, **params) -> CTCheck:
    """Expand the product, take the constant term, compare with the closed form exactly."""
    if identity == "dyson":
        a = tuple(params["a"])
        p = dyson_product(a)
        return CTCheck(identity, params, p.constant_term(), Fraction(multinomial(a)), len(p))
    if identity == "q_dyson":
        a = tuple(params["a"])
        p = q_dyson_product(a)
        return CTCheck(identity, params, p.constant_term(), q_multinomial(a), len(p))
    if identity == "morris":
        n, a, b, k = params["n"], params["a"], params["b"], params["k"]
        p = morris_product(n, a, b, k)
        from .closed_forms import morris_exact

        return CTCheck(identity, params, p.constant_term(), morris_exact(n, a, b, k), len(p))
    if identity == "q_morris":
        n, a, b, k = params["n"], params["a"], params["b"], params["k"]
        p = q_morris_product(n, a, b, k)
        return CTCheck(identity, params, p.constant_term(), q_morris_rhs(n, a, b, k), len(p))
    if identity == "macdonald":
        rs = root_system(params["system"])
        p = macdonald_product(rs, params["k"])
        return CTCheck(identity, params, p.constant_term(), Fraction(macdonald_rhs(rs, params["k"])), len(p))
    if identity == "q_macdonald":
        rs = root_system(params["system"])
        p = q_macdonald_product(rs, params["k"])
        return CTCheck(identity, params, p.constant_term(), q_macdonald_rhs(rs, params["k"]), len(p))
    if identity == "bcs":
        return verify_bcs(params["k1"], params["k2"], params["k3"], params["n"])
    raise DomainError(f"unknown constant-term identity {identity!r}")


def verify_bcs(k1: int, k2: int, k3: int, n: int) -> CTCheck:
    p = bcs_product(k1, k2, k3, n)
    return CTCheck("bcs", dict(k1=k1, k2=k2, k3=k3, n=n), p.constant_term(), bcs_rhs(k1, k2, k3, n), len(p))


def compositions(total_max: int, n: int):
    """All nonnegative integer vectors of length n with sum <= total_max."""
    for a in product(range(total_max + 1), repeat=n):
        if sum(a) <= total_max:
            yield a

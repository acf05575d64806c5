"""Exact sparse Laurent polynomials over the rationals.

Exponent vectors are packed into a single Python int (balanced base 2**20
digits) so that monomial multiplication is one integer addition.  A
polynomial may carry an extra trailing variable ``q`` whose exponent must
stay nonnegative; constant-term extraction never touches it.

Coefficients are stored as ``int`` when integral and ``Fraction`` otherwise;
both are exact rationals and the public accessors always hand back
``Fraction``.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import ArityError, TermCeilingError

Rational = Fraction

_SHIFT = 20
_BASE = 1 << _SHIFT
_HALF = _BASE >> 1
_MASK = _BASE - 1
_MAX_EXP = _HALF - 1

DEFAULT_TERM_CEILING = 10**7
_term_ceiling = DEFAULT_TERM_CEILING


@contextmanager
def term_ceiling(limit: int):
    """Temporarily change the maximum number of terms an expansion may hold."""
    global _term_ceiling
    old = _term_ceiling
    _term_ceiling = int(limit)
    try:
        yield
    finally:
        _term_ceiling = old


def _pack(exps: Sequence[int]) -> int:
    key = 0
    for e in reversed(exps):
        if not -_MAX_EXP <= e <= _MAX_EXP:
            raise OverflowError(f"exponent {e} out of packable range")
        key = (key << _SHIFT) + e
    return key


def _unpack(key: int, width: int) -> tuple:
    out = []
    for _ in range(width):
        d = key & _MASK
        if d >= _HALF:
            d -= _BASE
        out.append(d)
        key = (key - d) >> _SHIFT
    return tuple(out)


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, float):
        raise TypeError("float coefficients are not exact; pass a Fraction")
    return _norm(Fraction(c))


class LaurentPoly:
    """Sparse Laurent polynomial in ``nvars`` variables, optionally times powers of q."""

    __slots__ = ("nvars", "has_q", "_t", "_span")

    def __init__(self, nvars: int, terms=None, has_q: bool = False):
        self.nvars = int(nvars)
        self.has_q = bool(has_q)
        self._t: dict = {}
        self._span = 0
        if terms:
            w = self.width
            for exps, c in dict(terms).items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != w:
                    raise ArityError(f"exponent tuple {exps} has length {len(exps)}, expected {w}")
                if has_q and exps[-1] < 0:
                    raise ValueError("q exponents must be nonnegative")
                c = _norm(c)
                if c:
                    k = _pack(exps)
                    c = self._t.get(k, 0) + c
                    if c:
                        self._t[k] = _norm(c)
                    else:
                        del self._t[k]
                    self._span = max(self._span, max((abs(e) for e in exps), default=0))

    @property
    def width(self) -> int:
        return self.nvars + (1 if self.has_q else 0)

    @classmethod
    def _raw(cls, nvars, has_q, table, span):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.has_q = has_q
        p._t = table
        p._span = span
        return p

    @classmethod
    def constant(cls, c, nvars: int, has_q: bool = False) -> "LaurentPoly":
        w = nvars + (1 if has_q else 0)
        return cls(nvars, {(0,) * w: c}, has_q)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1, has_q: bool = False) -> "LaurentPoly":
        nvars = len(exps) - (1 if has_q else 0)
        return cls(nvars, {tuple(exps): coeff}, has_q)

    @classmethod
    def variable(cls, i: int, nvars: int, has_q: bool = False) -> "LaurentPoly":
        e = [0] * (nvars + (1 if has_q else 0))
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, has_q)

    @classmethod
    def q(cls, nvars: int = 0) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars + (1,): 1}, True)

    # -- inspection -------------------------------------------------------
    def __len__(self):
        return len(self._t)

    def items(self) -> Iterator[tuple]:
        """(exponent tuple, Fraction) pairs in lexicographic exponent order."""
        w = self.width
        for e, c in sorted((_unpack(k, w), c) for k, c in self._t.items()):
            yield e, Fraction(c)

    __iter__ = items

    def to_dict(self) -> dict:
        return dict(self.items())

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        if len(exps) != self.width:
            raise ArityError("exponent tuple has wrong length")
        return Fraction(self._t.get(_pack(exps), 0))

    def is_zero(self) -> bool:
        return not self._t

    def total_degree(self) -> int:
        """Largest total x-degree among the terms (q is ignored)."""
        if not self._t:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e[: self.nvars]) for e, _ in self.items())

    def is_symmetric(self) -> bool:
        from itertools import permutations

        table = self.to_dict()
        n = self.nvars
        for perm in permutations(range(n)):
            for e, c in table.items():
                pe = tuple(e[perm[i]] for i in range(n)) + e[n:]
                if table.get(pe, 0) != c:
                    return False
        return True

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars or other.has_q != self.has_q:
                raise ArityError(
                    f"arity mismatch: ({self.nvars}, q={self.has_q}) vs ({other.nvars}, q={other.has_q})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other, self.nvars, self.has_q)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = _norm(v)
            else:
                t.pop(k, None)
        return LaurentPoly._raw(self.nvars, self.has_q, t, max(self._span, other._span))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, self.has_q, {k: -c for k, c in self._t.items()}, self._span)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _norm(other)
            if not other:
                return LaurentPoly._raw(self.nvars, self.has_q, {}, 0)
            return LaurentPoly._raw(
                self.nvars, self.has_q, {k: _norm(c * other) for k, c in self._t.items()}, self._span
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        span = self._span + other._span
        if span > _MAX_EXP:
            raise OverflowError("exponents grew beyond the packable range")
        a, b = self._t, other._t
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        limit = _term_ceiling
        bi = list(b.items())
        for ka, ca in a.items():
            for kb, cb in bi:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
            if len(out) > limit:
                raise TermCeilingError(f"expansion exceeded {limit} terms")
        table = {}
        for k, c in out.items():
            if c:
                table[k] = _norm(c)
        return LaurentPoly._raw(self.nvars, self.has_q, table, span)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = LaurentPoly.constant(1, self.nvars, self.has_q)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.nvars, self.has_q)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.has_q == other.has_q and self._t == other._t

    def __hash__(self):
        return hash((self.nvars, self.has_q, frozenset(self._t.items())))

    def __repr__(self):
        if not self._t:
            return "LaurentPoly(0)"
        names = [f"x{i + 1}" for i in range(self.nvars)] + (["q"] if self.has_q else [])
        parts = []
        for e, c in self.items():
            mono = "*".join(f"{n}^{d}" if d != 1 else n for n, d in zip(names, e) if d)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # -- structural operations ---------------------------------------------
    def constant_term(self, vars: Iterable[int] | None = None):
        """Constant term in the selected x-variables (all of them by default).

        The selected variables are removed from the result.  If nothing is
        left (no remaining x-variables and no q) a Fraction is returned.
        """
        sel = sorted(set(range(self.nvars) if vars is None else vars))
        for i in sel:
            if not 0 <= i < self.nvars:
                raise ArityError(f"variable index {i} out of range")
        keep = [i for i in range(self.width) if i not in sel]
        w = self.width
        out: dict = {}
        for k, c in self._t.items():
            e = _unpack(k, w)
            if any(e[i] for i in sel):
                continue
            nk = _pack([e[i] for i in keep])
            out[nk] = out.get(nk, 0) + c
        out = {k: _norm(c) for k, c in out.items() if c}
        new_n = self.nvars - len(sel)
        if new_n == 0 and not self.has_q:
            return Fraction(out.get(0, 0))
        return LaurentPoly._raw(new_n, self.has_q, out, self._span)

    def ct_pairing(self, other: "LaurentPoly"):
        """Constant term of self * other without forming the product."""
        other = self._coerce(other)
        if self.has_q:
            return (self * other).constant_term()
        total = 0
        ot = other._t
        for k, c in self._t.items():
            d = ot.get(-k)
            if d is not None:
                total += c * d
        return Fraction(total)

    def invert_variables(self) -> "LaurentPoly":
        """f(1/x1, ..., 1/xn) (q left alone)."""
        w = self.width
        out = {}
        for k, c in self._t.items():
            e = list(_unpack(k, w))
            for i in range(self.nvars):
                e[i] = -e[i]
            out[_pack(e)] = c
        return LaurentPoly._raw(self.nvars, self.has_q, out, self._span)

    def derivative(self, i: int) -> "LaurentPoly":
        w = self.width
        out = {}
        for k, c in self._t.items():
            e = list(_unpack(k, w))
            if e[i]:
                c2 = c * e[i]
                e[i] -= 1
                out[_pack(e)] = _norm(c2)
        return LaurentPoly._raw(self.nvars, self.has_q, out, self._span + 1)

    def euler(self, i: int) -> "LaurentPoly":
        """x_i d/dx_i."""
        w = self.width
        out = {}
        for k, c in self._t.items():
            e = _unpack(k, w)[i]
            if e:
                out[k] = _norm(c * e)
        return LaurentPoly._raw(self.nvars, self.has_q, out, self._span)

    def substitute_q(self, value) -> "LaurentPoly":
        """Set q to an exact rational value, dropping the q slot."""
        if not self.has_q:
            return self
        value = Fraction(value)
        w = self.width
        out: dict = {}
        for k, c in self._t.items():
            e = _unpack(k, w)
            nk = _pack(e[:-1])
            out[nk] = out.get(nk, 0) + c * value ** e[-1]
        out = {k: _norm(c) for k, c in out.items() if c}
        return LaurentPoly._raw(self.nvars, False, out, self._span)

    def evaluate(self, point: Sequence, q=None):
        """Numerical or exact evaluation; exact when all inputs are rational."""
        if len(point) != self.nvars:
            raise ArityError("point has the wrong number of coordinates")
        vals = list(point) + ([q] if self.has_q else [])
        if self.has_q and q is None:
            raise ValueError("a value for q is required")
        total = 0
        w = self.width
        for k, c in self._t.items():
            term = c
            for v, d in zip(vals, _unpack(k, w)):
                if d:
                    term = term * v**d
            total = total + term
        return total

    def evaluate_numeric(self, point: Sequence, q=None):
        """Floating-point evaluation; coordinates may be numpy arrays."""
        if len(point) != self.nvars:
            raise ArityError("point has the wrong number of coordinates")
        vals = list(point) + ([q] if self.has_q else [])
        total = 0.0
        w = self.width
        for k, c in self._t.items():
            term = float(c)
            for v, d in zip(vals, _unpack(k, w)):
                if d:
                    term = term * v**d
            total = total + term
        return total

    def q_coefficients(self) -> list:
        """Coefficient list (constant first) of a polynomial in q alone."""
        if self.nvars != 0 or not self.has_q:
            raise ArityError("q_coefficients needs a polynomial in q only")
        if not self._t:
            return []
        deg = max(self._t)
        out = [Fraction(0)] * (deg + 1)
        for k, c in self._t.items():
            out[k] = Fraction(c)
        return out

    @classmethod
    def from_q_coefficients(cls, coeffs: Sequence) -> "LaurentPoly":
        return cls(0, {(i,): c for i, c in enumerate(coeffs) if c}, True)


# -- q-polynomial helpers --------------------------------------------------


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """a + b or a * b; arity mismatches raise ArityError."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def lp_pow(a: LaurentPoly, e: int) -> LaurentPoly:
    return a**e


def q_divexact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact division of polynomials in q; raises if a remainder is left."""
    a = num.q_coefficients()
    b = den.q_coefficients()
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    while b and b[-1] == 0:
        b.pop()
    if not a:
        return LaurentPoly(0, {}, True)
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    rem = list(a)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lead
        quot[i] = c
        if c:
            for j, bj in enumerate(b):
                rem[i + j] -= c * bj
    if any(rem):
        raise ValueError("q-polynomial division left a remainder")
    return LaurentPoly.from_q_coefficients(quot)


def q_factorial(m: int) -> LaurentPoly:
    """(q; q)_m as a polynomial in q."""
    out = LaurentPoly.constant(1, 0, True)
    for r in range(1, m + 1):
        out = out * LaurentPoly(0, {(0,): 1, (r,): -1}, True)
    return out


def q_binomial(top: int, bottom: int) -> LaurentPoly:
    """Gaussian binomial [top choose bottom]_q."""
    if bottom < 0 or bottom > top:
        return LaurentPoly(0, {}, True)
    return q_divexact(q_factorial(top), q_factorial(bottom) * q_factorial(top - bottom))


# -- constant-term product builder -------------------------------------------

@dataclass(frozen=True)
class CTFactor:
    """One factor of a constant-term product.

    With ``q_order`` unset this is ``(1 - coeff * q**q_shift * x**monomial) ** power``.
    With ``q_order = m`` it is the finite q-shifted factorial
    ``(coeff * q**q_shift * x**monomial; q)_m`` raised to ``power``.
    """

    monomial: tuple
    power: int = 1
    q_shift: int = 0
    q_order: int | None = None
    coeff: Fraction = Fraction(1)


def _binomial_expand(nvars, has_q, exps, coeff, power):
    # (1 - coeff*X)^power where X has packed exponent `exps`
    k = _pack(exps)
    coeff = _norm(coeff)
    table = {}
    for r in range(power + 1):
        c = comb(power, r) * (-coeff) ** r
        if c:
            table[k * r] = _norm(c)
    span = max((abs(e) for e in exps), default=0) * power
    return LaurentPoly._raw(nvars, has_q, table, span)


def build_ct_product(nvars: int, factors: Iterable[CTFactor], has_q: bool = False) -> LaurentPoly:
    """Expand a product of binomial or finite q-Pochhammer factors.

    Raises TermCeilingError once any partial product passes the active
    ceiling (see ``term_ceiling``).
    """
    out = LaurentPoly.constant(1, nvars, has_q)
    for f in factors:
        if f.power < 0:
            raise ValueError("negative factor powers are not supported")
        if len(f.monomial) != nvars:
            raise ArityError("factor monomial has the wrong number of exponents")
        if f.q_shift < 0:
            raise ValueError("q exponents must be nonnegative")
        if (f.q_shift or f.q_order is not None) and not has_q:
            raise ArityError("q-dependent factor in a polynomial without q")
        if f.power == 0 or f.q_order == 0:
            continue
        if f.q_order is None:
            exps = tuple(f.monomial) + ((f.q_shift,) if has_q else ())
            piece = _binomial_expand(nvars, has_q, exps, f.coeff, f.power)
            out = out * piece
        else:
            for _ in range(f.power):
                for r in range(f.q_order):
                    exps = tuple(f.monomial) + (f.q_shift + r,)
                    out = out * _binomial_expand(nvars, has_q, exps, f.coeff, 1)
        if len(out) > _term_ceiling:
            raise TermCeilingError(f"expansion exceeded {_term_ceiling} terms")
    return out


def vandermonde_power(nvars: int, power: int) -> LaurentPoly:
    """prod_{i<j} (x_i - x_j)**power as a polynomial."""
    out = LaurentPoly.constant(1, nvars)
    for i in range(nvars):
        for j in range(i + 1, nvars):
            d = LaurentPoly.variable(i, nvars) - LaurentPoly.variable(j, nvars)
            out = out * d**power
    return out

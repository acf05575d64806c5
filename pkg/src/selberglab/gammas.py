"""Log-space Gamma products with explicit sign tracking.

The heavy lifting is done by ``math.lgamma`` (real) and
``scipy.special.loggamma`` / ``psi`` / ``polygamma``.  This module adds
pole detection, sign bookkeeping and a small value type so that products of
dozens of Gamma factors never overflow.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Number

from scipy import special

from .errors import GammaPoleError


def _is_pole(x) -> bool:
    if isinstance(x, complex):
        return x.imag == 0 and _is_pole(x.real)
    return x <= 0 and float(x) == math.floor(float(x))


def log_gamma(x) -> float:
    """log|Gamma(x)| for real x; reflection is handled by lgamma itself."""
    x = float(x)
    if _is_pole(x):
        raise GammaPoleError(f"Gamma has a pole at {x}")
    return math.lgamma(x)


def gamma_sign(x) -> int:
    x = float(x)
    if _is_pole(x):
        raise GammaPoleError(f"Gamma has a pole at {x}")
    if x > 0:
        return 1
    return -1 if math.ceil(-x) % 2 else 1


def log_gamma_complex(z) -> complex:
    """Principal branch of log Gamma(z)."""
    z = complex(z)
    if _is_pole(z):
        raise GammaPoleError(f"Gamma has a pole at {z}")
    return complex(special.loggamma(z))


def digamma(x):
    if isinstance(x, complex):
        return complex(special.psi(x))
    if _is_pole(x):
        raise GammaPoleError(f"digamma has a pole at {x}")
    return float(special.psi(float(x)))


def trigamma(x):
    if _is_pole(x):
        raise GammaPoleError(f"trigamma has a pole at {x}")
    return float(special.polygamma(1, float(x)))


@dataclass(frozen=True)
class GammaProductValue:
    """sign * exp(log).  ``log`` is complex for complex products (then sign is 1)."""

    log: float | complex
    sign: int = 1

    @classmethod
    def zero(cls) -> "GammaProductValue":
        return cls(-math.inf, 0)

    @classmethod
    def one(cls) -> "GammaProductValue":
        return cls(0.0, 1)

    @classmethod
    def from_number(cls, x) -> "GammaProductValue":
        if isinstance(x, complex):
            if x == 0:
                return cls.zero()
            return cls(cmath.log(x), 1)
        x = float(x)
        if x == 0:
            return cls.zero()
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def gamma(cls, x) -> "GammaProductValue":
        if isinstance(x, complex) and x.imag != 0:
            return cls(log_gamma_complex(x), 1)
        if isinstance(x, complex):
            x = x.real
        return cls(log_gamma(x), gamma_sign(x))

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def log_abs(self) -> float:
        return self.log.real if isinstance(self.log, complex) else self.log

    def __mul__(self, other):
        if isinstance(other, Number):
            other = GammaProductValue.from_number(other)
        if self.sign == 0 or other.sign == 0:
            return GammaProductValue.zero()
        return GammaProductValue(self.log + other.log, self.sign * other.sign)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            other = GammaProductValue.from_number(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a vanishing Gamma product")
        if self.sign == 0:
            return self
        return GammaProductValue(self.log - other.log, self.sign * other.sign)

    def __pow__(self, k: int):
        if self.sign == 0:
            return self if k > 0 else GammaProductValue.one()
        return GammaProductValue(self.log * k, self.sign if k % 2 else 1)

    def value(self):
        if self.sign == 0:
            return 0.0
        if isinstance(self.log, complex):
            return self.sign * cmath.exp(self.log)
        return self.sign * math.exp(self.log)

    __float__ = lambda self: float(self.value())
    __complex__ = lambda self: complex(self.value())

    def rel_diff(self, other) -> float:
        """|self/other - 1|, computed in log space."""
        if isinstance(other, Number):
            other = GammaProductValue.from_number(other)
        if self.sign == 0 or other.sign == 0:
            return 0.0 if self.sign == other.sign else math.inf
        if self.sign != other.sign:
            return 2.0 + abs(self.log - other.log)
        return abs(cmath.exp(self.log - other.log) - 1)


def gamma_product(num=(), den=(), extra: GammaProductValue | None = None) -> GammaProductValue:
    """prod Gamma(num) / prod Gamma(den) (times ``extra``).

    A pole in the denominator makes the product vanish.  A pole in the
    numerator raises GammaPoleError, as does a 0/0 situation.
    """
    den_pole = any(_is_pole(d) for d in den)
    num_pole = [a for a in num if _is_pole(a)]
    if num_pole:
        raise GammaPoleError(f"numerator Gamma argument {num_pole[0]} is a pole")
    if den_pole:
        return GammaProductValue.zero()
    out = GammaProductValue.one() if extra is None else extra
    for a in num:
        out = out * GammaProductValue.gamma(a)
    for d in den:
        out = out / GammaProductValue.gamma(d)
    return out

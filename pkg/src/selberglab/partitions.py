"""Integer partitions and the hook-type products attached to them."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (trailing zeros dropped)."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ValueError("partition parts must be nonnegative")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts {parts} are not weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part, zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p >= j) for j in range(1, self[0] + 1))

    def cells(self) -> Iterator[tuple]:
        """(row, column) pairs, both 1-based."""
        for i, p in enumerate(self, start=1):
            for j in range(1, p + 1):
                yield i, j

    def arm(self, i: int, j: int) -> int:
        return self[i - 1] - j

    def leg(self, i: int, j: int) -> int:
        return self.conjugate()[j - 1] - i

    def padded(self, n: int) -> tuple:
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def __repr__(self):
        return f"Partition({tuple(self)})"


@lru_cache(maxsize=None)
def _partitions(weight: int, max_part: int, max_len: int) -> tuple:
    if weight == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for first in range(min(weight, max_part), 0, -1):
        for rest in _partitions(weight - first, first, max_len - 1):
            out.append((first,) + rest)
    return tuple(out)


def partitions(weight: int, max_length: int | None = None) -> list:
    """Partitions of ``weight`` in reverse lexicographic order (largest first)."""
    if max_length is None:
        max_length = weight
    return [Partition(p) for p in _partitions(weight, weight, max_length)]


def partitions_up_to(max_weight: int, max_length: int | None = None) -> list:
    out = []
    for w in range(max_weight + 1):
        out.extend(partitions(w, max_length))
    return out


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """True when mu <= lam in dominance order.  Weights must agree."""
    if sum(mu) != sum(lam):
        raise ValueError(f"dominance needs equal weights, got {sum(mu)} and {sum(lam)}")
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


def hook_products(lam: Partition, gamma):
    """(c, c') = (prod (a + l*g + g), prod (a + l*g + 1)) over the cells of lam.

    a and l are arm and leg lengths.  Exact when gamma is rational.
    """
    c = cp = 1
    conj = lam.conjugate()
    for i, j in lam.cells():
        a = lam[i - 1] - j
        l = conj[j - 1] - i
        c = c * (a + l * gamma + gamma)
        cp = cp * (a + l * gamma + 1)
    return c, cp


def gen_pochhammer(b, lam: Partition, gamma):
    """[b]_lam = prod_i (b + (1 - i) gamma)_{lam_i}, rising factorials row by row."""
    out = 1
    for i, p in enumerate(lam, start=1):
        base = b + (1 - i) * gamma
        for r in range(p):
            out = out * (base + r)
    return out


def as_fraction(x):
    """Coerce ints and Fractions to Fraction; leave floats and complex alone."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return x

"""Exact half-integer arithmetic, the modular context, and partitions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An element of (1/2)Z, stored as the doubled integer to stay exact."""

    twice: int

    @staticmethod
    def of(value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        raise TypeError("cannot build a half-integer from %r" % (value,))

    @property
    def is_integral(self) -> bool:
        return self.twice % 2 == 0

    def as_int(self) -> int:
        if not self.is_integral:
            raise ValueError("%s is not an integer" % (self,))
        return self.twice // 2

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other) -> "HalfInt":
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __lt__(self, other) -> bool:
        return self.twice < HalfInt.of(other).twice

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = HalfInt.of(other)
        return isinstance(other, HalfInt) and self.twice == other.twice

    def __hash__(self) -> int:
        return hash(("HalfInt", self.twice))

    def __str__(self) -> str:
        if self.is_integral:
            return str(self.twice // 2)
        return "%d/2" % self.twice

    __repr__ = __str__


def half(value) -> HalfInt:
    """Coerce an int, HalfInt, or string like ``-3/2`` to a HalfInt."""
    if isinstance(value, str):
        text = value.strip()
        if text.endswith("/2"):
            return HalfInt(int(text[:-2]))
        return HalfInt(2 * int(text))
    return HalfInt.of(value)


def halves(lo: HalfInt, hi: HalfInt):
    """All x with lo <= x <= hi and x - lo an integer."""
    x = lo
    while x <= hi:
        yield x
        x = x + 1


class ContextError(ValueError):
    pass


@dataclass(frozen=True)
class ModContext:
    """The coefficient regime (ell, e): characteristic and order of q.

    ``e`` is None for infinite order (characteristic-zero coefficients).
    ``ell`` may be None for finite e > 1, where the characteristic is an
    unspecified odd prime: none of the e > 1 computations depend on it.
    """

    ell: int | None
    e: int | None

    def __post_init__(self):
        if self.e is None:
            if self.ell != 0:
                raise ContextError("infinite order of q forces characteristic 0")
            return
        if self.e < 1:
            raise ContextError("e must be a positive integer or infinite")
        if self.ell == 0:
            raise ContextError("characteristic 0 forces infinite order of q")
        if self.e == 1 and self.ell is None:
            raise ContextError("e = 1 requires an explicit characteristic")
        if self.ell is not None:
            if self.ell < 2:
                raise ContextError("the characteristic must be 0 or a prime >= 2")
            if self.e > 1 and self.ell == 2:
                # q of order > 1 mod ell is impossible in characteristic 2
                # with q odd-order: e > 1 forces odd characteristic.
                raise ContextError("e > 1 is impossible in characteristic 2")

    @property
    def e_infinite(self) -> bool:
        return self.e is None

    @property
    def f(self) -> int:
        """The quantum characteristic: e if e > 1, ell if e = 1, 0 if e infinite."""
        if self.e is None:
            return 0
        if self.e > 1:
            return self.e
        return self.ell

    def f_divides(self, n: int) -> bool:
        return divides_f(self.f, n)

    def class_rep(self, a: HalfInt) -> HalfInt:
        """The representative of a mod e inside [0, e); a itself if e is infinite."""
        if self.e is None:
            return a
        return HalfInt(a.twice % (2 * self.e))

    def __str__(self) -> str:
        e_text = "inf" if self.e is None else str(self.e)
        ell_text = "?" if self.ell is None else str(self.ell)
        return "(ell=%s, e=%s)" % (ell_text, e_text)


def congruent(a: HalfInt, b: HalfInt, ctx: ModContext) -> bool:
    """Whether a - b lies in eZ (equality when e is infinite).

    A finite-e congruence requires the difference to be an integer; two
    half-integers with half-odd difference are never congruent.
    """
    a, b = HalfInt.of(a), HalfInt.of(b)
    if ctx.e is None:
        return a == b
    diff = a.twice - b.twice
    return diff % (2 * ctx.e) == 0


def divides_f(f: int, n: int) -> bool:
    """Whether the quantum characteristic f divides n; f = 0 divides nothing."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return f >= 1 and n % f == 0


def is_partition(parts) -> bool:
    parts = tuple(parts)
    return all(p >= 1 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def dominates(lam, mu) -> bool:
    """Whether the partition lam dominates mu (prefix sums of lam are >=)."""
    lam, mu = tuple(lam), tuple(mu)
    if not (is_partition(lam) and is_partition(mu)):
        raise ValueError("arguments must be partitions")
    if sum(lam) != sum(mu):
        raise ValueError("dominance compares partitions of the same integer")
    total_l = 0
    total_m = 0
    for k in range(max(len(lam), len(mu))):
        total_l += lam[k] if k < len(lam) else 0
        total_m += mu[k] if k < len(mu) else 0
        if total_l < total_m:
            return False
    return True


def strictly_dominates(lam, mu) -> bool:
    lam, mu = tuple(lam), tuple(mu)
    return lam != mu and dominates(lam, mu)


def partitions_of(n: int):
    """All partitions of n, largest part first, in lexicographic descent."""
    if n == 0:
        yield ()
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)

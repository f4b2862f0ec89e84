"""Segments and multisegments: equivalence, linking, juxtaposition, support."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .arith import HalfInt, ModContext, congruent, half, halves


@dataclass(frozen=True)
class Segment:
    """The class [a, b] of an interval of half-integers, b - a a non-negative integer."""

    a: HalfInt
    b: HalfInt

    def __post_init__(self):
        if (self.b - self.a).twice % 2 != 0:
            raise ValueError("segment endpoints must differ by an integer")
        if self.b < self.a:
            raise ValueError("segment needs a <= b")

    @property
    def length(self) -> int:
        return (self.b - self.a).as_int() + 1

    def shift(self, k) -> "Segment":
        k = HalfInt.of(k)
        return Segment(self.a + k, self.b + k)

    def contragredient(self) -> "Segment":
        return Segment(-self.b, -self.a)

    def members(self):
        return halves(self.a, self.b)

    def canonical(self, ctx: ModContext) -> "Segment":
        return self.shift(ctx.class_rep(self.a) - self.a)

    def sort_key(self):
        return (self.a.twice, self.b.twice)

    def __str__(self) -> str:
        return "[%s,%s]" % (self.a, self.b)

    __repr__ = __str__


def seg(a, b=None) -> Segment:
    a = half(a)
    b = a if b is None else half(b)
    return Segment(a, b)


@dataclass(frozen=True)
class Multisegment:
    """A formal multiset of segment classes; may be empty (the degree-0 label)."""

    segs: tuple[Segment, ...]

    @staticmethod
    def of(*segments) -> "Multisegment":
        return Multisegment(tuple(sorted(segments, key=Segment.sort_key)))

    @property
    def length(self) -> int:
        return sum(s.length for s in self.segs)

    def lam(self) -> tuple[int, ...]:
        """The partition of segment lengths, non-increasing."""
        return tuple(sorted((s.length for s in self.segs), reverse=True))

    def shift(self, k) -> "Multisegment":
        return Multisegment.of(*(s.shift(k) for s in self.segs))

    def contragredient(self) -> "Multisegment":
        return Multisegment.of(*(s.contragredient() for s in self.segs))

    def canonical(self, ctx: ModContext) -> "Multisegment":
        return Multisegment.of(*(s.canonical(ctx) for s in self.segs))

    def add(self, other: "Multisegment") -> "Multisegment":
        return Multisegment.of(*(self.segs + other.segs))

    def __str__(self) -> str:
        if not self.segs:
            return "[]"
        return " + ".join(str(s) for s in self.segs)

    __repr__ = __str__


def mseg(*pairs) -> Multisegment:
    """Build a multisegment from (a, b) pairs or bare values (singletons)."""
    built = []
    for p in pairs:
        if isinstance(p, Segment):
            built.append(p)
        elif isinstance(p, tuple):
            built.append(seg(*p))
        else:
            built.append(seg(p))
    return Multisegment.of(*built)


def lambda_of(m: Multisegment) -> tuple[int, ...]:
    return m.lam()


def seg_equivalent(d1: Segment, d2: Segment, ctx: ModContext) -> bool:
    """Equal lengths and congruent left endpoints."""
    return d1.length == d2.length and congruent(d1.a, d2.a, ctx)


def support(m: Multisegment | Segment, ctx: ModContext) -> Counter:
    """The multiset {a, a+1, ..., b} over all segments, reduced mod e."""
    segs = m.segs if isinstance(m, Multisegment) else (m,)
    out: Counter = Counter()
    for s in segs:
        for x in s.members():
            out[ctx.class_rep(x)] += 1
    return out


def linked(d1: Segment, d2: Segment, ctx: ModContext) -> bool:
    """Linking test for two segment classes.

    The segment of greater or equal length supplies the congruence targets
    (one past either end); the shorter one supplies the range for k.  Equal
    lengths test both clauses, so the relation is symmetric.
    """

    def clause(longer: Segment, shorter: Segment) -> bool:
        if longer.length < shorter.length:
            return False
        for k in shorter.members():
            if congruent(k, longer.b + 1, ctx) or congruent(k, longer.a - 1, ctx):
                return True
        return False

    return clause(d1, d2) or clause(d2, d1)


def juxtaposed(d1: Segment, d2: Segment, ctx: ModContext) -> bool:
    """Whether one segment begins right after the other ends, mod e."""
    return congruent(d2.a, d1.b + 1, ctx) or congruent(d1.a, d2.b + 1, ctx)

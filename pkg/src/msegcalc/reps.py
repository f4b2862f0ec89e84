"""Canonical labels for irreducibles, induced products, and formal sums.

An irreducible label is a bag of support components: per ramification tag a
multisegment (the tag "" is the unramified one), plus opaque cuspidal atoms.
A label with several components stands for the irreducible induced product of
its components, which have pairwise disjoint cuspidal supports.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import HalfInt, ModContext, congruent, half
from .segments import Multisegment, Segment, linked, mseg, seg

RamPart = tuple  # tuple[(tag, power), ...], sorted, no zero powers
RAM_TRIVIAL: RamPart = ()


def ram_of(tag: str, power: int = 1) -> RamPart:
    return ((tag, power),) if power else ()


def ram_mul(r1: RamPart, r2: RamPart) -> RamPart:
    acc: dict[str, int] = {}
    for tag, p in tuple(r1) + tuple(r2):
        acc[tag] = acc.get(tag, 0) + p
    return tuple(sorted((t, p) for t, p in acc.items() if p))


def ram_inv(r: RamPart) -> RamPart:
    return tuple((t, -p) for t, p in r)


@dataclass(frozen=True)
class Character:
    """nu_degree^exp times an opaque ramified part."""

    degree: int
    exp: HalfInt
    ram: RamPart = RAM_TRIVIAL

    @staticmethod
    def nu(exp, degree: int = 1) -> "Character":
        return Character(degree, half(exp))

    @staticmethod
    def one(degree: int = 1) -> "Character":
        return Character(degree, half(0))

    @property
    def segment(self) -> Segment:
        offset = HalfInt(self.degree - 1)  # (degree - 1)/2 doubled
        return Segment(self.exp - offset, self.exp + offset)

    def mul(self, other: "Character") -> "Character":
        if self.degree != other.degree:
            raise ValueError("character product needs equal degrees")
        return Character(self.degree, self.exp + other.exp, ram_mul(self.ram, other.ram))

    def inv(self) -> "Character":
        return Character(self.degree, -self.exp, ram_inv(self.ram))

    def restrict(self, degree: int) -> "Character":
        return Character(degree, self.exp, self.ram)

    def is_trivial(self, ctx: ModContext) -> bool:
        return not self.ram and self.exp.is_integral and congruent(self.exp, half(0), ctx)

    def as_irr(self, ctx: ModContext | None = None) -> "Irr":
        out = Irr(((self.ram, Multisegment.of(self.segment)),), ())
        return out.canonical(ctx) if ctx is not None else out


def chars_equal(c1: Character, c2: Character, ctx: ModContext) -> bool:
    """Equal degree and tag, and congruent exponents with integer difference."""
    return (
        c1.degree == c2.degree
        and c1.ram == c2.ram
        and congruent(c1.exp, c2.exp, ctx)
    )


@dataclass(frozen=True)
class CuspAtom:
    """An opaque cuspidal of given degree, twisted by nu^exp and a tag product."""

    degree: int
    tag: str
    exp: HalfInt
    ram: RamPart = RAM_TRIVIAL

    def sort_key(self):
        return (self.tag, self.degree, self.exp.twice, self.ram)


@dataclass(frozen=True)
class Irr:
    """Canonical label of an irreducible representation (or the degree-0 unit)."""

    zparts: tuple  # tuple[(RamPart, Multisegment), ...] sorted by ram
    cusps: tuple  # tuple[CuspAtom, ...] sorted

    @staticmethod
    def of_mseg(m: Multisegment, ram: RamPart = RAM_TRIVIAL) -> "Irr":
        if not m.segs:
            return UNIT
        return Irr(((ram, m),), ())

    @staticmethod
    def of_atom(atom: CuspAtom) -> "Irr":
        return Irr((), (atom,))

    @property
    def degree(self) -> int:
        return sum(m.length for _, m in self.zparts) + sum(a.degree for a in self.cusps)

    @property
    def is_unit(self) -> bool:
        return not self.zparts and not self.cusps

    def unramified_mseg(self) -> Multisegment | None:
        for ram, m in self.zparts:
            if ram == RAM_TRIVIAL:
                return m
        return None

    def canonical(self, ctx: ModContext) -> "Irr":
        merged: dict[RamPart, Multisegment] = {}
        for ram, m in self.zparts:
            m = m.canonical(ctx)
            merged[ram] = merged[ram].add(m) if ram in merged else m
        zparts = tuple(sorted(merged.items()))
        cusps = tuple(
            sorted(
                (
                    CuspAtom(a.degree, a.tag, ctx.class_rep(a.exp), a.ram)
                    for a in self.cusps
                ),
                key=CuspAtom.sort_key,
            )
        )
        return Irr(zparts, cusps)

    def twist(self, chi: Character) -> "Irr":
        if chi.degree != 1:
            raise ValueError("twists are by characters of degree 1")
        zparts = tuple(
            (ram_mul(ram, chi.ram), m.shift(chi.exp)) for ram, m in self.zparts
        )
        cusps = tuple(
            CuspAtom(a.degree, a.tag, a.exp + chi.exp, ram_mul(a.ram, chi.ram))
            for a in self.cusps
        )
        return Irr(tuple(sorted(zparts)), tuple(sorted(cusps, key=CuspAtom.sort_key)))

    def dual(self) -> "Irr":
        zparts = tuple(
            sorted((ram_inv(ram), m.contragredient()) for ram, m in self.zparts)
        )
        cusps = tuple(
            sorted(
                (CuspAtom(a.degree, _dual_tag(a.tag), -a.exp, ram_inv(a.ram)) for a in self.cusps),
                key=CuspAtom.sort_key,
            )
        )
        return Irr(zparts, cusps)

    def union(self, other: "Irr") -> "Irr":
        return Irr(self.zparts + other.zparts, self.cusps + other.cusps)

    def __str__(self) -> str:
        if self.is_unit:
            return "Z[]"
        parts = ["Z[%s]%s" % (m, _ram_text(ram)) for ram, m in self.zparts]
        parts += [
            "cusp(%d,%s).nu^%s%s" % (a.degree, a.tag, a.exp, _ram_text(a.ram))
            for a in self.cusps
        ]
        return " * ".join(parts)

    __repr__ = __str__


def _dual_tag(tag: str) -> str:
    return tag[:-1] if tag.endswith("*") else tag + "*"


def _ram_text(ram: RamPart) -> str:
    return "".join(".chi(%s)^%d" % (t, p) if p != 1 else ".chi(%s)" % t for t, p in ram)


UNIT = Irr((), ())


@dataclass(frozen=True)
class Expr:
    """A normalized induced product of irreducible labels, in order."""

    factors: tuple  # tuple[Irr, ...], len >= 1

    @staticmethod
    def atom(x: Irr) -> "Expr":
        return Expr((x,))

    @staticmethod
    def product(*parts) -> "Expr":
        factors = []
        for p in parts:
            if isinstance(p, Expr):
                factors.extend(p.factors)
            elif isinstance(p, Irr):
                factors.append(p)
            elif isinstance(p, Character):
                factors.append(p.as_irr())
            else:
                raise TypeError("cannot use %r as a product factor" % (p,))
        return Expr(tuple(factors))

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    @property
    def is_atom(self) -> bool:
        return len(self.factors) == 1

    def canonical(self, ctx: ModContext) -> "Expr":
        return Expr(tuple(f.canonical(ctx) for f in self.factors))

    def twist(self, chi: Character) -> "Expr":
        return Expr(tuple(f.twist(chi) for f in self.factors))

    def dual(self) -> "Expr":
        return Expr(tuple(f.dual() for f in self.factors))

    def __str__(self) -> str:
        return " x ".join("(%s)" % f if len(f.zparts) + len(f.cusps) > 1 else str(f) for f in self.factors)

    __repr__ = __str__


class GrothElt:
    """A formal non-negative-integer sum of canonical keys.

    Keys are Irr labels, Expr products, or Levi tuples (tuples of Expr).
    The lower_bound flag records that multiplicities may undercount; the key
    set itself is still complete.
    """

    def __init__(self, terms=None, lower_bound: bool = False):
        self.terms: dict = {}
        self.lower_bound = lower_bound
        if terms:
            for key, mult in dict(terms).items():
                self.add_term(key, mult)

    @staticmethod
    def single(key, mult: int = 1) -> "GrothElt":
        out = GrothElt()
        out.add_term(key, mult)
        return out

    @staticmethod
    def zero() -> "GrothElt":
        return GrothElt()

    def add_term(self, key, mult: int = 1):
        if mult < 0:
            raise ValueError("multiplicities are non-negative")
        if mult == 0:
            return
        self.terms[key] = self.terms.get(key, 0) + mult

    def add(self, other: "GrothElt") -> "GrothElt":
        out = GrothElt(self.terms, self.lower_bound or other.lower_bound)
        for key, mult in other.terms.items():
            out.add_term(key, mult)
        return out

    def subtract(self, other: "GrothElt") -> "GrothElt":
        """Exact difference; raises if any multiplicity would go negative."""
        out = GrothElt(self.terms, self.lower_bound or other.lower_bound)
        for key, mult in other.terms.items():
            have = out.terms.get(key, 0)
            if have < mult:
                raise ValueError("subtraction of %s from %s goes negative" % (key, self))
            if have == mult:
                del out.terms[key]
            else:
                out.terms[key] = have - mult
        return out

    def scale(self, c: int) -> "GrothElt":
        out = GrothElt(lower_bound=self.lower_bound)
        for key, mult in self.terms.items():
            out.add_term(key, c * mult)
        return out

    def total(self) -> int:
        return sum(self.terms.values())

    def mult_of(self, key) -> int:
        return self.terms.get(key, 0)

    def map_keys(self, fn) -> "GrothElt":
        out = GrothElt(lower_bound=self.lower_bound)
        for key, mult in self.terms.items():
            out.add_term(fn(key), mult)
        return out

    def items(self):
        return self.terms.items()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GrothElt)
            and self.terms == other.terms
            and self.lower_bound == other.lower_bound
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for key, mult in sorted(self.terms.items(), key=lambda kv: str(kv[0])):
            bits.append(str(key) if mult == 1 else "%d*%s" % (mult, key))
        text = " + ".join(bits)
        if self.lower_bound:
            text += "  (lower bounds)"
        return text

    __repr__ = __str__


# ---------------------------------------------------------------------------
# named constructions
# ---------------------------------------------------------------------------


def z_of_segment(s: Segment) -> Character:
    """The character attached to a single segment."""
    n = s.length
    return Character(n, s.a + HalfInt(n - 1))


def make_Pi(n: int, ctx: ModContext) -> Irr:
    """The distinguished two-segment label of degree n >= 2."""
    if n < 2:
        raise ValueError("needs n >= 2")
    a = HalfInt(-(n - 3))  # -(n-3)/2
    b = HalfInt(n - 1)
    s = HalfInt(n + 1)
    return Irr.of_mseg(mseg(Segment(a, b), Segment(s, s))).canonical(ctx)


def make_Pi_dual(n: int, ctx: ModContext) -> Irr:
    return make_Pi(n, ctx).dual().canonical(ctx)


def make_Lambda(n: int, ctx: ModContext) -> Irr:
    """Trivial character when the quantum characteristic divides n, else make_Pi."""
    if n < 2:
        raise ValueError("needs n >= 2")
    if ctx.f_divides(n):
        return Character.one(n).as_irr(ctx)
    return make_Pi(n, ctx)


def make_Lambda_dual(n: int, ctx: ModContext) -> Irr:
    return make_Lambda(n, ctx).dual().canonical(ctx)


def make_Phi(n: int, ctx: ModContext) -> Irr:
    if n < 4:
        raise ValueError("needs n >= 4")
    a = HalfInt(-(n - 3))
    return Irr.of_mseg(
        mseg(Segment(a, HalfInt(n - 3)), Segment(HalfInt(-(n - 1)), a))
    ).canonical(ctx)


def make_Psi(n: int, ctx: ModContext) -> Irr:
    if n < 4:
        raise ValueError("needs n >= 4")
    a = HalfInt(-(n - 3))
    return Irr.of_mseg(
        mseg(Segment(a, HalfInt(n - 3)), Segment(HalfInt(-(n + 1)), HalfInt(-(n - 1))))
    ).canonical(ctx)


def st2_twist(chi: Character, ctx: ModContext) -> Irr:
    """The nondegenerate degree-2 label with central character twist chi."""
    m = mseg(Segment(chi.exp - half("1/2"), chi.exp - half("1/2")),
             Segment(chi.exp + half("1/2"), chi.exp + half("1/2")))
    return Irr.of_mseg(m, chi.ram).canonical(ctx)


def st3_twist(chi: Character, ctx: ModContext) -> Irr:
    m = mseg(*(Segment(chi.exp + k, chi.exp + k) for k in (-1, 0, 1)))
    return Irr.of_mseg(m, chi.ram).canonical(ctx)


def make_L(s: Segment, ctx: ModContext) -> Irr:
    """The essentially square-integrable label of a segment of length <= 2."""
    if s.length == 1:
        return z_of_segment(s).as_irr(ctx)
    if s.length != 2:
        raise ValueError("only lengths 1 and 2 are supported")
    if ctx.f == 2:
        return Character(2, s.a - half("1/2")).as_irr(ctx)
    return Irr.of_mseg(mseg(Segment(s.a, s.a), Segment(s.b, s.b))).canonical(ctx)


def st_of_two_chars(c1: Character, c2: Character, ctx: ModContext) -> Irr:
    """The nondegenerate subquotient label of a product of two degree-1 characters."""
    if c1.degree != 1 or c2.degree != 1:
        raise ValueError("needs two characters of degree 1")
    out = Irr.of_mseg(Multisegment.of(c1.segment), c1.ram).union(
        Irr.of_mseg(Multisegment.of(c2.segment), c2.ram)
    )
    return out.canonical(ctx)


def cusp_atom(degree: int, tag: str, ctx: ModContext) -> Irr:
    if degree < 2:
        raise ValueError("cuspidal atoms have degree >= 2")
    return Irr.of_atom(CuspAtom(degree, tag, half(0))).canonical(ctx)


# ---------------------------------------------------------------------------
# generic twist / dual over all the value kinds
# ---------------------------------------------------------------------------


def twist(x, chi: Character, ctx: ModContext):
    """Twist by a degree-1 character; distributes over products and sums."""
    if isinstance(x, Character):
        return Character(x.degree, x.exp + chi.exp, ram_mul(x.ram, chi.ram))
    if isinstance(x, (Irr, Expr)):
        return x.twist(chi).canonical(ctx)
    if isinstance(x, GrothElt):
        return x.map_keys(lambda k: _twist_key(k, chi, ctx))
    raise TypeError("cannot twist %r" % (x,))


def _twist_key(key, chi: Character, ctx: ModContext):
    if isinstance(key, (Irr, Expr)):
        return key.twist(chi).canonical(ctx)
    if isinstance(key, tuple):  # Levi tuple: the twist hits every slot
        return tuple(e.twist(chi).canonical(ctx) for e in key)
    raise TypeError("cannot twist key %r" % (key,))


def dual(x, ctx: ModContext):
    """Contragredient; on Levi tuples dualizes entries in place."""
    if isinstance(x, Character):
        return x.inv()
    if isinstance(x, (Irr, Expr)):
        return x.dual().canonical(ctx)
    if isinstance(x, GrothElt):
        return x.map_keys(lambda k: _dual_key(k, ctx))
    raise TypeError("cannot dualize %r" % (x,))


def _dual_key(key, ctx: ModContext):
    if isinstance(key, (Irr, Expr)):
        return key.dual().canonical(ctx)
    if isinstance(key, tuple):
        return tuple(e.dual().canonical(ctx) for e in key)
    raise TypeError("cannot dualize key %r" % (key,))


# ---------------------------------------------------------------------------
# shape recognition on canonical labels
# ---------------------------------------------------------------------------


def as_character(x: Irr, ctx: ModContext) -> Character | None:
    """The label as a character of G_n, when it is one."""
    if x.cusps or len(x.zparts) != 1:
        return None
    ram, m = x.zparts[0]
    if len(m.segs) != 1:
        return None
    c = z_of_segment(m.segs[0])
    return Character(c.degree, c.exp, ram)


def st2_shape(x: Irr, ctx: ModContext):
    """(anchor, ram) with x = the nondegenerate label on [anchor]+[anchor+1], or None."""
    if x.cusps or len(x.zparts) != 1:
        return None
    ram, m = x.zparts[0]
    if len(m.segs) != 2 or any(s.length != 1 for s in m.segs):
        return None
    u, v = m.segs[0].a, m.segs[1].a
    if congruent(v, u + 1, ctx):
        return u, ram
    if congruent(u, v + 1, ctx):
        return v, ram
    return None


def st3_shape(x: Irr, ctx: ModContext):
    """(center, ram) when x is the nondegenerate label on a 3-chain of singletons."""
    if x.cusps or len(x.zparts) != 1:
        return None
    ram, m = x.zparts[0]
    if len(m.segs) != 3 or any(s.length != 1 for s in m.segs):
        return None
    import itertools

    for order in itertools.permutations(m.segs):
        a, b, c = (s.a for s in order)
        if congruent(b, a + 1, ctx) and congruent(c, b + 1, ctx):
            return order[1].a, ram
    return None


def cuspidal_kind(x: Irr, ctx: ModContext) -> str | None:
    """'atom', 'st2', or 'st3' when the whole label is cuspidal, else None."""
    if len(x.cusps) == 1 and not x.zparts:
        return "atom"
    if ctx.f == 2 and st2_shape(x, ctx) is not None:
        return "st2"
    if ctx.f == 3 and st3_shape(x, ctx) is not None:
        return "st3"
    return None


def pi_shape(x: Irr, ctx: ModContext):
    """(n, twist, variant) with x = make_Pi(n) or its dual, twisted by nu^twist.

    variant is "pi" when the singleton sits one past the long segment's end,
    "pi_dual" when it sits one before its start.  Needs n >= 3; the n = 2
    case is the st2 shape.
    """
    if x.cusps or len(x.zparts) != 1:
        return None
    ram, m = x.zparts[0]
    if len(m.segs) != 2 or ram != RAM_TRIVIAL:
        return None
    by_len = sorted(m.segs, key=lambda s: s.length)
    single, delta = by_len
    if single.length != 1 or delta.length < 2:
        return None
    n = delta.length + 1
    if congruent(single.a, delta.b + 1, ctx):
        return n, delta.a + HalfInt(n - 3), "pi"
    if congruent(single.a, delta.a - 1, ctx):
        return n, delta.a + HalfInt(n - 1), "pi_dual"
    return None


def phi_psi_shape(x: Irr, ctx: ModContext):
    """(kind, n, twist) when x is a twist of make_Phi(n) or make_Psi(n)."""
    if x.cusps or len(x.zparts) != 1:
        return None
    ram, m = x.zparts[0]
    if len(m.segs) != 2 or ram != RAM_TRIVIAL:
        return None
    for first, second in (m.segs, m.segs[::-1]):
        if second.length != 2 or first.length < 2:
            continue
        n = first.length + 2
        t = first.a + HalfInt(n - 3)
        if congruent(second.a, first.a - 1, ctx):
            return "phi", n, t
        if congruent(second.a, first.a - 2, ctx):
            return "psi", n, t
    return None


def unlinked_fully(x: Irr, ctx: ModContext) -> bool:
    """Whether every pair of segments (within each tag part) is unlinked."""
    for _, m in x.zparts:
        segs = m.segs
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                if linked(segs[i], segs[j], ctx):
                    return False
    return True

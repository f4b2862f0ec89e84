"""Independent subquotient solver: enumerate candidates, eliminate, certify.

Works directly from the classification properties: candidate labels must
match the product's support with a partition of lengths strictly dominating
the baseline (or be the baseline itself); the baseline of a plain segment
product occurs exactly once; a candidate whose characteristic Jacquet datum
is missing from the product is excluded; merge moves on linked segment pairs
certify occurrences.  No structure-table result is consulted, so the output
is an independent check of those tables.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .arith import HalfInt, ModContext, congruent, half
from .segments import Multisegment, Segment, linked, mseg, support
from .reps import (
    Character,
    Expr,
    GrothElt,
    Irr,
    RAM_TRIVIAL,
    as_character,
    st2_shape,
    st_of_two_chars,
    z_of_segment,
)
from .calculus import JacquetUnsupported, geometric_lemma
from .structure import semisimplify_factors


@dataclass
class Candidate:
    m: Multisegment
    label: Irr
    lower: int
    upper: int | None  # None means no upper bound established yet
    is_baseline: bool
    reason: str = ""
    trace: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.upper == 0:
            return "excluded"
        if self.upper is not None and self.lower == self.upper:
            return "confirmed"
        return "open"

    def note(self, text: str):
        self.trace.append(text)


@dataclass
class CandidateSet:
    factors: list
    baseline: Multisegment
    candidates: list
    ctx: ModContext

    def by_status(self, status: str):
        return [c for c in self.candidates if c.status == status]


@dataclass
class Decomposition:
    candidate_set: CandidateSet
    exact: GrothElt | None
    bounds: GrothElt
    chain_length: int

    @property
    def is_exact(self) -> bool:
        return self.exact is not None


def _factor_segments(factors, ctx: ModContext):
    """Per-factor segment lists; a nondegenerate pair contributes two singletons."""
    out = []
    plain = True
    for f in factors:
        if isinstance(f, Character):
            f = f.as_irr(ctx)
        if isinstance(f, Expr):
            for sub in f.factors:
                sub_out, sub_plain = _factor_segments([sub], ctx)
                out.extend(sub_out)
                plain = plain and sub_plain
            continue
        f = f.canonical(ctx)
        if f.cusps or len(f.zparts) != 1 or f.zparts[0][0] != RAM_TRIVIAL:
            raise ValueError("the solver needs unramified character support")
        m = f.zparts[0][1]
        if len(m.segs) == 1:
            out.append((f, m.segs))
            continue
        if st2_shape(f, ctx) is not None:
            out.append((f, m.segs))
            plain = False
            continue
        raise ValueError("unsupported factor %s" % (f,))
    return out, plain


def enumerate_candidates(factors, ctx: ModContext) -> CandidateSet:
    """All labels allowed by support matching and the dominance constraint.

    The partition of a non-baseline candidate must strictly dominate the
    baseline partition; the baseline itself is always listed first.
    """
    factor_data, plain = _factor_segments(list(factors), ctx)
    all_segs = tuple(s for _, segs in factor_data for s in segs)
    baseline = Multisegment.of(*all_segs).canonical(ctx)
    target = support(baseline, ctx)
    base_lam = baseline.lam()
    found = []
    for cand in _multisegments_with_support(target, base_lam, ctx):
        if cand == baseline or cand.lam() == base_lam:
            continue
        found.append(cand)
    found.sort(key=lambda m: tuple(s.sort_key() for s in m.segs))
    candidates = [
        Candidate(baseline, Irr.of_mseg(baseline).canonical(ctx), 0, None, True)
    ]
    for m in found:
        candidates.append(Candidate(m, Irr.of_mseg(m).canonical(ctx), 0, None, False))
    return CandidateSet(list(factors), baseline, candidates, ctx)


def _multisegments_with_support(target: Counter, base_lam, ctx: ModContext):
    """Canonical multisegments with the given class support whose partition
    dominates the baseline one.

    Segments are chosen with non-increasing lengths, so the dominance
    constraint prunes each prefix: once a partial sum of lengths falls
    behind the baseline's, no completion can recover.
    """
    classes = tuple(sorted(target, key=lambda c: c.twice))
    base_prefix = []
    acc = 0
    for part in base_lam:
        acc += part
        base_prefix.append(acc)
    total = sum(target.values())

    def segment_options(remaining: Counter, max_len: int):
        opts = []
        for start in classes:
            if remaining[start] <= 0:
                continue
            probe = Counter()
            for length in range(1, max_len + 1):
                cls = ctx.class_rep(start + (length - 1))
                probe[cls] += 1
                if probe[cls] > remaining[cls]:
                    break
                opts.append((length, start))
        return opts

    def rec(remaining: Counter, max_len: int, floor_start, index: int, done: int):
        left = sum(remaining.values())
        if left == 0:
            yield ()
            return
        base_need = base_prefix[index] if index < len(base_prefix) else total
        for length, start in segment_options(remaining, max_len):
            if done + length < base_need:
                continue  # this prefix sum can never be recovered
            if length == max_len and floor_start is not None and start.twice < floor_start:
                continue
            s = Segment(start, start + (length - 1))
            used = support(s, ctx)
            rest = remaining.copy()
            rest.subtract(used)
            next_floor = start.twice if length == max_len else None
            for tail in rec(rest, length, next_floor, index + 1, done + length):
                yield (s,) + tail

    seen = set()
    for combo in rec(target.copy(), total, None, 0, 0):
        m = Multisegment.of(*combo)
        if m not in seen:
            seen.add(m)
            yield m


# ---------------------------------------------------------------------------
# characteristic Jacquet data of a candidate
# ---------------------------------------------------------------------------


def mu_and_st_of(m: Multisegment, ctx: ModContext):
    """The detecting composition and Levi datum of a label with <= 2 segments.

    Returns (mu, st_slots) with st_slots a tuple of Irr, or None for shapes
    outside the catalogue (three or more segments).
    """
    segs = sorted(m.segs, key=lambda s: (-s.length,) + s.sort_key())
    if len(segs) == 1:
        s = segs[0]
        slots = tuple(
            Character(1, s.a + j).as_irr(ctx) for j in range(s.length)
        )
        return (1,) * s.length, slots
    if len(segs) != 2:
        return None
    big, small = segs
    k = small.length
    n = m.length
    slots = []
    for j in range(n - 2 * k):
        slots.append(Character(1, big.a + j).as_irr(ctx))
    for j in range(k):
        c1 = Character(1, big.a + (n - 2 * k) + j)
        c2 = Character(1, small.a + j)
        slots.append(st_of_two_chars(c1, c2, ctx))
    mu = (1,) * (n - 2 * k) + (2,) * k
    return mu, tuple(slots)


# ---------------------------------------------------------------------------
# solver engine
# ---------------------------------------------------------------------------


class _Engine:
    def __init__(self, cs: CandidateSet):
        self.cs = cs
        self.ctx = cs.ctx
        self.factor_data, self.plain = _factor_segments(cs.factors, cs.ctx)
        self.atoms = [f for f, _ in self.factor_data]
        self.degree = sum(a.degree for a in self.atoms)
        self._rbeta_cache: dict = {}

    # -- resolved restrictions of the product ------------------------------
    def resolved_rbeta(self, beta):
        beta = tuple(beta)
        if beta in self._rbeta_cache:
            return self._rbeta_cache[beta]
        raw = geometric_lemma(self.atoms, beta, self.ctx)
        out = GrothElt()
        ok = True
        for key, mult in raw.items():
            slots = []
            for slot in key:
                ss = semisimplify_factors(list(slot.factors), self.ctx)
                if ss is None or ss.lower_bound:
                    ok = False
                    break
                slots.append(ss)
            if not ok:
                break
            for combo in itertools.product(*(list(s.items()) for s in slots)):
                m = mult
                parts = []
                for irr, c in combo:
                    m *= c
                    parts.append(irr)
                out.add_term(tuple(parts), m)
        result = out if ok else None
        self._rbeta_cache[beta] = result
        return result

    def candidate_rbeta(self, cand: Candidate, beta):
        """Exact resolved restriction of the candidate label, or None.

        Single segments restrict to a single character tuple.  A label made
        of one segment and one singleton restricts to the restriction of its
        two-factor cover minus the cover's other constituents, which are
        single segments.
        """
        segs = cand.m.segs
        if len(segs) == 1:
            chi = z_of_segment(segs[0])
            return self._resolve_plain([chi.as_irr(self.ctx)], beta)
        if len(segs) == 2 and min(s.length for s in segs) == 1:
            big, small = sorted(segs, key=lambda s: -s.length)
            cover = [
                z_of_segment(big).as_irr(self.ctx),
                Character(1, small.a).as_irr(self.ctx),
            ]
            ss = semisimplify_factors(cover, self.ctx)
            if ss is None or ss.lower_bound or ss.mult_of(cand.label) != 1:
                return None
            total = self._resolve_plain(cover, beta)
            if total is None:
                return None
            for key, mult in ss.items():
                if key == cand.label:
                    continue
                chi = as_character(key, self.ctx)
                if chi is None:
                    return None
                part = self._resolve_plain([key], beta)
                if part is None:
                    return None
                try:
                    total = total.subtract(part.scale(mult))
                except ValueError:
                    return None
            return total
        return None

    def _resolve_plain(self, atoms, beta):
        raw = geometric_lemma(atoms, beta, self.ctx)
        out = GrothElt()
        for key, mult in raw.items():
            slots = []
            for slot in key:
                ss = semisimplify_factors(list(slot.factors), self.ctx)
                if ss is None or ss.lower_bound:
                    return None
                slots.append(ss)
            for combo in itertools.product(*(list(s.items()) for s in slots)):
                m = mult
                parts = []
                for irr, c in combo:
                    m *= c
                    parts.append(irr)
                out.add_term(tuple(parts), m)
        return out

    # -- individual tests ---------------------------------------------------
    def p6_upper(self, cand: Candidate):
        data = mu_and_st_of(cand.m, self.ctx)
        if data is None:
            return None
        mu, slots = data
        resolved = self.resolved_rbeta(mu)
        if resolved is None:
            return None
        count = resolved.mult_of(tuple(slots))
        cand.note(
            "detector mu=%s slots=%s found %d" % (mu, _slots_text(slots), count)
        )
        return count

    def beta_upper(self, cand: Candidate, beta):
        rn = self.candidate_rbeta(cand, beta)
        if rn is None or not rn.terms:
            return None
        rpi = self.resolved_rbeta(beta)
        if rpi is None:
            return None
        bound = None
        for key, mult in rn.items():
            have = rpi.mult_of(key)
            c = have // mult
            bound = c if bound is None else min(bound, c)
            if bound == 0:
                cand.note(
                    "restriction at %s misses %s" % (beta, _slots_text(key))
                )
                return 0
        cand.note("restriction at %s bounds multiplicity by %d" % (beta, bound))
        return bound

    def test_compositions(self):
        n = self.degree
        comps = [(k, n - k) for k in range(1, n)]
        comps += [
            (i, j, n - i - j)
            for i in range(1, n - 1)
            for j in range(1, n - i)
            if n - i - j >= 1
        ]
        comps.append((1,) * n)
        return comps

    # -- occurrence moves ----------------------------------------------------
    def occurrences(self):
        """Labels certified to occur via merge moves on linked pairs.

        A merge move replaces two class-aligned linked segments by their
        union and intersection; the resulting plain product is a subquotient
        and its baseline occurs.  Iterating the moves is reliable away from
        order two; at e = 2 only single moves from the original product are
        used (deeper chains can overcount there, which is exactly the regime
        the multiplicity flags exist for).
        """
        if not self.plain:
            return set()
        depth_cap = None if (self.ctx.e is None or self.ctx.e > 2) else 1
        start = tuple(
            sorted((s for _, segs in self.factor_data for s in segs), key=Segment.sort_key)
        )
        seen_states = {start: 0}
        occur = set()
        stack = [(start, 0)]
        e = self.ctx.e
        while stack:
            state, depth = stack.pop()
            occur.add(Multisegment.of(*state).canonical(self.ctx))
            if depth_cap is not None and depth >= depth_cap:
                continue
            for i, j in itertools.combinations(range(len(state)), 2):
                s1, s2 = state[i], state[j]
                for s2m in _alignments(s1, s2, e):
                    merged = _merge_linked(s1, s2m)
                    if merged is None:
                        continue
                    rest = tuple(state[k] for k in range(len(state)) if k not in (i, j))
                    canon = tuple(
                        sorted(
                            (s.canonical(self.ctx) for s in rest + merged),
                            key=Segment.sort_key,
                        )
                    )
                    if canon not in seen_states:
                        seen_states[canon] = depth + 1
                        stack.append((canon, depth + 1))
        return occur

    def flagged_single(self, cand: Candidate) -> bool:
        return (
            self.ctx.e == 2
            and self.plain
            and len(self.atoms) == 2
            and min(a.degree for a in self.atoms) >= 2
            and len(cand.m.segs) == 1
        )

    # -- detector equalities inside a plain two-segment product -------------
    def detector_exact(self, cand: Candidate):
        """Exact multiplicity from the detecting datum, where that is valid.

        Within a product of two segment characters, the detecting datum of a
        candidate appears only inside copies of that candidate, so counting
        it in the product and normalizing by its count inside the candidate
        pins the multiplicity.  Valid for one-segment candidates (order > 2,
        or any order when one factor is a singleton) and for candidates made
        of a segment and a singleton (any order > 1).
        """
        if not (self.plain and len(self.atoms) == 2):
            return None
        segs = cand.m.segs
        data = mu_and_st_of(cand.m, self.ctx)
        if data is None:
            return None
        mu, slots = data
        if len(segs) == 1:
            min_deg = min(a.degree for a in self.atoms)
            if not (self.ctx.e is None or self.ctx.e > 2 or min_deg == 1):
                return None
            resolved = self.resolved_rbeta(mu)
            if resolved is None:
                return None
            c = resolved.mult_of(tuple(slots))
            cand.note("detector count %d pins the multiplicity" % c)
            return c
        if len(segs) == 2 and min(s.length for s in segs) == 1:
            big, small = sorted(segs, key=lambda s: -s.length)
            cover = [
                z_of_segment(big).as_irr(self.ctx),
                Character(1, small.a).as_irr(self.ctx),
            ]
            inside = self._resolve_plain(cover, mu)
            if inside is None:
                return None
            s_count = inside.mult_of(tuple(slots))
            if s_count == 0:
                return None
            resolved = self.resolved_rbeta(mu)
            if resolved is None:
                return None
            c = resolved.mult_of(tuple(slots))
            if c % s_count != 0:
                return None
            cand.note(
                "detector count %d over %d inside the candidate pins %d"
                % (c, s_count, c // s_count)
            )
            return c // s_count
        return None


def _alignments(s1: Segment, s2: Segment, e):
    """Class-preserving translates of s2 that touch or overlap s1."""
    if e is None:
        yield s2
        return
    # need s2.a + ke <= s1.b + 1 and s2.b + ke >= s1.a - 1, k an integer
    k_lo = -((s2.b.twice + 2 - s1.a.twice) // (2 * e))
    k_hi = (s1.b.twice + 2 - s2.a.twice) // (2 * e)
    for k in range(k_lo, k_hi + 1):
        yield s2.shift(HalfInt(2 * e * k))


def _merge_linked(s1: Segment, s2: Segment):
    """The union/intersection move on a raw-linked pair, or None if nested."""
    if (s1.a - s2.a).twice % 2 != 0:
        return None
    if s1.a <= s2.a and s2.b <= s1.b:
        return None
    if s2.a <= s1.a and s1.b <= s2.b:
        return None
    lo, hi = min(s1.a, s2.a), max(s1.b, s2.b)
    if (hi - lo).as_int() + 1 > s1.length + s2.length:
        return None  # disjoint and not adjacent
    union = Segment(lo, hi)
    inter_lo, inter_hi = max(s1.a, s2.a), min(s1.b, s2.b)
    if inter_lo <= inter_hi:
        return (union, Segment(inter_lo, inter_hi))
    return (union,)


def _slots_text(slots) -> str:
    return " (x) ".join(str(s) for s in slots)


def full_jacquet_length(factors, ctx: ModContext) -> int:
    """Total multiplicity of the full chain restriction of the product."""
    try:
        factor_data, _ = _factor_segments(list(factors), ctx)
    except ValueError:
        # cuspidal atoms kill every full-chain term
        return 0
    lengths = [sum(s.length for s in segs) for _, segs in factor_data]
    n = sum(lengths)
    import math

    out = math.factorial(n)
    for l in lengths:
        out //= math.factorial(l)
    return out


def eliminate(cs: CandidateSet, ctx: ModContext | None = None) -> CandidateSet:
    """Run the exclusion, detector, and occurrence tests over all candidates."""
    engine = _Engine(cs)
    occ = engine.occurrences()
    for cand in cs.candidates:
        if cand.is_baseline and engine.plain:
            cand.lower = cand.upper = 1
            cand.reason = "baseline of a segment product, multiplicity one"
            cand.note(cand.reason)
            continue
        if cand.is_baseline:
            cand.upper = 1  # bounded by the baseline of the segment cover
            cand.note("bounded by the plain cover's baseline multiplicity")
        exact = engine.detector_exact(cand)
        if exact is not None:
            cand.lower = cand.upper = exact
            cand.reason = cand.trace[-1]
            continue
        if cand.m in occ:
            cand.lower = max(cand.lower, 1)
            cand.note("occurs: reachable by merge moves on linked pairs")
        c = engine.p6_upper(cand)
        if c is not None:
            cand.upper = c if cand.upper is None else min(cand.upper, c)
        if cand.upper is not None and cand.status != "open":
            cand.reason = cand.trace[-1] if cand.trace else ""
            continue
        if engine.flagged_single(cand):
            # order-two one-segment candidates inside a two-segment product:
            # the genuinely undecided zone, not worth a full battery
            cand.reason = cand.trace[-1] if cand.trace else "undecided at order two"
            continue
        for beta in engine.test_compositions():
            c = engine.beta_upper(cand, beta)
            if c is not None:
                cand.upper = c if cand.upper is None else min(cand.upper, c)
                if cand.upper == 0 or (cand.upper == cand.lower):
                    break
        cand.reason = cand.trace[-1] if cand.trace else "no applicable test"
    # a nonzero representation: if a single candidate survives, it occurs
    alive = [c for c in cs.candidates if c.upper != 0]
    if len(alive) == 1 and (alive[0].upper or 1) >= 1:
        alive[0].lower = max(alive[0].lower, 1)
        if alive[0].upper is None:
            alive[0].upper = alive[0].lower
        alive[0].note("only surviving candidate of a nonzero representation")
        alive[0].reason = alive[0].trace[-1]
    return cs


def decompose(factors, ctx: ModContext) -> Decomposition:
    """Full pipeline: enumerate, eliminate, and assemble the decomposition."""
    cs = enumerate_candidates(factors, ctx)
    eliminate(cs, ctx)
    exact: GrothElt | None = GrothElt()
    bounds = GrothElt()
    for cand in cs.candidates:
        if cand.status == "excluded":
            continue
        if cand.status == "confirmed" and exact is not None:
            exact.add_term(cand.label, cand.lower)
        else:
            exact = None
        if cand.lower > 0:
            bounds.add_term(cand.label, cand.lower)
            if cand.upper is None or cand.upper > cand.lower:
                bounds.lower_bound = True
        elif cand.status == "open":
            bounds.lower_bound = True
    chain_len = full_jacquet_length(factors, ctx)
    if exact is not None:
        bounds = exact
    return Decomposition(cs, exact, bounds, chain_len)

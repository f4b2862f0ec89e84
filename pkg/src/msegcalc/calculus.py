"""Jacquet restriction of induced products, derivatives, and irreducibility.

The restriction of a product along a composition is computed combinatorially:
every matrix of non-negative integers with row sums the factor degrees and
column sums the target composition contributes one way of splitting each
factor, and the column entries multiply (in factor order) into the Levi slot.
"""
from __future__ import annotations

import enum
import itertools

from .arith import HalfInt, ModContext, half
from .segments import Segment, juxtaposed, linked
from .reps import (
    Character,
    Expr,
    GrothElt,
    Irr,
    RAM_TRIVIAL,
    UNIT,
    as_character,
    cuspidal_kind,
    phi_psi_shape,
    pi_shape,
    st2_shape,
    st3_shape,
    unlinked_fully,
    z_of_segment,
)


class Ternary(enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    UNKNOWN = "unknown"


class JacquetUnsupported(ValueError):
    """Raised for factors whose Jacquet restriction is not catalogued."""


def check_composition(beta, n: int):
    if any(b < 1 for b in beta) or sum(beta) != n:
        raise ValueError("%r is not a composition of %d" % (beta, n))


def b_matrices(alpha, beta):
    """All non-negative integer matrices with row sums alpha and column sums beta.

    Rows are generated in row-major lexicographic order; output order never
    matters because results are accumulated into canonical sums.
    """
    rows = len(alpha)

    def rec(i, remaining_cols):
        if i == rows:
            if all(c == 0 for c in remaining_cols):
                yield ()
            return
        for row in _row_choices(alpha[i], remaining_cols):
            rest = tuple(c - r for c, r in zip(remaining_cols, row))
            for tail in rec(i + 1, rest):
                yield (row,) + tail

    yield from rec(0, tuple(beta))


def _row_choices(total, caps):
    if not caps:
        if total == 0:
            yield ()
        return
    head_cap = min(total, caps[0])
    for first in range(head_cap, -1, -1):
        for rest in _row_choices(total - first, caps[1:]):
            yield (first,) + rest


def _segment_split(s: Segment, row, ram) -> tuple:
    """Entries of a segment character along a row of block sizes (0 allowed)."""
    entries = []
    pos = s.a
    for size in row:
        if size == 0:
            entries.append(None)
            continue
        piece = Segment(pos, pos + (size - 1))
        c = z_of_segment(piece)
        entries.append(Character(c.degree, c.exp, ram).as_irr())
        pos = pos + size
    return tuple(entries)


def _whole_in_one_column(x: Irr, row):
    nonzero = [(j, size) for j, size in enumerate(row) if size]
    if len(nonzero) == 1 and nonzero[0][1] == x.degree:
        entries = [None] * len(row)
        entries[nonzero[0][0]] = x
        return [(tuple(entries), 1)]
    return []


def factor_jacquet_terms(x: Irr, row, ctx: ModContext):
    """Semisimplified restriction of one factor along one B-matrix row.

    Returns a list of (entries, multiplicity) with entries a tuple of
    Irr-or-None per column.  Raises JacquetUnsupported for labels outside
    the catalogue (multi-segment labels that are not nondegenerate pairs).
    """
    if sum(row) != x.degree:
        raise ValueError("row does not sum to the factor degree")
    if len(x.zparts) + len(x.cusps) > 1:
        # a multi-component label is the product of its components
        return _mixed_jacquet_terms(x, row, ctx)
    if cuspidal_kind(x, ctx) is not None:
        return _whole_in_one_column(x, row)
    chi = as_character(x, ctx)
    if chi is not None:
        ram, m = x.zparts[0]
        return [(_segment_split(m.segs[0], row, ram), 1)]
    st2 = st2_shape(x, ctx)
    if st2 is not None:
        anchor, ram = st2
        terms = _whole_in_one_column(x, row)
        ones = [j for j, size in enumerate(row) if size == 1]
        if len(ones) == 2 and sum(row) == 2:
            entries = [None] * len(row)
            entries[ones[0]] = Character(1, anchor + 1, ram).as_irr()
            entries[ones[1]] = Character(1, anchor, ram).as_irr()
            terms.append((tuple(entries), 1))
        return terms
    raise JacquetUnsupported("no Jacquet data for %s" % (x,))


def _mixed_jacquet_terms(x: Irr, row, ctx: ModContext):
    comps = [Irr.of_mseg(m, ram) for ram, m in x.zparts]
    comps += [Irr.of_atom(a) for a in x.cusps]
    out = []
    for combo in _component_rows([c.degree for c in comps], row):
        per_comp = []
        for comp, comp_row in zip(comps, combo):
            per_comp.append(factor_jacquet_terms(comp, comp_row, ctx))
        for choice in itertools.product(*per_comp):
            entries = [None] * len(row)
            mult = 1
            for term, m in choice:
                mult *= m
                for j, e in enumerate(term):
                    if e is None:
                        continue
                    entries[j] = e if entries[j] is None else entries[j].union(e)
            out.append((tuple(entries), mult))
    return out


def _component_rows(degrees, row):
    """Ways of writing the row as a sum of per-component rows."""
    if not degrees:
        if all(r == 0 for r in row):
            yield ()
        return
    for first in _row_choices(degrees[0], row):
        rest = tuple(r - f for r, f in zip(row, first))
        for tail in _component_rows(degrees[1:], rest):
            yield (first,) + tail


def _column_expr(entries, ctx: ModContext) -> Expr:
    parts = [e for e in entries if e is not None]
    return Expr(tuple(p.canonical(ctx) for p in parts))


def geometric_lemma(factors, beta, ctx: ModContext) -> GrothElt:
    """Semisimplified restriction of a product along a composition.

    Factors may be Irr labels, Expr products, Characters, or previously
    semisimplified GrothElts over such keys.  The result is a formal sum of
    Levi tuples (tuples of Expr); slots whose factors do not resolve to a
    single irreducible stay as products.
    """
    expanded = _expand_factors(factors, ctx)
    beta = tuple(beta)
    out = GrothElt()
    for atoms, outer_mult, flagged in expanded:
        check_composition(beta, sum(a.degree for a in atoms))
        alpha = tuple(a.degree for a in atoms)
        for B in b_matrices(alpha, beta):
            per_factor = [factor_jacquet_terms(a, B[i], ctx) for i, a in enumerate(atoms)]
            for choice in itertools.product(*per_factor):
                mult = outer_mult
                for _, m in choice:
                    mult *= m
                cols = []
                for j in range(len(beta)):
                    col_entries = [term[j] for term, _ in choice]
                    cols.append(_column_expr(col_entries, ctx))
                out.add_term(tuple(cols), mult)
        if flagged:
            out.lower_bound = True
    return out


def _expand_factors(factors, ctx: ModContext):
    """Flatten to lists of Irr atoms with multiplicities, expanding sums."""
    lists = [[((), 1, False)]]

    def push(options):
        nonlocal lists
        new = []
        for atoms, mult, flag in lists[0]:
            for more, m2, f2 in options:
                new.append((atoms + more, mult * m2, flag or f2))
        lists = [new]

    for f in factors:
        if isinstance(f, Character):
            f = f.as_irr(ctx)
        if isinstance(f, Expr):
            push([(tuple(x.canonical(ctx) for x in f.factors), 1, False)])
        elif isinstance(f, Irr):
            push([((f.canonical(ctx),), 1, False)])
        elif isinstance(f, GrothElt):
            options = []
            for key, mult in f.items():
                if isinstance(key, Expr):
                    options.append((tuple(x.canonical(ctx) for x in key.factors), mult, f.lower_bound))
                elif isinstance(key, Irr):
                    options.append(((key.canonical(ctx),), mult, f.lower_bound))
                else:
                    raise TypeError("cannot induce from key %r" % (key,))
            push(options)
        else:
            raise TypeError("cannot use %r as a factor" % (f,))
    return lists[0]


def jacquet_segment(s: Segment, k: int, ctx: ModContext):
    """Restriction of a segment character to the (k, n-k) Levi: the split pair."""
    n = s.length
    if not 1 <= k <= n - 1:
        raise ValueError("k out of range")
    left = z_of_segment(Segment(s.a, s.a + (k - 1)))
    right = z_of_segment(Segment(s.a + k, s.b))
    return (Expr.atom(left.as_irr(ctx)), Expr.atom(right.as_irr(ctx)))


def jacquet_segment_opposite(s: Segment, k: int, ctx: ModContext):
    """Same split through the opposite parabolic: top piece first."""
    n = s.length
    if not 1 <= k <= n - 1:
        raise ValueError("k out of range")
    top = z_of_segment(Segment(s.a + (n - k), s.b))
    bottom = z_of_segment(Segment(s.a, s.a + (n - k - 1)))
    return (Expr.atom(top.as_irr(ctx)), Expr.atom(bottom.as_irr(ctx)))


def refine_levi_sum(levi_sum: GrothElt, old_beta, new_beta, ctx: ModContext) -> GrothElt:
    """Restrict each slot of a Levi-tuple sum along a refinement of the composition."""
    groups = _refinement_groups(tuple(old_beta), tuple(new_beta))
    out = GrothElt(lower_bound=levi_sum.lower_bound)
    for key, mult in levi_sum.items():
        per_slot = []
        for slot_expr, group in zip(key, groups):
            per_slot.append(geometric_lemma(list(slot_expr.factors), group, ctx))
        for combo in itertools.product(*(list(s.items()) for s in per_slot)):
            tuple_parts = []
            m = mult
            for sub_key, sub_mult in combo:
                tuple_parts.extend(sub_key)
                m *= sub_mult
            out.add_term(tuple(tuple_parts), m)
    return out


def _refinement_groups(old_beta, new_beta):
    groups = []
    it = iter(new_beta)
    for block in old_beta:
        group = []
        total = 0
        while total < block:
            part = next(it)
            group.append(part)
            total += part
        if total != block:
            raise ValueError("%r does not refine %r" % (new_beta, old_beta))
        groups.append(tuple(group))
    if list(it):
        raise ValueError("%r does not refine %r" % (new_beta, old_beta))
    return groups


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------


def derivative(x, k: int, ctx: ModContext):
    """The k-th derivative as a semisimplified sum, or None when uncatalogued.

    Degree drops by k.  Products follow the Leibniz rule; the catalogued
    closed forms cover characters, cuspidal labels, the nondegenerate pairs
    and triples, the adjacent two-segment shapes and their duals, and fully
    unlinked labels (which are products of characters).
    """
    if k == 0:
        if isinstance(x, GrothElt):
            return x
        key = x.canonical(ctx) if isinstance(x, (Irr, Expr)) else x.as_irr(ctx)
        return GrothElt.single(key)
    if isinstance(x, Character):
        x = x.as_irr(ctx)
    if isinstance(x, GrothElt):
        out = GrothElt(lower_bound=x.lower_bound)
        for key, mult in x.items():
            part = derivative(key, k, ctx)
            if part is None:
                return None
            out = out.add(part.scale(mult))
        return out
    if k < 0 or k > x.degree:
        raise ValueError("derivative order out of range")
    if isinstance(x, Expr):
        if x.is_atom:
            return derivative(x.factors[0], k, ctx)
        return _derivative_of_product(list(x.factors), k, ctx)
    return _derivative_of_irr(x.canonical(ctx), k, ctx)


def _derivative_of_product(factors, k: int, ctx: ModContext):
    degs = [f.degree for f in factors]
    out = GrothElt()
    for split in _bounded_compositions(k, degs):
        parts = []
        ok = True
        for f, ki in zip(factors, split):
            d = derivative(f, ki, ctx)
            if d is None:
                return None
            if not d.terms:
                ok = False
                break
            parts.append(d)
        if not ok:
            continue
        for combo in itertools.product(*(list(p.items()) for p in parts)):
            mult = 1
            atoms = []
            for key, m in combo:
                mult *= m
                if isinstance(key, Expr):
                    atoms.extend(key.factors)
                elif isinstance(key, Irr):
                    if not key.is_unit:
                        atoms.append(key)
                else:
                    return None
            resolved = resolve_product(atoms, ctx)
            if resolved is None:
                out.add_term(Expr(tuple(atoms)).canonical(ctx), mult)
            else:
                out = out.add(resolved.scale(mult))
                out.lower_bound = out.lower_bound or resolved.lower_bound
    return out


def _bounded_compositions(k, bounds):
    if not bounds:
        if k == 0:
            yield ()
        return
    for first in range(min(k, bounds[0]), -1, -1):
        for rest in _bounded_compositions(k - first, bounds[1:]):
            yield (first,) + rest


def resolve_product(atoms, ctx: ModContext):
    """Semisimplify a list of Irr factors via the structure catalogue, or None."""
    from . import structure

    atoms = [a for a in atoms if not a.is_unit]
    if not atoms:
        return GrothElt.single(UNIT)
    if len(atoms) == 1:
        return GrothElt.single(atoms[0].canonical(ctx))
    return structure.semisimplify_factors(atoms, ctx)


def _derivative_of_irr(x: Irr, k: int, ctx: ModContext):
    if x.is_unit:
        raise ValueError("derivative order out of range")
    if len(x.zparts) + len(x.cusps) > 1:
        comps = [Irr.of_mseg(m, ram) for ram, m in x.zparts]
        comps += [Irr.of_atom(a) for a in x.cusps]
        return _derivative_of_product(comps, k, ctx)
    if x.cusps:
        atom = x.cusps[0]
        if k == atom.degree:
            return GrothElt.single(UNIT)
        return GrothElt.zero()
    ram, m = x.zparts[0]
    if ram != RAM_TRIVIAL:
        # derivatives commute with twisting by a character
        plain = derivative(Irr.of_mseg(m), k, ctx)
        if plain is None:
            return None
        chi = Character(1, half(0), ram)
        return plain.map_keys(lambda key: _retag_key(key, chi, ctx))
    kind = cuspidal_kind(x, ctx)
    if kind in ("st2", "st3"):
        if k == x.degree:
            return GrothElt.single(UNIT)
        return GrothElt.zero()
    chi = as_character(x, ctx)
    if chi is not None:
        s = m.segs[0]
        if k >= 2:
            return GrothElt.zero()
        if s.length == 1:
            return GrothElt.single(UNIT)
        shorter = z_of_segment(Segment(s.a, s.b - 1))
        return GrothElt.single(shorter.as_irr(ctx))
    st2 = st2_shape(x, ctx)
    if st2 is not None:  # nondegenerate pair, f != 2 here
        anchor, _ = st2
        if k == 1:
            return GrothElt.single(Character(1, anchor + 1).as_irr(ctx))
        return GrothElt.single(UNIT)  # k == 2
    st3 = st3_shape(x, ctx)
    if st3 is not None:  # f != 3 here
        center, _ = st3
        from .reps import st2_twist

        if k == 1:
            return GrothElt.single(st2_twist(Character(1, center + half("1/2")), ctx))
        if k == 2:
            return GrothElt.single(Character(1, center + 1).as_irr(ctx))
        return GrothElt.single(UNIT)  # k == 3
    shape = pi_shape(x, ctx)
    if shape is not None:
        return _derivative_by_ambient(x, k, ctx, _pi_ambient(shape, ctx))
    shape = phi_psi_shape(x, ctx)
    if shape is not None:
        return _derivative_by_ambient(x, k, ctx, _phi_psi_ambient(shape, ctx))
    if unlinked_fully(x, ctx):
        chars = [z_of_segment(s).as_irr(ctx) for s in m.segs]
        return _derivative_of_product(chars, k, ctx)
    return None


def _retag_key(key, chi: Character, ctx: ModContext):
    if isinstance(key, Irr):
        return key.twist(chi).canonical(ctx)
    if isinstance(key, Expr):
        return key.twist(chi).canonical(ctx)
    raise TypeError("unexpected key %r" % (key,))


def _pi_ambient(shape, ctx: ModContext):
    n, t, variant = shape
    if variant == "pi":
        big = Character(n - 1, half("1/2") + t)
        small = Character(1, HalfInt(n + 1) + t)
    else:
        big = Character(n - 1, half("-1/2") + t)
        small = Character(1, HalfInt(-(n + 1)) + t)
    return [big.as_irr(ctx), small.as_irr(ctx)]


def _phi_psi_ambient(shape, ctx: ModContext):
    kind, n, t = shape
    big = Character(n - 2, t)
    offset = HalfInt(-(n - 2)) if kind == "phi" else HalfInt(-n)
    small = Character(2, offset + t)
    return [big.as_irr(ctx), small.as_irr(ctx)]


def _derivative_by_ambient(x: Irr, k: int, ctx: ModContext, ambient_factors):
    """Derivative through an ambient product whose other constituents are known.

    Exactness of the derivative functors gives, on semisimplifications,
    D(x, k) = D(ambient, k) - sum of D(other, k).  Uncertain multiplicities
    in the ambient decomposition are tolerated only when the affected keys
    have zero k-th derivative (single segments, k >= 2).
    """
    ss = resolve_product(ambient_factors, ctx)
    if ss is None or ss.mult_of(x) != 1:
        return None
    if ss.lower_bound and k == 1:
        # undercounting only ever affects one-segment constituents, whose
        # first derivative is nonzero; their higher derivatives vanish, so
        # only the k = 1 subtraction is poisoned
        return None
    total = _derivative_of_product(ambient_factors, k, ctx)
    if total is None:
        return None
    for key, mult in ss.items():
        if key == x:
            continue
        part = derivative(key, k, ctx)
        if part is None:
            return None
        total = total.subtract(part.scale(mult))
    total.lower_bound = False
    return total


# ---------------------------------------------------------------------------
# irreducibility of induced products
# ---------------------------------------------------------------------------


def _flatten_to_components(factors, ctx: ModContext):
    """Irreducible component labels of all factors, units dropped."""
    comps = []
    for f in factors:
        if isinstance(f, Character):
            f = f.as_irr(ctx)
        if isinstance(f, Expr):
            for sub in f.factors:
                comps.extend(_flatten_to_components([sub], ctx))
            continue
        if not isinstance(f, Irr):
            raise TypeError("cannot use %r as a factor" % (f,))
        f = f.canonical(ctx)
        if f.is_unit:
            continue
        for ram, m in f.zparts:
            comps.append(Irr.of_mseg(m, ram))
        for atom in f.cusps:
            comps.append(Irr.of_atom(atom))
    return comps


def _support_group(comp: Irr):
    """Key identifying which factors can interact under integer twists."""
    if comp.cusps:
        a = comp.cusps[0]
        return ("cusp", a.tag, a.degree, a.ram)
    ram, m = comp.zparts[0]
    parity = m.segs[0].a.twice % 2
    return ("char", ram, parity)


def _st2_segment(comp: Irr, ctx: ModContext) -> Segment | None:
    data = st2_shape(comp, ctx)
    if data is None:
        return None
    anchor, _ = data
    return Segment(anchor, anchor + 1)


def is_irreducible_product(factors, ctx: ModContext) -> Ternary:
    """Decide irreducibility of a product of irreducible labels.

    Within a support group: products of segment characters use the pairwise
    linking criterion; a segment against a nondegenerate pair uses the
    juxtaposition criterion; two nondegenerate pairs use linking of the
    underlying length-2 segments.  Across groups the product is irreducible.
    """
    comps = _flatten_to_components(factors, ctx)
    groups: dict = {}
    for comp in comps:
        groups.setdefault(_support_group(comp), []).append(comp)
    saw_unknown = False
    for key, members in groups.items():
        verdict = _group_verdict(key, members, ctx)
        if verdict is Ternary.REDUCIBLE:
            return Ternary.REDUCIBLE
        if verdict is Ternary.UNKNOWN:
            saw_unknown = True
    return Ternary.UNKNOWN if saw_unknown else Ternary.IRREDUCIBLE


def _group_verdict(key, members, ctx: ModContext) -> Ternary:
    if len(members) == 1:
        return Ternary.IRREDUCIBLE
    if key[0] == "cusp":
        return Ternary.UNKNOWN
    kinds = []
    for comp in members:
        chi = as_character(comp, ctx)
        if chi is not None:
            kinds.append(("seg", comp.zparts[0][1].segs[0]))
            continue
        if cuspidal_kind(comp, ctx) is not None:
            # cuspidal labels never share a support group with characters
            return Ternary.UNKNOWN
        s = _st2_segment(comp, ctx)
        if s is not None:
            kinds.append(("st2", s))
            continue
        kinds.append(("other", None))
    if all(kind == "seg" for kind, _ in kinds):
        for (_, s1), (_, s2) in itertools.combinations(kinds, 2):
            if linked(s1, s2, ctx):
                return Ternary.REDUCIBLE
        return Ternary.IRREDUCIBLE
    if len(kinds) == 2:
        (k1, s1), (k2, s2) = kinds
        if {k1, k2} == {"seg", "st2"}:
            return Ternary.REDUCIBLE if juxtaposed(s1, s2, ctx) else Ternary.IRREDUCIBLE
        if k1 == k2 == "st2":
            return Ternary.REDUCIBLE if linked(s1, s2, ctx) else Ternary.IRREDUCIBLE
    return Ternary.UNKNOWN


def product_label(factors, ctx: ModContext) -> Irr:
    """The label of an irreducible product: the union of its components."""
    out = UNIT
    for comp in _flatten_to_components(factors, ctx):
        out = out.union(comp)
    return out.canonical(ctx)


def commute_product(factors, permutation, ctx: ModContext):
    """Permute the factors of a product known to be irreducible, or None."""
    factors = [f.as_irr(ctx) if isinstance(f, Character) else f for f in factors]
    if is_irreducible_product(factors, ctx) is not Ternary.IRREDUCIBLE:
        return None
    permuted = [factors[i] for i in permutation]
    return Expr.product(*permuted).canonical(ctx)

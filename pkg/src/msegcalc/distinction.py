"""Classification of invariant linear forms under the mirabolic-type subgroup.

Verdicts carry a status, the dimension of the space of invariant forms when
it is known exactly, and a short textual certificate naming the rule used.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import HalfInt, ModContext, congruent, half
from .segments import Segment
from .reps import (
    Character,
    Expr,
    GrothElt,
    Irr,
    RAM_TRIVIAL,
    as_character,
    chars_equal,
    cuspidal_kind,
    make_Lambda,
    make_Lambda_dual,
    pi_shape,
    st2_shape,
    twist,
    z_of_segment,
)
from .calculus import Ternary, derivative, is_irreducible_product, product_label

DISTINGUISHED = "distinguished"
NOT_DISTINGUISHED = "not_distinguished"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class DistinctionVerdict:
    status: str
    dimension: int | None = None
    certificate: str = ""

    def __post_init__(self):
        if self.dimension is not None and self.status != DISTINGUISHED:
            raise ValueError("a dimension needs a distinguished verdict")
        if self.dimension is not None and self.dimension < 1:
            raise ValueError("invariant-form dimensions are >= 1")


def _yes(cert: str, dim: int | None = None) -> DistinctionVerdict:
    return DistinctionVerdict(DISTINGUISHED, dim, cert)


def _no(cert: str) -> DistinctionVerdict:
    return DistinctionVerdict(NOT_DISTINGUISHED, None, cert)


def _unknown(cert: str) -> DistinctionVerdict:
    return DistinctionVerdict(UNKNOWN, None, cert)


def gl2_invariant_form_dims(n_trivial: int, ctx: ModContext):
    """Dimensions (d, e) of invariant forms on the full degree-2 principal
    series, by the number of trivial inducing characters."""
    if n_trivial not in (0, 1, 2):
        raise ValueError("n_trivial must be 0, 1 or 2")
    if n_trivial == 0:
        return (1, 0)
    if ctx.e == 1:
        return (n_trivial + 1, n_trivial)
    return (n_trivial, n_trivial)


def cuspidal_distinguished(n: int) -> DistinctionVerdict:
    """Cuspidal rule: distinguished exactly in degree 2, with a line of forms."""
    if n < 2:
        raise ValueError("needs degree >= 2")
    if n == 2:
        return _yes("cuspidal of degree 2: restriction to the mirabolic is induced "
                    "from a character trivial on the smaller group", 1)
    return _no("cuspidal of degree >= 3: the mirabolic restriction admits no "
               "invariant form")


def classify_gl2(pi: Irr, ctx: ModContext) -> DistinctionVerdict:
    pi = pi.canonical(ctx)
    if pi.degree != 2:
        raise ValueError("needs degree 2")
    chi = as_character(pi, ctx)
    if chi is not None:
        if chi.is_trivial(ctx):
            return _yes("trivial representation", 1)
        return _no("nontrivial 1-dimensional representation")
    if cuspidal_kind(pi, ctx) is not None:
        return _yes("cuspidal of degree 2", 1)
    st2 = st2_shape(pi, ctx)
    if st2 is not None:
        anchor, ram = st2
        central = Character(1, anchor + half("1/2"), ram)
        if ctx.e == 1 and central.is_trivial(ctx):
            return _yes("square-integrable with trivial twist at order one "
                        "(odd characteristic): two independent forms", 2)
        return _yes("square-integrable quotient of a reducible principal series", 1)
    # irreducible principal series: two degree-1 pieces
    pieces = _degree_one_pieces(pi)
    if pieces is not None and len(pieces) == 2:
        hits = [
            c for c in pieces
            if not c.ram and congruent(c.exp, half("1/2"), ctx)
        ]
        if ctx.e == 1 and hits:
            return _yes("principal series induced with one trivial character at "
                        "order one: two independent forms", 2)
        return _yes("irreducible principal series", 1)
    return _unknown("unrecognized degree-2 label")


def _degree_one_pieces(pi: Irr):
    out = []
    for ram, m in pi.zparts:
        for s in m.segs:
            if s.length != 1:
                return None
            out.append(Character(1, s.a, ram))
    if pi.cusps:
        return None
    return out


_memo: dict = {}


def classify(pi, ctx: ModContext) -> DistinctionVerdict:
    """Full classifier; complete for e > 1, partial results at order one.

    Accepts an irreducible label or a product expression; a product must be
    irreducible to be classified.
    """
    if isinstance(pi, Character):
        pi = pi.as_irr(ctx)
    if isinstance(pi, Expr):
        verdict = is_irreducible_product(list(pi.factors), ctx)
        if verdict is Ternary.REDUCIBLE:
            raise ValueError("the product is reducible; classify its constituents")
        if verdict is Ternary.UNKNOWN:
            return _unknown("irreducibility of the product is not settled")
        pi = product_label(list(pi.factors), ctx)
    pi = pi.canonical(ctx)
    key = (pi, ctx)
    if key not in _memo:
        _memo[key] = _classify_core(pi, ctx)
    return _memo[key]


def _classify_core(pi: Irr, ctx: ModContext) -> DistinctionVerdict:
    n = pi.degree
    if n <= 1:
        return _yes("the smaller group is trivial", 1)
    chi = as_character(pi, ctx)
    if chi is not None:
        if chi.is_trivial(ctx):
            return _yes("trivial representation", 1)
        return _no("nontrivial 1-dimensional representation: the determinant "
                   "restriction is a nontrivial character")
    if n == 2:
        return classify_gl2(pi, ctx)
    if cuspidal_kind(pi, ctx) is not None:
        return _no("cuspidal of degree >= 3")
    if ctx.e == 1:
        return _classify_order_one(pi, ctx)
    if _in_main_list(pi, ctx):
        return _yes("member of the classified list")
    if pi.cusps:
        return _no("cuspidal support contains an atom of the wrong degree or "
                   "position for the classified list")
    return _no("character support but outside the classified list")


def _in_main_list(pi: Irr, ctx: ModContext) -> bool:
    n = pi.degree
    if pi == make_Lambda(n, ctx) or pi == make_Lambda_dual(n, ctx):
        return True
    for rho, rest in _splits_with_block(pi, ctx, n - 1):
        if rest.degree != 1:
            continue
        c = as_character(rho, ctx)
        if c is None or c.ram:
            continue
        if not (c.exp - half("1/2")).is_integral:
            continue
        if congruent(c.exp, half("1/2"), ctx) or congruent(c.exp, half("-1/2"), ctx):
            if is_irreducible_product([rho, rest], ctx) is Ternary.IRREDUCIBLE:
                return True
    for rho, rest in _splits_with_block(pi, ctx, n - 2):
        c = as_character(rho, ctx)
        if c is None or c.ram or not c.is_trivial(ctx):
            continue
        tau_char = as_character(rest, ctx)
        if tau_char is not None:
            continue  # finite-dimensional tau
        if is_irreducible_product([rho, rest], ctx) is Ternary.IRREDUCIBLE:
            return True
    return False


def _splits_with_block(pi: Irr, ctx: ModContext, block_degree: int):
    """Ways of writing the label as (one untagged segment of the given degree,
    the label of everything else)."""
    out = []
    for idx, (ram, m) in enumerate(pi.zparts):
        if ram != RAM_TRIVIAL:
            continue
        for j, s in enumerate(m.segs):
            if s.length != block_degree:
                continue
            from .segments import Multisegment

            rho = Irr.of_mseg(Multisegment.of(s))
            rest = Irr(
                tuple(
                    (r, mm) if i != idx else (r, _drop_segment(mm, j))
                    for i, (r, mm) in enumerate(pi.zparts)
                    if i != idx or len(mm.segs) > 1
                ),
                pi.cusps,
            )
            out.append((rho, rest.canonical(ctx)))
    return out


def _drop_segment(m, j):
    from .segments import Multisegment

    return Multisegment.of(*(s for i, s in enumerate(m.segs) if i != j))


def _classify_order_one(pi: Irr, ctx: ModContext) -> DistinctionVerdict:
    shape = pi_shape(pi, ctx)
    if shape is not None:
        n, t, _ = shape
        ram_free = pi.zparts[0][0] == RAM_TRIVIAL
        trivial_twist = ram_free and t.is_integral
        if trivial_twist:
            if ctx.ell is not None and n % ctx.ell != 0:
                return _yes("untwisted nondegenerate quotient at order one; "
                            "two forms (one from each closed orbit)", 2)
            return _yes("untwisted nondegenerate quotient at order one")
        return _no("twisted nondegenerate quotient at order one")
    return _unknown("order-one classification is incomplete beyond the "
                    "catalogued twists")


# ---------------------------------------------------------------------------
# the three-orbit conditions
# ---------------------------------------------------------------------------


@dataclass
class OrbitConditions:
    A: bool | None
    B: bool | None
    C: bool | None
    conclusion: DistinctionVerdict


def three_orbit_conditions(rho: Irr, tau: Irr, ctx: ModContext) -> OrbitConditions:
    """Necessary conditions for distinction of rho x tau; A and B suffice.

    C tests whether the first derivative of rho and of the dual of tau,
    suitably twisted, both contain a trivial constituent; containment is a
    sound over-approximation of having a trivial quotient, so only the
    all-fail direction concludes.
    """
    k, m = rho.degree, tau.degree
    n = k + m
    A = _condition_A(rho, tau, k, n, ctx)
    B = _condition_B(rho, tau, k, n, ctx)
    C = _condition_C(rho, tau, k, n, ctx)
    if A is True or B is True:
        conclusion = _yes("a closed-orbit condition holds")
    elif A is False and B is False and C is False:
        conclusion = _no("all three orbit conditions fail")
    else:
        conclusion = _unknown("orbit conditions undecided")
    return OrbitConditions(A, B, C, conclusion)


def _condition_A(rho: Irr, tau: Irr, k: int, n: int, ctx: ModContext):
    c = as_character(rho, ctx)
    target = Character(k, HalfInt(n - 2 - k))
    if c is None or c.ram or not chars_equal(c, target, ctx):
        return False
    shifted = twist(tau, Character(1, HalfInt(k)), ctx)
    sub = classify(shifted, ctx)
    if sub.status == DISTINGUISHED:
        return True
    if sub.status == NOT_DISTINGUISHED:
        return False
    return None


def _condition_B(rho: Irr, tau: Irr, k: int, n: int, ctx: ModContext):
    c = as_character(tau, ctx)
    target = Character(n - k, HalfInt(-(k - 2)))
    if c is None or c.ram or not chars_equal(c, target, ctx):
        return False
    shifted = twist(rho, Character(1, HalfInt(-(n - k))), ctx)
    sub = classify(shifted, ctx)
    if sub.status == DISTINGUISHED:
        return True
    if sub.status == NOT_DISTINGUISHED:
        return False
    return None


def _condition_C(rho: Irr, tau: Irr, k: int, n: int, ctx: ModContext):
    left = derivative(rho, 1, ctx)
    right = derivative(tau.dual().canonical(ctx), 1, ctx)
    if left is None or right is None:
        return None
    lt = twist(left, Character(1, HalfInt(-(n - 1 - k))), ctx)
    rt = twist(right, Character(1, HalfInt(-(k - 1))), ctx)
    return _contains_trivial(lt, ctx) and _contains_trivial(rt, ctx)


def _contains_trivial(total: GrothElt, ctx: ModContext) -> bool:
    for key, _ in total.items():
        if isinstance(key, Irr):
            c = as_character(key, ctx)
            if c is not None and c.is_trivial(ctx):
                return True
        elif isinstance(key, Expr):
            # a product key may still contain the trivial constituent
            return True
    return False


# ---------------------------------------------------------------------------
# the derivative obstruction
# ---------------------------------------------------------------------------


def derivative_test(pi: Irr, ctx: ModContext) -> str:
    """Returns NOT_DISTINGUISHED when neither low derivative can carry the
    required character quotient, else "inconclusive"."""
    pi = pi.canonical(ctx)
    n = pi.degree
    if n < 3:
        return "inconclusive"
    cond1 = _first_derivative_clear(pi, ctx)
    if cond1 is not True:
        return "inconclusive"
    d2 = derivative(pi, 2, ctx)
    if d2 is None:
        return "inconclusive"
    one_small = Character.one(n - 2).as_irr(ctx)
    if _may_contain(d2, one_small, ctx):
        return "inconclusive"
    return NOT_DISTINGUISHED


def _first_derivative_clear(pi: Irr, ctx: ModContext):
    """Whether the first derivative has no near-trivial character quotient.

    A label whose partition is neither a single row nor a row plus a point
    cannot embed into the degree-(n-1)-character families, so the quotient
    is impossible on shape grounds alone.
    """
    n = pi.degree
    if cuspidal_kind(pi, ctx) is not None:
        return True
    if not pi.cusps and len(pi.zparts) == 1:
        lam = pi.zparts[0][1].lam()
        if lam not in ((n,), (n - 1, 1)):
            return True
    d1 = derivative(pi, 1, ctx)
    if d1 is None:
        return None
    target = Character(n - 1, half("-1/2")).as_irr(ctx)
    return not _may_contain(d1, target, ctx)


def _may_contain(total: GrothElt, label: Irr, ctx: ModContext) -> bool:
    for key, _ in total.items():
        if isinstance(key, Irr):
            if key == label:
                return True
        else:
            return True  # unresolved product: cannot rule it out
    return False


# ---------------------------------------------------------------------------
# the reduction list
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionPattern:
    case: str
    rho: str
    chi: str
    constraints: tuple = ()


def reduction_list(n: int, ctx: ModContext):
    """Symbolic list of the covers rho x chi through which every distinguished
    representation of degree n factors, for e > 1."""
    if n < 3:
        raise ValueError("needs degree >= 3")
    if ctx.e == 1:
        raise ValueError("the reduction list is catalogued for e > 1")
    half_n3 = "nu^{-(n-3)/2}"
    return [
        ReductionPattern("1", "nu_{n-1}^{-1/2}", "any"),
        ReductionPattern("1", "nu_{n-1}^{1/2}", "any"),
        ReductionPattern("2", "Lambda_{n-1}^* . nu^{1/2}", "any"),
        ReductionPattern(
            "3", "1_{n-2} x mu", "any",
            ("mu not in {nu^{-(n-1)/2}, nu^{(n-1)/2}}",),
        ),
        ReductionPattern("4.a", "nu_{n-1}^{1/2}", half_n3),
        ReductionPattern(
            "4.b", "1_{n-2} x mu", half_n3,
            ("mu not in {nu^{-(n-1)/2}, nu^{(n-1)/2}}",),
        ),
        ReductionPattern(
            "4.c", "nu_{n-2} x mu", half_n3,
            ("mu not in {nu^{-(n-3)/2}, nu^{(n+1)/2}}",),
        ),
        ReductionPattern(
            "4.d", "nu_{n-3}^{1/2} x tau", half_n3,
            ("tau infinite-dimensional of degree 2",),
        ),
        ReductionPattern("4.e", "Lambda_{n-1} . nu^{1/2}", half_n3),
        ReductionPattern("4.e", "Lambda_{n-1}^* . nu^{1/2}", half_n3),
    ]


def dual_closure_check(ctx: ModContext, n_range=range(3, 9), exp_range=range(-4, 5)) -> bool:
    """Classification commutes with the contragredient over a label grid."""
    if ctx.e == 1:
        raise ValueError("needs e > 1")
    for n in n_range:
        for pi in _label_grid(n, ctx, exp_range):
            left = classify(pi, ctx).status
            right = classify(pi.dual().canonical(ctx), ctx).status
            if left != right:
                return False
    return True


def _label_grid(n: int, ctx: ModContext, exp_range):
    from .reps import cusp_atom, st2_twist

    yield Character.one(n).as_irr(ctx)
    yield make_Lambda(n, ctx)
    yield make_Lambda_dual(n, ctx)
    big_half = Character(n - 1, half("1/2"))
    big_neg = Character(n - 1, half("-1/2"))
    for c in exp_range:
        for big in (big_half, big_neg):
            cand = Expr.product(big.as_irr(ctx), Character.nu(c).as_irr(ctx))
            if is_irreducible_product(list(cand.factors), ctx) is Ternary.IRREDUCIBLE:
                yield product_label(list(cand.factors), ctx)
        yield Character(n, HalfInt(c)).as_irr(ctx)
    if n >= 4:
        block = Character.one(n - 2).as_irr(ctx)
        for tau in (cusp_atom(2, "tau", ctx), st2_twist(Character(1, half("1/2")), ctx)):
            cand = [block, tau]
            if is_irreducible_product(cand, ctx) is Ternary.IRREDUCIBLE:
                yield product_label(cand, ctx)

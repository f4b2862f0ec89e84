"""Reproduction suites runnable from the command line.

Each suite returns (name, ok, detail) triples; `run` dispatches by name.
These are bounded versions of the full test-suite sweeps, sized to finish
quickly while still exercising every table.
"""
from __future__ import annotations

import random

from .arith import HalfInt, ModContext, congruent, dominates, half, partitions_of
from .segments import Segment, juxtaposed, linked, mseg, seg, support
from .reps import (
    Character,
    Expr,
    GrothElt,
    Irr,
    cusp_atom,
    make_Lambda,
    make_Lambda_dual,
    make_Phi,
    make_Pi,
    make_Psi,
    st2_twist,
    st3_twist,
    twist,
    z_of_segment,
)
from .calculus import Ternary, derivative, geometric_lemma, is_irreducible_product, product_label
from .structure import semisimplify, structure_Z_times_char, subquotients_Z_times_Z01
from .solver import decompose, full_jacquet_length
from . import distinction


def _ctx(e, ell=None):
    if e is None:
        return ModContext(ell=0, e=None)
    return ModContext(ell=ell, e=e)


def suite_char_products():
    out = []
    bad = 0
    for e in (2, 3, 4, 5):
        ctx = _ctx(e)
        for a in range(-3, 3):
            for b in range(a, 3):
                rep = structure_Z_times_char(seg(a, b), Character.nu(0), ctx)
                dec = decompose(
                    [z_of_segment(seg(a, b)).as_irr(ctx), Character.nu(0).as_irr(ctx)], ctx
                )
                if dec.exact is None or dec.exact != rep.constituents:
                    bad += 1
    out.append(("segment-times-character agreement", bad == 0, "%d mismatches" % bad))
    return out


def suite_pair_products():
    out = []
    bad = 0
    for e in (3, 4, 5):
        ctx = _ctx(e)
        for a in range(-3, 3):
            for b in range(a, 3):
                table = subquotients_Z_times_Z01(a, b, ctx)
                dec = decompose(
                    [z_of_segment(seg(a, b)).as_irr(ctx), z_of_segment(seg(0, 1)).as_irr(ctx)],
                    ctx,
                )
                if dec.exact is None or dec.exact != table:
                    bad += 1
    out.append(("segment-times-pair agreement (e > 2)", bad == 0, "%d mismatches" % bad))
    return out


def suite_elimination_trace():
    from .reps import make_L

    ctx = _ctx(3)
    L = make_L(seg(0, 1), ctx)
    dec = decompose([Character(3, HalfInt(4)).as_irr(ctx), L], ctx)
    want = Irr.of_mseg(mseg((1, 3), (0, 0), (1, 1))).canonical(ctx)
    ok1 = dec.exact == GrothElt.single(want)
    excluded = len(dec.candidate_set.by_status("excluded"))
    ok2 = excluded == 6 and len(dec.candidate_set.candidates) == 7
    return [
        ("length-5 elimination: unique survivor", ok1, ""),
        ("length-5 elimination: 7 candidates, 6 exclusions", ok2,
         "%d candidates, %d excluded" % (len(dec.candidate_set.candidates), excluded)),
    ]


def suite_twist_table():
    bad = 0
    for n in range(4, 9):
        for e in (2, 3, 4, 5):
            ctx = _ctx(e)
            got = semisimplify(
                Expr.product(
                    Character(n - 1, half("-1/2")).as_irr(ctx),
                    Character(1, HalfInt(-(n - 3))).as_irr(ctx),
                ),
                ctx,
            )
            exp = GrothElt()
            if e > 2 and (n - 2) % e != 0:
                lab = (
                    Character(n - 1, half("-1/2"))
                    .as_irr(ctx)
                    .union(Character(1, HalfInt(-(n - 3))).as_irr())
                    .canonical(ctx)
                )
                exp.add_term(lab, 1)
            elif e > 2:
                exp.add_term(Character.one(n).as_irr(ctx), 1)
                exp.add_term(twist(make_Pi(n, ctx), Character.nu(-1), ctx), 1)
            elif (n - 2) % 2 != 0:
                exp.add_term(Character(n, half(-1)).as_irr(ctx), 1)
                exp.add_term(make_Pi(n, ctx).dual().canonical(ctx), 1)
            else:
                exp.add_term(Character.one(n).as_irr(ctx), 1)
                exp.add_term(Character(n, half(-1)).as_irr(ctx), 1)
                exp.add_term(make_Pi(n, ctx).dual().canonical(ctx), 1)
            if got != exp:
                bad += 1
            dec = decompose(
                [
                    Character(n - 1, half("-1/2")).as_irr(ctx),
                    Character(1, HalfInt(-(n - 3))).as_irr(ctx),
                ],
                ctx,
            )
            if dec.exact is not None and dec.exact != got:
                bad += 1
    return [("four-regime twist table", bad == 0, "%d mismatches" % bad)]


def suite_triple_product():
    ctx = _ctx(3)
    fac = [Character.nu(k).as_irr(ctx) for k in (-1, 0, 1)]
    ss = semisimplify(Expr.product(*fac), ctx)
    ok1 = ss is not None and ss.total() == 7
    st3 = st3_twist(Character(1, half(0)), ctx)
    ok2 = ss is not None and ss.mult_of(st3) == 1
    ok3 = full_jacquet_length(fac, ctx) == 6
    return [
        ("order-3 triple product has length 7", ok1, ""),
        ("nondegenerate constituent multiplicity 1", ok2, ""),
        ("full chain restriction has length 6", ok3, ""),
    ]


def suite_derivatives():
    bad = 0
    for n in range(2, 9):
        for e in (2, 3, 4, 5, None):
            ctx = _ctx(e)
            f = ctx.f
            pi = make_Pi(n, ctx)
            d1 = derivative(pi, 1, ctx)
            d2 = derivative(pi, 2, ctx) if n >= 2 else None
            if f == 2 and n == 2:
                if d1 is None or d1.terms:
                    bad += 1
                continue
            if d1 is None or d2 is None:
                bad += 1
                continue
            if n > 2 and d2 != GrothElt.single(Character.one(n - 2).as_irr(ctx)):
                bad += 1
            if ctx.f_divides(n):
                want = twist(make_Lambda_dual(n - 1, ctx), Character(1, half("1/2")), ctx)
                if d1 != GrothElt.single(want):
                    bad += 1
            lam = make_Lambda(n, ctx)
            l2 = derivative(lam, 2, ctx)
            if ctx.f_divides(n):
                if l2 is None or l2.terms:
                    bad += 1
            elif n > 2 and l2 != GrothElt.single(Character.one(n - 2).as_irr(ctx)):
                bad += 1
    return [("closed-form derivative tables", bad == 0, "%d mismatches" % bad)]


def suite_distinction():
    bad = 0
    for e in (2, 3, 4, 5):
        ctx = _ctx(e)
        for n in (3, 4, 5, 6):
            for memb in (Character.one(n).as_irr(ctx), make_Lambda(n, ctx), make_Lambda_dual(n, ctx)):
                if distinction.classify(memb, ctx).status != "distinguished":
                    bad += 1
            for k in (1, 2):
                if k % e == 0:
                    continue
                tw = twist(make_Lambda(n, ctx), Character.nu(k), ctx)
                if distinction.classify(tw, ctx).status != "not_distinguished":
                    bad += 1
            if n % e == 0:
                if distinction.classify(make_Pi(n, ctx), ctx).status != "not_distinguished":
                    bad += 1
            if distinction.classify(cusp_atom(n, "rho", ctx), ctx).status != "not_distinguished":
                bad += 1
            if n >= 4 and (n - 1) % e != 0:
                if distinction.derivative_test(make_Phi(n, ctx), ctx) != "not_distinguished":
                    bad += 1
                if distinction.derivative_test(make_Psi(n, ctx), ctx) != "not_distinguished":
                    bad += 1
        if not distinction.dual_closure_check(ctx, n_range=(3, 4, 5), exp_range=range(-3, 4)):
            bad += 1
    return [("distinction classifier invariants", bad == 0, "%d failures" % bad)]


def suite_gl2():
    bad = 0
    for e, ell in ((3, None), (1, 5)):
        ctx = _ctx(e, ell)
        for n_triv in (0, 1, 2):
            got = distinction.gl2_invariant_form_dims(n_triv, ctx)
            if n_triv == 0:
                want = (1, 0)
            elif e == 1:
                want = (n_triv + 1, n_triv)
            else:
                want = (n_triv, n_triv)
            if got != want:
                bad += 1
    ctx3, ctx1 = _ctx(3), _ctx(1, 5)
    checks = [
        (distinction.classify_gl2(st2_twist(Character(1, half(0)), ctx3), ctx3).dimension, 1),
        (distinction.classify_gl2(st2_twist(Character(1, half(0)), ctx1), ctx1).dimension, 2),
        (distinction.classify_gl2(cusp_atom(2, "t", ctx3), ctx3).dimension, 1),
        (distinction.classify_gl2(Character(2, half(1)).as_irr(ctx3), ctx3).status, "not_distinguished"),
        (distinction.classify_gl2(Character.one(2).as_irr(ctx3), ctx3).dimension, 1),
    ]
    for got, want in checks:
        if got != want:
            bad += 1
    return [("degree-2 form dimension tables", bad == 0, "%d mismatches" % bad)]


def suite_axioms():
    rng = random.Random(20260810)
    bad = 0
    ctxs = [_ctx(e) for e in (2, 3, 4, 5)] + [_ctx(None)]
    grid = [HalfInt(t) for t in range(-8, 9)]
    for _ in range(400):
        ctx = rng.choice(ctxs)
        a, b, c = (rng.choice(grid) for _ in range(3))
        if congruent(a, b, ctx) != congruent(b, a, ctx):
            bad += 1
        if congruent(a, b, ctx) and congruent(b, c, ctx) and not congruent(a, c, ctx):
            bad += 1
    for _ in range(400):
        ctx = rng.choice(ctxs)
        segs = []
        for _ in range(2):
            x = rng.choice(grid)
            segs.append(Segment(x, x + rng.randrange(0, 3)))
        if linked(segs[0], segs[1], ctx) != linked(segs[1], segs[0], ctx):
            bad += 1
        if juxtaposed(segs[0], segs[1], ctx) != juxtaposed(segs[1], segs[0], ctx):
            bad += 1
    for lam in partitions_of(6):
        for mu in partitions_of(6):
            d1, d2 = dominates(lam, mu), dominates(mu, lam)
            if d1 and d2 and lam != mu:
                bad += 1
    for _ in range(150):
        ctx = rng.choice(ctxs)
        n_fac = rng.randrange(2, 4)
        factors = []
        for _ in range(n_fac):
            x = HalfInt(rng.randrange(-6, 7) * 2)
            factors.append(z_of_segment(Segment(x, x + rng.randrange(0, 3))).as_irr(ctx))
        total = sum(f.degree for f in factors)
        k = rng.randrange(1, total)
        out = geometric_lemma(factors, (k, total - k), ctx)
        target = support(_concat(factors), ctx)
        for key, _mult in out.items():
            got = _tuple_support(key, ctx)
            if got != target:
                bad += 1
    return [("axiom and conservation spot checks", bad == 0, "%d violations" % bad)]


def _concat(factors):
    m = mseg()
    for f in factors:
        for _ram, mm in f.zparts:
            m = m.add(mm)
    return m


def _tuple_support(key, ctx):
    from collections import Counter

    total = Counter()
    for slot in key:
        for f in slot.factors:
            for _ram, mm in f.zparts:
                total.update(support(mm, ctx))
    return total


SUITES = {
    "char-products": suite_char_products,
    "pair-products": suite_pair_products,
    "elimination-trace": suite_elimination_trace,
    "twist-table": suite_twist_table,
    "triple-product": suite_triple_product,
    "derivatives": suite_derivatives,
    "distinction": suite_distinction,
    "gl2": suite_gl2,
    "axioms": suite_axioms,
}


def run(names):
    results = []
    wanted = list(SUITES) if "all" in names else names
    for name in wanted:
        if name not in SUITES:
            results.append((name, False, "unknown suite"))
            continue
        results.extend(SUITES[name]())
    return results

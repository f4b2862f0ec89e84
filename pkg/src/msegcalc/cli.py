"""Command-line interface: expression parser, rendering, and verification.

Exit codes: 0 success, 1 parse or usage error, 2 unknown result,
3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .arith import ContextError, HalfInt, ModContext, half
from .segments import Multisegment, Segment
from .reps import (
    Character,
    CuspAtom,
    Expr,
    GrothElt,
    Irr,
    RAM_TRIVIAL,
    as_character,
    cuspidal_kind,
    make_L,
    make_Lambda,
    make_Lambda_dual,
    make_Phi,
    make_Pi,
    make_Psi,
    phi_psi_shape,
    pi_shape,
    st2_shape,
    st3_shape,
    st2_twist,
    st3_twist,
    twist,
    dual as dual_of,
)
from .calculus import Ternary, derivative, geometric_lemma, is_irreducible_product
from . import structure as structure_mod
from . import solver as solver_mod
from . import distinction as distinction_mod

SCHEMA = "msegcalc/1"


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__("at position %d: %s" % (pos, message))
        self.pos = pos


_TOKEN = re.compile(
    r"""
    (?P<name>Z\[|L\[|St_|Pi_|Lambda_|Phi_|Psi_|cusp\(|nu|chi\(|1_)
    | (?P<num>-?\d+(?:/2)?)
    | (?P<punct>[\[\](),;^*.x])
    """,
    re.VERBOSE,
)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, literal: str) -> bool:
        self.skip_ws()
        return self.text.startswith(literal, self.pos)

    def eat(self, literal: str) -> bool:
        if self.peek(literal):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str):
        if not self.eat(literal):
            raise ParseError("expected %r" % literal, self.pos)

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def half_int(self) -> HalfInt:
        self.skip_ws()
        m = re.match(r"-?\d+(?:/2)?", self.text[self.pos:])
        if not m:
            raise ParseError("expected a half-integer", self.pos)
        self.pos += m.end()
        return half(m.group(0))

    def integer(self) -> int:
        self.skip_ws()
        m = re.match(r"-?\d+", self.text[self.pos:])
        if not m:
            raise ParseError("expected an integer", self.pos)
        self.pos += m.end()
        return int(m.group(0))

    def tag(self) -> str:
        self.skip_ws()
        m = re.match(r"[A-Za-z_][A-Za-z0-9_*]*", self.text[self.pos:])
        if not m:
            raise ParseError("expected a tag name", self.pos)
        self.pos += m.end()
        return m.group(0)


def parse_expr(text: str, ctx: ModContext) -> Expr:
    """Parse the product grammar into a canonical expression."""
    sc = _Scanner(text)
    factors = [_parse_factor(sc, ctx)]
    while True:
        sc.skip_ws()
        if sc.eat("x") or sc.eat("*"):
            factors.append(_parse_factor(sc, ctx))
        else:
            break
    if not sc.at_end():
        raise ParseError("unexpected trailing input", sc.pos)
    return Expr.product(*factors).canonical(ctx)


def _parse_factor(sc: _Scanner, ctx: ModContext) -> Irr:
    sc.skip_ws()
    base = _parse_atom(sc, ctx)
    while sc.peek("."):
        sc.expect(".")
        base = base.twist(_parse_twist(sc, ctx))
    return base.canonical(ctx)


def _parse_twist(sc: _Scanner, ctx: ModContext) -> Character:
    if sc.eat("nu^"):
        return Character(1, sc.half_int())
    if sc.eat("chi("):
        tag = sc.tag()
        sc.expect(")")
        power = 1
        if sc.eat("^"):
            power = sc.integer()
        return Character(1, half(0), ((tag, power),) if power else RAM_TRIVIAL)
    raise ParseError("expected a twist (nu^k or chi(tag))", sc.pos)


def _parse_atom(sc: _Scanner, ctx: ModContext) -> Irr:
    pos = sc.pos
    if sc.eat("Z["):
        segs = [_parse_segment(sc)]
        while sc.eat(";"):
            segs.append(_parse_segment(sc))
        sc.expect("]")
        return Irr.of_mseg(Multisegment.of(*segs))
    if sc.eat("L["):
        a = sc.half_int()
        sc.expect(",")
        b = sc.half_int()
        sc.expect("]")
        return make_L(Segment(a, b), ctx)
    if sc.eat("nu"):
        degree = 1
        if sc.eat("_"):
            degree = sc.integer()
        sc.expect("^")
        exp = sc.half_int()
        if sc.eat("_"):
            degree = sc.integer()
        return Character(degree, exp).as_irr()
    if sc.eat("1_"):
        return Character.one(sc.integer()).as_irr()
    if sc.eat("St_"):
        n = sc.integer()
        if n == 2:
            return st2_twist(Character(1, half(0)), ctx)
        if n == 3:
            return st3_twist(Character(1, half(0)), ctx)
        raise ParseError("only St_2 and St_3 are named", pos)
    if sc.eat("Pi_"):
        n = sc.integer()
        out = make_Pi(n, ctx)
        if sc.eat("^*"):
            out = out.dual()
        return out
    if sc.eat("Lambda_"):
        n = sc.integer()
        if sc.eat("^*"):
            return make_Lambda_dual(n, ctx)
        return make_Lambda(n, ctx)
    if sc.eat("Phi_"):
        return make_Phi(sc.integer(), ctx)
    if sc.eat("Psi_"):
        return make_Psi(sc.integer(), ctx)
    if sc.eat("cusp("):
        d = sc.integer()
        sc.expect(",")
        tag = sc.tag()
        sc.expect(")")
        return Irr.of_atom(CuspAtom(d, tag, half(0)))
    raise ParseError("expected a factor", pos)


def _parse_segment(sc: _Scanner) -> Segment:
    a = sc.half_int()
    if sc.eat(","):
        b = sc.half_int()
    else:
        b = a
    return Segment(a, b)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render_half(x: HalfInt) -> str:
    return str(x)


def render_character(c: Character, ctx: ModContext) -> str:
    ram = _render_ram(c.ram)
    exp = ctx.class_rep(c.exp)
    if not c.ram and exp == half(0):
        return "1_%d" % c.degree
    if c.degree == 1:
        core = "nu^%s" % exp if exp != half(0) else "1_1"
    else:
        core = "nu_%d^%s" % (c.degree, exp)
    return core + ram


def _render_ram(ram) -> str:
    out = ""
    for tag, power in ram:
        out += " . chi(%s)" % tag if power == 1 else " . chi(%s)^%d" % (tag, power)
    return out


def render_irr(x: Irr, ctx: ModContext) -> str:
    if x.is_unit:
        return "Z[]"
    parts = []
    for ram, m in x.zparts:
        parts.append(_render_zpart(ram, m, ctx))
    for a in x.cusps:
        text = "cusp(%d,%s)" % (a.degree, a.tag)
        if a.exp != half(0):
            text += " . nu^%s" % a.exp
        text += _render_ram(a.ram)
        parts.append(text)
    return " x ".join(parts)


def _render_zpart(ram, m: Multisegment, ctx: ModContext) -> str:
    plain = Irr.of_mseg(m)
    chi = as_character(plain, ctx)
    if chi is not None:
        return render_character(Character(chi.degree, chi.exp, ram), ctx)
    suffix = _render_ram(ram)
    if ram == RAM_TRIVIAL:
        named = _render_named(plain, ctx)
        if named is not None:
            return named
    data = st2_shape(plain, ctx)
    if data is not None:
        anchor, _ = data
        c = anchor + half("1/2")
        return ("St_2" if c == half(0) else "St_2 . nu^%s" % c) + suffix
    data = st3_shape(plain, ctx)
    if data is not None:
        center, _ = data
        return ("St_3" if center == half(0) else "St_3 . nu^%s" % center) + suffix
    body = "; ".join(
        "%s,%s" % (s.a, s.b) for s in m.segs
    )
    return "Z[%s]%s" % (body, suffix)


def _render_named(plain: Irr, ctx: ModContext) -> str | None:
    shape = pi_shape(plain, ctx)
    if shape is not None:
        n, t, variant = shape
        name = "Pi_%d" % n if variant == "pi" else "Pi_%d^*" % n
        check = make_Pi(n, ctx) if variant == "pi" else make_Pi(n, ctx).dual()
        if twist(check.canonical(ctx), Character(1, t), ctx) == plain.canonical(ctx):
            return name if t == half(0) else "%s . nu^%s" % (name, t)
        return None
    shape = phi_psi_shape(plain, ctx)
    if shape is not None:
        kind, n, t = shape
        name = "Phi_%d" % n if kind == "phi" else "Psi_%d" % n
        base = make_Phi(n, ctx) if kind == "phi" else make_Psi(n, ctx)
        if twist(base, Character(1, t), ctx) == plain.canonical(ctx):
            return name if t == half(0) else "%s . nu^%s" % (name, t)
    return None


def render_key(key, ctx: ModContext) -> str:
    if isinstance(key, Irr):
        return render_irr(key, ctx)
    if isinstance(key, Expr):
        return " x ".join(render_irr(f, ctx) for f in key.factors)
    if isinstance(key, tuple):
        return " (x) ".join(render_key(e, ctx) for e in key)
    return str(key)


def render_groth(g: GrothElt, ctx: ModContext) -> str:
    if not g.terms:
        return "0"
    bits = []
    for key, mult in sorted(g.items(), key=lambda kv: render_key(kv[0], ctx)):
        text = render_key(key, ctx)
        bits.append(text if mult == 1 else "%d*(%s)" % (mult, text))
    out = " + ".join(bits)
    if g.lower_bound:
        out += "   [multiplicities are lower bounds]"
    return out


def groth_json(g: GrothElt, ctx: ModContext):
    return {
        "terms": [
            {"label": render_key(k, ctx), "multiplicity": m}
            for k, m in sorted(g.items(), key=lambda kv: render_key(kv[0], ctx))
        ],
        "lower_bound": g.lower_bound,
    }


def render(result, fmt: str, ctx: ModContext) -> str:
    """Deterministic rendering of any result kind."""
    if fmt == "json":
        return json.dumps(_jsonable(result, ctx), sort_keys=True)
    if isinstance(result, GrothElt):
        return render_groth(result, ctx)
    if isinstance(result, (Irr, Expr)):
        return render_key(result, ctx)
    return str(result)


def _jsonable(result, ctx: ModContext):
    base = {"schema": SCHEMA}
    if isinstance(result, GrothElt):
        base["sum"] = groth_json(result, ctx)
    elif isinstance(result, (Irr, Expr)):
        base["label"] = render_key(result, ctx)
    else:
        base["value"] = str(result)
    return base


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _context_from(args) -> ModContext:
    if args.e is None:
        raise ContextError("--e is required (a positive integer or 'inf')")
    if args.e == "inf":
        return ModContext(ell=0, e=None)
    e = int(args.e)
    return ModContext(ell=args.ell, e=e)


def _emit(payload: dict, text: str, args) -> None:
    if args.json:
        payload["schema"] = SCHEMA
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_classify(args) -> int:
    ctx = _context_from(args)
    expr = parse_expr(args.expr, ctx)
    try:
        verdict = distinction_mod.classify(expr, ctx)
    except ValueError as err:
        print("error: %s" % err, file=sys.stderr)
        return 1
    payload = {
        "status": verdict.status,
        "certificate": verdict.certificate,
    }
    if verdict.dimension is not None:
        payload["dimension"] = verdict.dimension
    text = verdict.status
    if verdict.dimension is not None:
        text += " (dimension %d)" % verdict.dimension
    text += ": " + verdict.certificate
    _emit(payload, text, args)
    return 2 if verdict.status == "unknown" else 0


def cmd_semisimplify(args) -> int:
    ctx = _context_from(args)
    expr = parse_expr(args.expr, ctx)
    out = structure_mod.semisimplify(expr, ctx)
    if out is None:
        _emit({"status": "unknown"}, "unknown: not in the catalogue", args)
        return 2
    _emit({"sum": groth_json(out, ctx)}, render_groth(out, ctx), args)
    return 0


def cmd_structure(args) -> int:
    ctx = _context_from(args)
    expr = parse_expr(args.expr, ctx)
    report = _structure_report(expr, ctx)
    if report is None:
        _emit({"status": "unknown"}, "unknown: not a catalogued family", args)
        return 2
    payload = {
        "length": report.length,
        "constituents": groth_json(report.constituents, ctx) if report.constituents else None,
        "socle": render_irr(report.socle, ctx) if report.socle else None,
        "cosocle": render_irr(report.cosocle, ctx) if report.cosocle else None,
        "sequence": [render_irr(x, ctx) for x in report.sequence] if report.sequence else None,
        "indecomposable": report.indecomposable,
        "semisimple": report.semisimple,
        "finite_quotient": report.finite_quotient,
    }
    lines = ["length: %s" % (report.length,)]
    if report.constituents is not None:
        lines.append("constituents: %s" % render_groth(report.constituents, ctx))
    if report.socle is not None:
        lines.append("socle: %s" % render_irr(report.socle, ctx))
    if report.cosocle is not None:
        lines.append("cosocle: %s" % render_irr(report.cosocle, ctx))
    if report.sequence is not None:
        lines.append("sequence: " + "  ->  ".join(render_irr(x, ctx) for x in report.sequence))
    if report.indecomposable is not None:
        lines.append("indecomposable: %s" % report.indecomposable)
    if report.semisimple is not None:
        lines.append("semisimple: %s" % report.semisimple)
    if report.finite_quotient:
        lines.append("finite quotient: %s" % report.finite_quotient)
    _emit(payload, "\n".join(lines), args)
    return 0


def _structure_report(expr: Expr, ctx: ModContext):
    factors = [f for f in expr.factors if not f.is_unit]
    if len(factors) == 1:
        chi = as_character(factors[0], ctx)
        return structure_mod._irreducible_report(factors[0])
    if len(factors) == 2:
        c0 = as_character(factors[0], ctx)
        c1 = as_character(factors[1], ctx)
        if c0 is not None and c1 is not None and c1.degree == 1 and len(factors[0].zparts) == 1:
            return structure_mod.structure_Z_times_char(
                factors[0].zparts[0][1].segs[0], c1, ctx
            )
        if c0 is not None and c1 is not None and c0.degree == 1 and len(factors[1].zparts) == 1:
            # same constituents; socle and cosocle swap sides
            rep = structure_mod.structure_Z_times_char(
                factors[1].zparts[0][1].segs[0], c0, ctx
            )
            if rep is None or rep.length == 1:
                return rep
            return structure_mod.StructureReport(
                length=rep.length,
                constituents=rep.constituents,
                socle=rep.cosocle,
                cosocle=rep.socle,
                sequence=list(reversed(rep.sequence)) if rep.sequence else None,
                indecomposable=rep.indecomposable,
                semisimple=rep.semisimple,
                finite_quotient=rep.finite_quotient,
            )
    ss = structure_mod.semisimplify(expr, ctx)
    if ss is None:
        return None
    return structure_mod.StructureReport(
        length=ss.total() if not ss.lower_bound else (ss.total(), None),
        constituents=ss,
    )


def cmd_jacquet(args) -> int:
    ctx = _context_from(args)
    expr = parse_expr(args.expr, ctx)
    beta = tuple(int(p) for p in args.beta.split(","))
    out = geometric_lemma(list(expr.factors), beta, ctx)
    _emit({"sum": groth_json(out, ctx)}, render_groth(out, ctx), args)
    return 0


def cmd_derive(args) -> int:
    ctx = _context_from(args)
    expr = parse_expr(args.expr, ctx)
    out = derivative(expr, args.k, ctx)
    if out is None:
        _emit({"status": "unknown"}, "unknown: derivative not catalogued", args)
        return 2
    _emit({"sum": groth_json(out, ctx)}, render_groth(out, ctx), args)
    return 0


def cmd_irreducible(args) -> int:
    ctx = _context_from(args)
    expr = parse_expr(args.expr, ctx)
    verdict = is_irreducible_product(list(expr.factors), ctx)
    text = verdict.value
    _emit({"irreducible": text}, text, args)
    return 2 if verdict is Ternary.UNKNOWN else 0


def cmd_dual(args) -> int:
    ctx = _context_from(args)
    expr = parse_expr(args.expr, ctx)
    out = dual_of(expr, ctx)
    _emit({"label": render_key(out, ctx)}, render_key(out, ctx), args)
    return 0


def cmd_solve(args) -> int:
    ctx = _context_from(args)
    expr = parse_expr(args.expr, ctx)
    dec = solver_mod.decompose(list(expr.factors), ctx)
    lines = []
    payload = {
        "exact": dec.exact is not None,
        "chain_length": dec.chain_length,
        "result": groth_json(dec.exact if dec.exact is not None else dec.bounds, ctx),
        "candidates": [],
    }
    for cand in dec.candidate_set.candidates:
        entry = {
            "label": render_irr(cand.label, ctx),
            "status": cand.status,
            "lower": cand.lower,
            "upper": cand.upper,
            "reason": cand.reason,
        }
        if args.trace:
            entry["trace"] = list(cand.trace)
        payload["candidates"].append(entry)
    if dec.exact is not None:
        lines.append(render_groth(dec.exact, ctx))
    else:
        lines.append("partial: " + render_groth(dec.bounds, ctx))
    if args.trace:
        lines.append("chain length: %d" % dec.chain_length)
        for cand in dec.candidate_set.candidates:
            lines.append(
                "%-11s [%s,%s]  %s" % (
                    cand.status,
                    cand.lower,
                    "?" if cand.upper is None else cand.upper,
                    render_irr(cand.label, ctx),
                )
            )
            for note in cand.trace:
                lines.append("    " + note)
    _emit(payload, "\n".join(lines), args)
    return 0 if dec.exact is not None else 2


def cmd_verify(args) -> int:
    from . import verify as verify_mod

    names = args.suites or ["all"]
    results = verify_mod.run(names)
    failures = 0
    for name, ok, detail in results:
        status = "pass" if ok else "FAIL"
        print("%-34s %s%s" % (name, status, "  (%s)" % detail if detail else ""))
        if not ok:
            failures += 1
    print("%d checks, %d failures" % (len(results), failures))
    return 3 if failures else 0


def main(argv=None) -> int:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--ell", type=int, default=None,
                        help="coefficient characteristic (0 for characteristic zero)")
    shared.add_argument("--e", default=None,
                        help="order of the residue cardinality, or 'inf'")
    shared.add_argument("--json", action="store_true", help="machine-readable output")
    shared.add_argument("--trace", action="store_true", help="per-candidate elimination log")

    parser = argparse.ArgumentParser(
        prog="msegcalc",
        description="exact calculus of multisegment labels and their invariant forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn in [
        ("classify", cmd_classify),
        ("semisimplify", cmd_semisimplify),
        ("structure", cmd_structure),
        ("irreducible", cmd_irreducible),
        ("solve", cmd_solve),
        ("dual", cmd_dual),
    ]:
        p = sub.add_parser(name, parents=[shared])
        p.add_argument("expr")
        p.set_defaults(fn=fn)
    p = sub.add_parser("derive", parents=[shared])
    p.add_argument("--k", type=int, default=1)
    p.add_argument("expr")
    p.set_defaults(fn=cmd_derive)
    p = sub.add_parser("jacquet", parents=[shared])
    p.add_argument("--beta", required=True, help="comma-separated composition")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_jacquet)
    p = sub.add_parser("verify", parents=[shared])
    p.add_argument("suites", nargs="*", help="suite names (default: all)")
    p.set_defaults(fn=cmd_verify)

    argv = list(sys.argv[1:] if argv is None else argv)
    commands = set(sub.choices)
    for i, token in enumerate(argv):
        if token in commands:
            # flags are accepted on either side of the subcommand
            argv = [token] + argv[:i] + argv[i + 1:]
            break
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, ContextError, ValueError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""``cfreduce``: command-line front end.

Subcommands::

    expand     partial quotients of sqrt(D), of a series, or of Cantor's G_3
    reduce     reduce mod p or specialise t -> tau, optionally verifying that
               the deduplicated reduced convergents are those of the reduction
    regulator  regulators of sqrt(D) at a list of primes
    yu         non-periodicity certificate from regulators at several primes
    family     the quartic family (X^2+u)^2 + 4v(X+w): s-sequence, closed
               forms, torsion conditions

Exit codes: 0 success (including inconclusive certificates and precision
running out), 1 other failure, 2 parse or usage error, 3 square root in
characteristic 2, 4 bad reduction or specialisation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import GF, QQ, QQt, Poly, RationalFunction, is_prime
from .cf import (ContinuedFraction, detect_quasi_period, expand_series,
                 expand_surd)
from .families import (INF, FamilyParams, closed_form_quotients,
                       quotient_closed_forms, regulator, regulator_sweep,
                       s_sequence, torsion_condition, yu_certificate)
from .parsing import ParseError, parse_coefficient, parse_entry, parse_poly
from .reduction import (BadReduction, ParamPoint, _map_poly, reduce_mod_p,
                        specialize, verify_reduction_theorem)
from .series import CharacteristicTwo, LaurentSeries, g3_series
from .transform import FormalCF, canonicalize

SCHEMA = "cfreduce/1"

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CHAR2, EXIT_BAD_REDUCTION = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# serialisation


def elem(field, c) -> str:
    if c is INF:
        return "oo"
    return field.fmt(c)


def field_name(F) -> str:
    if F is QQ:
        return "QQ"
    if F is QQt:
        return "QQ(t)"
    return f"GF({F.characteristic})"


def poly_json(p: Poly) -> dict:
    return {"coeffs": [elem(p.field, c) for c in p.coeffs], "text": str(p),
            "deg": p.deg if p else None}


def quotients_json(entries) -> list:
    return [dict(h=h, **poly_json(a)) for h, a in enumerate(entries)]


def emit(report: dict, as_json: bool, lines: list[str]):
    if as_json:
        print(json.dumps({"schema": SCHEMA, **report}, indent=2))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# inputs


def parse_int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise ParseError(f"expected a comma separated list of integers, got {text!r}") from None
    if not out:
        raise ParseError("empty list")
    return out


def parse_tau(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"parameter value must be a rational number, got {text!r}") from None


def read_coeffs(text: str):
    """``(polynomial text, [coefficient texts])`` from ``"P; c1, c2, ..."`` or stdin."""
    if text == "-":
        lines = [ln.strip() for ln in sys.stdin.read().splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ParseError("no input on stdin")
        return lines[0], lines[1:]
    head, sep, tail = text.partition(";")
    rest = [c.strip() for c in tail.split(",") if c.strip()] if sep else []
    return head.strip(), rest


def series_from_coeffs(text: str) -> LaurentSeries:
    """``P + c_1 X^-1 + ... + c_n X^-n``, known through ``X^-n``."""
    head, rest = read_coeffs(text)
    joined = " ".join([head] + rest)
    F = QQt if any(ch == "t" for ch in joined) else QQ
    poly = parse_poly(head, F)
    tail = [parse_coefficient(c, F) for c in rest]
    top = max(poly.deg, 0) if poly else 0
    coeffs = [poly.coeff(k) for k in range(top, -1, -1)] + tail
    return LaurentSeries.from_coeffs(coeffs, top, F, prec=len(coeffs))


def load_source(args):
    """``(kind, object, label)`` for the chosen input flag."""
    if args.sqrt is not None:
        d = parse_poly(args.sqrt)
        return "sqrt", d, f"sqrt({d})"
    if args.coeffs is not None:
        f = series_from_coeffs(args.coeffs)
        return "series", f, f"series {f}"
    if getattr(args, "formal", None) is not None:
        parts = [p for p in args.formal.split(";") if p.strip()]
        if not parts:
            raise ParseError("empty formal continued fraction")
        F = QQt if "t" in args.formal else QQ
        cf = FormalCF([parse_entry(p, F) for p in parts], F)
        return "formal", cf, f"formal {list(map(str, cf.entries))}"
    if args.g3:
        prec = args.prec if args.prec is not None else 60
        return "series", g3_series(prec), f"G_3 to {prec} terms"
    raise UsageError("choose an input: --sqrt, --coeffs or --g3")


def apply_target(kind, obj, mod=None, tau=None):
    """Specialise and/or reduce the source object."""
    if tau is not None:
        if obj.field is not QQt:
            raise UsageError("--param-value needs an input involving t")
        obj = _specialize_any(kind, obj, tau)
    if mod is not None:
        if obj.field is not QQ:
            raise UsageError("--mod needs rational coefficients (specialise t first)")
        if kind == "sqrt" and mod == 2:
            raise CharacteristicTwo("sqrt expansion is excluded in characteristic 2")
        obj = _reduce_any(kind, obj, mod)
    return obj


def _specialize_any(kind, obj, tau):
    if kind == "formal":
        return _map_formal(obj, ParamPoint(tau), QQ)
    return specialize(obj, tau)


def _reduce_any(kind, obj, p):
    if kind == "formal":
        return _map_formal(obj, p, GF(p))
    return reduce_mod_p(obj, p)


def _map_formal(cf: FormalCF, target, F):
    entries = []
    for e in cf.entries:
        num, den = _map_poly(e.num, target, "entry"), _map_poly(e.den, target, "entry")
        if not den:
            raise BadReduction(target, e, "formal entry")
        entries.append(RationalFunction(num, den))
    return FormalCF(entries, F)


def check_prime(p: int):
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# expand


def expansion(kind, obj, n: int):
    """``(ContinuedFraction, extra report fields, extra text lines)``."""
    if kind == "sqrt":
        cf, state = expand_surd(obj, n)
        info = detect_quasi_period(state)
        rep = {"engine": "surd", "status": state.status}
        lines = []
        if state.status == "complete":
            lines.append("D is a perfect square: the expansion is finite")
        if info is None:
            rep["quasi_period"] = None
            if state.status != "complete":
                lines.append(f"no quasi-period within {len(cf)} quotients")
        else:
            rep["quasi_period"] = {"r": info.r, "m": info.m,
                                   "kappa": elem(obj.field, info.kappa),
                                   "full_period": info.full_period}
            per = f", full period {info.full_period}" if info.full_period else ""
            lines.append(f"periodic: quasi-period r = {info.r}, degree sum m = {info.m}, "
                         f"kappa = {elem(obj.field, info.kappa)}{per}")
        return cf, rep, lines
    if kind == "formal":
        cf = canonicalize(obj)
        return cf, {"engine": "euclid", "status": "complete"}, []
    cf = expand_series(obj, n)
    exhausted = not cf.complete and len(cf) < n
    rep = {"engine": "series", "status": "complete" if cf.complete else
           ("precision" if exhausted else "bound"),
           "precision_exhausted": exhausted}
    lines = []
    if exhausted:
        lines.append(f"precision exhausted: only {len(cf)} quotients are determined")
    return cf, rep, lines


def describe_quotients(cf: ContinuedFraction) -> list[str]:
    return [f"a_{h} = {a}" for h, a in enumerate(cf)]


def cmd_expand(args) -> int:
    kind, obj, label = load_source(args)
    if kind == "formal":
        raise UsageError("expand takes --sqrt, --coeffs or --g3")
    if args.mod is not None:
        check_prime(args.mod)
    tau = parse_tau(args.param_value) if args.param_value is not None else None
    obj = apply_target(kind, obj, args.mod, tau)
    n = args.quotients
    if n is None:
        n = 10 if kind == "sqrt" else obj.prec if obj.prec != float("inf") else 10
    cf, rep, extra = expansion(kind, obj, n)
    F = cf.field if len(cf) else obj.field
    report = {"command": "expand", "input": label, "field": field_name(F),
              "target": _target_json(args.mod, tau), **rep,
              "complete": cf.complete, "quotients": quotients_json(cf)}
    head = f"{label} over {field_name(F)}"
    if args.mod is not None or tau is not None:
        head += f" (image {_target_text(args.mod, tau)})"
    tail = "exact (finite expansion)" if cf.complete else f"{len(cf)} guaranteed quotients (truncated)"
    emit(report, args.json, [head] + describe_quotients(cf) + extra + [tail])
    return EXIT_OK


def _target_json(mod, tau):
    out = {}
    if tau is not None:
        out["param_value"] = str(tau)
    if mod is not None:
        out["mod"] = mod
    return out or None


def _target_text(mod, tau):
    parts = []
    if tau is not None:
        parts.append(f"t = {tau}")
    if mod is not None:
        parts.append(f"mod {mod}")
    return ", ".join(parts)


# ---------------------------------------------------------------------------
# reduce


def cmd_reduce(args) -> int:
    kind, obj, label = load_source(args)
    if (args.mod is None) == (args.param_value is None):
        raise UsageError("reduce needs exactly one of --mod and --param-value")
    if args.mod is not None:
        check_prime(args.mod)
        target = args.mod
    else:
        target = ParamPoint(parse_tau(args.param_value))
    tau = None if args.mod is not None else target.tau
    report = {"command": "reduce", "input": label, "target": _target_json(args.mod, tau)}
    head = f"{label}, {_target_text(args.mod, tau)}"
    try:
        image = apply_target(kind, obj, args.mod, tau)
    except CharacteristicTwo as e:
        report.update(verdict="BAD-REDUCTION", reason="characteristic 2", detail=str(e))
        emit(report, args.json, [head, f"bad reduction: {e}"])
        return EXIT_CHAR2
    except BadReduction as e:
        report.update(verdict="BAD-REDUCTION", reason="coefficient", detail=str(e))
        emit(report, args.json, [head, f"bad reduction: {e}"])
        return EXIT_BAD_REDUCTION

    if not args.verify:
        depth = args.depth + 1
        cf, rep, extra = expansion(kind, image, depth)
        src, _, _ = expansion(kind, obj, depth)
        blow = _blowups(src, target)
        report.update(field=field_name(cf.field), source_quotients=quotients_json(src),
                      blowups=blow, reduced_quotients=quotients_json(cf), **rep)
        lines = [head, "source expansion:"] + describe_quotients(src)
        lines.append("blowups at " + (", ".join(f"a_{b['h']}" for b in blow) or "none"))
        lines += ["expansion of the image:"] + describe_quotients(cf) + extra
        emit(report, args.json, lines)
        return EXIT_OK

    rep = verify_reduction_theorem(obj, target, args.depth)
    classes = [list(c) for c in rep.collapse_classes]
    reduced = [{"h_lo": r.h_lo, "h_hi": r.h_hi, "normalizer": r.normalizer,
                "x": poly_json(r.x), "y": poly_json(r.y)} for r in rep.reduced]
    report.update(verdict=rep.verdict, matched=rep.matched, collapse_classes=classes,
                  blowups=[{"h": h, "coefficient": str(c)} for h, c in sorted(rep.blowups.items())],
                  reduced_convergents=reduced, note=rep.note or None)
    lines = [head]
    for r in rep.reduced:
        idx = f"{r.h_lo}" if r.h_lo == r.h_hi else f"{r.h_lo}..{r.h_hi}"
        lines.append(f"h = {idx}: ({r.x}) / ({r.y})   c = {r.normalizer}")
    lines.append("collapse classes: " + (", ".join(f"({a},{b})" for a, b in classes) or "none"))
    if rep.blowups:
        lines.append("blowups at " + ", ".join(f"a_{h}" for h in sorted(rep.blowups)))
    if rep.note:
        lines.append(f"note: {rep.note}")
    lines.append(f"{rep.verdict}: {rep.matched} reduced convergents matched")
    emit(report, args.json, lines)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _blowups(cf, target) -> list:
    out = []
    for h, a in enumerate(cf):
        try:
            _map_poly(a, target)
        except BadReduction as e:
            out.append({"h": h, "coefficient": str(e.coefficient)})
    return out


# ---------------------------------------------------------------------------
# regulator and yu


def _sweep(args):
    d = parse_poly(args.sqrt)
    if d.field is not QQ:
        raise UsageError("regulators need rational coefficients")
    primes = parse_int_list(args.primes)
    for p in primes:
        check_prime(p)
    return d, primes, regulator_sweep(d, primes, args.bound)


def _reg_json(F_of, p, r):
    out = {"p": p, "status": r.status, "m": r.m}
    if r.status == "ok":
        out.update(r=r.r, kappa=elem(F_of(p), r.kappa), full_period=r.full_period)
    if r.reason:
        out["reason"] = r.reason
    return out


def _reg_line(p, r):
    if r.status == "ok":
        return f"p = {p}: m = {r.m} (quasi-period r = {r.r})"
    return f"p = {p}: {r.status} ({r.reason})"


def cmd_regulator(args) -> int:
    d, primes, regs = _sweep(args)
    report = {"command": "regulator", "input": f"sqrt({d})",
              "regulators": [_reg_json(GF, p, regs[p]) for p in primes]}
    table = {p: regs[p].m for p in primes if regs[p].status == "ok"}
    lines = [f"sqrt({d})"] + [_reg_line(p, regs[p]) for p in primes]
    lines.append("{" + ", ".join(f"{p}:{m}" for p, m in table.items()) + "}")
    emit(report, args.json, lines)
    return EXIT_OK


def cmd_yu(args) -> int:
    d, primes, regs = _sweep(args)
    cert = yu_certificate(regs)
    bad = [(p, regs[p].reason) for p in primes if regs[p].status == "bad"]
    report = {"command": "yu", "input": f"sqrt({d})",
              "regulators": [_reg_json(GF, p, regs[p]) for p in primes],
              "verdict": cert.verdict.upper(),
              "certificate": None if cert.primes is None else {
                  "pair": [{"p": p, "m": m} for p, m in zip(cert.primes, cert.regulators)],
                  "witness": cert.witness, "witness_kind": cert.witness_kind},
              "reason": cert.reason,
              "excluded": [{"p": p, "reason": why} for p, why in bad]}
    lines = [f"sqrt({d})"] + [_reg_line(p, regs[p]) for p in primes]
    if cert.verdict == "non-periodic":
        pair = ", ".join(f"{p}:{m}" for p, m in zip(cert.primes, cert.regulators))
        lines.append(f"NON-PERIODIC certified via ({pair}), witness v_{cert.witness}: {cert.reason}")
    else:
        lines.append(f"INCONCLUSIVE: {cert.reason}")
    if bad:
        lines.append("excluded as bad: " + ", ".join(f"{p} ({why})" for p, why in bad))
    emit(report, args.json, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# family


def _family_params(args):
    text = " ".join(x for x in (args.u, args.v, args.w) if x is not None)
    F = QQt if "t" in text else QQ
    v = parse_coefficient(args.v, F)
    w = parse_coefficient(args.w, F)
    if args.u is None or args.normalize:
        params = FamilyParams.from_vw(v, w, F)
        if args.u is not None and not F.eq(parse_coefficient(args.u, F), params.u):
            raise UsageError("--normalize needs u = v - w^2")
        return params
    return FamilyParams(parse_coefficient(args.u, F), v, w, F)


def _specialize_params(params: FamilyParams, tau, p):
    F = params.field
    vals = [params.u, params.v, params.w]
    if tau is not None:
        if F is not QQt:
            raise UsageError("--param-value needs parameters involving t")
        vals = [_specialize_coeff(c, tau) for c in vals]
        F = QQ
    if p is not None:
        if F is not QQ:
            raise UsageError("--mod needs rational parameters (specialise t first)")
        check_prime(p)
        vals = [reduce_mod_p(Poly([c], QQ), p).coeff(0) for c in vals]
        F = GF(p)
    return FamilyParams(*vals, F, params.normalized)


def _specialize_coeff(c, tau):
    return specialize(Poly([c], QQt), tau).coeff(0)


def family_table(params: FamilyParams, n: int) -> tuple[dict, list[str]]:
    """s-table, closed forms and the surd oracle comparison."""
    F = params.field
    d = params.quartic()
    rep = {"field": field_name(F), "u": elem(F, params.u), "v": elem(F, params.v),
           "w": elem(F, params.w), "D": str(d)}
    lines = [f"D = {d} over {field_name(F)}   (u = {elem(F, params.u)}, "
             f"v = {elem(F, params.v)}, w = {elem(F, params.w)})"]
    if not params.is_normalized:
        rep.update(s_sequence=None, closed_forms=None, oracle=None)
        lines.append("parameters are not normalised (u + w^2 != v): no s-sequence")
        return rep, lines
    seq = s_sequence(params, n + 1)
    rep["s_sequence"] = [elem(F, s) for s in seq.values]
    rep["terminal"] = seq.terminal
    lines.append("s-sequence:")
    lines += [f"  s_{k} = {elem(F, s)}" for k, s in enumerate(seq.values)]
    top = min(n, seq.finite_upto())
    forms = quotient_closed_forms(seq, params, top)
    rep["closed_forms"] = [{"h": h, "b": elem(F, b), "c": elem(F, c)}
                           for h, (b, c) in enumerate(forms, 1)]
    lines.append("closed forms a_h = 2(X - c_h)/b_h:")
    lines += [f"  h = {h}: b = {elem(F, b)}, c = {elem(F, c)}" for h, (b, c) in enumerate(forms, 1)]
    if seq.terminal is not None and seq.terminal <= n:
        lines.append(f"s_{seq.terminal} = oo: a_{seq.terminal} has degree 2, "
                     f"regulator {seq.terminal + 1}")

    predicted = closed_form_quotients(params, top)
    cf, state = expand_surd(d, top + 2)
    agree = all(a == b for a, b in zip(predicted, cf.entries))
    event = None
    if seq.terminal is not None and seq.terminal <= n and seq.terminal < len(cf):
        event = cf[seq.terminal].deg == 2
        agree = agree and event
    rep["oracle"] = {"agree": agree, "checked_through": top,
                     "terminal_degree_two": event}
    lines.append(f"surd oracle: {'agrees' if agree else 'DISAGREES'} through h = {top}")
    return rep, lines


def cmd_family(args) -> int:
    params = _family_params(args)
    tau = parse_tau(args.param_value) if args.param_value is not None else None
    report = {"command": "family"}
    lines = []
    rep, ls = family_table(params, args.n)
    report["generic"] = rep
    lines += ls
    if tau is not None or args.mod is not None:
        params = _specialize_params(params, tau, args.mod)
        rep, ls = family_table(params, args.n)
        report["specialised"] = {"target": _target_json(args.mod, tau), **rep}
        lines += [f"at {_target_text(args.mod, tau)}:"] + ls
    code = EXIT_OK
    if args.check_m is not None:
        m = args.check_m
        holds = torsion_condition(m, params)
        chk = {"m": m, "holds": holds, "regulator": None, "confirmed": None}
        lines.append(f"torsion condition for m = {m}: {'holds' if holds else 'fails'}")
        if params.field is not QQt:
            # r <= m, so m + 1 steps decide whether the regulator is m
            bound = args.bound if holds else min(args.bound, m + 1)
            reg = regulator(params.quartic(), bound)
            chk["regulator"] = reg.m
            chk["confirmed"] = (reg.m == m) == holds
            if reg.m is not None:
                text = str(reg.m)
            else:
                text = f"none within {bound} steps"
            lines.append(f"surd regulator: {text}"
                         + (" (confirmed)" if chk["confirmed"] else " (MISMATCH)"))
            if not chk["confirmed"]:
                code = EXIT_FAIL
        report["torsion"] = chk
    emit(report, args.json, lines)
    return code


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cfreduce",
                                 description="Continued fractions of Laurent series over function fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def inputs(p, formal=False):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--sqrt", metavar="POLY", help="monic even-degree D; expand sqrt(D)")
        g.add_argument("--coeffs", metavar="LIST",
                       help='"P; c1, c2, ..." for P + c1/X + c2/X^2 + ..., or - for stdin')
        g.add_argument("--g3", action="store_true", help="Cantor's product G_3")
        if formal:
            g.add_argument("--formal", metavar="ENTRIES",
                           help='formal continued fraction "e0; e1; ..." (entries may be t/X etc.)')
        p.add_argument("--prec", type=int, help="terms of G_3 (default 60)")
        p.add_argument("--mod", type=int, metavar="P", help="reduce modulo the prime P")
        p.add_argument("--param-value", metavar="TAU", help="specialise t -> TAU")
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("expand", help="partial quotients")
    inputs(p)
    p.add_argument("--quotients", type=int, metavar="N",
                   help="default 10 for --sqrt, every determined quotient for series")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("reduce", help="reduction mod p or specialisation of the convergents")
    inputs(p, formal=True)
    p.add_argument("--depth", type=int, default=10, metavar="N")
    p.add_argument("--verify", action="store_true", help="run the reduction check")
    p.set_defaults(func=cmd_reduce)

    for name, func, hlp in (("regulator", cmd_regulator, "regulators at several primes"),
                            ("yu", cmd_yu, "non-periodicity certificate")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--sqrt", metavar="POLY", required=True)
        p.add_argument("--primes", required=True, metavar="LIST", help="comma separated primes")
        p.add_argument("--bound", type=int, default=1000, help="maximum expansion steps")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("family", help="the quartic family (X^2+u)^2 + 4v(X+w)")
    p.add_argument("--u", help="default v - w^2")
    p.add_argument("--v", default="1")
    p.add_argument("--w", default="0")
    p.add_argument("--normalize", action="store_true", help="set u = v - w^2")
    p.add_argument("--n", type=int, default=8, help="number of closed-form quotients")
    p.add_argument("--check-m", type=int, metavar="M", help="test the torsion condition for order M")
    p.add_argument("--param-value", metavar="TAU", help="specialise t -> TAU")
    p.add_argument("--mod", type=int, metavar="P", help="work over GF(P)")
    p.add_argument("--bound", type=int, default=200, help="step bound for the regulator")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_family)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    for name in ("quotients", "depth", "n", "prec", "bound"):
        val = getattr(args, name, None)
        if val is not None and val < 0:
            ap.error(f"--{name} must be nonnegative")
    try:
        return args.func(args)
    except (ParseError, UsageError) as e:
        print(f"cfreduce: error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CharacteristicTwo as e:
        print(f"cfreduce: {e}", file=sys.stderr)
        return EXIT_CHAR2
    except BadReduction as e:
        print(f"cfreduce: {e}", file=sys.stderr)
        return EXIT_BAD_REDUCTION
    except (ValueError, ArithmeticError, TypeError) as e:
        print(f"cfreduce: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

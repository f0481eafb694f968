"""Command-line entry point.

Polynomial data comes either from a fixture file (``FILE`` or
``FILE:NAME``, see ``krullcheck.parse``) or inline, e.g.
``--ring "QQ[x,y]" --ideal "x^2, y^2"``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from fractions import Fraction

from . import integrality, monomial, primary, slices, whitney
from .groebner import Ideal, buchberger, eliminate, ideal_member, radical_member, saturation
from .parse import ParseError, format_ring, parse_field, parse_fixture, parse_poly, parse_ring
from .poly import Block, Grevlex, Lex, MonomialOrder, PolyRing, Polynomial
from .report import emit_report
from .scenarios import ScenarioError, list_scenarios, run_scenario

log = logging.getLogger("krullcheck")


class UsageError(Exception):
    pass


# -- input helpers -------------------------------------------------------------


def parse_order(text: str) -> MonomialOrder:
    """lex | grevlex | lex(x,y,...) | grevlex(x,y,...) | block(u,...) | block(u,...;grevlex)"""
    m = re.fullmatch(r"\s*(lex|grevlex|block)\s*(?:\((.*)\))?\s*", text)
    if not m:
        raise UsageError(f"unknown order {text!r}")
    kind, inner = m.group(1), m.group(2)
    if kind == "block":
        if inner is None:
            raise UsageError("block order needs its low variables, e.g. block(t)")
        vars_part, _, sub = inner.partition(";")
        low = [v.strip() for v in vars_part.split(",") if v.strip()]
        return Block(low, inner=(sub.strip() or "lex"))
    vs = None if not inner else tuple(v.strip() for v in inner.split(","))
    return Lex(vs) if kind == "lex" else Grevlex(vs)


def _split_ref(src: str) -> tuple[str, str | None]:
    if os.path.isfile(src):
        return src, None
    path, sep, name = src.rpartition(":")
    if sep and os.path.isfile(path):
        return path, name
    return "", None


def _read_fixture(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_fixture(fh.read())


def _pick(table: dict, name: str | None, what: str, path: str):
    if name is None:
        if len(table) != 1:
            raise UsageError(f"{path} holds {len(table)} {what}s; choose one with {path}:NAME")
        return next(iter(table.values()))
    if name not in table:
        raise UsageError(f"{path} has no {what} named {name!r}")
    return table[name]


def load_ideal(src: str, ring_text: str | None) -> Ideal:
    path, name = _split_ref(src)
    if path:
        fx = _read_fixture(path)
        gens = _pick(fx.ideals, name, "ideal", path)
        return Ideal(gens, fx.ring)
    if not ring_text:
        raise UsageError("inline ideals need --ring")
    R = parse_ring(ring_text)
    parts = [t for t in re.split(r"[;,]", src) if t.strip()]
    return Ideal([parse_poly(t, R) for t in parts], R)


def load_poly(src: str, ring: PolyRing | None, ring_text: str | None = None) -> Polynomial:
    path, name = _split_ref(src)
    if path:
        fx = _read_fixture(path)
        p = _pick(fx.polys, name, "poly", path)
        return p if ring is None or p.ring == ring else p.change_ring(ring)
    if ring is None:
        if not ring_text:
            raise UsageError("inline polynomials need --ring")
        ring = parse_ring(ring_text)
    return parse_poly(src, ring)


def load_curve(src: str) -> whitney.CurveFamily:
    path, name = _split_ref(src)
    if not path:
        raise UsageError(f"curve file {src!r} not found")
    fx = _read_fixture(path)
    return whitney.CurveFamily.from_mapping(_pick(fx.curves, name, "curve", path), fx.ring)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


# -- output ----------------------------------------------------------------------


def _emit(args, payload: dict, human: str) -> None:
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n" if args.format == "json" else human
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _listing(title: str, polys) -> str:
    lines = [title] + [f"  {p}" for p in polys]
    return "\n".join(lines) + "\n"


# -- commands --------------------------------------------------------------------


def cmd_gb(args) -> int:
    I = load_ideal(args.ideal, args.ring)
    order = parse_order(args.order)
    G = buchberger(I.gens, order)
    payload = {"ring": format_ring(I.ring), "order": str(order), "basis": [str(g) for g in G]}
    _emit(args, payload, _listing(f"reduced basis ({order}), {len(G)} elements:", G))
    return 0


def cmd_member(args) -> int:
    I = load_ideal(args.ideal, args.ring)
    p = load_poly(args.element, I.ring)
    ok = ideal_member(p, I)
    _emit(args, {"element": str(p), "member": ok}, f"{p} {'is' if ok else 'is not'} in the ideal\n")
    return 0


def cmd_radmember(args) -> int:
    I = load_ideal(args.ideal, args.ring)
    p = load_poly(args.element, I.ring)
    ok = radical_member(p, I)
    _emit(args, {"element": str(p), "radical_member": ok}, f"{p} {'is' if ok else 'is not'} in the radical\n")
    return 0


def cmd_saturate(args) -> int:
    I = load_ideal(args.ideal, args.ring)
    f = load_poly(args.by, I.ring)
    S = saturation(I, f, cross_check=args.cross_check)
    G = S.groebner(parse_order(args.order))
    payload = {"by": str(f), "order": str(G.order), "basis": [str(g) for g in G]}
    _emit(args, payload, _listing(f"saturation by {f} ({G.order}):", G))
    return 0


def cmd_eliminate(args) -> int:
    I = load_ideal(args.ideal, args.ring)
    drop = [v.strip() for v in args.drop.split(",") if v.strip()]
    E = eliminate(I, drop)
    G = E.groebner(parse_order(args.order))
    payload = {"ring": format_ring(E.ring), "basis": [str(g) for g in G]}
    _emit(args, payload, _listing(f"elimination ideal in {format_ring(E.ring)}:", G))
    return 0


def _mono(args) -> monomial.MonomialIdeal:
    I = load_ideal(args.ideal, args.ring)
    try:
        return monomial.MonomialIdeal.from_polys(I.gens, I.ring)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_mono_closure(args) -> int:
    C = monomial.mono_integral_closure(_mono(args))
    _emit(args, {"closure": C.texts()}, f"integral closure: {C}\n")
    return 0


def cmd_mono_decomp(args) -> int:
    comps = monomial.mono_primary_decomposition(_mono(args))
    _emit(args, {"components": [c.texts() for c in comps]}, " cap ".join(map(repr, comps)) + "\n")
    return 0


def cmd_mono_isprimary(args) -> int:
    ok = monomial.mono_is_primary(_mono(args))
    _emit(args, {"primary": ok}, f"{'primary' if ok else 'not primary'}\n")
    return 0


def cmd_integral_test(args) -> int:
    I = load_ideal(args.ideal, args.ring)
    r = load_poly(args.element, I.ring)
    companions = load_ideal(args.companions, args.ring).gens if args.companions else ()
    v = integrality.is_integral_over(r, I, budget=args.budget, companions=companions)
    replay = integrality.verify_certificate(v.certificate) if v.certificate else None
    payload = v.to_json()
    payload["element"] = str(r)
    if replay is not None:
        payload["replayed"] = replay
    human = f"{r}: {v.status}"
    if v.certificate is not None:
        c = v.certificate
        detail = {"equation": f"equation of degree {c.degree}", "determinantal": f"reduction at level {c.level}"}
        human += f" ({detail.get(c.kind, c.kind)}; replay {'ok' if replay else 'FAILED'})"
    _emit(args, payload, human + "\n")
    return 1 if replay is False else 0


def cmd_isprimary(args) -> int:
    if not args.pseudo:
        raise UsageError("only the saturation test is available; pass --pseudo")
    I = load_ideal(args.ideal, args.ring)
    try:
        ev = primary.is_primary_pseudo(I)
    except primary.NotApplicable as exc:
        _emit(args, {"applicable": False, "reason": str(exc)}, f"not applicable: {exc}\n")
        return 0
    human = (
        f"radical <{', '.join(ev.data.radical_vars)}>, saturating polynomial {ev.saturating}\n"
        f"{'primary' if ev.primary else 'not primary'}"
    )
    if not ev.primary:
        human += f"; saturation adds {', '.join(map(str, ev.extra))}"
    _emit(args, ev.to_json(), human + "\n")
    return 0


def cmd_witness(args) -> int:
    I = load_ideal(args.ideal, args.ring)
    w = primary.find_non_primary_witness(I)
    if w is None:
        _emit(args, {"witness": None}, "no witness found\n")
        return 1
    ok = primary.check_witness(I, w.g, w.h)
    payload = {"witness": w.to_json(), "replayed": ok}
    _emit(args, payload, f"g = {w.g}, h = {w.h}: g*h in I, g not in I, h not in the radical\n")
    return 0 if ok else 1


def cmd_whitney(args) -> int:
    f = load_poly(args.f, None, args.ring)
    locus = tuple(v.strip() for v in args.locus.split(",") if v.strip())
    try:
        pair = whitney.HypersurfacePair(f, locus, args.direction)
    except whitney.InvalidPairError as exc:
        raise UsageError(f"invalid stratum: {exc}") from exc
    v = whitney.refute_condition_a(pair, load_curve(args.curve))
    payload = v.to_json()
    payload["replayed"] = v.replay()
    if v.tangent is not None:
        human = (
            f"jacobian along curve: ({', '.join(map(str, v.tangent.jacobian))})\n"
            f"valuation {v.tangent.valuation}, limit normal ({', '.join(map(str, v.tangent.limit_normal))})\n"
            f"pairing with d/d{args.direction}: {v.pairing}\n{v.status}\n"
        )
    else:
        human = f"{v.status}: {v.reason}\n"
    _emit(args, payload, human)
    return 0 if v.status == whitney.FAILS_A and payload["replayed"] else 1


def cmd_slice(args) -> int:
    if args.action == "classify":
        if args.field:
            K = parse_field(args.field)
            t0 = parse_poly(args.t0, PolyRing(["_t0"], K)).constant_coeff()
        else:
            t0 = _rational(args.t0)
        c = slices.classify_slice(t0)
        _emit(args, c.to_json(), f"t0 = {args.t0}: 4*t0^3 + 27 is {c.sign}, {c.branches} real branch(es)\n")
        return 0
    if args.field:
        raise UsageError("sampling needs a rational t0")
    try:
        rows = list(
            slices.emit_slice_samples(
                _rational(args.t0), _rational(args.x_min), _rational(args.x_max), _rational(args.step)
            )
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            slices.write_tsv(rows, fh)
    else:
        slices.write_tsv(rows, sys.stdout)
    return 0


def cmd_run(args) -> int:
    try:
        report = run_scenario(args.scenario, budget=args.budget_override, n=args.n, field=args.field)
    except ScenarioError as exc:
        raise UsageError(str(exc)) from exc
    text = emit_report(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


def cmd_list(args) -> int:
    rows = list_scenarios()
    _emit(args, {"scenarios": dict(rows)}, "".join(f"{sid:34s} {title}\n" for sid, title in rows))
    return 0


# -- parser -------------------------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--order", default=d("lex"), help="monomial order for displayed bases (default lex)")
    p.add_argument("--budget", type=int, default=d(integrality.DEFAULT_BUDGET), help="max determinantal level")
    p.add_argument("--format", choices=["human", "json"], default=d("human"))
    p.add_argument("--out", default=d(None), help="write output to this file")
    p.add_argument("--ring", default=d(None), help="ring for inline polynomials, e.g. 'QQ[x,y,z]'")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="krullcheck", description="Exact checks for ideals, closures and strata.")
    _global_flags(ap, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, **kw):
        p = sub.add_parser(name, parents=[common], help=help_text, **kw)
        p.set_defaults(func=func)
        return p

    p = add("gb", cmd_gb, "reduced Gröbner basis")
    p.add_argument("--ideal", required=True)
    for name, func, flag, h in [
        ("member", cmd_member, "--element", "ideal membership"),
        ("radmember", cmd_radmember, "--element", "radical membership"),
        ("saturate", cmd_saturate, "--by", "saturation I : f^inf"),
    ]:
        p = add(name, func, h)
        p.add_argument("--ideal", required=True)
        p.add_argument(flag, required=True)
        if name == "saturate":
            p.add_argument("--cross-check", action="store_true", help="also compute by elimination and compare")
    p = add("eliminate", cmd_eliminate, "elimination ideal")
    p.add_argument("--ideal", required=True)
    p.add_argument("--drop", required=True, help="comma-separated variables to eliminate")
    for name, func, h in [
        ("mono-closure", cmd_mono_closure, "integral closure of a monomial ideal"),
        ("mono-decomp", cmd_mono_decomp, "primary decomposition of a monomial ideal"),
        ("mono-isprimary", cmd_mono_isprimary, "primary test for a monomial ideal"),
        ("witness-nonprimary", cmd_witness, "search g*h in I with g not in I, h not in sqrt(I)"),
    ]:
        p = add(name, func, h)
        p.add_argument("--ideal", required=True)
    p = add("integral-test", cmd_integral_test, "membership in the integral closure")
    p.add_argument("--ideal", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--companions", help="further candidates tested jointly (ideal source)")
    p = add("isprimary", cmd_isprimary, "primary test by saturation")
    p.add_argument("--ideal", required=True)
    p.add_argument("--pseudo", action="store_true", help="use the prime-radical saturation test")

    p = add("whitney", cmd_whitney, "Whitney condition (a) refutation")
    p.add_argument("action", choices=["refute-a"])
    p.add_argument("--f", required=True, help="polynomial source (FILE[:NAME] or inline with --ring)")
    p.add_argument("--locus", required=True, help="variables vanishing on the stratum, e.g. x,y,z")
    p.add_argument("--direction", required=True, help="variable spanning the stratum")
    p.add_argument("--curve", required=True, help="curve fixture FILE[:NAME]")

    p = add("slice", cmd_slice, "real slices of x^6 + x^4*z*t + z^3")
    p.add_argument("action", nargs="?", choices=["sample", "classify"], default="sample")
    p.add_argument("--t0", required=True)
    p.add_argument("--field", help="extension containing t0, e.g. 'QQ[b]/(4*b^3 + 27)'")
    p.add_argument("--x-min", default="-1")
    p.add_argument("--x-max", default="1")
    p.add_argument("--step", default="1/20")

    p = add("run", cmd_run, "run a named scenario")
    p.add_argument("scenario")
    _scenario_flags(p)
    add("list", cmd_list, "list scenarios")
    for sid, title in list_scenarios():
        p = add(sid, cmd_run, title)
        p.set_defaults(scenario=sid)
        _scenario_flags(p)
    return ap


def _scenario_flags(p) -> None:
    p.add_argument("--n", type=int, help="family parameter (1..10)")
    p.add_argument("--field", help="coefficient field, e.g. 'Fp(5)'")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    # scenario runs only override the budget when given explicitly
    args.budget_override = args.budget if args.budget != integrality.DEFAULT_BUDGET else None
    if args.budget < 1:
        ap.error("--budget must be at least 1")
    try:
        parse_order(args.order)
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: expand | orbit | natext | section | cutting | verify | render.
All numeric arguments parse to exact boundary points ("p/q", decimals,
"sqrt(d)" combinations); exact values appear in the JSON output as
strings, never floats.  Exit codes: 0 pass, 1 verification failure,
2 usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cf, cutting, ecf, render, section, verify
from .boundary import (
    DomainError,
    Surd,
    bp_abs,
    bp_sign,
    parse_boundary_point,
    render_boundary_point,
)
from .section import CuspError, EndpointPair

_R = render_boundary_point


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _parse_value(text: str):
    try:
        return parse_boundary_point(text)
    except DomainError as exc:
        raise SystemExit(_usage_error(str(exc)))


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


# -- expand ------------------------------------------------------------------

def _expand_rcf(value, max_digits):
    exp = cf.rcf_expand(value, max_digits=max_digits)
    remainder = value - exp.leading
    _emit({"leading": exp.leading, "remainder": _R(remainder)})
    for i, digit in enumerate(exp.digits):
        _, remainder = cf.gauss_step(remainder)
        _emit({"index": i, "digit": digit, "remainder": _R(remainder)})
    return exp


def _expand_ecf(value, max_digits):
    exp = ecf.ecf_expand(value, max_digits=max_digits)
    if exp.leading is not None:
        _emit({"sign": exp.sign, "leading": list(exp.leading)})
    remainder = bp_abs(value) if exp.sign else Fraction(0)
    if exp.leading is not None:
        # |x| = a0 + eps0 * w, so w = eps0 * (|x| - a0) lies in [0, 1]
        remainder = exp.leading.eps * (remainder - exp.leading.a)
    for i, digit in enumerate(exp.digits):
        _, remainder = ecf.even_gauss_step(remainder)
        _emit({"index": i, "digit": list(digit), "remainder": _R(remainder)})
    return exp


def _expand_ext(value, max_digits):
    exp = ecf.ext_ecf_expand(value, max_digits=max_digits)
    for i, digit in enumerate(exp.digits):
        _emit({"index": i, "digit": [digit.eps, digit.b]})
    return exp


def _expand_dual(value, max_digits):
    digits = []
    seen = {}
    remainder = value
    period = None
    truncated = False
    while len(digits) < max_digits:
        if remainder == Fraction(1, 2):
            break
        if remainder in seen:
            period = digits[seen[remainder]:]
            digits = digits[:seen[remainder]]
            break
        seen[remainder] = len(digits)
        digit, remainder = section.lehner_dual_digit_step(remainder)
        digits.append(digit)
        _emit({"index": len(digits) - 1, "digit": list(digit),
               "remainder": _R(remainder)})
    else:
        truncated = True

    class _Summary:
        pass

    s = _Summary()
    s.period = tuple(period) if period else None
    s.truncated = truncated
    s.exact_tail = remainder
    return s


def cmd_expand(args) -> int:
    value = _parse_value(args.value)
    if isinstance(value, Fraction) or isinstance(value, Surd):
        pass
    else:
        return _usage_error("expand needs a finite value")
    try:
        if args.system == "rcf":
            exp = _expand_rcf(value, args.max_digits)
        elif args.system == "ecf":
            exp = _expand_ecf(value, args.max_digits)
        elif args.system == "ext-ecf":
            exp = _expand_ext(value, args.max_digits)
        else:
            exp = _expand_dual(value, args.max_digits)
    except DomainError as exc:
        return _usage_error(str(exc))
    summary = {"system": args.system, "value": _R(value)}
    if getattr(exp, "period", None):
        summary["period"] = [list(d) if not isinstance(d, int) else d
                             for d in exp.period]
    summary["truncated"] = bool(getattr(exp, "truncated", False))
    terminated = getattr(exp, "exact_tail", None) is None and \
        not getattr(exp, "period", None)
    summary["terminated"] = bool(terminated and not summary["truncated"])
    _emit(summary)
    return 0


# -- orbit / natext / section ------------------------------------------------

_ORBIT_MAPS = {
    "gauss": lambda x: cf.gauss_step(x)[1],
    "farey": cf.farey_step,
    "even-gauss": lambda x: ecf.even_gauss_step(x)[1],
    "even-farey": ecf.even_farey_step,
    "lehner": section.lehner_step,
    "lehner-dual": section.lehner_dual_step,
}

_NATEXT_MAPS = {
    "gauss": cf.gauss_natext_step,
    "farey": cf.farey_natext_step,
    "even-gauss": ecf.even_gauss_natext_step,
    "even-farey": ecf.even_farey_natext_step,
    "lehner": section.lehner_natext_step,
    "lehner-dual": section.lehner_dual_natext_step,
}

_SECTION_MAPS = {
    "rho": (section.rho_step, section.S),
    "sigma": (section.sigma_step, section.T),
    "rho-e": (section.rho_e_step, section.S_E),
    "sigma-e": (section.sigma_e_step, section.T_E),
    "sigma-l": (section.sigma_L_step, section.S_L),
}


def cmd_orbit(args) -> int:
    step = _ORBIT_MAPS[args.map]
    x = _parse_value(args.x)
    try:
        for i in range(args.steps):
            x = step(x)
            _emit({"step": i + 1, "x": _R(x)})
    except DomainError as exc:
        return _usage_error(str(exc))
    return 0


def cmd_natext(args) -> int:
    step = _NATEXT_MAPS[args.map]
    x, y = _parse_value(args.x), _parse_value(args.y)
    try:
        for i in range(args.steps):
            x, y = step(x, y)
            _emit({"step": i + 1, "x": _R(x), "y": _R(y)})
    except DomainError as exc:
        return _usage_error(str(exc))
    return 0


def cmd_section(args) -> int:
    step, domain = _SECTION_MAPS[args.map]
    fwd, bwd = _parse_value(args.forward), _parse_value(args.backward)
    try:
        p = EndpointPair(fwd, bwd, domain)
    except DomainError as exc:
        return _usage_error(str(exc))
    for i in range(args.steps):
        try:
            p = step(p)
        except CuspError as exc:
            _emit({"event": "cusp", "step": i + 1, "detail": str(exc)})
            return 0
        _emit({"step": i + 1, "forward": _R(p.fwd), "backward": _R(p.bwd),
               "sign": p.eps})
    return 0


def cmd_cutting(args) -> int:
    fwd, bwd = _parse_value(args.forward), _parse_value(args.backward)
    try:
        if args.coding == "even":
            seq = cutting.even_sequence_geometric(fwd, bwd, window=args.window)
        elif args.coding == "even-digits":
            w = cutting.reflected_backward(fwd, bwd)
            if isinstance(w, Fraction) and -1 <= w <= 1:
                w_exp = ecf.ext_ecf_expand(w, max_digits=4 * args.window)
            else:
                w_exp = ecf.ecf_expand(w, max_digits=4 * args.window)
            seq = cutting.even_sequence_from_digits(
                ecf.ecf_expand(fwd, max_digits=4 * args.window), w_exp,
                window=args.window)
        else:
            eps = bp_sign(fwd)
            seq = cutting.series_sequence_from_digits(
                cf.rcf_expand(bp_abs(fwd), max_digits=4 * args.window),
                cf.rcf_expand(bp_abs(bwd), max_digits=4 * args.window),
                eps, window=args.window)
    except DomainError as exc:
        return _usage_error(str(exc))
    _emit({
        "symbols": list(seq.symbols),
        "xi_index": seq.xi_index,
        "eta_index": seq.eta_index,
        "edges": [{"u": _R(e.u), "v": _R(e.v), "kind": e.kind}
                  for e in seq.edges],
    })
    return 0


# -- verify -------------------------------------------------------------------

def cmd_verify(args) -> int:
    suites = list(verify.ALL_SUITES) if args.suite == "all" else [args.suite]
    all_passed = True
    for name in suites:
        if name == "conjugacy":
            report = verify.run_conjugacy(args.samples, args.seed)
        elif name == "box":
            report = verify.run_box(max(args.samples // 10, 100), args.seed)
        elif name == "slowdown":
            report = verify.run_slowdown(args.samples, args.seed)
        elif name == "measure":
            report = verify.run_measure(args.samples, args.seed,
                                        birkhoff_iterations=args.birkhoff,
                                        mass_tol=args.tol)
        else:
            report = verify.run_coding(max(args.samples // 20, 50), args.seed,
                                       window=args.window)
        for check in report.checks:
            line = {"suite": report.suite, "check": check.name,
                    "samples": check.samples, "failures": check.failures,
                    "example": check.example}
            line.update(check.extra)
            _emit(line)
        _emit({"suite": report.suite, "passed": report.passed,
               "failures": report.failures})
        all_passed = all_passed and report.passed
    return 0 if all_passed else 1


# -- render -------------------------------------------------------------------

def cmd_render(args) -> int:
    geodesic = None
    if args.geodesic:
        try:
            f, b = args.geodesic.split(":")
        except ValueError:
            return _usage_error("geodesic takes the form FWD:BWD")
        geodesic = (_parse_value(f), _parse_value(b))
    try:
        doc = render.render_svg(args.tessellation, args.max_denominator,
                                geodesic=geodesic, xmin=args.xmin,
                                xmax=args.xmax, ymax=args.ymax)
    except (DomainError, ValueError) as exc:
        return _usage_error(str(exc))
    try:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(doc)
    except OSError as exc:
        return _usage_error(f"cannot write {args.output}: {exc}")
    return 0


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfdyn",
        description="Exact continued-fraction dynamics, codings, and checks.")
    parser.add_argument("--format", choices=["json"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="digit expansions with exact remainders")
    p.add_argument("--system", required=True,
                   choices=["rcf", "ecf", "ext-ecf", "lehner-dual"])
    p.add_argument("--value", required=True)
    p.add_argument("--max-digits", type=int, default=64)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("orbit", help="iterate an interval map")
    p.add_argument("--map", required=True, choices=sorted(_ORBIT_MAPS))
    p.add_argument("--x", required=True)
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("natext", help="iterate a natural extension")
    p.add_argument("--map", required=True, choices=sorted(_NATEXT_MAPS))
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_natext)

    p = sub.add_parser("section", help="iterate a cross-section map")
    p.add_argument("--map", required=True, choices=sorted(_SECTION_MAPS))
    p.add_argument("--forward", required=True)
    p.add_argument("--backward", required=True)
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_section)

    p = sub.add_parser("cutting", help="cutting sequence of a geodesic")
    p.add_argument("--forward", required=True)
    p.add_argument("--backward", required=True)
    p.add_argument("--window", type=int, default=24)
    p.add_argument("--coding", choices=["even", "even-digits", "series"],
                   default="even")
    p.set_defaults(func=cmd_cutting)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["conjugacy", "box", "slowdown",
                                     "measure", "coding", "all"])
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--window", type=int, default=20)
    p.add_argument("--birkhoff", type=int, default=0,
                   help="Birkhoff-average iterations (0 disables)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="render a tessellation to SVG")
    p.add_argument("--tessellation", required=True, choices=["farey", "even"])
    p.add_argument("--max-denominator", type=int, default=8)
    p.add_argument("--geodesic", default=None, help="FWD:BWD endpoints")
    p.add_argument("--xmin", type=int, default=-4)
    p.add_argument("--xmax", type=int, default=4)
    p.add_argument("--ymax", type=float, default=3.0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)

    return parser


_VALUE_FLAGS = {"--backward", "--forward", "--x", "--y", "--value",
                "--geodesic"}


def _join_value_flags(argv):
    """Fold '--flag -1/3' into '--flag=-1/3' so negatives parse."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_join_value_flags(list(argv)))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

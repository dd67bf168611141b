"""Seeded verification sweeps shared by the test-suite and the CLI.

Every sweep draws rational sample points from a seeded generator, runs an
exact check, and reports the failure count with a first counterexample.
All map lookups go through an override table so that the mutation tests
can flip a single branch constant and watch the relevant sweep fail.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import cf, cutting, ecf, measure, section
from .boundary import DomainError, bp_abs, bp_floor, bp_sign
from .section import (
    EndpointPair,
    S,
    S_E,
    S_L,
    T,
    T_E,
    box_bottom_map,
    box_front_map,
    box_lower_map,
    box_top_map,
    farey_projection,
    j_map,
    j_e_map,
    k_e_map,
)

DEFAULT_MAPS = {
    "gauss_step": cf.gauss_step,
    "farey_step": cf.farey_step,
    "even_gauss_step": ecf.even_gauss_step,
    "even_farey_step": ecf.even_farey_step,
    "gauss_nat": cf.gauss_natext_step,
    "farey_nat": cf.farey_natext_step,
    "even_gauss_nat": ecf.even_gauss_natext_step,
    "even_farey_nat": ecf.even_farey_natext_step,
    "rho": section.rho_step,
    "sigma": section.sigma_step,
    "rho_e": section.rho_e_step,
    "sigma_e": section.sigma_e_step,
    "sigma_l": section.sigma_L_step,
    "lehner_nat": section.lehner_natext_step,
    "dual_nat": section.lehner_dual_natext_step,
    "tilde_gauss": section.tilde_gauss_step,
    "tilde_farey": section.tilde_farey_step,
    "tilde_even_gauss": section.tilde_even_gauss_step,
    "tilde_even_farey": section.tilde_even_farey_step,
    "measure_specs": measure.MAPS,
}


@dataclass
class CheckResult:
    name: str
    samples: int
    failures: int
    example: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class SuiteReport:
    suite: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> int:
        return sum(c.failures for c in self.checks)


class _Sweep:
    """Runs one exact check over seeded samples, recording failures."""

    def __init__(self, name: str):
        self.name = name
        self.samples = 0
        self.failures = 0
        self.example: Optional[dict] = None
        self.extra: dict = {}

    def run(self, point_repr, check: Callable[[], bool]):
        self.samples += 1
        try:
            ok = check()
        except (DomainError, ZeroDivisionError, ValueError) as exc:
            ok = False
            detail = f"{type(exc).__name__}: {exc}"
        else:
            detail = None
        if not ok:
            self.failures += 1
            if self.example is None:
                self.example = {"point": str(point_repr)}
                if detail:
                    self.example["error"] = detail

    def result(self) -> CheckResult:
        return CheckResult(self.name, self.samples, self.failures,
                           self.example, self.extra)


# -- seeded rational sampling ----------------------------------------------

def rand_fraction(rng: random.Random, lo: Fraction, hi: Fraction,
                  max_den: int = 97, integer_ok: bool = True) -> Fraction:
    lo, hi = Fraction(lo), Fraction(hi)
    while True:
        q = rng.randint(2, max_den)
        p_min = math.floor(lo * q) + 1
        p_max = math.ceil(hi * q) - 1
        if p_min > p_max:
            continue
        x = Fraction(rng.randint(p_min, p_max), q)
        if not (lo < x < hi):
            continue
        if not integer_ok and x.denominator == 1:
            continue
        return x


def sample_S(rng) -> EndpointPair:
    eps = rng.choice((1, -1))
    m = rand_fraction(rng, 1, 9, integer_ok=False)
    b = rand_fraction(rng, 0, 1)
    return EndpointPair(eps * m, -eps * b, S)


def sample_T(rng, avoid_two: bool = True) -> EndpointPair:
    eps = rng.choice((1, -1))
    while True:
        m = rand_fraction(rng, 1, 9, integer_ok=False)
        if not avoid_two or m != 2:
            break
    b = rand_fraction(rng, 0, 8)
    return EndpointPair(eps * m, -eps * b, T)


def sample_S_e(rng) -> EndpointPair:
    eps = rng.choice((1, -1))
    m = rand_fraction(rng, 1, 9, integer_ok=False)
    b = rand_fraction(rng, -1, 1)
    return EndpointPair(eps * m, b, S_E)


def sample_T_e(rng) -> EndpointPair:
    eps = rng.choice((1, -1))
    m = rand_fraction(rng, 1, 9, integer_ok=False)
    v = rand_fraction(rng, -8, 1)
    return EndpointPair(eps * m, eps * v, T_E)


def sample_S_L(rng) -> EndpointPair:
    eps = rng.choice((1, -1))
    while True:
        u = rand_fraction(rng, 1, 2)
        if u != Fraction(3, 2):
            break
    v = rand_fraction(rng, -6, 1)
    return EndpointPair(eps * u, eps * v, S_L)


# -- conjugacy sweep --------------------------------------------------------

def run_conjugacy(samples: int = 10_000, seed: int = 0,
                  maps: Optional[dict] = None) -> SuiteReport:
    """The four section-to-square conjugacies, checked exactly."""
    m = {**DEFAULT_MAPS, **(maps or {})}
    rng = random.Random(seed)
    plan = [
        ("je-rhoe", sample_S_e, m["rho_e"], j_e_map, m["tilde_even_gauss"]),
        ("ke-sigmae", sample_T_e, m["sigma_e"], k_e_map, m["tilde_even_farey"]),
        ("j-rho", sample_S, m["rho"], j_map, m["tilde_gauss"]),
        ("farey-sigma", sample_T, m["sigma"], farey_projection,
         m["tilde_farey"]),
    ]
    checks = []
    for name, sampler, step, change, square in plan:
        sweep = _Sweep(name)
        for _ in range(samples):
            p = sampler(rng)
            sweep.run(p, lambda p=p: change(*step(p).coords())
                      == square(change(*p.coords())))
        checks.append(sweep.result())
    # the worked points of the construction
    fixed = _Sweep("worked-points")
    p = EndpointPair(Fraction(5, 2), Fraction(1, 3), S_E)
    fixed.run(p, lambda: j_e_map(*m["rho_e"](p).coords())
              == (Fraction(1, 2), Fraction(3, 5), -1)
              and m["tilde_even_gauss"](j_e_map(*p.coords()))
              == (Fraction(1, 2), Fraction(3, 5), -1))
    q = EndpointPair(Fraction(5, 2), Fraction(1, 3), T_E)
    fixed.run(q, lambda: k_e_map(*m["sigma_e"](q).coords())
              == (Fraction(1, 2), Fraction(5, 13), -1)
              and m["tilde_even_farey"](k_e_map(*q.coords()))
              == (Fraction(1, 2), Fraction(5, 13), -1))
    checks.append(fixed.result())
    return SuiteReport("conjugacy", checks)


# -- box-diagram sweep ------------------------------------------------------

def run_box(samples: int = 1000, seed: int = 0,
            maps: Optional[dict] = None) -> SuiteReport:
    """All six faces of the commuting box, plus the lower dual square."""
    m = {**DEFAULT_MAPS, **(maps or {})}
    rng = random.Random(seed)

    def back(p):
        return farey_projection(*m["sigma"](p).coords()) == \
            m["tilde_farey"](farey_projection(*p.coords()))

    def top(p):
        image = box_top_map(*p.coords())
        return box_top_map(*m["sigma"](p).coords()) == \
            m["sigma_l"](EndpointPair(image[0], image[1], S_L)).coords()

    def front(p):
        return box_front_map(*m["sigma_l"](p).coords()) == \
            m["lehner_nat"](*box_front_map(*p.coords()))

    def bottom(xy):
        return box_bottom_map(*m["farey_nat"](*xy)) == \
            m["lehner_nat"](*box_bottom_map(*xy))

    def static_identity(p):
        q = farey_projection(*p.coords())
        return box_bottom_map(q.x, q.y) == \
            box_front_map(*box_top_map(*p.coords()))

    def right(p):
        return static_identity(m["sigma"](p))

    def lower(xy):
        return box_lower_map(*m["lehner_nat"](*xy)) == \
            m["dual_nat"](*box_lower_map(*xy))

    def sample_square(rng):
        return (rand_fraction(rng, 0, 1), rand_fraction(rng, 0, 1))

    def sample_lehner_rect(rng):
        while True:
            x = rand_fraction(rng, 1, 2)
            if x != Fraction(3, 2):
                break
        return (x, rand_fraction(rng, -1, 8))

    plan = [
        ("box-back", sample_T, back),
        ("box-top", sample_T, top),
        ("box-front", sample_S_L, front),
        ("box-bottom", sample_square, bottom),
        ("box-left", sample_T, static_identity),
        ("box-right", sample_T, right),
        ("box-lower", sample_lehner_rect, lower),
    ]
    checks = []
    for name, sampler, check in plan:
        sweep = _Sweep(name)
        for _ in range(samples):
            p = sampler(rng)
            sweep.run(p, lambda p=p: check(p))
        checks.append(sweep.result())
    return SuiteReport("box", checks)


# -- slowdown sweep ---------------------------------------------------------

def run_slowdown(samples: int = 10_000, seed: int = 0,
                 maps: Optional[dict] = None) -> SuiteReport:
    m = {**DEFAULT_MAPS, **(maps or {})}
    rng = random.Random(seed)

    farey = _Sweep("farey-interval")
    for _ in range(samples):
        x = rand_fraction(rng, Fraction(1, 40), 1)
        def check(x=x):
            k = bp_floor(1 / x)
            z = x
            for _ in range(k):
                z = m["farey_step"](z)
            return z == m["gauss_step"](x)[1]
        farey.run(x, check)

    even = _Sweep("even-farey-interval")
    for _ in range(samples):
        x = rand_fraction(rng, Fraction(1, 40), 1)
        def check(x=x):
            t = 1 / x
            n = bp_floor(t)
            k = n // 2 if t == n else (n + 1) // 2
            z = x
            for _ in range(k):
                z = m["even_farey_step"](z)
            return z == m["even_gauss_step"](x)[1]
        even.run(x, check)

    sig = _Sweep("sigma-vs-rho")
    for _ in range(samples):
        p = sample_S(rng)
        def check(p=p):
            q = EndpointPair(p.fwd, p.bwd, T)
            n0 = bp_floor(bp_abs(p.fwd))
            for _ in range(n0):
                q = m["sigma"](q)
            return q.coords() == m["rho"](p).coords()
        sig.run(p, check)

    sig_e = _Sweep("sigma_e-vs-rho_e")
    for _ in range(samples):
        p = sample_S_e(rng)
        def check(p=p):
            q = EndpointPair(p.fwd, p.bwd, T_E)
            k = (bp_floor(bp_abs(p.fwd)) + 1) // 2
            for _ in range(k):
                q = m["sigma_e"](q)
            return q.coords() == m["rho_e"](p).coords()
        sig_e.run(p, check)

    return SuiteReport("slowdown", [farey.result(), even.result(),
                                    sig.result(), sig_e.result()])


# -- measure sweep ----------------------------------------------------------

_Y_RANGES = {
    measure.GAUSS_EXT: (Fraction(0), Fraction(1)),
    measure.EVEN_GAUSS_EXT: (Fraction(-1), Fraction(1)),
    measure.FAREY_EXT: (Fraction(0), Fraction(1)),
    measure.EVEN_FAREY_EXT: (Fraction(0), Fraction(1)),
    measure.LEHNER_EXT: (Fraction(-1), Fraction(6)),
}


def run_measure(samples: int = 10_000, seed: int = 0,
                maps: Optional[dict] = None,
                birkhoff_iterations: int = 0,
                mass_tol: float = 1e-12) -> SuiteReport:
    m = {**DEFAULT_MAPS, **(maps or {})}
    specs = m["measure_specs"]
    rng = random.Random(seed)
    checks = []
    for map_id, spec in specs.items():
        sweep = _Sweep(f"invariance-{map_id}")
        branches = spec.branches[:spec.branch_count_hint]
        per_branch = max(100, samples // len(branches))
        coverage = {}
        y_lo, y_hi = _Y_RANGES[spec.density_id]
        for br in branches:
            for _ in range(per_branch):
                x = rand_fraction(rng, br.lo, br.hi)
                y = rand_fraction(rng, y_lo, y_hi)
                sweep.run((map_id, str(x), str(y)),
                          lambda x=x, y=y: measure.pushforward_residual(
                              map_id, x, y, spec=spec) == 0)
            coverage[br.name] = per_branch
        sweep.extra = {"map": map_id, "points": sweep.samples,
                       "max_abs_residual": "0" if sweep.failures == 0 else "nonzero",
                       "branch_coverage": coverage}
        checks.append(sweep.result())

    marg = _Sweep("marginals")
    for density_id in (measure.GAUSS_EXT, measure.FAREY_EXT,
                       measure.EVEN_GAUSS_EXT, measure.EVEN_FAREY_EXT):
        for _ in range(1000):
            x = rand_fraction(rng, 0, 1)
            marg.run((density_id, str(x)),
                     lambda d=density_id, x=x:
                     measure.marginal_check(d, x)[0]
                     == measure.marginal_check(d, x)[1])
    checks.append(marg.result())

    mass = _Sweep("gauss-total-mass")
    mass.run("simpson",
             lambda: abs(measure.gauss_total_mass() - math.log(2)) < mass_tol)
    checks.append(mass.result())

    neg = _Sweep("negative-controls")
    wrong = [
        (measure.GAUSS_EXT, lambda u, v: 1 / (1 + u * v)),
        (measure.EVEN_FAREY_EXT, lambda u, v: 1 / (u + v - 2 * u * v)),
    ]
    for map_id, density in wrong:
        spec = specs[map_id]
        nonzero = 0
        total = 500
        y_lo, y_hi = _Y_RANGES[spec.density_id]
        for _ in range(total):
            br = rng.choice(spec.branches[:spec.branch_count_hint])
            x = rand_fraction(rng, br.lo, br.hi)
            y = rand_fraction(rng, y_lo, y_hi)
            if measure.pushforward_residual(map_id, x, y, spec=spec,
                                            density=density) != 0:
                nonzero += 1
        neg.run((map_id, "perturbed"), lambda n=nonzero, t=total: n >= 0.99 * t)
    checks.append(neg.result())

    if birkhoff_iterations:
        birk = _Sweep("birkhoff-gauss")
        target = math.log(1.5) / math.log(2)
        birk.run("1{x<1/2}", lambda: abs(
            measure.birkhoff_average(measure.GAUSS_EXT,
                                     measure.indicator(0.0, 0.5),
                                     iterations=birkhoff_iterations)
            - target) < 0.01)
        checks.append(birk.result())

    return SuiteReport("measure", checks)


# -- coding sweep -----------------------------------------------------------

def _random_even_digits(rng, min_symbols: int):
    digits = []
    total = 0
    while total < min_symbols or (digits and digits[-1].eps < 0):
        a = rng.choice((2, 2, 4, 4, 6))
        eps = rng.choice((1, -1))
        if total + a // 2 >= min_symbols:
            eps = 1
        digits.append(ecf.EcfDigit(a, eps))
        total += a // 2
    return digits


def _random_forward_value(rng, min_symbols: int):
    digits = _random_even_digits(rng, min_symbols)
    lead_a = rng.choice((2, 4, 6))
    lead_eps = rng.choice((1, -1))
    sign = rng.choice((1, -1))
    exp = ecf.EcfExpansion(sign, ecf.EcfDigit(lead_a, lead_eps), tuple(digits))
    return ecf.ecf_eval(exp)


def _random_backward_value(rng, min_symbols: int, eps: int):
    """Value of the reflected coordinate w; returns (w, bwd)."""
    if rng.random() < 0.25:
        # |w| > 1: even expansion with a leading digit
        w = bp_abs(_random_forward_value(rng, min_symbols))
    else:
        digits = _random_even_digits(rng, min_symbols)
        sign = rng.choice((1, -1))
        pairs = [ecf.ExtDigit(sign, digits[0].a)] + [
            ecf.ExtDigit(digits[i].eps, digits[i + 1].a)
            for i in range(len(digits) - 1)
        ]
        w = ecf.ext_ecf_eval(ecf.ExtEcfExpansion(tuple(pairs)))
    return w, -eps * w


def _is_prefix(shorter, longer) -> bool:
    return len(shorter) <= len(longer) and \
        tuple(longer[:len(shorter)]) == tuple(shorter)


def _is_suffix(shorter, longer) -> bool:
    return len(shorter) <= len(longer) and \
        tuple(longer[len(longer) - len(shorter):]) == tuple(shorter)


def _point_on_edge(point, edge) -> bool:
    x, y2 = point
    from .boundary import _Infinity
    if isinstance(edge.v, _Infinity):
        return x == edge.u
    return y2 == -(x - edge.u) * (x - edge.v)


def run_coding(geodesics: int = 500, seed: int = 0,
               window: int = 20) -> SuiteReport:
    """Three-way coding equivalence, digit recovery, and first returns."""
    rng = random.Random(seed)
    per_side = max(12, window // 2 + 4)
    agree = _Sweep("three-way-symbols")
    recover = _Sweep("digit-recovery")
    first_return = _Sweep("first-return")
    win = _Sweep("window-size")

    for _ in range(geodesics):
        eps = rng.choice((1, -1))
        fwd = eps * bp_abs(_random_forward_value(rng, per_side + 2))
        w, bwd = _random_backward_value(rng, per_side + 2, eps)
        label = f"({fwd}, {bwd})"

        try:
            geo = cutting.even_sequence_geometric(fwd, bwd, window=256,
                                                  max_steps=4096)
            fwd_exp = ecf.ecf_expand(fwd, max_digits=256)
            if isinstance(w, Fraction) and -1 <= w <= 1:
                w_exp = ecf.ext_ecf_expand(w, max_digits=256)
            else:
                w_exp = ecf.ecf_expand(w, max_digits=256)
            dig = cutting.even_sequence_from_digits(fwd_exp, w_exp, window=256)
        except DomainError as exc:
            agree.samples += 1
            agree.failures += 1
            if agree.example is None:
                agree.example = {"point": label, "error": str(exc)}
            continue

        def three_way(geo=geo, dig=dig, fwd=fwd, bwd=bwd, eps=eps, w=w):
            ok = _is_prefix(geo.forward(), dig.forward()) and \
                _is_suffix(geo.backward(), dig.backward())
            if not ok:
                return False
            if isinstance(w, Fraction) and 0 < w < 1:
                # Series route applies on S (bwd in -eps*(0,1)); the
                # backward digit data is exercised through the dual pair,
                # whose forward expansion transposes the extended one.
                rcf_f = cf.rcf_expand(bp_abs(fwd), max_digits=512)
                rcf_b = cf.rcf_expand(bp_abs(bwd), max_digits=512)
                series = cutting.series_sequence_from_digits(
                    rcf_f, rcf_b, eps, window=1024)
                fore = cutting.recode_series_to_even(
                    series.forward()[1:], allow_partial=True, start_tag=eps)
                # the final symbols reflect the tail ambiguity of rational
                # expansions ([...,n] = [...,n-1,1]); compare up to a margin
                n = min(len(fore), len(dig.forward())) - 2
                if n < 6 or tuple(fore[:n]) != tuple(dig.forward()[:n]):
                    return False
                dual_fwd, dual_bwd = eps / w, -eps / bp_abs(fwd)
                rcf_df = cf.rcf_expand(1 / w, max_digits=512)
                rcf_db = cf.rcf_expand(1 / bp_abs(fwd), max_digits=512)
                dual_series = cutting.series_sequence_from_digits(
                    rcf_df, rcf_db, eps, window=1024)
                dual_fore = cutting.recode_series_to_even(
                    dual_series.forward()[1:], allow_partial=True,
                    start_tag=eps)
                want = cutting.even_forward_symbols(
                    ecf.ecf_expand(dual_fwd, max_digits=512), 1024)
                nd = min(len(dual_fore), len(want)) - 2
                if nd < 6 or tuple(dual_fore[:nd]) != tuple(want[:nd]):
                    return False
            return True
        agree.run(label, three_way)

        win.run(label, lambda geo=geo: len(geo.forward()) >= window // 2
                and len(geo.backward()) >= window // 2
                and len(geo.symbols) >= window)

        def recovery(fwd_exp=fwd_exp, dig=dig):
            want = []
            if fwd_exp.leading is not None:
                want.append(fwd_exp.leading)
            want.extend(fwd_exp.digits)
            got = cutting.even_digits_from_symbols(dig.forward())
            n = min(len(want), len(got))
            return n >= 3 and tuple(want[:n]) == tuple(got[:n])
        recover.run(label, recovery)

        def returns(fwd=fwd, bwd=bwd, geo=geo):
            t1 = [i for i, e in enumerate(geo.edges) if e.kind == cutting.TYPE1]
            xi_pos = next(i for i in t1
                          if _point_on_edge(
                              cutting.xi_eta_points(fwd, bwd, "even_farey")[0],
                              geo.edges[i])) if t1 else None
            xi, eta_f = cutting.xi_eta_points(fwd, bwd, "even_farey")
            _, eta_g = cutting.xi_eta_points(fwd, bwd, "even_gauss")
            j = t1.index(xi_pos)
            if j + 1 >= len(t1):
                return False
            if not _point_on_edge(eta_f, geo.edges[t1[j + 1]]):
                return False
            k = (bp_floor(bp_abs(fwd)) + 1) // 2
            if j + k >= len(t1):
                return False
            return _point_on_edge(eta_g, geo.edges[t1[j + k]])
        first_return.run(label, returns)

    return SuiteReport("coding", [agree.result(), win.result(),
                                  recover.result(), first_return.result()])


ALL_SUITES = {
    "conjugacy": run_conjugacy,
    "box": run_box,
    "slowdown": run_slowdown,
    "measure": run_measure,
    "coding": run_coding,
}

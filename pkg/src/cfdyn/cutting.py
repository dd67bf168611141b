"""Tessellation geometry and cutting-sequence codings.

The even tessellation is the orbit of the ideal triangle {-1, 1, infinity}
under the theta group.  Cells are tracked as group elements, so adjacency
is composition with one of three fixed generators and every edge produced
is constructively a theta-image of a base edge.  Type 1 edges are images
of the walls +-1 + i*R (one endpoint in each boundary orbit); Type 2 edges
are images of the unit semicircle (both endpoints odd/odd, determinant 2).

Left/right convention: after mapping the oriented geodesic to the upward
vertical through (0, infinity), a vertex with positive image lies on the
right.  For endpoints fwd > bwd this is "strictly between means right";
the orientation-reversed case flips, which is what the mirrored codings
of the source construction require.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

from . import moebius
from .boundary import (
    INFINITY,
    BoundaryPoint,
    DomainError,
    _Infinity,
    bp_abs,
    bp_floor,
    bp_sign,
)
from .ecf import (
    EcfDigit,
    EcfExpansion,
    ExtDigit,
    ExtEcfExpansion,
    ecf_expand,
)
from .cf import RcfExpansion

THETA_INFINITY_ORBIT = "ThetaInfinityOrbit"
THETA_ONE_ORBIT = "ThetaOneOrbit"

TYPE1 = "type1"
TYPE2 = "type2"
FAREY = "farey"
REMOVED = "removed"

XI = "xi"
ETA = "eta"


class DegenerateCrossingError(DomainError):
    """The geodesic runs through a vertex of the current cell."""


class CodecError(DomainError):
    """A symbol stream does not parse into the recognised block shapes."""


def classify_point(x: BoundaryPoint) -> str:
    """Boundary orbit of a reduced rational or infinity under theta.

    Theta-infinity orbit: numerator + denominator odd (infinity = 1/0
    included); theta-one orbit: numerator and denominator both odd.
    """
    if isinstance(x, _Infinity):
        return THETA_INFINITY_ORBIT
    if not isinstance(x, Fraction):
        raise DomainError("orbit classification needs a rational or infinity")
    if x.numerator % 2 == 1 and x.denominator % 2 == 1:
        return THETA_ONE_ORBIT
    return THETA_INFINITY_ORBIT


def _det(u: BoundaryPoint, v: BoundaryPoint) -> int:
    pu, qu = (1, 0) if isinstance(u, _Infinity) else (u.numerator, u.denominator)
    pv, qv = (1, 0) if isinstance(v, _Infinity) else (v.numerator, v.denominator)
    return pu * qv - qu * pv


class TessellationEdge(NamedTuple):
    u: BoundaryPoint
    v: BoundaryPoint
    kind: str

    def endpoints(self):
        return frozenset((self.u, self.v))

    def __str__(self):
        return f"({self.u},{self.v})[{self.kind}]"


def make_edge(u: BoundaryPoint, v: BoundaryPoint, kind: str) -> TessellationEdge:
    if isinstance(u, _Infinity) or (not isinstance(v, _Infinity) and v < u):
        u, v = v, u
    d = abs(_det(u, v))
    if kind in (FAREY, TYPE1, REMOVED) and d != 1:
        raise DomainError(f"({u},{v}) is not a Farey pair")
    if kind == TYPE2 and (d != 2 or classify_point(u) != THETA_ONE_ORBIT
                          or classify_point(v) != THETA_ONE_ORBIT):
        raise DomainError(f"({u},{v}) is not a unit-circle image")
    return TessellationEdge(u, v, kind)


def classify_farey_edge(edge: TessellationEdge) -> str:
    """Type 1 unless both endpoints lie in the theta-infinity orbit."""
    if abs(_det(edge.u, edge.v)) != 1:
        raise DomainError("not a Farey edge")
    cu, cv = classify_point(edge.u), classify_point(edge.v)
    if cu == THETA_INFINITY_ORBIT and cv == THETA_INFINITY_ORBIT:
        return REMOVED
    return TYPE1


@dataclass(frozen=True)
class CellState:
    """A tessellation cell as the group element carrying the base triangle."""

    g: moebius.Moebius

    @property
    def vertices(self):
        return (moebius.apply(self.g, Fraction(-1)),
                moebius.apply(self.g, Fraction(1)),
                moebius.apply(self.g, INFINITY))

    def sides(self):
        vm, vp, vi = self.vertices
        return (
            ("left", vm, vi, moebius.SHIFT_LEFT, TYPE1),
            ("right", vp, vi, moebius.SHIFT_RIGHT, TYPE1),
            ("circle", vm, vp, moebius.FLIP, TYPE2),
        )


BASE_CELL = CellState(moebius.identity())


def _strictly_inside(p, lo, hi) -> bool:
    if isinstance(p, _Infinity):
        return False
    return lo < p < hi


def edge_crosses(u, v, fwd, bwd) -> bool:
    """Whether the full geodesic (bwd, fwd) crosses the edge (u, v).

    Exactly one edge endpoint must lie strictly between the geodesic's
    endpoints on the boundary circle; an edge sharing an endpoint with the
    geodesic is asymptotic, never crossing.
    """
    if u == fwd or u == bwd or v == fwd or v == bwd:
        return False
    if isinstance(fwd, _Infinity) or isinstance(bwd, _Infinity):
        c = bwd if isinstance(fwd, _Infinity) else fwd
        su = (not isinstance(u, _Infinity)) and u > c
        sv = (not isinstance(v, _Infinity)) and v > c
        return su != sv
    lo, hi = (bwd, fwd) if bwd < fwd else (fwd, bwd)
    return _strictly_inside(u, lo, hi) != _strictly_inside(v, lo, hi)


def _crossing_abscissa(fwd, bwd, u, v):
    """Re of geodesic(bwd,fwd) cap edge(u,v) for finite geodesic endpoints."""
    if isinstance(v, _Infinity):
        return u
    if isinstance(u, _Infinity):
        return v
    c1 = (fwd + bwd) / 2
    r1s = ((fwd - bwd) / 2) ** 2
    c2 = (u + v) / 2
    r2s = ((v - u) / 2) ** 2
    return (r1s - r2s - c1 * c1 + c2 * c2) / (2 * (c2 - c1))


def vertex_side(v, fwd, bwd) -> int:
    """+1 if vertex v lies right of the geodesic oriented bwd -> fwd.

    Computed by normalising to the upward vertical geodesic: for fwd > bwd
    a vertex strictly between the endpoints is on the right; reversing the
    orientation flips the answer.
    """
    if isinstance(fwd, _Infinity):
        return 1 if v > bwd else -1
    if isinstance(bwd, _Infinity):
        return 1 if v < fwd else -1
    if bwd < fwd:
        if isinstance(v, _Infinity):
            return -1
        return 1 if bwd < v < fwd else -1
    if isinstance(v, _Infinity):
        return 1
    return 1 if (v > bwd or v < fwd) else -1


@dataclass(frozen=True)
class WalkResult:
    crossings: tuple            # TessellationEdge, in crossing order
    final_cell: CellState
    reached_cusp: bool
    truncated: bool


def cell_walk(fwd: BoundaryPoint, bwd: BoundaryPoint,
              max_steps: int = 512) -> WalkResult:
    """Enumerate tessellation edges crossed walking from the base cell to fwd.

    At each cell exactly one untraversed side separates the endpoints; at
    the base cell the exit is the crossing further along towards fwd,
    decided by exact comparison of intersection abscissae.  The walk stops
    when fwd becomes a vertex of the current cell (rational cusp).
    """
    if fwd == bwd:
        raise DomainError("endpoints must differ")
    cell = BASE_CELL
    if fwd in cell.vertices or bwd in cell.vertices:
        raise DegenerateCrossingError(
            "geodesic through a vertex of the base cell")
    crossings: list = []
    entry: Optional[frozenset] = None
    toward_larger = bp_compare_direction(fwd, bwd)
    for _ in range(max_steps):
        if fwd in cell.vertices:
            return WalkResult(tuple(crossings), cell, True, False)
        candidates = []
        for name, u, v, gen, kind in cell.sides():
            if entry is not None and frozenset((u, v)) == entry:
                continue
            if edge_crosses(u, v, fwd, bwd):
                candidates.append((name, u, v, gen, kind))
        if not candidates:
            if entry is None:
                raise DomainError("geodesic does not cross the base cell")
            return WalkResult(tuple(crossings), cell, True, False)
        if len(candidates) > 1:
            if entry is not None:
                raise DegenerateCrossingError(
                    "multiple exits from one cell; geodesic through a vertex")
            # base cell: pick the crossing nearer the forward endpoint
            def key(c):
                return _crossing_abscissa(fwd, bwd, c[1], c[2])
            candidates.sort(key=key, reverse=not toward_larger)
            candidates = [candidates[-1]]
        name, u, v, gen, kind = candidates[0]
        crossings.append(make_edge(u, v, kind))
        cell = CellState(moebius.compose(cell.g, gen))
        entry = frozenset((u, v))
    return WalkResult(tuple(crossings), cell, False, True)


def bp_compare_direction(fwd, bwd) -> bool:
    """True when walking towards fwd means increasing Re."""
    if isinstance(fwd, _Infinity):
        return True
    if isinstance(bwd, _Infinity):
        return False
    return fwd > bwd


@dataclass(frozen=True)
class CuttingSequence:
    """A window of coding symbols with the section-crossing positions.

    ``symbols`` run in the forward direction; ``xi_index`` counts the
    symbols before the xi crossing and ``eta_index`` marks the end of the
    first digit block after xi.  ``edges`` holds the crossed edges when
    the sequence came from geometry.
    """

    symbols: tuple
    xi_index: int
    eta_index: int
    edges: tuple = ()

    def forward(self):
        return self.symbols[self.xi_index:]

    def backward(self):
        return self.symbols[:self.xi_index]

    def __str__(self):
        parts = list(self.symbols[:self.xi_index]) + ["xi"] + \
            list(self.symbols[self.xi_index:])
        return " ".join(parts)


def _segment_symbol(left: TessellationEdge, right: TessellationEdge,
                    between: Sequence, fwd, bwd) -> str:
    type2 = [e for e in between if e.kind == TYPE2]
    if len(type2) > 1:
        raise DegenerateCrossingError(
            "more than one Type 2 crossing in a single segment")
    shared = left.endpoints() & right.endpoints()
    if type2:
        return "B" if shared else "C"
    if len(shared) != 1:
        raise DegenerateCrossingError("letter segment without a shared vertex")
    (v,) = shared
    return "R" if vertex_side(v, fwd, bwd) > 0 else "L"


def even_sequence_geometric(fwd: BoundaryPoint, bwd: BoundaryPoint,
                            window: int = 64,
                            max_steps: int = 2048) -> CuttingSequence:
    """Cutting sequence of the geodesic against the even tessellation.

    Walks from the base cell towards both endpoints, merges the crossing
    lists, and labels every complete run between consecutive Type 1 edges.
    Only complete segments are emitted; rational endpoints truncate at
    their cusps.
    """
    fw = cell_walk(fwd, bwd, max_steps)
    bw = cell_walk(bwd, fwd, max_steps)
    edges = tuple(reversed(bw.crossings)) + fw.crossings
    xi_edge_pos = len(bw.crossings)
    if xi_edge_pos >= len(edges) or edges[xi_edge_pos].kind != TYPE1:
        raise DomainError("geodesic has no Type 1 crossing towards fwd")
    t1 = [i for i, e in enumerate(edges) if e.kind == TYPE1]
    symbols: list = []
    xi_index = None
    for a, b in zip(t1, t1[1:]):
        if b == xi_edge_pos:
            xi_index = len(symbols) + 1
        symbols.append(_segment_symbol(edges[a], edges[b],
                                       edges[a + 1:b], fwd, bwd))
    if xi_edge_pos == t1[0]:
        xi_index = 0
    if xi_index is None:
        raise DomainError("xi crossing is not a Type 1 edge boundary")
    lo = max(0, xi_index - window)
    hi = min(len(symbols), xi_index + window)
    symbols = symbols[lo:hi]
    xi_index -= lo
    return CuttingSequence(tuple(symbols), xi_index,
                           _eta_from_symbols(symbols, xi_index), edges)


def _eta_from_symbols(symbols, xi_index) -> int:
    for i in range(xi_index, len(symbols)):
        if symbols[i] in ("B", "C"):
            return i + 1
    return xi_index + 1


def _letter(tag: int) -> str:
    return "L" if tag > 0 else "R"


def _forward_digit_stream(e: EcfExpansion, limit: int):
    items = []
    if e.leading is not None:
        items.append(e.leading)
    items.extend(e.digits)
    count = len(items)
    yield from items
    if e.period:
        while count < limit:
            for d in e.period:
                yield d
                count += 1
                if count >= limit:
                    break


def even_forward_symbols(e: EcfExpansion, window: int):
    """Digit-table coding of the forward endpoint: (2k,-1) -> L^(k-1) B and
    (2k,+1) -> L^(k-1) C under the evolving orientation tag."""
    tag = e.sign if e.sign != 0 else 1
    out: list = []
    for a, s in _forward_digit_stream(e, window + 2):
        k = a // 2
        out.extend([_letter(tag)] * (k - 1))
        out.append("B" if s < 0 else "C")
        tag = -s * tag
        if len(out) >= window:
            break
    return out[:window]


def reflected_backward(fwd: BoundaryPoint, bwd: BoundaryPoint) -> BoundaryPoint:
    """The square coordinate -sign(fwd)*bwd whose extended expansion codes
    the backward window (the J_e / K_e convention)."""
    return -bp_sign(fwd) * bwd


def _ext_pair_stream(ext: ExtEcfExpansion, limit: int):
    count = len(ext.digits)
    yield from ext.digits
    if ext.period:
        while count < limit:
            for d in ext.period:
                yield d
                count += 1
                if count >= limit:
                    break


def even_backward_symbols(fwd_sign: int,
                          w_exp: Union[ExtEcfExpansion, EcfExpansion],
                          window: int):
    """Digit-table coding of the backward window, nearest-to-xi first
    reading outward; the returned list is in forward order.

    ``w_exp`` expands the reflected coordinate w = -sign(fwd)*bwd: an
    extended expansion when |w| <= 1, or an even expansion with a leading
    digit when w > 1.  The leading digit contributes a plain-letter window
    of length a0/2 drawn with the incoming tag; each extended pair
    (eps/2j) contributes letters^(j-1) plus B (eps = -1) or C (eps = +1),
    letters drawn with the tag after the update for that pair.
    """
    tag = fwd_sign
    blocks: list = []  # nearest-xi first; each block in forward order
    total = 0
    if isinstance(w_exp, EcfExpansion):
        if w_exp.sign <= 0 or w_exp.leading is None:
            raise DomainError("backward expansion with leading digit needs w > 1")
        lead = w_exp.leading
        # sigma_e-translate window: plain letters, orientation unchanged;
        # the leading sign enters through the first extended pair below
        blocks.append([_letter(tag)] * (lead.a // 2))
        total += lead.a // 2
        signs = [lead.eps] + [d.eps for d in w_exp.digits]
        arrs = [d.a for d in w_exp.digits]
        pairs = [ExtDigit(signs[i], arrs[i]) for i in range(len(arrs))]
        if w_exp.period:
            per_signs = [d.eps for d in w_exp.period]
            per_arrs = [d.a for d in w_exp.period]
            pairs.append(ExtDigit(signs[-1] if arrs else lead.eps, per_arrs[0]))
            m = len(w_exp.period)
            cycle = [ExtDigit(per_signs[i], per_arrs[(i + 1) % m])
                     for i in range(m)]
            stream = _ext_pair_stream(
                ExtEcfExpansion(tuple(pairs), period=tuple(cycle)), window + 2)
        else:
            stream = iter(pairs)
    else:
        stream = _ext_pair_stream(w_exp, window + 2)
    for eps, b in stream:
        if total >= window:
            break
        tag = -eps * tag
        block = [_letter(tag)] * (b // 2 - 1) + ["B" if eps < 0 else "C"]
        blocks.append(block)
        total += len(block)
    out: list = []
    for block in reversed(blocks):
        out.extend(block)
    return out[-window:] if window else out


def even_sequence_from_digits(fwd_exp: EcfExpansion,
                              bwd_exp: Union[ExtEcfExpansion, EcfExpansion],
                              window: int = 64) -> CuttingSequence:
    """Cutting sequence reconstructed from digit data alone.

    ``fwd_exp`` is the even expansion of the forward endpoint; ``bwd_exp``
    expands the reflected backward coordinate (see reflected_backward).
    """
    back = even_backward_symbols(fwd_exp.sign if fwd_exp.sign else 1,
                                 bwd_exp, window)
    fore = even_forward_symbols(fwd_exp, window)
    symbols = tuple(back) + tuple(fore)
    return CuttingSequence(symbols, len(back),
                           _eta_from_symbols(symbols, len(back)))


def series_sequence_from_digits(fwd_exp: RcfExpansion, bwd_exp: RcfExpansion,
                                eps: int, window: int = 64) -> CuttingSequence:
    """Series coding: alternating blocks letter^(n_i) starting with L for
    eps = +1 (forward of xi) and the mirrored letters for eps = -1.

    ``fwd_exp``/``bwd_exp`` expand |fwd| and |bwd|; the pair is assumed in
    S, so bwd lies in -eps*(0,1) and its expansion has leading digit 0.
    """
    def blocks(exp: RcfExpansion, first_tag: int, drop_leading: bool):
        ns = ([] if drop_leading else [exp.leading]) + list(exp.digits)
        out = []
        tag = first_tag
        total = 0
        i = 0
        while total < window:
            if i < len(ns):
                n = ns[i]
            elif exp.period:
                n = exp.period[(i - len(ns)) % len(exp.period)]
            else:
                break
            out.append([_letter(tag)] * n)
            total += n
            tag = -tag
            i += 1
        return out

    fore_blocks = blocks(fwd_exp, eps, drop_leading=False)
    fore = [s for b in fore_blocks for s in b][:window]
    back_blocks = blocks(bwd_exp, -eps, drop_leading=True)
    back: list = []
    for b in back_blocks:
        if len(back) >= window:
            break
        back = b + back
    back = back[-window:] if window else back
    symbols = tuple(back) + tuple(fore)
    xi = len(back)
    eta = xi + (fwd_exp.leading if fwd_exp.leading else 1)
    return CuttingSequence(symbols, xi, eta)


def recode_series_to_even(symbols: Sequence[str],
                          allow_partial: bool = False,
                          start_tag: Optional[int] = None):
    """Recode Series symbols to the bold alphabet chunk by chunk.

    Chunks are a run of one letter closed by a single opposite letter:
    X^(2k-2) Y -> X^(k-1) B and X^(2k-1) Y -> X^(k-1) C.  The run letter
    is fixed by the orientation tag (+1 reads L-runs, -1 reads R-runs),
    which persists through a B chunk and flips after a C chunk, mirroring
    the sign change of the digit action.  By default the tag is inferred
    by reading the first symbol as the run letter; pass ``start_tag`` when
    the stream may open with a bare closer.  A trailing unfinished chunk
    raises CodecError unless ``allow_partial`` drops it.
    """
    out: list = []
    i, n = 0, len(symbols)
    if n == 0:
        return out
    if start_tag is None:
        if symbols[0] not in ("L", "R"):
            raise CodecError(f"unexpected symbol {symbols[0]!r}")
        tag = 1 if symbols[0] == "L" else -1
    else:
        tag = start_tag
    while i < n:
        run_letter = _letter(tag)
        closer_letter = _letter(-tag)
        run = 0
        while i < n and symbols[i] == run_letter:
            run += 1
            i += 1
        if i >= n:
            if allow_partial:
                break
            raise CodecError("trailing run without its closing letter")
        if symbols[i] != closer_letter:
            raise CodecError(f"unexpected symbol {symbols[i]!r}")
        i += 1
        k = run // 2 + 1
        out.extend([run_letter] * (k - 1))
        if run % 2 == 0:
            out.append("B")
        else:
            out.append("C")
            tag = -tag
    return out


def even_digits_from_symbols(symbols: Sequence[str]):
    """Recover even digits from a bold forward window: letters^(k-1) then
    B -> (2k,-1) or C -> (2k,+1).  A trailing letter run is dropped."""
    digits: list = []
    run = 0
    for s in symbols:
        if s in ("L", "R"):
            run += 1
        elif s in ("B", "C"):
            digits.append(EcfDigit(2 * (run + 1), -1 if s == "B" else 1))
            run = 0
        else:
            raise CodecError(f"unexpected symbol {s!r}")
    return digits


# -- section crossing points ----------------------------------------------

def _vertical_crossing(v: Fraction, fwd, bwd):
    y2 = -(v - fwd) * (v - bwd)
    if y2 <= 0:
        raise DomainError(f"geodesic does not cross the vertical at {v}")
    return v, y2


def _circle_crossing(u1, u2, fwd, bwd):
    if not edge_crosses(u1, u2, fwd, bwd):
        raise DomainError(f"geodesic does not cross the circle ({u1},{u2})")
    x = _crossing_abscissa(fwd, bwd, u1, u2)
    c1 = (fwd + bwd) / 2
    y2 = ((fwd - bwd) / 2) ** 2 - (x - c1) ** 2
    if y2 <= 0:
        raise DomainError("tangential crossing")
    return x, y2


def xi_eta_points(fwd: BoundaryPoint, bwd: BoundaryPoint, convention: str):
    """Exact (real, imag^2) coordinates of the xi and eta section crossings.

    Conventions: 'gauss' (xi on i*R, eta on the vertical at eps*floor|fwd|),
    'farey' (eta on the vertical at eps for |fwd| > 2, else on the circle
    eps*(1,2) as displayed), 'even_gauss' (xi on eps + i*R, eta on the
    half-circle at the first even digit), 'even_farey' (eta at the next
    Type 1 edge).
    """
    eps = bp_sign(fwd)
    m = bp_abs(fwd)
    if convention in ("gauss", "farey"):
        xi = _vertical_crossing(Fraction(0), fwd, bwd)
        if convention == "gauss":
            if is_integer_like(m):
                return xi, None  # geodesic into the cusp: no first return
            eta = _vertical_crossing(Fraction(eps * bp_floor(m)), fwd, bwd)
        elif m > 2:
            eta = _vertical_crossing(Fraction(eps), fwd, bwd)
        else:
            eta = _circle_crossing(Fraction(eps), Fraction(2 * eps), fwd, bwd)
        return xi, eta
    if convention in ("even_gauss", "even_farey"):
        xi = _vertical_crossing(Fraction(eps), fwd, bwd)
        if convention == "even_farey":
            if m > 3:
                eta = _vertical_crossing(Fraction(3 * eps), fwd, bwd)
            elif m > 2:
                eta = _circle_crossing(Fraction(2 * eps), Fraction(3 * eps),
                                       fwd, bwd)
            else:
                eta = _circle_crossing(Fraction(eps), Fraction(2 * eps),
                                       fwd, bwd)
            return xi, eta
        exp = ecf_expand(fwd, max_digits=1)
        digit = exp.leading if exp.leading is not None else \
            (exp.digits[0] if exp.digits else
             (exp.period[0] if exp.period else None))
        if digit is None:
            raise DomainError("eta undefined: no even digit")
        a = digit.a
        lo, hi = (a - 1, a) if digit.eps < 0 else (a, a + 1)
        if eps < 0:
            lo, hi = -hi, -lo
        eta = _circle_crossing(Fraction(lo), Fraction(hi), fwd, bwd)
        return xi, eta
    raise DomainError(f"unknown convention {convention!r}")


def is_integer_like(x) -> bool:
    return isinstance(x, Fraction) and x.denominator == 1


# -- edge enumeration for rendering and censuses ---------------------------

def farey_edges(max_den: int, xmin: int, xmax: int):
    """All Farey-tessellation edges with denominators <= max_den inside
    [xmin, xmax], generated by mediant subdivision plus the verticals."""
    edges = [make_edge(Fraction(k), INFINITY, FAREY)
             for k in range(xmin, xmax + 1)]

    def gen(u: Fraction, v: Fraction):
        edges.append(make_edge(u, v, FAREY))
        m = Fraction(u.numerator + v.numerator, u.denominator + v.denominator)
        if m.denominator <= max_den:
            gen(u, m)
            gen(m, v)

    for k in range(xmin, xmax):
        gen(Fraction(k), Fraction(k + 1))
    return edges


def even_edges(max_den: int, xmin: int, xmax: int):
    """Edges of the even tessellation in the window: classified Farey edges
    (Type 1 or removed) plus the determinant-two odd/odd Type 2 circles."""
    out = []
    for e in farey_edges(max_den, xmin, xmax):
        out.append(TessellationEdge(e.u, e.v, classify_farey_edge(e)))
    odd = [Fraction(p, q)
           for q in range(1, max_den + 1, 2)
           for p in range(xmin * q - 1, xmax * q + 2)
           if p % 2 == 1 and Fraction(p, q).denominator == q
           and xmin <= Fraction(p, q) <= xmax]
    odd.sort()
    for i, u in enumerate(odd):
        for v in odd[i + 1:]:
            if abs(_det(u, v)) == 2:
                out.append(make_edge(u, v, TYPE2))
    return out

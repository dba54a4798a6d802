"""Rational interval arithmetic and interval branch-and-bound upper bounds
for polynomial maxima over boxes.

Endpoints are exact rationals, so no rounding step is needed: every interval
produced genuinely contains the true range, and the bound returned by
``bb_max_bound`` is a certified upper bound.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .polynomials import MPoly, Rat, _frac


class RInterval:
    """Closed interval [lo, hi] with Fraction endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Rat, hi: Rat | None = None):
        self.lo = _frac(lo)
        self.hi = self.lo if hi is None else _frac(hi)
        if self.lo > self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other) -> "RInterval":
        if isinstance(other, RInterval):
            return RInterval(self.lo + other.lo, self.hi + other.hi)
        return RInterval(self.lo + _frac(other), self.hi + _frac(other))

    __radd__ = __add__

    def __neg__(self) -> "RInterval":
        return RInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "RInterval":
        return self + (-other if isinstance(other, RInterval) else -_frac(other))

    def __rsub__(self, other) -> "RInterval":
        return (-self) + other

    def __mul__(self, other) -> "RInterval":
        if isinstance(other, RInterval):
            cands = (self.lo * other.lo, self.lo * other.hi,
                     self.hi * other.lo, self.hi * other.hi)
            return RInterval(min(cands), max(cands))
        c = _frac(other)
        if c >= 0:
            return RInterval(self.lo * c, self.hi * c)
        return RInterval(self.hi * c, self.lo * c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RInterval":
        if n == 0:
            return RInterval(1)
        if n % 2 == 1 or self.lo >= 0:
            return RInterval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            return RInterval(self.hi**n, self.lo**n)
        return RInterval(0, max(self.lo**n, self.hi**n))

    def abs_hi(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def contains(self, x: Rat) -> bool:
        return self.lo <= _frac(x) <= self.hi


def eval_interval(poly: MPoly, box: Mapping[str, RInterval]) -> RInterval:
    """Term-wise interval evaluation; naive but sound."""
    acc = RInterval(0)
    for e, c in poly.terms.items():
        t = RInterval(c)
        for v, p in zip(poly.vars, e):
            if p:
                t = t * (box[v] ** p)
        acc = acc + t
    return acc


def upper_bound_on_box(poly: MPoly, grads: Mapping[str, MPoly],
                       hessians: Mapping[tuple[str, str], MPoly],
                       box: Mapping[str, RInterval]) -> Fraction:
    """Upper bound for poly over the box: min of naive, mean-value and
    second-order Taylor forms.

    The Taylor form p(c) + sum |dp_i(c)| w_i/2 + (1/8) sum |d2p_ij over box|
    w_i w_j converges quadratically in the box width even when interval
    evaluation of the derivatives is loose, which is what makes subdivision
    cheap near flat maxima.
    """
    naive = eval_interval(poly, box).hi
    center = {v: iv.mid for v, iv in box.items()}
    pc = poly.evaluate(center)
    mv = pc
    t2 = pc
    for v, g in grads.items():
        w = box[v].width
        if w:
            mv += eval_interval(g, box).abs_hi() * w / 2
            t2 += abs(g.evaluate(center)) * w / 2
    for (v1, v2), hsn in hessians.items():
        w1, w2 = box[v1].width, box[v2].width
        if w1 and w2:
            bound = eval_interval(hsn, box).abs_hi() * w1 * w2 / 8
            t2 += bound if v1 == v2 else 2 * bound
    return min(naive, mv, t2)


def _round_split(lo: Fraction, hi: Fraction) -> Fraction:
    """A split point near the midpoint with a denominator-bounded value.

    Keeps interval endpoints on a coarse rational grid so big-integer growth
    stays bounded during deep subdivisions; both halves still cover the box,
    so soundness is unaffected.
    """
    mid = (lo + hi) / 2
    rounded = Fraction(round(mid * 2**28), 2**28)
    if lo < rounded < hi:
        return rounded
    return mid


@dataclass
class BBResult:
    upper: Fraction          # certified upper bound on the max over the region
    sample_max: Fraction     # best feasible sample value found (lower bound)
    conclusive: bool         # upper - sample_max <= tol achieved within budget
    boxes: int

    def __bool__(self) -> bool:  # truthy when the bound is tolerance-certified
        return self.conclusive


def bb_max_bound(poly: MPoly, box: Mapping[str, tuple[Rat, Rat]], tol: Rat,
                 constraints: Sequence[MPoly] = (),
                 max_boxes: int = 200_000) -> BBResult:
    """Certified upper bound on max of ``poly`` over box ∩ {g <= 0 for g in constraints}.

    Returns U with U >= true max always; when ``conclusive`` also
    U - true max <= tol. Constraints are polynomials required to be <= 0;
    boxes entirely violating some constraint are discarded, boxes straddling
    the boundary are bounded over their whole extent (sound).
    """
    tol = _frac(tol)
    vars_ = list(box)
    grads = {v: poly.partial(v) for v in vars_}
    hessians = {(v1, v2): grads[v1].partial(v2)
                for i, v1 in enumerate(vars_) for v2 in vars_[i:]}
    cons = list(constraints)

    def feasible(pt: Mapping[str, Fraction]) -> bool:
        return all(g.evaluate(pt) <= 0 for g in cons)

    def classify(b: dict[str, RInterval]) -> int:
        # 1 feasible box, 0 straddles, -1 infeasible
        state = 1
        for g in cons:
            r = eval_interval(g, b)
            if r.lo > 0:
                return -1
            if r.hi > 0:
                state = 0
        return state

    def sample_points(b: dict[str, RInterval]):
        yield {v: iv.mid for v, iv in b.items()}
        for corner in itertools.product(*[(iv.lo, iv.hi) for iv in b.values()]):
            yield dict(zip(vars_, corner))

    root = {v: RInterval(lo, hi) for v, (lo, hi) in box.items()}
    sample_max: Fraction | None = None
    heap: list[tuple[float, int, Fraction, dict]] = []
    counter = itertools.count()

    def push(b: dict[str, RInterval]) -> None:
        nonlocal sample_max
        side = classify(b)
        if side < 0:
            return
        ub = upper_bound_on_box(poly, grads, hessians, b)
        for pt in sample_points(b):
            if side == 1 or feasible(pt):
                val = poly.evaluate(pt)
                if sample_max is None or val > sample_max:
                    sample_max = val
                break
        heapq.heappush(heap, (-float(ub), next(counter), ub, b))

    push(root)
    boxes = 1
    while heap:
        _, _, ub, b = heap[0]
        if sample_max is not None and ub - sample_max <= tol:
            return BBResult(ub, sample_max, True, boxes)
        if boxes >= max_boxes:
            return BBResult(ub, sample_max if sample_max is not None else ub, False, boxes)
        heapq.heappop(heap)
        wide = max(b, key=lambda v: b[v].width)
        if b[wide].width == 0:
            # degenerate box: its bound is final; treat as certified point value
            if sample_max is None or ub > sample_max:
                sample_max = ub if sample_max is None else sample_max
            continue
        m = _round_split(b[wide].lo, b[wide].hi)
        for half in (RInterval(b[wide].lo, m), RInterval(m, b[wide].hi)):
            bb = dict(b)
            bb[wide] = half
            push(bb)
            boxes += 1
    # heap empty: the whole region was infeasible
    return BBResult(Fraction(0), Fraction(0), False, boxes)

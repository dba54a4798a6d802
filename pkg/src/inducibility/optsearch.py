"""Candidate maximiser search.

finite_opt scans every integer partition of n exactly; continuous_opt is a
seeded multistart projected-gradient ascent over the simplex (clique mass as
an explicit coordinate) with merge/split moves, followed by clustering and
snapping to small-denominator rationals whose exact value confirms the float;
kst_maximiser solves the one-dimensional two-part problem exactly, returning
either 1/2 or the algebraic root of the associated quartic-family polynomial.

continuous_opt is a heuristic: it never claims completeness, only that every
reported candidate passes the stationarity filter. Certification of global
optimality lives in the certificate pipelines.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .graphs import CompletePartiteShape
from .objectives import ObjectiveSpec, partitions_of
from .partite import (PartiteVector, count_partite, lambda_of_vector,
                      sym_coefficient, _multinomial)
from .perturbation import lagrange_residual
from .polynomials import AlgebraicNumber, UPoly


# ---------------------------------------------------------------------------
# Exhaustive finite-n search over complete partite shapes
# ---------------------------------------------------------------------------

def finite_opt(spec: ObjectiveSpec, n: int) -> tuple[Fraction, list[CompletePartiteShape]]:
    """Max of lambda over all n-vertex complete partite graphs, with argmax set."""
    if n > 40:
        raise ValueError("partition scan limited to n <= 40")
    if n < spec.k:
        raise ValueError("need n >= k")
    gamma = {a: v for a, v in spec.partition_values().items() if v != 0}
    denom = comb(n, spec.k)
    best: Optional[Fraction] = None
    arg: list[CompletePartiteShape] = []
    for part in partitions_of(n):
        shape = CompletePartiteShape(part)
        total = Fraction(0)
        for a, v in gamma.items():
            total += v * count_partite(a, shape)
        val = total / denom
        if best is None or val > best:
            best, arg = val, [shape]
        elif val == best:
            arg.append(shape)
    assert best is not None
    return best, arg


# ---------------------------------------------------------------------------
# Float evaluation plan (power-sum expansion of the closed form)
# ---------------------------------------------------------------------------

def _set_partitions(items: Sequence[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


class _FloatPlan:
    """lambda(x) = sum coeff * x0^s * prod(power sums), in floats."""

    def __init__(self, spec: ObjectiveSpec):
        self.k = spec.k
        terms: dict[tuple[int, tuple[int, ...]], float] = {}
        for a, gamma in spec.partition_values().items():
            if gamma == 0:
                continue
            k = sum(a)
            ell = len(a)
            t = sum(1 for v in a if v >= 2)
            lead = gamma * _multinomial(k, a) * sym_coefficient(a)
            for s in range(ell - t + 1):
                prefix = a[: ell - s]
                pick = comb(ell - t, s)
                for part in _set_partitions(list(range(len(prefix)))):
                    coeff = lead * pick
                    exps = []
                    for block in part:
                        size = len(block)
                        coeff *= Fraction((-1) ** (size - 1) * math.factorial(size - 1))
                        exps.append(sum(prefix[i] for i in block))
                    key = (s, tuple(sorted(exps)))
                    terms[key] = terms.get(key, 0.0) + float(coeff)
        self.terms = [(s, exps, c) for (s, exps), c in terms.items() if c]

    def value(self, x0: float, parts: Sequence[float]) -> float:
        ps = [0.0] * (self.k + 1)
        for e in range(1, self.k + 1):
            ps[e] = sum(p**e for p in parts)
        total = 0.0
        for s, exps, c in self.terms:
            t = c * (x0**s if s else 1.0)
            for e in exps:
                t *= ps[e]
            total += t
        return total

    def gradient(self, x0: float, parts: Sequence[float]) -> tuple[float, list[float]]:
        ps = [0.0] * (self.k + 1)
        for e in range(1, self.k + 1):
            ps[e] = sum(p**e for p in parts)
        g0 = 0.0
        gi = [0.0] * len(parts)
        for s, exps, c in self.terms:
            prods = 1.0
            for e in exps:
                prods *= ps[e]
            if s:
                g0 += c * s * x0 ** (s - 1) * prods
            for pos, e in enumerate(exps):
                rest = c * (x0**s if s else 1.0)
                for q, e2 in enumerate(exps):
                    if q != pos:
                        rest *= ps[e2]
                for i, p in enumerate(parts):
                    gi[i] += rest * e * p ** (e - 1)
        return g0, gi


def _project_simplex(v: Sequence[float]) -> list[float]:
    """Euclidean projection onto {x >= 0, sum x = 1}."""
    u = sorted(v, reverse=True)
    css = 0.0
    rho = -1
    theta = 0.0
    for j, uj in enumerate(u):
        css += uj
        t = (css - 1.0) / (j + 1)
        if uj - t > 0:
            rho = j
            theta = t
    return [max(x - theta, 0.0) for x in v]


# ---------------------------------------------------------------------------
# Multistart continuous search
# ---------------------------------------------------------------------------

@dataclass
class Candidate:
    parts: tuple[float, ...]
    x0: float
    lam_float: float
    residual_float: float
    vector: Optional[PartiteVector] = None     # set when the snap verifies
    lam_exact: Optional[Fraction] = None
    residual_exact: Optional[Fraction] = None

    @property
    def snapped(self) -> bool:
        return self.vector is not None


@dataclass
class CandidateSet:
    candidates: list[Candidate]
    lam_best: float
    provenance: dict = field(default_factory=dict)

    def best_vector(self) -> Optional[PartiteVector]:
        for c in self.candidates:
            if c.vector is not None:
                return c.vector
        return None

    def to_jsonable(self) -> dict:
        return {
            "lambda_best_float": self.lam_best,
            "provenance": self.provenance,
            "candidates": [{
                "x0": c.x0,
                "parts": list(c.parts),
                "lambda_float": c.lam_float,
                "residual_float": c.residual_float,
                "snapped": c.snapped,
                "vector": None if c.vector is None else
                    {"x0": str(c.vector.x0), "parts": [str(p) for p in c.vector.parts]},
                "lambda_exact": None if c.lam_exact is None else str(c.lam_exact),
                "residual_exact": None if c.residual_exact is None else str(c.residual_exact),
            } for c in self.candidates],
        }


def _ascend(plan: _FloatPlan, z: list[float], iters: int = 400) -> tuple[list[float], float]:
    """Projected gradient ascent on [x0, x1..xM] over the simplex."""
    val = plan.value(z[0], z[1:])
    step = 0.1
    for _ in range(iters):
        g0, gi = plan.gradient(z[0], z[1:])
        grad = [g0] + gi
        improved = False
        for _ in range(25):
            cand = _project_simplex([zi + step * g for zi, g in zip(z, grad)])
            cv = plan.value(cand[0], cand[1:])
            if cv > val + 1e-15:
                z, val = cand, cv
                step *= 1.25
                improved = True
                break
            step *= 0.5
            if step < 1e-14:
                break
        if not improved:
            break
    return z, val


def _residual_float(plan: _FloatPlan, z: list[float]) -> float:
    lam = plan.value(z[0], z[1:])
    g0, gi = plan.gradient(z[0], z[1:])
    k = plan.k
    worst = 0.0
    if z[0] > 1e-9:
        worst = abs(g0 / k - lam)
    for zi, g in zip(z[1:], gi):
        if zi > 1e-9:
            worst = max(worst, abs(g / k - lam))
    return worst


def continuous_opt(spec: ObjectiveSpec, max_support: int, starts: int = 200,
                   seed: int = 0, residual_tol: float = 1e-8,
                   snap_tol: float = 1e-7,
                   extra_seeds: Sequence[PartiteVector] = ()) -> CandidateSet:
    """Multistart search for maximisers with support at most max_support."""
    if max_support > 10:
        raise ValueError("max_support limited to 10")
    plan = _FloatPlan(spec)
    rng = random.Random(seed)
    M = max_support

    seeds: list[list[float]] = []
    for vec in extra_seeds:
        ratios = [float(p) for p in vec.parts[:M]]
        seeds.append([float(vec.x0)] + ratios + [0.0] * (M - len(ratios)))
    for r in range(1, M + 1):
        seeds.append([0.0] + [1.0 / r] * r + [0.0] * (M - r))
    for x0 in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
        for r in range(1, M + 1):
            seeds.append([x0] + [(1 - x0) / r] * r + [0.0] * (M - r))
    try:
        _, shapes = finite_opt(spec, max(spec.k + 7, 12))
        for shape in shapes[:4]:
            sizes = shape.part_sizes
            n = shape.n
            ratios = sorted((s / n for s in sizes), reverse=True)[:M]
            seeds.append([1 - sum(ratios)] + ratios + [0.0] * (M - len(ratios)))
            big = sorted((s / n for s in sizes if s >= 2), reverse=True)[:M]
            seeds.append([1 - sum(big)] + big + [0.0] * (M - len(big)))
    except ValueError:
        pass
    while len(seeds) < starts:
        r = rng.randint(1, M)
        raw = [rng.expovariate(1.0) for _ in range(r)]
        x0 = rng.random() if rng.random() < 0.4 else 0.0
        tot = sum(raw)
        seeds.append([x0] + [(1 - x0) * w / tot for w in raw] + [0.0] * (M - r))

    found: list[tuple[float, list[float]]] = []
    for z in seeds[:max(starts, len(seeds))]:
        z = _project_simplex(z)
        z, val = _ascend(plan, z)
        z, val = _local_moves(plan, z, val)
        found.append((val, z))

    # cluster by rounded coordinates, keep the best representative
    clusters: dict[tuple, tuple[float, list[float]]] = {}
    for val, z in found:
        x0 = z[0] if z[0] > 1e-9 else 0.0
        parts = tuple(sorted((p for p in z[1:] if p > 1e-9), reverse=True))
        key = (round(x0, 6),) + tuple(round(p, 6) for p in parts)
        if key not in clusters or val > clusters[key][0]:
            clusters[key] = (val, [x0] + list(parts))
    ranked = sorted(clusters.values(), key=lambda t: -t[0])

    candidates: list[Candidate] = []
    for val, z in ranked:
        res = _residual_float(plan, z)
        if res > residual_tol:
            continue
        cand = Candidate(tuple(z[1:]), z[0], val, res)
        snap = _try_snap(spec, z, val, snap_tol)
        if snap is not None:
            cand.vector = snap
            cand.lam_exact = lambda_of_vector(spec, snap)
            cand.residual_exact = lagrange_residual(spec, snap)
        candidates.append(cand)

    if candidates:
        best = candidates[0].lam_float
        top = [c for c in candidates if c.lam_float >= best - 1e-9]
    else:
        best = float("-inf")
        top = []
    return CandidateSet(top, best, provenance={
        "starts": len(seeds), "seed": seed, "max_support": M,
        "clusters": len(ranked), "objective": spec.label,
    })


def _local_moves(plan: _FloatPlan, z: list[float], val: float) -> tuple[list[float], float]:
    """Merge the two smallest parts / split the largest, keeping improvements."""
    improved = True
    while improved:
        improved = False
        parts = sorted((p for p in z[1:] if p > 1e-9), reverse=True)
        M = len(z) - 1
        if len(parts) >= 2:
            merged = parts[:-2] + [parts[-2] + parts[-1]]
            cand = [z[0]] + merged + [0.0] * (M - len(merged))
            cand, cv = _ascend(plan, _project_simplex(cand))
            if cv > val + 1e-12:
                z, val = cand, cv
                improved = True
                continue
        if parts and len(parts) < M:
            split = [parts[0] / 2, parts[0] / 2] + parts[1:]
            cand = [z[0]] + split + [0.0] * (M - len(split))
            cand, cv = _ascend(plan, _project_simplex(cand))
            if cv > val + 1e-12:
                z, val = cand, cv
                improved = True
    return z, val


def _try_snap(spec: ObjectiveSpec, z: list[float], val: float,
              snap_tol: float) -> Optional[PartiteVector]:
    parts = []
    for p in z[1:]:
        f = Fraction(p).limit_denominator(64)
        if abs(float(f) - p) > snap_tol:
            return None
        if f > 0:
            parts.append(f)
    x0 = Fraction(z[0]).limit_denominator(64)
    if abs(float(x0) - z[0]) > snap_tol:
        return None
    if sum(parts, Fraction(0)) + x0 != 1:
        return None
    try:
        vec = PartiteVector(sorted(parts, reverse=True))
    except ValueError:
        return None
    if float(lambda_of_vector(spec, vec)) < val - 1e-9:
        return None
    return vec


# ---------------------------------------------------------------------------
# The two-part (bipartite pattern) solver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KstResult:
    s: int
    t: int
    alpha: AlgebraicNumber           # the larger ratio, in [1/2, 1)
    root_poly: UPoly                 # s x^{m+1} - t x^m + t x - s, m = t - s
    x_interval: tuple[Fraction, Fraction]
    at_half: bool                    # True when the balanced split is optimal
    m_value: tuple[Fraction, Fraction]   # enclosure of the maximum of the profile
    i_value: tuple[Fraction, Fraction]   # enclosure of the inducibility constant

    def alpha_fraction(self) -> Fraction:
        return self.alpha.as_fraction()


def _fst_value(s: int, t: int, a_lo: Fraction, a_hi: Fraction) -> tuple[Fraction, Fraction]:
    from .intervals import RInterval

    a = RInterval(a_lo, a_hi)
    one = RInterval(1) - a
    enc = a**s * one**t + a**t * one**s
    return enc.lo, enc.hi


def kst_maximiser(s: int, t: int, width: Fraction = Fraction(1, 2**40)) -> KstResult:
    """Optimal split ratio for the two-part profile a^s(1-a)^t + a^t(1-a)^s.

    Returns 1/2 exactly when s >= C(t-s, 2); otherwise isolates the unique
    root of the associated polynomial in (0, 1) and maps it through
    alpha = 1/(1+x) to an algebraic number with a 2^-40 isolating interval.
    """
    if s > t:
        s, t = t, s
    if s * t < 2:
        raise ValueError("need s*t >= 2")
    m = t - s
    # h(x) = s x^{m+1} - t x^m + t x - s (terms merge when m <= 1)
    coeffs = [Fraction(0)] * (m + 2)
    coeffs[0] = Fraction(-s)
    coeffs[1] += Fraction(t)
    coeffs[m] += Fraction(-t)
    coeffs[m + 1] += Fraction(s)
    h = UPoly(coeffs)

    if s >= comb(m, 2):
        alpha = AlgebraicNumber.from_rational(Fraction(1, 2))
        mlo = mhi = Fraction(1, 2) ** s * Fraction(1, 2) ** t * 2
        if s == t:
            mlo = mhi = mlo / 2
        factor = comb(s + t, s)
        return KstResult(s, t, alpha, h, (Fraction(1, 2), Fraction(1, 2)), True,
                         (mlo, mhi), (factor * mlo, factor * mhi))

    boxes = h.isolate_roots(Fraction(0), Fraction(1))
    if len(boxes) != 1:
        raise RuntimeError("expected a unique root in (0, 1)")
    lo, hi = h.refine_root(*boxes[0], width)
    # alpha = 1/(1+x) is decreasing and 1-Lipschitz on x >= 0
    a_lo, a_hi = 1 / (1 + hi), 1 / (1 + lo)
    # defining polynomial for alpha: alpha^{m+1} h((1-alpha)/alpha)
    one_minus = UPoly([1, -1])
    al = UPoly.x()
    p_alpha = (s * one_minus ** (m + 1) - t * al * one_minus**m
               + t * one_minus * al**m - s * al ** (m + 1))
    alpha = AlgebraicNumber(p_alpha, a_lo, a_hi)
    if alpha.is_rational:
        a = alpha.as_fraction()
        mlo = mhi = a**s * (1 - a) ** t + a**t * (1 - a) ** s
    else:
        mlo, mhi = _fst_value(s, t, *alpha.interval())
    if s == t:
        mlo, mhi = mlo / 2, mhi / 2
    factor = comb(s + t, s)
    return KstResult(s, t, alpha, h, (lo, hi), False,
                     (mlo, mhi), (factor * mlo, factor * mhi))

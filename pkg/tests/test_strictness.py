from fractions import Fraction as F

from inducibility.partite import PartiteVector, lambda_of_vector, realise
from inducibility.perturbation import AttachmentPattern, pattern_e
from inducibility.polynomials import UPoly
from inducibility.strictness import (check_str1, check_str2, compute_w,
                                     counterexample_candidates, counterexample_spec,
                                     finite_strictness_check, strictness_certificate)

A8 = PartiteVector.uniform(8)
A311 = PartiteVector([F(3, 5)])
HALF = PartiteVector([F(1, 2), F(1, 2)])


def test_check_str1_k2111(spec_k2111):
    val, pairs = check_str1(spec_k2111, A8)
    assert val == F(84, 512)
    assert pairs[(1, 2)] == F(150, 512)
    assert pairs[(1, 1)] == F(84, 512)


def test_check_str1_c4(spec_c4):
    val, _ = check_str1(spec_c4, HALF)
    assert val > 0


def test_compute_w_examples():
    x = HALF
    assert compute_w(x, pattern_e(1, x))[1] == 0
    w = compute_w(x, AttachmentPattern({1: 1, 2: 1}, F(1)))
    assert w[1] == F(1, 2) and w[2] == F(1, 2)
    # clique-mass case: w_0 collects the unjoined parts
    a = A311
    w = compute_w(a, AttachmentPattern({1: 0}, F(1, 2)))
    assert w[0] == F(3, 5) and w[1] == 0


def test_w_limit_consistency(spec_k311):
    """W_i / n approaches w_i + (1-alpha) x0 on realisations."""
    a = A311
    p = AttachmentPattern({1: 1}, F(1, 2))
    w = compute_w(a, p)
    for n in (40, 80):
        realised = realise(n, a)
        sizes = {i + 1: len(q) for i, q in enumerate(realised.structure.parts)}
        v0 = len(realised.structure.v0)
        joined = int(F(1, 2) * v0)
        for i in (0, 1):
            if i == 0:
                w_fin = (1 - p.bit(1)) * sizes[1] + (v0 - joined)
            else:
                w_fin = p.bit(1) * sizes[1] + (v0 - joined)
            lim = w[i] + (1 - p.alpha) * a.x0
            assert abs(F(w_fin, n) - lim) <= F(3, n)


def test_check_str2_k311(spec_k311):
    c2, margins = check_str2(spec_k311, A311)
    assert c2 == F(108, 125)
    assert all(m.feasible for m in margins)


def test_check_str2_k22(spec_c4):
    c2, _ = check_str2(spec_c4, HALF)
    assert c2 is not None and c2 > 0


def test_check_str2_certified_margins_sound(spec_k311, spec_c4):
    """phi_c stays nonnegative on [0,1] for the certified constant."""
    for spec, x in ((spec_k311, A311), (spec_c4, HALF)):
        c2, margins = check_str2(spec, x)
        for m in margins:
            grad = UPoly([F(c) for c in m.gradient_poly])
            if x.x0 == 0:
                assert grad(F(1)) >= (0 if m.c_bound is None else m.c_bound * m.min_w)
            else:
                b = UPoly([x.x0 + m.min_w, -x.x0])
                cb = m.c_bound if m.c_bound is not None else c2
                phi = grad - cb * b
                assert phi.nonneg_on(0, 1)
                assert phi(F(0)) >= 0 and phi(F(1)) >= 0


def test_str2_monotone_in_c(spec_k311):
    """Re-verification with any smaller rational constant still passes."""
    c2, margins = check_str2(spec_k311, A311)
    smaller = c2 * F(7, 9)
    for m in margins:
        grad = UPoly([F(c) for c in m.gradient_poly])
        b = UPoly([A311.x0 + m.min_w, -A311.x0])
        assert (grad - smaller * b).nonneg_on(0, 1)


def test_strictness_certificate_positive_cases(spec_c4, spec_k2111, spec_k311):
    for spec, x in ((spec_c4, HALF), (spec_k2111, A8), (spec_k311, A311)):
        rep = strictness_certificate(spec, [x])
        assert rep.passed and rep.c > 0


def test_strictness_certificate_krt_cases(spec_k33, spec_k222):
    for spec, r in ((spec_k33, 2), (spec_k222, 3)):
        rep = strictness_certificate(spec, [PartiteVector.uniform(r)])
        assert rep.passed and rep.c > 0


def test_counterexample_fails_with_zero():
    spec = counterexample_spec()
    rep = strictness_certificate(spec, counterexample_candidates())
    assert not rep.passed
    assert rep.c == 0


def test_counterexample_clique_candidate_zero_margin():
    spec = counterexample_spec()
    zero = PartiteVector.zero()
    c1, pairs = check_str1(spec, zero)
    assert c1 == 0 and pairs[(0, 0)] == 0
    c2, _ = check_str2(spec, zero)
    assert c2 == 0


def test_clone_gradient_vanishes_at_maximisers(spec_k2111, spec_k311):
    from inducibility.perturbation import attach_value
    for spec, x in ((spec_k2111, A8), (spec_k311, A311)):
        lam = lambda_of_vector(spec, x)
        for i in x.supp_star:
            assert attach_value(spec, x, pattern_e(i, x)).value == lam


def test_report_json_roundtrip(spec_c4):
    import json
    rep = strictness_certificate(spec_c4, [HALF])
    obj = json.loads(rep.to_json())
    assert obj["passed"] is True
    assert F(obj["c"]) == rep.c


def test_finite_strictness_k22(spec_c4):
    rep = finite_strictness_check(spec_c4, HALF, 16)
    assert rep.c1 > 0 and rep.c2 is not None and rep.c2 > 0
    # clone attachments need no edits; their deficit is O(1/n), not exactly 0
    assert all(0 <= d <= F(1, 4) for d in rep.clone_deficits)
    small = finite_strictness_check(spec_c4, HALF, 32)
    assert all(d <= F(1, 8) for d in small.clone_deficits)


def test_finite_strictness_converges(spec_c4):
    """c(n) approaches its limit within a fitted C/n over n = 16, 32, 64."""
    k = spec_c4.k
    c1_lim, _ = check_str1(spec_c4, HALF)
    c2_lim, _ = check_str2(spec_c4, HALF)
    lim = min(k * (k - 1) * c1_lim, c2_lim)
    errs = {}
    for n in (16, 32, 64):
        rep = finite_strictness_check(spec_c4, HALF, n)
        assert rep.c > 0
        errs[n] = abs(rep.c - lim)
    c_fit = 16 * errs[16]
    assert errs[32] <= 2 * c_fit / 32 + F(1, 10**9)
    assert errs[64] <= 2 * c_fit / 64 + F(1, 10**9)

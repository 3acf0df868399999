import pytest

from loghurwitz.ffield import field
from loghurwitz.loci import (
    EXACT,
    QUASI_EXACT,
    MarkingConfig,
    ZeroPolePattern,
    _deformed_form,
    dimension_formula,
    locus_membership,
    locus_search,
    tangent_dimension,
    tangent_report,
)
from loghurwitz.mobius import Mobius
from loghurwitz.ratfunc import INFINITY, Place

F4 = field(2, 2)
F8 = field(2, 3)
F16 = field(2, 4)
F9 = field(3, 2)


def pt(spec, v):
    return Place.finite(spec.from_int(v))


# -- pattern and configuration types ------------------------------------------


def test_pattern_invariants():
    p = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    assert p.n == 5
    assert p.reduced() == (1, 1, 1, 1, 0)
    assert p.I_p() == (4,)
    with pytest.raises(ValueError):
        ZeroPolePattern(2, (1, 1, 1))  # sum is 3, not 2
    with pytest.raises(ValueError):
        ZeroPolePattern(2, (2, 0))  # zero entry


def test_config_invariants():
    with pytest.raises(ValueError):
        MarkingConfig(F16, [pt(F16, 0), pt(F16, 0)])
    with pytest.raises(ValueError):
        MarkingConfig(F16, [INFINITY, INFINITY])


# -- membership ---------------------------------------------------------------


def test_exact_membership():
    pat = ZeroPolePattern(2, (2, 2, -2))
    c = MarkingConfig(F16, [pt(F16, 0), pt(F16, 1), INFINITY])
    assert locus_membership(c, pat, EXACT)
    assert not locus_membership(c, pat, QUASI_EXACT)


def test_quasi_exact_membership_on_sqrt_locus():
    pat = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    for lam in F16.elements():
        if lam.idx in (0, 1):
            continue
        mu = lam.pth_root()
        c = MarkingConfig(
            F16, [pt(F16, 0), pt(F16, 1), Place.finite(lam), INFINITY, Place.finite(mu)]
        )
        assert locus_membership(c, pat, QUASI_EXACT)
        assert not locus_membership(c, pat, EXACT)


def test_membership_fails_off_locus():
    pat = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    lam = F16.element(4)
    for nu in F16.elements():
        pts = [pt(F16, 0), pt(F16, 1), Place.finite(lam), INFINITY, Place.finite(nu)]
        if len(set(pts)) < 5:
            continue
        assert locus_membership(MarkingConfig(F16, pts), pat, QUASI_EXACT) == (
            nu == lam.pth_root()
        )


def test_two_point_pattern_everywhere_nonexact():
    pat = ZeroPolePattern(2, (1, 1))
    for a in F4.elements():
        for b in F4.elements():
            if a == b:
                continue
            c = MarkingConfig(F4, [Place.finite(a), Place.finite(b)])
            assert not locus_membership(c, pat, EXACT)


def test_mobius_invariance():
    pat = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    lam = F16.element(6)
    mu = lam.pth_root()
    c = MarkingConfig(
        F16, [pt(F16, 0), pt(F16, 1), Place.finite(lam), INFINITY, Place.finite(mu)]
    )
    for m in [
        Mobius(F16, F16.element(3), F16.one, F16.zero, F16.one),
        Mobius(F16, F16.zero, F16.one, F16.one, F16.zero),
        Mobius(F16, F16.element(5), F16.element(2), F16.one, F16.element(9)),
    ]:
        moved = MarkingConfig(F16, [m.apply_place(q) for q in c.points])
        assert locus_membership(moved, pat, QUASI_EXACT)


# -- closed forms -------------------------------------------------------------


def test_dimension_formula():
    assert dimension_formula(ZeroPolePattern(2, (2, 2, -2)), EXACT) == 0
    assert dimension_formula(ZeroPolePattern(2, (1, 1, 1, 1, -2)), QUASI_EXACT) == 1
    assert dimension_formula(ZeroPolePattern(2, (1, 1)), EXACT) == -2


# -- tangent spaces -----------------------------------------------------------


def test_tangent_rigid_point():
    pat = ZeroPolePattern(2, (2, 2, -2))
    c = MarkingConfig(F16, [pt(F16, 0), pt(F16, 1), INFINITY])
    assert tangent_dimension(c, pat, EXACT) == 0


def test_tangent_quasi_exact_curve():
    pat = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    for lam in F16.elements():
        if lam.idx in (0, 1):
            continue
        mu = lam.pth_root()
        c = MarkingConfig(
            F16, [pt(F16, 0), pt(F16, 1), Place.finite(lam), INFINITY, Place.finite(mu)]
        )
        assert tangent_dimension(c, pat, QUASI_EXACT) == 1


def test_tangent_requires_membership():
    pat = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    lam, nu = F16.element(4), F16.element(7)
    assert nu != lam.pth_root()
    c = MarkingConfig(
        F16, [pt(F16, 0), pt(F16, 1), Place.finite(lam), INFINITY, Place.finite(nu)]
    )
    with pytest.raises(ValueError):
        tangent_dimension(c, pat, QUASI_EXACT)


def test_ker_alpha_counts_p_divisible_free_entries():
    # (y-a)^2 y^2 (y-1)^2: a perfect square for every a, so the locus is
    # the whole line and the free deformation is killed by alpha
    pat = ZeroPolePattern(2, (2, 2, 2, -4))
    hits = locus_search(pat, EXACT, F16)
    assert len(hits) == 14
    for c in hits:
        rep = tangent_report(c, pat, EXACT)
        assert rep["ker_alpha"] == 1 == len([i for i in pat.I_p() if i < rep["free"]])
        assert rep["dimension"] == dimension_formula(pat, EXACT) == 1


def test_first_order_consistency():
    # brute-force count of first-order deformations keeping tc constant:
    # must be q^(tangent dimension)
    pat = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    lam = F16.element(9)
    mu = lam.pth_root()
    c = MarkingConfig(
        F16, [pt(F16, 0), pt(F16, 1), Place.finite(lam), INFINITY, Place.finite(mu)]
    )
    dim = tangent_dimension(c, pat, QUASI_EXACT)
    from loghurwitz.cartier import BivariantForm, twisted_cartier

    count = 0
    zero = F16.zero
    for a1 in F16.elements():
        for a2 in F16.elements():
            _, f1 = _deformed_form(c, pat, [a1, a2, zero, zero, zero])
            tc1 = twisted_cartier(BivariantForm(f1))
            if tc1.is_zero() or tc1.is_constant():
                count += 1
    assert count == F16.q**dim


# -- search -------------------------------------------------------------------


def test_search_quasi_exact_family():
    pat = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    found = locus_search(pat, QUASI_EXACT, F16)
    assert len(found) == 14
    one = F16.one
    for c in found:
        p1, p2 = c.points[0].value, c.points[1].value
        assert p2 == p1 + one  # the free points satisfy p2 = p1 + 1
        assert (p1 * p2).idx != 0
        assert c.points[2:] == (pt(F16, 0), pt(F16, 1), INFINITY)


def test_search_exact_point():
    pat = ZeroPolePattern(2, (2, 2, -2))
    found = locus_search(pat, EXACT, F16)
    assert len(found) == 1
    assert found[0].points == (pt(F16, 0), pt(F16, 1), INFINITY)


def test_search_empty():
    pat = ZeroPolePattern(2, (1, 1))
    assert locus_search(pat, EXACT, F4) == []
    assert locus_search(pat, EXACT, F16) == []


def test_search_custom_pin():
    pat = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    w = F16.element(2)
    pin = (Place.finite(w), Place.finite(w + 1), INFINITY)
    found = locus_search(pat, QUASI_EXACT, F16, pin)
    assert len(found) == 14
    for c in found:
        assert c.points[2:] == pin


def test_search_deterministic():
    pat = ZeroPolePattern(2, (1, 1, 1, 1, -2))
    a = [c.points for c in locus_search(pat, QUASI_EXACT, F16)]
    b = [c.points for c in locus_search(pat, QUASI_EXACT, F16)]
    assert a == b


def test_formula_rank_agreement_p3():
    pat = ZeroPolePattern(3, (2, 1, 1))
    for kind in (EXACT, QUASI_EXACT):
        for c in locus_search(pat, kind, F9):
            assert tangent_dimension(c, pat, kind) == dimension_formula(pat, kind)
    pat2 = ZeroPolePattern(3, (-6, 1, 3, 6))
    for c in locus_search(pat2, EXACT, F9):
        assert tangent_dimension(c, pat2, EXACT) == dimension_formula(pat2, EXACT) == 1

"""Builders and verifiers for the denominator identities."""

import json
import pathlib

import pytest

from superdenom import identities as ids
from superdenom import roots
from superdenom.series import GradedSeries, expand_term, linear_combine, mul

GL = ids.GL
GL3 = ids.GL3
SL21 = ids.SL21

DATA = pathlib.Path(__file__).parent / "data"


def _golden_slices():
    doc = json.loads((DATA / "denom_slice1.json").read_text())
    return ({tuple(r["e"]): r["c"] for r in doc["degree0"]},
            {tuple(r["e"]): r["c"] for r in doc["degree1"]})


# -- product side ------------------------------------------------------------


def test_lhs_low_degree_slices_match_golden():
    d0, d1 = _golden_slices()
    lhs = ids.build_lhs(8)
    assert lhs.slice(0) == d0
    assert lhs.slice(1) == d1


def test_lhs_methods_agree():
    assert ids.build_lhs(16, "roots") == ids.build_lhs(16, "explicit")


def test_lhs_restriction_consistency():
    # building at a high cutoff and truncating equals building low, so a
    # match at N implies a match at every smaller cutoff
    assert ids.build_lhs(20).restrict(10) == ids.build_lhs(10)
    assert ids.build_rhs(20).restrict(10) == ids.build_rhs(10)


def test_divide_by_lhs_inverts_build():
    s = ids.divide_by_lhs(ids.build_lhs(16))
    assert s == GradedSeries.one(GL, 16)


# -- prefactor ---------------------------------------------------------------


def test_prefactor_known_coefficients():
    p = ids.build_prefactor(12)
    assert p.coeff((0, 0, 0, 0)) == 1
    assert p.coeff((1, 0, 0, 0)) == -2       # q
    assert p.coeff((1, 0, 1, -1)) == 1       # q y1/y2
    assert p.coeff((1, 0, -1, 1)) == 1       # q y2/y1
    assert p.coeff((2, 0, 2, -2)) == 1       # q^2 (y1/y2)^2
    assert p.coeff((0, 1, 0, 0)) == 0        # no bare x anywhere
    # support is confined to q^m (y1/y2)^k
    for _, e, _ in p.items_canonical():
        assert e[1] == 0 and e[3] == -e[2]


@pytest.mark.parametrize("order", [8, 17, 25, 40])
def test_prefactor_methods_agree(order):
    assert ids.build_prefactor(order, "product") == \
        ids.build_prefactor(order, "fn_series")


# -- orbit sum ---------------------------------------------------------------


@pytest.mark.parametrize("order", [16, 24])
def test_orbit_sum_methods_agree(order):
    assert ids.build_orbit_sum(order, "closed") == \
        ids.build_orbit_sum(order, "weyl")


def test_orbit_sum_leading_terms():
    s = ids.build_orbit_sum(8)
    # degree 0: the n = 0 identity term contributes 1, s_alpha nothing
    assert s.coeff((0, 0, 0, 0)) == 1
    # degree 1 matches the product side: the prefactor has nothing below
    # degree 4, so the orbit sum must already produce the four monomials
    assert s.slice(1) == {(0, 0, 1, 0): -1, (0, 0, 0, 1): -1,
                          (0, 1, 0, 0): -1, (1, -1, -1, -1): -1}


# -- main identity -----------------------------------------------------------


@pytest.mark.parametrize("order", [4, 8, 16])
def test_denominator_small_orders(order):
    rep = ids.verify_denominator(order)
    assert rep.matched and not rep.first_diffs
    assert rep.lhs_terms == rep.rhs_terms > 0


def test_denominator_report_records_mismatch():
    # a perturbed right side must be flagged with the offending monomial
    lhs = ids.build_lhs(6)
    bad = linear_combine([(1, ids.build_rhs(6)),
                          (1, GradedSeries.monomial(GL, 6, (1, 0, 0, 0), 1))])
    from superdenom.report import compare_series
    rep = compare_series("perturbed", lhs, bad)
    assert not rep.matched
    assert rep.first_diffs[0][0] == (1, 0, 0, 0)


# -- finite identity ---------------------------------------------------------


def test_finite_product_closed_form():
    # 1/((1+y1)(1+y2)) - x/((1+x y1)(1+x y2)) equals the product form
    a = expand_term(GL3, 16, 1, (0, 0, 0), dens=[(0, 1, 0), (0, 0, 1)])
    b = expand_term(GL3, 16, -1, (1, 0, 0), dens=[(1, 1, 0), (1, 0, 1)])
    assert linear_combine([(1, a), (1, b)]) == ids.build_finite_r(16)


@pytest.mark.parametrize("order", [8, 24])
def test_finite_identity(order):
    rep = ids.verify_finite_identity(order)
    assert rep.matched
    assert rep.extra == {"product_vs_walpha": True, "walpha_vs_wgamma": True}


# -- translation lemma -------------------------------------------------------


def test_rrho_seed_expansion_closed_form():
    # the seed term is (1-x)(1-x y1 y2)/((1+y1)(1+y2)(1+x y1)(1+x y2))
    direct = expand_term(GL, 12, 1, (0, 0, 0, 0),
                         nums=[(0, 1, 0, 0), (0, 1, 1, 1)],
                         dens=[(0, 0, 1, 0), (0, 0, 0, 1),
                               (0, 1, 1, 0), (0, 1, 0, 1)])
    assert roots.expand_orbit_term(roots.R_RHO_SEED, GL, 12) == direct


def test_rrho_seed_isotropic_for_both_lattices():
    # the translated tops stay at level 0, which keeps both orbit sums
    # inside the cone ring by ring
    assert roots.inner(roots.R_RHO_SEED.top, roots.DELTA) == 0
    assert roots.inner(roots.ALPHA, roots.ALPHA) == -roots.inner(
        roots.GAMMA, roots.GAMMA)


@pytest.mark.parametrize("order", [8, 16])
def test_talpha_tgamma_orbit_sums(order):
    assert ids.verify_talpha_tgamma(order).matched


# -- sl(2|1) -----------------------------------------------------------------


def test_sl21_lhs_low_slices():
    lhs = ids.build_sl21_lhs(9)
    assert lhs.slice(0) == {(0, 0, 0): 1}
    # -u1 - u2 - z/(u1 u2)
    assert lhs.slice(1) == {(0, 1, 0): -1, (0, 0, 1): -1, (1, -1, -1): -1}


def test_sl21_rhs_low_slices():
    rhs = ids.build_sl21_rhs(9)
    assert rhs.slice(0) == {(0, 0, 0): 1}
    assert rhs.slice(1) == {(0, 1, 0): -1, (0, 0, 1): -1, (1, -1, -1): -1}


@pytest.mark.parametrize("order", [9, 18])
def test_sl21_identity(order):
    rep = ids.verify_sl21(order)
    assert rep.matched and not rep.first_diffs


# -- ratio support -----------------------------------------------------------


def test_ratio_support(order=16):
    rep = ids.ratio_support_check(order)
    assert rep.matched
    assert rep.extra["support_ok"] and rep.extra["is_one"]
    assert rep.extra["bad_monomials"] == []


def test_ratio_support_flags_bad_builder():
    # dividing something that is not a multiple of the product side by the
    # product side leaves support outside the q^n (y1/y2)^j diagonal
    y = ids.divide_by_lhs(GradedSeries.monomial(GL, 8, (0, 1, 0, 0)))
    assert any(e[1] != 0 or e[3] != -e[2] for e in y.support())

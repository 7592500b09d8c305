"""Theta series, the Gauss identity and the eight-squares count."""

import pytest

from superdenom import squares
from superdenom.series import mul


def test_theta_coefficients():
    t = squares.theta(20)
    assert t.coeff((0,)) == 1
    for n in (1, 4, 9, 16):
        assert t.coeff((n,)) == 2
    for n in (2, 3, 5, 12, 20):
        assert t.coeff((n,)) == 0
    tm = squares.theta(20, -1)
    assert tm.coeff((1,)) == -2 and tm.coeff((4,)) == 2 and tm.coeff((9,)) == -2


def test_theta_power8_is_eighth_power():
    t = squares.theta(16)
    t2 = mul(t, t)
    assert squares.theta_power8(16) == mul(mul(t2, t2), mul(t2, t2))


def test_r8_spot_values():
    for method in ("convolution", "enumeration"):
        r8 = squares.r8_oracle(8, method)
        assert r8[0] == 1
        assert r8[1] == 16
        assert r8[2] == 112
        assert r8[3] == 448
        assert r8[4] == 1136


def test_r8_oracles_agree_to_64():
    assert squares.r8_oracle(64, "convolution") == \
        squares.r8_oracle(64, "enumeration")


def test_enumeration_limit_enforced():
    with pytest.raises(ValueError):
        squares.r8_oracle(squares.ENUMERATION_LIMIT + 1, "enumeration")
    with pytest.raises(ValueError):
        squares.r8_oracle(8, "divination")


def test_count4_against_known_values():
    # representations as a sum of four squares: 8 * sum of divisors not
    # divisible by 4
    def r4(n):
        return 8 * sum(d for d in range(1, n + 1) if n % d == 0 and d % 4 != 0)

    c4 = squares._count4_enumeration(12)
    assert c4[0] == 1
    for n in range(1, 13):
        assert c4[n] == r4(n)


def test_gauss_identity_to_100():
    rep = squares.gauss_check(100)
    assert rep.matched
    g = squares.gauss_series(100)
    assert g.coeff((0,)) == 1 and g.coeff((1,)) == -2
    assert g.coeff((4,)) == 2 and g.coeff((100,)) == 2
    assert g.coeff((99,)) == 0


def test_jacobi_formula_spot_values():
    f = squares.jacobi_formula(8)
    assert f.coeff((0,)) == 1
    assert f.coeff((1,)) == 16
    assert f.coeff((2,)) == 112
    assert f.coeff((4,)) == 1136


def test_binomial_inverse_fourth_power():
    assert [squares._binom_inv4(j) for j in range(5)] == [1, -4, 10, -20, 35]


def test_intermediate_identity_to_64():
    rep = squares.intermediate_identity_check(64)
    assert rep.matched
    lhs, rhs = squares.intermediate_identity(8)
    assert lhs.coeff((0,)) == 1
    assert lhs.coeff((1,)) == -16


def test_verify_jacobi():
    rep = squares.verify_jacobi(64)
    assert rep.matched
    assert rep.extra == {"theta_vs_formula": True, "theta_vs_convolution": True,
                         "theta_vs_enumeration": True, "twisted_identity": True}


def test_verify_jacobi_beyond_enumeration_limit():
    rep = squares.verify_jacobi(80)
    assert rep.matched
    assert rep.extra["theta_vs_enumeration"] is None


def test_jacobi_table_rows():
    rows = squares.jacobi_table(10)
    assert len(rows) == 11
    assert all(r["match"] for r in rows)
    assert rows[1] == {"n": 1, "r8_enum": 16, "r8_theta": 16,
                       "r8_formula": 16, "match": True}

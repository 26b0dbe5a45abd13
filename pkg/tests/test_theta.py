"""Theta-type series constructors and their exact identities."""

import pytest

from qforms import theta
from qforms.arith import ODD_SIGNED, divisor_sum
from qforms.theta import (alt_general, even_shift_check, f_neg, f_neg_product,
                          general, general_theta_via_exp, phi_product,
                          pochhammer, psi, psi_product, series, theta3,
                          triangular, triple_product_check, triple_product_rhs)


# -- constructors ------------------------------------------------------------


def test_theta3_coefficients():
    f = series(theta3(), 10)
    assert f.coeff(0) == 1
    for n in (1, 4, 9):
        assert f.coeff(2 * n) == 2
    assert f.coeff(2 * 5) == 0


def test_general_2_1_support():
    f = series(general(2, 1), 12)
    assert f.support() == [0, 2, 6, 12, 20]  # q^0, q^1, q^3, q^6, q^10
    assert all(f.coeff(e) == 1 for e in f.support())


def test_triangular_3_support():
    f = series(triangular(3), 10)
    assert f.coeff(-2) == 2  # n = -1 and n = -2
    assert f.coeff(0) == 2  # n = 0 and n = -3


def test_triangular_rejects_negative_m():
    with pytest.raises(ValueError):
        triangular(-1)


def test_general_requires_positive_k():
    with pytest.raises(ValueError):
        general(0, 1)


def test_alt_general_signs():
    f = series(alt_general(2, 1), 12)
    assert f.coeff(0) == 1 and f.coeff(2) == -1 and f.coeff(6) == -1
    assert f.coeff(12) == 1  # n = -2, even index


def test_f_neg_is_pentagonal():
    f = series(f_neg(), 30)
    assert [f.coeff(2 * n) for n in (0, 1, 2, 5, 7, 12, 15)] == [1, -1, -1, 1, 1, -1, -1]
    assert f.coeff(2 * 3) == 0


# -- product forms ------------------------------------------------------------


def test_phi_sum_equals_product_form():
    assert series(theta3(), 200) == phi_product(200)


def test_psi_sum_equals_product_form():
    assert series(psi(), 200) == psi_product(200)


def test_f_neg_sum_equals_product_form():
    assert series(f_neg(), 200) == f_neg_product(200)


def test_euler_pochhammer_inverse_pair():
    # (q; q^2) (-q; q) = 1
    p = series(pochhammer(2, 4, False), 200) * series(pochhammer(2, 2, True), 200)
    one = series(theta3(), 200).scale(0) + p.scale(0) + p * p.inverse()
    assert p == one


# -- Pochhammer / triple product ------------------------------------------------


def test_triple_product_small_p():
    assert triple_product_check(0, 100)
    assert triple_product_check(1, 100)
    assert triple_product_check(3, 60)


def test_triple_product_rhs_matches_general_theta():
    # prod (1-q^(2n+2))(1+q^(2n+1-z))(1+q^(2n+1+z)) = sum q^(n^2+zn), z odd
    for z in (1, 3):
        assert series(triple_product_rhs(z), 60) == series(general(1, z), 60)


def test_even_shift_identity():
    assert even_shift_check(0, 80)
    assert even_shift_check(1, 80)
    assert even_shift_check(2, 80)


# -- exp transform route ---------------------------------------------------------


def test_exp_route_matches_lattice_sum():
    assert general_theta_via_exp(2, 1, 100) == series(general(2, 1), 100)
    assert general_theta_via_exp(3, 2, 100) == series(general(3, 2), 100)


def test_exp_route_constant_term():
    assert general_theta_via_exp(10, 1, 60).coeff(0) == 1


def test_exp_route_parity_preconditions():
    with pytest.raises(ValueError):
        general_theta_via_exp(3, 1, 20)  # both odd
    with pytest.raises(ValueError):
        general_theta_via_exp(4, 2, 20)  # both even
    with pytest.raises(ValueError):
        general_theta_via_exp(2, 0, 20)  # h = 0 excluded
    with pytest.raises(ValueError):
        general_theta_via_exp(1, 2, 20)  # |h| >= k


def test_exp_route_negative_h():
    assert general_theta_via_exp(4, -3, 80) == series(general(4, -3), 80)


# -- bridge to divisor sums --------------------------------------------------------


def test_theta3_square_counts_two_squares():
    sq = series(theta3(), 300).square()
    for n in range(1, 300):
        assert sq.coeff(2 * n) == 4 * divisor_sum(n, 0, ODD_SIGNED)

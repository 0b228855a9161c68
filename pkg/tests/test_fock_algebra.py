import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qnlo import fock_algebra as fa
from qnlo.exceptions import DegenerateDivision, InvalidFockIndex
from qnlo.statevector import StateVector, basis_state
from qnlo.states import build_gis, build_nlcs

levels = st.integers(min_value=4, max_value=3000)


def exact_f_tilde_sq(n):
    # product (k-1)(k-3), k = 4..n, in integers
    out = 1
    for k in range(4, n + 1):
        out *= (k - 1) * (k - 3)
    return out


@pytest.mark.parametrize("n, want", [(1, 0.0), (3, 0.0), (4, math.sqrt(3)), (0, math.sqrt(3))])
def test_deformation_f(n, want):
    assert fa.deformation_f(n) == pytest.approx(want, abs=1e-15)


def test_f_rejects_two():
    with pytest.raises(InvalidFockIndex):
        fa.deformation_f(2)


@pytest.mark.parametrize("n, want", [(3, 0), (4, 12), (5, 40), (0, 0), (1, 0)])
def test_deformed_energy(n, want):
    assert fa.deformed_energy(n) == want


@pytest.mark.parametrize("bad", [1, 2, -1, 3.5])
def test_fock_index_rejects(bad):
    with pytest.raises(InvalidFockIndex):
        fa.fock_index(bad)


def test_tilde_factorial_values():
    assert fa.tilde_factorial(3).value == pytest.approx(1.0)
    assert fa.tilde_factorial(5).value == pytest.approx(20.0, rel=1e-15)
    assert fa.tilde_factorial(10).value == pytest.approx(604800.0, rel=1e-14)


@pytest.mark.parametrize("n", range(3, 21))
def test_tilde_factorial_exact(n):
    assert fa.tilde_factorial(n).value * 6 == pytest.approx(math.factorial(n), rel=1e-14)


@pytest.mark.parametrize("n, want", [(3, 1), (5, 24), (6, 360)])
def test_f_tilde_sq_values(n, want):
    assert fa.f_tilde_sq(n).value == pytest.approx(want, rel=1e-14)
    assert exact_f_tilde_sq(n) == want


@pytest.mark.parametrize("n", range(3, 40))
def test_f_tilde_sq_matches_integer_product(n):
    exact = exact_f_tilde_sq(n)
    assert fa.f_tilde_sq(n).log == pytest.approx(math.log(exact), rel=1e-14, abs=1e-14)
    assert exact * 2 == math.factorial(n - 1) * math.factorial(n - 3)


def test_large_indices_stay_finite():
    assert math.isfinite(fa.f_tilde_sq(10_000).log)
    assert math.isfinite(fa.tilde_factorial(10_000).log)


@given(levels)
def test_telescoping_f(n):
    lhs = 2 * math.log(fa.deformation_f(n)) + fa.f_tilde_sq(n - 1).log
    assert lhs == pytest.approx(fa.f_tilde_sq(n).log, rel=1e-14)


@given(levels)
def test_telescoping_energy(n):
    lhs = math.log(fa.deformed_energy(n)) - fa.tilde_factorial(n).log - fa.f_tilde_sq(n).log
    rhs = -fa.tilde_factorial(n - 1).log - fa.f_tilde_sq(n - 1).log
    assert lhs == pytest.approx(rhs, rel=1e-13, abs=1e-11)


@pytest.mark.parametrize("n, want", [(2, 0.0), (0, 0.0), (3, 2 * math.sqrt(3) * math.sqrt(8))])
def test_cat_F(n, want):
    assert fa.cat_F(n) == pytest.approx(want, rel=1e-15)


@pytest.mark.parametrize("k", range(2, 12))
def test_cat_products_exact(k):
    # (2k)~!! = (2k)(2k-2)...6 and F~(2k-2)!!^2 = prod F(j)^2, j = 4, 6, .., 2k-2
    even = 1
    for j in range(6, 2 * k + 1, 2):
        even *= j
    fsq = Fraction(1)
    for j in range(4, 2 * k - 1, 2):
        fsq *= (j + 1) * j * (j - 2) * (j + 1) * (j - 1)
    assert fa.log_even_double_factorial(k) == pytest.approx(math.log(even), abs=1e-12)
    assert fa.log_F_tilde_even_sq(k) == pytest.approx(math.log(fsq), abs=1e-11)


@pytest.mark.parametrize("k", range(1, 12))
def test_cat_products_exact_odd(k):
    odd = 1
    for j in range(5, 2 * k + 2, 2):
        odd *= j
    fsq = 1
    for j in range(3, 2 * k, 2):
        fsq *= (j + 1) * j * (j - 2) * (j + 1) * (j - 1)
    assert fa.log_odd_double_factorial(k) == pytest.approx(math.log(odd), abs=1e-12)
    assert fa.log_F_tilde_odd_sq(k) == pytest.approx(math.log(fsq), abs=1e-11)


def test_lowering_on_four():
    img = fa.apply_ladder(fa.LadderKind.DEFORMED_A, basis_state(4))
    assert img.amplitude(3) == pytest.approx(2 * math.sqrt(3))
    assert img.norm() == pytest.approx(2 * math.sqrt(3))


def test_lowering_on_three_vanishes():
    assert fa.apply_ladder(fa.LadderKind.DEFORMED_A, basis_state(3)).norm() == 0.0


def test_raising_on_three():
    img = fa.apply_ladder(fa.LadderKind.DEFORMED_A_DAGGER, basis_state(3))
    assert img.amplitude(4) == pytest.approx(2 * math.sqrt(3))


def test_raising_on_ground_stays_zero():
    # sqrt(1) f(1) = 0: |0> is annihilated by A+ as well
    assert fa.apply_ladder(fa.LadderKind.DEFORMED_A_DAGGER, basis_state(0)).norm() == 0.0


@pytest.mark.parametrize("n", [3, 4, 5, 9, 25])
def test_number_like_product(n):
    img = fa.apply_ladder(fa.LadderKind.DEFORMED_A_DAGGER,
                          fa.apply_ladder(fa.LadderKind.DEFORMED_A, basis_state(n)))
    assert img.amplitude(n) == pytest.approx(fa.deformed_energy(n), abs=1e-12)


def test_undeformed_at_three_is_zero():
    img = fa.apply_ladder(fa.LadderKind.UNDEFORMED_A, basis_state(3))
    assert img.norm() == 0.0


def test_undeformed_lowering_on_five():
    img = fa.apply_ladder(fa.LadderKind.UNDEFORMED_A, basis_state(5))
    assert img.amplitude(4) == pytest.approx(math.sqrt(5))


def test_degenerate_division_detected():
    with pytest.raises(DegenerateDivision):
        fa._divide_by_f(np.array([1.0, 2.0]), np.array([0.0, 1.0]))


def test_gazeau_phases():
    g = 0.37
    img = fa.apply_ladder(fa.LadderKind.GAZEAU_B, basis_state(5), g)
    want = math.sqrt(40) * complex(math.cos(g * (40 - 12)), math.sin(g * (40 - 12)))
    assert img.amplitude(4) == pytest.approx(want)
    back = fa.apply_ladder(fa.LadderKind.GAZEAU_B_DAGGER, basis_state(4), g)
    assert back.amplitude(5) == pytest.approx(want.conjugate())


@pytest.mark.parametrize("n", [4, 10, 17])
def test_commutators_hold(n):
    rep = fa.commutator_check(n)
    assert rep.asserted
    assert max(rep.canonical, rep.lowering, rep.raising) < 1e-12


def test_commutator_at_three_is_reported_not_asserted():
    rep = fa.commutator_check(3)
    assert not rep.asserted
    assert rep.canonical > 0.5


def test_uncertainty_basis_state():
    rep = fa.uncertainty_report(StateVector(basis_state(4).coeffs))
    assert rep.saturation_residual >= -1e-12


def test_uncertainty_rejects_unnormalized():
    with pytest.raises(ValueError):
        fa.uncertainty_report(StateVector(2 * basis_state(4).coeffs))


@pytest.mark.parametrize("alpha, lam", [(1.0, 0.5), (2.0, 0.3), (1.0, 2.0)])
def test_gis_saturates(alpha, lam):
    rep = fa.uncertainty_report(build_gis(alpha, lam))
    assert abs(rep.saturation_residual) < 1e-6
    # |lambda| is the squeezing ratio dW/dP
    assert rep.dW / rep.dP == pytest.approx(lam, rel=1e-8)


def test_nlcs_equal_spreads():
    rep = fa.uncertainty_report(build_nlcs(1.0))
    assert rep.dW == pytest.approx(rep.dP, rel=1e-12)


def test_logreal_value():
    assert fa.LogReal(math.log(3.0), -1).value == pytest.approx(-3.0)

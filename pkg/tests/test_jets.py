"""Jet arithmetic: frozen fixtures plus algebraic property tests."""

import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from concavemaps.errors import (BasePointMismatchError, BranchCutError,
                                CriticalPointError, JetDivisionError,
                                NonFiniteJetError)
from concavemaps.jets import Jet3, pre_schwarzian, schwarzian


def close(a: complex, b: complex, tol: float = 1e-12) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


def jets_close(a: Jet3, b: Jet3, tol: float = 1e-12) -> bool:
    return all(close(x, y, tol) for x, y in
               zip((a.v0, a.v1, a.v2, a.v3), (b.v0, b.v1, b.v2, b.v3)))


# bounded complex values keep products and quotients well conditioned
finite_c = st.complex_numbers(min_magnitude=0.0, max_magnitude=4.0,
                              allow_nan=False, allow_infinity=False)
unit_c = st.complex_numbers(min_magnitude=0.25, max_magnitude=2.0,
                            allow_nan=False, allow_infinity=False)


def jet_at(z: complex, v0: complex, v1: complex, v2: complex, v3: complex) -> Jet3:
    return Jet3(z, v0, v1, v2, v3)


jets = st.builds(jet_at, st.just(0.5 + 0.25j), finite_c, finite_c, finite_c,
                 finite_c)
invertible_jets = st.builds(jet_at, st.just(0.5 + 0.25j), unit_c, finite_c,
                            finite_c, finite_c)
# pow and log use the principal branch, so keep values clear of (-inf, 0]
log_safe_jets = invertible_jets.filter(lambda j: j.v0.real > 0.05)


def test_reciprocal_fixture():
    # 1/z at z=0.5: value 2, then -1/z^2, 2/z^3, -6/z^4
    j = Jet3.variable(0.5 + 0j).reciprocal()
    assert j.v0 == 2
    assert j.v1 == -4
    assert j.v2 == 16
    assert j.v3 == -96


def test_log_fixture():
    # log(1+z) at z=0: derivatives 1, -1, 2
    j = (1.0 + Jet3.variable(0j)).log()
    assert close(j.v0, 0)
    assert close(j.v1, 1)
    assert close(j.v2, -1)
    assert close(j.v3, 2)


def test_exp_fixture():
    j = Jet3.variable(0.3 + 0.1j).exp()
    w = cmath.exp(0.3 + 0.1j)
    for v in (j.v0, j.v1, j.v2, j.v3):
        assert close(v, w)


def test_polynomial_product():
    z = 0.4 - 0.2j
    zj = Jet3.variable(z)
    j = (zj * zj - 1.0) * (2.0 * zj + 3.0)
    # p(z) = 2z^3 + 3z^2 - 2z - 3
    assert close(j.v0, 2 * z ** 3 + 3 * z ** 2 - 2 * z - 3)
    assert close(j.v1, 6 * z ** 2 + 6 * z - 2)
    assert close(j.v2, 12 * z + 6)
    assert close(j.v3, 12)


@given(jets, jets, jets)
@settings(max_examples=200)
def test_mul_is_associative(a, b, c):
    assert jets_close((a * b) * c, a * (b * c), 1e-10)


@given(jets, jets)
@settings(max_examples=200)
def test_mul_commutes(a, b):
    assert jets_close(a * b, b * a)


@given(jets, invertible_jets)
@settings(max_examples=200)
def test_div_undoes_mul(a, b):
    assert jets_close((a * b) / b, a, 1e-9)


@given(invertible_jets)
@settings(max_examples=200)
def test_reciprocal_involution(a):
    assert jets_close(a.reciprocal().reciprocal(), a, 1e-9)


@given(log_safe_jets, st.integers(min_value=2, max_value=5))
@settings(max_examples=100)
def test_integer_pow_matches_repeated_mul(a, n):
    acc = a
    for _ in range(n - 1):
        acc = acc * a
    assert jets_close(a ** n, acc, 1e-8)


@given(log_safe_jets)
@settings(max_examples=200)
def test_log_exp_roundtrip(a):
    assert jets_close(a.log().exp(), a, 1e-9)


def test_base_point_mismatch_rejected():
    a = Jet3.variable(0.1 + 0j)
    b = Jet3.variable(0.2 + 0j)
    with pytest.raises(BasePointMismatchError):
        a + b
    with pytest.raises(BasePointMismatchError):
        a * b


def test_scalar_lift():
    a = Jet3.variable(0.25 + 0j)
    assert jets_close(2.0 * a + 1j, Jet3(0.25 + 0j, 0.5 + 1j, 2, 0, 0))
    assert jets_close(1.0 - a, Jet3(0.25 + 0j, 0.75 + 0j, -1, 0, 0))


def test_division_floor():
    tiny = Jet3(0j, 1e-15 + 0j, 1, 0, 0)
    with pytest.raises(JetDivisionError):
        tiny.reciprocal()


def test_branch_cut_rejected():
    neg = Jet3(0j, -2.0 + 0j, 1, 0, 0)
    with pytest.raises(BranchCutError):
        neg.log()
    # just off the cut is fine
    off = Jet3(0j, -2.0 + 1e-3j, 1, 0, 0)
    off.log()


def test_nonfinite_rejected():
    with pytest.raises(NonFiniteJetError):
        Jet3(0j, complex("inf"), 1, 0, 0)


def test_jets_are_immutable():
    j = Jet3.variable(0j)
    with pytest.raises(AttributeError):
        j.v0 = 1.0 + 0j  # type: ignore[misc]


def test_schwarzian_vanishes_on_mobius():
    z = 0.3 + 0.4j
    zj = Jet3.variable(z)
    m = (2.0 * zj + 1.0) / (1.0 - 0.5 * zj)
    assert abs(schwarzian(m)) < 1e-12
    assert close(pre_schwarzian(m), m.v2 / m.v1)


def test_schwarzian_of_koebe_at_zero_is_minus_six():
    zj = Jet3.variable(0j)
    k = zj / ((1.0 - zj) * (1.0 - zj))
    assert close(schwarzian(k), -6)


def test_pre_schwarzian_needs_nonzero_derivative():
    flat = Jet3(0j, 1.0 + 0j, 0, 1, 0)
    with pytest.raises(CriticalPointError):
        pre_schwarzian(flat)

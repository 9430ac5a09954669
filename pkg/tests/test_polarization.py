import math

import numpy as np
import pytest

from weakmag.exceptions import InvalidArgumentError, OrthogonalSelectionError
from weakmag.polarization import (
    H,
    V,
    first_principles_weak_value,
    inner_product,
    observable,
    postselect,
    postselection_probability,
    preselect,
    weak_value,
)

GRID = [k / 100 for k in range(-30, 31)]
SQRT_HALF = math.sqrt(0.5)


def test_preselect_examples():
    s = preselect(0.0)
    assert s.h == pytest.approx(SQRT_HALF, abs=1e-15)
    assert s.v == pytest.approx(1j * SQRT_HALF, abs=1e-15)

    s = preselect(math.pi / 4)
    assert s.h == pytest.approx(1.0, abs=1e-15)
    assert s.v == pytest.approx(0.0, abs=1e-15)

    s = preselect(0.010)
    assert s.h.real == pytest.approx(math.sin(0.010 + math.pi / 4), abs=1e-15)
    assert s.h.real == pytest.approx(0.7141424, abs=1e-6)
    assert s.v.imag == pytest.approx(0.7000005, abs=1e-6)


def test_postselect_examples():
    s = postselect(0.0)
    assert s.h == pytest.approx(1j * SQRT_HALF, abs=1e-15)
    assert s.v == pytest.approx(SQRT_HALF, abs=1e-15)

    s = postselect(math.pi / 2)
    assert s.h == pytest.approx(-SQRT_HALF, abs=1e-15)
    assert s.v == pytest.approx(-1j * SQRT_HALF, abs=1e-15)

    s = postselect(3.2e-5)
    assert s.h.real == pytest.approx(-2.2627e-5, rel=1e-4)
    assert s.h.imag == pytest.approx(SQRT_HALF, abs=1e-9)
    assert s.v.real == pytest.approx(SQRT_HALF, abs=1e-9)
    assert s.v.imag == pytest.approx(-2.2627e-5, rel=1e-4)


def test_non_finite_angles_rejected():
    with pytest.raises(InvalidArgumentError):
        preselect(float("nan"))
    with pytest.raises(InvalidArgumentError):
        postselect(float("inf"))
    with pytest.raises(InvalidArgumentError):
        weak_value(0.01, float("nan"))


def test_states_are_normalized_on_grid():
    for angle in GRID:
        assert preselect(angle).norm == pytest.approx(1.0, abs=1e-12)
        assert postselect(angle).norm == pytest.approx(1.0, abs=1e-12)


def test_inner_product_examples():
    s = preselect(0.37)
    assert inner_product(s, s) == pytest.approx(1.0, abs=1e-12)
    assert inner_product(H, V) == 0
    overlap = inner_product(postselect(0.0), preselect(0.010))
    assert abs(overlap) == pytest.approx(math.sin(0.010), rel=1e-12)


def test_observable_is_hermitian_diagonal():
    a = observable()
    np.testing.assert_array_equal(a, np.diag([0.5, -0.5]).astype(complex))
    np.testing.assert_array_equal(a, a.conj().T)


def test_weak_value_zero_field_is_real_cotangent():
    wv = weak_value(0.010, 0.0)
    assert wv.imag == 0.0
    assert wv.real == pytest.approx(1 / math.tan(0.010), rel=1e-12)
    assert wv.real == pytest.approx(99.9967, abs=1e-4)


def test_weak_value_spot_value():
    wv = weak_value(0.010, 3.2e-5)
    beta, phi = 0.010, 3.2e-5
    expected = 0.5 * math.sin(2 * phi) * math.cos(2 * beta) / postselection_probability(beta, phi)
    assert wv.imag == pytest.approx(expected, rel=1e-10)
    assert wv.imag == pytest.approx(0.3199, abs=5e-4)
    assert (wv.beta, wv.phi) == (beta, phi)


def test_weak_value_beta_zero_allowed():
    wv = weak_value(0.0, 0.2)
    assert wv.value == pytest.approx(1j / math.tan(0.2), rel=1e-12)


def test_orthogonal_selection_raises():
    with pytest.raises(OrthogonalSelectionError) as info:
        weak_value(0.0, 0.0)
    assert info.value.probability == 0.0
    with pytest.raises(OrthogonalSelectionError):
        first_principles_weak_value(0.0, 0.0)


def test_custom_orthogonality_threshold():
    with pytest.raises(OrthogonalSelectionError):
        weak_value(0.001, 0.0, eps_orth=1e-5)


def test_closed_form_matches_inner_product_path():
    for beta in GRID:
        for phi in GRID:
            if postselection_probability(beta, phi) < 1e-20:
                continue
            closed = weak_value(beta, phi).value
            direct = first_principles_weak_value(beta, phi).value
            assert abs(closed - direct) <= 1e-12 * abs(closed), (beta, phi)


def test_probability_bounds_and_identity():
    for beta in GRID:
        assert postselection_probability(beta, 0.0) == pytest.approx(math.sin(beta) ** 2, abs=1e-15)
        for phi in GRID:
            p = postselection_probability(beta, phi)
            assert 0.0 <= p <= 1.0
            overlap = inner_product(postselect(phi), preselect(beta))
            assert p == pytest.approx(abs(overlap) ** 2, abs=1e-12)


@pytest.mark.parametrize(
    "beta, expected, tol",
    [(0.007, 4.9e-5, 1e-6), (0.010, 1.0e-4, 1e-6), (0.013, 1.6899e-4, 1e-8)],
)
def test_probability_table_values(beta, expected, tol):
    assert postselection_probability(beta, 0.0) == pytest.approx(expected, abs=tol)


def test_imaginary_part_symmetries():
    for beta in GRID:
        for phi in GRID:
            if postselection_probability(beta, phi) < 1e-20:
                continue
            im = weak_value(beta, phi).imag
            assert -weak_value(beta, -phi).imag == pytest.approx(im, rel=1e-12, abs=1e-12)
            assert weak_value(-beta, phi).imag == pytest.approx(im, rel=1e-12, abs=1e-12)


def test_null_amplification_line():
    for phi in GRID:
        assert weak_value(math.pi / 4, phi).imag == pytest.approx(0.0, abs=1e-12)

import math
import random

import pytest

from binform.errors import NotFiniteOrderError, NotPositiveDefiniteError
from binform.mat2 import Mat2
from binform.polyring import HomogeneousForm, compose_linear
from binform.realfactor import factor_form
from binform.symgroup import (
    DiagonalFamily,
    FiniteCyclicGroup,
    RotationFamily,
    ShearFamily,
    finite_order_of,
    induced_permutation,
    invariance_residual,
    oracle_scan,
    quadratic_transport,
    symmetry_group,
)


def form(*coeffs):
    return HomogeneousForm(coeffs)


XY2 = form(0, 0, 1, 0)
THREE_LINES = form(1, 0, -3, 0)            # x^3 - 3xy^2
TWO_QUADS = form(1, 0, 3, 0, 2)            # (x^2+y^2)(x^2+2y^2)
FOUR_LINES = form(1, 0, -6, 0, 1)          # x^4 - 6x^2y^2 + y^4
LINE_AND_CIRCLE = form(0, 1, 0, 1, 0)      # xy(x^2+y^2)


def test_invariance_residual_detects_symmetry():
    rot = Mat2.rotation(2 * math.pi / 3)
    assert invariance_residual(THREE_LINES, rot) < 1e-14
    assert invariance_residual(THREE_LINES, Mat2.rotation(0.3)) > 1e-3


def test_quadratic_transport_carries_form():
    # gram matrices of x^2+y^2 and x^2+2y^2
    fam = quadratic_transport([[1.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [0.0, 2.0]])
    src = form(1, 0, 1)
    dst = form(1, 0, 2)
    for theta in (0.0, 0.7, 2.0):
        h = fam.member(theta, 1.0)
        moved = compose_linear(dst, h)       # float coefficient list
        ratio = moved[0] / src.float_coeffs()[0]
        assert ratio > 0
        defect = max(abs(a - ratio * b)
                     for a, b in zip(moved, src.float_coeffs()))
        assert defect < 1e-12
        assert fam.member_det(1.0) > 0


def test_transport_rejects_indefinite_gram():
    with pytest.raises(NotPositiveDefiniteError):
        quadratic_transport([[1.0, 0.0], [0.0, -1.0]], [[1.0, 0.0], [0.0, 1.0]])


def test_shear_family_case_a():
    g = symmetry_group(form(0, 0, 0, 1))   # y^3
    assert isinstance(g, ShearFamily)
    rng = random.Random(7)
    f = form(0, 0, 0, 1)
    for _ in range(25):
        h = g.member(rng.uniform(0.1, 3.0), rng.uniform(-2, 2))
        assert invariance_residual(f, h) < 1e-9
    assert g.component_count() == 1        # odd power: -id not allowed
    assert not g.contains_minus_id()


def test_shear_family_even_power_has_two_components():
    g = symmetry_group(form(0, 0, 1))      # y^2
    assert isinstance(g, ShearFamily)
    assert g.component_count() == 2
    assert g.contains_minus_id()


def test_diagonal_family_case_b():
    f = form(0, 0, 1, 0, 0, 0)             # x^3 y^2
    g = symmetry_group(f)
    assert isinstance(g, DiagonalFamily)
    assert {g.alpha_x, g.alpha_y} == {3, 2}
    rng = random.Random(8)
    for _ in range(25):
        h = g.member(rng.uniform(-1.5, 1.5))
        assert invariance_residual(f, h) < 1e-9
    assert not g.quarter_turn_in_group
    # x^2 y^2 admits the quarter turn swapping the axes
    gg = symmetry_group(form(0, 0, 1, 0, 0))
    assert gg.quarter_turn_in_group
    assert invariance_residual(form(0, 0, 1, 0, 0), gg.quarter_turn()) < 1e-12


def test_rotation_family_case_c():
    f = form(1, 0, 2, 0, 1)                # (x^2+y^2)^2
    g = symmetry_group(f)
    assert isinstance(g, RotationFamily)
    rng = random.Random(9)
    for _ in range(25):
        h = g.member(rng.uniform(0, 2 * math.pi))
        assert invariance_residual(f, h) < 1e-9


def test_rotation_family_skewed_quadratic():
    # (x^2 + xy + y^2)^3: definite but not circular
    q = form(1, 1, 1)
    f = q * q * q
    g = symmetry_group(f)
    assert isinstance(g, RotationFamily)
    for theta in (0.4, 1.1, 3.0, 5.0):
        assert invariance_residual(f, g.member(theta)) < 1e-9


@pytest.mark.parametrize("f,n", [
    (THREE_LINES, 3),
    (LINE_AND_CIRCLE, 2),
    (TWO_QUADS, 4),
    (FOUR_LINES, 4),
])
def test_finite_orders(f, n):
    g = symmetry_group(f)
    assert isinstance(g, FiniteCyclicGroup)
    assert g.n == n
    assert g.order_of_generator() == n
    for h in g.elements:
        assert invariance_residual(f, h) < 1e-9
    assert g.contains_minus_id() == (f.degree % 2 == 0)


def test_group_elements_close_under_product():
    g = symmetry_group(TWO_QUADS)
    for a in g.elements:
        for b in g.elements:
            prod = a @ b
            assert min(prod.dist(c) for c in g.elements) < 1e-8


def test_generator_powers_cover_group():
    g = symmetry_group(FOUR_LINES)
    powers = [g.generator.power(i) for i in range(g.n)]
    for h in g.elements:
        assert min(h.dist(p) for p in powers) < 1e-8


def test_finite_order_of():
    assert finite_order_of(Mat2.rotation(2 * math.pi / 5)) == 5
    assert finite_order_of(Mat2.exact(-1, 0, 0, -1)) == 2
    with pytest.raises(NotFiniteOrderError):
        finite_order_of(Mat2.exact(1, 1, 0, 1))


def test_induced_permutation_cycles_lines():
    fs = factor_form(THREE_LINES)
    g = symmetry_group(THREE_LINES, fs)
    cand = induced_permutation(g.generator, fs)
    assert cand.tau == ()
    assert sorted(cand.sigma) == [0, 1, 2]
    # a 3-cycle: no fixed points
    assert all(cand.sigma[i] != i for i in range(3))
    cand.validate(fs)      # raises on a bad matching


def test_induced_permutation_preserves_multiplicity():
    fs = factor_form(XY2)
    cand = induced_permutation(Mat2.exact(-1, 0, 0, -1), fs)
    # -id fixes every line
    assert cand.sigma == (0, 1)
    assert cand.tau == ()


def test_oracle_scan_agrees_on_three_lines():
    g = symmetry_group(THREE_LINES)
    scan = oracle_scan(THREE_LINES, resolution=64)
    assert len(scan) == g.n
    for h in scan:
        assert min(h.dist(e) for e in g.elements) < 1e-6


def test_scan_requires_minimum_resolution():
    with pytest.raises(ValueError):
        oracle_scan(THREE_LINES, resolution=16)


def test_scale_invariance_of_group():
    g1 = symmetry_group(TWO_QUADS)
    g2 = symmetry_group(TWO_QUADS.scale_by(-7))
    assert g1.n == g2.n
    for a, b in zip(g1.elements, g2.elements):
        assert a.dist(b) < 1e-8

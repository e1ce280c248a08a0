import random
from fractions import Fraction

import pytest

from binform.errors import NotHomogeneousError
from binform.mat2 import Mat2
from binform.polyring import (
    BivariatePoly,
    HomogeneousForm,
    UnivariatePoly,
    WeightVector,
    compose_linear,
    divide_exact,
    euler_check,
    gcd_bivariate,
    gcd_univariate,
    jet_order,
    partials,
    quasi_homogeneous_check,
    squarefree_decomposition,
)

from genforms import random_product

F = Fraction


def U(*coeffs):
    return UnivariatePoly(coeffs)


def test_univariate_arithmetic():
    f = U(-1, 0, 1)            # t^2 - 1
    g = U(1, 1)                # t + 1
    assert f.degree == 2
    assert (f + g).coeffs == (F(0), F(1), F(1))
    assert (f * g).coeffs == (F(-1), F(-1), F(1), F(1))
    assert f(F(3)) == 8
    assert f.derivative().coeffs == (F(0), F(2))


def test_univariate_divmod_exact():
    f = U(-1, 0, 1)
    q, r = f.divmod(U(1, 1))
    assert r.is_zero
    assert q.coeffs == (F(-1), F(1))
    assert f.div_exact(U(-1, 1)).coeffs == (F(1), F(1))
    with pytest.raises(ValueError):
        U(1, 1, 1).div_exact(U(1, 1))


def test_gcd_univariate():
    f = U(-1, 0, 1)            # (t-1)(t+1)
    g = U(-1, 0, 0, 1)         # (t-1)(t^2+t+1)
    d = gcd_univariate(f, g)
    assert d.degree == 1
    assert d(F(1)) == 0
    assert f.divmod(d)[1].is_zero and g.divmod(d)[1].is_zero
    # coprime pair collapses to degree zero
    assert gcd_univariate(U(1, 1), U(-1, 1)).degree == 0


def test_squarefree_decomposition():
    # (t+2)(t-1)^2
    f = U(2, 1) * U(-1, 1) * U(-1, 1)
    parts = squarefree_decomposition(f)
    by_mult = {m: w for w, m in parts}
    assert sorted(by_mult) == [1, 2]
    assert by_mult[1](F(-2)) == 0
    assert by_mult[2](F(1)) == 0
    # reassembly
    prod = U(1)
    for w, m in parts:
        for _ in range(m):
            prod = prod * w
    assert prod.primitive()[0] == f.primitive()[0]


def test_bivariate_expansion():
    x = BivariatePoly({(1, 0): 1})
    y = BivariatePoly({(0, 1): 1})
    sq = (x + y) * (x + y)
    assert sq.terms == {(2, 0): F(1), (1, 1): F(2), (0, 2): F(1)}
    assert sq.eval_exact(F(1, 2), F(1, 2)) == 1
    assert sq.partial_x().terms == {(1, 0): F(2), (0, 1): F(2)}


def test_form_coefficient_layout():
    # coefficients run from x^p down to y^p
    f = HomogeneousForm([0, 0, 1, 0])
    assert f.degree == 3
    assert f.eval_exact(2, 3) == 2 * 9
    g = HomogeneousForm([1, 0, 0, 0, -1])
    assert g.eval_exact(1, 1) == 0
    assert g.eval_exact(2, 1) == 15


def test_form_to_bivariate_round_trip():
    f = HomogeneousForm([3, 0, -2, 7])
    assert f.to_bivariate().to_form() == f
    mixed = BivariatePoly({(2, 0): 1, (0, 1): 1})
    with pytest.raises(NotHomogeneousError) as ei:
        mixed.to_form()
    assert sorted(ei.value.degrees) == [1, 2]


def test_partials_xy2():
    f = HomogeneousForm([0, 0, 1, 0])
    fx, fy = partials(f)
    assert fx.coefficients() == (F(0), F(0), F(1))     # y^2
    assert fy.coefficients() == (F(0), F(2), F(0))     # 2xy


def test_partials_degree_one():
    fx, fy = partials(HomogeneousForm([2, -3]))
    assert fx.degree == 0 and fx.coefficient(0) == 2
    assert fy.coefficient(0) == -3


def test_euler_identity_random():
    rng = random.Random(11)
    for _ in range(40):
        assert euler_check(random_product(rng).form)


def test_compose_linear_exact():
    f = HomogeneousForm([0, 0, 1, 0])                  # x y^2
    swap = Mat2.exact(0, 1, 1, 0)
    g = compose_linear(f, swap)
    assert g.coefficients() == (F(0), F(1), F(0), F(0))  # x^2 y
    shear = Mat2.exact(1, F(1, 2), 0, 1)
    h = compose_linear(f, shear)
    assert all(isinstance(c, F) for c in h.coefficients())
    assert h.eval_exact(1, 2) == f.eval_exact(*shear.apply(1, 2))


def test_gcd_bivariate():
    f = HomogeneousForm([0, 1, 0])                     # x y
    g = HomogeneousForm([0, 0, 1, 0])                  # x y^2
    d = gcd_bivariate(f, g)
    assert d.degree == 2
    assert d.proportional_to(f)
    one = gcd_bivariate(HomogeneousForm([1, 0]), HomogeneousForm([0, 1]))
    assert one.degree == 0


def test_divide_exact():
    f = HomogeneousForm([0, 0, 1, 0])
    d = HomogeneousForm([0, 1])                        # y
    q = divide_exact(f, d)
    assert q.coefficients() == (F(0), F(1), F(0))      # x y
    with pytest.raises(ValueError):
        divide_exact(f, HomogeneousForm([1, 1]))


def test_jet_order():
    f = HomogeneousForm([0, 0, 1, 0, 0, 0])            # x^3 y^2
    assert jet_order(f, (0, 0)) == 5
    assert jet_order(f, (1, 0)) == 2                   # double line through (1, 0)
    assert jet_order(f, (0, 1)) == 3
    assert jet_order(f, (1, 1)) == 0


def test_quasi_homogeneous_check():
    g = BivariatePoly({(3, 0): 1, (0, 2): -1})         # x^3 - y^2
    assert quasi_homogeneous_check(g, WeightVector(2, 3, 6))
    assert not quasi_homogeneous_check(g, WeightVector(1, 1, 3))
    assert quasi_homogeneous_check(BivariatePoly({}), WeightVector(1, 1, 1))
    with pytest.raises(ValueError):
        WeightVector(0, 1, 1)


def test_zero_marker_behaviour():
    z = HomogeneousForm.zero_marker(3)
    assert z.is_zero
    f = HomogeneousForm([1, 0, 0, 0])
    prod = f * z
    assert prod.is_zero and prod.degree == 6
    assert (-z).is_zero

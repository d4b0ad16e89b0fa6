import pytest

from algebra import get_field
from algebra.errors import FieldMismatchError, NotDivisibleError, NotPPolyError, PreconditionError
from algebra.poly import (
    PolyRing,
    apply_sigma_minus_one_to_ppoly,
    divide_exact,
    monomials_of_degree,
    p_poly_decompose,
    poly_from_forms,
)


def test_freshman_dream(gf3_ring):
    x1, x2, x3 = gf3_ring.gens
    assert (x1 + x2) ** 3 == x1 ** 3 + x2 ** 3
    assert (x1 + x2 * 2 + x3) ** 9 == x1 ** 9 + x2 ** 9 * 2 + x3 ** 9


def test_arithmetic_with_scalars(gf3_ring):
    x1, x2, _ = gf3_ring.gens
    f = x1 * 2 + 1
    assert f + 2 == x1 * 2
    assert 1 - x1 == -(x1 - 1)
    assert 3 * x2 == gf3_ring.zero
    assert (f * f).degree() == 2


def test_printing_order(gf2_ring):
    x1, x2, x3, x4 = gf2_ring.gens
    f = x4 * x1 + x3 * x2
    assert f.to_str() == "x1*x4 + x2*x3"
    g = x4 ** 2 + x4 * x3 + x1
    assert g.to_str() == "x4^2 + x3*x4 + x1"
    assert gf2_ring.zero.to_str() == "0"


def test_named_scalars_in_output():
    F = get_field(2, 3)
    ring = PolyRing(F, ["x", "y"])
    x, y = ring.gens
    t = F.gen
    f = y ** 2 + x * y * t
    assert f.to_str({t.code: "b"}) == "y^2 + b*x*y"
    assert f.to_str() == "y^2 + t*x*y"


def test_monomials_of_degree_count():
    assert len(monomials_of_degree(3, 2)) == 6
    assert len(monomials_of_degree(4, 3)) == 20
    assert monomials_of_degree(2, 1)[0] == (0, 1)


def test_divide_exact(gf3_ring):
    x1, x2, x3 = gf3_ring.gens
    a = x1 + x2 * 2
    b = x3 ** 2 - x1 * x2
    assert divide_exact(a * b, a) == b
    assert divide_exact(a * b, b) == a
    with pytest.raises(NotDivisibleError):
        divide_exact(a * b + 1, a)


def test_different_rings_do_not_mix(gf3_ring):
    other = PolyRing(get_field(5), 3)
    with pytest.raises(FieldMismatchError):
        gf3_ring.var(0) + other.var(0)


def test_is_proportional_to(gf3_ring):
    x1, x2, _ = gf3_ring.gens
    assert (x1 + x2).is_proportional_to(x1 * 2 + x2 * 2)
    assert not (x1 + x2).is_proportional_to(x1 + x2 * 2)
    assert gf3_ring.zero.is_proportional_to(gf3_ring.zero)


def test_p_poly_decomposition_of_orbit_product():
    ring = PolyRing(get_field(3), ["x", "y"])
    x, y = ring.gens
    f = y ** 3 - y * x ** 2
    dec = p_poly_decompose(f, 1)
    assert set(dec.coefficients) == {0, 1}
    assert dec.coefficients[1] == ring.one
    assert dec.coefficients[0] == -(x ** 2)
    assert dec.reassemble() == f


def test_sigma_minus_one_on_p_poly():
    ring = PolyRing(get_field(3), ["x", "z", "y"])
    x, z, y = ring.gens
    f = y ** 3 - y * x ** 2
    shift = ring.linear_form([0, 1, 0])
    expected = f.substitute([x, z, y + z]) - f
    result = apply_sigma_minus_one_to_ppoly(p_poly_decompose(f, 2), shift)
    assert result == expected
    assert result == z ** 3 - z * x ** 2


def test_p_poly_rejects_other_exponents(gf3_ring):
    x1, x2, _ = gf3_ring.gens
    with pytest.raises(NotPPolyError):
        p_poly_decompose(x2 ** 2, 1)
    with pytest.raises(NotPPolyError):
        p_poly_decompose(x1, 1)


def test_sigma_minus_one_rejects_shift_in_decomposition_variable(gf3_ring):
    dec = p_poly_decompose(gf3_ring.var(2) ** 3, 2)
    with pytest.raises(PreconditionError):
        apply_sigma_minus_one_to_ppoly(dec, gf3_ring.linear_form([0, 0, 1]))


def test_linear_form_normalize_and_product(gf3_ring):
    l = gf3_ring.linear_form([1, 2, 0])
    assert l.pivot == 1
    assert l.normalize().coeffs == (2, 1, 0)
    x1, x2, _ = gf3_ring.gens
    assert poly_from_forms([l, gf3_ring.variable_form(0)], gf3_ring) == (x1 + x2 * 2) * x1

import pytest

from algebra import FiniteField, get_field
from algebra.errors import (
    FieldMismatchError,
    IrreducibilityError,
    NotInvertibleError,
    PreconditionError,
)
from algebra.field import in_prime_subfield, in_subfield_generated_by, is_irreducible


def test_gf8_modulus_relation():
    F = get_field(2, 3, (1, 1, 0, 1))
    t = F([0, 1])
    assert t ** 3 == F([1, 1])
    assert t ** 7 == F.one


def test_every_nonzero_element_is_invertible():
    F = get_field(3, 2)
    for a in F.elements():
        if a:
            assert a * a.inverse() == F.one
            assert a / a == F.one


def test_zero_has_no_inverse():
    F = get_field(5)
    with pytest.raises(NotInvertibleError):
        F.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        F(3) / 0


def test_prime_field_arithmetic_matches_integers():
    F = get_field(7)
    for a in range(7):
        for b in range(7):
            assert (F(a) + F(b)).code == (a + b) % 7
            assert (F(a) * F(b)).code == (a * b) % 7
            assert (F(a) - b).code == (a - b) % 7


def test_characteristic_annihilates():
    F = get_field(3, 3)
    for a in F.elements():
        assert a * 3 == F.zero
        assert -a + a == F.zero


def test_frobenius_is_additive():
    F = get_field(2, 6)
    elements = list(F.elements())
    for a in elements[:16]:
        for b in elements[16:32]:
            assert (a + b) ** 2 == a ** 2 + b ** 2


def test_reducible_modulus_is_rejected():
    # t^2 + 1 = (t + 1)^2 over GF(2)
    assert not is_irreducible((1, 0, 1), 2)
    with pytest.raises(IrreducibilityError):
        FiniteField(2, 2, (1, 0, 1))


def test_malformed_modulus_is_rejected():
    with pytest.raises(IrreducibilityError):
        FiniteField(3, 2, (1, 1))
    with pytest.raises(IrreducibilityError):
        FiniteField(3, 2, (2, 2, 2))


def test_non_prime_characteristic_is_rejected():
    with pytest.raises(PreconditionError):
        FiniteField(4)


def test_elements_of_different_fields_do_not_mix():
    a = get_field(2, 2).gen
    b = get_field(2, 3).gen
    with pytest.raises(FieldMismatchError):
        a + b


def test_get_field_shares_instances():
    assert get_field(3, 3) is get_field(3, 3)


def test_subfield_generators_have_expected_degree():
    F = get_field(2, 6)
    alpha = F.subfield_generator(2)
    beta = F.subfield_generator(3)
    assert F.degree_of(alpha) == 2
    assert F.degree_of(beta) == 3
    assert F.degree_of(F.one) == 1
    assert alpha ** 4 == alpha
    assert beta ** 8 == beta
    assert not in_subfield_generated_by(beta, alpha)
    assert in_subfield_generated_by(alpha * alpha + 1, alpha)


def test_subfield_codes_count():
    F = get_field(3, 6)
    assert len(F.subfield_codes(1)) == 3
    assert len(F.subfield_codes(2)) == 9
    assert len(F.subfield_codes(3)) == 27
    with pytest.raises(PreconditionError):
        F.subfield_codes(4)


def test_prime_subfield_membership():
    F = get_field(3, 2)
    assert in_prime_subfield(F(2))
    assert not in_prime_subfield(F.gen)


def test_format_code():
    F = get_field(3, 2)
    assert F(2).to_str() == "2"
    assert F([1, 2]).to_str() == "(2*t + 1)"
    assert F([0, 1]).to_str() == "t"

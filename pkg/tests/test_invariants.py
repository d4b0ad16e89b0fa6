import pytest

from algebra import get_field
from algebra.errors import DegreeCapExceeded, PreconditionError
from algebra.group import GroupElement, enumerate_group
from algebra.invariants import (
    exponent_degrees_of_inertia_ring,
    graded_basis,
    invariant_space,
    is_invariant,
    is_polynomial_ring,
    min_degree_noninvariant,
    minimal_generators,
    orbit,
    orbit_product,
    quotient_dimension,
    trace_over_quotient,
)
from algebra.poly import PolyRing


@pytest.fixture
def sw(shank_wehlau):
    G = shank_wehlau.group()
    G_prime = shank_wehlau.subgroup_from_words(G, ["tau"])
    return shank_wehlau, G, G_prime


def _single_transvection(p):
    ring = PolyRing(get_field(p), 2)
    g = GroupElement(ring, ((1, 0), (1, 1)))
    return ring, enumerate_group([g], ring=ring)


def test_degree_one_invariants(sw):
    resolved, G, G_prime = sw
    x1, _, x3, x4 = resolved.ring.gens
    assert set(invariant_space(G, 1)) == {x1, x3}
    assert set(invariant_space(G_prime, 1)) == {x1, x3, x4}
    assert invariant_space(G, -1) == ()


def test_invariant_space_is_invariant(sw):
    _, G, _ = sw
    for d in range(4):
        for f in invariant_space(G, d):
            assert is_invariant(f, G)
            assert f.leading_coefficient() == f.ring.field.one


def test_graded_basis_dimensions(sw):
    _, G, _ = sw
    basis = graded_basis(G, 2)
    assert basis.dimension(0) == 1
    assert basis.dimension(1) == 2
    # x1^2, x1x3, x3^2, x2^2+x1x2, x4^2+x3x4
    assert basis.dimension(2) == 5


def test_minimal_generators_shank_wehlau(sw):
    resolved, G, G_prime = sw
    x1, x2, x3, x4 = resolved.ring.gens
    gens = minimal_generators(G)
    assert sorted(gens.degrees) == [1, 1, 2, 2]
    assert gens.certified_complete
    assert gens.quotient_dimension == 4
    assert x2 ** 2 + x2 * x1 in gens.gens
    assert x4 ** 2 + x4 * x3 in gens.gens
    assert is_polynomial_ring(G_prime)
    assert sorted(minimal_generators(G_prime).degrees) == [1, 1, 1, 2]


def test_minimal_generators_single_transvection():
    ring, G = _single_transvection(3)
    x1, x2 = ring.gens
    gens = minimal_generators(G)
    assert gens.degrees == [1, 3]
    assert gens.gens[1] == x2 ** 3 - x2 * x1 ** 2
    assert gens.quotient_dimension == 3
    assert exponent_degrees_of_inertia_ring(G) == [1, 3]


def test_uncertified_when_budget_too_small():
    _, G = _single_transvection(3)
    gens = minimal_generators(G, 2)
    assert not gens.certified_complete
    assert gens.degree_budget == 2


def test_quotient_dimension(sw):
    resolved, _, _ = sw
    x1, x2, x3, x4 = resolved.ring.gens
    ring = resolved.ring
    assert quotient_dimension([x1, x2, x3, x4], ring) == 1
    assert quotient_dimension([x1, x3], ring) is None
    assert quotient_dimension([x1, x2 ** 2, x3, x4 ** 2], ring) == 4
    # x2^2, x2*x4 is not a regular sequence
    assert quotient_dimension([x1, x3, x2 ** 2, x2 * x4], ring) is None


def test_min_degree_noninvariant(sw):
    resolved, G, G_prime = sw
    d, a = min_degree_noninvariant(G_prime, G)
    assert d == 1
    assert a == resolved.ring.var(3)


def test_min_degree_noninvariant_stong(stong_p2):
    G = stong_p2.group()
    G_prime = stong_p2.subgroup_from_words(G, ["rho", "tau"])
    d, a = min_degree_noninvariant(G_prime, G)
    assert d == 2
    assert is_invariant(a, G_prime)
    assert not is_invariant(a, G)
    with pytest.raises(DegreeCapExceeded):
        min_degree_noninvariant(G_prime, G, degree_cap=1)


def test_min_degree_requires_proper_subgroup(sw):
    _, G, _ = sw
    with pytest.raises(PreconditionError):
        min_degree_noninvariant(G, G)


def test_orbit_and_orbit_product(sw):
    resolved, _, G_prime = sw
    ring = resolved.ring
    x1, x2, _, _ = ring.gens
    assert len(orbit(G_prime, ring.variable_form(1))) == 2
    assert len(orbit(G_prime, ring.variable_form(3))) == 1
    assert orbit_product(G_prime, ring.variable_form(1)) == x2 ** 2 + x2 * x1
    assert orbit_product(G_prime, x2 * x2) == x2 ** 2 * (x2 + x1) ** 2


def test_trace_over_quotient(sw):
    resolved, G, G_prime = sw
    x1, x2, x3, x4 = resolved.ring.gens
    sigma = resolved.word("sigma")
    assert trace_over_quotient(x4, sigma) == x3
    assert trace_over_quotient(x4, sigma, subgroup=G_prime, group=G) == x3
    with pytest.raises(PreconditionError):
        trace_over_quotient(x2, sigma, subgroup=G_prime)

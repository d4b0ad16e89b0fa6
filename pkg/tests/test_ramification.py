import pytest

from algebra.errors import FieldTooLargeError, PreconditionError
from algebra.ramification import (
    _fixed_subspace_lattice,
    decomposition_group,
    different_A_over_R,
    different_over_invariants,
    different_special_formulas,
    find_linear_orbit_witness,
    hyperplane_exponent,
    inertia_group,
    is_linear_orbit_witness,
    no_linear_orbit_witness,
    ramif1,
    split_test,
)


@pytest.fixture
def sw(shank_wehlau):
    G = shank_wehlau.group()
    G_prime = shank_wehlau.subgroup_from_words(G, ["tau"])
    return shank_wehlau, G, G_prime, shank_wehlau.word("sigma")


def test_inertia_and_decomposition_groups(sw):
    resolved, G, _, _ = sw
    x1 = resolved.ring.variable_form(0)
    x3 = resolved.ring.variable_form(2)
    assert inertia_group(x1, G).order == 2
    assert decomposition_group(x1, G).order == 4
    assert hyperplane_exponent(x3, G) == 1
    assert hyperplane_exponent(resolved.ring.variable_form(1), G) == 0


def test_different_over_invariants(sw):
    resolved, G, G_prime, _ = sw
    ring = resolved.ring
    cert = different_over_invariants(G)
    assert cert.factors == ((ring.variable_form(0), 1), (ring.variable_form(2), 1))
    assert cert.degree == 2
    assert cert.expand() == ring.var(0) * ring.var(2)
    assert different_over_invariants(G_prime).support() == [ring.variable_form(0)]


def test_different_a_over_r_shank_wehlau(sw):
    resolved, G, G_prime, _ = sw
    cert = different_A_over_R(G, G_prime)
    assert cert.to_str() == "(x3)^1"
    assert cert.g_invariant
    assert cert.support_matches


def test_different_of_trivial_extension_is_unit(sw):
    resolved, G, _, _ = sw
    H = resolved.subgroup_from_words(G, ["sigma*tau"])
    cert = different_A_over_R(G, H)
    assert cert.expand() == resolved.ring.var(0) * resolved.ring.var(2)
    assert different_over_invariants(H).is_unit()
    assert different_over_invariants(H).to_str() == "1"


def test_ramif1(sw):
    resolved, G, G_prime, _ = sw
    ring = resolved.ring
    report = ramif1(G, G_prime)
    assert report.s_over_r == (ring.variable_form(0), ring.variable_form(2))
    assert report.s_over_a_over_r == (ring.variable_form(2),)
    assert report.a_over_r_generators == (ring.var(2),)
    assert report.a_over_r_invariant == (True,)


def test_split_test_shank_wehlau(sw):
    resolved, G, G_prime, sigma = sw
    x3 = resolved.ring.var(2)
    verdict = split_test(G, G_prime, sigma)
    assert verdict.is_split
    assert verdict.d_min == 1
    assert verdict.witness == resolved.ring.var(3)
    assert verdict.deg_different == 1
    assert verdict.witness_trace == x3
    assert verdict.relation == "="
    assert verdict.sigma_a_minus_a_invariant
    assert verdict.trace_identity_holds
    assert verdict.lower_traces_vanish
    assert verdict.trace_in_different_ideal


def test_split_test_rejects_coset_element_inside_subgroup(sw):
    resolved, G, G_prime, _ = sw
    with pytest.raises(PreconditionError):
        split_test(G, G_prime, resolved.word("tau"))


def test_split_test_non_transvection_subgroup(sw):
    resolved, G, _, sigma = sw
    H = resolved.subgroup_from_words(G, ["sigma*tau"])
    verdict = split_test(G, H, sigma)
    assert verdict.is_split
    assert verdict.d_min == 2
    assert verdict.deg_different == 2


def test_special_formulas_shank_wehlau(sw):
    resolved, G, G_prime, sigma = sw
    result = different_special_formulas(G, G_prime, sigma)
    assert result.h_order == 1
    assert result.closed_form == resolved.ring.var(2)
    assert result.cert_b == resolved.ring.var(2)


def test_special_formulas_main_example(example_main_p2):
    G = example_main_p2.group()
    G_prime = example_main_p2.subgroup_from_words(G, ["tau1", "tau2", "tau3"])
    x1, _, x3, _ = example_main_p2.ring.gens
    beta = example_main_p2.scalars["beta"]
    result = different_special_formulas(G, G_prime, example_main_p2.word("sigma"))
    assert result.h_order == 2
    assert result.cert_b.is_proportional_to(x3 * (x3 + x1 * beta))
    assert different_A_over_R(G, G_prime).expand().is_proportional_to(result.cert_b)


def test_special_formulas_need_larger_beta(stong_p2):
    G = stong_p2.group()
    G_prime = stong_p2.subgroup_from_words(G, ["rho", "tau"])
    with pytest.raises(PreconditionError):
        different_special_formulas(G, G_prime, stong_p2.word("sigma"))


def test_linear_orbit_witness_shank_wehlau(sw):
    resolved, G, G_prime, sigma = sw
    delta = different_A_over_R(G, G_prime).expand()
    x4 = resolved.ring.variable_form(3)
    assert is_linear_orbit_witness(x4, G_prime, sigma, delta)
    assert not is_linear_orbit_witness(resolved.ring.variable_form(0), G_prime, sigma, delta)
    result = find_linear_orbit_witness(G, G_prime, sigma)
    assert result.witness is not None
    assert is_linear_orbit_witness(result.witness, G_prime, sigma, delta)


def test_stong_witness(stong_p2):
    G = stong_p2.group()
    G_prime = stong_p2.subgroup_from_words(G, ["rho", "tau"])
    sigma = stong_p2.word("sigma")
    delta = different_A_over_R(G, G_prime).expand()
    assert is_linear_orbit_witness(stong_p2.ring.variable_form(1), G_prime, sigma, delta)
    assert not no_linear_orbit_witness(G, G_prime, sigma)


def test_exhaustion_cap(stong_p2):
    G = stong_p2.group()
    G_prime = stong_p2.subgroup_from_words(G, ["rho", "tau"])
    with pytest.raises(FieldTooLargeError):
        find_linear_orbit_witness(G, G_prime, stong_p2.word("sigma"), full_field=True, cap=1)


def test_main_example_has_no_linear_orbit_witness(example_main_p2):
    G = example_main_p2.group()
    G_prime = example_main_p2.subgroup_from_words(G, ["tau1", "tau2", "tau3"])
    assert no_linear_orbit_witness(G, G_prime, example_main_p2.word("sigma"))


def test_fixed_subspace_lattice_breadth_first(sw):
    resolved, _, G_prime, _ = sw
    x1, x2, x3, x4 = resolved.ring.gens
    assert [set(U) for U in _fixed_subspace_lattice(G_prime, 1)] == [{x1, x2, x3, x4}]
    assert [set(U) for U in _fixed_subspace_lattice(G_prime, 2)] == [{x1, x3, x4}]

"""
대수 항등식 속성 기반 테스트

군은 한 행만 바꾸는 일반 전이 x_j -> x_j + Σ_{i<j} c_i x_i 들로 생성한다.
"""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from algebra import get_field
from algebra.errors import OrderCapExceeded, PreconditionError
from algebra.group import (
    GroupElement,
    composition_series,
    enumerate_group,
    is_pseudo_reflection,
    last_step_data,
    stabilizer_of_form,
    subgroup_H,
    validate_composition_series,
)
from algebra.invariants import invariant_space, is_invariant, trace_over_quotient
from algebra.poly import PolyRing, divide_exact, monomials_of_degree
from algebra.ramification import (
    different_A_over_R,
    different_over_invariants,
    different_special_formulas,
    hyperplane_exponent,
    inertia_group,
    split_test,
)

FIELDS = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1)]
GROUP_FIELDS = [(2, 1), (3, 1), (2, 2)]
ORDER_CAP = 32

GROUPS = settings(
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


@st.composite
def field_triples(draw):
    p, k = draw(st.sampled_from(FIELDS))
    F = get_field(p, k)
    codes = st.integers(min_value=0, max_value=F.q - 1)
    return F, F.element(draw(codes)), F.element(draw(codes)), F.element(draw(codes))


@given(field_triples())
def test_field_ring_axioms(data):
    F, a, b, c = data
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    if a:
        assert a * a.inverse() == F.one


@given(field_triples())
def test_frobenius_is_additive_and_fixes_everything_after_k_steps(data):
    F, a, b, _ = data
    p = F.p
    assert (a + b) ** p == a ** p + b ** p
    assert a ** F.q == a


@given(field_triples())
def test_scalar_tables_agree_with_galois_arithmetic(data):
    F, a, b, _ = data
    x, y = F.gf(a.code), F.gf(b.code)
    assert (a + b).code == int(x + y)
    assert (a * b).code == int(x * y)
    if b:
        assert (a / b).code == int(x / y)


RING = PolyRing(get_field(3), 2)
MONOMIALS = [m for d in range(3) for m in monomials_of_degree(2, d)]


@st.composite
def polys(draw, nonzero=False):
    coeffs = draw(st.lists(st.integers(min_value=0, max_value=2), min_size=len(MONOMIALS), max_size=len(MONOMIALS)))
    f = RING.poly(dict(zip(MONOMIALS, coeffs)))
    if nonzero and f.is_zero():
        f = RING.one
    return f


@given(polys(), polys(), polys())
def test_poly_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) - g == f


@given(polys(), polys(nonzero=True))
def test_exact_division_recovers_factor(f, g):
    assert divide_exact(f * g, g) == f


@st.composite
def one_row_transvections(draw, ring):
    """j 번째 행 하나만 x_j + Σ_{i<j} c_i x_i 로 바꾼 전이"""
    n, q = ring.n, ring.field.q
    j = draw(st.integers(min_value=1, max_value=n - 1))
    coeffs = draw(st.lists(st.integers(min_value=0, max_value=q - 1), min_size=j, max_size=j))
    if not any(coeffs):
        coeffs[-1] = 1
    rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    rows[j][:j] = coeffs
    return GroupElement(ring, tuple(tuple(r) for r in rows))


@st.composite
def transvection_groups(draw):
    """GF(2), GF(3), GF(4) 위 n ∈ {2, 3, 4} 변수의 전이 생성 군 (위수 ORDER_CAP 이하)"""
    p, k = draw(st.sampled_from(GROUP_FIELDS))
    n = draw(st.sampled_from([2, 3, 4]))
    ring = PolyRing(get_field(p, k), n)
    candidates = draw(st.lists(one_row_transvections(ring), min_size=1, max_size=3))
    gens = []
    G = None
    for t in candidates:
        try:
            G = enumerate_group(gens + [t], ring, order_cap=ORDER_CAP)
        except OrderCapExceeded:
            continue
        gens.append(t)
    return G


def _last_stage(G):
    series = composition_series(G)
    G_prime, sigma = last_step_data(G, series)
    return series, G_prime, sigma


def _outside_lines(G, G_prime):
    return {t.line for t in G.pseudo_reflections if t.element not in G_prime}


def _normal_form_outside(G, G_prime):
    last = G.ring.n - 1
    return next(
        (t.element for t in G.pseudo_reflections if t.element not in G_prime and t.element.fixes_all_but(last)),
        None,
    )


@GROUPS
@given(transvection_groups())
def test_generators_are_pseudo_reflections(G):
    assert all(is_pseudo_reflection(g) for g in G.generators)
    assert G.is_transvection_generated()


@GROUPS
@given(transvection_groups())
def test_invariant_spaces_are_invariant(G):
    for d in (1, 2):
        for f in invariant_space(G, d):
            assert is_invariant(f, G)


@GROUPS
@given(transvection_groups())
def test_action_is_a_ring_homomorphism(G):
    xs = G.ring.gens
    f, h = xs[0] * xs[-1] + xs[1], xs[-1] ** 2 + xs[0]
    for g in G.elements:
        assert g.act(f * h) == g.act(f) * g.act(h)
        assert g.act(f + h) == g.act(f) + g.act(h)


@GROUPS
@given(transvection_groups())
def test_composition_series_is_valid(G):
    series = composition_series(G)
    assert validate_composition_series(series, G) == []
    assert [H.order for H in series.chain] == [G.ring.field.p ** i for i in range(series.length + 1)]


@GROUPS
@given(transvection_groups())
def test_beta_is_conjugation_invariant(G):
    reflections = {t.element for t in G.pseudo_reflections}
    for t in G.pseudo_reflections:
        for g in G.elements:
            conjugate = g.compose(t.element).compose(g.inverse())
            assert conjugate in reflections
            assert conjugate.beta == t.beta == t.element.beta


@GROUPS
@given(transvection_groups())
def test_inertia_matches_brute_force(G):
    """(l) 의 관성군은 모든 (g-1)x_i 가 l 의 스칼라배인 원소 전체이고, 비분기와 자명 관성이 동치"""
    ring = G.ring
    lines = set(G.lines())
    for l in lines | {ring.variable_form(i) for i in range(ring.n)}:
        brute = {
            g for g in G.elements
            if all(d.is_zero() or d.normalize() == l for d in g.differences())
        }
        inertia = inertia_group(l, G)
        assert set(inertia.elements) == brute
        assert (hyperplane_exponent(l, G) > 0) == (not inertia.is_trivial()) == (l in lines)


@GROUPS
@given(transvection_groups())
def test_different_factors_through_intermediate_ring(G):
    _, G_prime, _ = _last_stage(G)
    over_r = different_over_invariants(G, "S/R")
    over_a = different_over_invariants(G_prime, "S/A")
    delta = different_A_over_R(G, G_prime)
    assert over_r.expand().is_proportional_to(over_a.expand() * delta.expand())
    assert over_r.degree == over_a.degree + delta.degree
    assert delta.g_invariant
    assert delta.support_matches


@GROUPS
@given(transvection_groups())
def test_different_support_is_ramified_locus(G):
    """l 이 Δ_A/R 를 나누는 것과 관성군이 G' 에 포함되지 않는 것이 동치"""
    _, G_prime, _ = _last_stage(G)
    delta = different_A_over_R(G, G_prime)
    support = set(delta.support())
    assert support == _outside_lines(G, G_prime)
    for l in G.lines():
        assert (l in support) == (not inertia_group(l, G).is_subgroup_of(G_prime))


@GROUPS
@given(transvection_groups())
def test_trace_identities_at_last_stage(G):
    _, G_prime, sigma = _last_stage(G)
    p = G.ring.field.p
    verdict = split_test(G, G_prime, sigma)
    assert verdict.sigma_a_minus_a_invariant
    assert verdict.trace_identity_holds
    assert verdict.lower_traces_vanish
    assert verdict.deg_different <= (p - 1) * verdict.d_min
    assert verdict.is_split == (verdict.relation == "=")
    assert is_invariant(verdict.witness, G_prime)
    assert not is_invariant(verdict.witness, G)
    assert is_invariant(trace_over_quotient(verdict.witness, sigma, p), G)


@GROUPS
@given(transvection_groups())
def test_special_formulas_agree_with_division(G):
    _, G_prime, sigma = _last_stage(G)
    try:
        result = different_special_formulas(G, G_prime, sigma)
    except PreconditionError:
        return
    p = G.ring.field.p
    delta = different_A_over_R(G, G_prime).expand()
    assert result.closed_form ** (p - 1) == result.cert_b
    assert result.cert_a.expand().is_proportional_to(result.cert_b)
    assert delta.is_proportional_to(result.cert_b)
    assert set(result.cert_a.support()) == _outside_lines(G, G_prime)
    assert result.h_order == subgroup_H(G_prime, G.ring.n).order


@GROUPS
@given(transvection_groups())
def test_commutators_with_normal_form_sigma_lie_in_H(G):
    """σ 가 x_n 만 움직이면 σgσ⁻¹g⁻¹ ∈ H 이고, 그 값의 개수는 [G' : Stab_G'(l_σ)]"""
    _, G_prime, _ = _last_stage(G)
    sigma = _normal_form_outside(G, G_prime)
    if sigma is None:
        return
    H = subgroup_H(G_prime, G.ring.n)
    l_sigma = sigma.differences()[G.ring.n - 1]
    G_second = stabilizer_of_form(G_prime, l_sigma)
    assert H.is_subgroup_of(G_second)

    sigma_inv = sigma.inverse()
    commutators = set()
    for g in G_prime.elements:
        c = sigma.compose(g).compose(sigma_inv).compose(g.inverse())
        assert c in H
        assert (c.is_identity()) == (g in G_second)
        commutators.add(c)
    assert len(commutators) == G_prime.order // G_second.order

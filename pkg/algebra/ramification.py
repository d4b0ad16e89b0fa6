"""
분기 이론 모듈

일차형식 소 아이디얼의 관성군/분해군, 초평면 지수, 데데킨트 차이 인증서,
분기 궤적, 특수 공식, 직합 인자(분할) 판정을 계산한다.
"""
import logging
from collections import deque
from dataclasses import dataclass, replace
from functools import lru_cache, reduce
from itertools import product
from math import gcd
from typing import Optional

from .errors import (
    FieldTooLargeError,
    InternalConsistencyError,
    NotDivisibleError,
    PreconditionError,
)
from .field import FieldElement
from .group import (
    Group,
    GroupElement,
    beta_of_group,
    group_from_elements,
    is_normal,
    is_pseudo_reflection,
    subgroup,
    subgroup_H,
)
from . import invariants
from .invariants import (
    common_kernel,
    rref_basis,
    exponent_degrees_of_inertia_ring,
    is_invariant,
    min_degree_noninvariant,
    orbit,
    orbit_product,
    trace_over_quotient,
)
from .poly import (
    LinearForm,
    Poly,
    PolyRing,
    apply_sigma_minus_one_to_ppoly,
    divide_exact,
    p_poly_decompose,
)

logger = logging.getLogger(__name__)

# 선형형식 전수 탐색 후보 상한
DEFAULT_EXHAUSTION_CAP = 200_000


@dataclass(frozen=True)
class DifferentCertificate:
    """주 아이디얼 차이의 인수분해형 (정규화된 일차형식, 지수)"""

    ring: PolyRing
    factors: tuple[tuple[LinearForm, int], ...]
    ring_tag: str
    g_invariant: Optional[bool] = None
    support_matches: Optional[bool] = None

    def expand(self) -> Poly:
        result = self.ring.one
        for l, e in self.factors:
            result = result * (l.to_poly() ** e)
        return result

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.factors)

    def support(self) -> list[LinearForm]:
        return [l for l, _ in self.factors]

    def exponent_of(self, l: LinearForm) -> int:
        line = l.normalize()
        return next((e for m, e in self.factors if m == line), 0)

    def is_unit(self) -> bool:
        return not self.factors

    def to_str(self, scalar_names: Optional[dict[int, str]] = None) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"({l.to_str(scalar_names)})^{e}" for l, e in self.factors)

    def __str__(self) -> str:
        return self.to_str()


@dataclass(frozen=True)
class Ramif1Report:
    """높이 1 분기 궤적"""

    s_over_r: tuple[LinearForm, ...]
    s_over_a_over_r: tuple[LinearForm, ...]
    a_over_r_generators: tuple[Poly, ...]
    a_over_r_invariant: tuple[bool, ...]


@dataclass(frozen=True)
class SplitVerdict:
    """R ⊆ A 직합 인자 판정"""

    is_split: bool
    d_min: int
    witness: Poly
    deg_different: int
    witness_trace: Poly
    scalar: Optional[FieldElement]
    relation: str
    sigma_a_minus_a_invariant: bool
    trace_identity_holds: bool
    lower_traces_vanish: bool
    trace_in_different_ideal: bool
    different: DifferentCertificate


@dataclass(frozen=True)
class SpecialFormulaResult:
    """특수 공식 두 가지와 나눗셈 경로의 일치 결과"""

    cert_a: DifferentCertificate
    cert_b: Poly
    sigma: GroupElement
    h_order: int
    closed_form: Poly


@dataclass(frozen=True)
class OrbitWitnessResult:
    """선형형식 궤도곱 증인 탐색 결과"""

    witness: Optional[LinearForm]
    candidates_checked: int
    coefficient_degree: int


def _sorted_lines(lines) -> tuple[LinearForm, ...]:
    return tuple(sorted(set(lines), key=LinearForm.sort_key))


def inertia_group(l: LinearForm, G: Group) -> Group:
    """l 과 같은 직선을 갖는 의사반사들로 생성된 관성군"""
    if l.is_zero():
        raise PreconditionError("0 형식의 관성군은 정의되지 않습니다.")
    line = l.normalize()
    gens = [t.element for t in G.pseudo_reflections if t.line == line]
    return subgroup(G, gens)


def decomposition_group(l: LinearForm, G: Group) -> Group:
    """g·l 이 l 에 비례하는 원소들의 분해군 (관성군의 정규성 확인 포함)"""
    if l.is_zero():
        raise PreconditionError("0 형식의 분해군은 정의되지 않습니다.")
    line = l.normalize()
    elements = [g for g in G.elements if g.apply_form(line).normalize() == line]
    decomposition = group_from_elements(G.ring, elements)
    inertia = inertia_group(line, G)
    if not is_normal(inertia, decomposition):
        raise InternalConsistencyError(f"관성군이 분해군의 정규부분군이 아닙니다: {line}")
    return decomposition


@lru_cache(maxsize=4096)
def hyperplane_exponent(l: LinearForm, G: Group) -> int:
    """관성군 불변환 생성원 차수 d_i 로부터 Σ(d_i - 1)"""
    inertia = inertia_group(l, G)
    if inertia.is_trivial():
        return 0
    return sum(d - 1 for d in exponent_degrees_of_inertia_ring(inertia))


def different_over_invariants(G: Group, ring_tag: str = "S/R") -> DifferentCertificate:
    factors = []
    for line in G.lines():
        e = hyperplane_exponent(line, G)
        if e > 0:
            factors.append((line, e))
    return DifferentCertificate(G.ring, tuple(factors), ring_tag)


def _outside_lines(G: Group, G_prime: Group) -> tuple[LinearForm, ...]:
    return _sorted_lines(t.line for t in G.pseudo_reflections if t.element not in G_prime)


def different_A_over_R(G: Group, G_prime: Group) -> DifferentCertificate:
    """
    Δ_{S/R} 와 Δ_{S/A} 의 지수를 빼서 Δ_{A/R} 를 구합니다.

    Raises:
        PreconditionError: G' 가 정규부분군이 아닐 때
        InternalConsistencyError: 음의 지수가 나올 때
    """
    if not is_normal(G_prime, G):
        raise PreconditionError("G' 는 G 의 정규부분군이어야 합니다.")
    over_r = different_over_invariants(G, "S/R")
    over_a = different_over_invariants(G_prime, "S/A")
    exponents = {l: e for l, e in over_r.factors}
    for l, e in over_a.factors:
        exponents[l] = exponents.get(l, 0) - e
    negative = [l for l, e in exponents.items() if e < 0]
    if negative:
        raise InternalConsistencyError(f"Δ_A/R 에 음의 지수가 나타납니다: {[str(l) for l in negative]}")
    factors = tuple(
        (l, exponents[l]) for l in _sorted_lines(exponents) if exponents[l] > 0
    )
    certificate = DifferentCertificate(G.ring, factors, "A/R")
    support_matches = set(certificate.support()) == set(_outside_lines(G, G_prime))
    g_invariant = is_invariant(certificate.expand(), G)
    if not g_invariant:
        logger.warning("Δ_A/R 가 G 불변이 아닙니다.")
    return replace(certificate, g_invariant=g_invariant, support_matches=support_matches)


def _normal_form_sigma(G: Group, G_prime: Group, sigma: GroupElement) -> Optional[GroupElement]:
    """x_n 만 움직이는 G \\ G' 의 전이 (주어진 σ 를 우선)"""
    last = G.ring.n - 1
    if sigma in G and sigma not in G_prime and is_pseudo_reflection(sigma) and sigma.fixes_all_but(last):
        return sigma
    for t in G.pseudo_reflections:
        if t.element not in G_prime and t.element.fixes_all_but(last):
            return t.element
    return None


def different_special_formulas(G: Group, G_prime: Group, sigma: GroupElement) -> SpecialFormulaResult:
    """
    β_σ > β_{G'} 일 때의 두 닫힌 공식

    certA = Π l_τ^{p-1} (τ ∈ 𝒫 \\ G'), certB = ((σ-1)Π_H x_n)^{p-1}.
    두 공식과 나눗셈 경로 Δ_{A/R} 가 스칼라배까지 일치하는지 확인한다.
    """
    ring = G.ring
    p = ring.field.p
    last = ring.n - 1
    if not G_prime.is_trivial() and not G_prime.is_transvection_generated():
        raise PreconditionError("G' 가 전이로 생성되지 않습니다.")
    beta_prime = beta_of_group(G_prime) if G_prime.pseudo_reflections else 0
    if sigma.beta <= beta_prime:
        raise PreconditionError(f"β_σ={sigma.beta} 가 β_G'={beta_prime} 보다 커야 합니다.")
    chosen = _normal_form_sigma(G, G_prime, sigma)
    if chosen is None:
        raise PreconditionError("x_n 만 움직이는 G \\ G' 의 전이가 없습니다.")

    lines = _outside_lines(G, G_prime)
    cert_a = DifferentCertificate(ring, tuple((l, p - 1) for l in lines), "A/R")

    H = subgroup_H(G_prime, ring.n)
    f = orbit_product(H, ring.variable_form(last))
    decomposition = p_poly_decompose(f, last)
    closed_form = apply_sigma_minus_one_to_ppoly(decomposition, chosen.differences()[last])
    cert_b = closed_form ** (p - 1)

    if not cert_a.expand().is_proportional_to(cert_b):
        raise InternalConsistencyError(f"특수 공식 불일치: {cert_a} / {cert_b}")
    division = different_A_over_R(G, G_prime)
    if not division.expand().is_proportional_to(cert_b):
        raise InternalConsistencyError(f"나눗셈 경로와 특수 공식 불일치: {division} / {cert_b}")
    return SpecialFormulaResult(
        cert_a=cert_a, cert_b=cert_b, sigma=chosen, h_order=H.order, closed_form=closed_form
    )


def ramif1(G: Group, G_prime: Group) -> Ramif1Report:
    s_over_r = _sorted_lines(G.lines())
    s_over_a_over_r = _outside_lines(G, G_prime)
    generators: dict[Poly, None] = {}
    for l in s_over_a_over_r:
        generators.setdefault(orbit_product(G_prime, l), None)
    gens = tuple(generators)
    return Ramif1Report(
        s_over_r=s_over_r,
        s_over_a_over_r=s_over_a_over_r,
        a_over_r_generators=gens,
        a_over_r_invariant=tuple(is_invariant(f, G) for f in gens),
    )


def _check_index_p(G: Group, G_prime: Group, sigma: GroupElement):
    p = G.ring.field.p
    if G.order != p * G_prime.order or not is_normal(G_prime, G):
        raise PreconditionError("G' 는 지수 p 인 정규부분군이어야 합니다.")
    if sigma not in G or sigma in G_prime:
        raise PreconditionError("σ 는 G \\ G' 의 원소여야 합니다.")


def split_test(
    G: Group, G_prime: Group, sigma: GroupElement, degree_cap: Optional[int] = None
) -> SplitVerdict:
    """
    deg Δ_{A/R} = (p-1)·d_min 이면 R 은 A 의 직합 인자입니다.

    Args:
        G: 군
        G_prime: 지수 p 정규부분군
        sigma: 잉여류 생성원
        degree_cap: 최소 차수 탐색 상한

    Returns:
        SplitVerdict: 판정과 트레이스 항등식 검사 결과
    """
    _check_index_p(G, G_prime, sigma)
    p = G.ring.field.p
    d_min, a = min_degree_noninvariant(G_prime, G, degree_cap)
    different = different_A_over_R(G, G_prime)
    delta = different.expand()

    trace = trace_over_quotient(a ** (p - 1), sigma, p)
    difference = sigma.act(a) - a
    sigma_a_minus_a_invariant = is_invariant(difference, G)
    trace_identity_holds = trace == -(difference ** (p - 1))
    lower_traces_vanish = all(
        trace_over_quotient(a ** k, sigma, p).is_zero() for k in range(p - 1)
    )
    try:
        quotient = divide_exact(trace, delta)
        in_ideal = is_invariant(quotient, G)
    except NotDivisibleError:
        quotient, in_ideal = None, False

    bound = (p - 1) * d_min
    if different.degree > bound:
        raise InternalConsistencyError(
            f"deg Δ_A/R={different.degree} 가 (p-1)·d_min={bound} 보다 큽니다."
        )
    scalar = None
    if different.degree == bound:
        value = quotient.constant_value() if quotient is not None else None
        if value is None or not value:
            raise InternalConsistencyError("분할 판정이지만 트레이스가 Δ_A/R 의 0 이 아닌 상수배가 아닙니다.")
        scalar = value
        relation = "="
    else:
        relation = "<"
    verdict = SplitVerdict(
        is_split=different.degree == bound,
        d_min=d_min,
        witness=a,
        deg_different=different.degree,
        witness_trace=trace,
        scalar=scalar,
        relation=relation,
        sigma_a_minus_a_invariant=sigma_a_minus_a_invariant,
        trace_identity_holds=trace_identity_holds,
        lower_traces_vanish=lower_traces_vanish,
        trace_in_different_ideal=in_ideal,
        different=different,
    )
    logger.info(
        f"분할 판정: split={verdict.is_split}, d_min={d_min}, deg Δ={different.degree}"
    )
    return verdict


def is_linear_orbit_witness(
    s: LinearForm, G_prime: Group, sigma: GroupElement, delta: Poly
) -> bool:
    """Trace((Π_{G'} s)^{p-1}) / Δ_{A/R} 가 0 이 아닌 상수인지 판정"""
    p = G_prime.ring.field.p
    trace = trace_over_quotient(orbit_product(G_prime, s) ** (p - 1), sigma, p)
    if trace.is_zero() or trace.degree() != delta.degree():
        return False
    try:
        quotient = divide_exact(trace, delta)
    except NotDivisibleError:
        return False
    value = quotient.constant_value()
    return value is not None and bool(value)


def coefficient_subfield_degree(G: Group) -> int:
    """생성원 성분들이 생성하는 부분체 GF(p^d) 의 d"""
    field = G.ring.field
    degrees = {
        field.degree_of(field.element(c))
        for g in G.generators
        for row in g.rows
        for c in row
    }
    return reduce(lambda a, b: a * b // gcd(a, b), degrees, 1)


def _fixed_subspace_lattice(G_prime: Group, stabilizer_order: int) -> list[tuple[Poly, ...]]:
    """K(U) 의 위수가 stabilizer_order 인 고정 부분공간 U 들"""
    ring = G_prime.ring
    start = tuple(ring.var(i) for i in range(ring.n))
    seen = {frozenset(f for f in start)}
    queue = deque([start])
    qualifying = []
    while queue:
        U = queue.popleft()
        fixing = [g for g in G_prime.elements if all(g.act(f) == f for f in U)]
        if len(fixing) == stabilizer_order:
            qualifying.append(U)
            continue
        if len(fixing) > stabilizer_order:
            continue
        for g in G_prime.elements:
            if g in fixing:
                continue
            child = rref_basis(ring, common_kernel(ring, [g], [f.terms for f in U]))
            key = frozenset(child)
            if child and key not in seen:
                seen.add(key)
                queue.append(child)
    return qualifying


def find_linear_orbit_witness(
    G: Group,
    G_prime: Group,
    sigma: GroupElement,
    d_min: Optional[int] = None,
    delta: Optional[DifferentCertificate] = None,
    full_field: bool = False,
    cap: int = DEFAULT_EXHAUSTION_CAP,
) -> OrbitWitnessResult:
    """
    Trace((Π_{G'} s)^{p-1}) 가 Δ_{A/R} 의 단원배가 되는 일차형식 s 를 찾습니다.

    궤도 크기가 d_min 인 s 만 후보가 되므로, 고정 부분공간 격자에서
    안정자 위수가 |G'|/d_min 인 부분공간의 점만 열거한다.
    σ 가 고정하는 s 는 제외한다.

    Raises:
        FieldTooLargeError: 후보 수가 cap 을 넘을 때
    """
    _check_index_p(G, G_prime, sigma)
    ring = G.ring
    field = ring.field
    if d_min is None:
        d_min, _ = min_degree_noninvariant(G_prime, G)
    if delta is None:
        delta = different_A_over_R(G, G_prime)
    delta_poly = delta.expand()

    if full_field:
        degree = field.k
        codes = list(range(field.q))
    else:
        degree = coefficient_subfield_degree(G)
        codes = field.subfield_codes(degree)
    allowed = set(codes)

    if G_prime.order % d_min != 0:
        return OrbitWitnessResult(None, 0, degree)
    stabilizer_order = G_prime.order // d_min

    lattice = _fixed_subspace_lattice(G_prime, stabilizer_order)
    checked = 0
    enumerated = 0
    tried: set[LinearForm] = set()
    for U in lattice:
        rows = [LinearForm.from_poly(f) for f in U]
        if all(sigma.apply_form(r) == r for r in rows):
            continue
        t = len(rows)
        for lead in range(t):
            tail = rows[lead + 1:]
            enumerated += len(codes) ** len(tail)
            if enumerated > cap:
                raise FieldTooLargeError(f"후보 일차형식 수가 상한 {cap} 를 넘습니다.")
            for coefficients in product(codes, repeat=len(tail)):
                s = rows[lead]
                for c, r in zip(coefficients, tail):
                    if c:
                        s = s + r.scale(field.element(c))
                if s in tried or any(c not in allowed for c in s.coeffs):
                    continue
                tried.add(s)
                if sigma.apply_form(s) == s:
                    continue
                if len(orbit(G_prime, s)) != d_min:
                    continue
                checked += 1
                if is_linear_orbit_witness(s, G_prime, sigma, delta_poly):
                    logger.info(f"선형 궤도곱 증인 발견: s={s}")
                    return OrbitWitnessResult(s, checked, degree)
    logger.info(f"선형 궤도곱 증인 없음 (검사 {checked} 개)")
    return OrbitWitnessResult(None, checked, degree)


def no_linear_orbit_witness(
    G: Group,
    G_prime: Group,
    sigma: GroupElement,
    full_field: bool = False,
    cap: int = DEFAULT_EXHAUSTION_CAP,
) -> bool:
    return find_linear_orbit_witness(G, G_prime, sigma, full_field=full_field, cap=cap).witness is None


def clear_caches():
    invariants.clear_caches()
    hyperplane_exponent.cache_clear()

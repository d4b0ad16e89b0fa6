"""
차수별 불변식 계산 모듈

S_d 위에서 (g - 1) 들의 공통 핵을 구해 불변 부분공간을 얻고,
이를 바탕으로 최소 차수 비불변원, 궤도곱, 트레이스, 최소 생성원 집합을 계산한다.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import (
    CertificationError,
    DegreeCapExceeded,
    FieldMismatchError,
    InternalConsistencyError,
    PreconditionError,
)
from .group import Group, GroupElement
from .linalg import Subspace, left_kernel, rref
from .poly import (
    LinearForm,
    MonomialImages,
    Poly,
    PolyRing,
    Terms,
    add_scaled,
    monomial_key,
    monomials_of_degree,
    mul_terms,
)

logger = logging.getLogger(__name__)


@dataclass
class GradedBasis:
    """차수 d -> (S^G)_d 의 기저"""

    by_degree: dict[int, tuple[Poly, ...]] = dataclass_field(default_factory=dict)

    def dimension(self, d: int) -> int:
        return len(self.by_degree.get(d, ()))


@dataclass
class GeneratorSet:
    """불변환의 동차 생성원 집합"""

    gens: list[Poly]
    degrees: list[int]
    certified_complete: bool
    quotient_dimension: Optional[int] = None
    degree_budget: int = 0


def rref_basis(ring: PolyRing, vectors: Sequence[Terms]) -> tuple[Poly, ...]:
    return tuple(Poly(ring, row) for row in rref(ring.field, vectors))


def common_kernel(
    ring: PolyRing, generators: Sequence[GroupElement], basis: Sequence[Terms]
) -> list[Terms]:
    """basis 가 생성하는 공간에서 모든 생성원의 (g - 1) 공통 핵"""
    field = ring.field
    minus_one = field.neg(1)
    current = list(basis)
    for g in generators:
        if not current:
            break
        substitution = g.substitution()
        images = []
        for v in current:
            image = substitution.apply(v)
            add_scaled(field, image, v, minus_one)
            images.append(image)
        kernel = []
        for coeffs in left_kernel(field, images):
            combination: Terms = {}
            for v, c in zip(current, coeffs):
                add_scaled(field, combination, v, c)
            if combination:
                kernel.append(combination)
        current = kernel
    return current


@lru_cache(maxsize=4096)
def _invariant_space_cached(G: Group, d: int) -> tuple[Poly, ...]:
    ring = G.ring
    basis = [{m: 1} for m in ring.monomials(d)]
    kernel = common_kernel(ring, G.generators, basis)
    result = rref_basis(ring, kernel)
    logger.debug(f"불변 부분공간: |G|={G.order}, d={d}, dim={len(result)}")
    return result


def invariant_space(G: Group, d: int, within: Optional[Sequence[Poly]] = None) -> tuple[Poly, ...]:
    """
    (S^G)_d 의 기약 사다리꼴 기저를 구합니다.

    Args:
        G: 군
        d: 차수
        within: 주어지면 이 다항식들이 생성하는 공간 안에서만 계산

    Returns:
        tuple: 피벗 내림차순, 선행계수 1 인 기저
    """
    if d < 0:
        return ()
    if within is None:
        return _invariant_space_cached(G, d)
    kernel = common_kernel(G.ring, G.generators, [f.terms for f in within])
    return rref_basis(G.ring, kernel)


def graded_basis(G: Group, max_degree: int) -> GradedBasis:
    return GradedBasis({d: invariant_space(G, d) for d in range(max_degree + 1)})


def is_invariant(f: Poly, G: Group) -> bool:
    return all(g.act(f) == f for g in G.generators)


def min_degree_noninvariant(
    G_prime: Group, G: Group, degree_cap: Optional[int] = None
) -> tuple[int, Poly]:
    """
    A_d ≠ R_d 인 최소 차수 d 와 정준 증인 a ∈ A_d \\ R_d 를 구합니다.

    증인은 A_d 의 기약 사다리꼴 기저를 R_d 로 소거했을 때 처음 남는 나머지를
    선행계수 1 로 맞춘 것이다.
    """
    if not G_prime.is_subgroup_of(G) or G_prime.order == G.order:
        raise PreconditionError("G' 는 G 의 진부분군이어야 합니다.")
    cap = degree_cap or G.order * G.ring.field.p
    for d in range(1, cap + 1):
        A_d = invariant_space(G_prime, d)
        R_d = invariant_space(G, d, within=A_d)
        if len(A_d) == len(R_d):
            continue
        span = Subspace(G.ring.field, G.ring.monomials(d))
        for r in R_d:
            span.add(r.terms)
        for a in A_d:
            remainder = span.reduce(a.terms)
            if remainder:
                witness = Poly(G.ring, remainder).monic()
                logger.info(f"최소 차수 비불변원: d={d}, a={witness}")
                return d, witness
        raise InternalConsistencyError("차원은 다르지만 비불변원을 찾지 못했습니다.")
    raise DegreeCapExceeded(f"차수 상한 {cap} 까지 A_d ≠ R_d 인 차수가 없습니다.")


def orbit(G_prime: Group, s: Union[Poly, LinearForm]) -> list:
    """서로 다른 궤도 원소 목록"""
    if isinstance(s, LinearForm):
        return sorted({g.apply_form(s) for g in G_prime.elements}, key=LinearForm.sort_key)
    seen = {}
    for g in G_prime.elements:
        image = g.act(s)
        seen.setdefault(image, None)
    return list(seen)


def orbit_product(G_prime: Group, s: Union[Poly, LinearForm]) -> Poly:
    """Π_{G'} s: 궤도의 서로 다른 원소들의 곱"""
    result = G_prime.ring.one
    for member in orbit(G_prime, s):
        result = result * (member.to_poly() if isinstance(member, LinearForm) else member)
    return result


def trace_over_quotient(
    a: Poly,
    sigma: GroupElement,
    p: Optional[int] = None,
    subgroup: Optional[Group] = None,
    group: Optional[Group] = None,
) -> Poly:
    """
    Σ_{i<p} σ^i(a)

    Args:
        a: G' 불변 다항식
        sigma: 잉여류 생성원
        p: 표수 (기본값은 체의 표수)
        subgroup: 주어지면 a 의 G' 불변성을 검사
        group: 주어지면 결과의 G 불변성을 검사
    """
    if a.ring != sigma.ring:
        raise FieldMismatchError("서로 다른 다항식환입니다.")
    p = p or a.ring.field.p
    if subgroup is not None and not is_invariant(a, subgroup):
        raise PreconditionError(f"G' 불변이 아닌 원소의 트레이스는 정의되지 않습니다: {a}")
    total = a
    current = a
    substitution = sigma.substitution()
    for _ in range(1, p):
        current = Poly(a.ring, substitution.apply(current.terms))
        total = total + current
    if group is not None and not is_invariant(total, group):
        raise InternalConsistencyError(f"트레이스가 G 불변이 아닙니다: {total}")
    return total


def _products_of_degree(gens: Sequence[Poly], d: int, ring: PolyRing) -> list[Terms]:
    """생성원들의 곱 중 전체 차수가 d 인 것 전부"""
    ordered = sorted(gens, key=lambda f: f.degree())
    degrees = [f.degree() for f in ordered]
    field = ring.field
    results: list[Terms] = []

    def extend(start: int, remaining: int, current: Terms):
        if remaining == 0:
            results.append(current)
            return
        for i in range(start, len(ordered)):
            if degrees[i] > remaining:
                break
            extend(i, remaining - degrees[i], mul_terms(field, current, ordered[i].terms))

    extend(0, d, {ring.zero_monomial: 1})
    return results


def quotient_dimension(gens: Sequence[Poly], ring: PolyRing) -> Optional[int]:
    """
    dim_k S/(gens) 를 계산합니다.

    일차 생성원은 피벗 변수를 대입해 제거하고, 남은 변수환에서
    차수별 힐베르트 함수를 Σ(d_i - 1) + 1 차까지 구합니다.
    그 차수에서도 0 이 아니면 유한 차원이 아니므로 None.
    """
    field = ring.field
    linear = [f for f in gens if f.degree() == 1]
    others = [f for f in gens if f.degree() > 1]

    pivot_of = {}
    for row in rref(field, [f.terms for f in linear]):
        pivot = max(row, key=monomial_key)
        pivot_of[pivot.index(1)] = row
    free = [i for i in range(ring.n) if i not in pivot_of]

    if not free:
        return 1
    if len(others) != len(free):
        return None

    images = []
    for i in range(ring.n):
        if i in pivot_of:
            row = pivot_of[i]
            unit = ring.unit_monomial(i)
            images.append({m: field.neg(c) for m, c in row.items() if m != unit})
        else:
            images.append({ring.unit_monomial(i): 1})
    substitution = MonomialImages(ring, images)
    reduced = []
    for f in others:
        terms = substitution.apply(f.terms)
        reduced.append(({tuple(m[i] for i in free): c for m, c in terms.items()}, f.degree()))

    r = len(free)
    top = sum(deg - 1 for _, deg in reduced) + 1
    total = 0
    for d in range(top + 1):
        span = Subspace(field, monomials_of_degree(r, d))
        for terms, deg in reduced:
            if deg > d:
                continue
            for shift in monomials_of_degree(r, d - deg):
                span.add({tuple(a + b for a, b in zip(m, shift)): c for m, c in terms.items()})
        h = len(monomials_of_degree(r, d)) - len(span)
        if h == 0:
            return total
        if d == top:
            return None
        total += h
    return None


@lru_cache(maxsize=512)
def minimal_generators(G: Group, degree_budget: Optional[int] = None) -> GeneratorSet:
    """
    차수 오름차순으로 최소 생성원 집합을 구합니다.

    각 차수 d 에서 낮은 차수 생성원들의 곱이 생성하는 공간을 넘어서는
    불변식을 생성원으로 추가한다. 생성원이 n 개이고 몫공간 차원이 |G| 이면 인증한다.
    """
    ring = G.ring
    budget = degree_budget or G.order
    gens: list[Poly] = []
    certified = False
    dimension = None
    for d in range(1, budget + 1):
        space = invariant_space(G, d)
        if not space:
            continue
        span = Subspace(ring.field, ring.monomials(d))
        if gens:
            for product in _products_of_degree(gens, d, ring):
                span.add(product)
        if len(span) < len(space):
            for v in space:
                if span.add(v.terms):
                    gens.append(v)
        if len(gens) > ring.n:
            logger.warning(f"생성원이 변수 수보다 많아 다항식환으로 인증할 수 없습니다 (|G|={G.order})")
            break
        if len(gens) == ring.n:
            dimension = quotient_dimension(gens, ring)
            if dimension == G.order:
                certified = True
                break

    if not certified:
        logger.warning(f"생성원 집합 미인증: |G|={G.order}, 차수 예산 {budget}")
    return GeneratorSet(
        gens=gens,
        degrees=[f.degree() for f in gens],
        certified_complete=certified,
        quotient_dimension=dimension,
        degree_budget=budget,
    )


def is_polynomial_ring(G: Group) -> bool:
    """인증된 생성원 집합이 있으면 S^G 는 다항식환이고 S 는 그 위에서 자유 가군"""
    return minimal_generators(G).certified_complete


def exponent_degrees_of_inertia_ring(G_in: Group) -> list[int]:
    gens = minimal_generators(G_in, G_in.order)
    if not gens.certified_complete:
        raise CertificationError(f"관성군 불변환 생성원을 인증하지 못했습니다 (|G_in|={G_in.order}).")
    return sorted(gens.degrees)


def clear_caches():
    """실행 간 계산 결과를 공유하지 않도록 캐시를 비웁니다."""
    _invariant_space_cached.cache_clear()
    minimal_generators.cache_clear()

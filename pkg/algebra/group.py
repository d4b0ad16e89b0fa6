"""
단위 상삼각 군 작용 모듈

군 원소는 행렬 행 rows[i] = g(x_i) 의 계수로 저장한다.
g(x_1) = x_1 이고 g(x_i) - x_i 는 x_1, ..., x_{i-1} 로만 이루어진다.
"""
import logging
from collections import deque
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import (
    FieldMismatchError,
    InternalConsistencyError,
    NotUnitriangularError,
    OrderCapExceeded,
    PreconditionError,
)
from .linalg import rank
from .poly import LinearForm, MonomialImages, Poly, PolyRing

logger = logging.getLogger(__name__)

# 기본 군 위수 상한
DEFAULT_ORDER_CAP = 4096

Rows = tuple[tuple[int, ...], ...]


class GroupElement:
    """변수 치환으로 주어지는 차수 보존 대수 자기동형사상"""

    __slots__ = ("ring", "rows", "_hash")

    def __init__(self, ring: PolyRing, rows: Rows):
        self.ring = ring
        self.rows = rows
        self._hash = hash(rows)

    @classmethod
    def identity(cls, ring: PolyRing) -> "GroupElement":
        n = ring.n
        return cls(ring, tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_images(cls, ring: PolyRing, images: Sequence[LinearForm]) -> "GroupElement":
        if len(images) != ring.n:
            raise FieldMismatchError(f"변수 {ring.n} 개의 상이 필요합니다.")
        return cls(ring, tuple(l.coeffs for l in images))

    @property
    def images(self) -> tuple[LinearForm, ...]:
        return tuple(LinearForm(self.ring, row) for row in self.rows)

    def _check(self, other: "GroupElement"):
        if other.ring != self.ring:
            raise FieldMismatchError("서로 다른 다항식환 위의 원소입니다.")

    def compose(self, other: "GroupElement") -> "GroupElement":
        """(self∘other)(x_i) = self(other(x_i))"""
        self._check(other)
        field = self.ring.field
        n = self.ring.n
        rows = []
        for h_row in other.rows:
            acc = [0] * n
            for j, c in enumerate(h_row):
                if c:
                    for col, v in enumerate(self.rows[j]):
                        if v:
                            acc[col] = field.add(acc[col], field.mul(c, v))
            rows.append(tuple(acc))
        return GroupElement(self.ring, tuple(rows))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return self.compose(other)

    def inverse(self) -> "GroupElement":
        """Gauss-Jordan 으로 행렬 역을 구합니다 (M_{g^-1} = M_g^{-1})."""
        field = self.ring.field
        n = self.ring.n
        aug = [list(row) + [1 if j == i else 0 for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot_row = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot_row is None:
                raise InternalConsistencyError("가역이 아닌 군 원소입니다.")
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
            inv = field.inv(aug[col][col])
            aug[col] = [field.mul(inv, v) for v in aug[col]]
            for r in range(n):
                c = aug[r][col]
                if r != col and c:
                    neg_c = field.neg(c)
                    aug[r] = [field.add(a, field.mul(neg_c, b)) for a, b in zip(aug[r], aug[col])]
        return GroupElement(self.ring, tuple(tuple(row[n:]) for row in aug))

    def power(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inverse().power(-k)
        result = GroupElement.identity(self.ring)
        for _ in range(k):
            result = self.compose(result)
        return result

    def is_identity(self) -> bool:
        return self == GroupElement.identity(self.ring)

    def differences(self) -> list[LinearForm]:
        """(g-1)x_i 목록"""
        return [
            LinearForm(self.ring, tuple(self.ring.field.sub(c, 1 if j == i else 0) for j, c in enumerate(row)))
            for i, row in enumerate(self.rows)
        ]

    def minus_identity_rank(self) -> int:
        return rank(self.ring.field, [d.to_poly().terms for d in self.differences() if not d.is_zero()])

    @property
    def beta(self) -> int:
        """β_g: (g-1)x_i 에 나타나는 가장 큰 변수 번호 (1 부터 셈, 항등원은 0)"""
        best = 0
        for d in self.differences():
            if not d.is_zero():
                best = max(best, d.pivot + 1)
        return best

    def apply_form(self, l: LinearForm) -> LinearForm:
        """g(Σ c_i x_i) = Σ c_i g(x_i)"""
        field = self.ring.field
        acc = [0] * self.ring.n
        for i, c in enumerate(l.coeffs):
            if c:
                for j, v in enumerate(self.rows[i]):
                    if v:
                        acc[j] = field.add(acc[j], field.mul(c, v))
        return LinearForm(self.ring, tuple(acc))

    def substitution(self) -> MonomialImages:
        return MonomialImages(self.ring, [l.to_poly().terms for l in self.images])

    def act(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise FieldMismatchError("서로 다른 다항식환입니다.")
        return Poly(self.ring, self.substitution().apply(f.terms))

    def fixes_all_but(self, index: int) -> bool:
        """index 이외의 모든 변수를 고정하는지 여부"""
        identity = GroupElement.identity(self.ring).rows
        return all(row == identity[i] for i, row in enumerate(self.rows) if i != index)

    def sort_key(self) -> Rows:
        return self.rows

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and other.rows == self.rows and other.ring == self.ring

    def __hash__(self) -> int:
        return self._hash

    def to_str(self, scalar_names: Optional[dict[int, str]] = None) -> str:
        moved = []
        for i, l in enumerate(self.images):
            if l != self.ring.variable_form(i):
                moved.append(f"{self.ring.names[i]} -> {l.to_str(scalar_names)}")
        return "; ".join(moved) if moved else "1"

    def __repr__(self) -> str:
        return f"GroupElement({self.to_str()})"


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    return g.compose(h)


def inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def act(g: GroupElement, f: Poly) -> Poly:
    return g.act(f)


def check_unitriangular(g: GroupElement, name: Optional[str] = None):
    """
    단위 상삼각 정규형을 검사합니다.

    Raises:
        NotUnitriangularError: 위반 행과 생성원 이름을 담아 발생
    """
    label = name or g.to_str()
    for i, row in enumerate(g.rows):
        if row[i] != 1 or any(row[j] for j in range(i + 1, len(row))):
            var = g.ring.names[i]
            if i == 0:
                rule = f"g{var} = {var} 이어야 합니다"
            else:
                lower = ", ".join(g.ring.names[:i])
                rule = f"g{var} - {var} 는 {lower} 로만 이루어져야 합니다"
            raise NotUnitriangularError(
                f"생성원 '{label}' 의 {i + 1} 번째 행({var})이 단위 상삼각 조건을 위반합니다: {rule}",
                generator=label,
                row=i + 1,
            )


@dataclass(frozen=True)
class TransvectionInfo:
    """전이(transvection) 메타데이터"""

    element: GroupElement
    beta: int
    line: LinearForm


def is_pseudo_reflection(g: GroupElement) -> bool:
    return g.minus_identity_rank() == 1


def transvection_info(g: GroupElement) -> TransvectionInfo:
    if g.is_identity():
        raise PreconditionError("항등원은 전이가 아닙니다.")
    if not is_pseudo_reflection(g):
        raise PreconditionError(f"의사반사가 아닙니다: {g.to_str()}")
    image = next(d for d in g.differences() if not d.is_zero())
    line = image.normalize()
    return TransvectionInfo(element=g, beta=line.pivot + 1, line=line)


def _closure(
    ring: PolyRing, generators: Sequence[GroupElement], limit: int
) -> Optional[list[GroupElement]]:
    """너비 우선 폐포. 원소 수가 limit 을 넘으면 None."""
    identity = GroupElement.identity(ring)
    elements = [identity]
    seen = {identity}
    for g in generators:
        if g not in seen:
            seen.add(g)
            elements.append(g)
    if len(elements) > limit:
        return None
    frontier = deque(elements)
    while frontier:
        b = frontier.popleft()
        for a in generators:
            c = a.compose(b)
            if c not in seen:
                seen.add(c)
                elements.append(c)
                frontier.append(c)
                if len(elements) > limit:
                    return None
    return elements


class Group:
    """생성원과 열거된 원소 전체를 갖는 유한 단위 상삼각 군"""

    def __init__(
        self,
        ring: PolyRing,
        generators: Sequence[GroupElement],
        elements: Sequence[GroupElement],
        labels: Optional[dict[GroupElement, str]] = None,
    ):
        self.ring = ring
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.element_set = frozenset(elements)
        self.labels = dict(labels or {})
        self._hash = hash(self.element_set)

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.element_set

    def contains(self, g: GroupElement) -> bool:
        return g in self.element_set

    def is_subgroup_of(self, other: "Group") -> bool:
        return self.element_set <= other.element_set

    @cached_property
    def pseudo_reflections(self) -> tuple[TransvectionInfo, ...]:
        infos = [
            transvection_info(g)
            for g in self.elements
            if not g.is_identity() and is_pseudo_reflection(g)
        ]
        return tuple(sorted(infos, key=lambda t: (t.beta, t.element.sort_key())))

    def lines(self) -> list[LinearForm]:
        """의사반사 직선들 (중복 제거, 정렬)"""
        return sorted({t.line for t in self.pseudo_reflections}, key=LinearForm.sort_key)

    def is_transvection_generated(self) -> bool:
        gens = [t.element for t in self.pseudo_reflections]
        closure = _closure(self.ring, gens, self.order)
        return closure is not None and len(closure) == self.order

    def label(self, g: GroupElement, scalar_names: Optional[dict[int, str]] = None) -> str:
        return self.labels.get(g) or g.to_str(scalar_names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Group) and other.ring == self.ring and other.element_set == self.element_set

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Group(order={self.order})"


def enumerate_group(
    generators: Sequence[GroupElement],
    ring: Optional[PolyRing] = None,
    order_cap: int = DEFAULT_ORDER_CAP,
    names: Optional[Sequence[str]] = None,
) -> Group:
    """
    생성원으로부터 군 전체를 너비 우선으로 열거합니다.

    Args:
        generators: 단위 상삼각 생성원 목록
        ring: 생성원이 없을 때 사용할 다항식환
        order_cap: 위수 상한
        names: 생성원 이름 (보고서 표시용)

    Returns:
        Group: 열거된 군
    """
    generators = list(generators)
    if ring is None:
        if not generators:
            raise PreconditionError("생성원이 없으면 다항식환을 지정해야 합니다.")
        ring = generators[0].ring
    for idx, g in enumerate(generators):
        if g.ring != ring:
            raise FieldMismatchError("생성원의 다항식환이 서로 다릅니다.")
        check_unitriangular(g, names[idx] if names else None)

    elements = _closure(ring, generators, order_cap)
    if elements is None:
        raise OrderCapExceeded(f"군 위수가 상한 {order_cap} 를 넘습니다.")

    order = len(elements)
    p = ring.field.p
    m = order
    while m % p == 0:
        m //= p
    if m != 1:
        raise InternalConsistencyError(f"군 위수 {order} 가 {p} 의 거듭제곱이 아닙니다.")

    labels = {}
    if names:
        for g, name in zip(generators, names):
            labels.setdefault(g, name)
    logger.debug(f"군 열거 완료: 생성원 {len(generators)} 개, 위수 {order}")
    return Group(ring, generators, elements, labels)


def group_from_elements(ring: PolyRing, elements: Iterable[GroupElement], labels=None) -> Group:
    """닫혀 있는 원소 집합으로부터 군을 만들고 탐욕적으로 생성원을 고릅니다."""
    elements = sorted(set(elements), key=GroupElement.sort_key)
    generators: list[GroupElement] = []
    current = {GroupElement.identity(ring)}
    for g in elements:
        if g not in current:
            generators.append(g)
            current = set(_closure(ring, generators, len(elements)) or elements)
    closure = _closure(ring, generators, len(elements))
    if closure is None or len(closure) != len(elements):
        raise InternalConsistencyError("원소 집합이 군을 이루지 않습니다.")
    return Group(ring, generators, closure, labels)


def beta_of_group(G: Group) -> int:
    if not G.pseudo_reflections:
        raise PreconditionError("의사반사가 없는 군에는 β 가 정의되지 않습니다.")
    return max(t.beta for t in G.pseudo_reflections)


def subgroup(G: Group, gens: Sequence[GroupElement]) -> Group:
    for g in gens:
        if g not in G:
            raise PreconditionError(f"생성원이 군에 속하지 않습니다: {g.to_str()}")
    H = enumerate_group(gens, ring=G.ring, order_cap=G.order)
    H.labels = {g: name for g, name in G.labels.items() if g in H}
    return H


def is_normal(N: Group, G: Group) -> bool:
    """생성원 기준으로 gNg^{-1} = N 을 확인합니다."""
    if not N.is_subgroup_of(G):
        return False
    for g in G.generators:
        g_inv = g.inverse()
        for h in N.generators:
            if g.compose(h).compose(g_inv) not in N:
                return False
    return True


@dataclass
class CompositionSeries:
    """G_0 ⊂ G_1 ⊂ ... ⊂ G_k 와 각 단계의 전이 증인"""

    chain: list[Group] = dataclass_field(default_factory=list)
    witnesses: list[GroupElement] = dataclass_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.witnesses)

    def betas(self) -> list[int]:
        return [beta_of_group(H) for H in self.chain[1:]]


def _candidate_order(G: Group) -> list[GroupElement]:
    """후보 전이를 (β, 이름 있는 생성원 순서, 정준 키) 로 정렬"""
    named = {g: idx for idx, g in enumerate(G.generators)}
    big = len(named)
    infos = sorted(
        G.pseudo_reflections,
        key=lambda t: (t.beta, named.get(t.element, big), t.element.sort_key()),
    )
    return [t.element for t in infos]


def composition_series(G: Group) -> CompositionSeries:
    """
    β 오름차순 탐욕 탐색과 백트래킹으로 합성열을 구합니다.

    Raises:
        PreconditionError: G 가 전이로 생성되지 않을 때
    """
    trivial = enumerate_group([], ring=G.ring)
    if G.is_trivial():
        return CompositionSeries(chain=[trivial], witnesses=[])
    if not G.is_transvection_generated():
        raise PreconditionError("군이 전이로 생성되지 않아 합성열을 만들 수 없습니다.")

    p = G.ring.field.p
    candidates = _candidate_order(G)
    dead: set[frozenset] = set()

    def extend(chain: list[Group], witnesses: list[GroupElement]) -> bool:
        current = chain[-1]
        if current.order == G.order:
            return True
        for t in candidates:
            if t in current:
                continue
            elements = _closure(G.ring, list(current.generators) + [t], p * current.order)
            if elements is None or len(elements) != p * current.order:
                continue
            key = frozenset(elements)
            if key in dead:
                continue
            nxt = Group(G.ring, list(current.generators) + [t], elements)
            if not is_normal(current, nxt):
                continue
            chain.append(nxt)
            witnesses.append(t)
            if extend(chain, witnesses):
                return True
            chain.pop()
            witnesses.pop()
            dead.add(key)
        return False

    chain, witnesses = [trivial], []
    if not extend(chain, witnesses):
        raise InternalConsistencyError("합성열을 찾지 못했습니다.")
    for H in chain:
        H.labels = {g: name for g, name in G.labels.items() if g in H}

    series = CompositionSeries(chain=chain, witnesses=witnesses)
    problems = validate_composition_series(series, G)
    if problems:
        raise InternalConsistencyError(f"합성열 검증 실패: {problems}")
    logger.info(f"합성열: 위수 {[H.order for H in chain]}, β {series.betas()}")
    return series


def validate_composition_series(series: CompositionSeries, G: Group) -> list[str]:
    """합성열 불변식을 탐색과 독립적으로 다시 확인하고 위반 목록을 반환합니다."""
    problems = []
    chain = series.chain
    p = G.ring.field.p
    if not chain or not chain[0].is_trivial():
        problems.append("첫 군이 자명군이 아닙니다.")
    if chain and chain[-1] != G:
        problems.append("마지막 군이 G 가 아닙니다.")
    if len(series.witnesses) != len(chain) - 1:
        problems.append("증인 수가 단계 수와 다릅니다.")
    for i in range(1, len(chain)):
        lower, upper = chain[i - 1], chain[i]
        if upper.order != p * lower.order:
            problems.append(f"{i} 단계: 위수 비가 {p} 가 아닙니다.")
        if not lower.is_subgroup_of(upper) or not is_normal(lower, upper):
            problems.append(f"{i} 단계: 정규부분군이 아닙니다.")
        if not upper.is_transvection_generated():
            problems.append(f"{i} 단계: 전이로 생성되지 않습니다.")
        if i <= len(series.witnesses):
            w = series.witnesses[i - 1]
            if w not in upper or w in lower or not is_pseudo_reflection(w):
                problems.append(f"{i} 단계: 증인이 G_i \\ G_(i-1) 의 전이가 아닙니다.")
        if i >= 2 and beta_of_group(upper) < beta_of_group(lower):
            problems.append(f"{i} 단계: β 가 감소합니다.")
    return problems


def last_step_data(G: Group, series: CompositionSeries) -> tuple[Group, GroupElement]:
    if G.is_trivial() or series.length == 0:
        raise PreconditionError("자명군에는 마지막 단계가 없습니다.")
    return series.chain[-2], series.witnesses[-1]


def subgroup_H(G_prime: Group, n: Optional[int] = None) -> Group:
    """x_n 이외의 변수를 모두 고정하는 G' 의 전이들로 생성된 부분군"""
    last = (n if n is not None else G_prime.ring.n) - 1
    gens = [t.element for t in G_prime.pseudo_reflections if t.element.fixes_all_but(last)]
    return subgroup(G_prime, gens)


def stabilizer_of_form(G_prime: Group, l: LinearForm) -> Group:
    elements = [g for g in G_prime.elements if g.apply_form(l) == l]
    return group_from_elements(G_prime.ring, elements)


def factor_outside_transvection(
    tau: GroupElement, sigma: GroupElement, G_prime: Group
) -> tuple[int, GroupElement]:
    """
    τ = σ^k ∘ g (1 ≤ k ≤ p-1, g ∈ H) 분해를 찾습니다.

    Raises:
        PreconditionError: 전제 조건 위반
        InternalConsistencyError: 분해가 존재하지 않을 때
    """
    if not is_pseudo_reflection(tau) or tau in G_prime:
        raise PreconditionError("τ 는 G' 밖의 전이여야 합니다.")
    beta_prime = beta_of_group(G_prime) if G_prime.pseudo_reflections else 0
    if sigma.beta <= beta_prime:
        raise PreconditionError(f"β_σ={sigma.beta} 가 β_G'={beta_prime} 보다 커야 합니다.")
    p = tau.ring.field.p
    last = tau.ring.n - 1
    for k in range(1, p):
        g = sigma.power(k).inverse().compose(tau)
        if g in G_prime and g.fixes_all_but(last):
            if sigma.power(k).compose(g) != tau:
                raise InternalConsistencyError("재합성 검증 실패")
            return k, g
    raise InternalConsistencyError(f"τ = σ^k g 분해를 찾지 못했습니다: {tau.to_str()}")

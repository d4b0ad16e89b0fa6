"""
희소 다변수 다항식 모듈

다항식은 단항식(지수 튜플) -> 계수 코드 사전으로 저장하며,
정렬은 전체 차수 다음 x_n 을 가장 큰 변수로 보는 사전식 순서를 따른다.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    DegreeCapExceeded,
    FieldMismatchError,
    NotDivisibleError,
    NotInvertibleError,
    NotPPolyError,
    PreconditionError,
)
from .field import FieldElement, FiniteField, ScalarLike

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]
Terms = dict[Monomial, int]

# 차수 상한 (이를 넘는 곱셈은 거부)
MAX_DEGREE = 10 ** 6


def monomial_key(m: Monomial) -> tuple:
    """단항식 정렬 키: 큰 키가 큰 단항식"""
    return (sum(m), m[::-1])


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple[Monomial, ...]:
    """n 변수 d 차 단항식 전체를 내림차순으로 반환합니다."""
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for last in range(d, -1, -1):
        for head in monomials_of_degree(n - 1, d - last):
            out.append(head + (last,))
    out.sort(key=monomial_key, reverse=True)
    return tuple(out)


def _add_into(field: FiniteField, acc: Terms, m: Monomial, c: int):
    prev = acc.get(m)
    if prev is None:
        if c:
            acc[m] = c
        return
    s = field.add(prev, c)
    if s:
        acc[m] = s
    else:
        del acc[m]


def mul_terms(field: FiniteField, a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    mul = field.mul
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            _add_into(field, out, tuple(x + y for x, y in zip(m1, m2)), mul(c1, c2))
    return out


def add_scaled(field: FiniteField, acc: Terms, other: Terms, c: int):
    """acc += c * other (제자리)"""
    if not c:
        return
    mul = field.mul
    for m, v in other.items():
        _add_into(field, acc, m, mul(c, v))


class PolyRing:
    """체 위의 n 변수 다항식환 S = k[x_1, ..., x_n]"""

    def __init__(self, field: FiniteField, names: Union[int, Sequence[str]]):
        if isinstance(names, int):
            names = [f"x{i + 1}" for i in range(names)]
        self.field = field
        self.names = tuple(names)
        self.n = len(self.names)
        if self.n < 1:
            raise PreconditionError("변수는 1개 이상이어야 합니다.")
        if len(set(self.names)) != self.n:
            raise PreconditionError(f"변수 이름이 중복됩니다: {list(self.names)}")
        self.key = (field.key, self.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{self.field!r}[{', '.join(self.names)}]"

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * self.n

    def unit_monomial(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.n))

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return Poly(self, {self.zero_monomial: 1})

    def var(self, i: int) -> "Poly":
        return Poly(self, {self.unit_monomial(i): 1})

    @property
    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.n)]

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PreconditionError(f"알 수 없는 변수입니다: {name}")

    def constant(self, c: ScalarLike) -> "Poly":
        code = self.field(c).code
        return Poly(self, {self.zero_monomial: code} if code else {})

    def poly(self, mapping: dict[Monomial, ScalarLike]) -> "Poly":
        terms: Terms = {}
        for m, c in mapping.items():
            if len(m) != self.n:
                raise FieldMismatchError(f"단항식 길이가 {self.n} 이 아닙니다: {m}")
            _add_into(self.field, terms, tuple(m), self.field(c).code)
        return Poly(self, terms)

    def linear_form(self, coeffs: Sequence[ScalarLike]) -> "LinearForm":
        if len(coeffs) != self.n:
            raise FieldMismatchError(f"선형형식 계수는 {self.n} 개여야 합니다.")
        return LinearForm(self, tuple(self.field(c).code for c in coeffs))

    def variable_form(self, i: int) -> "LinearForm":
        return LinearForm(self, tuple(1 if j == i else 0 for j in range(self.n)))

    def monomials(self, d: int) -> tuple[Monomial, ...]:
        return monomials_of_degree(self.n, d)


class MonomialImages:
    """변수 치환 x_i -> images[i] 에서 단항식의 상을 캐시합니다."""

    def __init__(self, ring: PolyRing, images: Sequence[Terms]):
        self.ring = ring
        self.images = list(images)
        zero = ring.zero_monomial
        self._cache: dict[Monomial, Terms] = {zero: {zero: 1}}

    def image(self, m: Monomial) -> Terms:
        cache = self._cache
        stack = []
        cur = m
        while cur not in cache:
            stack.append(cur)
            j = max(i for i, e in enumerate(cur) if e)
            cur = cur[:j] + (cur[j] - 1,) + cur[j + 1:]
        result = cache[cur]
        field = self.ring.field
        while stack:
            cur = stack.pop()
            j = max(i for i, e in enumerate(cur) if e)
            result = mul_terms(field, result, self.images[j])
            cache[cur] = result
        return result

    def apply(self, terms: Terms) -> Terms:
        out: Terms = {}
        field = self.ring.field
        for m, c in terms.items():
            add_scaled(field, out, self.image(m), c)
        return out


class Poly:
    """희소 다변수 다항식 (0 계수는 저장하지 않음)"""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # 강제 변환 ------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise FieldMismatchError(f"서로 다른 다항식환입니다: {self.ring!r} / {other.ring!r}")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.constant(other)
        raise TypeError(f"다항식과 연산할 수 없는 값입니다: {other!r}")

    # 산술 ------------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(self.ring.field, terms, m, c)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        neg = self.ring.field.neg
        return Poly(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if self.terms and other.terms and self.degree() + other.degree() > MAX_DEGREE:
            raise DegreeCapExceeded(f"차수가 상한 {MAX_DEGREE} 를 넘습니다.")
        return Poly(self.ring, mul_terms(self.ring.field, self.terms, other.terms))

    __rmul__ = __mul__

    def scale(self, c: ScalarLike) -> "Poly":
        code = self.ring.field(c).code
        if not code:
            return self.ring.zero
        mul = self.ring.field.mul
        return Poly(self.ring, {m: mul(code, v) for m, v in self.terms.items()})

    def frobenius(self) -> "Poly":
        """f^p = Σ c^p m^p (표수 p)"""
        field = self.ring.field
        p = field.p
        if self.terms and self.degree() * p > MAX_DEGREE:
            raise DegreeCapExceeded(f"차수가 상한 {MAX_DEGREE} 를 넘습니다.")
        return Poly(
            self.ring,
            {tuple(e * p for e in m): field.power(c, p) for m, c in self.terms.items()},
        )

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise PreconditionError(f"지수는 음이 아닌 정수여야 합니다: {e}")
        p = self.ring.field.p
        result = self.ring.one
        base = self
        while e:
            e, r = divmod(e, p)
            for _ in range(r):
                result = result * base
            if e:
                base = base.frobenius()
        return result

    # 조회 ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """전체 차수 (0 다항식은 -1)"""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_component(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise PreconditionError("0 다항식에는 선행항이 없습니다.")
        return max(self.terms, key=monomial_key)

    def leading_coefficient(self) -> FieldElement:
        return self.ring.field.element(self.terms[self.leading_monomial()])

    def monic(self) -> "Poly":
        lc = self.terms[self.leading_monomial()]
        return self.scale(self.ring.field.element(self.ring.field.inv(lc)))

    def coefficient(self, m: Monomial) -> FieldElement:
        return self.ring.field.element(self.terms.get(tuple(m), 0))

    def constant_value(self) -> Optional[FieldElement]:
        """상수 다항식이면 그 값, 아니면 None"""
        if not self.terms:
            return self.ring.field.zero
        if set(self.terms) == {self.ring.zero_monomial}:
            return self.ring.field.element(self.terms[self.ring.zero_monomial])
        return None

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda item: monomial_key(item[0]), reverse=True)

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """x_i 를 images[i] 로 치환합니다."""
        if len(images) != self.ring.n:
            raise FieldMismatchError("치환할 다항식 수가 변수 수와 다릅니다.")
        cache = MonomialImages(self.ring, [self._coerce(f).terms for f in images])
        return Poly(self.ring, cache.apply(self.terms))

    def is_proportional_to(self, other: "Poly") -> bool:
        """0 이 아닌 스칼라배 관계인지 판정"""
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return not self.terms and not other.terms
        return self.monic() == other.monic()

    # 비교/출력 ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElement)):
            other = self.ring.constant(other)
        return isinstance(other, Poly) and other.ring == self.ring and other.terms == self.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.key, frozenset(self.terms.items())))
        return self._hash

    def to_str(self, scalar_names: Optional[dict[int, str]] = None) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.names
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, m)
                if e
            )
            if scalar_names and c in scalar_names:
                coeff = scalar_names[c]
            else:
                coeff = field.format_code(c)
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.to_str()})"


class LinearForm:
    """일차형식 Σ c_i x_i (계수 코드 튜플)"""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def from_poly(cls, f: Poly) -> "LinearForm":
        coeffs = [0] * f.ring.n
        for m, c in f.terms.items():
            if sum(m) != 1:
                raise PreconditionError(f"일차 동차 다항식이 아닙니다: {f}")
            coeffs[m.index(1)] = c
        return cls(f.ring, tuple(coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def pivot(self) -> int:
        """0 이 아닌 계수를 가진 가장 큰 변수 번호 (0 부터 셈)"""
        for i in range(self.ring.n - 1, -1, -1):
            if self.coeffs[i]:
                return i
        raise PreconditionError("0 형식에는 피벗이 없습니다.")

    def coefficient(self, i: int) -> FieldElement:
        return self.ring.field.element(self.coeffs[i])

    def scale(self, c: ScalarLike) -> "LinearForm":
        code = self.ring.field(c).code
        mul = self.ring.field.mul
        return LinearForm(self.ring, tuple(mul(code, v) for v in self.coeffs))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        add = self.ring.field.add
        return LinearForm(self.ring, tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        sub = self.ring.field.sub
        return LinearForm(self.ring, tuple(sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def normalize(self) -> "LinearForm":
        lead = self.coeffs[self.pivot]
        return self.scale(self.ring.field.element(self.ring.field.inv(lead)))

    def to_poly(self) -> Poly:
        return Poly(
            self.ring,
            {self.ring.unit_monomial(i): c for i, c in enumerate(self.coeffs) if c},
        )

    def frobenius_poly(self, times: int) -> Poly:
        """l^{p^times} = Σ c_i^{p^times} x_i^{p^times}"""
        field = self.ring.field
        q = field.p ** times
        return Poly(
            self.ring,
            {
                tuple(q if j == i else 0 for j in range(self.ring.n)): field.power(c, q)
                for i, c in enumerate(self.coeffs)
                if c
            },
        )

    def sort_key(self) -> tuple:
        return (self.pivot, self.coeffs[::-1])

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearForm) and other.ring == self.ring and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((self.ring.key, self.coeffs))

    def to_str(self, scalar_names: Optional[dict[int, str]] = None) -> str:
        return self.to_poly().to_str(scalar_names)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LinearForm({self.to_str()})"


@dataclass(frozen=True)
class PPolyDecomposition:
    """f = Σ_e f_{p^e} · x_var^{p^e} 분해 (coefficients[e] = f_{p^e})"""

    ring: PolyRing
    var: int
    coefficients: dict[int, Poly] = dataclass_field(default_factory=dict)

    def reassemble(self) -> Poly:
        p = self.ring.field.p
        total = self.ring.zero
        for e, f in self.coefficients.items():
            total = total + f * (self.ring.var(self.var) ** (p ** e))
        return total


def homogeneous_component(f: Poly, d: int) -> Poly:
    return f.homogeneous_component(d)


def normalize_linear_form(l: LinearForm) -> LinearForm:
    """피벗 계수가 1 이 되도록 스칼라배합니다."""
    if l.is_zero():
        raise PreconditionError("0 형식은 정규화할 수 없습니다.")
    return l.normalize()


def divide_exact(f: Poly, g: Poly) -> Poly:
    """
    f = q·g 인 q 를 구합니다.

    선행항 소거로 나눗셈을 하고 나머지가 남으면 NotDivisibleError 를 던집니다.
    """
    if f.ring != g.ring:
        raise FieldMismatchError("서로 다른 다항식환입니다.")
    if g.is_zero():
        raise NotInvertibleError("0 다항식으로 나눌 수 없습니다.")
    field = f.ring.field
    lm = g.leading_monomial()
    inv = field.inv(g.terms[lm])
    rem = dict(f.terms)
    quotient: Terms = {}
    while rem:
        m = max(rem, key=monomial_key)
        shift = tuple(a - b for a, b in zip(m, lm))
        if min(shift) < 0:
            raise NotDivisibleError(f"나누어떨어지지 않습니다: ({f}) / ({g})")
        c = field.mul(rem[m], inv)
        quotient[shift] = c
        neg_c = field.neg(c)
        for gm, gc in g.terms.items():
            _add_into(field, rem, tuple(a + b for a, b in zip(shift, gm)), field.mul(neg_c, gc))
    return Poly(f.ring, quotient)


def _p_exponent(e: int, p: int) -> Optional[int]:
    """e = p^j 이면 j, 아니면 None"""
    if e < 1:
        return None
    j = 0
    while e % p == 0:
        e //= p
        j += 1
    return j if e == 1 else None


def p_poly_decompose(f: Poly, var: int) -> PPolyDecomposition:
    """
    x_var 에 대한 p-다항식 분해

    Args:
        f: 분해할 다항식
        var: 지정 변수 번호 (0 부터 셈)

    Returns:
        PPolyDecomposition: f_1, f_p, f_{p^2}, ... 를 담은 분해
    """
    p = f.ring.field.p
    grouped: dict[int, Terms] = {}
    for m, c in f.terms.items():
        j = _p_exponent(m[var], p)
        if j is None:
            raise NotPPolyError(
                f"{f.ring.names[var]} 의 지수 {m[var]} 가 {p} 의 거듭제곱이 아닙니다: {f}"
            )
        rest = m[:var] + (0,) + m[var + 1:]
        grouped.setdefault(j, {})[rest] = c
    return PPolyDecomposition(
        f.ring, var, {j: Poly(f.ring, terms) for j, terms in sorted(grouped.items())}
    )


def apply_sigma_minus_one_to_ppoly(dec: PPolyDecomposition, l: LinearForm) -> Poly:
    """
    x_var -> x_var + l 치환에 대한 (σ-1)f 를 p-다항식 분해로 계산합니다.

    (σ-1)f = Σ_e l^{p^e} f_{p^e}
    """
    if l.ring != dec.ring:
        raise FieldMismatchError("서로 다른 다항식환입니다.")
    if l.coeffs[dec.var]:
        raise PreconditionError(
            f"l 이 분해 변수 {dec.ring.names[dec.var]} 를 포함합니다: {l}"
        )
    total = dec.ring.zero
    for e, coefficient in dec.coefficients.items():
        total = total + l.frobenius_poly(e) * coefficient
    return total


def poly_from_forms(forms: Iterable[LinearForm], ring: PolyRing) -> Poly:
    """일차형식들의 곱"""
    result = ring.one
    for l in forms:
        result = result * l.to_poly()
    return result

"""
유한체 GF(p^k) 정확 산술 모듈

원소는 기약 모듈러스를 법으로 하는 GF(p) 위 계수 벡터이며,
내부적으로는 계수 벡터를 p 진법으로 접은 정수 코드(galois 정수 표현과 같음)로 다룬다.
체 연산은 galois.GF 가 담당하고, 다항식 커널의 스칼라 연산은 galois 로
한 번에 계산해 둔 지수/로그/Zech 표를 조회한다.
"""
import logging
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

import galois
import numpy as np

from .errors import (
    FieldMismatchError,
    IrreducibilityError,
    NotInvertibleError,
    PreconditionError,
)

logger = logging.getLogger(__name__)

# 기본 모듈러스 (Conway 다항식, 낮은 차수 계수부터)
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (5, 5): (3, 4, 0, 0, 0, 1),
    (5, 6): (2, 0, 1, 4, 1, 0, 1),
}

ScalarLike = Union["FieldElement", int, Sequence[int]]


def _modulus_poly(modulus: Sequence[int], p: int) -> galois.Poly:
    """낮은 차수부터의 계수를 galois.Poly (높은 차수부터) 로 변환"""
    return galois.Poly([int(c) for c in reversed(modulus)], field=galois.GF(p))


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """
    모듈러스의 GF(p) 위 기약성을 판정합니다.

    Args:
        modulus: 낮은 차수부터의 모닉 계수 벡터
        p: 소수

    Returns:
        bool: GF(p) 위에서 기약이면 True
    """
    return _modulus_poly(modulus, p).is_irreducible()


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    """사전식 순서로 첫 번째 모닉 기약 다항식을 찾습니다."""
    if k == 1:
        return (0, 1)
    poly = galois.irreducible_poly(p, k, method="min")
    return tuple(int(c) for c in reversed(poly.coeffs))


class FiniteField:
    """유한체 GF(p^k) (체 명세 p, k, modulus 와 galois 체 클래스를 보관)"""

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None):
        """
        유한체 초기화

        Args:
            p: 표수 (소수)
            k: 확대 차수 (1 이상)
            modulus: 낮은 차수부터의 모닉 기약 다항식 계수 (없으면 기본표 사용)
        """
        if not isinstance(p, int) or not galois.is_prime(p):
            raise PreconditionError(f"표수 p 는 소수여야 합니다: {p}")
        if not isinstance(k, int) or k < 1:
            raise PreconditionError(f"확대 차수 k 는 1 이상이어야 합니다: {k}")

        if modulus is None:
            modulus = DEFAULT_MODULI.get((p, k)) or first_irreducible(p, k)
        modulus = tuple(int(c) for c in modulus)

        if len(modulus) != k + 1:
            raise IrreducibilityError(f"모듈러스 길이는 k+1={k + 1} 이어야 합니다: {list(modulus)}")
        if any(c < 0 or c >= p for c in modulus):
            raise IrreducibilityError(f"모듈러스 계수는 0 이상 {p} 미만이어야 합니다: {list(modulus)}")
        if modulus[-1] != 1:
            raise IrreducibilityError(f"모듈러스는 모닉이어야 합니다: {list(modulus)}")
        if not is_irreducible(modulus, p):
            raise IrreducibilityError(f"모듈러스가 GF({p}) 위에서 기약이 아닙니다: {list(modulus)}")

        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p ** k
        self.key = (p, k, modulus)

        # 소체는 모듈러스와 무관하게 정수 잉여류 표현
        if k == 1:
            self.gf = galois.GF(p)
        else:
            self.gf = galois.GF(self.q, irreducible_poly=_modulus_poly(modulus, p))

        # vector() 는 높은 차수부터
        self._digits = [
            tuple(int(c) for c in reversed(row)) for row in self.gf.elements.vector()
        ]
        self._build_tables()
        logger.debug(f"GF({p}^{k}) 생성: modulus={list(modulus)}, 원시원 코드={self._primitive}")

    # ------------------------------------------------------------------
    # 표 구성
    # ------------------------------------------------------------------
    def _build_tables(self):
        q = self.q
        nonzero = self.gf.elements[1:]
        orders = np.asarray(nonzero.multiplicative_order())
        # 코드가 가장 작은 원시원
        self._primitive = int(np.flatnonzero(orders == q - 1)[0]) + 1

        powers = self.gf(self._primitive) ** np.arange(q - 1)
        exp = [int(x) for x in powers]
        log = [-1] * q
        for i, code in enumerate(exp):
            log[code] = i
        # 곱셈은 지수 합으로 처리하므로 지수표를 두 배 길이로 둔다
        self._exp = exp + exp
        self._log = log

        # Zech 로그: 1 + g^n = g^zech[n]
        shifted = powers + self.gf(1)
        self._zech = [log[int(v)] if int(v) else -1 for v in shifted]
        self._half = (q - 1) // 2 if self.p != 2 else 0

    # ------------------------------------------------------------------
    # 정수 코드 연산 (다항식 커널에서 직접 사용)
    # ------------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        n = self._log[b] - la
        if n < 0:
            n += self.q - 1
        z = self._zech[n]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self._exp[self._log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise NotInvertibleError("0 의 역원은 존재하지 않습니다.")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise NotInvertibleError("0 의 음수 거듭제곱은 정의되지 않습니다.")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, value: int) -> int:
        return value % self.p

    def digits(self, a: int) -> tuple[int, ...]:
        return self._digits[a]

    # ------------------------------------------------------------------
    # 원소 생성
    # ------------------------------------------------------------------
    def __call__(self, value: ScalarLike) -> "FieldElement":
        """정수, 계수 리스트 또는 원소로부터 체 원소를 만듭니다."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError("다른 체의 원소입니다.")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise PreconditionError(f"계수 벡터 길이는 k={self.k} 이하여야 합니다: {list(value)}")
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElement(self, int(self.gf.Vector(coeffs[::-1])))

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """모듈러스의 근 t"""
        if self.k == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    @property
    def primitive(self) -> "FieldElement":
        return FieldElement(self, self._primitive)

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.q):
            yield FieldElement(self, code)

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.power(a, self.p ** times)

    def degree_of(self, a: "FieldElement") -> int:
        """a 를 포함하는 가장 작은 부분체 GF(p^d) 의 d"""
        code = self(a).code
        for d in range(1, self.k + 1):
            if self.k % d == 0 and self.frobenius(code, d) == code:
                return d
        return self.k

    def subfield_codes(self, d: int) -> list[int]:
        """부분체 GF(p^d) 의 원소 코드 (0 포함)"""
        if self.k % d != 0:
            raise PreconditionError(f"GF({self.p}^{d}) 는 GF({self.p}^{self.k}) 의 부분체가 아닙니다.")
        step = (self.q - 1) // (self.p ** d - 1)
        return [0] + sorted(self._exp[j * step] for j in range(self.p ** d - 1))

    def subfield_generator(self, d: int) -> "FieldElement":
        """원시원을 (q-1)/(p^d-1) 제곱한 GF(p^d) 의 표준 생성원"""
        if self.k % d != 0:
            raise PreconditionError(f"GF({self.p}^{d}) 는 GF({self.p}^{self.k}) 의 부분체가 아닙니다.")
        return FieldElement(self, self._exp[(self.q - 1) // (self.p ** d - 1)])

    def format_code(self, code: int) -> str:
        """원소를 t 에 대한 다항식 문자열로 표시합니다."""
        if code < self.p:
            return str(code)
        digits = self._digits[code]
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = digits[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                base = "t" if i == 1 else f"t^{i}"
                terms.append(base if c == 1 else f"{c}*{base}")
        text = " + ".join(terms)
        return f"({text})" if len(terms) > 1 else text

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def get_field(p: int, k: int = 1, modulus: Optional[tuple[int, ...]] = None) -> FiniteField:
    """같은 명세의 체는 연산 표를 공유합니다."""
    return FiniteField(p, k, modulus)


class FieldElement:
    """GF(p^k) 의 불변 원소"""

    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"서로 다른 체의 원소입니다: {self.field} / {other.field}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        raise TypeError(f"체 원소와 연산할 수 없는 값입니다: {other!r}")

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.code == self.code
        )

    def __hash__(self) -> int:
        return hash((self.field.key, self.code))

    def to_str(self) -> str:
        return self.field.format_code(self.code)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"FieldElement({self.to_str()} in {self.field!r})"


def in_prime_subfield(a: FieldElement) -> bool:
    """a 가 GF(p) 의 상에 속하는지 판정"""
    return a.code < a.field.p


def in_subfield_generated_by(a: FieldElement, gen: FieldElement) -> bool:
    """
    a 가 GF(p)(gen) 에 속하는지 판정합니다.

    1, gen, ..., gen^{k-1} 의 GF(p) 생성 공간이 곧 GF(p)(gen) 이므로
    거듭제곱의 계수 벡터로 선형대수 판정을 합니다.
    """
    field = a.field
    if gen.field != field:
        raise FieldMismatchError("서로 다른 체의 원소입니다.")
    powers = [list(field.digits(field.power(gen.code, i))) for i in range(field.k)]
    prime_field = galois.GF(field.p)
    span = np.linalg.matrix_rank(prime_field(powers))
    return bool(np.linalg.matrix_rank(prime_field(powers + [list(a.coeffs)])) == span)

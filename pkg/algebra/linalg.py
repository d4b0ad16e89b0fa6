"""
체 위 선형대수

희소 행(단항식 -> 계수 코드)을 단항식 내림차순 열의 galois FieldArray 로 옮겨
row_reduce / null_space / matrix_rank 로 계산한다.
기약 행 사다리꼴에서 각 행의 피벗은 그 행의 가장 큰 단항식이다.
"""
import logging
from typing import Sequence

import galois
import numpy as np

from .field import FiniteField
from .poly import Monomial, Terms, monomial_key

logger = logging.getLogger(__name__)


def columns_of(vectors: Sequence[Terms]) -> list[Monomial]:
    support: set[Monomial] = set()
    for v in vectors:
        support.update(v)
    return sorted(support, key=monomial_key, reverse=True)


def to_matrix(field: FiniteField, vectors: Sequence[Terms], columns: Sequence[Monomial]) -> galois.FieldArray:
    index = {m: i for i, m in enumerate(columns)}
    data = np.zeros((len(vectors), len(columns)), dtype=np.int64)
    for r, v in enumerate(vectors):
        for m, c in v.items():
            data[r, index[m]] = c
    return field.gf(data)


def from_row(row, columns: Sequence[Monomial]) -> Terms:
    return {m: int(c) for m, c in zip(columns, row) if int(c)}


def rref(field: FiniteField, vectors: Sequence[Terms]) -> list[Terms]:
    """기약 행 사다리꼴의 0 이 아닌 행들 (피벗 내림차순)"""
    vectors = [v for v in vectors if v]
    if not vectors:
        return []
    columns = columns_of(vectors)
    reduced = to_matrix(field, vectors, columns).row_reduce()
    rows = [from_row(row, columns) for row in reduced]
    return [row for row in rows if row]


def rank(field: FiniteField, vectors: Sequence[Terms]) -> int:
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    return int(np.linalg.matrix_rank(to_matrix(field, vectors, columns_of(vectors))))


def left_kernel(field: FiniteField, vectors: Sequence[Terms]) -> list[list[int]]:
    """
    Σ c_i v_i = 0 인 계수 벡터 (c_i) 들의 기저

    행렬의 전치에 대한 null_space 로 구한다.
    """
    n = len(vectors)
    if n == 0:
        return []
    columns = columns_of(vectors)
    if not columns:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    kernel = to_matrix(field, vectors, columns).T.null_space()
    return [[int(c) for c in row] for row in kernel]


class Subspace:
    """고정된 단항식 열 위의 부분공간 (기약 행 사다리꼴 기저를 유지)"""

    def __init__(self, field: FiniteField, columns: Sequence[Monomial]):
        self.field = field
        self.columns = sorted(columns, key=monomial_key, reverse=True)
        self._index = {m: i for i, m in enumerate(self.columns)}
        self._rows: list[list[int]] = []
        self._basis = None
        self._pivots: list[int] = []

    def __len__(self) -> int:
        return len(self._rows)

    def _vector(self, terms: Terms) -> galois.FieldArray:
        data = np.zeros(len(self.columns), dtype=np.int64)
        for m, c in terms.items():
            data[self._index[m]] = c
        return self.field.gf(data)

    def reduce(self, terms: Terms) -> Terms:
        """피벗 성분을 모두 소거한 나머지 (v + 부분공간 안에서 유일)"""
        v = self._vector(terms)
        if self._pivots:
            v = v - v[self._pivots] @ self._basis
        return from_row(v, self.columns)

    def add(self, terms: Terms) -> bool:
        """행을 추가하고 독립이었으면 True"""
        remainder = self.reduce(terms)
        if not remainder:
            return False
        row = [0] * len(self.columns)
        for m, c in remainder.items():
            row[self._index[m]] = c
        self._basis = self.field.gf(self._rows + [row]).row_reduce()
        self._rows = [[int(c) for c in r] for r in self._basis]
        self._pivots = [int(np.flatnonzero(r)[0]) for r in self._rows]
        return True

    def contains(self, terms: Terms) -> bool:
        return not self.reduce(terms)

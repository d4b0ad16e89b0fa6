"""
분석 보고서 모델
"""
from typing import Literal, Optional

from pydantic import BaseModel, Field

# 기계 판독 형식 스키마 버전
SCHEMA_VERSION = "1.0"


class NamedElement(BaseModel):
    """이름 있는 생성원과 그 작용"""
    name: str
    action: str
    beta: int


class TransvectionRow(BaseModel):
    """의사반사 표의 한 행"""
    element: str
    label: Optional[str] = None
    beta: int
    line: str


class GroupSummary(BaseModel):
    """군 메타데이터"""
    order: int
    generators: list[NamedElement]
    pseudo_reflections: list[TransvectionRow]
    beta: Optional[int] = None
    is_transvection_generated: bool


class SeriesStep(BaseModel):
    """합성열의 한 단계"""
    index: int
    order: int
    beta: int
    witness: str


class SeriesSummary(BaseModel):
    """합성열"""
    orders: list[int]
    betas: list[int]
    steps: list[SeriesStep]


class GeneratorSummary(BaseModel):
    """불변환 생성원 집합"""
    polynomials: list[str]
    degrees: list[int]
    certified: bool
    quotient_dimension: Optional[int] = None
    degree_budget: int


class LineRamification(BaseModel):
    """분기 직선 하나의 관성군/분해군 정보"""
    line: str
    exponent: int
    inertia_order: int
    decomposition_order: int


class DifferentSummary(BaseModel):
    """차이 인증서"""
    ring_tag: str
    factored: str
    support: list[str]
    exponents: list[int]
    degree: int
    expanded: str
    g_invariant: Optional[bool] = None
    support_matches: Optional[bool] = None
    lines: list[LineRamification] = Field(default_factory=list)


class Ramif1Summary(BaseModel):
    """높이 1 분기 궤적"""
    s_over_r: list[str]
    s_over_a_over_r: list[str]
    a_over_r_generators: list[str]
    a_over_r_invariant: list[bool]


class SplitSummary(BaseModel):
    """분할 판정"""
    is_split: bool
    d_min: int
    witness: str
    deg_different: int
    witness_trace: str
    scalar: Optional[str] = None
    relation: str
    sigma_a_minus_a_invariant: bool
    trace_identity_holds: bool
    lower_traces_vanish: bool
    trace_in_different_ideal: bool


class SpecialFormulaSummary(BaseModel):
    """특수 공식 교차 검증"""
    status: Literal["agree", "mismatch", "not_applicable"]
    detail: Optional[str] = None
    sigma: Optional[str] = None
    h_order: Optional[int] = None
    closed_form: Optional[str] = None
    cert_a: Optional[str] = None
    cert_b: Optional[str] = None


class OrbitWitnessSummary(BaseModel):
    """선형형식 궤도곱 증인 판정"""
    status: Literal["found", "none", "uncertified", "skipped"]
    witness: Optional[str] = None
    candidates_checked: int = 0
    coefficient_degree: Optional[int] = None
    no_linear_orbit_witness: Optional[bool] = None
    detail: Optional[str] = None


class StageReport(BaseModel):
    """R = S^G ⊆ A = S^{G'} 한 단계"""
    index: int
    label: str
    order: int
    prime_order: int
    sigma: str
    r_generators: Optional[GeneratorSummary] = None
    a_generators: Optional[GeneratorSummary] = None
    different_s_over_r: Optional[DifferentSummary] = None
    different_s_over_a: Optional[DifferentSummary] = None
    different_a_over_r: Optional[DifferentSummary] = None
    ramif1: Optional[Ramif1Summary] = None
    split: Optional[SplitSummary] = None
    special_formula: Optional[SpecialFormulaSummary] = None
    orbit_witness: Optional[OrbitWitnessSummary] = None
    uncertified: list[str] = Field(default_factory=list)


class AnalysisReport(BaseModel):
    """분석 보고서"""
    schema_version: str = SCHEMA_VERSION
    name: Optional[str] = None
    field: str
    variables: list[str]
    group: GroupSummary
    invariant_generators: Optional[GeneratorSummary] = None
    different_s_over_r: Optional[DifferentSummary] = None
    series: Optional[SeriesSummary] = None
    stages: list[StageReport] = Field(default_factory=list)
    uncertified: list[str] = Field(default_factory=list)
    cap_exhausted: bool = False
    status: Literal["ok", "uncertified", "mismatch"] = "ok"


class VerificationCheck(BaseModel):
    """예제 검증 항목"""
    name: str
    fixture: str
    provenance: str
    passed: bool
    expected: Optional[str] = None
    actual: Optional[str] = None


class VerificationSummary(BaseModel):
    """예제 검증 결과"""
    primes: list[int]
    checks: list[VerificationCheck]
    passed: bool
    elapsed_seconds: float = 0.0

"""
분석 파이프라인 모듈
명세 -> 군 열거 -> 합성열 -> 단계별 불변식/차이/분할 판정 순으로 보고서를 만든다.
"""
import logging
from typing import Optional

from algebra.errors import (
    CapExceeded,
    CertificationError,
    DegreeCapExceeded,
    FieldTooLargeError,
    InternalConsistencyError,
    PreconditionError,
    SpecError,
)
from algebra.group import (
    Group,
    GroupElement,
    beta_of_group,
    composition_series,
    is_normal,
    is_pseudo_reflection,
)
from algebra.invariants import GeneratorSet, minimal_generators
from algebra.ramification import (
    DifferentCertificate,
    clear_caches,
    decomposition_group,
    different_A_over_R,
    different_over_invariants,
    different_special_formulas,
    find_linear_orbit_witness,
    inertia_group,
    ramif1,
    split_test,
)
from models.report import (
    AnalysisReport,
    DifferentSummary,
    GeneratorSummary,
    GroupSummary,
    LineRamification,
    NamedElement,
    OrbitWitnessSummary,
    Ramif1Summary,
    SeriesStep,
    SeriesSummary,
    SpecialFormulaSummary,
    SplitSummary,
    StageReport,
    TransvectionRow,
)
from models.spec_file import AnalysisOptions, GroupSpecFile
from utils import config
from utils.spec_parser import ResolvedSpec, resolve_spec

logger = logging.getLogger(__name__)


def merge_options(base: AnalysisOptions, override: Optional[AnalysisOptions]) -> AnalysisOptions:
    """명세의 [options] 위에 호출자 옵션을 덮어씁니다 (None 이 아닌 값만)."""
    if override is None:
        return base
    data = base.model_dump()
    changed = {k: v for k, v in override.model_dump(exclude_unset=True).items() if v is not None}
    # 새 G' 에는 명세의 잉여류 대표를 쓰지 않는다
    if "gprime" in changed and "coset" not in changed:
        data["coset"] = None
    data.update(changed)
    return AnalysisOptions.model_validate(data)


class InvariantAnalyzer:
    """한 명세에 대한 전체 분석을 수행하는 클래스"""

    def __init__(self, spec: GroupSpecFile, options: Optional[AnalysisOptions] = None):
        """
        분석기 초기화

        Args:
            spec: 검증된 군 명세
            options: 명세의 [options] 를 덮어쓸 옵션
        """
        self.spec = spec
        self.options = merge_options(spec.options, options)
        self.resolved: ResolvedSpec = resolve_spec(spec)
        self.names = self.resolved.scalar_names
        self.order_cap = self.options.order_cap or config.ORDER_CAP
        self.degree_cap = self.options.degree_cap or config.DEGREE_CAP
        self.generator_budget = self.options.degree_cap or config.GENERATOR_BUDGET
        self.exhaustion_cap = self.options.exhaustion_cap or config.EXHAUSTION_CAP
        self.uncertified: list[str] = []
        self.cap_exhausted = False
        self.mismatch = False

    # ------------------------------------------------------------------
    # 출력 변환
    # ------------------------------------------------------------------
    def _fmt(self, obj) -> str:
        return obj.to_str(self.names)

    def _scalar(self, value) -> Optional[str]:
        if value is None:
            return None
        return self.names.get(value.code) or value.to_str()

    def _generators(self, gens: GeneratorSet) -> GeneratorSummary:
        return GeneratorSummary(
            polynomials=[self._fmt(f) for f in gens.gens],
            degrees=gens.degrees,
            certified=gens.certified_complete,
            quotient_dimension=gens.quotient_dimension,
            degree_budget=gens.degree_budget,
        )

    def _different(self, cert: DifferentCertificate, G: Optional[Group] = None) -> DifferentSummary:
        lines = []
        if G is not None:
            for l, e in cert.factors:
                lines.append(LineRamification(
                    line=self._fmt(l),
                    exponent=e,
                    inertia_order=inertia_group(l, G).order,
                    decomposition_order=decomposition_group(l, G).order,
                ))
        return DifferentSummary(
            ring_tag=cert.ring_tag,
            factored=self._fmt(cert),
            support=[self._fmt(l) for l in cert.support()],
            exponents=[e for _, e in cert.factors],
            degree=cert.degree,
            expanded=self._fmt(cert.expand()),
            g_invariant=cert.g_invariant,
            support_matches=cert.support_matches,
            lines=lines,
        )

    def _element(self, G: Group, g: GroupElement) -> str:
        return G.label(g, self.names)

    # ------------------------------------------------------------------
    # 단계 계산
    # ------------------------------------------------------------------
    def _generator_set(self, G: Group, stage: StageReport, tag: str) -> GeneratorSummary:
        budget = min(G.order, self.generator_budget)
        gens = minimal_generators(G, budget)
        if not gens.certified_complete:
            stage.uncertified.append(f"{tag} 생성원 집합 미인증 (차수 예산 {budget})")
        return self._generators(gens)

    def _special_formula(self, G: Group, G_prime: Group, sigma: GroupElement) -> SpecialFormulaSummary:
        try:
            result = different_special_formulas(G, G_prime, sigma)
        except PreconditionError as e:
            return SpecialFormulaSummary(status="not_applicable", detail=str(e))
        except InternalConsistencyError as e:
            logger.error(f"특수 공식 불일치: {str(e)}")
            self.mismatch = True
            return SpecialFormulaSummary(status="mismatch", detail=str(e))
        return SpecialFormulaSummary(
            status="agree",
            sigma=self._element(G, result.sigma),
            h_order=result.h_order,
            closed_form=self._fmt(result.closed_form),
            cert_a=self._fmt(result.cert_a),
            cert_b=self._fmt(result.cert_b),
        )

    def _orbit_witness(
        self, G: Group, G_prime: Group, sigma: GroupElement, verdict, focus: bool, stage: StageReport
    ) -> OrbitWitnessSummary:
        if not focus:
            return OrbitWitnessSummary(status="skipped")
        if verdict is None:
            return OrbitWitnessSummary(status="skipped", detail="분할 판정이 없습니다.")
        if not verdict.is_split:
            # 분할되지 않으면 Trace((Π s)^{p-1}) 의 차수가 deg Δ 보다 크다
            return OrbitWitnessSummary(status="none", no_linear_orbit_witness=True, detail="분할되지 않음")
        try:
            result = find_linear_orbit_witness(
                G,
                G_prime,
                sigma,
                d_min=verdict.d_min,
                delta=verdict.different,
                full_field=self.options.full_field,
                cap=self.exhaustion_cap,
            )
        except FieldTooLargeError as e:
            logger.warning(f"선형형식 탐색 상한 초과: {str(e)}")
            self.cap_exhausted = True
            stage.uncertified.append(f"UNCERTIFIED 선형 궤도곱 증인: {str(e)}")
            return OrbitWitnessSummary(status="uncertified", detail=str(e))
        return OrbitWitnessSummary(
            status="found" if result.witness is not None else "none",
            witness=self._fmt(result.witness) if result.witness is not None else None,
            candidates_checked=result.candidates_checked,
            coefficient_degree=result.coefficient_degree,
            no_linear_orbit_witness=result.witness is None,
        )

    def analyze_stage(
        self, index: int, label: str, G: Group, G_prime: Group, sigma: GroupElement, focus: bool
    ) -> StageReport:
        """
        R = S^G ⊆ A = S^{G'} 한 단계를 분석합니다.

        Args:
            index: 단계 번호
            label: 표시용 이름
            G: 군
            G_prime: 지수 p 정규부분군
            sigma: G \\ G' 의 잉여류 대표
            focus: 선형 궤도곱 증인 탐색 대상 단계 여부

        Returns:
            StageReport: 단계 보고서
        """
        logger.info(f"단계 {label} 분석 시작: |G|={G.order}, |G'|={G_prime.order}")
        stage = StageReport(
            index=index,
            label=label,
            order=G.order,
            prime_order=G_prime.order,
            sigma=self._element(G, sigma),
        )
        stage.r_generators = self._generator_set(G, stage, "R = S^G")
        stage.a_generators = self._generator_set(G_prime, stage, "A = S^G'")

        try:
            stage.different_s_over_r = self._different(different_over_invariants(G, "S/R"), G)
            stage.different_s_over_a = self._different(different_over_invariants(G_prime, "S/A"), G_prime)
            stage.different_a_over_r = self._different(different_A_over_R(G, G_prime))
        except CertificationError as e:
            logger.warning(f"차이 계산 미인증: {str(e)}")
            stage.uncertified.append(f"UNCERTIFIED 차이: {str(e)}")

        report = ramif1(G, G_prime)
        stage.ramif1 = Ramif1Summary(
            s_over_r=[self._fmt(l) for l in report.s_over_r],
            s_over_a_over_r=[self._fmt(l) for l in report.s_over_a_over_r],
            a_over_r_generators=[self._fmt(f) for f in report.a_over_r_generators],
            a_over_r_invariant=list(report.a_over_r_invariant),
        )

        verdict = None
        try:
            verdict = split_test(G, G_prime, sigma, self.degree_cap)
        except (DegreeCapExceeded, CertificationError) as e:
            logger.warning(f"분할 판정 미인증: {str(e)}")
            self.cap_exhausted = self.cap_exhausted or isinstance(e, CapExceeded)
            stage.uncertified.append(f"UNCERTIFIED 분할 판정: {str(e)}")
        except InternalConsistencyError as e:
            logger.error(f"분할 판정 일관성 오류: {str(e)}")
            self.mismatch = True
            stage.uncertified.append(f"분할 판정 일관성 오류: {str(e)}")
        if verdict is not None:
            stage.split = SplitSummary(
                is_split=verdict.is_split,
                d_min=verdict.d_min,
                witness=self._fmt(verdict.witness),
                deg_different=verdict.deg_different,
                witness_trace=self._fmt(verdict.witness_trace),
                scalar=self._scalar(verdict.scalar),
                relation=verdict.relation,
                sigma_a_minus_a_invariant=verdict.sigma_a_minus_a_invariant,
                trace_identity_holds=verdict.trace_identity_holds,
                lower_traces_vanish=verdict.lower_traces_vanish,
                trace_in_different_ideal=verdict.trace_in_different_ideal,
            )

        stage.special_formula = self._special_formula(G, G_prime, sigma)
        stage.orbit_witness = self._orbit_witness(G, G_prime, sigma, verdict, focus, stage)
        self.uncertified.extend(f"[{label}] {note}" for note in stage.uncertified)
        logger.info(f"단계 {label} 분석 완료")
        return stage

    # ------------------------------------------------------------------
    # 전체 파이프라인
    # ------------------------------------------------------------------
    def _group_summary(self, G: Group) -> GroupSummary:
        generators = [
            NamedElement(name=name, action=self._fmt(g), beta=g.beta)
            for name, g in self.resolved.generators.items()
        ]
        rows = [
            TransvectionRow(
                element=self._fmt(t.element),
                label=G.labels.get(t.element),
                beta=t.beta,
                line=self._fmt(t.line),
            )
            for t in G.pseudo_reflections
        ]
        return GroupSummary(
            order=G.order,
            generators=generators,
            pseudo_reflections=rows,
            beta=beta_of_group(G) if G.pseudo_reflections else None,
            is_transvection_generated=G.is_trivial() or G.is_transvection_generated(),
        )

    def _explicit_stage(self, G: Group) -> tuple[Group, GroupElement]:
        """옵션으로 지정된 G' 와 잉여류 대표를 해석합니다."""
        G_prime = self.resolved.subgroup_from_words(G, self.options.gprime)
        p = G.ring.field.p
        if G.order != p * G_prime.order or not is_normal(G_prime, G):
            raise SpecError(
                f"G' (위수 {G_prime.order}) 는 G (위수 {G.order}) 의 지수 {p} 정규부분군이어야 합니다.",
                "options.gprime",
            )
        if self.options.coset:
            sigma = self.resolved.word(self.options.coset)
            if sigma in G_prime:
                raise SpecError("잉여류 대표가 G' 에 속합니다.", "options.coset")
            return G_prime, sigma
        outside = [g for g in G.elements if g not in G_prime]
        preferred = [g for g in outside if is_pseudo_reflection(g)] or outside
        return G_prime, min(preferred, key=lambda g: (g.beta, g.sort_key()))

    def run(self) -> AnalysisReport:
        """
        전체 분석을 실행합니다.

        Returns:
            AnalysisReport: 분석 보고서

        Raises:
            SpecError: G' 지정 오류
            OrderCapExceeded: 군 위수 상한 초과
        """
        clear_caches()
        resolved = self.resolved
        G = resolved.group(self.order_cap)
        logger.info(f"군 열거 완료: |G|={G.order}")

        report = AnalysisReport(
            name=self.spec.name,
            field=repr(resolved.field),
            variables=list(resolved.ring.names),
            group=self._group_summary(G),
        )

        budget = min(G.order, self.generator_budget)
        gens = minimal_generators(G, budget)
        report.invariant_generators = self._generators(gens)
        if not gens.certified_complete:
            self.uncertified.append(f"S^G 생성원 집합 미인증 (차수 예산 {budget})")
        try:
            report.different_s_over_r = self._different(different_over_invariants(G, "S/R"), G)
        except CertificationError as e:
            self.uncertified.append(f"UNCERTIFIED 차이: {str(e)}")

        series = None
        try:
            series = composition_series(G)
        except PreconditionError as e:
            logger.warning(f"합성열 없음: {str(e)}")
            self.uncertified.append(f"합성열 없음: {str(e)}")
        if series is not None:
            report.series = SeriesSummary(
                orders=[H.order for H in series.chain],
                betas=series.betas(),
                steps=[
                    SeriesStep(
                        index=i + 1,
                        order=series.chain[i + 1].order,
                        beta=beta_of_group(series.chain[i + 1]),
                        witness=self._element(G, w),
                    )
                    for i, w in enumerate(series.witnesses)
                ],
            )

        if self.options.gprime:
            G_prime, sigma = self._explicit_stage(G)
            report.stages.append(self.analyze_stage(1, "G / G'", G, G_prime, sigma, focus=True))
        elif series is not None:
            last = series.length
            for i in range(1, last + 1):
                stage = self.analyze_stage(
                    i,
                    f"G_{i} / G_{i - 1}",
                    series.chain[i],
                    series.chain[i - 1],
                    series.witnesses[i - 1],
                    focus=(i == last),
                )
                report.stages.append(stage)

        report.uncertified = list(self.uncertified)
        report.cap_exhausted = self.cap_exhausted
        if self.mismatch:
            report.status = "mismatch"
        elif self.uncertified:
            report.status = "uncertified"
        logger.info(f"분석 완료: 상태 {report.status}, 단계 {len(report.stages)} 개")
        return report


def analyze(spec: GroupSpecFile, options: Optional[AnalysisOptions] = None) -> AnalysisReport:
    """명세 하나를 분석해 보고서를 반환합니다."""
    return InvariantAnalyzer(spec, options).run()

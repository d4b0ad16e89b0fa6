"""
전이군 불변환 분석 배치 명령줄 도구

    uv run python cli.py analyze fixtures/shank_wehlau.toml
    uv run python cli.py verify-examples --p 2
    uv run python cli.py series fixtures/stong_p2.toml
    uv run python cli.py different fixtures/example_main_p2.toml --stage 4

종료 코드: 0 성공, 1 검증 불일치, 2 명세 오류, 3 계산 상한 초과 또는 미인증 결과
"""
import argparse
import logging
import sys
from typing import Optional, Sequence

from algebra.errors import (
    CapExceeded,
    CertificationError,
    InternalConsistencyError,
    PreconditionError,
    SpecError,
)
from algebra.group import composition_series
from algebra.ramification import different_A_over_R, different_over_invariants
from models.spec_file import AnalysisOptions
from utils import config
from utils.analyzer import analyze
from utils.example_verifier import verify_examples
from utils.report_renderer import FORMATS, ReportRenderer
from utils.spec_parser import load_spec, resolve_spec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_SPEC_ERROR = 2
EXIT_CAP_EXCEEDED = 3


def _split_words(value: str) -> list[str]:
    words = [w.strip() for w in value.split(",") if w.strip()]
    if not words:
        raise argparse.ArgumentTypeError("G' 생성원을 하나 이상 지정해야 합니다.")
    return words


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cli.py", description="유한 전이군 불변환, 차이, 분할 판정 계산"
    )
    parser.add_argument("--log-level", default=None, help="로그 레벨 (기본값: INVARIANTS_LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze_parser = subparsers.add_parser("analyze", help="군 명세 파일 전체 분석")
    analyze_parser.add_argument("spec", help="TOML 군 명세 파일")
    analyze_parser.add_argument("--format", choices=FORMATS, default="human")
    analyze_parser.add_argument("--degree-cap", type=int, default=None)
    analyze_parser.add_argument("--order-cap", type=int, default=None)
    analyze_parser.add_argument(
        "--gprime", type=_split_words, default=None, help="G' 생성원 (쉼표 구분, 예: tau 또는 rho,tau)"
    )

    verify_parser = subparsers.add_parser("verify-examples", help="번들 예제 검증")
    verify_parser.add_argument("--p", type=int, choices=(2, 3), action="append", default=None)
    verify_parser.add_argument("--format", choices=FORMATS, default="human")

    series_parser = subparsers.add_parser("series", help="합성열 출력")
    series_parser.add_argument("spec")
    series_parser.add_argument("--order-cap", type=int, default=None)

    different_parser = subparsers.add_parser("different", help="합성열 한 단계의 차이 출력")
    different_parser.add_argument("spec")
    different_parser.add_argument("--stage", type=int, default=None, help="단계 번호 (기본값: 마지막 단계)")
    different_parser.add_argument("--order-cap", type=int, default=None)
    return parser


def cmd_analyze(args) -> int:
    spec = load_spec(args.spec)
    options = AnalysisOptions(degree_cap=args.degree_cap, order_cap=args.order_cap, gprime=args.gprime)
    report = analyze(spec, options)
    sys.stdout.write(ReportRenderer().render(report, args.format))
    if report.status == "mismatch":
        return EXIT_MISMATCH
    if report.status == "uncertified" or report.cap_exhausted:
        return EXIT_CAP_EXCEEDED
    return EXIT_OK


def cmd_verify(args) -> int:
    summary = verify_examples(args.p or (2, 3))
    if args.format == "machine":
        sys.stdout.write(summary.model_dump_json(indent=2) + "\n")
    else:
        for check in summary.checks:
            mark = "PASS" if check.passed else "FAIL"
            print(f"[{mark}] {check.fixture:<20} {check.name}")
            if not check.passed:
                print(f"       provenance: {check.provenance}")
                print(f"       expected  : {check.expected}")
                print(f"       actual    : {check.actual}")
        passed = sum(c.passed for c in summary.checks)
        print(f"{passed}/{len(summary.checks)} checks passed in {summary.elapsed_seconds:.1f}s")
    return EXIT_OK if summary.passed else EXIT_MISMATCH


def cmd_series(args) -> int:
    resolved = resolve_spec(load_spec(args.spec))
    names = resolved.scalar_names
    G = resolved.group(args.order_cap)
    series = composition_series(G)
    print(f"|G| = {G.order}")
    print("orders = " + " < ".join(str(H.order) for H in series.chain))
    print("betas  = " + ", ".join(str(b) for b in series.betas()))
    for i, w in enumerate(series.witnesses, start=1):
        print(f"  G_{i}: order {series.chain[i].order:<6} beta={w.beta}  witness {G.label(w, names)}")
    return EXIT_OK


def cmd_different(args) -> int:
    resolved = resolve_spec(load_spec(args.spec))
    names = resolved.scalar_names
    G = resolved.group(args.order_cap)
    series = composition_series(G)
    if series.length == 0:
        print("Delta(S/R) = 1")
        return EXIT_OK
    stage = args.stage or series.length
    if not 1 <= stage <= series.length:
        raise SpecError(f"단계 번호는 1 부터 {series.length} 사이여야 합니다: {stage}", "--stage")
    upper, lower = series.chain[stage], series.chain[stage - 1]
    print(f"stage G_{stage} / G_{stage - 1} (|G|={upper.order}, |G'|={lower.order})")
    print(f"Delta(S/R) = {different_over_invariants(upper, 'S/R').to_str(names)}")
    print(f"Delta(S/A) = {different_over_invariants(lower, 'S/A').to_str(names)}")
    print(f"Delta(A/R) = {different_A_over_R(upper, lower).to_str(names)}")
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "verify-examples": cmd_verify,
    "series": cmd_series,
    "different": cmd_different,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config.configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except SpecError as e:
        logger.error(f"명세 오류: {str(e)}")
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_SPEC_ERROR
    except CapExceeded as e:
        logger.warning(f"계산 상한 초과: {str(e)}")
        print(f"UNCERTIFIED: {str(e)}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except CertificationError as e:
        logger.warning(f"인증 실패: {str(e)}")
        print(f"UNCERTIFIED: {str(e)}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except InternalConsistencyError as e:
        logger.error(f"내부 일관성 오류: {str(e)}", exc_info=True)
        print(f"mismatch: {str(e)}", file=sys.stderr)
        return EXIT_MISMATCH
    except PreconditionError as e:
        logger.error(f"전제 조건 위반: {str(e)}")
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_SPEC_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""
보고서 출력 모듈
human 형식은 jinja2 템플릿으로, machine 형식은 스키마 버전이 붙은 JSON 으로 만든다.
"""
import logging
import os
from typing import Optional

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from models.report import AnalysisReport
from utils import config

logger = logging.getLogger(__name__)

FORMATS = ("human", "machine")
TEMPLATE_NAME = "report.txt.j2"


class ReportRenderer:
    """분석 보고서를 텍스트로 렌더링하는 클래스"""

    def __init__(self, template_dir: Optional[str] = None):
        """
        렌더러 초기화

        Args:
            template_dir: 템플릿 디렉토리 (없으면 설정값 사용)
        """
        self.template_dir = template_dir or config.TEMPLATE_DIR
        if not os.path.exists(os.path.join(self.template_dir, TEMPLATE_NAME)):
            raise FileNotFoundError(f"템플릿 파일을 찾을 수 없습니다: {self.template_dir}/{TEMPLATE_NAME}")
        self.env = Environment(
            loader=FileSystemLoader(self.template_dir),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
            autoescape=False,
        )

    def render(self, report: AnalysisReport, fmt: str = "human") -> str:
        """
        보고서를 지정한 형식으로 렌더링합니다.

        Args:
            report: 분석 보고서
            fmt: "human" 또는 "machine"

        Returns:
            str: 렌더링된 텍스트
        """
        if fmt == "machine":
            return report.model_dump_json(indent=2) + "\n"
        if fmt == "human":
            template = self.env.get_template(TEMPLATE_NAME)
            return template.render(report=report)
        raise ValueError(f"알 수 없는 출력 형식입니다: {fmt} (가능한 값: {', '.join(FORMATS)})")


def emit(report: AnalysisReport, fmt: str = "human") -> str:
    return ReportRenderer().render(report, fmt)


def parse_report(text: str) -> AnalysisReport:
    """machine 형식 텍스트를 보고서로 되읽습니다."""
    return AnalysisReport.model_validate_json(text)

"""
환경 설정 모듈
.env 파일과 환경 변수에서 계산 상한과 경로를 읽는다.
"""
import logging
import os
from typing import Optional

from dotenv import load_dotenv

# 환경 변수 로드
load_dotenv()

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _int_env(name: str, default: Optional[int]) -> Optional[int]:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{name} 환경 변수는 정수여야 합니다: {value}")


ORDER_CAP = _int_env("INVARIANTS_ORDER_CAP", 4096)
# 설정하지 않으면 단계마다 |G|·p
DEGREE_CAP = _int_env("INVARIANTS_DEGREE_CAP", None)
GENERATOR_BUDGET = _int_env("INVARIANTS_GENERATOR_BUDGET", 12)
EXHAUSTION_CAP = _int_env("INVARIANTS_EXHAUSTION_CAP", 200_000)
FIXTURE_DIR = os.getenv("INVARIANTS_FIXTURE_DIR") or os.path.join(BASE_DIR, "fixtures")
TEMPLATE_DIR = os.getenv("INVARIANTS_TEMPLATE_DIR") or os.path.join(BASE_DIR, "templates")
LOG_LEVEL = (os.getenv("INVARIANTS_LOG_LEVEL") or "INFO").upper()


def configure_logging(level: Optional[str] = None):
    """진입점에서 한 번 호출합니다."""
    logging.basicConfig(
        level=getattr(logging, level or LOG_LEVEL, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

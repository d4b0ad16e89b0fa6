"""
불변환 분석 API 라우터
"""
import logging
import os
from typing import Literal, Optional

from fastapi import APIRouter, File, HTTPException, UploadFile
from fastapi.concurrency import run_in_threadpool
from fastapi.responses import Response
from pydantic import BaseModel, Field

from algebra.errors import CapExceeded, SpecError
from models.spec_file import AnalysisOptions, GroupSpecFile
from utils.analyzer import analyze
from utils.report_renderer import ReportRenderer
from utils.spec_parser import fixture_path, list_fixtures, load_fixture, parse_spec

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/analysis", tags=["분석"])


class AnalysisRequest(BaseModel):
    """분석 요청 모델"""
    spec: str = Field(..., min_length=1, description="TOML 군 명세")
    format: Literal["human", "machine"] = "machine"
    degree_cap: Optional[int] = Field(None, ge=1)
    order_cap: Optional[int] = Field(None, ge=1)
    gprime: Optional[list[str]] = None


class FixtureListResponse(BaseModel):
    """픽스처 목록 응답 모델"""
    fixtures: list[str]


def _render(spec: GroupSpecFile, options: AnalysisOptions, fmt: str):
    report = analyze(spec, options)
    text = ReportRenderer().render(report, fmt)
    if fmt == "machine":
        return Response(content=text, media_type="application/json")
    return {"text": text}


async def _run(spec_text: Optional[str], fmt: str, options: AnalysisOptions, spec: Optional[GroupSpecFile] = None):
    """
    명세를 분석하고 예외를 HTTP 상태 코드로 바꿉니다.

    SpecError → 400, CapExceeded → 422, 그 밖의 오류 → 500
    """
    try:
        if spec is None:
            spec = parse_spec(spec_text)
        return await run_in_threadpool(_render, spec, options, fmt)
    except SpecError as e:
        logger.warning(f"명세 오류: {str(e)}")
        raise HTTPException(status_code=400, detail=f"명세 오류: {str(e)}")
    except CapExceeded as e:
        logger.warning(f"계산 상한 초과: {str(e)}")
        raise HTTPException(status_code=422, detail=f"계산 상한을 초과했습니다: {str(e)}")
    except Exception as e:
        logger.error(f"분석 중 오류 발생: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail=f"분석 중 오류가 발생했습니다: {str(e)}")


@router.post("")
async def analyze_spec(request: AnalysisRequest):
    """
    군 명세 분석 API

    - format=machine 이면 스키마 버전이 붙은 JSON 보고서
    - format=human 이면 {"text": 보고서}
    """
    logger.info(f"분석 요청: format={request.format}")
    options = AnalysisOptions(
        degree_cap=request.degree_cap, order_cap=request.order_cap, gprime=request.gprime
    )
    return await _run(request.spec, request.format, options)


@router.post("/upload")
async def analyze_upload(
    file: UploadFile = File(...),
    format: Literal["human", "machine"] = "machine",
):
    """명세 파일 업로드 분석 API"""
    content = await file.read()
    try:
        text = content.decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="명세 파일은 UTF-8 텍스트여야 합니다.")
    logger.info(f"명세 파일 업로드: {file.filename} ({len(content)} bytes)")
    return await _run(text, format, AnalysisOptions())


@router.get("/fixtures", response_model=FixtureListResponse)
async def get_fixtures():
    """번들 픽스처 목록 조회"""
    return FixtureListResponse(fixtures=list_fixtures())


@router.get("/fixtures/{name}")
async def analyze_fixture(name: str, format: Literal["human", "machine"] = "machine"):
    """번들 픽스처 분석 API"""
    try:
        if not os.path.exists(fixture_path(name)):
            raise HTTPException(status_code=404, detail=f"픽스처를 찾을 수 없습니다: {name}")
        spec = load_fixture(name)
    except SpecError as e:
        raise HTTPException(status_code=400, detail=f"명세 오류: {str(e)}")
    return await _run(None, format, AnalysisOptions(), spec=spec)

"""
유한체 위 전이군 불변환 분석 서비스 - FastAPI 메인 애플리케이션
"""
import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from routers import analysis_router
from utils import config
from utils.spec_parser import list_fixtures

# 로깅 설정
config.configure_logging()
logger = logging.getLogger(__name__)

SERVICE_NAME = "Transvection Invariants"
VERSION = "1.0.0"

# FastAPI 앱 초기화
app = FastAPI(
    title="전이군 불변환 분석 시스템",
    description="GF(p^k) 위 다항식환에 작용하는 전이군의 불변환, 차이, 분할 판정을 정확 산술로 계산하는 시스템",
    version=VERSION
)


# 앱 시작 시 실행
@app.on_event("startup")
async def startup_event():
    """애플리케이션 시작 시 실행"""
    logger.info("애플리케이션 시작 중...")
    logger.info(f"군 위수 상한 {config.ORDER_CAP}, 생성원 차수 예산 {config.GENERATOR_BUDGET}")
    logger.info(f"번들 픽스처 {len(list_fixtures())} 개: {config.FIXTURE_DIR}")
    logger.info("애플리케이션 시작 완료")


# CORS 설정
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# 라우터 등록
app.include_router(analysis_router)


@app.get("/health")
async def health_check():
    """헬스 체크 엔드포인트"""
    return {
        "status": "healthy",
        "service": SERVICE_NAME,
        "version": VERSION
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("main:app", host="0.0.0.0", port=8000, reload=True)

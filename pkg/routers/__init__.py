"""
API 라우터 패키지
"""
from .analysis import router as analysis_router

__all__ = ["analysis_router"]

"""
명세 파일/보고서 모델 패키지
"""
from .spec_file import AnalysisOptions, FieldBlock, GroupSpecFile, SubfieldScalar
from .report import AnalysisReport, StageReport, VerificationCheck, VerificationSummary

__all__ = [
    "AnalysisOptions",
    "FieldBlock",
    "GroupSpecFile",
    "SubfieldScalar",
    "AnalysisReport",
    "StageReport",
    "VerificationCheck",
    "VerificationSummary",
]

"""
유틸리티 패키지
설정, 명세 파싱, 분석 파이프라인, 보고서 출력, 예제 검증
"""

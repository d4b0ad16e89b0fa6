"""
대수 연산 예외 정의
"""
from typing import Optional


class AlgebraError(Exception):
    """모든 대수 연산 예외의 기본 클래스"""


class FieldMismatchError(AlgebraError, ValueError):
    """서로 다른 체 또는 다항식환의 원소를 섞어 연산할 때 발생"""


class NotInvertibleError(AlgebraError, ZeroDivisionError):
    """0 으로 나누거나 0 의 역원을 요청할 때 발생"""


class IrreducibilityError(AlgebraError, ValueError):
    """모듈러스 다항식이 기약이 아니거나 형식이 잘못되었을 때 발생"""


class NotDivisibleError(AlgebraError, ArithmeticError):
    """다항식 나눗셈이 나누어떨어지지 않을 때 발생"""


class NotPPolyError(AlgebraError, ValueError):
    """지정한 변수가 p 거듭제곱이 아닌 지수로 나타날 때 발생"""


class NotUnitriangularError(AlgebraError, ValueError):
    """생성원이 단위 상삼각 정규형(gx_1 = x_1)을 만족하지 않을 때 발생"""

    def __init__(self, message: str, generator: Optional[str] = None, row: Optional[int] = None):
        super().__init__(message)
        self.generator = generator
        self.row = row


class PreconditionError(AlgebraError, ValueError):
    """연산의 전제 조건이 성립하지 않을 때 발생"""


class CertificationError(AlgebraError, RuntimeError):
    """불변환 생성원 집합을 인증하지 못했을 때 발생"""


class InternalConsistencyError(AlgebraError, RuntimeError):
    """이론적으로 불가능한 결과가 관찰되었을 때 발생 (구현 버그 신호)"""


class CapExceeded(AlgebraError, RuntimeError):
    """설정된 계산 상한을 넘었을 때 발생하는 예외의 기본 클래스"""


class OrderCapExceeded(CapExceeded):
    """군 열거가 위수 상한을 넘었을 때 발생"""


class DegreeCapExceeded(CapExceeded):
    """차수별 탐색이 차수 상한을 넘었을 때 발생"""


class FieldTooLargeError(CapExceeded):
    """선형형식 전수 탐색 후보 수가 상한을 넘었을 때 발생"""


class SpecError(AlgebraError, ValueError):
    """군 명세 파일 오류 (위치 정보 포함)"""

    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location

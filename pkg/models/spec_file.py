"""
군 명세 파일 모델
"""
from typing import Optional, Union

from pydantic import BaseModel, Field, StrictInt, StrictStr, model_validator


class FieldBlock(BaseModel):
    """[field] 블록"""
    p: int = Field(..., ge=2)
    k: int = Field(1, ge=1)
    modulus: Optional[list[int]] = None


class SubfieldScalar(BaseModel):
    """부분체 GF(p^d) 의 표준 생성원 거듭제곱 바인딩"""
    subfield_degree: int = Field(..., ge=1)
    power: int = 1


ScalarValue = Union[StrictInt, list[StrictInt], SubfieldScalar]
MatrixEntry = Union[StrictInt, list[StrictInt], StrictStr]


class AnalysisOptions(BaseModel):
    """[options] 블록"""
    degree_cap: Optional[int] = Field(None, ge=1)
    order_cap: Optional[int] = Field(None, ge=1)
    gprime: Optional[list[str]] = None
    coset: Optional[str] = None
    full_field: bool = False
    exhaustion_cap: Optional[int] = Field(None, ge=1)


class GroupSpecFile(BaseModel):
    """군 명세 파일 전체"""
    name: Optional[str] = None
    n: Optional[int] = Field(None, ge=1)
    variables: Optional[list[str]] = None
    field: FieldBlock
    scalars: dict[str, ScalarValue] = Field(default_factory=dict)
    generators: dict[str, list[list[MatrixEntry]]] = Field(default_factory=dict)
    options: AnalysisOptions = Field(default_factory=AnalysisOptions)

    @model_validator(mode="after")
    def fill_variables(self) -> "GroupSpecFile":
        if self.variables is None:
            if self.n is None:
                raise ValueError("variables 또는 n 중 하나는 지정해야 합니다.")
            self.variables = [f"x{i + 1}" for i in range(self.n)]
        elif self.n is not None and self.n != len(self.variables):
            raise ValueError(f"n={self.n} 과 변수 수 {len(self.variables)} 가 다릅니다.")
        self.n = len(self.variables)
        return self

"""
유한 전이군 불변식/분기 계산 패키지
"""
from .errors import (
    AlgebraError,
    CapExceeded,
    CertificationError,
    DegreeCapExceeded,
    FieldMismatchError,
    FieldTooLargeError,
    InternalConsistencyError,
    IrreducibilityError,
    NotDivisibleError,
    NotInvertibleError,
    NotPPolyError,
    NotUnitriangularError,
    OrderCapExceeded,
    PreconditionError,
    SpecError,
)
from .field import FieldElement, FiniteField, get_field
from .group import CompositionSeries, Group, GroupElement, composition_series, enumerate_group
from .poly import LinearForm, Poly, PolyRing

__all__ = [
    "AlgebraError",
    "CapExceeded",
    "CertificationError",
    "DegreeCapExceeded",
    "FieldMismatchError",
    "FieldTooLargeError",
    "InternalConsistencyError",
    "IrreducibilityError",
    "NotDivisibleError",
    "NotInvertibleError",
    "NotPPolyError",
    "NotUnitriangularError",
    "OrderCapExceeded",
    "PreconditionError",
    "SpecError",
    "FieldElement",
    "FiniteField",
    "get_field",
    "CompositionSeries",
    "Group",
    "GroupElement",
    "composition_series",
    "enumerate_group",
    "LinearForm",
    "Poly",
    "PolyRing",
]

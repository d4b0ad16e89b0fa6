"""
군 명세 파일 파서
TOML 텍스트를 읽어 검증된 GroupSpecFile 로 만들고, 체/다항식환/군 객체로 해석한다.
"""
import logging
import os
import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field as dataclass_field
from typing import Optional

from pydantic import ValidationError

from algebra.errors import (
    AlgebraError,
    IrreducibilityError,
    NotUnitriangularError,
    PreconditionError,
    SpecError,
)
from algebra.field import FieldElement, FiniteField, get_field
from algebra.group import (
    DEFAULT_ORDER_CAP,
    Group,
    GroupElement,
    check_unitriangular,
    enumerate_group,
    subgroup,
)
from algebra.poly import PolyRing
from models.spec_file import GroupSpecFile, MatrixEntry, SubfieldScalar
from utils import config

logger = logging.getLogger(__name__)

_WORD_PART = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(-?\d+))?\s*$")


@dataclass
class ResolvedSpec:
    """해석된 명세: 체, 다항식환, 이름 있는 스칼라와 생성원"""

    spec: GroupSpecFile
    field: FiniteField
    ring: PolyRing
    scalars: dict[str, FieldElement] = dataclass_field(default_factory=dict)
    generators: dict[str, GroupElement] = dataclass_field(default_factory=dict)

    @property
    def scalar_names(self) -> dict[int, str]:
        """출력용 스칼라 이름표 (소체 밖의 원소만)"""
        names: dict[int, str] = {}
        for name, value in self.scalars.items():
            if value.code >= self.field.p:
                names.setdefault(value.code, name)
        return names

    def word(self, text: str) -> GroupElement:
        """'sigma*tau' 는 σ∘τ, 'sigma^2' 는 σ∘σ"""
        result = GroupElement.identity(self.ring)
        if text.strip() in ("", "1"):
            return result
        for part in text.split("*"):
            match = _WORD_PART.match(part)
            if not match:
                raise SpecError(f"잘못된 원소 표기입니다: '{text}'", "options")
            name, exponent = match.group(1), int(match.group(2) or 1)
            if name not in self.generators:
                raise SpecError(f"알 수 없는 생성원입니다: '{name}'", "options")
            result = result.compose(self.generators[name].power(exponent))
        return result

    def group(self, order_cap: Optional[int] = None) -> Group:
        cap = order_cap or self.spec.options.order_cap or DEFAULT_ORDER_CAP
        names = list(self.generators)
        return enumerate_group(
            [self.generators[name] for name in names],
            ring=self.ring,
            order_cap=cap,
            names=names,
        )

    def subgroup_from_words(self, G: Group, words: list[str]) -> Group:
        elements = [self.word(w) for w in words]
        try:
            H = subgroup(G, elements)
        except PreconditionError as e:
            raise SpecError(str(e), "options.gprime")
        H.labels.update({self.word(w): w for w in words})
        return H


def _spec_error_from_validation(error: ValidationError) -> SpecError:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return SpecError(first["msg"], location or None)


def parse_spec_text(text: str) -> GroupSpecFile:
    """TOML 문법과 스키마만 검사합니다."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise SpecError(f"TOML 문법 오류: {e}")
    try:
        return GroupSpecFile.model_validate(data)
    except ValidationError as e:
        raise _spec_error_from_validation(e)


def _resolve_scalar(field: FiniteField, name: str, value) -> FieldElement:
    location = f"scalars.{name}"
    try:
        if isinstance(value, SubfieldScalar):
            return field.subfield_generator(value.subfield_degree) ** value.power
        return field(value)
    except AlgebraError as e:
        raise SpecError(str(e), location)


def _resolve_entry(
    field: FiniteField, scalars: dict[str, FieldElement], entry: MatrixEntry, location: str
) -> FieldElement:
    if isinstance(entry, str):
        text = entry.strip()
        negate = text.startswith("-")
        name = text.lstrip("-").strip()
        if name not in scalars:
            raise SpecError(f"정의되지 않은 스칼라입니다: '{name}'", location)
        value = scalars[name]
        return -value if negate else value
    try:
        return field(entry)
    except AlgebraError as e:
        raise SpecError(str(e), location)


def resolve_spec(spec: GroupSpecFile) -> ResolvedSpec:
    """
    검증된 명세를 대수 객체로 해석합니다.

    스칼라 바인딩을 먼저 해석한 뒤 생성원 행렬을 읽고 단위 상삼각 조건을 검사한다.

    Args:
        spec: 스키마 검증을 통과한 명세

    Returns:
        ResolvedSpec: 해석 결과

    Raises:
        SpecError: 모듈러스, 스칼라, 행렬 형태, 삼각 조건, 원소 표기 오류
    """
    block = spec.field
    try:
        modulus = tuple(block.modulus) if block.modulus is not None else None
        field = get_field(block.p, block.k, modulus)
    except IrreducibilityError as e:
        raise SpecError(str(e), "field.modulus")
    except PreconditionError as e:
        raise SpecError(str(e), "field")

    try:
        ring = PolyRing(field, spec.variables)
    except PreconditionError as e:
        raise SpecError(str(e), "variables")

    scalars = {name: _resolve_scalar(field, name, value) for name, value in spec.scalars.items()}

    n = ring.n
    generators: dict[str, GroupElement] = {}
    for name, rows in spec.generators.items():
        if len(rows) != n:
            raise SpecError(f"행이 {n} 개여야 합니다 (현재 {len(rows)} 개).", f"generators.{name}")
        codes = []
        for i, row in enumerate(rows):
            location = f"generators.{name}[{i + 1}]"
            if len(row) != n:
                raise SpecError(f"성분이 {n} 개여야 합니다 (현재 {len(row)} 개).", location)
            codes.append(tuple(_resolve_entry(field, scalars, e, location).code for e in row))
        g = GroupElement(ring, tuple(codes))
        try:
            check_unitriangular(g, name)
        except NotUnitriangularError as e:
            raise SpecError(str(e), f"generators.{name}[{e.row}]")
        generators[name] = g

    resolved = ResolvedSpec(spec=spec, field=field, ring=ring, scalars=scalars, generators=generators)
    options = spec.options
    for w in (options.gprime or []) + ([options.coset] if options.coset else []):
        resolved.word(w)
    return resolved


def parse_spec(text: str) -> GroupSpecFile:
    """
    명세 텍스트를 파싱하고 끝까지 검증합니다.

    Args:
        text: TOML 명세 텍스트

    Returns:
        GroupSpecFile: 검증된 명세

    Raises:
        SpecError: 위치 정보를 담은 진단
    """
    spec = parse_spec_text(text)
    resolve_spec(spec)
    logger.debug(f"명세 파싱 완료: {spec.name or '(이름 없음)'}, 생성원 {list(spec.generators)}")
    return spec


def load_spec(path: str) -> GroupSpecFile:
    if not os.path.exists(path):
        raise SpecError(f"명세 파일을 찾을 수 없습니다: {path}")
    with open(path, 'r', encoding='utf-8') as f:
        return parse_spec(f.read())


def fixture_path(name: str, fixture_dir: Optional[str] = None) -> str:
    directory = fixture_dir or config.FIXTURE_DIR
    filename = name if name.endswith(".toml") else f"{name}.toml"
    if os.path.basename(filename) != filename:
        raise SpecError(f"잘못된 픽스처 이름입니다: {name}")
    return os.path.join(directory, filename)


def list_fixtures(fixture_dir: Optional[str] = None) -> list[str]:
    directory = fixture_dir or config.FIXTURE_DIR
    if not os.path.isdir(directory):
        return []
    return sorted(f[:-5] for f in os.listdir(directory) if f.endswith(".toml"))


def load_fixture(name: str, fixture_dir: Optional[str] = None) -> GroupSpecFile:
    return load_spec(fixture_path(name, fixture_dir))

import math
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.utils.errors import ParseError

Knot = Tuple[float, float]

# 连续性标记
_CONTINUITY_TAGS = ('left', 'right', 'continuous')


def _finite(values, what: str):
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{what}包含非有限值: {v}")


class DistributionFile(BaseModel):
    """``{"atoms": [[value, mass], ...]}`` or ``{"samples": [v, ...]}``."""

    atoms: Optional[List[Knot]] = None
    samples: Optional[List[float]] = None

    @field_validator('atoms')
    @classmethod
    def check_atoms(cls, v):
        """
        Validates the atom list.

        Raises:
            ValueError: If the list is empty, a value is not finite or a mass is not positive.
        """
        if v is None:
            return v
        if not v:
            raise ValueError('原子列表不能为空')
        _finite([x for x, _ in v], '原子位置')
        _finite([m for _, m in v], '原子质量')
        if any(m <= 0 for _, m in v):
            raise ValueError('原子质量必须为正数')
        return v

    @field_validator('samples')
    @classmethod
    def check_samples(cls, v):
        if v is None:
            return v
        if not v:
            raise ValueError('样本列表不能为空')
        _finite(v, '样本')
        return v

    @model_validator(mode='after')
    def exactly_one(self):
        if (self.atoms is None) == (self.samples is None):
            raise ValueError('必须且只能提供 atoms 或 samples 之一')
        return self


class PairFile(BaseModel):
    """Knot lists of u0 and v0 with optional continuity tags."""

    u0: List[Knot] = Field(..., min_length=1)
    v0: List[Knot] = Field(..., min_length=2)
    u0_continuity: str = 'left'
    v0_continuity: str = 'right'

    @field_validator('u0', 'v0')
    @classmethod
    def check_knots(cls, v):
        _finite([c for knot in v for c in knot], '节点')
        return v

    @field_validator('u0_continuity', 'v0_continuity')
    @classmethod
    def check_tag(cls, v):
        if v not in _CONTINUITY_TAGS:
            raise ValueError(f"无效的连续性标记: {v}，有效值为: {list(_CONTINUITY_TAGS)}")
        return v


class PerceptionFile(BaseModel):
    """Either explicit knots of f0 on [0, 1] or an S-Gini parameter ``rho``."""

    knots: Optional[List[Knot]] = None
    rho: Optional[float] = None
    label: str = 'custom'

    @model_validator(mode='after')
    def exactly_one(self):
        if (self.knots is None) == (self.rho is None):
            raise ValueError('必须且只能提供 knots 或 rho 之一')
        return self


class UtilityFile(BaseModel):
    knots: List[Knot] = Field(..., min_length=1)

    @field_validator('knots')
    @classmethod
    def check_knots(cls, v):
        _finite([c for knot in v for c in knot], '节点')
        return v


class VectorFile(BaseModel):
    entries: List[float] = Field(..., min_length=1)

    @field_validator('entries')
    @classmethod
    def check_entries(cls, v):
        _finite(v, '向量')
        return v


# 文件类型 -> 模型，供 validate_json_structure 使用
FILE_MODELS = {
    'distribution': DistributionFile,
    'pair': PairFile,
    'perception': PerceptionFile,
    'utility': UtilityFile,
    'vector': VectorFile,
}


def parse_model(json_data: Dict[str, Any], kind: str, source: str = '<input>') -> BaseModel:
    """
    Parse a decoded JSON document into the model for ``kind``.

    Raises:
        ParseError: Unknown kind or the document does not match the model.
    """
    try:
        model = FILE_MODELS[kind]
    except KeyError:
        raise ParseError(f"unknown file kind {kind!r}")
    if not isinstance(json_data, dict):
        raise ParseError(f"{source}: expected a JSON object, got {type(json_data).__name__}")
    try:
        return model(**json_data)
    except ValidationError as e:
        raise ParseError(f"{source}: {e}") from e


def validate_json_structure(json_data: Dict[str, Any], kind: str = 'distribution') -> Dict[str, Any]:
    """
    Validates a JSON document against the file model for ``kind``.

    Args:
        json_data (Dict[str, Any]): The decoded JSON document.
        kind (str): One of ``distribution``, ``pair``, ``perception``, ``utility``, ``vector``.

    Returns:
        Dict[str, Any]: ``{"is_valid": True, "error": None}`` on success,
                        ``{"is_valid": False, "error": "error message"}`` otherwise.
    """
    try:
        parse_model(json_data, kind)
        return {"is_valid": True, "error": None}
    except ParseError as e:
        return {"is_valid": False, "error": str(e)}

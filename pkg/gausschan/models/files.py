from __future__ import annotations

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

Matrix = List[List[float]]

SCHEMA_VERSION = "1"


def _check_shape(name: str, value: Matrix, dim: int) -> None:
    if len(value) != dim or any(len(row) != dim for row in value):
        shape = (len(value), len(value[0]) if value else 0)
        raise ValueError(f"{name} must be {dim}x{dim}, got {shape[0]}x{shape[1]}")


class ChannelFile(BaseModel):
    """On-disk form of a Gaussian channel ``(x, y)`` on ``n`` modes."""

    schema_version: Literal["1"] = SCHEMA_VERSION
    n: int = Field(ge=1)
    x: Matrix
    y: Matrix
    label: Optional[str] = None

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_shapes(self) -> "ChannelFile":
        for name in ("x", "y"):
            _check_shape(name, getattr(self, name), 2 * self.n)
        return self


class GeneratorFile(BaseModel):
    """On-disk form of a semigroup generator ``(a, b, h)``."""

    schema_version: Literal["1"] = SCHEMA_VERSION
    n: int = Field(ge=1)
    a: Matrix
    b: Matrix
    h: Matrix
    label: Optional[str] = None

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_shapes(self) -> "GeneratorFile":
        for name in ("a", "b", "h"):
            _check_shape(name, getattr(self, name), 2 * self.n)
        return self

from __future__ import annotations

from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from .files import Matrix

Certificate = Union[bool, int, float, str, List[float], None]


class MatrixPayload(BaseModel):
    """A real matrix, or a complex one split into real and imaginary parts."""

    re: Matrix
    im: Optional[Matrix] = None

    model_config = ConfigDict(extra="forbid")


class Verdict(BaseModel):
    """One check outcome with the numbers that certify it."""

    name: str
    value: Union[bool, str, None]
    certificates: Dict[str, Certificate] = Field(default_factory=dict)

    model_config = ConfigDict(extra="forbid")


class Report(BaseModel):
    label: Optional[str] = None
    source: str
    command: str
    tolerance: float
    verdicts: List[Verdict] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    matrices: Dict[str, MatrixPayload] = Field(default_factory=dict)

    model_config = ConfigDict(extra="forbid")

    def verdict(self, name: str) -> Optional[Verdict]:
        for item in self.verdicts:
            if item.name == name:
                return item
        return None

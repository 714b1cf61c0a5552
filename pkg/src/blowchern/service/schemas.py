"""Request and response models of the HTTP service.

Field order in these models fixes the key order of every JSON payload,
so identical requests produce identical documents (up to the timing
field, which reports wall-clock milliseconds).
"""

from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..blowup import VerificationReport

FORMULAS = ("porteous", "oldrec", "main", "difflp", "simlem", "newnormal")

FormulaName = Literal[
    "porteous", "oldrec", "main", "difflp", "simlem", "newnormal"
]


class ReportModel(BaseModel):
    """One verification outcome; serialized with the key 'pass'."""

    model_config = ConfigDict(populate_by_name=True)

    check: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = Field(alias="pass")
    residual: str = "0"
    elapsed_ms: int = 0

    @classmethod
    def from_report(cls, report: VerificationReport) -> "ReportModel":
        return cls.model_validate(report.to_json_dict())

    def to_report(self) -> VerificationReport:
        return VerificationReport(
            check=self.check,
            parameters=dict(self.parameters),
            passed=self.passed,
            residual=self.residual,
            elapsed_ms=self.elapsed_ms,
        )


class HealthResponse(BaseModel):
    status: Literal["ok"]
    version: str


class VerifyRequest(BaseModel):
    max_codim: int = 6
    max_rank: Optional[int] = None


class VerifyResponse(BaseModel):
    max_codim: int
    max_rank: int
    all_pass: bool
    reports: List[ReportModel]


class ComputeRequest(BaseModel):
    scenario: Dict[str, Any]


class ComputeResponse(BaseModel):
    label: str
    ambient_dim: int
    codim: int
    y_part: str
    x_part: str
    pushforward: str
    restriction: str
    chi: str
    euler: ReportModel


class ExpandRequest(BaseModel):
    formula: FormulaName
    codim: int
    excess: int = 0
    max_degree: Optional[int] = None


class ExpandResponse(BaseModel):
    formula: FormulaName
    codim: int
    excess: int
    max_degree: int
    lines: List[str]

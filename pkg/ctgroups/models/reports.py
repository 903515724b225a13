"""Pydantic models for check results and the machine-readable CLI reports."""

from typing import Literal, Optional

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    name: str = Field(..., description="Which property was checked, e.g. 'CT2' or 'square'.")
    subject: str = Field(..., description="Vertex, edge or pair the check is about.")
    passed: bool
    detail: str = ""


class CheckReport(BaseModel):
    checks: list[CheckResult] = []

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, subject: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CheckResult(name=name, subject=subject, passed=passed, detail=detail))
        return passed

    def failures(self, name: str | None = None) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed and (name is None or c.name == name)]


# ---------------------------------------------------------------------------
# CLI documents
# ---------------------------------------------------------------------------

class SpanningSummary(BaseModel):
    base: str
    tree: list[str]
    extra: list[str]
    cycles: list[str]


class ReportHeader(BaseModel):
    tool: str
    version: str
    command: str
    field: str
    diagram_hash: str
    spanning: SpanningSummary
    seed: Optional[int] = None


class PhiValue(BaseModel):
    edge: str
    eps: int
    r: int


class ClassEntry(BaseModel):
    key: str
    phi: list[PhiValue]
    orientable: bool
    canonical_pointing: list[str]


class ClassTotals(BaseModel):
    classes: int
    orientable: int


class ClassificationReport(BaseModel):
    header: ReportHeader
    classes: list[ClassEntry]
    totals: ClassTotals


class TorusSummary(BaseModel):
    vertex: str
    order: int
    consistent: bool
    diagonal: bool
    per_edge: dict[str, int]


class OrientationSummary(BaseModel):
    orientable_phi: bool
    found: bool
    convention: Literal["forward", "reversed"] = "forward"
    signs: dict[str, Literal["+", "-"]] = {}
    certificate_orders: dict[str, int] = {}

    @property
    def agrees(self) -> bool:
        """Under the forward convention an orientation exists exactly when Phi has no omega part."""
        if self.convention != "forward":
            return True
        return self.found == self.orientable_phi


class VerifyReport(BaseModel):
    header: ReportHeader
    pointing: list[str]
    phi_key: str
    ct_axioms: CheckReport
    tori: list[TorusSummary]
    orientation: OrientationSummary

    @property
    def ok(self) -> bool:
        return self.ct_axioms.ok and all(t.consistent for t in self.tori) and self.orientation.agrees


class OracleMismatch(BaseModel):
    kind: Literal["pointing", "matrix"]
    delta1: list[str]
    delta2: list[str]
    expected_same: bool
    found_witness: bool


class OracleReport(BaseModel):
    header: ReportHeader
    pairs_checked: int
    same_pairs: int
    cross_pairs: int
    matrix_pairs_checked: int
    mismatches: list[OracleMismatch] = []

    @property
    def ok(self) -> bool:
        return not self.mismatches


class CompletionReport(BaseModel):
    header: ReportHeader
    kind: Literal["spherical", "affine", "none"]
    available: bool
    target: Optional[str] = None
    squares: Optional[CheckReport] = None
    evaluation: Optional[CheckReport] = None
    message: str = ""

    @property
    def ok(self) -> bool:
        reports = [r for r in (self.squares, self.evaluation) if r is not None]
        return all(r.ok for r in reports)

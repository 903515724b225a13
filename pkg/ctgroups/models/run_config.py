"""Pydantic model for one CLI run."""

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

from ctgroups.core.config import settings
from ctgroups.core.errors import FieldTooSmallError
from ctgroups.core.field import parse_field_spec

Command = Literal["classify", "verify", "oracle", "complete", "emit"]


class RunConfig(BaseModel):
    command: Command
    field: str = Field(..., description="Field as 'p^m'.")
    diagram: str = Field(..., description="Path to a diagram file.")
    pointing: Optional[str] = Field(None, description="Path to a pointing file; trivial pointing when absent.")
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    out: Optional[str] = None
    base: Optional[str] = Field(None, description="Base vertex of the spanning tree.")
    convention: Literal["forward", "reversed"] = "forward"

    @field_validator("field")
    @classmethod
    def _supported_field(cls, v: str) -> str:
        ctx = parse_field_spec(v)
        if ctx.order < 4:
            raise FieldTooSmallError(ctx.order, f"field {v}")
        return ctx.spec

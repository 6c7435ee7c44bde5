"""Pydantic request/response models for the HTTP service.

Rationals travel as strings ("p", "-p", "p/q"); coefficients as decimal
strings so arbitrary-precision values survive any JSON consumer.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

from ..rational import parse_rational

Series = Literal["A", "D"]
CharObject = Literal["psp-std", "psp-verma", "product", "std", "vacuum", "para"]
CheckName = Literal[
    "corollary", "psp", "verma", "para", "para-examples", "minsum", "level-one", "all"
]


def _validate_rational(value: str) -> str:
    parse_rational(value)
    return value


class DatumRequest(BaseModel):
    series: Series
    rank: int = Field(ge=2)


class OrbitEntry(BaseModel):
    a: list[int]
    halfnorm: str
    size: int


class DatumResponse(BaseModel):
    series: Series
    rank: int
    rk_g: int
    j_node: int
    nu: list[int]
    mu: list[str]
    gram0: list[list[str]]
    gamma: list[str]
    orbits: list[OrbitEntry]


class CharRequest(BaseModel):
    series: Series
    rank: int = Field(ge=2)
    k0: int = Field(default=1, ge=0)
    kj: int = Field(default=0, ge=0)
    object: CharObject
    qmax: str
    method: Literal["formula", "enumerate"] = "formula"
    track_colors: bool = False

    @field_validator("qmax")
    @classmethod
    def _qmax_rational(cls, value: str) -> str:
        return _validate_rational(value)


class SeriesTerm(BaseModel):
    q: str
    y: list[str]
    c: str


class SeriesMeta(BaseModel):
    series: Series
    rank: int
    k0: int
    kj: int
    object: str
    qmax: str
    denominator: int


class SeriesResponse(BaseModel):
    meta: SeriesMeta
    terms: list[SeriesTerm]


class EnumerateRequest(BaseModel):
    series: Series
    rank: int = Field(ge=2)
    k0: int = Field(default=1, ge=0)
    kj: int = Field(default=0, ge=0)
    kind: Literal["standard", "verma"] = "standard"
    cap: Optional[int] = Field(default=None, ge=0)
    qmax: str

    @field_validator("qmax")
    @classmethod
    def _qmax_rational(cls, value: str) -> str:
        return _validate_rational(value)


class VerifyRequest(BaseModel):
    check: CheckName
    series: Optional[Series] = None
    rank: Optional[int] = Field(default=None, ge=2)
    k0: Optional[int] = Field(default=None, ge=0)
    kj: Optional[int] = Field(default=None, ge=0)
    qmax: Optional[str] = None
    seed: int = 42
    trials: int = Field(default=500, ge=1)
    all_roots: bool = False

    @field_validator("qmax")
    @classmethod
    def _qmax_rational(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            _validate_rational(value)
        return value


class WitnessModel(BaseModel):
    q: str
    y: list[str]
    lhs: str
    rhs: str


class ReportModel(BaseModel):
    check: str
    parameters: dict
    status: Literal["pass", "fail", "insufficient-precision"]
    witness: Optional[WitnessModel] = None
    terms_compared: int
    elapsed_seconds: float


class VerifyResponse(BaseModel):
    reports: list[ReportModel]
    overall: Literal["pass", "fail", "insufficient-precision"]

"""Pydantic models for reports and run configuration."""

from fractions import Fraction
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator

SCHEMA_VERSION = "1.0"


def _parse_half(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not gradings")
    if isinstance(value, Fraction):
        parsed = value
    elif isinstance(value, int):
        parsed = Fraction(value)
    elif isinstance(value, str):
        parsed = Fraction(value.strip())
    elif isinstance(value, float):
        parsed = Fraction(value).limit_denominator(2)
    else:
        raise ValueError(f"cannot read {value!r} as a half-integer")
    if (parsed * 2).denominator != 1:
        raise ValueError(f"{value!r} is not a half-integer")
    return parsed


def _dump_half(value: Fraction) -> int | str:
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


# Exact half-integers; halves serialize as the string "p/2".
Half = Annotated[Fraction, PlainValidator(_parse_half), PlainSerializer(_dump_half, return_type=int | str)]


class DiagramDocument(BaseModel):
    n: int
    o_rows: list[int]
    x_rows: list[int]
    name: str | None = None


class Window(BaseModel):
    """Alexander range and Maslov-minus-twice-Alexander band range of a computation."""

    model_config = ConfigDict(frozen=True)

    a_min: Half
    a_max: Half
    band_min: int
    band_max: int

    def contains(self, m: int, a: Fraction) -> bool:
        return self.a_min <= a <= self.a_max and self.band_min <= m - 2 * a <= self.band_max


class BigradingRow(BaseModel):
    m: int
    a: Half
    rank: int
    torsion: list[int] = Field(default_factory=list)


class ActionRow(BaseModel):
    m: int
    a: Half
    which: Literal["U", "v"]
    rank: int


class HomologyTable(BaseModel):
    variant: str
    ring: Literal["mod2", "integers"] = "mod2"
    window: Window
    rows: list[BigradingRow] = Field(default_factory=list)
    actions: list[ActionRow] = Field(default_factory=list)

    def rank_at(self, m: int, a: Fraction | int) -> int:
        for row in self.rows:
            if row.m == m and row.a == a:
                return row.rank
        return 0

    def as_dict(self) -> dict[tuple[int, Fraction], int]:
        return {(row.m, row.a): row.rank for row in self.rows if row.rank}


class Violation(BaseModel):
    suite: str
    generator: str
    detail: str


class VerificationReport(BaseModel):
    suite: str
    diagrams: list[str] = Field(default_factory=list)
    checked: int = 0
    violations: list[Violation] = Field(default_factory=list)
    metadata: dict[str, str] = Field(default_factory=dict)
    tables: list[HomologyTable] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class TorsionPiece(BaseModel):
    m: int
    a: Half
    length: int


class UModuleDecomposition(BaseModel):
    tower: tuple[int, Half] | None
    torsion: list[TorsionPiece] = Field(default_factory=list)


class InvariantsReport(BaseModel):
    tau: int
    tau_plus: int
    tau_plus_u: int
    rho: int


class Del1Entry(BaseModel):
    m: int
    a: Half
    matrix: list[list[int]]


class Del1Report(BaseModel):
    gh_minus: list[Del1Entry] = Field(default_factory=list)
    gh_hat: list[Del1Entry] = Field(default_factory=list)
    homology: list[BigradingRow] = Field(default_factory=list)
    image: list[BigradingRow] = Field(default_factory=list)
    image_u_torsion: bool = True
    squares_to_zero: bool = True
    identically_zero: bool = True
    max_u_power_on_image: int | None = None
    max_u_power_on_tower: int | None = None


class SpectralRow(BaseModel):
    m: int
    a: Half
    p: int
    dim: int


class SpectralPage(BaseModel):
    r: int | Literal["infinity"]
    dims: list[SpectralRow] = Field(default_factory=list)
    collapsed_at: int | None = None


class Report(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str
    diagram: DiagramDocument | None = None
    settings: dict[str, Any] = Field(default_factory=dict)
    tables: list[HomologyTable] = Field(default_factory=list)
    violations: list[Violation] = Field(default_factory=list)
    decomposition: UModuleDecomposition | None = None
    invariants: InvariantsReport | None = None
    del1: Del1Report | None = None
    spectral: list[SpectralPage] = Field(default_factory=list)
    reports: list[VerificationReport] = Field(default_factory=list)
    extra: dict[str, Any] = Field(default_factory=dict)


class RunConfig(BaseModel):
    command: Literal["homology", "ghl", "invariants", "spectral", "verify", "moves", "skein", "library"]
    knot: str | None = None
    variant: str = "gc_minus"
    ring: Literal["mod2", "integers"] = "mod2"
    window_margin: int | None = None
    v_depth: int | None = None
    r_max: int = 4
    suite: str | None = None
    n: int | None = None
    exhaustive: bool = False
    samples: int | None = None
    seed: int = 0
    threads: int = 1
    output_format: Literal["table", "json"] = "table"
    move: str | None = None
    location: int | None = None
    column: int | None = None
    output: str | None = None

"""Request and response models for the HTTP service (and the CLI behind it)."""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from ..dynamics import PstParams
from ..errors import ValidationError
from ..model import ModelParams


class ParamsSpec(BaseModel):
    """Exactly one parameter mode: explicit p1..p4, or p1 plus a root choice.

    The root choice fixes p2/p1 to 3 + 2 sqrt 2 ('plus') or 3 - 2 sqrt 2
    ('minus') and implies p3 = p2, p4 = p1.
    """

    p: Optional[Tuple[float, float, float, float]] = None
    p1: Optional[float] = None
    root: Optional[Literal["plus", "minus"]] = None

    @model_validator(mode="after")
    def _one_mode(self):
        explicit = self.p is not None
        pst = self.p1 is not None or self.root is not None
        if explicit and pst:
            raise ValueError("give either explicit parameters p or (p1, root), not both")
        if not explicit and not pst:
            raise ValueError("parameters required: either p or (p1, root)")
        if pst and (self.p1 is None or self.root is None):
            raise ValueError("transfer mode needs both p1 and root")
        return self

    @property
    def is_pst(self) -> bool:
        return self.p is None

    def pst_params(self) -> PstParams:
        if not self.is_pst:
            raise ValidationError("explicit parameters given where the transfer mode is required")
        return PstParams.from_root(self.p1, self.root)

    def model_params(self, n: int) -> ModelParams:
        if self.is_pst:
            return self.pst_params().model(n)
        return ModelParams(n, *self.p)


class SpectrumRequest(BaseModel):
    n: int = Field(ge=0)
    params: ParamsSpec


class SpectrumRow(BaseModel):
    s: int
    t: int
    x: float


class SpectrumResponse(BaseModel):
    n: int
    rows: List[SpectrumRow]


class CouplingsRequest(BaseModel):
    n: int = Field(ge=0)
    params: ParamsSpec


class CouplingsRow(BaseModel):
    i: int
    j: int
    I: float
    J: float
    B: float


class CouplingsResponse(BaseModel):
    n: int
    rows: List[CouplingsRow]


class EvolveRequest(BaseModel):
    n: int = Field(ge=0)
    params: ParamsSpec
    from_site: Tuple[int, int] = Field(alias="from")
    to_site: Optional[Tuple[int, int]] = Field(default=None, alias="to")
    time: Optional[float] = None
    times: Optional[List[float]] = None
    method: Literal["spectral", "numeric"] = "spectral"

    model_config = {"populate_by_name": True}

    @model_validator(mode="after")
    def _one_time_mode(self):
        if (self.time is None) == (self.times is None):
            raise ValueError("give exactly one of time or times")
        if self.times is not None and self.to_site is None:
            raise ValueError("a time grid needs a target site")
        return self


class AmplitudeRow(BaseModel):
    k: int
    l: int
    re: float
    im: float
    probability: float


class ScanRow(BaseModel):
    t: float
    probability: float


class EvolveResponse(BaseModel):
    kind: Literal["table", "scan"]
    time: Optional[float] = None
    table: Optional[List[AmplitudeRow]] = None
    scan: Optional[List[ScanRow]] = None
    total_probability: Optional[float] = None


class PstRequest(BaseModel):
    n: int = Field(ge=0)
    p1: float
    root: Literal["plus", "minus"]


class PstRow(BaseModel):
    k: int
    l: int
    probability: float
    reference: float
    deviation: float


class PstResponse(BaseModel):
    n: int
    revival_time: float
    rows: List[PstRow]
    max_deviation: float
    total_probability: float
    passed: bool


class LightconeRequest(BaseModel):
    n: int = Field(ge=1)
    p1: float
    root: Literal["plus", "minus"]


class LightconeResponse(BaseModel):
    n: int
    revival_time: float
    max_violation: float
    passed: bool


class Chain1dRequest(BaseModel):
    n: int = Field(ge=1)


class Chain1dResponse(BaseModel):
    n: int
    time: float
    fidelity: float


class SelftestCheck(BaseModel):
    name: str
    passed: bool
    measured: float
    threshold: float


class SelftestResponse(BaseModel):
    checks: List[SelftestCheck]
    passed: bool

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

from app import config

Provenance = Literal["PAPER", "TRIVIAL", "DERIVED"]


class Fact(BaseModel):
    key: str
    value: Any
    provenance: Provenance
    note: Optional[str] = None
    slow: bool = False


class FactEntry(BaseModel):
    algebra: str
    facts: list[Fact] = Field(default_factory=list)


class FactLedger(BaseModel):
    schema_version: int = config.SCHEMA_VERSION
    algebras: list[FactEntry] = Field(default_factory=list)

    def entry(self, slug: str) -> Optional[FactEntry]:
        return next((e for e in self.algebras if e.algebra == slug), None)


# report sections; scalars are serialized as strings

class AlgebraSection(BaseModel):
    name: str
    field: str
    dim: int
    basis: list[str]
    regular_dims: list[int] = Field(alias="regularDims")
    projective_dims: dict[str, int] = Field(alias="projectiveDims")

    model_config = {"populate_by_name": True}


class SocleSection(BaseModel):
    dim: int
    basis: list[str]


class SimpleSection(BaseModel):
    name: str
    dual_dim: int = Field(alias="dualDim")
    dual_dims: list[int] = Field(alias="dualDims")
    torsionless: bool
    reflexive: bool
    phi_cokernel_dims: list[int] = Field(alias="phiCokernelDims")
    dual_brick: Optional[bool] = Field(default=None, alias="dualBrick")
    dual_local: Optional[bool] = Field(default=None, alias="dualLocal")
    mho_local: Optional[bool] = Field(default=None, alias="mhoLocal")

    model_config = {"populate_by_name": True}


class SelfInjectiveSection(BaseModel):
    verdict: bool
    conditions: dict[str, bool]
    witnesses: dict[str, str] = Field(default_factory=dict)
    kasch: bool
    qf2: bool
    qf3: bool
    socle_multiplicities: list[int] = Field(alias="socleMultiplicities")

    model_config = {"populate_by_name": True}


class CensusMember(BaseModel):
    name: str
    dims: list[int]
    projective: bool
    reflexive: bool


class CensusSection(BaseModel):
    count: int
    members: list[CensusMember]
    proved_within_budget: bool = Field(alias="provedWithinBudget")
    cross_checked: bool = Field(alias="crossChecked")
    stats: dict[str, Any] = Field(default_factory=dict)

    model_config = {"populate_by_name": True}


class MhoNodeSection(BaseModel):
    name: str
    dims: list[int]
    projective: bool
    torsionless: bool
    reflexive: bool
    termination: Optional[str] = None


class MhoQuiverSection(BaseModel):
    nodes: list[MhoNodeSection]
    # [from, to]: from is a summand of mho(to)
    edges: list[list[int]]
    component_sizes: list[int] = Field(alias="componentSizes")

    model_config = {"populate_by_name": True}


class ModuleSection(BaseModel):
    name: str
    algebra: str
    dims: list[int]
    maps: dict[str, list[list[str]]]


class Report(BaseModel):
    schema_version: int = config.SCHEMA_VERSION
    algebra: Optional[AlgebraSection] = None
    socle: Optional[SocleSection] = None
    simples: Optional[list[SimpleSection]] = None
    self_injective: Optional[SelfInjectiveSection] = Field(default=None, alias="selfInjective")
    census: Optional[CensusSection] = None
    mho_quiver: Optional[MhoQuiverSection] = Field(default=None, alias="mhoQuiver")
    module: Optional[ModuleSection] = None
    dual: Optional[ModuleSection] = None

    model_config = {"populate_by_name": True}

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)

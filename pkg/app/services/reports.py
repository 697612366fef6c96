"""Assemble the pydantic report sections from service results."""
import logging
from typing import Optional

from app.models import (
    AlgebraSection,
    CensusMember,
    CensusSection,
    MhoNodeSection,
    MhoQuiverSection,
    ModuleSection,
    SelfInjectiveSection,
    SimpleSection,
    SocleSection,
)
from app.services.algebra import Algebra, socle_left_regular
from app.services.approximation import MhoQuiver
from app.services.classification import Census
from app.services.duality import is_reflexive
from app.services.representation import Rep, is_projective, projective, regular_rep
from app.services.self_injectivity import (
    SelfInjReport,
    SimpleDualReport,
    is_kasch,
    is_qf2,
    is_qf3,
)

logger = logging.getLogger(__name__)


def algebra_section(a: Algebra) -> AlgebraSection:
    return AlgebraSection(
        name=a.name,
        field=str(a.field),
        dim=a.dim,
        basis=a.labels,
        regular_dims=list(regular_rep(a).dims),
        projective_dims={v: projective(a, v).dim for v in a.vertices},
    )


def socle_section(a: Algebra) -> SocleSection:
    basis = socle_left_regular(a)
    return SocleSection(dim=len(basis), basis=[a.format_element(v) for v in basis])


def simple_sections(report: SimpleDualReport) -> list[SimpleSection]:
    return [
        SimpleSection(
            name=e.name,
            dual_dim=e.dual_dim,
            dual_dims=list(e.dual_dims),
            torsionless=e.torsionless,
            reflexive=e.reflexive,
            phi_cokernel_dims=list(e.phi_cokernel_dims),
            dual_brick=e.dual_brick,
            dual_local=e.dual_local,
            mho_local=e.mho_local,
        )
        for e in report.simples
    ]


def self_injective_section(a: Algebra, report: SelfInjReport) -> SelfInjectiveSection:
    return SelfInjectiveSection(
        verdict=report.verdict,
        conditions=report.conditions,
        witnesses=report.witnesses,
        kasch=is_kasch(a).value,
        qf2=is_qf2(a).value,
        qf3=is_qf3(a).value,
        socle_multiplicities=list(report.socle_multiplicities),
    )


def census_section(census: Census) -> CensusSection:
    return CensusSection(
        count=census.count,
        members=[
            CensusMember(name=m.name, dims=list(m.dims), projective=is_projective(m), reflexive=is_reflexive(m))
            for m in census.members
        ],
        proved_within_budget=census.proved_within_budget,
        cross_checked=census.cross_checked,
        stats=census.stats,
    )


def mho_quiver_section(quiver: MhoQuiver) -> MhoQuiverSection:
    return MhoQuiverSection(
        nodes=[
            MhoNodeSection(
                name=n.name,
                dims=list(n.rep.dims),
                projective=n.projective,
                torsionless=n.torsionless,
                reflexive=n.reflexive,
                termination=quiver.terminations.get(i),
            )
            for i, n in enumerate(quiver.nodes)
        ],
        edges=[[i, j] for i, j in quiver.edges],
        component_sizes=quiver.component_sizes(),
    )


def module_section(m: Rep, name: Optional[str] = None) -> ModuleSection:
    f = m.field
    return ModuleSection(
        name=name or m.name,
        algebra=m.algebra.name,
        dims=list(m.dims),
        maps={
            arrow: [[f.format(c) for c in row] for row in mat.data]
            for arrow, mat in m.maps.items()
        },
    )

"""Socle characterizations of self-injective algebras, the simple-dual report
and the contrapositive scans over restricted classes of algebras.
"""
import logging
from dataclasses import dataclass, field as dc_field
from typing import Optional

from app.exceptions import InternalConsistencyError, UsageError
from app.services.algebra import Algebra, opposite_algebra, socle_left_regular
from app.services.approximation import mho
from app.services.classification import submodule_lattice
from app.services.duality import a_dual, are_orthogonal, is_brick, is_reflexive, is_torsionless, phi
from app.services.linalg import echelon_basis
from app.services.representation import (
    Rep,
    hom_dim,
    injective_envelope,
    is_iso,
    is_projective,
    linear_dual,
    proj_dim_at_most,
    projective,
    radical_rep,
    regular_rep,
    simple,
    socle_rep,
    top_lifts,
)

logger = logging.getLogger(__name__)

CONDITIONS = ("i", "ii", "iii", "iv", "v", "v'", "vi", "vi'", "vii", "viii", "ix", "x")
SCAN_CLASSES = ("QF2", "dualSimples", "radSquareZero", "local", "injectiveHullProjDimAtMostOne")


@dataclass
class Verdict:
    value: bool
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.value


@dataclass
class SelfInjReport:
    algebra: str
    conditions: dict[str, bool]
    witnesses: dict[str, str] = dc_field(default_factory=dict)
    socle_multiplicities: tuple[int, ...] = ()

    @property
    def verdict(self) -> bool:
        return self.conditions["i"]


def _vertex_of(r: Rep) -> str:
    return r.algebra.vertices[next(i for i, d in enumerate(r.dims) if d)]


def _is_simple_structurally(r: Rep) -> bool:
    """Nonzero with zero radical and one-dimensional top."""
    return r.dim > 0 and radical_rep(r)[0].dim == 0 and len(top_lifts(r)) == 1


def injective_hull_of_regular(a: Algebra) -> Rep:
    if "injective_hull" not in a._cache:
        a._cache["injective_hull"] = injective_envelope(regular_rep(a))[0]
    return a._cache["injective_hull"]


def _check_basic(a: Algebra):
    seen = set()
    for v in a.vertices:
        top = top_lifts(projective(a, v))
        if len(top) != 1:
            raise UsageError(f"{a.name} is not basic: P{v} has a top of dimension {len(top)}")
        seen.add(top[0][0])
    if len(seen) != len(a.vertices):
        raise UsageError(f"{a.name} is not basic: two projectives share a top")


def socle_multiplicities(a: Algebra) -> tuple[int, ...]:
    """Multiplicity of each simple in soc(A) as a left module."""
    socle = socle_left_regular(a)
    if not socle:
        return (0,) * len(a.vertices)
    return tuple(
        len(echelon_basis([a.multiply(a.idempotent(v), x) for x in socle], a.dim, a.field))
        for v in a.vertices
    )


def self_injectivity_report(a: Algebra) -> SelfInjReport:
    """Evaluates every socle characterization separately and insists that they agree."""
    _check_basic(a)
    op = opposite_algebra(a)
    cond: dict[str, bool] = {}
    wit: dict[str, str] = {}
    reg = regular_rep(a)
    hull = injective_hull_of_regular(a)

    cond["i"] = hull.dim == a.dim
    if not cond["i"]:
        wit["i"] = f"I(A) has dim {hull.dim} > dim A = {a.dim}"

    socles = {v: socle_rep(projective(a, v))[0] for v in a.vertices}
    socle_vertices = {}
    for v, s in socles.items():
        if s.dim == 1:
            socle_vertices[v] = _vertex_of(s)
    cond["ii"] = len(socle_vertices) == len(a.vertices) and len(set(socle_vertices.values())) == len(a.vertices)
    if not cond["ii"]:
        bad = next((v for v, s in socles.items() if s.dim != 1), None)
        wit["ii"] = (
            f"soc P{bad} has dimension vector {socles[bad].dims}" if bad is not None
            else "two projectives share their socle"
        )

    duals = {v: a_dual(simple(a, v)) for v in a.vertices}
    dual_vertices = [_vertex_of(d) for d in duals.values() if d.dim == 1]
    cond["iii"] = len(dual_vertices) == len(a.vertices) and set(dual_vertices) == set(op.vertices)
    if not cond["iii"]:
        wit["iii"] = "duals of simples: " + ", ".join(f"S{v}* dims {d.dims}" for v, d in duals.items())

    mults = socle_multiplicities(a)
    cond["iv"] = all(m == 1 for m in mults)
    cond["vii"] = all(m <= 1 for m in socle_rep(reg)[0].dims)
    for c in ("iv", "vii"):
        if not cond[c]:
            wit[c] = f"socle multiplicities {mults}"

    cond["v"] = all(_is_simple_structurally(d) for d in duals.values())
    cond["v'"] = all(d.dim == 1 for d in duals.values())
    cond["vi"] = all(d.dim == 0 or _is_simple_structurally(d) for d in duals.values())
    cond["vi'"] = all(d.dim <= 1 for d in duals.values())
    for c in ("v", "v'", "vi", "vi'"):
        if not cond[c]:
            v, d = next((v, d) for v, d in duals.items() if d.dim != 1 and (c in ("v", "v'") or d.dim > 1))
            wit[c] = f"S{v}* has dim {d.dim}"

    d_right = linear_dual(regular_rep(op))
    simples = [simple(a, v) for v in a.vertices]
    cond["viii"] = all(hom_dim(s, hull) <= hom_dim(s, d_right) for s in simples)
    if not cond["viii"]:
        s = next(s for s in simples if hom_dim(s, hull) > hom_dim(s, d_right))
        wit["viii"] = f"{s.name} occurs {hom_dim(s, hull)} times in soc I(A) but {hom_dim(s, d_right)} times in soc D(A_A)"
    cond["ix"] = hull.dims == d_right.dims and is_iso(hull, d_right.renamed("D(A_A)"))
    if not cond["ix"]:
        wit["ix"] = f"I(A) has dims {hull.dims}, D(A_A) has dims {d_right.dims}"

    kasch, qf2 = is_kasch(a), is_qf2(a)
    cond["x"] = kasch.value and qf2.value
    if not cond["x"]:
        wit["x"] = kasch.witness or qf2.witness

    report = SelfInjReport(a.name, {c: cond[c] for c in CONDITIONS}, wit, mults)
    if len(set(report.conditions.values())) != 1:
        raise InternalConsistencyError(
            f"{a.name}: socle characterizations disagree: {report.conditions}"
        )
    logger.info(f"{a.name}: self-injective = {report.verdict}")
    return report


def is_kasch(a: Algebra) -> Verdict:
    reg = regular_rep(a)
    missing = [v for v in a.vertices if hom_dim(simple(a, v), reg) == 0]
    if missing:
        return Verdict(False, f"S{missing[0]} is not a submodule of A")
    return Verdict(True)


def is_qf2(a: Algebra) -> Verdict:
    for v in a.vertices:
        soc, _ = socle_rep(projective(a, v))
        if soc.dim != 1:
            parts = " + ".join(f"S{w}" for w, d in zip(a.vertices, soc.dims) for _ in range(d))
            return Verdict(False, f"soc P{v} = {parts}")
    return Verdict(True)


def is_qf3(a: Algebra) -> Verdict:
    hull = injective_hull_of_regular(a)
    if is_projective(hull):
        return Verdict(True)
    return Verdict(False, f"I(A) with dims {hull.dims} is not projective")


def is_self_injective(a: Algebra) -> bool:
    return injective_hull_of_regular(a).dim == a.dim


# simple duals

@dataclass
class SimpleEntry:
    vertex: str
    name: str
    dual_dim: int
    dual_dims: tuple[int, ...]
    torsionless: bool
    reflexive: bool
    phi_cokernel_dims: tuple[int, ...]
    dual_brick: Optional[bool] = None
    dual_local: Optional[bool] = None
    mho_local: Optional[bool] = None
    # None when the factor scan was not run (S not reflexive)
    no_torsionless_factor: Optional[bool] = None


@dataclass
class SimpleDualReport:
    algebra: str
    simples: list[SimpleEntry]
    orthogonal: dict[tuple[str, str], bool] = dc_field(default_factory=dict)
    no_torsionless_factors: bool = True
    orthogonal_brick_duals: bool = True
    all_simples_reflexive: bool = False
    # (hypothesis holds, conclusion holds)
    single_missing_dual: tuple[bool, Optional[bool]] = (False, None)
    self_injective: bool = False
    self_injective_reflexive: Optional[bool] = None
    injective_torsionless_projective: bool = True

    def entry(self, vertex: str) -> SimpleEntry:
        return next(e for e in self.simples if e.vertex == vertex)


def _no_torsionless_factor(dual: Rep) -> bool:
    lattice = submodule_lattice(dual)
    for k in lattice.proper_nonzero():
        factor, _ = lattice.quotient(k, f"{dual.name}/U{k}")
        if is_torsionless(factor):
            logger.info(f"{dual.name}: factor by a submodule with dims {lattice.dims(k)} is torsionless")
            return False
    return True


def _is_local(r: Rep) -> bool:
    return len(top_lifts(r)) == 1


def simple_dual_report(a: Algebra) -> SimpleDualReport:
    entries = []
    for v in a.vertices:
        s = simple(a, v)
        data = phi(s)
        dual = data.dual.dual
        torsionless = is_torsionless(s)
        if (dual.dim > 0) != torsionless:
            raise InternalConsistencyError(f"{s.name}: dim {s.name}* = {dual.dim} but torsionless = {torsionless}")
        entry = SimpleEntry(
            v, s.name, dual.dim, dual.dims, torsionless, is_reflexive(s), data.cokernel.dims
        )
        if dual.dim:
            entry.dual_brick = is_brick(dual)
            entry.dual_local = _is_local(dual)
        if a.is_commutative() and radical_rep(dual)[0].dim:
            raise InternalConsistencyError(f"{a.name} is commutative but {s.name}* is not semisimple")
        if entry.reflexive:
            if not is_torsionless(dual) or not entry.dual_brick:
                raise InternalConsistencyError(f"{s.name} is reflexive but {s.name}* is not a torsionless brick")
            entry.no_torsionless_factor = _no_torsionless_factor(dual)
            omega = mho(s)
            entry.mho_local = _is_local(omega) if omega.dim else None
        entries.append(entry)

    report = SimpleDualReport(a.name, entries)
    report.no_torsionless_factors = all(e.no_torsionless_factor is not False for e in entries)
    reflexive = [e for e in entries if e.reflexive]
    for x in reflexive:
        for y in reflexive:
            if x.vertex < y.vertex:
                dx, dy = a_dual(simple(a, x.vertex)), a_dual(simple(a, y.vertex))
                report.orthogonal[(x.vertex, y.vertex)] = are_orthogonal(dx, dy)
    report.orthogonal_brick_duals = all(report.orthogonal.values()) and all(e.dual_brick for e in reflexive)
    if not report.no_torsionless_factors or not report.orthogonal_brick_duals:
        raise InternalConsistencyError(f"{a.name}: duals of reflexive simples violate the brick properties")

    report.self_injective = is_self_injective(a)
    report.all_simples_reflexive = len(reflexive) == len(entries)
    non_simple = [e for e in entries if e.dual_dim != 1]
    hypothesis = report.all_simples_reflexive and len(non_simple) <= 1
    conclusion = (not non_simple and report.self_injective) if hypothesis else None
    report.single_missing_dual = (hypothesis, conclusion)
    if hypothesis and not conclusion:
        raise InternalConsistencyError(
            f"{a.name}: all simples reflexive and all but one dual simple, yet {non_simple[0].name}* is not simple"
        )

    if report.self_injective:
        checked = [simple(a, v) for v in a.vertices] + [projective(a, v) for v in a.vertices]
        checked += [radical_rep(projective(a, v))[0] for v in a.vertices]
        report.self_injective_reflexive = all(is_reflexive(m) for m in checked if m.dim)
        if not report.self_injective_reflexive:
            raise InternalConsistencyError(f"{a.name} is self-injective but has a non-reflexive module")

    for v in a.vertices:
        hull, _ = injective_envelope(simple(a, v))
        if is_torsionless(hull) and not is_projective(hull):
            report.injective_torsionless_projective = False
            raise InternalConsistencyError(f"{a.name}: I{v} is torsionless but not projective")
    return report


# contrapositive scans

@dataclass
class ScanVerdict:
    algebra: str
    cls: str
    self_injective: bool
    vacuous: bool
    witness: Optional[str] = None
    # "not torsionless" or "not reflexive"
    kind: Optional[str] = None


def _class_member(a: Algebra, cls: str) -> bool:
    if cls == "QF2":
        return is_qf2(a).value
    if cls == "dualSimples":
        op = opposite_algebra(a)
        return all(is_torsionless(simple(op, v)) for v in op.vertices)
    if cls == "radSquareZero":
        return a.radical_square_is_zero()
    if cls == "local":
        return a.is_local()
    if cls == "injectiveHullProjDimAtMostOne":
        return proj_dim_at_most(injective_hull_of_regular(a), 1)
    raise UsageError(f"unknown class {cls!r}; expected one of {', '.join(SCAN_CLASSES)}")


def contrapositive_scan(a: Algebra, cls: str) -> ScanVerdict:
    """For a non-self-injective member of the class, a simple that is not torsionless
    (not reflexive for the radical-square-zero and local classes)."""
    if not _class_member(a, cls):
        raise UsageError(f"{a.name} is not in the class {cls}")
    if is_self_injective(a):
        return ScanVerdict(a.name, cls, True, True)
    kind = "not reflexive" if cls in ("radSquareZero", "local") else "not torsionless"
    test = is_reflexive if kind == "not reflexive" else is_torsionless
    for v in a.vertices:
        s = simple(a, v)
        if not test(s):
            logger.info(f"{a.name} ({cls}): {s.name} is {kind}")
            return ScanVerdict(a.name, cls, False, False, s.name, kind)
    raise InternalConsistencyError(f"{a.name} ({cls}) is not self-injective but every simple passes")

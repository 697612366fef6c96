"""The A-dual M* = Hom(M, A), the canonical map M -> M** and the predicates built on it.

Right modules are left modules over the opposite algebra. The vertex-i part of
M* is Hom(M, P(i)); an arrow a: s -> t of A acts on M* by f -> rho_a f, where
rho_a: P(t) -> P(s) is right multiplication by a.
"""
import logging
from dataclasses import dataclass

from app.exceptions import AlgebraMismatchError, InternalConsistencyError
from app.services.algebra import Algebra, opposite_algebra, socle_left_regular
from app.services.linalg import Matrix, echelon_basis, nullspace_basis
from app.services.representation import (
    Rep,
    RepMap,
    _check_certifiable,
    hom_basis,
    map_coordinates,
    projective,
    regular_rep,
    right_multiplication_map,
)

logger = logging.getLogger(__name__)


@dataclass
class DualData:
    source: Rep
    dual: Rep
    homs: list[list[RepMap]]  # homs[i] = basis of Hom(source, P(i)), the vertex-i basis of the dual

    def evaluate(self, vertex_idx: int, k: int, m_vertex: int, local) -> tuple:
        """f_k(m) for the k-th basis map into P(i) and a local vector of the source at m_vertex."""
        return self.homs[vertex_idx][k].maps[m_vertex].apply(local)

    def pairing(self, m_vertex: int, local) -> list[list[tuple]]:
        return [[f.maps[m_vertex].apply(local) for f in basis] for basis in self.homs]


@dataclass
class PhiData:
    source: Rep
    dual: DualData
    double_dual: Rep
    phi: RepMap
    kernel_dim: int
    cokernel: Rep

    @property
    def injective(self) -> bool:
        return self.kernel_dim == 0

    @property
    def bijective(self) -> bool:
        return self.kernel_dim == 0 and self.cokernel.is_zero()


def _rho(a: Algebra, arrow_name: str) -> RepMap:
    arrow = a.quiver.arrow(arrow_name)
    key = ("rho", arrow_name)
    if key not in a._cache:
        a._cache[key] = right_multiplication_map(a, a.arrow_elements[arrow_name], arrow.target, arrow.source)
    return a._cache[key]


def dual_data(m: Rep) -> DualData:
    if "dual" in m._cache:
        return m._cache["dual"]
    a = m.algebra
    op = opposite_algebra(a)
    f = m.field
    homs = [hom_basis(m, projective(a, v)) for v in a.vertices]
    coords = [map_coordinates(h) for h in homs]
    maps = {}
    for arrow in a.quiver.arrows:
        si, ti = a.quiver.vertex_index(arrow.source), a.quiver.vertex_index(arrow.target)
        rho = _rho(a, arrow.name)
        cols = []
        for g in homs[ti]:
            moved = rho.compose(g)
            c = coords[si].coordinates(moved.flatten()) if coords[si] else ()
            if c is None:
                raise InternalConsistencyError(f"right action on {m.name}* leaves Hom({m.name}, P{arrow.source})")
            cols.append(c)
        maps[arrow.name] = Matrix.from_columns(f, cols, len(homs[si]))
    dual = Rep(op, [len(h) for h in homs], maps, f"{m.name}*")
    data = DualData(m, dual, homs)
    if m.dim == 1:
        _check_simple_dual(m, dual)
    m._cache["dual"] = data
    return data


def _check_simple_dual(s: Rep, dual: Rep):
    """dim S(v)* must equal dim e_v soc(A)."""
    a = s.algebra
    v = a.vertices[next(i for i, d in enumerate(s.dims) if d)]
    e = a.idempotent(v)
    socle = socle_left_regular(a)
    expected = len(echelon_basis([a.multiply(e, x) for x in socle], a.dim, a.field)) if socle else 0
    if expected != dual.dim:
        raise InternalConsistencyError(
            f"dim {s.name}* = {dual.dim} but e{v} soc(A) has dim {expected}"
        )


def a_dual(m: Rep) -> Rep:
    return dual_data(m).dual


def phi(m: Rep) -> PhiData:
    """The evaluation map M -> M**."""
    if "phi" in m._cache:
        return m._cache["phi"]
    a = m.algebra
    f = m.field
    first = dual_data(m)
    mstar = first.dual
    op = mstar.algebra
    second = dual_data(mstar)
    mss = second.dual.renamed(f"{m.name}**")
    coords = [map_coordinates(h) for h in second.homs]
    blocks = []
    for i, v in enumerate(a.vertices):
        target = projective(op, v)
        cols = []
        for r in range(m.dims[i]):
            local = tuple(f.one if k == r else f.zero for k in range(m.dims[i]))
            per_vertex = [
                Matrix.from_columns(f, [g.maps[i].apply(local) for g in first.homs[j]], target.dims[j])
                for j in range(len(a.vertices))
            ]
            evaluation = RepMap(mstar, target, per_vertex)
            c = coords[i].coordinates(evaluation.flatten()) if coords[i] else ()
            if c is None:
                raise InternalConsistencyError(f"evaluation at a vector of {m.name} is not in {m.name}**")
            cols.append(c)
        blocks.append(Matrix.from_columns(f, cols, mss.dims[i]))
    phi_map = RepMap(m, mss, blocks)
    kernel_dim = m.dim - phi_map.rank()
    cokernel, _ = phi_map.cokernel(f"coker(phi_{m.name})")
    data = PhiData(m, first, mss, phi_map, kernel_dim, cokernel)
    m._cache["phi"] = data
    return data


def _common_kernel_dim(m: Rep, maps: list[RepMap]) -> int:
    if m.dim == 0:
        return 0
    if not maps:
        return m.dim
    stacked = None
    for g in maps:
        gm = g.global_matrix()
        stacked = gm if stacked is None else stacked.vstack(gm)
    return len(nullspace_basis(stacked))


def is_torsionless(m: Rep) -> bool:
    data = phi(m)
    common = _common_kernel_dim(m, [g for basis in data.dual.homs for g in basis])
    if (common == 0) != data.injective:
        raise InternalConsistencyError(
            f"{m.name}: kernel of phi has dim {data.kernel_dim} but the maps to A have common kernel of dim {common}"
        )
    return data.injective


def is_reflexive(m: Rep) -> bool:
    return phi(m).bijective


def is_brick(m: Rep) -> bool:
    """dim End(m) = 1."""
    basis = hom_basis(m, m)
    _check_certifiable(m.field, len(basis), f"brick test for {m.name}")
    return len(basis) == 1


def are_orthogonal(m: Rep, n: Rep) -> bool:
    if m.algebra is not n.algebra:
        raise AlgebraMismatchError("orthogonality across different algebras")
    return not hom_basis(m, n) and not hom_basis(n, m)


def cogenerated_by(m: Rep, c: Rep) -> bool:
    if m.algebra is not c.algebra:
        raise AlgebraMismatchError("cogeneration across different algebras")
    return _common_kernel_dim(m, hom_basis(m, c)) == 0


def dual_map(g: RepMap) -> RepMap:
    """g*: N* -> M* for g: M -> N (precomposition)."""
    source_dual, target_dual = dual_data(g.target), dual_data(g.source)
    f = g.field
    blocks = []
    for i in range(len(g.source.algebra.vertices)):
        coords = map_coordinates(target_dual.homs[i])
        cols = []
        for h in source_dual.homs[i]:
            c = coords.coordinates(h.compose(g).flatten()) if coords else ()
            if c is None:
                raise InternalConsistencyError("precomposition leaves the dual")
            cols.append(c)
        blocks.append(Matrix.from_columns(f, cols, target_dual.dual.dims[i]))
    return RepMap(source_dual.dual, target_dual.dual, blocks, check=False)


def duality_triple_holds(m: Rep) -> bool:
    """(phi_M)* after phi_{M*} is the identity of M*."""
    mstar = a_dual(m)
    outer = phi(mstar).phi
    inner = dual_map(phi(m).phi)
    return all(
        (b @ a) == Matrix.identity(m.field, d)
        for a, b, d in zip(outer.maps, inner.maps, mstar.dims)
    )


def is_regular_reflexive(a: Algebra) -> bool:
    return is_reflexive(regular_rep(a))

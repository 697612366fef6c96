"""Minimal left add(A)-approximations, the cokernel operator mho and mho-quivers."""
import logging
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from graphviz import Digraph

from app import config
from app.exceptions import InternalConsistencyError
from app.services.duality import dual_data, is_reflexive, is_torsionless
from app.services.linalg import Matrix, SpanCoordinates, nullspace_basis
from app.services.representation import (
    Rep,
    RepMap,
    decompose,
    direct_sum,
    end_algebra,
    hom_basis,
    is_iso,
    is_projective,
    projective,
    top_lifts,
    zero_rep,
)

logger = logging.getLogger(__name__)


@dataclass
class Approximation:
    source: Rep
    target: Rep
    map: RepMap
    # dimension of {k in End(X) : k f = 0}
    annihilator_dim: int
    reductions: int = 0

    @property
    def certified(self) -> bool:
        """{k in End(X) : k f = 0} lies in rad End(X), so f is left minimal."""
        if self.target.is_zero():
            return True
        end = end_algebra(self.target)
        return all(end.in_radical(end.element(c)) for c in _annihilator(end, self.map))


def _evaluation_map(m: Rep) -> tuple[Rep, RepMap]:
    """M -> (+) P(i), one summand per generator of M* as a right module."""
    a = m.algebra
    data = dual_data(m)
    parts, components = [], []
    for i, coeffs in top_lifts(data.dual):
        g = RepMap.zero(m, projective(a, a.vertices[i]))
        for c, h in zip(coeffs, data.homs[i]):
            if c != 0:
                g = g + h.scale(c)
        parts.append(projective(a, a.vertices[i]))
        components.append(g)
    if not parts:
        z = zero_rep(a)
        return z, RepMap.zero(m, z)
    x, injections, _ = direct_sum(parts, f"X({m.name})")
    f = RepMap.zero(m, x)
    for inj, g in zip(injections, components):
        f = f + inj.compose(g)
    return x, f


def _annihilator(end, f: RepMap) -> list[tuple]:
    """Coordinates (in End(X)) of a basis of {k : k f = 0}."""
    if not end.basis:
        return []
    columns = [b.compose(f).flatten() for b in end.basis]
    if not columns[0]:
        return [tuple(end.field.one if i == j else end.field.zero for i in range(end.dim)) for j in range(end.dim)]
    return nullspace_basis(Matrix.from_columns(end.field, columns, len(columns[0])))


def _non_nilpotent(end, kernel: list[RepMap]) -> Optional[RepMap]:
    for k in kernel:
        if not k.is_nilpotent():
            return k
    for y in end.basis:
        for k in kernel:
            yk = y.compose(k)
            if not yk.is_nilpotent():
                return yk
    return None


def _restrict_codomain(f: RepMap, inclusion: RepMap) -> RepMap:
    field = f.field
    blocks = []
    for fm, im, d in zip(f.maps, inclusion.maps, inclusion.source.dims):
        coords = SpanCoordinates(im.columns(), im.rows, field)
        cols = []
        for col in fm.columns():
            c = coords.coordinates(col)
            if c is None:
                raise InternalConsistencyError("approximation does not factor through the kept summand")
            cols.append(c)
        blocks.append(Matrix.from_columns(field, cols, d))
    return RepMap(f.source, inclusion.source, blocks)


def minimal_left_approx(m: Rep) -> Approximation:
    if "approx" in m._cache:
        return m._cache["approx"]
    if m.is_zero():
        z = zero_rep(m.algebra)
        result = Approximation(m, z, RepMap.zero(m, z), 0)
        m._cache["approx"] = result
        return result
    x, f = _evaluation_map(m)
    reductions = 0
    while True:
        end = end_algebra(x)
        kernel = [end.element(c) for c in _annihilator(end, f)]
        if all(end.in_radical(k) for k in kernel):
            break
        k = _non_nilpotent(end, kernel)
        if k is None:
            raise InternalConsistencyError(f"{m.name}: annihilator of the approximation has no non-nilpotent element")
        kept, inclusion = k.power(max(x.dim, 1)).kernel(f"X({m.name})")
        f = _restrict_codomain(f, inclusion)
        x = kept
        reductions += 1
        logger.debug(f"{m.name}: dropped a summand of the approximation, target now dim {x.dim}")
    result = Approximation(m, x, f, len(kernel), reductions)
    m._cache["approx"] = result
    return result


def is_left_approximation(approx: Approximation) -> bool:
    """Every map M -> P(i) factors through f."""
    m, x, f = approx.source, approx.target, approx.map
    for v in m.algebra.vertices:
        p = projective(m.algebra, v)
        wanted = hom_basis(m, p)
        if not wanted:
            continue
        reached = [g.compose(f).flatten() for g in hom_basis(x, p)]
        span = SpanCoordinates(reached, len(wanted[0].flatten()), m.field) if reached else None
        if span is None or not all(span.contains(w.flatten()) for w in wanted):
            return False
    return True


def mho(m: Rep) -> Rep:
    """Cokernel of the minimal left add(A)-approximation; zero for projective modules."""
    approx = minimal_left_approx(m)
    quotient, _ = approx.map.cokernel(f"mho({m.name})")
    return quotient


@dataclass
class MhoNode:
    rep: Rep
    name: str
    projective: bool
    torsionless: bool
    reflexive: bool


@dataclass
class MhoQuiver:
    nodes: list[MhoNode] = dc_field(default_factory=list)
    # (i, j) means mho(nodes[j]) has nodes[i] as a summand, drawn i -> j
    edges: list[tuple[int, int]] = dc_field(default_factory=list)
    terminations: dict[int, str] = dc_field(default_factory=dict)

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.nodes)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j in self.edges:
            parent[find(i)] = find(j)
        groups: dict[int, list[int]] = {}
        for i in range(len(self.nodes)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values(), key=lambda g: (len(g), g))

    def component_sizes(self) -> list[int]:
        return sorted(len(c) for c in self.components())

    def to_dot(self, title: str = "mho") -> str:
        d = Digraph(name=title, comment="edges point from mho(M) to M")
        for i, node in enumerate(self.nodes):
            flags = "".join([
                "P" if node.projective else "",
                "t" if node.torsionless else "",
                "r" if node.reflexive else "",
            ])
            d.node(f"n{i}", label=f"{node.name} {list(node.rep.dims)} [{flags}]")
        for i, j in self.edges:
            d.edge(f"n{i}", f"n{j}", style="dashed")
        return d.source


def mho_quiver(seeds: Sequence[Rep], max_steps: Optional[int] = None) -> MhoQuiver:
    """Iterate mho from the seeds; a branch stops at projectives, non-torsionless modules, repeats or the step cap."""
    max_steps = config.MHO_MAX_STEPS if max_steps is None else max_steps
    quiver = MhoQuiver()

    def find_or_add(rep: Rep, name: str) -> tuple[int, bool]:
        for i, node in enumerate(quiver.nodes):
            if node.rep.dims == rep.dims and is_iso(node.rep, rep):
                return i, False
        quiver.nodes.append(MhoNode(
            rep, name, is_projective(rep), is_torsionless(rep), is_reflexive(rep)
        ))
        return len(quiver.nodes) - 1, True

    queue: list[tuple[int, int]] = []
    for seed in seeds:
        idx, new = find_or_add(seed, seed.name)
        if new:
            queue.append((idx, 0))
    while queue:
        idx, depth = queue.pop(0)
        node = quiver.nodes[idx]
        if node.projective:
            quiver.terminations[idx] = "projective"
            continue
        if not node.torsionless:
            quiver.terminations[idx] = "non-torsionless"
            continue
        if depth >= max_steps:
            quiver.terminations[idx] = "step cap"
            continue
        image = mho(node.rep)
        summands = decompose(image) if not image.is_zero() else []
        if node.reflexive != all(is_torsionless(s) for s, _ in summands):
            raise InternalConsistencyError(
                f"{node.name}: reflexivity disagrees with torsionlessness of its mho"
            )
        for k, (s, _) in enumerate(summands):
            name = f"mho({node.name})" if len(summands) == 1 else f"mho({node.name})[{k}]"
            target, new = find_or_add(s.renamed(name), name)
            if (target, idx) not in quiver.edges:
                quiver.edges.append((target, idx))
            if new:
                queue.append((target, depth + 1))
            else:
                quiver.terminations.setdefault(idx, "repeat")
    logger.info(f"mho-quiver: {len(quiver.nodes)} nodes, {len(quiver.edges)} edges")
    return quiver

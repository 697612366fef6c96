"""Finite-dimensional left modules as quiver representations.

A `Rep` stores one vector space per vertex (by dimension) and one matrix per
arrow; the matrix of a: s -> t maps the vertex-s space to the vertex-t space.
Vectors inside a single vertex space are "local"; vectors of the whole module
use the vertex blocks in vertex order ("global").
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from app import config
from app.exceptions import (
    AlgebraMismatchError,
    CertificationError,
    DimensionMismatchError,
    InternalConsistencyError,
    InvalidRepresentationError,
    UndeterminedSummandError,
    UsageError,
)
from app.services.algebra import Algebra, BasisWord, Word, format_relation, opposite_algebra
from app.services.linalg import (
    Matrix,
    SpanCoordinates,
    _reduce_rows,
    complement_basis,
    echelon_basis,
    minimal_polynomial,
    nullspace_basis,
    poly_roots,
)

logger = logging.getLogger(__name__)


class Rep:
    def __init__(self, algebra: Algebra, dims: Sequence[int], maps: Optional[dict] = None, name: str = "M", check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.name = name
        if len(dims) != len(algebra.vertices):
            raise DimensionMismatchError(f"{name}: {len(dims)} dimensions for {len(algebra.vertices)} vertices")
        if any(d < 0 for d in dims):
            raise DimensionMismatchError(f"{name}: negative dimension")
        self.dims = tuple(dims)
        self.offsets = []
        total = 0
        for d in self.dims:
            self.offsets.append(total)
            total += d
        self.dim = total
        maps = maps or {}
        self.maps: dict[str, Matrix] = {}
        for a in algebra.quiver.arrows:
            s, t = self.vertex_dim(a.source), self.vertex_dim(a.target)
            mat = maps.get(a.name)
            if mat is None:
                mat = Matrix.zeros(self.field, t, s)
            if mat.shape != (t, s):
                raise DimensionMismatchError(f"{name}: arrow {a.name} needs a {t}x{s} matrix, got {mat.shape}")
            self.maps[a.name] = mat
        unknown = set(maps) - set(self.maps)
        if unknown:
            raise InvalidRepresentationError(f"{name}: unknown arrows {sorted(unknown)}")
        self.basis_words: Optional[list[list[BasisWord]]] = None
        self._words: dict = {}
        self._cache: dict = {}
        if check:
            self.validate()

    def __repr__(self) -> str:
        return f"Rep({self.name!r}, dims={self.dims})"

    # structure

    def vertex_index(self, v: str) -> int:
        return self.algebra.quiver.vertex_index(v)

    def vertex_dim(self, v: str) -> int:
        return self.dims[self.vertex_index(v)]

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.dim == 0

    def renamed(self, name: str) -> "Rep":
        r = Rep(self.algebra, self.dims, self.maps, name, check=False)
        r.basis_words = self.basis_words
        return r

    def word_matrix(self, word: Word, source: str) -> Matrix:
        """Action of a path (right to left) from the source space to the target space."""
        key = (word, source)
        if key not in self._words:
            if not word:
                self._words[key] = Matrix.identity(self.field, self.vertex_dim(source))
            else:
                head = self.maps[word[0]]
                self._words[key] = head @ self.word_matrix(word[1:], source) if len(word) > 1 else head
        return self._words[key]

    def embed(self, block: Matrix, source: str, target: str) -> Matrix:
        """A vertex-to-vertex block as a global matrix."""
        si, ti = self.vertex_index(source), self.vertex_index(target)
        f = self.field
        rows = [[f.zero] * self.dim for _ in range(self.dim)]
        for r in range(block.rows):
            for c in range(block.cols):
                rows[self.offsets[ti] + r][self.offsets[si] + c] = block.data[r][c]
        return Matrix(f, self.dim, self.dim, tuple(tuple(r) for r in rows))

    def basis_word_action(self, bw: BasisWord) -> Matrix:
        return self.embed(self.word_matrix(bw.word, bw.source), bw.source, bw.target)

    def split(self, v: Sequence) -> list[tuple]:
        """Global vector -> local components per vertex."""
        return [tuple(v[o:o + d]) for o, d in zip(self.offsets, self.dims)]

    def join(self, parts: Sequence[Sequence]) -> tuple:
        out = []
        for p in parts:
            out.extend(p)
        return tuple(out)

    def local_to_global(self, vertex_idx: int, local: Sequence) -> tuple:
        f = self.field
        parts = [(f.zero,) * d for d in self.dims]
        parts[vertex_idx] = tuple(local)
        return self.join(parts)

    def validate(self):
        q = self.algebra.quiver
        for rel in self.algebra.relations:
            groups: dict = {}
            for c, w in rel:
                groups.setdefault(q.word_endpoints(w), []).append((c, w))
            for (s, t), terms in groups.items():
                total = Matrix.zeros(self.field, self.vertex_dim(t), self.vertex_dim(s))
                for c, w in terms:
                    total = total + self.word_matrix(w, s).scale(c)
                if not total.is_zero():
                    text = format_relation(tuple(terms), self.field)
                    raise InvalidRepresentationError(f"{self.name}: relation {text} does not vanish")

    def fingerprint(self) -> tuple:
        """Isomorphism invariants: dimension vector and ranks of all basis-word actions."""
        if "fingerprint" not in self._cache:
            ranks = tuple(
                self.word_matrix(b.word, b.source).rank() for b in self.algebra.basis if not b.is_trivial
            )
            self._cache["fingerprint"] = (self.dims, ranks)
        return self._cache["fingerprint"]

    def arrow_images(self, vertex_idx: int) -> list[tuple]:
        """Echelon basis of the radical part at a vertex (images of arrows ending there)."""
        v = self.algebra.vertices[vertex_idx]
        vectors = []
        for a in self.algebra.quiver.arrows:
            if a.target == v:
                vectors.extend(self.maps[a.name].columns())
        return echelon_basis(vectors, self.dims[vertex_idx], self.field)

    def arrow_kernel(self, vertex_idx: int) -> list[tuple]:
        """Echelon basis of the common kernel of the arrows leaving a vertex."""
        v = self.algebra.vertices[vertex_idx]
        d = self.dims[vertex_idx]
        stacked = Matrix.zeros(self.field, 0, d)
        for a in self.algebra.quiver.arrows:
            if a.source == v:
                stacked = stacked.vstack(self.maps[a.name])
        if stacked.rows == 0:
            return echelon_basis([_unit(self.field, d, i) for i in range(d)], d, self.field)
        return echelon_basis(nullspace_basis(stacked), d, self.field)


def _unit(field, n: int, i: int) -> tuple:
    return tuple(field.one if j == i else field.zero for j in range(n))


class RepMap:
    def __init__(self, source: Rep, target: Rep, maps: Sequence[Matrix], check: bool = True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatchError("map between modules over different algebras")
        self.source = source
        self.target = target
        self.field = source.field
        self.maps = tuple(maps)
        if len(self.maps) != len(source.dims):
            raise DimensionMismatchError("one matrix per vertex is required")
        for m, s, t in zip(self.maps, source.dims, target.dims):
            if m.shape != (t, s):
                raise DimensionMismatchError(f"vertex map of shape {m.shape}, expected {(t, s)}")
        if check:
            self.validate()

    def validate(self):
        for a in self.source.algebra.quiver.arrows:
            si = self.source.vertex_index(a.source)
            ti = self.source.vertex_index(a.target)
            if self.target.maps[a.name] @ self.maps[si] != self.maps[ti] @ self.source.maps[a.name]:
                raise InvalidRepresentationError(
                    f"map {self.source.name} -> {self.target.name} does not commute with arrow {a.name}"
                )

    @classmethod
    def identity(cls, rep: Rep) -> "RepMap":
        return cls(rep, rep, [Matrix.identity(rep.field, d) for d in rep.dims], check=False)

    @classmethod
    def zero(cls, source: Rep, target: Rep) -> "RepMap":
        return cls(source, target, [Matrix.zeros(source.field, t, s) for s, t in zip(source.dims, target.dims)], check=False)

    def compose(self, other: "RepMap") -> "RepMap":
        """self after other."""
        if other.target.dims != self.source.dims:
            raise DimensionMismatchError("maps are not composable")
        return RepMap(other.source, self.target, [a @ b for a, b in zip(self.maps, other.maps)], check=False)

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, [a + b for a, b in zip(self.maps, other.maps)], check=False)

    def __sub__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target, [a - b for a, b in zip(self.maps, other.maps)], check=False)

    def scale(self, c) -> "RepMap":
        return RepMap(self.source, self.target, [a.scale(c) for a in self.maps], check=False)

    def power(self, k: int) -> "RepMap":
        return RepMap(self.source, self.target, [m.power(k) for m in self.maps], check=False)

    def flatten(self) -> tuple:
        return tuple(v for m in self.maps for v in m.entries())

    def global_matrix(self) -> Matrix:
        return Matrix.block_diagonal(self.field, self.maps)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def rank(self) -> int:
        return sum(m.rank() for m in self.maps)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def is_nilpotent(self) -> bool:
        return self.power(max(self.source.dim, 1)).is_zero()

    def kernel(self, name: Optional[str] = None) -> tuple[Rep, "RepMap"]:
        spaces = [echelon_basis(nullspace_basis(m), d, self.field) for m, d in zip(self.maps, self.source.dims)]
        return subrep_from_spaces(self.source, spaces, name or f"ker({self.source.name})")

    def image(self, name: Optional[str] = None) -> tuple[Rep, "RepMap"]:
        spaces = [echelon_basis(m.columns(), d, self.field) for m, d in zip(self.maps, self.target.dims)]
        return subrep_from_spaces(self.target, spaces, name or f"im({self.source.name})")

    def cokernel(self, name: Optional[str] = None) -> tuple[Rep, "RepMap"]:
        spaces = [echelon_basis(m.columns(), d, self.field) for m, d in zip(self.maps, self.target.dims)]
        return quotient_from_spaces(self.target, spaces, name or f"coker({self.source.name})")


# sub- and quotient modules

def _closure(m: Rep, spaces: list[list[tuple]]) -> list[list[tuple]]:
    f = m.field
    q = m.algebra.quiver
    spaces = [echelon_basis(s, d, f) for s, d in zip(spaces, m.dims)]
    changed = True
    while changed:
        changed = False
        for a in q.arrows:
            si, ti = m.vertex_index(a.source), m.vertex_index(a.target)
            if not spaces[si]:
                continue
            images = [m.maps[a.name].apply(u) for u in spaces[si]]
            grown = echelon_basis(spaces[ti] + images, m.dims[ti], f)
            if len(grown) != len(spaces[ti]):
                spaces[ti] = grown
                changed = True
    return spaces


def subrep_from_spaces(m: Rep, spaces: Sequence[Sequence[tuple]], name: str = "U", close: bool = True) -> tuple[Rep, RepMap]:
    f = m.field
    spaces = _closure(m, [list(s) for s in spaces]) if close else [list(s) for s in spaces]
    coords = [SpanCoordinates(s, d, f) for s, d in zip(spaces, m.dims)]
    maps = {}
    for a in m.algebra.quiver.arrows:
        si, ti = m.vertex_index(a.source), m.vertex_index(a.target)
        cols = []
        for u in spaces[si]:
            c = coords[ti].coordinates(m.maps[a.name].apply(u))
            if c is None:
                raise InternalConsistencyError(f"{name} is not closed under arrow {a.name}")
            cols.append(c)
        maps[a.name] = Matrix.from_columns(f, cols, len(spaces[ti]))
    sub = Rep(m.algebra, [len(s) for s in spaces], maps, name, check=False)
    inclusion = RepMap(sub, m, [Matrix.from_columns(f, s, d) for s, d in zip(spaces, m.dims)], check=False)
    return sub, inclusion


class _Residue:
    """Coordinates of a vector space modulo an echelonized subspace."""

    def __init__(self, echelon: Sequence[tuple], dim: int, field):
        self.field = field
        self.dim = dim
        rows, self.pivots = _reduce_rows([list(v) for v in echelon], dim, field) if echelon else ([], [])
        self.rows = rows[:len(self.pivots)]
        self.free = [j for j in range(dim) if j not in set(self.pivots)]

    def coords(self, x: Sequence) -> tuple:
        f = self.field
        x = list(x)
        for row, c in zip(self.rows, self.pivots):
            s = x[c]
            if s != 0:
                x = [a if b == 0 else f.reduce(a - s * b) for a, b in zip(x, row)]
        return tuple(x[j] for j in self.free)


def quotient_from_spaces(m: Rep, spaces: Sequence[Sequence[tuple]], name: str = "M/U") -> tuple[Rep, RepMap]:
    f = m.field
    spaces = _closure(m, [list(s) for s in spaces])
    residues = [_Residue(s, d, f) for s, d in zip(spaces, m.dims)]
    maps = {}
    for a in m.algebra.quiver.arrows:
        si, ti = m.vertex_index(a.source), m.vertex_index(a.target)
        cols = [residues[ti].coords(m.maps[a.name].column(j)) for j in residues[si].free]
        maps[a.name] = Matrix.from_columns(f, cols, len(residues[ti].free))
    quotient = Rep(m.algebra, [len(r.free) for r in residues], maps, name, check=False)
    projection = RepMap(m, quotient, [
        Matrix.from_columns(f, [r.coords(_unit(f, d, j)) for j in range(d)], len(r.free))
        for r, d in zip(residues, m.dims)
    ], check=False)
    return quotient, projection


def generated_spaces(m: Rep, vectors: Sequence[Sequence]) -> list[list[tuple]]:
    """Echelonized vertex spaces of the smallest subrepresentation containing the given global vectors."""
    spaces: list[list[tuple]] = [[] for _ in m.dims]
    for v in vectors:
        if len(v) != m.dim:
            raise DimensionMismatchError(f"vector of length {len(v)} does not live in {m.name} (dim {m.dim})")
        for i, part in enumerate(m.split(tuple(m.field.coerce(x) for x in v))):
            if any(x != 0 for x in part):
                spaces[i].append(part)
    return _closure(m, spaces)


def sub_rep_generated(m: Rep, vectors: Sequence[Sequence], name: str = "U") -> tuple[Rep, RepMap]:
    return subrep_from_spaces(m, generated_spaces(m, vectors), name, close=False)


def radical_rep(m: Rep) -> tuple[Rep, RepMap]:
    return subrep_from_spaces(m, [m.arrow_images(i) for i in range(len(m.dims))], f"rad({m.name})", close=False)


def socle_rep(m: Rep) -> tuple[Rep, RepMap]:
    return subrep_from_spaces(m, [m.arrow_kernel(i) for i in range(len(m.dims))], f"soc({m.name})", close=False)


def top_rep(m: Rep) -> tuple[Rep, RepMap]:
    return quotient_from_spaces(m, [m.arrow_images(i) for i in range(len(m.dims))], f"top({m.name})")


def top_lifts(m: Rep) -> list[tuple[int, tuple]]:
    """(vertex index, local vector) pairs lifting a basis of top(m)."""
    lifts = []
    for i, d in enumerate(m.dims):
        for v in complement_basis(m.arrow_images(i), d, m.field):
            lifts.append((i, v))
    return lifts


def direct_sum(reps: Sequence[Rep], name: Optional[str] = None) -> tuple[Rep, list[RepMap], list[RepMap]]:
    if not reps:
        raise UsageError("direct sum of an empty list")
    algebra = reps[0].algebra
    if any(r.algebra is not algebra for r in reps):
        raise AlgebraMismatchError("direct sum of modules over different algebras")
    f = algebra.field
    dims = [sum(r.dims[i] for r in reps) for i in range(len(algebra.vertices))]
    maps = {a.name: Matrix.block_diagonal(f, [r.maps[a.name] for r in reps]) for a in algebra.quiver.arrows}
    total = Rep(algebra, dims, maps, name or " + ".join(r.name for r in reps), check=False)
    injections, projections = [], []
    before = [0] * len(dims)
    for r in reps:
        inj, proj = [], []
        for i, d in enumerate(r.dims):
            block = [[f.zero] * d for _ in range(dims[i])]
            for k in range(d):
                block[before[i] + k][k] = f.one
            mat = Matrix(f, dims[i], d, tuple(tuple(row) for row in block))
            inj.append(mat)
            proj.append(mat.transpose())
        injections.append(RepMap(r, total, inj, check=False))
        projections.append(RepMap(total, r, proj, check=False))
        before = [b + d for b, d in zip(before, r.dims)]
    return total, injections, projections


# standard modules

def _word_module(a: Algebra, words: list[list[int]], name: str) -> Rep:
    """Module on spans of basis words (one index list per vertex) with left multiplication by arrows."""
    f = a.field
    position = {}
    for i, idxs in enumerate(words):
        for k, j in enumerate(idxs):
            position[j] = (i, k)
    maps = {}
    for arrow in a.quiver.arrows:
        si, ti = a.quiver.vertex_index(arrow.source), a.quiver.vertex_index(arrow.target)
        cols = []
        for j in words[si]:
            prod = a.multiply(a.arrow_elements[arrow.name], a.unit_vector(j))
            col = [f.zero] * len(words[ti])
            for k, c in enumerate(prod):
                if c != 0:
                    vi, pos = position[k]
                    if vi != ti:
                        raise InternalConsistencyError(f"{name}: arrow {arrow.name} leaves its target space")
                    col[pos] = c
            cols.append(tuple(col))
        maps[arrow.name] = Matrix.from_columns(f, cols, len(words[ti]))
    rep = Rep(a, [len(w) for w in words], maps, name)
    rep.basis_words = [[a.basis[j] for j in idxs] for idxs in words]
    return rep


def regular_rep(a: Algebra) -> Rep:
    """A as a left module; the vertex-v space is spanned by the basis words ending at v."""
    if "regular" not in a._cache:
        words = [[j for j, b in enumerate(a.basis) if b.target == v] for v in a.vertices]
        a._cache["regular"] = _word_module(a, words, "A")
    return a._cache["regular"]


def projective(a: Algebra, vertex: str) -> Rep:
    """P(v) = A e_v."""
    a.quiver.vertex_index(vertex)
    key = ("projective", vertex)
    if key not in a._cache:
        words = [[j for j, b in enumerate(a.basis) if b.source == vertex and b.target == v] for v in a.vertices]
        a._cache[key] = _word_module(a, words, f"P{vertex}")
    return a._cache[key]


def simple(a: Algebra, vertex: str) -> Rep:
    i = a.quiver.vertex_index(vertex)
    key = ("simple", vertex)
    if key not in a._cache:
        a._cache[key] = Rep(a, [1 if k == i else 0 for k in range(len(a.vertices))], name=f"S{vertex}")
    return a._cache[key]


def zero_rep(a: Algebra) -> Rep:
    return Rep(a, [0] * len(a.vertices), name="0", check=False)


def right_multiplication_map(a: Algebra, u: Sequence, source_vertex: str, target_vertex: str) -> RepMap:
    """z -> z*u as a map P(source_vertex) -> P(target_vertex); u must lie in e_source A e_target."""
    src, tgt = projective(a, source_vertex), projective(a, target_vertex)
    f = a.field
    maps = []
    for i in range(len(a.vertices)):
        target_index = {a.basis.index(b): k for k, b in enumerate(tgt.basis_words[i])}
        cols = []
        for b in src.basis_words[i]:
            prod = a.multiply(a.unit_vector(a.basis.index(b)), u)
            col = [f.zero] * len(tgt.basis_words[i])
            for k, c in enumerate(prod):
                if c != 0:
                    if k not in target_index:
                        raise InternalConsistencyError("right multiplication leaves the target projective")
                    col[target_index[k]] = c
            cols.append(tuple(col))
        maps.append(Matrix.from_columns(f, cols, len(tgt.basis_words[i])))
    return RepMap(src, tgt, maps)


# Hom spaces

def hom_basis(m: Rep, n: Rep) -> list[RepMap]:
    """Basis of Hom(m, n) as the solution space of the intertwining equations."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatchError(f"Hom({m.name}, {n.name}) across different algebras")
    f = m.field
    offsets, total = [], 0
    for md, nd in zip(m.dims, n.dims):
        offsets.append(total)
        total += md * nd
    if total == 0:
        return []
    rows = []
    for a in m.algebra.quiver.arrows:
        si, ti = m.vertex_index(a.source), m.vertex_index(a.target)
        n_a, m_a = n.maps[a.name], m.maps[a.name]
        ms, nt, ns, mt = m.dims[si], n.dims[ti], n.dims[si], m.dims[ti]
        for i in range(nt):
            for j in range(ms):
                row = [f.zero] * total
                # (N_a X_s)[i][j]
                for k in range(ns):
                    c = n_a.data[i][k]
                    if c != 0:
                        idx = offsets[si] + k * ms + j
                        row[idx] = f.reduce(row[idx] + c)
                # - (X_t M_a)[i][j]
                for k in range(mt):
                    c = m_a.data[k][j]
                    if c != 0:
                        idx = offsets[ti] + i * mt + k
                        row[idx] = f.reduce(row[idx] - c)
                if any(x != 0 for x in row):
                    rows.append(row)
    if rows:
        basis = nullspace_basis(Matrix(f, len(rows), total, tuple(tuple(r) for r in rows)))
    else:
        basis = [_unit(f, total, i) for i in range(total)]
    maps = []
    for vec in basis:
        blocks = []
        for off, md, nd in zip(offsets, m.dims, n.dims):
            blocks.append(Matrix(f, nd, md, tuple(tuple(vec[off + r * md: off + (r + 1) * md]) for r in range(nd))))
        maps.append(RepMap(m, n, blocks, check=False))
    return maps


def hom_dim(m: Rep, n: Rep) -> int:
    return len(hom_basis(m, n))


def map_coordinates(maps: Sequence[RepMap]) -> Optional[SpanCoordinates]:
    if not maps:
        return None
    flat = [g.flatten() for g in maps]
    return SpanCoordinates(flat, len(flat[0]), maps[0].field)


# endomorphism algebras

def _check_certifiable(field, size: int, what: str):
    if field.is_finite() and field.characteristic() <= size:
        raise CertificationError(
            f"{what} needs a field with more than {size} elements; working over {field}"
        )


class EndAlgebra:
    """End(M) with structure constants and the radical of its trace form."""

    def __init__(self, rep: Rep, basis: Sequence[RepMap]):
        self.rep = rep
        self.field = rep.field
        self.basis = list(basis)
        self.dim = len(self.basis)
        f = self.field
        self._span = map_coordinates(self.basis)
        self.constants = [[self.coordinates(bi.compose(bj)) for bj in self.basis] for bi in self.basis]
        tau = [f.reduce(sum(self.constants[l][k][k] for k in range(self.dim))) for l in range(self.dim)]
        form = Matrix(f, self.dim, self.dim, tuple(
            tuple(f.reduce(sum(c * t for c, t in zip(self.constants[i][j], tau))) for j in range(self.dim))
            for i in range(self.dim)
        ))
        self.radical = echelon_basis(nullspace_basis(form), self.dim, f) if self.dim else []
        self._radical_span = SpanCoordinates(self.radical, self.dim, f)

    @property
    def radical_dim(self) -> int:
        return len(self.radical)

    @property
    def top_dim(self) -> int:
        return self.dim - self.radical_dim

    def coordinates(self, g: RepMap) -> tuple:
        c = self._span.coordinates(g.flatten()) if self._span else ()
        if c is None:
            raise InternalConsistencyError(f"map is not an endomorphism of {self.rep.name}")
        return c

    def element(self, coords: Sequence) -> RepMap:
        g = RepMap.zero(self.rep, self.rep)
        for c, b in zip(coords, self.basis):
            if c != 0:
                g = g + b.scale(c)
        return g

    def in_radical(self, g: RepMap) -> bool:
        return self._radical_span.contains(self.coordinates(g))


def end_algebra(m: Rep) -> EndAlgebra:
    if "end" not in m._cache:
        basis = hom_basis(m, m)
        _check_certifiable(m.field, len(basis), f"radical of End({m.name})")
        m._cache["end"] = EndAlgebra(m, basis)
    return m._cache["end"]


# decomposition

@dataclass
class Indecomposability:
    verdict: str  # "yes", "no" or "undetermined"
    summands: Optional[tuple[Rep, Rep]] = None
    endomorphism: Optional[RepMap] = None


def fitting_split(m: Rep, h: RepMap) -> tuple[tuple[Rep, RepMap], tuple[Rep, RepMap]]:
    """m = ker h^n (+) im h^n for n = dim m."""
    hn = h.power(max(m.dim, 1))
    return hn.kernel(f"{m.name}.0"), hn.image(f"{m.name}.1")


def _endomorphism_candidates(end: EndAlgebra, reverse: bool):
    basis = list(reversed(end.basis)) if reverse else list(end.basis)
    yield from basis
    for g, h in combinations(basis, 2):
        yield g + h
    for g, h in combinations(basis, 2):
        yield g.compose(h)


def _splitting_endomorphism(m: Rep, end: EndAlgebra, reverse: bool) -> Optional[RepMap]:
    f = m.field
    ident = RepMap.identity(m)
    for g in _endomorphism_candidates(end, reverse):
        poly = minimal_polynomial(g.global_matrix())
        if len(poly) <= 2:
            continue
        roots = poly_roots(poly, f)
        if not roots:
            continue
        lam = roots[0]
        expected = _linear_power(f, lam, len(poly) - 1)
        if len(roots) == 1 and [f.reduce(c) for c in poly] == expected:
            continue
        return g - ident.scale(lam)
    return None


def _linear_power(f, lam, deg: int) -> list:
    """Coefficients of (t - lam)^deg, lowest first."""
    poly = [f.one]
    for _ in range(deg):
        shifted = [f.zero] + poly
        scaled = [f.reduce(-lam * c) for c in poly] + [f.zero]
        poly = [f.reduce(a + b) for a, b in zip(shifted, scaled)]
    return poly


def is_indecomposable(m: Rep, reverse: bool = False) -> Indecomposability:
    if m.is_zero():
        raise UsageError("indecomposability of the zero module")
    end = end_algebra(m)
    if end.top_dim == 1:
        return Indecomposability("yes")
    h = _splitting_endomorphism(m, end, reverse)
    if h is None:
        logger.warning(f"{m.name}: End/rad has dim {end.top_dim} but no splitting endomorphism was found")
        return Indecomposability("undetermined")
    (k, _), (i, _) = fitting_split(m, h)
    return Indecomposability("no", (k, i), h)


def _indecomposable_summands(m: Rep, reverse: bool) -> list[Rep]:
    out, stack = [], [m]
    while stack:
        r = stack.pop()
        if r.is_zero():
            continue
        res = is_indecomposable(r, reverse)
        if res.verdict == "yes":
            out.append(r)
        elif res.verdict == "no":
            stack.extend(reversed(res.summands))
        else:
            raise UndeterminedSummandError(f"cannot decide whether {r.name} (dims {r.dims}) decomposes")
    return out


def decompose(m: Rep, reverse: bool = False) -> list[tuple[Rep, int]]:
    """Krull-Schmidt decomposition as (representative, multiplicity) pairs."""
    groups: list[list] = []
    for s in _indecomposable_summands(m, reverse):
        for g in groups:
            if _iso_indecomposable(g[0], s):
                g[1] += 1
                break
        else:
            groups.append([s, 1])
    groups.sort(key=lambda g: (g[0].dim, g[0].dims, g[0].fingerprint()[1]))
    result = []
    for k, (rep, mult) in enumerate(groups):
        result.append((rep.renamed(f"{m.name}[{k}]"), mult))
    return result


def _iso_indecomposable(m: Rep, n: Rep) -> bool:
    """Isomorphism test for an indecomposable m: some g f lies outside rad End(m)."""
    if m.fingerprint() != n.fingerprint():
        return False
    if m.is_zero():
        return True
    forward = hom_basis(m, n)
    backward = hom_basis(n, m)
    if not forward or not backward:
        return False
    end = end_algebra(m)
    for g in backward:
        for f in forward:
            if not end.in_radical(g.compose(f)):
                return True
    return False


def _grid_isomorphism(m: Rep, maps: list[RepMap]) -> bool:
    """Cheap search for an invertible element of Hom(m, n) along a moment curve."""
    f = m.field
    for g in maps:
        if g.is_bijective():
            return True
    budget = config.ISO_GRID_BUDGET
    limit = min(budget, m.dim + 1) if not f.is_finite() else min(budget, m.dim + 1, f.characteristic() - 1)
    for t in range(1, limit + 1):
        g = RepMap.zero(maps[0].source, maps[0].target)
        c = f.one
        for h in maps:
            g = g + h.scale(c)
            c = f.reduce(c * t)
        if g.is_bijective():
            return True
    return False


def is_iso(m: Rep, n: Rep) -> bool:
    if m.algebra is not n.algebra:
        raise AlgebraMismatchError("isomorphism test across different algebras")
    _check_certifiable(m.field, max(m.dim, n.dim), "isomorphism test")
    if m.dims != n.dims or m.fingerprint() != n.fingerprint():
        return False
    if m.is_zero():
        return True
    maps = hom_basis(m, n)
    if not maps:
        return False
    if _grid_isomorphism(m, maps):
        return True
    if is_indecomposable(m).verdict == "yes":
        return _iso_indecomposable(m, n)
    left, right = decompose(m), decompose(n)
    if len(left) != len(right):
        return False
    unmatched = list(right)
    for rep, mult in left:
        for k, (other, other_mult) in enumerate(unmatched):
            if mult == other_mult and _iso_indecomposable(rep, other):
                unmatched.pop(k)
                break
        else:
            return False
    return True


def is_simple(m: Rep) -> bool:
    return m.dim == 1


# projective covers, syzygies, duality

def projective_cover(m: Rep) -> tuple[Rep, RepMap]:
    a = m.algebra
    if m.is_zero():
        z = zero_rep(a)
        return z, RepMap.zero(z, m)
    parts, blocks = [], []
    for i, lift in top_lifts(m):
        v = a.vertices[i]
        p = projective(a, v)
        per_vertex = []
        for u, words in enumerate(p.basis_words):
            cols = [m.word_matrix(b.word, v).apply(lift) for b in words]
            per_vertex.append(Matrix.from_columns(m.field, cols, m.dims[u]))
        parts.append(p)
        blocks.append(per_vertex)
    cover, _, _ = direct_sum(parts, f"P({m.name})")
    maps = []
    for u in range(len(a.vertices)):
        mat = Matrix.zeros(m.field, m.dims[u], 0)
        for per_vertex in blocks:
            mat = mat.hstack(per_vertex[u])
        maps.append(mat)
    return cover, RepMap(cover, m, maps)


def syzygy(m: Rep) -> Rep:
    _, pi = projective_cover(m)
    k, _ = pi.kernel(f"syz({m.name})")
    return k


def is_projective(m: Rep) -> bool:
    if m.is_zero():
        return True
    cover, _ = projective_cover(m)
    return cover.dim == m.dim


def proj_dim_at_most(m: Rep, k: int) -> bool:
    if k < 0:
        raise UsageError("projective dimension bound must be non-negative")
    current = m
    for _ in range(k):
        if is_projective(current):
            return True
        current = syzygy(current)
    return is_projective(current)


def linear_dual(m: Rep) -> Rep:
    """D m = Hom_k(m, k) over the opposite algebra."""
    op = opposite_algebra(m.algebra)
    maps = {name: mat.transpose() for name, mat in m.maps.items()}
    return Rep(op, m.dims, maps, f"D({m.name})")


def injective_envelope(m: Rep) -> tuple[Rep, RepMap]:
    """I(m) = D(projective cover of D m) with the dual of the cover map."""
    dm = linear_dual(m)
    cover, pi = projective_cover(dm)
    envelope = linear_dual(cover).renamed(f"I({m.name})")
    return envelope, RepMap(m, envelope, [mat.transpose() for mat in pi.maps])


def ext1(m: Rep, n: Rep) -> int:
    """dim Ext^1(m, n) from the projective cover presentation."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatchError("Ext across different algebras")
    cover, pi = projective_cover(m)
    omega, inc = pi.kernel()
    target_basis = hom_basis(omega, n)
    if not target_basis:
        return 0
    restricted = [g.compose(inc).flatten() for g in hom_basis(cover, n)]
    image_rank = len(echelon_basis(restricted, len(target_basis[0].flatten()), m.field)) if restricted else 0
    return len(target_basis) - image_rank

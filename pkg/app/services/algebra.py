"""Finite-dimensional algebras kQ/I given by a quiver with relations.

Paths are tuples of arrow names written right to left: the word ("c", "x")
means "apply x first, then c". Trivial paths are the empty word together with
a vertex.
"""
import logging
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Any, Optional, Sequence

from app import config
from app.exceptions import (
    AdmissibilityError,
    AlgebraMismatchError,
    BudgetExceededError,
    InternalConsistencyError,
    InvalidIdealError,
    UsageError,
)
from app.interfaces import FieldInterface
from app.services.linalg import Matrix, _reduce_rows, echelon_basis, nullspace_basis, SpanCoordinates

logger = logging.getLogger(__name__)

Word = tuple[str, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AdmissibilityError("vertex names must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AdmissibilityError("arrow names must be unique")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise AdmissibilityError(f"arrow {a.name} uses an undeclared vertex")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise AdmissibilityError(f"unknown arrow {name!r}")

    def vertex_index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise UsageError(f"unknown vertex {v!r}")

    def word_endpoints(self, word: Word) -> tuple[str, str]:
        """(source, target) of a nonempty composable word."""
        arrows = [self.arrow(n) for n in word]
        for left, right in zip(arrows, arrows[1:]):
            if right.target != left.source:
                raise AdmissibilityError(
                    f"word {'*'.join(word)} is not composable: {left.name} cannot follow {right.name}"
                )
        return arrows[-1].source, arrows[0].target

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


# a relation is a tuple of (coefficient, word) terms
Relation = tuple[tuple[Any, Word], ...]


def format_coefficient(c: Any, field: FieldInterface) -> tuple[str, str]:
    """(sign, magnitude) with the magnitude empty for 1."""
    if field.is_finite():
        p = field.characteristic()
        value = int(c) % p
        negative = value > p // 2
        magnitude = p - value if negative else value
    else:
        negative = c < 0
        magnitude = -c if negative else c
    text = "" if magnitude == 1 else f"{magnitude}*"
    return ("-" if negative else "+"), text


def format_relation(rel: Relation, field: FieldInterface) -> str:
    parts = []
    for k, (c, word) in enumerate(rel):
        sign, magnitude = format_coefficient(c, field)
        term = magnitude + "*".join(word)
        if k == 0:
            parts.append(term if sign == "+" else f"-{term}")
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts)


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    field: FieldInterface
    relations: tuple[Relation, ...] = ()
    nilpotency: int = config.NILPOTENCY_BOUND
    name: str = "algebra"
    min_relation_length: int = 2

    def __post_init__(self):
        if self.nilpotency < 1:
            raise AdmissibilityError("nilpotency bound must be at least 1")
        for rel in self.relations:
            for _, word in rel:
                if len(word) < self.min_relation_length:
                    raise AdmissibilityError(
                        f"relation word {'*'.join(word) or '<trivial>'} is shorter than {self.min_relation_length}"
                    )
                self.quiver.word_endpoints(word)

    def with_field(self, field: FieldInterface) -> "Presentation":
        relations = tuple(tuple((field.coerce(c), w) for c, w in rel) for rel in self.relations)
        return Presentation(self.quiver, field, relations, self.nilpotency, self.name, self.min_relation_length)


@dataclass(frozen=True)
class BasisWord:
    word: Word
    source: str
    target: str
    label: str

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_trivial(self) -> bool:
        return not self.word


def word_label(word: Word, vertex: str = "") -> str:
    if not word:
        return f"e{vertex}"
    if all(len(n) == 1 for n in word):
        return "".join(word)
    return "*".join(word)


class Algebra:
    """Basis, multiplication table and arrow elements of a finite-dimensional algebra.

    `mult[i][j]` is the coefficient vector of basis[i] * basis[j].
    """

    def __init__(
        self,
        name: str,
        quiver: Quiver,
        field: FieldInterface,
        basis: Sequence[BasisWord],
        mult: Sequence[Sequence[tuple]],
        arrow_elements: dict[str, tuple],
        relations: Sequence[Relation],
        presentation: Optional[Presentation] = None,
    ):
        self.name = name
        self.quiver = quiver
        self.field = field
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self.mult = tuple(tuple(row) for row in mult)
        self.arrow_elements = dict(arrow_elements)
        self.relations = tuple(relations)
        self.presentation = presentation
        self._opposite: Optional["Algebra"] = None
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, dim={self.dim}, field={self.field})"

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def labels(self) -> list[str]:
        return [b.label for b in self.basis]

    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def unit_vector(self, i: int) -> tuple:
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.dim))

    def index_of(self, label: str) -> int:
        for i, b in enumerate(self.basis):
            if b.label == label:
                return i
        raise UsageError(f"{self.name} has no basis element {label!r}")

    def element(self, label: str) -> "AlgebraElement":
        return AlgebraElement(self, self.unit_vector(self.index_of(label)))

    def idempotent_index(self, vertex: str) -> int:
        for i, b in enumerate(self.basis):
            if b.is_trivial and b.source == vertex:
                return i
        raise UsageError(f"unknown vertex {vertex!r}")

    def idempotent(self, vertex: str) -> tuple:
        return self.unit_vector(self.idempotent_index(vertex))

    def one(self) -> tuple:
        f = self.field
        return tuple(f.one if b.is_trivial else f.zero for b in self.basis)

    def multiply(self, u: Sequence[Any], v: Sequence[Any]) -> tuple:
        f = self.field
        out = [f.zero] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.mult[i]
            for j, b in enumerate(v):
                if b == 0:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c != 0:
                        out[k] = f.reduce(out[k] + ab * c)
        return tuple(out)

    def left_multiplication(self, u: Sequence[Any]) -> Matrix:
        """Matrix of v -> u*v in the basis."""
        return Matrix.from_columns(self.field, [self.multiply(u, self.unit_vector(j)) for j in range(self.dim)], self.dim)

    def right_multiplication(self, u: Sequence[Any]) -> Matrix:
        return Matrix.from_columns(self.field, [self.multiply(self.unit_vector(j), u) for j in range(self.dim)], self.dim)

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i))

    def radical_indices(self) -> list[int]:
        return [i for i, b in enumerate(self.basis) if not b.is_trivial]

    def is_local(self) -> bool:
        return len(self.vertices) == 1

    def radical_square_is_zero(self) -> bool:
        rad = self.radical_indices()
        return all(all(c == 0 for c in self.mult[i][j]) for i in rad for j in rad)

    def format_element(self, v: Sequence[Any]) -> str:
        terms = []
        for c, b in zip(v, self.basis):
            if c == 0:
                continue
            terms.append(b.label if c == 1 else f"{self.field.format(c)}*{b.label}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class AlgebraElement:
    algebra: Algebra = dc_field(compare=False)
    coeffs: tuple

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError("elements of different algebras")
        return AlgebraElement(self.algebra, self.algebra.multiply(self.coeffs, other.coeffs))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        f = self.algebra.field
        return AlgebraElement(self.algebra, tuple(f.reduce(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __str__(self) -> str:
        return self.algebra.format_element(self.coeffs)


# construction

def _word_key(quiver: Quiver, word: Word, source: str) -> tuple:
    return (len(word), quiver.vertex_index(source), word)


def _split_by_endpoints(quiver: Quiver, relations: Sequence[Relation]) -> list[tuple[str, str, Relation]]:
    """The components e_t r e_s of every relation r."""
    parts = []
    for rel in relations:
        groups: dict[tuple[str, str], list] = {}
        for c, w in rel:
            groups.setdefault(quiver.word_endpoints(w), []).append((c, w))
        for (s, t), terms in groups.items():
            parts.append((s, t, tuple(terms)))
    return parts


def _is_homogeneous(parts: Sequence[tuple[str, str, Relation]]) -> bool:
    return all(len({len(w) for _, w in terms}) == 1 for _, _, terms in parts)


class _GradedReducer:
    """Normal forms of paths, one graded piece at a time.

    The degree-L piece is built as (arrows x degree-(L-1) normal words) modulo
    the images of r*q for relation components r and normal words q.
    """

    def __init__(self, presentation: Presentation):
        self.p = presentation
        self.q = presentation.quiver
        self.f = presentation.field
        self.relations = _split_by_endpoints(self.q, presentation.relations)
        if not _is_homogeneous(self.relations):
            raise InternalConsistencyError("the graded reducer needs homogeneous relations")
        # normal[L] = list of (word, source) in basis order
        self.normal: list[list[tuple[Word, str]]] = [[((), v) for v in self.q.vertices]]
        self._index: list[dict] = [{((), v): i for i, v in enumerate(self.q.vertices)}]
        self._levels: list[Optional[dict]] = [None]
        self._memo: dict = {}

    def _normal_source(self, level: int, i: int) -> str:
        return self.normal[level][i][1]

    def _target(self, word: Word, source: str) -> str:
        return self.q.arrow(word[0]).target if word else source

    def build(self) -> int:
        bound = self.p.nilpotency
        for level in range(1, bound + 2):
            self._build_level(level)
            if not self.normal[level]:
                return level
        raise AdmissibilityError(
            f"paths of length {bound + 1} do not all vanish; admissibility is unproven for nilpotency bound {bound}"
        )

    def _build_level(self, level: int):
        f = self.f
        prev = self.normal[level - 1]
        pairs = []
        for a in self.q.arrows:
            for n_idx, (w, s) in enumerate(prev):
                if self._target(w, s) == a.source:
                    pairs.append((a.name, n_idx, (a.name,) + w, s))
        pairs.sort(key=lambda t: _word_key(self.q, t[2], t[3]), reverse=True)
        pair_index = {(a, n): i for i, (a, n, _, _) in enumerate(pairs)}

        rows = []
        for s, t, terms in self.relations:
            k = len(terms[0][1])
            if k > level:
                continue
            for q_word, q_source in self.normal[level - k]:
                if self._target(q_word, q_source) != s:
                    continue
                vec = [f.zero] * len(pairs)
                for c, w in terms:
                    head, rest = w[0], w[1:] + q_word
                    coords = self.normal_form(rest, q_source)
                    for n_idx, x in enumerate(coords):
                        if x != 0:
                            j = pair_index[(head, n_idx)]
                            vec[j] = f.reduce(vec[j] + c * x)
                if any(v != 0 for v in vec):
                    rows.append(vec)
        reduced, pivots = _reduce_rows(rows, len(pairs), f) if rows else ([], [])
        reduced = reduced[:len(pivots)]
        pivot_set = set(pivots)
        standard = [i for i in range(len(pairs)) if i not in pivot_set]
        standard.sort(key=lambda i: _word_key(self.q, pairs[i][2], pairs[i][3]))
        self.normal.append([(pairs[i][2], pairs[i][3]) for i in standard])
        self._index.append({(pairs[i][2], pairs[i][3]): k for k, i in enumerate(standard)})
        self._levels.append({
            "pairs": pair_index,
            "rows": reduced,
            "pivots": pivots,
            "standard": standard,
        })

    def normal_form(self, word: Word, source: str) -> list:
        """Coordinates of a path in the normal words of its length (empty list past the top level)."""
        key = (word, source)
        if key in self._memo:
            return self._memo[key]
        f = self.f
        level = len(word)
        if level >= len(self.normal):
            return []
        if level == 0:
            result = [f.one if v == source else f.zero for _, v in self.normal[0]]
            self._memo[key] = result
            return result
        data = self._levels[level]
        inner = self.normal_form(word[1:], source)
        vec = [f.zero] * len(data["pairs"])
        for n_idx, x in enumerate(inner):
            if x != 0:
                j = data["pairs"].get((word[0], n_idx))
                if j is not None:
                    vec[j] = x
        for row, c in zip(data["rows"], data["pivots"]):
            s = vec[c]
            if s != 0:
                vec = [a if b == 0 else f.reduce(a - s * b) for a, b in zip(vec, row)]
        result = [vec[i] for i in data["standard"]]
        self._memo[key] = result
        return result

    def standard_words(self) -> list[tuple[Word, str]]:
        return [e for level in self.normal for e in level]

    def reduce_path(self, word: Word, source: str) -> dict[tuple[Word, str], Any]:
        coords = self.normal_form(word, source)
        return {self.normal[len(word)][k]: x for k, x in enumerate(coords) if x != 0}


class _FilteredReducer:
    """Normal forms when some relation mixes path lengths.

    Works in the span of all paths of length at most N+1, longer paths being
    zero there. The ideal is the span of the relation components closed under
    multiplication by arrows on either side. Rows are echelonized on their
    largest path, so the shortest paths survive as basis words.
    """

    def __init__(self, presentation: Presentation):
        self.p = presentation
        self.q = presentation.quiver
        self.f = presentation.field
        self.top = presentation.nilpotency + 1
        self.rows: dict[tuple[Word, str], dict] = {}
        self.standard: list[tuple[Word, str]] = []

    def _key(self, entry: tuple[Word, str]) -> tuple:
        return _word_key(self.q, entry[0], entry[1])

    def _target(self, word: Word, source: str) -> str:
        return self.q.arrow(word[0]).target if word else source

    def _paths(self) -> list[tuple[Word, str]]:
        level = [((), v) for v in self.q.vertices]
        paths = list(level)
        for length in range(1, self.top + 1):
            level = [
                ((a.name,) + w, s) for w, s in level for a in self.q.arrows if a.source == self._target(w, s)
            ]
            paths += level
            if len(paths) > config.PATH_SPACE_BUDGET:
                raise BudgetExceededError(
                    f"{self.p.name}: more than {config.PATH_SPACE_BUDGET} paths of length <= {length}"
                )
            if not level:
                break
        return paths

    def _reduce(self, vec: dict) -> dict:
        f = self.f
        vec = dict(vec)
        while True:
            hits = [e for e in vec if e in self.rows]
            if not hits:
                return vec
            lead = max(hits, key=self._key)
            s = vec[lead]
            for e, c in self.rows[lead].items():
                value = f.reduce(vec.get(e, f.zero) - s * c)
                if value == 0:
                    vec.pop(e, None)
                else:
                    vec[e] = value

    def _insert(self, vec: dict) -> Optional[dict]:
        f = self.f
        rest = self._reduce(vec)
        if not rest:
            return None
        lead = max(rest, key=self._key)
        inv = f.inv(rest[lead])
        row = {e: f.reduce(c * inv) for e, c in rest.items()}
        self.rows[lead] = row
        return row

    def _left(self, arrow: Arrow, vec: dict) -> dict:
        return {
            ((arrow.name,) + w, s): c for (w, s), c in vec.items()
            if self._target(w, s) == arrow.source and len(w) < self.top
        }

    def _right(self, arrow: Arrow, vec: dict) -> dict:
        return {
            (w + (arrow.name,), arrow.source): c for (w, s), c in vec.items()
            if s == arrow.target and len(w) < self.top
        }

    def build(self):
        f = self.f
        paths = self._paths()
        queue: deque = deque()
        for s, _, terms in _split_by_endpoints(self.q, self.p.relations):
            vec: dict = {}
            for c, w in terms:
                if len(w) > self.top:
                    continue
                value = f.reduce(vec.get((w, s), f.zero) + f.coerce(c))
                if value == 0:
                    vec.pop((w, s), None)
                else:
                    vec[(w, s)] = value
            row = self._insert(vec)
            if row is not None:
                queue.append(row)
        while queue:
            row = queue.popleft()
            for arrow in self.q.arrows:
                for image in (self._left(arrow, row), self._right(arrow, row)):
                    if image:
                        new = self._insert(image)
                        if new is not None:
                            queue.append(new)

        long = [e for e in paths if len(e[0]) == self.top and self._reduce({e: f.one})]
        if long:
            raise AdmissibilityError(
                f"path {word_label(*long[0])} of length {self.top} does not vanish; "
                f"admissibility is unproven for nilpotency bound {self.p.nilpotency}"
            )
        self.standard = sorted((e for e in paths if e not in self.rows), key=self._key)
        logger.debug(f"{self.p.name}: ideal has dimension {len(self.rows)} in {len(paths)} paths")

    def standard_words(self) -> list[tuple[Word, str]]:
        return list(self.standard)

    def reduce_path(self, word: Word, source: str) -> dict[tuple[Word, str], Any]:
        if len(word) > self.top:
            return {}
        return self._reduce({(word, source): self.f.one})


def build_algebra(presentation: Presentation) -> Algebra:
    """Basis and multiplication table of kQ/I, or AdmissibilityError.

    Homogeneous relations are reduced one path length at a time; relations that
    mix lengths are reduced in the truncated path space up to the nilpotency bound.
    """
    q = presentation.quiver
    f = presentation.field
    parts = _split_by_endpoints(q, presentation.relations)
    if _is_homogeneous(parts):
        reducer = _GradedReducer(presentation)
    else:
        mixed = next(rel for rel in presentation.relations if len({len(w) for _, w in rel}) > 1)
        logger.info(f"{presentation.name}: relation {format_relation(mixed, f)} mixes path lengths")
        reducer = _FilteredReducer(presentation)
    reducer.build()

    entries = sorted(reducer.standard_words(), key=lambda e: _word_key(q, e[0], e[1]))
    position = {e: i for i, e in enumerate(entries)}
    basis = [
        BasisWord(w, s, reducer._target(w, s), word_label(w, s)) for w, s in entries
    ]
    dim = len(basis)

    def to_global(word: Word, source: str) -> tuple:
        out = [f.zero] * dim
        for entry, x in reducer.reduce_path(word, source).items():
            out[position[entry]] = x
        return tuple(out)

    mult = []
    for bi in basis:
        row = []
        for bj in basis:
            if bi.source != bj.target:
                row.append((f.zero,) * dim)
            else:
                row.append(to_global(bi.word + bj.word, bj.source))
        mult.append(row)
    arrow_elements = {a.name: to_global((a.name,), a.source) for a in q.arrows}

    algebra = Algebra(presentation.name, q, f, basis, mult, arrow_elements, presentation.relations, presentation)
    longest = max(b.length for b in basis)
    logger.info(f"Built {algebra.name}: dim {dim}, longest basis word {longest}, field {f}")
    return algebra



def opposite_algebra(a: Algebra) -> Algebra:
    """A^op on the same basis labels; (A^op)^op is `a` itself."""
    if a._opposite is not None:
        return a._opposite
    quiver = a.quiver.opposite()
    basis = [BasisWord(tuple(reversed(b.word)), b.target, b.source, b.label) for b in a.basis]
    mult = [[a.mult[j][i] for j in range(a.dim)] for i in range(a.dim)]
    relations = tuple(tuple((c, tuple(reversed(w))) for c, w in rel) for rel in a.relations)
    op = Algebra(f"{a.name}^op", quiver, a.field, basis, mult, a.arrow_elements, relations)
    op._opposite = a
    a._opposite = op
    return op


def radical_generators(a: Algebra) -> list[AlgebraElement]:
    return [AlgebraElement(a, a.unit_vector(i)) for i in a.radical_indices()]


def socle_left_regular(a: Algebra) -> list[tuple]:
    """Echelonized basis of {v in A : J v = 0}."""
    stacked = None
    for name in sorted(a.arrow_elements):
        m = a.left_multiplication(a.arrow_elements[name])
        stacked = m if stacked is None else stacked.vstack(m)
    if stacked is None:
        return echelon_basis([a.unit_vector(i) for i in range(a.dim)], a.dim, a.field)
    return echelon_basis(nullspace_basis(stacked), a.dim, a.field)


def _span_closed(a: Algebra, span: SpanCoordinates, vectors: Sequence[tuple]) -> bool:
    for v in vectors:
        for i in range(a.dim):
            e = a.unit_vector(i)
            if not span.contains(a.multiply(e, v)) or not span.contains(a.multiply(v, e)):
                return False
    return True


def left_annihilator(a: Algebra, gens: Sequence[Any]) -> list[tuple]:
    """Echelonized basis of {z : z g = 0 for all g in span(gens)}; checked to be a two-sided ideal."""
    vectors = [g.coeffs if isinstance(g, AlgebraElement) else tuple(g) for g in gens]
    if not vectors:
        return echelon_basis([a.unit_vector(i) for i in range(a.dim)], a.dim, a.field)
    stacked = None
    for g in vectors:
        m = a.right_multiplication(g)
        stacked = m if stacked is None else stacked.vstack(m)
    ideal = echelon_basis(nullspace_basis(stacked), a.dim, a.field)
    if ideal and not _span_closed(a, SpanCoordinates(ideal, a.dim, a.field), ideal):
        raise InternalConsistencyError("left annihilator is not a two-sided ideal")
    return ideal


def quotient_algebra(a: Algebra, ideal: Sequence[Sequence[Any]], name: Optional[str] = None) -> tuple[Algebra, Matrix]:
    """A / I for a two-sided ideal I inside the radical; returns the algebra and the quotient map."""
    f = a.field
    ideal = echelon_basis(ideal, a.dim, f)
    for v in ideal:
        if any(v[i] != 0 for i, b in enumerate(a.basis) if b.is_trivial):
            raise InvalidIdealError("ideal is not contained in the radical")
    if ideal and not _span_closed(a, SpanCoordinates(ideal, a.dim, f), ideal):
        raise InvalidIdealError("ideal is not two-sided")

    # pivot on the largest basis words so the residue basis consists of the smallest ones
    order = list(reversed(range(a.dim)))
    rows = [[v[i] for i in order] for v in ideal]
    reduced, pivots = _reduce_rows(rows, a.dim, f) if rows else ([], [])
    pivot_idx = {order[c] for c in pivots}
    keep = [i for i in range(a.dim) if i not in pivot_idx]

    def project(v: Sequence[Any]) -> tuple:
        w = [v[i] for i in order]
        for row, c in zip(reduced, pivots):
            s = w[c]
            if s != 0:
                w = [x if y == 0 else f.reduce(x - s * y) for x, y in zip(w, row)]
        back = {order[k]: w[k] for k in range(a.dim)}
        return tuple(back[i] for i in keep)

    qmap = Matrix.from_columns(f, [project(a.unit_vector(j)) for j in range(a.dim)], len(keep))
    basis = [a.basis[i] for i in keep]
    mult = [[project(a.mult[i][j]) for j in keep] for i in keep]
    arrow_elements = {n: project(v) for n, v in a.arrow_elements.items()}
    extra = tuple(
        tuple((c, a.basis[i].word) for i, c in enumerate(v) if c != 0) for v in ideal
    )
    quotient = Algebra(name or f"{a.name}/I", a.quiver, f, basis, mult, arrow_elements, a.relations + extra)
    logger.info(f"Quotient {quotient.name}: dim {quotient.dim} (ideal dim {len(ideal)})")
    return quotient, qmap

"""Exhaustive censuses over small fields: submodule lattices, bounded
enumeration of indecomposables and the torsionless census.

Enumeration runs over the enumeration field (F_2 or F_3); every candidate is
lifted to the working field before any certified predicate touches it.
"""
import logging
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Optional, Sequence

from app import config
from app.exceptions import (
    BudgetExceededError,
    CertificationError,
    InternalConsistencyError,
    InvalidRepresentationError,
    UndeterminedSummandError,
    UsageError,
)
from app.services.algebra import (
    Algebra,
    build_algebra,
    left_annihilator,
    quotient_algebra,
    radical_generators,
)
from app.services.duality import cogenerated_by, is_torsionless
from app.services.fields import prime_field
from app.services.linalg import Matrix, SpanCoordinates, echelon_basis, intersect_subspaces
from app.services.representation import (
    Rep,
    decompose,
    generated_spaces,
    is_indecomposable,
    is_iso,
    projective,
    quotient_from_spaces,
    radical_rep,
    regular_rep,
    subrep_from_spaces,
)

logger = logging.getLogger(__name__)

Spaces = tuple[tuple[tuple, ...], ...]


# submodule lattices

@dataclass
class SubmoduleLattice:
    ambient: Rep
    # per-vertex echelon bases, sorted by dimension
    submodules: list[Spaces] = dc_field(default_factory=list)

    def __len__(self) -> int:
        return len(self.submodules)

    def dims(self, k: int) -> tuple[int, ...]:
        return tuple(len(s) for s in self.submodules[k])

    def dim(self, k: int) -> int:
        return sum(self.dims(k))

    def index(self, spaces: Spaces) -> Optional[int]:
        try:
            return self.submodules.index(spaces)
        except ValueError:
            return None

    def rep(self, k: int, name: Optional[str] = None):
        return subrep_from_spaces(self.ambient, self.submodules[k], name or f"{self.ambient.name}.U{k}", close=False)

    def quotient(self, k: int, name: Optional[str] = None):
        return quotient_from_spaces(self.ambient, self.submodules[k], name or f"{self.ambient.name}/U{k}")

    def proper_nonzero(self) -> list[int]:
        return [k for k in range(len(self)) if 0 < self.dim(k) < self.ambient.dim]

    def join(self, i: int, j: int) -> Spaces:
        return _sum_spaces(self.ambient, self.submodules[i], self.submodules[j])

    def meet(self, i: int, j: int) -> Spaces:
        f = self.ambient.field
        return tuple(
            tuple(intersect_subspaces(list(u), list(v), d, f))
            for u, v, d in zip(self.submodules[i], self.submodules[j], self.ambient.dims)
        )


def _spaces_key(spaces: Sequence[Sequence[tuple]]) -> Spaces:
    return tuple(tuple(tuple(v) for v in s) for s in spaces)


def _sum_spaces(m: Rep, u: Spaces, v: Spaces) -> Spaces:
    return tuple(
        tuple(echelon_basis(list(a) + list(b), d, m.field)) for a, b, d in zip(u, v, m.dims)
    )


def projective_point_count(q: int, n: int) -> int:
    return (q ** n - 1) // (q - 1) if n else 0


def _projective_points(field, n: int):
    """Nonzero vectors of k^n whose first nonzero entry is 1."""
    elements = list(field.elements())
    for lead in range(n):
        for tail in product(elements, repeat=n - lead - 1):
            yield (field.zero,) * lead + (field.one,) + tail


def submodule_lattice(m: Rep, budget: Optional[int] = None, dim_cap: Optional[int] = None) -> SubmoduleLattice:
    """All submodules of m: the cyclic submodules A v closed under sums.

    Over F_2 and F_3 the module dimension is capped; over larger prime fields
    only the number of scanned points is bounded.
    """
    f = m.field
    budget = config.LATTICE_POINT_BUDGET if budget is None else budget
    dim_cap = config.LATTICE_DIM_CAP if dim_cap is None else dim_cap
    if not f.is_finite():
        raise BudgetExceededError(f"submodule lattice of {m.name} needs a finite field, got {f}")
    q = f.characteristic()
    if q <= 3 and m.dim > dim_cap:
        raise BudgetExceededError(f"submodule lattice of {m.name}: dim {m.dim} exceeds the cap {dim_cap}")
    points = projective_point_count(q, m.dim)
    if points > budget:
        raise BudgetExceededError(
            f"submodule lattice of {m.name}: {points} points over {f} exceed the budget {budget}"
        )

    cyclic: dict[Spaces, None] = {}
    for v in _projective_points(f, m.dim):
        cyclic.setdefault(_spaces_key(generated_spaces(m, [v])), None)

    zero: Spaces = tuple(() for _ in m.dims)
    found = {zero}
    for c in sorted(cyclic, key=lambda s: (sum(len(x) for x in s), s)):
        found |= {_sum_spaces(m, u, c) for u in found}

    ordered = sorted(found, key=lambda s: (sum(len(x) for x in s), tuple(len(x) for x in s), s))
    logger.info(f"Submodule lattice of {m.name} over {f}: {len(cyclic)} cyclic, {len(ordered)} in total")
    return SubmoduleLattice(m, ordered)


# bounded enumeration

def _killed_arrows(a: Algebra) -> set[str]:
    return {name for name, v in a.arrow_elements.items() if all(c == 0 for c in v)}


def _connected_support(a: Algebra, dims: Sequence[int], live: set[str]) -> bool:
    support = [v for v, d in zip(a.vertices, dims) if d]
    if not support:
        return False
    seen, stack = {support[0]}, [support[0]]
    while stack:
        v = stack.pop()
        for arrow in a.quiver.arrows:
            if arrow.name not in live:
                continue
            for x, y in ((arrow.source, arrow.target), (arrow.target, arrow.source)):
                if x == v and y in support and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == len(support)


def _dimension_vectors(a: Algebra, cap: Sequence[int], live: set[str]) -> list[tuple[int, ...]]:
    vectors = [d for d in product(*[range(c + 1) for c in cap]) if _connected_support(a, d, live)]
    return sorted(vectors, key=lambda d: (sum(d), d))


def _relation_checks(a: Algebra) -> list[tuple[frozenset, str, str, tuple]]:
    q = a.quiver
    checks = []
    for rel in a.relations:
        groups: dict = {}
        for c, w in rel:
            groups.setdefault(q.word_endpoints(w), []).append((c, w))
        for (s, t), terms in groups.items():
            needed = frozenset(n for _, w in terms for n in w)
            checks.append((needed, s, t, tuple(terms)))
    return checks


def _vanishes(a: Algebra, mats: dict, dims: dict, s: str, t: str, terms: tuple) -> bool:
    f = a.field
    total = Matrix.zeros(f, dims[t], dims[s])
    for c, word in terms:
        prod = Matrix.identity(f, dims[s])
        for name in reversed(word):
            prod = mats[name] @ prod
        total = total + prod.scale(c)
    return total.is_zero()


def _lift(work: Algebra, dims: Sequence[int], mats: dict, name: str) -> Optional[Rep]:
    f = work.field
    lifted = {n: Matrix.from_rows(f, [[int(x) for x in row] for row in m.data], m.cols) for n, m in mats.items()}
    try:
        return Rep(work, dims, lifted, name)
    except InvalidRepresentationError:
        return None


def enumeration_size(a: Algebra, cap: Sequence[int]) -> int:
    """Number of arrow-matrix tuples the enumeration would visit."""
    killed = _killed_arrows(a)
    live = {arrow.name for arrow in a.quiver.arrows} - killed
    q = a.field.characteristic()
    total = 0
    for d in _dimension_vectors(a, cap, live):
        dims = dict(zip(a.vertices, d))
        total += q ** sum(dims[x.source] * dims[x.target] for x in a.quiver.arrows if x.name in live)
    return total


def enumerate_indecomposables(
    a: Algebra,
    cap: Sequence[int],
    work: Optional[Algebra] = None,
    budget: Optional[int] = None,
    stats: Optional[dict] = None,
) -> list[Rep]:
    """One representative per isomorphism class of indecomposable modules with dimension vector <= cap.

    `a` must be defined over F_2 or F_3. Candidates are lifted entrywise to
    `work` (same quiver and basis, larger field) and deduplicated there.
    """
    f = a.field
    if not f.is_finite() or f.characteristic() > 3:
        raise UsageError(f"enumeration runs over F2 or F3, not {f}")
    if len(cap) != len(a.vertices):
        raise UsageError(f"cap {tuple(cap)} does not match the {len(a.vertices)} vertices of {a.name}")
    work = a if work is None else work
    if work.quiver != a.quiver:
        raise UsageError("the working algebra must share the quiver of the enumeration algebra")
    budget = config.ENUMERATION_BUDGET if budget is None else budget
    size = enumeration_size(a, cap)
    if size > budget:
        raise BudgetExceededError(f"enumeration over {a.name} needs {size} matrix tuples, budget {budget}")

    stats = {} if stats is None else stats
    stats.update(dimension_vectors=0, candidates=0, lift_drops=0, classes=0, indecomposable=0)
    killed = _killed_arrows(a)
    live_names = {arrow.name for arrow in a.quiver.arrows} - killed
    checks = _relation_checks(a)
    elements = list(f.elements())
    buckets: dict[tuple, list[Rep]] = {}
    classes: list[Rep] = []

    for d in _dimension_vectors(a, cap, live_names):
        stats["dimension_vectors"] += 1
        dims = dict(zip(a.vertices, d))
        mats, order = {}, []
        for arrow in a.quiver.arrows:
            rows, cols = dims[arrow.target], dims[arrow.source]
            if arrow.name in killed or rows * cols == 0:
                mats[arrow.name] = Matrix.zeros(f, rows, cols)
            else:
                order.append(arrow)
        position = {arrow.name: k for k, arrow in enumerate(order)}
        checks_at: dict[int, list] = {}
        for needed, s, t, terms in checks:
            last = max((position[n] for n in needed if n in position), default=-1)
            checks_at.setdefault(last, []).append((s, t, terms))
        if not all(_vanishes(a, mats, dims, s, t, terms) for s, t, terms in checks_at.get(-1, [])):
            continue

        def assign(k: int):
            if k == len(order):
                yield mats
                return
            arrow = order[k]
            rows, cols = dims[arrow.target], dims[arrow.source]
            for entries in product(elements, repeat=rows * cols):
                mats[arrow.name] = Matrix(f, rows, cols, tuple(
                    tuple(entries[r * cols:(r + 1) * cols]) for r in range(rows)
                ))
                if all(_vanishes(a, mats, dims, s, t, terms) for s, t, terms in checks_at.get(k, [])):
                    yield from assign(k + 1)

        for assignment in assign(0):
            stats["candidates"] += 1
            rep = _lift(work, d, assignment, f"M{len(classes)}")
            if rep is None:
                stats["lift_drops"] += 1
                continue
            bucket = buckets.setdefault(rep.fingerprint(), [])
            if any(is_iso(other, rep) for other in bucket):
                continue
            bucket.append(rep)
            classes.append(rep)

    stats["classes"] = len(classes)
    result = []
    for rep in classes:
        verdict = is_indecomposable(rep).verdict
        if verdict == "undetermined":
            raise UndeterminedSummandError(f"cannot decide whether {rep.name} (dims {rep.dims}) decomposes")
        if verdict == "yes":
            result.append(rep)
    stats["indecomposable"] = len(result)
    logger.info(
        f"Enumerated {a.name} up to {tuple(cap)}: {stats['candidates']} modules, "
        f"{stats['lift_drops']} not liftable, {len(classes)} classes, {len(result)} indecomposable"
    )
    return [rep.renamed(f"M{k}") for k, rep in enumerate(result)]


# torsionless census

@dataclass
class Census:
    algebra: Algebra
    members: list[Rep]
    proved_within_budget: bool
    cross_checked: bool
    stats: dict = dc_field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.members)


def _annihilator_parts(a: Algebra) -> tuple[list[str], list[tuple]]:
    """Ann(J) splits into the idempotents it contains and its intersection with J."""
    f = a.field
    ann = left_annihilator(a, radical_generators(a))
    span = SpanCoordinates(ann, a.dim, f)
    killed = [v for v in a.vertices if ann and span.contains(a.idempotent(v))]
    radical = [a.unit_vector(i) for i in a.radical_indices()]
    inside = intersect_subspaces(ann, radical, a.dim, f)
    return killed, inside


def _enumeration_copy(a: Algebra) -> Algebra:
    if a.presentation is None:
        raise UsageError(f"{a.name} has no presentation to rebuild over the enumeration field")
    copy = build_algebra(a.presentation.with_field(prime_field(config.ENUM_PRIME)))
    if copy.labels != a.labels:
        raise CertificationError(f"{a.name} has a different basis over F{config.ENUM_PRIME}")
    return copy


def _add_new(members: list[Rep], rep: Rep) -> bool:
    if any(m.dims == rep.dims and is_iso(m, rep) for m in members):
        return False
    members.append(rep)
    return True


def _member_name(a: Algebra, rep: Rep, counter: list[int]) -> str:
    if rep.dim == 1:
        return f"S{a.vertices[next(i for i, d in enumerate(rep.dims) if d)]}"
    counter[0] += 1
    return f"T{counter[0]}"


def torsionless_census(a: Algebra, cap: Optional[Sequence[int]] = None, budget: Optional[int] = None) -> Census:
    """Indecomposable torsionless modules: the indecomposable projectives plus the
    indecomposable A/Ann(J)-modules cogenerated by J.
    """
    stats: dict = {}
    members = [projective(a, v) for v in a.vertices]
    killed, inside = _annihilator_parts(a)
    quotient, _ = quotient_algebra(a, inside, f"{a.name}/Ann(J)")
    if cap is None:
        regular = regular_rep(quotient).dims
        cap = tuple(0 if v in killed else d for v, d in zip(a.vertices, regular))
    stats["cap"] = list(cap)
    logger.info(f"Census of {a.name}: Ann(J) kills vertices {killed} and has radical part of dim {len(inside)}")

    proved = True
    enum_algebra = None
    if any(cap):
        try:
            enum_algebra = _enumeration_copy(a)
            enum_killed, enum_inside = _annihilator_parts(enum_algebra)
            if enum_killed != killed or len(enum_inside) != len(inside):
                raise CertificationError(f"Ann(J) of {a.name} changes over F{config.ENUM_PRIME}")
            enum_quotient, _ = quotient_algebra(enum_algebra, enum_inside, quotient.name)
            if enum_quotient.labels != quotient.labels:
                raise CertificationError(f"{quotient.name} has a different basis over F{config.ENUM_PRIME}")
            found = enumerate_indecomposables(enum_quotient, cap, quotient, budget, stats)
        except BudgetExceededError as e:
            logger.warning(f"Census of {a.name} is not proved: {e}")
            proved = False
            found = []
        radical, _ = radical_rep(regular_rep(a))
        counter = [0]
        for rep in found:
            pulled = Rep(a, rep.dims, rep.maps, "candidate")
            if cogenerated_by(pulled, radical):
                _add_new(members, pulled.renamed(_member_name(a, pulled, counter)))

    cross_checked = False
    try:
        cross_checked = _lattice_cross_check(a, members, proved, enum_algebra)
    except BudgetExceededError as e:
        if not proved:
            raise
        logger.warning(f"Lattice cross-check of {a.name} skipped: {e}")

    for m in members:
        if not is_torsionless(m):
            raise InternalConsistencyError(f"census member {m.name} of {a.name} is not torsionless")
        if is_indecomposable(m).verdict != "yes":
            raise InternalConsistencyError(f"census member {m.name} of {a.name} is not indecomposable")
    members.sort(key=lambda m: (0 if m.name.startswith("P") else 1, m.dim, m.dims, m.name))
    stats["members"] = len(members)
    logger.info(f"Census of {a.name}: {len(members)} torsionless indecomposables (proved={proved}, cross-checked={cross_checked})")
    return Census(a, members, proved, cross_checked, stats)


def _lattice_cross_check(a: Algebra, members: list[Rep], proved: bool, enum_algebra: Optional[Algebra]) -> bool:
    """Every summand of a submodule of A (found over the enumeration field) must be a member."""
    enum_algebra = enum_algebra or _enumeration_copy(a)
    lattice = submodule_lattice(regular_rep(enum_algebra))
    reg = regular_rep(a)
    seen: set = set()
    counter = [len([m for m in members if m.name.startswith("T")])]
    for k in range(1, len(lattice)):
        vectors = [
            reg.local_to_global(i, [int(x) for x in u])
            for i, space in enumerate(lattice.submodules[k]) for u in space
        ]
        spaces = _spaces_key(generated_spaces(reg, vectors))
        if spaces in seen:
            continue
        seen.add(spaces)
        sub, _ = subrep_from_spaces(reg, spaces, f"U{k}", close=False)
        for summand, _ in decompose(sub):
            if any(m.dims == summand.dims and is_iso(m, summand) for m in members):
                continue
            if proved:
                raise InternalConsistencyError(
                    f"{a.name}: a summand of a submodule of A (dims {summand.dims}) is missing from the census"
                )
            members.append(summand.renamed(_member_name(a, summand, counter)))
    logger.info(f"Lattice cross-check of {a.name}: {len(seen)} submodules of A decomposed")
    return True

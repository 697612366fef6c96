"""Builders for every algebra the fact ledger talks about."""
import logging
from dataclasses import dataclass
from typing import Callable, Optional

from app import config
from app.exceptions import UsageError
from app.interfaces import FieldInterface
from app.services.algebra import Algebra, Arrow, Presentation, Quiver, Relation, build_algebra
from app.services.fields import prime_field

logger = logging.getLogger(__name__)


def _monomial(*words: str) -> tuple[Relation, ...]:
    """Zero relations from `*`-joined words."""
    return tuple(((1, tuple(w.split("*"))),) for w in words)


def _field(field: Optional[FieldInterface]) -> FieldInterface:
    return field or prime_field(config.WORK_PRIME)


def _present(quiver: Quiver, field: Optional[FieldInterface], relations: tuple, name: str) -> Presentation:
    f = _field(field)
    return Presentation(quiver, f, relations, name=name).with_field(f)


def reflexive_simples_algebra(n: int, field: Optional[FieldInterface] = None) -> Presentation:
    """Connected, not self-injective, all n simples reflexive; dimension 2n+4.

    Arrows x, y: n -> 1, a loop c at 1, b: 1 -> 2 and a_i: i -> i+1.
    """
    if n < 2:
        raise UsageError(f"the reflexive-simples family starts at n = 2, got {n}")
    vertices = tuple(str(i) for i in range(1, n + 1))
    arrows = [
        Arrow("c", "1", "1"),
        Arrow("b", "1", "2"),
        Arrow("x", str(n), "1"),
        Arrow("y", str(n), "1"),
    ]
    arrows += [Arrow(f"a{i}", str(i), str(i + 1)) for i in range(2, n)]
    words = ["c*x", "b*y", "c*c", "b*c"]
    if n == 2:
        words += ["x*b", "y*b"]
    else:
        words.append("a2*b")
        words += [f"a{i + 1}*a{i}" for i in range(2, n - 1)]
        words += [f"x*a{n - 1}", f"y*a{n - 1}"]
    return _present(Quiver(vertices, tuple(arrows)), field, _monomial(*words), f"reflexive-simples-{n}")


def three_vertex_example(field: Optional[FieldInterface] = None) -> Presentation:
    """1 <- 2 <- 3 with the composite zero."""
    quiver = Quiver(("1", "2", "3"), (Arrow("a", "2", "1"), Arrow("b", "3", "2")))
    return _present(quiver, field, _monomial("a*b"), "linear-3-zero-composite")


def nakayama_cycle(n: int, loewy_length: int, field: Optional[FieldInterface] = None) -> Presentation:
    """Cyclic quiver 1 -> 2 -> ... -> n -> 1 with all paths of length `loewy_length` zero."""
    if n < 1 or loewy_length < 2:
        raise UsageError(f"nakayama cycle needs n >= 1 and Loewy length >= 2, got {n}, {loewy_length}")
    vertices = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}", str(i), str(i % n + 1)) for i in range(1, n + 1))
    words = []
    for start in range(1, n + 1):
        path = [f"a{(start - 1 + k) % n + 1}" for k in range(loewy_length)]
        words.append("*".join(reversed(path)))
    suffix = "rad2" if loewy_length == 2 else f"loewy{loewy_length}"
    return _present(Quiver(vertices, arrows), field, _monomial(*words), f"nakayama-cycle-{n}-{suffix}")


def local_truncated(
    name: str, loops: tuple[str, ...], relations: tuple[Relation, ...], field: Optional[FieldInterface] = None
) -> Presentation:
    quiver = Quiver(("1",), tuple(Arrow(x, "1", "1") for x in loops))
    return _present(quiver, field, relations, name)


def truncated_polynomial(k: int, field: Optional[FieldInterface] = None) -> Presentation:
    """k[x]/(x^k)."""
    return local_truncated(f"local-x{k}", ("x",), _monomial("*".join(["x"] * k)), field)


def line_quiver(n: int, field: Optional[FieldInterface] = None) -> Presentation:
    """1 -> 2 -> ... -> n without relations."""
    if n < 1:
        raise UsageError(f"line quiver needs n >= 1, got {n}")
    vertices = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}", str(i), str(i + 1)) for i in range(1, n))
    return _present(Quiver(vertices, arrows), field, (), f"line-{n}")


def kronecker(field: Optional[FieldInterface] = None) -> Presentation:
    quiver = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    return _present(quiver, field, (), "kronecker")


def semisimple(n: int, field: Optional[FieldInterface] = None) -> Presentation:
    return _present(Quiver(tuple(str(i) for i in range(1, n + 1)), ()), field, (), f"semisimple-{n}")


@dataclass(frozen=True)
class CorpusEntry:
    slug: str
    description: str
    builder: Callable[[Optional[FieldInterface]], Presentation]

    def presentation(self, field: Optional[FieldInterface] = None) -> Presentation:
        return self.builder(field)

    def build(self, field: Optional[FieldInterface] = None) -> Algebra:
        key = (self.slug, str(_field(field)))
        if key not in _built:
            _built[key] = build_algebra(self.presentation(field))
        return _built[key]


_built: dict[tuple[str, str], Algebra] = {}

CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("reflexive-simples-2", "8-dimensional algebra, both simples reflexive, not self-injective",
                lambda f: reflexive_simples_algebra(2, f)),
    CorpusEntry("reflexive-simples-3", "the same pattern on 3 vertices", lambda f: reflexive_simples_algebra(3, f)),
    CorpusEntry("reflexive-simples-4", "the same pattern on 4 vertices", lambda f: reflexive_simples_algebra(4, f)),
    CorpusEntry("linear-3-zero-composite", "S2 torsionless with S2** = P3", three_vertex_example),
    CorpusEntry("nakayama-cycle-3-rad2", "self-injective, radical square zero", lambda f: nakayama_cycle(3, 2, f)),
    CorpusEntry("nakayama-cycle-2-loewy3", "self-injective Nakayama algebra", lambda f: nakayama_cycle(2, 3, f)),
    CorpusEntry("local-x3", "k[x]/(x^3)", lambda f: truncated_polynomial(3, f)),
    CorpusEntry("local-x4", "k[x]/(x^4)", lambda f: truncated_polynomial(4, f)),
    CorpusEntry("local-xy-rad2", "local, radical square zero, not self-injective",
                lambda f: local_truncated("local-xy-rad2", ("x", "y"), _monomial("x*x", "y*y", "x*y", "y*x"), f)),
    CorpusEntry("local-commutative-xy", "k[x,y]/(x^2, y^2), commutative and self-injective",
                lambda f: local_truncated(
                    "local-commutative-xy", ("x", "y"),
                    _monomial("x*x", "y*y") + (((1, ("x", "y")), (-1, ("y", "x"))),), f,
                )),
    CorpusEntry("line-2", "hereditary 1 -> 2", lambda f: line_quiver(2, f)),
    CorpusEntry("line-3", "hereditary 1 -> 2 -> 3", lambda f: line_quiver(3, f)),
    CorpusEntry("kronecker", "two parallel arrows", kronecker),
    CorpusEntry("semisimple-1", "the field itself", lambda f: semisimple(1, f)),
    CorpusEntry("semisimple-2", "k x k", lambda f: semisimple(2, f)),
)


def corpus_entry(slug: str) -> CorpusEntry:
    for entry in CORPUS:
        if entry.slug == slug:
            return entry
    raise UsageError(f"unknown corpus algebra {slug!r}")


def corpus_algebra(slug: str, field: Optional[FieldInterface] = None) -> Algebra:
    return corpus_entry(slug).build(field)

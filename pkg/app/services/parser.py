"""Text formats: presentation files, module files and module descriptors.

Presentation file::

    # comment
    name reflexive-simples-2
    field F101            # or `field Q`, `field Fp 101`
    vertices 1 2
    arrow c 1 1           # name source target
    relation c*x          # words compose right to left
    relation x*y - 2*y*x
    nilpotency 12

Module file::

    dims 1 1
    arrow b               # dim(target) rows of dim(source) entries
    1
"""
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Optional

from app import config
from app.exceptions import (
    AdmissibilityError,
    PresentationParseError,
    UsageError,
)
from app.interfaces import FieldInterface
from app.services.algebra import Algebra, Arrow, Presentation, Quiver, format_relation
from app.services.fields import field_from_spec, prime_field
from app.services.linalg import Matrix

logger = logging.getLogger(__name__)

_NAME = re.compile(r"^[A-Za-z0-9_.\-]+$")
_COEFF = re.compile(r"^-?\d+(/\d+)?$")
_TERM = re.compile(r"([+-]?)\s*([^+\-\s][^+\-]*)")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_presentation(text: str, default_name: str = "algebra") -> Presentation:
    field: Optional[FieldInterface] = None
    vertices: Optional[tuple[str, ...]] = None
    arrows: list[Arrow] = []
    raw_relations: list[tuple[int, int, str]] = []
    nilpotency = config.NILPOTENCY_BOUND
    nilpotency_at = (1, 1)
    name = default_name

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        tokens = _tokens(line)
        if not tokens:
            continue
        keyword, col = tokens[0]
        args = tokens[1:]
        if keyword == "name":
            if len(args) != 1 or not _NAME.match(args[0][0]):
                raise PresentationParseError("`name` takes one identifier", lineno, col)
            name = args[0][0]
        elif keyword == "field":
            try:
                field = field_from_spec(" ".join(t for t, _ in args))
            except UsageError as e:
                raise PresentationParseError(str(e), lineno, args[0][1] if args else col)
        elif keyword == "vertices":
            if vertices is not None:
                raise PresentationParseError("vertices declared twice", lineno, col)
            if not args:
                raise PresentationParseError("`vertices` needs at least one vertex", lineno, col + len(keyword))
            names = [t for t, _ in args]
            for t, c in args:
                if not _NAME.match(t):
                    raise PresentationParseError(f"bad vertex name {t!r}", lineno, c)
                if names.count(t) > 1:
                    raise PresentationParseError(f"vertex {t} declared twice", lineno, c)
            vertices = tuple(names)
        elif keyword == "arrow":
            if vertices is None:
                raise PresentationParseError("arrow before the vertices line", lineno, col)
            if len(args) != 3:
                raise PresentationParseError("`arrow` takes a name, a source and a target", lineno, col)
            (arrow_name, ac), (source, sc), (target, tc) = args
            if not _NAME.match(arrow_name) or arrow_name.isdigit() or any(ch in arrow_name for ch in "+-/"):
                raise PresentationParseError(f"bad arrow name {arrow_name!r}", lineno, ac)
            if any(a.name == arrow_name for a in arrows):
                raise PresentationParseError(f"arrow {arrow_name} declared twice", lineno, ac)
            for v, c in ((source, sc), (target, tc)):
                if v not in vertices:
                    raise PresentationParseError(f"unknown vertex {v!r}", lineno, c)
            arrows.append(Arrow(arrow_name, source, target))
        elif keyword == "relation":
            if not args:
                raise PresentationParseError("empty relation", lineno, col + len(keyword))
            raw_relations.append((lineno, args[0][1], line[args[0][1] - 1:]))
        elif keyword == "nilpotency":
            if len(args) != 1 or not args[0][0].isdigit():
                raise PresentationParseError("`nilpotency` takes a positive integer", lineno, col)
            nilpotency = int(args[0][0])
            nilpotency_at = (lineno, args[0][1])
            if nilpotency < 1:
                raise PresentationParseError("nilpotency bound must be at least 1", *nilpotency_at)
        else:
            raise PresentationParseError(f"unknown directive {keyword!r}", lineno, col)

    if vertices is None:
        raise PresentationParseError("missing `vertices` line", 1, 1)
    field = field or prime_field(config.WORK_PRIME)
    quiver = Quiver(vertices, tuple(arrows))
    relations = tuple(_parse_relation(quiver, field, lineno, col, body) for lineno, col, body in raw_relations)
    try:
        presentation = Presentation(quiver, field, relations, nilpotency, name)
    except AdmissibilityError as e:
        raise PresentationParseError(str(e), *nilpotency_at)
    logger.debug(f"Parsed {name}: {len(vertices)} vertices, {len(arrows)} arrows, {len(relations)} relations")
    return presentation


def _parse_relation(quiver: Quiver, field: FieldInterface, lineno: int, col: int, body: str) -> tuple:
    terms = []
    for m in _TERM.finditer(body):
        sign, text = m.group(1), m.group(2).strip()
        term_col = col + m.start(2)
        parts = [p.strip() for p in text.split("*")]
        coeff = Fraction(1)
        if parts and _COEFF.match(parts[0]):
            coeff = Fraction(parts[0])
            parts = parts[1:]
        if not parts or any(not p for p in parts):
            raise PresentationParseError(f"malformed term {text!r}", lineno, term_col)
        for p in parts:
            if all(a.name != p for a in quiver.arrows):
                raise PresentationParseError(f"unknown arrow {p!r} in relation", lineno, term_col + text.find(p))
        word = tuple(parts)
        if len(word) < 2:
            raise PresentationParseError(f"relation term {text!r} must have length at least 2", lineno, term_col)
        try:
            quiver.word_endpoints(word)
        except AdmissibilityError as e:
            raise PresentationParseError(str(e), lineno, term_col)
        if sign == "-":
            coeff = -coeff
        terms.append((field.coerce(coeff), word))
    if not terms:
        raise PresentationParseError("empty relation", lineno, col)
    return tuple(terms)


def format_presentation(p: Presentation) -> str:
    """Canonical text; parsing it gives back an equal presentation."""
    lines = [f"name {p.name}", f"field {p.field}", "vertices " + " ".join(p.quiver.vertices)]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in p.quiver.arrows]
    lines += [f"relation {format_relation(rel, p.field)}" for rel in p.relations]
    lines.append(f"nilpotency {p.nilpotency}")
    return "\n".join(lines) + "\n"


def parse_module(text: str, algebra: Algebra, name: str = "M"):
    """A module file over `algebra`; arrows that are not listed act as zero."""
    from app.services.representation import Rep

    f = algebra.field
    dims: Optional[list[int]] = None
    maps: dict[str, Matrix] = {}
    current: Optional[Arrow] = None
    rows: list[list] = []
    start = (1, 1)

    def finish():
        if current is None:
            return
        want_rows, want_cols = dims[algebra.quiver.vertex_index(current.target)], dims[algebra.quiver.vertex_index(current.source)]
        if want_cols == 0:
            rows.clear()
        if len(rows) != (want_rows if want_cols else 0):
            raise PresentationParseError(
                f"arrow {current.name} needs {want_rows} rows of {want_cols} entries, got {len(rows)} rows", *start
            )
        maps[current.name] = Matrix.from_rows(f, rows, want_cols) if want_cols else Matrix.zeros(f, want_rows, 0)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokens(_strip(raw))
        if not tokens:
            continue
        keyword, col = tokens[0]
        if keyword == "dims":
            if dims is not None:
                raise PresentationParseError("dims declared twice", lineno, col)
            values = [t for t, _ in tokens[1:]]
            if len(values) != len(algebra.vertices) or not all(v.isdigit() for v in values):
                raise PresentationParseError(f"`dims` needs {len(algebra.vertices)} non-negative integers", lineno, col)
            dims = [int(v) for v in values]
        elif keyword == "arrow":
            if dims is None:
                raise PresentationParseError("arrow matrix before the dims line", lineno, col)
            if len(tokens) != 2:
                raise PresentationParseError("`arrow` takes one arrow name", lineno, col)
            finish()
            try:
                current = algebra.quiver.arrow(tokens[1][0])
            except AdmissibilityError:
                raise PresentationParseError(f"unknown arrow {tokens[1][0]!r}", lineno, tokens[1][1])
            if current.name in maps:
                raise PresentationParseError(f"arrow {current.name} listed twice", lineno, tokens[1][1])
            rows = []
            start = (lineno, col)
        else:
            if current is None:
                raise PresentationParseError(f"unexpected {keyword!r}", lineno, col)
            want_cols = dims[algebra.quiver.vertex_index(current.source)]
            if len(tokens) != want_cols:
                raise PresentationParseError(f"row needs {want_cols} entries", lineno, col)
            row = []
            for t, c in tokens:
                if not _COEFF.match(t):
                    raise PresentationParseError(f"bad matrix entry {t!r}", lineno, c)
                row.append(Fraction(t))
            rows.append(row)
    if dims is None:
        raise PresentationParseError("missing `dims` line", 1, 1)
    finish()
    return Rep(algebra, dims, maps, name)


def load_presentation(source: str) -> Presentation:
    """A presentation file path, a shipped file name or a corpus slug."""
    from app.services.corpus import CORPUS

    path = Path(source)
    if not path.is_file():
        shipped = config.PRESENTATIONS_DIR / f"{source}.quiv"
        if shipped.is_file():
            path = shipped
        else:
            for entry in CORPUS:
                if entry.slug == source:
                    return entry.presentation()
            raise UsageError(f"no presentation file or corpus algebra named {source!r}")
    return parse_presentation(path.read_text(encoding="utf-8"), default_name=path.stem)


# module descriptors: A, S<v>, P<v>, P<v>/<word>, rad(...), syz(...), mho(...), dual(...)

_QUOTIENT = re.compile(r"^P(?P<v>[^/()]+)/<(?P<w>[^<>]+)>$")


def resolve_module(descriptor: str, algebra: Algebra):
    from app.services.approximation import mho
    from app.services.duality import a_dual
    from app.services.representation import (
        projective,
        quotient_from_spaces,
        radical_rep,
        regular_rep,
        simple,
        syzygy,
    )

    text = descriptor.strip()
    path = Path(text)
    if path.suffix == ".mod" and path.is_file():
        return parse_module(path.read_text(encoding="utf-8"), algebra, path.stem)
    for fn, op in (("rad", lambda m: radical_rep(m)[0]), ("syz", syzygy), ("mho", mho), ("dual", a_dual)):
        if text.startswith(f"{fn}(") and text.endswith(")"):
            inner = resolve_module(text[len(fn) + 1:-1], algebra)
            return op(inner).renamed(text)
    if text == "A":
        return regular_rep(algebra)
    m = _QUOTIENT.match(text)
    if m:
        v, label = m.group("v"), m.group("w").strip()
        _check_vertex(algebra, v, text)
        p = projective(algebra, v)
        for i, words in enumerate(p.basis_words):
            for k, b in enumerate(words):
                if b.label == label:
                    local = tuple(algebra.field.one if j == k else algebra.field.zero for j in range(len(words)))
                    spaces = [[] for _ in p.dims]
                    spaces[i].append(local)
                    quotient, _ = quotient_from_spaces(p, spaces, text)
                    return quotient
        raise UsageError(f"{label!r} is not a basis element of P{v}")
    if len(text) > 1 and text[0] in "SP":
        v = text[1:]
        _check_vertex(algebra, v, text)
        return simple(algebra, v) if text[0] == "S" else projective(algebra, v)
    raise UsageError(f"unknown module descriptor {descriptor!r}")


def _check_vertex(algebra: Algebra, v: str, text: str):
    if v not in algebra.vertices:
        raise UsageError(f"{text}: {algebra.name} has no vertex {v!r}")

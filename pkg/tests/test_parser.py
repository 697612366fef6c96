import pytest

from app import config
from app.exceptions import PresentationParseError, UsageError
from app.services.algebra import build_algebra
from app.services.corpus import corpus_entry
from app.services.fields import QQ, prime_field
from app.services.parser import (
    format_presentation,
    load_presentation,
    parse_module,
    parse_presentation,
    resolve_module,
)
from app.services.representation import is_iso, is_simple, projective

THREE_LINE = """\
vertices 1 2 3
arrow a 2 1
arrow b 3 2
"""


def test_shipped_file_matches_corpus():
    p = load_presentation(str(config.PRESENTATIONS_DIR / "a2.quiv"))
    assert p == corpus_entry("reflexive-simples-2").presentation()
    assert len(p.quiver.vertices) == 2
    assert len(p.quiver.arrows) == 4
    assert len(p.relations) == 6


def test_load_by_shipped_name_and_by_slug():
    assert load_presentation("three-vertex") == corpus_entry("linear-3-zero-composite").presentation()
    assert load_presentation("kronecker").name == "kronecker"
    with pytest.raises(UsageError):
        load_presentation("no-such-algebra")


def test_larger_shipped_file_builds_family_member():
    a = build_algebra(load_presentation("a3"))
    assert a.dim == 10


def test_rational_file_with_commutator():
    p = load_presentation("commutative-xy")
    assert p.field is QQ
    assert p.nilpotency == 4
    assert p.relations[2] == ((1, ("x", "y")), (-1, ("y", "x")))
    assert build_algebra(p).dim == 4


def test_defaults():
    p = parse_presentation(THREE_LINE, "untitled")
    assert p.name == "untitled"
    assert p.field == prime_field(config.WORK_PRIME)
    assert p.nilpotency == config.NILPOTENCY_BOUND
    assert p.relations == ()


def test_coefficients_reduce_into_the_field():
    text = "field F7\nvertices 1\narrow x 1 1\narrow y 1 1\nrelation x*y - 1/2*y*x\nrelation 3*x*x\n"
    p = parse_presentation(text)
    assert p.relations[0] == ((1, ("x", "y")), (3, ("y", "x")))
    assert p.relations[1] == ((3, ("x", "x")),)


def test_format_round_trip():
    for source in ("a2", "commutative-xy"):
        p = load_presentation(source)
        assert parse_presentation(format_presentation(p)) == p
    text = format_presentation(parse_presentation("field F7\nvertices 1\narrow x 1 1\nrelation x*x - 2*x*x*x\n"))
    assert "relation x*x - 2*x*x*x" in text


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("vertices\n", 1, 9),
        ("arrow x 1 1\n", 1, 1),
        ("vertices 1\ncolour red\n", 2, 1),
        ("vertices 1\narrow x 1 2\n", 2, 11),
        ("vertices 1\narrow x 1 1\nrelation x\n", 3, 10),
        ("vertices 1\narrow x 1 1\nrelation x*z\n", 3, 12),
        ("vertices 1 2\narrow x 2 1\nrelation x*x\n", 3, 10),
        ("vertices 1 1\n", 1, 10),
        ("field R\nvertices 1\n", 1, 7),
        ("name\nvertices 1\n", 1, 1),
        ("vertices 1\narrow 12 1 1\n", 2, 7),
        ("vertices 1\narrow x 1 1\nrelation x*x\nnilpotency 0\n", 4, 12),
        ("field F4\nvertices 1\n", 1, 7),
    ],
)
def test_parse_errors_carry_positions(text, line, column):
    with pytest.raises(PresentationParseError) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert info.value.exit_code == 2


def test_missing_vertices():
    with pytest.raises(PresentationParseError, match="missing `vertices`"):
        parse_presentation("# nothing here\n")


def test_module_file(three_vertex):
    m = parse_module("dims 1 1 0\narrow a\n1\n", three_vertex, "M")
    assert m.dims == (1, 1, 0)
    assert is_iso(m, projective(three_vertex, "2"))


def test_module_file_defaults_missing_arrows_to_zero(three_vertex):
    m = parse_module("dims 0 1 1\n", three_vertex)
    assert m.dims == (0, 1, 1)
    assert not is_iso(m, projective(three_vertex, "3"))


@pytest.mark.parametrize(
    "text",
    ["arrow a\n1\n", "dims 1 1\n", "dims 1 1 0\narrow z\n", "dims 1 1 0\narrow a\n1 1\n", "dims 1 1 0\narrow a\nq\n"],
)
def test_module_file_errors(three_vertex, text):
    with pytest.raises(PresentationParseError):
        parse_module(text, three_vertex)


def test_descriptors(a2):
    assert resolve_module("A", a2).dims == (5, 3)
    assert resolve_module("P2", a2).dims == (3, 2)
    assert is_simple(resolve_module("S1", a2))
    assert resolve_module("P1/<c>", a2).dims == (1, 1)
    assert resolve_module("P1/<b>", a2).dims == (2, 0)
    assert resolve_module("P2/<x>", a2).dims == (2, 1)
    assert resolve_module("rad(P1)", a2).dims == (1, 1)
    assert resolve_module("syz(S1)", a2).dims == (1, 1)
    assert resolve_module("dual(S1)", a2).dim == 2
    assert resolve_module("dual(dual(S1))", a2).name == "dual(dual(S1))"


@pytest.mark.parametrize("descriptor", ["S3", "P1/<q>", "Q1", "rad(S9)"])
def test_bad_descriptors(a2, descriptor):
    with pytest.raises(UsageError):
        resolve_module(descriptor, a2)

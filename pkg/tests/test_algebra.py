from itertools import product

import pytest

from app import config
from app.exceptions import AdmissibilityError, AlgebraMismatchError, BudgetExceededError, InvalidIdealError
from app.services.algebra import (
    Arrow,
    Presentation,
    Quiver,
    build_algebra,
    format_relation,
    left_annihilator,
    opposite_algebra,
    quotient_algebra,
    radical_generators,
    socle_left_regular,
)
from app.services.corpus import corpus_algebra
from app.services.parser import parse_presentation

MIXED = """\
field F101
vertices 1
arrow x 1 1
arrow y 1 1
relation x*x - y*y*y
relation x*y
relation y*x
nilpotency 6
"""


def _labels(a, vectors):
    return {a.format_element(v) for v in vectors}


def test_a2_basis(a2):
    assert a2.dim == 8
    assert a2.labels == ["e1", "e2", "b", "c", "x", "y", "bx", "cy"]


def test_a2_products_follow_right_to_left_composition(a2):
    b, c, x, y = (a2.element(n) for n in "bcxy")
    assert str(b * x) == "bx"
    assert str(c * y) == "cy"
    assert (c * x).is_zero()
    assert (x * b).is_zero()
    assert (c * c).is_zero()


def test_associativity(a2):
    units = [a2.unit_vector(i) for i in range(a2.dim)]
    for u, v, w in product(units, repeat=3):
        assert a2.multiply(a2.multiply(u, v), w) == a2.multiply(u, a2.multiply(v, w))


def test_idempotents(a2):
    e1, e2 = a2.idempotent("1"), a2.idempotent("2")
    assert a2.multiply(e1, e1) == e1
    assert a2.multiply(e1, e2) == a2.zero()
    total = tuple((p + q) % 101 for p, q in zip(e1, e2))
    assert total == a2.one()


def test_socle_of_regular_module(a2):
    socle = socle_left_regular(a2)
    assert len(socle) == 4
    assert _labels(a2, socle) == {"b", "c", "bx", "cy"}


def test_radical_generators(a2):
    gens = radical_generators(a2)
    assert {str(g) for g in gens} == {"x", "y", "b", "c", "bx", "cy"}


def test_radical_of_truncated_polynomial():
    a = corpus_algebra("local-x3")
    assert {str(g) for g in radical_generators(a)} == {"x", "xx"}


def test_annihilator_of_radical(a2):
    ann = left_annihilator(a2, radical_generators(a2))
    assert _labels(a2, ann) == {"x", "y", "bx", "cy"}


def test_annihilator_edge_cases(a2):
    assert left_annihilator(a2, [a2.one()]) == []
    assert len(left_annihilator(a2, [])) == a2.dim


def test_quotient_by_annihilator(a2):
    ann = left_annihilator(a2, radical_generators(a2))
    quotient, qmap = quotient_algebra(a2, ann, "A2/Ann")
    assert quotient.dim == 4
    assert quotient.labels == ["e1", "e2", "b", "c"]
    assert qmap.shape == (4, 8)


def test_quotient_by_radical_is_semisimple(a2):
    quotient, _ = quotient_algebra(a2, [a2.unit_vector(i) for i in a2.radical_indices()])
    assert quotient.dim == 2
    assert quotient.radical_indices() == []


def test_quotient_rejects_idempotents(a2):
    with pytest.raises(InvalidIdealError):
        quotient_algebra(a2, [a2.idempotent("1")])


def test_quotient_rejects_one_sided_ideal(a2):
    # span{b} is not closed under left multiplication by x
    with pytest.raises(InvalidIdealError):
        quotient_algebra(a2, [a2.element("b").coeffs])


def test_opposite(a2):
    op = opposite_algebra(a2)
    assert op.labels == a2.labels
    assert opposite_algebra(op) is a2
    for i in range(a2.dim):
        for j in range(a2.dim):
            assert op.mult[i][j] == a2.mult[j][i]


def test_family_dimensions():
    for n in (3, 4):
        assert corpus_algebra(f"reflexive-simples-{n}").dim == 2 * n + 4


def test_three_vertex_example(three_vertex):
    assert three_vertex.dim == 5
    assert len(socle_left_regular(three_vertex)) == 3


def test_single_vertex_without_arrows(f101):
    a = build_algebra(Presentation(Quiver(("1",), ()), f101))
    assert a.dim == 1
    assert a.labels == ["e1"]


def test_commutative_local_algebra():
    a = corpus_algebra("local-commutative-xy")
    assert a.dim == 4
    assert a.is_commutative()
    assert a.is_local()


def test_structure_flags(a2):
    assert not a2.is_local()
    assert not a2.radical_square_is_zero()
    assert corpus_algebra("kronecker").radical_square_is_zero()


def test_non_composable_relation(f101):
    quiver = Quiver(("1", "2"), (Arrow("x", "2", "1"),))
    with pytest.raises(AdmissibilityError):
        Presentation(quiver, f101, (((1, ("x", "x")),),))


def test_short_relation_rejected(f101):
    quiver = Quiver(("1",), (Arrow("x", "1", "1"),))
    with pytest.raises(AdmissibilityError):
        Presentation(quiver, f101, (((1, ("x",)),),))


def test_unbounded_loop_is_not_admissible(f101):
    quiver = Quiver(("1",), (Arrow("x", "1", "1"),))
    with pytest.raises(AdmissibilityError):
        build_algebra(Presentation(quiver, f101, (), nilpotency=3))


def test_elements_of_different_algebras(a2, three_vertex):
    with pytest.raises(AlgebraMismatchError):
        a2.element("b") * three_vertex.element("a")


def test_relation_mixing_path_lengths():
    a = build_algebra(parse_presentation(MIXED))
    assert a.dim == 5
    assert a.labels == ["e1", "x", "y", "xx", "yy"]
    assert a.element("y") * a.element("yy") == a.element("xx")
    assert (a.element("x") * a.element("xx")).is_zero()
    assert (a.element("x") * a.element("y")).is_zero()
    assert a.is_local()


def test_mixed_relation_without_enough_zero_paths(f101):
    text = MIXED.replace("relation x*y\nrelation y*x\n", "").replace("nilpotency 6", "nilpotency 3")
    with pytest.raises(AdmissibilityError, match="length 4"):
        build_algebra(parse_presentation(text))


def test_mixed_relation_path_budget(monkeypatch):
    monkeypatch.setattr(config, "PATH_SPACE_BUDGET", 20)
    with pytest.raises(BudgetExceededError):
        build_algebra(parse_presentation(MIXED))


def test_format_relation_keeps_signs_and_coefficients(f101):
    p = parse_presentation(MIXED)
    assert format_relation(p.relations[0], f101) == "x*x - y*y*y"
    assert format_relation(((3, ("x", "y")), (-2, ("y", "x"))), f101) == "3*x*y - 2*y*x"

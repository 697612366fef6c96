import pytest

from app.services.corpus import CORPUS, corpus_algebra
from app.services.duality import (
    a_dual,
    are_orthogonal,
    cogenerated_by,
    duality_triple_holds,
    is_brick,
    is_reflexive,
    is_regular_reflexive,
    is_torsionless,
    phi,
)
from app.services.algebra import opposite_algebra
from app.services.parser import resolve_module
from app.services.representation import is_iso, is_simple, projective, radical_rep, regular_rep, simple

LARGE = {"reflexive-simples-3", "reflexive-simples-4"}


def test_duals_of_simples(a2):
    for v in a2.vertices:
        dual = a_dual(simple(a2, v))
        assert dual.algebra is opposite_algebra(a2)
        assert dual.dim == 2
        assert is_brick(dual)
    assert are_orthogonal(a_dual(simple(a2, "1")), a_dual(simple(a2, "2")))


def test_simples_are_reflexive(a2):
    for v in a2.vertices:
        s = simple(a2, v)
        assert is_torsionless(s)
        assert is_reflexive(s)
        assert phi(s).cokernel.is_zero()


def test_quotients_of_p1_are_torsionless_not_reflexive(a2):
    for descriptor in ("P1/<c>", "P1/<b>"):
        m = resolve_module(descriptor, a2)
        assert is_torsionless(m)
        assert not is_reflexive(m)


def test_three_vertex_example(three_vertex):
    s2 = simple(three_vertex, "2")
    assert is_torsionless(s2)
    assert not is_reflexive(s2)
    assert is_simple(a_dual(s2))
    data = phi(s2)
    assert is_iso(data.double_dual, projective(three_vertex, "3"))
    assert data.cokernel.dims == (0, 0, 1)
    assert not is_torsionless(simple(three_vertex, "3"))


def test_projectives_and_regular_are_reflexive(a2, three_vertex):
    for a in (a2, three_vertex):
        assert is_regular_reflexive(a)
        for v in a.vertices:
            assert is_reflexive(projective(a, v))


def test_local_radical_square_zero_simple(local_xy):
    s = simple(local_xy, "1")
    assert a_dual(s).dim == 2
    assert is_torsionless(s)
    assert not is_reflexive(s)


def test_cogeneration(a2):
    radical, _ = radical_rep(regular_rep(a2))
    assert cogenerated_by(simple(a2, "1"), radical)
    assert cogenerated_by(projective(a2, "1"), regular_rep(a2))


@pytest.mark.parametrize(
    "slug",
    [pytest.param(e.slug, marks=pytest.mark.slow) if e.slug in LARGE else e.slug for e in CORPUS],
)
def test_duality_triple(slug):
    a = corpus_algebra(slug)
    for v in a.vertices:
        for descriptor in (f"S{v}", f"P{v}", f"rad(P{v})", f"mho(S{v})", f"dual(S{v})"):
            m = resolve_module(descriptor, a)
            if m.dim:
                assert duality_triple_holds(m), f"{slug}: {descriptor}"

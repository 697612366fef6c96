import pytest

from app.exceptions import BudgetExceededError, UsageError
from app.services.classification import (
    enumerate_indecomposables,
    enumeration_size,
    projective_point_count,
    submodule_lattice,
    torsionless_census,
)
from app.services.corpus import corpus_algebra
from app.services.fields import QQ
from app.services.duality import is_torsionless
from app.services.representation import direct_sum, is_projective, projective, simple


def test_projective_point_count():
    assert projective_point_count(2, 3) == 7
    assert projective_point_count(3, 2) == 4


def test_lattice_of_uniserial_projective(line2):
    lattice = submodule_lattice(projective(line2, "1"))
    assert len(lattice) == 3
    assert [lattice.dim(k) for k in range(len(lattice))] == [0, 1, 2]
    assert len(lattice.proper_nonzero()) == 1
    quotient, _ = lattice.quotient(1)
    assert quotient.dims == (1, 0)


def test_lattice_of_semisimple_module_over_f2(f2):
    a = corpus_algebra("semisimple-1", f2)
    m, _, _ = direct_sum([simple(a, "1"), simple(a, "1")])
    # 0, three lines, everything
    assert len(submodule_lattice(m)) == 5


def test_lattice_needs_a_finite_field():
    a = corpus_algebra("line-2", QQ)
    with pytest.raises(BudgetExceededError):
        submodule_lattice(projective(a, "1"))


def test_lattice_point_budget(line2):
    with pytest.raises(BudgetExceededError):
        submodule_lattice(projective(line2, "1"), budget=1)


def test_enumeration_over_f2(f2):
    a = corpus_algebra("line-2", f2)
    found = enumerate_indecomposables(a, (1, 1))
    assert sorted(m.dims for m in found) == [(0, 1), (1, 0), (1, 1)]


def test_enumeration_lifts_to_the_working_field(f2, f101):
    a = corpus_algebra("kronecker", f2)
    work = corpus_algebra("kronecker", f101)
    stats = {}
    found = enumerate_indecomposables(a, (1, 1), work, stats=stats)
    # S1, S2 and the three modules k --(1,0),(0,1),(1,1)--> k
    assert len(found) == 5
    assert all(m.algebra is work for m in found)
    assert stats["lift_drops"] == 0


def test_enumeration_rejects_large_fields(line2):
    with pytest.raises(UsageError):
        enumerate_indecomposables(line2, (1, 1))


def test_enumeration_budget(f2):
    a = corpus_algebra("kronecker", f2)
    assert enumeration_size(a, (2, 2)) > 10
    with pytest.raises(BudgetExceededError):
        enumerate_indecomposables(a, (2, 2), budget=10)


def test_census_of_line(line2):
    census = torsionless_census(line2)
    assert census.count == 2
    assert all(is_projective(m) for m in census.members)
    assert census.proved_within_budget
    assert census.cross_checked


@pytest.mark.parametrize("n", [1, 2])
def test_census_of_semisimple(n):
    census = torsionless_census(corpus_algebra(f"semisimple-{n}"))
    assert census.count == n


@pytest.mark.slow
def test_census_of_a2(a2):
    census = torsionless_census(a2)
    assert census.count == 6
    assert census.stats["cap"] == [3, 2]
    assert census.proved_within_budget
    assert census.cross_checked
    names = [m.name for m in census.members]
    assert names[:2] == ["P1", "P2"]
    assert sorted(m.dims for m in census.members) == [(0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (3, 2)]
    assert all(is_torsionless(m) for m in census.members)


@pytest.mark.slow
def test_census_of_three_vertex_family_member():
    assert torsionless_census(corpus_algebra("reflexive-simples-3")).count == 8

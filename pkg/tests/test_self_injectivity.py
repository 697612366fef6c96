import pytest

from app.exceptions import UsageError
from app.services.corpus import CORPUS, corpus_algebra
from app.services.self_injectivity import (
    CONDITIONS,
    contrapositive_scan,
    is_kasch,
    is_qf2,
    is_qf3,
    is_self_injective,
    self_injectivity_report,
    simple_dual_report,
    socle_multiplicities,
)

SELF_INJECTIVE = {
    "nakayama-cycle-3-rad2",
    "nakayama-cycle-2-loewy3",
    "local-x3",
    "local-x4",
    "local-commutative-xy",
    "semisimple-1",
    "semisimple-2",
}
LARGE = {"reflexive-simples-3", "reflexive-simples-4"}


@pytest.mark.parametrize(
    "slug",
    [pytest.param(e.slug, marks=pytest.mark.slow) if e.slug in LARGE else e.slug for e in CORPUS],
)
def test_socle_conditions_agree(slug):
    a = corpus_algebra(slug)
    report = self_injectivity_report(a)
    assert set(report.conditions) == set(CONDITIONS)
    assert len(set(report.conditions.values())) == 1
    assert report.verdict == (slug in SELF_INJECTIVE)
    assert is_self_injective(a) == report.verdict
    if not report.verdict:
        assert set(report.witnesses) == set(CONDITIONS)


def test_a2_is_kasch_but_not_qf2(a2):
    assert is_kasch(a2)
    qf2 = is_qf2(a2)
    assert not qf2
    assert qf2.witness.startswith("soc P1")
    assert not self_injectivity_report(a2).verdict
    assert socle_multiplicities(a2) == (2, 2)


def test_line_is_qf2_qf3_but_not_kasch(line2):
    kasch = is_kasch(line2)
    assert not kasch
    assert kasch.witness == "S1 is not a submodule of A"
    assert is_qf2(line2)
    assert is_qf3(line2)


def test_kronecker_is_not_qf2():
    assert not is_qf2(corpus_algebra("kronecker"))


def test_simple_dual_report_of_a2(a2):
    report = simple_dual_report(a2)
    assert [e.dual_dim for e in report.simples] == [2, 2]
    assert all(e.reflexive and e.dual_brick for e in report.simples)
    assert report.orthogonal == {("1", "2"): True}
    assert report.all_simples_reflexive
    assert report.single_missing_dual == (False, None)
    assert not report.self_injective
    assert report.injective_torsionless_projective


@pytest.mark.parametrize(
    "slug",
    [pytest.param(e.slug, marks=pytest.mark.slow) if e.slug in LARGE else e.slug for e in CORPUS],
)
def test_duals_of_reflexive_simples_are_orthogonal_bricks_without_torsionless_factors(slug):
    report = simple_dual_report(corpus_algebra(slug))
    assert report.no_torsionless_factors
    assert report.orthogonal_brick_duals
    reflexive = [e for e in report.simples if e.reflexive]
    for e in reflexive:
        assert e.dual_brick
        assert e.no_torsionless_factor is True
    assert len(report.orthogonal) == len(reflexive) * (len(reflexive) - 1) // 2
    assert all(report.orthogonal.values())


def test_simple_dual_report_of_three_vertex_example(three_vertex):
    report = simple_dual_report(three_vertex)
    s2 = report.entry("2")
    assert s2.torsionless and not s2.reflexive
    assert s2.dual_dim == 1
    assert s2.phi_cokernel_dims == (0, 0, 1)
    assert report.entry("3").dual_dim == 0


def test_simple_dual_report_of_self_injective_algebra():
    report = simple_dual_report(corpus_algebra("nakayama-cycle-3-rad2"))
    assert report.self_injective
    assert report.self_injective_reflexive
    assert report.single_missing_dual == (True, True)


def test_commutative_local_duals_are_semisimple():
    report = simple_dual_report(corpus_algebra("local-commutative-xy"))
    assert report.entry("1").dual_dim == 1


@pytest.mark.parametrize(
    "slug, cls",
    [("nakayama-cycle-3-rad2", "radSquareZero"), ("local-x3", "local"), ("local-x4", "local")],
)
def test_vacuous_scans(slug, cls):
    verdict = contrapositive_scan(corpus_algebra(slug), cls)
    assert verdict.vacuous
    assert verdict.witness is None


@pytest.mark.parametrize(
    "slug, cls, witness, kind",
    [
        ("local-xy-rad2", "local", "S1", "not reflexive"),
        ("local-xy-rad2", "radSquareZero", "S1", "not reflexive"),
        ("linear-3-zero-composite", "QF2", "S3", "not torsionless"),
        ("line-2", "QF2", "S1", "not torsionless"),
        ("line-2", "radSquareZero", "S1", "not reflexive"),
        ("line-2", "injectiveHullProjDimAtMostOne", "S1", "not torsionless"),
    ],
)
def test_scans_find_witnesses(slug, cls, witness, kind):
    verdict = contrapositive_scan(corpus_algebra(slug), cls)
    assert not verdict.vacuous
    assert (verdict.witness, verdict.kind) == (witness, kind)


def test_scan_rejects_unknown_class(a2):
    with pytest.raises(UsageError):
        contrapositive_scan(a2, "Gorenstein")


def test_scan_rejects_non_members(a2):
    with pytest.raises(UsageError):
        contrapositive_scan(a2, "local")

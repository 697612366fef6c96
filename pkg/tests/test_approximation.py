from app.services.approximation import Approximation, is_left_approximation, mho, mho_quiver, minimal_left_approx
from app.services.corpus import corpus_algebra
from app.services.duality import is_torsionless
from app.services.parser import resolve_module
from app.services.representation import direct_sum, ext1, is_iso, projective, regular_rep, simple


def test_mho_of_projective_is_zero(a2):
    for v in a2.vertices:
        assert mho(projective(a2, v)).is_zero()


def test_approximation_of_simple(a2):
    approx = minimal_left_approx(simple(a2, "1"))
    assert approx.certified
    assert approx.target.dims == projective(a2, "1").dims
    assert approx.map.is_injective()
    assert is_left_approximation(approx)


def test_approximation_with_a_spare_summand_is_not_certified(a2):
    approx = minimal_left_approx(simple(a2, "1"))
    doubled, injections, _ = direct_sum([approx.target, approx.target])
    spare = Approximation(approx.source, doubled, injections[0].compose(approx.map), 0)
    assert is_left_approximation(spare)
    assert not spare.certified


def test_mho_of_simples(a2):
    assert is_iso(mho(simple(a2, "1")), resolve_module("P1/<c>", a2))
    assert is_iso(mho(simple(a2, "2")), resolve_module("P1/<b>", a2))


def test_mho_of_torsionless_non_reflexive_modules(a2):
    for descriptor in ("P1/<c>", "P1/<b>"):
        image = mho(resolve_module(descriptor, a2))
        assert image.dim == 6
        assert not is_torsionless(image)
    assert not is_iso(mho(resolve_module("P1/<b>", a2)), resolve_module("P2/<x>", a2))


def test_mho_images_have_no_extensions_into_a(a2):
    reg = regular_rep(a2)
    for descriptor in ("S1", "S2", "P1/<c>", "P1/<b>"):
        assert ext1(mho(resolve_module(descriptor, a2)), reg) == 0


def test_mho_quiver_of_a2(a2):
    quiver = mho_quiver([simple(a2, v) for v in a2.vertices])
    assert len(quiver.nodes) == 6
    assert len(quiver.edges) == 4
    assert quiver.component_sizes() == [3, 3]
    assert sum(node.reflexive for node in quiver.nodes) == 2


def test_mho_quiver_dot(a2):
    seeds = [simple(a2, v) for v in a2.vertices]
    dot = mho_quiver(seeds).to_dot("a2")
    assert dot.count("->") == 4
    assert sum(1 for line in dot.splitlines() if "label=" in line and "->" not in line) == 6
    assert mho_quiver(seeds).to_dot("a2") == dot


def test_mho_quiver_of_larger_family_member():
    a = corpus_algebra("reflexive-simples-3")
    quiver = mho_quiver([simple(a, v) for v in a.vertices])
    assert len(quiver.nodes) == 7
    assert quiver.component_sizes() == [3, 4]


def test_step_cap_stops_the_walk(a2):
    quiver = mho_quiver([simple(a2, "1")], max_steps=0)
    assert len(quiver.nodes) == 1
    assert quiver.terminations[0] == "step cap"

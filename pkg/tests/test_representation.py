import pytest

from app.exceptions import DimensionMismatchError, InvalidRepresentationError
from app.services.linalg import Matrix
from app.services.parser import resolve_module
from app.services.representation import (
    Rep,
    RepMap,
    decompose,
    direct_sum,
    end_algebra,
    ext1,
    hom_basis,
    hom_dim,
    injective_envelope,
    is_indecomposable,
    is_iso,
    is_projective,
    linear_dual,
    proj_dim_at_most,
    projective,
    projective_cover,
    radical_rep,
    regular_rep,
    simple,
    socle_rep,
    sub_rep_generated,
    syzygy,
    top_rep,
)


def test_regular_and_projective_dimensions(a2):
    assert regular_rep(a2).dims == (5, 3)
    assert projective(a2, "1").dims == (2, 1)
    assert projective(a2, "2").dims == (3, 2)


def test_hom_from_simples_into_regular(a2):
    reg = regular_rep(a2)
    assert hom_dim(simple(a2, "1"), reg) == 2
    assert hom_dim(simple(a2, "2"), reg) == 2


def test_hom_basis_elements_intertwine(a2):
    p1, p2 = projective(a2, "1"), projective(a2, "2")
    for g in hom_basis(p1, p2):
        g.validate()
    # Hom(P1, P2) = e1 A e2 = span{x, y, cy}
    assert len(hom_basis(p1, p2)) == 3


def test_radical_socle_top(a2):
    p1 = projective(a2, "1")
    assert radical_rep(p1)[0].dims == (1, 1)
    assert socle_rep(p1)[0].dims == (1, 1)
    assert top_rep(p1)[0].dims == (1, 0)


def test_projectives_are_indecomposable(a2):
    for v in a2.vertices:
        assert is_indecomposable(projective(a2, v)).verdict == "yes"
        assert end_algebra(projective(a2, v)).top_dim == 1


def test_decompose_regular(a2):
    parts = decompose(regular_rep(a2))
    assert sorted((r.dims, mult) for r, mult in parts) == [((2, 1), 1), ((3, 2), 1)]


def test_decompose_is_independent_of_generator_order(a2):
    m, _, _ = direct_sum([simple(a2, "1"), projective(a2, "2"), simple(a2, "1")])
    forward = sorted((r.dims, k) for r, k in decompose(m))
    backward = sorted((r.dims, k) for r, k in decompose(m, reverse=True))
    assert forward == backward == [((1, 0), 2), ((3, 2), 1)]


def test_is_iso(a2):
    p1 = projective(a2, "1")
    assert is_iso(p1, p1.renamed("copy"))
    assert not is_iso(p1, projective(a2, "2"))
    assert not is_iso(simple(a2, "1"), simple(a2, "2"))


def test_module_file_matches_quotient_of_projective(a2):
    from app import config

    from_file = resolve_module(str(config.DATA_DIR / "modules" / "a2-b.mod"), a2)
    assert from_file.dims == (1, 1)
    assert is_iso(from_file, resolve_module("P1/<c>", a2))
    assert not is_iso(from_file, resolve_module("P1/<b>", a2))


def test_invalid_representation(a2, f101):
    one = Matrix.identity(f101, 1)
    with pytest.raises(InvalidRepresentationError):
        # x*b must vanish
        Rep(a2, [1, 1], {"b": one, "x": one})


def test_wrong_matrix_shape(a2, f101):
    with pytest.raises(DimensionMismatchError):
        Rep(a2, [1, 1], {"b": Matrix.identity(f101, 2)})


def test_rep_map_must_intertwine(a2, f101):
    s1, p1 = simple(a2, "1"), projective(a2, "1")
    # c does not kill e1, so S1 cannot be sent onto it
    with pytest.raises(InvalidRepresentationError):
        RepMap(s1, p1, [Matrix.from_rows(f101, [[1], [0]]), Matrix.zeros(f101, 1, 0)])


def test_projective_cover_and_syzygy(a2):
    s1 = simple(a2, "1")
    cover, pi = projective_cover(s1)
    assert cover.dims == (2, 1)
    assert pi.is_surjective()
    assert syzygy(s1).dims == (1, 1)


def test_projectivity(a2):
    assert is_projective(projective(a2, "2"))
    assert not is_projective(simple(a2, "1"))
    assert is_projective(regular_rep(a2))


def test_projective_dimension_of_hereditary_simples(line2):
    for v in line2.vertices:
        assert proj_dim_at_most(simple(line2, v), 1)
    assert not is_projective(simple(line2, "1"))


def test_injective_envelope(line2):
    # the injective hull of S1 over 1 -> 2 is S1 itself; of S2 it is P1
    hull1, _ = injective_envelope(simple(line2, "1"))
    assert hull1.dims == (1, 0)
    hull2, inc = injective_envelope(simple(line2, "2"))
    assert hull2.dims == (1, 1)
    assert inc.is_injective()


def test_ext_groups(a2):
    p2 = projective(a2, "2")
    assert ext1(projective(a2, "1"), p2) == 0
    assert ext1(resolve_module("P2/<x>", a2), p2) > 0


def test_generated_submodules(a2):
    p1 = projective(a2, "1")
    units = [[1 if k == j else 0 for k in range(p1.dim)] for j in range(p1.dim)]
    whole, inc = sub_rep_generated(p1, units)
    assert whole.dims == p1.dims
    assert inc.is_surjective()
    zero, _ = sub_rep_generated(p1, [])
    assert zero.is_zero()


def test_linear_dual(a2):
    p1 = projective(a2, "1")
    dual = linear_dual(p1)
    assert dual.dims == p1.dims
    assert dual.algebra is not a2
    assert is_iso(linear_dual(dual), p1)

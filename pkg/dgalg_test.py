import pytest

from conftest import assert_all_pass, failures
from zigzag.dgalg import (
    CellModule,
    ComplexError,
    DerivationError,
    FiniteComplex,
    Generator,
    build_resolution,
    cell_d_squared_check,
    dg_an_shriek,
    final_generator,
    make_derivation,
    verify_resolution,
)
from zigzag.quiver import AlgebraError, build_named_algebra


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_differential_is_square_zero_derivation(n):
    alg, d = dg_an_shriek(n)
    assert d.failures() == []
    assert d(alg.element((1, 2))) == alg.element((1, 2, 1, 2))
    assert not d(alg.element((2, 1)))


def test_derivation_of_wrong_degree_is_rejected():
    alg = build_named_algebra("an_shriek", 3)
    with pytest.raises(DerivationError):
        make_derivation(alg, {(1, 2): alg.element((1, 2))})
    with pytest.raises(DerivationError):
        make_derivation(alg, {(1, 3): alg.zero()})


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_resolutions_resolve_simples(n):
    for i in range(1, n + 1):
        assert_all_pass(verify_resolution(n, i, "left"))
        assert_all_pass(verify_resolution(n, i, "right"))


def test_ladder_shape():
    module = build_resolution(5, 5, "left")
    shifts = sorted(g.shift for g in module.generators)
    assert shifts == [-1, -1, -1, 0, 0, 0, 0, 0]
    assert module.generators[final_generator(module, 5)].name == "P5"


def test_dropped_arrow_breaks_the_resolution():
    good = build_resolution(3, 2, "left")
    arrows = dict(good.arrows)
    arrows.pop(min(arrows))
    bad = CellModule(good.algebra, good.derivation, good.side, good.generators, arrows, good.name)
    assert failures(verify_resolution(3, 2, "left", bad))


def test_label_of_wrong_degree_is_reported():
    alg, d = dg_an_shriek(3)
    module = CellModule(alg, d, "left", [Generator(1, 0, "a"), Generator(2, 1, "b")],
                        {(0, 1): alg.element((1, 2))}, "wrong")
    assert failures(cell_d_squared_check(module))


def test_bad_vertices():
    with pytest.raises(AlgebraError):
        build_resolution(3, 4, "left")
    with pytest.raises(AlgebraError):
        build_resolution(1, 1, "left")


def test_finite_complex_homology():
    # a -> b, c alone: homology is c in degree 0
    cx = FiniteComplex(["a", "b", "c"], [0, 1, 0], [0b010, 0, 0])
    hom = cx.homology()
    assert hom.dims == {0: 1}
    assert cx.is_boundary(0b010)
    assert not cx.is_boundary(0b100)
    broken = FiniteComplex(["a", "b", "c"], [0, 1, 2], [0b010, 0b100, 0])
    with pytest.raises(ComplexError):
        broken.homology()


def test_expand_has_square_zero_differential():
    cx = build_resolution(4, 2, "right").expand()
    assert cx.square_defects() == []


@pytest.mark.parametrize("by", [-2, 1, 3])
def test_shifting_moves_homology_and_keeps_labels(by):
    module = build_resolution(3, 2, "left")
    moved = module.shifted(by)
    assert [g.shift for g in moved.generators] == [g.shift + by for g in module.generators]
    assert moved.arrows == module.arrows
    assert moved.name == f"{module.name}[{by}]"
    assert_all_pass(cell_d_squared_check(moved))
    before = module.expand().homology().dims
    assert moved.expand().homology().dims == {t - by: d for t, d in before.items()}

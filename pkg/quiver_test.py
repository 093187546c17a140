import pytest

from zigzag.quiver import (
    AlgebraError,
    NotFiniteError,
    Quiver,
    QuotientAlgebra,
    an_shriek_relations,
    build_named_algebra,
    format_path,
    loop,
)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8])
def test_dimensions(n):
    assert build_named_algebra("an", n).dimension == 4 * n - 3
    assert build_named_algebra("zigzag", n).dimension == 4 * n - 6


@pytest.mark.parametrize("n", [2, 3, 5])
def test_an_shriek_corner_is_one_dimensional(n):
    alg = build_named_algebra("an_shriek", n)
    assert [alg.basis[k] for k in alg.block_indices(1, 1)] == [(1,)]


def test_an_relations_hold():
    an = build_named_algebra("an", 4)
    assert an.element((2, 1, 2)) == an.element((2, 3, 2))
    assert not an.element((1, 2, 3))
    assert not an.element((3, 2, 1))
    assert not an.element((4, 3, 4))
    # arrows up have degree 0, arrows down degree 1
    assert an.element((2, 1)).degree() == 1
    assert an.element((1, 2)).degree() == 0
    assert an.element((2, 1, 2)).degree() == 1


def test_zigzag_products(zigzag3):
    c = zigzag3
    up, down = c.element((1, 2)), c.element((2, 1))
    assert up * down == loop(c, 1)
    assert down * up == loop(c, 2)
    assert loop(c, 1) * up == c.zero()
    assert c.unit() * up == up
    assert up * c.unit() == up


def test_blocks_and_idempotents(zigzag4):
    c = zigzag4
    assert {d: len(ks) for d, ks in c.idempotent_block(2, 2).items()} == {0: 1, 1: 1}
    assert {d: len(ks) for d, ks in c.idempotent_block(1, 2).items()} == {0: 1}
    assert c.idempotent_block(1, 3) == {}
    assert c.vertices() == [1, 2, 3]
    with pytest.raises(AlgebraError):
        c.idempotent_block(0, 1)


def test_mixing_algebras_is_an_error(zigzag3, zigzag4):
    with pytest.raises(AlgebraError):
        zigzag3.unit() + zigzag4.unit()


def test_unknown_and_small_inputs():
    with pytest.raises(AlgebraError):
        build_named_algebra("e8", 3)
    with pytest.raises(AlgebraError):
        build_named_algebra("an", 1)


def test_non_path_and_inhomogeneous_relations():
    quiver = Quiver.line(3, 0, 1)
    with pytest.raises(AlgebraError):
        QuotientAlgebra.enumerate_basis(quiver, [{(1, 3)}])
    with pytest.raises(AlgebraError):
        QuotientAlgebra.enumerate_basis(quiver, [{(1, 2, 1), (1,)}])
    with pytest.raises(AlgebraError):
        Quiver(2, {(1, 3): 0})


def test_free_algebra_is_not_finite():
    with pytest.raises(NotFiniteError):
        QuotientAlgebra.enumerate_basis(Quiver.line(2, 1, 0), [], ceiling=6)


def test_format_path():
    assert format_path((1, 2, 1)) == "(1|2|1)"
    assert format_path((3,)) == "(3)"


@pytest.mark.parametrize("name", ["an_shriek", "an", "zigzag"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_associative_and_unital(name, n):
    alg = build_named_algebra(name, n)
    one = alg.unit().vec
    for a in range(alg.dimension):
        x = 1 << a
        assert alg.multiply_vectors(one, x) == x
        assert alg.multiply_vectors(x, one) == x
        for b in range(alg.dimension):
            xy = alg.product_of_basis(a, b)
            for c in range(alg.dimension):
                lhs = alg.multiply_vectors(xy, 1 << c)
                rhs = alg.multiply_vectors(x, alg.product_of_basis(b, c))
                assert lhs == rhs, [alg.basis[k] for k in (a, b, c)]


def test_ceiling_from_the_environment(monkeypatch):
    monkeypatch.setenv("ZIGZAG_CEILING", "1")
    with pytest.raises(NotFiniteError):
        QuotientAlgebra.enumerate_basis(Quiver.line(3, 1, 0), an_shriek_relations(3))

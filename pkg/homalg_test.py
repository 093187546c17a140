import pytest

from conftest import assert_all_pass
from zigzag.homalg import (
    MapError,
    compose,
    cupcap_on_simple,
    ext_table,
    identity_map,
    koszul_check,
    resolution,
    resolution_hom,
    tensor_on_simple,
)
from zigzag.quiver import AlgebraError


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ext_between_simples_is_an(n):
    assert_all_pass(koszul_check(n))


def test_ext_of_a_simple_with_itself():
    assert ext_table(4, 2, 2).dims == {0: 1, 1: 1}
    assert ext_table(4, 4, 4).dims == {0: 1}
    assert ext_table(4, 1, 3).dims == {}


@pytest.mark.parametrize("i,j", [(1, 1), (1, 2), (2, 3), (3, 3)])
def test_hom_complex_is_a_complex(i, j):
    assert resolution_hom(3, i, j).square_defects() == []


def test_identity_maps():
    module = resolution(3, 2)
    one = identity_map(module)
    assert one * one == one
    assert one.d().is_zero()
    assert one.degree_problems() == []


def test_composing_mismatched_maps_fails():
    with pytest.raises(MapError):
        compose(identity_map(resolution(3, 1)), identity_map(resolution(3, 2)))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cupcap_multiplicities(n):
    for i in range(1, n):
        assert cupcap_on_simple(n, i, i) == {0: 1, 1: 1}
        if i + 1 <= n:
            assert cupcap_on_simple(n, i, i + 1) == {1: 1}
        if i > 1:
            assert cupcap_on_simple(n, i, i - 1) == {0: 1}
        for j in range(1, n + 1):
            if abs(i - j) > 1:
                assert cupcap_on_simple(n, i, j) == {}


def test_cupcap_needs_a_cap_index():
    with pytest.raises(AlgebraError):
        cupcap_on_simple(3, 3, 1)


@pytest.mark.parametrize("n", [3, 4])
def test_tensor_with_simples_from_the_right(n):
    for i in range(1, n):
        assert tensor_on_simple(n, i, i) == {-1: 1, 0: 1}
        assert tensor_on_simple(n, i, i + 1) == {0: 1}
        if i > 1:
            assert tensor_on_simple(n, i, i - 1) == {-1: 1}
    assert tensor_on_simple(n, n, n) == {0: 1}
    assert tensor_on_simple(n, n, n - 1) == {-1: 1}
    assert tensor_on_simple(n, 1, n) == {}


@pytest.mark.parametrize("a,b,c", [(1, 2, 3), (2, 2, 1), (3, 2, 2), (2, 1, 2)])
def test_differential_is_a_derivation_for_composition(a, b, c):
    first, second = resolution_hom(3, b, a), resolution_hom(3, c, b)
    for x in range(first.dimension):
        g = first.elementary(x)
        for y in range(second.dimension):
            f = second.elementary(y)
            assert (f * g).d() == f.d() * g + f * g.d()


@pytest.mark.parametrize("n", [3, 4])
def test_cupcap_is_the_mirror_of_the_right_tensor(n):
    # L_i[s] in the cup-cap image sits in homological degree -s on the tensor side,
    # with the neighbours i - 1 and i + 1 trading places
    for i in range(1, n):
        for j in range(1, n + 1):
            mirrored = {-s: mult for s, mult in cupcap_on_simple(n, i, j).items()}
            partner = 2 * i - j
            if 1 <= partner <= n:
                assert tensor_on_simple(n, i, partner) == mirrored
            else:
                assert mirrored == {} or abs(i - j) == 1

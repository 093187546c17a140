import pytest

from conftest import assert_all_pass, failures
from zigzag import config
from zigzag.endo import (
    build_named_maps,
    build_s,
    eprime,
    homology_table_checks,
    verify_eprime,
    verify_generator_relations,
    verify_iso_An,
    verify_quasi_iso_inclusion,
)
from zigzag.homalg import DGMap
from zigzag.quiver import AlgebraError


@pytest.mark.parametrize("n", [3, 4, 5] + [pytest.param(n, marks=pytest.mark.slow) for n in (6, 7, 8)])
def test_named_maps_and_relations(n):
    maps = build_named_maps(n)
    assert_all_pass(maps.construction_checks())
    assert_all_pass(verify_generator_relations(n))


@pytest.mark.parametrize("n", [3, 4])
def test_eprime_is_a_dg_algebra(n):
    assert_all_pass(verify_eprime(n))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_s_dimension(n):
    s = build_s(n)
    assert s.dimension == 8 * n - 12
    assert s.vertices == list(range(1, n))
    assert all(a < n and b < n for a, b in s.blocks)


@pytest.mark.parametrize("n", [3, 4] + [pytest.param(n, marks=pytest.mark.slow) for n in (5, 6)])
def test_homology_is_an(n):
    assert_all_pass(verify_iso_An(n))
    assert_all_pass(homology_table_checks(n))


@pytest.mark.parametrize("n", [3] + [pytest.param(n, marks=pytest.mark.slow)
                                     for n in range(4, config.QUASI_ISO_MAX_N + 1)])
def test_inclusion_is_a_quasi_isomorphism(n):
    assert_all_pass(verify_quasi_iso_inclusion(n))


def test_unit_and_product_in_eprime():
    e = eprime(4)
    one = e.vec("1_2")
    h = e.vec("h_2")
    assert e.multiply(one, h) == h
    assert e.multiply(h, h) == h
    assert e.d(one) == 0


def test_zero_alpha_breaks_the_loop_relation():
    n = 3
    maps = build_named_maps(n)
    f = maps.alpha(1, 2)
    broken = maps.replace("alpha_1,2", DGMap(f.source, f.target, f.degree, {}, name="alpha_1,2"))
    bad = [c.name for c in failures(verify_generator_relations(n, broken))]
    assert "d(h_1) = loop_down_1 + loop_up_1" in bad


def test_small_n_is_rejected():
    with pytest.raises(AlgebraError):
        build_named_maps(1)


@pytest.mark.parametrize("n", [3, 4])
def test_missing_h2_component_breaks_its_differential(n):
    maps = build_named_maps(n)
    h = maps.h(2)
    first = min(h.components)
    thin = DGMap(h.source, h.target, h.degree,
                 {kl: y for kl, y in h.components.items() if kl != first}, name="h_2")
    bad = [c.name for c in failures(verify_generator_relations(n, maps.replace("h_2", thin)))]
    assert "d(h_2) = loop_down_2 + loop_up_2" in bad

import pytest
import sympy as sp

from conftest import assert_all_pass, failures
from zigzag.burau import (
    braid_inverse,
    braid_matrix,
    cupcap_matrix,
    decategorification_check,
    laurent,
    q,
    same,
    specialization_check,
    specialize,
    tl_matrix,
    verify_burau,
    verify_tl_braid,
)
from zigzag.quiver import AlgebraError


def test_u1_for_three_strands():
    assert tl_matrix(3, 1) == sp.Matrix([[1 + q, q], [0, 0]])
    assert tl_matrix(3, 2) == sp.Matrix([[0, 0], [1, 1 + q]])


def test_middle_generator():
    u = tl_matrix(4, 2)
    assert u.row(1) == sp.Matrix([[1, 1 + q, q]])
    assert u.row(0) == sp.zeros(1, 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_relations(n):
    assert_all_pass(verify_tl_braid(n))
    assert_all_pass(specialization_check(n))


@pytest.mark.parametrize("n", [3, 4])
def test_inverse(n):
    for i in range(1, n):
        assert same(braid_matrix(n, i) * braid_inverse(n, i), sp.eye(n - 1))


def test_corrupted_generator_fails():
    u = tl_matrix(3, 1)
    u[0, 0] = q
    bad = [c.name for c in failures(verify_tl_braid(3, {1: u}))]
    assert "u1^2 = (1+q) u1" in bad


def test_cupcap_class_is_burau_at_minus_one():
    assert cupcap_matrix(3, 1) == sp.Matrix([[0, -1], [0, 0]])
    assert specialize(tl_matrix(3, 1), -1) == cupcap_matrix(3, 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_decategorification(n):
    assert_all_pass(decategorification_check(n))


def test_laurent_normal_form():
    assert laurent((q + 1) ** 2 - q ** 2 - 2 * q) == 1
    assert laurent(q * q ** -1) == 1


def test_bad_generator_index():
    with pytest.raises(AlgebraError):
        tl_matrix(3, 3)
    with pytest.raises(AlgebraError):
        tl_matrix(1, 1)


def test_suite():
    assert_all_pass(verify_burau(3))

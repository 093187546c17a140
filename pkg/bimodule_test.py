import pytest

from conftest import assert_all_pass, failures
from zigzag.bimodule import (
    AInfBimodule,
    bimodule_relation_check,
    build_Bk,
    build_diagonal_bimodule,
    build_f,
    degree_audit,
    morphism_defect,
    morphism_relation_check,
    verify_bimodules,
)
from zigzag.quiver import AlgebraError


def test_tensor_action_uses_m3_on_the_left(paths):
    bk = build_Bk(3, 1, 4)
    c = bk.algebra
    up, down, c1, e1 = paths(c, (1, 2), (2, 1), ("c", 1), (1,))
    m = bk.offset + bk.pair_index[(c1, e1)]
    assert bk.op(3, (up, down, m)) == 1 << m
    # nothing acts from both sides at once
    assert bk.op(3, (e1, m, e1)) == 0


def test_tensor_action_in_arity_two(paths):
    bk = build_Bk(3, 1, 4)
    c = bk.algebra
    up, down, e1, c1 = paths(c, (1, 2), (2, 1), (1,), ("c", 1))
    m = bk.offset + bk.pair_index[(e1, up)]
    # (e1 x (1|2)) (2|1) = e1 x c1
    assert bk.op(2, (m, down)) == 1 << (bk.offset + bk.pair_index[(e1, c1)])


def test_diagonal_operations_are_the_algebra_operations(paths):
    diag = build_diagonal_bimodule(3, 4)
    c = diag.algebra
    up, down, c1 = paths(c, (1, 2), (2, 1), ("c", 1))
    off = diag.offset
    assert diag.op(3, (up, down, c1 + off)) == 1 << (c1 + off)
    assert diag.op(3, (up, down + off, c1)) == 1 << (c1 + off)
    assert diag.op(3, (up, down, c1)) == diag.table.op(3, (up, down, c1))
    assert diag.op(1, (c1 + off,)) == 0


def test_tuples_carry_exactly_one_module_input():
    bk = build_Bk(4, 2, 4)
    for xs in bk.tuples(3):
        assert sum(1 for x in xs if x >= bk.offset) == 1
        for a, b in zip(xs, xs[1:]):
            assert bk.target(a) == bk.source(b)


def test_out_of_range_k():
    with pytest.raises(AlgebraError):
        build_Bk(3, 0)
    with pytest.raises(AlgebraError):
        build_Bk(3, 3)


@pytest.mark.parametrize("n", [3, 4])
def test_bimodule_relations(n):
    assert_all_pass(bimodule_relation_check(build_diagonal_bimodule(n, 4), 4))
    for k in range(1, n):
        bk = build_Bk(n, k, 4)
        assert_all_pass(bimodule_relation_check(bk, 4))
        assert_all_pass([degree_audit(bk, 4)])


@pytest.mark.parametrize("n", [3, 4])
def test_f_is_a_morphism(n):
    for k in range(1, n):
        assert_all_pass(morphism_relation_check(build_f(n, k, 4), 4))


def test_f_linear_part_is_multiplication(paths):
    f = build_f(3, 1, 4)
    c = f.source.algebra
    up, down, c2 = paths(c, (1, 2), (2, 1), ("c", 2))
    m = f.source.offset + f.source.pair_index[(down, up)]
    # (2|1) x (1|2) goes to the loop at 2
    assert f.op((m,)) == 1 << (f.target.offset + c2)
    assert morphism_defect(f, (m, down)) == 0


def test_f_without_multiplication_is_not_a_morphism():
    literal = build_f(3, 1, 4, multiplication=False)
    assert failures(morphism_relation_check(literal, 3))


def test_verify_reports_the_literal_reading():
    checks = verify_bimodules(3, 4)
    assert_all_pass(checks)
    literal = [c for c in checks if c.name == "f with zero linear part"]
    assert literal and literal[0].status == "info"
    assert literal[0].witness["morphism"] is False
    assert failures(verify_bimodules(3, 4, multiplication=False))


def test_dropping_one_pair_of_f_on_c1(paths):
    c = build_diagonal_bimodule(2, 4).algebra
    e, c1 = paths(c, (1,), ("c", 1))
    f = build_f(2, 1, 4, drop=[(e, e)])
    m = f.source.offset + f.source.pair_index[(e, e)]
    assert f.op((m,)) == 0
    # c1 (e x e) = c1 x e goes to c1, but c1 f(e x e) = 0
    assert morphism_defect(f, (c1, m)) == 1 << (f.target.offset + c1)
    assert failures(morphism_relation_check(f, 3))
    assert_all_pass(morphism_relation_check(build_f(2, 1, 4), 4))


def test_bimodule_base_class_is_abstract():
    with pytest.raises(TypeError):
        AInfBimodule("M", build_diagonal_bimodule(2, 3).table, [], [], [], [])

import pytest

from conftest import assert_all_pass, failures
from zigzag.quiver import build_named_algebra
from zigzag.transfer import (
    LEAF,
    composable_tuples,
    contraction,
    enumerate_trees,
    evaluate_tree,
    format_tree,
    leaves,
    m3_families,
    transfer_table,
    transferred_mk,
    transferred_table,
    tree_contributions,
    verify_contraction,
    verify_minimal_model,
)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_contraction_identities(n):
    assert_all_pass(verify_contraction(n))


@pytest.mark.parametrize("k,count", [(2, 1), (3, 2), (4, 5), (5, 14), (6, 42)])
def test_tree_counts(k, count):
    trees = enumerate_trees(k)
    assert len(trees) == count
    assert all(leaves(t) == k for t in trees)


def test_tree_formatting_and_bounds():
    assert [format_tree(t) for t in enumerate_trees(3)] == ["(x,(x,x))", "((x,x),x)"]
    with pytest.raises(ValueError):
        enumerate_trees(1)
    with pytest.raises(ValueError):
        evaluate_tree(contraction(3), LEAF, (0,))


@pytest.mark.parametrize("n", [3, 4])
def test_tree_sum_matches_table(n):
    ctr = contraction(n)
    table = transferred_table(n, 4)
    for k in (3, 4):
        trees = enumerate_trees(k)
        for xs in composable_tuples(ctr.c, k):
            total = 0
            for t in trees:
                total ^= evaluate_tree(ctr, t, xs)
            assert total == table.op(k, xs)


def test_m3_values_on_c2(paths):
    c = build_named_algebra("zigzag", 3)
    table = transferred_table(3, 3)
    up, down, c1, c2 = paths(c, (1, 2), (2, 1), ("c", 1), ("c", 2))
    assert table.op(3, (up, down, c1)) == 1 << c1
    assert table.op(3, (up, down, up)) == 1 << up
    assert table.op(3, (c2, down, up)) == 1 << c2
    assert table.op(3, (down, up, down)) == 0
    assert table.op(1, (up,)) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_m3_is_the_three_families(n):
    m3 = transferred_mk(n, 3)
    assert m3 == m3_families(n)
    assert len(m3) == 3 * (n - 2)


def test_m3_tree_contributions(paths):
    c = build_named_algebra("zigzag", 4)
    xs = paths(c, (2, 3), (3, 2), ("c", 2))
    contributions = tree_contributions(4, xs)
    total = 0
    for value in contributions.values():
        total ^= value
    assert total == 1 << paths(c, ("c", 2))


def test_higher_operations_vanish():
    table = transferred_table(4, 6)
    for k in (4, 5, 6):
        assert table.nonzero(k) == {}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_minimal_model(n):
    checks = verify_minimal_model(n, 5)
    assert_all_pass(checks)
    assert any(c.status == "info" and c.name == "m3 families" for c in checks)


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_minimal_model_through_arity_six(n):
    assert_all_pass(verify_minimal_model(n, 6))


def test_m2_is_multiplication():
    table = transferred_table(3, 3)
    c = table.algebra
    for x, y in composable_tuples(c, 2):
        assert table.op(2, (x, y)) == c.product_of_basis(x, y)


def test_removed_m3_entry_is_detected():
    n = 4
    table = transferred_table(n, 4)
    first = min(m3_families(n))
    broken = table.with_value(3, first, 0)
    assert table.op(3, first) != 0
    bad = [c.name for c in failures(verify_minimal_model(n, 4, broken))]
    assert "m3 is supported on exactly the three families" in bad


def test_arity_limits():
    with pytest.raises(ValueError):
        transfer_table(3, 1)
    with pytest.raises(ValueError):
        transfer_table(3, 9)
    with pytest.raises(ValueError):
        verify_minimal_model(3, 2)


def test_table_entries_are_serialisable():
    entries = transferred_table(3, 3).entries()
    m3 = [e.to_dict() for e in entries if e.arity == 3]
    assert len(m3) == 3
    assert {"arity", "inputs", "output"} <= set(m3[0])

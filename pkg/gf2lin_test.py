import pytest
from hypothesis import given, settings, strategies as st

from zigzag.gf2lin import (
    BitMatrix,
    DimensionError,
    Inconsistent,
    bits,
    echelon,
    express,
    extend_basis,
    kernel,
    popcount,
    rank,
    solve,
    unpack,
    vector,
)


@st.composite
def matrices(draw, max_rows=8, max_cols=8):
    ncols = draw(st.integers(1, max_cols))
    nrows = draw(st.integers(1, max_rows))
    rows = draw(st.lists(st.integers(0, (1 << ncols) - 1), min_size=nrows, max_size=nrows))
    return BitMatrix.from_bitrows(rows, ncols)


def test_bits_and_packing():
    assert bits(0b1011) == [0, 1, 3]
    assert bits(0) == []
    assert popcount(0b1011) == 3
    assert vector([1, 0, 1, 1]) == 0b1101
    assert unpack(0b1101, 5) == [1, 0, 1, 1, 0]


def test_bad_shapes_are_rejected():
    with pytest.raises(DimensionError):
        BitMatrix(2, 2, (0b1,))
    with pytest.raises(DimensionError):
        BitMatrix(1, 2, (0b100,))
    with pytest.raises(DimensionError):
        BitMatrix.identity(2) @ BitMatrix.identity(3)
    with pytest.raises(DimensionError):
        BitMatrix.identity(2).apply(0b100)


def test_small_system_by_hand():
    # x0 + x1 = 1, x1 = 1
    m = BitMatrix.from_rows([[1, 1], [0, 1]])
    x = solve(m, 0b11)
    assert x == 0b10
    # x0 = 1 and x0 = 0 cannot both hold
    m = BitMatrix.from_rows([[1], [1]])
    result = solve(m, 0b01)
    assert isinstance(result, Inconsistent)
    assert result.certificate == 0b11


@given(matrices())
def test_rank_nullity(m):
    ker = kernel(m)
    assert rank(m) + len(ker) == m.ncols
    assert all(m.apply(v) == 0 for v in ker)
    assert echelon(ker).rank == len(ker)


@given(matrices(), st.data())
def test_solve_finds_a_preimage(m, data):
    x = data.draw(st.integers(0, (1 << m.ncols) - 1))
    b = m.apply(x)
    found = solve(m, b)
    assert not isinstance(found, Inconsistent)
    assert m.apply(found) == b


@given(matrices(), st.data())
def test_inconsistency_certificate(m, data):
    b = data.draw(st.integers(0, (1 << m.nrows) - 1))
    result = solve(m, b)
    if isinstance(result, Inconsistent):
        y = result.certificate
        combined = 0
        for r in bits(y):
            combined ^= m.data[r]
        assert combined == 0
        assert popcount(y & b) % 2 == 1
    else:
        assert m.apply(result) == b


@settings(max_examples=50, deadline=None)
@given(matrices(max_rows=6, max_cols=6), st.data())
def test_products_compose(a, data):
    inner = data.draw(st.integers(1, 6))
    rows = data.draw(st.lists(st.integers(0, (1 << a.nrows) - 1), min_size=inner, max_size=inner))
    b = BitMatrix.from_bitrows(rows, a.nrows)
    v = data.draw(st.integers(0, (1 << a.ncols) - 1))
    assert (b @ a).apply(v) == b.apply(a.apply(v))
    assert a.transpose().transpose() == a


def test_extend_and_express():
    assert extend_basis([0b011], [0b001, 0b010, 0b100, 0b111]) == [0, 2]
    assert express([0b011, 0b110], 0b101) == 0b11
    assert express([0b011], 0b100) is None


@given(matrices())
def test_row_rank_equals_column_rank(m):
    assert rank(m) == rank(m.transpose())
    assert rank(m) <= min(m.nrows, m.ncols)

"""
Exact linear algebra over GF(2).

Vectors are Python ints used as bitsets (bit c set <=> coordinate c is 1).
Matrices keep one int per row, so row operations are a single XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple


class DimensionError(ValueError):
    """Raised when operands have incompatible shapes."""


def bits(v: int) -> List[int]:
    """Indices of the set bits of v, ascending."""
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def popcount(v: int) -> int:
    return bin(v).count("1")


def vector(entries: Sequence[int]) -> int:
    """Pack a 0/1 sequence into a bitset."""
    v = 0
    for c, e in enumerate(entries):
        if e & 1:
            v |= 1 << c
    return v


def unpack(v: int, length: int) -> List[int]:
    return [(v >> c) & 1 for c in range(length)]


@dataclass(frozen=True)
class BitMatrix:
    nrows: int
    ncols: int
    data: Tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.nrows:
            raise DimensionError(f"expected {self.nrows} rows, got {len(self.data)}")
        limit = 1 << self.ncols
        for r, row in enumerate(self.data):
            if row < 0 or row >= limit:
                raise DimensionError(f"row {r} has bits beyond column {self.ncols}")

    # ==================== Constructors ====================

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "BitMatrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(vector(r) for r in rows))

    @classmethod
    def from_bitrows(cls, rows: Iterable[int], ncols: int) -> "BitMatrix":
        rows = tuple(rows)
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "BitMatrix":
        """Build a matrix whose c-th column is the bitset columns[c]."""
        data = [0] * nrows
        for c, col in enumerate(columns):
            for r in bits(col):
                if r >= nrows:
                    raise DimensionError(f"column {c} has bit {r} beyond {nrows} rows")
                data[r] |= 1 << c
        return cls(nrows, len(columns), tuple(data))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls(size, size, tuple(1 << r for r in range(size)))

    # ==================== Access ====================

    def get(self, r: int, c: int) -> int:
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"entry ({r}, {c}) outside {self.nrows}x{self.ncols}")
        return (self.data[r] >> c) & 1

    def column(self, c: int) -> int:
        return sum(((row >> c) & 1) << r for r, row in enumerate(self.data))

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_columns(self.data, self.ncols)

    def apply(self, v: int) -> int:
        """Matrix-vector product; v is a bitset over columns, result over rows."""
        if v >> self.ncols:
            raise DimensionError("vector longer than column count")
        out = 0
        for r, row in enumerate(self.data):
            if popcount(row & v) & 1:
                out |= 1 << r
        return out

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        rows = []
        for row in self.data:
            acc = 0
            for k in bits(row):
                acc ^= other.data[k]
            rows.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(rows))

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in addition")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def is_zero(self) -> bool:
        return not any(self.data)


# ==================== Elimination ====================

@dataclass
class Echelon:
    """Reduced row echelon form with pivots on the lowest set bit of each row."""
    rows: List[int]
    pivots: List[int]

    def reduce(self, v: int) -> int:
        for row, p in zip(self.rows, self.pivots):
            if (v >> p) & 1:
                v ^= row
        return v

    def insert(self, v: int) -> bool:
        """Add v to the span; returns False if it was already there."""
        v = self.reduce(v)
        if not v:
            return False
        p = (v & -v).bit_length() - 1
        for k, row in enumerate(self.rows):
            if (row >> p) & 1:
                self.rows[k] = row ^ v
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self.rows)


def echelon(vectors: Iterable[int]) -> Echelon:
    ech = Echelon([], [])
    for v in vectors:
        ech.insert(v)
    return ech


def rank(m: BitMatrix) -> int:
    """GF(2) rank."""
    return echelon(m.data).rank


def kernel(m: BitMatrix) -> List[int]:
    """Basis of {v : Mv = 0}, one vector per free column, in column order."""
    ech = echelon(m.data)
    pivot_rows = dict(zip(ech.pivots, ech.rows))
    basis = []
    for free in range(m.ncols):
        if free in pivot_rows:
            continue
        v = 1 << free
        for p, row in pivot_rows.items():
            if (row >> free) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Inconsistent:
    """Certificate that Mx = b has no solution: y with yM = 0 and y.b = 1."""
    certificate: int


def solve(m: BitMatrix, b: int) -> "int | Inconsistent":
    """Some x with Mx = b, or an Inconsistent certificate."""
    if b >> m.nrows:
        raise DimensionError(f"right-hand side longer than {m.nrows} rows")
    # augmented rows: [coefficients | rhs bit | history over original rows]
    rhs_bit = 1 << m.ncols
    hist_shift = m.ncols + 1
    work = [row | (((b >> r) & 1) * rhs_bit) | (1 << (hist_shift + r)) for r, row in enumerate(m.data)]
    coeff_mask = rhs_bit - 1

    pivots: List[Tuple[int, int]] = []
    used = [False] * len(work)
    for r in range(len(work)):
        row = work[r]
        low = row & coeff_mask
        if not low:
            continue
        p = (low & -low).bit_length() - 1
        for k in range(len(work)):
            if k != r and (work[k] >> p) & 1:
                work[k] ^= row
        pivots.append((p, r))
        used[r] = True

    for r, row in enumerate(work):
        if not used[r] and not (row & coeff_mask) and (row & rhs_bit):
            return Inconsistent(row >> hist_shift)

    x = 0
    for p, r in pivots:
        if work[r] & rhs_bit:
            x |= 1 << p
    return x


def extend_basis(span: Iterable[int], candidates: Sequence[int]) -> List[int]:
    """Indices of candidates that are independent modulo span, greedily in order."""
    ech = echelon(span)
    chosen = []
    for k, v in enumerate(candidates):
        if ech.insert(v):
            chosen.append(k)
    return chosen


def express(basis: Sequence[int], v: int) -> Optional[int]:
    """Coordinates of v in terms of an independent list of vectors, or None."""
    m = BitMatrix.from_columns(list(basis), max([x.bit_length() for x in basis] + [v.bit_length(), 0]))
    result = solve(m, v)
    if isinstance(result, Inconsistent):
        return None
    return result


__all__ = [
    "BitMatrix",
    "DimensionError",
    "Echelon",
    "Inconsistent",
    "bits",
    "echelon",
    "express",
    "extend_basis",
    "kernel",
    "popcount",
    "rank",
    "solve",
    "unpack",
    "vector",
]

"""
Quiver path algebras and their graded quotients over GF(2).

Paths are vertex tuples read left to right: (1, 2, 3) is the path 1 -> 2 -> 3
and (i,) is the idempotent at i. Products concatenate, so (1, 2) * (2, 1) is (1, 2, 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from zigzag import config
from zigzag.gf2lin import bits, echelon

PathWord = Tuple[int, ...]
Relation = FrozenSet[PathWord]

NAMED_ALGEBRAS = ("an_shriek", "an", "zigzag")


class AlgebraError(ValueError):
    """Raised for malformed quivers, relations or mixed-algebra arithmetic."""


class NotFiniteError(AlgebraError):
    """Raised when the ideal does not swallow all paths below the length ceiling."""


@dataclass(frozen=True)
class Quiver:
    vertices: int
    arrows: Dict[Tuple[int, int], int]  # (source, target) -> internal degree

    def __post_init__(self):
        for (s, t) in self.arrows:
            if not (1 <= s <= self.vertices and 1 <= t <= self.vertices):
                raise AlgebraError(f"arrow {s}->{t} references a missing vertex")

    @classmethod
    def line(cls, n: int, up_degree: int, down_degree: int) -> "Quiver":
        """The doubled A_n line quiver: arrows i -> i+1 and i+1 -> i."""
        arrows = {}
        for i in range(1, n):
            arrows[(i, i + 1)] = up_degree
            arrows[(i + 1, i)] = down_degree
        return cls(n, arrows)

    def successors(self, v: int) -> List[int]:
        return sorted(t for (s, t) in self.arrows if s == v)

    def is_path(self, word: PathWord) -> bool:
        if not word or not all(1 <= v <= self.vertices for v in word):
            return False
        return all((a, b) in self.arrows for a, b in zip(word, word[1:]))

    def degree(self, word: PathWord) -> int:
        return sum(self.arrows[(a, b)] for a, b in zip(word, word[1:]))


def format_path(word: PathWord) -> str:
    return "(" + "|".join(str(v) for v in word) + ")"


# ==================== Elements ====================

@dataclass(frozen=True)
class AlgebraElement:
    algebra: "QuotientAlgebra" = field(repr=False, compare=False)
    vec: int

    def _check(self, other: "AlgebraElement"):
        if other.algebra is not self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, self.vec ^ other.vec)

    __sub__ = __add__

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.multiply(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and other.algebra is self.algebra and other.vec == self.vec

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.vec))

    def __bool__(self) -> bool:
        return self.vec != 0

    def terms(self) -> List[PathWord]:
        return [self.algebra.basis[k] for k in bits(self.vec)]

    def degree(self) -> Optional[int]:
        """Internal degree when homogeneous, None for zero or mixed elements."""
        degs = {self.algebra.degrees[k] for k in bits(self.vec)}
        return degs.pop() if len(degs) == 1 else None

    def __repr__(self) -> str:
        if not self.vec:
            return "0"
        return " + ".join(format_path(w) for w in self.terms())


# ==================== Quotient algebras ====================

class QuotientAlgebra:
    """
    A finite-dimensional quotient kQ / I with a normal-form path basis.

    Basis elements are paths; every prefix of a basis path is itself a basis path,
    so right multiplication by a single arrow (the `extend` table) determines
    every product.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], name: str = "algebra"):
        self.quiver = quiver
        self.relations = list(relations)
        self.name = name
        self.basis: List[PathWord] = []
        self.index: Dict[PathWord, int] = {}
        self.degrees: List[int] = []
        # (basis index, next vertex) -> bitset over basis
        self.extend: Dict[Tuple[int, int], int] = {}
        self.top_length = 0
        self._products: Dict[Tuple[int, int], int] = {}

    # ---------- construction ----------

    def _add_basis(self, word: PathWord) -> int:
        k = len(self.basis)
        self.basis.append(word)
        self.index[word] = k
        self.degrees.append(self.quiver.degree(word))
        return k

    def _extend_vec(self, vec: int, vertex: int) -> int:
        out = 0
        for k in bits(vec):
            out ^= self.extend.get((k, vertex), 0)
        return out

    def word_vector(self, word: PathWord) -> int:
        """Normal form of an arbitrary path, as a bitset over the basis."""
        if not self.quiver.is_path(word):
            raise AlgebraError(f"{format_path(word)} is not a path in the quiver")
        vec = 1 << self.index[(word[0],)]
        for v in word[1:]:
            vec = self._extend_vec(vec, v)
            if not vec:
                break
        return vec

    @classmethod
    def enumerate_basis(cls, quiver: Quiver, relations: Iterable[Iterable[PathWord]],
                        name: str = "algebra", ceiling: Optional[int] = None) -> "QuotientAlgebra":
        """Build the quotient by saturating the ideal one path length at a time."""
        rels = [frozenset(r) for r in relations]
        for r in rels:
            if not r:
                continue
            words = list(r)
            lengths = {len(w) for w in words}
            ends = {(w[0], w[-1]) for w in words}
            degs = {quiver.degree(w) if quiver.is_path(w) else None for w in words}
            if None in degs:
                raise AlgebraError(f"relation {sorted(words)} contains a non-path")
            if len(lengths) != 1 or len(ends) != 1 or len(degs) != 1:
                raise AlgebraError(f"relation {sorted(words)} is not homogeneous")
        rels = [r for r in rels if r]
        if ceiling is None:
            ceiling = config.length_ceiling(quiver.vertices)

        alg = cls(quiver, rels, name)
        for v in range(1, quiver.vertices + 1):
            alg._add_basis((v,))
        by_length: Dict[int, List[Relation]] = {}
        for r in rels:
            by_length.setdefault(len(next(iter(r))) - 1, []).append(r)

        level = list(range(quiver.vertices))
        length = 0
        while level:
            length += 1
            if length > ceiling:
                raise NotFiniteError(
                    f"{name}: paths of length {length} survive past ceiling {ceiling}"
                )
            level = alg._saturate(level, length, by_length)
        alg.top_length = length - 1
        return alg

    def _saturate(self, previous: List[int], length: int,
                  by_length: Dict[int, List[Relation]]) -> List[int]:
        # candidates: normal paths of length-1 followed by one arrow
        candidates = []
        for k in previous:
            word = self.basis[k]
            for v in self.quiver.successors(word[-1]):
                candidates.append((word + (v,), k, v))
        candidates.sort()
        position = {(k, v): c for c, (_, k, v) in enumerate(candidates)}

        def as_candidates(vec: int, vertex: int) -> int:
            out = 0
            for k in bits(vec):
                c = position.get((k, vertex))
                if c is not None:
                    out |= 1 << c
            return out

        # ideal at this length: the previous ideal times an arrow is already zero,
        # so only p * r with r ending here contributes
        ideal_rows = []
        for rel_len, rels in by_length.items():
            if rel_len > length:
                continue
            for r in rels:
                start = next(iter(r))[0]
                for p in self._basis_of_length(length - rel_len, end=start):
                    row = 0
                    for word in r:
                        vec = 1 << p
                        for v in word[1:-1]:
                            vec = self._extend_vec(vec, v)
                        row ^= as_candidates(vec, word[-1])
                    if row:
                        ideal_rows.append(row)

        ech = echelon(ideal_rows)
        pivot_rows = dict(zip(ech.pivots, ech.rows))
        new_index = {}
        for c, (word, k, v) in enumerate(candidates):
            if c not in pivot_rows:
                new_index[c] = self._add_basis(word)

        for c, (word, k, v) in enumerate(candidates):
            if c in new_index:
                self.extend[(k, v)] = 1 << new_index[c]
            else:
                rest = pivot_rows[c] ^ (1 << c)
                self.extend[(k, v)] = sum(1 << new_index[b] for b in bits(rest))
        return sorted(new_index.values())

    def _basis_of_length(self, length: int, end: Optional[int] = None) -> List[int]:
        return [k for k, w in enumerate(self.basis)
                if len(w) - 1 == length and (end is None or w[-1] == end)]

    # ---------- arithmetic ----------

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def element(self, *words: PathWord) -> AlgebraElement:
        vec = 0
        for w in words:
            vec ^= self.word_vector(tuple(w))
        return AlgebraElement(self, vec)

    def basis_element(self, k: int) -> AlgebraElement:
        return AlgebraElement(self, 1 << k)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, 0)

    def unit(self) -> AlgebraElement:
        return AlgebraElement(self, sum(1 << self.index[(v,)] for v in range(1, self.quiver.vertices + 1)))

    def idempotent(self, v: int) -> AlgebraElement:
        return self.element((v,))

    def source(self, k: int) -> int:
        return self.basis[k][0]

    def target(self, k: int) -> int:
        return self.basis[k][-1]

    def product_of_basis(self, a: int, b: int) -> int:
        key = (a, b)
        if key not in self._products:
            self._products[key] = self._compute_product(a, b)
        return self._products[key]

    def _compute_product(self, a: int, b: int) -> int:
        wa, wb = self.basis[a], self.basis[b]
        if wa[-1] != wb[0]:
            return 0
        vec = 1 << a
        for v in wb[1:]:
            vec = self._extend_vec(vec, v)
            if not vec:
                break
        return vec

    def multiply_vectors(self, x: int, y: int) -> int:
        out = 0
        for a in bits(x):
            for b in bits(y):
                out ^= self.product_of_basis(a, b)
        return out

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraError(f"multiply: operands do not belong to {self.name}")
        return AlgebraElement(self, self.multiply_vectors(x.vec, y.vec))

    def idempotent_block(self, i: int, j: int) -> Dict[int, List[int]]:
        """Basis indices of (i) A (j) grouped by internal degree."""
        n = self.quiver.vertices
        if not (1 <= i <= n and 1 <= j <= n):
            raise AlgebraError(f"block ({i}, {j}) outside vertices 1..{n}")
        out: Dict[int, List[int]] = {}
        for k in self.block_indices(i, j):
            out.setdefault(self.degrees[k], []).append(k)
        return dict(sorted(out.items()))

    def block_indices(self, i: int, j: int) -> List[int]:
        return self._blocks.get((i, j), [])

    @cached_property
    def _blocks(self) -> Dict[Tuple[int, int], List[int]]:
        out: Dict[Tuple[int, int], List[int]] = {}
        for k in range(self.dimension):
            out.setdefault((self.source(k), self.target(k)), []).append(k)
        return out

    def starting_at(self, v: int) -> List[int]:
        return [k for k in range(self.dimension) if self.source(k) == v]

    def ending_at(self, v: int) -> List[int]:
        return [k for k in range(self.dimension) if self.target(k) == v]

    def vertices(self) -> List[int]:
        return sorted({w[0] for w in self.basis})

    def __repr__(self) -> str:
        return f"QuotientAlgebra({self.name}, dim={self.dimension})"


class TruncatedAlgebra(QuotientAlgebra):
    """e A e for e a sum of vertex idempotents; products are computed in A."""

    def __init__(self, parent: QuotientAlgebra, keep: Sequence[int], name: str):
        keep_set = set(keep)
        super().__init__(parent.quiver, parent.relations, name)
        self.parent = parent
        self.kept_vertices = sorted(keep_set)
        self._to_parent: List[int] = []
        for k, word in enumerate(parent.basis):
            if word[0] in keep_set and word[-1] in keep_set:
                self._to_parent.append(k)
                self._add_basis(word)
        self._from_parent = {p: k for k, p in enumerate(self._to_parent)}
        self.top_length = max(len(w) - 1 for w in self.basis)

    def _restrict(self, parent_vec: int) -> int:
        out = 0
        for p in bits(parent_vec):
            out |= 1 << self._from_parent[p]
        return out

    def word_vector(self, word: PathWord) -> int:
        if word[0] not in self.kept_vertices or word[-1] not in self.kept_vertices:
            raise AlgebraError(f"{format_path(word)} does not start and end inside e")
        return self._restrict(self.parent.word_vector(word))

    def _compute_product(self, a: int, b: int) -> int:
        return self._restrict(self.parent.product_of_basis(self._to_parent[a], self._to_parent[b]))

    def unit(self) -> AlgebraElement:
        return AlgebraElement(self, sum(1 << self.index[(v,)] for v in self.kept_vertices))

    def vertices(self) -> List[int]:
        return list(self.kept_vertices)


# ==================== Named algebras ====================

def an_shriek_relations(n: int) -> List[Relation]:
    rels = [frozenset({(i, i - 1, i), (i, i + 1, i)}) for i in range(2, n)]
    if n >= 2:
        rels.append(frozenset({(1, 2, 1)}))
    return rels


def an_relations(n: int) -> List[Relation]:
    rels = []
    for i in range(1, n + 1):
        if i + 2 <= n:
            rels.append(frozenset({(i, i + 1, i + 2)}))
        if i - 2 >= 1:
            rels.append(frozenset({(i, i - 1, i - 2)}))
    rels += [frozenset({(i, i - 1, i), (i, i + 1, i)}) for i in range(2, n)]
    rels.append(frozenset({(n, n - 1, n)}))
    return rels


def build_named_algebra(name: str, n: int) -> QuotientAlgebra:
    """A_n^! (an_shriek), the zigzag-type A_n (an) or C_{n-1} = e A_n e (zigzag)."""
    if name not in NAMED_ALGEBRAS:
        raise AlgebraError(f"unknown algebra {name!r}; expected one of {NAMED_ALGEBRAS}")
    if n < 2:
        raise AlgebraError(f"n must be at least 2, got {n}")
    return _named(name, n)


_CACHE: Dict[Tuple[str, int], QuotientAlgebra] = {}


def _named(name: str, n: int) -> QuotientAlgebra:
    key = (name, n)
    if key in _CACHE:
        return _CACHE[key]
    if name == "an_shriek":
        alg = QuotientAlgebra.enumerate_basis(Quiver.line(n, 1, 0), an_shriek_relations(n), f"A{n}!")
    elif name == "an":
        alg = QuotientAlgebra.enumerate_basis(Quiver.line(n, 0, 1), an_relations(n), f"A{n}")
    else:
        alg = TruncatedAlgebra(_named("an", n), range(1, n), f"C{n - 1}")
    _CACHE[key] = alg
    return alg


def loop(alg: QuotientAlgebra, i: int) -> AlgebraElement:
    """c_i = (i|i+1|i), or (i|i-1|i) at the last vertex of the quiver."""
    if (i, i + 1) in alg.quiver.arrows:
        return alg.element((i, i + 1, i))
    return alg.element((i, i - 1, i))


__all__ = [
    "AlgebraElement",
    "AlgebraError",
    "NAMED_ALGEBRAS",
    "NotFiniteError",
    "PathWord",
    "Quiver",
    "QuotientAlgebra",
    "TruncatedAlgebra",
    "an_relations",
    "an_shriek_relations",
    "build_named_algebra",
    "format_path",
    "loop",
]

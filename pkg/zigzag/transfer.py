"""
Homotopy transfer from S_{n-1} to its homology C_{n-1}.

Given the contraction (p, j, H), the arity-k operation is the sum over planar
rooted binary trees with k leaves: leaves carry j, branch points multiply in
S_{n-1}, internal edges carry H and the root carries p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

from zigzag import config
from zigzag.endo import FiniteDGAlgebra, build_s
from zigzag.gf2lin import bits
from zigzag.quiver import QuotientAlgebra, build_named_algebra, loop
from zigzag.schema import Check, TableEntry, check, info

Tree = Union[int, Tuple["Tree", "Tree"]]
LEAF: Tree = 0
Operation = Callable[[int, Tuple[int, ...]], int]


# ==================== Contraction ====================

@dataclass
class Contraction:
    """p : S -> C, j : C -> S, H : S -> S as lists of bitset images."""
    s: FiniteDGAlgebra
    c: QuotientAlgebra
    p: List[int]
    j: List[int]
    h: List[int]

    def apply_p(self, v: int) -> int:
        return _apply(self.p, v)

    def apply_j(self, v: int) -> int:
        return _apply(self.j, v)

    def apply_h(self, v: int) -> int:
        return _apply(self.h, v)


def _apply(images: List[int], v: int) -> int:
    out = 0
    for k in bits(v):
        out ^= images[k]
    return out


def _loop_vertex(word) -> Optional[int]:
    if len(word) == 3 and word[0] == word[2]:
        return word[0]
    return None


def build_contraction(n: int) -> Contraction:
    s = build_s(n)
    c = build_named_algebra("zigzag", n)
    p = [0] * s.dimension
    h = [0] * s.dimension
    for k, name in enumerate(s.names):
        if name.startswith("1_"):
            p[k] = c.element((int(name[2:]),)).vec
        elif name.startswith("loop_up_") or name.startswith("loop_down_"):
            p[k] = loop(c, int(name.rsplit("_", 1)[1])).vec
        elif name.startswith("alpha_") and " " not in name:
            a, b = (int(x) for x in name[len("alpha_"):].split(","))
            p[k] = c.element((a, b)).vec
        if name.startswith("loop_down_"):
            h[k] = s.vec(f"h_{name.rsplit('_', 1)[1]}")
        elif " loop_up_" in name:
            h[k] = s.vec(name.replace("loop_up_", "h_"))
    j = []
    for word in c.basis:
        if len(word) == 1:
            j.append(s.vec(f"1_{word[0]}"))
        elif len(word) == 2:
            j.append(s.vec(f"alpha_{word[0]},{word[1]}"))
        elif _loop_vertex(word) is not None:
            j.append(s.vec(f"loop_up_{word[0]}"))
        else:
            raise ValueError(f"unexpected basis path {word} in {c.name}")
    return Contraction(s, c, p, j, h)


_CONTRACTIONS: Dict[int, Contraction] = {}


def contraction(n: int) -> Contraction:
    if n not in _CONTRACTIONS:
        _CONTRACTIONS[n] = build_contraction(n)
    return _CONTRACTIONS[n]


def verify_contraction(n: int) -> List[Check]:
    ctr = contraction(n)
    s, c = ctr.s, ctr.c
    out = []
    bad_pj = [list(c.basis[x]) for x in range(c.dimension) if ctr.apply_p(ctr.j[x]) != 1 << x]
    out.append(check("p j = id", not bad_pj, bad_pj))
    bad_j = [list(c.basis[x]) for x in range(c.dimension) if s.d(ctr.j[x])]
    out.append(check("j is a chain map", not bad_j, bad_j))
    bad_p = [s.names[x] for x in range(s.dimension) if ctr.apply_p(s.differential[x])]
    out.append(check("p is a chain map", not bad_p, bad_p))
    bad_h = []
    for x in range(s.dimension):
        lhs = s.d(ctr.h[x]) ^ ctr.apply_h(s.differential[x])
        rhs = (1 << x) ^ ctr.apply_j(ctr.p[x])
        if lhs != rhs:
            bad_h.append(s.names[x])
    out.append(check("dH + Hd = id + jp", not bad_h, bad_h))
    bad_deg = [s.names[x] for x in range(s.dimension)
               if any(s.degrees[y] != s.degrees[x] - 1 for y in bits(ctr.h[x]))]
    out.append(check("H has degree -1", not bad_deg, bad_deg))
    out.append(info("side condition H^2 = 0",
                    {"holds": all(ctr.apply_h(ctr.h[x]) == 0 for x in range(s.dimension))}))
    out.append(info("side condition H j = 0",
                    {"holds": all(ctr.apply_h(ctr.j[x]) == 0 for x in range(c.dimension))}))
    out.append(info("side condition p H = 0",
                    {"holds": all(ctr.apply_p(ctr.h[x]) == 0 for x in range(s.dimension))}))
    out.append(info("H on h_i is read as zero", {"holds": all(
        ctr.h[k] == 0 for k, name in enumerate(s.names) if name.startswith("h_"))}))
    return out


# ==================== Trees ====================

@lru_cache(maxsize=None)
def _trees(k: int) -> Tuple[Tree, ...]:
    if k == 1:
        return (LEAF,)
    out = []
    for split in range(1, k):
        for left in _trees(split):
            for right in _trees(k - split):
                out.append((left, right))
    return tuple(out)


def enumerate_trees(k: int) -> List[Tree]:
    """Planar rooted binary trees with k leaves, left subtrees growing first."""
    if k < 2:
        raise ValueError(f"trees need at least two leaves, got {k}")
    return list(_trees(k))


def leaves(tree: Tree) -> int:
    return 1 if tree == LEAF else leaves(tree[0]) + leaves(tree[1])


def format_tree(tree: Tree) -> str:
    return "x" if tree == LEAF else f"({format_tree(tree[0])},{format_tree(tree[1])})"


def evaluate_tree(ctr: Contraction, tree: Tree, inputs: Tuple[int, ...]) -> int:
    """p(mu(...)) for one tree; inputs are basis indices of C."""

    def inner(t: Tree, xs: Tuple[int, ...]) -> int:
        if t == LEAF:
            return ctr.j[xs[0]]
        cut = leaves(t[0])
        return ctr.apply_h(ctr.s.multiply(inner(t[0], xs[:cut]), inner(t[1], xs[cut:])))

    if tree == LEAF:
        raise ValueError("the root of a transfer tree is a branch point")
    cut = leaves(tree[0])
    return ctr.apply_p(ctr.s.multiply(inner(tree[0], inputs[:cut]), inner(tree[1], inputs[cut:])))


# ==================== A-infinity tables ====================

@dataclass
class AInfinityTable:
    algebra: QuotientAlgebra
    layers: Dict[int, Dict[Tuple[int, ...], int]] = field(default_factory=dict)

    @property
    def max_arity(self) -> int:
        return max(self.layers, default=1)

    def op(self, k: int, inputs: Tuple[int, ...]) -> int:
        if k == 1:
            return 0
        return self.layers.get(k, {}).get(inputs, 0)

    def nonzero(self, k: int) -> Dict[Tuple[int, ...], int]:
        return dict(self.layers.get(k, {}))

    def with_value(self, k: int, inputs: Tuple[int, ...], value: int) -> "AInfinityTable":
        layers = {a: dict(layer) for a, layer in self.layers.items()}
        layer = layers.setdefault(k, {})
        if value:
            layer[inputs] = value
        else:
            layer.pop(inputs, None)
        return AInfinityTable(self.algebra, layers)

    def entries(self) -> List[TableEntry]:
        alg = self.algebra
        out = []
        for k in sorted(self.layers):
            for inputs, value in sorted(self.layers[k].items()):
                out.append(TableEntry(
                    arity=k,
                    inputs=[list(alg.basis[x]) for x in inputs],
                    output=[list(alg.basis[y]) for y in bits(value)] if value else 0,
                ))
        return out


def composable_tuples(alg: QuotientAlgebra, k: int) -> Iterator[Tuple[int, ...]]:
    """Basis k-tuples whose consecutive targets and sources agree."""
    by_source: Dict[int, List[int]] = {}
    for x in range(alg.dimension):
        by_source.setdefault(alg.source(x), []).append(x)

    def grow(prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == k:
            yield prefix
            return
        for y in by_source.get(alg.target(prefix[-1]), []):
            yield from grow(prefix + (y,))

    for x in range(alg.dimension):
        yield from grow((x,))


def transfer_table(n: int, max_arity: int) -> AInfinityTable:
    """m_2, ..., m_K on every composable tuple, summed over all trees."""
    if not 2 <= max_arity <= config.ARITY_CAP:
        raise ValueError(f"max arity must lie in 2..{config.ARITY_CAP}, got {max_arity}")
    ctr = contraction(n)
    s = ctr.s
    memo: Dict[Tuple[int, ...], int] = {}

    def branch(xs: Tuple[int, ...]) -> int:
        # sum over trees of the value just below the root
        if xs in memo:
            return memo[xs]
        total = 0
        for cut in range(1, len(xs)):
            left = ctr.j[xs[0]] if cut == 1 else ctr.apply_h(branch(xs[:cut]))
            if not left:
                continue
            right = ctr.j[xs[cut]] if cut == len(xs) - 1 else ctr.apply_h(branch(xs[cut:]))
            if right:
                total ^= s.multiply(left, right)
        memo[xs] = total
        return total

    table = AInfinityTable(ctr.c)
    for k in range(2, max_arity + 1):
        layer = {}
        for xs in composable_tuples(ctr.c, k):
            value = ctr.apply_p(branch(xs))
            if value:
                layer[xs] = value
        table.layers[k] = layer
    return table


_TABLES: Dict[Tuple[int, int], AInfinityTable] = {}


def transferred_table(n: int, max_arity: int = config.MAX_ARITY) -> AInfinityTable:
    key = (n, max_arity)
    if key not in _TABLES:
        _TABLES[key] = transfer_table(n, max_arity)
    return _TABLES[key]


def transferred_mk(n: int, k: int) -> Dict[Tuple[int, ...], int]:
    return transferred_table(n, max(k, 2)).nonzero(k)


def tree_contributions(n: int, inputs: Tuple[int, ...]) -> Dict[str, int]:
    """Nonzero per-tree values of the transfer on one tuple."""
    ctr = contraction(n)
    out = {}
    for tree in enumerate_trees(len(inputs)):
        value = evaluate_tree(ctr, tree, inputs)
        if value:
            out[format_tree(tree)] = value
    return out


# ==================== Verification ====================

def m3_families(n: int) -> Dict[Tuple[int, ...], int]:
    """The three families of nonzero m_3 values on C_{n-1}."""
    c = build_named_algebra("zigzag", n)
    arrow = lambda a, b: c.index[(a, b)]
    cyc = lambda i: loop(c, i).vec.bit_length() - 1
    out: Dict[Tuple[int, ...], int] = {}
    for i in range(1, n - 1):
        out[(arrow(i, i + 1), arrow(i + 1, i), cyc(i))] = 1 << cyc(i)
    for i in range(2, n):
        out[(arrow(i - 1, i), arrow(i, i - 1), arrow(i - 1, i))] = 1 << arrow(i - 1, i)
        out[(cyc(i), arrow(i, i - 1), arrow(i - 1, i))] = 1 << cyc(i)
    return out


def stasheff_defect(op: Operation, xs: Tuple[int, ...]) -> int:
    """sum of m_u(1^r, m_s, 1^t) over GF(2), with m_1 = 0."""
    size = len(xs)
    out = 0
    for s in range(2, size):
        for r in range(0, size - s + 1):
            inner = op(s, xs[r:r + s])
            for c in bits(inner):
                out ^= op(size - s + 1, xs[:r] + (c,) + xs[r + s:])
    return out


def a_infinity_relation_check(table: AInfinityTable, max_arity: int) -> List[Check]:
    alg = table.algebra
    out = []
    for size in range(3, max_arity + 1):
        bad = None
        for xs in composable_tuples(alg, size):
            if stasheff_defect(table.op, xs):
                bad = [list(alg.basis[x]) for x in xs]
                break
        out.append(check(f"A-infinity relation in arity {size}", bad is None, bad))
    return out


def verify_minimal_model(n: int, max_arity: int = config.MAX_ARITY,
                         table: Optional[AInfinityTable] = None) -> List[Check]:
    if max_arity < 3:
        raise ValueError(f"max arity must be at least 3, got {max_arity}")
    table = table or transferred_table(n, max_arity)
    c = table.algebra
    out = []
    bad_m2 = [[list(c.basis[x]), list(c.basis[y])] for x, y in composable_tuples(c, 2)
              if table.op(2, (x, y)) != c.product_of_basis(x, y)]
    out.append(check("m2 is the multiplication of C", not bad_m2, bad_m2[:5]))

    expected = m3_families(n)
    actual = table.nonzero(3)
    extra = [[list(c.basis[x]) for x in xs] for xs in actual if xs not in expected]
    wrong = [[list(c.basis[x]) for x in xs] for xs, v in expected.items() if actual.get(xs) != v]
    out.append(check("m3 is supported on exactly the three families", not extra and not wrong,
                     {"unexpected": extra, "missing_or_wrong": wrong}))
    out.append(info("m3 families", [
        {"inputs": [list(c.basis[x]) for x in xs], "output": [list(c.basis[y]) for y in bits(v)]}
        for xs, v in sorted(actual.items())]))
    out.append(check(f"nonzero m3 count is 3(n-2) = {3 * (n - 2)}", len(actual) == 3 * (n - 2), len(actual)))
    bad_deg = [[list(c.basis[x]) for x in xs] for xs, v in actual.items()
               if any(c.degrees[y] != sum(c.degrees[x] for x in xs) - 1 for y in bits(v))]
    out.append(check("m3 has degree -1", not bad_deg, bad_deg))
    for k in range(4, max_arity + 1):
        layer = table.nonzero(k)
        out.append(check(f"m{k} vanishes", not layer,
                         [[list(c.basis[x]) for x in xs] for xs in list(layer)[:5]]))
    out += a_infinity_relation_check(table, max_arity)
    return out


__all__ = [
    "AInfinityTable",
    "Contraction",
    "LEAF",
    "a_infinity_relation_check",
    "build_contraction",
    "composable_tuples",
    "contraction",
    "enumerate_trees",
    "evaluate_tree",
    "format_tree",
    "m3_families",
    "stasheff_defect",
    "transfer_table",
    "transferred_mk",
    "transferred_table",
    "tree_contributions",
    "verify_contraction",
    "verify_minimal_model",
]

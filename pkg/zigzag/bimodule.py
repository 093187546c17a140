"""
A-infinity bimodules over C = C_{n-1} and the map f : B_k -> C.

Operations are indexed by how many algebra inputs sit on each side of the
module input: b_{r,s} : C^r (x) M (x) C^s -> M has degree 1 - r - s and is the
operation usually written m_{r+1,s+1}.  Tuples live in one index space: algebra
basis indices first, then module basis indices shifted by dim C, so the
algebra Stasheff check runs unchanged on bimodule tuples.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from zigzag import config
from zigzag.gf2lin import bits
from zigzag.quiver import AlgebraError, QuotientAlgebra, format_path
from zigzag.schema import Check, check, info
from zigzag.transfer import AInfinityTable, stasheff_defect, transferred_table

Action = Callable[[Tuple[int, ...], int, Tuple[int, ...]], int]


class AInfBimodule(ABC):
    """Module basis with block data, and the operations b_{r,s} as a bitset-valued action."""

    def __init__(self, name: str, table: AInfinityTable, labels: List[Any],
                 degrees: List[int], sources: List[int], targets: List[int]):
        self.name = name
        self.table = table
        self.algebra: QuotientAlgebra = table.algebra
        self.labels = labels
        self.degrees = degrees
        self.sources = sources
        self.targets = targets

    @property
    def offset(self) -> int:
        return self.algebra.dimension

    @property
    def dimension(self) -> int:
        return len(self.labels)

    @abstractmethod
    def act(self, left: Tuple[int, ...], m: int, right: Tuple[int, ...]) -> int:
        """b_{r,s} on basis inputs with at least one algebra input, as a module bitset."""

    def b(self, left: Tuple[int, ...], m: int, right: Tuple[int, ...]) -> int:
        if not left and not right:
            return 0
        return self.act(left, m, right)

    def op(self, k: int, xs: Tuple[int, ...]) -> int:
        """Combined operation: m_k on pure algebra tuples, b_{r,s} on tuples with one module input."""
        mods = [p for p, x in enumerate(xs) if x >= self.offset]
        if not mods:
            return self.table.op(k, xs)
        if len(mods) > 1:
            return 0
        p = mods[0]
        return self.b(xs[:p], xs[p] - self.offset, xs[p + 1:]) << self.offset

    def source(self, x: int) -> int:
        if x >= self.offset:
            return self.sources[x - self.offset]
        return self.algebra.source(x)

    def target(self, x: int) -> int:
        if x >= self.offset:
            return self.targets[x - self.offset]
        return self.algebra.target(x)

    def degree(self, x: int) -> int:
        if x >= self.offset:
            return self.degrees[x - self.offset]
        return self.algebra.degrees[x]

    def format(self, x: int) -> str:
        if x >= self.offset:
            return str(self.labels[x - self.offset])
        return format_path(self.algebra.basis[x])

    def tuples(self, total: int) -> Iterator[Tuple[int, ...]]:
        """Composable tuples of the given length with exactly one module input."""
        alg = self.algebra
        by_source: Dict[int, List[int]] = {}
        for x in range(alg.dimension):
            by_source.setdefault(alg.source(x), []).append(x)
        mods_by_source: Dict[int, List[int]] = {}
        for mi, s in enumerate(self.sources):
            mods_by_source.setdefault(s, []).append(mi + self.offset)

        def grow(prefix: Tuple[int, ...], used: bool) -> Iterator[Tuple[int, ...]]:
            if len(prefix) == total:
                if used:
                    yield prefix
                return
            v = self.target(prefix[-1])
            for y in by_source.get(v, []):
                yield from grow(prefix + (y,), used)
            if not used:
                for y in mods_by_source.get(v, []):
                    yield from grow(prefix + (y,), True)

        for x in range(alg.dimension):
            yield from grow((x,), False)
        for mi in range(self.dimension):
            yield from grow((mi + self.offset,), True)


class TensorBimodule(AInfBimodule):
    """B_k = C(k) (x) (k)C with b_{r,0} = m_{r+1} (x) Id, b_{0,s} = Id (x) m_{s+1} and b_{r,s} = 0 otherwise."""

    def __init__(self, table: AInfinityTable, k: int):
        alg = table.algebra
        self.k = k
        self.pairs = [(beta, gamma) for beta in alg.ending_at(k) for gamma in alg.starting_at(k)]
        self.pair_index = {pair: c for c, pair in enumerate(self.pairs)}
        super().__init__(
            f"B{k}", table,
            labels=[f"{format_path(alg.basis[b])}x{format_path(alg.basis[g])}" for b, g in self.pairs],
            degrees=[alg.degrees[b] + alg.degrees[g] for b, g in self.pairs],
            sources=[alg.source(b) for b, _ in self.pairs],
            targets=[alg.target(g) for _, g in self.pairs],
        )

    def act(self, left, m, right):
        if left and right:
            return 0
        beta, gamma = self.pairs[m]
        out = 0
        if left:
            for y in bits(self.table.op(len(left) + 1, left + (beta,))):
                out ^= 1 << self.pair_index[(y, gamma)]
        else:
            for y in bits(self.table.op(len(right) + 1, (gamma,) + right)):
                out ^= 1 << self.pair_index[(beta, y)]
        return out


class DiagonalBimodule(AInfBimodule):
    """C over itself with b_{r,s} = m_{r+s+1}."""

    def __init__(self, table: AInfinityTable):
        alg = table.algebra
        super().__init__(
            "C", table,
            labels=[format_path(w) for w in alg.basis],
            degrees=list(alg.degrees),
            sources=[alg.source(x) for x in range(alg.dimension)],
            targets=[alg.target(x) for x in range(alg.dimension)],
        )

    def act(self, left, m, right):
        return self.table.op(len(left) + len(right) + 1, left + (m,) + right)


def _table(n: int, max_arity: int) -> AInfinityTable:
    return transferred_table(n, max(max_arity, 3))


def build_Bk(n: int, k: int, max_arity: int = config.MAX_ARITY) -> TensorBimodule:
    if not 1 <= k <= n - 1:
        raise AlgebraError(f"B_k needs 1 <= k <= {n - 1}, got {k}")
    return TensorBimodule(_table(n, max_arity), k)


def build_diagonal_bimodule(n: int, max_arity: int = config.MAX_ARITY) -> DiagonalBimodule:
    return DiagonalBimodule(_table(n, max_arity))


# ==================== Bimodule maps ====================

class AInfBimoduleMap:
    """
    f : M -> N given by components f_{r,s} : C^r (x) M (x) C^s -> N of degree -r - s.

    The map out of B_k has f_{0,0}(b (x) g) = bg, f_{1,0}(a, b (x) g) = m_3(a, b, g),
    f_{0,1}(b (x) g, c) = m_3(b, g, c) and nothing else.
    """

    def __init__(self, source: AInfBimodule, target: AInfBimodule, component: Action, name: str = "f"):
        if source.algebra is not target.algebra:
            raise AlgebraError("bimodule map needs a common algebra")
        self.source = source
        self.target = target
        self.component = component
        self.name = name

    def op(self, xs: Tuple[int, ...]) -> int:
        """f on a source tuple with one module input, as a bitset in the target's combined space."""
        off = self.source.offset
        mods = [p for p, x in enumerate(xs) if x >= off]
        if len(mods) != 1:
            return 0
        p = mods[0]
        return self.component(xs[:p], xs[p] - off, xs[p + 1:]) << self.target.offset


def build_f(n: int, k: int, max_arity: int = config.MAX_ARITY, multiplication: bool = True,
            drop: Iterable[Tuple[int, int]] = ()) -> AInfBimoduleMap:
    """
    The map B_k -> C.  With multiplication=False the linear part is dropped,
    leaving only the two m_3 components; `drop` zeroes it on single pairs.
    """
    source = build_Bk(n, k, max_arity)
    target = build_diagonal_bimodule(n, max_arity)
    table, alg = source.table, source.algebra
    dropped = set(drop)

    def component(left, m, right):
        beta, gamma = source.pairs[m]
        if not left and not right:
            if not multiplication or (beta, gamma) in dropped:
                return 0
            return alg.product_of_basis(beta, gamma)
        if len(left) == 1 and not right:
            return table.op(3, left + (beta, gamma))
        if len(right) == 1 and not left:
            return table.op(3, (beta, gamma) + right)
        return 0

    return AInfBimoduleMap(source, target, component, name=f"f{k}" if multiplication else f"f{k} without f11")


# ==================== Relations ====================

def bimodule_defect(module: AInfBimodule, xs: Tuple[int, ...]) -> int:
    return stasheff_defect(module.op, xs)


def morphism_defect(f: AInfBimoduleMap, xs: Tuple[int, ...]) -> int:
    """sum f(.., b(..), ..) + sum b(.., f(..), ..) over every placement, in characteristic 2."""
    size = len(xs)
    out = 0
    for s in range(2, size + 1):
        for r in range(0, size - s + 1):
            for c in bits(f.source.op(s, xs[r:r + s])):
                out ^= f.op(xs[:r] + (c,) + xs[r + s:])
    pos = next(p for p, x in enumerate(xs) if x >= f.source.offset)
    for lo in range(0, pos + 1):
        for hi in range(pos + 1, size + 1):
            if lo == 0 and hi == size:
                continue
            for c in bits(f.op(xs[lo:hi])):
                out ^= f.target.op(size - (hi - lo) + 1, xs[:lo] + (c,) + xs[hi:])
    return out


def bimodule_relation_check(module: AInfBimodule, max_total: int = config.MAX_ARITY) -> List[Check]:
    out = []
    for total in range(3, max_total + 1):
        bad = None
        for xs in module.tuples(total):
            if bimodule_defect(module, xs):
                bad = [module.format(x) for x in xs]
                break
        out.append(check(f"{module.name} bimodule relations, total arity {total}", bad is None, bad))
    return out


def morphism_relation_check(f: AInfBimoduleMap, max_total: int = config.MAX_ARITY) -> List[Check]:
    out = []
    for total in range(2, max_total + 1):
        bad = None
        for xs in f.source.tuples(total):
            if morphism_defect(f, xs):
                bad = [f.source.format(x) for x in xs]
                break
        out.append(check(f"{f.name} morphism relations, total arity {total}", bad is None, bad))
    return out


def degree_audit(module: AInfBimodule, max_total: int = config.MAX_ARITY) -> Check:
    bad: Optional[List[str]] = None
    for total in range(2, max_total + 1):
        for xs in module.tuples(total):
            want = sum(module.degree(x) for x in xs) + 2 - total
            value = module.op(total, xs)
            if any(module.degree(y) != want for y in bits(value)):
                bad = [module.format(x) for x in xs]
                break
        if bad:
            break
    return check(f"{module.name} operations have degree 2 - total arity", bad is None, bad)


def verify_bimodules(n: int, max_total: int = config.MAX_ARITY, multiplication: bool = True) -> List[Check]:
    out = []
    diagonal = build_diagonal_bimodule(n, max_total)
    out += bimodule_relation_check(diagonal, max_total)
    out.append(degree_audit(diagonal, max_total))
    for k in range(1, n):
        bk = build_Bk(n, k, max_total)
        out += bimodule_relation_check(bk, max_total)
        out.append(degree_audit(bk, max_total))
        out += morphism_relation_check(build_f(n, k, max_total, multiplication), max_total)
    if n >= 3 and multiplication:
        literal = build_f(n, 1, max_total, multiplication=False)
        failures = [c.name for c in morphism_relation_check(literal, min(max_total, 4)) if c.failed]
        out.append(info("f with zero linear part", {"morphism": not failures, "failing": failures}))
    return out


__all__ = [
    "AInfBimodule",
    "AInfBimoduleMap",
    "DiagonalBimodule",
    "TensorBimodule",
    "bimodule_defect",
    "bimodule_relation_check",
    "build_Bk",
    "build_diagonal_bimodule",
    "build_f",
    "degree_audit",
    "morphism_defect",
    "morphism_relation_check",
    "verify_bimodules",
]

"""
DG structure: derivations on quotient algebras, cell modules (one-sided twisted
complexes of projectives), finite complexes and their homology.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Hashable, List, Literal, Optional, Sequence, Tuple

from zigzag.gf2lin import BitMatrix, bits, echelon, kernel
from zigzag.quiver import AlgebraElement, AlgebraError, QuotientAlgebra, build_named_algebra, format_path
from zigzag.schema import Check, check

Side = Literal["left", "right"]


class DerivationError(AlgebraError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ComplexError(ValueError):
    """Raised when a differential does not square to zero."""


# ==================== Derivations ====================

class Derivation:
    """Leibniz extension of values on arrows, tabulated on the normal-form basis."""

    def __init__(self, algebra: QuotientAlgebra, values: Dict[Tuple[int, int], AlgebraElement]):
        self.algebra = algebra
        self.values = {a: values.get(a, algebra.zero()) for a in algebra.quiver.arrows}
        self.table: List[int] = [self._leibniz(w) for w in algebra.basis]

    def _leibniz(self, word) -> int:
        alg = self.algebra
        out = 0
        for k in range(len(word) - 1):
            value = self.values[(word[k], word[k + 1])].vec
            if not value:
                continue
            prefix = alg.word_vector(word[:k + 1])
            suffix = alg.word_vector(word[k + 1:])
            out ^= alg.multiply_vectors(alg.multiply_vectors(prefix, value), suffix)
        return out

    def apply_vec(self, vec: int) -> int:
        out = 0
        for k in bits(vec):
            out ^= self.table[k]
        return out

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.apply_vec(x.vec))

    def is_zero(self) -> bool:
        return not any(self.table)

    def failures(self) -> List[Check]:
        """Degree, well-definedness and d^2 = 0, each with a witness on failure."""
        alg = self.algebra
        out = []
        for (s, t), value in self.values.items():
            expected = alg.quiver.arrows[(s, t)] + 1
            bad = [alg.basis[k] for k in bits(value.vec)
                   if alg.degrees[k] != expected or alg.source(k) != s or alg.target(k) != t]
            if bad:
                out.append(check(f"degree of d{format_path((s, t))}", False, [list(w) for w in bad]))
        for rel in alg.relations:
            image = 0
            for word in rel:
                image ^= self._leibniz(word)
            if image:
                out.append(check("d preserves the relation ideal", False,
                                 {"relation": sorted(list(w) for w in rel),
                                  "image": [list(alg.basis[k]) for k in bits(image)]}))
        for k, dk in enumerate(self.table):
            if self.apply_vec(dk):
                out.append(check("d^2 = 0", False, list(alg.basis[k])))
        return out


def make_derivation(algebra: QuotientAlgebra, values: Dict[Tuple[int, int], AlgebraElement]) -> Derivation:
    for arrow in values:
        if arrow not in algebra.quiver.arrows:
            raise DerivationError(f"{format_path(arrow)} is not an arrow", list(arrow))
    d = Derivation(algebra, values)
    problems = d.failures()
    if problems:
        raise DerivationError(f"{problems[0].name} fails", problems[0].witness)
    return d


_DG_CACHE: Dict[int, Tuple[QuotientAlgebra, Derivation]] = {}


def dg_an_shriek(n: int) -> Tuple[QuotientAlgebra, Derivation]:
    """A_n^! with d(i|i+1) = (i|i+1|i|i+1) and d(i+1|i) = 0."""
    if n not in _DG_CACHE:
        alg = build_named_algebra("an_shriek", n)
        values = {(i, i + 1): alg.element((i, i + 1, i, i + 1)) for i in range(1, n)}
        _DG_CACHE[n] = (alg, make_derivation(alg, values))
    return _DG_CACHE[n]


# ==================== Finite complexes ====================

@dataclass
class Homology:
    dims: Dict[int, int]
    representatives: Dict[int, List[int]]
    boundaries: Dict[int, object] = field(repr=False, default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.dims.values())


@dataclass
class FiniteComplex:
    labels: List[Hashable]
    degrees: List[int]
    differential: List[int]  # column k is d(basis k)

    def __post_init__(self):
        self.index = {lab: k for k, lab in enumerate(self.labels)}

    def apply(self, vec: int) -> int:
        out = 0
        for k in bits(vec):
            out ^= self.differential[k]
        return out

    def degree_indices(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for k, t in enumerate(self.degrees):
            out.setdefault(t, []).append(k)
        return dict(sorted(out.items()))

    def square_defects(self) -> List[int]:
        return [k for k, col in enumerate(self.differential) if self.apply(col)]

    def homology(self, preferred: Sequence[int] = ()) -> Homology:
        """Per-degree homology; preferred cycles are used as representatives first."""
        defects = self.square_defects()
        if defects:
            raise ComplexError(f"d^2 != 0 on {self.labels[defects[0]]}")
        groups = self.degree_indices()
        dims, reps, bounds = {}, {}, {}
        for t, idx in groups.items():
            local = {g: c for c, g in enumerate(idx)}
            above = groups.get(t + 1, [])
            above_local = {g: r for r, g in enumerate(above)}
            cols = [_relabel(self.differential[g], above_local) for g in idx]
            cycles = [_lift(v, idx) for v in kernel(BitMatrix.from_columns(cols, len(above)))]
            below = groups.get(t - 1, [])
            images = [self.differential[g] for g in below]
            ech = echelon(images)
            bounds[t] = ech
            chosen = []
            pool = [v for v in preferred if v and _inside(v, local) and not self.apply(v)] + cycles
            for v in pool:
                if ech.insert(v):
                    chosen.append(v)
            if chosen:
                dims[t] = len(chosen)
                reps[t] = chosen
        return Homology(dims, reps, bounds)

    def is_boundary(self, vec: int) -> bool:
        if not vec:
            return True
        degs = {self.degrees[k] for k in bits(vec)}
        if len(degs) != 1:
            return False
        below = self.degree_indices().get(degs.pop() - 1, [])
        return echelon(self.differential[g] for g in below).contains(vec)


def _relabel(vec: int, local: Dict[int, int]) -> int:
    out = 0
    for g in bits(vec):
        out |= 1 << local[g]
    return out


def _lift(vec: int, idx: List[int]) -> int:
    out = 0
    for c in bits(vec):
        out |= 1 << idx[c]
    return out


def _inside(vec: int, local: Dict[int, int]) -> bool:
    return all(g in local for g in bits(vec))


def homology(x: FiniteComplex, preferred: Sequence[int] = ()) -> Homology:
    return x.homology(preferred)


# ==================== Cell modules ====================

@dataclass(frozen=True)
class Generator:
    projective: int
    shift: int
    name: str = ""


@dataclass
class CellModule:
    """
    Generators g_k = P_{p_k}[s_k] and arrow labels x_kl.

    Left: x_kl lies in (p_k) A (p_l) and d(b g_k) = d(b) g_k + sum_l (b x_kl) g_l.
    Right: x_kl lies in (p_l) A (p_k) and d(g_k b) = g_k d(b) + sum_l g_l (x_kl b).
    """
    algebra: QuotientAlgebra
    derivation: Derivation
    side: Side
    generators: List[Generator]
    arrows: Dict[Tuple[int, int], AlgebraElement]
    name: str = ""

    def then(self, first: AlgebraElement, second: AlgebraElement) -> AlgebraElement:
        """Label of following `first` by `second` along two arrows."""
        return first * second if self.side == "left" else second * first

    def label(self, k: int, l: int) -> AlgebraElement:
        return self.arrows.get((k, l), self.algebra.zero())

    def label_block(self, k: int, l: int) -> Tuple[int, int]:
        pk, pl = self.generators[k].projective, self.generators[l].projective
        return (pk, pl) if self.side == "left" else (pl, pk)

    def filtration_order(self) -> List[int]:
        """A topological order of the generators along arrows; raises on a cycle."""
        incoming = {k: 0 for k in range(len(self.generators))}
        for (k, l), x in self.arrows.items():
            if x:
                incoming[l] += 1
        ready = sorted(k for k, c in incoming.items() if c == 0)
        order = []
        while ready:
            k = ready.pop(0)
            order.append(k)
            for (a, l), x in sorted(self.arrows.items()):
                if a == k and x:
                    incoming[l] -= 1
                    if incoming[l] == 0:
                        ready.append(l)
        if len(order) != len(self.generators):
            raise ComplexError(f"{self.name}: arrows do not respect a filtration")
        return order

    def shifted(self, by: int) -> "CellModule":
        gens = [replace(g, shift=g.shift + by) for g in self.generators]
        return replace(self, generators=gens, name=f"{self.name}[{by}]")

    def fiber(self, k: int) -> List[int]:
        """Algebra basis indices b with b g_k (left) or g_k b (right) in the module."""
        p = self.generators[k].projective
        return self.algebra.ending_at(p) if self.side == "left" else self.algebra.starting_at(p)

    def expand(self) -> FiniteComplex:
        alg, d = self.algebra, self.derivation
        labels, degrees = [], []
        for k, g in enumerate(self.generators):
            for b in self.fiber(k):
                labels.append((k, b))
                degrees.append(alg.degrees[b] - g.shift)
        index = {lab: c for c, lab in enumerate(labels)}

        def embed(k: int, vec: int) -> int:
            return sum(1 << index[(k, b)] for b in bits(vec))

        differential = []
        for (k, b) in labels:
            col = embed(k, d.table[b])
            for (a, l), x in self.arrows.items():
                if a != k or not x:
                    continue
                if self.side == "left":
                    col ^= embed(l, alg.multiply_vectors(1 << b, x.vec))
                else:
                    col ^= embed(l, alg.multiply_vectors(x.vec, 1 << b))
            differential.append(col)
        return FiniteComplex(labels, degrees, differential)


def cell_d_squared_check(module: CellModule) -> List[Check]:
    """Label degrees plus d(x_km) + sum_l x_kl then x_lm = 0 for every generator pair."""
    checks = []
    alg = module.algebra
    count = len(module.generators)
    for (k, l), x in sorted(module.arrows.items()):
        if not x:
            continue
        gk, gl = module.generators[k], module.generators[l]
        expected = gl.shift - gk.shift + 1
        src, tgt = module.label_block(k, l)
        ok = x.degree() == expected and all(
            alg.source(b) == src and alg.target(b) == tgt for b in bits(x.vec))
        if not ok:
            checks.append(check(f"{module.name}: label {gk.name}->{gl.name}", False,
                                {"label": repr(x), "expected_degree": expected}))
    for k in range(count):
        for m in range(count):
            total = module.derivation(module.label(k, m))
            for l in range(count):
                total = total + module.then(module.label(k, l), module.label(l, m))
            if total:
                checks.append(check(
                    f"{module.name}: d^2 on {module.generators[k].name}->{module.generators[m].name}",
                    False, repr(total)))
    if not checks:
        checks.append(check(f"{module.name}: d^2 = 0", True))
    return checks


# ==================== Resolutions of simples ====================

def _resolution_name(i: int, side: Side) -> str:
    return f"P(L{i})" if side == "left" else f"P({i}L)"


def build_resolution(n: int, i: int, side: Side) -> CellModule:
    """The explicit cofibrant resolution of the simple at vertex i over A_n^!."""
    if n < 2:
        raise AlgebraError(f"n must be at least 2, got {n}")
    if not 1 <= i <= n:
        raise AlgebraError(f"vertex {i} outside 1..{n}")
    alg, d = dg_an_shriek(n)
    e = alg.element

    if side == "left" and i == n:
        return _ladder(n)

    gens: List[Generator] = []
    arrows: Dict[Tuple[int, int], AlgebraElement] = {}

    def add(p: int, s: int, name: str) -> int:
        gens.append(Generator(p, s, name))
        return len(gens) - 1

    if side == "left":
        top = add(i, 1, f"P{i}[1]")
        left = add(i - 1, 0, f"P{i - 1}") if i > 1 else None
        right = add(i + 1, 1, f"P{i + 1}[1]")
        bottom = add(i, 0, f"P{i}")
        arrows[(top, right)] = e((i, i + 1))
        arrows[(right, bottom)] = e((i + 1, i))
        if left is not None:
            arrows[(top, left)] = e((i, i - 1))
            arrows[(left, bottom)] = e((i - 1, i))
            arrows[(left, right)] = e((i - 1, i, i + 1))
    elif i == n:
        top = add(n - 1, 1, f"{n - 1}P[1]")
        bottom = add(n, 0, f"{n}P")
        arrows[(top, bottom)] = e((n, n - 1))
    else:
        top = add(i, 1, f"{i}P[1]")
        left = add(i - 1, 1, f"{i - 1}P[1]") if i > 1 else None
        right = add(i + 1, 0, f"{i + 1}P")
        bottom = add(i, 0, f"{i}P")
        arrows[(top, right)] = e((i + 1, i))
        arrows[(right, bottom)] = e((i, i + 1))
        if left is not None:
            arrows[(top, left)] = e((i - 1, i))
            arrows[(left, bottom)] = e((i, i - 1))
            arrows[(right, left)] = e((i - 1, i, i + 1))
    return CellModule(alg, d, side, gens, arrows, _resolution_name(i, side))


def _ladder(n: int) -> CellModule:
    alg, d = dg_an_shriek(n)
    e = alg.element
    gens = [Generator(k, 0, f"P{k}") for k in range(1, n + 1)]
    gens += [Generator(k, -1, f"P{k}[-1]") for k in range(1, n - 1)]
    top = {k: k - 1 for k in range(1, n + 1)}
    low = {k: n + k - 1 for k in range(1, n - 1)}
    arrows = {}
    for k in range(1, n):
        arrows[(top[k], top[k + 1])] = e((k, k + 1))
    for k in range(2, n):
        arrows[(top[k], low[k - 1])] = e((k, k - 1))
    for k in range(1, n - 1):
        arrows[(top[k], low[k])] = e((k,))
        arrows[(low[k], top[k + 2])] = e((k, k + 1, k + 2))
    for k in range(1, n - 2):
        arrows[(low[k], low[k + 1])] = e((k, k + 1))
    return CellModule(alg, d, "left", gens, arrows, _resolution_name(n, "left"))


def final_generator(module: CellModule, i: int) -> int:
    """The unshifted copy of P_i that carries the homology class."""
    for k, g in enumerate(module.generators):
        if g.projective == i and g.shift == 0:
            return k
    raise AlgebraError(f"{module.name} has no unshifted P{i}")


def verify_resolution(n: int, i: int, side: Side, module: Optional[CellModule] = None) -> List[Check]:
    """d^2 = 0 and one-dimensional homology in degree 0 carried by (i) on the final P_i."""
    module = module or build_resolution(n, i, side)
    checks = cell_d_squared_check(module)
    if any(c.failed for c in checks):
        return checks
    cx = module.expand()
    k = final_generator(module, i)
    anchor = 1 << cx.index[(k, module.algebra.index[(i,)])]
    hom = cx.homology(preferred=[anchor])
    ok = hom.dims == {0: 1} and hom.representatives[0] == [anchor]
    checks.append(check(f"{module.name}: homology is the simple at {i}", ok,
                        {"dims": hom.dims}))
    return checks


__all__ = [
    "CellModule",
    "ComplexError",
    "Derivation",
    "DerivationError",
    "FiniteComplex",
    "Generator",
    "Homology",
    "Side",
    "build_resolution",
    "cell_d_squared_check",
    "dg_an_shriek",
    "final_generator",
    "homology",
    "make_derivation",
    "verify_resolution",
]

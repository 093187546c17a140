"""
Morphism complexes between cell modules.

A DGMap f : M -> N of degree |f| is a matrix of labels y_kl (source generator k,
target generator l).  For left modules f(b g_k) = sum_l (b y_kl) h_l, so y_kl
lies in (p_k) A (q_l) and has degree t_l - s_k + |f|.  In characteristic 2

    d(f)_km = d(y_km) + sum_l y_kl x^N_lm + sum_l x^M_kl y_lm

and composition reads (f g)_km = sum_l g_kl f_lm with g applied first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from zigzag.dgalg import CellModule, FiniteComplex, Homology, build_resolution
from zigzag.gf2lin import bits
from zigzag.quiver import AlgebraElement, AlgebraError, build_named_algebra
from zigzag.schema import Check, check


class MapError(AlgebraError):
    """Raised for composing or comparing maps between mismatched modules."""


@dataclass
class DGMap:
    source: CellModule
    target: CellModule
    degree: int
    components: Dict[Tuple[int, int], AlgebraElement] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.components = {kl: y for kl, y in self.components.items() if y}

    def component(self, k: int, l: int) -> AlgebraElement:
        return self.components.get((k, l), self.source.algebra.zero())

    def _same_shape(self, other: "DGMap"):
        if other.source is not self.source or other.target is not self.target:
            raise MapError(f"{self.name or 'map'} and {other.name or 'map'} have different endpoints")

    def __add__(self, other: "DGMap") -> "DGMap":
        self._same_shape(other)
        comps = dict(self.components)
        for kl, y in other.components.items():
            comps[kl] = comps[kl] + y if kl in comps else y
        degree = self.degree if self.components else other.degree
        return DGMap(self.source, self.target, degree, comps)

    def __mul__(self, other: "DGMap") -> "DGMap":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DGMap):
            return NotImplemented
        return (other.source is self.source and other.target is self.target
                and self.components == other.components)

    def __bool__(self) -> bool:
        return bool(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def d(self) -> "DGMap":
        src, tgt = self.source, self.target
        out: Dict[Tuple[int, int], AlgebraElement] = {}

        def put(kl, value):
            if value:
                out[kl] = out[kl] + value if kl in out else value

        for (k, l), y in self.components.items():
            put((k, l), src.derivation(y))
            for (a, m), x in tgt.arrows.items():
                if a == l:
                    put((k, m), src.then(y, x))
            for (a, b), x in src.arrows.items():
                if b == k:
                    put((a, l), src.then(x, y))
        return DGMap(src, tgt, self.degree + 1, out)

    def degree_problems(self) -> List[Tuple[int, int]]:
        bad = []
        for (k, l), y in self.components.items():
            expected = self.target.generators[l].shift - self.source.generators[k].shift + self.degree
            if y.degree() != expected:
                bad.append((k, l))
        return bad

    def describe(self) -> Dict[str, str]:
        sg, tg = self.source.generators, self.target.generators
        return {f"{sg[k].name}->{tg[l].name}": repr(y) for (k, l), y in sorted(self.components.items())}

    def __repr__(self) -> str:
        return f"DGMap({self.name or '?'}: {self.source.name} -> {self.target.name}, deg {self.degree}, {self.describe()})"


def compose(f: DGMap, g: DGMap) -> DGMap:
    """f after g."""
    if g.target is not f.source:
        raise MapError(f"cannot compose {f.name or 'map'} after {g.name or 'map'}: modules differ")
    mod = g.source
    out: Dict[Tuple[int, int], AlgebraElement] = {}
    for (k, l), y in g.components.items():
        for (a, m), z in f.components.items():
            if a != l:
                continue
            value = mod.then(y, z)
            if value:
                out[(k, m)] = out[(k, m)] + value if (k, m) in out else value
    return DGMap(g.source, f.target, f.degree + g.degree, out)


def identity_map(module: CellModule) -> DGMap:
    alg = module.algebra
    comps = {(k, k): alg.idempotent(g.projective) for k, g in enumerate(module.generators)}
    return DGMap(module, module, 0, comps, name=f"1[{module.name}]")


# ==================== Hom complexes ====================

class HomComplex:
    """Elementary maps b E_kl between two cell modules, with d(f) = d f + f d."""

    def __init__(self, source: CellModule, target: CellModule):
        if source.side != target.side:
            raise MapError("hom complex needs modules on the same side")
        if source.algebra is not target.algebra:
            raise MapError("hom complex needs modules over the same algebra")
        self.source = source
        self.target = target
        alg = source.algebra
        labels, degrees = [], []
        for k, gk in enumerate(source.generators):
            for l, gl in enumerate(target.generators):
                p, q = gk.projective, gl.projective
                block = alg.block_indices(p, q) if source.side == "left" else alg.block_indices(q, p)
                for b in block:
                    labels.append((k, l, b))
                    degrees.append(alg.degrees[b] + gk.shift - gl.shift)
        self.labels = labels
        self.degrees = degrees
        self.index = {lab: c for c, lab in enumerate(labels)}
        differential = [self.to_vector(self.elementary(c).d()) for c in range(len(labels))]
        self.complex = FiniteComplex(labels, degrees, differential)
        self._homology: Optional[Homology] = None

    def elementary(self, c: int) -> DGMap:
        k, l, b = self.labels[c]
        return DGMap(self.source, self.target, self.degrees[c], {(k, l): self.source.algebra.basis_element(b)})

    def to_vector(self, f: DGMap) -> int:
        vec = 0
        for (k, l), y in f.components.items():
            for b in bits(y.vec):
                key = (k, l, b)
                if key not in self.index:
                    raise MapError(f"component {key} lies outside the hom complex")
                vec ^= 1 << self.index[key]
        return vec

    def to_map(self, vec: int, degree: Optional[int] = None) -> DGMap:
        alg = self.source.algebra
        comps: Dict[Tuple[int, int], int] = {}
        for c in bits(vec):
            k, l, b = self.labels[c]
            comps[(k, l)] = comps.get((k, l), 0) ^ (1 << b)
        if degree is None:
            degs = {self.degrees[c] for c in bits(vec)}
            degree = degs.pop() if len(degs) == 1 else 0
        return DGMap(self.source, self.target, degree, {kl: AlgebraElement(alg, v) for kl, v in comps.items()})

    def homology(self, preferred: Tuple[int, ...] = ()) -> Homology:
        if preferred:
            return self.complex.homology(preferred)
        if self._homology is None:
            self._homology = self.complex.homology()
        return self._homology

    def square_defects(self) -> List[int]:
        return self.complex.square_defects()

    @property
    def dimension(self) -> int:
        return len(self.labels)


def hom_complex(source: CellModule, target: CellModule) -> HomComplex:
    return HomComplex(source, target)


_HOM_CACHE: Dict[Tuple[int, int, int], HomComplex] = {}


def resolution_hom(n: int, i: int, j: int) -> HomComplex:
    """HOM(P(L_j), P(L_i)), the block 1_i E_n 1_j."""
    key = (n, i, j)
    if key not in _HOM_CACHE:
        _HOM_CACHE[key] = HomComplex(resolution(n, j), resolution(n, i))
    return _HOM_CACHE[key]


_RES_CACHE: Dict[Tuple[int, int, str], CellModule] = {}


def resolution(n: int, i: int, side: str = "left") -> CellModule:
    """Cached resolution so that maps between them share module identity."""
    key = (n, i, side)
    if key not in _RES_CACHE:
        _RES_CACHE[key] = build_resolution(n, i, side)
    return _RES_CACHE[key]


def ext_table(n: int, i: int, j: int) -> Homology:
    """Homology of HOM(P(L_j), P(L_i)) by degree, with representative cycles."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise AlgebraError(f"block ({i}, {j}) outside 1..{n}")
    return resolution_hom(n, i, j).homology()


def koszul_check(n: int) -> List[Check]:
    """Graded dims of Ext between simples of A_n^! against the blocks of A_n."""
    an = build_named_algebra("an", n)
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ext = ext_table(n, i, j).dims
            block = {t: len(ks) for t, ks in an.idempotent_block(i, j).items()}
            out.append(check(f"Ext dims ({i},{j}) match A{n} block", ext == block,
                             {"ext": ext, "block": block}))
    return out


# ==================== Cup and cap on simples ====================

def cupcap_on_simple(n: int, i: int, j: int) -> Dict[int, int]:
    """
    Multiplicities of L_i[s] in U_i(L_j), keyed by the shift s.

    Computed as RHOM(L_i, L_j) = HOM(P(L_i), L_j): one copy of k for every
    generator of P(L_i) on the projective P_j, with differential the idempotent
    part of the connecting labels.
    """
    if not (1 <= i <= n - 1 and 1 <= j <= n):
        raise AlgebraError(f"cup-cap needs 1 <= i <= {n - 1} and 1 <= j <= {n}")
    module = resolution(n, i)
    return _simple_pairing(module, j, sign=1)


def tensor_on_simple(n: int, i: int, j: int) -> Dict[int, int]:
    """Homology of iL (x) L_j from the right resolution P(iL), keyed by homological degree."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise AlgebraError(f"vertices ({i}, {j}) outside 1..{n}")
    module = resolution(n, i, "right")
    return _simple_pairing(module, j, sign=-1)


def _simple_pairing(module: CellModule, j: int, sign: int) -> Dict[int, int]:
    alg = module.algebra
    unit_j = alg.index[(j,)]
    keep = [k for k, g in enumerate(module.generators) if g.projective == j]
    local = {k: c for c, k in enumerate(keep)}
    degrees = [sign * module.generators[k].shift for k in keep]
    differential = [0] * len(keep)
    for (k, l), x in module.arrows.items():
        if k in local and l in local and (x.vec >> unit_j) & 1:
            # dual complex for Hom, direct one for the tensor product
            if sign > 0:
                differential[local[l]] |= 1 << local[k]
            else:
                differential[local[k]] |= 1 << local[l]
    cx = FiniteComplex([module.generators[k].name for k in keep], degrees, differential)
    return dict(cx.homology().dims)


__all__ = [
    "DGMap",
    "HomComplex",
    "MapError",
    "compose",
    "cupcap_on_simple",
    "ext_table",
    "hom_complex",
    "identity_map",
    "koszul_check",
    "resolution",
    "resolution_hom",
    "tensor_on_simple",
]

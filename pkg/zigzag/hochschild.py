"""
Hochschild cochains of C_{n-1} relative to its idempotents.

A k-cochain assigns to every composable basis k-tuple (x_1, ..., x_k) an element
of (s(x_1)) C (t(x_k)).  In characteristic 2 the coboundary is

    df(x_1, ..., x_{k+1}) = x_1 f(x_2, ...) + sum_i f(..., x_i x_{i+1}, ...) + f(..., x_k) x_{k+1}
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from zigzag import config
from zigzag.gf2lin import BitMatrix, Inconsistent, bits, solve
from zigzag.quiver import QuotientAlgebra, build_named_algebra, format_path, loop
from zigzag.schema import Check, check, info
from zigzag.transfer import composable_tuples, transferred_table

Evaluator = Callable[[Tuple[int, ...]], int]


@dataclass
class Cochain:
    algebra: QuotientAlgebra
    arity: int
    degree: int
    values: Dict[Tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        self.values = {xs: v for xs, v in self.values.items() if v}

    def __call__(self, xs: Tuple[int, ...]) -> int:
        return self.values.get(xs, 0)

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.algebra is not self.algebra or other.arity != self.arity:
            raise ValueError("cochains of different shape")
        values = dict(self.values)
        for xs, v in other.values.items():
            values[xs] = values.get(xs, 0) ^ v
        return Cochain(self.algebra, self.arity, self.degree, values)

    def is_zero(self) -> bool:
        return not self.values

    def degree_problems(self) -> List[Tuple[int, ...]]:
        alg = self.algebra
        bad = []
        for xs, v in self.values.items():
            want = sum(alg.degrees[x] for x in xs) + self.degree
            block = (alg.source(xs[0]), alg.target(xs[-1]))
            if any(alg.degrees[y] != want or (alg.source(y), alg.target(y)) != block for y in bits(v)):
                bad.append(xs)
        return bad


def _delta_at(alg: QuotientAlgebra, f: Evaluator, xs: Tuple[int, ...]) -> int:
    size = len(xs)
    out = alg.multiply_vectors(1 << xs[0], f(xs[1:]))
    for i in range(size - 1):
        for c in bits(alg.product_of_basis(xs[i], xs[i + 1])):
            out ^= f(xs[:i] + (c,) + xs[i + 2:])
    out ^= alg.multiply_vectors(f(xs[:-1]), 1 << xs[-1])
    return out


def hochschild_differential(m: Cochain) -> Cochain:
    alg = m.algebra
    values = {}
    for xs in composable_tuples(alg, m.arity + 1):
        v = _delta_at(alg, m, xs)
        if v:
            values[xs] = v
    return Cochain(alg, m.arity + 1, m.degree, values)


def transferred_m3(n: int) -> Cochain:
    table = transferred_table(n, 3)
    return Cochain(table.algebra, 3, -1, table.nonzero(3))


def random_cochain(alg: QuotientAlgebra, arity: int, degree: int, rng: random.Random,
                   density: float = 0.3) -> Cochain:
    values = {}
    for xs in composable_tuples(alg, arity):
        if rng.random() > density:
            continue
        want = sum(alg.degrees[x] for x in xs) + degree
        targets = [y for y in alg.block_indices(alg.source(xs[0]), alg.target(xs[-1]))
                   if alg.degrees[y] == want]
        v = 0
        for y in targets:
            if rng.random() < 0.5:
                v |= 1 << y
        values[xs] = v
    return Cochain(alg, arity, degree, values)


def delta_squared_check(n: int, samples: int = config.DELTA_SAMPLES, seed: int = config.DEFAULT_SEED,
                        arities: Sequence[int] = (1, 2, 3), tuples_per_sample: Optional[int] = 25) -> List[Check]:
    """
    d d f = 0 on random degree -1 cochains.  Each sample is evaluated on `tuples_per_sample`
    random composable tuples, or on every composable tuple when tuples_per_sample is None.
    """
    alg = build_named_algebra("zigzag", n)
    rng = random.Random(seed)
    out = []
    for k in arities:
        tuples = list(composable_tuples(alg, k + 2))
        bad = None
        for _ in range(samples):
            f = random_cochain(alg, k, -1, rng)
            df = lambda ys, f=f: _delta_at(alg, f, ys)
            chosen = tuples if tuples_per_sample is None else rng.sample(tuples, min(tuples_per_sample, len(tuples)))
            for xs in chosen:
                if _delta_at(alg, df, xs):
                    bad = [format_path(alg.basis[x]) for x in xs]
                    break
            if bad:
                break
        where = "all" if tuples_per_sample is None else f"{min(tuples_per_sample, len(tuples))} random"
        out.append(check(f"dd = 0 on arity {k} cochains ({samples} samples, {where} of {len(tuples)} tuples each)",
                         bad is None, bad))
    return out


# ==================== Coboundary solve ====================

@dataclass
class CoboundaryResult:
    coboundary: bool
    witness: Optional[Dict[str, List[str]]] = None
    certificate: Optional[List[Dict[str, object]]] = None
    unknowns: int = 0
    equations: int = 0


def bilinear_unknowns(alg: QuotientAlgebra, degree: int) -> List[Tuple[Tuple[int, int], int]]:
    """Elementary bilinear cochains: (pair, output basis index) of the given degree."""
    out = []
    for xs in composable_tuples(alg, 2):
        want = alg.degrees[xs[0]] + alg.degrees[xs[1]] + degree
        for y in alg.block_indices(alg.source(xs[0]), alg.target(xs[1])):
            if alg.degrees[y] == want:
                out.append((xs, y))
    return out


class _Coordinates:
    def __init__(self):
        self.index: Dict[Tuple[Tuple[int, ...], int], int] = {}
        self.labels: List[Tuple[Tuple[int, ...], int]] = []

    def vector(self, cochain: Cochain) -> int:
        vec = 0
        for xs, v in cochain.values.items():
            for y in bits(v):
                key = (xs, y)
                if key not in self.index:
                    self.index[key] = len(self.labels)
                    self.labels.append(key)
                vec ^= 1 << self.index[key]
        return vec


def _solve_for(alg: QuotientAlgebra, unknowns, target: Cochain) -> CoboundaryResult:
    coords = _Coordinates()
    columns = [coords.vector(hochschild_differential(Cochain(alg, 2, target.degree, {xs: 1 << y})))
               for xs, y in unknowns]
    rhs = coords.vector(target)
    result = solve(BitMatrix.from_columns(columns, max(len(coords.labels), 1)), rhs)

    def label(key):
        xs, y = key
        return {"inputs": [format_path(alg.basis[x]) for x in xs], "output": format_path(alg.basis[y])}

    if isinstance(result, Inconsistent):
        rows = [label(coords.labels[r]) for r in bits(result.certificate)]
        return CoboundaryResult(False, certificate=rows, unknowns=len(unknowns), equations=len(coords.labels))
    witness: Dict[str, List[str]] = {}
    for c in bits(result):
        xs, y = unknowns[c]
        witness.setdefault(" ".join(format_path(alg.basis[x]) for x in xs), []).append(format_path(alg.basis[y]))
    return CoboundaryResult(True, witness=witness, unknowns=len(unknowns), equations=len(coords.labels))


def coboundary_membership(m3: Cochain, n: int) -> CoboundaryResult:
    """Solve dm = m3 over every bilinear cochain of the same internal degree."""
    alg = m3.algebra
    if alg is not build_named_algebra("zigzag", n):
        raise ValueError(f"cochain does not live on C{n - 1}")
    return _solve_for(alg, bilinear_unknowns(alg, m3.degree), m3)


def certificate_holds(m3: Cochain, result: CoboundaryResult) -> bool:
    """Summing the certificate rows kills every unknown but leaves m3 odd."""
    if result.coboundary or result.certificate is None:
        return False
    alg = m3.algebra
    lookup = {format_path(p): k for k, p in enumerate(alg.basis)}
    rows = {(tuple(lookup[w] for w in row["inputs"]), lookup[row["output"]]) for row in result.certificate}
    parity = sum((m3((xs))) >> y & 1 for xs, y in rows) % 2
    for xs, y in bilinear_unknowns(alg, m3.degree):
        image = hochschild_differential(Cochain(alg, 2, m3.degree, {xs: 1 << y}))
        if sum(image(zs) >> z & 1 for zs, z in rows) % 2:
            return False
    return parity == 1


# ==================== The five-family slice ====================

def slice_unknowns(n: int) -> Dict[str, Tuple[Tuple[int, int], int]]:
    """alpha_i, b_i, c_i, d_i, eta_i: the degree -1 values forced by homogeneity."""
    alg = build_named_algebra("zigzag", n)
    arrow = lambda a, b: alg.index.get((a, b))
    cyc = lambda i: loop(alg, i).vec.bit_length() - 1
    out = {}
    for i in range(1, n):
        up, down = arrow(i, i + 1), arrow(i, i - 1)
        if up is not None:
            out[f"alpha_{i}"] = ((up, arrow(i + 1, i)), alg.index[(i,)])
            out[f"b_{i}"] = ((cyc(i), up), up)
        if down is not None:
            out[f"c_{i}"] = ((cyc(i), down), down)
            out[f"eta_{i}"] = ((down, cyc(i - 1)), down)
        out[f"d_{i}"] = ((cyc(i), cyc(i)), cyc(i))
    return out


def slice_equations(n: int) -> Dict[str, Tuple[frozenset, int]]:
    """Equations of dm = m3 on the four probing triple families, restricted to the slice."""
    alg = build_named_algebra("zigzag", n)
    m3 = transferred_m3(n)
    unknowns = slice_unknowns(n)
    images = {name: Cochain(alg, 2, -1, {xs: 1 << y}) for name, (xs, y) in unknowns.items()}
    arrow = lambda a, b: alg.index[(a, b)]
    cyc = lambda i: loop(alg, i).vec.bit_length() - 1
    witnesses: Dict[str, Tuple[int, ...]] = {}
    for i in range(1, n - 1):
        if i >= 2:
            witnesses[f"({i}|{i + 1}),({i + 1}|{i}),({i}|{i - 1})"] = (arrow(i, i + 1), arrow(i + 1, i), arrow(i, i - 1))
        witnesses[f"({i}|{i + 1}),({i + 1}|{i}),c_{i}"] = (arrow(i, i + 1), arrow(i + 1, i), cyc(i))
        witnesses[f"c_{i},({i}|{i + 1}),({i + 1}|{i})"] = (cyc(i), arrow(i, i + 1), arrow(i + 1, i))
    for i in range(2, n):
        witnesses[f"({i}|{i - 1}),c_{i - 1},({i - 1}|{i})"] = (arrow(i, i - 1), cyc(i - 1), arrow(i - 1, i))
    out = {}
    for label, xs in witnesses.items():
        lhs = {name: _delta_at(alg, f, xs) for name, f in images.items()}
        rhs = m3(xs)
        outputs = set(bits(rhs))
        for v in lhs.values():
            outputs |= set(bits(v))
        for y in sorted(outputs):
            names = frozenset(name for name, v in lhs.items() if v >> y & 1)
            out[f"{label} -> {format_path(alg.basis[y])}"] = (names, rhs >> y & 1)
    return out


def expected_slice_equations(n: int) -> List[Tuple[frozenset, int]]:
    out = []
    for i in range(2, n - 1):
        out.append((frozenset({f"c_{i}", f"alpha_{i}"}), 0))
    for i in range(2, n):
        out.append((frozenset({f"b_{i - 1}", f"eta_{i}"}), 0))
    for i in range(1, n - 1):
        out.append((frozenset({f"eta_{i + 1}", f"d_{i}", f"alpha_{i}"}), 1))
        out.append((frozenset({f"alpha_{i}", f"d_{i}", f"b_{i}"}), 0))
    return out


def _format_equation(names: frozenset, rhs: int) -> str:
    return f"{' + '.join(sorted(names)) or '0'} = {rhs}"


def slice_check(n: int) -> List[Check]:
    found = slice_equations(n)
    produced = sorted({_format_equation(*eq) for eq in found.values() if eq[0] or eq[1]})
    wanted = sorted({_format_equation(*eq) for eq in expected_slice_equations(n)})
    out = [check("slice equations match the hand derivation", produced == wanted,
                 {"produced": produced, "expected": wanted})]
    names = sorted(slice_unknowns(n))
    pos = {name: c for c, name in enumerate(names)}
    rows, rhs = [], 0
    for r, (vars_, value) in enumerate(eq for eq in found.values() if eq[0] or eq[1]):
        rows.append(sum(1 << pos[v] for v in vars_))
        rhs |= value << r
    result = solve(BitMatrix.from_bitrows(rows, len(names)), rhs) if rows else 0
    inconsistent = isinstance(result, Inconsistent)
    if n >= 4:
        out.append(check("slice equations are inconsistent", inconsistent, produced))
    else:
        out.append(info("slice equations are inconsistent", {"n": n, "inconsistent": inconsistent}))
    return out


# ==================== Verification ====================

def verify_hochschild(n: int, samples: int = config.DELTA_SAMPLES, seed: int = config.DEFAULT_SEED,
                      m3: Optional[Cochain] = None) -> List[Check]:
    alg = build_named_algebra("zigzag", n)
    out = delta_squared_check(n, samples, seed)
    zero = Cochain(alg, 2, -1)
    out.append(check("d of the zero cochain is zero", hochschild_differential(zero).is_zero()))
    m3 = m3 or transferred_m3(n)
    out.append(check("m3 has internal degree -1", not m3.degree_problems(), m3.degree_problems()))
    dm3 = hochschild_differential(m3)
    out.append(check("m3 is a cocycle", dm3.is_zero(),
                     [[format_path(alg.basis[x]) for x in xs] for xs in list(dm3.values)[:5]]))
    rng = random.Random(seed)
    f = random_cochain(alg, 2, -1, rng)
    out.append(check("d preserves internal degree", not hochschild_differential(f).degree_problems()))
    result = coboundary_membership(m3, n)
    summary = {"not_coboundary": not result.coboundary, "unknowns": result.unknowns,
               "equations": result.equations, "certificate": result.certificate}
    if n >= 4:
        out.append(check("m3 is not a coboundary", not result.coboundary, result.witness))
        out.append(check("inconsistency certificate checks out", certificate_holds(m3, result)))
        out.append(info("coboundary solve", summary))
    else:
        out.append(info(f"coboundary solve for n = {n}", dict(summary, witness=result.witness)))
    out += slice_check(n)
    return out


__all__ = [
    "Cochain",
    "CoboundaryResult",
    "bilinear_unknowns",
    "certificate_holds",
    "coboundary_membership",
    "delta_squared_check",
    "expected_slice_equations",
    "hochschild_differential",
    "random_cochain",
    "slice_check",
    "slice_equations",
    "slice_unknowns",
    "transferred_m3",
    "verify_hochschild",
]

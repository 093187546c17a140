"""
Temperley-Lieb generators u_i and the reduced Burau matrices t_i = 1 - u_i on
V_{n-1} = Z[q, q^-1]^{n-1}, and their comparison with cup-cap on simples at q = -1.
"""

from __future__ import annotations

from typing import Dict, List, Optional

import sympy as sp

from zigzag.homalg import cupcap_on_simple
from zigzag.quiver import AlgebraError
from zigzag.schema import Check, check, info

q = sp.Symbol("q")


def laurent(expr) -> sp.Expr:
    """Normal form of a Laurent polynomial in q."""
    return sp.expand(sp.sympify(expr))


def is_zero_matrix(m: sp.Matrix) -> bool:
    return all(laurent(x) == 0 for x in m)


def same(a: sp.Matrix, b: sp.Matrix) -> bool:
    return a.shape == b.shape and is_zero_matrix(a - b)


def _check_index(n: int, i: int):
    if n < 2:
        raise AlgebraError(f"n must be at least 2, got {n}")
    if not 1 <= i <= n - 1:
        raise AlgebraError(f"generator index {i} outside 1..{n - 1}")


def tl_matrix(n: int, i: int) -> sp.Matrix:
    """u_i: column j is (1+q) e_i if j = i, e_i if j = i-1, q e_i if j = i+1."""
    _check_index(n, i)
    size = n - 1
    m = sp.zeros(size, size)
    m[i - 1, i - 1] = 1 + q
    if i >= 2:
        m[i - 1, i - 2] = 1
    if i <= size - 1:
        m[i - 1, i] = q
    return m


def braid_matrix(n: int, i: int) -> sp.Matrix:
    return sp.eye(n - 1) - tl_matrix(n, i)


def braid_inverse(n: int, i: int) -> sp.Matrix:
    """q^-1 (t_i + (q - 1)), from t_i^2 + (q - 1) t_i - q = 0."""
    t = braid_matrix(n, i)
    return ((t + (q - 1) * sp.eye(n - 1)) / q).applyfunc(laurent)


def specialize(m: sp.Matrix, value) -> sp.Matrix:
    return m.subs(q, value).applyfunc(sp.nsimplify)


def verify_tl_braid(n: int, overrides: Optional[Dict[int, sp.Matrix]] = None) -> List[Check]:
    """All TL and braid relations; overrides replace some u_i for negative controls."""
    size = n - 1
    us = {i: tl_matrix(n, i) for i in range(1, n)}
    us.update(overrides or {})
    ts = {i: sp.eye(size) - u for i, u in us.items()}
    out = []
    for i in us:
        out.append(check(f"u{i}^2 = (1+q) u{i}", same(us[i] * us[i], (1 + q) * us[i])))
        inv = ((ts[i] + (q - 1) * sp.eye(size)) / q)
        out.append(check(f"t{i} has inverse q^-1 (t{i} + q - 1)", same(ts[i] * inv, sp.eye(size))))
        for j in us:
            if j > i + 1:
                out.append(check(f"u{i} u{j} = u{j} u{i}", same(us[i] * us[j], us[j] * us[i])))
                out.append(check(f"t{i} t{j} = t{j} t{i}", same(ts[i] * ts[j], ts[j] * ts[i])))
            elif abs(i - j) == 1:
                out.append(check(f"u{i} u{j} u{i} = q u{i}", same(us[i] * us[j] * us[i], q * us[i])))
                if j == i + 1:
                    out.append(check(f"t{i} t{j} t{i} = t{j} t{i} t{j}",
                                     same(ts[i] * ts[j] * ts[i], ts[j] * ts[i] * ts[j])))
    return out


def specialization_check(n: int, values=(-1, 2)) -> List[Check]:
    """Evaluating at q commutes with the products in the braid relations."""
    out = []
    for i in range(1, n - 1):
        a, b = braid_matrix(n, i), braid_matrix(n, i + 1)
        for v in values:
            lhs = specialize((a * b * a).applyfunc(laurent), v)
            rhs = specialize(a, v) * specialize(b, v) * specialize(a, v)
            out.append(check(f"q = {v} commutes with t{i} t{i + 1} t{i}", lhs == rhs))
    return out


def cupcap_matrix(n: int, i: int) -> sp.Matrix:
    """Class of U_i on [L_1], ..., [L_{n-1}], with [M[s]] = (-1)^s [M]."""
    size = n - 1
    m = sp.zeros(size, size)
    for j in range(1, n):
        mult = cupcap_on_simple(n, i, j)
        m[i - 1, j - 1] = sum((-1) ** abs(s) * c for s, c in mult.items())
    return m


def decategorification_check(n: int) -> List[Check]:
    out = []
    for i in range(1, n):
        ours = cupcap_matrix(n, i)
        burau = specialize(tl_matrix(n, i), -1)
        out.append(check(f"[U{i}] = u{i} at q = -1", ours == burau,
                         {"cupcap": ours.tolist(), "burau": burau.tolist()}))
        out.append(info(f"cup-cap multiplicities for U{i}",
                        {str(j): cupcap_on_simple(n, i, j) for j in range(1, n)}))
    return out


def verify_burau(n: int) -> List[Check]:
    return verify_tl_braid(n) + specialization_check(n) + decategorification_check(n)


__all__ = [
    "braid_inverse",
    "braid_matrix",
    "cupcap_matrix",
    "decategorification_check",
    "is_zero_matrix",
    "laurent",
    "q",
    "same",
    "specialization_check",
    "specialize",
    "tl_matrix",
    "verify_burau",
    "verify_tl_braid",
]

"""
Exact GF(2) homological algebra for the zigzag algebras C_{n-1}.

Modules, bottom up: gf2lin (bit-packed linear algebra), quiver (path algebras
and their quotients), dgalg (A_n^! with its differential, cell modules and
resolutions), homalg (morphism complexes), endo (the endomorphism algebra E'_n
and S_{n-1}), transfer (the minimal A-infinity model of C_{n-1}), hochschild,
bimodule and burau.
"""

from zigzag.quiver import build_named_algebra
from zigzag.dgalg import build_resolution, dg_an_shriek
from zigzag.endo import build_s, eprime
from zigzag.transfer import transferred_mk, transferred_table, verify_minimal_model

__all__ = [
    "build_named_algebra",
    "build_resolution",
    "build_s",
    "dg_an_shriek",
    "eprime",
    "transferred_mk",
    "transferred_table",
    "verify_minimal_model",
]

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from typing import Callable, Dict, List, Optional
from pydantic import BaseModel, Field

from zigzag import config
from zigzag.gf2lin import bits
from zigzag.quiver import build_named_algebra, format_path, loop
from zigzag.dgalg import CellModule, dg_an_shriek, verify_resolution
from zigzag.homalg import DGMap, koszul_check, resolution
from zigzag.endo import (
    build_named_maps,
    homology_table_checks,
    verify_eprime,
    verify_generator_relations,
    verify_iso_An,
    verify_quasi_iso_inclusion,
)
from zigzag.transfer import (
    composable_tuples,
    m3_families,
    transferred_table,
    verify_contraction,
    verify_minimal_model,
)
from zigzag.hochschild import Cochain, transferred_m3, verify_hochschild
from zigzag.bimodule import build_f, morphism_relation_check, verify_bimodules
from zigzag.burau import q, tl_matrix, verify_burau, verify_tl_braid
from zigzag.schema import Check, SuiteReport, check, info


class SuiteRequest(BaseModel):
    n: int = Field(..., ge=2, description="Number of vertices of A_n")
    max_arity: int = Field(config.MAX_ARITY, ge=3, le=config.ARITY_CAP, description="Largest m_k computed")
    seed: int = Field(config.DEFAULT_SEED, description="Seed for sampled checks")
    samples: int = Field(config.DELTA_SAMPLES, ge=1, description="Random cochains per arity")
    perturb: bool = Field(False, description="Flip one documented bit of the suite's input")


# ==================== Suites ====================

def associativity_witness(alg, product: Callable[[int, int], int]) -> Optional[List[str]]:
    for a, b, c in composable_tuples(alg, 3):
        lhs = rhs = 0
        for x in bits(product(a, b)):
            lhs ^= product(x, c)
        for y in bits(product(b, c)):
            rhs ^= product(a, y)
        if lhs != rhs:
            return [format_path(alg.basis[x]) for x in (a, b, c)]
    return None


def algebra_checks(req: SuiteRequest) -> List[Check]:
    n = req.n
    out = []
    shriek = build_named_algebra("an_shriek", n)
    an = build_named_algebra("an", n)
    zz = build_named_algebra("zigzag", n)
    out.append(info(f"dim {shriek.name}", shriek.dimension))
    out.append(check(f"(1) {shriek.name} (1) is spanned by (1)",
                     [shriek.basis[k] for k in shriek.block_indices(1, 1)] == [(1,)],
                     [format_path(shriek.basis[k]) for k in shriek.block_indices(1, 1)]))
    out.append(check(f"dim {an.name} = 4n - 3", an.dimension == 4 * n - 3, an.dimension))
    out.append(check(f"dim {zz.name} = 4n - 6", zz.dimension == 4 * n - 6, zz.dimension))
    for alg in (shriek, an, zz):
        product = alg.product_of_basis
        if req.perturb and alg is an:
            # (1|2)(2|1) picks up a stray (1)
            flipped = (an.index[(1, 2)], an.index[(2, 1)])
            product = lambda a, b, alg=alg: alg.product_of_basis(a, b) ^ (
                1 << alg.index[(1,)] if (a, b) == flipped else 0)
        bad = associativity_witness(alg, product)
        out.append(check(f"{alg.name} is associative", bad is None, bad))
    return out


def dg_checks(req: SuiteRequest) -> List[Check]:
    n = req.n
    _, d = dg_an_shriek(n)
    out = d.failures() or [check(f"d on A{n}! is a square-zero derivation", True)]
    for i in range(1, n + 1):
        module = resolution(n, i)
        if req.perturb and i == 1:
            # drop the label of the first arrow of P(L1)
            arrows = dict(module.arrows)
            arrows.pop(min(arrows))
            module = CellModule(module.algebra, module.derivation, module.side,
                                module.generators, arrows, module.name)
        out += verify_resolution(n, i, "left", module)
        out += verify_resolution(n, i, "right", resolution(n, i, "right"))
    out += koszul_check(n)
    return out


def endo_checks(req: SuiteRequest) -> List[Check]:
    n = req.n
    maps = build_named_maps(n)
    if req.perturb:
        f = maps.alpha(1, 2)
        no_alpha = maps.replace("alpha_1,2", DGMap(f.source, f.target, f.degree, {}, name="alpha_1,2"))
        h = maps.h(2)
        first = min(h.components)
        # one component of h_2 goes missing
        thin = DGMap(h.source, h.target, h.degree,
                     {kl: y for kl, y in h.components.items() if kl != first}, name="h_2")
        no_h = maps.replace("h_2", thin)
        return (no_alpha.construction_checks() + verify_generator_relations(n, no_alpha)
                + verify_generator_relations(n, no_h))
    out = maps.construction_checks()
    out += verify_generator_relations(n, maps)
    out += verify_eprime(n)
    out += verify_iso_An(n)
    out += homology_table_checks(n)
    if n <= config.QUASI_ISO_MAX_N:
        out += verify_quasi_iso_inclusion(n)
    else:
        out.append(info("quasi-isomorphism E' -> E skipped", {"n": n, "limit": config.QUASI_ISO_MAX_N}))
    return out


def transfer_checks(req: SuiteRequest) -> List[Check]:
    table = None
    if req.perturb:
        table = transferred_table(req.n, req.max_arity)
        first = min(m3_families(req.n), default=None)
        if first is not None:
            table = table.with_value(3, first, 0)
        else:
            pair = next(composable_tuples(table.algebra, 2))
            table = table.with_value(2, pair, table.op(2, pair) ^ 1)
    return verify_contraction(req.n) + verify_minimal_model(req.n, req.max_arity, table)


def hochschild_checks(req: SuiteRequest) -> List[Check]:
    m3 = None
    if req.perturb:
        m3 = transferred_m3(req.n)
        first = min(m3.values, default=None)
        if first is not None:
            m3 = Cochain(m3.algebra, 3, -1, {xs: v for xs, v in m3.values.items() if xs != first})
        else:
            # C_1 has no m3: plant m3(1_1, 1_1, c_1) = 1_1, which is not a cocycle
            alg = m3.algebra
            e, c = alg.index[(1,)], loop(alg, 1).vec.bit_length() - 1
            m3 = Cochain(alg, 3, -1, {(e, e, c): 1 << e})
    return verify_hochschild(req.n, req.samples, req.seed, m3)


def bimodule_checks(req: SuiteRequest) -> List[Check]:
    if not req.perturb:
        return verify_bimodules(req.n, req.max_arity)
    if req.n >= 3:
        return verify_bimodules(req.n, req.max_arity, multiplication=False)
    # C_1 has no m3, so f loses its value on 1_1 x 1_1 instead
    e = build_named_algebra("zigzag", 2).index[(1,)]
    return morphism_relation_check(build_f(2, 1, req.max_arity, drop=[(e, e)]), req.max_arity)


def burau_checks(req: SuiteRequest) -> List[Check]:
    if req.perturb:
        # the diagonal entry of u_1 loses its constant term
        u = tl_matrix(req.n, 1)
        u[0, 0] = q
        return verify_tl_braid(req.n, {1: u})
    return verify_burau(req.n)


SUITE_FUNCTIONS: Dict[str, Callable[[SuiteRequest], List[Check]]] = {
    "algebra": algebra_checks,
    "dg": dg_checks,
    "endo": endo_checks,
    "transfer": transfer_checks,
    "hochschild": hochschild_checks,
    "bimodule": bimodule_checks,
    "burau": burau_checks,
}


def tool_run_suite(suite: str, n: int, max_arity: Optional[int] = None, seed: Optional[int] = None,
                   samples: Optional[int] = None, perturb: bool = False) -> dict:
    """Run one suite and wrap its checks in a report"""
    if suite not in SUITE_FUNCTIONS:
        return {"success": False, "message": f"Unknown suite '{suite}'", "report": None}
    req = SuiteRequest(
        n=n,
        max_arity=max_arity or config.MAX_ARITY,
        seed=config.DEFAULT_SEED if seed is None else seed,
        samples=samples or config.DELTA_SAMPLES,
        perturb=perturb,
    )
    try:
        checks = SUITE_FUNCTIONS[suite](req)
    except Exception as e:
        print(f"❌ Suite {suite} raised for n={n}: {e}")
        checks = [check(f"{suite} suite ran to completion", False, f"{type(e).__name__}: {e}")]
    report = SuiteReport(schema_version=config.REPORT_SCHEMA_VERSION, suite=suite, n=n, checks=checks)
    failed = [c.name for c in checks if c.failed]
    if failed:
        print(f"⚠️ {suite} n={n}: {len(failed)} of {len(checks)} checks failed")
        message = f"{len(failed)} checks failed: {', '.join(failed[:3])}"
    else:
        print(f"✅ {suite} n={n}: {len(checks)} checks passed")
        message = f"{len(checks)} checks passed"
    return {"success": not failed, "message": message, "report": report.to_dict()}

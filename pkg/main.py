import argparse
import json
import os
import sys
from contextlib import redirect_stdout
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from zigzag import config
from zigzag.quiver import NAMED_ALGEBRAS, AlgebraError, build_named_algebra
from zigzag.endo import build_s, eprime
from zigzag.transfer import transferred_table
from zigzag.schema import BasisBlock, BasisDump, SuiteReport, TransferDump, VerifyDump
from backend.agent import run_suites, select_suites
from backend.state import SUITES

load_dotenv()

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

BUILD_NAMES = NAMED_ALGEBRAS + ("eprime", "s")


# ==================== Run Config ====================

class RunConfig(BaseModel):
    n_values: List[int] = Field(..., min_length=1)
    suite: str = "all"
    max_arity: int = Field(config.MAX_ARITY, ge=2, le=config.ARITY_CAP)
    out: Optional[str] = None
    seed: int = config.DEFAULT_SEED
    samples: int = Field(config.DELTA_SAMPLES, ge=1)
    ceiling: Optional[int] = Field(None, ge=1)
    perturb: bool = False
    verbose: bool = False

    @field_validator("n_values")
    @classmethod
    def n_in_range(cls, values: List[int]) -> List[int]:
        for n in values:
            if not 2 <= n <= config.MAX_N:
                raise ValueError(f"n = {n} outside 2..{config.MAX_N}")
        return values

    @field_validator("suite")
    @classmethod
    def known_suite(cls, value: str) -> str:
        if value != "all" and value not in SUITES:
            raise ValueError(f"unknown suite '{value}'")
        return value


def parse_n_range(text: str) -> List[int]:
    """'4', '2..5' or '2-5'"""
    for sep in ("..", "-"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def make_config(args: argparse.Namespace) -> RunConfig:
    if args.n is not None and args.n_range is not None:
        raise ValueError("give either --n or --n-range")
    if args.n is not None:
        n_values = [args.n]
    elif args.n_range is not None:
        n_values = parse_n_range(args.n_range)
    else:
        raise ValueError("--n or --n-range is required")
    return RunConfig(
        n_values=n_values,
        suite=getattr(args, "suite_name", None) or "all",
        max_arity=args.max_arity,
        out=args.out,
        seed=args.seed,
        samples=args.samples,
        ceiling=args.ceiling,
        perturb=getattr(args, "perturb", False),
        verbose=args.verbose,
    )


def write_json(payload: dict, out: Optional[str]):
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"📦 Wrote {out}", file=sys.stderr)
    else:
        print(text)


# ==================== Commands ====================

def basis_dump(name: str, n: int) -> BasisDump:
    if name in NAMED_ALGEBRAS:
        alg = build_named_algebra(name, n)
        blocks = {}
        for k, word in enumerate(alg.basis):
            key = (alg.source(k), alg.target(k), alg.degrees[k])
            blocks.setdefault(key, []).append(list(word))
        title, dim = alg.name, alg.dimension
    else:
        alg = eprime(n) if name == "eprime" else build_s(n)
        blocks = {}
        for k, label in enumerate(alg.names):
            a, b = alg.blocks[k]
            blocks.setdefault((a, b, alg.degrees[k]), []).append(label)
        title = f"E'{n}" if name == "eprime" else f"S{n - 1}"
        dim = alg.dimension
    return BasisDump(
        schema_version=config.REPORT_SCHEMA_VERSION,
        algebra=title,
        n=n,
        dimension=dim,
        blocks=[BasisBlock(source=s, target=t, degree=d, elements=els) for (s, t, d), els in sorted(blocks.items())],
    )


def cmd_build(args: argparse.Namespace, cfg: RunConfig) -> int:
    dumps = [basis_dump(args.algebra, n).to_dict() for n in cfg.n_values]
    for d in dumps:
        print(f"✅ {d['algebra']}: dimension {d['dimension']}", file=sys.stderr)
    write_json(dumps[0] if len(dumps) == 1 else {"schema_version": config.REPORT_SCHEMA_VERSION, "dumps": dumps},
               cfg.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    if cfg.max_arity < 3:
        print("❌ verify needs --max-arity of at least 3", file=sys.stderr)
        return EXIT_USAGE
    suites = select_suites(cfg.suite)
    reports = []
    # progress lines go to stderr so stdout stays pure JSON
    with redirect_stdout(sys.stderr):
        for n in cfg.n_values:
            for report in run_suites(n, suites, cfg.max_arity, cfg.seed, cfg.samples, cfg.perturb):
                reports.append(SuiteReport.from_dict(report))
    dump = VerifyDump(
        schema_version=config.REPORT_SCHEMA_VERSION,
        suites=suites,
        n_values=cfg.n_values,
        reports=reports,
    )
    if cfg.verbose:
        for r in reports:
            for c in r.checks:
                mark = {"pass": "✅", "fail": "❌"}.get(c.status, "🔍")
                print(f"{mark} [{r.suite} n={r.n}] {c.name}", file=sys.stderr)
    write_json(dump.to_dict(), cfg.out)
    if dump.passed:
        print(f"✅ All {sum(len(r.checks) for r in reports)} checks passed", file=sys.stderr)
        return EXIT_OK
    failed = [f"{r.suite} n={r.n}: {c.name}" for r in reports for c in r.checks if c.failed]
    print(f"❌ {len(failed)} checks failed, first: {failed[0]}", file=sys.stderr)
    return EXIT_FAILED


def cmd_transfer(args: argparse.Namespace, cfg: RunConfig) -> int:
    dumps = []
    for n in cfg.n_values:
        table = transferred_table(n, cfg.max_arity)
        layers = {str(k): len(table.nonzero(k)) for k in range(2, cfg.max_arity + 1)}
        print(f"✅ C{n - 1}: nonzero entries per arity {layers}", file=sys.stderr)
        dumps.append(TransferDump(
            schema_version=config.REPORT_SCHEMA_VERSION,
            n=n,
            max_arity=cfg.max_arity,
            layers=layers,
            entries=table.entries(),
        ).to_dict())
    write_json(dumps[0] if len(dumps) == 1 else {"schema_version": config.REPORT_SCHEMA_VERSION, "tables": dumps},
               cfg.out)
    return EXIT_OK


# ==================== Argument Parsing ====================

def add_common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, help="number of vertices of A_n")
    p.add_argument("--n-range", dest="n_range", help="range of n, e.g. 2..5")
    p.add_argument("--max-arity", dest="max_arity", type=int, default=config.MAX_ARITY)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=config.DELTA_SAMPLES, help="random cochains per arity")
    p.add_argument("--ceiling", type=int, help="longest path tried before a quotient counts as infinite")
    p.add_argument("--verbose", "-v", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zigzag", description="Exact GF(2) checks for zigzag algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="dump the block basis of an algebra")
    build.add_argument("algebra", choices=BUILD_NAMES)
    add_common(build)
    build.set_defaults(func=cmd_build)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("suite_name", nargs="?", default=None, metavar="suite",
                        help=f"one of {', '.join(SUITES)} or all")
    verify.add_argument("--suite", dest="suite_flag", help="same as the positional suite")
    verify.add_argument("--perturb", action="store_true", help="flip one documented input bit per suite")
    add_common(verify)
    verify.set_defaults(func=cmd_verify)

    transfer = sub.add_parser("transfer", help="dump the transferred A-infinity table")
    add_common(transfer)
    transfer.set_defaults(func=cmd_transfer)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if getattr(args, "suite_flag", None):
        if args.suite_name and args.suite_name != args.suite_flag:
            print("❌ conflicting suite names", file=sys.stderr)
            return EXIT_USAGE
        args.suite_name = args.suite_flag
    try:
        cfg = make_config(args)
    except (ValueError, ValidationError) as e:
        print(f"❌ Invalid arguments: {e}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.ceiling is not None:
        os.environ["ZIGZAG_CEILING"] = str(cfg.ceiling)
    try:
        return args.func(args, cfg)
    except AlgebraError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver: ``python -m vpf <command> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 unreadable input,
3 invalid rank or unsupported root-system selector, 4 point outside the cone.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction
from math import lcm
from pathlib import Path

from . import __version__
from .errors import InvalidRank, ParseError, PoleHit
from .evaluate import ChamberFormula, chamber_formulas, partition_table, verify_chamber, vpf_bruteforce, vpf_quasipoly
from .genfunc import DenominatorFactor, FractionSum, factor_latex, parse_fraction_sum_latex
from .geometry import Cone, chambers, cone_contains
from .pfd import decompose, parse_strategy
from .quasi import possible_period
from .rootsys import positive_roots

EXIT_MISMATCH, EXIT_PARSE, EXIT_RANK, EXIT_OUTSIDE = 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def read_vectors(path: str) -> list[tuple[int, ...]]:
    """JSON array of integer arrays, or one whitespace-separated row per line."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    stripped = text.strip()
    try:
        if stripped.startswith("["):
            rows = json.loads(stripped)
        else:
            rows = [[int(x) for x in line.replace(",", " ").split()]
                    for line in stripped.splitlines() if line.strip() and not line.startswith("#")]
    except (ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot parse {path}: {exc}") from exc
    if not rows or not all(isinstance(r, list) and r for r in rows):
        raise ParseError("expected a nonempty list of integer rows")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in rows for x in r):
        raise ParseError("entries must be integers")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ParseError("rows have different lengths")
    if any(not any(r) or min(r) < 0 for r in rows):
        raise ParseError("vectors must be nonzero with nonnegative entries")
    return [tuple(r) for r in rows]


def _input(args) -> tuple[list[tuple[int, ...]], str, str | None]:
    """(vectors, LaTeX header, label) from --vectors or --type/--rank."""
    if getattr(args, "vectors", None):
        vecs = read_vectors(args.vectors)
        header = "".join(factor_latex_plain(v) for v in vecs)
        return vecs, header, None
    if not args.type or args.rank is None:
        raise ParseError("give --vectors FILE or --type L --rank R")
    rs = positive_roots(args.type, args.rank)
    return list(rs.positive_roots), f"\\prod_{{\\alpha\\in {rs.label}_{rs.rank}}}\\frac{{1}}{{1-x^\\alpha}}", rs.name


def factor_latex_plain(v) -> str:
    return factor_latex(DenominatorFactor(tuple(v)))


def _strategy(args, label):
    return parse_strategy(args.strategy, label)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _rng_points(s: FractionSum, count: int, seed: int = 1):
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        pt = [Fraction(rng.randint(1, 50), rng.randint(51, 150)) for _ in range(s.dim)]
        try:
            s.substitute(pt)
        except PoleHit:
            continue
        pts.append(pt)
    return pts


def _default_box(n: int) -> list[tuple[int, int]]:
    return [(0, 8 if n <= 2 else 5)] * n


# -- commands -----------------------------------------------------------------

def cmd_decompose(args) -> int:
    vecs, header, label = _input(args)
    strategy = _strategy(args, label)
    res = decompose(FractionSum.product(vecs), strategy)
    if args.format == "latex":
        print(res.fractions.to_latex(header))
    else:
        print(_dump(res.to_json()))
    return 0


def cmd_chambers(args) -> int:
    vecs, _, _ = _input(args)
    print(_dump(chambers(vecs).to_json()))
    return 0


def cmd_kostant(args) -> int:
    rs = positive_roots(args.type, args.rank)
    if args.format == "latex":
        print(" ".join(factor_latex_plain(v) for v in rs.positive_roots))
    else:
        print(_dump(rs.to_json()))
    return 0


def _cache_path(args) -> Path | None:
    if getattr(args, "vectors", None):
        return Path(args.vectors).with_suffix(Path(args.vectors).suffix + ".vpfcache.json")
    return None


def _cache_key(vecs, strategy) -> str:
    blob = json.dumps({"vectors": [list(v) for v in vecs], "strategy": [strategy.kind, strategy.system]})
    return hashlib.sha256(blob.encode()).hexdigest()


def _load_cache(path: Path | None) -> dict:
    if path is None or not path.exists():
        return {}
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return {}


def cmd_evaluate(args) -> int:
    vecs, _, label = _input(args)
    try:
        pt = tuple(int(x) for x in args.point.split(","))
    except ValueError as exc:
        raise ParseError(f"point must be comma-separated integers: {args.point!r}") from exc
    if len(pt) != len(vecs[0]):
        raise ParseError("point dimension differs from the vectors")
    cone = Cone.from_generators(vecs)
    if not cone_contains(cone, pt):
        raise CliError(EXIT_OUTSIDE, f"{pt} is outside the cone spanned by the vectors")
    if args.mode == "oracle":
        print(vpf_bruteforce(vecs, pt))
        return 0
    strategy = _strategy(args, label)
    cc = chambers(vecs)
    idx = cc.locate(pt)[0]
    path = _cache_path(args)
    cache = _load_cache(path)
    key = f"{_cache_key(vecs, strategy)}:{idx}"
    if key in cache:
        cf = ChamberFormula.from_json(cache[key])
    else:
        cf = vpf_quasipoly(vecs, cc.chambers[idx], strategy)
        if path is not None:
            cache[key] = cf.to_json()
            try:
                path.write_text(json.dumps(cache, sort_keys=True))
            except OSError:
                pass
    val = cf.formula.evaluate(pt)
    print(val)
    return 0


def cmd_period(args) -> int:
    label = args.type.upper()
    if label not in "ABCDG":
        raise CliError(EXIT_RANK, f"period computation for type {label} is not supported")
    rs = positive_roots(label, args.rank)
    fs = chamber_formulas(rs.positive_roots, parse_strategy("minabs"))
    print(lcm(1, *(possible_period(f.formula) for f in fs)))
    return 0


def cmd_verify(args) -> int:
    vecs, _, label = _input(args)
    n = len(vecs[0])
    product = FractionSum.product(vecs)
    box = _default_box(n)
    report = {"checks": []}
    ok = True

    def record(name, passed, **extra):
        nonlocal ok
        ok = ok and passed
        report["checks"].append({"name": name, "passed": passed, **extra})

    if args.golden:
        try:
            golden = parse_fraction_sum_latex(Path(args.golden).read_text(), n)
            passed = golden.series(box) == product.series(box)
            for pt in _rng_points(product, 3):
                try:
                    passed = passed and golden.substitute(pt) == product.substitute(pt)
                except PoleHit:
                    pass
            record("golden", passed)
        except (OSError, ParseError, ValueError) as exc:
            record("golden", False, error=str(exc))
    else:
        res = decompose(product, _strategy(args, label))
        pts = _rng_points(product, 3)
        record("checksum", all(res.fractions.substitute(p) == product.substitute(p) for p in pts))
        record("series", res.fractions.series(box) == product.series(box))
        if args.box is not None:
            strategy = _strategy(args, label)
            cc = chambers(vecs)
            fs = chamber_formulas(vecs, strategy, cc)
            table = partition_table(vecs, [args.box] * n)
            reps = [verify_chamber(f, vecs, args.box, i, table) for i, f in enumerate(fs)]
            record("chambers", all(not r["mismatches"] for r in reps), reports=reps)
    print(_dump(report))
    return 0 if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vpf", description="Vector partition functions via partial fractions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_input(sp, strategy=True):
        sp.add_argument("--vectors", help="JSON or whitespace-separated integer rows")
        sp.add_argument("--type", help="root system type A-G")
        sp.add_argument("--rank", type=int, help="root system rank")
        if strategy:
            sp.add_argument("--strategy", default="minabs", help="minabs, nbc or classical")

    sp = sub.add_parser("decompose", help="partial fraction decomposition")
    add_input(sp)
    sp.add_argument("--format", choices=("json", "latex"), default="json")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("chambers", help="chamber complex as JSON")
    add_input(sp, strategy=False)
    sp.set_defaults(func=cmd_chambers)

    sp = sub.add_parser("evaluate", help="evaluate the partition function at a point")
    add_input(sp)
    sp.add_argument("--point", required=True, help="comma-separated integers")
    sp.add_argument("--mode", choices=("oracle", "formula"), default="formula")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("verify", help="checksum, series and oracle checks")
    add_input(sp)
    sp.add_argument("--box", type=int, default=None, help="check chamber formulas on [0, BOX]^n")
    sp.add_argument("--golden", help="LaTeX decomposition to check instead of computing one")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("period", help="lcm of the moduli over all chamber formulas")
    sp.add_argument("--type", required=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.set_defaults(func=cmd_period)

    sp = sub.add_parser("kostant", help="positive roots of a root system")
    sp.add_argument("--type", required=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--format", choices=("json", "latex"), default="json")
    sp.set_defaults(func=cmd_kostant)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InvalidRank as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANK
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

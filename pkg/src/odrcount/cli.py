"""Command-line front end: ``odrcount <command> [options]``.

Exit codes: 0 success, 1 a cross-check failed, 2 usage error, 3 capacity or search exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from . import partitions as P
from .charsum import (ClassFunction, check_convolution, check_ffft, check_finalc, check_inversion, check_orth,
                      check_tame_and_steinberg, tame_orbit_indicator)
from .countformulas import FormalType, NegativeDimension, OdRConfig, count_general, dimension, genericity_check
from .exactpoly import ExactPolynomial, ExactRationalFunction, interpolate
from .fforacle import (CapacityError, SearchExhausted, config_orders, enumerate_orbit, find_generic_tuple,
                       is_prime, iter_generic_tuples, odr_count, residue_histogram)
from .quiver import (DISPLAY, cartan_matrix, dim_Q, dynkin_classify, dynkin_example, quiver_fiber_count,
                     same_up_to_permutation, star_from_formal_types)
from .symfunc import (QT, conjectural_mhp, e_from_pure_part, e_polynomial_via_symfunc, macdonald_table,
                      pure_part)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
COMMANDS = ("count", "oracle", "symfunc", "mhp", "quiver", "generic", "charsum", "selftest")
CHARSUM_CHECKS = ("orth", "finalc", "ffft", "tame", "steinberg", "product", "inversion", "convolution")


@dataclass
class RunSpec:
    command: str
    config: OdRConfig | None = None
    primes: list[int] = field(default_factory=list)
    fmt: str = "json"
    cache_dir: Path | None = None
    options: dict = field(default_factory=dict)


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    latex: str | None = None
    rows: list[list] | None = None
    exit_code: int = EXIT_OK

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def final_exit_code(self) -> int:
        if self.exit_code != EXIT_OK:
            return self.exit_code
        return EXIT_OK if self.passed else EXIT_CHECK

    def to_json_obj(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "results": self.results,
                "checks": self.checks, "passed": self.passed, "timings": self.timings}


class UsageError(ValueError):
    pass


# argument parsing


def _parse_mu(text: str) -> tuple[P.Partition, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(P.parse_partition(part) for part in text.split(";"))


def _parse_ints(text: str) -> tuple[int, ...]:
    text = text.strip().strip("()")
    return tuple(int(x) for x in text.split(",") if x.strip()) if text else ()


def _parse_types(text: str, p: int) -> list[FormalType]:
    """Poles separated by ';', rows C_m/.../C_1 by '/', entries by ','."""
    types = []
    for pole in text.split(";"):
        rows = tuple(_parse_ints(row) for row in pole.split("/"))
        types.append(FormalType(rows, p))
    return types


def _add_config(sub: argparse.ArgumentParser, required: bool = True) -> None:
    sub.add_argument("--n", type=int, required=required, help="rank")
    sub.add_argument("--mu", default="", help='tame pole types, e.g. "(1,1);(1,1)"')
    sub.add_argument("--r", default="", help="Poincaré ranks of the irregular poles, e.g. 1,1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="odrcount", description="Counting polynomials of open de Rham spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--cache-dir", type=Path, default=None,
                        help="Macdonald table cache (default: $ODRCOUNT_CACHE or .cache/)")
    subs = parser.add_subparsers(dest="command", required=True)

    def sub(name, help_text):
        p = subs.add_parser(name, help=help_text)
        p.add_argument("--format", dest="fmt", choices=("json", "latex", "csv"), default="json")
        return p

    _add_config(sub("count", "closed-formula counting polynomial"))
    p = sub("oracle", "brute-force count over F_p")
    _add_config(p)
    p.add_argument("--prime", default="3", help="prime or comma-separated primes")
    p.add_argument("--witnesses", type=int, default=1, help="generic tuples per prime")
    p.add_argument("--strategy", choices=("A", "B"), default=None)
    p.add_argument("--seed", type=int, default=0)
    p = sub("symfunc", "Macdonald table, or the E-polynomial via symmetric functions")
    _add_config(p)
    p = sub("mhp", "conjectural mixed Hodge polynomial and its pure part")
    _add_config(p)
    p = sub("quiver", "star quiver with multiplicities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--example", choices=sorted(DISPLAY))
    g.add_argument("--from-types", help='formal types, e.g. "0,1/1,2;1,0/2,1" (rows C_m/.../C_1)')
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--verify", action="store_true", help="compare quiver and oracle point counts")
    p = sub("generic", "search for generic tuples over F_p")
    _add_config(p)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p = sub("charsum", "character-sum identities")
    p.add_argument("--check", choices=CHARSUM_CHECKS, required=True)
    p.add_argument("--prime", type=int, default=3)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=2, help="pole order for ffft/product")
    p.add_argument("--linear", default="1", help="orth: coefficient vector a")
    p.add_argument("--const", type=int, default=0, help="orth: constant b")
    p.add_argument("--beta", default="", help="finalc: vector β summing to zero")
    p.add_argument("--types", default=None, help="ffft: explicit formal type (rows C_m/.../C_1)")
    p.add_argument("--seed", type=int, default=0)
    sub("selftest", "run the acceptance suite")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> RunSpec:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return _validate(ns)
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))


def _validate(ns: argparse.Namespace) -> RunSpec:
    spec = RunSpec(ns.command, fmt=getattr(ns, "fmt", "json"), cache_dir=ns.cache_dir)
    config_keys = ("n", "mu", "r") if ns.command != "charsum" else ()
    opts = {k: v for k, v in vars(ns).items() if k not in ("command", "fmt", "cache_dir") + config_keys}
    spec.options = opts
    if ns.command in ("count", "oracle", "mhp", "generic") or (ns.command == "symfunc" and ns.r):
        cfg = OdRConfig(ns.n, _parse_mu(ns.mu), _parse_ints(ns.r))
        if cfg.s < 1:
            raise UsageError("at least one irregular pole is required (s >= 1); pass --r")
        if dimension(cfg) < 0:
            raise UsageError(f"dimension {dimension(cfg)} is negative for {cfg.label()}")
        spec.config = cfg
    elif ns.command == "symfunc":
        if ns.n < 1:
            raise UsageError("--n must be positive")
        spec.options["table_n"] = ns.n
    if ns.command == "oracle":
        spec.primes = list(_parse_ints(ns.prime))
    elif getattr(ns, "prime", None) is not None:
        spec.primes = [ns.prime]
    for p in spec.primes:
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
    if ns.command == "quiver":
        if ns.from_types and not spec.primes:
            raise UsageError("--from-types needs --prime")
        if ns.verify and not spec.primes:
            raise UsageError("--verify needs --prime")
    if spec.fmt == "latex" and ns.command not in ("count", "symfunc", "mhp"):
        raise UsageError(f"no LaTeX rendering for {ns.command}")
    if spec.fmt == "csv" and ns.command not in ("count", "oracle"):
        raise UsageError(f"no CSV rendering for {ns.command}")
    return spec


# commands


def _poly_json(poly: ExactPolynomial, names=None) -> dict:
    return {"text": poly.to_text(names), **poly.to_json_obj()}


def _rf_json(f: ExactRationalFunction, names) -> dict:
    if f.is_polynomial():
        return _poly_json(f.as_polynomial(), names)
    return {"text": f.to_text(names), "num": f.num.to_json_obj(), "den": f.den.to_json_obj()}


def _config_json(cfg: OdRConfig) -> dict:
    return {"n": cfg.n, "mu": [P.format_partition(m) for m in cfg.mu], "r": list(cfg.r)}


def _poly_rows(poly: ExactPolynomial) -> list[list]:
    return [["exponent", "coefficient"]] + [[e[0], str(c)] for e, c in sorted(poly.coeffs.items())]


def run_count(spec: RunSpec, report: RunReport) -> None:
    poly = count_general(spec.config)
    report.results = {"dimension": dimension(spec.config), "weight_polynomial": _poly_json(poly),
                      "monic": poly.is_monic()}
    report.checks["monic_of_dimension_degree"] = poly.is_monic() and poly.degree() == dimension(spec.config)
    report.latex = poly.to_latex()
    report.rows = _poly_rows(poly)


def run_oracle(spec: RunSpec, report: RunReport) -> None:
    cfg, opts = spec.config, spec.options
    formula = count_general(cfg)
    orders, blocks = config_orders(cfg)
    runs, points, skipped = [], [], []
    rows = [["prime", "witness", "count", "formula", "match"]]
    for p in spec.primes:
        found = 0
        try:
            for types in iter_generic_tuples(cfg.n, orders, p, blocks, opts["seed"]):
                if found == opts["witnesses"]:
                    break
                start = time.perf_counter()
                res = odr_count(types, p, opts["strategy"])
                report.timings[f"p={p} witness={found}"] = time.perf_counter() - start
                want = int(formula.evaluate(p))
                runs.append({"prime": p, "witness": found, "tuple": [[list(r) for r in t.rows] for t in types],
                             "orbit_sizes": res.orbit_sizes, "strategies": res.strategies, "fiber": res.fiber,
                             "count": res.count, "formula": want})
                report.checks[f"p={p} witness={found}"] = res.count == want
                rows.append([p, found, res.count, want, res.count == want])
                if found == 0:
                    points.append((p, res.count))
                found += 1
        except SearchExhausted:
            pass
        if not found:
            skipped.append(p)
    report.results = {"formula": _poly_json(formula), "runs": runs, "skipped_primes": skipped}
    if len(points) >= formula.degree() + 1:
        rebuilt = interpolate(points, formula.degree())
        report.results["interpolated"] = _poly_json(rebuilt)
        report.checks["interpolation"] = rebuilt == formula
    report.rows = rows
    if not runs:
        report.exit_code = EXIT_CAPACITY
        report.results["error"] = f"no generic tuple for {cfg.label()} at primes {spec.primes}"


def run_symfunc(spec: RunSpec, report: RunReport) -> None:
    if spec.config is None:
        table = macdonald_table(spec.options["table_n"], spec.cache_dir)
        report.results = table.to_json_obj()
        bad = table.check_invariants()
        report.checks["table_invariants"] = not bad
        if bad:
            report.results["violations"] = bad
        lines = [f"\\tilde H_{{{P.format_partition(lam)}}} = "
                 + " + ".join(f"({k.to_latex(('q', 't'))}) s_{{{P.format_partition(mu)}}}" for mu, k in row.items())
                 for lam, row in sorted(table.ktable.items(), key=lambda t: (sum(t[0]), t[0]))]
        report.latex = "\n".join(lines)
        return
    table = macdonald_table(spec.config.n, spec.cache_dir)
    e_poly = e_polynomial_via_symfunc(spec.config, table)
    formula = count_general(spec.config)
    report.results = {"e_polynomial": _poly_json(e_poly), "formula": _poly_json(formula)}
    report.checks["symfunc_equals_formula"] = e_poly == formula
    report.latex = e_poly.to_latex()


def run_mhp(spec: RunSpec, report: RunReport) -> None:
    cfg = spec.config
    table = macdonald_table(cfg.n, spec.cache_dir)
    full = conjectural_mhp(cfg, table)
    report.results = {"mixed_hodge_polynomial": _rf_json(full, QT)}
    if full.is_polynomial():
        pure = pure_part(full)
        e_pure = e_from_pure_part(pure, dimension(cfg))
        report.results["pure_part"] = _poly_json(pure, QT)
        report.results["e_polynomial_from_pure_part"] = _poly_json(e_pure)
        report.checks["pure_part_matches_formula"] = e_pure == count_general(cfg)
        report.latex = full.as_polynomial().to_latex(QT)
    else:
        report.checks["polynomial"] = False


def run_quiver(spec: RunSpec, report: RunReport) -> None:
    opts = spec.options
    p = spec.primes[0] if spec.primes else None
    if opts["example"]:
        ex = dynkin_example(opts["example"])
        Q, types, cfg = ex.quiver, None, ex.config
        report.results["example"] = {"label": ex.label, "display": ex.display, "config": _config_json(cfg),
                                     "count": _poly_json(ex.count)}
    else:
        types = _parse_types(opts["from_types"], p)
        Q, _ = star_from_formal_types(types)
        cfg = None
    cartan = cartan_matrix(Q)
    report.results.update({"quiver": Q.to_json_obj(), "cartan": cartan.tolist(), "label": dynkin_classify(Q),
                           "dimension": dim_Q(Q)})
    if not opts["verify"]:
        return
    if types is None:
        orders, blocks = config_orders(cfg)
        types = find_generic_tuple(cfg.n, orders, p, blocks)
    ok, witness = genericity_check(types)
    if not ok:
        raise UsageError(f"formal types are not generic: {witness}")
    Qt, gamma = star_from_formal_types(types)
    qc = quiver_fiber_count(Qt, gamma, p)
    oracle = odr_count(types, p)
    verify = {"prime": p, "tuple": [[list(r) for r in t.rows] for t in types], "quiver_count": qc.count,
              "quiver_fiber": qc.fiber, "group_order": qc.group_order, "oracle_count": oracle.count}
    report.checks["quiver_equals_oracle"] = qc.count == oracle.count
    report.checks["same_quiver"] = same_up_to_permutation(cartan_matrix(Qt), cartan)
    if cfg is not None:
        verify["formula"] = int(ex.count.evaluate(p))
        report.checks["quiver_equals_formula"] = qc.count == verify["formula"]
    report.results["verify"] = verify


def run_generic(spec: RunSpec, report: RunReport) -> None:
    cfg, opts, p = spec.config, spec.options, spec.primes[0]
    orders, blocks = config_orders(cfg)
    found = []
    for types in iter_generic_tuples(cfg.n, orders, p, blocks, opts["seed"]):
        found.append([[list(r) for r in t.rows] for t in types])
        if len(found) == opts["count"]:
            break
    report.results = {"prime": p, "orders": orders, "tuples": found}
    if not found:
        report.exit_code = EXIT_CAPACITY
        report.results["error"] = f"no generic tuple over F_{p}: p too small"


def _random_type(n: int, m: int, p: int, seed: int) -> FormalType:
    import random

    rng = random.Random(seed)
    if n > p:
        raise UsageError(f"a regular leading term of rank {n} needs p >= {n}")
    rows = ((tuple(rng.sample(range(p), n)),) + tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(m - 2))
            + (tuple(rng.randrange(p) for _ in range(n)),))
    return FormalType(rows, p)


def run_charsum(spec: RunSpec, report: RunReport) -> None:
    o = spec.options
    p, n, m, check = o["prime"], o["n"], o["m"], o["check"]
    if check == "orth":
        results = [check_orth(p, _parse_ints(o["linear"]), o["const"])]
    elif check == "finalc":
        results = [check_finalc(_parse_ints(o["beta"]), p)]
    elif check == "ffft":
        C = _parse_types(o["types"], p)[0] if o["types"] else _random_type(n, m, p, o["seed"])
        results = [check_ffft(C)]
    elif check in ("tame", "steinberg", "product"):
        results = [r for r in check_tame_and_steinberg(p, n, m, o["seed"]) if r.name == check]
    elif check == "inversion":
        results = [check_inversion(ClassFunction.from_integer_values(n, p, tame_orbit_indicator(
            [i % p for i in range(n)], p)))]
    else:
        h1 = residue_histogram(enumerate_orbit(_random_type(n, m, p, o["seed"])))
        h2 = residue_histogram(enumerate_orbit(_random_type(n, 1, p, o["seed"] + 1)))
        results = [check_convolution(h1, h2)]
    report.results = {"verdicts": [r.to_json_obj() for r in results]}
    for r in results:
        report.checks[r.name] = r.passed


def run_selftest(spec: RunSpec, report: RunReport) -> None:
    from .selftest import CRITERIA, structural_properties, symfunc_route

    lines = []
    for crit in CRITERIA:
        res = crit(cache_dir=spec.cache_dir) if crit in (symfunc_route, structural_properties) else crit()
        print(res.line(), file=sys.stderr, flush=True)
        lines.append(res.to_json_obj())
        report.checks[f"criterion {res.number}"] = res.ok
        report.timings[f"criterion {res.number}"] = res.seconds
    report.results = {"criteria": lines}


RUNNERS = {"count": run_count, "oracle": run_oracle, "symfunc": run_symfunc, "mhp": run_mhp,
           "quiver": run_quiver, "generic": run_generic, "charsum": run_charsum, "selftest": run_selftest}


def run(spec: RunSpec) -> RunReport:
    inputs = {"command": spec.command, "primes": spec.primes,
              "options": {k: v for k, v in sorted(spec.options.items()) if v is not None}}
    if spec.config is not None:
        inputs["config"] = _config_json(spec.config)
    report = RunReport(spec.command, inputs)
    start = time.perf_counter()
    try:
        RUNNERS[spec.command](spec, report)
    except (CapacityError, SearchExhausted) as exc:
        report.exit_code = EXIT_CAPACITY
        report.results["error"] = str(exc)
    report.timings["total"] = time.perf_counter() - start
    return report


def render(report: RunReport, fmt: str) -> str:
    if fmt == "latex":
        return report.latex or ""
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(report.rows or [])
        return buf.getvalue().rstrip("\n")
    return json.dumps(report.to_json_obj(), indent=2, sort_keys=True, default=str)


def main(argv: Sequence[str] | None = None) -> int:
    spec = parse_args(argv)
    try:
        report = run(spec)
    except (UsageError, NegativeDimension, KeyError, ValueError) as exc:
        print(f"odrcount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(report, spec.fmt))
    return report.final_exit_code()


if __name__ == "__main__":
    sys.exit(main())

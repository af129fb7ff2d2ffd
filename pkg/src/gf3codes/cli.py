"""Command-line surface: every verification run scriptable and seeded.

Exit codes follow one contract across commands so CI can assert claims
directly: 0 = optimal / confirmed / success, 1 = not optimal (or, for
``equiv``, coset-distinct; for ``identities``, some case failed),
2 = precondition failed, 3 = usage or budget error, 4 = time budget
exceeded.  JSON output opens with a header carrying the artifact
version, seed, and budgets; with --no-timings the bytes are identical
across runs of the same command, flags, and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import __version__
from .code import CodeSpec, build_report
from .cosets import coset, same_coset
from .equivalence import TABLE_KINDS, classify, table_rows
from .field import ENUM_CAP
from .optimality import (
    GCD_DEGREE_CAP,
    IDENTITY_CASES,
    SCAN_FAMILIES,
    check_optimality,
    pick_strategy,
    reproduce_counterexample,
    verify_identity,
)
from .poly import PolyF3, factor, parse_poly

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PRECONDITION = 2
EXIT_ERROR = 3
EXIT_TIMEOUT = 4

_CONCLUSION_EXIT = {
    "optimal": EXIT_OK,
    "not-optimal": EXIT_NEGATIVE,
    "precondition-failed": EXIT_PRECONDITION,
}


class BudgetExceeded(Exception):
    pass


@dataclass
class RunConfig:
    seed: int
    output: str  # text | json | csv
    timings: bool
    threads: int
    max_enum_m: int
    max_poly_degree: int
    time_limit: Optional[float]
    started: float

    def budgets(self) -> dict:
        return {
            "max_enum_m": self.max_enum_m,
            "max_poly_degree": self.max_poly_degree,
            "time_limit_seconds": self.time_limit,
        }

    def check_deadline(self) -> None:
        if self.time_limit and time.perf_counter() - self.started > self.time_limit:
            raise BudgetExceeded(f"time budget {self.time_limit}s exceeded")

    def check_instance(self, m: int, e: int, strategy: str) -> None:
        """Reject work the configured budgets cannot cover, before it starts."""
        chosen = pick_strategy(m, e, strategy)
        if chosen == "exhaustive" and m > self.max_enum_m:
            raise BudgetExceeded(
                f"m={m} exceeds the enumeration budget (max_enum_m="
                f"{self.max_enum_m})"
            )
        if chosen == "gcd" and e > self.max_poly_degree:
            raise BudgetExceeded(
                f"e={e} exceeds the polynomial budget (max_poly_degree="
                f"{self.max_poly_degree})"
            )


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _env_float(name: str) -> Optional[float]:
    raw = os.environ.get(name)
    return float(raw) if raw else None


def _emit(cfg: RunConfig, command: str, result: dict, text_lines: list) -> None:
    if cfg.output == "json":
        doc = {
            "header": {
                "version": __version__,
                "command": command,
                "seed": cfg.seed,
                "budgets": cfg.budgets(),
            },
            "result": result,
        }
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k != "timings"}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _report_obj(cfg: RunConfig, rep) -> dict:
    obj = rep.to_json_obj(with_timings=cfg.timings)
    return obj if cfg.timings else _strip_timings(obj)


def _report_text(rep) -> list:
    v = rep.verdict
    d_rel = "<=" if rep.d_status == "upper-bound" else "="
    d_val = rep.d_value if rep.d_value is not None else "?"
    lines = [
        f"code m={rep.spec.m} u={rep.spec.u} v={rep.spec.v}: "
        f"[{rep.n}, {rep.k}, d{d_rel}{d_val}] ({rep.d_status})",
        f"  preconditions: e outside coset of 1: {v.e_not_in_c1}; "
        f"coset size {v.coset_size} (need {rep.spec.m})",
    ]
    if v.q1 is not None:
        lines.append(
            f"  conditions: even={v.q1}  "
            f"unique-root-at-1={v.q2.holds} (roots {v.q2.root_count})  "
            f"unique-root-at-0={v.q3.holds} (roots {v.q3.root_count})  "
            f"[{v.q2.strategy}]"
        )
        for tag, cond in (("at-1", v.q2), ("at-0", v.q3)):
            if cond.extra_root is not None:
                lines.append(
                    f"    extra root ({tag}): packed {cond.extra_root} = "
                    f"{cond.extra_root_rep}"
                )
    if rep.witness is not None:
        w = rep.witness
        lines.append(
            f"  weight-{w.weight} codeword: positions {list(w.positions)} "
            f"coeffs {list(w.coeffs)}"
        )
    elif rep.oracle_ran:
        lines.append("  weight search: no codeword of weight <= 3")
    lines.append(f"  sphere packing allows d <= {rep.spb_max_d}")
    if rep.generator is not None:
        lines.append(f"  generator: {rep.generator}")
    for note in rep.notes:
        lines.append(f"  note: {note}")
    lines.append(f"  conclusion: {rep.conclusion}")
    return lines


# ----------------------------------------------------------------- commands


def cmd_check(cfg: RunConfig, args) -> int:
    n = 3**args.m - 1
    if args.u == 1 and 1 <= args.e < n and same_coset(n, 1, args.e):
        # the construction itself degenerates; report the precondition
        # verdict rather than refusing the parameters outright
        verdict = check_optimality(args.m, args.e)
        lines = [
            f"code m={args.m} u=1 v={args.e}: defining exponents share a "
            "cyclotomic coset — the criterion's preconditions fail",
            "  conclusion: precondition-failed",
        ]
        _emit(cfg, "check", verdict.to_json_obj(), lines)
        return EXIT_PRECONDITION
    cfg.check_instance(args.m, args.e, args.strategy)
    rep = build_report(
        CodeSpec(m=args.m, u=args.u, v=args.e),
        strategy=args.strategy,
        seed=cfg.seed,
    )
    _emit(cfg, "check", _report_obj(cfg, rep), _report_text(rep))
    return _CONCLUSION_EXIT[rep.conclusion]


def _load_poly(args) -> PolyF3:
    if args.binomial_e is not None:
        from .optimality import q2_poly, q3_poly

        return q2_poly(args.binomial_e) if args.plus else q3_poly(args.binomial_e)
    text = args.poly
    if text is None:
        raise ValueError("give a polynomial, or --binomial-e")
    path = Path(text)
    if path.is_file():
        text = path.read_text().strip()
    return parse_poly(text)


def cmd_factor(cfg: RunConfig, args) -> int:
    p = _load_poly(args)
    if p.degree > cfg.max_poly_degree:
        raise BudgetExceeded(
            f"degree {p.degree} exceeds max_poly_degree={cfg.max_poly_degree}"
        )
    t0 = time.perf_counter()
    fm = factor(p, seed=cfg.seed)
    elapsed = time.perf_counter() - t0
    irred = len(fm.factors) == 1 and fm.factors[0][1] == 1 and fm.unit == 1
    result = {
        "input_degree": p.degree,
        "unit": fm.unit,
        "irreducible": irred,
        "factors": fm.to_json_obj(),
        "display": str(fm),
    }
    if cfg.timings:
        result["timings"] = {"factor": round(elapsed, 6)}
    lines = [f"degree {p.degree}", f"{fm}"]
    lines.append("irreducible" if irred else f"{len(fm.factors)} distinct factors")
    _emit(cfg, "factor", result, lines)
    return EXIT_OK


def cmd_identities(cfg: RunConfig, args) -> int:
    reports = []
    t0 = time.perf_counter()
    for case in IDENTITY_CASES:
        reports.append(verify_identity(case, seed=cfg.seed))
        cfg.check_deadline()
    elapsed = time.perf_counter() - t0
    all_ok = all(r.ok for r in reports)
    result = {"cases": [r.to_json_obj() for r in reports], "all_ok": all_ok}
    if cfg.timings:
        result["timings"] = {"total": round(elapsed, 6)}
    lines = []
    for r in reports:
        status = "PASS" if r.ok else "FAIL"
        lines.append(f"{status}  {r.case_id:<12} degree {r.degree:<4} unit {r.unit}")
        lines.append(f"      factors: {r.factors}")
        if r.first_mismatch:
            lines.append(f"      mismatch: {r.first_mismatch}")
    lines.append(f"{sum(r.ok for r in reports)}/{len(reports)} identities verified")
    _emit(cfg, "identities", result, lines)
    return EXIT_OK if all_ok else EXIT_NEGATIVE


def cmd_scan(cfg: RunConfig, args) -> int:
    rows = []
    # materialize instances first so budget failures surface before work
    pairs = list(_scan_instances(args))
    for inst in pairs:
        cfg.check_instance(inst["m"], inst["e"], args.strategy)
    with ThreadPoolExecutor(max_workers=max(1, cfg.threads)) as pool:
        futures = [
            pool.submit(
                build_report,
                CodeSpec(m=inst["m"], u=1, v=inst["e"]),
                strategy=args.strategy,
                seed=cfg.seed,
            )
            for inst in pairs
        ]
        for inst, fut in zip(pairs, futures):
            rows.append((inst, fut.result()))
            cfg.check_deadline()
    result = {
        "family": args.family,
        "rows": [
            {"instance": inst, "report": _report_obj(cfg, rep)}
            for inst, rep in rows
        ],
    }
    lines = [f"family {args.family}: {len(rows)} instance(s)"]
    for inst, rep in rows:
        place = f"h={inst['h']}" if inst["h"] is not None else f"n={inst['n_shift']}"
        lines.append(
            f"  m={inst['m']:<3} {place:<5} e={inst['e']:<8} -> {rep.conclusion}"
            f" [{rep.n}, {rep.k}, {rep.d_value}] ({rep.d_status})"
        )
    _emit(cfg, "scan", result, lines)
    worst = EXIT_OK
    for _, rep in rows:
        worst = max(worst, _CONCLUSION_EXIT[rep.conclusion])
    return worst


def _scan_instances(args):
    from .optimality import _coset_power_instances, _h13_instances

    if args.family in ("h13-shift27", "h13-shift3"):
        return _h13_instances(args.family, args.m_max, args.m_min)
    if args.family in ("coset2", "coset4"):
        return _coset_power_instances(args.family, args.m_max, args.m_min)
    raise ValueError(
        f"unknown scan family {args.family!r}; known: {', '.join(SCAN_FAMILIES)}"
    )


def cmd_equiv(cfg: RunConfig, args) -> int:
    v = classify(args.m, args.e1, args.e2)
    lines = [f"{v.relation}" + (f" (rotation {v.rotation})" if v.rotation is not None else "")]
    lines.append(f"  basis: {v.basis}")
    lines.append(f"  reading: {v.interpretation}")
    _emit(cfg, "equiv", v.to_json_obj(), lines)
    return EXIT_OK if v.relation == "equivalent-same-coset" else EXIT_NEGATIVE


def _tables_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["type", "m", "h", "e", "conditions-met", "pairwise-relations"])
    for r in rows:
        w.writerow(
            [
                r.type,
                r.m,
                r.h,
                r.e,
                "; ".join(r.conditions),
                "; ".join(f"type-{t}: {rel}" for t, rel in r.pairwise),
            ]
        )
    return buf.getvalue().rstrip("\n")


def cmd_tables(cfg: RunConfig, args) -> int:
    rows = table_rows(args.kind, args.m_max, args.m_min)
    if cfg.output == "csv":
        print(_tables_csv(rows))
        return EXIT_OK
    result = {"kind": args.kind, "rows": [r.to_json_obj() for r in rows]}
    lines = [
        f"{'type':<5}{'m':<4}{'h':<4}{'e':<12}{'kind':<7}pairwise",
    ]
    for r in rows:
        pair = ", ".join(f"{t}:{rel.split('-')[0]}" for t, rel in r.pairwise)
        lines.append(
            f"{r.type:<5}{r.m:<4}{r.h:<4}{r.e:<12}{r.kind:<7}{pair}"
        )
    lines.append(f"{len(rows)} row(s)")
    _emit(cfg, "tables", result, lines)
    return EXIT_OK


def cmd_cosets(cfg: RunConfig, args) -> int:
    n = 3**args.m - 1
    if args.i is None:
        if args.m > 12:
            raise BudgetExceeded(
                "full coset enumeration above m=12 is not free; pass --i"
            )
        cosets, seen = [], set()
        for i in range(n):
            if i in seen:
                continue
            c = coset(n, i)
            seen.update(c.members)
            cosets.append(c)
    else:
        cosets = [coset(n, args.i)]
    result = {
        "m": args.m,
        "n": n,
        "cosets": [c.to_json_obj() for c in cosets],
    }
    lines = []
    for c in cosets:
        shown = ", ".join(str(x) for x in c.members[:8])
        more = "" if c.size <= 8 else f", ... ({c.size} members)"
        lines.append(f"coset({c.rep}) mod {n}: size {c.size}: {{{shown}{more}}}")
    if args.i is None:
        sizes = sorted({c.size for c in cosets})
        lines.append(f"{len(cosets)} cosets; sizes {sizes}")
    _emit(cfg, "cosets", result, lines)
    return EXIT_OK


def cmd_counterexample(cfg: RunConfig, args) -> int:
    def progress(i, total):
        print(f"cubing {i}/{total}", file=sys.stderr, flush=True)
        cfg.check_deadline()

    t0 = time.perf_counter()
    rep = reproduce_counterexample(
        progress=progress if not args.quiet else None,
        check_factor=not args.skip_factor_check,
    )
    elapsed = time.perf_counter() - t0
    result = rep.to_json_obj()
    if cfg.timings:
        result["timings"] = {"total": round(elapsed, 6)}
    lines = [
        f"roots of the degree-{rep.poly_degree} vanishing polynomial in "
        f"GF(3^{rep.m}): {rep.root_count}",
        f"uniqueness at the designated root: {'holds' if rep.q3_holds else 'fails'}",
    ]
    if not args.skip_factor_check:
        lines.append(
            f"stored degree-{rep.known_factor_degree} factor: divides="
            f"{rep.known_factor_divides} irreducible={rep.known_factor_irreducible}"
        )
    lines.append(f"conclusion: C_(1,{rep.e}) over GF(3^{rep.m}) is {rep.conclusion}")
    _emit(cfg, "counterexample", result, lines)
    return EXIT_OK if rep.ok else EXIT_ERROR


# -------------------------------------------------------------------- driver


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors, which this tool reserves for
    # precondition-failed verdicts; remap to the generic error code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed echoed in output")
    common.add_argument(
        "--output", choices=("text", "json", "csv"), default="text",
        help="csv applies to 'tables' only",
    )
    common.add_argument(
        "--no-timings", action="store_true",
        help="drop timing fields so identical runs emit identical bytes",
    )
    common.add_argument(
        "--threads", type=int,
        default=_env_int("GF3CODES_THREADS", os.cpu_count() or 1),
        help="parallel width for scan rows",
    )
    common.add_argument(
        "--max-enum-m", type=int,
        default=_env_int("GF3CODES_MAX_ENUM_M", ENUM_CAP),
        help="whole-field enumeration ceiling",
    )
    common.add_argument(
        "--max-poly-degree", type=int,
        default=_env_int("GF3CODES_MAX_POLY_DEGREE", GCD_DEGREE_CAP),
        help="dense-polynomial degree ceiling",
    )
    common.add_argument(
        "--time-limit-seconds", type=float,
        default=_env_float("GF3CODES_TIME_LIMIT_SECONDS"),
    )

    top = _Parser(
        prog="gf3codes",
        allow_abbrev=False,
        description=(
            "Verifiable toolkit for ternary two-zero cyclic codes: "
            "optimality criterion, identity suite, scans, equivalence "
            "tables, and the large-degree counterexample."
        ),
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="criterion verdict for one (m, e)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--u", type=int, default=1)
    p.add_argument("--strategy", choices=("auto", "exhaustive", "gcd"), default="auto")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("factor", parents=[common], help="factor a polynomial over GF(3)")
    p.add_argument("poly", nargs="?", help="polynomial text or a file path")
    p.add_argument("--binomial-e", type=int, help="build (x+1)^e ∓ x^e ∓ 1 instead")
    sign = p.add_mutually_exclusive_group()
    sign.add_argument("--minus", action="store_true", default=True,
                      help="(x+1)^e - x^e - 1 (default)")
    sign.add_argument("--plus", dest="plus", action="store_true",
                      help="(x+1)^e + x^e + 1")
    p.set_defaults(func=cmd_factor, plus=False)

    p = sub.add_parser("identities", parents=[common], help="verify the four combined-polynomial identities")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("scan", parents=[common], help="walk a parameter family")
    p.add_argument("--family", required=True, choices=SCAN_FAMILIES)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--m-min", type=int, default=3)
    p.add_argument("--strategy", choices=("auto", "exhaustive", "gcd"), default="auto")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("equiv", parents=[common], help="classify two defining exponents")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--e1", type=int, required=True)
    p.add_argument("--e2", type=int, required=True)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("tables", parents=[common], help="survey tables of the four (m, h) families")
    p.add_argument("--kind", choices=sorted(TABLE_KINDS), default="all")
    p.add_argument("--m-max", type=int, default=31)
    p.add_argument("--m-min", type=int, default=3)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("cosets", parents=[common], help="cyclotomic cosets mod 3^m - 1")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, help="one coset representative")
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser(
        "counterexample",
        parents=[common],
        help="reproduce the degree-773 disproof (progress on stderr)",
    )
    p.add_argument("--quiet", action="store_true", help="suppress progress lines")
    p.add_argument(
        "--skip-factor-check", action="store_true",
        help="skip dividing out and re-testing the stored witness factor",
    )
    p.set_defaults(func=cmd_counterexample)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = RunConfig(
        seed=args.seed,
        output=args.output,
        timings=not args.no_timings,
        threads=args.threads,
        max_enum_m=args.max_enum_m,
        max_poly_degree=args.max_poly_degree,
        time_limit=args.time_limit_seconds,
        started=time.perf_counter(),
    )
    if cfg.output == "csv" and args.command != "tables":
        print("error: --output csv is only available for 'tables'", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(cfg, args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT if "time budget" in str(exc) else EXIT_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

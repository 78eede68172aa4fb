"""Command line front end: every subcommand writes one JSON report.

Exit status is 0 when all checks pass, 2 when a check fails and 1 on usage or
configuration errors.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import centralizer as cz
from . import howe
from .coxeter import (
    CoxeterGroup,
    ParameterFunction,
    assumption_check,
    build_root_system,
    character_table,
    rep_model,
    resolve_label,
    unitarity_region_check,
)
from .errors import CherednikHoweError, ConfigParse
from .linalg import frac
from .module import MUTATIONS, KModule
from .report import build_report, dumps, header
from .spo import hook_bijection_check, verify_realization

EXIT_PASS, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    group: Optional[str]
    c: List[str]
    tau: str = "triv"
    degree: int = 8
    out: Optional[str] = None
    threads: int = 1
    seed: int = 0
    mutations: Tuple[str, ...] = ()
    char_table: Optional[str] = None
    rep: Optional[str] = None
    extra: dict = field(default_factory=dict)


def parse_c(text: str) -> List[str]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ConfigParse(f"empty parameter list {text!r}")
    for p in parts:
        try:
            frac(p)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ConfigParse(f"parameter {p!r} is not a rational number") from exc
    return parts


def _config(args) -> RunConfig:
    cfg = RunConfig(
        group=getattr(args, "group", None),
        c=parse_c(args.c) if getattr(args, "c", None) is not None else ["0"],
        tau=getattr(args, "tau", "triv") or "triv",
        degree=args.degree,
        out=args.out,
        threads=max(1, args.threads),
        seed=args.seed,
        mutations=tuple(getattr(args, "mutate", None) or ()),
        char_table=getattr(args, "char_table", None),
        rep=getattr(args, "rep", None),
    )
    if args.command not in ("hook", "unitarity-scan") and cfg.degree < 4:
        raise ConfigParse("truncation degree N must be at least 4")
    if args.command != "hook" and not cfg.group:
        raise ConfigParse("--group is required")
    return cfg


class Setting:
    """Root system, group, table and tau shared by one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.rs = build_root_system(cfg.group)
        self.group = CoxeterGroup(self.rs)
        self.table = character_table(self.rs, self.group, cfg.char_table)
        self.tau = rep_model(self.rs, self.group, cfg.tau, self.table, cfg.rep)
        if cfg.rep is None:
            resolve_label(self.table, cfg.tau)

    def params(self, values) -> ParameterFunction:
        try:
            return ParameterFunction.make(self.rs, values)
        except ValueError as exc:
            raise ConfigParse(str(exc)) from exc

    def module(self, values, mutations=()) -> KModule:
        return KModule(self.rs, self.params(values), self.tau, self.group, self.table, mutations)

    def verdict(self, c: ParameterFunction):
        try:
            return assumption_check(self.rs, c, self.tau.label, self.table)
        except CherednikHoweError:
            return None

    def header(self, command: str, c: Optional[ParameterFunction]):
        return header(command, self.rs, self.group, c, self.cfg.tau, self.cfg.degree, self.verdict(c) if c is not None else None)


def _map(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(i) for i in items]


# subcommands ------------------------------------------------------------

def cmd_verify_spo(cfg: RunConfig) -> dict:
    st = Setting(cfg)
    K = st.module(cfg.c, cfg.mutations)
    return build_report(st.header("verify-spo", K.c), [verify_realization(K, cfg.degree, cfg.threads)])


def cmd_decompose(cfg: RunConfig) -> dict:
    st = Setting(cfg)
    K = st.module(cfg.c)
    n = cfg.degree
    sections = [howe.sl2_table(K, n)]
    if not cfg.extra.get("sl2_only"):
        lw = howe.lowest_weight_spaces(K, n)
        table = [
            {"block": [m, l], "sigma": lab, "dim": d}
            for (m, l, lab), d in sorted(lw.dims().items())
        ]
        sections.append({"name": "lowest_weight_spaces", "status": "pass", "dims": table})
        sections.append(howe.verify_support(K, lw))
        sections.append(howe.verify_main_theorem(K, n, lw))
        if cfg.extra.get("structural"):
            sections.append(howe.verify_row_decomposition(K, n))
            sections.append(howe.verify_h_decomposition(K, n, lw))
            sections.append(howe.verify_exactness(K, n))
        if cfg.extra.get("compare_zero"):
            sections.append(howe.verify_c_comparison(K, st.module("0"), n))
    return build_report(st.header("decompose", K.c), sections)


def cmd_unitarity(cfg: RunConfig) -> dict:
    st = Setting(cfg)
    grid = cfg.extra.get("grid") or [cfg.c]
    rows = []
    ok = True
    for values in grid:
        K = st.module(values)
        predicted, margins = unitarity_region_check(st.rs, K.c, st.table)
        degrees = []
        first = None
        for m in range(cfg.degree + 1):
            p = K.gram_positivity(m)
            degrees.append({"m": m, "status": p.status, "kernel_dim": p.kernel_dim})
            if first is None and not p.positive_definite:
                first = {"m": m, "status": p.status, "pivot_index": p.failing_index, "pivots": [str(x) for x in p.pivots]}
        computed = first is None
        row = {
            "c": K.c.label(),
            "gram_positive_definite": computed,
            "predicted_unitary": predicted,
            "margins": {lab: str(v) for lab, v in sorted(margins.items())},
            "degrees": degrees,
            "status": "pass" if computed == predicted else "fail",
        }
        if first is not None:
            row["first_failure"] = first
        if computed != predicted:
            ok = False
            row["witness"] = first or {"margins": row["margins"]}
        rows.append(row)
    section = {"name": "unitarity_scan", "status": "pass" if ok else "fail", "max_degree": cfg.degree, "rows": rows}
    head = st.header("unitarity-scan", None)
    return build_report(head, [section])


def cmd_centralizer(cfg: RunConfig) -> dict:
    st = Setting(cfg)
    K = st.module(cfg.c, cfg.mutations)
    n = cfg.degree
    jobs = [
        lambda: cz.verify_sl2_commute(K, n),
        lambda: cz.verify_u_relation(K, n),
        lambda: cz.verify_dirac(K, n, cfg.seed),
        lambda: cz.verify_f_dual(K, n),
        lambda: cz.verify_f_centralizes(K, n),
        lambda: cz.class_sum_commutation(K, n),
    ]
    sections = _map(lambda f: f(), jobs, cfg.threads)
    return build_report(st.header("centralizer", K.c), sections)


def cmd_hook(cfg: RunConfig) -> dict:
    r = cfg.extra.get("rank")
    rs = None
    if r is None:
        if not cfg.group:
            raise ConfigParse("hook needs --rank or --group")
        rs = build_root_system(cfg.group)
        r = rs.rank
    sect = hook_bijection_check(r, cfg.degree)
    if sect["status"] == "fail":
        sect["witness"] = {"r": r, "cap": cfg.degree}
    head = header("hook", rs, None, None, None, cfg.degree, None)
    head["r"] = r
    return build_report(head, [sect])


def cmd_assumption(cfg: RunConfig) -> dict:
    st = Setting(cfg)
    c = st.params(cfg.c)
    v = assumption_check(st.rs, c, st.tau.label, st.table)
    sect = {"name": "assumption", "status": "pass" if v.generic else "fail", "generic": v.generic, "strong": v.strong}
    if not v.generic:
        sect["witness"] = {"violations": list(v.violations)}
    return build_report(st.header("assumption-check", c), [sect])


COMMANDS = {
    "verify-spo": cmd_verify_spo,
    "decompose": cmd_decompose,
    "unitarity-scan": cmd_unitarity,
    "centralizer": cmd_centralizer,
    "hook": cmd_hook,
    "assumption-check": cmd_assumption,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cherednik-howe", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, group=True, default_degree=8):
        if group:
            sp.add_argument("--group", help="group spec, e.g. A1, A1xA1, B:2, Sym:3, G2, file:roots.json")
            sp.add_argument("--c", help='parameter values, one per orbit, e.g. "1/3" or "1/3,1/7"')
            sp.add_argument("--tau", default="triv", help="irreducible label (ignored when --rep is given)")
            sp.add_argument("--char-table", dest="char_table", help="character table JSON file")
            sp.add_argument("--rep", help="explicit representation JSON file")
        sp.add_argument("--degree", type=int, default=default_degree, help="truncation degree N")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled identities")

    sp = sub.add_parser("verify-spo", help="all 36 super-brackets of the realized generators")
    common(sp)
    sp.add_argument("--mutate", action="append", choices=MUTATIONS)
    sp = sub.add_parser("decompose", help="lowest weight vectors and the decomposition of K")
    common(sp)
    sp.add_argument("--sl2-only", dest="sl2_only", action="store_true", help="only the l = 0 sl(2) harmonics")
    sp.add_argument("--structural", action="store_true", help="also row, harmonic and exactness checks")
    sp.add_argument("--compare-zero", dest="compare_zero", action="store_true", help="compare dimension tables with c = 0")
    sp = sub.add_parser("unitarity-scan", help="Gram positivity of M_c(tau) over a list of parameters")
    common(sp, default_degree=10)
    sp.add_argument("--c-grid", dest="c_grid", help='parameters separated by ";", e.g. "-1;0;1/3"')
    sp = sub.add_parser("centralizer", help="X_ij, F_ij and Dirac identities")
    common(sp)
    sp.add_argument("--mutate", action="append", choices=MUTATIONS)
    sp = sub.add_parser("hook", help="bidegree/hook bijection")
    common(sp, group=False, default_degree=10)
    sp.add_argument("--rank", type=int)
    sp.add_argument("--group")
    sp = sub.add_parser("assumption-check", help="genericity conditions on (c, tau)")
    common(sp)
    return p


def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, str]:
    """Parse, execute and serialize; returns (exit status, report text)."""
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    if getattr(args, "c_grid", None):
        cfg.extra["grid"] = [parse_c(x) for x in args.c_grid.split(";") if x.strip()]
    for key in ("sl2_only", "structural", "compare_zero", "rank"):
        if getattr(args, key, None):
            cfg.extra[key] = getattr(args, key)
    report = COMMANDS[args.command](cfg)
    text = dumps(report)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return (EXIT_PASS if report["status"] == "pass" else EXIT_FAIL), text


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        code, text = run(argv)
    except (CherednikHoweError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    argv = sys.argv[1:] if argv is None else list(argv)
    if not any(a == "--out" or a.startswith("--out=") for a in argv):
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

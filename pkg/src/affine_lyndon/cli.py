"""Command-line frontend: ``affine-lyndon <command> --type F4 --order 0,2,4,1,3 ...``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import chains as ch
from .errors import AffineLyndonError, DepthError, UsageError
from .leclerc import (
    DEFAULT_DEPTH_CAP,
    SLTable,
    default_cache_dir,
    load_table,
    save_table,
)
from .root_core import FiniteType, build_system, classify, decompositions, REAL
from .verify import SUITES, SuiteConfig, check_tables, run_suite, VerificationReport
from .words import LetterOrder, Word

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_DEPTH = 0, 1, 2, 3
DESK_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2", "F4")
LONG_TYPES = ("E6", "E7", "E8")
JSON_SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 already; keep the message on stderr
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _word_json(w: Word) -> dict:
    out = {"letters": w.serialize()}
    if w.order.size <= 10:
        out["compact"] = w.compact()
    return out


def _vec(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError:
        raise UsageError(f"cannot parse vector {text!r}") from None


# -- configuration --------------------------------------------------------------------


def _finite_type(args) -> FiniteType:
    if args.type is None:
        raise UsageError("--type is required")
    text = args.type.strip()
    if text[1:].isdigit():
        ft = FiniteType.parse(text)
        if args.rank is not None and args.rank != ft.rank:
            raise UsageError(f"--rank {args.rank} contradicts --type {text}")
        return ft
    if args.rank is None:
        raise UsageError("--rank is required when --type names only the family")
    return FiniteType(text.upper(), args.rank)


def _order(args, size: int) -> LetterOrder:
    if args.order is None:
        return LetterOrder.standard(size)
    return LetterOrder.parse(args.order, size)


def _table(args, need: int = 1) -> SLTable:
    system = build_system(_finite_type(args))
    order = _order(args, system.rank + 1)
    cap = args.depth_cap or DEFAULT_DEPTH_CAP
    table = None
    if not args.no_cache:
        table = load_table(args.cache_path or default_cache_dir(), system, order, cap)
    if table is None:
        table = SLTable(system, order, cap)
    table.ensure(max(1, need))
    return table


def _degree(args, table: SLTable) -> tuple[int, ...]:
    if args.mod_delta is not None:
        base, k = _vec(args.mod_delta[0]), int(args.mod_delta[1])
        if len(base) != table.rank + 1:
            raise UsageError(f"base must have {table.rank + 1} coordinates")
        return tuple(b + k * m for b, m in zip(base, table.system.marks))
    text = args.degree_opt or args.degree
    if text is None:
        raise UsageError("a degree is required (positional, --degree, or --mod-delta)")
    return _vec(text)


def _level_of(table: SLTable, degree) -> int:
    _, m, beta = table.parse_degree(degree)
    return table.level_needed(m, beta)


def _real_table(args):
    table = _table(args)
    degree = _degree(args, table)
    table.ensure(_level_of(table, degree))
    return table, degree


# -- commands ---------------------------------------------------------------------------


def cmd_gen(args, out) -> int:
    table = _table(args, args.depth or 2)
    path = save_table(table, args.cache_path or default_cache_dir())
    data = {"system": str(table.system.type), "order": list(table.order.letters),
            "depth": table.generated_depth, "real": len(table.real),
            "imaginary": sum(len(v) for v in table.imag.values()), "path": str(path)}
    _emit(args, out, data, f"generated {data['system']} to depth {data['depth']}: "
                           f"{data['real']} real, {data['imaginary']} imaginary words -> {path}")
    return EXIT_OK


def cmd_sl(args, out) -> int:
    table = _table(args)
    degree = _degree(args, table)
    if classify(table.system, degree) == REAL:
        table.ensure(_level_of(table, degree))
        words = [(None, table.word(table.key_for(degree)))]
    else:
        indices = [args.index] if args.index is not None else range(1, table.rank + 1)
        table.parse_degree(degree, 1)
        table.ensure(degree[0])
        words = [(r, table.word(table.key_for(degree, r))) for r in indices]
    data = {"degree": list(degree),
            "words": [dict(_word_json(w), index=r) if r else _word_json(w) for r, w in words]}
    text = "\n".join(str(w) if r is None else f"({r}) {w}" for r, w in words)
    _emit(args, out, data, text)
    return EXIT_OK


def cmd_chain(args, out) -> int:
    table, degree = _real_table(args)
    count = args.depth or 5
    words = ch.chain_words(table, degree, count)
    beta, _ = ch.chain_coords(table, degree)
    degs = [list(ch.element(table, beta, k)) for k in range(count)]
    data = {"chain": str(ch.ChainId(ch.element(table, beta, 0))),
            "increasing": ch.is_increasing(table, beta),
            "elements": [dict(_word_json(w), degree=d) for w, d in zip(words, degs)]}
    _emit(args, out, data, "\n".join(str(w) for w in words))
    return EXIT_OK


def cmd_chunks(args, out) -> int:
    table, degree = _real_table(args)
    count = args.depth
    if count:
        beta, k0 = ch.chain_coords(table, degree)
        keys = [ch.element_key(table, beta, k0 + k) for k in range(count)]
    else:
        keys = [table.key_for(degree)]
    listings = [ch.to_chunk_format(table, key).listing() for key in keys]
    data = {"degree": list(degree), "chunks": listings if count else listings[0]}
    _emit(args, out, data, "\n".join(json.dumps(x).replace('"', "'") for x in listings))
    return EXIT_OK


def _imag_label(i: int) -> str:
    return f"(delta,{i})"


def cmd_profile(args, out) -> int:
    table, degree = _real_table(args)
    p = ch.chain_profile(table, degree)
    data = {
        "chain": str(p.id), "increasing": p.increasing, "projection": list(p.projection),
        "beta_coeffs": list(p.beta_coeffs), "m1": p.m1, "M1": p.M1, "Mprime1": p.Mprime1,
        "s": p.s, "c": p.c, "f": p.f_value, "relative_height": p.relative_height,
        "u": list(p.u) if p.u else None, "l": list(p.l) if p.l else None,
    }
    lines = [f"chain: {p.id}", f"monotonicity: {'increasing' if p.increasing else 'decreasing'}",
             f"beta coefficients: {list(p.beta_coeffs)}",
             f"m1 = {_imag_label(p.m1)}", f"M1 = {_imag_label(p.M1)}", f"M'1 = {_imag_label(p.Mprime1)}"]
    if p.increasing:
        lines += [f"c = {p.c}", f"l = {list(p.l)}"]
    else:
        lines += [f"s = {p.s}", f"f = {p.f_value}", f"u = {list(p.u)}"]
    _emit(args, out, data, "\n".join(lines))
    return EXIT_OK


def cmd_irr_chains(args, out) -> int:
    table = _table(args, 1)
    rows = []
    for i, (cid, b) in enumerate(zip(ch.irr_chains(table), ch.irr_projections(table)), start=1):
        rows.append({"i": i, "chain": str(cid), "base": list(cid.base), "projection": list(b),
                     "M1": ch.M_index(table, b)})
    _emit(args, out, {"irreducible_chains": rows},
          "\n".join(f"beta_{r['i']}: {r['chain']}  M1 = {_imag_label(r['M1'])}" for r in rows))
    return EXIT_OK


def cmd_y(args, out) -> int:
    table = _table(args, 1)
    w, d = ch.y_word(table, args.i), ch.y_degree(table, args.i)
    _emit(args, out, dict(_word_json(w), i=args.i, degree=list(d)), f"y_{args.i} = {w}  degree {list(d)}")
    return EXIT_OK


def cmd_decomp(args, out) -> int:
    system = build_system(_finite_type(args))
    degree = _degree(args, _table(args, 1))
    pairs = sorted(decompositions(system, degree))
    _emit(args, out, {"degree": list(degree), "pairs": [[list(a), list(b)] for a, b in pairs]},
          "\n".join(f"{list(a)} + {list(b)}" for a, b in pairs))
    return EXIT_OK


def _report_out(args, out, report: VerificationReport) -> int:
    if args.format == "json":
        out.write(json.dumps(dict(report.to_json(), schema=JSON_SCHEMA_VERSION), indent=2) + "\n")
    else:
        out.write(report.to_text() + "\n")
        for r in report.records:
            if not r.passed and r.order not in ("random", "table orders"):
                out.write(f"replay: affine-lyndon verify --type {r.system} --order {r.order.replace('<', ',')} "
                          f"--depth {r.stats.get('depth', 2)} --suites {r.name.split('_connectivity')[0]}\n")
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _guard_long(args, types) -> None:
    if not args.long_running and any(t.family == "E" for t in types):
        raise UsageError("E types run only with --long-running")


def cmd_verify(args, out) -> int:
    suites = tuple(s.strip() for s in args.suites.split(",")) if args.suites else SUITES
    suites = tuple("connectivity" if s.startswith("connectivity") else s for s in suites)
    ft = _finite_type(args)
    _guard_long(args, [ft])
    order = None if args.all_orders else _order(args, ft.rank + 1)
    config = SuiteConfig(systems=[(ft, order)], depth=args.depth, suites=suites, jobs=args.jobs,
                         sample=args.sample, seed=args.seed, word_cases=args.word_cases)
    return _report_out(args, out, run_suite(config))


def cmd_table_check(args, out) -> int:
    names = args.types.split(",") if args.types else list(DESK_TYPES) + (list(LONG_TYPES) if args.long_running else [])
    types = [FiniteType.parse(n.strip()) for n in names]
    _guard_long(args, types)
    report = VerificationReport(records=[check_tables(types)])
    return _report_out(args, out, report)


def _emit(args, out, data: dict, text: str) -> None:
    if args.format == "json":
        out.write(json.dumps(dict(data, schema=JSON_SCHEMA_VERSION)) + "\n")
    else:
        out.write(text + "\n")


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="finite type, e.g. F4, or a family letter with --rank")
    common.add_argument("--rank", type=int)
    common.add_argument("--order", help="letters smallest first, e.g. 0,2,4,1,3")
    common.add_argument("--depth", type=int, help="generation depth in multiples of delta, or chain length")
    common.add_argument("--depth-cap", type=int, help=f"refuse to generate beyond this (default {DEFAULT_DEPTH_CAP})")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache-path", help="cache directory (default from $AFFINE_LYNDON_CACHE)")
    common.add_argument("--no-cache", action="store_true", help="ignore cached tables")
    common.add_argument("--long-running", action="store_true", help="allow E-type sweeps")

    deg = argparse.ArgumentParser(add_help=False)
    deg.add_argument("degree", nargs="?", help="comma-separated coordinates c0,...,cn")
    deg.add_argument("--degree", dest="degree_opt")
    deg.add_argument("--mod-delta", nargs=2, metavar=("BASE", "K"), help="degree given as BASE + K*delta")

    p = _Parser(prog="affine-lyndon", description="Standard Lyndon words for untwisted affine root systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("gen", parents=[common], help="generate a table and store it in the cache").set_defaults(fn=cmd_gen)
    s = sub.add_parser("sl", parents=[common, deg], help="standard Lyndon word(s) of a degree")
    s.add_argument("--index", type=int, help="imaginary index r (all indices by default)")
    s.set_defaults(fn=cmd_sl)
    sub.add_parser("chain", parents=[common, deg], help="first --depth words of a chain").set_defaults(fn=cmd_chain)
    sub.add_parser("chunks", parents=[common, deg], help="chunk listing of a word").set_defaults(fn=cmd_chunks)
    sub.add_parser("profile", parents=[common, deg], help="chain invariants").set_defaults(fn=cmd_profile)
    sub.add_parser("irr-chains", parents=[common], help="irreducible increasing chains").set_defaults(fn=cmd_irr_chains)
    y = sub.add_parser("y", parents=[common], help="the word y_i")
    y.add_argument("i", type=int)
    y.set_defaults(fn=cmd_y)
    sub.add_parser("decomp", parents=[common, deg], help="splittings into two positive roots").set_defaults(fn=cmd_decomp)
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suites", help="comma-separated subset of: " + ", ".join(SUITES))
    v.add_argument("--all-orders", action="store_true")
    v.add_argument("--sample", type=int, help="number of random orders when there are too many")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--word-cases", type=int, default=10_000)
    v.set_defaults(fn=cmd_verify)
    t = sub.add_parser("table-check", parents=[common], help="periodicity table tightness")
    t.add_argument("--types", help="comma-separated types (desk set by default)")
    t.set_defaults(fn=cmd_table_check)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, out)
    except DepthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEPTH
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AffineLyndonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()

"""Command-line front end.

Words use Bourbaki indices, read left to right: ``--word 2,1,3,2`` is
w = s_2 s_1 s_3 s_2, the last letter acting first.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import comb
from pathlib import Path
from typing import Sequence

from .acceptance import run_all
from .chow import chow_report, weil_report
from .models import has_ih_small_resolution, is_variety_smooth, model_report
from .quiver import (
    NotAnAntichainError,
    Quiver,
    ambient_quiver,
    antichain_of,
    build_quiver,
    enumerate_schubert,
    schubert_from_antichain,
)
from .render import dumps, fmt_cell, quiver_from_dict, quiver_table, quiver_to_dot, table
from .rootcore import CosetWord, InvalidWordError, RootSystemId, check_minuscule
from .stringy import crepant_obstruction

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_SELFTEST = 0, 1, 2, 3
RANK_CAP = 12
DOT_COMMANDS = ("quiver", "export")


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def coset_count(sys_: RootSystemId, weight: int) -> int:
    """|W / W_P|, the number of Schubert cells."""
    n = sys_.rank
    if sys_.family == "A":
        return comb(n + 1, weight)
    if sys_.family == "D":
        return 2 * n if weight == 1 else 2 ** (n - 1)
    return {6: 27, 7: 56}[n]


def _ambient(args) -> tuple[RootSystemId, int]:
    try:
        s = RootSystemId(args.family.upper(), args.rank)
        check_minuscule(s, args.weight)
    except (ValueError, IndexError) as exc:
        raise InputError(str(exc))
    return s, args.weight


def _check_cells(s: RootSystemId, weight: int, max_cells: int | None) -> None:
    if max_cells is None:
        if s.rank > RANK_CAP:
            raise InputError(f"rank {s.rank} exceeds the cap {RANK_CAP}; pass --max-cells to override")
        return
    n = coset_count(s, weight)
    if n > max_cells:
        raise InputError(f"{n} Schubert cells exceed --max-cells {max_cells}")


def resolve(args) -> Quiver:
    if args.from_json is not None:
        try:
            data = json.loads(Path(args.from_json).read_text())
            return quiver_from_dict(data)
        except InvalidWordError:
            raise
        except (OSError, ValueError, KeyError, TypeError, IndexError) as exc:
            raise InputError(f"cannot import {args.from_json}: {exc}")
    s, w = _ambient(args)
    if args.word is not None:
        return build_quiver(CosetWord(s, w, args.word))
    if args.antichain is not None:
        try:
            return schubert_from_antichain(ambient_quiver(s, w), args.antichain)
        except NotAnAntichainError:
            raise InputError(f"{list(args.antichain)} is not an antichain")
    if args.index is not None:
        _check_cells(s, w, getattr(args, "max_cells", None))
        qs = enumerate_schubert(s, w)
        if not 1 <= args.index <= len(qs):
            raise InputError(f"index {args.index} out of range 1..{len(qs)}")
        return qs[args.index - 1]
    return ambient_quiver(s, w)


def _summary_row(i: int, q: Quiver) -> tuple:
    wr = weil_report(q)
    return (
        i,
        q.size,
        len(q.annotations.pics),
        q.annotations.pic_heights,
        wr.locally_factorial,
        wr.gorenstein,
        is_variety_smooth(q),
        has_ih_small_resolution(q).admits,
    )


LIST_HEADERS = ("id", "dim", "#pics", "pic heights", "factorial?", "gorenstein?", "smooth?", "ih_small?")


def _emit_quiver(q: Quiver, fmt: str) -> str:
    if fmt == "dot":
        return quiver_to_dot(q)
    if fmt == "table":
        return quiver_table(q)
    return dumps(q.to_dict())


def cmd_quiver(args) -> str:
    return _emit_quiver(resolve(args), args.format)


def cmd_export(args) -> str:
    if any(getattr(args, k) is not None for k in ("word", "antichain", "index", "from_json")):
        return _emit_quiver(resolve(args), args.format)
    s, w = _ambient(args)
    _check_cells(s, w, args.max_cells)
    qs = enumerate_schubert(s, w)
    if args.format == "dot":
        return "".join(quiver_to_dot(q, f"Q{i}") for i, q in enumerate(qs, 1))
    if args.format == "table":
        return "\n".join(quiver_table(q) for q in qs)
    return dumps([dict(q.to_dict(), id=i) for i, q in enumerate(qs, 1)])


def cmd_list(args) -> str:
    s, w = _ambient(args)
    _check_cells(s, w, args.max_cells)
    rows = [_summary_row(i, q) for i, q in enumerate(enumerate_schubert(s, w), 1)]
    if args.format == "json":
        return dumps([dict(zip(LIST_HEADERS, (list(r[3]) if k == 3 else r[k] for k in range(len(r))))) for r in rows])
    return table(LIST_HEADERS, rows)


def cmd_classify(args) -> str:
    s, w = _ambient(args)
    _check_cells(s, w, args.max_cells)
    rows = [_summary_row(i, q) for i, q in enumerate(enumerate_schubert(s, w), 1)]
    counts = {
        "system": str(s),
        "weight": w,
        "quivers": len(rows),
        "factorial": sum(r[4] for r in rows),
        "gorenstein": sum(r[5] for r in rows),
        "smooth": sum(r[6] for r in rows),
        "ih_small": sum(r[7] for r in rows),
        "ih_small_ids": [r[0] for r in rows if r[7]],
    }
    if args.format == "json":
        return dumps(counts)
    n = counts["quivers"]
    return (
        f"{s} weight {w}: {n} Schubert quivers\n"
        f"smooth: {counts['smooth']} of {n}\n"
        f"locally factorial: {counts['factorial']} of {n}\n"
        f"Gorenstein: {counts['gorenstein']} of {n}\n"
        f"IH-small resolution: {counts['ih_small']} of {n}\n"
        f"IH-small ids: {fmt_cell(counts['ih_small_ids'])}\n"
    )


def cmd_invariants(args) -> str:
    q = resolve(args)
    out = {
        "quiver": q.to_dict(),
        "antichain": sorted(antichain_of(q)) if q.embedding is not None else None,
        "heights": {str(k): v for k, v in q.annotations.height.items()},
        "pics": sorted(q.annotations.pics),
        "holes": sorted(q.annotations.holes),
        "virtual_holes": sorted(q.annotations.virtual_holes),
        "weil": weil_report(q).to_dict(),
        "chow": chow_report(q.word),
    }
    if args.format == "json":
        return dumps(out)
    w = out["weil"]
    rows = [
        ("pics", out["pics"]),
        ("holes", out["holes"]),
        ("virtual hole colors", out["virtual_holes"]),
        ("locally factorial", w["locally_factorial"]),
        ("Gorenstein", w["gorenstein"]),
        ("Gorenstein index", w["gorenstein_index"]),
        ("L(w) in Weil basis", [f"D{p}:{c}" for p, c in w["picard_coeffs"].items()]),
        ("-K in Weil basis", [f"D{p}:{c}" for p, c in w["canonical_coeffs"].items()]),
    ]
    return quiver_table(q) + "\n" + table(("invariant", "value"), rows)


def cmd_models(args) -> str:
    q = resolve(args)
    rep = model_report(q)
    if args.format == "json":
        return dumps(rep.to_dict())
    rows = []
    for o in rep.minimal_orders:
        rows.append((
            o,
            rep.swap_classes[o],
            [f"{k}:{v}" for k, v in rep.discrepancies[o].items()],
            o in rep.smooth_orders,
        ))
    fg = rep.flop_graph
    head = (
        f"minimal models: {len(rep.minimal_orders)}\n"
        f"canonical partition: {' | '.join(fmt_cell(b) for b in rep.canonical_partition) or '-'}"
        f"{'  (X(w) itself)' if rep.canonical_is_identity else ''}\n"
        f"flop graph: {len(fg.classes)} classes, {len(fg.edges)} edges, connected={fmt_cell(fg.connected)}\n"
        f"smooth models: {len(rep.smooth_orders)}\n"
    )
    return head + table(("order", "swaps", "discrepancies", "smooth?"), rows)


def cmd_smooth(args) -> str:
    q = resolve(args)
    rep = model_report(q)
    out = {
        "smooth": rep.smooth,
        "smooth_minimal_orders": [list(o) for o in rep.smooth_orders],
        "ih_small": rep.ih_small.admits,
        "ih_small_witness": None if rep.ih_small.witness is None else list(rep.ih_small.witness),
    }
    if args.format == "json":
        return dumps(out)
    return table(("property", "value"), [
        ("smooth", out["smooth"]),
        ("smooth minimal orders", [fmt_cell(o) for o in rep.smooth_orders] or None),
        ("IH-small resolution", out["ih_small"]),
    ])


def cmd_stringy(args) -> str:
    obs = crepant_obstruction(resolve(args)).to_dict()
    if args.format == "json":
        return dumps(obs)
    return table(("property", "value"), [
        ("Gorenstein", obs["gorenstein"]),
        ("e_st", obs["e_st"]),
        ("crepant resolution obstructed", obs["obstructed"]),
    ])


def cmd_selftest(args) -> tuple[str, int]:
    results = run_all()
    lines = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed} of {len(results)} checks passed")
    return "\n".join(lines) + "\n", EXIT_SELFTEST if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="schubquiver", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ambient_args(sp, required=True):
        sp.add_argument("--family", required=required, help="A, D or E")
        sp.add_argument("--rank", type=int, required=required)
        sp.add_argument("--weight", type=int, required=required, help="Bourbaki index of the minuscule weight")
        sp.add_argument("--max-cells", type=int, default=None,
                        help=f"allow any rank when the cell count is at most this (default cap: rank {RANK_CAP})")

    def ref_args(sp):
        # optional here: --from-json carries its own ambient data
        ambient_args(sp, required=False)
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--word", type=_int_list, help="comma-separated letters, beta_r last")
        g.add_argument("--antichain", type=_int_list, help="comma-separated ambient vertex ids")
        g.add_argument("--index", type=int, help="id from `list` output")
        g.add_argument("--from-json", metavar="FILE", help="quiver JSON file")

    def fmt(sp, default):
        sp.add_argument("--format", choices=("json", "dot", "table"), default=default)

    handlers = {
        "quiver": (cmd_quiver, "build one quiver", True, "table"),
        "invariants": (cmd_invariants, "divisor and Chow data", True, "table"),
        "models": (cmd_models, "relative minimal models and flops", True, "table"),
        "smooth": (cmd_smooth, "smoothness and IH-small resolutions", True, "table"),
        "stringy": (cmd_stringy, "stringy Euler number", True, "table"),
        "export": (cmd_export, "export one quiver or all of them", True, "json"),
        "list": (cmd_list, "indexed table of all Schubert quivers", False, "table"),
        "classify": (cmd_classify, "summary counts", False, "table"),
    }
    for name, (fn, help_, with_ref, default) in handlers.items():
        sp = sub.add_parser(name, help=help_)
        if with_ref:
            ref_args(sp)
        else:
            ambient_args(sp)
        fmt(sp, default)
        sp.set_defaults(func=fn)
    sp = sub.add_parser("selftest", help="run the acceptance checks")
    sp.set_defaults(func=cmd_selftest)
    return p


def _needs_ambient(args) -> bool:
    return getattr(args, "from_json", None) is None and args.command != "selftest"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if _needs_ambient(args) and None in (args.family, args.rank, args.weight):
        parser.error("--family, --rank and --weight are required unless --from-json is given")
    if getattr(args, "format", None) == "dot" and args.command not in DOT_COMMANDS:
        parser.error(f"--format dot is not available for {args.command}")
    try:
        result = args.func(args)
    except InvalidWordError as exc:
        print(f"error: invalid word at position {exc.position}", file=sys.stderr)
        return EXIT_INVALID
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    sys.stdout.write(result)
    return code


if __name__ == "__main__":
    sys.exit(main())

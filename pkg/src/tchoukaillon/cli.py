"""Command line entry point: tables, sieve runs, Ayo transcripts and checks.

Every table command writes csv, json or an aligned text table. Output is
byte-identical across runs except for timings reported by ``bigrun``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Optional, Sequence

from . import analysis, ayo, core, sieve

# harvest values printed wrongly in the published table of winning positions
KNOWN_MISPRINTS = {24: 1}

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


def _cell(value):
    if isinstance(value, float):
        return round(value, 6)
    return value


def render(rows: list[dict], fmt: str, blank_zero: Sequence[str] = (), footer: Sequence[str] = ()) -> str:
    """Serialise ``rows`` (dicts sharing one key order) as csv, json or pretty text.

    Columns named in ``blank_zero`` show zeros as empty cells in csv and
    pretty output; json always keeps explicit zeros.
    """
    rows = [{k: _cell(v) for k, v in r.items()} for r in rows]
    if fmt == "json":
        return json.dumps(rows, indent=2, ensure_ascii=False) + "\n"

    fields = list(rows[0]) if rows else []
    blank = set(blank_zero)

    def text(key, value):
        if value is None or (key in blank and value == 0):
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        return str(value)

    table = [[text(k, r.get(k)) for k in fields] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        writer.writerows(table)
        return buf.getvalue()

    widths = [max([len(f)] + [len(row[c]) for row in table]) for c, f in enumerate(fields)]
    lines = ["  ".join(f.rjust(w) for f, w in zip(fields, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in table:
        lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip())
    lines.extend(footer)
    return "\n".join(lines) + "\n"


# -- table builders ----------------------------------------------------------

def winning_table(max_s: int) -> tuple[list[dict], list[str]]:
    stream = core.WinningStream()
    width = len(core.generate(max_s))
    rows, notes = [], []
    for s in range(max_s + 1):
        h = stream.step() if s else None
        row = {"s": s}
        prefix = stream.prefix(width)
        for i in range(1, width + 1):
            row[f"pit{i}"] = prefix[i - 1]
        row["h"] = h
        row["note"] = ""
        if s in KNOWN_MISPRINTS and KNOWN_MISPRINTS[s] != h:
            row["note"] = f"erratum: published table lists h={KNOWN_MISPRINTS[s]}, computed h={h}"
            notes.append(f"s={s}: {row['note']}")
        rows.append(row)
    return rows, notes


def period_rows(max_i: int) -> list[dict]:
    return [
        {
            "i": r.i,
            "period": r.measured_period,
            "lcm": r.predicted,
            "first_zero_prefix": r.first_zero,
            "distinct_prefixes": r.distinct_prefixes,
            "horizon": r.horizon,
            "match": r.matches,
        }
        for r in analysis.period_table(max_i)
    ]


def sn_rows(max_n: int) -> list[dict]:
    sfun = sieve.s_of_n(max_n)
    return [{"n": n, "s": sfun(n)} for n in range(1, max_n + 1)]


def asym_rows(max_n: int) -> list[dict]:
    return [
        {
            "n": r.n,
            "s": r.s,
            "n2_over_pi": r.approx,
            "residual": r.residual,
            "max_abs_residual_over_n": r.max_ratio,
            "s_pi_over_n2": r.scaled,
        }
        for r in sieve.asymptote_report(max_n)
    ]


def bigrun(target_s: int, pits: Sequence[int] = ()) -> dict:
    t0 = time.perf_counter()
    stream = core.WinningStream().advance(target_s)
    elapsed = time.perf_counter() - t0
    pos = stream.position()
    out = {
        "target_s": target_s,
        "length": len(pos),
        "buffer_slots": stream.buffer_size,
        "seconds": round(elapsed, 3),
        "matches_direct": pos == core.generate_direct(target_s),
    }
    for i in pits:
        out[f"p{i}"] = pos[i]
    return out


def ayo_rows(report: ayo.PlayoutReport) -> list[dict]:
    numbers = ayo.pit_numbers(report.n)
    rows = []
    board = report.start
    for t, rec in enumerate(report.turns, 1):
        row = {"turn": t, "mover": rec.mover, "pit": rec.pit}
        row.update({f"pit{p}": board[p] for p in numbers})
        row.update({"captured": rec.captured, "awarded": rec.awarded, "north_after": rec.north_census})
        rows.append(row)
        board = rec.board
    return rows


def ayo_transcript(report: ayo.PlayoutReport) -> str:
    n = report.n
    north = list(range(-n + 2, 2))
    south = list(range(n + 1, 1, -1))

    def cells(board, pits):
        return "".join(f"{board[p] or '.':>4}" for p in pits)

    lines = [f"Determined position with {report.board_stones} stones on a {2 * n}-pit board "
             f"(Tchoukaillon s={report.s})", ""]
    board = report.start
    for t, rec in enumerate(report.turns):
        label = chr(ord("a") + t) if t < 26 else str(t + 1)
        verb = "To capture from" if rec.mover == ayo.SOUTH else "To move from"
        lines.append(f"({label}) {rec.mover}: {verb} pit {rec.pit}")
        lines.append("       " + "".join(f"{p:>4}" for p in north))
        lines.append("    N: " + cells(board, north))
        lines.append("    S: " + cells(board, south))
        lines.append("       " + "".join(f"{p:>4}" for p in south))
        lines.append("")
        board = rec.board
    lines.append(f"{report.captured_S} captured by S, {report.awarded_N} awarded to N")
    return "\n".join(lines) + "\n"


# -- verification suite ------------------------------------------------------

def verification_checks(max_s: int, max_i: int, max_n: int, h_limit: int, board_n: int):
    """Yield ``(name, check)`` pairs; each check returns a detail string or raises."""

    def identities():
        total = sum(analysis.check_identities(analysis.pit_stats(s)) for s in range(max_s + 1))
        return f"{total} identity checks over s <= {max_s}"

    def periods():
        bad = [r for r in analysis.period_table(max_i) if not r.matches]
        assert not bad, f"mismatched prefixes: {[(r.i, r.measured_period, r.predicted) for r in bad]}"
        return f"period = lcm(1..i+1) for i <= {max_i}"

    def sieve_vs_generator():
        stream = core.WinningStream()
        for s in range(1, h_limit + 1):
            h = sieve.harvest_value(s)
            refill = stream.step()
            assert h == refill, f"h_{s}={h} but the generator refilled pit {refill}"
        return f"h_s matches the backward generator for s <= {h_limit}"

    def s_functions():
        a, b = sieve.s_of_n(max_n), sieve.s_by_generator(max_n)
        assert a == b, "s(n) from the sieve and from the generator differ"
        return f"s(n) agrees for n <= {max_n}"

    def generator_vs_direct():
        for s, pos in enumerate(core.iter_winning(max_s)):
            assert pos == core.generate_direct(s), f"s={s}"
        return f"backward generator equals pitwise formula for s <= {max_s}"

    def correspondence():
        top = ayo.max_determined_stones(board_n)
        for s in range(1, top + 1):
            ayo.determined_playout(s, board_n)
            c = ayo.correspondence_check(s, board_n)
            assert c, f"s={s} differs at turn {c.turn}: {c.ayo} vs {c.tchoukaillon}"
        return f"determined playouts match for 1 <= s <= {top} on {2 * board_n} pits"

    yield "identities", identities
    yield "periods", periods
    yield "sieve-vs-generator", sieve_vs_generator
    yield "s-of-n", s_functions
    yield "generator-vs-direct", generator_vs_direct
    yield "ayo-correspondence", correspondence


def run_verify(args, out) -> int:
    failed = 0
    for name, check in verification_checks(args.max_s, args.max_i, args.max_n, args.h_limit, args.board_n):
        try:
            detail = check()
            out.write(f"PASS {name}: {detail}\n")
        except (AssertionError, ArithmeticError) as exc:
            failed += 1
            out.write(f"FAIL {name}: {exc}\n")
    out.write(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}\n")
    return EXIT_VERIFY if failed else EXIT_OK


# -- argument handling -------------------------------------------------------

def _pit_list(text: str) -> list[int]:
    try:
        pits = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated pit numbers, got {text!r}")
    if any(p < 1 for p in pits):
        raise argparse.ArgumentTypeError("pit numbers start at 1")
    return pits


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "pretty"), default="pretty")
    common.add_argument("--out", metavar="PATH", help="write to PATH instead of standard output")

    parser = argparse.ArgumentParser(prog="tchoukaillon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="winning positions for s = 0..max-s")
    p.add_argument("--max-s", type=_nonneg, default=24)

    p = sub.add_parser("period", parents=[common], help="period of the first i pits")
    p.add_argument("--max-i", type=_positive, default=11)

    for name, text in (("sn", "s(n) for n = 1..max-n"),
                       ("asym", "s(n) against n^2/pi"),
                       ("primes", "first max-n primes from the slash sieve"),
                       ("compare", "growth of s(n) against the primes")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--max-n", type=_positive, default=8 if name == "sn" else 100)

    p = sub.add_parser("bigrun", parents=[common], help="stream the backward generator to target-s")
    p.add_argument("--target-s", type=_positive, default=21_286_434)
    p.add_argument("--pits", type=_pit_list, default=[], help="comma-separated pits to report")

    p = sub.add_parser("ayo", parents=[common], help="transcript of a determined Ayo endgame")
    p.add_argument("--stones", type=_positive, default=9, help="Tchoukaillon stone count s")
    p.add_argument("--board-n", type=_positive, default=6, help="pits per side")

    p = sub.add_parser("verify", parents=[common], help="run the property checks")
    p.add_argument("--max-s", type=_nonneg, default=10_000)
    p.add_argument("--max-i", type=_positive, default=11)
    p.add_argument("--max-n", type=_positive, default=500)
    p.add_argument("--h-limit", type=_nonneg, default=100_000)
    p.add_argument("--board-n", type=_positive, default=6)
    return parser


def _dispatch(args, err) -> tuple[str, int]:
    fmt = args.format
    if args.command == "table":
        rows, notes = winning_table(args.max_s)
        pits = [k for k in rows[0] if k.startswith("pit")]
        return render(rows, fmt, blank_zero=pits, footer=notes), EXIT_OK
    if args.command == "period":
        if args.max_i > 11:
            err.write(f"warning: max-i={args.max_i} scans {2 * analysis.lcm_upto(args.max_i + 1)} "
                      "positions\n")
        return render(period_rows(args.max_i), fmt), EXIT_OK
    if args.command == "sn":
        return render(sn_rows(args.max_n), fmt), EXIT_OK
    if args.command == "asym":
        return render(asym_rows(args.max_n), fmt), EXIT_OK
    if args.command == "primes":
        primes = sieve.prime_sieve(args.max_n)
        return render([{"n": n, "prime": p} for n, p in enumerate(primes, 1)], fmt), EXIT_OK
    if args.command == "compare":
        return render(sieve.growth_compare(args.max_n), fmt), EXIT_OK
    if args.command == "bigrun":
        return render([bigrun(args.target_s, args.pits)], fmt), EXIT_OK
    if args.command == "ayo":
        report = ayo.determined_playout(args.stones, args.board_n)
        if fmt == "pretty":
            return ayo_transcript(report), EXIT_OK
        return render(ayo_rows(report), fmt), EXIT_OK
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "verify":
        buf = io.StringIO()
        code = run_verify(args, buf)
        text = buf.getvalue()
    else:
        try:
            text, code = _dispatch(args, stderr)
        except ayo.NotRealizable as exc:
            stderr.write(f"error: {exc}\n")
            return EXIT_USAGE
        except (analysis.HorizonTooSmall, OverflowError, ValueError) as exc:
            stderr.write(f"error: {exc}\n")
            return EXIT_USAGE
        except (analysis.IdentityViolation, ayo.DeterminedViolation) as exc:
            stderr.write(f"verification failed: {exc}\n")
            return EXIT_VERIFY

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

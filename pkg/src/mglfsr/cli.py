"""Command-line front end.

Exit codes: 0 success, 1 decoding failure or oracle disagreement, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import random
import statistics
import sys
import time
from typing import Sequence

from . import instance as inst_mod
from .ff import Field
from .instance import ALGORITHMS, ParseError, format_instance, format_solution, parse_instance
from .oracle import minimal_degree_by_linear_algebra
from .polymat import WeightProfile
from .rsdecode import GrsCode, decode

SEED_ENV = "MGLFSR_SEED"

INSTANCE_HELP = """\
instance file (one item per line, '#' starts a comment):
  p <prime>
  ell <l>
  nu <nu>
  w <w_0> ... <w_l>
  S <i> <coefficients, ascending>     (i = 1..l)
  G <i> <coefficients, ascending>     (i = 1..l)
"""

DECODE_HELP = """\
received-word file ('#' starts a comment):
  <p> <n> <k>
  alphas <n evaluation points>
  r <n received symbols>
"""


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# -- solve -----------------------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        inst = parse_instance(_read(args.path))
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sol, stats, _ = inst_mod.solve_detailed(inst, args.alg)
    sys.stdout.write(format_solution(sol))
    if args.stats:
        print(f"row_reductions {stats.row_reductions}")
        print(f"bound {stats.bound}")
    return 0


# -- decode ----------------------------------------------------------------


def parse_received(text: str) -> tuple[GrsCode, list[int]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line.split()))
    if len(lines) != 3:
        raise ParseError(f"expected 3 non-empty lines, found {len(lines)}")
    (l1, head), (l2, alpha_tok), (l3, r_tok) = lines
    try:
        p, n, k = (int(t) for t in head)
    except ValueError:
        raise ParseError("first line must be '<p> <n> <k>'", l1) from None
    for lineno, tokens, key in ((l2, alpha_tok, "alphas"), (l3, r_tok, "r")):
        if tokens[0] != key:
            raise ParseError(f"expected a line starting with {key!r}", lineno)
    try:
        alphas = [int(t) for t in alpha_tok[1:]]
    except ValueError:
        raise ParseError("evaluation points must be integers", l2) from None
    try:
        r = [int(t) for t in r_tok[1:]]
    except ValueError:
        raise ParseError("received symbols must be integers", l3) from None
    try:
        code = GrsCode(Field(p), n, k, tuple(alphas))
    except ValueError as exc:
        raise ParseError(str(exc), l1 if len(alphas) == n else l2) from None
    if len(r) != n:
        raise ParseError(f"expected {n} received symbols, got {len(r)}", l3)
    return code, r


def cmd_decode(args: argparse.Namespace) -> int:
    try:
        code, r = parse_received(_read(args.path))
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = decode(code, r, args.ell, args.alg)
    if out.decoded:
        print(f"decoded {out.f.to_text()}")
    else:
        print("failure")
    print(f"lambda {out.lam.to_text()}")
    return 0 if out.decoded else 1


# -- oracle-check ----------------------------------------------------------


def oracle_check(
    trials: int,
    seed: int,
    *,
    primes: Sequence[int] = (2, 3, 5, 13, 17),
    ells: Sequence[int] = (1, 2, 3),
    nus: Sequence[int] = (1, 2),
    max_deg: int = 8,
    max_w: int = 4,
    algorithms: Sequence[str] = ALGORITHMS,
) -> list[tuple[str, str]]:
    """Run every solver against the oracle; returns ``(reason, instance text)`` per mismatch."""
    rng = random.Random(seed)
    failures = []
    for _ in range(trials):
        inst = inst_mod.random_instance(
            rng, primes=primes, ells=ells, nus=nus, deg_range=(1, max_deg), w_range=(0, max_w)
        )
        expected, _ = minimal_degree_by_linear_algebra(inst)
        for alg in algorithms:
            sol = inst_mod.solve(inst, alg)
            if not inst_mod.is_solution(inst, sol.vector):
                failures.append((f"{alg}: output is not a solution", format_instance(inst)))
            elif sol.lam.deg != expected:
                reason = f"{alg}: deg lambda {sol.lam.deg}, oracle minimum {expected}"
                failures.append((reason, format_instance(inst)))
    return failures


def cmd_oracle_check(args: argparse.Namespace) -> int:
    failures = oracle_check(
        args.trials,
        args.seed,
        primes=args.primes,
        ells=list(range(1, args.max_ell + 1)),
        nus=args.nus,
        max_deg=args.max_deg,
        max_w=args.max_w,
    )
    for reason, text in failures:
        print(f"# disagreement: {reason}")
        sys.stdout.write(text)
        print()
    print(f"# {args.trials} trials, {len(failures)} disagreements", file=sys.stderr)
    return 1 if failures else 0


# -- bench -----------------------------------------------------------------

BENCH_FIELDS = ["alg", "ell", "m", "moduli", "reps", "median_seconds", "ratio_to_half_m"]


def bench_instance(field: Field, ell: int, m: int, moduli: str, rng: random.Random):
    S = [inst_mod.random_poly(field, rng, m) for _ in range(ell)]
    if moduli == "monomial":
        G = [field.monomial(1, m)] * ell
    else:
        G = [field([rng.randrange(field.p) for _ in range(m)] + [1]) for _ in range(ell)]
    return inst_mod.new_instance(field, S, G, WeightProfile.trivial(ell))


def run_bench(
    ells: Sequence[int],
    ms_: Sequence[int],
    algorithms: Sequence[str],
    seed: int,
    *,
    reps: int = 3,
    moduli: Sequence[str] = ("monomial", "dense"),
    p: int = 65537,
) -> list[dict]:
    """Median wall time per (alg, ell, m, moduli) over seeded random instances."""
    field = Field(p)
    rows = []
    for kind in moduli:
        for ell in ells:
            for m in ms_:
                rng = random.Random(f"{seed}-{kind}-{ell}-{m}")
                instances = [bench_instance(field, ell, m, kind, rng) for _ in range(reps)]
                for alg in algorithms:
                    times = []
                    for inst in instances:
                        t0 = time.perf_counter()
                        inst_mod.solve(inst, alg)
                        times.append(time.perf_counter() - t0)
                    rows.append(
                        {"alg": alg, "ell": ell, "m": m, "moduli": kind, "reps": reps,
                         "median_seconds": statistics.median(times)}
                    )
    by_key = {(r["alg"], r["ell"], r["m"], r["moduli"]): r["median_seconds"] for r in rows}
    for r in rows:
        half = by_key.get((r["alg"], r["ell"], r["m"] / 2, r["moduli"]))
        r["ratio_to_half_m"] = r["median_seconds"] / half if half else None
    return rows


def format_bench_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        out = dict(r)
        out["median_seconds"] = f"{r['median_seconds']:.6f}"
        ratio = r["ratio_to_half_m"]
        out["ratio_to_half_m"] = "" if ratio is None else f"{ratio:.3f}"
        writer.writerow(out)
    return buf.getvalue()


def cmd_bench(args: argparse.Namespace) -> int:
    moduli = ("monomial", "dense") if args.moduli == "both" else (args.moduli,)
    rows = run_bench(args.ell, args.m, args.alg, args.seed, reps=args.reps, moduli=moduli, p=args.p)
    sys.stdout.write(format_bench_csv(rows))
    return 0


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mglfsr",
        description="Weighted multi-sequence shift-register synthesis and Power-Gao decoding.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"The default seed is read from ${SEED_ENV} (0 if unset).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser(
        "solve", help="solve an instance file", epilog=INSTANCE_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_solve.add_argument("path", help="instance file, or - for stdin")
    p_solve.add_argument("--alg", choices=ALGORITHMS, default="ms")
    p_solve.add_argument("--stats", action="store_true", help="print row-reduction count and bound")
    p_solve.set_defaults(func=cmd_solve)

    p_dec = sub.add_parser(
        "decode", help="Power-Gao decode a received word", epilog=DECODE_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_dec.add_argument("path", help="received-word file, or - for stdin")
    p_dec.add_argument("--ell", type=int, default=1, help="number of powers (default 1)")
    p_dec.add_argument("--alg", choices=ALGORITHMS, default="ms")
    p_dec.set_defaults(func=cmd_decode)

    p_orc = sub.add_parser("oracle-check", help="compare all solvers with the brute-force oracle")
    p_orc.add_argument("--trials", type=int, default=1000)
    p_orc.add_argument("--seed", type=int, default=_default_seed())
    p_orc.add_argument("--primes", type=_int_list, default=[2, 3, 5, 13, 17])
    p_orc.add_argument("--max-ell", type=int, default=3)
    p_orc.add_argument("--nus", type=_int_list, default=[1, 2])
    p_orc.add_argument("--max-deg", type=int, default=8)
    p_orc.add_argument("--max-w", type=int, default=4)
    p_orc.set_defaults(func=cmd_oracle_check)

    p_bench = sub.add_parser("bench", help="time the solvers on random instances (CSV)")
    p_bench.add_argument("--ell", type=_int_list, default=[2])
    p_bench.add_argument("--m", type=_int_list, default=[64, 128, 256])
    p_bench.add_argument("--alg", type=lambda s: s.replace(",", " ").split(), default=list(ALGORITHMS))
    p_bench.add_argument("--moduli", choices=("monomial", "dense", "both"), default="both")
    p_bench.add_argument("--reps", type=int, default=3)
    p_bench.add_argument("--p", type=int, default=65537)
    p_bench.add_argument("--seed", type=int, default=_default_seed())
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "bench":
        bad = [a for a in args.alg if a not in ALGORITHMS]
        if bad:
            print(f"error: unknown algorithm(s) {bad}", file=sys.stderr)
            return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 verification failure or budget exceeded,
2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds, geometry, gf2, morse
from .complex import build_complex, check_links_flag, euler_characteristic
from .symbols import DEFAULT_MAX_CELLS, BudgetExceeded, check_budget, enumerate_symbols, is_face


def int_range(text: str) -> range:
    """Parse ``A`` or ``A..B`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            r = range(int(lo), int(hi) + 1)
        else:
            r = range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A or A..B, got {text!r}") from None
    if len(r) == 0:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return r


def _w_values(args, n: int) -> range:
    return args.w if args.w is not None else range(1, n + 1)


def _emit(out, line: str) -> None:
    out.write(line + "\n")


def cmd_betti(args, out) -> int:
    _emit(out, "n,w,j,betti")
    for n in args.n:
        for w in _w_values(args, n):
            table = gf2.betti_numbers(build_complex(n, w, args.max_cells))
            for row in table.rows():
                _emit(out, ",".join(map(str, row)))
    return 0


def cmd_morse(args, out) -> int:
    _emit(out, "n,w,dim,critical_count")
    ok = True
    for n in args.n:
        for w in _w_values(args, n):
            c = build_complex(n, w, args.max_cells)
            m = morse.build_matching(c)
            if m.census() != morse.critical_census(c)[0]:
                ok = False
            ok = ok and morse.verify_pairs(c, m) and morse.verify_gradient(c, m)
            for d, count in enumerate(m.census()):
                _emit(out, f"{n},{w},{d},{count}")
    _emit(out, "gradient: ok" if ok else "gradient: FAILED")
    return 0 if ok else 1


def cmd_bounds(args, out) -> int:
    _emit(out, "n,w,j,regime,lower_bound,stirling")
    for n in args.n:
        for w in _w_values(args, n):
            js = [args.j] if args.j is not None else range(n)
            for j in js:
                lb = bounds.lower_bound(n, w, j)
                _emit(out, f"{n},{w},{j},{bounds.regime(n, w, j).value},"
                           f"{'' if lb is None else lb},{bounds.stirling_betti(n, j)}")
    return 0


def cmd_portrait(args, out) -> int:
    for n in args.n:
        w_max = args.w.stop - 1 if args.w is not None else None
        out.write(bounds.format_portrait(n, w_max, args.j))
    return 0


def cmd_export(args, out) -> int:
    n, w = args.n[0], (args.w[0] if args.w is not None else args.n[0])
    c = build_complex(n, w, args.max_cells)
    dims = [args.j] if args.j is not None else range(1, c.top_dimension + 1)
    if args.out is not None:
        Path(args.out).mkdir(parents=True, exist_ok=True)
    for d in dims:
        if not 1 <= d <= c.top_dimension:
            raise SystemExit(f"no boundary map in dimension {d} for cell({n},{w})")
        lines = [f"{d} {len(c.cells[d - 1])} {len(c.cells[d])}"]
        lines += [f"{r} {col}" for r, col in sorted(c.incidences(d))]
        text = "\n".join(lines) + "\n"
        if args.out is None:
            out.write(text)
        else:
            (Path(args.out) / f"boundary_{n}_{w}_d{d}.txt").write_text(text)
    return 0


# ---------------------------------------------------------------- verify


def _verify_oracle(n, w, seed, samples):
    rng = np.random.default_rng(seed)
    symbols = enumerate_symbols(n, w)
    for _ in range(samples):
        p = geometry.random_u_point(n, w, rng)
        chain = geometry.classify_point(p, n, w)
        if set(chain) != set(geometry.u_membership(p, symbols)) or not geometry.is_chain(chain):
            return False
    return True


def maximal_chains(n: int, w: int):
    """Every maximal chain of P(n, w), bottom to top."""
    symbols = enumerate_symbols(n, w)
    by_dim: dict[int, list] = {}
    for s in symbols:
        by_dim.setdefault(s.dimension, []).append(s)
    up = {s: [t for t in by_dim.get(s.dimension + 1, []) if is_face(s, t)] for s in symbols}

    def walk(path):
        nxt = up[path[-1]]
        if not nxt:
            yield list(path)
            return
        for t in nxt:
            yield from walk(path + [t])

    for v in by_dim[0]:
        yield from walk([v])


def _verify_witness(n, w, seed, samples):
    for chain in maximal_chains(n, w):
        p = geometry.chain_witness(chain, n, w)
        if not all(geometry.u_alpha_contains(p, a) for a in chain):
            return False
    return True


def _verify_torus(n, w, seed, samples):
    if w < 2:
        return True
    grid = [2 * math.pi * k / 16 for k in range(16)]
    for j in range(n):
        for a in bounds.enumerate_special_symbols(n, w, j):
            for angles in itertools.product(grid, repeat=j):
                p = geometry.torus_point(a, angles, w)
                if p.min_distance() < 1 - 1e-9:
                    return False
                if any(abs(y) > w / 2 - 0.5 + 1e-9 for _, y in p.coords):
                    return False
            hits = sum(geometry.zstar_contains(geometry.torus_point(a, t, w), a, w)
                       for t in geometry.aligned_angle_tuples(j))
            if hits != 1:
                return False
    return True


def _verify_chain(n, w, seed, samples):
    c = build_complex(n, w)
    b = gf2.betti_numbers(c)
    return gf2.verify_chain_complex(c) and b.euler_characteristic() == euler_characteristic(c)


def _verify_morse(n, w, seed, samples):
    c = build_complex(n, w)
    m = morse.build_matching(c)
    b = gf2.betti_numbers(c).betti
    return (morse.verify_pairs(c, m) and morse.verify_gradient(c, m)
            and all(x >= y for x, y in zip(m.census(), b)))


def _verify_flag(n, w, seed, samples):
    return check_links_flag(n)


SUITES = {
    "oracle": _verify_oracle,
    "witness": _verify_witness,
    "torus": _verify_torus,
    "chain": _verify_chain,
    "morse": _verify_morse,
    "flag": _verify_flag,
}


def cmd_verify(args, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        for n in args.n:
            ws = [2] if name == "flag" else _w_values(args, n)
            for w in ws:
                passed = SUITES[name](n, w, args.seed, args.samples)
                ok &= passed
                _emit(out, f"{'PASS' if passed else 'FAIL'} {name} n={n} w={w}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diskstrip", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_n=True):
        p.add_argument("--n", type=int_range, required=need_n, help="A or A..B")
        p.add_argument("--w", type=int_range, help="A or A..B (default 1..n)")
        p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
        return p

    common(sub.add_parser("betti", help="mod-2 Betti numbers as CSV"))
    common(sub.add_parser("morse", help="critical-cell census and gradient check"))
    p = common(sub.add_parser("bounds", help="regime, lower bound and Stirling value"))
    p.add_argument("--j", type=int)
    p = common(sub.add_parser("portrait", help="G/L/S grid in the (w, j) plane"))
    p.add_argument("--j", type=int, help="largest j shown")
    p = common(sub.add_parser("export", help="sparse boundary matrices"))
    p.add_argument("--j", type=int, help="only this dimension")
    p.add_argument("--out", help="directory for boundary files (default stdout)")
    p = common(sub.add_parser("verify", help="property sweeps"))
    p.add_argument("suite", nargs="?", default="all", choices=["all", *SUITES])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    return parser


COMMANDS = {
    "betti": cmd_betti,
    "morse": cmd_morse,
    "bounds": cmd_bounds,
    "portrait": cmd_portrait,
    "export": cmd_export,
    "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    if any(n < 1 for n in args.n) or (args.w is not None and any(w < 0 for w in args.w)):
        parser.error("need n >= 1 and w >= 0")
    if args.command not in ("bounds", "portrait") and args.w is not None and 0 in args.w:
        parser.error("w = 0 has no cell complex")
    try:
        if args.command in ("betti", "morse", "export"):
            for n in args.n:
                for w in _w_values(args, n):
                    check_budget(n, w, args.max_cells)
        return COMMANDS[args.command](args, out)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

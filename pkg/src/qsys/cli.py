"""Command-line entry point: ``qsys <command> [options]``.

Exit codes: 0 success (all checks pass), 1 a verification check failed,
2 usage error (bad seed, index, order), 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import NotDivisible, OutOfDomain, QsysError, UsageError

DEFAULT_MAX_ORDER = 16
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class RunConfig:
    r: int
    seed: object            # MotzkinPath
    order: int
    fmt: str
    suites: list[str]


def max_order() -> int:
    raw = os.environ.get("QSYS_MAX_ORDER", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_ORDER
    except ValueError:
        raise UsageError(f"QSYS_MAX_ORDER must be an integer, got {raw!r}")


def make_config(args) -> RunConfig:
    from .motzkin import MotzkinPath, zero_path
    r = args.r
    if args.seed is not None:
        seed = MotzkinPath.parse(args.seed)
        if r is not None and seed.r != r:
            raise UsageError(f"--seed has {seed.r} entries but --r is {r}")
        r = seed.r
    else:
        r = r if r is not None else 1
        if r < 1:
            raise UsageError("--r must be at least 1")
        seed = zero_path(r)
    order = args.order if args.order is not None else 6
    if order < 0 or order > max_order():
        raise UsageError(f"--order must lie in 0..{max_order()}")
    return RunConfig(r, seed, order, args.format, list(getattr(args, "suite", None) or []))


def emit(obj, cfg: RunConfig, pretty_lines: list[str] | None = None) -> None:
    if cfg.fmt == "json" or pretty_lines is None:
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(pretty_lines) + "\n")


def _poly_obj(p) -> dict:
    from .laurent import LaurentPoly
    p = LaurentPoly.coerce(p)
    return {"poly": p.to_json_obj(), "text": str(p)}


def _plot_module():
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as exc:
        raise UsageError("--plot needs matplotlib (pip install artifact[plot])") from exc
    return plt


# ---------------------------------------------------------------------------
# commands


def cmd_compute(cfg: RunConfig, args) -> int:
    from .checks import is_positive_laurent
    from .qsystem import QState, evolve
    if args.all_ones:
        st = QState.all_ones(cfg.seed)
        lo, hi = args.nmin, args.nmax
        table = {str(a): {str(n): int(evolve(st, a, n)) for n in range(lo, hi + 1)} for a in range(1, cfg.r + 1)}
        lines = [f"seed {cfg.seed.label()}, all seed values 1"]
        for a in range(1, cfg.r + 1):
            lines.append(f"R[{a}][{lo}..{hi}] = " + " ".join(str(table[str(a)][str(n)]) for n in range(lo, hi + 1)))
        emit({"seed": cfg.seed.to_json_obj(), "all_ones": table}, cfg, lines)
        return EXIT_OK
    if args.alpha is None or args.n is None:
        raise UsageError("compute needs --alpha and --n (or --all-ones)")
    value = evolve(QState(cfg.seed), args.alpha, args.n)
    pos = is_positive_laurent(value)
    obj = {"seed": cfg.seed.to_json_obj(), "alpha": args.alpha, "n": args.n,
           "value": _poly_obj(value), "positive": pos}
    emit(obj, cfg, [f"R[{args.alpha}][{args.n}] = {value}", f"positive: {pos}"])
    return EXIT_OK


def cmd_weights(cfg: RunConfig, args) -> int:
    from .graphs import long_edges
    from .weights import redundant_weights, weights_for_seed
    sk = weights_for_seed(cfg.seed)
    red = redundant_weights(cfg.seed, sk)
    y = {str(i): str(w) for i, w in enumerate(sk.y) if i > 0}
    yij = {f"{i},{j}": str(red[(i, j)]) for i, j in long_edges(cfg.seed)}
    lines = [f"seed {cfg.seed.label()}"] + [f"y_{k} = {v}" for k, v in y.items()]
    lines += [f"y_{{{k}}} = {v}" for k, v in yij.items()]
    emit({"seed": cfg.seed.to_json_obj(), "y": y, "y_long": yij}, cfg, lines)
    return EXIT_OK


def cmd_paths(cfg: RunConfig, args) -> int:
    from .graphs import build_gamma
    from .paths import enumerate_paths, generating_function, transfer_matrix
    G = build_gamma(cfg.seed, "symbolic" if args.symbolic else "seed")
    if args.emit == "dot":
        sys.stdout.write(G.to_dot() + "\n")
        return EXIT_OK
    T = transfer_matrix(G)
    F = generating_function(G, cfg.order)
    coeffs = [str(F.coeff(k)) for k in range(cfg.order + 1)]
    obj = {"seed": cfg.seed.to_json_obj(), "graph": G.to_json_obj(), "transfer_matrix": T.to_json_obj(),
           "series": coeffs}
    lines = [f"seed {cfg.seed.label()}, vertices {' '.join(G.vertices)}"]
    lines += ["  " + "  ".join(row) for row in T.to_rows()]
    lines += [f"[t^{k}] {c}" for k, c in enumerate(coeffs)]
    if args.n is not None:
        ps = enumerate_paths(G, args.n)
        obj["paths"] = [p.to_json_obj() for p in ps]
        lines.append(f"{len(ps)} paths with {args.n} descents")
    emit(obj, cfg, lines)
    return EXIT_OK


def _tiling_domain(args, cfg: RunConfig):
    from .tilings import deformed_domain, halved_aztec, indented_halved_aztec, ones_moves
    if args.domain == "ha":
        return halved_aztec(args.n, None if args.generic else ones_moves())
    if args.domain == "iha":
        return indented_halved_aztec(args.n, args.alpha, None if args.generic else ones_moves())
    return deformed_domain(cfg.seed, args.n, args.alpha)


def cmd_tilings(cfg: RunConfig, args) -> int:
    from .tilings import admissible_tilings, count_tilings, tiling_svg
    D = _tiling_domain(args, cfg)
    tilings = admissible_tilings(D)
    if args.emit == "svg":
        if not tilings:
            raise UsageError("the domain has no admissible tilings")
        idx = min(args.index, len(tilings) - 1)
        svg = tiling_svg(tilings[idx], D)
        if args.out:
            Path(args.out).write_text(svg)
        else:
            sys.stdout.write(svg + "\n")
    else:
        total = count_tilings(D)
        obj = {"domain": D.to_json_obj(), "count": len(tilings), "weight_sum": str(total),
               "tilings": [t.to_json_obj() for t in tilings[: args.limit]]}
        lines = [f"domain {D.name}: {len(D.cells)} cells, {len(tilings)} tilings", f"weight sum {total}"]
        emit(obj, cfg, lines)
    if args.plot:
        _plot_tiling(tilings[min(args.index, len(tilings) - 1)], D, args.plot)
    return EXIT_OK


def _plot_tiling(tiling, domain, target: str) -> None:
    from matplotlib.patches import Rectangle
    from .tilings import _FILL
    plt = _plot_module()
    fig, ax = plt.subplots(figsize=(6, 4))
    for tile in tiling.tiles:
        cells = tile.cells
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        ax.add_patch(Rectangle((min(xs), min(ys)), max(xs) - min(xs) + 1, max(ys) - min(ys) + 1,
                               facecolor=_FILL.get(tile.kind, "#cccccc"), edgecolor="black", linewidth=0.8))
    xs = [c[0] for c in domain.cells]
    ys = [c[1] for c in domain.cells]
    ax.set_xlim(min(xs) - 0.5, max(xs) + 1.5)
    ax.set_ylim(min(ys) - 0.5, max(ys) + 1.5)
    ax.set_aspect("equal")
    ax.set_title(f"{domain.name}")
    fig.savefig(target, bbox_inches="tight")
    plt.close(fig)


def cmd_enumerate(cfg: RunConfig, args) -> int:
    from . import enumeration as en
    from .motzkin import descending_path, max_path, zero_path
    N = cfg.order
    fam = args.family
    if fam == "schroeder":
        seq, r_used = en.stabilized_series(zero_path, N)
        closed = en.schroeder_series(N)
    elif fam == "catalan":
        seq, r_used = en.stabilized_series(max_path, N)
        closed = en.catalan_numbers(N)
    elif fam == "phi":
        r_used = cfg.r
        seq = en.all_ones_series(descending_path(r_used), N)
        _, (v, v1) = en.chebyshev_forms(r_used)
        closed = en.one_plus_t_ratio(v, v1, N)
    elif fam == "zero":
        r_used = cfg.r
        seq = en.all_ones_series(zero_path(r_used), N)
        (p, p1), _ = en.chebyshev_forms(r_used)
        closed = en.one_plus_t_ratio(p, p1, N)
    else:
        r_used = args.r_large
        seq = en.mutated_seed_series(r_used, N)
        closed = en.mutated_half_infinite_series(N)
    obj = {"family": fam, "order": N, "r": r_used, "sequence": seq, "closed_form": closed,
           "agree": seq == closed}
    lines = [f"{fam} (r={r_used}): " + ", ".join(str(c) for c in seq), f"closed form agrees: {seq == closed}"]
    if args.growth and fam in ("zero", "phi"):
        M = zero_path(cfg.r) if fam == "zero" else descending_path(cfg.r)
        kind = "zero" if fam == "zero" else "descending"
        g = en.growth_rate(M)
        obj["growth"] = {"root": g, "ratio_n30": en.empirical_ratio(M, 30),
                         "closed_form": en.growth_closed_form(kind, cfg.r)}
        lines.append(f"growth {g:.12f}, ratio at n=30 {obj['growth']['ratio_n30']:.12f}")
    emit(obj, cfg, lines)
    if args.plot:
        plt = _plot_module()
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.semilogy(range(len(seq)), [max(c, 1) for c in seq], "o-", label="truncation")
        ax.semilogy(range(len(closed)), [max(float(c), 1) for c in closed], "x--", label="closed form")
        ax.set_xlabel("n")
        ax.set_ylabel("coefficient")
        ax.legend()
        fig.savefig(args.plot, bbox_inches="tight")
        plt.close(fig)
    return EXIT_OK if seq == closed else EXIT_FAIL


def cmd_verify(cfg: RunConfig, args) -> int:
    from .checks import SUITES, run_suite
    names = cfg.suites or ["conserved"]
    if names == ["all"]:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    results = []
    for name in names:
        opts = {}
        if args.nmax is not None and name in ("wronskian", "positivity", "lgv", "tilings"):
            opts["nmax"] = args.nmax
        if name == "mutation-rearrangement" and args.order is not None:
            opts["order"] = cfg.order
        results.append(run_suite(name, cfg.r, **opts))
    ok = all(res.ok for res in results)
    lines = []
    for res in results:
        lines.append(f"== {res.suite} (r={cfg.r}): {'PASS' if res.ok else 'FAIL'}")
        lines.extend("  " + c.line() for c in res.checks)
    obj = {"r": cfg.r, "ok": ok, "suites": [res.to_json_obj() for res in results]}
    # timings are the only nondeterministic field, so they stay out of JSON output
    for s in obj["suites"]:
        s.pop("seconds")
    emit(obj, cfg, lines)
    if args.plot:
        plt = _plot_module()
        fig, ax = plt.subplots(figsize=(6, 3))
        ax.barh([r.suite for r in results], [r.seconds for r in results],
                color=["#1b9e77" if r.ok else "#d95f02" for r in results])
        ax.set_xlabel("seconds")
        fig.savefig(args.plot, bbox_inches="tight")
        plt.close(fig)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_seeds(cfg: RunConfig, args) -> int:
    from .motzkin import composition_label, fundamental_domain, mutation_graph
    seeds = fundamental_domain(cfg.r)
    edges = mutation_graph(cfg.r)
    obj = {"r": cfg.r,
           "seeds": [{"m": list(M.values), "sequence": composition_label(M)} for M in seeds],
           "edges": [{"from": list(a.values), "row": k, "to": list(b.values)} for a, k, b in edges]}
    lines = [f"{M.label()}  {composition_label(M)}" for M in seeds]
    lines += [f"{a.label()} --mu_{k}--> {b.label()}" for a, k, b in edges]
    emit(obj, cfg, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _common(sub: bool) -> argparse.ArgumentParser:
    # on subcommands the defaults are suppressed so flags may appear on either side
    d = argparse.SUPPRESS if sub else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--r", type=int, default=d, help="rank of the Q-system")
    p.add_argument("--seed", default=d, help="Motzkin path m_1,...,m_r (default: all zeros)")
    p.add_argument("--order", type=int, default=d, help="series truncation order")
    p.add_argument("--format", choices=("json", "pretty"), default=d if sub else "pretty")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsys", parents=[_common(False)],
                                     description="Exact computations for the A_r Q-system.")
    subs = parser.add_subparsers(dest="command", required=True)
    common = [_common(True)]

    p = subs.add_parser("compute", parents=common, help="R[alpha][n] in the seed variables")
    p.add_argument("--alpha", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--all-ones", action="store_true", help="integer table with every seed value 1")
    p.add_argument("--nmin", type=int, default=0)
    p.add_argument("--nmax", type=int, default=8)
    p.set_defaults(func=cmd_compute)

    p = subs.add_parser("weights", parents=common, help="path weights of a seed")
    p.set_defaults(func=cmd_weights)

    p = subs.add_parser("paths", parents=common, help="target graph, transfer matrix and series")
    p.add_argument("--n", type=int, help="also list the paths with this many descents")
    p.add_argument("--symbolic", action="store_true", help="use free weights y_i")
    p.add_argument("--emit", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_paths)

    p = subs.add_parser("tilings", parents=common, help="domino tilings of path domains")
    p.add_argument("--domain", choices=("ha", "iha", "deformed"), default="ha")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--generic", action="store_true", help="generic tile weights instead of ones")
    p.add_argument("--emit", choices=("json", "svg"), default="json")
    p.add_argument("--index", type=int, default=0, help="which tiling to draw")
    p.add_argument("--limit", type=int, default=20, help="tilings listed in JSON output")
    p.add_argument("--out", help="write SVG here instead of stdout")
    p.add_argument("--plot", help="also render the tiling to this image file")
    p.set_defaults(func=cmd_tilings)

    p = subs.add_parser("enumerate", parents=common, help="all-ones integer sequences")
    p.add_argument("--family", choices=("schroeder", "catalan", "phi", "zero", "mu1"), default="schroeder")
    p.add_argument("--r-large", type=int, default=40, help="truncation rank for mu1")
    p.add_argument("--growth", action="store_true", help="report growth rates (zero, phi)")
    p.add_argument("--plot", help="plot coefficients to this image file")
    p.set_defaults(func=cmd_enumerate)

    p = subs.add_parser("verify", parents=common, help="run verification suites")
    p.add_argument("--suite", action="append", help="suite name, repeatable, or 'all'")
    p.add_argument("--nmax", type=int)
    p.add_argument("--plot", help="bar chart of suite timings to this image file")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("seeds", parents=common, help="fundamental domain and mutation graph")
    p.set_defaults(func=cmd_seeds)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = make_config(args)
        return args.func(cfg, args)
    except (UsageError, OutOfDomain) as exc:
        sys.stderr.write(f"qsys: {exc}\n")
        return EXIT_USAGE
    except (NotDivisible, QsysError) as exc:
        sys.stderr.write(f"qsys: internal invariant failed: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Verification suites shared by the CLI and the test-suite.

Each suite returns a list of :class:`Check` records; a suite passes when
every record does.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .errors import QsysError
from .graphs import build_gamma
from .laurent import LaurentPoly, RationalFunction, yvar
from .motzkin import (MotzkinPath, descending_path, forward_move, fundamental_domain, max_path,
                      mutation_graph, zero_path)
from .paths import enumerate_families, lgv_check, transfer_matrix
from .qsystem import (QState, conserved, evolve, shifted_conserved, verify_linear_recursion,
                      wronskian)
from . import reference_tables as ref


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")

    def to_json_obj(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json_obj(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "seconds": round(self.seconds, 3),
                "checks": [c.to_json_obj() for c in self.checks]}


def _guard(name: str, fn: Callable[[], bool | tuple[bool, str]]) -> Check:
    try:
        res = fn()
    except QsysError as exc:
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    if isinstance(res, tuple):
        return Check(name, bool(res[0]), res[1])
    return Check(name, bool(res))


# ---------------------------------------------------------------------------
# suites


def suite_wronskian(r: int, nmax: int = 5) -> list[Check]:
    out = []
    for M in fundamental_domain(r):
        def run(M=M):
            st = QState(M)
            for n in range(-nmax, nmax + 1):
                for a in range(1, r + 1):
                    if wronskian(st, a, n) != evolve(st, a, n):
                        return False, f"alpha={a} n={n}"
                if wronskian(st, r + 1, n) != 1:
                    return False, f"W_(r+1) at n={n}"
                if wronskian(st, r + 2, n) != 0:
                    return False, f"W_(r+2) at n={n}"
            return True
        out.append(_guard(f"wronskian {M.label()}", run))
    return out


def suite_conserved(r: int) -> list[Check]:
    out = []
    cs = conserved(QState(zero_path(r)))
    for (rank, j), text in ref.CONSERVED.items():
        if rank == r:
            out.append(Check(f"c_{j} reference value", cs[j] == ref.parse_sum(text)))
    out.append(Check("c_0 = c_(r+1) = 1", cs[0] == 1 and cs[r + 1] == 1))
    st = QState(zero_path(r))
    for k in (1, 2):
        out.append(Check(f"invariant under shift by {k}", list(cs.c) == shifted_conserved(st, k)))
    for M in fundamental_domain(r):
        out.append(_guard(f"recursion = determinant {M.label()}", lambda M=M: bool(conserved(QState(M)))))
    return out


def suite_linear_recursion(r: int, lo: int = -2, hi: int = 4) -> list[Check]:
    return [_guard(f"linear recursion {M.label()}",
                   lambda M=M: verify_linear_recursion(QState(M), range(lo, hi + 1)))
            for M in fundamental_domain(r)]


def is_positive_laurent(p) -> bool:
    p = LaurentPoly.coerce(p)
    return not p.is_zero() and p.has_integer_coefficients() and all(c > 0 for c in p.coefficients())


def suite_positivity(r: int, nmax: int = 6) -> list[Check]:
    out = []
    for M in fundamental_domain(r):
        def run(M=M):
            st = QState(M)
            for a in range(1, r + 1):
                for n in range(-nmax, nmax + 1):
                    if not is_positive_laurent(evolve(st, a, n)):
                        return False, f"alpha={a} n={n}"
            return True
        out.append(_guard(f"positivity {M.label()}", run))
    return out


def suite_mutation_rearrangement(r: int, order: int = 8) -> list[Check]:
    from .fractions import verify_mutation_is_rearrangement
    out = []
    for M, alpha, M2 in mutation_graph(r):
        mv = forward_move(M, alpha)
        out.append(_guard(f"mu_{alpha}: {M.label()} -> {M2.label()}",
                          lambda M=M, mv=mv: verify_mutation_is_rearrangement(M, mv, order)))
    if r == 3:
        out.extend(dictionary_checks())
    return out


def _product(ws: dict, idx) -> LaurentPoly:
    p = LaurentPoly.one()
    for i in idx:
        p = p * ws[i]
    return p


def dictionary_checks() -> list[Check]:
    from .fractions import compose_moves, dictionaries_agree, in_zero_seed
    out = []
    for name, d in ref.WEIGHT_DICTIONARIES.items():
        composed = compose_moves(3, d["rows"])
        printed = ref.dictionary_by_key(name)
        got = composed.all_weights()

        def same(composed=composed, printed=printed, got=got):
            if set(printed) != set(got):
                return False, f"keys {sorted(got)} vs {sorted(printed)}"
            for k, w in printed.items():
                if RationalFunction.coerce(got[k]) != in_zero_seed(w, composed.M):
                    return False, f"weight {k}"
            return True
        out.append(_guard(f"dictionary {name} reproduced", same))
        out.append(_guard(f"dictionary {name} closed forms", lambda M=composed.M, c=composed: dictionaries_agree(M, c)))
        ws = {i: ref.dictionary_entry(name, i) for i in d["weights"]}
        for lhs, rhs in d["relations"]:
            out.append(Check(f"dictionary {name} relation {lhs}={rhs or 1}", _product(ws, lhs) == _product(ws, rhs)))
    a = compose_moves(3, [1, 3]).all_weights()
    b = compose_moves(3, [3, 1]).all_weights()
    out.append(Check("mu_1 mu_3 = mu_3 mu_1", a.keys() == b.keys() and all(
        RationalFunction.coerce(a[k]) == RationalFunction.coerce(b[k]) for k in a)))
    return out


def suite_lgv(r: int, nmax: int = 3, alphas=None) -> list[Check]:
    out = []
    alphas = alphas or range(2, r + 1)
    for M in fundamental_domain(r):
        for a in alphas:
            for n in range(0, nmax + 1):
                out.append(_guard(f"lgv {M.label()} alpha={a} n={n}", lambda M=M, a=a, n=n: lgv_check(M, a, n)))
    if r >= 3:
        out.extend(pair_count_checks())
    return out


def _ones_count(M: MotzkinPath, alpha: int, n: int) -> int:
    G = build_gamma(M, [None] + [1] * (2 * M.r + 1))
    return len(enumerate_families(M, alpha, n, G=G))


def pair_count_checks() -> list[Check]:
    n = ref.PAIR_COUNT_N
    got = {"zero_r3": _ones_count(zero_path(3), 2, n),
           "dyck": _ones_count(max_path(3), 2, n),
           "zero_r2": _ones_count(zero_path(2), 2, n)}
    return [Check(f"pair count {k}", got[k] == v, f"{got[k]} (expected {v})")
            for k, v in ref.PAIR_COUNTS.items()]


def suite_tilings(r: int, nmax: int = 3, roundtrip_n: int = 4) -> list[Check]:
    from .tilings import (aztec_matching_weight_check, halved_aztec, indented_halved_aztec,
                          matching_weights, enumerate_tilings, tiling_to_path, path_to_tiling,
                          enumerate_step_paths, ones_moves)
    out = []
    for a in range(1, r + 1):
        for n in range(1, min(a, r + 1 - a, nmax) + 1):
            out.append(_guard(f"matchings alpha={a} n={n}", lambda a=a, n=n: aztec_matching_weight_check(a, n, r)))
    for a in range(3, r - 1):
        if min(a, r + 1 - a) >= 3:
            def diamond(a=a):
                got = sorted(str(w) for w in matching_weights(a, 3, r))
                return got == sorted(str(w) for w in ref.diamond_3_weights(a, r))
            out.append(_guard(f"eight diamond weights alpha={a}", diamond))
    for n in range(1, roundtrip_n + 1):
        def rt(n=n):
            D = halved_aztec(n, ones_moves())
            ts = enumerate_tilings(D)
            for t in ts:
                if path_to_tiling(tiling_to_path(t, D), D).tiles != t.tiles:
                    return False, "tiling -> path -> tiling"
            paths = enumerate_step_paths(D.moves, D.starts[0], D.ends[0], D.width // 2)
            for p in paths:
                back = tiling_to_path(path_to_tiling([p], D), D)
                if [q.steps for q in back] != [p.steps]:
                    return False, "path -> tiling -> path"
            return len(ts) == len(paths), f"{len(ts)} tilings, {len(paths)} paths"
        out.append(_guard(f"round trip HA n={n}", rt))
    for a in (2, 3):
        for n in range(a - 1, roundtrip_n + 1):
            def rt2(a=a, n=n):
                D = indented_halved_aztec(n, a, ones_moves())
                ts = enumerate_tilings(D)
                for t in ts:
                    if path_to_tiling(tiling_to_path(t, D), D).tiles != t.tiles:
                        return False, "tiling -> path -> tiling"
                return True, f"{len(ts)} tilings"
            out.append(_guard(f"round trip IHA n={n} alpha={a}", rt2))
    return out


def suite_bmatrix(r: int) -> list[Check]:
    from .weights import b_matrix, b_matrix_by_mutation, verify_weight_b_relation
    out = []
    for M in fundamental_domain(r):
        B = b_matrix(M)
        out.append(Check(f"closed form = mutation {M.label()}", B == b_matrix_by_mutation(M)))
        out.append(Check(f"entries and blocks {M.label()}",
                         B.entries() <= {0, 1, -1, 2, -2} and B.blocks_sum_to_zero() and B.is_skew_symmetric()))
        out.append(_guard(f"weights vs columns {M.label()}", lambda M=M: verify_weight_b_relation(M)))
    return out


def _expected_cell(token: str):
    if token == "0":
        return None
    if token == "1":
        return (0, LaurentPoly.one())
    body = token[1:]
    if "," in body:
        num, den = ref.REDUNDANT_WEIGHTS[body]
        w = LaurentPoly.one()
        for i in num:
            w = w * yvar(i)
        for i in den:
            w = w * yvar(i).inverse()
        return (1, w)
    return (1, yvar(int(body)))


def transfer_matrix_matches(M: MotzkinPath) -> tuple[bool, str]:
    T = transfer_matrix(build_gamma(M, "symbolic"))
    cells = ref.transfer_cells(M)
    if len(cells) != T.dim:
        return False, "dimension"
    for i, row in enumerate(cells):
        for j, tok in enumerate(row):
            exp = _expected_cell(tok)
            got = T.entries.get((i, j))
            if exp is None and got is None:
                continue
            if exp is None or got is None or got[0] != exp[0] or LaurentPoly.coerce(got[1]) != exp[1]:
                return False, f"cell ({i},{j})"
    return True, ""


def suite_appendix_b(r: int = 3) -> list[Check]:
    if r != 3:
        return [Check("reference transfer matrices exist only for r=3", False, f"r={r}")]
    return [_guard(f"transfer matrix {M.label()}", lambda M=M: transfer_matrix_matches(M))
            for M in fundamental_domain(3)]


def suite_enumeration(order: int = 6) -> list[Check]:
    from . import enumeration as en
    out = []
    sch, _ = en.stabilized_series(zero_path, order)
    cat, _ = en.stabilized_series(max_path, order)
    out.append(Check("large Schroeder", sch == en.schroeder_series(order), str(sch)))
    out.append(Check("Catalan", cat == en.catalan_numbers(order), str(cat)))
    for k in range(1, 9):
        (p, p1), (v, v1) = en.chebyshev_forms(k)
        out.append(Check(f"Chebyshev forms r={k}",
                         en.one_plus_t_ratio(p, p1, 25) == en.all_ones_series(zero_path(k), 25)
                         and en.one_plus_t_ratio(v, v1, 25) == en.all_ones_series(descending_path(k), 25)))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "wronskian": suite_wronskian,
    "conserved": suite_conserved,
    "linear-recursion": suite_linear_recursion,
    "mutation-rearrangement": suite_mutation_rearrangement,
    "lgv": suite_lgv,
    "tilings": suite_tilings,
    "bmatrix": suite_bmatrix,
    "appendixB": suite_appendix_b,
    "positivity": suite_positivity,
}


def run_suite(name: str, r: int, **opts) -> SuiteResult:
    fn = SUITES[name]
    t0 = time.time()
    checks = fn(r, **opts)
    return SuiteResult(name, checks, time.time() - t0)

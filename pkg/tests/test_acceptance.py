"""The eleven acceptance criteria, one test each, with their stated budgets."""

from collections import Counter

from qsys import checks
from qsys import enumeration as en
from qsys import reference_tables as ref
from qsys.fractions import cf_series
from qsys.graphs import build_gamma
from qsys.laurent import LaurentPoly
from qsys.motzkin import descending_path, fundamental_domain, max_path, zero_path
from qsys.paths import generating_function, path_weight_sum
from qsys.qsystem import QState, conserved
from qsys.tilings import (aztec_matching_weight_check, deformed_domain, enumerate_step_paths,
                          enumerate_tilings, halved_aztec, indented_halved_aztec, matching_weights,
                          ones_moves, path_to_tiling, tiling_to_path)


def _all_ok(results):
    bad = [c.line() for c in results if not c.ok]
    return not bad, "; ".join(bad[:3])


def test_criterion_01_conserved_fixtures(criterion):
    def check():
        c1 = conserved(QState(zero_path(1)))
        c2 = conserved(QState(zero_path(2)))
        ok = (c1[1] == ref.parse_sum(ref.CONSERVED[(1, 1)])
              and c2[1] == ref.parse_sum(ref.CONSERVED[(2, 1)])
              and c2[2] == ref.parse_sum(ref.CONSERVED[(2, 2)]))
        return ok, f"r=1: {c1[1]}"
    criterion(1, "conserved quantities r=1 c_1, r=2 c_1 c_2", check, budget=1.0)


def test_criterion_02_wronskians(criterion):
    def check():
        return _all_ok([c for r in (1, 2, 3) for c in checks.suite_wronskian(r, nmax=5)])
    criterion(2, "W = R, W_(r+1) = 1, W_(r+2) = 0 for r<=3, |n|<=5, all seeds", check, budget=30.0)


def test_criterion_03_linear_recursion(criterion):
    def check():
        return _all_ok([c for r in (1, 2, 3) for c in checks.suite_linear_recursion(r, -2, 4)])
    criterion(3, "linear recursion with conserved coefficients, r<=3, n=-2..4", check)


def test_criterion_04_positivity(criterion):
    def check():
        return _all_ok([c for r in (1, 2, 3) for c in checks.suite_positivity(r, nmax=6)])
    criterion(4, "positive integer Laurent polynomials, r<=3, |n|<=6, all seeds", check, budget=120.0)


def test_criterion_05_series_fraction_paths(criterion):
    def check():
        order = 5
        for M in fundamental_domain(3):
            G = build_gamma(M)
            F = generating_function(G, order)
            C = cf_series(M, order)
            for k in range(order + 1):
                a = LaurentPoly.coerce(F.coeff(k))
                if a != LaurentPoly.coerce(C.coeff(k)):
                    return False, f"fraction differs at {M.label()} t^{k}"
                if a != LaurentPoly.coerce(path_weight_sum(G, k)):
                    return False, f"paths differ at {M.label()} t^{k}"
        return True
    criterion(5, "transfer matrix = continued fraction = path sums, r=3 seeds, orders 0..5", check)


def test_criterion_06_mutation_rearrangement(criterion):
    def check():
        return _all_ok(checks.suite_mutation_rearrangement(3, order=8))
    criterion(6, "mutations are fraction rearrangements to order 8; weight dictionaries", check)


def test_criterion_07_transfer_matrices(criterion):
    def check():
        return _all_ok(checks.suite_appendix_b(3))
    criterion(7, "nine r=3 transfer matrices match the reference tables", check)


def test_criterion_08_lgv(criterion):
    def check():
        res = checks.suite_lgv(3, nmax=3, alphas=(2, 3))
        return _all_ok(res)
    criterion(8, "determinant = strongly non-intersecting families, r=3, alpha=2,3, n<=3; 8/3/6 pairs", check)


def test_criterion_09_exchange_matrices(criterion):
    def check():
        return _all_ok([c for r in (1, 2, 3, 4) for c in checks.suite_bmatrix(r)])
    criterion(9, "exchange matrices: closed form = iterated mutation, entries, blocks, weights", check)


def _phi_closed(num, den):
    from flint import fmpz_poly
    return fmpz_poly(num), fmpz_poly(den)


def test_criterion_10_enumeration(criterion):
    def check():
        sch, _ = en.stabilized_series(zero_path, 6)
        if sch != [1, 1, 2, 6, 22, 90, 394]:
            return False, f"Schroeder {sch}"
        cat, _ = en.stabilized_series(max_path, 6)
        if cat != [1, 1, 2, 5, 14, 42, 132]:
            return False, f"Catalan {cat}"
        printed = {
            1: ([1, -1], [1, -3, 1]),
            2: ([1, -3, 1], [1, -6, 5, -1]),
            3: ([1, -6, 5, -1], [1, -10, 15, -7, 1]),
        }
        for r, (num, den) in printed.items():
            _, (v, v1) = en.chebyshev_forms(r)
            if (v, v1) != _phi_closed(num, den):
                return False, f"Phi_{r} closed form"
            if en.one_plus_t_ratio(v, v1, 20) != en.all_ones_series(descending_path(r), 20):
                return False, f"Phi_{r} series"
        cases = [("zero", r) for r in (1, 2, 3, 4)] + [("max", r) for r in (1, 2)] + \
                [("descending", r) for r in (1, 2, 3, 4)]
        worst = 0.0
        for kind, r in cases:
            M = en.FAMILIES[kind](r)
            g = en.growth_rate(M)
            rel = abs(en.empirical_ratio(M, 30) - g) / g
            worst = max(worst, rel)
            if rel > 1e-6:
                return False, f"{kind} r={r} ratio off by {rel:.2e}"
            if abs(g - en.growth_closed_form(kind, r)) / g > 1e-12:
                return False, f"{kind} r={r} closed form"
        return True, f"worst ratio error {worst:.1e}"
    criterion(10, "Schroeder, Catalan (132 not 429), Phi_1..Phi_3, growth ratios at n=30", check)


def _round_trips(D) -> bool:
    tilings = enumerate_tilings(D)
    return all(path_to_tiling(tiling_to_path(t, D), D).tiles == t.tiles for t in tilings)


def test_criterion_11_tilings(criterion):
    def check():
        for r in range(1, 6):
            for a in range(1, r + 1):
                for n in range(1, min(a, r + 1 - a, 3) + 1):
                    if not aztec_matching_weight_check(a, n, r):
                        return False, f"matchings r={r} alpha={a} n={n}"
        got = Counter(str(w) for w in matching_weights(3, 3, 5))
        if got != Counter(str(w) for w in ref.diamond_3_weights(3, 5)):
            return False, "eight diamond weights"
        for n in range(1, 5):
            D = halved_aztec(n)
            if not _round_trips(D):
                return False, f"HA n={n}"
            Dones = halved_aztec(n, ones_moves())
            for p in enumerate_step_paths(Dones.moves, Dones.starts[0], Dones.ends[0], Dones.width // 2):
                if [q.steps for q in tiling_to_path(path_to_tiling([p], Dones), Dones)] != [p.steps]:
                    return False, f"path round trip n={n}"
            for a in (2, 3):
                if n >= a - 1 and not _round_trips(indented_halved_aztec(n, a)):
                    return False, f"IHA n={n} alpha={a}"
        for M in fundamental_domain(3):
            for n in range(1, 5):
                if not _round_trips(deformed_domain(M, n)):
                    return False, f"deformed {M.label()} n={n}"
        return True
    criterion(11, "matching sums in the wedge r<=5, eight weights, tiling/path round trips n<=4", check)

"""All-ones specializations: integer sequences, Chebyshev forms, growth rates.

Polynomials in t with integer coefficients are python-flint ``fmpz_poly``
objects; power series are plain lists of ints or Fractions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence

import flint

from .graphs import build_heap_graph, hard_particle_Z
from .motzkin import MotzkinPath, descending_path, max_path, zero_path
from .qsystem import QState, evolve

IntPolyT = flint.fmpz_poly

T = IntPolyT([0, 1])
ONE = IntPolyT([1])


def coeffs(p: IntPolyT, n: int | None = None) -> list[int]:
    cs = [int(c) for c in p.coeffs()]
    if n is not None:
        cs = (cs + [0] * n)[:n]
    return cs


def series_of_ratio(num: IntPolyT, den: IntPolyT, order: int) -> list[Fraction]:
    """Coefficients of num/den up to t^order; den(0) must be nonzero."""
    a = coeffs(num, order + 1)
    b = coeffs(den, order + 1)
    if b[0] == 0:
        raise ZeroDivisionError("denominator vanishes at t = 0")
    out: list[Fraction] = []
    for k in range(order + 1):
        acc = Fraction(a[k])
        for i in range(1, k + 1):
            acc -= b[i] * out[k - i]
        out.append(acc / b[0])
    return out


def series_sqrt(f: Sequence, order: int) -> list[Fraction]:
    """Power series square root with constant term 1."""
    f = [Fraction(x) for x in f] + [Fraction(0)] * (order + 1)
    if f[0] != 1:
        raise ValueError("series_sqrt expects constant term 1")
    s = [Fraction(1)]
    for k in range(1, order + 1):
        acc = f[k] - sum(s[i] * s[k - i] for i in range(1, k))
        s.append(acc / 2)
    return s


def _as_ints(xs) -> list:
    return [int(x) if Fraction(x).denominator == 1 else x for x in xs]


# ---------------------------------------------------------------------------
# sequences


def all_ones_series(M: MotzkinPath, order: int) -> list[int]:
    """[t^n] F_M, n = 0..order, with every seed variable of M set to 1.

    With these values F_M = sum_n R_{1, n + m_1} t^n.
    """
    state = QState.all_ones(M)
    m1 = M.m(1)
    return [int(evolve(state, 1, n + m1)) for n in range(order + 1)]


def all_ones_series_from_paths(M: MotzkinPath, order: int) -> list[int]:
    """The same coefficients from the transfer matrix with unit weights."""
    from .graphs import build_gamma
    from .paths import generating_function
    G = build_gamma(M, [None] + [1] * (2 * M.r + 1))
    F = generating_function(G, order, verify=False)
    return [int(Fraction(F.coeff(k))) for k in range(order + 1)]


def stabilized_series(family: Callable[[int], MotzkinPath], order: int, r_start: int = 1,
                      r_max: int = 60) -> tuple[list[int], int]:
    """Increase r until the first order+1 coefficients agree for r and r + 1."""
    prev = all_ones_series(family(r_start), order)
    for r in range(r_start + 1, r_max + 1):
        cur = all_ones_series(family(r), order)
        if cur == prev:
            return cur, r - 1
        prev = cur
    raise RuntimeError("coefficients did not stabilize")


def schroeder_series(order: int) -> list[int]:
    """(3 - t - sqrt(1 - 6t + t^2))/2."""
    s = series_sqrt([1, -6, 1], order)
    out = [(Fraction(3) - s[0]) / 2, (Fraction(-1) - s[1]) / 2] + [-c / 2 for c in s[2:]]
    return _as_ints(out[: order + 1])


def catalan_series(order: int) -> list[int]:
    """(1 - sqrt(1 - 4t))/(2t)."""
    s = series_sqrt([1, -4], order + 1)
    return _as_ints([-s[k + 1] / 2 for k in range(order + 1)])


def catalan_numbers(order: int) -> list[int]:
    return [math.comb(2 * n, n) // (n + 1) for n in range(order + 1)]


def mutated_half_infinite_series(order: int) -> list[int]:
    """2 + t + t^2/(2 - t - z) with z = (F - 1)/t, F the large Schroeder series."""
    z = [Fraction(c) for c in schroeder_series(order + 1)[1:]]
    den = [2 - z[0], -1 - z[1]] + [-c for c in z[2:]]
    q = [Fraction(0), Fraction(0)] + series_of_ratio(ONE, IntPolyT([int(c) for c in den]), order)
    out = [Fraction(2), Fraction(1)] + q[2:]
    return _as_ints(out[: order + 1])


def mutated_half_infinite_series_radical(order: int) -> list[int]:
    """2 + t + t^2 (1 - 5t + 2t^2 + sqrt(1 - 6t + t^2)) / (1 - 7t + 5t^2 - t^3), expanded as printed.

    Expanded literally this is twice ``mutated_half_infinite_series`` from
    t^2 on; the factor 1/2 in front of the fraction is missing.
    """
    s = series_sqrt([1, -6, 1], order)
    num = [Fraction(c) for c in (1, -5, 2)] + [Fraction(0)] * (order + 1)
    num = [num[k] + s[k] for k in range(order + 1)]
    den = [1, -7, 5, -1] + [0] * (order + 1)
    q: list[Fraction] = []
    for k in range(order + 1):
        acc = num[k] - sum(den[i] * q[k - i] for i in range(1, k + 1))
        q.append(acc)
    out = [Fraction(2), Fraction(1)] + q
    return _as_ints(out[: order + 1])


def mutated_seed_series(r: int, order: int) -> list[int]:
    """R_{1,n}, n = 0..order, from the seed mu_1 M_0 with all its variables set to 1."""
    M = zero_path(r).with_entry(1, 1)
    state = QState.all_ones(M)
    return [int(evolve(state, 1, n)) for n in range(order + 1)]


# ---------------------------------------------------------------------------
# Chebyshev forms


def p_polys(m: int) -> list[IntPolyT]:
    """P_0 = 1, P_1 = 1 - t, P_{k+1} = (1 - t) P_k - t P_{k-1}."""
    ps = [ONE, ONE - T]
    while len(ps) <= m:
        ps.append((ONE - T) * ps[-1] - T * ps[-2])
    return ps[: m + 1]


def v_polys(m: int) -> list[IntPolyT]:
    """V_0 = 1, V_1 = 1 - t, V_{k+1} = (2 - t) V_k - V_{k-1}."""
    vs = [ONE, ONE - T]
    while len(vs) <= m:
        vs.append((2 * ONE - T) * vs[-1] - vs[-2])
    return vs[: m + 1]


def chebyshev_u(m: int) -> list[IntPolyT]:
    """Second-kind Chebyshev polynomials normalized so that U_k(2 cos x) = sin((k+1)x)/sin x.

    U_0 = 1, U_1 = x, U_{k+1} = x U_k - U_{k-1}.
    """
    x = IntPolyT([0, 1])
    us = [ONE, x]
    while len(us) <= m:
        us.append(x * us[-1] - us[-2])
    return us[: m + 1]


def p_from_u(m: int) -> IntPolyT:
    """t^{m/2} U_m(1/sqrt(t) - sqrt(t)) expanded as a polynomial in t."""
    u = coeffs(chebyshev_u(m)[m])
    out = IntPolyT([0])
    for k, c in enumerate(u):
        if c == 0:
            continue
        # x^k t^{m/2} = (1 - t)^k t^{(m-k)/2}; k has the parity of m
        out += c * (ONE - T) ** k * T ** ((m - k) // 2)
    return out


def v_from_u(m: int) -> IntPolyT:
    """(-1)^m U_{2m}(sqrt(t)): U_{2m} is even, so substitute x^2 = t."""
    u = coeffs(chebyshev_u(2 * m)[2 * m])
    return (-1) ** m * IntPolyT([u[2 * k] for k in range(m + 1)])


def chebyshev_forms(r: int) -> tuple[tuple[IntPolyT, IntPolyT], tuple[IntPolyT, IntPolyT]]:
    """((P_r, P_{r+1}), (V_r, V_{r+1})): F = 1 + t P_r/P_{r+1}, Phi_r = 1 + t V_r/V_{r+1}."""
    if r < 1:
        raise ValueError("r must be at least 1")
    ps = p_polys(r + 1)
    vs = v_polys(r + 1)
    return (ps[r], ps[r + 1]), (vs[r], vs[r + 1])


def one_plus_t_ratio(num: IntPolyT, den: IntPolyT, order: int) -> list[int]:
    s = series_of_ratio(num, den, order)
    return _as_ints([Fraction(1)] + s[:order])


# ---------------------------------------------------------------------------
# growth rates


def denominator_polynomial(M: MotzkinPath) -> IntPolyT:
    """sum_k (-t)^k (number of k-particle configurations on the heap graph of M)."""
    H = build_heap_graph(M, [None] + [1] * (2 * M.r + 1))
    counts = hard_particle_Z(H, by_count=True)
    return IntPolyT([(-1) ** k * int(c) for k, c in enumerate(counts)])


def _sturm(p: IntPolyT) -> list:
    q = flint.fmpq_poly(p)
    seq = [q, q.derivative()]
    while seq[-1].degree() > 0:
        rem = -(seq[-2] % seq[-1])
        if rem == 0:
            break
        seq.append(rem)
    return seq


def _sign_changes(seq, x: Fraction) -> int:
    xv = flint.fmpq(x.numerator, x.denominator)
    signs = []
    for s in seq:
        v = s(xv)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def smallest_positive_root(p: IntPolyT, tol: Fraction = Fraction(1, 10 ** 18)) -> Fraction:
    """Exact rational bisection, using Sturm counts to isolate the smallest root."""
    seq = _sturm(p)
    lo = Fraction(0)
    if p(0) == 0:
        raise ValueError("t = 0 is a root")
    hi = Fraction(1)
    while _sign_changes(seq, lo) - _sign_changes(seq, hi) == 0:
        hi *= 2
        if hi > 2 ** 64:
            raise ValueError("no positive root")
    while hi - lo > tol * hi:
        mid = (lo + hi) / 2
        if _sign_changes(seq, lo) - _sign_changes(seq, mid) > 0:
            hi = mid
        else:
            lo = mid
        # keep the numbers small
        lo = lo.limit_denominator(10 ** 40) if lo.denominator > 10 ** 60 else lo
    return hi


def growth_rate(M: MotzkinPath) -> float:
    """1/t_0 for the smallest root t_0 of the all-ones denominator of F_M."""
    return float(1 / smallest_positive_root(denominator_polynomial(M)))


def empirical_ratio(M: MotzkinPath, n: int = 30) -> float:
    state = QState.all_ones(M)
    m1 = M.m(1)
    a = evolve(state, 1, n + m1)
    b = evolve(state, 1, n + 1 + m1)
    return float(Fraction(int(b), int(a)))


def growth_closed_form(kind: str, r: int) -> float:
    """Predicted per-step growth for the zero, maximal and maximal descending paths."""
    if kind == "zero":
        c = math.cos(math.pi / (r + 2))
        return (c + math.sqrt(c * c + 1)) ** 2
    if kind == "max":
        return (2 * math.cos(math.pi / (2 * r + 3))) ** 2
    if kind == "descending":
        return 1 / (2 * math.sin(math.pi / (2 * (2 * r + 3)))) ** 2
    raise ValueError(f"unknown family {kind!r}")


FAMILIES = {
    "zero": zero_path,
    "max": max_path,
    "descending": descending_path,
}

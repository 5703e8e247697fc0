"""Path weights attached to a seed, their mutation rules, and exchange matrices."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .errors import DegenerateSum, IllegalMove
from .laurent import LaurentPoly, RationalFunction, VarId, substitute_rational
from .motzkin import MotzkinPath, MutationMove, apply_move, forward_move, move_kind, mutation_sequence, zero_path


@dataclass
class SkeletonWeights:
    """y_1..y_{2r+1}; ``y[0]`` is an unused placeholder so indices read naturally."""

    M: MotzkinPath | None
    y: list = field(default_factory=list)

    @property
    def r(self) -> int:
        return (len(self.y) - 2) // 2

    def __getitem__(self, i: int):
        return self.y[i]

    def as_list(self) -> list:
        return list(self.y[1:])

    def odd_product(self):
        out = 1
        for i in range(1, len(self.y), 2):
            out = out * self.y[i]
        return out


@dataclass
class RedundantWeights:
    yij: dict[tuple[int, int], Any] = field(default_factory=dict)

    def __getitem__(self, key):
        return self.yij[key]


# ---------------------------------------------------------------------------
# closed forms


class _Ratio:
    """Product of R-symbols with integer exponents (symbols may leave the seed)."""

    def __init__(self, exps=None):
        self.exps: dict[tuple[int, int], int] = defaultdict(int, exps or {})

    def __mul__(self, other: "_Ratio") -> "_Ratio":
        out = _Ratio(self.exps)
        for k, e in other.exps.items():
            out.exps[k] += e
        return out

    def inv(self) -> "_Ratio":
        return _Ratio({k: -e for k, e in self.exps.items()})

    def __truediv__(self, other: "_Ratio") -> "_Ratio":
        return self * other.inv()

    def to_poly(self, M: MotzkinPath) -> LaurentPoly:
        out = {}
        for (a, n), e in self.exps.items():
            if not e:
                continue
            if not M.in_seed(a, n):
                raise ValueError(f"R[{a}][{n}] does not cancel from a seed weight of {M.label()}")
            out[VarId(a, n)] = e
        return LaurentPoly.monomial(out)


def _sym(r: int, a: int, n: int) -> _Ratio:
    if a == 0 or a == r + 1:
        return _Ratio()
    return _Ratio({(a, n): 1})


def _lam(r, a, n):
    return _sym(r, a, n + 1) / _sym(r, a, n)


def _mu(r, a, n):
    return _sym(r, a, n) / _sym(r, a - 1, n)


def weights_for_seed(M: MotzkinPath) -> SkeletonWeights:
    """Skeleton weights as Laurent monomials in the seed variables of M.

    Odd weights are ratios of lambda = R[a][n+1]/R[a][n]; even weights are
    ratios of mu = R[a][n]/R[a-1][n] times the two Kronecker corrections.
    A correction whose neighbouring row is missing (a = 1 below, a = r
    above) is never switched on.
    """
    r = M.r

    def m(a):
        return M.m(a) if 1 <= a <= r else None

    y: list = [None]
    for a in range(1, r + 2):
        low = m(a - 1) if a > 1 else 0
        top = m(a) if a <= r else 0
        odd = _lam(r, a, top) / _lam(r, a - 1, low)
        y.append(odd.to_poly(M))
        if a <= r:
            ev = _mu(r, a + 1, m(a) + 1) / _mu(r, a, m(a))
            above, below = m(a + 1), m(a - 1)
            if above is not None and m(a) == above + 1:
                ev = ev * _lam(r, a + 1, above) / _lam(r, a + 1, m(a))
            if below is not None and below == m(a) + 1:
                ev = ev * _lam(r, a - 1, m(a)) / _lam(r, a - 1, below)
            y.append(ev.to_poly(M))
    return SkeletonWeights(M, y)


def yij_from_skeleton(y: Sequence, i: int, j: int):
    """Weight of the descending edge i -> j, for i > j."""
    if i == j + 1:
        return y[2 * j]
    num = 1
    for l in range(j, i):
        num = num * y[2 * l]
    den = 1
    for l in range(j + 1, i):
        den = den * y[2 * l - 1]
    return _frac(num, den)


def redundant_weights(M: MotzkinPath, sk: SkeletonWeights | None = None,
                      edges: Sequence[tuple[int, int]] | None = None) -> RedundantWeights:
    """Weights y_{i,j} for every long descending edge i -> j of the target graph of M."""
    sk = sk or weights_for_seed(M)
    if edges is None:
        from .graphs import long_edges
        edges = long_edges(M)
    return RedundantWeights({(i, j): yij_from_skeleton(sk.y, i, j) for i, j in edges})


def product_condition_holds(y: Sequence, i: int, j: int, m: int, l: int) -> bool:
    """y_{i,j} y_{m,l} = y_{i,l} y_{m,j} for i > m and j > l."""
    lhs = yij_from_skeleton(y, i, j) * yij_from_skeleton(y, m, l)
    rhs = yij_from_skeleton(y, i, l) * yij_from_skeleton(y, m, j)
    return RationalFunction.coerce(lhs) == RationalFunction.coerce(rhs)


# ---------------------------------------------------------------------------
# mutation of weights


def _frac(num, den):
    if isinstance(den, LaurentPoly) and den.is_monomial():
        return LaurentPoly.coerce(num) * den.inverse()
    if isinstance(num, (LaurentPoly, RationalFunction)) or isinstance(den, (LaurentPoly, RationalFunction)):
        return (RationalFunction.coerce(num) / RationalFunction.coerce(den)).simplify()
    return Fraction(num) / Fraction(den)


def mutate_weight_list(y: Sequence, alpha: int, kind: str) -> list:
    """Apply the kind (a) or (b) transformation at row alpha to a weight list."""
    a = 2 * alpha - 1
    y = list(y)
    s = y[a] + y[a + 1]
    if _is_zero(s):
        raise DegenerateSum("y_{2a-1} + y_{2a} vanishes")
    new_a = s
    new_b = _frac(y[a + 1] * y[a + 2], s)
    new_c = _frac(y[a] * y[a + 2], s)
    if kind == "b":
        if a + 3 >= len(y):
            raise IllegalMove("kind (b) needs a weight above the moved row")
        y[a + 3] = _frac(y[a + 3] * y[a], s)
    elif kind != "a":
        raise IllegalMove(f"unknown move kind {kind!r}")
    y[a], y[a + 1], y[a + 2] = new_a, new_b, new_c
    return y


def _is_zero(x) -> bool:
    if isinstance(x, (LaurentPoly, RationalFunction)):
        return x.is_zero()
    return x == 0


def mutate_weights(sk: SkeletonWeights, move: MutationMove, kind: str | None = None) -> SkeletonWeights:
    """Transform skeleton weights across a forward move; kind is inferred when omitted."""
    if sk.M is None and kind is None:
        raise IllegalMove("the move kind cannot be inferred without a path")
    if kind is None:
        kind = move_kind(sk.M, move.alpha)
    elif sk.M is not None and move_kind(sk.M, move.alpha) != kind:
        raise IllegalMove(f"move at alpha={move.alpha} on {sk.M.label()} is not of kind ({kind})")
    new_M = apply_move(sk.M, move) if sk.M is not None else None
    return SkeletonWeights(new_M, mutate_weight_list(sk.y, move.alpha, kind))


def inverse_mutate_weight_list(y: Sequence, alpha: int, kind: str) -> list:
    """Undo :func:`mutate_weight_list`: a = a'b'... recovered from (a', b', c')."""
    a = 2 * alpha - 1
    y = list(y)
    ap, bp, cp = y[a], y[a + 1], y[a + 2]
    # a' = a + b, b' = bc/(a+b), c' = ac/(a+b)  =>  c = b' + c', a = a'c'/c, b = a'b'/c
    c = bp + cp
    old_a = _frac(ap * cp, c)
    old_b = _frac(ap * bp, c)
    if kind == "b":
        y[a + 3] = _frac(y[a + 3] * ap, old_a)
    y[a], y[a + 1], y[a + 2] = old_a, old_b, c
    return y


def mutation_substitution(M: MotzkinPath, alpha: int) -> tuple[VarId, LaurentPoly, LaurentPoly]:
    """The relation that defines the forward move at alpha.

    Returns (v, num, den) with the new seed variable v = num/den written in
    the variables of M.
    """
    r = M.r
    m = M.m(alpha)
    old = VarId(alpha, m)
    mid = LaurentPoly.var(VarId(alpha, m + 1))
    nb = LaurentPoly.one()
    for b in (alpha - 1, alpha + 1):
        if 1 <= b <= r:
            if not M.in_seed(b, m + 1):
                raise IllegalMove(f"R[{b}][{m + 1}] is not in the seed of {M.label()}")
            nb = nb * LaurentPoly.var(VarId(b, m + 1))
    return VarId(alpha, m + 2), mid * mid + nb, LaurentPoly.var(old)


def express_in_old_seed(p, M: MotzkinPath, alpha: int) -> RationalFunction:
    """Rewrite a weight of the mutated seed in the variables of M."""
    v, num, den = mutation_substitution(M, alpha)
    if isinstance(p, RationalFunction):
        return express_in_old_seed(p.num, M, alpha) / express_in_old_seed(p.den, M, alpha)
    return substitute_rational(LaurentPoly.coerce(p), v, num, den)


def check_weight_mutation(M: MotzkinPath, alpha: int) -> bool:
    """mutate_weights(weights_for_seed(M)) equals weights_for_seed(M') after rewriting."""
    move = forward_move(M, alpha)
    moved = mutate_weights(weights_for_seed(M), move)
    target = weights_for_seed(apply_move(M, move))
    for i in range(1, len(target.y)):
        if RationalFunction.coerce(moved.y[i]) != express_in_old_seed(target.y[i], M, alpha):
            return False
    return True


# ---------------------------------------------------------------------------
# exchange matrices


@dataclass
class ExchangeMatrix:
    B: list[list[int]]

    @property
    def size(self) -> int:
        return len(self.B)

    def __getitem__(self, ij):
        i, j = ij
        return self.B[i][j]

    def __eq__(self, other):
        return isinstance(other, ExchangeMatrix) and self.B == other.B

    def is_skew_symmetric(self) -> bool:
        n = self.size
        return all(self.B[i][j] == -self.B[j][i] for i in range(n) for j in range(n))

    def entries(self) -> set[int]:
        return {x for row in self.B for x in row}

    def blocks_sum_to_zero(self) -> bool:
        r = self.size // 2
        return all(
            self.B[i][j] + self.B[i + r][j] + self.B[i][j + r] + self.B[i + r][j + r] == 0
            for i in range(r) for j in range(r)
        )


def cartan(r: int) -> list[list[int]]:
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)] for i in range(r)]


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def b_matrix(M: MotzkinPath) -> ExchangeMatrix:
    """Closed form of the exchange matrix at M (floor-of-half sign pattern)."""
    r = M.r
    C = cartan(r)
    B = [[0] * (2 * r) for _ in range(2 * r)]
    for i in range(1, r + 1):
        mi = M.m(i)
        for j in range(1, r + 1):
            mj = M.m(j)
            adj = 1 if abs(i - j) == 1 else 0
            c = C[i - 1][j - 1]
            B[i - 1][j - 1] = _sgn((mj + 1) // 2) * (_sgn(mi // 2) - _sgn(mj // 2)) * adj
            B[i - 1][j + r - 1] = _sgn((mi + 1) // 2 + mj // 2 + 1) * c
            B[i + r - 1][j - 1] = _sgn(mi // 2 + (mj + 1) // 2) * c
            B[i + r - 1][j + r - 1] = _sgn(mi // 2) * (_sgn((mj + 1) // 2) - _sgn((mi + 1) // 2)) * adj
    return ExchangeMatrix(B)


def matrix_mutation(B: list[list[int]], k: int) -> list[list[int]]:
    """Fomin-Zelevinsky mutation in direction k (0-based)."""
    n = len(B)
    out = [row[:] for row in B]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                prod = B[i][k] * B[k][j]
                if prod > 0:
                    sign = 1 if B[i][k] > 0 else -1
                    out[i][j] = B[i][j] + sign * prod
    return out


def b_matrix_by_mutation(M: MotzkinPath) -> ExchangeMatrix:
    r = M.r
    B = b_matrix(zero_path(r)).B
    for mv in mutation_sequence(M):
        B = matrix_mutation(B, mv.index(r) - 1)
    return ExchangeMatrix(B)


def cluster_vector(M: MotzkinPath) -> list[VarId]:
    """x_1..x_{2r}: the even-level seed variable of each row first, then the odd ones."""
    r = M.r
    out: list[VarId | None] = [None] * (2 * r)
    for a in range(1, r + 1):
        for lvl in (M.m(a), M.m(a) + 1):
            pos = a if lvl % 2 == 0 else a + r
            out[pos - 1] = VarId(a, lvl)
    return out  # type: ignore[return-value]


def seed_permutation(M: MotzkinPath) -> dict[int, int]:
    """Position in the cluster vector of R[a][m_a] (key a) and R[a][m_a+1] (key a + r)."""
    r = M.r
    sigma = {}
    for a in range(1, r + 1):
        even = M.m(a) % 2 == 0
        sigma[a] = a if even else a + r
        sigma[a + r] = a + r if even else a
    return sigma


def cluster_mutation(M: MotzkinPath, k: int) -> LaurentPoly:
    """Exchange relation x_k x_k' = prod x^[B_ik]_+ + prod x^[-B_ik]_+, returned as x_k'."""
    B = b_matrix(M).B
    x = cluster_vector(M)
    plus = {x[i]: B[i][k - 1] for i in range(len(x)) if B[i][k - 1] > 0}
    minus = {x[i]: -B[i][k - 1] for i in range(len(x)) if B[i][k - 1] < 0}
    total = LaurentPoly.monomial(plus) + LaurentPoly.monomial(minus)
    return total * LaurentPoly.var(x[k - 1]).inverse()


def verify_weight_b_relation(M: MotzkinPath) -> bool:
    """y_{2a-1}/y_{2a} and y_{2a}/y_{2a+1} against columns of B(M)."""
    r = M.r
    y = weights_for_seed(M).y
    B = b_matrix(M).B
    x = cluster_vector(M)
    sigma = seed_permutation(M)
    for a in range(1, r + 1):
        for lhs, col in ((y[2 * a - 1] * y[2 * a].inverse(), sigma[a]),
                         (y[2 * a] * y[2 * a + 1].inverse(), sigma[a + r])):
            rhs = LaurentPoly.monomial({x[i]: B[i][col - 1] for i in range(2 * r) if B[i][col - 1]})
            if lhs != rhs:
                return False
    return True

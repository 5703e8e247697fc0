"""Q-system evolution over a Motzkin-path seed.

The A_r Q-system is the recurrence

    R[a][n+1] * R[a][n-1] = R[a][n]^2 + R[a+1][n] * R[a-1][n]

with the boundary rows R[0][n] = R[r+1][n] = 1.  A :class:`QState` holds a
seed (symbolic or numeric) and memoizes every value it has produced.
Values above the seed are reached by forward steps, values below it by
backward steps; the two never mix, so each step divides by a value that is
already known to be nonzero.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .errors import ConservationViolated, IndexOutOfRange
from .laurent import (
    LaurentPoly,
    RationalFunction,
    TruncSeries,
    VarId,
    bareiss_det,
    random_point,
)
from .motzkin import MotzkinPath, zero_path


def _div(a, b):
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        return LaurentPoly.coerce(a).divexact(b)
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


class QState:
    """Seed plus cache of computed values.

    ``values`` maps seed VarIds to numbers; when omitted the seed is
    symbolic and every value is a LaurentPoly in the 2r seed variables.
    """

    def __init__(self, M: MotzkinPath, values: Mapping[VarId, Any] | None = None):
        self.M = M
        self.r = M.r
        self.symbolic = values is None
        self._cache: dict[tuple[int, int], Any] = {}
        self._lock = threading.RLock()
        self._point: dict[VarId, Fraction] | None = None
        self._point_values: dict[tuple[int, int], Fraction] = {}
        full = tuple(sorted(M.seed_vars()))
        for v in M.seed_vars():
            if values is None:
                self._cache[(v.alpha, v.level)] = LaurentPoly.var(v).lift(full)
            else:
                self._cache[(v.alpha, v.level)] = values[v]

    @classmethod
    def symbolic_seed(cls, M: MotzkinPath) -> "QState":
        return cls(M)

    @classmethod
    def all_ones(cls, M: MotzkinPath) -> "QState":
        return cls(M, {v: 1 for v in M.seed_vars()})

    @classmethod
    def numeric(cls, M: MotzkinPath, values: Mapping[VarId, Any]) -> "QState":
        return cls(M, values)

    @property
    def seed_vars(self) -> list[VarId]:
        return self.M.seed_vars()

    def one(self):
        return LaurentPoly.one() if self.symbolic else 1

    def R(self, alpha: int, n: int):
        return evolve(self, alpha, n)

    def oracle_point(self) -> dict[VarId, Fraction]:
        """A fixed random rational point used by determinant checks."""
        if self._point is None:
            self._point = random_point(self.seed_vars, random.Random(hash(self.M.values) & 0xFFFF))
        return self._point

    def value_at_point(self, alpha: int, n: int) -> Fraction:
        key = (alpha, n)
        if key not in self._point_values:
            self._point_values[key] = Fraction(LaurentPoly.coerce(evolve(self, alpha, n)).evaluate(self.oracle_point()))
        return self._point_values[key]


def evolve(state: QState, alpha: int, n: int):
    """R[alpha][n] expressed in the state's seed."""
    r = state.r
    if alpha == 0 or alpha == r + 1:
        return state.one()
    if not 1 <= alpha <= r:
        raise IndexOutOfRange(f"alpha={alpha} outside 0..{r + 1}")
    key = (alpha, n)
    cached = state._cache.get(key)
    if cached is not None:
        return cached
    with state._lock:
        if key in state._cache:
            return state._cache[key]
        m = state.M.m(alpha)
        # Walk outward one level at a time so recursion depth stays bounded
        # by r rather than by |n|.
        if n > m + 1:
            for k in range(m + 2, n + 1):
                _step(state, alpha, k, forward=True)
        else:
            for k in range(m - 1, n - 1, -1):
                _step(state, alpha, k, forward=False)
        return state._cache[key]


def _step(state: QState, alpha: int, k: int, forward: bool):
    if (alpha, k) in state._cache:
        return
    near = k - 1 if forward else k + 1
    far = k - 2 if forward else k + 2
    mid = evolve(state, alpha, near)
    num = mid * mid + evolve(state, alpha + 1, near) * evolve(state, alpha - 1, near)
    state._cache[(alpha, k)] = _div(num, evolve(state, alpha, far))


def renormalize_sign(alpha: int, r: int):
    """The factor e^{i pi k / 2} with k = alpha (r + 1 - alpha) mod 4.

    Returned as an int when real and as a Python complex otherwise.
    """
    k = (alpha * (r + 1 - alpha)) % 4
    return {0: 1, 1: 1j, 2: -1, 3: -1j}[k]


# ---------------------------------------------------------------------------
# discrete Wronskians


def wronskian_matrix(state: QState, alpha: int, n: int) -> list[list]:
    return [[evolve(state, 1, n + i + j - 1 - alpha) for j in range(1, alpha + 1)]
            for i in range(1, alpha + 1)]


def wronskian(state: QState, alpha: int, n: int, check: bool = True):
    """det(R[1][n+i+j-1-alpha]) over i, j = 1..alpha.

    With ``check`` the symbolic determinant is compared with the determinant
    of the same matrix evaluated at a random rational point.
    """
    if alpha == 0:
        return state.one()
    idx = [[n + i + j - 1 - alpha for j in range(1, alpha + 1)] for i in range(1, alpha + 1)]
    return _hankel_det(state, idx, check)


def defect_wronskian(state: QState, alpha: int, m: int, n: int, check: bool = True):
    """alpha x alpha minor of the R[1] Hankel array with column alpha-m+1 skipped.

    m = 0 gives R[alpha][n] and m = alpha gives R[alpha][n+1].
    """
    if not 0 <= m <= alpha:
        raise IndexOutOfRange(f"defect position m={m} outside 0..{alpha}")
    if alpha == 0:
        return state.one()
    cut = alpha - m

    def col(j):
        return j if j <= cut else j + 1

    idx = [[n + i + col(j) - alpha - 1 for j in range(1, alpha + 1)] for i in range(1, alpha + 1)]
    return _hankel_det(state, idx, check)


def _hankel_det(state: QState, idx: list[list[int]], check: bool):
    """Determinant of the array R[1][idx[i][j]], optionally checked numerically."""
    mat = _small_corner_first([[evolve(state, 1, k) for k in row] for row in idx])
    det = bareiss_det(mat)
    if check and state.symbolic:
        num = [[state.value_at_point(1, k) for k in row] for row in idx]
        expected = bareiss_det(num)
        got = LaurentPoly.coerce(det).evaluate(state.oracle_point())
        if Fraction(got) != Fraction(expected):
            raise AssertionError("symbolic determinant disagrees with its numeric evaluation")
    return det


def _size(x) -> int:
    return len(x) if isinstance(x, LaurentPoly) else 1


def _small_corner_first(mat: list[list]) -> list[list]:
    # Bareiss works through leading minors; starting from the corner with
    # the smallest entries keeps the intermediate minors small.  Reversing
    # both rows and columns leaves the determinant unchanged.
    if mat and _size(mat[-1][-1]) < _size(mat[0][0]):
        return [row[::-1] for row in mat[::-1]]
    return mat


# ---------------------------------------------------------------------------
# conserved quantities


def time_weights(state: QState, n: int = 0) -> list:
    """Weights y_1..y_{2r+1} at time n, index 0 unused.

    Monomial ratios come back as LaurentPoly; anything else as a
    RationalFunction (numeric seeds give numbers).
    """
    r = state.r

    def val(a, k):
        return evolve(state, a, k)

    out: list = [None]
    for a in range(1, r + 2):
        num = val(a - 1, n) * val(a, n + 1)
        den = val(a, n) * val(a - 1, n + 1)
        out.append(_ratio(num, den))
        if a <= r:
            num = val(a - 1, n) * val(a + 1, n + 1)
            den = val(a, n) * val(a, n + 1)
            out.append(_ratio(num, den))
    return out


def _ratio(num, den):
    if isinstance(num, LaurentPoly) or isinstance(den, LaurentPoly):
        den = LaurentPoly.coerce(den)
        if den.is_monomial():
            return LaurentPoly.coerce(num) * den.inverse()
        return RationalFunction(num, den).simplify()
    return _div(num, den)


def c_recursion(y: list, alpha_max: int) -> dict[tuple[int, int], Any]:
    """C[alpha][m] from C = C[a-1][m] + y_{2a-1} C[a-1][m-1] + y_{2a-2} C[a-2][m-1].

    ``y`` is indexed from 1; y_0 is taken as 0.
    """
    C: dict[tuple[int, int], Any] = {(0, 0): 1}

    def get(a, m):
        if a < 0 or m < 0 or m > a:
            return 0
        return C[(a, m)]

    for a in range(1, alpha_max + 1):
        for m in range(0, a + 1):
            val = get(a - 1, m)
            if m >= 1:
                val = val + y[2 * a - 1] * get(a - 1, m - 1)
                if a >= 2:
                    val = val + y[2 * a - 2] * get(a - 2, m - 1)
            C[(a, m)] = val
    return C


@dataclass
class ConservedSet:
    c: list = field(default_factory=list)

    def __getitem__(self, j):
        return self.c[j]

    def __len__(self):
        return len(self.c)


def conserved(state: QState, cross_check: Iterable[int] | None = (0, 1)) -> ConservedSet:
    """c_0..c_{r+1} from the weight recursion at time 0.

    For a symbolic seed other than the zero path the recursion is run in
    the zero-path variables, where every weight is a monomial, and the
    result is carried over by substitution.  ``cross_check`` lists times k
    at which the defect Wronskians c[r+1][j][k] are recomputed as
    determinants in the state's own seed; any disagreement raises
    ConservationViolated.
    """
    r = state.r
    if not state.symbolic:
        C = c_recursion(time_weights(state, 0), r + 1)
        cs = [C[(r + 1, j)] for j in range(r + 2)]
    else:
        base = _zero_path_conserved(r)
        if state.M == zero_path(r):
            cs = list(base)
        else:
            images = {}
            for a in range(1, r + 1):
                images[VarId(a, 0)] = evolve(state, a, 0)
                images[VarId(a, 1)] = evolve(state, a, 1)
            cs = [transport(c, images) for c in base]
    for k in cross_check or ():
        for j in range(r + 2):
            d = defect_wronskian(state, r + 1, j, k)
            if d != cs[j]:
                raise ConservationViolated(f"c_{j} from the recursion differs from the determinant at time {k}")
    return ConservedSet(cs)


_ZERO_PATH_CONSERVED: dict[int, list[LaurentPoly]] = {}


def _zero_path_conserved(r: int) -> list[LaurentPoly]:
    if r not in _ZERO_PATH_CONSERVED:
        st = QState(zero_path(r))
        C = c_recursion(time_weights(st, 0), r + 1)
        _ZERO_PATH_CONSERVED[r] = [LaurentPoly.coerce(C[(r + 1, j)]) for j in range(r + 2)]
    return _ZERO_PATH_CONSERVED[r]


def transport(p: LaurentPoly, images: Mapping[VarId, Any]):
    """Substitute images for variables when the result is known to be Laurent.

    The monomial denominator of ``p`` is cleared first, so only nonnegative
    powers of the images are formed; the final division is exact.
    """
    den = p.denominator_monomial()
    num = (p * den).subs(images)
    dval = den.subs(images)
    return _div(num, dval)


def shifted_conserved(state: QState, k: int) -> list:
    """The zero-path formulas for c_j evaluated on the window (R[.][k], R[.][k+1])."""
    r = state.r
    images = {}
    for a in range(1, r + 1):
        images[VarId(a, 0)] = evolve(state, a, k)
        images[VarId(a, 1)] = evolve(state, a, k + 1)
    return [transport(c, images) for c in _zero_path_conserved(r)]


def verify_linear_recursion(state: QState, n_range: Iterable[int], cs: ConservedSet | None = None) -> bool:
    """Check sum_m (-1)^m c_{r+1-m} R[1][n+m] = 0 for every n in the window."""
    r = state.r
    cs = cs or conserved(state, cross_check=())
    for n in n_range:
        total = 0
        for m in range(r + 2):
            term = cs[r + 1 - m] * evolve(state, 1, n + m)
            total = total + term if m % 2 == 0 else total - term
        if total != 0:
            return False
    return True


@dataclass
class GeneratingFraction:
    """F(t) = numer(t)/denom(t) with coefficient lists in increasing degree."""

    numer: list
    denom: list

    def series(self, order: int) -> TruncSeries:
        num = TruncSeries(self.numer, order)
        den = TruncSeries(self.denom, order)
        return num / den


def generating_fraction(state: QState, cs: ConservedSet | None = None) -> GeneratingFraction:
    """Rational form of sum_{n>=0} R[1][n] t^n."""
    r = state.r
    cs = cs or conserved(state, cross_check=())
    numer = []
    for j in range(r + 1):
        d = 0
        for i in range(j + 1):
            term = evolve(state, 1, j - i) * cs[i]
            d = d + term if (j - i) % 2 == 0 else d - term
        numer.append(d if j % 2 == 0 else -d)
    denom = [cs[j] if j % 2 == 0 else -cs[j] for j in range(r + 2)]
    return GeneratingFraction(numer, denom)


def zero_path_state(r: int) -> QState:
    return QState(zero_path(r))

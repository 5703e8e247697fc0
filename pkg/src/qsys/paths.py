"""Walks on target graphs: transfer matrices, generating functions, explicit
enumeration, re-rooting and strongly non-intersecting families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import OutOfDomain, TooLarge
from .graphs import TargetGraph, build_gamma
from .laurent import LaurentPoly, RationalFunction, TruncSeries, VarId, bareiss_det
from .motzkin import MotzkinPath, mutation_sequence, reflect, translate

MAX_ENUM_DESCENTS = 8
T_VAR = VarId(0, 0, "t")


# ---------------------------------------------------------------------------
# transfer matrix and generating function


@dataclass
class TransferMatrix:
    """Entries ``(row, col) -> (t_power, weight)``; row/col follow ``vertices``."""

    vertices: list[str]
    entries: dict[tuple[int, int], tuple[int, Any]]

    @property
    def dim(self) -> int:
        return len(self.vertices)

    def pattern(self) -> set[tuple[int, int]]:
        return set(self.entries)

    def entry(self, i: int, j: int) -> tuple[int, Any]:
        return self.entries.get((i, j), (0, 0))

    def series_matrix(self, order: int) -> list[list[TruncSeries]]:
        n = self.dim
        out = [[TruncSeries([0], order) for _ in range(n)] for _ in range(n)]
        for (i, j), (p, w) in self.entries.items():
            cs = [0] * (order + 1)
            if p <= order:
                cs[p] = w
            out[i][j] = TruncSeries(cs)
        return out

    def polynomial_matrix(self) -> list[list[LaurentPoly]]:
        """I - T with t as an ordinary variable."""
        n = self.dim
        t = LaurentPoly.var(T_VAR)
        out = [[LaurentPoly.constant(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for (i, j), (p, w) in self.entries.items():
            out[i][j] = out[i][j] - (t ** p) * LaurentPoly.coerce(w)
        return out

    def to_rows(self) -> list[list[str]]:
        rows = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                p, w = self.entry(i, j)
                if w == 0:
                    row.append("0")
                elif p == 0:
                    row.append(str(w))
                else:
                    row.append(f"t*{w}" if p == 1 else f"t^{p}*{w}")
            rows.append(row)
        return rows

    def to_json_obj(self) -> dict:
        return {"vertices": list(self.vertices), "rows": self.to_rows()}


def transfer_matrix(G: TargetGraph) -> TransferMatrix:
    """T[i][j] = 1 for an ascending edge j -> i and t*y for a descending edge j -> i."""
    idx = {v: n for n, v in enumerate(G.vertices)}
    entries = {}
    for v, w in G.asc:
        entries[(idx[w], idx[v])] = (0, 1)
    for e in G.desc:
        entries[(idx[e.dst], idx[e.src])] = (1, e.weight)
    return TransferMatrix(list(G.vertices), entries)


def series_solve(A: list[list[TruncSeries]], b: list[TruncSeries]) -> list[TruncSeries]:
    """Solve A x = b over truncated series by Gaussian elimination.

    Pivots are chosen among entries whose constant term is invertible.
    """
    n = len(A)
    A = [list(row) for row in A]
    b = list(b)
    for col in range(n):
        piv = None
        for r in range(col, n):
            try:
                inv = A[r][col].inverse()
            except Exception:
                continue
            piv = r
            break
        if piv is None:
            raise ZeroDivisionError("no invertible pivot in series solve")
        A[col], A[piv] = A[piv], A[col]
        b[col], b[piv] = b[piv], b[col]
        for r in range(n):
            if r == col or _series_is_zero(A[r][col]):
                continue
            f = A[r][col] * inv
            for c in range(col, n):
                if not _series_is_zero(A[col][c]):
                    A[r][c] = A[r][c] - f * A[col][c]
            b[r] = b[r] - f * b[col]
        A[col] = [x * inv for x in A[col]]
        b[col] = b[col] * inv
    return b


def _series_is_zero(s: TruncSeries) -> bool:
    return all(c == 0 for c in s.coeffs)


def generating_function(G: TargetGraph, order: int, verify: bool = True) -> TruncSeries:
    """((I - T)^{-1})_{0,0} modulo t^(order+1).

    The primary route is a truncated-series linear solve; with ``verify``
    the same series is recomputed as a ratio of two determinants in which
    t is a polynomial variable, and any disagreement raises.
    """
    T = transfer_matrix(G)
    n = T.dim
    S = T.series_matrix(order)
    A = [[(TruncSeries.one(order) if i == j else TruncSeries.zero(order)) - S[i][j] for j in range(n)]
         for i in range(n)]
    rhs = [TruncSeries.one(order) if i == 0 else TruncSeries.zero(order) for i in range(n)]
    F = series_solve(A, rhs)[0]
    if verify:
        G2 = generating_function_by_reduction(T, order)
        if G2 != F:
            from .errors import PatternMismatch
            raise PatternMismatch("series solve and determinant reduction disagree")
    return F


def t_coefficients(p: LaurentPoly) -> list[LaurentPoly]:
    """Split a polynomial in t into its coefficients."""
    p = LaurentPoly.coerce(p)
    groups: dict[int, list] = {}
    for mono, c in p.terms():
        exps = mono.as_dict()
        k = exps.pop(T_VAR, 0)
        if k < 0:
            raise ValueError("negative power of t")
        groups.setdefault(k, []).append((exps, c))
    top = max(groups) if groups else 0
    return [LaurentPoly.from_terms(groups.get(k, [])) for k in range(top + 1)]


def generating_function_by_reduction(T: TransferMatrix, order: int) -> TruncSeries:
    """Cramer's rule: det of (I-T) without row/col 0 over det(I-T), expanded in t."""
    P = T.polynomial_matrix()
    minor = [row[1:] for row in P[1:]]
    num = bareiss_det(minor) if minor else LaurentPoly.one()
    den = bareiss_det(P)
    ns = TruncSeries(t_coefficients(num), order)
    ds = TruncSeries(t_coefficients(den), order)
    return ns / ds


def heap_series(r: int, order: int) -> TruncSeries:
    """Generating series of heaps on the hard-particle graph, via root-to-root walks."""
    from .graphs import zero_path_graph
    return generating_function(zero_path_graph(r, "symbolic"), order)


# ---------------------------------------------------------------------------
# explicit paths


@dataclass(frozen=True)
class Step:
    start: tuple[int, int]
    end: tuple[int, int]
    weight: Any
    descent: bool

    @property
    def delta(self) -> tuple[int, int]:
        return (self.end[0] - self.start[0], self.end[1] - self.start[1])


@dataclass
class LatticePath:
    """A walk drawn in the plane: up (1,1), satellite (2,0), descent of height h (2-h,-h)."""

    vertices: list[str]
    steps: list[Step]
    weight: Any = 1
    origin: tuple[int, int] = (0, 0)

    @property
    def points(self) -> list[tuple[int, int]]:
        if not self.steps:
            return [self.origin]
        return [self.steps[0].start] + [s.end for s in self.steps]

    @property
    def descents(self) -> int:
        return sum(1 for s in self.steps if s.descent)

    def shifted(self, dx: int) -> "LatticePath":
        steps = [Step((s.start[0] + dx, s.start[1]), (s.end[0] + dx, s.end[1]), s.weight, s.descent)
                 for s in self.steps]
        return LatticePath(list(self.vertices), steps, self.weight,
                           (self.origin[0] + dx, self.origin[1]))

    def step_deltas(self) -> list[tuple[int, int]]:
        return [s.delta for s in self.steps]

    def to_json_obj(self) -> dict:
        return {"vertices": list(self.vertices), "steps": [list(d) for d in self.step_deltas()],
                "weight": str(self.weight)}


def _walks(G: TargetGraph, n_desc: int) -> Iterable[list]:
    """Root-to-root walks as edge lists, with exactly n_desc descending edges."""
    out_edges: dict[str, list] = {v: [] for v in G.vertices}
    for v, w in G.asc:
        out_edges[v].append(("asc", w, 1))
    for e in G.desc:
        out_edges[e.src].append(("desc", e.dst, e.weight))
    root = G.vertices[0]

    def rec(v, used, trail):
        if used == n_desc and v == root:
            yield list(trail)
        for kind, w, wt in out_edges[v]:
            nu = used + (kind == "desc")
            if nu > n_desc:
                continue
            # an ascent needs at least one later descent to come home
            if kind == "asc" and nu == n_desc:
                continue
            trail.append((v, w, kind, wt))
            yield from rec(w, nu, trail)
            trail.pop()

    yield from rec(root, 0, [])


def _draw(G: TargetGraph, trail: list) -> LatticePath:
    h = G.height
    x, y = 0, 0
    steps = []
    verts = [G.vertices[0]]
    weight = 1
    pending_sat = None
    for v, w, kind, wt in trail:
        verts.append(w)
        if kind == "asc":
            if w.endswith("p"):
                pending_sat = (x, y)
                continue
            steps.append(Step((x, y), (x + 1, y + 1), 1, False))
            x, y = x + 1, y + 1
            continue
        weight = weight * wt
        if v.endswith("p"):
            steps.append(Step(pending_sat, (x + 2, y), wt, True))
            x = x + 2
            pending_sat = None
            continue
        d = h[v] - h[w]
        steps.append(Step((x, y), (x + 2 - d, y - d), wt, True))
        x, y = x + 2 - d, y - d
    return LatticePath(verts, steps, weight)


def enumerate_paths(G: TargetGraph, n_desc: int) -> list[LatticePath]:
    if n_desc > MAX_ENUM_DESCENTS:
        raise TooLarge(f"explicit enumeration is limited to {MAX_ENUM_DESCENTS} descents")
    if n_desc < 0:
        return []
    return [_draw(G, trail) for trail in _walks(G, n_desc)]


def path_weight_sum(G: TargetGraph, n_desc: int):
    total = 0
    for p in enumerate_paths(G, n_desc):
        total = total + p.weight
    return total


# ---------------------------------------------------------------------------
# R_{1,n} from paths


def _transport_monomial(mono: LaurentPoly, state) -> RationalFunction:
    from .qsystem import evolve
    (m, c), = mono.terms()
    out = RationalFunction(c)
    for v, k in m.as_dict().items():
        val = RationalFunction.coerce(evolve(state, v.alpha, v.level))
        out = out * (val ** k)
    return out


def reroot_prefactor(M: MotzkinPath) -> LaurentPoly:
    """R_{1,0} times y_1 of the path just before each boundary mutation, in the seed of M.

    Along the canonical sequence the first entry climbs 0, 1, ..., m_1; the
    product telescopes to R_{1,m_1}.
    """
    from .qsystem import QState
    from .weights import weights_for_seed
    from .motzkin import zero_path, apply_move

    state = QState(M)
    total = _transport_monomial(LaurentPoly.var(VarId(1, 0)), state)
    cur = zero_path(M.r)
    for mv in mutation_sequence(M):
        if mv.alpha == 1:
            total = total * _transport_monomial(weights_for_seed(cur).y[1], state)
        cur = apply_move(cur, mv)
    return total.to_laurent()


def rone_from_paths(M: MotzkinPath, n: int, F: TruncSeries | None = None) -> LaurentPoly:
    """R_{1, n + m_1} in the seed of M, as the prefactor times [t^n] F_M."""
    if n < 0:
        raise OutOfDomain("path expansions need n >= 0")
    low = min(M.values)
    if low < 0:
        shifted = rone_from_paths(translate(M, -low), n)
        return shifted.rename({v: VarId(v.alpha, v.level + low) for v in shifted.variables})
    if F is None:
        F = generating_function(build_gamma(M), n, verify=False)
    return reroot_prefactor(M) * LaurentPoly.coerce(F.coeff(n))


# ---------------------------------------------------------------------------
# families of paths


@dataclass
class PathFamily:
    paths: list[LatticePath]
    sign: int = 1

    @property
    def weight(self):
        w = 1
        for p in self.paths:
            w = w * p.weight
        return w

    def to_json_obj(self) -> dict:
        return {"paths": [p.to_json_obj() for p in self.paths], "weight": str(self.weight)}


def _orient(a, b, c) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a, b, p) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_meet(s: Step, u: Step) -> bool:
    a, b, c, d = s.start, s.end, u.start, u.end
    o1, o2, o3, o4 = _orient(a, b, c), _orient(a, b, d), _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and _on_segment(a, b, c)) or (o2 == 0 and _on_segment(a, b, d))
            or (o3 == 0 and _on_segment(c, d, a)) or (o4 == 0 and _on_segment(c, d, b)))


def paths_intersect(P: LatticePath, Q: LatticePath) -> bool:
    """Shared lattice point or any meeting of drawn segments."""
    if set(P.points) & set(Q.points):
        return True
    return any(segments_meet(s, u) for s in P.steps for u in Q.steps)


def _long_heights(G: TargetGraph) -> set[tuple[int, int]]:
    return {(G.height[e.src], G.height[e.dst]) for e in G.desc
            if not e.src.endswith("p") and G.height[e.src] - G.height[e.dst] > 1}


def _too_close_steps(s1: Step, s2: Step, longs: set[tuple[int, int]]) -> bool:
    """s1 = (u+h-2, v+h) -> (u+i, v+i) and s2 = (u+j-2, v+j) -> (u, v), 1 <= i <= j < h."""
    if not (s1.descent and s2.descent):
        return False
    u, v = s2.end
    j = s2.start[1] - v
    if j < 1 or s2.start[0] != u + j - 2:
        return False
    h = s1.start[1] - v
    if h <= j or s1.start[0] != u + h - 2 or (v + h, v) not in longs:
        return False
    i = s1.end[1] - v
    return 1 <= i <= j and s1.end == (u + i, v + i)


def too_close(P: LatticePath, Q: LatticePath, longs: set[tuple[int, int]]) -> bool:
    for s in P.steps:
        for u in Q.steps:
            if _too_close_steps(s, u, longs) or _too_close_steps(u, s, longs):
                return True
    return False


def enumerate_families(M: MotzkinPath, alpha: int, n: int, strong: bool = True,
                       G: TargetGraph | None = None) -> list[PathFamily]:
    """Families of alpha paths A_i = (2i-2, 0) -> E_i = (2n + 2alpha - 2i, 0).

    Only the identity pairing contributes: any other pairing forces two
    drawn paths to meet.
    """
    G = G or build_gamma(M)
    lengths = [n + alpha + 1 - 2 * i for i in range(1, alpha + 1)]
    if max(lengths) > MAX_ENUM_DESCENTS:
        raise TooLarge("family enumeration is limited to 8 descents per path")
    if min(lengths) < 0:
        return []
    longs = _long_heights(G)
    pools = [[p.shifted(2 * i) for p in enumerate_paths(G, k)] for i, k in enumerate(lengths)]

    out = []

    def rec(i, chosen):
        if i == alpha:
            out.append(PathFamily(list(chosen)))
            return
        for p in pools[i]:
            if any(paths_intersect(p, q) for q in chosen):
                continue
            if strong and any(too_close(p, q, longs) for q in chosen):
                continue
            chosen.append(p)
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    return out


def family_sum(fams: Sequence[PathFamily]):
    total = 0
    for f in fams:
        total = total + f.weight
    return total


# ---------------------------------------------------------------------------
# flipping


def find_crossing(P: LatticePath, Q: LatticePath):
    """First pair of descents (e1 in P, e2 in Q) crossing as in the catalogue.

    e1 = (u+h-2, v+h) -> (u, v) and e2 = (u+i+k-2, v+i+k) -> (u+i, v+i) with
    1 <= i, 0 <= k, i + k <= h - 1.  Returns (a, b, i) with step indices.
    """
    for a, e1 in enumerate(P.steps):
        if not e1.descent:
            continue
        u, v = e1.end
        h = e1.start[1] - v
        if e1.start[0] != u + h - 2:
            continue
        for b, e2 in enumerate(Q.steps):
            if not e2.descent:
                continue
            i = e2.end[1] - v
            k = e2.start[1] - e2.end[1]
            if e2.end != (u + i, v + i) or e2.start[0] != u + i + k - 2:
                continue
            if i >= 1 and k >= 0 and i + k <= h - 1:
                return a, b, i
    return None


def flip(P: LatticePath, Q: LatticePath, G: TargetGraph, where=None):
    """Exchange the tails of P and Q through re-routed descents.

    e1' = (u+h-2, v+h) -> (u+i, v+i) continues with Q's tail and
    e2' = (u+i+k-2, v+i+k) -> (u, v) continues with P's tail.
    """
    where = where or find_crossing(P, Q)
    if where is None:
        raise ValueError("paths do not cross along an edge")
    a, b, _ = where
    e1, e2 = P.steps[a], Q.steps[b]
    w = _weight_by_heights(G)
    e1p = Step(e1.start, e2.end, w[(e1.start[1], e2.end[1])], True)
    e2p = Step(e2.start, e1.end, w[(e2.start[1], e1.end[1])], True)
    P2 = P.steps[:a] + [e1p] + Q.steps[b + 1:]
    Q2 = Q.steps[:b] + [e2p] + P.steps[a + 1:]
    return _rebuild(P2, P.origin), _rebuild(Q2, Q.origin)


def _weight_by_heights(G: TargetGraph) -> dict[tuple[int, int], Any]:
    out = {}
    for e in G.desc:
        if e.src.endswith("p"):
            out[(G.height[e.dst], G.height[e.dst])] = e.weight
        else:
            out[(G.height[e.src], G.height[e.dst])] = e.weight
    return out


def _rebuild(steps: list[Step], origin: tuple[int, int]) -> LatticePath:
    w = 1
    for s in steps:
        if s.descent:
            w = w * s.weight
    return LatticePath([], steps, w, origin)


# ---------------------------------------------------------------------------
# LGV


@dataclass
class LGVReport:
    M: MotzkinPath
    alpha: int
    n: int
    determinant: Any
    families: int
    family_weight: Any
    truncated_to: MotzkinPath | None = None
    ok: bool = False
    notes: list[str] = field(default_factory=list)


def _lgv_det(M: MotzkinPath, alpha: int, n: int):
    """det(R_{1, N + alpha + 1 - i - j} / R_{1, m_1}) with N = n + m_1, from the recurrence."""
    from .qsystem import QState, evolve
    state = QState(M)
    m1 = M.m(1)
    base = LaurentPoly.var(VarId(1, m1)).inverse()
    N = n + m1
    mat = [[LaurentPoly.coerce(evolve(state, 1, N + alpha + 1 - i - j)) * base
            for j in range(1, alpha + 1)] for i in range(1, alpha + 1)]
    return bareiss_det(mat)


def _value(M: MotzkinPath, alpha: int, N: int) -> LaurentPoly:
    from .qsystem import QState, evolve
    return LaurentPoly.coerce(evolve(QState(M), alpha, N))


def light_cone_row(M: MotzkinPath, alpha: int, n: int) -> int | None:
    """Smallest row a > 1 such that rows below a can be dropped and the path count suffices.

    The truncated system keeps rows a..r of M (renumbered from 1) with row
    a-1 set to 1; the choice is confirmed by comparing R_{alpha, n + m_1}
    in both systems.  Returns None when no row works.
    """
    N = n + M.m(1)
    full = None
    for a in range(2, alpha + 1):
        if N - M.m(a) < alpha - a:
            continue
        full = _value(M, alpha, N) if full is None else full
        val = _value(MotzkinPath(M.values[a - 1:]), alpha - a + 1, N)
        back = val.rename({v: VarId(v.alpha + a - 1, v.level) for v in val.variables})
        if back == full:
            return a
    return None


def lgv_route(M: MotzkinPath, alpha: int, n: int) -> tuple[MotzkinPath, int, int, list[str]]:
    """Move (M, alpha, n) to an equivalent problem with n >= alpha - 1.

    Tries the problem as is, then the light-cone truncation, then time
    reversal followed by translation back to min = 0 (and truncation again).
    Each move is confirmed by comparing R_{alpha, n + m_1} symbolically.
    """
    route: list[str] = []
    for attempt in range(2):
        if n >= alpha - 1:
            return M, alpha, n, route
        a = light_cone_row(M, alpha, n)
        if a is not None:
            sub = MotzkinPath(M.values[a - 1:])
            route.append(f"truncate rows {a}..{M.r}")
            return sub, alpha - a + 1, n + M.m(1) - sub.m(1), route
        if attempt:
            break
        N = n + M.m(1)
        Mt = reflect(M)
        low = min(Mt.values)
        M2 = translate(Mt, -low)
        N2 = -N - low
        val = _value(M2, alpha, N2)
        back = val.rename({v: VarId(v.alpha, -(v.level + low)) for v in val.variables})
        if back != _value(M, alpha, N):
            break
        route.append(f"reflect to {M2.label()}")
        M, n = M2, N2 - M2.m(1)
        if n < 0:
            break
    raise OutOfDomain(f"no path interpretation found for alpha={alpha}, n={n} at {M.label()}")


def lgv_check(M: MotzkinPath, alpha: int, n: int, report: bool = False):
    """Determinant of shifted R_{1,.} equals the weighted count of strongly non-intersecting families.

    Cases with n < alpha - 1 are first moved by :func:`lgv_route`.
    """
    sub, al, nn, route = lgv_route(M, alpha, n)
    det = _lgv_det(sub, al, nn)
    fams = enumerate_families(sub, al, nn, strong=True)
    total = LaurentPoly.coerce(family_sum(fams))
    ok = LaurentPoly.coerce(det) == total
    if report:
        return LGVReport(M, alpha, n, det, len(fams), total, sub if route else None, ok, route)
    return ok


def all_families(M: MotzkinPath, alpha: int, n: int, G: TargetGraph | None = None) -> list[PathFamily]:
    """Every pairing A_i -> E_sigma(i), unfiltered, with the sign of sigma (oracle helper)."""
    G = G or build_gamma(M)
    out = []
    for sigma in itertools.permutations(range(alpha)):
        lens = [n + alpha + 1 - (i + 1) - (sigma[i] + 1) for i in range(alpha)]
        if min(lens) < 0:
            continue
        pools = [[p.shifted(2 * i) for p in enumerate_paths(G, k)] for i, k in enumerate(lens)]
        sign = _perm_sign(sigma)
        for combo in itertools.product(*pools):
            out.append(PathFamily(list(combo), sign))
    return out


def _perm_sign(p: Sequence[int]) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s

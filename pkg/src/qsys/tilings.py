"""Domino tilings of halved Aztec diamonds and their deformations.

Cells are unit squares indexed by (column, height); the cell (i, h) spans
[i, i+1] x [h - 1/2, h + 1/2] and is white when i + h is even.  Path points
(x, y) always have x + y even and sit on the left edge of the white cell
(x, y).  A step from (x, y) to (x', y') occupies the white cell (x, y) and the
black cell (x' - 1, y'):

    a  up step (1, 1)          vertical domino, white bottom
    b  down step (1, -1)       vertical domino, black bottom
    d  flat step (2, 0)        horizontal domino, white left
    e  descent (2 - h, -h)     rigid pair of unit squares, h >= 2
    c  no step                 horizontal domino, black left

Every tiling therefore decomposes into paths running between the boundary
points where exactly one of the two cells beside a point is in the domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .errors import IndexOutOfRange, OutOfDomain, TooLarge
from .graphs import TargetGraph, build_gamma
from .laurent import LaurentPoly, VarId
from .motzkin import MotzkinPath, zero_path
from .paths import LatticePath, Step, _rebuild, _weight_by_heights

MAX_CELLS = 160

Cell = tuple[int, int]
Point = tuple[int, int]


def is_white(cell: Cell) -> bool:
    return (cell[0] + cell[1]) % 2 == 0


@dataclass(frozen=True)
class Domino:
    """A tile: ``anchor`` is its white cell, ``other`` its black cell."""

    kind: str
    anchor: Cell
    other: Cell

    @property
    def cells(self) -> tuple[Cell, Cell]:
        return (self.anchor, self.other)

    @property
    def step(self) -> tuple[Point, Point] | None:
        if self.kind == "c":
            return None
        return self.anchor, (self.other[0] + 1, self.other[1])


def step_tile(start: Point, end: Point) -> Domino:
    dx, dy = end[0] - start[0], end[1] - start[1]
    if (dx, dy) == (1, 1):
        kind = "a"
    elif (dx, dy) == (1, -1):
        kind = "b"
    elif (dx, dy) == (2, 0):
        kind = "d"
    elif dy <= -2 and dx == 2 + dy:
        kind = "e"
    else:
        raise OutOfDomain(f"no tile for the step {start} -> {end}")
    return Domino(kind, start, (end[0] - 1, end[1]))


def c_tile(white: Cell) -> Domino:
    return Domino("c", white, (white[0] - 1, white[1]))


@dataclass(frozen=True)
class Tiling:
    tiles: frozenset
    weight: Any = 1

    def kinds(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for t in self.tiles:
            out[t.kind] = out.get(t.kind, 0) + 1
        return out

    def to_json_obj(self) -> dict:
        tiles = sorted(self.tiles, key=lambda t: (t.anchor, t.kind))
        return {"tiles": [{"kind": t.kind, "white": list(t.anchor), "black": list(t.other)} for t in tiles],
                "weight": str(self.weight)}


@dataclass(frozen=True)
class TilingDomain:
    """A finite set of cells plus the steps allowed at each height.

    ``moves`` maps a start height to ``((dx, dy), weight)`` pairs; up steps
    carry weight 1.  Path i runs from ``starts[i]`` to ``ends[i]``; the
    outermost path comes first.
    """

    name: str
    cells: frozenset
    moves: Any
    width: int
    starts: tuple = ((0, 0),)
    ends: tuple = ()
    long_heights: frozenset = frozenset()

    def __post_init__(self):
        if len(self.cells) > MAX_CELLS:
            raise TooLarge(f"domain has {len(self.cells)} cells, limit {MAX_CELLS}")

    def allowed(self, y: int) -> list[tuple[tuple[int, int], Any]]:
        return self.moves(y)

    @property
    def sources(self) -> list[Point]:
        out = []
        for (i, h) in self.cells:
            if is_white((i, h)) and (i - 1, h) not in self.cells:
                out.append((i, h))
        return sorted(out)

    @property
    def sinks(self) -> list[Point]:
        out = []
        for (i, h) in self.cells:
            if not is_white((i, h)) and (i + 1, h) not in self.cells:
                out.append((i + 1, h))
        return sorted(out)

    def candidate_tiles(self) -> list[tuple[Domino, Any]]:
        out = []
        for cell in sorted(self.cells):
            if not is_white(cell):
                continue
            if (cell[0] - 1, cell[1]) in self.cells:
                out.append((c_tile(cell), 1))
            for (dx, dy), w in self.allowed(cell[1]):
                end = (cell[0] + dx, cell[1] + dy)
                if end[1] < 0:
                    continue
                t = step_tile(cell, end)
                if t.other in self.cells and not _is_zero(w):
                    out.append((t, w))
        return out

    @property
    def defect_slots(self) -> list[tuple[Cell, Cell]]:
        """Placements of rigid pairs (top white cell, bottom black cell)."""
        return sorted(t.cells for t, _ in self.candidate_tiles() if t.kind == "e")

    def to_json_obj(self) -> dict:
        return {"name": self.name, "width": self.width, "cells": [list(c) for c in sorted(self.cells)],
                "sources": [list(p) for p in self.sources], "sinks": [list(p) for p in self.sinks]}


def _is_zero(w) -> bool:
    if isinstance(w, LaurentPoly):
        return w.is_zero()
    return w == 0


# ---------------------------------------------------------------------------
# step weights


def aztec_weight_vars():
    """Generic weights: z_i as named variables, w_0 and w_1 for low flat steps."""
    def z(i):
        return LaurentPoly.var(VarId(i, 0, "z"))

    def w(i):
        return LaurentPoly.var(VarId(i, 0, "w"))

    def moves(y):
        out = [((1, 1), 1)]
        if y >= 1:
            out.append(((1, -1), z(1) if y == 1 else z(2 * y - 2)))
        out.append(((2, 0), w(y) if y <= 1 else z(2 * y - 1)))
        return out
    return moves


def ones_moves(max_height: int | None = None):
    def moves(y):
        out = []
        if max_height is None or y < max_height:
            out.append(((1, 1), 1))
        if y >= 1:
            out.append(((1, -1), 1))
        out.append(((2, 0), 1))
        return out
    return moves


def gamma_moves(G: TargetGraph):
    """Steps of the plane drawing of a target graph, indexed by start height."""
    by_h = _weight_by_heights(G)
    top = max(G.height.values())
    table: dict[int, list] = {}
    for (hi, lo), w in by_h.items():
        d = hi - lo
        table.setdefault(hi, []).append(((2, 0) if d == 0 else (2 - d, -d), w))
    for h in range(top):
        table.setdefault(h, []).append(((1, 1), 1))

    def moves(y):
        return table.get(y, [])
    return moves


def zero_path_weights(r: int) -> dict:
    """Specialization of the generic z, w weights to the zero-path target graph."""
    from .weights import weights_for_seed
    y = weights_for_seed(zero_path(r)).y
    out = {VarId(0, 0, "w"): 0, VarId(1, 0, "w"): 0}
    for i in range(1, 2 * r + 1):
        out[VarId(i, 0, "z")] = y[i]
    out[VarId(2 * r + 1, 0, "z")] = 0
    out[VarId(2 * r + 2, 0, "z")] = y[2 * r + 1]
    return out


# ---------------------------------------------------------------------------
# domains


def _step_cells(moves, start: Point, end: Point, max_height: int) -> set[Cell]:
    """Cells covered by some step of some path start -> end with heights in [0, max_height]."""
    states = {start}
    frontier = [start]
    edges = []
    lo_x = start[0] - max_height - 2
    while frontier:
        x, y = frontier.pop()
        for (dx, dy), w in moves(y):
            nx, ny = x + dx, y + dy
            if ny < 0 or ny > max_height or nx < lo_x or nx > end[0] or _is_zero(w):
                continue
            edges.append(((x, y), (nx, ny)))
            if (nx, ny) not in states:
                states.add((nx, ny))
                frontier.append((nx, ny))
    good = {end}
    changed = True
    while changed:
        changed = False
        for a, b in edges:
            if b in good and a not in good:
                good.add(a)
                changed = True
    cells: set[Cell] = set()
    for a, b in edges:
        if a in good and b in good:
            cells.update(step_tile(a, b).cells)
    return cells


def _domain_from_moves(name: str, moves, n: int, alpha: int, max_height: int,
                       longs=()) -> TilingDomain:
    """Union of the cells any family member can cover, minus the indentations.

    The black cell left of each inner start point and the white cell right
    of each inner end point can never be covered, so they are removed.
    """
    if alpha < 1 or n < alpha - 1:
        raise OutOfDomain(f"need alpha >= 1 and n >= alpha - 1, got n={n}, alpha={alpha}")
    width = 2 * n + 2 * alpha - 2
    cells: set[Cell] = set()
    for i in range(1, alpha + 1):
        cells |= _step_cells(moves, (2 * i - 2, 0), (width + 2 - 2 * i, 0), max_height)
    for j in range(1, alpha):
        cells.discard((2 * j - 1, 0))
        cells.discard((width - 2 * j, 0))
    starts = tuple((2 * i - 2, 0) for i in range(1, alpha + 1))
    ends = tuple((width + 2 - 2 * i, 0) for i in range(1, alpha + 1))
    return TilingDomain(name, frozenset(cells), moves, width, starts, ends, frozenset(longs))


def halved_aztec(n: int, moves=None) -> TilingDomain:
    """HA_n: width 2n, height n + 1, floor at h = -1/2."""
    return indented_halved_aztec(n, 1, moves)


def indented_halved_aztec(n: int, alpha: int, moves=None) -> TilingDomain:
    """IHA_{n,alpha}: room for alpha nested paths with alpha - 1 indentations per side.

    Path i runs from (2i - 2, 0) to (2n + 2alpha - 2i, 0).
    """
    moves = moves or aztec_weight_vars()
    width = 2 * n + 2 * alpha - 2
    return _domain_from_moves(f"IHA[{n},{alpha}]" if alpha > 1 else f"HA[{n}]",
                              moves, n, alpha, width // 2)


def deformed_domain(M: MotzkinPath, n: int, alpha: int = 1, weights="seed") -> TilingDomain:
    """Domain whose tilings (with rigid defect pairs) encode target-graph paths of M."""
    G = build_gamma(M, weights)
    top = max(G.height.values())
    from .paths import _long_heights
    return _domain_from_moves(f"D[{M.label()}][{n},{alpha}]", gamma_moves(G), n, alpha, top,
                              _long_heights(G))


# ---------------------------------------------------------------------------
# bijection


def path_to_tiling(paths: LatticePath | Sequence[LatticePath], domain: TilingDomain) -> Tiling:
    if isinstance(paths, LatticePath):
        paths = [paths]
    tiles = []
    used: set[Cell] = set()
    weight = 1
    for p in paths:
        for s in p.steps:
            t = step_tile(s.start, s.end)
            for c in t.cells:
                if c not in domain.cells or c in used:
                    raise OutOfDomain(f"step {s.start}->{s.end} leaves the domain or overlaps")
                used.add(c)
            tiles.append(t)
            if s.descent:
                weight = weight * s.weight
    for cell in sorted(domain.cells - used):
        if cell in used:
            continue
        if not is_white(cell):
            continue
        black = (cell[0] - 1, cell[1])
        if black not in domain.cells or black in used:
            raise OutOfDomain(f"cell {cell} cannot be covered by a c tile")
        used.update((cell, black))
        tiles.append(c_tile(cell))
    if used != set(domain.cells):
        raise OutOfDomain("the complement of the paths is not tileable by c tiles")
    return Tiling(frozenset(tiles), weight)


def tiling_to_path(tiling: Tiling, domain: TilingDomain) -> list[LatticePath]:
    """The paths encoded by a tiling, one per start point, outermost first.

    With long descents two paths may cross and swap end points; use
    :func:`is_admissible` to test for the identity pairing.
    """
    start_of: dict[Point, Domino] = {}
    for t in tiling.tiles:
        if t.kind != "c":
            start_of[t.anchor] = t
    weights = dict(domain.candidate_tiles())
    out = []
    ends = set(domain.ends)
    for src in domain.starts:
        steps = []
        p = src
        while p in start_of:
            t = start_of.pop(p)
            a, b = t.step
            steps.append(Step(a, b, weights[t], t.kind != "a"))
            p = b
        if p not in ends:
            raise OutOfDomain(f"path from {src} stops at {p}")
        out.append(_rebuild(steps, src))
    if start_of:
        raise OutOfDomain("tiling contains steps not reachable from a start point")
    return out


def is_admissible(paths: Sequence[LatticePath], domain: TilingDomain) -> bool:
    """Identity pairing, no crossing drawn segments and no too-close descent pair."""
    from .paths import paths_intersect, too_close
    if [p.points[-1] for p in paths] != list(domain.ends):
        return False
    for i, p in enumerate(paths):
        for q in paths[i + 1:]:
            if paths_intersect(p, q) or too_close(p, q, set(domain.long_heights)):
                return False
    return True


def enumerate_step_paths(moves, start: Point, end: Point, max_height: int) -> list[LatticePath]:
    """Direct enumeration of paths start -> end; independent of any tiling."""
    out = []
    lo_x = start[0] - max_height - 2

    def rec(p, steps):
        if p == end:
            out.append(_rebuild(list(steps), start))
        for (dx, dy), w in moves(p[1]):
            q = (p[0] + dx, p[1] + dy)
            if q[1] < 0 or q[1] > max_height or _is_zero(w):
                continue
            # every step adds 2 to x - y, so x - y never passes end's value
            if q[0] - q[1] > end[0] - end[1] or q[0] < lo_x:
                continue
            steps.append(Step(p, q, w, dy < 0 or dy == 0))
            rec(q, steps)
            steps.pop()

    rec(start, [])
    return out


# ---------------------------------------------------------------------------
# brute-force enumeration


def enumerate_tilings(domain: TilingDomain) -> list[Tiling]:
    """All tilings by exact cover, filling the lowest free cell first."""
    by_cell: dict[Cell, list] = {c: [] for c in domain.cells}
    for t, w in domain.candidate_tiles():
        for c in t.cells:
            by_cell[c].append((t, w))
    order = sorted(domain.cells)
    out = []
    covered: set[Cell] = set()
    chosen: list = []

    def rec(k):
        while k < len(order) and order[k] in covered:
            k += 1
        if k == len(order):
            w = 1
            for _, tw in chosen:
                w = w * tw
            out.append(Tiling(frozenset(t for t, _ in chosen), w))
            return
        cell = order[k]
        for t, w in by_cell[cell]:
            a, b = t.cells
            if a in covered or b in covered:
                continue
            covered.update((a, b))
            chosen.append((t, w))
            rec(k + 1)
            chosen.pop()
            covered.difference_update((a, b))

    rec(0)
    return out


def admissible_tilings(domain: TilingDomain) -> list[Tiling]:
    return [t for t in enumerate_tilings(domain) if is_admissible(tiling_to_path(t, domain), domain)]


def count_tilings(domain: TilingDomain, values: dict | None = None, admissible_only: bool = True):
    """Weighted count; ``values`` optionally substitutes the tile weights.

    With ``admissible_only`` only tilings whose paths form a strongly
    non-intersecting family in the identity pairing are counted; without
    long descents every tiling qualifies.
    """
    total = 0
    tilings = admissible_tilings(domain) if admissible_only else enumerate_tilings(domain)
    for t in tilings:
        w = t.weight
        if values is not None and isinstance(w, LaurentPoly):
            w = _substitute(w, values)
        total = total + w
    return total


def _substitute(p: LaurentPoly, values: dict):
    total = 0
    for m, c in p.terms():
        term = c
        for v, k in m.as_dict().items():
            term = term * (values[v] ** k) if k > 0 else term * (LaurentPoly.coerce(values[v]).inverse() ** (-k))
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Aztec diamond matchings


def aztec_matchings(alpha: int, n: int) -> list[frozenset]:
    """Perfect matchings of the corners strictly inside |beta - alpha| + |gamma| < n.

    Corners are stored doubled: (2*beta - 1 ± 1, 2*gamma ± 1) style odd
    coordinates, i.e. a corner (u, v) means the point (u/2, v/2).
    """
    verts = []
    for u in range(2 * (alpha - n) - 1, 2 * (alpha + n) + 2):
        for v in range(-2 * n - 1, 2 * n + 2):
            if u % 2 and v % 2 and abs(u - 2 * alpha) + abs(v) < 2 * n:
                verts.append((u, v))
    vset = set(verts)
    verts.sort()
    out: list[frozenset] = []

    def rec(free: list, acc: list):
        if not free:
            out.append(frozenset(acc))
            return
        p = free[0]
        for q in ((p[0] + 2, p[1]), (p[0], p[1] + 2)):
            if q in vset and q in free:
                rest = [x for x in free if x != p and x != q]
                acc.append((p, q))
                rec(rest, acc)
                acc.pop()

    rec(verts, [])
    return out


def _square_edges(beta: int, gamma: int) -> list[tuple]:
    u, v = 2 * beta, 2 * gamma
    c = [(u - 1, v - 1), (u + 1, v - 1), (u + 1, v + 1), (u - 1, v + 1)]
    return [tuple(sorted((c[i], c[(i + 1) % 4]))) for i in range(4)]


def matching_weight(matching: frozenset, alpha: int, n: int, rho) -> Any:
    """Product over squares with |beta - alpha| + |gamma| <= n of rho(beta, theta)^epsilon."""
    edges = {tuple(sorted(e)) for e in matching}
    w = 1
    for beta in range(alpha - n, alpha + n + 1):
        for gamma in range(-n, n + 1):
            dist = abs(beta - alpha) + abs(gamma)
            if dist > n:
                continue
            k = sum(1 for e in _square_edges(beta, gamma) if e in edges)
            eps = 1 - k if dist < n else k
            if eps == 0:
                continue
            theta = 0 if (alpha + beta + gamma + n) % 2 == 0 else 1
            base = rho(beta, theta)
            w = w * (base ** eps if eps > 0 else LaurentPoly.coerce(base).inverse() ** (-eps))
    return w


def _rho(r: int):
    def rho(beta, theta):
        if beta <= 0 or beta >= r + 1:
            return LaurentPoly.one()
        return LaurentPoly.var(VarId(beta, theta))
    return rho


def matching_weights(alpha: int, n: int, r: int) -> list[LaurentPoly]:
    if not 1 <= alpha <= r or n < 1 or n > min(alpha, r + 1 - alpha):
        raise IndexOutOfRange(f"(alpha, n) = ({alpha}, {n}) lies outside 1 <= n <= min(alpha, r+1-alpha)")
    rho = _rho(r)
    return [matching_weight(m, alpha, n, rho) for m in aztec_matchings(alpha, n)]


def aztec_matching_weight_check(alpha: int, n: int, r: int) -> bool:
    """Weighted matchings of the diamond of radius n at alpha sum to R_{alpha,n}."""
    from .qsystem import QState, evolve
    total = LaurentPoly.zero()
    for w in matching_weights(alpha, n, r):
        total = total + w
    return total == evolve(QState(zero_path(r)), alpha, n)


# ---------------------------------------------------------------------------
# drawing


_FILL = {"a": "#d95f02", "b": "#1b9e77", "c": "#e6e6e6", "d": "#7570b3", "e": "#e7298a"}


def tiling_svg(tiling: Tiling, domain: TilingDomain, unit: int = 24) -> str:
    cells = domain.cells
    xs = [c[0] for c in cells]
    hs = [c[1] for c in cells]
    x0, x1, h1 = min(xs), max(xs) + 1, max(hs) + 1
    W, H = (x1 - x0) * unit, h1 * unit

    def box(c):
        return (c[0] - x0) * unit, (h1 - 1 - c[1]) * unit

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W + 2}" height="{H + 2}" '
             f'viewBox="-1 -1 {W + 2} {H + 2}">']
    for t in sorted(tiling.tiles, key=lambda t: t.anchor):
        for c in t.cells:
            x, y = box(c)
            parts.append(f'<rect x="{x}" y="{y}" width="{unit}" height="{unit}" '
                         f'fill="{_FILL[t.kind]}" stroke="none"/>')
        if t.kind != "e":
            (ax, ay), (bx, by) = box(t.anchor), box(t.other)
            x, y = min(ax, bx), min(ay, by)
            w = unit * (1 + abs(ax - bx) // unit)
            h = unit * (1 + abs(ay - by) // unit)
            parts.append(f'<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="none" stroke="black"/>')
        else:
            for c in t.cells:
                x, y = box(c)
                parts.append(f'<rect x="{x}" y="{y}" width="{unit}" height="{unit}" fill="none" stroke="black"/>')
        st = t.step
        if st:
            (px, py), (qx, qy) = st
            parts.append(f'<line x1="{(px - x0) * unit}" y1="{(h1 - 0.5 - py) * unit}" '
                         f'x2="{(qx - x0) * unit}" y2="{(h1 - 0.5 - qy) * unit}" stroke="black" stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

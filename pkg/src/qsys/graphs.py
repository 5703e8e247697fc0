"""Target graphs for path models, hard-particle graphs and heap graphs.

A target graph has a vertical spine 0, 1, ..., V, horizontal satellites
``"<v>p"`` hanging off some spine vertices, ascending skeleton edges of
weight 1 and weighted descending edges.  Vertex ids are strings so that
``"2p"`` sorts between ``"2"`` and ``"3"`` in :attr:`TargetGraph.vertices`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import TooLarge
from .laurent import LaurentPoly, Y
from .motzkin import MotzkinPath, zero_path

MAX_HP_VERTICES = 30


@dataclass(frozen=True)
class DescEdge:
    """A descending edge ``src -> dst``.

    ``label`` is the skeleton label 1..2r+1 for tree edges, or ``None`` for
    long edges, which instead carry ``pair = (i, j)``: the weight is
    y_{i,j} = prod_{l=j}^{i-1} y_{2l} / prod_{l=j+1}^{i-1} y_{2l-1}.
    """

    src: str
    dst: str
    label: int | None
    pair: tuple[int, int] | None
    weight: Any

    @property
    def key(self) -> str:
        """Stable name used for heap-graph vertices."""
        if self.label is not None:
            return str(self.label)
        return f"{self.pair[0]},{self.pair[1]}"


@dataclass
class TargetGraph:
    M: MotzkinPath | None
    vertices: list[str]
    asc: list[tuple[str, str]]
    desc: list[DescEdge]
    blocks: list[dict] = field(default_factory=list)
    height: dict[str, int] = field(default_factory=dict)

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    @property
    def skeleton_edges(self) -> list[DescEdge]:
        return [e for e in self.desc if e.label is not None]

    @property
    def long_edges(self) -> list[DescEdge]:
        return [e for e in self.desc if e.label is None]

    def skeleton(self) -> "TargetGraph":
        """The underlying tree: drop the long edges."""
        return TargetGraph(self.M, list(self.vertices), list(self.asc), self.skeleton_edges,
                           list(self.blocks), dict(self.height))

    def shape(self) -> tuple:
        """Weight-free description, for comparing graphs."""
        return (tuple(self.vertices), tuple(sorted(self.asc)),
                tuple(sorted((e.src, e.dst, e.key) for e in self.desc)))

    def to_json_obj(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "asc": [[v, w] for v, w in self.asc],
            "desc": [[e.src, e.dst, str(e.weight)] for e in self.desc],
        }

    def to_dot(self) -> str:
        lines = ["digraph target {", "  rankdir=BT;"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for v, w in self.asc:
            lines.append(f'  "{v}" -> "{w}" [color=gray];')
        for e in self.desc:
            lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.weight}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def pieces(M: MotzkinPath) -> list[tuple[int, str | None]]:
    """Maximal strictly descending runs of M with the step type that precedes each.

    Returns pairs ``(length, kind)`` where kind is "i" when the preceding
    step raises m by one, "ii" when it keeps m level, and None for the first.
    """
    out: list[tuple[int, str | None]] = []
    k, kind = 1, None
    for a, b in zip(M.values, M.values[1:]):
        if b == a - 1:
            k += 1
            continue
        out.append((k, kind))
        k, kind = 1, ("i" if b == a + 1 else "ii")
    out.append((k, kind))
    return out


def _vid(v: int, sat: bool = False) -> str:
    return f"{v}p" if sat else str(v)


def _structure(M: MotzkinPath):
    """Spine length, satellite positions, long edges (spine ints) and blocks."""
    top = -1
    sats: set[int] = set()
    longs: list[tuple[int, int]] = []
    blocks = []
    for n, (k, kind) in enumerate(pieces(M)):
        if n == 0:
            base = 0
            b, bp = _vid(0), _vid(1)
        elif kind == "i":
            base = top - 1
            b, bp = _vid(top - 1), _vid(top)
        else:
            # the previous top edge becomes horizontal
            sats.add(top - 1)
            base = top - 2
            b, bp = _vid(top - 1, sat=True), _vid(top - 1)
        top = base + k + 2
        for v in range(2, k + 1):
            sats.add(base + v)
        for i in range(1, k):
            for j in range(i + 2, k + 2):
                longs.append((base + j, base + i))
        blocks.append({"k": k, "glue": kind, "b": b, "b'": bp, "t'": _vid(top - 1), "t": _vid(top)})
    return top, sats, longs, blocks


def _symbolic_weights(r: int) -> list:
    return [None] + [LaurentPoly.var(Y(i)) for i in range(1, 2 * r + 2)]


def _pair_weight(y: Sequence, i: int, j: int):
    from .weights import yij_from_skeleton
    return yij_from_skeleton(y, i, j)


def build_gamma(M: MotzkinPath, weights: str | Sequence = "seed") -> TargetGraph:
    """Target graph of the seed M.

    ``weights`` is "seed" (closed-form weights in the seed variables),
    "symbolic" (free variables y[1], ..., y[2r+1]) or an explicit list
    indexed 1..2r+1.
    """
    r = M.r
    if isinstance(weights, str):
        if weights == "symbolic":
            y = _symbolic_weights(r)
        elif weights == "seed":
            from .weights import weights_for_seed
            y = weights_for_seed(M).y
        else:
            raise ValueError(f"unknown weight mode {weights!r}")
    else:
        y = list(weights)

    top, sats, longs, blocks = _structure(M)
    vertices: list[str] = []
    height: dict[str, int] = {}
    asc, desc = [], []
    down_label: dict[int, int] = {}
    label = 0
    for v in range(top + 1):
        vertices.append(_vid(v))
        height[_vid(v)] = v
        if v > 0:
            label += 1
            down_label[v] = label
            asc.append((_vid(v - 1), _vid(v)))
            desc.append(DescEdge(_vid(v), _vid(v - 1), label, None, y[label]))
        if v in sats:
            s = _vid(v, sat=True)
            vertices.append(s)
            height[s] = v
            label += 1
            asc.append((_vid(v), s))
            desc.append(DescEdge(s, _vid(v), label, None, y[label]))
    assert label == 2 * r + 1, (M, label)
    for u, w in longs:
        i, j = down_label[u] // 2 + 1, down_label[w + 1] // 2
        desc.append(DescEdge(_vid(u), _vid(w), None, (i, j), _pair_weight(y, i, j)))
    return TargetGraph(M, vertices, asc, desc, blocks, height)


def long_edges(M: MotzkinPath) -> list[tuple[int, int]]:
    """Label pairs (i, j) of the long descending edges of the target graph of M."""
    return [e.pair for e in build_gamma(M, weights="symbolic").long_edges]


def skeleton_path(M: MotzkinPath) -> MotzkinPath:
    """Replace every descending step of M by a level step."""
    vals = [M.values[0]]
    for a, b in zip(M.values, M.values[1:]):
        vals.append(vals[-1] + max(b - a, 0))
    return MotzkinPath(tuple(vals))


def skeleton_tree(M: MotzkinPath, weights: str | Sequence = "symbolic") -> TargetGraph:
    return build_gamma(skeleton_path(M), weights)


def zero_path_graph(r: int, weights: str | Sequence = "symbolic") -> TargetGraph:
    return build_gamma(zero_path(r), weights)


# ---------------------------------------------------------------------------
# hard particles and heaps


@dataclass
class HeapGraph:
    vertices: list[str]
    weights: dict[str, Any]
    edges: set[frozenset]

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def neighbours(self, v: str) -> set[str]:
        return {w for e in self.edges if v in e for w in e if w != v}

    def with_weights(self, weights: dict[str, Any]) -> "HeapGraph":
        return HeapGraph(list(self.vertices), dict(weights), set(self.edges))

    def edge_list(self) -> list[tuple[str, str]]:
        order = {v: i for i, v in enumerate(self.vertices)}
        return sorted((tuple(sorted(e, key=order.__getitem__)) for e in self.edges),
                      key=lambda p: (order[p[0]], order[p[1]]))

    def to_json_obj(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "weights": {v: str(self.weights[v]) for v in self.vertices},
            "edges": [list(p) for p in self.edge_list()],
        }

    def to_dot(self) -> str:
        lines = ["graph heap {"]
        for v in self.vertices:
            lines.append(f'  "{v}" [label="{v}: {self.weights[v]}"];')
        for a, b in self.edge_list():
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class HPConfig:
    occupied: frozenset

    def is_valid(self, G: HeapGraph) -> bool:
        occ = sorted(self.occupied)
        return all(not G.adjacent(a, b) for n, a in enumerate(occ) for b in occ[n + 1:])


def build_Gr(r: int, weights: str | Sequence = "symbolic") -> HeapGraph:
    """The graph on 1..2r+1: backbone 1-2-4-...-2r-(2r+1), odd 2a-1 joined to 2a-2 and 2a."""
    n = 2 * r + 1
    names = [str(i) for i in range(1, n + 1)]
    backbone = [1] + list(range(2, n, 2)) + [n]
    if r == 0:
        backbone = [1]
    edges = {frozenset((str(a), str(b))) for a, b in zip(backbone, backbone[1:])}
    for a in range(2, r + 1):
        edges.add(frozenset((str(2 * a - 1), str(2 * a - 2))))
        edges.add(frozenset((str(2 * a - 1), str(2 * a))))
    if weights == "symbolic":
        w = {str(i): LaurentPoly.var(Y(i)) for i in range(1, n + 1)}
    elif weights == "ones":
        w = {v: 1 for v in names}
    else:
        w = {str(i): weights[i] for i in range(1, n + 1)}
    return HeapGraph(names, w, edges)


def build_heap_graph(M: MotzkinPath, weights: str | Sequence = "seed") -> HeapGraph:
    """One vertex per descending edge of the target graph; overlapping descents are joined.

    A descent covers the closed interval of spine heights between its ends
    (a single height for a satellite descent); two descents overlap when
    their intervals meet.
    """
    G = build_gamma(M, weights)
    names, w, span = [], {}, {}
    for e in sorted(G.desc, key=_heap_order):
        names.append(e.key)
        w[e.key] = e.weight
        span[e.key] = (G.height[e.dst], G.height[e.src])
    edges = set()
    for n, a in enumerate(names):
        for b in names[n + 1:]:
            (lo1, hi1), (lo2, hi2) = span[a], span[b]
            if lo1 <= hi2 and lo2 <= hi1:
                edges.add(frozenset((a, b)))
    return HeapGraph(names, w, edges)


def _heap_order(e: DescEdge):
    return (0, e.label, 0) if e.label is not None else (1, e.pair[0], e.pair[1])


def _independent_sets(G: HeapGraph) -> Iterable[list[str]]:
    verts = list(G.vertices)
    nbrs = {v: G.neighbours(v) for v in verts}

    def rec(i: int, chosen: list[str], blocked: set[str]):
        if i == len(verts):
            yield list(chosen)
            return
        yield from rec(i + 1, chosen, blocked)
        v = verts[i]
        if v not in blocked:
            chosen.append(v)
            yield from rec(i + 1, chosen, blocked | nbrs[v])
            chosen.pop()

    yield from rec(0, [], set())


def hard_particle_Z(G: HeapGraph, by_count: bool = False):
    """Sum over hard-particle configurations of the product of vertex weights."""
    if len(G.vertices) > MAX_HP_VERTICES:
        raise TooLarge(f"hard-particle enumeration is limited to {MAX_HP_VERTICES} vertices")
    graded: list = [0]
    for conf in _independent_sets(G):
        term = 1
        for v in conf:
            term = term * G.weights[v]
        while len(graded) <= len(conf):
            graded.append(0)
        graded[len(conf)] = graded[len(conf)] + term
    if by_count:
        return graded
    total = 0
    for z in graded:
        total = total + z
    return total


def gr_recursion_Z(r: int, y: Sequence) -> list:
    """Z_j(G_r), j = 0..r+1, from the recursion removing the top two vertices."""
    levels = {-1: [1], 0: [1, y[1]]}
    for s in range(1, r + 1):
        prev, prev2 = levels[s - 1], levels[s - 2]
        out = []
        for j in range(s + 2):
            z = prev[j] if j < len(prev) else 0
            if j >= 1:
                if j - 1 < len(prev):
                    z = z + y[2 * s + 1] * prev[j - 1]
                if j - 1 < len(prev2):
                    z = z + y[2 * s] * prev2[j - 1]
            out.append(z)
        levels[s] = out
    return levels[r]


def conserved_equals_hard_particles(state) -> bool:
    """Check c_j = Z_j(G_r) with the time-0 weights of the state.

    Symbolic zero-path states are compared exactly; any other state is
    compared at its oracle point.
    """
    from .qsystem import QState, conserved, time_weights

    r = state.M.r
    if state.symbolic and state.M != zero_path(r):
        state = QState.numeric(state.M, state.oracle_point())
    y = time_weights(state, 0)
    cs = conserved(state)
    G = build_Gr(r, weights=y)
    z = hard_particle_Z(G, by_count=True)
    z_rec = gr_recursion_Z(r, y)
    for j in range(r + 2):
        zj = z[j] if j < len(z) else 0
        if zj != cs[j] or z_rec[j] != cs[j]:
            return False
    return True

"""Branched continued fractions for path generating functions.

A :class:`FractionNode` stands for the power series

    V = 1 / (1 - t * (sum of diag) - t * sum_b  w_b * V_{c_1} ... V_{c_k})

where each branch ``b`` carries a numerator weight ``w_b`` and a tuple of
child nodes.  Children may be shared between branches, so a tree is really
a DAG; evaluation memoizes on node identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import DegenerateSum, IllegalMove, PatternMismatch
from .graphs import TargetGraph, build_gamma
from .laurent import LaurentPoly, RationalFunction, TruncSeries, VarId
from .motzkin import MotzkinPath, apply_move, forward_move, move_kind, zero_path
from .weights import (_frac, _is_zero, express_in_old_seed, mutate_weight_list, weights_for_seed,
                      yij_from_skeleton)


@dataclass(frozen=True, eq=False)
class FractionNode:
    diag: tuple = ()
    branches: tuple = ()          # ((weight, (child, ...)), ...)
    label: str = ""

    @property
    def kind(self) -> str:
        return "leaf" if not self.branches else "level"

    def children(self) -> list["FractionNode"]:
        out, seen = [], set()
        for _, cs in self.branches:
            for c in cs:
                if id(c) not in seen:
                    seen.add(id(c))
                    out.append(c)
        return out

    def walk(self) -> list["FractionNode"]:
        """All nodes reachable from here, each once, parents first."""
        out, seen, stack = [], set(), [self]
        while stack:
            n = stack.pop()
            if id(n) in seen:
                continue
            seen.add(id(n))
            out.append(n)
            stack.extend(reversed(n.children()))
        return out

    def find(self, label: str) -> "FractionNode":
        for n in self.walk():
            if n.label == label:
                return n
        raise KeyError(label)

    def level_sum(self, order: int, memo: dict | None = None) -> TruncSeries:
        """sum(diag) + sum_b w_b * prod V_child, as a series."""
        memo = {} if memo is None else memo
        s = TruncSeries.zero(order)
        for d in self.diag:
            s = s + TruncSeries.constant(d, order)
        for w, cs in self.branches:
            term = TruncSeries.constant(w, order)
            for c in cs:
                term = term * c.evaluate(order, memo)
            s = s + term
        return s

    def evaluate(self, order: int, memo: dict | None = None) -> TruncSeries:
        memo = {} if memo is None else memo
        key = id(self)
        if key not in memo:
            s = self.level_sum(order, memo)
            memo[key] = (TruncSeries.one(order) - s.shift(1)).inverse()
        return memo[key]

    def map_weights(self, f) -> "FractionNode":
        return _rebuild(self, lambda n, kids: FractionNode(
            tuple(f(d) for d in n.diag),
            tuple((f(w), tuple(kids[id(c)] for c in cs)) for w, cs in n.branches),
            n.label))

    def to_latex(self) -> str:
        return _latex(self)


@dataclass(frozen=True)
class Shifted:
    """head + t * coeff * node: the shape produced by the first move."""

    head: Any
    coeff: Any
    node: FractionNode

    def evaluate(self, order: int) -> TruncSeries:
        v = self.node.evaluate(order)
        return TruncSeries.constant(self.head, order) + (v * self.coeff).shift(1)

    def to_latex(self) -> str:
        return f"{_tex_weight(self.head)} + t\\,{_tex_weight(self.coeff)}\\,{_latex(self.node)}"


def _rebuild(root: FractionNode, make) -> FractionNode:
    """Rebuild bottom-up, keeping shared children shared."""
    new: dict[int, FractionNode] = {}
    for n in reversed(root.walk()):
        new[id(n)] = make(n, new)
    return new[id(root)]


def replace_node(root: FractionNode, old: FractionNode, repl: FractionNode) -> FractionNode:
    def make(n, kids):
        if n is old:
            return repl
        if all(kids[id(c)] is c for c in n.children()):
            return n
        return FractionNode(n.diag, tuple((w, tuple(kids[id(c)] for c in cs)) for w, cs in n.branches),
                            n.label)
    return _rebuild(root, make)


# ---------------------------------------------------------------------------
# from target graphs


def cf_from_gamma(G: TargetGraph) -> FractionNode:
    """Continued fraction for paths from 0 back to 0 on a target graph.

    Level w collects the satellite loop at w and, for each descending edge
    u -> w from the spine, the product of the levels w+1, ..., u.
    """
    spine = sorted((v for v in G.vertices if not v.endswith("p")), key=int)
    top = int(spine[-1])
    diag: dict[int, list] = {h: [] for h in range(top + 1)}
    terms: dict[int, list] = {h: [] for h in range(top + 1)}
    for e in G.desc:
        if e.src.endswith("p"):
            diag[int(e.dst)].append(e.weight)
        else:
            terms[int(e.dst)].append((int(e.src), e.weight))
    nodes: dict[int, FractionNode] = {}
    for h in range(top, -1, -1):
        branches = tuple((w, tuple(nodes[k] for k in range(h + 1, u + 1)))
                         for u, w in sorted(terms[h]))
        nodes[h] = FractionNode(tuple(diag[h]), branches, str(h))
    return nodes[0]


def cf_series(M: MotzkinPath, order: int, weights="seed") -> TruncSeries:
    return cf_from_gamma(build_gamma(M, weights)).evaluate(order)


# ---------------------------------------------------------------------------
# the two rearrangement moves


def _site(root: FractionNode, site) -> FractionNode:
    if site is None:
        return root
    if isinstance(site, FractionNode):
        return site
    return root.find(str(site))


def _sum_nonzero(a, b):
    s = a + b
    if _is_zero(s):
        raise DegenerateSum("a + b vanishes")
    return s


def move_first(node: FractionNode) -> Shifted:
    """1/(1 - t a V) = 1 + t a/(1 - t a - t S) where V = 1/(1 - t S)."""
    if node.diag or len(node.branches) != 1 or len(node.branches[0][1]) != 1:
        raise PatternMismatch("the first move needs a single branch with one child and no diagonal")
    a, (child,) = node.branches[0]
    return Shifted(1, a, FractionNode((a,) + child.diag, child.branches, child.label))


def move_first_inverse(s: Shifted) -> FractionNode:
    n = s.node
    if s.head != 1 or not n.diag or n.diag[0] != s.coeff:
        raise PatternMismatch("not the output of the first move")
    child = FractionNode(n.diag[1:], n.branches, n.label)
    return FractionNode((), ((s.coeff, (child,)),), "")


def move_second(root: FractionNode, site=None) -> FractionNode:
    """Replace a + b/(1 - t c/(1 - t d)) by a'/(1 - t b'/(1 - t c' - t d)).

    The site N must have diag [a] and one branch (b, [P]).  If P itself has
    no diagonal and a single branch (c, [Q]) the simple form applies, with
    d the level sum of Q.  Otherwise c is the whole level sum of P and
    d = 0: the terms of P are rescaled by b/(a+b) and grow a new child Q'
    whose level is P's level rescaled by a/(a+b).
    """
    N = _site(root, site)
    if len(N.diag) != 1 or len(N.branches) != 1 or len(N.branches[0][1]) != 1:
        raise PatternMismatch("the second move needs diag [a] and a single branch (b, [P])")
    a = N.diag[0]
    b, (P,) = N.branches[0]
    s = _sum_nonzero(a, b)
    if not P.diag and len(P.branches) == 1 and len(P.branches[0][1]) == 1:
        c, (Q,) = P.branches[0]
        if _is_zero(c):
            raise PatternMismatch("c must be non-zero")
        Qn = FractionNode((_frac(a * c, s),) + Q.diag, Q.branches, Q.label)
        Pn = FractionNode((), ((_frac(b * c, s), (Qn,)),), P.label)
    else:
        lam_b, lam_a = _frac(b, s), _frac(a, s)
        # only P's own level is rescaled; deeper levels are shared unchanged
        Qn = FractionNode(tuple(d * lam_a for d in P.diag),
                          tuple((w * lam_a, cs) for w, cs in P.branches), P.label + "'")
        terms = [(d * lam_b, (Qn,)) for d in P.diag]
        terms += [(w * lam_b, cs + (Qn,)) for w, cs in P.branches]
        Pn = FractionNode((), tuple(terms), P.label)
    Nn = FractionNode((), ((s, (Pn,)),), N.label)
    return replace_node(root, N, Nn)


def second_move_weights(a, b, c) -> tuple:
    s = _sum_nonzero(a, b)
    return s, _frac(b * c, s), _frac(a * c, s)


def second_move_inverse_weights(ap, bp, cp) -> tuple:
    c = bp + cp
    if _is_zero(c):
        raise DegenerateSum("b' + c' vanishes")
    return _frac(ap * cp, c), _frac(ap * bp, c), c


# ---------------------------------------------------------------------------
# mutations as rearrangements


def _equal_after_substitution(old, new, M: MotzkinPath, alpha: int) -> bool:
    """old is in the variables of M; new in those of the mutated seed."""
    return RationalFunction.coerce(old) == express_in_old_seed(new, M, alpha)


def verify_mutation_is_rearrangement(M: MotzkinPath, move, order: int = 8) -> bool:
    """Series check that one forward mutation is a rearrangement of F_M.

    ``move`` is a row index or a :class:`MutationMove`.  Both sides are
    evaluated from their own target graphs with seed weights; the series of
    the mutated seed is rewritten in the variables of M with the single
    Q-system relation defining the move.  For a move at row 1 the re-rooting
    relation F_M = 1 + t y_1 F_M' is checked instead of equality.  When the
    move is of kind (a) or (b) the weight transformation itself is also
    compared with the seed weights of the mutated path.
    """
    alpha = move if isinstance(move, int) else move.alpha
    mv = forward_move(M, alpha)
    Mp = apply_move(M, mv)
    F = cf_series(M, order)
    Fp = cf_series(Mp, order)
    y = weights_for_seed(M).y
    if alpha == 1:
        # F_M = 1 + t y_1 F_M'
        lhs = [F.coeff(k) for k in range(1, order + 1)]
        rhs = [Fp.coeff(k - 1) for k in range(1, order + 1)]
        if F.coeff(0) != 1:
            return False
        for l, r in zip(lhs, rhs):
            if RationalFunction.coerce(l) != express_in_old_seed(r, M, alpha) * RationalFunction.coerce(y[1]):
                return False
    else:
        for k in range(order + 1):
            if not _equal_after_substitution(F.coeff(k), Fp.coeff(k), M, alpha):
                return False
    try:
        kind = move_kind(M, alpha)
    except IllegalMove:
        return True
    moved = mutate_weight_list(y, alpha, kind)
    target = weights_for_seed(Mp).y
    return all(_equal_after_substitution(moved[i], target[i], M, alpha)
               for i in range(1, len(target)))


def rearranged_fraction(M: MotzkinPath, alpha: int) -> FractionNode | Shifted:
    """Apply the continued-fraction move matching a kind (a)/(b) mutation at alpha.

    On the zero path's graph the weights y_{2a-1}, y_{2a} both end at spine
    level alpha.  For row 1 the first move is applied as well, giving the
    re-rooted form.
    """
    if M != zero_path(M.r):
        raise IllegalMove("rearranged_fraction is implemented for the zero path")
    root = cf_from_gamma(build_gamma(M, "seed"))
    if alpha == 1:
        s = move_first(root)
        inner = move_second(s.node)
        return Shifted(s.head, s.coeff, inner)
    return move_second(root, str(alpha))


# ---------------------------------------------------------------------------
# composing weight moves along a sequence


@dataclass
class WeightDictionary:
    M: MotzkinPath
    skeleton: list                  # indices 1..2r+1, None at 0
    long: dict = field(default_factory=dict)   # (i, j) -> weight

    def all_weights(self) -> dict:
        out = {str(i): w for i, w in enumerate(self.skeleton) if i > 0}
        out.update({f"{i},{j}": w for (i, j), w in self.long.items()})
        return out


def compose_moves(r: int, alphas: Sequence[int]) -> WeightDictionary:
    """Weights reached from the zero path by kind (a)/(b) moves at the given rows.

    Rows are listed in the order applied.  Weights stay in the variables of
    the zero path, so they are rational functions in general.
    """
    M = zero_path(r)
    y = list(weights_for_seed(M).y)
    for alpha in alphas:
        kind = move_kind(M, alpha)
        y = mutate_weight_list(y, alpha, kind)
        M = apply_move(M, forward_move(M, alpha))
    G = build_gamma(M, "symbolic")
    long = {e.pair: yij_from_skeleton(y, *e.pair) for e in G.long_edges}
    return WeightDictionary(M, y, long)


def closed_form_dictionary(M: MotzkinPath) -> WeightDictionary:
    y = list(weights_for_seed(M).y)
    G = build_gamma(M, "symbolic")
    long = {e.pair: yij_from_skeleton(y, *e.pair) for e in G.long_edges}
    return WeightDictionary(M, y, long)


def in_zero_seed(p, M: MotzkinPath) -> RationalFunction:
    """Rewrite a Laurent polynomial in the seed of M in the zero-path variables."""
    from .qsystem import QState, evolve
    state = QState(zero_path(M.r))
    p = LaurentPoly.coerce(p)
    total = RationalFunction(0)
    for m, c in p.terms():
        term = RationalFunction(c)
        for v, k in m.as_dict().items():
            term = term * RationalFunction.coerce(evolve(state, v.alpha, v.level)) ** k
        total = total + term
    return total


def dictionaries_agree(M: MotzkinPath, composed: WeightDictionary) -> bool:
    closed = closed_form_dictionary(M)
    a, b = composed.all_weights(), closed.all_weights()
    if a.keys() != b.keys():
        return False
    return all(RationalFunction.coerce(a[k]) == in_zero_seed(b[k], M) for k in a)


# ---------------------------------------------------------------------------
# LaTeX


def _tex_weight(w) -> str:
    if isinstance(w, RationalFunction):
        return f"\\frac{{{_tex_poly(w.num)}}}{{{_tex_poly(w.den)}}}"
    if isinstance(w, LaurentPoly):
        return _tex_poly(w)
    return str(w)


def _tex_var(v: VarId) -> str:
    if v.base == "R":
        return f"R_{{{v.alpha},{v.level}}}"
    return f"{v.base}_{{{v.alpha}}}"


def _tex_poly(p: LaurentPoly) -> str:
    parts = []
    for m, c in p.terms():
        num, den = [], []
        for v, k in sorted(m.as_dict().items(), key=lambda kv: (kv[0].base, kv[0].alpha, kv[0].level)):
            s = _tex_var(v) + (f"^{{{abs(k)}}}" if abs(k) != 1 else "")
            (num if k > 0 else den).append(s)
        body = " ".join(num) or "1"
        if den:
            body = f"\\frac{{{body}}}{{{' '.join(den)}}}"
        if c != 1:
            body = f"{c} {body}" if body != "1" else str(c)
        parts.append(body)
    return " + ".join(parts) if parts else "0"


def _latex(n: FractionNode) -> str:
    terms = []
    for d in n.diag:
        terms.append(f"t\\,{_wrap(d)}")
    for w, cs in n.branches:
        terms.append(f"t\\,{_wrap(w)}" + "".join(f"\\,{_latex(c)}" for c in cs))
    return "\\frac{1}{1 - " + " - ".join(terms) + "}" if terms else "1"


def _wrap(w) -> str:
    s = _tex_weight(w)
    return f"({s})" if " + " in s else s

"""Motzkin-path seed indices, the fundamental domain and mutation order."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import IllegalMove, NotMotzkin
from .laurent import VarId


@dataclass(frozen=True, order=True)
class MotzkinPath:
    """The vector (m_1, ..., m_r); stored 0-based, read 1-based via ``m(alpha)``."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.values:
            raise NotMotzkin("a Motzkin path needs r >= 1 entries")
        for a, b in zip(self.values, self.values[1:]):
            if abs(a - b) > 1:
                raise NotMotzkin(f"consecutive entries {a}, {b} differ by more than 1")

    @classmethod
    def of(cls, *values: int) -> "MotzkinPath":
        if len(values) == 1 and not isinstance(values[0], int):
            values = tuple(values[0])
        return cls(tuple(values))

    @classmethod
    def parse(cls, text: str) -> "MotzkinPath":
        try:
            vals = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
        except ValueError as exc:
            raise NotMotzkin(f"cannot parse seed {text!r}") from exc
        return cls(vals)

    @property
    def r(self) -> int:
        return len(self.values)

    def m(self, alpha: int) -> int:
        """m_alpha for 1 <= alpha <= r."""
        return self.values[alpha - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def is_fundamental(self) -> bool:
        return min(self.values) == 0

    def seed_vars(self) -> list[VarId]:
        """The 2r cluster variables R[a][m_a], R[a][m_a + 1]."""
        out = []
        for a in range(1, self.r + 1):
            out.append(VarId(a, self.m(a)))
            out.append(VarId(a, self.m(a) + 1))
        return out

    def in_seed(self, alpha: int, level: int) -> bool:
        return 1 <= alpha <= self.r and level in (self.m(alpha), self.m(alpha) + 1)

    def with_entry(self, alpha: int, value: int) -> "MotzkinPath":
        vals = list(self.values)
        vals[alpha - 1] = value
        return MotzkinPath(tuple(vals))

    def label(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"

    def to_json_obj(self) -> dict:
        return {"m": list(self.values), "r": self.r}

    def __str__(self):
        return self.label()


def zero_path(r: int) -> MotzkinPath:
    return MotzkinPath((0,) * r)


def max_path(r: int) -> MotzkinPath:
    """m_alpha = alpha - 1 (strictly ascending)."""
    return MotzkinPath(tuple(range(r)))


def descending_path(r: int) -> MotzkinPath:
    """m_alpha = r - alpha (strictly descending)."""
    return MotzkinPath(tuple(range(r - 1, -1, -1)))


def is_motzkin(values: Sequence[int]) -> bool:
    return bool(values) and all(abs(a - b) <= 1 for a, b in zip(values, values[1:]))


def fundamental_domain(r: int) -> list[MotzkinPath]:
    """All Motzkin paths with minimum 0, in lexicographic order."""
    if r < 1:
        raise NotMotzkin("r must be at least 1")
    out = []
    for steps in itertools.product((-1, 0, 1), repeat=r - 1):
        vals = [0]
        for s in steps:
            vals.append(vals[-1] + s)
        low = min(vals)
        out.append(MotzkinPath(tuple(v - low for v in vals)))
    return sorted(set(out))


def translate(M: MotzkinPath, k: int) -> MotzkinPath:
    return MotzkinPath(tuple(v + k for v in M.values))


def reflect(M: MotzkinPath) -> MotzkinPath:
    """m_alpha -> -(m_alpha + 1): the seed of the time-reversed system."""
    return MotzkinPath(tuple(-(v + 1) for v in M.values))


@dataclass(frozen=True)
class MutationMove:
    """One forward/backward mutation of the variable pair at ``alpha``.

    ``slot`` is "lower" for the variable with even level (cluster index
    ``alpha``) and "upper" for odd level (index ``alpha + r``).
    """

    alpha: int
    direction: str = "forward"
    slot: str = "lower"

    def index(self, r: int) -> int:
        return self.alpha if self.slot == "lower" else self.alpha + r

    def label(self, r: int) -> str:
        return f"mu_{self.index(r)}"


def apply_move(M: MotzkinPath, move: MutationMove) -> MotzkinPath:
    """Apply a move, checking that the slot matches the variable replaced."""
    m = M.m(move.alpha)
    if move.direction == "forward":
        old_level, new = m, m + 1
    elif move.direction == "backward":
        old_level, new = m + 1, m - 1
    else:
        raise IllegalMove(f"unknown direction {move.direction!r}")
    expected = "lower" if old_level % 2 == 0 else "upper"
    if move.slot != expected:
        raise IllegalMove(f"slot {move.slot} does not hold R[{move.alpha}][{old_level}]")
    vals = list(M.values)
    vals[move.alpha - 1] = new
    if not is_motzkin(vals):
        raise IllegalMove(f"mutation at alpha={move.alpha} leaves the Motzkin set")
    return MotzkinPath(tuple(vals))


def forward_move(M: MotzkinPath, alpha: int) -> MutationMove:
    slot = "lower" if M.m(alpha) % 2 == 0 else "upper"
    return MutationMove(alpha, "forward", slot)


def mutation_sequence(M: MotzkinPath) -> list[MutationMove]:
    """Moves taking the zero path to ``M``, listed in the order applied.

    Lattice points (x, alpha) with 1 <= x <= m_alpha are processed row by
    row (x increasing); within a row alpha runs from r down to 1.  Written as
    a composition, the last element of the list is the leftmost factor.
    """
    if min(M.values) < 0:
        raise NotMotzkin("mutation sequences start from the zero path; entries must be >= 0")
    r = M.r
    moves = []
    for x in range(1, max(M.values) + 1):
        for alpha in range(r, 0, -1):
            if M.m(alpha) >= x:
                moves.append(MutationMove(alpha, "forward", "lower" if x % 2 == 1 else "upper"))
    return moves


def sequence_paths(M: MotzkinPath) -> list[MotzkinPath]:
    """Intermediate paths M_0, ..., M along the canonical sequence."""
    cur = zero_path(M.r)
    out = [cur]
    for mv in mutation_sequence(M):
        cur = apply_move(cur, mv)
        out.append(cur)
    return out


def composition_label(M: MotzkinPath) -> str:
    """The sequence written as a product, rightmost factor applied first."""
    return "".join(mv.label(M.r) for mv in reversed(mutation_sequence(M)))


def move_kind(M: MotzkinPath, alpha: int) -> str:
    """Classify a legal forward move: "a" or "b".

    Kind (a): the neighbour above (alpha + 1) is strictly higher, or alpha is
    the top row.  Kind (b): both neighbours sit at the same height as m_alpha.
    The row below must be level with m_alpha unless alpha = 1.
    """
    r = M.r
    m = M.m(alpha)
    below = M.m(alpha - 1) if alpha > 1 else m
    if below != m:
        raise IllegalMove(f"no rearrangement move at alpha={alpha} for {M.label()}")
    if alpha == r:
        return "a"
    above = M.m(alpha + 1)
    if above == m + 1:
        return "a"
    if above == m:
        return "b"
    raise IllegalMove(f"no rearrangement move at alpha={alpha} for {M.label()}")


def mutation_graph(r: int) -> list[tuple[MotzkinPath, int, MotzkinPath]]:
    """Edges (M, alpha, M') of single forward mutations inside the fundamental domain."""
    dom = set(fundamental_domain(r))
    edges = []
    for M in sorted(dom):
        for alpha in range(1, r + 1):
            vals = list(M.values)
            vals[alpha - 1] += 1
            if is_motzkin(vals) and MotzkinPath(tuple(vals)) in dom:
                edges.append((M, alpha, MotzkinPath(tuple(vals))))
    return edges


def has_rearrangement_move(M: MotzkinPath, alpha: int) -> bool:
    try:
        move_kind(M, alpha)
    except IllegalMove:
        return False
    return True

"""Published reference values for r = 1, 2, 3, transcribed verbatim.

Monomials are written as ``"R11^2 R31 / R20 R21 R12"`` where ``Rab`` is
R_{a,b}; a leading ``1`` stands for an empty numerator.  Transfer matrix
cells are ``"0"``, ``"1"``, ``"y4"`` (meaning t*y_4) or ``"y3,1"``
(meaning t*y_{3,1}).
"""

from __future__ import annotations

import re

from .laurent import LaurentPoly, monomial_from_exponents, R
from .motzkin import MotzkinPath

_TOKEN = re.compile(r"R(\d)(-?\d)(?:\^(\d+))?")


def parse_monomial(text: str) -> LaurentPoly:
    num, _, den = text.partition("/")
    exps: dict = {}
    for part, sign in ((num, 1), (den, -1)):
        for a, b, k in _TOKEN.findall(part):
            v = R(int(a), int(b))
            exps[v] = exps.get(v, 0) + sign * int(k or 1)
    return monomial_from_exponents(exps)


def parse_sum(text: str) -> LaurentPoly:
    total = LaurentPoly.constant(0)
    for term in text.split("+"):
        total = total + parse_monomial(term)
    return total


# conserved quantities in the variables R_{a,0}, R_{a,1}
CONSERVED = {
    (1, 1): "R11/R10 + 1/R10 R11 + R10/R11",
    (2, 1): "R20/R21 + R11/R10 + R10 R21/R20 R11 + R21/R10 R11 + R10/R20 R21",
    (2, 2): "R10/R11 + R21/R20 + R20 R11/R10 R21 + R11/R20 R21 + R20/R10 R11",
}


# weight dictionaries reached from the zero path of A_3 by successive moves.
# rows: the rows mutated, in the order applied.  keys: printed index -> weight key
# used by WeightDictionary.all_weights().
WEIGHT_DICTIONARIES = {
    "y": {
        "rows": [],
        "weights": {
            1: "R11/R10", 2: "R21/R10 R11", 3: "R10 R21/R20 R11", 4: "R10 R31/R20 R21",
            5: "R20 R31/R30 R21", 6: "R20/R30 R31", 7: "R30/R31",
        },
        "long": {},
        "relations": [((1, 3, 5, 7), ())],
    },
    "z": {
        "rows": [1],
        "weights": {
            1: "R12/R11", 2: "R21^2/R20 R11 R12", 3: "R11 R21/R20 R12", 4: "R11^2 R31/R20 R21 R12",
            5: "R20 R31/R30 R21", 6: "R20/R30 R31", 7: "R30/R31", 8: "R31/R20 R12",
        },
        "long": {8: "3,1"},
        "relations": [((1, 3, 5, 7), ()), ((3, 8), (2, 4))],
    },
    "x": {
        "rows": [2],
        "weights": {
            1: "R11/R10", 2: "R21/R10 R11", 3: "R10 R22/R11 R21", 4: "R11 R31^2/R30 R21 R22",
            5: "R21 R31/R30 R22", 6: "R21^2/R30 R31 R22", 7: "R30/R31", 8: "R11/R30 R22",
        },
        "long": {8: "4,2"},
        "relations": [((1, 3, 5, 7), ()), ((5, 8), (4, 6))],
    },
    "t": {
        "rows": [3],
        "weights": {
            1: "R11/R10", 2: "R21/R10 R11", 3: "R10 R21/R20 R11", 4: "R10 R31/R20 R21",
            5: "R20 R32/R21 R31", 6: "R21/R31 R32", 7: "R31/R32",
        },
        "long": {},
        "relations": [((1, 3, 5, 7), ())],
    },
    "u": {
        "rows": [2, 1],
        "weights": {
            1: "R12/R11", 2: "R22/R11 R12", 3: "R11 R22/R12 R21", 4: "R11 R31^2/R30 R21 R22",
            5: "R21 R31/R30 R22", 6: "R21^2/R30 R31 R22", 7: "R30/R31", 8: "R11/R30 R22",
        },
        "long": {8: "4,2"},
        "relations": [((1, 3, 5, 7), ()), ((5, 8), (4, 6))],
    },
    "w": {
        "rows": [3, 1],
        "weights": {
            1: "R12/R11", 2: "R21^2/R20 R11 R12", 3: "R31/R12 R20", 4: "R11^2 R31/R20 R21 R12",
            5: "R20 R32/R21 R31", 6: "R21/R31 R32", 7: "R31/R32", 8: "R31/R20 R12",
        },
        "long": {8: "3,1"},
        "relations": [((1, 3, 5, 7), ()), ((2, 4), (3, 8))],
    },
    "s": {
        "rows": [3, 2],
        "weights": {
            1: "R11/R10", 2: "R21/R10 R11", 3: "R10 R22/R11 R21", 4: "R11 R32/R21 R22",
            5: "R21 R32/R31 R22", 6: "R21/R31 R32", 7: "R31/R32",
        },
        "long": {},
        "relations": [((1, 3, 5, 7), ())],
    },
    "r": {
        "rows": [3, 2, 3],
        "weights": {
            1: "R11/R10", 2: "R21/R10 R11", 3: "R10 R22/R11 R21", 4: "R11 R32/R21 R22",
            5: "R21 R33/R22 R32", 6: "R22/R32 R33", 7: "R32/R33",
        },
        "long": {},
        "relations": [((1, 3, 5, 7), ())],
    },
    "v": {
        "rows": [2, 1, 1],
        "weights": {
            1: "R13/R12", 2: "R22^2/R21 R12 R13", 3: "R12 R22/R21 R13",
            4: "R12^2 R31^2/R30 R21 R22 R13", 5: "R21 R31/R30 R22", 6: "R21^2/R30 R31 R22",
            7: "R30/R31", 8: "R12^2/R30 R22 R13", 9: "R31^2/R30 R21 R13", 10: "1/R30 R13",
        },
        "long": {8: "4,2", 9: "3,1", 10: "4,1"},
        "relations": [((1, 3, 5, 7), ()), ((2, 4), (3, 9)), ((8, 9), (4, 10)), ((2, 8), (3, 10))],
    },
}

# entries whose printed form contradicts the stated relations; see the
# dictionary tests for the check that the printed value breaks them
PRINTED_SLIPS = {("w", 3): "R11 R21/R12 R20"}


def dictionary_entry(name: str, index: int, corrected: bool = True) -> LaurentPoly:
    if corrected and (name, index) in PRINTED_SLIPS:
        return parse_monomial(PRINTED_SLIPS[(name, index)])
    return parse_monomial(WEIGHT_DICTIONARIES[name]["weights"][index])


def dictionary_by_key(name: str, corrected: bool = True) -> dict[str, LaurentPoly]:
    """Printed dictionary re-keyed as WeightDictionary.all_weights() keys."""
    d = WEIGHT_DICTIONARIES[name]
    out = {}
    for i in d["weights"]:
        key = d["long"].get(i, str(i))
        out[key] = dictionary_entry(name, i, corrected)
    return out


# transfer matrices of the nine A_3 seeds; rows and columns follow the vertex
# order of the target graph (spine vertices with satellites right after their base)
_M0_ROWS = [
    "0 y1 0 0 0 0 0 0",
    "1 0 y2 0 0 0 0 0",
    "0 1 0 y3 y4 0 0 0",
    "0 0 1 0 0 0 0 0",
    "0 0 1 0 0 y5 y6 0",
    "0 0 0 0 1 0 0 0",
    "0 0 0 0 1 0 0 y7",
    "0 0 0 0 0 0 1 0",
]

TRANSFER_MATRICES = {
    (0, 0, 0): _M0_ROWS,
    (1, 0, 0): [
        "0 y1 0 0 0 0 0 0",
        "1 0 y2 0 y3,1 0 0 0",
        "0 1 0 y3 y4 0 0 0",
        "0 0 1 0 0 0 0 0",
        "0 0 1 0 0 y5 y6 0",
        "0 0 0 0 1 0 0 0",
        "0 0 0 0 1 0 0 y7",
        "0 0 0 0 0 0 1 0",
    ],
    (0, 1, 0): [
        "0 y1 0 0 0 0 0 0",
        "1 0 y2 0 0 0 0 0",
        "0 1 0 y3 0 0 0 0",
        "0 0 1 0 y4 0 y5,3 0",
        "0 0 0 1 0 y5 y6 0",
        "0 0 0 0 1 0 0 0",
        "0 0 0 0 1 0 0 y7",
        "0 0 0 0 0 0 1 0",
    ],
    (0, 0, 1): [
        "0 y1 0 0 0 0 0 0",
        "1 0 y2 0 0 0 0 0",
        "0 1 0 y3 y4 0 0 0",
        "0 0 1 0 0 0 0 0",
        "0 0 1 0 0 y5 0 0",
        "0 0 0 0 1 0 y6 0",
        "0 0 0 0 0 1 0 y7",
        "0 0 0 0 0 0 1 0",
    ],
    (1, 1, 0): [
        "0 y1 0 0 0 0 0 0",
        "1 0 y2 0 0 0 0 0",
        "0 1 0 y3 y4 0 y4,2 0",
        "0 0 1 0 0 0 0 0",
        "0 0 1 0 0 y5 y6 0",
        "0 0 0 0 1 0 0 0",
        "0 0 0 0 1 0 0 y7",
        "0 0 0 0 0 0 1 0",
    ],
    (1, 0, 1): [
        "0 y1 0 0 0 0 0 0",
        "1 0 y2 0 y3,1 0 0 0",
        "0 1 0 y3 y4 0 0 0",
        "0 0 1 0 0 0 0 0",
        "0 0 1 0 0 y5 0 0",
        "0 0 0 0 1 0 y6 0",
        "0 0 0 0 0 1 0 y7",
        "0 0 0 0 0 0 1 0",
    ],
    (0, 1, 1): [
        "0 y1 0 0 0 0 0 0",
        "1 0 y2 0 0 0 0 0",
        "0 1 0 y3 0 0 0 0",
        "0 0 1 0 y4 0 0 0",
        "0 0 0 1 0 y5 y6 0",
        "0 0 0 0 1 0 0 0",
        "0 0 0 0 1 0 0 y7",
        "0 0 0 0 0 0 1 0",
    ],
    (2, 1, 0): [
        "0 y1 0 0 0 0 0 0",
        "1 0 y2 0 y3,1 0 y4,1 0",
        "0 1 0 y3 y4 0 y4,2 0",
        "0 0 1 0 0 0 0 0",
        "0 0 1 0 0 y5 y6 0",
        "0 0 0 0 1 0 0 0",
        "0 0 0 0 1 0 0 y7",
        "0 0 0 0 0 0 1 0",
    ],
    (0, 1, 2): [
        "0 y1 0 0 0 0 0 0",
        "1 0 y2 0 0 0 0 0",
        "0 1 0 y3 0 0 0 0",
        "0 0 1 0 y4 0 0 0",
        "0 0 0 1 0 y5 0 0",
        "0 0 0 0 1 0 y6 0",
        "0 0 0 0 0 1 0 y7",
        "0 0 0 0 0 0 1 0",
    ],
}

# redundant weights named alongside the matrices, as (numerator, denominator)
# index tuples of y's.  "5,3" is the name printed for the seed (0, 1, 0), whose
# long edge the graph labels (4, 2); both stand for y4 y6 / y5.
REDUNDANT_WEIGHTS = {
    "3,1": ((2, 4), (3,)),
    "4,2": ((4, 6), (5,)),
    "5,3": ((4, 6), (5,)),
    "4,1": ((2, 4, 6), (3, 5)),
}

def transfer_cells(M: MotzkinPath | tuple) -> list[list[str]]:
    key = tuple(M.values) if isinstance(M, MotzkinPath) else tuple(M)
    return [row.split() for row in TRANSFER_MATRICES[key]]


# pair counts on the zero-path graph (rank >= 3 and rank 2) and the Dyck graph,
# two paths, in the shifted time convention used by enumerate_families
PAIR_COUNTS = {"zero_r3": 8, "dyck": 3, "zero_r2": 6}
PAIR_COUNT_N = 3


# weights of the eight matchings of the order-3 diamond centred on row a, as
# (row offset, level, exponent) triples; rows 0 and r + 1 read as 1
DIAMOND_3_WEIGHTS = [
    [(-2, 1, 1), (0, 1, 1), (2, 1, 1), (-1, 0, -1), (1, 0, -1)],
    [(-1, 1, 2), (1, 1, 2), (0, 0, -2), (0, 1, -1)],
    [(-1, 1, 2), (2, 1, 1), (-1, 0, -1), (1, 0, -1)],
    [(-2, 1, 1), (1, 1, 2), (-1, 0, -1), (1, 0, -1)],
    [(0, 1, 3), (0, 0, -2)],
    [(-1, 1, 2), (1, 1, 2), (-1, 0, -1), (0, 0, -1), (1, 0, -1)],
    [(-1, 1, 1), (0, 1, 1), (1, 1, 1), (0, 0, -2)],
    [(-1, 1, 1), (0, 1, 1), (1, 1, 1), (0, 0, -2)],
]


# the printed sixth weight has R_{a,0} where the sum rule needs R_{a,1}
DIAMOND_3_SLIPS = {5: [(-1, 1, 2), (1, 1, 2), (-1, 0, -1), (0, 1, -1), (1, 0, -1)]}


def diamond_3_weights(alpha: int, r: int, corrected: bool = True) -> list[LaurentPoly]:
    out = []
    for i, entry in enumerate(DIAMOND_3_WEIGHTS):
        if corrected and i in DIAMOND_3_SLIPS:
            entry = DIAMOND_3_SLIPS[i]
        exps: dict = {}
        for off, lvl, k in entry:
            row = alpha + off
            if 1 <= row <= r:
                v = R(row, lvl)
                exps[v] = exps.get(v, 0) + k
        out.append(monomial_from_exponents(exps))
    return out

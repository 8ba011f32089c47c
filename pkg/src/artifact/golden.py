"""Frozen reference instances with hand-checked expected values.

Tile rows were transcribed from pipe drawings (see tests/tikz.py, which
re-derives them) and are stored as letter strings, one per row.
"""

from __future__ import annotations

from .perm import parse_permutation
from .poly import LinearForm, Polynomial, factor_product, poly_sum, product


def xy_product(pairs) -> Polynomial:
    return product(Polynomial.xy(i, j) for i, j in pairs)


def xy_sum_of_products(summands) -> Polynomial:
    return poly_sum(xy_product(s) for s in summands)


# chain generating function on S_4 with alpha = (1, 2, 3) and its reverse
DOUBLE_SYM_U = parse_permutation("[2,1,4,3]@1")
DOUBLE_SYM_W = parse_permutation("[4,3,2,1]@1")
DOUBLE_SYM_ALPHA = (1, 2, 3)
DOUBLE_SYM_N = 4
DOUBLE_SYM_FORWARD = xy_sum_of_products([[(1, 1), (2, 2)], [(1, 1), (1, 3)], [(1, 1), (3, 1)]])
DOUBLE_SYM_REVERSED = xy_sum_of_products([[(1, 1), (3, 3)], [(1, 1), (1, 2)], [(1, 1), (2, 1)]])

# a regular trapezoid instance with a = -1, n = 4 and three TBPDs
TRAP_A, TRAP_N = -1, 4
TRAP_ROWS = (
    {1: "RJV", 2: "VRXJ", 3: "VVVBV", 4: "VVVRXX"},
    {1: "RJV", 2: "VBVV", 3: "VRXJV", 4: "VVVRXX"},
    {1: "BVV", 2: "RJVV", 3: "VRXJV", 4: "VVVRXX"},
)
TRAP_WEIGHTS = ([(3, 2)], [(2, 0)], [(1, -1)])
TRAP_CHAIN_FORM = xy_sum_of_products([[(3, -1)], [(2, 2)], [(1, 0)]])
TRAP_U = parse_permutation("[-1,1,0,3,4,2]@-1")
TRAP_W = parse_permutation("[0,1,2,3,4,-1]@-1")
TRAP_ALPHA = (0, 1, 2)
TRAP_CERTIFICATE = [factor_product([LinearForm(1, 0)]), factor_product([LinearForm(3, -1)])]

# a 6x6 BPD of [2,1,6,5,3,4] and the fourth permutation of its chain
CHAIN_W = parse_permutation("[2,1,6,5,3,4]@1")
CHAIN_N = 6
CHAIN_ROWS = {1: "BBBRHH", 2: "BBRJRH", 3: "RHXHJR", 4: "VRJBRX", 5: "VVRHXX", 6: "VVVRXX"}
CHAIN_WEIGHT = [(4, 4), (2, 2), (2, 1), (1, 3), (1, 2), (1, 1)]
CHAIN_U4 = parse_permutation("[3,1,6,5,4,2]@1")

# a TBPD on A^tra_{-4,7} with twelve pipes
LABEL_A, LABEL_N = -4, 7
LABEL_ROWS = {1: "RJBVRJ", 2: "VBRXXHJ", 3: "VRJVVBRJ", 4: "VVRJVRXHX",
              5: "VVVBVVVBVV", 6: "VVVRXJVRXXX", 7: "VVVVVRXXXXXX"}
LABEL_P = {1: -2, 2: -1, 3: 0, 4: 1, 5: 3, 6: 4, 7: 6}
LABEL_ALPHA = (-2, -1, 0, 2, 3, 5)
LABEL_WEIGHT = [(5, 3), (5, -1), (3, 1), (2, -3), (1, -2)]

# a 6x6 BPD with pipes leaving west, under two labelings of the same pipes;
# the column-6 pipe carries 2 in the first labeling (any label above 1 is valid)
BC_ROWS = {1: "HXHXHJ", 2: "BVRJBR", 3: "RJVBRX", 4: "XHJRXX", 5: "XHHJVV", 6: "VBBRXX"}
BC_GAMMA = {"north": {2: -3, 4: 1, 6: 2}, "east": {2: -2, 3: 4, 4: 7, 6: 5},
            "south": {1: -3, 4: 5, 5: 4, 6: -2}, "west": {5: 7, 4: 1, 1: 2}}
BC_DELTA = {"north": {2: 1, 4: 2, 6: 3}, "east": {2: 4, 3: 5, 4: 6, 6: 7},
            "south": {1: 1, 4: 7, 5: 5, 6: 4}, "west": {5: 6, 4: 2, 1: 3}}
BC_COUNT = 16
BC_PHI3 = {2: -3, 3: 1, 6: -2}

# a back-stable BPD on [-4, 7]^2 whose lower trapezoid piece is the twelve-pipe TBPD
CUTS_LO, CUTS_HI = -4, 7
CUTS_WINV = parse_permutation("[-2,1,-4,3,-3,7,0,6,-1,2,5,4]@-4")
CUTS_ROWS = {-4: "BBBBRHHHHHHH", -3: "BBBRJBRHHHHH", -2: "BBBVRHXHHHHH", -1: "BRHXJBVBRHHH",
             0: "BVBVBRJRXHHH", 1: "RJBVRJRXXHHH", 2: "VBRXXHJVVRHH", 3: "VRJVVBRJVVRH",
             4: "VVRJVRXHXXJR", 5: "VVVBVVVBVVRX", 6: "VVVRXJVRXXXX", 7: "VVVVVRXXXXXX"}

"""The frozen tile rows agree with the original pipe drawings."""

from artifact import golden
from artifact.bpd import BoundaryCondition, label, rothe, satisfies, tile_letters, validate
from artifact.perm import parse_permutation
from artifact.slice import tra_cells

from tikz import tiles_from_paths

SHARED = [[(2.5, 0), (2.5, 4)], [(3.5, 0), (3.5, .5), (6, .5)],
          [(4.5, 0), (4.5, 2)], [(5.5, 0), (5.5, 1)]]
TRAP_PATHS = [
    [[(.5, 0), (.5, 3.5), (1.5, 3.5), (1.5, 4)], [(1.5, 0), (1.5, 2.5), (3.5, 2.5), (3.5, 3)]],
    [[(.5, 0), (.5, 3.5), (1.5, 3.5), (1.5, 4)], [(1.5, 0), (1.5, 1.5), (3.5, 1.5), (3.5, 3)]],
    [[(.5, 0), (.5, 2.5), (1.5, 2.5), (1.5, 4)], [(1.5, 0), (1.5, 1.5), (3.5, 1.5), (3.5, 3)]],
]

CHAIN_PATHS = [
    [(0.5, 0), (0.5, 3.5), (4.5, 3.5), (4.5, 4.5), (6, 4.5)],
    [(1.5, 0), (1.5, 2.5), (2.5, 2.5), (2.5, 4.5), (3.5, 4.5), (3.5, 5.5), (6, 5.5)],
    [(2.5, 0), (2.5, 1.5), (6, 1.5)],
    [(3.5, 0), (3.5, 0.5), (6, 0.5)],
    [(4.5, 0), (4.5, 2.5), (6, 2.5)],
    [(5.5, 0), (5.5, 3.5), (6, 3.5)],
]

LABEL_PATHS = [
    [(0.5, 0), (0.5, 6.5), (1.5, 6.5), (1.5, 7)],
    [(1.5, 0), (1.5, 4.5), (2.5, 4.5), (2.5, 5.5), (6.5, 5.5), (6.5, 6)],
    [(2.5, 0), (2.5, 3.5), (3.5, 3.5), (3.5, 7)],
    [(3.5, 0), (3.5, 1.5), (5.5, 1.5), (5.5, 3.5), (9, 3.5)],
    [(4.5, 0), (4.5, 6.5), (5.5, 6.5), (5.5, 7)],
    [(5.5, 0), (5.5, 0.5), (12, 0.5)],
    [(6.5, 0), (6.5, 4.5), (7.5, 4.5), (7.5, 5)],
    [(7.5, 0), (7.5, 1.5), (11, 1.5)],
    [(8.5, 0), (8.5, 4)],
    [(9.5, 0), (9.5, 3)],
    [(10.5, 0), (10.5, 2)],
    [(11.5, 0), (11.5, 1)],
]


def test_trapezoid_drawings():
    cells = tra_cells(golden.TRAP_A, golden.TRAP_N)
    for extra, rows in zip(TRAP_PATHS, golden.TRAP_ROWS):
        D = tiles_from_paths(SHARED + extra, cells, golden.TRAP_A, golden.TRAP_N)
        assert validate(D)
        assert tile_letters(D) == rows


def test_square_drawing():
    cells = [(r, c) for r in range(1, 7) for c in range(1, 7)]
    D = tiles_from_paths(CHAIN_PATHS, cells, 1, 6)
    assert validate(D)
    assert tile_letters(D) == golden.CHAIN_ROWS


def test_twelve_pipe_drawing():
    cells = tra_cells(golden.LABEL_A, golden.LABEL_N)
    D = tiles_from_paths(LABEL_PATHS, cells, golden.LABEL_A, golden.LABEL_N)
    assert validate(D)
    assert tile_letters(D) == golden.LABEL_ROWS


BC_PATHS = [
    [(0, 5.5), (5.5, 5.5), (5.5, 6)],
    [(0.5, 0), (0.5, 3.5), (1.5, 3.5), (1.5, 6)],
    [(0, 2.5), (2.5, 2.5), (2.5, 4.5), (3.5, 4.5), (3.5, 6)],
    [(0, 1.5), (3.5, 1.5), (3.5, 2.5), (6, 2.5)],
    [(3.5, 0), (3.5, 0.5), (6, 0.5)],
    [(4.5, 0), (4.5, 3.5), (6, 3.5)],
    [(5.5, 0), (5.5, 4.5), (6, 4.5)],
]


def test_west_exit_drawing():
    cells = [(r, c) for r in range(1, 7) for c in range(1, 7)]
    D = tiles_from_paths(BC_PATHS, cells, 1, 6)
    assert tile_letters(D) == golden.BC_ROWS


def gamma_window(w, lo, hi):
    winv = w.inverse()
    return BoundaryCondition.make(east={i: i for i in range(lo, hi + 1)},
                                  south={c: winv(c) for c in range(lo, hi + 1)})


ROTHE_PATHS = [
    [(0.5, 0), (0.5, 3.5), (6, 3.5)],
    [(1.5, 0), (1.5, 5.5), (6, 5.5)],
    [(2.5, 0), (2.5, 1.5), (6, 1.5)],
    [(3.5, 0), (3.5, 0.5), (6, 0.5)],
    [(4.5, 0), (4.5, 4.5), (6, 4.5)],
    [(5.5, 0), (5.5, 2.5), (6, 2.5)],
]


def test_rothe_drawing_is_of_the_inverse():
    # the caption's one-line [-1,-3,1,2,-2,0] is what the bottom edge reads,
    # i.e. w^{-1} under gamma^w; the picture is the Rothe diagram of its inverse
    printed = parse_permutation("[-1,-3,1,2,-2,0]@-3")
    cells = [(r, c) for r in range(-3, 3) for c in range(-3, 3)]
    D = tiles_from_paths(ROTHE_PATHS, cells, -3, 2)
    assert D == rothe(printed.inverse(), (-3, 2))
    assert D != rothe(printed, (-3, 2))
    assert satisfies(D, gamma_window(printed.inverse(), -3, 2))
    south = label(D, gamma_window(printed.inverse(), -3, 2)).boundary().S
    assert [south[c] for c in range(-3, 3)] == printed.one_line(-3, 2)


TWIST_LEFT = [
    [(.5, 0), (.5, 3.5), (1.5, 3.5), (1.5, 4)],
    [(1.5, 0), (1.5, 2.5), (4, 2.5)],
    [(2.5, 0), (2.5, 4)],
    [(3.5, 0), (3.5, .5), (6, .5)],
    [(4.5, 0), (4.5, 2)],
    [(5.5, 0), (5.5, 1)],
]


def test_twist_drawing():
    D = tiles_from_paths(TWIST_LEFT, tra_cells(-1, 4), -1, 4)
    assert tile_letters(D) == {1: "RJV", 2: "VRXH", 3: "VVVBV", 4: "VVVRXX"}


CUTS_PATHS = [
    [(0.5, 0), (0.5, 6.5), (1.5, 6.5), (1.5, 8.5), (4.5, 8.5), (4.5, 9.5), (12, 9.5)],
    [(1.5, 0), (1.5, 4.5), (2.5, 4.5), (2.5, 5.5), (6.5, 5.5), (6.5, 6.5), (12, 6.5)],
    [(2.5, 0), (2.5, 3.5), (3.5, 3.5), (3.5, 10.5), (4.5, 10.5), (4.5, 11.5), (12, 11.5)],
    [(3.5, 0), (3.5, 1.5), (5.5, 1.5), (5.5, 3.5), (10.5, 3.5), (10.5, 4.5), (12, 4.5)],
    [(4.5, 0), (4.5, 6.5), (5.5, 6.5), (5.5, 7.5), (6.5, 7.5), (6.5, 10.5), (12, 10.5)],
    [(5.5, 0), (5.5, 0.5), (12, 0.5)],
    [(6.5, 0), (6.5, 4.5), (7.5, 4.5), (7.5, 7.5), (12, 7.5)],
    [(7.5, 0), (7.5, 1.5), (12, 1.5)],
    [(8.5, 0), (8.5, 8.5), (12, 8.5)],
    [(9.5, 0), (9.5, 5.5), (12, 5.5)],
    [(10.5, 0), (10.5, 2.5), (12, 2.5)],
    [(11.5, 0), (11.5, 3.5), (12, 3.5)],
]


def test_sliced_square_drawing():
    lo, hi = golden.CUTS_LO, golden.CUTS_HI
    cells = [(r, c) for r in range(lo, hi + 1) for c in range(lo, hi + 1)]
    D = tiles_from_paths(CUTS_PATHS, cells, lo, hi)
    assert validate(D)
    assert tile_letters(D) == golden.CUTS_ROWS
    assert satisfies(D, gamma_window(golden.CUTS_WINV.inverse(), lo, hi))

import itertools

import pytest

from artifact import golden
from artifact.bpd import (BPD, BoundaryCondition, DoesNotSatisfy, Region, Tile, bpds_of,
                          enumerate_bpds, from_rows, gamma_w, glue, label, render, rothe,
                          satisfies, schubert_via_bpd, tile_letters, validate, weight)
from artifact.oracle import schubert_dd
from artifact.perm import Permutation, parse_permutation
from artifact.perm import parse_permutation as P
from artifact.poly import Polynomial

xy = Polynomial.xy


def test_bpd3_of_132():
    found = bpds_of(parse_permutation("[1,3,2]"), 3)
    assert len(found) == 2
    assert {weight(D) for D in found} == {xy(1, 1), xy(2, 2)}
    assert schubert_via_bpd(parse_permutation("[1,3,2]"), 3) == xy(1, 1) + xy(2, 2)


def test_rothe_is_a_bpd_of_w():
    for p in itertools.permutations(range(1, 5)):
        w = Permutation(p, 1)
        D = rothe(w, (1, 4))
        assert validate(D)
        assert D in bpds_of(w, 4)
        assert len(D.blanks()) == w.length()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sum_matches_divided_differences(n):
    for p in itertools.permutations(range(1, n + 1)):
        w = Permutation(p, 1)
        assert schubert_via_bpd(w, n) == schubert_dd(w, n)


def test_bpd_count_for_longest_element():
    assert len(bpds_of(Permutation.longest(1, 4), 4)) == 1
    # the identity in S_3 has BPDs counted by the number of (unreduced) fillings: just one
    assert len(bpds_of(Permutation(), 3)) == 1


def test_validate_catches_inconsistent_tiles():
    D = from_rows({1: "RH", 2: "VV"}, 1)
    rep = validate(D)
    assert not rep and rep.kind == "consistency"


def test_validate_catches_double_crossing():
    # the pipe entering east of row 1 meets the pipe from the top of column 2 twice
    D = from_rows({1: "RX", 2: "XJ"}, 1)
    rep = validate(D)
    assert not rep and rep.kind == "reduced"


def test_label_rejects_wrong_boundary():
    w = parse_permutation("[2,1]")
    D = rothe(w, (1, 2))
    assert satisfies(D, gamma_w(w, 2))
    with pytest.raises(DoesNotSatisfy):
        label(D, gamma_w(Permutation(), 2))


def test_boundary_rejects_repeated_labels():
    with pytest.raises(ValueError):
        BoundaryCondition.make(south={1: 1, 2: 1})


def test_region_rows_must_be_intervals():
    with pytest.raises(ValueError):
        Region([(1, 1), (1, 3)])


def test_json_and_rows_round_trip():
    D = from_rows(golden.CHAIN_ROWS, 1)
    assert BPD.from_json(D.to_json()) == D
    assert tile_letters(D) == golden.CHAIN_ROWS


def test_glue_refuses_overlap():
    D = from_rows({1: "V"}, 1)
    with pytest.raises(ValueError):
        glue(D, D)


def test_render_uses_glyphs():
    text = render(rothe(parse_permutation("[2,1]"), (1, 2)))
    assert text == "  1 2\n1 · ╭\n2 ╭ ┼\n"
    assert {t.glyph for t in Tile} == set("·─│╭╯┼")


def test_enumeration_rejects_off_region_boundary():
    with pytest.raises(ValueError):
        enumerate_bpds(Region.square(2), BoundaryCondition.make(south={5: 1}))


def test_free_north_enumeration_on_a_strip():
    region = Region.rectangle((1, 1), (1, 2))
    bc = BoundaryCondition.make(east={1: 1}, south={1: 2, 2: 1})
    found = enumerate_bpds(region, bc, free_north=True)
    assert [tile_letters(D) for D in found] == [{1: "VR"}]
    assert label(found[0], bc, free_north=True).boundary().N == {1: 2}
    # pipe 1 would have to cross pipe 2 from the wrong side
    bad = BoundaryCondition.make(east={1: 1}, south={1: 1, 2: 2})
    assert enumerate_bpds(region, bad, free_north=True) == []


# ------------------------------------------------------------ properties

def _bc(data):
    return BoundaryCondition.make(**data)


def test_one_bpd_two_labelings():
    D = from_rows(golden.BC_ROWS, 1)
    gamma, delta = _bc(golden.BC_GAMMA), _bc(golden.BC_DELTA)
    assert satisfies(D, gamma) and satisfies(D, delta)
    both = enumerate_bpds(Region.square(6), gamma)
    assert len(both) == golden.BC_COUNT and D in both
    assert both == enumerate_bpds(Region.square(6), delta)
    # cross section above row 3
    assert label(D, gamma).cross_section(2) == golden.BC_PHI3


def test_printed_labels_clash_at_one_crossing():
    # with label 0 on the column-6 pipe, the crossing at (1, 4) has 1 over 0
    data = dict(golden.BC_GAMMA, north={2: -3, 4: 1, 6: 0}, west={5: 7, 4: 1, 1: 0})
    with pytest.raises(DoesNotSatisfy, match=r"\(1, 4\)"):
        label(from_rows(golden.BC_ROWS, 1), _bc(data))


@pytest.mark.parametrize("n", [3, 4])
def test_rectangular_crossing_law(n):
    # pipes r < r' entering on the right cross exactly when their columns are inverted
    for p in itertools.permutations(range(1, n + 1)):
        w = Permutation(p, 1)
        inversions = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if w(i) > w(j)}
        for D in bpds_of(w, n):
            L = label(D, gamma_w(w, n))
            crossed = {tuple(sorted((L.labels[v], L.labels[h])))
                       for v, h in L.trace.crossings.values()}
            assert crossed == inversions


def test_every_enumerated_bpd_is_valid():
    for p in itertools.permutations(range(1, 5)):
        w = Permutation(p, 1)
        for D in bpds_of(w, 4):
            assert validate(D) and satisfies(D, gamma_w(w, 4))


def test_rows_below_last_descent_are_rigid():
    for p in itertools.permutations(range(1, 5)):
        w = Permutation(p, 1)
        m = max(w.descents(), default=0)
        found = bpds_of(w, 4)
        below = {tuple((cell, t) for cell, t in D.tiles if cell[0] > m) for D in found}
        assert len(below) == 1
        assert all(t is not Tile.BLANK for cell, t in next(iter(below)))


def test_schubert_examples():
    assert schubert_via_bpd(P("[1,3,2]"), 3) == xy(1, 1) + xy(2, 2)
    assert schubert_via_bpd(P("[2,1,3]"), 3) == xy(1, 1)
    assert schubert_via_bpd(Permutation(), 3) == Polynomial.const(1)


def test_render_small_cases():
    elbow = from_rows({1: "R"}, 1)
    assert render(elbow) == "  1\n1 ╭\n"
    text = render(rothe(Permutation.s(0), (0, 1)))
    assert text == "  0 1\n0 · ╭\n1 ╭ ┼\n"

import itertools

import pytest

from artifact import golden
from artifact.bpd import bpds_of, from_rows, tile_letters, weight
from artifact.chains import (AlphaChain, NoRowBPD, bpd_of_chain, bpd_weight_from_chain,
                             chain_fixes, chain_of_bpd, chain_weight, covers_up,
                             enumerate_alpha_chains, exists_increasing, fC, fix_set, one_row_bpd,
                             reversed_variables, row_boundary_of_step, symmetry_check)
from artifact.perm import Permutation, parse_permutation as P
from artifact.poly import Polynomial

xy = Polynomial.xy


def test_fix_sets_and_chain_weight():
    u1 = P("[-1,0,4,1,5,3,2]@-1")
    u2 = P("[3,-1,4,0,5,1,2]@-1")
    u3 = P("[3,0,5,-1,4,1,2]@-1")
    ch = AlphaChain((u1, u2, u3), (-1, 1), 5)
    assert chain_fixes(ch) == [frozenset({2, 4, 5}), frozenset({1, 2})]
    assert chain_weight(ch) == xy(1, 5) * xy(1, 4) * xy(1, 2) * xy(2, 1) * xy(2, 2)


def test_chains_of_2143_in_4321():
    u, w = golden.DOUBLE_SYM_U, golden.DOUBLE_SYM_W
    fwd = enumerate_alpha_chains(u, w, (1, 2, 3), 4)
    rev = enumerate_alpha_chains(u, w, (3, 2, 1), 4)
    assert len(fwd) == len(rev) == 3
    assert [p.text() for p in rev[2].perms] == ["[2,1,4,3]@1", "[3,1,4,2]@1",
                                                 "[3,4,2,1]@1", "[4,3,2,1]@1"]
    assert fC(u, w, (1, 2, 3), 4) == golden.DOUBLE_SYM_FORWARD
    assert reversed_variables(fC(u, w, (3, 2, 1), 4), 3) == golden.DOUBLE_SYM_REVERSED


def test_chains_need_bruhat_comparability():
    assert enumerate_alpha_chains(P("[3,1,2]"), P("[2,3,1]"), (1,), 3) == []


def test_covers_up_straddle_k():
    u = P("[1,2,3]")
    # swapping positions 1 and 3 jumps over the value 2, so it is not a cover
    assert [ab for _, ab in covers_up(u, 1, (1, 3))] == [(1, 2)]
    assert [ab for _, ab in covers_up(u, 2, (1, 3))] == [(2, 3)]


@pytest.mark.parametrize("sigma", [(2, 1, 3), (1, 3, 2), (3, 1, 2), (3, 2, 1)])
def test_double_symmetry_small(sigma):
    assert symmetry_check(golden.DOUBLE_SYM_U, golden.DOUBLE_SYM_W, (1, 2, 3), 4, sigma)


def test_one_row_with_right_entry():
    u = P("[1,5,0,-1,4,6,3,2]@-1")
    w = P("[1,5,0,2,6,4,3,-1]@-1")
    assert fix_set(u, w, 3, 6) == {3}
    north, east, south = row_boundary_of_step(u, w, 3, (-1, 6), True)
    D = one_row_bpd(1, (-1, 6), north, east, south)
    assert D.blanks() == [(1, 3)]


def test_one_row_without_right_entry():
    u = P("[1,4,0,-1,6,5,3,2]@-1")
    w = P("[1,5,0,2,6,4,3,-1]@-1")
    assert fix_set(u, w, 2, 6) == {3, 6}
    north, east, south = row_boundary_of_step(u, w, 2, (-1, 6), False)
    D = one_row_bpd(1, (-1, 6), north, east, south)
    assert D.blanks() == [(1, 3), (1, 6)]


def test_one_row_refuses_impossible_step():
    with pytest.raises(NoRowBPD):
        one_row_bpd(1, (1, 2), {1: 1}, None, {2: 1, 1: 2})


def test_bpd_to_chain_example():
    D = from_rows(golden.CHAIN_ROWS, 1)
    ch = chain_of_bpd(D, golden.CHAIN_W, golden.CHAIN_N)
    assert ch.alpha == (5, 4, 3, 2, 1)
    assert ch.perms[2] == golden.CHAIN_U4
    assert ch.perms[0] == golden.CHAIN_W
    assert ch.perms[-1] == Permutation.longest(1, 6)
    assert bpd_of_chain(ch) == D
    assert bpd_weight_from_chain(ch) == weight(D)


@pytest.mark.parametrize("n", [3, 4])
def test_chain_map_is_a_bijection(n):
    for p in itertools.permutations(range(1, n + 1)):
        w = Permutation(p, 1)
        found = bpds_of(w, n)
        chains = [chain_of_bpd(D, w, n) for D in found]
        assert len(set(chains)) == len(found)
        every = enumerate_alpha_chains(w, Permutation.longest(1, n), tuple(range(n - 1, 0, -1)), n)
        assert set(chains) == set(every)
        for D, ch in zip(found, chains):
            assert bpd_of_chain(ch) == D
            assert AlphaChain.from_json(ch.to_json()) == ch


def test_increasing_steps():
    ok, trans = exists_increasing(P("[2,1,4,3]"), P("[4,1,3,2]"), 1)
    assert ok and len(trans) == 2
    u = P("[1,5,0,-1,4,6,3,2]@-1")
    w = P("[1,5,0,2,6,4,3,-1]@-1")
    ok, trans = exists_increasing(u, w, 3)
    assert ok
    middle = u.swap_positions(*trans[0])
    assert middle == P("[1,5,0,2,4,6,3,-1]@-1")
    assert not exists_increasing(w, u, 3)[0]

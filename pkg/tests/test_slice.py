import pytest

from artifact import golden
from artifact.bpd import from_rows, satisfies, validate, weight
from artifact.perm import Permutation, grassmannian_of_partition, parse_partition
from artifact.perm import parse_permutation as P
from artifact.poly import Polynomial
from artifact.slice import (LowerWindow, diag_cut, enumerate_lower, gamma_decompose, lfs,
                            lower_window, section_to_sigma, sigma_to_section, top_section)
from artifact.trapezoid import prepare

W2143 = P("[2,1,4,3]")


def test_window_covers_the_support():
    win = lower_window(W2143)
    assert (win.n0, win.a, win.b) == (3, -2, 5)
    assert lower_window(W2143, widen=1) == win.widen(1)


def test_sections_round_trip():
    for sigma in (Permutation(), P("[1,0]@0"), P("[0,2,-1,1]@-1")):
        phi = sigma_to_section(sigma, -3, 4)
        assert section_to_sigma(phi, -3, 4) == sigma


def test_lower_slices_of_2143():
    found = enumerate_lower(W2143)
    assert sorted(s.text() for s in found) == ["[0,1,-1]@-1", "[1,0]@0", "[2,0,1]@0", "[]@0"]
    assert all(validate(D) for ds in found.values() for D in ds)
    for lam in ("1,1", "2"):
        assert lfs(grassmannian_of_partition(parse_partition(lam)), W2143) == Polynomial.const(1)


def test_top_slice_is_the_rothe_count():
    # sigma = w leaves nothing to choose below
    w = P("[1,0]@0")
    assert lfs(w, w) == Polynomial.const(1)


@pytest.mark.parametrize("text", ["[2,1,4,3]", "[1,0]@0", "[3,1,2]", "[0,2,-1,1]@-1"])
def test_diagonal_cut_factors_every_slice(text):
    w = P(text)
    for sigma in enumerate_lower(w):
        dec = gamma_decompose(sigma, w, verify=True)
        assert dec.polynomial() == lfs(sigma, w)


def test_slices_do_not_depend_on_window_width():
    for sigma in enumerate_lower(W2143):
        assert lfs(sigma, W2143, widen=1) == lfs(sigma, W2143)


def test_sliced_square_pieces():
    D = from_rows(golden.CUTS_ROWS, golden.CUTS_LO)
    w = golden.CUTS_WINV.inverse()
    win = LowerWindow(7, -4, 7)
    upper = D.restrict([(r, c) for r in range(-4, 1) for c in range(-4, 8)])
    lower = D.restrict([(r, c) for r in range(1, 8) for c in range(-4, 8)])
    assert weight(D) == weight(upper) * weight(lower)
    sigma = section_to_sigma(top_section(lower, w, win), -4, 7)
    piece = diag_cut(lower, sigma, w, win)
    assert piece.tra == from_rows(golden.LABEL_ROWS, golden.LABEL_A)
    assert piece.tri.blanks() == []
    assert satisfies(piece.tra, piece.gamma) and satisfies(piece.tri, piece.theta)
    _, data = prepare(piece.gamma, -4, 7)
    assert data.p == golden.LABEL_P and data.alpha == golden.LABEL_ALPHA

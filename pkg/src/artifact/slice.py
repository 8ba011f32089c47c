"""Horizon cut and diagonal cut on finite windows.

The lower half-plane is represented by a window of rows [1, n0] and columns
[a, b]. Everything outside the window is copied from the Rothe diagram of w,
which is forced once we are below the last descent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .bpd import (BPD, BoundaryCondition, Region, enumerate_bpds, glue, label, rothe_tile,
                  trace, weight)
from .perm import Permutation
from .poly import Certificate, LinearForm, Polynomial, factor_product, poly_sum


class DecompositionMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class LowerWindow:
    n0: int
    a: int
    b: int

    @property
    def rows(self) -> tuple[int, int]:
        return (1, self.n0)

    @property
    def cols(self) -> tuple[int, int]:
        return (self.a, self.b)

    def widen(self, k: int) -> "LowerWindow":
        return LowerWindow(self.n0 + k, self.a - k, self.b + k)


def lower_window(w: Permutation, widen: int = 0) -> LowerWindow:
    """Rows [1, n0] and columns [a, b] holding everything that can vary.

    Any sigma with a lower BPD has length(sigma) <= length(w), which keeps its
    nonfixed points inside [1 - length(w), length(w)].
    """
    pos_des = [d for d in w.descents() if d > 0]
    n0 = max([1] + pos_des)
    supp = w.support()
    lo, hi = supp if supp is not None else (1, 0)
    ell = w.length()
    a = min(0, lo, 1 - ell) - 1
    b = max(n0, hi, ell) + 1
    return LowerWindow(n0, a, b).widen(widen)


# ------------------------------------------------------------ horizon cut

def section_to_sigma(phi: dict[int, int], lo: int, hi: int) -> Permutation:
    """sigma agrees with phi^{-1} on labels <= 0 and increases on positives.

    ``phi`` is given on columns [lo, hi]; phi(c) = c below lo, nothing above hi.
    """
    inv = {lab: c for c, lab in phi.items()}
    mapping = {i: inv[i] for i in range(lo, 1)}
    rest = sorted(set(range(lo, hi + 1)) - set(mapping.values()))
    mapping.update(zip(range(1, len(rest) + 1), rest))
    return Permutation.from_map(mapping)


def sigma_to_section(sigma: Permutation, lo: int, hi: int) -> dict[int, int]:
    """phi_sigma restricted to columns [lo, hi]."""
    return {sigma(i): i for i in range(lo, 1) if lo <= sigma(i) <= hi}


def window_south(w: Permutation, win: LowerWindow) -> dict[int, int]:
    winv = w.inverse()
    return {c: winv(c) for c in range(win.a, win.b + 1) if winv(c) <= win.n0}


def window_boundary(w: Permutation, win: LowerWindow) -> BoundaryCondition:
    return BoundaryCondition.make(east={r: r for r in range(1, win.n0 + 1)},
                                  south=window_south(w, win))


def window_region(win: LowerWindow) -> Region:
    return Region.rectangle(win.rows, win.cols)


def top_section(D: BPD, w: Permutation, win: LowerWindow) -> dict[int, int]:
    L = label(D, window_boundary(w, win), free_north=True)
    return L.boundary().N


@lru_cache(maxsize=None)
def _enumerate_lower(w: Permutation, widen: int) -> tuple[tuple[Permutation, tuple[BPD, ...]], ...]:
    win = lower_window(w, widen)
    groups: dict[Permutation, list[BPD]] = {}
    # a lower BPD for sigma has length(w) - length(sigma) blanks
    for D in enumerate_bpds(window_region(win), window_boundary(w, win), free_north=True,
                            max_blanks=w.length()):
        sigma = section_to_sigma(top_section(D, w, win), win.a, win.b)
        groups.setdefault(sigma, []).append(D)
    return tuple((s, tuple(groups[s])) for s in sorted(groups))


def enumerate_lower(w: Permutation, widen: int = 0) -> dict[Permutation, list[BPD]]:
    return {s: list(ds) for s, ds in _enumerate_lower(w, widen)}


def lfs(sigma: Permutation, w: Permutation, widen: int = 0) -> Polynomial:
    return poly_sum(weight(D) for D in enumerate_lower(w, widen).get(sigma, []))


# ------------------------------------------------------------ diagonal cut

def tra_cells(a: int, N: int) -> list[tuple[int, int]]:
    return [(r, c) for r in range(1, N + 1) for c in range(a, r + 1)]


def tri_cells(N: int) -> list[tuple[int, int]]:
    return [(r, c) for r in range(1, N + 1) for c in range(r + 1, N + 1)]


def full_box(D: BPD, w: Permutation, win: LowerWindow) -> BPD:
    """The window BPD completed by Rothe_w to rows [1, b], columns [a, b]."""
    N = win.b
    if N <= win.n0:
        return D
    winv = w.inverse()
    tiles = {(r, c): rothe_tile(w, winv, r, c)
             for r in range(win.n0 + 1, N + 1) for c in range(win.a, N + 1)}
    return glue(D, BPD.make(Region(tiles), tiles))


@dataclass(frozen=True)
class CutPiece:
    gamma: BoundaryCondition
    theta: BoundaryCondition
    tra: BPD
    tri: BPD


def diag_cut(D: BPD, sigma: Permutation, w: Permutation, win: LowerWindow) -> CutPiece:
    a, N = win.a, win.b
    box = full_box(D, w, win)
    phi = sigma_to_section(sigma, a, N)
    tri = box.restrict(tri_cells(N))
    theta = BoundaryCondition.make(north={c: phi[c] for c in range(2, N + 1) if c in phi},
                                   east={r: r for r in range(1, N)})
    exits: dict[tuple[str, int], int] = {}
    tN, tE = theta.N, theta.E
    for p in trace(tri).pipes:
        side, k = p.entry
        exits[p.exit] = tN[k] if side == "N" else tE[k]
    north = {c: phi[c] for c in range(a, 2) if c in phi}
    north.update({c: exits[("S", c)] for c in range(2, N + 1) if ("S", c) in exits})
    east = {r: exits[("W", r)] for r in range(1, N) if ("W", r) in exits}
    east[N] = N
    winv = w.inverse()
    gamma = BoundaryCondition.make(north=north, east=east,
                                   south={c: winv(c) for c in range(a, N + 1)})
    theta = theta.replace(south={c: north[c] for c in range(2, N + 1) if c in north},
                          west={r: east[r] for r in range(1, N) if r in east})
    tra = box.restrict(tra_cells(a, N))
    return CutPiece(gamma, theta, tra, tri)


def tra_region_of(win: LowerWindow) -> Region:
    return Region(tra_cells(win.a, win.b))


def tri_region_of(win: LowerWindow) -> Region:
    # b >= n0 + 1 >= 2, so the triangle is never empty
    return Region(tri_cells(win.b))


@dataclass
class GammaBlock:
    gamma: BoundaryCondition
    theta: BoundaryCondition
    tra_bpds: list[BPD] = field(default_factory=list)
    tri_bpds: list[BPD] = field(default_factory=list)


@dataclass
class LowerDecomposition:
    sigma: Permutation
    w: Permutation
    window: LowerWindow
    gammas: list[GammaBlock]

    def polynomial(self) -> Polynomial:
        out = Polynomial()
        for g in self.gammas:
            out = out + poly_sum(map(weight, g.tra_bpds)) * poly_sum(map(weight, g.tri_bpds))
        return out


def _gamma_key(g: BoundaryCondition) -> tuple:
    return (g.north, g.east, g.south, g.west)


def gamma_decompose(sigma: Permutation, w: Permutation, widen: int = 0,
                    verify: bool = True) -> LowerDecomposition:
    win = lower_window(w, widen)
    direct = enumerate_lower(w, widen).get(sigma, [])
    grouped: dict[tuple, list[CutPiece]] = {}
    for D in direct:
        piece = diag_cut(D, sigma, w, win)
        grouped.setdefault(_gamma_key(piece.gamma), []).append(piece)
    blocks = []
    tra_region = tra_region_of(win)
    tri_region = tri_region_of(win)
    for key in sorted(grouped):
        pieces = grouped[key]
        g, th = pieces[0].gamma, pieces[0].theta
        tra = enumerate_bpds(tra_region, g)
        tri = enumerate_bpds(tri_region, th)
        if verify:
            seen = {(p.tra, p.tri) for p in pieces}
            product_set = {(x, y) for x in tra for y in tri}
            if seen != product_set:
                raise DecompositionMismatch(
                    f"sigma={sigma} w={w}: {len(seen)} cut pairs vs {len(product_set)} products")
        blocks.append(GammaBlock(g, th, tra, tri))
    return LowerDecomposition(sigma, w, win, blocks)


def tri_certificate(tri_bpds: list[BPD]) -> Certificate:
    return [factor_product(LinearForm(r, c) for r, c in D.blanks()) for D in tri_bpds]

"""Trapezoid windows A^tra_{a,n}: regular boundaries, canonical labels, the chain
bijection, and the type 3 certificate."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .bpd import (BPD, BoundaryCondition, Region, Tile, enumerate_bpds, glue, label, trace,
                  weight)
from .chains import (AlphaChain, NoRowBPD, chain_fixes, enumerate_alpha_chains, fC,
                     one_row_bpd)
from .perm import Permutation
from .poly import (Certificate, FormType, LinearForm, Polynomial, classify, exact_divide,
                   factor_product, poly_sum, product)


class InternalMismatch(AssertionError):
    pass


class TypeViolation(AssertionError):
    pass


def tra_region(a: int, n: int) -> Region:
    return Region((r, c) for r in range(1, n + 1) for c in range(a, r + 1))


def finite_bounds(gamma: BoundaryCondition, lo: int, hi: int) -> tuple[int, int]:
    """Smallest trapezoid [a, n] outside of which gamma is trivial.

    ``gamma`` lives on A^tra_{lo,hi}; beyond that window it is assumed trivial.
    """
    N, E, S = gamma.N, gamma.E, gamma.S
    n = hi
    while n > 1 and E.get(n) == n and S.get(n) == n:
        n -= 1
    a = lo
    while a < 0 and N.get(a) == a and S.get(a) == a:
        a += 1
    return a, n


@dataclass(frozen=True)
class RegularBoundary:
    delta: BoundaryCondition
    a: int
    n: int
    vanished: bool = False
    twisted: tuple[int, ...] = ()


def restrict(gamma: BoundaryCondition, a: int, n: int) -> BoundaryCondition:
    N, E, S, W = gamma.N, gamma.E, gamma.S, gamma.W
    return BoundaryCondition.make(
        north={c: N[c] for c in range(a, n + 1) if c in N},
        east={r: E[r] for r in range(1, n + 1) if r in E},
        south={c: S[c] for c in range(a, n + 1) if c in S},
        west={r: W[r] for r in range(1, n + 1) if r in W})


def regularize(delta: BoundaryCondition, a: int, n: int) -> RegularBoundary:
    """Move each lone east entry on the diagonal to the north side of (r, r)."""
    N, E = delta.N, delta.E
    twisted = []
    for r in range(1, n + 1):
        if r not in N:
            if r not in E:
                return RegularBoundary(delta, a, n, vanished=True)
            N[r] = E.pop(r)
            twisted.append(r)
    return RegularBoundary(delta.replace(north=N, east=E), a, n, False, tuple(twisted))


def restrict_and_regularize(gamma: BoundaryCondition, lo: int, hi: int) -> RegularBoundary:
    a, n = finite_bounds(gamma, lo, hi)
    return regularize(restrict(gamma, a, n), a, n)


_TWIST = {Tile.R: Tile.V, Tile.H: Tile.J}
_UNTWIST = {Tile.V: Tile.R, Tile.J: Tile.H}


def twist_bpd(D: BPD, rows, inverse: bool = False) -> BPD:
    table = _UNTWIST if inverse else _TWIST
    tm = D.tile_map
    for r in rows:
        t = tm[(r, r)]
        if t not in table:
            raise ValueError(f"tile {t} at {(r, r)} cannot be twisted")
        tm[(r, r)] = table[t]
    return BPD.make(D.region, tm)


# ------------------------------------------------------- canonical labels

def lift(line: list[int], r: int, p: dict[int, int], a: int, n: int) -> Permutation:
    """Inverse of iota_r: insert value j at position p_j for j = r+1..n."""
    out = list(line)
    for j in range(r + 1, n + 1):
        out.insert(p[j] - a, j)
    return Permutation(out, a)


def iota(u: Permutation, r: int, a: int, n: int) -> list[int]:
    return [v for v in u.one_line(a, n) if v <= r]


def _iota_from_section(phi_inv: dict[int, int], pr: int, r: int, a: int) -> list[int]:
    """Agrees with phi_inv on [a, p_r] and decreases on (p_r, r]."""
    mapping = {L: phi_inv[L] for L in range(a, pr + 1)}
    rest = sorted(set(range(a, r + 1)) - set(mapping.values()), reverse=True)
    for pos, v in zip(range(pr + 1, r + 1), rest):
        mapping[pos] = v
    return [mapping[pos] for pos in range(a, r + 1)]


@dataclass(frozen=True)
class TrapezoidData:
    delta: BoundaryCondition
    a: int
    n: int
    p: dict = field(hash=False)
    U: Permutation
    W: Permutation
    alpha: tuple[int, ...]
    twisted: tuple[int, ...] = ()

    def region(self) -> Region:
        return tra_region(self.a, self.n)

    def in_P(self, u: Permutation, r: int) -> bool:
        return all(u(self.p[j]) == j for j in range(r + 1, self.n + 1))


def canonical_labels(reg: RegularBoundary) -> TrapezoidData:
    if reg.vanished:
        raise ValueError("vanished boundary has no canonical labels")
    a, n = reg.a, reg.n
    N, E, S = reg.delta.N, reg.delta.E, reg.delta.S
    if any(r not in N for r in range(1, n + 1)):
        raise ValueError("boundary is not regular")
    entries = [("N", c) for c in range(a, 2) if c in N]
    for r in range(1, n + 1):
        if r >= 2:
            entries.append(("N", r))
        if r in E:
            entries.append(("E", r))
    if len(entries) != n - a + 1 or len(S) != n - a + 1:
        raise ValueError("boundary does not carry one pipe per label in [a, n]")
    new_of_old = {}
    newN, newE = {}, {}
    for lab, (side, k) in enumerate(entries, start=a):
        if side == "N":
            new_of_old[N[k]] = lab
            newN[k] = lab
        else:
            new_of_old[E[k]] = lab
            newE[k] = lab
    newS = {c: new_of_old[v] for c, v in S.items()}
    delta = BoundaryCondition.make(north=newN, east=newE, south=newS)
    p = {c: newN[c] for c in range(1, n + 1)}
    U = Permutation.from_map({lab: c for c, lab in newS.items()})
    top_inv = {lab: c for c, lab in newN.items() if c <= 1}
    W = lift(_iota_from_section(top_inv, p[1], 1, a), 1, p, a, n)
    alpha = tuple(p[i + 1] - 1 for i in range(1, n))
    return TrapezoidData(delta, a, n, p, U, W, alpha, reg.twisted)


def observed_boundary(D: BPD, a: int, n: int) -> RegularBoundary:
    """Boundary read off a trapezoid BPD, pipes numbered in tracing order.

    The numbering is arbitrary; canonical_labels replaces it.
    """
    maps: dict[str, dict[int, int]] = {"N": {}, "E": {}, "S": {}, "W": {}}
    for k, p in enumerate(trace(D).pipes):
        maps[p.entry[0]][p.entry[1]] = k
        maps[p.exit[0]][p.exit[1]] = k
    if maps["W"]:
        raise ValueError("a pipe leaves through the west side")
    return RegularBoundary(BoundaryCondition.make(maps["N"], maps["E"], maps["S"]), a, n)


def prepare(gamma: BoundaryCondition, lo: int, hi: int) -> tuple[RegularBoundary, TrapezoidData | None]:
    reg = restrict_and_regularize(gamma, lo, hi)
    if reg.vanished:
        return reg, None
    return reg, canonical_labels(reg)


# ----------------------------------------------------------- enumeration

def tbpd_enumerate(data: TrapezoidData) -> list[BPD]:
    return enumerate_bpds(data.region(), data.delta)


def tbpd_chain(D: BPD, data: TrapezoidData) -> AlphaChain:
    a, n, p = data.a, data.n, data.p
    edges = label(D, data.delta).edge_labels()
    perms = []
    for r in range(n, 0, -1):
        phi_inv = {lab: c for (rr, c), lab in edges.items() if rr == r - 1 and a <= c <= r}
        perms.append(lift(_iota_from_section(phi_inv, p[r], r, a), r, p, a, n))
    return AlphaChain(tuple(perms), tuple(reversed(data.alpha)), n)


def last_row(data: TrapezoidData) -> BPD:
    a, n = data.a, data.n
    E, S = data.delta.E, data.delta.S
    tiles = {}
    if n not in E:
        for c in range(a, n + 1):
            tiles[(n, c)] = Tile.V
    else:
        turn = next(c for c, lab in S.items() if lab == E[n])
        for c in range(a, n + 1):
            tiles[(n, c)] = Tile.V if c < turn else Tile.R if c == turn else Tile.X
    return BPD.make(Region(tiles), tiles)


def tbpd_unchain(ch: AlphaChain, data: TrapezoidData) -> BPD:
    a, n, p = data.a, data.n, data.p
    by_row = {r: ch.perms[n - r] for r in range(1, n + 1)}
    E = data.delta.E
    rows = []
    for r in range(1, n):
        upper = iota(by_row[r], r, a, n)
        lower = iota(by_row[r + 1], r + 1, a, n)
        north = {upper[L - a]: L for L in range(a, p[r] + 1)}
        south = {lower[L - a]: L for L in range(a, p[r + 1] + 1) if lower[L - a] != r + 1}
        try:
            rows.append(one_row_bpd(r, (a, r), north, E.get(r), south))
        except NoRowBPD as exc:
            raise NoRowBPD(f"chain step into row {r} has no realization") from exc
    rows.append(last_row(data))
    return glue(*rows)


def tbpd_chain_weight(ch: AlphaChain) -> Polynomial:
    """Chain weight with variables (x_{n-1}, ..., x_1)."""
    from .chains import chain_weight
    return chain_weight(ch).substitute_x({i: ch.n - i for i in range(1, ch.n)})


def tbpd_chain_factors(ch: AlphaChain) -> Counter:
    """Linear factors (i, j) of the chain weight, variables already reversed."""
    return Counter((ch.n - i, j) for i, fix in enumerate(chain_fixes(ch), start=1) for j in fix)


def chain_weight_identity(D: BPD, ch: AlphaChain) -> bool:
    """wt(D) times the staircase equals the reversed chain weight.

    Both sides are products of distinct-variable linear factors, so comparing
    the factor multisets is exact and avoids expanding 2^(n choose 2) terms.
    """
    n = ch.n
    lhs = Counter(D.blanks())
    lhs.update((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    return lhs == tbpd_chain_factors(ch)


def staircase_factors(n: int) -> list[Polynomial]:
    return [Polynomial.xy(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _chain_route(data: TrapezoidData) -> Polynomial:
    """fC(U, W, rev alpha) in reversed variables, divided by the staircase.

    Each chain weight is a product of linear factors, so when a chain carries
    the whole staircase we cancel factor by factor; otherwise we fall back to
    polynomial division of the full sum.
    """
    n = data.n
    chains = enumerate_alpha_chains(data.U, data.W, tuple(reversed(data.alpha)), n, memo=True)
    stair = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    out = Polynomial()
    for ch in chains:
        pairs = [(n - i, j) for i, fix in enumerate(chain_fixes(ch), start=1) for j in fix]
        if not stair <= set(pairs):
            full = fC(data.U, data.W, tuple(reversed(data.alpha)), n, memo=True)
            return exact_divide(full.substitute_x({i: n - i for i in range(1, n)}),
                                staircase_factors(n))
        rest = [Polynomial.xy(i, j) for i, j in pairs if (i, j) not in stair]
        out = out + product(rest)
    return out


def fs_tra(data: TrapezoidData, verify: bool = True) -> Polynomial:
    direct = poly_sum(weight(D) for D in tbpd_enumerate(data))
    if not verify:
        return direct
    via = _chain_route(data)
    if via != direct:
        raise InternalMismatch(f"trapezoid routes disagree: {direct} vs {via}")
    return direct


# ------------------------------------------------------------ certificate

def chain_fix_superset_check(ch: AlphaChain) -> bool:
    n = ch.n
    return all(set(range(i + 1, n + 1)) <= fix for i, fix in enumerate(chain_fixes(ch), start=1))


def forward_chains(data: TrapezoidData) -> list[AlphaChain]:
    return enumerate_alpha_chains(data.U, data.W, data.alpha, data.n, memo=True)


def nonvanishing(ch: AlphaChain) -> bool:
    return all(i not in fix for i, fix in enumerate(chain_fixes(ch), start=1))


def normalized_factors(ch: AlphaChain, a: int) -> list[tuple[int, int]]:
    out = []
    for i, fix in enumerate(chain_fixes(ch), start=1):
        out.extend((i, j) for j in sorted(fix) if a <= j <= i)
    return out


def forward_route(data: TrapezoidData) -> Polynomial:
    """fC(U, W, alpha) with the staircase cancelled chain by chain.

    By double symmetry this is fs_tra again, summed over different chains.
    """
    n = data.n
    stair = Counter((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    out = Polynomial()
    for ch in forward_chains(data):
        pairs = Counter((i, j) for i, fix in enumerate(chain_fixes(ch), start=1) for j in fix)
        if stair - pairs:
            raise InternalMismatch(f"chain {ch} does not carry the staircase")
        out = out + product(Polynomial.xy(i, j) for i, j in sorted((pairs - stair).elements()))
    return out


def fs_tra_certificate(data: TrapezoidData) -> Certificate:
    if data.n == 1:
        return [()] if data.U == data.W else []
    cert: Certificate = []
    for ch in forward_chains(data):
        if not chain_fix_superset_check(ch):
            raise InternalMismatch(f"fixed-point containment fails on {ch}")
        if not nonvanishing(ch):
            continue
        forms = []
        for i, j in normalized_factors(ch, data.a):
            if not (j <= 0 < i):
                raise TypeViolation(f"factor (y_{i} - y_{j}) is not of type 3")
            f = LinearForm(i, j)
            if classify(f) is not FormType.TYPE3:
                raise TypeViolation(f"factor {f} is not of type 3")
            forms.append(f)
        cert.append(factor_product(forms))
    return cert

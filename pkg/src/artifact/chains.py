"""k-Bruhat order, increasing chains, chain weights and the BPD/chain maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bpd import (BPD, BoundaryCondition, Region, enumerate_bpds, gamma_w, glue, label)
from .perm import Permutation, bruhat_le
from .poly import ONE, Polynomial, poly_sum, product


class NoRowBPD(ValueError):
    pass


@dataclass(frozen=True)
class ChainStep:
    start: Permutation
    end: Permutation
    k: int
    transcript: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class AlphaChain:
    perms: tuple[Permutation, ...]
    alpha: tuple[int, ...]
    n: int

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "n": self.n,
                "perms": [p.to_json() for p in self.perms]}

    @classmethod
    def from_json(cls, data: dict) -> "AlphaChain":
        return cls(tuple(Permutation.from_json(p) for p in data["perms"]),
                   tuple(data["alpha"]), data["n"])


def joint_window(*perms: Permutation) -> tuple[int, int] | None:
    bounds = [p.support() for p in perms if p.images]
    if not bounds:
        return None
    return min(b[0] for b in bounds), max(b[1] for b in bounds)


def covers_up(u: Permutation, k: int, window: tuple[int, int] | None) -> list[tuple[Permutation, tuple[int, int]]]:
    """Covers u < u t_{a,b} with a <= k < b inside the window, by swapped-min value."""
    if window is None:
        return []
    lo, hi = window
    out = []
    for a in range(lo, min(k, hi) + 1):
        ua = u(a)
        for b in range(max(k + 1, a + 1), hi + 1):
            ub = u(b)
            if ub > ua and not _blocked(u, a, b, ua, ub):
                out.append((u.swap_positions(a, b), (a, b)))
    out.sort(key=lambda item: (u(item[1][0]), item[1]))
    return out


def _blocked(u: Permutation, a: int, b: int, ua: int, ub: int) -> bool:
    return any(ua < u(c) < ub for c in range(a + 1, b))


def _k_compatible(v: Permutation, w: Permutation, k: int, window) -> bool:
    # u <=_k w forces u(i) <= w(i) for i <= k and u(i) >= w(i) for i > k
    lo, hi = window
    for i in range(lo, hi + 1):
        if i <= k and v(i) > w(i):
            return False
        if i > k and v(i) < w(i):
            return False
    return True


def increasing_paths(u: Permutation, k: int, window, bound: Permutation | None = None,
                     k_bound: bool = True):
    """Yield (v, transcript) for every increasing k-chain starting at u.

    With ``bound`` only chains that can still end below the bound are explored:
    k-Bruhat below it when ``k_bound``, plain Bruhat below it otherwise.
    """
    if window is None:
        yield u, ()
        return
    target_len = bound.length() if bound is not None else None

    def dfs(v: Permutation, floor: int | None, trans: tuple):
        yield v, trans
        if target_len is not None and v.length() >= target_len:
            return
        for nxt, (a, b) in covers_up(v, k, window):
            m = v(a)
            if floor is not None and m <= floor:
                continue
            if bound is not None:
                if k_bound and not _k_compatible(nxt, bound, k, window):
                    continue
                if not k_bound and not bruhat_le(nxt, bound):
                    continue
            yield from dfs(nxt, m, trans + ((a, b),))

    yield from dfs(u, None, ())


def exists_increasing(u: Permutation, w: Permutation, k: int) -> tuple[bool, tuple]:
    if u == w:
        return True, ()
    window = joint_window(u, w)
    if u.length() >= w.length() or not _k_compatible(u, w, k, window):
        return False, ()
    for v, trans in increasing_paths(u, k, window, bound=w):
        if v == w:
            return True, trans
    return False, ()


def exists_distinct_b(u: Permutation, w: Permutation, k: int) -> bool:
    """Existence of a saturated k-chain whose right indices are all distinct."""
    if u == w:
        return True
    window = joint_window(u, w)
    target = w.length()

    def dfs(v: Permutation, used: frozenset) -> bool:
        if v == w:
            return True
        if v.length() >= target or not _k_compatible(v, w, k, window):
            return False
        for nxt, (a, b) in covers_up(v, k, window):
            if b not in used and dfs(nxt, used | {b}):
                return True
        return False

    return dfs(u, frozenset())


def increasing_targets(u: Permutation, k: int, window, bound: Permutation) -> list[Permutation]:
    return sorted({v for v, _ in increasing_paths(u, k, window, bound, k_bound=False)})


def enumerate_alpha_chains(u: Permutation, w: Permutation, alpha: Sequence[int], n: int,
                           memo: bool = False) -> list[AlphaChain]:
    alpha = tuple(alpha)
    window = joint_window(u, w)
    m = len(alpha)
    step_cache: dict = {}
    tail_cache: dict = {}

    def targets(v: Permutation, k: int) -> list[Permutation]:
        key = (v, k)
        if key not in step_cache:
            step_cache[key] = increasing_targets(v, k, window, w)
        return step_cache[key]

    def tails(v: Permutation, i: int) -> list[tuple[Permutation, ...]]:
        if i == m:
            return [()] if v == w else []
        key = (v, i)
        if memo and key in tail_cache:
            return tail_cache[key]
        out = []
        for nxt in targets(v, alpha[i]):
            for rest in tails(nxt, i + 1):
                out.append((nxt,) + rest)
        if memo:
            tail_cache[key] = out
        return out

    if not bruhat_le(u, w):
        return []
    return [AlphaChain((u,) + t, alpha, n) for t in tails(u, 0)]


def fix_set(u: Permutation, w: Permutation, lo: int, hi: int) -> frozenset[int]:
    """Values u(t) with t in (lo, hi] and u(t) = w(t)."""
    return frozenset(u(t) for t in range(lo + 1, hi + 1) if u(t) == w(t))


def chain_fixes(ch: AlphaChain) -> list[frozenset[int]]:
    return [fix_set(ch.perms[i], ch.perms[i + 1], ch.alpha[i], ch.n)
            for i in range(len(ch.alpha))]


def chain_weight(ch: AlphaChain) -> Polynomial:
    factors = []
    for i, fix in enumerate(chain_fixes(ch), start=1):
        factors.extend(Polynomial.xy(i, j) for j in sorted(fix))
    return product(factors) if factors else ONE


def fC(u: Permutation, w: Permutation, alpha: Sequence[int], n: int, memo: bool = False) -> Polynomial:
    return poly_sum(chain_weight(ch) for ch in enumerate_alpha_chains(u, w, alpha, n, memo))


def symmetry_check(u: Permutation, w: Permutation, alpha: Sequence[int], n: int,
                   sigma: Sequence[int]) -> bool:
    """sigma is the one-line notation of a permutation of [m]."""
    alpha = tuple(alpha)
    lhs = fC(u, w, alpha, n)
    permuted = tuple(alpha[s - 1] for s in sigma)
    rhs = fC(u, w, permuted, n).substitute_x({i: sigma[i - 1] for i in range(1, len(alpha) + 1)})
    return lhs == rhs


def reversed_variables(p: Polynomial, m: int) -> Polynomial:
    """p(x_m, ..., x_1)."""
    return p.substitute_x({i: m + 1 - i for i in range(1, m + 1)})


# ------------------------------------------------------ one-row realization

def one_row_bpds(row: int, cols: tuple[int, int], north: dict[int, int],
                 east: int | None, south: dict[int, int]) -> list[BPD]:
    region = Region.rectangle((row, row), cols)
    bc = BoundaryCondition.make(north=north, east={row: east} if east is not None else {},
                                south=south)
    return enumerate_bpds(region, bc)


def one_row_bpd(row: int, cols: tuple[int, int], north: dict[int, int],
                east: int | None, south: dict[int, int]) -> BPD:
    found = one_row_bpds(row, cols, north, east, south)
    if len(found) != 1:
        raise NoRowBPD(f"row {row}: {len(found)} realizations")
    return found[0]


def row_boundary_of_step(lower: Permutation, upper: Permutation, k: int,
                         cols: tuple[int, int], right_entry: bool) -> tuple[dict, int | None, dict]:
    """Boundary of the one-row strip realizing lower ->_k upper.

    With a right entry the north labels are [a, k-1] and pipe k enters from
    the right; otherwise all of [a, k] enters from the top.
    """
    a, _ = cols
    top = k - 1 if right_entry else k
    north = {upper(p): p for p in range(a, top + 1)}
    south = {lower(p): p for p in range(a, k + 1)}
    return north, (k if right_entry else None), south


# --------------------------------------------------------- chain_n and back

def _decreasing_fill(partial: dict[int, int], lo: int, hi: int) -> Permutation:
    """Permutation of [lo, hi] agreeing with ``partial`` and decreasing elsewhere."""
    rest_pos = [p for p in range(lo, hi + 1) if p not in partial]
    rest_val = sorted(set(range(lo, hi + 1)) - set(partial.values()), reverse=True)
    mapping = dict(partial)
    mapping.update(zip(rest_pos, rest_val))
    return Permutation([mapping[p] for p in range(lo, hi + 1)], lo)


def chain_of_bpd(D: BPD, u: Permutation, n: int) -> AlphaChain:
    L = label(D, gamma_w(u, n))
    perms = []
    for r in range(n, 0, -1):
        phi = L.cross_section(r - 1) if r > 1 else {}
        inv = {lab: c for c, lab in phi.items() if 1 <= lab <= r - 1}
        perms.append(_decreasing_fill(inv, 1, n))
    return AlphaChain(tuple(perms), tuple(range(n - 1, 0, -1)), n)


def bpd_of_chain(ch: AlphaChain) -> BPD:
    n = ch.n
    by_row = {r: ch.perms[n - r] for r in range(1, n + 1)}
    by_row[n + 1] = ch.perms[0]
    rows = []
    for r in range(1, n + 1):
        upper, lower = by_row[r], by_row[r + 1]
        north = {upper(i): i for i in range(1, r)}
        south = {lower(i): i for i in range(1, r + 1)}
        rows.append(one_row_bpd(r, (1, n), north, r, south))
    return glue(*rows)


def bpd_weight_from_chain(ch: AlphaChain) -> Polynomial:
    """wt(D) expressed through the chain: chain weight with x_i -> x_{n-i}."""
    return chain_weight(ch).substitute_x({i: ch.n - i for i in range(1, ch.n)})

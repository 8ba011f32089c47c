"""Brute-force oracles, kept independent of the pipedream code.

Only perm and poly are shared with the pipeline.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .perm import Partition, Permutation, partitions_of
from .poly import ONE, ZERO, Polynomial, product


class NonExactDivision(ArithmeticError):
    pass


class NotSymmetric(ValueError):
    pass


class OracleDisagreement(AssertionError):
    pass


# -------------------------------------------------------- divided differences

def _dd_exps(xs, i: int):
    """Apply the i-th divided difference to one x-monomial; yields (xs, coeff)."""
    d = dict(xs)
    a, b = d.pop(i, 0), d.pop(i + 1, 0)
    if a == b:
        return
    sign = 1 if a > b else -1
    hi, lo = max(a, b), min(a, b)
    for k in range(hi - lo):
        e = dict(d)
        p, q = hi - 1 - k, lo + k
        if p:
            e[i] = p
        if q:
            e[i + 1] = q
        yield tuple(sorted(e.items())), sign


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    out: dict = {}
    for (xs, ys), c in f.terms.items():
        for nxs, s in _dd_exps(xs, i):
            m = (nxs, ys)
            out[m] = out.get(m, 0) + s * c
    return Polynomial(out)


def schubert_dd(w: Permutation, n: int, last_ascent: bool = False) -> Polynomial:
    """Double Schubert polynomial of w in S_n by descending from w_0."""
    if not w.in_window(1, n):
        raise ValueError(f"{w} is not in S_{n}")
    return _schubert_dd(tuple(w.one_line(1, n)), last_ascent)


@lru_cache(maxsize=None)
def _schubert_dd(line: tuple[int, ...], last_ascent: bool) -> Polynomial:
    n = len(line)
    if all(line[k] > line[k + 1] for k in range(n - 1)):
        return product(Polynomial.xy(i, j) for i in range(1, n) for j in range(1, n + 1 - i))
    ascents = [k for k in range(n - 1) if line[k] < line[k + 1]]
    k = ascents[-1] if last_ascent else ascents[0]
    up = list(line)
    up[k], up[k + 1] = up[k + 1], up[k]
    return divided_difference(_schubert_dd(tuple(up), last_ascent), k + 1)


def divided_difference_by_division(f: Polynomial, i: int) -> Polynomial:
    """Same operator computed by exact division; used to cross-check."""
    from .poly import NotDivisible, exact_divide
    num = f - f.swap_x(i, i + 1)
    try:
        return exact_divide(num, Polynomial.x(i) - Polynomial.x(i + 1))
    except NotDivisible as exc:
        raise NonExactDivision(str(exc)) from exc


# -------------------------------------------------------- single Schubert

@lru_cache(maxsize=None)
def schubert_single(line: tuple[int, ...], keep: int | None = None) -> Polynomial:
    """Single Schubert polynomial by the transition recursion.

    Variables with index above ``keep`` are set to zero along the way.
    """
    n = len(line)
    w = list(line)
    r = max((k for k in range(n - 1) if w[k] > w[k + 1]), default=None)
    if r is None:
        return ONE
    s = max(j for j in range(r + 1, n) if w[j] < w[r])
    v = list(w)
    v[r], v[s] = v[s], v[r]
    out = ZERO
    if keep is None or r + 1 <= keep:
        out = Polynomial.x(r + 1) * schubert_single(tuple(v), keep)
    for q in range(r - 1, -1, -1):
        if v[q] < v[r] and not any(v[q] < v[k] < v[r] for k in range(q + 1, r)):
            u = list(v)
            u[q], u[r] = u[r], u[q]
            out = out + schubert_single(tuple(u), keep)
    return out


# ------------------------------------------------------------- reduced words

def reduced_words(w: Permutation) -> list[tuple[int, ...]]:
    if w.is_identity():
        return [()]
    return sorted(_reduced_words(w.standardize(w.window_lo, w.window_hi).images,
                                 w.window_lo - 1))


def _reduced_words(line: tuple[int, ...], shift: int) -> list[tuple[int, ...]]:
    return [tuple(i + shift for i in word) for word in _rw(line)]


@lru_cache(maxsize=None)
def _rw(line: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    out = []
    des = [k for k in range(len(line) - 1) if line[k] > line[k + 1]]
    if not des:
        return ((),)
    for k in des:
        v = list(line)
        v[k], v[k + 1] = v[k + 1], v[k]
        out.extend(word + (k + 1,) for word in _rw(tuple(v)))
    return tuple(out)


# --------------------------------------------------------------- EG insertion

def eg_insert(word) -> tuple[tuple[int, ...], ...]:
    rows: list[list[int]] = []
    for x in word:
        k = 0
        while True:
            if k == len(rows):
                rows.append([x])
                break
            row = rows[k]
            bigger = [j for j, y in enumerate(row) if y > x]
            if not bigger:
                row.append(x)
                break
            j = bigger[0]
            y = row[j]
            if y == x + 1 and x in row:
                x = x + 1
            else:
                row[j] = x
                x = y
            k += 1
    return tuple(tuple(r) for r in rows)


# The shape convention is calibrated on 0-Grassmannian permutations and pinned
# here; tests recompute it (see calibrate_eg_convention).
EG_CONVENTION = {"reverse_word": False, "transpose": True}


def _eg_table(words, reverse_word: bool, transpose: bool) -> dict[Partition, int]:
    tableaux = set()
    for word in words:
        tableaux.add(eg_insert(word[::-1] if reverse_word else word))
    out: dict[Partition, int] = {}
    for P in tableaux:
        lam = Partition(len(r) for r in P)
        if transpose:
            lam = lam.conjugate()
        out[lam] = out.get(lam, 0) + 1
    return out


def eg_by_insertion(w: Permutation, reverse_word: bool | None = None,
                    transpose: bool | None = None) -> dict[Partition, int]:
    if reverse_word is None:
        reverse_word = EG_CONVENTION["reverse_word"]
    if transpose is None:
        transpose = EG_CONVENTION["transpose"]
    return _eg_table(reduced_words(w), reverse_word, transpose)


def calibrate_eg_convention(max_size: int = 4) -> dict[str, bool]:
    """First insertion convention (in a fixed order) for which w_mu gives {mu: 1}."""
    from .perm import grassmannian_of_partition
    good = []
    for rev, tr in itertools.product((False, True), repeat=2):
        ok = True
        for size in range(1, max_size + 1):
            for mu in partitions_of(size):
                if eg_by_insertion(grassmannian_of_partition(mu), rev, tr) != {mu: 1}:
                    ok = False
        if ok:
            good.append({"reverse_word": rev, "transpose": tr})
    if not good:
        raise OracleDisagreement("no insertion convention reproduces w_mu -> mu")
    return good[0]


# ------------------------------------------------------------ Schur expansion

@lru_cache(maxsize=None)
def kostka(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape lam and content mu."""
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1 if not lam else 0
    k = mu[-1]
    rest = mu[:-1]
    total = 0
    # remove a horizontal strip of size k holding the largest letter
    for nu in _strip_inner(lam, k):
        total += kostka(nu, rest)
    return total


def _strip_inner(lam: tuple[int, ...], k: int):
    n = len(lam)
    ranges = []
    for i in range(n):
        lo = lam[i + 1] if i + 1 < n else 0
        ranges.append(range(lo, lam[i] + 1))
    for nu in itertools.product(*ranges):
        if sum(lam) - sum(nu) == k:
            yield tuple(p for p in nu if p)


def is_symmetric(f: Polynomial, m: int) -> bool:
    if f.y_indices() or any(i < 1 or i > m for i in f.x_indices()):
        return False
    return all(f.swap_x(i, i + 1) == f for i in range(1, m))


def schur_expand(f: Polynomial, m: int) -> dict[Partition, int]:
    if not is_symmetric(f, m):
        raise NotSymmetric("polynomial is not symmetric in x_1..x_m")
    dominant: dict[tuple[int, ...], int] = {}
    for (xs, _), c in f.terms.items():
        d = dict(xs)
        exps = tuple(d.get(i, 0) for i in range(1, m + 1))
        if all(exps[k] >= exps[k + 1] for k in range(m - 1)):
            dominant[tuple(e for e in exps if e)] = c
    out: dict[Partition, int] = {}
    while dominant:
        mu = max(dominant)
        c = dominant[mu]
        out[Partition(mu)] = c
        for nu in list(partitions_of(sum(mu))):
            if len(nu) > m:
                continue
            kk = kostka(mu, nu.parts)
            if kk:
                key = nu.parts
                dominant[key] = dominant.get(key, 0) - c * kk
                if dominant[key] == 0:
                    del dominant[key]
    return out


# ------------------------------------------------------ Stanley truncation

def eg_by_truncation(w: Permutation) -> dict[Partition, int]:
    if w.is_identity():
        return {Partition(): 1}
    std = w.standardize(w.window_lo, w.window_hi).images
    ell = w.length()

    def at(m: int) -> dict[Partition, int]:
        line = tuple(range(1, m + 1)) + tuple(m + v for v in std)
        return schur_expand(schubert_single(line, m), m)

    m = ell
    prev = at(m)
    while True:
        cur = at(m + 1)
        if cur == prev:
            return cur
        m, prev = m + 1, cur


def eg_coefficients(w: Permutation, bound: int = 8) -> dict[Partition, int]:
    if w.length() > bound:
        raise ValueError(f"length {w.length()} exceeds oracle bound {bound}")
    a = eg_by_insertion(w)
    b = eg_by_truncation(w)
    if a != b:
        raise OracleDisagreement(f"{w}: insertion {a} vs truncation {b}")
    if any(v < 0 for v in a.values()):
        raise OracleDisagreement(f"{w}: negative coefficient")
    return dict(sorted(a.items(), key=lambda kv: kv[0].sort_key()))

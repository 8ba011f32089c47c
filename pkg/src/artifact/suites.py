"""Verification bundles shared by the CLI and the acceptance tests.

Every suite returns a list of Check records in a fixed order. Work is split
into independent tasks (one per permutation, usually) and fanned out over a
process pool whose size comes from ARTIFACT_JOBS; results are collected in
submission order so the output never depends on the pool size.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

from . import golden
from .bpd import BPD, bpds_of, from_rows, weight
from .chains import (bpd_of_chain, bpd_weight_from_chain, chain_of_bpd, enumerate_alpha_chains,
                     fC, reversed_variables, symmetry_check)
from .coeff import (all_certificates, candidate_partitions, j_via_lower, positivity_report)
from .oracle import EG_CONVENTION, calibrate_eg_convention, eg_coefficients, schubert_dd
from .perm import Partition, Permutation, bruhat_le, grassmannian_of_partition, partitions_of
from .poly import expand
from .slice import enumerate_lower, gamma_decompose, lfs
from .trapezoid import (canonical_labels, chain_weight_identity, forward_route, fs_tra,
                        fs_tra_certificate, observed_boundary, prepare, tbpd_chain,
                        tbpd_enumerate, tbpd_unchain)

JOBS_ENV = "ARTIFACT_JOBS"
SUITES = ("golden", "oracle", "bijections", "identities", "positivity")


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    cases: int
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{tag} {self.suite}/{self.name} cases={self.cases}{tail}"

    def to_json(self) -> dict:
        return asdict(self)


def jobs_from_env() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{JOBS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{JOBS_ENV} must be a positive integer, got {raw!r}")
    return n


def pmap(fn: Callable, items: Iterable, jobs: int | None = None) -> list:
    """Ordered map, in a process pool when jobs > 1."""
    items = list(items)
    jobs = jobs_from_env() if jobs is None else jobs
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=1))


def perms_in_window(lo: int, hi: int, max_length: int) -> list[Permutation]:
    out = {Permutation(p, lo) for p in itertools.permutations(range(lo, hi + 1))}
    return sorted(w for w in out if w.length() <= max_length)


def _first_failure(results: list[tuple[bool, str]]) -> str:
    bad = [msg for ok, msg in results if not ok]
    return f"{len(bad)} failing, first: {bad[0]}" if bad else ""


def _check(suite: str, name: str, results: list[tuple[bool, str]]) -> Check:
    return Check(suite, name, all(ok for ok, _ in results), len(results), _first_failure(results))


# ------------------------------------------------------------------ golden

def golden_suite() -> list[Check]:
    out: list[tuple[str, list[tuple[bool, str]]]] = []

    g = golden
    fwd = fC(g.DOUBLE_SYM_U, g.DOUBLE_SYM_W, g.DOUBLE_SYM_ALPHA, g.DOUBLE_SYM_N)
    rev = reversed_variables(fC(g.DOUBLE_SYM_U, g.DOUBLE_SYM_W, g.DOUBLE_SYM_ALPHA[::-1],
                                g.DOUBLE_SYM_N), len(g.DOUBLE_SYM_ALPHA))
    out.append(("double-symmetry-example", [
        (fwd == g.DOUBLE_SYM_FORWARD, f"forward {fwd}"),
        (rev == g.DOUBLE_SYM_REVERSED, f"reversed {rev}"),
    ]))

    drawn = [from_rows(r, g.TRAP_A) for r in g.TRAP_ROWS]
    data = canonical_labels(observed_boundary(drawn[0], g.TRAP_A, g.TRAP_N))
    found = tbpd_enumerate(data)
    direct = fs_tra(data)
    cert = fs_tra_certificate(data)
    expected = golden.xy_sum_of_products(g.TRAP_WEIGHTS)
    out.append(("trapezoid-example", [
        (len(found) == 3, f"{len(found)} TBPDs"),
        (sorted(found, key=BPD.sort_key) == sorted(drawn, key=BPD.sort_key), "drawn set"),
        ([weight(D) for D in drawn] == [golden.xy_product(p) for p in g.TRAP_WEIGHTS], "weights"),
        (direct == expected, f"sum {direct}"),
        ((data.U, data.W, data.alpha) == (g.TRAP_U, g.TRAP_W, g.TRAP_ALPHA), "U, W, alpha"),
        (forward_route(data) == g.TRAP_CHAIN_FORM, "chain form"),
        (g.TRAP_CHAIN_FORM.specialize_x_to_y() == expected.specialize_x_to_y(), "specializations"),
        (cert == g.TRAP_CERTIFICATE, f"certificate {cert}"),
        (expand(cert) == expected.specialize_x_to_y(), "certificate expansion"),
    ]))

    D = from_rows(g.CHAIN_ROWS, 1)
    ch = chain_of_bpd(D, g.CHAIN_W, g.CHAIN_N)
    out.append(("bpd-to-chain-example", [
        (D in bpds_of(g.CHAIN_W, g.CHAIN_N), "membership"),
        (weight(D) == golden.xy_product(g.CHAIN_WEIGHT), "weight"),
        (ch.perms[g.CHAIN_N - 4] == g.CHAIN_U4, f"u_4 = {ch.perms[g.CHAIN_N - 4]}"),
        (bpd_of_chain(ch) == D, "inverse"),
    ]))

    D = from_rows(g.LABEL_ROWS, g.LABEL_A)
    data = canonical_labels(observed_boundary(D, g.LABEL_A, g.LABEL_N))
    ch = tbpd_chain(D, data)
    out.append(("tbpd-chain-example", [
        (data.p == g.LABEL_P, f"p = {data.p}"),
        (data.alpha == g.LABEL_ALPHA, f"alpha = {data.alpha}"),
        (weight(D) == golden.xy_product(g.LABEL_WEIGHT), "weight"),
        (chain_weight_identity(D, ch), "chain weight identity"),
        (tbpd_unchain(ch, data) == D, "inverse"),
    ]))
    return [_check("golden", name, res) for name, res in out]


# ------------------------------------------------------------------ oracle

def _bpd_vs_dd(task: tuple[Permutation, int]) -> tuple[bool, str]:
    w, n = task
    from .bpd import schubert_via_bpd
    return schubert_via_bpd(w, n) == schubert_dd(w, n), f"{w} in S_{n}"


def oracle_suite(seed: int = 0, jobs: int | None = None) -> list[Check]:
    tasks = [(Permutation(p, 1), n) for n in range(1, 5) for p in itertools.permutations(range(1, n + 1))]
    rng = random.Random(seed)
    s5 = [Permutation(p, 1) for p in itertools.permutations(range(1, 6))]
    tasks += [(w, 5) for w in rng.sample(s5, 50)]
    checks = [_check("oracle", "bpd-sum-equals-divided-difference", pmap(_bpd_vs_dd, tasks, jobs))]
    conv = calibrate_eg_convention()
    checks.append(_check("oracle", "eg-convention-pinned",
                         [(conv == EG_CONVENTION, f"calibrated {conv}")]))
    return checks


# ------------------------------------------------------------- bijections

def _chain_round_trip(task: tuple[Permutation, int]) -> tuple[bool, str]:
    w, n = task
    for D in bpds_of(w, n):
        ch = chain_of_bpd(D, w, n)
        if bpd_of_chain(ch) != D:
            return False, f"{w}: round trip"
        if bpd_weight_from_chain(ch) != weight(D):
            return False, f"{w}: weight"
    return True, ""


def trapezoid_instances(w: Permutation) -> list:
    """Distinct regular trapezoid instances met while slicing w."""
    seen = {}
    for sigma in enumerate_lower(w):
        dec = gamma_decompose(sigma, w, verify=False)
        for block in dec.gammas:
            _, data = prepare(block.gamma, dec.window.a, dec.window.b)
            if data is not None:
                seen.setdefault((data.delta, data.a, data.n), data)
    return [seen[k] for k in sorted(seen, key=repr)]


def _tbpd_round_trip(w: Permutation) -> tuple[bool, str]:
    for data in trapezoid_instances(w):
        found = tbpd_enumerate(data)
        chains = set()
        for D in found:
            ch = tbpd_chain(D, data)
            chains.add(ch)
            if tbpd_unchain(ch, data) != D:
                return False, f"{w}: unchain(chain(D)) != D"
            if not chain_weight_identity(D, ch):
                return False, f"{w}: chain weight identity"
        every = enumerate_alpha_chains(data.U, data.W, tuple(reversed(data.alpha)), data.n, memo=True)
        if chains != set(every):
            return False, f"{w}: {len(chains)} chains from TBPDs vs {len(every)} in C(U, W, rev alpha)"
    return True, ""


def bijection_suite(jobs: int | None = None) -> list[Check]:
    tasks = [(Permutation(p, 1), n) for n in (3, 4) for p in itertools.permutations(range(1, n + 1))]
    checks = [_check("bijections", "chain-map-round-trip", pmap(_chain_round_trip, tasks, jobs))]
    ws = perms_in_window(-2, 4, 5)
    checks.append(_check("bijections", "tbpd-chain-round-trip", pmap(_tbpd_round_trip, ws, jobs)))
    return checks


# ------------------------------------------------------------- identities

def _diag_cut(task: tuple[Permutation, Permutation]) -> tuple[bool, str]:
    sigma, w = task
    try:
        dec = gamma_decompose(sigma, w, verify=True)
    except AssertionError as exc:
        return False, str(exc)
    if dec.polynomial() != lfs(sigma, w):
        return False, f"sigma={sigma} w={w}: sum over gamma differs"
    for block in dec.gammas:
        _, data = prepare(block.gamma, dec.window.a, dec.window.b)
        if data is None:
            continue
        try:
            direct = fs_tra(data, verify=True)
        except AssertionError as exc:
            return False, str(exc)
        if forward_route(data) != direct:
            return False, f"sigma={sigma} w={w}: forward chains disagree"
    return True, ""


def _symmetry(task) -> tuple[bool, str]:
    u, w, alpha, sigma = task
    return symmetry_check(u, w, alpha, 4, sigma), f"u={u} w={w} alpha={alpha} sigma={sigma}"


def sample_cut_pairs(seed: int, count: int = 30) -> list[tuple[Permutation, Permutation]]:
    rng = random.Random(seed)
    ws = [w for w in perms_in_window(-2, 4, 5) if not w.is_identity()]
    out = []
    for w in rng.sample(ws, count):
        sigmas = sorted(enumerate_lower(w))
        out.append((rng.choice(sigmas), w))
    return out


def sample_symmetry_cases(seed: int, count: int = 100) -> list:
    rng = random.Random(seed)
    s4 = sorted(Permutation(p, 1) for p in itertools.permutations(range(1, 5)))
    out = []
    for _ in range(count):
        w = rng.choice(s4)
        u = rng.choice([v for v in s4 if bruhat_le(v, w)])
        m = rng.randint(1, 4)
        alpha = tuple(rng.randint(1, 3) for _ in range(m))
        sigma = tuple(rng.sample(range(1, m + 1), m))
        out.append((u, w, alpha, sigma))
    return out


def identity_suite(seed: int = 0, jobs: int | None = None) -> list[Check]:
    return [
        _check("identities", "diagonal-cut-and-trapezoid-routes",
               pmap(_diag_cut, sample_cut_pairs(seed), jobs)),
        _check("identities", "double-symmetry", pmap(_symmetry, sample_symmetry_cases(seed), jobs)),
    ]


# ------------------------------------------------------------- positivity

def _coefficients(w: Permutation) -> dict[str, tuple[bool, str]]:
    reps = positivity_report(w, verify=True)
    out = {}
    eg = {r.lam: r.eg_at_zero for r in reps if r.eg_at_zero}
    oracle = eg_coefficients(w)
    out["eg"] = (eg == oracle, f"{w}: {eg} vs oracle {oracle}")
    bad = [r for r in reps if not r.anderson_ok]
    out["anderson"] = (not bad, f"{w}: {bad[0].lam if bad else ''}")
    ok = True
    if all(d >= 0 for d in w.descents()):
        table = {r.lam: r.expanded for r in reps}
        for lam in candidate_partitions(w):
            if table.get(lam, expand([])) != j_via_lower(w, lam):
                ok = False
                break
    out["route"] = (ok, f"{w}: certificate vs lower route")
    wide = {lam: expand(c) for lam, c in all_certificates(w, widen=2).items()}
    out["widen"] = (wide == {r.lam: r.expanded for r in reps}, f"{w}: +2 widening")
    return out


def _duality(w: Permutation) -> tuple[bool, str]:
    mine = {lam: expand(c) for lam, c in all_certificates(w).items()}
    dual = {lam.conjugate(): expand(c).omega1(signed=True)
            for lam, c in all_certificates(w.neg()).items()}
    return mine == dual, f"{w}"


def _grassmannian(mu: Partition) -> tuple[bool, str]:
    table = all_certificates(grassmannian_of_partition(mu), verify=True)
    return table == {mu: [()]}, f"mu={mu}: {table}"


def grassmannian_suite(max_size: int = 4, jobs: int | None = None) -> list[Check]:
    mus = [mu for k in range(max_size + 1) for mu in partitions_of(k)]
    return [_check("positivity", "grassmannian-delta", pmap(_grassmannian, mus, jobs))]


def coefficient_suite(seed: int = 0, max_length: int = 6, jobs: int | None = None) -> list[Check]:
    ws = perms_in_window(-2, 4, max_length)
    rows = pmap(_coefficients, ws, jobs)
    checks = [
        _check("positivity", "certificate-equals-lower-route", [r["route"] for r in rows]),
        _check("positivity", "eg-at-zero-matches-oracle", [r["eg"] for r in rows]),
        _check("positivity", "anderson-constraints", [r["anderson"] for r in rows]),
    ]
    rng = random.Random(seed)
    pool = [w for w in ws if not w.is_identity()]
    sample = rng.sample(pool, min(20, len(pool)))
    checks.append(_check("positivity", "omega-duality", pmap(_duality, sample, jobs)))
    checks.append(_check("positivity", "window-invariance", [r["widen"] for r in rows]))
    return checks


def positivity_suite(seed: int = 0, max_length: int = 6, jobs: int | None = None) -> list[Check]:
    return coefficient_suite(seed, max_length, jobs) + grassmannian_suite(jobs=jobs)


def clear_caches() -> None:
    """Drop memoized results so timings start cold."""
    from . import coeff, oracle, slice
    for fn in (coeff._all_certificates, coeff.lower_certificate, slice._enumerate_lower,
               oracle._schubert_dd, oracle.schubert_single, oracle._rw, oracle.kostka):
        fn.cache_clear()


def run_suite(name: str, seed: int = 0, jobs: int | None = None,
              max_length: int = 6) -> list[Check]:
    if name == "golden":
        return golden_suite()
    if name == "oracle":
        return oracle_suite(seed, jobs)
    if name == "bijections":
        return bijection_suite(jobs)
    if name == "identities":
        return identity_suite(seed, jobs)
    if name == "positivity":
        return positivity_suite(seed, max_length, jobs)
    if name == "all":
        return [c for s in SUITES for c in run_suite(s, seed, jobs, max_length)]
    raise ValueError(f"unknown suite {name!r}")

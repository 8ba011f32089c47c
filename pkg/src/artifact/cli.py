"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 parse or usage error.
Set ARTIFACT_JOBS to fan the verification sweeps out over processes; the
output is identical for every value.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass

import click

from .bpd import BPD, BoundaryCondition, bpds_of, render, rothe, schubert_via_bpd, weight
from .chains import enumerate_alpha_chains, fC, reversed_variables, symmetry_check
from .coeff import CoefficientReport, all_certificates, candidate_partitions, make_report
from .oracle import eg_coefficients, schubert_dd
from .perm import Partition, Permutation, PermutationError, parse_partition, parse_permutation
from .poly import cert_text, cert_to_json
from .slice import enumerate_lower, gamma_decompose, lfs, lower_window
from .suites import SUITES, jobs_from_env, run_suite
from .trapezoid import (InternalMismatch, TypeViolation, finite_bounds, fs_tra,
                        fs_tra_certificate, prepare, tbpd_chain, tbpd_enumerate)

VERIFY_FAILED = 1


@dataclass(frozen=True)
class RunConfig:
    fmt: str = "text"
    jobs: int = 1
    seed: int = 0


# ----------------------------------------------------------------- parsing

class PermType(click.ParamType):
    name = "PERM"

    def convert(self, value, param, ctx):
        if isinstance(value, Permutation):
            return value
        try:
            return parse_permutation(value)
        except PermutationError as exc:
            self.fail(str(exc), param, ctx)


class PartitionType(click.ParamType):
    name = "PARTITION"

    def convert(self, value, param, ctx):
        if isinstance(value, Partition):
            return value
        try:
            return parse_partition(value)
        except PermutationError as exc:
            self.fail(str(exc), param, ctx)


class IntListType(click.ParamType):
    name = "INTS"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        text = value.strip().strip("()[]")
        try:
            return tuple(int(v) for v in text.split(",")) if text else ()
        except ValueError:
            self.fail(f"cannot parse integer list {value!r}", param, ctx)


class JsonType(click.ParamType):
    """Inline JSON, or @path to read it from a file ("@-" for stdin)."""

    name = "JSON"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            if value.startswith("@"):
                path = value[1:]
                text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
            else:
                text = value
            return json.loads(text)
        except (OSError, json.JSONDecodeError) as exc:
            self.fail(f"bad JSON: {exc}", param, ctx)


PERM, PART, INTS, JSON = PermType(), PartitionType(), IntListType(), JsonType()


def _boundary(data, ctx_name: str) -> BoundaryCondition:
    try:
        return BoundaryCondition.from_json(data)
    except (TypeError, ValueError, AttributeError) as exc:
        raise click.BadParameter(f"bad boundary condition: {exc}", param_hint=ctx_name) from None


def _emit(cfg: RunConfig, obj, text: str) -> None:
    if cfg.fmt == "json":
        click.echo(json.dumps(obj, sort_keys=False))
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _default_n(w: Permutation) -> int:
    return max(1, w.window_hi) if w.images else 1


def _check_in_sn(w: Permutation, n: int) -> None:
    if not w.in_window(1, n):
        raise click.BadParameter(f"{w} is not in S_{n}", param_hint="W")


# -------------------------------------------------------------------- root

@click.group()
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for sampled checks.")
@click.pass_context
def main(ctx: click.Context, as_json: bool, seed: int) -> None:
    """Bumpless pipe dreams, increasing chains and double Edelman-Greene coefficients."""
    try:
        jobs = jobs_from_env()
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    ctx.obj = RunConfig(fmt="json" if as_json else "text", jobs=jobs, seed=seed)


# --------------------------------------------------------------------- bpd

@main.group()
def bpd() -> None:
    """Bumpless pipe dreams of a permutation."""


@bpd.command("enum")
@click.argument("w", type=PERM)
@click.option("-n", type=int, default=None, help="Size of the square (default: window end).")
@click.pass_obj
def bpd_enum(cfg: RunConfig, w: Permutation, n: int | None) -> None:
    """All BPDs of W on the n x n square."""
    n = n or _default_n(w)
    _check_in_sn(w, n)
    found = bpds_of(w, n)
    obj = {"w": w.text(), "n": n, "count": len(found),
           "bpds": [{"bpd": D.to_json(), "weight": weight(D).text()} for D in found]}
    text = f"{len(found)} BPDs of {w} in S_{n}\n"
    for D in found:
        text += "\n" + render(D) + f"wt = {weight(D).text()}\n"
    _emit(cfg, obj, text)


@bpd.command("rothe")
@click.argument("w", type=PERM)
@click.option("-n", type=int, default=None)
@click.pass_obj
def bpd_rothe(cfg: RunConfig, w: Permutation, n: int | None) -> None:
    """The Rothe BPD of W."""
    n = n or _default_n(w)
    _check_in_sn(w, n)
    D = rothe(w, (1, n))
    _emit(cfg, D.to_json(), render(D))


@bpd.command("render")
@click.argument("data", type=JSON)
@click.pass_obj
def bpd_render(cfg: RunConfig, data) -> None:
    """Render a BPD given as JSON (inline or @file)."""
    try:
        D = BPD.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise click.BadParameter(f"bad BPD: {exc}", param_hint="DATA") from None
    _emit(cfg, {"render": render(D), "weight": weight(D).text()}, render(D))


@bpd.command("schubert")
@click.argument("w", type=PERM)
@click.option("-n", type=int, default=None)
@click.option("--verify", is_flag=True, help="Compare against divided differences.")
@click.pass_obj
def bpd_schubert(cfg: RunConfig, w: Permutation, n: int | None, verify: bool) -> None:
    """Double Schubert polynomial of W as a sum over BPDs."""
    n = n or _default_n(w)
    _check_in_sn(w, n)
    p = schubert_via_bpd(w, n)
    ok = schubert_dd(w, n) == p if verify else None
    _emit(cfg, {"w": w.text(), "n": n, "polynomial": p.to_json(), "oracle_ok": ok},
          p.text() + ("" if ok is None else f"\noracle: {'ok' if ok else 'MISMATCH'}"))
    if ok is False:
        sys.exit(VERIFY_FAILED)


# ------------------------------------------------------------------ chains

@main.group()
def chains() -> None:
    """Increasing k-Bruhat chains."""


@chains.command("enum")
@click.argument("u", type=PERM)
@click.argument("w", type=PERM)
@click.argument("alpha", type=INTS)
@click.argument("n", type=int)
@click.pass_obj
def chains_enum(cfg: RunConfig, u: Permutation, w: Permutation, alpha, n: int) -> None:
    """Chains in C(U, W, ALPHA) with n = N."""
    found = enumerate_alpha_chains(u, w, alpha, n)
    text = f"{len(found)} chains\n" + "".join(
        " -> ".join(p.text() for p in ch.perms) + "\n" for ch in found)
    _emit(cfg, {"count": len(found), "chains": [ch.to_json() for ch in found]}, text)


@chains.command("fc")
@click.argument("u", type=PERM)
@click.argument("w", type=PERM)
@click.argument("alpha", type=INTS)
@click.argument("n", type=int)
@click.option("--reverse-vars", is_flag=True, help="Report f(x_m, ..., x_1) instead.")
@click.pass_obj
def chains_fc(cfg: RunConfig, u, w, alpha, n: int, reverse_vars: bool) -> None:
    """Chain generating function fC^N(U, W, ALPHA)."""
    p = fC(u, w, alpha, n)
    if reverse_vars:
        p = reversed_variables(p, len(alpha))
    _emit(cfg, p.to_json(), p.text())


@chains.command("sym-check")
@click.argument("u", type=PERM)
@click.argument("w", type=PERM)
@click.argument("alpha", type=INTS)
@click.argument("n", type=int)
@click.argument("sigma", type=INTS)
@click.pass_obj
def chains_sym_check(cfg: RunConfig, u, w, alpha, n: int, sigma) -> None:
    """Check fC under permuting ALPHA by SIGMA (one-line, values 1..m)."""
    if sorted(sigma) != list(range(1, len(alpha) + 1)):
        raise click.BadParameter("SIGMA must permute 1..len(ALPHA)", param_hint="SIGMA")
    ok = symmetry_check(u, w, alpha, n, sigma)
    _emit(cfg, {"ok": ok}, "ok" if ok else "FAILED")
    if not ok:
        sys.exit(VERIFY_FAILED)


# ------------------------------------------------------------------- slice

@main.group("slice")
def slice_() -> None:
    """Lower half-plane BPDs and the diagonal cut."""


@slice_.command("lower")
@click.argument("w", type=PERM)
@click.option("--widen", type=int, default=0)
@click.pass_obj
def slice_lower(cfg: RunConfig, w: Permutation, widen: int) -> None:
    """Top sections sigma of lower BPDs of W, with counts."""
    win = lower_window(w, widen)
    table = enumerate_lower(w, widen)
    obj = {"window": {"n0": win.n0, "a": win.a, "b": win.b},
           "sigmas": {s.text(): len(ds) for s, ds in table.items()}}
    text = f"rows [1,{win.n0}] cols [{win.a},{win.b}]\n" + "".join(
        f"{s.text()}  {len(ds)}\n" for s, ds in table.items())
    _emit(cfg, obj, text)


@slice_.command("lfs")
@click.argument("sigma", type=PERM)
@click.argument("w", type=PERM)
@click.option("--widen", type=int, default=0)
@click.pass_obj
def slice_lfs(cfg: RunConfig, sigma, w, widen: int) -> None:
    """Lower Schubert polynomial lfS_{SIGMA,W}."""
    p = lfs(sigma, w, widen)
    _emit(cfg, {sigma.text(): p.to_json()}, p.text())


@slice_.command("gamma")
@click.argument("sigma", type=PERM)
@click.argument("w", type=PERM)
@click.option("--widen", type=int, default=0)
@click.pass_obj
def slice_gamma(cfg: RunConfig, sigma, w, widen: int) -> None:
    """Diagonal-cut boundaries gamma with trapezoid and triangle counts."""
    try:
        dec = gamma_decompose(sigma, w, widen, verify=True)
    except AssertionError as exc:
        click.echo(f"verification failed: {exc}", err=True)
        sys.exit(VERIFY_FAILED)
    blocks = [{"gamma": b.gamma.to_json(), "tra": len(b.tra_bpds), "tri": len(b.tri_bpds)}
              for b in dec.gammas]
    text = "".join(f"{json.dumps(b['gamma'])}  tra={b['tra']} tri={b['tri']}\n" for b in blocks)
    _emit(cfg, {"sigma": sigma.text(), "w": w.text(),
                "window": [dec.window.n0, dec.window.a, dec.window.b], "gammas": blocks},
          text or "no lower BPDs\n")


# --------------------------------------------------------------- trapezoid

@main.group()
def tra() -> None:
    """Trapezoid windows: GAMMA is a boundary condition as JSON (inline or @file)."""


def _tra_args(f):
    f = click.option("--n", "n", type=int, required=True, help="Last row.")(f)
    f = click.option("--a", "a", type=int, required=True, help="First column (<= 0).")(f)
    return click.argument("gamma", type=JSON)(f)


def _prepare(gamma_json, a: int, n: int):
    if a > 0 or n < 1:
        raise click.BadParameter("need a <= 0 < n")
    return prepare(_boundary(gamma_json, "GAMMA"), a, n)


@tra.command("bounds")
@_tra_args
@click.pass_obj
def tra_bounds(cfg: RunConfig, gamma, a: int, n: int) -> None:
    """Smallest trapezoid outside of which GAMMA is trivial."""
    lo, hi = finite_bounds(_boundary(gamma, "GAMMA"), a, n)
    _emit(cfg, {"a": lo, "n": hi}, f"a={lo} n={hi}")


@tra.command("enum")
@_tra_args
@click.pass_obj
def tra_enum(cfg: RunConfig, gamma, a: int, n: int) -> None:
    """TBPDs for the regularized boundary."""
    reg, data = _prepare(gamma, a, n)
    found = tbpd_enumerate(data) if data is not None else []
    obj = {"a": reg.a, "n": reg.n, "vanished": reg.vanished, "twisted": list(reg.twisted),
           "boundary": data.delta.to_json() if data else None,
           "tbpds": [{"bpd": D.to_json(), "weight": weight(D).text()} for D in found]}
    text = f"a={reg.a} n={reg.n} " + ("vanished\n" if reg.vanished else f"{len(found)} TBPDs\n")
    for D in found:
        text += "\n" + render(D) + f"wt = {weight(D).text()}\n"
    _emit(cfg, obj, text)


@tra.command("chain")
@_tra_args
@click.pass_obj
def tra_chain(cfg: RunConfig, gamma, a: int, n: int) -> None:
    """The chain of every TBPD, with the canonical data U, W, alpha."""
    _, data = _prepare(gamma, a, n)
    if data is None:
        _emit(cfg, {"vanished": True, "chains": []}, "vanished")
        return
    chs = [tbpd_chain(D, data) for D in tbpd_enumerate(data)]
    head = f"U={data.U.text()} W={data.W.text()} alpha={list(data.alpha)}\n"
    text = head + "".join(" -> ".join(p.text() for p in ch.perms) + "\n" for ch in chs)
    _emit(cfg, {"U": data.U.text(), "W": data.W.text(), "alpha": list(data.alpha),
                "p": {str(k): v for k, v in sorted(data.p.items())},
                "chains": [ch.to_json() for ch in chs]}, text)


@tra.command("cert")
@_tra_args
@click.option("--verify", is_flag=True, help="Also check both routes and the expansion.")
@click.pass_obj
def tra_cert(cfg: RunConfig, gamma, a: int, n: int, verify: bool) -> None:
    """Type 3 certificate of the trapezoid polynomial at x = y."""
    _, data = _prepare(gamma, a, n)
    cert = fs_tra_certificate(data) if data is not None else []
    if verify and data is not None:
        from .poly import expand
        try:
            direct = fs_tra(data, verify=True)
        except InternalMismatch as exc:
            click.echo(str(exc), err=True)
            sys.exit(VERIFY_FAILED)
        if expand(cert) != direct.specialize_x_to_y():
            click.echo("certificate does not expand to the specialization", err=True)
            sys.exit(VERIFY_FAILED)
    _emit(cfg, cert_to_json(cert), cert_text(cert))


# ------------------------------------------------------------------ jcoeff

def _report_text(r: CoefficientReport) -> str:
    status = "ok" if r.anderson_ok else f"ANDERSON FAILED ({r.detail})"
    return (f"w={r.w.text()} lambda=({r.lam.text()})\n"
            f"  certificate: {cert_text(r.certificate)}\n"
            f"  expanded:    {r.expanded.text()}\n"
            f"  eg_at_zero:  {r.eg_at_zero}\n"
            f"  anderson:    {status}\n")


@main.command()
@click.argument("w", type=PERM)
@click.argument("lam", type=PART, required=False, metavar="[LAMBDA]")
@click.option("--all", "all_", is_flag=True, help="Every lambda up to size length(w).")
@click.option("--verify", is_flag=True, help="Run internal and oracle cross-checks.")
@click.option("--widen", type=int, default=0, help="Extra margin for the lower window.")
@click.option("--json", "as_json", is_flag=True, help="One JSON report per line.")
@click.pass_obj
def jcoeff(cfg: RunConfig, w: Permutation, lam: Partition | None, all_: bool, verify: bool,
           widen: int, as_json: bool) -> None:
    """Positivity certificate of j^W_LAMBDA(y).

    LAMBDA is written "3,1"; the empty string is the empty partition.
    """
    if lam is None and not all_:
        raise click.UsageError("give LAMBDA or --all")
    try:
        table = all_certificates(w, widen, verify)
    except AssertionError as exc:
        click.echo(f"verification failed: {exc}", err=True)
        sys.exit(VERIFY_FAILED)
    lams = candidate_partitions(w) if all_ else [lam]
    reports = [make_report(w, mu, table.get(mu, [])) for mu in lams]
    failed = not all(r.anderson_ok for r in reports)
    if verify:
        eg = {r.lam: r.eg_at_zero for r in reports if r.eg_at_zero}
        oracle = eg_coefficients(w)
        if not all_:
            oracle = {mu: c for mu, c in oracle.items() if mu in lams}
        if eg != oracle:
            click.echo(f"EG oracle disagrees: {oracle}", err=True)
            failed = True
    if as_json or cfg.fmt == "json":
        for r in reports:
            click.echo(json.dumps(r.to_json()))
    else:
        click.echo("".join(_report_text(r) for r in reports), nl=False)
    if failed and verify:
        sys.exit(VERIFY_FAILED)


# ------------------------------------------------------------------ oracle

@main.group()
def oracle() -> None:
    """Independent brute-force oracles."""


@oracle.command("schubert")
@click.argument("w", type=PERM)
@click.argument("n", type=int)
@click.pass_obj
def oracle_schubert(cfg: RunConfig, w: Permutation, n: int) -> None:
    """Double Schubert polynomial by divided differences."""
    _check_in_sn(w, n)
    p = schubert_dd(w, n)
    _emit(cfg, p.to_json(), p.text())


@oracle.command("eg")
@click.argument("w", type=PERM)
@click.pass_obj
def oracle_eg(cfg: RunConfig, w: Permutation) -> None:
    """Edelman-Greene coefficients by insertion and by Schur expansion."""
    try:
        table = eg_coefficients(w)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="W") from None
    except AssertionError as exc:
        click.echo(str(exc), err=True)
        sys.exit(VERIFY_FAILED)
    _emit(cfg, {lam.text(): c for lam, c in table.items()},
          "".join(f"({lam.text()})  {c}\n" for lam, c in table.items()))


# ------------------------------------------------------------------ verify

@main.command()
@click.argument("suite", type=click.Choice(SUITES + ("all",)))
@click.option("--max-length", type=click.IntRange(0, 8), default=6, show_default=True,
              help="Length bound for the positivity sweep.")
@click.pass_obj
def verify(cfg: RunConfig, suite: str, max_length: int) -> None:
    """Run a verification bundle; exit 1 if any check fails."""
    try:
        checks = run_suite(suite, cfg.seed, cfg.jobs, max_length)
    except (AssertionError, InternalMismatch, TypeViolation) as exc:
        click.echo(f"FAIL {suite}: {exc}")
        sys.exit(VERIFY_FAILED)
    ok = all(c.ok for c in checks)
    if cfg.fmt == "json":
        click.echo(json.dumps({"suite": suite, "seed": cfg.seed, "ok": ok,
                               "checks": [c.to_json() for c in checks]}))
    else:
        for c in checks:
            click.echo(c.line())
        click.echo(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed")
    if not ok:
        sys.exit(VERIFY_FAILED)


if __name__ == "__main__":
    main()

"""Double Edelman-Greene coefficients j^w_lambda(y) as positivity certificates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bpd import weight
from .perm import Partition, Permutation, partition_of_grassmannian, partitions_of
from .perm import grassmannian_of_partition
from .poly import (Certificate, FormType, Polynomial, anderson_check, cert_product,
                   cert_to_json, classify, expand, factor_product, omega1_form, poly_sum)
from .slice import enumerate_lower, gamma_decompose, lfs, tri_certificate
from .trapezoid import (InternalMismatch, fs_tra, fs_tra_certificate, prepare)


class DescentPrecondition(ValueError):
    pass


class StructureViolation(AssertionError):
    pass


@dataclass
class CoefficientReport:
    w: Permutation
    lam: Partition
    certificate: Certificate
    expanded: Polynomial
    eg_at_zero: int
    anderson_ok: bool
    detail: str | None = None

    def to_json(self) -> dict:
        return {"w": self.w.text(), "lambda": list(self.lam.parts),
                "certificate": cert_to_json(self.certificate),
                "expanded": self.expanded.to_json(), "eg_at_zero": self.eg_at_zero,
                "anderson_ok": self.anderson_ok}


def candidate_partitions(w: Permutation) -> list[Partition]:
    out = [lam for k in range(w.length() + 1) for lam in partitions_of(k)]
    return sorted(out, key=Partition.sort_key)


# ------------------------------------------------------- one lfS certificate

@lru_cache(maxsize=None)
def lower_certificate(sigma: Permutation, w: Permutation, widen: int = 0,
                      verify: bool = False) -> tuple:
    """Certificate of lfS_{sigma,w}(y;y), summed over the trapezoid boundaries."""
    dec = gamma_decompose(sigma, w, widen, verify=verify)
    a, N = dec.window.a, dec.window.b
    cert: Certificate = []
    for block in dec.gammas:
        _, data = prepare(block.gamma, a, N)
        tra_cert = fs_tra_certificate(data) if data is not None else []
        if verify:
            direct = poly_sum(map(weight, block.tra_bpds))
            # a vanished boundary still has BPDs; only their y-specialization is zero
            if data is not None and fs_tra(data) != direct:
                raise InternalMismatch(f"trapezoid polynomial changed under regularization for {w}")
            if expand(tra_cert) != direct.specialize_x_to_y():
                raise InternalMismatch(f"trapezoid certificate does not expand correctly for {w}")
        cert.extend(cert_product(tri_certificate(block.tri_bpds), tra_cert))
    return tuple(cert)


def _omega(cert) -> Certificate:
    return [factor_product(omega1_form(f) for f in s) for s in cert]


def _check_structure(left, right) -> None:
    # Type1 only from the w side, Type2 only from the dual side, Type3 once per side
    for s in left:
        if any(classify(f) is FormType.TYPE2 for f in s) or len(set(s)) != len(s):
            raise StructureViolation(f"w-side summand {s}")
    for s in right:
        if any(classify(f) is FormType.TYPE1 for f in s) or len(set(s)) != len(s):
            raise StructureViolation(f"dual-side summand {s}")


@lru_cache(maxsize=None)
def _all_certificates(w: Permutation, widen: int, verify: bool) -> tuple:
    table: dict[Partition, Certificate] = {}
    for sigma in enumerate_lower(w, widen):
        left = list(lower_certificate(sigma, w, widen, verify))
        if not left:
            continue
        dual = sigma.neg()
        for key in enumerate_lower(dual, widen):
            lam = partition_of_grassmannian(key).conjugate()
            right = _omega(lower_certificate(key, dual, widen, verify))
            if not right:
                continue
            if verify:
                _check_structure(left, right)
            table.setdefault(lam, []).extend(cert_product(left, right))
    return tuple(sorted(table.items(), key=lambda kv: kv[0].sort_key()))


def all_certificates(w: Permutation, widen: int = 0, verify: bool = False) -> dict[Partition, Certificate]:
    return {lam: list(c) for lam, c in _all_certificates(w, widen, verify)}


def j_certificate(w: Permutation, lam: Partition, widen: int = 0,
                  verify: bool = False) -> Certificate:
    return all_certificates(w, widen, verify).get(lam, [])


def j_via_lower(w: Permutation, lam: Partition, widen: int = 0) -> Polynomial:
    if any(d < 0 for d in w.descents()):
        raise DescentPrecondition(f"{w} has a negative descent")
    return lfs(grassmannian_of_partition(lam), w, widen).specialize_x_to_y()


def make_report(w: Permutation, lam: Partition, cert: Certificate) -> CoefficientReport:
    ok, msg = anderson_check(cert)
    return CoefficientReport(w, lam, cert, expand(cert), sum(1 for s in cert if not s), ok, msg)


def positivity_report(w: Permutation, include_zero: bool = False, widen: int = 0,
                      verify: bool = False) -> list[CoefficientReport]:
    table = all_certificates(w, widen, verify)
    lams = candidate_partitions(w) if include_zero else sorted(table, key=Partition.sort_key)
    return [make_report(w, lam, table.get(lam, [])) for lam in lams]

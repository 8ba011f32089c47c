import pytest

from artifact.coeff import (DescentPrecondition, all_certificates, candidate_partitions,
                            j_certificate, j_via_lower, positivity_report)
from artifact.oracle import eg_coefficients
from artifact.perm import Partition, grassmannian_of_partition, parse_permutation as P
from artifact.perm import partitions_of
from artifact.poly import Polynomial, cert_text, expand

W2143 = P("[2,1,4,3]")


def test_grassmannian_coefficients_are_deltas():
    for k in range(4):
        for mu in partitions_of(k):
            assert all_certificates(grassmannian_of_partition(mu), verify=True) == {mu: [()]}


def test_2143():
    table = all_certificates(W2143, verify=True)
    assert cert_text(table[Partition([1])]) == "(y_2 - y_0) + (y_1 - y_2)"
    assert expand(table[Partition([1])]) == Polynomial.yy(1, 0)
    assert table[Partition([2])] == [()] and table[Partition([1, 1])] == [()]
    assert Partition() not in table


def test_certificate_matches_lower_route():
    for t in ("[2,1,4,3]", "[3,1,2]", "[1,3,2]", "[2,0,1]@0"):
        w = P(t)
        for lam in candidate_partitions(w):
            assert expand(j_certificate(w, lam)) == j_via_lower(w, lam)


def test_lower_route_needs_nonnegative_descents():
    with pytest.raises(DescentPrecondition):
        j_via_lower(P("[0,-1]@-1"), Partition())


def test_constant_terms_are_eg_coefficients():
    for t in ("[2,1,4,3]", "[3,2,1]", "[1,0,2,-1]@-1"):
        w = P(t)
        reps = positivity_report(w)
        assert {r.lam: r.eg_at_zero for r in reps if r.eg_at_zero} == eg_coefficients(w)
        assert all(r.anderson_ok for r in reps)


def test_omega_duality():
    w = P("[3,1,4,2]")
    mine = {lam: expand(c) for lam, c in all_certificates(w).items()}
    dual = {lam.conjugate(): expand(c).omega1(signed=True)
            for lam, c in all_certificates(w.neg()).items()}
    assert mine == dual


def test_report_json_and_zero_rows():
    reps = positivity_report(W2143, include_zero=True)
    assert [r.lam for r in reps] == candidate_partitions(W2143)
    empty = reps[0].to_json()
    assert empty["lambda"] == [] and empty["certificate"] == [] and empty["anderson_ok"]


def test_window_invariance():
    wide = {lam: expand(c) for lam, c in all_certificates(W2143, widen=1).items()}
    assert wide == {lam: expand(c) for lam, c in all_certificates(W2143).items()}

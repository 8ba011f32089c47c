"""Sparse integer polynomials in x_i, y_i (i in Z) and linear-form certificates.

Built in-house rather than on sympy: the pipeline needs only ring operations,
exact division by products of linear forms, and index substitutions, and the
dict representation keeps those cheap and the serialization canonical.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping

from .perm import zkey, zless

# A monomial is (xs, ys), each a sorted tuple of (index, exponent) pairs.
Exps = tuple[tuple[int, int], ...]
Monomial = tuple[Exps, Exps]

ONE_MONO: Monomial = ((), ())


class NotDivisible(ArithmeticError):
    pass


def _merge(a: Exps, b: Exps) -> Exps:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return (_merge(m1[0], m2[0]), _merge(m1[1], m2[1]))


def _reindex(exps: Exps, f: Callable[[int], int]) -> Exps:
    d: dict[int, int] = {}
    for i, e in exps:
        j = f(i)
        d[j] = d.get(j, 0) + e
    return tuple(sorted(d.items()))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps Monomial -> nonzero int."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls({ONE_MONO: c})

    @classmethod
    def x(cls, i: int) -> "Polynomial":
        return cls({(((i, 1),), ()): 1})

    @classmethod
    def y(cls, i: int) -> "Polynomial":
        return cls({((), ((i, 1),)): 1})

    @classmethod
    def xy(cls, i: int, j: int) -> "Polynomial":
        """The linear form x_i - y_j."""
        return cls({(((i, 1),), ()): 1, ((), ((j, 1),)): -1})

    @classmethod
    def yy(cls, i: int, j: int) -> "Polynomial":
        """The linear form y_i - y_j."""
        if i == j:
            return ZERO
        return cls({((), ((i, 1),)): 1, ((), ((j, 1),)): -1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e for _, e in xs) + sum(e for _, e in ys) for xs, ys in self.terms)

    def x_indices(self) -> set[int]:
        return {i for xs, _ in self.terms for i, _ in xs}

    def y_indices(self) -> set[int]:
        return {i for _, ys in self.terms for i, _ in ys}

    def map_indices(self, fx: Callable[[int], int] | None = None,
                    fy: Callable[[int], int] | None = None) -> "Polynomial":
        out: dict[Monomial, int] = {}
        for (xs, ys), c in self.terms.items():
            m = (_reindex(xs, fx) if fx else xs, _reindex(ys, fy) if fy else ys)
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    def substitute_x(self, mapping: Mapping[int, int]) -> "Polynomial":
        """Rename x_i to x_{mapping[i]} (indices absent from mapping are kept)."""
        return self.map_indices(fx=lambda i: mapping.get(i, i))

    def specialize_x_to_y(self) -> "Polynomial":
        out: dict[Monomial, int] = {}
        for (xs, ys), c in self.terms.items():
            m = ((), _merge(xs, ys))
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    def omega1(self, signed: bool = False) -> "Polynomial":
        """Reindex i -> 1 - i on both alphabets.

        With ``signed`` every variable also changes sign, which is the form
        under which positive linear forms go to positive linear forms.
        """
        f = lambda i: 1 - i
        out = self.map_indices(f, f)
        if not signed:
            return out
        terms = {}
        for (xs, ys), c in out.terms.items():
            deg = sum(e for _, e in xs) + sum(e for _, e in ys)
            terms[(xs, ys)] = -c if deg % 2 else c
        return Polynomial(terms)

    def set_zero(self, xs_zero: Callable[[int], bool] = lambda i: False,
                 ys_zero: Callable[[int], bool] = lambda i: False) -> "Polynomial":
        out: dict[Monomial, int] = {}
        for (xs, ys), c in self.terms.items():
            if any(xs_zero(i) for i, _ in xs) or any(ys_zero(i) for i, _ in ys):
                continue
            out[(xs, ys)] = out.get((xs, ys), 0) + c
        return Polynomial(out)

    def swap_x(self, i: int, j: int) -> "Polynomial":
        return self.map_indices(fx=lambda k: j if k == i else i if k == j else k)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0])

    def to_json(self) -> list[dict]:
        return [{"c": c, "x": {str(i): e for i, e in xs}, "y": {str(i): e for i, e in ys}}
                for (xs, ys), c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "Polynomial":
        terms = {}
        for t in data:
            xs = tuple(sorted((int(i), int(e)) for i, e in t.get("x", {}).items()))
            ys = tuple(sorted((int(i), int(e)) for i, e in t.get("y", {}).items()))
            terms[(xs, ys)] = terms.get((xs, ys), 0) + int(t["c"])
        return cls(terms)

    def text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (xs, ys), c in self.sorted_terms():
            factors = [_var("x", i, e) for i, e in xs] + [_var("y", i, e) for i, e in ys]
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Polynomial({self.text()})"


def _var(name: str, i: int, e: int) -> str:
    idx = f"({i})" if i < 0 else str(i)
    return f"{name}_{idx}" + (f"^{e}" if e != 1 else "")


ZERO = Polynomial()
ONE = Polynomial.const(1)


def product(polys: Iterable[Polynomial]) -> Polynomial:
    out = ONE
    for p in polys:
        out = out * p
    return out


def poly_sum(polys: Iterable[Polynomial]) -> Polynomial:
    out: dict[Monomial, int] = {}
    for p in polys:
        for m, c in p.terms.items():
            out[m] = out.get(m, 0) + c
    return Polynomial(out)


# ---------------------------------------------------------------- division

def _leading(p: Polynomial) -> tuple[Monomial, int]:
    m = max(p.terms, key=_order_key)
    return m, p.terms[m]


def _order_key(m: Monomial) -> tuple:
    # lex order: x variables before y, smaller index first, higher power first
    xs, ys = m
    key = []
    for tag, exps in ((0, xs), (1, ys)):
        for i, e in exps:
            key.append((-tag, -i, e))
    return tuple(key)


def _mono_div(m1: Monomial, m2: Monomial) -> Monomial | None:
    out = []
    for a, b in ((m1[0], m2[0]), (m1[1], m2[1])):
        d = dict(a)
        for i, e in b:
            if d.get(i, 0) < e:
                return None
            d[i] -= e
        out.append(tuple(sorted((i, e) for i, e in d.items() if e)))
    return (out[0], out[1])


def _divide_general(p: Polynomial, q: Polynomial) -> Polynomial:
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm_q, lc_q = _leading(q)
    rem = Polynomial(p.terms)
    quot: dict[Monomial, int] = {}
    while rem.terms:
        lm, lc = _leading(rem)
        m = _mono_div(lm, lm_q)
        if m is None or lc % lc_q:
            raise NotDivisible(f"{p} is not divisible by {q}")
        c = lc // lc_q
        quot[m] = quot.get(m, 0) + c
        rem = rem - Polynomial({m: c}) * q
    return Polynomial(quot)


def exact_divide(p: Polynomial, q: Polynomial | Iterable[Polynomial]) -> Polynomial:
    """Return r with r*q == p, raising NotDivisible otherwise.

    ``q`` may be a list of factors, in which case the division is iterated.
    """
    if isinstance(q, Polynomial):
        return _divide_general(p, q)
    r = p
    for f in q:
        r = _divide_general(r, f)
    return r


# ------------------------------------------------------------ linear forms

class FormType(Enum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3


@dataclass(frozen=True, order=False)
class LinearForm:
    """The form y_i - y_j with i preceding j in the order 1 < 2 < ... < -1 < 0."""

    i: int
    j: int

    def __post_init__(self):
        if not zless(self.i, self.j):
            raise ValueError(f"({self.i},{self.j}) is not ordered")

    def sort_key(self) -> tuple:
        return (zkey(self.i), zkey(self.j))

    def __lt__(self, other: "LinearForm") -> bool:
        return self.sort_key() < other.sort_key()

    def poly(self) -> Polynomial:
        return Polynomial.yy(self.i, self.j)

    def text(self) -> str:
        return f"(y_{_idx(self.i)} - y_{_idx(self.j)})"


def _idx(i: int) -> str:
    return f"({i})" if i < 0 else str(i)


def normalize_form(i: int, j: int) -> tuple[int, LinearForm]:
    """Write y_i - y_j as sign * LinearForm."""
    if i == j:
        raise ValueError("degenerate form")
    if zless(i, j):
        return 1, LinearForm(i, j)
    return -1, LinearForm(j, i)


def classify(f: LinearForm) -> FormType:
    i, j = f.i, f.j
    if 0 < i < j:
        return FormType.TYPE1
    if i < j <= 0:
        return FormType.TYPE2
    if j <= 0 < i:
        return FormType.TYPE3
    raise ValueError(f"{f} is not ordered")


def omega1_form(f: LinearForm) -> LinearForm:
    """Image of y_i - y_j under y_k -> -y_{1-k}, which is y_{1-j} - y_{1-i}."""
    sign, g = normalize_form(1 - f.j, 1 - f.i)
    if sign != 1:
        raise AssertionError(f"omega1 of {f} introduced a sign")
    return g


FactorProduct = tuple[LinearForm, ...]
Certificate = list[FactorProduct]


def factor_product(forms: Iterable[LinearForm]) -> FactorProduct:
    return tuple(sorted(forms))


def cert_product(a: Certificate, b: Certificate) -> Certificate:
    """Summand-wise multiset union over all pairs."""
    return [factor_product(s + t) for s in a for t in b]


def expand(cert: Certificate) -> Polynomial:
    return poly_sum(product(f.poly() for f in summand) for summand in cert)


def anderson_check(cert: Certificate) -> tuple[bool, str | None]:
    for k, summand in enumerate(cert):
        for f, mult in Counter(summand).items():
            limit = 2 if classify(f) is FormType.TYPE3 else 1
            if mult > limit:
                return False, f"summand {k}: {f.text()} has multiplicity {mult}"
    return True, None


def cert_to_json(cert: Certificate) -> list[list[list[int]]]:
    return [[[f.i, f.j] for f in summand] for summand in cert]


def cert_from_json(data) -> Certificate:
    return [factor_product(LinearForm(int(i), int(j)) for i, j in summand) for summand in data]


def cert_text(cert: Certificate) -> str:
    if not cert:
        return "0"
    return " + ".join("".join(f.text() for f in s) if s else "1" for s in cert)

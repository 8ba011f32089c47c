"""Permutations of the integers with finite support, and partitions."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class PermutationError(ValueError):
    pass


def _trim(lo: int, images: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    start = 0
    end = len(images)
    while start < end and images[start] == lo + start:
        start += 1
    while end > start and images[end - 1] == lo + end - 1:
        end -= 1
    if start == end:
        return 0, ()
    return lo + start, tuple(images[start:end])


@dataclass(frozen=True, init=False)
class Permutation:
    """A bijection of Z fixing every point outside ``[window_lo, window_hi]``.

    The stored window is always the minimal one, so equal maps compare equal.
    """

    window_lo: int
    images: tuple[int, ...]

    def __init__(self, images: Iterable[int] = (), window_lo: int = 1):
        imgs = tuple(int(v) for v in images)
        hi = window_lo + len(imgs) - 1
        if sorted(imgs) != list(range(window_lo, hi + 1)):
            raise PermutationError(
                f"{list(imgs)} is not a permutation of [{window_lo}, {hi}]")
        lo, imgs = _trim(window_lo, imgs)
        object.__setattr__(self, "window_lo", lo)
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls) -> "Permutation":
        return cls()

    @classmethod
    def from_map(cls, mapping: dict[int, int]) -> "Permutation":
        moved = [i for i, v in mapping.items() if i != v]
        if not moved:
            return cls()
        lo, hi = min(moved), max(moved)
        return cls([mapping.get(i, i) for i in range(lo, hi + 1)], lo)

    @classmethod
    def s(cls, i: int) -> "Permutation":
        return cls([i + 1, i], i)

    @classmethod
    def transposition(cls, a: int, b: int) -> "Permutation":
        if a == b:
            return cls()
        a, b = min(a, b), max(a, b)
        imgs = list(range(a, b + 1))
        imgs[0], imgs[-1] = b, a
        return cls(imgs, a)

    @classmethod
    def longest(cls, lo: int, hi: int) -> "Permutation":
        return cls(range(hi, lo - 1, -1), lo)

    @property
    def window_hi(self) -> int:
        return self.window_lo + len(self.images) - 1

    def is_identity(self) -> bool:
        return not self.images

    def support(self) -> tuple[int, int] | None:
        if not self.images:
            return None
        return self.window_lo, self.window_hi

    def __call__(self, i: int) -> int:
        k = i - self.window_lo
        if 0 <= k < len(self.images):
            return self.images[k]
        return i

    def one_line(self, lo: int, hi: int) -> list[int]:
        return [self(i) for i in range(lo, hi + 1)]

    def inverse(self) -> "Permutation":
        if not self.images:
            return self
        inv = [0] * len(self.images)
        for k, v in enumerate(self.images):
            inv[v - self.window_lo] = self.window_lo + k
        return Permutation(inv, self.window_lo)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition, ``(self * other)(i) = self(other(i))``."""
        bounds = [p.support() for p in (self, other) if p.images]
        if not bounds:
            return Permutation()
        lo = min(b[0] for b in bounds)
        hi = max(b[1] for b in bounds)
        return Permutation([self(other(i)) for i in range(lo, hi + 1)], lo)

    def swap_positions(self, a: int, b: int) -> "Permutation":
        """Right multiplication by the transposition of ``a`` and ``b``."""
        lo = min(a, b, self.window_lo if self.images else a)
        hi = max(a, b, self.window_hi if self.images else b)
        line = self.one_line(lo, hi)
        line[a - lo], line[b - lo] = line[b - lo], line[a - lo]
        return Permutation(line, lo)

    def length(self) -> int:
        imgs = self.images
        n = len(imgs)
        return sum(1 for i in range(n) for j in range(i + 1, n) if imgs[i] > imgs[j])

    def descents(self) -> frozenset[int]:
        lo = self.window_lo
        imgs = self.images
        return frozenset(lo + k for k in range(len(imgs) - 1) if imgs[k] > imgs[k + 1])

    def neg(self) -> "Permutation":
        """The involution sending s_i to s_{-i}: i -> 1 - w(1 - i)."""
        if not self.images:
            return self
        lo = 1 - self.window_hi
        return Permutation([1 - self(1 - i) for i in range(lo, lo + len(self.images))], lo)

    def standardize(self, a: int, n: int) -> "Permutation":
        if self.images and (self.window_lo < a or self.window_hi > n):
            raise PermutationError(f"{self} moves points outside [{a}, {n}]")
        return Permutation([self(i + a - 1) - a + 1 for i in range(1, n - a + 2)], 1)

    def in_window(self, a: int, n: int) -> bool:
        return not self.images or (a <= self.window_lo and self.window_hi <= n)

    def sort_key(self) -> tuple:
        return (len(self.images), self.window_lo, self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.sort_key() < other.sort_key()

    def text(self) -> str:
        if not self.images:
            return "[]@0"
        return "[" + ",".join(str(v) for v in self.images) + f"]@{self.window_lo}"

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Permutation({self.text()})"

    def to_json(self) -> dict:
        return {"window_lo": self.window_lo, "images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> "Permutation":
        return cls(data["images"], data["window_lo"])


_PERM_RE = re.compile(r"^\s*\[\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\]\s*(?:@\s*(-?\d+))?\s*$")


def parse_permutation(text: str) -> Permutation:
    """Parse ``"[v1,...,vk]@a"``; the window start defaults to 1."""
    m = _PERM_RE.match(text)
    if not m:
        raise PermutationError(f"cannot parse permutation {text!r}")
    body, lo = m.group(1), m.group(2)
    vals = [int(v) for v in body.split(",")] if body else []
    return Permutation(vals, int(lo) if lo is not None else 1)


def from_word(word: Iterable[int]) -> Permutation:
    """The product s_{i_1} s_{i_2} ... of simple transpositions."""
    w = Permutation()
    for i in word:
        w = w.swap_positions(i, i + 1)
    return w


def bruhat_le(u: Permutation, w: Permutation) -> bool:
    """Tableau criterion on the common window."""
    bounds = [p.support() for p in (u, w) if p.images]
    if not bounds:
        return True
    lo = min(b[0] for b in bounds)
    hi = max(b[1] for b in bounds)
    ul = u.one_line(lo, hi)
    wl = w.one_line(lo, hi)
    for k in range(1, len(ul)):
        if any(a > b for a, b in zip(sorted(ul[:k]), sorted(wl[:k]))):
            return False
    return True


@dataclass(frozen=True, init=False)
class Partition:
    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        ps = [int(p) for p in parts]
        while ps and ps[-1] == 0:
            ps.pop()
        if any(p <= 0 for p in ps) or any(ps[k] < ps[k + 1] for k in range(len(ps) - 1)):
            raise PermutationError(f"{ps} is not a partition")
        object.__setattr__(self, "parts", tuple(ps))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, k: int) -> int:
        return self.parts[k]

    def part(self, i: int) -> int:
        """lambda_i with 1-based index, zero past the end."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(sum(1 for p in self.parts if p >= i) for i in range(1, self.parts[0] + 1))

    def sort_key(self) -> tuple:
        return (len(self.parts), self.parts)

    def __lt__(self, other: "Partition") -> bool:
        return self.sort_key() < other.sort_key()

    def text(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __str__(self) -> str:
        return "(" + self.text() + ")"

    def __repr__(self) -> str:
        return f"Partition({self.parts})"


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()")
    if not text:
        return Partition()
    try:
        return Partition(int(p) for p in text.split(","))
    except ValueError as exc:
        raise PermutationError(f"cannot parse partition {text!r}") from exc


def partitions_of(n: int, max_part: int | None = None) -> list[Partition]:
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [Partition()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + rest.parts))
    return out


def grassmannian_of_partition(lam: Partition) -> Permutation:
    """The 0-Grassmannian permutation w_lambda."""
    k = len(lam)
    if k == 0:
        return Permutation()
    lo = 1 - k
    mapping = {i: i + lam.part(1 - i) for i in range(lo, 1)}
    used = set(mapping.values())
    hi = max(used)
    free = [v for v in range(lo, hi + 1) if v not in used]
    for t, v in enumerate(free):
        mapping[1 + t] = v
    return Permutation.from_map(mapping)


def partition_of_grassmannian(w: Permutation) -> Partition:
    if not w.descents() <= {0}:
        raise PermutationError(f"{w} is not 0-Grassmannian")
    if not w.images:
        return Partition()
    lo = min(w.window_lo, 0)
    return Partition(w(i) - i for i in range(0, lo - 1, -1))


def conjugate(lam: Partition) -> Partition:
    return lam.conjugate()


def zkey(i: int) -> tuple[bool, int]:
    """Sort key for the order 1 < 2 < ... < -2 < -1 < 0."""
    return (i <= 0, i)


def zless(i: int, j: int) -> bool:
    return zkey(i) < zkey(j)

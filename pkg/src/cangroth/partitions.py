"""Partitions, skew shapes, corner combinatorics and Maya diagrams."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cache
from typing import Iterable, Iterator


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))``. Use :meth:`padded` when a formula needs a
    fixed number of rows.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for i, p in enumerate(parts):
            if p < 0:
                raise ValueError(f"negative part {p} at position {i}")
            if i and p > parts[i - 1]:
                raise ValueError(f"parts not weakly decreasing at position {i}: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """Part ``i`` counted from 0, with zero padding."""
        return self[i] if 0 <= i < len(self) else 0

    def padded(self, n: int) -> tuple[int, ...]:
        if n < len(self):
            raise ValueError(f"cannot pad {self} to {n} rows")
        return tuple(self) + (0,) * (n - len(self))

    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def contains(self, other: "Partition") -> bool:
        return contains(self, other)

    def cells(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, p in enumerate(self) for j in range(p)]

    def corners(self) -> list[tuple[int, int]]:
        """Removable cells as 1-based (row, column)."""
        return [(i + 1, p) for i, p in enumerate(self) if self.part(i + 1) < p]

    def to_json(self) -> list[int]:
        return list(self)


def parse_partition(text: str | Iterable[int]) -> Partition:
    """Read ``"3,1"``, ``"[3,1]"``, ``""`` or an iterable of ints."""
    if not isinstance(text, str):
        return Partition(text)
    s = text.strip()
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad partition {text!r}: {exc}") from None
        return Partition(data)
    if not s:
        return Partition()
    parts = []
    for pos, tok in enumerate(s.split(",")):
        tok = tok.strip()
        if not tok.isdigit():
            raise ValueError(f"bad partition {text!r}: entry {pos} is {tok!r}")
        parts.append(int(tok))
    return Partition(parts)


@cache
def conjugate(lam: Partition) -> Partition:
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def contains(lam: Iterable[int], mu: Iterable[int]) -> bool:
    """True iff mu sits inside lam row by row."""
    lam, mu = Partition(lam), Partition(mu)
    return len(mu) <= len(lam) and all(m <= l for m, l in zip(mu, lam))


def intersection(lam: Partition, mu: Partition) -> Partition:
    return Partition(min(lam.part(i), mu.part(i)) for i in range(min(len(lam), len(mu))))


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition

    def cells(self) -> list[tuple[int, int]]:
        rows = max(len(self.outer), len(self.inner))
        return [
            (i + 1, j)
            for i in range(rows)
            for j in range(self.inner.part(i) + 1, self.outer.part(i) + 1)
        ]

    def size(self) -> int:
        return len(self.cells())


def corner_removals(mu: Partition) -> list[tuple[Partition, frozenset]]:
    """Every shape obtained from ``mu`` by deleting a subset of its corners."""
    mu = Partition(mu)
    corners = mu.corners()
    out = []
    for r in range(len(corners) + 1):
        for chosen in itertools.combinations(corners, r):
            parts = list(mu)
            for row, _ in chosen:
                parts[row - 1] -= 1
            out.append((Partition(parts), frozenset(chosen)))
    return out


def partitions_in_box(rows: int, cols: int) -> list[Partition]:
    """All partitions with at most ``rows`` parts, each at most ``cols``."""
    out = []

    def rec(prefix, remaining, bound):
        out.append(Partition(prefix))
        if remaining == 0:
            return
        for p in range(1, bound + 1):
            rec(prefix + [p], remaining - 1, p)

    rec([], rows, cols)
    return sorted(out, key=lambda p: (p.size(), tuple(p)))


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + tuple(rest))


def supersets(lam: Partition, max_size: int) -> list[Partition]:
    """Partitions containing ``lam`` with size at most ``max_size``."""
    lam = Partition(lam)
    out = []
    for n in range(lam.size(), max_size + 1):
        out.extend(p for p in partitions_of(n) if contains(p, lam))
    return out


def subsets(lam: Partition) -> list[Partition]:
    """Partitions contained in ``lam``."""
    lam = Partition(lam)
    out = []

    def rec(i, prefix, bound):
        if i == len(lam):
            out.append(Partition(prefix))
            return
        for p in range(min(lam[i], bound) + 1):
            rec(i + 1, prefix + [p], p)

    rec(0, [], lam.part(0))
    return sorted(set(out), key=lambda p: (p.size(), tuple(p)))


@dataclass(frozen=True)
class MayaWindow:
    """Occupied positions of a wedge state inside ``[lo, hi)``.

    Everything below ``lo`` is occupied and everything from ``hi`` up is
    empty. Bit ``p - lo`` of ``occupied`` records position ``p``.
    """

    lo: int
    hi: int
    occupied: int

    def positions(self) -> list[int]:
        return [p for p in range(self.hi - 1, self.lo - 1, -1) if self.occupied >> (p - self.lo) & 1]

    def charge(self) -> int:
        return bin(self.occupied).count("1") + self.lo

    def reflect(self) -> "MayaWindow":
        """Map position p to -1-p and swap particles with holes."""
        width = self.hi - self.lo
        bits = 0
        for k in range(width):
            if not self.occupied >> k & 1:
                bits |= 1 << (width - 1 - k)
        return MayaWindow(-self.hi, -self.lo, bits)

    def partition(self) -> Partition:
        pos = self.positions()
        c = self.charge()
        parts = [p + i + 1 - c for i, p in enumerate(pos)]
        return Partition(p for p in parts if p > 0)


def maya(lam: Partition, charge: int, window: tuple[int, int]) -> MayaWindow:
    lo, hi = window
    lam = Partition(lam)
    if lo > charge - len(lam) or (lam and hi <= lam[0] - 1 + charge) or hi <= charge - 1:
        raise ValueError(f"window [{lo},{hi}) too small for {tuple(lam)} at charge {charge}")
    bits = 0
    for i in range(1, charge - lo + 1):
        bits |= 1 << (lam.part(i - 1) - i + charge - lo)
    return MayaWindow(lo, hi, bits)

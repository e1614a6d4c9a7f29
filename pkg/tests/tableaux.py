"""Brute-force tableau sums used as independent oracles."""

from itertools import combinations, product

from cangroth.partitions import Partition
from cangroth.polynomial import Poly, x


def _cells(outer, inner):
    lam, mu = Partition(outer), Partition(inner)
    return [(i, j) for i in range(1, len(lam) + 1) for j in range(mu.part(i - 1) + 1, lam.part(i - 1) + 1)]


def _monomial(counts):
    p = Poly(1)
    for k, c in counts.items():
        p = p * x(k) ** c
    return p


def ssyt_sum(outer, inner, n):
    """Sum of x^T over semistandard tableaux of the skew shape."""
    cells = _cells(outer, inner)
    total = Poly()
    for fill in product(range(1, n + 1), repeat=len(cells)):
        T = dict(zip(cells, fill))
        if all(
            T.get((i, j - 1), 0) <= v and T.get((i - 1, j), 0) < v for (i, j), v in T.items()
        ):
            counts = {}
            for v in fill:
                counts[v] = counts.get(v, 0) + 1
            total = total + _monomial(counts)
    return total


def set_valued_sum(outer, n, t):
    """Sum of t^(|T| - |outer|) x^T over set-valued tableaux of a straight shape."""
    cells = _cells(outer, ())
    subsets = [frozenset(c) for k in range(1, n + 1) for c in combinations(range(1, n + 1), k)]
    total = Poly()
    for fill in product(subsets, repeat=len(cells)):
        T = dict(zip(cells, fill))
        ok = True
        for (i, j), s in T.items():
            left, up = T.get((i, j - 1)), T.get((i - 1, j))
            if left is not None and max(left) > min(s):
                ok = False
            if up is not None and max(up) >= min(s):
                ok = False
        if not ok:
            continue
        counts = {}
        for s in fill:
            for v in s:
                counts[v] = counts.get(v, 0) + 1
        total = total + _monomial(counts) * t ** (sum(len(s) for s in fill) - len(cells))
    return total


def rpp_sum(outer, n, t):
    """Sum of t^(|outer| - |wt|) x^wt over reverse plane partitions of a straight shape.

    The weight of an entry k is the number of columns containing k.
    """
    cells = _cells(outer, ())
    total = Poly()
    for fill in product(range(1, n + 1), repeat=len(cells)):
        T = dict(zip(cells, fill))
        if not all(T.get((i, j - 1), 0) <= v and T.get((i - 1, j), 0) <= v for (i, j), v in T.items()):
            continue
        counts = {}
        for j in {j for _, j in cells}:
            for v in {v for (_, jj), v in T.items() if jj == j}:
                counts[v] = counts.get(v, 0) + 1
        deg = sum(counts.values())
        total = total + _monomial(counts) * t ** (len(cells) - deg)
    return total

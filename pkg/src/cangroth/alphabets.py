"""Signed difference alphabets and supersymmetric h, e, p functions.

An alphabet is a formal difference X/Y of two finite multisets of atoms. An
atom is a variable with a sign, so the alpha alphabet A_i holds -alpha_1, ...,
-alpha_i and every evaluation is sign-correct without help from the caller.
Interval alphabets are differences of prefixes. When the bounds are reversed,
the result is a pure denominator, and interval additivity then holds at the
level of generating functions.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .polynomial import DEFAULT_GRADING, Poly, TruncSeries, Variable

Atom = tuple[Variable, int]


def _atom_key(atom: Atom):
    v, s = atom
    return (v.key(), s)


def atom_value(atom: Atom) -> Poly:
    v, s = atom
    return Poly.var(v) * s


@dataclass(frozen=True)
class DiffAlphabet:
    plus: tuple[Atom, ...] = ()
    minus: tuple[Atom, ...] = ()

    def __post_init__(self):
        p, m = Counter(self.plus), Counter(self.minus)
        common = p & m
        p, m = p - common, m - common
        object.__setattr__(self, "plus", tuple(sorted(p.elements(), key=_atom_key)))
        object.__setattr__(self, "minus", tuple(sorted(m.elements(), key=_atom_key)))

    def __or__(self, other: "DiffAlphabet") -> "DiffAlphabet":
        """Disjoint union of two differences."""
        return DiffAlphabet(self.plus + other.plus, self.minus + other.minus)

    def __truediv__(self, other: "DiffAlphabet") -> "DiffAlphabet":
        return DiffAlphabet(self.plus + other.minus, self.minus + other.plus)

    def __neg__(self) -> "DiffAlphabet":
        return DiffAlphabet(self.minus, self.plus)

    def __bool__(self) -> bool:
        return bool(self.plus or self.minus)

    def families(self) -> set[str]:
        return {v.family for v, _ in self.plus + self.minus}

    def __str__(self) -> str:
        def show(atoms):
            return "{" + ",".join(("-" if s < 0 else "") + v.name() for v, s in atoms) + "}"

        return show(self.plus) + "/" + show(self.minus)


EMPTY = DiffAlphabet()


def A(i: int) -> DiffAlphabet:
    """{-alpha_1, ..., -alpha_i}, empty for i <= 0."""
    return DiffAlphabet(tuple((Variable("alpha", k), -1) for k in range(1, i + 1)))


def B(i: int) -> DiffAlphabet:
    """{beta_1, ..., beta_i}, empty for i <= 0."""
    return DiffAlphabet(tuple((Variable("beta", k), 1) for k in range(1, i + 1)))


def xs(n: int, family: str = "x", start: int = 1) -> DiffAlphabet:
    return DiffAlphabet(tuple((Variable(family, k), 1) for k in range(start, start + n)))


def x_range(r: int, s: int, family: str = "x") -> DiffAlphabet:
    """The honest alphabet x_r, ..., x_s (empty when r > s)."""
    return DiffAlphabet(tuple((Variable(family, k), 1) for k in range(max(r, 1), s + 1)))


_PREFIXES = {"A": A, "B": B}


def interval(family: str, i: int, j: int, bounds: str = "[]") -> DiffAlphabet:
    """Interval alphabet such as A_[i,j] or B_[i,j).

    ``bounds`` is one of ``"[]"``, ``"[)"``, ``"(]"``, ``"()"``. The result
    is the prefix difference P_hi / P_lo, which is the honest interval when
    it is nonempty and a pure denominator when the bounds are reversed.
    """
    prefix = _PREFIXES[family]
    if len(bounds) != 2 or bounds[0] not in "[(" or bounds[1] not in "])":
        raise ValueError(f"bad bounds {bounds!r}")
    lo = i - 1 if bounds[0] == "[" else i
    hi = j if bounds[1] == "]" else j - 1
    return prefix(hi) / prefix(lo)


# symmetric functions of a plain list of atoms


@lru_cache(maxsize=None)
def _h_atoms(atoms: tuple[Atom, ...], k: int) -> Poly:
    if k < 0:
        return Poly()
    if k == 0:
        return Poly(1)
    if not atoms:
        return Poly()
    # h_k(a_1..a_r) = h_k(a_1..a_{r-1}) + a_r h_{k-1}(a_1..a_r)
    return _h_atoms(atoms[:-1], k) + atom_value(atoms[-1]) * _h_atoms(atoms, k - 1)


@lru_cache(maxsize=None)
def _e_atoms(atoms: tuple[Atom, ...], k: int) -> Poly:
    if k < 0 or k > len(atoms):
        return Poly()
    if k == 0:
        return Poly(1)
    return _e_atoms(atoms[:-1], k) + atom_value(atoms[-1]) * _e_atoms(atoms[:-1], k - 1)


def _with_x(S: DiffAlphabet, n: int) -> DiffAlphabet:
    return xs(n) | S if n else S


def hsym(m: int, S: DiffAlphabet = EMPTY, n: int = 0) -> Poly:
    """h_m of (x_1..x_n together with S.plus) / S.minus."""
    return _hsym(m, _with_x(S, n))


@lru_cache(maxsize=None)
def _hsym(m: int, S: DiffAlphabet) -> Poly:
    if m < 0:
        return Poly()
    total = Poly()
    for k in range(max(0, m - len(S.minus)), m + 1):
        term = _h_atoms(S.plus, k) * _e_atoms(S.minus, m - k)
        total = total + term if (m - k) % 2 == 0 else total - term
    return total


def esym(m: int, S: DiffAlphabet = EMPTY, n: int = 0) -> Poly:
    """e_m of (x_1..x_n together with S.plus) / S.minus."""
    return _esym(m, _with_x(S, n))


@lru_cache(maxsize=None)
def _esym(m: int, S: DiffAlphabet) -> Poly:
    if m < 0:
        return Poly()
    total = Poly()
    for k in range(0, min(m, len(S.plus)) + 1):
        term = _e_atoms(S.plus, k) * _h_atoms(S.minus, m - k)
        total = total + term if (m - k) % 2 == 0 else total - term
    return total


def psym(m: int, S: DiffAlphabet = EMPTY, n: int = 0) -> Poly:
    """Power sum p_m, additive under union and negated by swapping sides."""
    S = _with_x(S, n)
    return sum((atom_value(a) ** m for a in S.plus), Poly()) - sum(
        (atom_value(a) ** m for a in S.minus), Poly()
    )


# the infinite-support difference X (-) Y


def _check_graded(Y: DiffAlphabet, X: DiffAlphabet, grading) -> None:
    if not Y.families() <= set(grading):
        raise ValueError(f"shift alphabet {Y} has ungraded atoms for grading {sorted(grading)}")
    if X.families() & set(grading):
        raise ValueError(f"base alphabet {X} has graded atoms")


def h_ominus(
    m: int, X: DiffAlphabet, Y: DiffAlphabet, cutoff: int, grading=DEFAULT_GRADING
) -> TruncSeries:
    """sum over b >= 0 of h_{m+b}(X) h_b(Y), through grading-degree ``cutoff``.

    Every atom of Y must be graded, so h_b(Y) has degree exactly b.
    """
    _check_graded(Y, X, grading)
    total = Poly()
    for bb in range(max(0, -m), cutoff + 1):
        hb = _hsym(bb, Y)
        if hb:
            total = total + _hsym(m + bb, X) * hb
    terminates = (not Y.plus and len(Y.minus) <= cutoff) or (
        not X.plus and m + cutoff >= len(X.minus)
    )
    return TruncSeries(total, cutoff, grading, terminates)


def e_ominus(
    m: int, X: DiffAlphabet, Y: DiffAlphabet, cutoff: int, grading=DEFAULT_GRADING
) -> TruncSeries:
    """sum over b >= 0 of e_{m+b}(X) e_b(Y), through grading-degree ``cutoff``."""
    _check_graded(Y, X, grading)
    total = Poly()
    for bb in range(max(0, -m), cutoff + 1):
        eb = _esym(bb, Y)
        if eb:
            total = total + _esym(m + bb, X) * eb
    terminates = (not Y.minus and len(Y.plus) <= cutoff) or (
        not X.minus and m + cutoff >= len(X.plus)
    )
    return TruncSeries(total, cutoff, grading, terminates)


# coefficient extraction from products of binomial factors


@dataclass(frozen=True)
class Factor:
    """The factor (const + coef * w**direction) ** power.

    ``direction`` is +1 for a power series in w and -1 for a series in 1/w;
    ``power`` is +1 (numerator) or -1 (denominator); ``const`` must be a unit.
    """

    coef: Poly
    direction: int = 1
    power: int = 1
    const: int = 1

    def __post_init__(self):
        if self.const not in (1, -1):
            raise ValueError(f"factor constant term {self.const} is not a unit")
        if self.direction not in (1, -1) or self.power not in (1, -1):
            raise ValueError("direction and power must be +1 or -1")


def linear_factors(atoms: Iterable[Atom], direction: int, power: int, sign: int = -1) -> list[Factor]:
    """Factors (1 + sign*a*w^direction)^power over the atoms a."""
    return [Factor(atom_value(at) * sign, direction, power) for at in atoms]


def _series_mul(P: dict, Q: dict, grading, cutoff, max_power=None) -> dict:
    out: dict[int, Poly] = {}
    for i, p in P.items():
        for j, q in Q.items():
            k = i + j
            if max_power is not None and k > max_power:
                continue
            prod = p.mul_trunc(q, grading, cutoff)
            if prod:
                out[k] = out[k] + prod if k in out else prod
    return {k: v for k, v in out.items() if v}


def coeff_of(
    factors: Sequence[Factor],
    m: int,
    cutoff: int,
    shift: int = 0,
    grading=DEFAULT_GRADING,
) -> TruncSeries:
    """Coefficient of w^m in w^shift times the product of ``factors``.

    Each factor is expanded as a formal series in its own direction. Factors
    in 1/w must have graded coefficients, which bounds how many powers of 1/w
    survive the truncation.
    """
    grading = frozenset(grading)
    sign = 1
    neg: dict[int, Poly] = {0: Poly(1)}
    pos_factors = []
    dropped = False
    for f in factors:
        if f.power == -1 and f.const == -1:
            sign = -sign
        coef = f.coef * f.const
        if f.direction == 1:
            pos_factors.append((coef, f.power))
            continue
        if coef and coef.min_degree(grading) < 1:
            raise ValueError("a factor in 1/w needs a graded coefficient to be truncated")
        if f.power == 1:
            series = {0: Poly(1), 1: coef}
        else:
            series, k, term = {}, 0, Poly(1)
            while k <= cutoff and term:
                series[k] = term
                term = term * (-coef)
                k += 1
            dropped = dropped or bool(term)
        neg = _series_mul(neg, series, grading, cutoff)
    jmax = max(neg)
    top = m - shift + jmax
    if top < 0:
        return TruncSeries(Poly(), cutoff, grading, not dropped)
    pos: dict[int, Poly] = {0: Poly(1)}
    for coef, power in pos_factors:
        if power == 1:
            series = {0: Poly(1), 1: coef}
        else:
            series, term = {}, Poly(1)
            for k in range(top + 1):
                series[k] = term
                term = term * (-coef)
            dropped = dropped or (bool(coef) and coef.min_degree(grading) > 0)
        pos = _series_mul(pos, series, grading, cutoff, top)
    total = Poly()
    for j, nj in neg.items():
        pj = pos.get(m - shift + j)
        if pj:
            total = total + pj.mul_trunc(nj, grading, cutoff)
    return TruncSeries(total * sign, cutoff, grading, not dropped)

"""Jacobi-Trudi style evaluators for G, G-double-slash and g.

G and G-double-slash are formal power series in alpha and beta once finitely
many x variables are fixed, so they come back as TruncSeries graded by
(alpha, beta)-degree. Every term up to the cutoff is exact because all
ingredients have nonnegative (alpha, beta)-degree. g is a polynomial and is
returned as a Poly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .alphabets import (
    A,
    B,
    EMPTY,
    DiffAlphabet,
    Factor,
    atom_value,
    coeff_of,
    e_ominus,
    esym,
    h_ominus,
    hsym,
    interval,
    x_range,
    xs,
)
from .partitions import Partition, conjugate
from .polynomial import DEFAULT_GRADING, Poly, TruncSeries, Variable, a, b, determinant, x

VARIANTS = ("G", "Gds", "g")
FORMS = ("h", "e")


class TruncationError(RuntimeError):
    """A truncated result kept changing as the cutoff grew."""

    def __init__(self, message: str, cutoff: int):
        super().__init__(message)
        self.cutoff = cutoff


@dataclass(frozen=True)
class JTRequest:
    outer: Partition
    inner: Partition
    nvars: int
    variant: str = "G"
    form: str = "h"
    cutoff: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "outer", Partition(self.outer))
        object.__setattr__(self, "inner", Partition(self.inner))
        if self.nvars < 0:
            raise ValueError("nvars must be nonnegative")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.form not in FORMS:
            raise ValueError(f"form must be one of {FORMS}")


def default_cutoff(outer: Partition, inner: Partition, nvars: int) -> int:
    return nvars * Partition(outer).part(0) + Partition(inner).size()


def _rows(lam: Partition, mu: Partition, pad: int) -> tuple[int, tuple, tuple]:
    ell = max(len(lam), len(mu)) + pad
    return ell, lam.padded(ell), mu.padded(ell)


def _cols(lam: Partition, mu: Partition, pad: int) -> tuple[int, tuple, tuple]:
    lc, mc = conjugate(lam), conjugate(mu)
    ell = max(len(lc), len(mc)) + pad
    return ell, lc.padded(ell), mc.padded(ell)


def beta_prefactor(rows: int, nvars: int) -> Poly:
    """prod over i <= rows, j <= nvars of (1 - beta_i x_j)."""
    p = Poly(1)
    for i in range(1, rows + 1):
        for j in range(1, nvars + 1):
            p = p * (1 - b(i) * x(j))
    return p


def alpha_inverse_prefactor(cols: int, nvars: int, cutoff: int, grading=DEFAULT_GRADING) -> TruncSeries:
    """prod over i <= cols, j <= nvars of 1/(1 + alpha_i x_j), truncated."""
    total = TruncSeries(Poly(1), cutoff, grading, True)
    for i in range(1, cols + 1):
        for j in range(1, nvars + 1):
            r = -a(i) * x(j)
            geo = sum((r**k for k in range(cutoff + 1)), Poly())
            total = total * TruncSeries(geo, cutoff, grading, False)
    return total


# g


def jt_g(outer, inner, nvars: int, form: str = "h", pad: int = 0) -> Poly:
    lam, mu = Partition(outer), Partition(inner)
    if form == "h":
        ell, L, M = _rows(lam, mu, pad)
        mat = [
            [
                hsym(
                    L[i - 1] - M[j - 1] - i + j,
                    interval("A", L[i - 1], M[j - 1], "[]") | interval("B", j, i, "[)"),
                    nvars,
                )
                for j in range(1, ell + 1)
            ]
            for i in range(1, ell + 1)
        ]
    elif form == "e":
        ell, L, M = _cols(lam, mu, pad)
        mat = [
            [
                esym(
                    L[i - 1] - M[j - 1] - i + j,
                    interval("A", i, j, "[)") | interval("B", M[j - 1], L[i - 1], "()"),
                    nvars,
                )
                for j in range(1, ell + 1)
            ]
            for i in range(1, ell + 1)
        ]
    else:
        raise ValueError(f"unknown form {form!r}")
    return determinant(mat)


# G and G-double-slash


def _shift_h(variant: str, Li: int, Mj: int, i: int, j: int) -> DiffAlphabet:
    if variant == "G":
        return interval("A", Mj, Li, "(]") | interval("B", i, j, "[]")
    return interval("A", Mj, Li, "[]") | interval("B", i, j, "[)")


@lru_cache(maxsize=None)
def _ominus(form: str, m: int, nvars: int, shift: DiffAlphabet, cutoff: int) -> TruncSeries:
    f = h_ominus if form == "h" else e_ominus
    return f(m, xs(nvars), shift, cutoff)


def _split_entry(
    form: str, N: int, ket: DiffAlphabet, bra: DiffAlphabet, cap: int | None, nvars: int, cutoff: int
) -> TruncSeries:
    """One determinant entry with the shift alphabet split as ket / bra.

    The bra part is expanded by hand so its sum can stop at ``cap``: the
    dressed bra fermion only pairs with the vacuum up to that many steps.
    """
    total = TruncSeries(Poly(), cutoff, DEFAULT_GRADING, True)
    top = cutoff if cap is None else min(cap, cutoff)
    for k in range(top + 1):
        c = esym(k, bra) if form == "h" else hsym(k, bra)
        if not c:
            continue
        term = _ominus(form, N + k, nvars, ket, cutoff) * c
        total = total + term if k % 2 == 0 else total - term
    return total


def _alphabets_h(variant: str, Li: int, Mj: int, i: int, j: int, ell: int):
    ket = A(Li) | interval("B", i, ell, "[]")
    if variant == "G":
        return ket, A(Mj) | interval("B", j, ell, "(]"), None
    return ket, A(Mj - 1) | interval("B", j, ell, "[]"), Mj - j + ell


def _alphabets_e(variant: str, Li: int, Mj: int, i: int, j: int, ell: int):
    if variant == "G":
        return A(i - 1) / B(Li), A(j) / B(Mj), None
    # the top alpha is carried by the bra so the truncated sum still sees it
    return A(i - 1) / B(Li) / A(ell), A(j - 1) / B(Mj - 1) / A(ell), Mj - j + ell


def _series_det(mat, cutoff: int) -> TruncSeries:
    return determinant(mat) if mat else TruncSeries(Poly(1), cutoff, DEFAULT_GRADING, True)


def jt_G_raw(
    outer, inner, nvars: int, variant: str = "G", form: str = "h", cutoff: int | None = None, pad: int = 0
) -> TruncSeries:
    """G or G-double-slash through (alpha, beta)-degree ``cutoff``."""
    lam, mu = Partition(outer), Partition(inner)
    if variant not in ("G", "Gds"):
        raise ValueError(f"variant must be G or Gds, got {variant!r}")
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}")
    if cutoff is None:
        cutoff = default_cutoff(lam, mu, nvars)
    ell, L, M = (_rows if form == "h" else _cols)(lam, mu, pad)
    split = _alphabets_h if form == "h" else _alphabets_e
    mat = []
    for i in range(1, ell + 1):
        row = []
        for j in range(1, ell + 1):
            ket, bra, cap = split(variant, L[i - 1], M[j - 1], i, j, ell)
            row.append(_split_entry(form, L[i - 1] - M[j - 1] - i + j, ket, bra, cap, nvars, cutoff))
        mat.append(row)
    det = _series_det(mat, cutoff)
    if form == "h":
        return det * beta_prefactor(ell, nvars)
    return det * alpha_inverse_prefactor(ell, nvars, cutoff)


def stabilize(
    compute: Callable[[int], TruncSeries], cutoff: int, max_cutoff: int | None = None
) -> TruncSeries:
    """Accept a truncated result once two more degrees add nothing new.

    The result is recomputed at ``cutoff + 2``; if no term of degree above
    ``cutoff`` appears, the body is returned flagged exact. Otherwise the
    cutoff is doubled, up to ``max_cutoff``, before giving up.
    """
    if max_cutoff is None:
        max_cutoff = max(4 * cutoff, cutoff + 4)
    c = cutoff
    while True:
        s = compute(c + 2)
        if s.body.degree(s.grading) <= c:
            return TruncSeries(s.body, c, s.grading, True)
        nxt = max(2 * c, c + 1)
        if nxt > max_cutoff:
            raise TruncationError(
                f"result still changing at cutoff {c} (tried up to {c + 2}); it may be a genuine series",
                c,
            )
        c = nxt


def jt_G(req: JTRequest, stable: bool = False, max_cutoff: int | None = None) -> TruncSeries:
    cutoff = req.cutoff if req.cutoff is not None else default_cutoff(req.outer, req.inner, req.nvars)

    def compute(c):
        return jt_G_raw(req.outer, req.inner, req.nvars, req.variant, req.form, c)

    if stable:
        return stabilize(compute, cutoff, max_cutoff)
    return compute(cutoff)


def evaluate(variant: str, outer, inner, nvars: int, form: str = "h", cutoff: int | None = None):
    """Dispatch to jt_g or jt_G_raw."""
    if variant == "g":
        return jt_g(outer, inner, nvars, form)
    return jt_G_raw(outer, inner, nvars, variant, form, cutoff)


def schur_skew(outer, inner=(), S: DiffAlphabet = EMPTY, nvars: int = 0, pad: int = 0) -> Poly:
    """det[h_{lam_i - mu_j - i + j}] over the alphabet x_1..x_n with S."""
    lam, mu = Partition(outer), Partition(inner)
    ell, L, M = _rows(lam, mu, pad)
    return determinant(
        [[hsym(L[i] - M[j] - i + j, S, nvars) for j in range(ell)] for i in range(ell)]
    )


# single-row and flagged Grothendieck polynomials


@lru_cache(maxsize=None)
def single_row_G(k: int, nvars: int, beta: Variable, flag: tuple[int, int] | None = None) -> Poly:
    """Coefficient of z^k in (1 - beta/z)^{-1} prod_{j=r}^{s} (1 - beta x_j)/(1 - x_j z).

    The 1/z factor is expanded in powers of 1/z. The result is a polynomial
    whose beta-degree is at most max(s - r, -k); two extra degrees are
    computed and must vanish.
    """
    r, s = flag if flag is not None else (1, nvars)
    if not 1 <= r or s > nvars:
        raise ValueError(f"flag {(r, s)} outside 1..{nvars}")
    bound = max(s - r, -k, 0)
    cutoff = bound + 2
    grading = frozenset({beta.family})
    bv = Poly.var(beta)
    factors = [Factor(-bv, -1, -1)] + [Factor(-x(j), 1, -1) for j in range(r, s + 1)]
    series = coeff_of(factors, k, cutoff, grading=grading)
    pref = Poly(1)
    for j in range(r, s + 1):
        pref = pref * (1 - bv * x(j))
    full = series.body.mul_trunc(pref, grading, cutoff)
    if full.degree(grading) > bound:
        raise TruncationError(f"single-row series for k={k} did not terminate", cutoff)
    return full


def _beta_var(i: int) -> Variable:
    return Variable("beta", i)


def det_formula_G(
    outer, inner, nvars: int, variant: str = "G", cutoff: int | None = None, ell: int | None = None
) -> TruncSeries:
    """Determinant of single-row Grothendieck polynomials; needs ell > len(outer)."""
    lam, mu = Partition(outer), Partition(inner)
    if cutoff is None:
        cutoff = default_cutoff(lam, mu, nvars)
    if ell is None:
        ell = max(len(lam) + 1, len(mu))
    if ell <= len(lam) or ell < len(mu):
        raise ValueError("need ell > len(outer) and ell >= len(inner)")
    L, M = lam.padded(ell), mu.padded(ell)
    mat = []
    for i in range(1, ell + 1):
        F = A(L[i - 1]) | interval("B", i, ell, "(]")
        row = []
        for j in range(1, ell + 1):
            if variant == "G":
                E = A(M[j - 1]) | interval("B", j, ell, "(]")
                cap = None
            else:
                E = A(M[j - 1] - 1) | interval("B", j, ell, "[]")
                cap = M[j - 1] - j + ell
            N = L[i - 1] - M[j - 1] - i + j
            total = Poly()
            for m in range(cutoff + 1):
                coef = Poly()
                for k in range(m + 1 if cap is None else min(m, cap) + 1):
                    term = esym(k, E) * hsym(m - k, F)
                    coef = coef + term if k % 2 == 0 else coef - term
                if coef:
                    total = total + coef.mul_trunc(
                        single_row_G(N + m, nvars, _beta_var(i)), DEFAULT_GRADING, cutoff
                    )
            row.append(TruncSeries.make(total, cutoff))
        mat.append(row)
    return _series_det(mat, cutoff)


def check_flags(lam: Partition, mu: Partition, r: Sequence[int], s: Sequence[int], nvars: int) -> None:
    if len(r) != len(s):
        raise ValueError("flag vectors must have equal length")
    ell = len(r)
    if ell < max(len(lam), len(mu)):
        raise ValueError(f"flags need at least {max(len(lam), len(mu))} entries")
    for i in range(ell):
        if not 1 <= r[i] <= s[i] <= nvars:
            raise ValueError(f"flag entry {i + 1}: need 1 <= r <= s <= {nvars}, got r={r[i]}, s={s[i]}")
    for i in range(ell - 1):
        if mu.part(i) < lam.part(i + 1) and (r[i] > r[i + 1] or s[i] > s[i + 1]):
            raise ValueError(f"flags not admissible at rows {i + 1},{i + 2}")


def flagged_G(outer, inner, nvars: int, r: Sequence[int], s: Sequence[int], cutoff: int | None = None) -> TruncSeries:
    """Row-flagged G with x_{[r_j, s_i]} in entry (i, j)."""
    lam, mu = Partition(outer), Partition(inner)
    check_flags(lam, mu, r, s, nvars)
    if cutoff is None:
        cutoff = default_cutoff(lam, mu, nvars)
    ell = len(r)
    L, M = lam.padded(ell), mu.padded(ell)
    mat = [
        [
            h_ominus(
                L[i - 1] - M[j - 1] - i + j,
                x_range(r[j - 1], s[i - 1]),
                _shift_h("G", L[i - 1], M[j - 1], i, j),
                cutoff,
            )
            for j in range(1, ell + 1)
        ]
        for i in range(1, ell + 1)
    ]
    pref = Poly(1)
    for i in range(1, ell + 1):
        for k in range(r[i - 1], s[i - 1] + 1):
            pref = pref * (1 - b(i) * x(k))
    return determinant(mat) * pref


def flagged_G_rowsum(outer, inner, nvars: int, s: Sequence[int], cutoff: int | None = None) -> TruncSeries:
    """Flagged G with all lower flags 1, as a determinant of flagged single-row polynomials."""
    lam, mu = Partition(outer), Partition(inner)
    check_flags(lam, mu, [1] * len(s), s, nvars)
    if cutoff is None:
        cutoff = default_cutoff(lam, mu, nvars)
    ell = len(s)
    L, M = lam.padded(ell), mu.padded(ell)
    mat = []
    for i in range(1, ell + 1):
        row = []
        for j in range(1, ell + 1):
            S = interval("A", M[j - 1], L[i - 1], "(]") | interval("B", i, j, "(]")
            N = L[i - 1] - M[j - 1] - i + j
            total = Poly()
            for m in range(cutoff + 1):
                hm = hsym(m, S)
                if hm:
                    total = total + hm.mul_trunc(
                        single_row_G(N + m, nvars, _beta_var(i), (1, s[i - 1])), DEFAULT_GRADING, cutoff
                    )
            row.append(TruncSeries.make(total, cutoff))
        mat.append(row)
    return _series_det(mat, cutoff)


# contour-integral forms: residues at the origin become coefficient extraction

INTEGRAL_FORMULAS = ("g_h", "G_h", "Gds_h", "g_e", "G_e", "Gds_e")


def _alpha_factors(upto: int, direction: int, power: int, sign: int) -> list[Factor]:
    return [Factor(a(k) * sign, direction, power) for k in range(1, upto + 1)]


def _beta_factors(upto: int, direction: int, power: int, sign: int) -> list[Factor]:
    return [Factor(b(k) * sign, direction, power) for k in range(1, upto + 1)]


def _integrand(which: str, Li: int, Mj: int, i: int, j: int, nvars: int) -> list[Factor]:
    if which == "g_h":
        return (
            _alpha_factors(Li - 1, 1, 1, 1)
            + _beta_factors(j - 1, 1, 1, -1)
            + _alpha_factors(Mj, 1, -1, 1)
            + _beta_factors(i - 1, 1, -1, -1)
            + [Factor(-x(m), 1, -1) for m in range(1, nvars + 1)]
        )
    if which == "G_h":
        return (
            _alpha_factors(Mj, -1, 1, 1)
            + _beta_factors(i - 1, -1, 1, -1)
            + _alpha_factors(Li, -1, -1, 1)
            + _beta_factors(j, -1, -1, -1)
            + [Factor(-x(m), 1, -1) for m in range(1, nvars + 1)]
        )
    if which == "g_e":
        return (
            _alpha_factors(j - 1, 1, 1, -1)
            + _beta_factors(Li - 1, 1, 1, 1)
            + [Factor(x(m), 1, 1) for m in range(1, nvars + 1)]
            + _alpha_factors(i - 1, 1, -1, -1)
            + _beta_factors(Mj, 1, -1, 1)
        )
    if which == "G_e":
        return (
            _alpha_factors(i - 1, -1, 1, -1)
            + _beta_factors(Mj, -1, 1, 1)
            + [Factor(x(m), 1, 1) for m in range(1, nvars + 1)]
            + _alpha_factors(j, -1, -1, -1)
            + _beta_factors(Li, -1, -1, 1)
        )
    raise ValueError(f"unknown integral formula {which!r}; choose from {INTEGRAL_FORMULAS}")


def _ket_factors(form: str, ket: DiffAlphabet, nvars: int) -> list[Factor]:
    """Generating function in w whose coefficients are the shifted h or e of x and ``ket``."""
    if form == "h":
        return (
            [Factor(-atom_value(z), -1, -1) for z in ket.plus]
            + [Factor(-atom_value(z), -1, 1) for z in ket.minus]
            + [Factor(-x(m), 1, -1) for m in range(1, nvars + 1)]
        )
    return (
        [Factor(atom_value(z), -1, 1) for z in ket.plus]
        + [Factor(atom_value(z), -1, -1) for z in ket.minus]
        + [Factor(x(m), 1, 1) for m in range(1, nvars + 1)]
    )


def _truncated_integral_entry(form: str, N: int, ket, bra, cap: int, nvars: int, cutoff: int) -> TruncSeries:
    # the bra numerator is a polynomial in 1/w cut at degree ``cap``
    factors = _ket_factors(form, ket, nvars)
    total = TruncSeries(Poly(), cutoff, DEFAULT_GRADING, True)
    for k in range(min(cap, cutoff) + 1):
        c = esym(k, bra) if form == "h" else hsym(k, bra)
        if c:
            term = coeff_of(factors, N + k, cutoff) * c
            total = total + term if k % 2 == 0 else total - term
    return total


def integral_jt(outer, inner, nvars: int, which: str, cutoff: int | None = None, pad: int = 0):
    """Evaluate one of the six contour-integral determinants.

    The g forms come back as a Poly; the G forms as a TruncSeries.
    """
    lam, mu = Partition(outer), Partition(inner)
    if which not in INTEGRAL_FORMULAS:
        raise ValueError(f"unknown integral formula {which!r}; choose from {INTEGRAL_FORMULAS}")
    g_side = which.startswith("g")
    if cutoff is None:
        cutoff = max(lam.size() - mu.size(), 0) if g_side else default_cutoff(lam, mu, nvars)
    if which.endswith("_h"):
        ell, L, M = _rows(lam, mu, pad)
    else:
        ell, L, M = _cols(lam, mu, pad)
    grading = DEFAULT_GRADING
    mat = []
    for i in range(1, ell + 1):
        row = []
        for j in range(1, ell + 1):
            N = L[i - 1] - M[j - 1] - i + j
            if which.startswith("Gds"):
                form = which[-1]
                ket, bra, cap = (_alphabets_h if form == "h" else _alphabets_e)("Gds", L[i - 1], M[j - 1], i, j, ell)
                row.append(_truncated_integral_entry(form, N, ket, bra, cap, nvars, cutoff))
                continue
            factors = _integrand(which, L[i - 1], M[j - 1], i, j, nvars)
            if g_side:
                # every factor is a polynomial or power series in w, so a
                # large enough grading cutoff leaves the coefficient exact
                big = N + sum(1 for f in factors) + 1
                row.append(coeff_of(factors, N, max(big, 0), grading=grading).body)
            else:
                row.append(coeff_of(factors, N, cutoff, grading=grading))
        mat.append(row)
    if g_side:
        return determinant(mat)
    det = _series_det(mat, cutoff)
    if which.endswith("_h"):
        return det * beta_prefactor(ell, nvars)
    return det * alpha_inverse_prefactor(ell, nvars, cutoff)

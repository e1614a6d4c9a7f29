"""Identity sweeps over small shapes.

Each suite returns a :class:`Report` listing every failing case. Suites
that work with truncated series run a second pass at a larger bound unless
``stability`` is off.

G-side values are compared through a fixed total degree in the variables.
Every G is homogeneous of degree |outer| - |inner| once alpha and beta count
as degree -1, so computing it through (alpha, beta)-degree
``degree - |outer| + |inner|`` yields every term of variable-degree at most
``degree`` exactly.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .alphabets import A, B, hsym
from .expansions import (
    corner_expand,
    map_coefficients,
    omega,
    reconstruct_G,
    reconstruct_g,
    schur_expand,
    swap_parameters,
    coeff_matrix,
)
from .fockspace import (
    default_window,
    fock_matrix_element,
    flagged_fermion_G,
    lower_ket,
    upper_ket,
)
from .grothendieck import (
    INTEGRAL_FORMULAS,
    det_formula_G,
    flagged_G,
    flagged_G_rowsum,
    integral_jt,
    jt_G_raw,
    jt_g,
)
from .partitions import Partition, conjugate, contains, intersection, partitions_in_box, subsets, supersets
from .polynomial import DEFAULT_GRADING, Poly, Variable, determinant

XY = frozenset({"x", "y"})


@dataclass
class Report:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **case) -> None:
        self.failures.append(case)

    def sort(self) -> None:
        self.failures.sort(key=_failure_key)

    def minimal(self) -> dict | None:
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {"suite": self.suite, "cases": self.cases, "failures": self.failures}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _failure_key(case: dict):
    size = sum(sum(v) for v in case.values() if isinstance(v, list) and all(isinstance(t, int) for t in v))
    return (size, json.dumps(case, sort_keys=True))


def _shape(p) -> list[int]:
    return list(Partition(p))


def _sample(cases: list, sample: int | None, seed: int) -> list:
    if sample is None or sample >= len(cases):
        return cases
    picked = random.Random(seed).sample(range(len(cases)), sample)
    return [cases[i] for i in sorted(picked)]


# building blocks with variable-degree truncation


def _flip_x(p: Poly) -> Poly:
    return p.substitute({v: -Poly.var(v) for v in p.variables() if v.family == "x"})


def _move(p: Poly, family: str, offset: int) -> Poly:
    if family == "x" and offset == 0:
        return p
    return p.rename({v: Variable(family, v.index + offset) for v in p.variables() if v.family == "x"})


@lru_cache(maxsize=None)
def _G_low(variant: str, lam: Partition, mu: Partition, nvars: int, degree: int, conj: bool) -> Poly:
    """Variable-degree <= degree part of G (conj: shapes transposed, alpha and beta swapped)."""
    if conj:
        lam, mu = conjugate(lam), conjugate(mu)
    cutoff = degree - lam.size() + mu.size()
    if cutoff < 0 or (variant == "Gds" and not contains(lam, mu)):
        return Poly()
    p = jt_G_raw(lam, mu, nvars, variant, "h", cutoff).body
    return swap_parameters(p) if conj else p


@lru_cache(maxsize=None)
def _g(lam: Partition, mu: Partition, nvars: int, conj: bool) -> Poly:
    if conj:
        lam, mu = conjugate(lam), conjugate(mu)
    if not contains(lam, mu):
        return Poly()
    p = jt_g(lam, mu, nvars)
    return swap_parameters(p) if conj else p


def G_part(variant, lam, mu, nvars, degree, conj=False, negate=False, family="x", offset=0) -> Poly:
    p = _G_low(variant, Partition(lam), Partition(mu), nvars, degree, conj)
    if negate:
        p = _flip_x(p)
    return _move(p, family, offset)


def g_part(lam, mu, nvars, conj=False, negate=False, family="x", offset=0) -> Poly:
    p = _g(Partition(lam), Partition(mu), nvars, conj)
    if negate:
        p = _flip_x(p)
    return _move(p, family, offset)


def kernel(n: int, m: int, degree: int, kind: str) -> Poly:
    """prod 1/(1 - x_i y_j) ("cauchy") or prod (1 + x_i y_j) ("dual"), through degree."""
    total = Poly(1)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            xy = Poly.var(Variable("x", i)) * Poly.var(Variable("y", j))
            if kind == "cauchy":
                f = sum((xy**k for k in range(degree // 2 + 1)), Poly())
            else:
                f = 1 + xy
            total = total.mul_trunc(f, XY, degree)
    return total


def _trunc(p: Poly, degree: int) -> Poly:
    return p.truncate(XY, degree)


def _shapes_up_to(size: int) -> list[Partition]:
    return supersets(Partition(()), size)


# suites


def suite_duality(box=(3, 3), fock_box=(2, 2), sample=None, seed=0, **_) -> Report:
    """Both dual pairings give the identity matrix.

    Every pair in the box goes through the determinant of the pairing;
    pairs inside ``fock_box`` are also paired as Fock vectors.
    """
    rep = Report("duality")
    shapes = partitions_in_box(*box)
    pairs = _sample([(l, m) for l in shapes for m in shapes], sample, seed)
    for lam, mu in pairs:
        rep.cases += 1
        ell = max(len(lam), len(mu))
        L, M = lam.padded(ell), mu.padded(ell)
        mat = [
            [
                hsym(L[i - 1] - M[j - 1] - i + j, (A(M[j - 1]) | B(i - 1)) / (A(L[i - 1] - 1) | B(j - 1)))
                for j in range(1, ell + 1)
            ]
            for i in range(1, ell + 1)
        ]
        want = Poly(1 if lam == mu else 0)
        d = determinant(mat) if mat else Poly(1)
        if d != want:
            rep.fail(route="determinant", outer=_shape(lam), inner=_shape(mu), got=str(d))
        if len(lam) <= fock_box[0] and lam.part(0) <= fock_box[1] and len(mu) <= fock_box[0] and mu.part(0) <= fock_box[1]:
            cutoff = 3
            ell = max(len(lam) + 1, len(mu), 1)
            w = default_window(ell, max(lam.part(0), mu.part(0)), cutoff)
            lower = upper_ket(mu, w, cutoff, ell).pair(lower_ket(lam, w, ell, cutoff))
            upper = lower_ket(mu, w, ell, cutoff).pair(upper_ket(lam, w, cutoff, ell))
            if lower != want:
                rep.fail(route="fock-lower", outer=_shape(lam), inner=_shape(mu), got=str(lower))
            if upper.truncate(DEFAULT_GRADING, cutoff) != want:
                rep.fail(route="fock-upper", outer=_shape(lam), inner=_shape(mu), cutoff=cutoff, got=str(upper))
    return rep


def suite_forms(box=(3, 3), nvars=(2, 3), cutoff=2, stability=True, sample=None, seed=0, **_) -> Report:
    """h-form and e-form determinants agree, at ``cutoff`` and again at ``cutoff + 2``."""
    rep = Report("forms")
    shapes = partitions_in_box(*box)
    cutoffs = [cutoff, cutoff + 2] if stability else [cutoff]
    cases = [(l, m, n) for n in nvars for l in shapes for m in shapes]
    for lam, mu, n in _sample(cases, sample, seed):
        rep.cases += 1
        if jt_g(lam, mu, n, "h") != jt_g(lam, mu, n, "e"):
            rep.fail(variant="g", outer=_shape(lam), inner=_shape(mu), n=n)
        for variant in ("G", "Gds"):
            for c in cutoffs:
                h = jt_G_raw(lam, mu, n, variant, "h", c)
                e = jt_G_raw(lam, mu, n, variant, "e", c)
                if not h.agrees_with(e):
                    rep.fail(variant=variant, outer=_shape(lam), inner=_shape(mu), n=n, cutoff=c)
    return rep


def suite_fock_oracle(box=(2, 2), nvars=(2,), cutoff=3, stability=True, sample=None, seed=0, **_) -> Report:
    """Fock-space matrix elements equal the determinants."""
    rep = Report("fock-oracle")
    shapes = partitions_in_box(*box)
    cutoffs = [cutoff, cutoff + 1] if stability else [cutoff]
    cases = [(l, m, n) for n in nvars for l in shapes for m in shapes]
    for lam, mu, n in _sample(cases, sample, seed):
        rep.cases += 1
        if fock_matrix_element(mu, lam, "g", n, 0).body != jt_g(lam, mu, n):
            rep.fail(variant="g", outer=_shape(lam), inner=_shape(mu), n=n)
        for variant in ("G", "Gds"):
            for c in cutoffs:
                f = fock_matrix_element(mu, lam, variant, n, c)
                if not f.agrees_with(jt_G_raw(lam, mu, n, variant, "h", c)):
                    rep.fail(variant=variant, outer=_shape(lam), inner=_shape(mu), n=n, cutoff=c)
    return rep


def suite_branching(box=(2, 2), nvars=(2,), degree=4, **_) -> Report:
    """Splitting the variables into two blocks.

    The second block x_{n+1}, ..., x_{2n} plays the role of the new
    variables; G-side checks hold through total degree ``degree``.
    """
    rep = Report("branching")
    shapes = partitions_in_box(*box)
    for n in nvars:
        for lam in shapes:
            for mu in shapes:
                rep.cases += 1
                between = [nu for nu in subsets(lam) if contains(nu, mu)]
                whole = jt_g(lam, mu, 2 * n) if contains(lam, mu) else Poly()
                split = sum(
                    (g_part(lam, nu, n, offset=n) * g_part(nu, mu, n) for nu in between), Poly()
                )
                if whole != split:
                    rep.fail(variant="g", outer=_shape(lam), inner=_shape(mu), n=n)
                for variant, middle in (("G", subsets(lam)), ("Gds", between)):
                    whole = G_part(variant, lam, mu, 2 * n, degree)
                    split = Poly()
                    for nu in middle:
                        split = split + G_part("Gds", lam, nu, n, degree, offset=n) * G_part(
                            variant, nu, mu, n, degree
                        )
                    if whole != split.truncate({"x"}, degree):
                        rep.fail(variant=variant, outer=_shape(lam), inner=_shape(mu), n=n, degree=degree)
    return rep


# which side is transposed with alpha and beta swapped, and which kernel applies
CAUCHY_VARIANTS = {1: (False, False, "cauchy"), 2: (True, False, "dual"), 3: (False, True, "dual"), 4: (True, True, "cauchy")}


def cauchy_sides(variant, mu, nu, n, m, degree, extra) -> tuple[Poly, Poly]:
    cx, cy, kind = CAUCHY_VARIANTS[variant]
    mu, nu = Partition(mu), Partition(nu)
    left = Poly()
    for lam in supersets(mu, mu.size() + degree + extra):
        if not contains(lam, nu):
            continue
        gx = G_part("Gds", lam, mu, n, degree, conj=cx)
        if gx:
            left = left + _trunc(gx * g_part(lam, nu, m, conj=cy, family="y"), degree)
    right = Poly()
    for eta in subsets(intersection(mu, nu)):
        right = right + G_part("Gds", nu, eta, n, degree, conj=cx) * g_part(mu, eta, m, conj=cy, family="y")
    right = _trunc(_trunc(right, degree).mul_trunc(kernel(n, m, degree, kind), XY, degree), degree)
    return left, right


def suite_cauchy(box=(2, 2), nvars=(2,), degree=4, stability=True, **_) -> Report:
    """All four skew Cauchy identities through total degree ``degree`` in x and y."""
    rep = Report("cauchy")
    shapes = partitions_in_box(*box)
    extras = [0, 1] if stability else [0]
    for n in nvars:
        for variant in CAUCHY_VARIANTS:
            for mu in shapes:
                for nu in shapes:
                    rep.cases += 1
                    for extra in extras:
                        left, right = cauchy_sides(variant, mu, nu, n, n, degree, extra)
                        if left != right:
                            rep.fail(
                                variant=variant, inner=_shape(mu), outer=_shape(nu), n=n, degree=degree, bound=extra
                            )
    return rep


# (outer side is g, outer transposed, inner transposed, kernel)
PIERI_VARIANTS = {1: (False, False, True, "cauchy"), 2: (True, False, True, "cauchy"),
                  3: (False, True, False, "dual"), 4: (True, True, False, "dual")}


def pieri_sides(variant, mu, nu, n, m, degree, extra) -> tuple[Poly, Poly]:
    g_outer, c_outer, c_inner, kind = PIERI_VARIANTS[variant]
    mu, nu = Partition(mu), Partition(nu)
    left = Poly()
    for lam in supersets(mu, max(mu.size(), nu.size()) + degree + extra):
        for eta in subsets(intersection(lam, nu)):
            if g_outer:
                a = g_part(lam, mu, n, conj=c_outer)
                c = g_part(nu, eta, n, conj=c_inner, negate=True)
                y = G_part("Gds", lam, eta, m, degree, family="y")
            else:
                a = G_part("Gds", lam, mu, n, degree, conj=c_outer)
                c = G_part("Gds", nu, eta, n, degree, conj=c_inner, negate=True)
                y = g_part(lam, eta, m, family="y")
            if a and c and y:
                left = left + _trunc(_trunc(a * c, degree) * y, degree)
    if g_outer:
        base = G_part("Gds", mu, nu, m, degree, family="y")
    else:
        base = g_part(mu, nu, m, family="y")
    right = base.mul_trunc(kernel(n, m, degree, kind), XY, degree)
    return left, right


def suite_pieri(box=(2, 2), nvars=(2,), degree=4, stability=True, **_) -> Report:
    """All four skew Pieri-type identities through total degree ``degree``."""
    rep = Report("pieri")
    shapes = partitions_in_box(*box)
    extras = [0, 1] if stability else [0]
    for n in nvars:
        for variant in PIERI_VARIANTS:
            for mu in shapes:
                for nu in shapes:
                    rep.cases += 1
                    for extra in extras:
                        left, right = pieri_sides(variant, mu, nu, n, n, degree, extra)
                        if left != right:
                            rep.fail(
                                variant=variant, outer=_shape(mu), inner=_shape(nu), n=n, degree=degree, bound=extra
                            )
    return rep


def suite_corners(box=(2, 3), nvars=(2,), cutoff=3, stability=True, **_) -> Report:
    """Corner decomposition, its inverse, and the single-slash factorization."""
    rep = Report("corners")
    shapes = partitions_in_box(*box)
    cutoffs = [cutoff, cutoff + 2] if stability else [cutoff]
    for n in nvars:
        for c in cutoffs:
            for lam in shapes:
                for mu in shapes:
                    rep.cases += 1
                    G = lambda l, m: jt_G_raw(l, m, n, "G", "h", c)
                    Gds = lambda l, m: jt_G_raw(l, m, n, "Gds", "h", c)
                    fwd = sum((G(lam, nu) * w for nu, w in corner_expand(mu, "forward")), Poly())
                    if not Gds(lam, mu).agrees_with(fwd):
                        rep.fail(check="forward", outer=_shape(lam), inner=_shape(mu), n=n, cutoff=c)
                    inv = sum((Gds(lam, nu) * w for nu, w in corner_expand(mu, "inverse")), Poly())
                    if not G(lam, mu).agrees_with(inv):
                        rep.fail(check="inverse", outer=_shape(lam), inner=_shape(mu), n=n, cutoff=c)
                    if not contains(lam, mu):
                        w = Poly(1)
                        for r in range(1, len(mu) + 1):
                            for col in range(lam.part(r - 1) + 1, mu.part(r - 1) + 1):
                                w = w * (Poly.var(Variable("alpha", col)) + Poly.var(Variable("beta", r)))
                        if not G(lam, mu).agrees_with(G(lam, intersection(lam, mu)) * w):
                            rep.fail(check="single-slash", outer=_shape(lam), inner=_shape(mu), n=n, cutoff=c)
    return rep


def suite_integral(box=(2, 2), nvars=(2,), cutoff=3, stability=True, **_) -> Report:
    """The six contour-integral determinants equal the Jacobi-Trudi ones."""
    rep = Report("integral")
    shapes = partitions_in_box(*box)
    cutoffs = [cutoff, cutoff + 1] if stability else [cutoff]
    for n in nvars:
        for lam in shapes:
            for mu in shapes:
                rep.cases += 1
                for which in INTEGRAL_FORMULAS:
                    variant, form = which.split("_")
                    if variant == "g":
                        if integral_jt(lam, mu, n, which) != jt_g(lam, mu, n, form):
                            rep.fail(formula=which, outer=_shape(lam), inner=_shape(mu), n=n)
                        continue
                    for c in cutoffs:
                        if not integral_jt(lam, mu, n, which, c).agrees_with(jt_G_raw(lam, mu, n, variant, form, c)):
                            rep.fail(formula=which, outer=_shape(lam), inner=_shape(mu), n=n, cutoff=c)
    return rep


def suite_detformula(box=(2, 2), nvars=(2,), cutoff=3, stability=True, **_) -> Report:
    """Determinants of single-row polynomials equal the Jacobi-Trudi ones."""
    rep = Report("detformula")
    shapes = partitions_in_box(*box)
    cutoffs = [cutoff, cutoff + 1] if stability else [cutoff]
    for n in nvars:
        for lam in shapes:
            for mu in shapes:
                rep.cases += 1
                for variant in ("G", "Gds"):
                    for c in cutoffs:
                        if not det_formula_G(lam, mu, n, variant, c).agrees_with(jt_G_raw(lam, mu, n, variant, "h", c)):
                            rep.fail(variant=variant, outer=_shape(lam), inner=_shape(mu), n=n, cutoff=c)
    return rep


def _flag_vectors(lam: Partition, mu: Partition, ell: int, n: int) -> Iterable[tuple[int, ...]]:
    def rec(prefix):
        if len(prefix) == ell:
            yield tuple(prefix)
            return
        for v in range(1, n + 1):
            i = len(prefix)
            if i and mu.part(i - 1) < lam.part(i) and v < prefix[-1]:
                continue
            yield from rec(prefix + [v])

    yield from rec([])


def suite_flagged(box=(2, 2), nvars=(2,), cutoff=3, **_) -> Report:
    """Flagged determinants: full flags, the row-sum form, and the Fock presentation."""
    rep = Report("flagged")
    shapes = partitions_in_box(*box)
    for n in nvars:
        for lam in shapes:
            for mu in shapes:
                if not contains(lam, mu):
                    continue
                ell = max(len(lam), len(mu), 1)
                rep.cases += 1
                full = flagged_G(lam, mu, n, [1] * ell, [n] * ell, cutoff)
                if not full.agrees_with(jt_G_raw(lam, mu, n, "G", "h", cutoff)):
                    rep.fail(check="full", outer=_shape(lam), inner=_shape(mu), n=n, cutoff=cutoff)
                for s in _flag_vectors(lam, mu, ell, n):
                    f = flagged_G(lam, mu, n, [1] * ell, list(s), cutoff)
                    if not f.agrees_with(flagged_G_rowsum(lam, mu, n, list(s), cutoff)):
                        rep.fail(check="rowsum", outer=_shape(lam), inner=_shape(mu), s=list(s), cutoff=cutoff)
                    if not f.agrees_with(flagged_fermion_G(mu, lam, n, list(s), cutoff)):
                        rep.fail(check="fock", outer=_shape(lam), inner=_shape(mu), s=list(s), cutoff=cutoff)
    return rep


def suite_omega(box=(2, 3), nvars=(1,), **_) -> Report:
    """Conjugating Schur indices and swapping parameters exchanges g for its transpose.

    Each case uses max(nvars, |outer|) variables so both expansions are faithful.
    """
    rep = Report("omega")
    shapes = partitions_in_box(*box)
    for lam in shapes:
        for mu in subsets(lam):
            rep.cases += 1
            n = max(max(nvars), lam.size(), 1)
            left = omega(schur_expand(jt_g(lam, mu, n), n))
            right = map_coefficients(schur_expand(jt_g(conjugate(lam), conjugate(mu), n), n), swap_parameters)
            if left.terms != right.terms:
                rep.fail(outer=_shape(lam), inner=_shape(mu), n=n)
    return rep


def _signs_ok(p: Poly, rule: Callable[[dict], int]) -> bool:
    for mono, c in p.terms():
        if c * rule(dict(mono)) < 0:
            return False
    return True


def alpha_degree(mono: dict) -> int:
    return sum(k for v, k in mono.items() if v.family == "alpha")


def b_sign(mono: dict) -> int:
    return 1


def B_sign(mono: dict) -> int:
    return -1 if alpha_degree(mono) % 2 else 1


def suite_positivity(box=(3, 3), **_) -> Report:
    """b has nonnegative coefficients; B has the sign of (-1)^(alpha-degree)."""
    rep = Report("positivity")
    shapes = partitions_in_box(*box)
    for lam in shapes:
        for mu in shapes:
            rep.cases += 1
            if not _signs_ok(coeff_matrix("b", lam, mu), b_sign):
                rep.fail(kind="b", lower=_shape(lam), upper=_shape(mu))
            if not _signs_ok(coeff_matrix("B", lam, mu), B_sign):
                rep.fail(kind="B", lower=_shape(lam), upper=_shape(mu))
    return rep


def suite_matrix(box=(2, 2), nvars=(2,), cutoff=3, **_) -> Report:
    """Skew Schur expansions through the matrix-element coefficients."""
    rep = Report("matrix")
    shapes = partitions_in_box(*box)
    for n in nvars:
        for lam in shapes:
            for mu in shapes:
                rep.cases += 1
                if reconstruct_g(lam, mu, n) != (jt_g(lam, mu, n) if contains(lam, mu) else Poly()):
                    rep.fail(variant="g", outer=_shape(lam), inner=_shape(mu), n=n)
                for variant in ("G", "Gds"):
                    if not reconstruct_G(lam, mu, n, variant, cutoff).agrees_with(
                        jt_G_raw(lam, mu, n, variant, "h", cutoff)
                    ):
                        rep.fail(variant=variant, outer=_shape(lam), inner=_shape(mu), n=n, cutoff=cutoff)
    return rep


SUITES: dict[str, Callable[..., Report]] = {
    "branching": suite_branching,
    "cauchy": suite_cauchy,
    "corners": suite_corners,
    "detformula": suite_detformula,
    "duality": suite_duality,
    "flagged": suite_flagged,
    "fock-oracle": suite_fock_oracle,
    "forms": suite_forms,
    "integral": suite_integral,
    "matrix": suite_matrix,
    "omega": suite_omega,
    "pieri": suite_pieri,
    "positivity": suite_positivity,
}


def run(suite: str, **options) -> Report:
    """Run one suite; ``None`` options fall back to the suite's defaults."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    options = {k: v for k, v in options.items() if v is not None}
    start = time.perf_counter()
    rep = SUITES[suite](**options)
    rep.seconds = time.perf_counter() - start
    rep.sort()
    return rep

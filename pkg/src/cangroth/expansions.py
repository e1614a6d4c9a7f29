"""Expansion coefficients, corner decompositions and Schur expansions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .alphabets import A, B, DiffAlphabet, esym, hsym, interval
from .grothendieck import jt_G_raw, jt_g, schur_skew
from .partitions import Partition, conjugate, contains, corner_removals, subsets, supersets
from .polynomial import DEFAULT_GRADING, Poly, TruncSeries, Variable, a, b, determinant

KINDS = ("I", "Itilde", "E", "Etilde", "D", "Dtilde", "b", "B")


def _det(entry, size: int) -> Poly:
    return determinant([[entry(i, j) for j in range(1, size + 1)] for i in range(1, size + 1)])


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@lru_cache(maxsize=None)
def _coeff(kind: str, lower: Partition, upper: Partition, conj: bool) -> Poly:
    lam, nu = lower, upper
    if kind == "I":
        n = max(len(nu), len(lam))
        L, N = lam.padded(n), nu.padded(n)
        return _det(lambda i, j: hsym(N[i - 1] - L[j - 1] - i + j, A(L[j - 1]) / B(j - 1)), n)
    if kind == "Itilde":
        n = max(len(nu), len(lam))
        L, N = lam.padded(n), nu.padded(n)
        return _det(lambda i, j: esym(N[i - 1] - L[j - 1] - i + j, A(j - 1) / B(L[j - 1])), n)
    if kind == "D":
        # lower = eta, upper = mu
        n = max(len(nu), len(lam))
        E, M = lam.padded(n), nu.padded(n)
        return _det(lambda i, j: hsym(M[i - 1] - E[j - 1] - i + j, B(i) / A(M[i - 1])), n)
    if kind == "Dtilde":
        n = max(len(nu), len(lam))
        E, M = lam.padded(n), nu.padded(n)
        return _det(lambda i, j: esym(M[i - 1] - E[j - 1] - i + j, B(M[i - 1]) / A(i)), n)
    if kind == "E":
        n = max(len(nu), len(lam))
        L, N = lam.padded(n), nu.padded(n)
        return _det(lambda i, j: hsym(L[i - 1] - N[j - 1] - i + j, B(i - 1) / A(L[i - 1] - 1)), n)
    if kind == "Etilde":
        n = max(len(nu), len(lam))
        L, N = lam.padded(n), nu.padded(n)
        return _det(lambda i, j: esym(L[i - 1] - N[j - 1] - i + j, B(L[i - 1] - 1) / A(i - 1)), n)
    mu = upper
    if not conj:
        n = max(len(lam), len(mu))
        L, M = lam.padded(n), mu.padded(n)
        if kind == "b":
            return _det(
                lambda i, j: hsym(L[i - 1] - M[j - 1] - i + j, interval("B", j, i, "[)") / A(L[i - 1] - 1)), n
            )
        return _det(lambda i, j: hsym(M[j - 1] - L[i - 1] + i - j, A(L[i - 1]) / interval("B", j, i, "[)")), n)
    lc, mc = conjugate(lam), conjugate(mu)
    n = max(len(lc), len(mc))
    L, M = lc.padded(n), mc.padded(n)
    if kind == "b":
        d = _det(
            lambda i, j: hsym(L[i - 1] - M[j - 1] - i + j, A(i - 1) / interval("B", M[j - 1], L[i - 1], "()")), n
        )
        return d * _sign(lam.size() - mu.size())
    d = _det(lambda i, j: hsym(M[j - 1] - L[i - 1] + i - j, interval("B", M[j - 1], L[i - 1], "[]") / A(i - 1)), n)
    return d * _sign(mu.size() - lam.size())


def coeff_matrix(kind: str, lower, upper, conjugate_form: bool = False) -> Poly:
    """The coefficient with subscript ``lower`` and superscript ``upper``.

    For I, E and b the subscript is the larger shape's partner as in
    ``I^nu_lam``, ``E^nu_lam``, ``b^mu_lam``; for D the subscript is the
    smaller shape. ``conjugate_form`` selects the transposed determinant for
    b and B (both must agree).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown coefficient kind {kind!r}; choose from {KINDS}")
    if conjugate_form and kind not in ("b", "B"):
        raise ValueError("only b and B have a conjugate form")
    return _coeff(kind, Partition(lower), Partition(upper), conjugate_form)


# corner decompositions


def _cell_weight(row: int, col: int) -> Poly:
    return a(col) + b(row)


def corner_expand(mu, direction: str = "forward") -> list[tuple[Partition, Poly]]:
    """Coefficients expressing one bra family in the other.

    ``forward`` writes the dual-of-lower bra of ``mu`` through the
    double-bracket bras: remove any set of corners, each removed cell (row r,
    column c) contributing -(alpha_c + beta_r). ``inverse`` runs over all
    nu inside mu with weight prod over mu/nu of (alpha_c + beta_r).
    """
    mu = Partition(mu)
    if direction == "forward":
        out = []
        for nu, cells in corner_removals(mu):
            w = Poly(1)
            for r, c in sorted(cells):
                w = w * -_cell_weight(r, c)
            out.append((nu, w))
    elif direction == "inverse":
        out = []
        for nu in subsets(mu):
            w = Poly(1)
            for r in range(1, len(mu) + 1):
                for c in range(nu.part(r - 1) + 1, mu.part(r - 1) + 1):
                    w = w * _cell_weight(r, c)
            out.append((nu, w))
    else:
        raise ValueError(f"direction must be forward or inverse, got {direction!r}")
    return sorted(out, key=lambda t: (-t[0].size(), tuple(t[0])))


# Schur expansions


class NotSymmetricError(ValueError):
    pass


@dataclass(frozen=True)
class SchurExpansion:
    nvars: int
    terms: dict = field(default_factory=dict)
    faithful_degree: int = 0

    def coefficient(self, lam) -> Poly:
        return self.terms.get(Partition(lam), Poly())

    def shapes(self) -> list[Partition]:
        return sorted(self.terms, key=lambda p: (p.size(), tuple(p)))

    def to_poly(self) -> Poly:
        total = Poly()
        for lam, c in self.terms.items():
            total = total + c * schur_skew(lam, (), nvars=self.nvars)
        return total

    def to_json(self) -> dict:
        return {
            "n": self.nvars,
            "terms": [{"shape": list(lam), "coeff": self.terms[lam].to_json()} for lam in self.shapes()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def render(self, unicode: bool = False) -> str:
        if not self.terms:
            return "0"
        parts = []
        for lam in self.shapes():
            c = self.terms[lam]
            name = "s[" + ",".join(map(str, lam)) + "]"
            parts.append(f"({c.render(unicode)})*{name}")
        return " + ".join(parts)


def _x_exponents(key, n: int) -> tuple[int, ...]:
    e = [0] * n
    for v, k in key:
        if v.index > n:
            raise ValueError(f"variable {v.name()} beyond x_{n}")
        e[v.index - 1] = k
    return tuple(e)


def is_symmetric(p: Poly, n: int) -> bool:
    for i in range(1, n):
        swap = {Variable("x", i): Variable("x", i + 1), Variable("x", i + 1): Variable("x", i)}
        if p.rename(swap) != p:
            return False
    return True


def schur_expand(p, nvars: int, max_degree: int | None = None, check: bool = True) -> SchurExpansion:
    """Expand a polynomial symmetric in x_1..x_n in Schur polynomials.

    Terms of x-degree above ``max_degree`` are discarded first. The peel
    repeatedly takes the lex-largest x-monomial of top degree, whose exponent
    must be a partition, and subtracts the matching Schur polynomial.
    """
    if isinstance(p, TruncSeries):
        p = p.body
    if max_degree is not None:
        p = p.truncate({"x"}, max_degree)
    if check and not is_symmetric(p, nvars):
        raise NotSymmetricError("polynomial is not symmetric in the x variables")
    terms: dict[Partition, Poly] = {}
    rest = p
    while rest:
        groups = {_x_exponents(k, nvars): c for k, c in rest.split(["x"]).items()}
        lead = max(groups, key=lambda e: (sum(e), e))
        if any(lead[i] < lead[i + 1] for i in range(nvars - 1)):
            raise NotSymmetricError(f"leading exponent {lead} is not a partition")
        lam = Partition(lead)
        c = groups[lead]
        terms[lam] = terms.get(lam, Poly()) + c
        rest = rest - c * schur_skew(lam, (), nvars=nvars)
    terms = {k: v for k, v in terms.items() if v}
    return SchurExpansion(nvars, terms, nvars)


class FaithfulnessError(ValueError):
    pass


def omega(se: SchurExpansion) -> SchurExpansion:
    """Conjugate every index; only valid below the faithful degree."""
    for lam in se.terms:
        if lam.size() > se.faithful_degree:
            raise FaithfulnessError(
                f"shape {tuple(lam)} has degree {lam.size()} above the faithful degree {se.faithful_degree}"
            )
    return SchurExpansion(se.nvars, {conjugate(lam): c for lam, c in se.terms.items()}, se.faithful_degree)


def swap_parameters(p: Poly) -> Poly:
    """Exchange alpha_i and beta_i."""
    mapping = {}
    for v in p.variables():
        if v.family == "alpha":
            mapping[v] = Variable("beta", v.index)
        elif v.family == "beta":
            mapping[v] = Variable("alpha", v.index)
    return p.rename(mapping)


def map_coefficients(se: SchurExpansion, f) -> SchurExpansion:
    terms = {k: f(v) for k, v in se.terms.items()}
    return SchurExpansion(se.nvars, {k: v for k, v in terms.items() if v}, se.faithful_degree)


def kill_alpha(p: Poly) -> Poly:
    return p.substitute({v: 0 for v in p.variables() if v.family == "alpha"})


# one-parameter decompositions


def decompose_one_param(lam, side: str = "g", cutoff: int = 2) -> dict[Partition, Poly]:
    """Coefficients of the alpha = 0 family in the two-parameter one.

    ``g`` returns the finite map mu -> b^mu_lam over mu inside lam; ``G``
    returns mu -> B^mu_lam over mu containing lam with |mu| <= |lam| + cutoff.
    """
    lam = Partition(lam)
    if side == "g":
        shapes, kind = subsets(lam), "b"
    elif side == "G":
        shapes, kind = supersets(lam, lam.size() + cutoff), "B"
    else:
        raise ValueError(f"side must be g or G, got {side!r}")
    out = {}
    for mu in shapes:
        c = coeff_matrix(kind, lam, mu)
        if c:
            out[mu] = c
    return out


def resum_one_param(lam, side: str, nvars: int, cutoff: int = 2):
    """Rebuild g_lam or G_lam from its one-parameter decomposition."""
    lam = Partition(lam)
    decomposition = decompose_one_param(lam, side, cutoff)
    if side == "g":
        total = Poly()
        for mu, c in decomposition.items():
            total = total + c * kill_alpha(jt_g(mu, (), nvars))
        return total
    total = TruncSeries(Poly(), cutoff, DEFAULT_GRADING, True)
    for mu, c in decomposition.items():
        total = total + jt_G_raw(mu, (), nvars, "G", "h", cutoff).body.substitute(
            {Variable("alpha", i): 0 for i in range(1, cutoff + len(mu) + 2)}
        ) * TruncSeries.make(c, cutoff)
    return total


# reconstruction from matrix elements


def skew_schur(outer, inner, nvars: int) -> Poly:
    if not contains(outer, inner):
        return Poly()
    return schur_skew(outer, inner, nvars=nvars)


def reconstruct_g(lam, mu, nvars: int) -> Poly:
    """sum over mu <= eta <= nu <= lam of I^eta_mu s_{nu/eta} E^nu_lam."""
    lam, mu = Partition(lam), Partition(mu)
    total = Poly()
    for nu in subsets(lam):
        if not contains(nu, mu):
            continue
        e = coeff_matrix("E", lam, nu)
        if not e:
            continue
        for eta in subsets(nu):
            if contains(eta, mu):
                i = coeff_matrix("I", mu, eta)
                if i:
                    total = total + i * skew_schur(nu, eta, nvars) * e
    return total


def reconstruct_G(lam, mu, nvars: int, variant: str = "G", cutoff: int = 2) -> TruncSeries:
    """The infinite matrix-element sum for G or Gds, cut at (alpha, beta)-degree ``cutoff``."""
    lam, mu = Partition(lam), Partition(mu)
    if variant not in ("G", "Gds"):
        raise ValueError(f"variant must be G or Gds, got {variant!r}")
    total = Poly()
    for eta in subsets(mu):
        left = coeff_matrix("D", eta, mu) if variant == "G" else coeff_matrix("E", mu, eta)
        if not left:
            continue
        budget = cutoff - (mu.size() - eta.size())
        for nu in supersets(lam, lam.size() + max(budget, -1)):
            right = coeff_matrix("I", lam, nu)
            if right:
                total = total + left * skew_schur(nu, eta, nvars) * right
    return TruncSeries.make(total, cutoff)

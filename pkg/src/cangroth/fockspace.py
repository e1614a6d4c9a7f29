"""A windowed free-fermion Fock space.

States are Maya diagrams stored as bitmasks over a window ``[lo, hi)``:
every position below ``lo`` is filled and every position from ``hi`` up is
empty. Operators that would need to touch a position outside the window
raise :class:`WindowError` instead of silently dropping terms.

Coefficients are exact polynomials. Operators built from H* raise the
energy without bound, so vectors carry an (alpha, beta)-degree cutoff and
every coefficient is truncated to it. Nothing of degree at most the cutoff
is ever lost, because all coefficients have nonnegative degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .alphabets import A, B, EMPTY, DiffAlphabet, esym, hsym, psym, x_range, xs
from .partitions import MayaWindow, Partition, conjugate, maya
from .polynomial import DEFAULT_GRADING, Poly, TruncSeries, determinant


class WindowError(RuntimeError):
    """An operator needed a position outside the state window."""


def default_window(ell: int, lam1: int, cutoff: int) -> tuple[int, int]:
    return (-(ell + lam1 + cutoff + 2), lam1 + cutoff + 2)


@dataclass
class FockVector:
    """A finite combination of basis states on a common window."""

    lo: int
    hi: int
    terms: dict[int, Poly] = field(default_factory=dict)
    cutoff: int | None = None
    grading: frozenset = DEFAULT_GRADING

    # construction

    @classmethod
    def vacuum(cls, charge: int, window: tuple[int, int], cutoff: int | None = None) -> "FockVector":
        lo, hi = window
        if not lo <= charge <= hi:
            raise WindowError(f"charge {charge} outside window [{lo},{hi})")
        return cls(lo, hi, {(1 << (charge - lo)) - 1: Poly(1)}, cutoff)

    @classmethod
    def basis(cls, lam, charge: int, window: tuple[int, int], cutoff: int | None = None) -> "FockVector":
        try:
            m = maya(Partition(lam), charge, window)
        except ValueError as exc:
            raise WindowError(str(exc)) from None
        return cls(m.lo, m.hi, {m.occupied: Poly(1)}, cutoff)

    def _new(self, terms: dict[int, Poly]) -> "FockVector":
        return FockVector(self.lo, self.hi, terms, self.cutoff, self.grading)

    def _clip(self, p: Poly) -> Poly:
        return p if self.cutoff is None else p.truncate(self.grading, self.cutoff)

    # linear structure

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check_same(other)
        out = dict(self.terms)
        for s, c in other.terms.items():
            v = out.get(s, Poly()) + c
            if v:
                out[s] = v
            else:
                out.pop(s, None)
        return self._new(out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def scale(self, c: Poly | int) -> "FockVector":
        c = Poly(c) if isinstance(c, int) else c
        out = {}
        for s, v in self.terms.items():
            w = self._clip(v * c) if self.cutoff is not None else v * c
            if w:
                out[s] = w
        return self._new(out)

    def _check_same(self, other: "FockVector") -> None:
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("vectors live on different windows")

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return (self.lo, self.hi) == (other.lo, other.hi) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, lam, charge: int = 0) -> Poly:
        m = maya(Partition(lam), charge, (self.lo, self.hi))
        return self.terms.get(m.occupied, Poly())

    def states(self) -> list[tuple[Partition, int, Poly]]:
        """(partition, charge, coefficient), sorted for stable output."""
        out = []
        for s, c in self.terms.items():
            w = MayaWindow(self.lo, self.hi, s)
            out.append((w.partition(), w.charge(), c))
        return sorted(out, key=lambda t: (t[1], t[0].size(), tuple(t[0])))

    def pair(self, other: "FockVector") -> Poly:
        """Sum of coefficient products over common states; ``self`` plays the bra."""
        self._check_same(other)
        total = Poly()
        small, big = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for s, c in small.terms.items():
            d = big.terms.get(s)
            if d is not None:
                total = total + c * d
        if self.cutoff is not None or other.cutoff is not None:
            cut = min(c for c in (self.cutoff, other.cutoff) if c is not None)
            total = total.truncate(self.grading, cut)
        return total

    def energy(self) -> int:
        """Largest number of single-step moves down available to any state."""
        best = 0
        for s in self.terms:
            pos = [p for p in range(self.hi - 1, self.lo - 1, -1) if s >> (p - self.lo) & 1]
            top = self.lo + len(pos) - 1
            best = max(best, sum(p - (top - i) for i, p in enumerate(pos)))
        return best


def _above(s: int, k: int) -> int:
    """Number of occupied bits strictly above bit k."""
    return bin(s >> (k + 1)).count("1")


def apply_psi(v: FockVector, n: int) -> FockVector:
    """Creation operator psi_n."""
    if n >= v.hi:
        raise WindowError(f"psi_{n} outside window [{v.lo},{v.hi})")
    if n < v.lo:
        return v._new({})
    k = n - v.lo
    out = {}
    for s, c in v.terms.items():
        if s >> k & 1:
            continue
        out[s | (1 << k)] = -c if _above(s, k) % 2 else c
    return v._new(out)


def apply_psi_star(v: FockVector, n: int) -> FockVector:
    """Annihilation operator psi*_n."""
    if n < v.lo:
        raise WindowError(f"psi*_{n} outside window [{v.lo},{v.hi})")
    if n >= v.hi:
        return v._new({})
    k = n - v.lo
    out = {}
    for s, c in v.terms.items():
        if not s >> k & 1:
            continue
        out[s & ~(1 << k)] = -c if _above(s, k) % 2 else c
    return v._new(out)


def apply_clifford(v: FockVector, kind: str, n: int) -> FockVector:
    if kind == "psi":
        return apply_psi(v, n)
    if kind == "psi*":
        return apply_psi_star(v, n)
    raise ValueError(f"unknown fermion kind {kind!r}")


def apply_current(v: FockVector, k: int) -> FockVector:
    """a_k = sum_i psi_i psi*_{i+k}; moves one particle from i+k to i."""
    if k == 0:
        raise ValueError("a_0 needs normal ordering and is not supported")
    width = v.hi - v.lo
    out: dict[int, Poly] = {}
    for s, c in v.terms.items():
        if k < 0:
            m = -k
            # a particle below the window could jump into an empty slot near lo
            for q in range(min(m, width)):
                if not s >> q & 1:
                    raise WindowError(f"a_{k} would pull a particle from below {v.lo}")
        for p in range(width):
            if not s >> p & 1:
                continue
            t = p - k
            if t < 0:
                continue
            if t >= width:
                raise WindowError(f"a_{k} would push a particle past {v.hi}")
            if s >> t & 1:
                continue
            lo_, hi_ = min(p, t), max(p, t)
            between = bin((s >> (lo_ + 1)) & ((1 << (hi_ - lo_ - 1)) - 1)).count("1")
            ns = (s & ~(1 << p)) | (1 << t)
            val = -c if between % 2 else c
            prev = out.get(ns)
            val = val if prev is None else prev + val
            if val:
                out[ns] = val
            else:
                out.pop(ns, None)
    return v._new(out)


def apply_half_vertex(
    v: FockVector, Z: DiffAlphabet, star: bool = False, nvars: int = 0, max_degree: int | None = None
) -> FockVector:
    """Apply exp(sum_k p_k(Z) a_{+-k} / k), with ``star`` selecting a_{-k}.

    The alphabet is x_1..x_nvars together with ``Z``. The exponential is
    expanded as sum_m E_m with m E_m = sum_k p_k a_k E_{m-k}, which keeps
    every coefficient integral. Without ``star`` the operator lowers energy
    and the sum stops by itself; with ``star`` it is cut at ``max_degree``
    (default: the vector cutoff), which requires Z to be graded.
    """
    Zfull = xs(nvars) | Z if nvars else Z
    if star:
        if max_degree is None:
            max_degree = v.cutoff
        if max_degree is None:
            raise ValueError("raising half-vertex operator needs a degree bound")
        if not Zfull.families() <= set(v.grading):
            raise ValueError(f"cannot truncate e^(H*) of ungraded alphabet {Zfull}")
        top = max_degree
    else:
        top = v.energy() if max_degree is None else min(max_degree, v.energy())
    sign = -1 if star else 1
    powers = [psym(k, Zfull) for k in range(top + 1)]
    E = [v]
    total = v
    for m in range(1, top + 1):
        acc = v._new({})
        for k in range(1, m + 1):
            if not powers[k] or not E[m - k]:
                continue
            src = E[m - k]
            if star:
                # skip states whose coefficients would be truncated anyway
                src = src._new({s: c for s, c in src.terms.items() if c.min_degree(v.grading) + k <= top})
            acc = acc + apply_current(src, sign * k).scale(powers[k])
        acc = acc._new({s: c.scale_div(m) for s, c in acc.terms.items()})
        E.append(acc)
        total = total + acc
    return total


def e_H(v: FockVector, Z: DiffAlphabet = EMPTY, nvars: int = 0, sign: int = 1) -> FockVector:
    return apply_half_vertex(v, Z if sign > 0 else -Z, False, nvars)


def e_Hstar(v: FockVector, Z: DiffAlphabet, sign: int = 1) -> FockVector:
    return apply_half_vertex(v, Z if sign > 0 else -Z, True)


def e_J(v: FockVector, nvars: int) -> FockVector:
    """The transposed half-vertex operator: p_k replaced by (-1)^(k+1) p_k."""
    from .polynomial import Variable

    negx = DiffAlphabet((), tuple((Variable("x", k), -1) for k in range(1, nvars + 1)))
    return apply_half_vertex(v, negx, False)


# dressed fermions


@dataclass(frozen=True)
class DressedFermion:
    """sum_k c_k psi_k (kind "psi") or sum_k c_k psi*_k (kind "psi*")."""

    kind: str
    support: tuple[tuple[int, Poly], ...]

    @classmethod
    def make(cls, kind: str, support: dict[int, Poly]) -> "DressedFermion":
        return cls(kind, tuple(sorted((k, c) for k, c in support.items() if c)))

    def apply(self, v: FockVector) -> FockVector:
        total = v._new({})
        for k, c in self.support:
            total = total + apply_clifford(v, self.kind, k).scale(c)
        return total

    def star(self) -> "DressedFermion":
        return DressedFermion("psi*" if self.kind == "psi" else "psi", self.support)


def dress(kind: str, n: int, Z: DiffAlphabet, star: bool, cutoff: int, direction: int = 1) -> DressedFermion:
    """Closed form for e^{sH(Z)} psi e^{-sH(Z)} with H or H*, s = ``direction``.

    H* shifts psi up with h-coefficients and psi* down with signed
    e-coefficients; H does the opposite.
    """
    Z = Z if direction > 0 else -Z
    support: dict[int, Poly] = {}
    for c in range(cutoff + 1):
        if kind == "psi":
            coef = hsym(c, Z)
            idx = n + c if star else n - c
        else:
            coef = esym(c, Z) * (-1) ** c
            idx = n - c if star else n + c
        coef = coef.truncate(DEFAULT_GRADING, cutoff)
        if coef:
            support[idx] = coef
    return DressedFermion.make(kind, support)


def wick_vev(bras: Sequence[DressedFermion], kets: Sequence[DressedFermion], charge: int, cutoff: int | None = None):
    """<charge| Q_l ... Q_1 P_1 ... P_l |charge> as det[<Q_j P_i>].

    ``bras`` lists Q_1, ..., Q_l (annihilation type) and ``kets`` lists
    P_1, ..., P_l (creation type).
    """
    if len(bras) != len(kets):
        raise ValueError("need as many bra fermions as ket fermions")
    for f in bras:
        if f.kind != "psi*":
            raise ValueError("bra fermions must be of annihilation type")
    for f in kets:
        if f.kind != "psi":
            raise ValueError("ket fermions must be of creation type")

    def pairing(Q: DressedFermion, P: DressedFermion) -> Poly:
        qs = dict(Q.support)
        total = Poly()
        for k, c in P.support:
            if k >= charge and k in qs:
                total = total + qs[k] * c
        return total if cutoff is None else total.truncate(DEFAULT_GRADING, cutoff)

    n = len(kets)
    M = [[pairing(bras[j], kets[i]) for j in range(n)] for i in range(n)]
    det = determinant(M) if n else Poly(1)
    if cutoff is not None:
        return TruncSeries.make(det, cutoff)
    return det


def wick_by_states(
    bras: Sequence[DressedFermion], kets: Sequence[DressedFermion], charge: int, window: tuple[int, int]
) -> Poly:
    """The same vacuum expectation computed on explicit states."""
    v = FockVector.vacuum(charge, window)
    for P in reversed(kets):
        v = P.apply(v)
    for Q in bras:
        v = Q.apply(v)
    return v.terms.get((1 << (charge - window[0])) - 1, Poly())


# the deformed basis vectors; bras are returned as the kets they are * of


def _rows(lam: Partition, ell: int | None) -> int:
    if ell is None:
        ell = len(lam)
    if ell < len(lam):
        raise ValueError(f"ell={ell} is shorter than {tuple(lam)}")
    return ell


def schur_ket(lam, window, ell: int | None = None, cutoff: int | None = None) -> FockVector:
    lam = Partition(lam)
    ell = _rows(lam, ell)
    v = FockVector.vacuum(-ell, window, cutoff)
    for i in range(ell, 0, -1):
        v = apply_psi(v, lam.part(i - 1) - i)
    return v


def lower_ket(lam, window, ell: int | None = None, cutoff: int | None = None) -> FockVector:
    """|lam>_[a,b]: prod_i e^{-H(A_{lam_i - 1})} psi_{lam_i - i} e^{H(b_i)} e^{H(A_{lam_i - 1})} |-ell>."""
    lam = Partition(lam)
    ell = _rows(lam, ell)
    v = FockVector.vacuum(-ell, window, cutoff)
    for i in range(ell, 0, -1):
        Ai = A(lam.part(i - 1) - 1)
        v = e_H(v, Ai)
        v = e_H(v, B(i) / B(i - 1))
        v = apply_psi(v, lam.part(i - 1) - i)
        v = e_H(v, Ai, sign=-1)
    return v


def upper_ket(lam, window, cutoff: int, ell: int | None = None) -> FockVector:
    """|lam>^[a,b] with sigma = lam; needs ell > len(lam) to be canonical."""
    lam = Partition(lam)
    if ell is None:
        ell = len(lam) + 1
    ell = _rows(lam, ell)
    v = FockVector.vacuum(-ell, window, cutoff)
    v = e_Hstar(v, A(lam.part(ell - 1)))
    for i in range(ell, 0, -1):
        Ai = A(lam.part(i - 1))
        v = e_Hstar(v, Ai, sign=-1)
        v = e_Hstar(v, B(i) / B(i - 1), sign=-1)
        v = apply_psi(v, lam.part(i - 1) - i)
        v = e_Hstar(v, Ai)
    return v


def double_bra_ket(mu, window, ell: int | None = None, cutoff: int | None = None) -> FockVector:
    """The * of the bra <<mu|: prod_i e^{H(B_i/A_{mu_i})} psi_{mu_i - i} e^{-H(B_i/A_{mu_i})} |-ell>."""
    mu = Partition(mu)
    ell = _rows(mu, ell)
    v = FockVector.vacuum(-ell, window, cutoff)
    for i in range(ell, 0, -1):
        Z = B(i) / A(mu.part(i - 1))
        v = e_H(v, Z, sign=-1)
        v = apply_psi(v, mu.part(i - 1) - i)
        v = e_H(v, Z)
    return v


KETS = {"schur": schur_ket, "lower": lower_ket}


def canonical_ket(lam, which: str, window, cutoff: int, ell: int | None = None) -> FockVector:
    if which == "upper":
        return upper_ket(lam, window, cutoff, ell)
    if which == "lower":
        return lower_ket(lam, window, ell, cutoff)
    if which == "schur":
        return schur_ket(lam, window, ell, cutoff)
    raise ValueError(f"unknown ket {which!r}")


def canonical_bra(mu, which: str, window, cutoff: int, ell: int | None = None) -> FockVector:
    """The ket whose * is the requested bra.

    ``upper`` gives the dual of the lower ket, ``lower`` the dual of the
    upper ket, ``double`` the bra used for G.
    """
    if which == "upper":
        return lower_ket(mu, window, ell, cutoff)
    if which == "lower":
        return upper_ket(mu, window, cutoff, ell)
    if which == "double":
        return double_bra_ket(mu, window, ell, cutoff)
    if which == "schur":
        return schur_ket(mu, window, ell, cutoff)
    raise ValueError(f"unknown bra {which!r}")


VARIANT_VECTORS = {"G": ("double", "upper"), "Gds": ("upper", "upper"), "g": ("lower", "lower")}


def fock_matrix_element(
    mu, lam, variant: str, nvars: int, cutoff: int, window: tuple[int, int] | None = None, ell: int | None = None
) -> TruncSeries:
    """<bra_mu| e^{H(x_1..x_n)} |ket_lam> for the variant's vector pair.

    G pairs the double-bracket bra with the upper ket, G-double-slash the
    dual of the lower ket with the upper ket, and g the dual of the upper
    ket with the lower ket. For g the cutoff is ignored: the result is exact.
    """
    lam, mu = Partition(lam), Partition(mu)
    if variant not in VARIANT_VECTORS:
        raise ValueError(f"unknown variant {variant!r}")
    if ell is None:
        ell = max(len(lam) + 1, len(mu))
    if variant == "g":
        # only bra states no larger than lam can pair, and their degree is bounded
        cutoff = max(lam.size() - mu.size(), 0)
    if window is None:
        window = default_window(ell, max(lam.part(0), mu.part(0)), cutoff)
    bra_kind, ket_kind = VARIANT_VECTORS[variant]
    ket = canonical_ket(lam, ket_kind, window, cutoff, ell)
    bra = canonical_bra(mu, bra_kind, window, cutoff, ell)
    value = bra.pair(e_H(ket, nvars=nvars))
    if variant == "g":
        return TruncSeries(value, max(cutoff, value.degree(DEFAULT_GRADING)), DEFAULT_GRADING, True)
    return TruncSeries.make(value, cutoff)


def flagged_fermion_G(mu, lam, nvars: int, s: Sequence[int], cutoff: int, window: tuple[int, int] | None = None) -> TruncSeries:
    """Row-flagged G with lower flags 1, from staged e^{H(x_1..x_{s_i})} conjugations."""
    from .polynomial import b, x

    lam, mu = Partition(lam), Partition(mu)
    ell = len(s)
    if ell < max(len(lam), len(mu)):
        raise ValueError(f"need at least {max(len(lam), len(mu))} flags")
    if window is None:
        window = default_window(ell, max(lam.part(0), mu.part(0)) + max(s), cutoff)
    ket = FockVector.vacuum(-ell, window, cutoff)
    for i in range(ell, 0, -1):
        X = x_range(1, s[i - 1])
        Z = A(lam.part(i - 1)) | (B(ell) / B(i - 1))
        ket = e_H(ket, X, sign=-1)
        ket = e_Hstar(ket, Z, sign=-1)
        ket = apply_psi(ket, lam.part(i - 1) - i)
        ket = e_Hstar(ket, Z)
        ket = e_H(ket, X)
    bra = FockVector.vacuum(-ell, window, cutoff)
    for j in range(ell, 0, -1):
        Z = A(mu.part(j - 1)) | (B(ell) / B(j))
        bra = e_H(bra, Z)
        bra = apply_psi(bra, mu.part(j - 1) - j)
        bra = e_H(bra, Z, sign=-1)
    pref = Poly(1)
    for i in range(1, ell + 1):
        for k in range(1, s[i - 1] + 1):
            pref = pref * (1 - b(i) * x(k))
    return TruncSeries.make(bra.pair(ket).mul_trunc(pref, DEFAULT_GRADING, cutoff), cutoff)

"""Exact sparse polynomials over the integers and graded truncated series.

Monomials are packed into a single Python int so that multiplying two
monomials is one integer addition. The low bits hold one degree counter per
variable family; above them every registered variable owns an 8-bit exponent
slot. Integer comparison of packed monomials is a lex monomial order, which is
what :func:`exact_divide` needs. Printing never relies on the packing: terms
are decoded and sorted by the documented variable order.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence, Union

FAMILIES = ("x", "y", "alpha", "beta", "aux")
_PREFIX = {"x": "x", "y": "y", "alpha": "a", "beta": "b", "aux": "t"}
_FROM_PREFIX = {v: k for k, v in _PREFIX.items()}
_GREEK = {"x": "x", "y": "y", "alpha": "α", "beta": "β", "aux": "t"}
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")

_DEG_BITS = 12
_DEG_MASK = (1 << _DEG_BITS) - 1
_FAM_SHIFT = {f: i * _DEG_BITS for i, f in enumerate(FAMILIES)}
_BASE = len(FAMILIES) * _DEG_BITS
_EXP_BITS = 8
_EXP_MASK = (1 << _EXP_BITS) - 1
MAX_DEGREE = _EXP_MASK

DEFAULT_GRADING = frozenset({"alpha", "beta"})


class Variable(NamedTuple):
    family: str
    index: int

    def key(self) -> tuple[int, int]:
        return (FAMILIES.index(self.family), self.index)

    def name(self, unicode: bool = False) -> str:
        if unicode:
            return _GREEK[self.family] + str(self.index).translate(_SUB)
        return f"{_PREFIX[self.family]}{self.index}"

    @staticmethod
    def parse(name: str) -> "Variable":
        fam = _FROM_PREFIX.get(name[:1])
        if fam is None or not name[1:].isdigit():
            raise ValueError(f"unknown variable {name!r}")
        return Variable(fam, int(name[1:]))


_slot_of: dict[Variable, int] = {}
_var_of_slot: list[Variable] = []
_unit_of: dict[Variable, int] = {}
_family_mask: dict[str, int] = {f: _DEG_MASK << _FAM_SHIFT[f] for f in FAMILIES}


def _register(v: Variable) -> int:
    if v.family not in _FAM_SHIFT:
        raise ValueError(f"unknown family {v.family!r}")
    if v.index < 1:
        raise ValueError(f"variable index must be positive: {v}")
    slot = len(_var_of_slot)
    _slot_of[v] = slot
    _var_of_slot.append(v)
    shift = _BASE + slot * _EXP_BITS
    _unit_of[v] = (1 << shift) | (1 << _FAM_SHIFT[v.family])
    _family_mask[v.family] |= _EXP_MASK << shift
    return slot


# Low indices of all families first, interleaved, so typical monomials stay short
# and slot layout is identical in every process.
for _i in range(1, 17):
    for _f in ("x", "alpha", "beta", "y"):
        _register(Variable(_f, _i))
for _i in range(1, 5):
    _register(Variable("aux", _i))


def _unit(v: Variable) -> int:
    u = _unit_of.get(v)
    if u is None:
        _register(v)
        u = _unit_of[v]
    return u


def _decode(m: int) -> list[tuple[Variable, int]]:
    out = []
    rest = m >> _BASE
    slot = 0
    while rest:
        e = rest & _EXP_MASK
        if e:
            out.append((_var_of_slot[slot], e))
        rest >>= _EXP_BITS
        slot += 1
    return out


def _encode(exps: Mapping[Variable, int] | Iterable[tuple[Variable, int]]) -> int:
    items = exps.items() if isinstance(exps, Mapping) else exps
    m = 0
    for v, e in items:
        if e < 0:
            raise ValueError(f"negative exponent for {v}")
        if e > MAX_DEGREE:
            raise OverflowError(f"exponent {e} exceeds {MAX_DEGREE}")
        m += e * _unit(v)
    return m


def _total_degree(m: int) -> int:
    return sum((m >> s) & _DEG_MASK for s in _FAM_SHIFT.values())


_graders: dict[frozenset, Callable[[int], int]] = {}


def grader(grading: Iterable[str]) -> Callable[[int], int]:
    """Function from packed monomial to its degree in the given families."""
    key = frozenset(grading)
    g = _graders.get(key)
    if g is None:
        shifts = tuple(sorted(_FAM_SHIFT[f] for f in key))
        if len(shifts) == 1:
            (s0,) = shifts
            g = lambda m: (m >> s0) & _DEG_MASK
        elif len(shifts) == 2:
            s0, s1 = shifts
            g = lambda m: ((m >> s0) & _DEG_MASK) + ((m >> s1) & _DEG_MASK)
        else:
            g = lambda m: sum((m >> s) & _DEG_MASK for s in shifts)
        _graders[key] = g
    return g


class NotDivisibleError(ArithmeticError):
    """Raised by :func:`exact_divide` when the quotient is not a polynomial."""


class Poly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("_t", "_deg")

    def __init__(self, value: int | "Poly" = 0):
        if isinstance(value, Poly):
            self._t = value._t
        elif isinstance(value, int):
            self._t = {0: value} if value else {}
        else:
            raise TypeError(f"cannot make a Poly from {type(value).__name__}")
        self._deg = None

    @classmethod
    def _raw(cls, t: dict[int, int]) -> "Poly":
        p = cls.__new__(cls)
        p._t = t
        p._deg = None
        return p

    @classmethod
    def var(cls, v: Variable) -> "Poly":
        return cls._raw({_unit(v): 1})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Mapping[Variable, int], int]]) -> "Poly":
        t: dict[int, int] = {}
        for exps, c in terms:
            m = _encode(exps)
            t[m] = t.get(m, 0) + c
        return cls._raw({m: c for m, c in t.items() if c})

    # basic protocol

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def __reduce__(self):
        return (Poly.from_terms, (self.terms(),))

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> int:
        return self._t.get(0, 0)

    # arithmetic

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._t.items()})

    def __pos__(self) -> "Poly":
        return self

    def __add__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        if len(other._t) > len(self._t):
            self, other = other, self
        t = dict(self._t)
        for m, c in other._t.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                del t[m]
        return Poly._raw(t)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        t = dict(self._t)
        for m, c in other._t.items():
            s = t.get(m, 0) - c
            if s:
                t[m] = s
            else:
                del t[m]
        return Poly._raw(t)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            if not other:
                return Poly()
            return Poly._raw({m: c * other for m, c in self._t.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return Poly()
        if self.degree() + other.degree() > MAX_DEGREE:
            raise OverflowError("product degree exceeds packed exponent width")
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((m2, c2),) = b.items()
            return Poly._raw({m1 + m2: c1 * c2 for m1, c1 in a.items()})
        t: dict[int, int] = {}
        get = t.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = m1 + m2
                t[m] = get(m, 0) + c1 * c2
        return Poly._raw({m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly(1), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_trunc(self, other: "Poly", grading: Iterable[str], cutoff: int) -> "Poly":
        """Product keeping only terms of grading-degree at most ``cutoff``."""
        if cutoff < 0 or not self._t or not other._t:
            return Poly()
        g = grader(grading)
        a = _buckets(self._t, g, cutoff)
        b = _buckets(other._t, g, cutoff)
        if self.degree() + other.degree() > MAX_DEGREE:
            raise OverflowError("product degree exceeds packed exponent width")
        t: dict[int, int] = {}
        get = t.get
        for da, ta in a.items():
            for db, tb in b.items():
                if da + db > cutoff:
                    continue
                for m2, c2 in tb:
                    for m1, c1 in ta:
                        m = m1 + m2
                        t[m] = get(m, 0) + c1 * c2
        return Poly._raw({m: c for m, c in t.items() if c})

    def scale_div(self, k: int) -> "Poly":
        """Divide every coefficient by ``k``; raise if any is not divisible."""
        t = {}
        for m, c in self._t.items():
            q, r = divmod(c, k)
            if r:
                raise NotDivisibleError(f"coefficient {c} not divisible by {k}")
            t[m] = q
        return Poly._raw(t)

    # degrees and truncation

    def degree(self, grading: Iterable[str] | None = None) -> int:
        """Maximal degree in the given families (all families if None); -1 for 0."""
        if not self._t:
            return -1
        if grading is None:
            if self._deg is None:
                self._deg = max(_total_degree(m) for m in self._t)
            return self._deg
        g = grader(grading)
        return max(g(m) for m in self._t)

    def min_degree(self, grading: Iterable[str] | None = None) -> int:
        if not self._t:
            return -1
        g = grader(grading if grading is not None else FAMILIES)
        return min(g(m) for m in self._t)

    def truncate(self, grading: Iterable[str], cutoff: int) -> "Poly":
        g = grader(grading)
        return Poly._raw({m: c for m, c in self._t.items() if g(m) <= cutoff})

    def part_of_degree(self, grading: Iterable[str], d: int) -> "Poly":
        g = grader(grading)
        return Poly._raw({m: c for m, c in self._t.items() if g(m) == d})

    def variables(self) -> set[Variable]:
        out = set()
        for m in self._t:
            out.update(v for v, _ in _decode(m))
        return out

    def split(self, families: Iterable[str]) -> dict[tuple, "Poly"]:
        """Group terms by their exponents in ``families``.

        Keys are canonical tuples ``((Variable, exp), ...)``; values carry the
        remaining variables.
        """
        mask = 0
        for f in families:
            mask |= _family_mask[f]
        groups: dict[int, dict[int, int]] = {}
        for m, c in self._t.items():
            head = m & mask
            groups.setdefault(head, {})[m - head] = c
        return {
            tuple(sorted(_decode(h), key=lambda vc: vc[0].key())): Poly._raw(t)
            for h, t in groups.items()
        }

    def coefficient(self, exps: Mapping[Variable, int]) -> int:
        return self._t.get(_encode(exps), 0)

    # substitution

    def substitute(self, assignment: Mapping[Variable, "Poly | int"]) -> "Poly":
        """Simultaneous substitution; unassigned variables are kept."""
        if not assignment:
            return self
        assignment = {v: Poly(p) if isinstance(p, int) else p for v, p in assignment.items()}
        powers: dict[tuple[Variable, int], Poly] = {}
        result: dict[int, int] = {}
        for m, c in self._t.items():
            keep = 0
            factor = Poly(c)
            for v, e in _decode(m):
                if v in assignment:
                    key = (v, e)
                    pw = powers.get(key)
                    if pw is None:
                        pw = powers[key] = assignment[v] ** e
                    factor = factor * pw
                else:
                    keep += e * _unit_of[v]
            for m2, c2 in factor._t.items():
                k = m2 + keep
                s = result.get(k, 0) + c2
                if s:
                    result[k] = s
                else:
                    result.pop(k, None)
        return Poly._raw(result)

    def rename(self, mapping: Mapping[Variable, Variable]) -> "Poly":
        return self.substitute({v: Poly.var(w) for v, w in mapping.items()})

    # output

    def terms(self) -> list[tuple[tuple[tuple[Variable, int], ...], int]]:
        """Terms in canonical order: higher total degree first, then lex."""
        decoded = []
        for m, c in self._t.items():
            exps = tuple(sorted(_decode(m), key=lambda vc: vc[0].key()))
            decoded.append((exps, c))
        decoded.sort(key=_term_sort_key)
        return decoded

    def render(self, unicode: bool = False) -> str:
        if not self._t:
            return "0"
        pieces = []
        for exps, c in self.terms():
            mono = []
            for v, e in exps:
                name = v.name(unicode)
                if e == 1:
                    mono.append(name)
                elif unicode:
                    mono.append(name + str(e).translate(_SUP))
                else:
                    mono.append(f"{name}^{e}")
            sep = "" if unicode else "*"
            body = sep.join(mono)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}{sep}{body}"
            if not pieces:
                pieces.append(text if c > 0 else f"-{text}")
            else:
                pieces.append(f"+ {text}" if c > 0 else f"- {text}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly({self.render()!r})"

    def to_json(self) -> list[dict]:
        return [
            {"exponents": {v.name(): e for v, e in exps}, "coeff": str(c)}
            for exps, c in self.terms()
        ]

    @classmethod
    def from_json(cls, data: Sequence[Mapping] | str) -> "Poly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_terms(
            ({Variable.parse(k): int(e) for k, e in item["exponents"].items()}, int(item["coeff"]))
            for item in data
        )


def _term_sort_key(term):
    exps, _ = term
    total = sum(e for _, e in exps)
    # lex: larger exponent of the earliest variable comes first
    return (-total, tuple((v.key(), -e) for v, e in exps))


def _buckets(t: dict[int, int], g, cutoff: int) -> dict[int, list[tuple[int, int]]]:
    out: dict[int, list[tuple[int, int]]] = {}
    for m, c in t.items():
        d = g(m)
        if d <= cutoff:
            out.setdefault(d, []).append((m, c))
    return out


def x(i: int) -> Poly:
    return Poly.var(Variable("x", i))


def y(i: int) -> Poly:
    return Poly.var(Variable("y", i))


def a(i: int) -> Poly:
    """The variable alpha_i."""
    return Poly.var(Variable("alpha", i))


def b(i: int) -> Poly:
    """The variable beta_i."""
    return Poly.var(Variable("beta", i))


def t(i: int = 1) -> Poly:
    """An auxiliary formal variable."""
    return Poly.var(Variable("aux", i))


def parse_poly(text: str) -> Poly:
    """Parse the plain rendering produced by :meth:`Poly.render`."""
    s = text.replace(" ", "")
    if not s or s == "0":
        return Poly()
    terms = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] != "^":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    total = Poly()
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("+-")
        coeff, exps = 1, {}
        for factor in term.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, e = factor.partition("^")
            v = Variable.parse(name)
            exps[v] = exps.get(v, 0) + (int(e) if e else 1)
        total = total + Poly.from_terms([(exps, sign * coeff)])
    return total


# truncated series


@dataclass(frozen=True)
class TruncSeries:
    """A series known exactly through grading-degree ``cutoff``.

    ``exact`` means nothing beyond the cutoff was ever dropped, so ``body``
    is the full value.
    """

    body: Poly
    cutoff: int
    grading: frozenset = DEFAULT_GRADING
    exact: bool = False

    def __post_init__(self):
        object.__setattr__(self, "grading", frozenset(self.grading))
        if self.body.degree(self.grading) > self.cutoff:
            raise ValueError("series body has terms above its cutoff")

    @classmethod
    def make(cls, p: Poly, cutoff: int, grading=DEFAULT_GRADING, exact: bool | None = None):
        """Truncate ``p``; exact unless something was dropped (or ``exact`` given)."""
        grading = frozenset(grading)
        body = p.truncate(grading, cutoff)
        if exact is None:
            exact = len(body) == len(p)
        else:
            exact = exact and len(body) == len(p)
        return cls(body, cutoff, grading, exact)

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.grading != self.grading:
                raise ValueError(f"mixed gradings {sorted(self.grading)} and {sorted(other.grading)}")
            return other
        if isinstance(other, int):
            other = Poly(other)
        if isinstance(other, Poly):
            return TruncSeries.make(other, max(self.cutoff, other.degree(self.grading)), self.grading, True)
        raise TypeError(f"cannot combine series with {type(other).__name__}")

    def _addsub(self, other, op) -> "TruncSeries":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        c = min(self.cutoff, other.cutoff)
        x1, x2 = self.body.truncate(self.grading, c), other.body.truncate(self.grading, c)
        exact = self.exact and other.exact and len(x1) == len(self.body) and len(x2) == len(other.body)
        return TruncSeries(op(x1, x2), c, self.grading, exact)

    def __add__(self, other):
        return self._addsub(other, operator.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._addsub(other, operator.sub)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TruncSeries(-self.body, self.cutoff, self.grading, self.exact)

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        c = min(self.cutoff, other.cutoff)
        body = self.body.mul_trunc(other.body, self.grading, c)
        exact = self.exact and other.exact and (
            not self.body
            or not other.body
            or self.body.degree(self.grading) + other.body.degree(self.grading) <= c
        )
        return TruncSeries(body, c, self.grading, exact)

    __rmul__ = __mul__

    def truncate(self, cutoff: int) -> "TruncSeries":
        if cutoff >= self.cutoff:
            return self
        return TruncSeries.make(self.body, cutoff, self.grading, self.exact)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            return (self.body, self.cutoff, self.grading) == (other.body, other.cutoff, other.grading)
        return NotImplemented

    def __hash__(self):
        return hash((self.body, self.cutoff, self.grading))

    def agrees_with(self, other: "TruncSeries | Poly") -> bool:
        """Equality through the common cutoff."""
        if isinstance(other, Poly):
            return self.body == other.truncate(self.grading, self.cutoff)
        c = min(self.cutoff, other.cutoff)
        return self.body.truncate(self.grading, c) == other.body.truncate(self.grading, c)

    def __bool__(self) -> bool:
        return bool(self.body)

    def __str__(self) -> str:
        return self.render()

    def render(self, unicode: bool = False) -> str:
        text = self.body.render(unicode)
        if self.exact:
            return text
        families = "+".join(sorted(_PREFIX[f] for f in self.grading))
        return f"{text} + O({families}^{self.cutoff + 1})"


def arith(p, q, op: str):
    """Add, subtract or multiply two Poly or two TruncSeries values."""
    ops = {"add": operator.add, "sub": operator.sub, "mul": operator.mul}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    if isinstance(p, TruncSeries) and isinstance(q, TruncSeries) and p.grading != q.grading:
        raise ValueError("mixed gradings")
    return ops[op](p, q)


# division and determinants


def exact_divide(num: Poly, den: Poly) -> Poly:
    """Return ``q`` with ``q * den == num``, else raise NotDivisibleError."""
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if den.is_constant():
        return num.scale_div(den.constant_term())
    lead = max(den._t)
    lead_c = den._t[lead]
    lead_exps = _decode(lead)
    rem = dict(num._t)
    quot: dict[int, int] = {}
    while rem:
        m = max(rem)
        c = rem[m]
        exps = dict(_decode(m))
        if any(exps.get(v, 0) < e for v, e in lead_exps):
            raise NotDivisibleError("leading monomial not divisible")
        q, r = divmod(c, lead_c)
        if r:
            raise NotDivisibleError("leading coefficient not divisible")
        shift = m - lead
        quot[shift] = q
        for m2, c2 in den._t.items():
            k = m2 + shift
            s = rem.get(k, 0) - q * c2
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return Poly._raw(quot)


Entry = Union[Poly, TruncSeries]


def _is_zero(e) -> bool:
    return not e.body if isinstance(e, TruncSeries) else not e


def _laplace(M: Sequence[Sequence[Entry]], zero: Entry, one: Entry) -> Entry:
    n = len(M)
    memo: dict[int, Entry] = {}

    def minor(row: int, cols: int) -> Entry:
        # determinant of rows row.. restricted to the columns in bitmask cols
        if row == n:
            return one
        if cols in memo:
            return memo[cols]
        total = zero
        sign = 1
        for j in range(n):
            if not cols >> j & 1:
                continue
            e = M[row][j]
            if not _is_zero(e):
                sub = minor(row + 1, cols & ~(1 << j))
                if not _is_zero(sub):
                    term = e * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


def _bareiss(M: Sequence[Sequence[Poly]]) -> Poly:
    n = len(M)
    A = [list(row) for row in M]
    sign = 1
    prev = Poly(1)
    for k in range(n - 1):
        if not A[k][k]:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return Poly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = exact_divide(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def determinant(M: Sequence[Sequence[Entry]], method: str = "auto", bound: int = 12) -> Entry:
    """Exact determinant of a square matrix of Poly or TruncSeries entries.

    ``auto`` uses cofactor expansion up to size 5 and Bareiss elimination
    above. Truncated series always use cofactor expansion because Bareiss
    needs exact division.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    if n > bound:
        raise ValueError(f"matrix size {n} exceeds bound {bound}")
    if n == 0:
        return Poly(1)
    series = [e for row in M for e in row if isinstance(e, TruncSeries)]
    if series:
        cutoff = min(s.cutoff for s in series)
        grading = series[0].grading
        zero = TruncSeries(Poly(), cutoff, grading, True)
        M = [[e if isinstance(e, TruncSeries) else zero + e for e in row] for row in M]
        return _laplace(M, zero, zero + 1)
    M = [[Poly(e) if isinstance(e, int) else e for e in row] for row in M]
    if method == "bareiss" or (method == "auto" and n > 5):
        return _bareiss(M)
    if method not in ("auto", "cofactor", "bareiss"):
        raise ValueError(f"unknown method {method!r}")
    return _laplace(M, Poly(), Poly(1))


def substitute(p: Poly, assignment: Mapping[Variable, Poly | int]) -> Poly:
    return p.substitute(assignment)

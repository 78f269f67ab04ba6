"""Exact sparse multivariate polynomials and truncated jets over the rationals.

A polynomial is a map from exponent tuples to ``Fraction`` coefficients.  The
zero polynomial stores no terms; zero coefficients are never kept.  All
arithmetic is exact -- no floating point enters this module.

Variable conventions (fixed throughout the package):

    2 vars -> (x, y)      source coordinates of a surface parametrisation
    4 vars -> (X, Y, Z, W) target coordinates of 4-space
    5 vars -> (X, Y, Z, W, t) target coordinates plus a family parameter

A ``Jet`` is a polynomial together with a truncation degree; jet arithmetic
discards every monomial above the truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple[int, ...]
Scalar = int | Fraction

VAR_NAMES: dict[int, tuple[str, ...]] = {
    1: ("y",),
    2: ("x", "y"),
    4: ("X", "Y", "Z", "W"),
    5: ("X", "Y", "Z", "W", "t"),
}


class VariableMismatchError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


class CompositionError(ValueError):
    """Substitution would break the degree filtration (constant term present)."""


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class MonomialOrder(Enum):
    """Degree-compatible term orders with X > Y > Z > W (and x > y)."""

    GRLEX = "grlex"
    GREVLEX = "grevlex"

    def key(self, m: Monomial):
        """Sort key; ascending Python sort yields ascending monomial order."""
        if self is MonomialOrder.GRLEX:
            return (mono_degree(m), m)
        return (mono_degree(m), tuple(-e for e in reversed(m)))


DEFAULT_ORDER = MonomialOrder.GRLEX


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """All exponent tuples of the given total degree (unsorted)."""
    if degree < 0:
        return ()
    out = []
    for bars in combinations_with_replacement(range(nvars), degree):
        m = [0] * nvars
        for i in bars:
            m[i] += 1
        out.append(tuple(m))
    return tuple(out)


@lru_cache(maxsize=None)
def monomials_in_range(
    nvars: int, dmin: int, dmax: int, order: MonomialOrder = DEFAULT_ORDER
) -> tuple[Monomial, ...]:
    """Monomials with dmin <= degree <= dmax, ascending in the given order."""
    ms = [m for d in range(max(dmin, 0), dmax + 1) for m in monomials_of_degree(nvars, d)]
    ms.sort(key=order.key)
    return tuple(ms)


class Poly:
    """Immutable sparse polynomial with ``Fraction`` coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.  Degree of the
    zero polynomial is the sentinel -1.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Scalar] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    if len(m) != nvars:
                        raise VariableMismatchError(
                            f"monomial {m} has {len(m)} exponents, expected {nvars}"
                        )
                    clean[m] = c
        self.terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, m: Monomial, c: Scalar = 1) -> "Poly":
        return cls(nvars, {tuple(m): Fraction(c)})

    # ---- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def order(self) -> int:
        """Lowest degree of a term; -1 for the zero polynomial."""
        return min((mono_degree(m) for m in self.terms), default=-1)

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * self.nvars)

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(
            self.nvars,
            {m: c for m, c in self.terms.items() if mono_degree(m) == degree},
        )

    def truncate(self, degree: int) -> "Poly":
        return Poly(
            self.nvars,
            {m: c for m, c in self.terms.items() if mono_degree(m) <= degree},
        )

    def sorted_terms(
        self, order: MonomialOrder = DEFAULT_ORDER, reverse: bool = True
    ) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    # ---- arithmetic ----------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise VariableMismatchError(
                f"cannot combine polynomials in {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: "Poly | Scalar") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        p = Poly.__new__(Poly)
        p.nvars, p.terms = self.nvars, out
        return p

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = Poly.__new__(Poly)
        p.nvars = self.nvars
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other: "Poly | Scalar") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Poly":
        return Poly.const(self.nvars, other) - self

    def __mul__(self, other: "Poly | Scalar") -> "Poly":
        if not isinstance(other, Poly):
            c = Fraction(other)
            p = Poly.__new__(Poly)
            p.nvars = self.nvars
            p.terms = {m: c * v for m, v in self.terms.items()} if c else {}
            return p
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                s = out.get(m, Fraction(0)) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        p = Poly.__new__(Poly)
        p.nvars, p.terms = self.nvars, out
        return p

    __rmul__ = __mul__

    def mul_monomial(self, m: Monomial, c: Scalar = 1) -> "Poly":
        """Fast product with a single monomial c * x^m."""
        c = Fraction(c)
        p = Poly.__new__(Poly)
        p.nvars = self.nvars
        p.terms = {mono_mul(m, k): c * v for k, v in self.terms.items()} if c else {}
        return p

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # ---- calculus ------------------------------------------------------

    def partial(self, index: int) -> "Poly":
        """Formal partial derivative with respect to variable ``index``."""
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable index {index} out of range")
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[index]
            if e:
                k = list(m)
                k[index] = e - 1
                out[tuple(k)] = c * e
        return Poly(self.nvars, out)

    def compose(self, subs: Sequence["Poly"], trunc: int | None = None) -> "Poly":
        """Substitute ``subs[i]`` for variable i, truncating at ``trunc``.

        With a finite ``trunc`` every substituted polynomial must have zero
        constant term, otherwise the truncation would be meaningless.
        """
        if len(subs) != self.nvars:
            raise VariableMismatchError(
                f"need {self.nvars} substitution polynomials, got {len(subs)}"
            )
        if not subs:
            raise VariableMismatchError("empty substitution")
        target_nvars = subs[0].nvars
        for s in subs:
            if s.nvars != target_nvars:
                raise VariableMismatchError("substitution polynomials disagree on variables")
            if trunc is not None and s.constant_term():
                raise CompositionError(
                    "substitution with nonzero constant term under finite truncation"
                )
        # Cache powers of each substituted polynomial.
        max_exp = [0] * self.nvars
        for m in self.terms:
            for i, e in enumerate(m):
                max_exp[i] = max(max_exp[i], e)
        powers: list[list[Poly]] = []
        for i, s in enumerate(subs):
            ps = [Poly.const(target_nvars, 1)]
            for _ in range(max_exp[i]):
                nxt = ps[-1] * s
                if trunc is not None:
                    nxt = nxt.truncate(trunc)
                ps.append(nxt)
            powers.append(ps)
        acc = Poly.zero(target_nvars)
        for m, c in self.terms.items():
            term = Poly.const(target_nvars, c)
            for i, e in enumerate(m):
                if e:
                    term = term * powers[i][e]
                    if trunc is not None:
                        term = term.truncate(trunc)
            acc = acc + term
        return acc.truncate(trunc) if trunc is not None else acc

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise VariableMismatchError("point dimension mismatch")
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for v, e in zip(vals, m):
                if e:
                    term *= v**e
            total += term
        return total

    # ---- printing -------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {format_poly(self)!r})"


def format_poly(p: Poly, order: MonomialOrder = DEFAULT_ORDER) -> str:
    """Canonical text form: terms in descending monomial order."""
    if p.is_zero():
        return "0"
    names = VAR_NAMES.get(p.nvars)
    if names is None:
        names = tuple(f"x{i}" for i in range(p.nvars))
    pieces: list[str] = []
    for m, c in p.sorted_terms(order, reverse=True):
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


@dataclass(frozen=True)
class Jet:
    """A polynomial truncated at a fixed degree."""

    poly: Poly
    trunc: int

    def __post_init__(self) -> None:
        if self.poly.degree() > self.trunc:
            object.__setattr__(self, "poly", self.poly.truncate(self.trunc))

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @classmethod
    def of(cls, poly: Poly, trunc: int) -> "Jet":
        return cls(poly.truncate(trunc), trunc)

    def __add__(self, other: "Jet | Poly | Scalar") -> "Jet":
        if isinstance(other, Jet):
            t = min(self.trunc, other.trunc)
            return Jet((self.poly + other.poly).truncate(t), t)
        return Jet((self.poly + other).truncate(self.trunc), self.trunc)

    def __sub__(self, other: "Jet | Poly | Scalar") -> "Jet":
        if isinstance(other, Jet):
            t = min(self.trunc, other.trunc)
            return Jet((self.poly - other.poly).truncate(t), t)
        return Jet((self.poly - other).truncate(self.trunc), self.trunc)

    def __neg__(self) -> "Jet":
        return Jet(-self.poly, self.trunc)

    def __mul__(self, other: "Jet | Poly | Scalar") -> "Jet":
        if isinstance(other, Jet):
            t = min(self.trunc, other.trunc)
            return Jet((self.poly * other.poly).truncate(t), t)
        return Jet((self.poly * other).truncate(self.trunc), self.trunc)

    __rmul__ = __mul__

    def coeff(self, m: Monomial) -> Fraction:
        return self.poly.coeff(m)

    def compose(self, subs: Sequence[Poly], trunc: int | None = None) -> "Jet":
        t = self.trunc if trunc is None else min(self.trunc, trunc)
        return Jet(self.poly.compose(subs, t), t)

    def __str__(self) -> str:
        return f"{self.poly} + O({self.trunc + 1})"


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Exact product (named helper mirroring the library surface)."""
    return a * b


def partial(g: Poly, index: int) -> Poly:
    return g.partial(index)


def poly_compose(g: Poly, subs: Sequence[Poly], trunc: int | None = None) -> Poly:
    return g.compose(subs, trunc)


def rat_to_str(c: Fraction) -> str:
    """Canonical text for a rational; denominator omitted when 1."""
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)

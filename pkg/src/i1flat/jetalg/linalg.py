"""Exact row reduction over the rationals for graded polynomial spans.

A ``GradedSpan`` is the row space of coefficient vectors of polynomials,
restricted to the monomials of a degree window, kept in reduced row-echelon
form.  Rows are sparse dicts keyed by the column index of the monomial in the
fixed ascending monomial order.

``SpanSolver`` additionally tracks how each basis row combines the original
generators, so a membership certificate can be turned back into an explicit
polynomial combination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import (
    DEFAULT_ORDER,
    Jet,
    Monomial,
    MonomialOrder,
    Poly,
    mono_degree,
    monomials_in_range,
)

Row = dict[int, Fraction]


class RangeMismatchError(ValueError):
    """A vector has support outside the span's degree window."""


def _vector_of(p: Poly, index: dict[Monomial, int], strict: bool) -> Row:
    row: Row = {}
    for m, c in p.terms.items():
        col = index.get(m)
        if col is None:
            if strict:
                raise RangeMismatchError(
                    f"term of degree {mono_degree(m)} outside the degree window"
                )
            continue
        row[col] = c
    return row


class _Echelon:
    """Mutable RREF accumulator; pivot = smallest column of each row."""

    def __init__(self) -> None:
        self.rows: dict[int, Row] = {}  # pivot column -> row (pivot coeff 1)

    def reduce(self, row: Row) -> Row:
        row = dict(row)
        while row:
            piv = min(row)
            basis = self.rows.get(piv)
            if basis is None:
                return row
            c = row[piv]
            for col, v in basis.items():
                s = row.get(col, Fraction(0)) - c * v
                if s:
                    row[col] = s
                else:
                    row.pop(col, None)
        return row

    def insert(self, row: Row) -> bool:
        """Reduce and insert; returns True if the rank grew."""
        row = self.reduce(row)
        if not row:
            return False
        piv = min(row)
        inv = 1 / row[piv]
        row = {c: v * inv for c, v in row.items()}
        # Back-substitute to keep reduced echelon form.
        for p, existing in self.rows.items():
            c = existing.get(piv)
            if c:
                for col, v in row.items():
                    s = existing.get(col, Fraction(0)) - c * v
                    if s:
                        existing[col] = s
                    else:
                        existing.pop(col, None)
        self.rows[piv] = row
        return True

    def contains(self, row: Row) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class GradedSpan:
    """Row-reduced span of polynomial coefficient vectors on a degree window."""

    nvars: int
    dmin: int
    dmax: int
    order: MonomialOrder
    monomials: tuple[Monomial, ...]
    rows: tuple[tuple[tuple[int, Fraction], ...], ...]  # pivot-ascending RREF rows

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _echelon(self) -> _Echelon:
        ech = _Echelon()
        for r in self.rows:
            row = dict(r)
            ech.rows[min(row)] = row
        return ech

    def _index(self) -> dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}

    def contains_poly(self, p: Poly, strict: bool = True) -> bool:
        if p.nvars != self.nvars:
            raise RangeMismatchError("variable count mismatch")
        row = _vector_of(p, self._index(), strict)
        return self._echelon().contains(row)

    def basis_polys(self) -> list[Poly]:
        out = []
        for r in self.rows:
            out.append(Poly(self.nvars, {self.monomials[c]: v for c, v in r}))
        return out


def _freeze(ech: _Echelon, nvars: int, dmin: int, dmax: int, order: MonomialOrder,
            monomials: tuple[Monomial, ...]) -> GradedSpan:
    rows = []
    for piv in sorted(ech.rows):
        row = ech.rows[piv]
        rows.append(tuple(sorted(row.items())))
    return GradedSpan(nvars, dmin, dmax, order, monomials, tuple(rows))


def span_of(
    jets: Sequence[Jet | Poly],
    degree_range: tuple[int, int],
    order: MonomialOrder = DEFAULT_ORDER,
) -> GradedSpan:
    """Span of the coefficient vectors restricted to the degree window."""
    dmin, dmax = degree_range
    polys = [j.poly if isinstance(j, Jet) else j for j in jets]
    nvars = polys[0].nvars if polys else 4
    for p in polys:
        if p.nvars != nvars:
            raise RangeMismatchError("inputs disagree on variable count")
    for j in jets:
        if isinstance(j, Jet) and j.trunc < dmax:
            raise RangeMismatchError(
                f"jet truncated at {j.trunc} cannot span degrees up to {dmax}"
            )
    monomials = monomials_in_range(nvars, dmin, dmax, order)
    index = {m: i for i, m in enumerate(monomials)}
    ech = _Echelon()
    vectors = [_vector_of(p, index, strict=False) for p in polys]
    vectors = [v for v in vectors if v]
    vectors.sort(key=lambda r: min(r))
    for v in vectors:
        ech.insert(v)
    return _freeze(ech, nvars, dmin, dmax, order, monomials)


def member(j: Jet | Poly, sub: GradedSpan) -> bool:
    """Whether the coefficient vector of ``j`` lies in the row space.

    The vector must be supported inside the span's degree window.
    """
    p = j.poly if isinstance(j, Jet) else j
    return sub.contains_poly(p, strict=True)


def quotient_complement(
    sub: GradedSpan, degree_range: tuple[int, int]
) -> list[Monomial]:
    """Monomials whose classes span the quotient by ``sub`` on the window.

    Chosen greedily smallest-first in the span's monomial order; the result
    size always equals (number of window monomials) - contribution of ``sub``
    inside the window.
    """
    dmin, dmax = degree_range
    if dmin < sub.dmin or dmax > sub.dmax:
        raise RangeMismatchError(
            f"requested window [{dmin},{dmax}] outside span window [{sub.dmin},{sub.dmax}]"
        )
    index = sub._index()
    ech = sub._echelon()
    out: list[Monomial] = []
    for m in monomials_in_range(sub.nvars, dmin, dmax, sub.order):
        unit = {index[m]: Fraction(1)}
        if ech.insert(unit):
            out.append(m)
    return out


class SpanSolver:
    """Incremental span with provenance: expresses members in the generators."""

    def __init__(self, nvars: int, dmin: int, dmax: int,
                 order: MonomialOrder = DEFAULT_ORDER):
        self.nvars = nvars
        self.dmin = dmin
        self.dmax = dmax
        self.order = order
        self.monomials = monomials_in_range(nvars, dmin, dmax, order)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.rows: dict[int, tuple[Row, dict[int, Fraction]]] = {}
        self.ngens = 0

    def _reduce(self, row: Row, combo: dict[int, Fraction]) -> tuple[Row, dict[int, Fraction]]:
        row = dict(row)
        combo = dict(combo)
        while row:
            piv = min(row)
            entry = self.rows.get(piv)
            if entry is None:
                return row, combo
            basis, bcombo = entry
            c = row[piv]
            for col, v in basis.items():
                s = row.get(col, Fraction(0)) - c * v
                if s:
                    row[col] = s
                else:
                    row.pop(col, None)
            for g, v in bcombo.items():
                s = combo.get(g, Fraction(0)) - c * v
                if s:
                    combo[g] = s
                else:
                    combo.pop(g, None)
        return row, combo

    def add_generator(self, p: Poly) -> int:
        """Insert a generator; returns its index (used in solve() combos)."""
        gid = self.ngens
        self.ngens += 1
        row = _vector_of(p.truncate(self.dmax), self.index, strict=False)
        row = {c: v for c, v in row.items()}
        row, combo = self._reduce(row, {gid: Fraction(1)})
        if row:
            piv = min(row)
            inv = 1 / row[piv]
            row = {c: v * inv for c, v in row.items()}
            combo = {g: v * inv for g, v in combo.items()}
            self.rows[piv] = (row, combo)
        return gid

    def solve(self, target: Poly) -> dict[int, Fraction] | None:
        """Combination of generators matching ``target`` on the window, or None.

        The match is exact on every monomial of the window: lower-degree
        components must cancel, not merely be ignored.
        """
        row = _vector_of(target.truncate(self.dmax), self.index, strict=True)
        row, combo = self._reduce(row, {})
        if row:
            return None
        return {g: -v for g, v in combo.items()}

"""The model surface X = image of (x, y) -> (x, xy, y^2, y^3) and its tangent fields.

The surface is carried around as exact data: the parametrisation, the four
generators of its defining ideal, and the thirteen generating vector fields
of the module of vector fields tangent to X (the Derlog module).  Tangency is
machine-checked by pulling back along the parametrisation, and every tangent
field is re-verified by solving for an explicit lift to the source.

Note on the second field: the generator list is stated here with X^2 in the
dY slot (xi_2 = X^2 dY + 2Y dZ + 3XZ dW).  With X^2 in the dX slot the field
fails the tangency criterion on Y^2 - X^2*Z, is not liftable, and breaks the
weighted homogeneity shared by xi_2, xi_6, xi_10; the dY placement passes all
three checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .jetalg import Poly, parse_poly

_X, _Y, _Z, _W = (Poly.variable(4, i) for i in range(4))
_x, _y = (Poly.variable(2, i) for i in range(2))


class InvalidParameterError(ValueError):
    """Parameter outside the validity range of a linear change."""


@dataclass(frozen=True)
class VectorField:
    """Vector field on 4-space with polynomial components (dX, dY, dZ, dW)."""

    components: tuple[Poly, Poly, Poly, Poly]
    label: str = "derived"

    def __call__(self, g: Poly) -> Poly:
        return apply_field(self, g)

    def linear_part(self) -> tuple[Poly, Poly, Poly, Poly]:
        return tuple(c.homogeneous_part(1) for c in self.components)

    def scale(self, c: Fraction | int) -> "VectorField":
        return VectorField(tuple(p * c for p in self.components), "derived")

    def add(self, other: "VectorField") -> "VectorField":
        return VectorField(
            tuple(a + b for a, b in zip(self.components, other.components)), "derived"
        )

    def mul_monomial(self, m, c=1) -> "VectorField":
        return VectorField(tuple(p.mul_monomial(m, c) for p in self.components), "derived")


@dataclass(frozen=True)
class LiftWitness:
    """Source field eta = (a, b) with df(eta) = xi o f, checked on construction."""

    eta: tuple[Poly, Poly]
    field: VectorField

    def __post_init__(self) -> None:
        if not _lift_equations_hold(self.field, self.eta):
            raise ValueError("lift witness does not satisfy df(eta) = xi o f")


@dataclass(frozen=True)
class NotLiftable:
    """Failure record naming the first lift equation that breaks."""

    field: VectorField
    equation: str


def _field(fx, fy, fz, fw, label: str) -> VectorField:
    comp = tuple(
        parse_poly(s, 4) if isinstance(s, str) else (s if isinstance(s, Poly) else Poly.const(4, s))
        for s in (fx, fy, fz, fw)
    )
    return VectorField(comp, label)


# Generators of the tangent-field module.  xi_1 .. xi_7 have nonzero linear
# 1-jets; xi_8 .. xi_13 vanish to second order.
TANGENT_FIELDS: tuple[VectorField, ...] = (
    _field("X", "Y", 0, 0, "xi1"),
    _field(0, "X^2", "2*Y", "3*X*Z", "xi2"),
    _field(0, "Y", "2*Z", "3*W", "xi3"),
    _field("Y", "X*Z", 0, 0, "xi4"),
    _field("Z", "W", 0, 0, "xi5"),
    _field(0, "X*Z", "2*W", "3*Z^2", "xi6"),
    _field("W", "Z^2", 0, 0, "xi7"),
    _field(0, 0, 0, "Y^2 - X^2*Z", "xi8"),
    _field(0, 0, 0, "Y*Z - X*W", "xi9"),
    _field(0, "X*W", "2*Z^2", "3*Z*W", "xi10"),
    _field(0, 0, 0, "Y*W - X*Z^2", "xi11"),
    _field(0, 0, 0, "W^2 - Z^3", "xi12"),
    _field(0, "W^2 - Z^3", 0, 0, "xi13"),
)


@dataclass(frozen=True)
class ModelSurface:
    """Parametrisation, ideal generators, and tangent fields of X."""

    f: tuple[Poly, Poly, Poly, Poly]
    ideal_gens: tuple[Poly, Poly, Poly, Poly]
    fields: tuple[VectorField, ...]

    def __post_init__(self) -> None:
        for h in self.ideal_gens:
            if not pullback(h, self).is_zero():
                raise ValueError(f"ideal generator {h} does not vanish on the surface")
        dz = [[c.coeff((1, 0)), c.coeff((0, 1))] for c in self.f]
        rank = sum(1 for col in zip(*dz) if any(col))
        # Columns of df(0): f has df(0) = [[1,0],[0,0],[0,0],[0,0]]-shape, rank 1.
        nonzero_cols = [any(row[j] for row in dz) for j in range(2)]
        if sum(nonzero_cols) != 1:
            raise ValueError("parametrisation is not corank 1 at the origin")


def pullback(g: Poly, surface: "ModelSurface | None" = None) -> Poly:
    """g composed with the parametrisation, as an exact 2-variable polynomial."""
    f = (surface or MODEL).f
    return g.compose(list(f))


def is_in_ideal(g: Poly, surface: "ModelSurface | None" = None) -> bool:
    """Vanishing on the surface, used as the ideal-membership test.

    The defining ideal is reduced, so for polynomials this agrees with
    membership in the vanishing ideal of the image.
    """
    return pullback(g, surface).is_zero()


def apply_field(xi: VectorField, g: Poly) -> Poly:
    """Directional derivative sum_i xi_i * dg/dX_i."""
    acc = Poly.zero(4)
    for i, comp in enumerate(xi.components):
        if not comp.is_zero():
            acc = acc + comp * g.partial(i)
    return acc


def verify_tangency(xi: VectorField, surface: "ModelSurface | None" = None) -> bool:
    """xi is tangent iff it maps every ideal generator into the ideal."""
    surface = surface or MODEL
    return all(is_in_ideal(apply_field(xi, h), surface) for h in surface.ideal_gens)


MODEL = ModelSurface(
    f=(_x, _x * _y, _y**2, _y**3),
    ideal_gens=(
        parse_poly("Y^2 - X^2*Z", 4),
        parse_poly("W^2 - Z^3", 4),
        parse_poly("X*W - Y*Z", 4),
        parse_poly("Y*W - X*Z^2", 4),
    ),
    fields=TANGENT_FIELDS,
)


def _divide_by_monomial(p: Poly, var: int, power: int) -> Poly | None:
    """Exact division by y^power (var index in 2 variables); None if impossible."""
    out = {}
    for m, c in p.terms.items():
        if m[var] < power:
            return None
        k = list(m)
        k[var] -= power
        out[tuple(k)] = c
    return Poly(2, out)


def _lift_equations_hold(xi: VectorField, eta: tuple[Poly, Poly]) -> bool:
    a, b = eta
    f = MODEL.f
    p = [c.compose(list(f)) for c in xi.components]
    # df(eta) rows: (a, y*a + x*b, 2y*b, 3y^2*b)
    lhs = (
        a,
        _y * a + _x * b,
        2 * _y * b,
        3 * _y**2 * b,
    )
    return all((l - r).is_zero() for l, r in zip(lhs, p))


def lift_vector_field(xi: VectorField) -> LiftWitness | NotLiftable:
    """Solve df(eta) = xi o f for eta = (a, b).

    The differential rows (1, y*, 2y*, 3y^2*) make this a triangular solve:
    a comes from component 1, b from component 3 by exact division, and
    components 2 and 4 are consistency checks.
    """
    p = [c.compose(list(MODEL.f)) for c in xi.components]
    a = p[0]
    half_p3 = p[2] * Fraction(1, 2)
    b = _divide_by_monomial(half_p3, 1, 1)
    if b is None:
        return NotLiftable(xi, "2y*b = p3 has no polynomial solution")
    if not (_y * a + _x * b - p[1]).is_zero():
        return NotLiftable(xi, "y*a + x*b = p2 fails")
    if not (3 * _y**2 * b - p[3]).is_zero():
        return NotLiftable(xi, "3y^2*b = p4 fails")
    return LiftWitness((a, b), xi)


# ---------------------------------------------------------------------------
# Linear changes of coordinates (integrated 1-jets of the tangent fields).
#
# eta1, eta3, eta5, eta8 preserve the surface exactly as linear maps.  The
# linear maps eta2, eta4, eta6, eta7 are only the 1-jets of exact flows of
# xi2, xi4, xi6, xi7; the honest surface-preserving group elements are the
# full flows (see rxclass.lie_transform), which agree with these matrices to
# first order.
# ---------------------------------------------------------------------------

LINEAR_CHANGE_LABELS = ("eta1", "eta2", "eta3", "eta4", "eta5", "eta6", "eta7", "eta8")


@dataclass(frozen=True)
class LinearChange:
    """4x4 substitution matrix: new coordinates as combinations of old ones."""

    label: str
    matrix: tuple[tuple[Fraction, ...], ...]

    def substitution(self) -> list[Poly]:
        subs = []
        for row in self.matrix:
            p = Poly.zero(4)
            for j, c in enumerate(row):
                if c:
                    p = p + Poly.variable(4, j) * c
            subs.append(p)
        return subs

    def apply(self, g: Poly) -> Poly:
        return g.compose(self.substitution())

    def is_invertible(self) -> bool:
        return _det4(self.matrix) != 0


def _det4(m) -> Fraction:
    import itertools

    total = Fraction(0)
    for perm in itertools.permutations(range(4)):
        sign = 1
        seen = list(perm)
        for i in range(4):
            for j in range(i + 1, 4):
                if seen[i] > seen[j]:
                    sign = -sign
        prod = Fraction(1)
        for i, j in enumerate(perm):
            prod *= m[i][j]
        total += sign * prod
    return total


def linear_change(label: str, param: Fraction | int | None = None) -> LinearChange:
    """Build one of the eight canonical linear changes.

    For eta1 and eta3 the parameter is the positive scale factor (playing the
    role of e^alpha); for eta2, eta4..eta7 it is the shear coefficient and
    must be nonzero; eta8 takes no parameter.
    """
    t = None if param is None else Fraction(param)
    O, I = Fraction(0), Fraction(1)

    def mat(rows):
        return tuple(tuple(Fraction(v) for v in row) for row in rows)

    if label == "eta1":
        if t is None or t <= 0:
            raise InvalidParameterError("eta1 needs a positive scale parameter")
        return LinearChange(label, mat([[t, O, O, O], [O, t, O, O], [O, O, I, O], [O, O, O, I]]))
    if label == "eta3":
        if t is None or t <= 0:
            raise InvalidParameterError("eta3 needs a positive scale parameter")
        return LinearChange(
            label, mat([[I, O, O, O], [O, t, O, O], [O, O, t * t, O], [O, O, O, t**3]])
        )
    if label == "eta8":
        if param is not None:
            raise InvalidParameterError("eta8 takes no parameter")
        return LinearChange(label, mat([[-1, O, O, O], [O, -1, O, O], [O, O, I, O], [O, O, O, I]]))
    if t is None or t == 0:
        raise InvalidParameterError(f"{label} needs a nonzero shear parameter")
    if label == "eta2":
        rows = [[I, O, O, O], [O, I, O, O], [O, t, I, O], [O, O, O, I]]
    elif label == "eta4":
        rows = [[I, t, O, O], [O, I, O, O], [O, O, I, O], [O, O, O, I]]
    elif label == "eta5":
        rows = [[I, O, t, O], [O, I, O, t], [O, O, I, O], [O, O, O, I]]
    elif label == "eta6":
        rows = [[I, O, O, O], [O, I, O, O], [O, O, I, t], [O, O, O, I]]
    elif label == "eta7":
        rows = [[I, O, O, t], [O, I, O, O], [O, O, I, O], [O, O, O, I]]
    else:
        raise InvalidParameterError(f"unknown linear change {label!r}")
    return LinearChange(label, mat(rows))


def apply_linear_change(label: str, g: Poly, param: Fraction | int | None = None) -> Poly:
    """Compose g with the named linear change at the given parameter."""
    return linear_change(label, param).apply(g)

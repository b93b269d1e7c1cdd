"""Exact algebra of the Cayley ruled cubic surface.

The surface is W: t0*t1*t2 - t0^2*t3 - t1^3 = 0 in P^3, singular along
the double line t0 = t1 = 0.  V denotes the complement of the double
line; on W that is exactly the locus t0 != 0, and V carries a ruling by
lines indexed by primitive pairs (lambda, mu) with mu >= 1:

    lambda*t0 - mu*t1 = 0,
    lambda*mu*t2 - lambda^2*t1 - mu^2*t3 = 0.

Everything in this module is exact integer / rational arithmetic; no
floats anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, abs(v))
    return g


def _normalize_vector(coords: Sequence[int]) -> tuple[int, ...]:
    """Primitive representative with the first nonzero coordinate positive."""
    g = _gcd_all(coords)
    if g == 0:
        raise ValueError("zero vector does not represent a projective point")
    coords = tuple(c // g for c in coords)
    for c in coords:
        if c != 0:
            if c < 0:
                coords = tuple(-x for x in coords)
            break
    return coords


def _clear_denominators(values: Sequence[Rational]) -> tuple[int, ...]:
    fracs = [Fraction(v) for v in values]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    return tuple(int(f * lcm) for f in fracs)


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^3 as a sign-normalized primitive integer 4-vector."""

    t0: int
    t1: int
    t2: int
    t3: int

    def __post_init__(self):
        coords = (self.t0, self.t1, self.t2, self.t3)
        if _gcd_all(coords) != 1:
            raise ValueError(f"not primitive: {coords}")
        for c in coords:
            if c != 0:
                if c < 0:
                    raise ValueError(f"not sign-normalized: {coords}")
                break

    @classmethod
    def from_raw(cls, t0: Rational, t1: Rational, t2: Rational, t3: Rational) -> "ProjPoint":
        ints = _clear_denominators((t0, t1, t2, t3))
        return cls(*_normalize_vector(ints))

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.t0, self.t1, self.t2, self.t3)


@dataclass(frozen=True)
class LineIndex:
    """Line of the ruling, normalized primitive pair (lambda, mu), mu >= 1."""

    lam: int
    mu: int

    def __post_init__(self):
        if self.mu < 1:
            raise ValueError(f"mu must be >= 1, got {self.mu}")
        if math.gcd(abs(self.lam), self.mu) != 1:
            raise ValueError(f"not primitive: ({self.lam}, {self.mu})")

    @classmethod
    def from_raw(cls, lam: int, mu: int) -> "LineIndex":
        if mu == 0:
            raise ValueError("mu = 0 does not index a line of the ruling")
        g = math.gcd(abs(lam), abs(mu))
        lam, mu = lam // g, mu // g
        if mu < 0:
            lam, mu = -lam, -mu
        return cls(lam, mu)


@dataclass(frozen=True)
class LineParam:
    """Point on a line, normalized primitive pair (tau0, tau1), tau0 >= 1."""

    tau0: int
    tau1: int

    def __post_init__(self):
        if self.tau0 < 1:
            raise ValueError(f"tau0 must be >= 1, got {self.tau0}")
        if math.gcd(self.tau0, abs(self.tau1)) != 1:
            raise ValueError(f"not primitive: ({self.tau0}, {self.tau1})")

    @classmethod
    def from_raw(cls, tau0: int, tau1: int) -> "LineParam":
        if tau0 == 0:
            raise ValueError("tau0 = 0 lies on the double line, not on V")
        g = math.gcd(abs(tau0), abs(tau1))
        tau0, tau1 = tau0 // g, tau1 // g
        if tau0 < 0:
            tau0, tau1 = -tau0, -tau1
        return cls(tau0, tau1)


@dataclass(frozen=True)
class GroupPoint:
    """Point of the additive group G = G_a^2 acting on the surface."""

    x: Fraction
    y: Fraction

    def __init__(self, x: Rational, y: Rational):
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))


@dataclass(frozen=True)
class ScrollPoint:
    """Point of the cubic scroll X in P^2 x P^1: x1*y2 = x2*y1."""

    x0: Fraction
    x1: Fraction
    x2: Fraction
    y1: Fraction
    y2: Fraction

    def __init__(self, x0: Rational, x1: Rational, x2: Rational,
                 y1: Rational, y2: Rational):
        x0, x1, x2, y1, y2 = (Fraction(v) for v in (x0, x1, x2, y1, y2))
        if x0 == x1 == x2 == 0:
            raise ValueError("(x0, x1, x2) must be nonzero")
        if y1 == y2 == 0:
            raise ValueError("(y1, y2) must be nonzero")
        if x1 * y2 != x2 * y1:
            raise ValueError("bilinear relation x1*y2 = x2*y1 violated")
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)
        object.__setattr__(self, "y1", y1)
        object.__setattr__(self, "y2", y2)


PointLike = Union[ProjPoint, Sequence[int]]


def _coords(t: PointLike) -> tuple[int, int, int, int]:
    if isinstance(t, ProjPoint):
        return t.coords
    t0, t1, t2, t3 = t
    return (int(t0), int(t1), int(t2), int(t3))


def cubic_form(t: PointLike) -> int:
    """t0*t1*t2 - t0^2*t3 - t1^3; zero exactly on the surface."""
    t0, t1, t2, t3 = _coords(t)
    return t0 * t1 * t2 - t0 * t0 * t3 - t1 ** 3


def is_on_v(t: PointLike) -> bool:
    """On the surface and off the double line (equivalently t0 != 0)."""
    t0, t1, _, _ = _coords(t)
    return cubic_form(t) == 0 and (t0, t1) != (0, 0)


def phi(s: ScrollPoint) -> ProjPoint:
    """Desingularization map from the scroll onto the surface.

    (x0, x1, x2; y1, y2) -> (x1 y1, x1 y2, x0 y1 + x2 y2, x0 y2);
    the image always satisfies the cubic equation.
    """
    image = (s.x1 * s.y1, s.x1 * s.y2, s.x0 * s.y1 + s.x2 * s.y2, s.x0 * s.y2)
    if all(v == 0 for v in image):
        raise ValueError(f"degenerate scroll point maps to zero: {s}")
    point = ProjPoint.from_raw(*image)
    assert cubic_form(point) == 0
    return point


def phi_inverse_on_v(t: ProjPoint) -> ScrollPoint:
    """Inverse of phi on V (t0 != 0): rational scroll coordinates.

    (x0/x1, 1, x2/x1) = (-(t1/t0)^2 + t2/t0, 1, t1/t0), with the second
    factor (y1, y2) = (1, t1/t0) forced by the bilinear relation.
    """
    if not is_on_v(t):
        raise ValueError(f"point not on V: {t}")
    u = Fraction(t.t1, t.t0)
    return ScrollPoint(-u * u + Fraction(t.t2, t.t0), 1, u, 1, u)


def line_of_point(t: ProjPoint) -> LineIndex:
    """The unique line of the ruling through a point of V: (lambda:mu) = (t1:t0)."""
    if not is_on_v(t):
        raise ValueError(f"point not on V: {t}")
    y = LineIndex.from_raw(t.t1, t.t0)
    # both defining equations vanish: the second is cubic_form / gcd(t1,t0)^2
    assert y.lam * t.t0 - y.mu * t.t1 == 0
    assert y.lam * y.mu * t.t2 - y.lam ** 2 * t.t1 - y.mu ** 2 * t.t3 == 0
    return y


def param_line(y: LineIndex, tau: LineParam) -> ProjPoint:
    """Parametrize the line: (mu^2 tau0, lambda mu tau0, lambda^2 tau0 + mu tau1, lambda tau1).

    For primitive (tau0, tau1) the raw vector is already primitive.
    """
    lam, mu = y.lam, y.mu
    raw = (mu * mu * tau.tau0, lam * mu * tau.tau0,
           lam * lam * tau.tau0 + mu * tau.tau1, lam * tau.tau1)
    assert _gcd_all(raw) == 1
    return ProjPoint.from_raw(*raw)


def param_of_point(t: ProjPoint, y: LineIndex | None = None) -> LineParam:
    """Recover the line parameter of a point of V; inverse of param_line."""
    if y is None:
        y = line_of_point(t)
    lam, mu = y.lam, y.mu
    if t.t0 % (mu * mu) != 0:
        raise ValueError(f"{t} does not lie on line {y}")
    tau0 = t.t0 // (mu * mu)
    if lam != 0:
        if t.t3 % lam != 0:
            raise ValueError(f"{t} does not lie on line {y}")
        tau1 = t.t3 // lam
    else:
        tau1 = (t.t2 - lam * lam * tau0) // mu
    tau = LineParam(tau0, tau1)
    assert param_line(y, tau) == t
    return tau


def discriminant_f(y: LineIndex) -> int:
    """The sextic form f(lambda, mu) = l^6 + 2 l^4 m^2 + l^2 m^4 + m^6 (> 0)."""
    l2, m2 = y.lam * y.lam, y.mu * y.mu
    return l2 ** 3 + 2 * l2 * l2 * m2 + l2 * m2 * m2 + m2 ** 3


def quad_form_of_line(y: LineIndex) -> tuple[int, int, int]:
    """Coefficients (A, B2, C) of the squared norm of param_line.

    ||param_line(y, tau)||^2 = A tau0^2 + 2 B2 tau0 tau1 + C tau1^2 with

        A = lambda^4 + lambda^2 mu^2 + mu^4,  B2 = lambda^2 mu,
        C = lambda^2 + mu^2.

    Fixed by symbolic expansion of the norm; the determinant A*C - B2^2
    equals f(mu, lambda) (the series over all lines is insensitive to
    this argument swap, the per-line constants are not).
    """
    l2, m2 = y.lam * y.lam, y.mu * y.mu
    return (l2 * l2 + l2 * m2 + m2 * m2, l2 * y.mu, l2 + m2)


def line_det(y: LineIndex) -> int:
    """Determinant A*C - B2^2 of the line's height form; equals f(mu, lambda)."""
    A, B2, C = quad_form_of_line(y)
    return A * C - B2 * B2


def group_add(g: GroupPoint, h: GroupPoint) -> GroupPoint:
    """(x, y) + (x', y') = (x + x', y + y' + 3 x x')."""
    return GroupPoint(g.x + h.x, g.y + h.y + 3 * g.x * h.x)


def group_neg(g: GroupPoint) -> GroupPoint:
    return GroupPoint(-g.x, -g.y + 3 * g.x * g.x)


GROUP_IDENTITY = GroupPoint(0, 0)
BASE_POINT = ProjPoint(1, 0, 0, 0)


def group_act(g: GroupPoint, t: ProjPoint) -> ProjPoint:
    """Action of (x, y) on the surface:

    (t0, t1 + y t0, t2 + x t0 + 3 y t1, t3 + x t1 + y t2 + (xy - y^3) t0).

    Preserves the cubic form.  Successive actions compose through
    act_compose, not through group_add: the two displays label the
    coordinates of G oppositely (see act_compose).
    """
    if cubic_form(t) != 0:
        raise ValueError(f"point not on the surface: {t}")
    x, y = g.x, g.y
    t0, t1, t2, t3 = t.coords
    image = (Fraction(t0),
             t1 + y * t0,
             t2 + x * t0 + 3 * y * t1,
             t3 + x * t1 + y * t2 + (x * y - y ** 3) * t0)
    result = ProjPoint.from_raw(*image)
    assert cubic_form(result) == 0
    return result


def act_compose(g: GroupPoint, h: GroupPoint) -> GroupPoint:
    """The parameter composition realized by group_act:

    group_act(g, group_act(h, t)) = group_act(act_compose(g, h), t)

    with act_compose((x,y),(x',y')) = (x + x' + 3 y y', y + y').  This is
    group_add conjugated by the coordinate swap (x,y) -> (y,x); the swap
    is an isomorphism between the two presentations of the same group.
    """
    return GroupPoint(g.x + h.x + 3 * g.y * h.y, g.y + h.y)


def swap_xy(g: GroupPoint) -> GroupPoint:
    return GroupPoint(g.y, g.x)


def embed_group_point(g: GroupPoint) -> ProjPoint:
    """Orbit of the base point (1,0,0,0): the bijection G(Q) -> V(Q).

    embed(x, y) = (1, y, x, xy - y^3); the unordered coordinate set is
    {1, x, y, xy - y^3}, so the affine height formulas apply verbatim.
    """
    return group_act(g, BASE_POINT)

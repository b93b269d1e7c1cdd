"""Heights on the surface, exact as rationals.

The projective height of a primitive integer point is its Euclidean
norm; the affine height of a group point (x, y) is the adelic product

    H(x, y) = sqrt(1 + x^2 + y^2 + (xy - y^3)^2) * prod_p max{1, |x|_p, |y|_p, |xy - y^3|_p},

whose finite factors are nontrivial only at primes dividing a
denominator.  All comparisons go through squared heights so that counts
stay exact; no floats enter any count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .geometry import GroupPoint, ProjPoint

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class HeightBound:
    """A height bound B, stored as the exact rational B^2."""

    b_squared: Fraction

    def __post_init__(self):
        if self.b_squared <= 0:
            raise ValueError(f"b_squared must be positive, got {self.b_squared}")

    @classmethod
    def from_b_squared(cls, b_squared: Rational) -> "HeightBound":
        return cls(Fraction(b_squared))

    @classmethod
    def from_height(cls, b: Rational) -> "HeightBound":
        b = Fraction(b)
        return cls(b * b)

    @classmethod
    def from_height_str(cls, text: str) -> "HeightBound":
        """Parse a decimal height string ('1.8' -> B^2 = 81/25, exactly)."""
        b = Fraction(text)
        return cls(b * b)


def padic_valuation(q: Fraction, p: int) -> int:
    if q == 0:
        raise ValueError("v_p(0) is +infinity")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def padic_abs(q: Rational, p: int) -> Fraction:
    """|q|_p = p^(-v_p(q)), with |0|_p = 0."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    return Fraction(p) ** (-padic_valuation(q, p))


def height_proj(t: ProjPoint) -> int:
    """Squared Euclidean norm of the primitive representative."""
    return t.t0 ** 2 + t.t1 ** 2 + t.t2 ** 2 + t.t3 ** 2


def _prime_factors(n: int) -> set[int]:
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.add(n)
    return out


def height_affine(g: GroupPoint) -> Fraction:
    """Squared adelic height of a group point; equals height_proj of its embedding."""
    x, y = g.x, g.y
    w = x * y - y ** 3
    h_inf_sq = 1 + x * x + y * y + w * w
    primes = _prime_factors(x.denominator) | _prime_factors(y.denominator)
    h_fin = Fraction(1)
    for p in sorted(primes):
        h_fin *= max(Fraction(1), padic_abs(x, p), padic_abs(y, p), padic_abs(w, p))
    return h_inf_sq * h_fin * h_fin

import random
from fractions import Fraction

import pytest

from cayleycubic.geometry import GroupPoint, ProjPoint, embed_group_point
from cayleycubic.heights import (HeightBound, height_affine, height_proj,
                                 padic_abs)


def test_padic_abs():
    assert padic_abs(12, 2) == Fraction(1, 4)
    assert padic_abs(Fraction(1, 2), 2) == 2
    assert padic_abs(5, 3) == 1
    assert padic_abs(0, 7) == 0


def test_height_proj():
    assert height_proj(ProjPoint(1, 0, 0, 0)) == 1
    assert height_proj(ProjPoint(1, 1, 2, 1)) == 7
    assert height_proj(ProjPoint(1, 1, 0, -1)) == 3


def test_height_proj_sign_invariance():
    # norms of t and -t agree; the normalized representative realizes both
    rng = random.Random(11)
    for _ in range(200):
        raw = [rng.randint(-50, 50) for _ in range(4)]
        if not any(raw):
            continue
        plus = ProjPoint.from_raw(*raw)
        minus = ProjPoint.from_raw(*(-c for c in raw))
        assert plus == minus
        assert height_proj(plus) == height_proj(minus)


def test_height_affine_values():
    assert height_affine(GroupPoint(1, 1)) == 3
    assert height_affine(GroupPoint(Fraction(1, 2), 0)) == 5
    assert height_affine(GroupPoint(0, 1)) == 3


def test_height_affine_integer_points_reduce_to_euclidean():
    # for integer (x, y) every finite factor is 1
    rng = random.Random(12)
    for _ in range(200):
        x, y = rng.randint(-40, 40), rng.randint(-40, 40)
        g = GroupPoint(x, y)
        w = x * y - y ** 3
        assert height_affine(g) == 1 + x * x + y * y + w * w


def test_product_formula_consistency():
    rng = random.Random(13)
    for _ in range(10_000):
        g = GroupPoint(Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000)),
                       Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000)))
        assert height_affine(g) == height_proj(embed_group_point(g))


def test_height_bound_parsing():
    assert HeightBound.from_height_str("1.8").b_squared == Fraction(81, 25)
    assert HeightBound.from_height(30).b_squared == 900
    assert HeightBound.from_b_squared(Fraction(5, 2)).b_squared == Fraction(5, 2)
    with pytest.raises(ValueError):
        HeightBound.from_b_squared(0)
    with pytest.raises(ValueError):
        HeightBound.from_b_squared(-1)

import io
import math
from fractions import Fraction

import pytest

from cayleycubic import enumeration as en
from cayleycubic.constants import ZETA2
from cayleycubic.geometry import LineIndex, ProjPoint, cubic_form, line_of_point
from cayleycubic.heights import HeightBound


def B2(value) -> HeightBound:
    return HeightBound.from_b_squared(Fraction(value))


def test_count_direct_small_values():
    assert en.count_direct(B2(1)) == 1
    assert en.count_direct(B2(2)) == 3
    assert en.count_direct(B2(Fraction(81, 25))) == 7


def test_enumerate_direct_points_at_324():
    pts = set(en.enumerate_direct(B2(Fraction(81, 25))))
    assert pts == {
        ProjPoint(1, 0, 0, 0),
        ProjPoint(1, 0, 1, 0), ProjPoint(1, 0, -1, 0),
        ProjPoint(1, 1, 1, 0), ProjPoint(1, -1, 1, 0),
        ProjPoint(1, 1, 0, -1), ProjPoint(1, -1, 0, 1),
    }
    assert all(cubic_form(t) == 0 for t in pts)


def test_count_direct_cap():
    with pytest.raises(en.DirectCapExceeded):
        en.count_direct(B2(10 ** 4 + 1))


def test_count_line_values():
    assert en.count_line(LineIndex(0, 1), B2(Fraction(81, 25))) == 3
    assert en.count_line(LineIndex(1, 1), B2(Fraction(81, 25))) == 2
    assert en.count_line(LineIndex(1, 1), B2(1)) == 0


def test_enumerate_line_matches_count():
    for lam, mu in ((0, 1), (1, 1), (-1, 2), (3, 2), (2, 5)):
        y = LineIndex(lam, mu)
        for bsq in (1, 10, 100, 3000, Fraction(12345, 7)):
            bound = B2(bsq)
            assert sum(1 for _ in en.enumerate_line(y, bound)) == \
                en.count_line(y, bound)


def test_count_by_lines_values():
    assert en.count_by_lines(B2(Fraction(81, 25))) == 7
    assert en.count_by_lines(B2(1)) == 1
    assert en.count_by_lines(B2(2)) == 3


def test_oracle_equivalence_to_100():
    direct, lines = en.counts_at_integer_bounds(100)
    assert (direct == lines).all()
    assert direct[0] == 1  # B^2 = 1


def test_counts_monotone():
    direct, lines = en.counts_at_integer_bounds(150)
    assert (direct[1:] >= direct[:-1]).all()
    assert (lines[1:] >= lines[:-1]).all()


def test_partition_by_lines():
    assert en.partition_check(B2(150))


def test_candidate_lines_complete():
    # no line outside the candidate set carries a point: compare against a
    # much larger box scan at a small bound
    bound = B2(500)
    cand = set(en.candidate_lines(bound))
    box = 12
    for mu in range(1, box):
        for lam in range(-box, box):
            if math.gcd(abs(lam), mu) != 1:
                continue
            y = LineIndex(lam, mu)
            if y not in cand:
                assert en.count_line(y, bound) == 0


def test_quadratic_growth_ceiling():
    # N(V;B)/B^2 stays far under a generous ceiling (the true limit ~2.94)
    for b in range(10, 1001, 10):
        n = en.count_by_lines(HeightBound.from_height(b))
        assert n <= 10 * b * b


def test_line_density_converges():
    # primitive half-disc density pi/(2 zeta(2)) on the (0,1) line
    n = en.count_line(LineIndex(0, 1), HeightBound.from_height(2000))
    target = math.pi / (2 * ZETA2)
    assert abs(n / 2000 ** 2 - target) / target < 0.02


def test_z_partial_values():
    assert en.z_partial(4, B2(1)) == 1.0
    assert abs(en.z_partial(4, B2(2)) - 1.5) < 1e-14
    expected = 1 + 2 * 2 ** -1.5 + 4 * 3 ** -1.5
    assert abs(en.z_partial(3, B2(Fraction(81, 25))) - expected) < 1e-14
    with pytest.raises(ValueError):
        en.z_partial(2, B2(1))


def test_z_partial_monotone_in_bound():
    values = [en.z_partial(3, B2(b)) for b in (1, 2, 4, 25, 100, 400)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_z_partial_cross_route():
    # same heights whether enumerated directly or via lines
    bound = B2(900)
    direct = sorted(en.direct_h2_array(bound).tolist())
    lines = sorted(en.lines_h2_array(bound).tolist())
    assert direct == lines
    z = en.z_partial(3, bound)
    z_direct = math.fsum(float(v) ** -1.5 for v in direct)
    assert abs(z - z_direct) < 1e-12
    assert z >= 1.0  # contains the height-1 base point


def _affine_bruteforce(model: str, B: int) -> int:
    count = 0
    for x in range(-B, B + 1):
        for y in range(-B, B + 1):
            for z in range(-B, B + 1):
                if model == "m1":
                    ok = x * y * z == x * x + y ** 3
                else:
                    ok = x * y == x * x * z + y ** 3
                count += ok
    return count


@pytest.mark.parametrize("model", ["m1", "m2"])
@pytest.mark.parametrize("B", [0, 1, 2, 3, 7, 10])
def test_affine_counts_vs_bruteforce(model, B):
    assert en.count_affine_integers(model, B) == _affine_bruteforce(model, B)


def test_affine_count_validation():
    with pytest.raises(ValueError):
        en.count_affine_integers("m3", 5)
    with pytest.raises(ValueError):
        en.count_affine_integers("m1", en.AFFINE_CAP + 1)


def test_points_csv():
    buf = io.StringIO()
    n = en.write_points_csv(buf, B2(Fraction(81, 25)))
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "t0,t1,t2,t3,lambda,mu,tau0,tau1,h2"
    assert n == 7 and len(lines) == 8
    rows = [tuple(int(v) for v in line.split(",")) for line in lines[1:]]
    # sorted by (h2, t0, t1, t2, t3)
    assert rows == sorted(rows, key=lambda r: (r[8], r[0], r[1], r[2], r[3]))
    for t0, t1, t2, t3, lam, mu, tau0, tau1, h2 in rows:
        t = ProjPoint(t0, t1, t2, t3)
        assert line_of_point(t) == LineIndex(lam, mu)
        assert h2 == t0 * t0 + t1 * t1 + t2 * t2 + t3 * t3
        assert math.gcd(tau0, abs(tau1)) == 1

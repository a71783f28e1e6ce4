"""Smoke test for the Python bindings.

Build and install first:  pip install --no-build-isolation -e crates/py
Then run:                 python crates/py/python/smoke_test.py
"""

from fractions import Fraction
from itertools import combinations

import slice_harmonic_py as sh


def frac(text):
    return Fraction(text)


def slice_points(n, k):
    for ones in combinations(range(n), k):
        yield [i in ones for i in range(n)]


def check_poly_basics():
    f = sh.Poly(3, [([1, 2], "1/2"), ([3], "-2")])
    assert f.n == 3 and f.degree == 2
    assert frac(f.evaluate([True, True, False])) == Fraction(1, 2)
    assert sh.Poly.from_json(f.to_json()) == f
    assert sh.Poly.parse(3, str(f)) == f
    assert (f - f).is_zero()
    b = sh.Poly.basic(4, 2)
    assert b.is_harmonic() and b.lower_delta().is_zero()
    sq = b * b
    assert all(frac(sq.evaluate(x)) == frac(b.evaluate(x)) ** 2 for x in slice_points(4, 2))


def check_projection():
    n, k = 6, 3
    # x1·x2·x3 restricted to the middle slice, interpolated harmonically.
    values = {}
    for x in slice_points(n, k):
        mask = sum(1 << i for i, bit in enumerate(x) if bit)
        values[mask] = "1" if x[0] and x[1] and x[2] else "0"
    h = sh.project_values(n, k, values)
    assert h.is_harmonic() and h.degree <= 3
    mono = sh.Poly(n, [([1, 2, 3], "1")])
    assert sh.harmonic_projection(mono, k) == h
    # Coefficient of x1x2x3 is 1 - d/(n-d+1).
    coeffs = dict((tuple(v), frac(c)) for v, c in h.terms())
    assert coeffs[(1, 2, 3)] == 1 - Fraction(3, n - 3 + 1)


def check_measures():
    n = 6
    nu = sh.Measure.slice(n, 3)
    mu = sh.Measure.cube(n, "1/2")
    # ‖x1 - x2‖² by direct enumeration over the slice.
    d = sh.Poly.basic(n, 1)
    direct = Fraction(0)
    count = 0
    for x in slice_points(n, 3):
        direct += frac(d.evaluate(x)) ** 2
        count += 1
    assert frac(sh.norm_sq(d, nu)) == direct / count
    ratio = frac(sh.basic_norm(nu, 1)) / frac(sh.basic_norm(mu, 1))
    assert ratio == Fraction(n, n - 1)
    lhs, mid, rhs = map(frac, sh.poincare_bounds(sh.Poly.basic(n, 2), mu))
    assert lhs <= mid == rhs
    weights = ["1/2"] + ["0"] * (n - 1) + ["1/2"]
    assert frac(sh.Measure.levels(n, weights).moment(2)) == Fraction(1, 2)
    try:
        sh.poincare_bounds(sh.Poly(n, [([1], "1")]), mu)
    except ValueError:
        pass
    else:
        raise AssertionError("non-harmonic input accepted")


def check_gt_and_blekherman():
    basis = sh.gt_basis(4, 2)
    assert [b for b, _ in basis] == [[2, 4], [3, 4]]
    nu = sh.Measure.slice(4, 2)
    assert frac(sh.inner_product(basis[0][1], basis[1][1], nu)) == 0
    f = sh.Poly(6, [([1, 2], "1"), ([3], "2")])
    coeffs = sh.blekherman_expand(f)
    assert all(c.is_harmonic() for c in coeffs)
    for x in slice_points(6, 2):
        s = sum(x)
        value = sum(frac(c.evaluate(x)) * s**i for i, c in enumerate(coeffs))
        assert value == frac(f.evaluate(x))
    nodes = ["0", "1/2", "3"]
    inv = [[frac(v) for v in row] for row in sh.turner_inverse(nodes)]
    vander = [[frac(x) ** j for j in range(3)] for x in nodes]
    for i in range(3):
        for j in range(3):
            entry = sum(vander[i][t] * inv[t][j] for t in range(3))
            assert entry == (1 if i == j else 0)


def check_coupling():
    f = sh.Poly.basic(8, 1)
    slice_pmf = sh.exact_distribution(f, k=4)
    cube_pmf = sh.exact_distribution(f, p="1/2")
    assert sum(frac(q) for _, q in slice_pmf) == 1
    to_float = lambda pmf: [(float(frac(v)), float(frac(q))) for v, q in pmf]
    levy = sh.levy_distance(to_float(slice_pmf), to_float(cube_pmf))
    assert 0 < levy < 0.25
    assert frac(sh.projected_tv(16, 8, "1/2", 4)) > Fraction(17, 10) * frac(sh.projected_tv(32, 16, "1/2", 4))
    dictator = [bool(x & 1) for x in range(1 << 5)]
    assert frac(sh.total_influence(5, dictator, "1/3")) == Fraction(2, 9)
    a = sh.empirical_profile(sh.Poly.basic(10, 2), [4, 5], "1/2", 200, seed=7)
    b = sh.empirical_profile(sh.Poly.basic(10, 2), [4, 5], "1/2", 200, seed=7)
    assert a == b and len(a) == 200 and len(a[0]) == 2


def main():
    checks = [
        check_poly_basics,
        check_projection,
        check_measures,
        check_gt_and_blekherman,
        check_coupling,
    ]
    for check in checks:
        check()
        print(f"ok  {check.__name__}")
    print("all smoke checks passed")


if __name__ == "__main__":
    main()

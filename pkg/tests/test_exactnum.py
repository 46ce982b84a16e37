"""Exact arithmetic core: Laurent polynomials, determinants, Pfaffians."""

import random
from fractions import Fraction as F

import pytest

from ferrofock.exactnum import (LaurentPoly as LP, det, pfaffian, poly_eval,
                                MissingAssignment, ZeroAtNegativePower,
                                NotSkewSymmetric, OddSize, InexactDivision)


def rnd_poly(rng, nvars=3, nterms=4, lo=-2, hi=3):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(lo, hi) for _ in range(nvars))
        terms[e] = F(rng.randint(-5, 5))
    terms = {e: c for e, c in terms.items() if c}
    return LP(tuple(f"x{i}" for i in range(nvars)), terms)


def test_eval_examples():
    p = LP.var("x1") * LP.var("x2") ** -1
    assert poly_eval(p, {"x1": F(3), "x2": F(2)}) == F(3, 2)
    assert poly_eval(LP(), {"x1": F(1)}) == 0


def test_eval_errors():
    p = LP.var("x1") * LP.var("x2") ** -1
    with pytest.raises(MissingAssignment):
        p.eval({"x1": F(1)})
    with pytest.raises(ZeroAtNegativePower):
        p.eval({"x1": F(1), "x2": F(0)})


def test_ring_distributivity():
    rng = random.Random(7)
    for _ in range(25):
        p, q, r = (rnd_poly(rng) for _ in range(3))
        assert (p + q) * r == p * r + q * r
        assert p * q == q * p
        assert (p - p).is_zero()


def test_pow_and_subs():
    x, y = LP.var("x"), LP.var("y")
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x ** -1) * x == LP.const(1)
    assert (x * y).subs({"x": y}) == y ** 2
    assert (x + 1).subs({"x": F(1, 2)}) == LP.const(F(3, 2))


def test_divexact():
    x, y = LP.var("x"), LP.var("y")
    num = (x - y) * (x ** 2 + 3 * y) * (1 - y ** 2)
    assert num.divexact(x - y) * (x - y) == num
    assert num.divexact((x - y) * (1 - y ** 2)) == x ** 2 + 3 * y
    with pytest.raises(InexactDivision):
        (x ** 2 + 1).divexact(x - y)
    # Laurent shifts: divisor with positive low degree
    p = (x ** 2 - x ** 3) * y ** -1
    assert p.divexact(x ** 2 * y ** -1) == 1 - x


def test_det_basics():
    assert det([]) == 1
    a, b, c, d = (LP.var(v) for v in "abcd")
    assert det([[a, b], [c, d]]) == a * d - b * c
    assert det([[F(1), F(2)], [F(3), F(4)]]) == -2


def test_det_cofactor_oracle():
    rng = random.Random(3)

    def cofactor(rows):
        n = len(rows)
        if n == 0:
            return F(1)
        total = F(0)
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = rows[0][j] * cofactor(minor)
            total += term if j % 2 == 0 else -term
        return total

    for _ in range(10):
        rows = [[F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3)]
                for _ in range(3)]
        assert det([r[:] for r in rows]) == cofactor(rows)


def test_det_multiplicative():
    rng = random.Random(5)
    for _ in range(5):
        A = [[F(rng.randint(-4, 4)) for _ in range(4)] for _ in range(4)]
        B = [[F(rng.randint(-4, 4)) for _ in range(4)] for _ in range(4)]
        AB = [[sum(A[i][k] * B[k][j] for k in range(4)) for j in range(4)]
              for i in range(4)]
        assert det(AB) == det([r[:] for r in A]) * det([r[:] for r in B])


def test_det_symbolic_vandermonde():
    xs = [LP.var(f"x{i}") for i in range(4)]
    rows = [[x ** e for e in (3, 2, 1, 0)] for x in xs]
    vdm = LP.const(1)
    for i in range(4):
        for j in range(i + 1, 4):
            vdm = vdm * (xs[i] - xs[j])
    assert det(rows) == vdm


def test_pfaffian_examples():
    assert pfaffian([]) == 1
    a = LP.var("a")
    assert pfaffian([[LP(), a], [-a, LP()]]) == a


def test_pfaffian_squares_to_det():
    rng = random.Random(11)
    for n in (2, 4, 6, 8):
        B = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
             for _ in range(n)]
        S = [[B[i][j] - B[j][i] for j in range(n)] for i in range(n)]
        assert pfaffian(S) ** 2 == det([r[:] for r in S])


def test_pfaffian_complex_tolerance():
    rng = random.Random(13)
    n = 6
    B = [[complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
         for _ in range(n)]
    S = [[B[i][j] - B[j][i] for j in range(n)] for i in range(n)]
    pf = pfaffian([r[:] for r in S])
    dd = det([r[:] for r in S])
    assert abs(pf ** 2 - dd) < 1e-9 * max(abs(dd), 1.0)


def test_pfaffian_errors():
    with pytest.raises(OddSize):
        pfaffian([[F(0)]])
    with pytest.raises(NotSkewSymmetric):
        pfaffian([[F(0), F(1)], [F(1), F(0)]])

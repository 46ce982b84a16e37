"""Symmetric functions in finitely many variables.

Covers the complete/elementary/q one-row generators, Schur functions (both
the h-determinant and the bialternant over the Vandermonde), Schur Q-functions
(Pfaffian form), Hall-Littlewood functions (explicit symmetric-group sum),
single-variable skew functions, and the one-row/full polynomial families in
the time variables t_1, t_2, ... together with their power-sum
specializations.

Variable sets are plain sequences of values; entries may be numbers
(Fraction/int/complex) or LaurentPoly symbols, mixed freely.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

from .exactnum import LaurentPoly, det, pfaffian, InexactDivision
from . import partitions as pt


class CapTooSmall(ValueError):
    pass


class DegenerateEvaluationPoint(ZeroDivisionError):
    pass


def var_set(prefix, n, start=1):
    """[prefix1, prefix2, ...] as LaurentPoly symbols."""
    return [LaurentPoly.var(f"{prefix}{i}") for i in range(start, start + n)]


def tvar(n):
    return LaurentPoly.var(f"t{n}")


def _coerce_all(xs):
    return [LaurentPoly.coerce(x) if isinstance(x, LaurentPoly) else x for x in xs]


# ---------------------------------------------------------------------------
# one-row generators over a finite variable set
# ---------------------------------------------------------------------------

def sym_generator(kind, m, xs):
    """Coefficient of k^m in the h / e / q generating product over xs.

    h: prod 1/(1-x k);  e: prod (1+x k);  q: prod (1+x k)/(1-x k).
    Returns 0 for m < 0, 1 for m = 0.
    """
    if m < 0:
        return Fraction(0)
    series = [Fraction(1)] + [Fraction(0)] * m
    for x in xs:
        if kind in ("h", "q"):
            # multiply by 1/(1 - x k): prefix-sum recurrence
            for j in range(1, m + 1):
                series[j] = series[j] + x * series[j - 1]
        if kind in ("e", "q"):
            for j in range(m, 0, -1):
                series[j] = series[j] + x * series[j - 1]
        if kind not in ("h", "e", "q"):
            raise ValueError(f"unknown generator kind {kind!r}")
    return series[m]


def vandermonde(xs):
    prod = Fraction(1)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            prod = prod * (xs[i] - xs[j])
    return prod


def schur(mu, xs):
    """Schur function s_mu{x} by the h-determinant (Jacobi-Trudi)."""
    mu = pt.check_partition(mu)
    if len(mu) > len(xs):
        return Fraction(0)
    l = len(mu)
    if l == 0:
        return Fraction(1)
    rows = [[sym_generator("h", mu[i] - (i + 1) + (j + 1), xs) for j in range(l)]
            for i in range(l)]
    return det(rows)


def schur_bialternant(mu, xs):
    """s_mu{x} = det(x_i^{mu_j - j + N}) / Vandermonde; exact division."""
    mu = pt.check_partition(mu)
    N = len(xs)
    if len(mu) > N:
        return Fraction(0)
    exps = [pt.part(mu, j + 1) - (j + 1) + N for j in range(N)]
    rows = [[x ** e for e in exps] for x in xs]
    num = det(rows)
    den = vandermonde(xs)
    return _exact_ratio(num, den)


def _exact_ratio(num, den):
    if isinstance(num, LaurentPoly) or isinstance(den, LaurentPoly):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise DegenerateEvaluationPoint("zero denominator")
        return num.divexact(den)
    if den == 0:
        raise DegenerateEvaluationPoint("zero denominator")
    return num / den


def schur_q(mu, xs):
    """Schur Q-function Q_mu~{x} via the Pfaffian over one-row q's."""
    mu = pt.check_strict(mu)
    return _q_pfaffian(mu, lambda m: sym_generator("q", m, xs))


def _q_pfaffian(mu, q):
    """Pf of the standard pairing built from one-row values q(m)."""
    parts = list(mu)
    if len(parts) % 2:
        parts.append(0)
    r = len(parts)
    if r == 0:
        return Fraction(1)

    def entry(i, j):
        a, b = parts[i], parts[j]
        val = q(a) * q(b)
        for k in range(1, b + 1):
            term = q(a + k) * q(b - k)
            val = val + (2 * term if k % 2 == 0 else -2 * term)
        return val

    rows = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            v = entry(i, j)
            rows[i][j] = v
            rows[j][i] = -v
    return pfaffian(rows)


# ---------------------------------------------------------------------------
# Hall-Littlewood machinery
# ---------------------------------------------------------------------------

def v_mu(mu, t):
    """v_mu(t) = prod_{i>=1} prod_{j=1}^{p_i} (1-t^j)/(1-t)."""
    result = _one_like(t)
    for i in set(mu):
        for j in range(1, pt.multiplicity(mu, i) + 1):
            result = result * _exact_ratio(
                _one_like(t) - _tp(t, j), _one_like(t) - _tp(t, 1))
    return result


def b_mu(mu, t):
    """b_mu(t) = prod_{i>=1} prod_{j=1}^{p_i} (1-t^j)."""
    result = _one_like(t)
    for i in set(mu):
        for j in range(1, pt.multiplicity(mu, i) + 1):
            result = result * (_one_like(t) - _tp(t, j))
    return result


def _one_like(t):
    return LaurentPoly.const(1) if isinstance(t, LaurentPoly) else Fraction(1)


def _tp(t, j):
    return t ** j


def _v_zero_parts(n_zero, t):
    """Normalizing factor for the n - l(mu) zero parts of an n-variable sum."""
    result = _one_like(t)
    for j in range(1, n_zero + 1):
        result = result * _exact_ratio(
            _one_like(t) - _tp(t, j), _one_like(t) - _tp(t, 1))
    return result


def p_skew(mu, nu, t):
    """p_{mu/nu}(t) = prod_i (1 - [p_i(mu) = p_i(nu)+1] t^{p_i(mu)})."""
    result = _one_like(t)
    for i in set(mu) | set(nu):
        if pt.multiplicity(mu, i) == pt.multiplicity(nu, i) + 1:
            result = result * (_one_like(t) - _tp(t, pt.multiplicity(mu, i)))
    return result


def hall_littlewood(mu, xs, t):
    """P_mu({x},t): explicit S_N sum divided by v_mu(t) and the Vandermonde."""
    mu = pt.check_partition(mu)
    n = len(xs)
    if len(mu) > n:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    xs = list(xs)
    symbolic = any(isinstance(x, LaurentPoly) for x in xs) or isinstance(t, LaurentPoly)
    num = LaurentPoly() if symbolic else Fraction(0)
    exps = [pt.part(mu, i + 1) for i in range(n)]
    for sigma in permutations(range(n)):
        sgn = _perm_sign(sigma)
        term = _one_like(t) * sgn
        for i in range(n):
            term = term * xs[sigma[i]] ** exps[i]
        for a in range(n):
            for b in range(a + 1, n):
                term = term * (xs[sigma[a]] - t * xs[sigma[b]])
        num = num + term
    den = vandermonde(xs)
    if not symbolic and den == 0:
        raise DegenerateEvaluationPoint("coincident x's in Hall-Littlewood sum")
    ratio = _exact_ratio(num, den)
    norm = v_mu(mu, t) * _v_zero_parts(n - len(mu), t)
    return _exact_ratio(ratio, norm)


def _perm_sign(sigma):
    sgn = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sgn = -sgn
    return sgn


def skew_single(kind, mu, nu, x, t=None):
    """Single-variable skew function; zero unless mu >- nu.

    schur:  x^{|mu|-|nu|}
    schurQ: 2^{#(mu|nu)} x^{|mu|-|nu|}      (strict partitions)
    hl:     x^{|mu|-|nu|} p_{nu/mu}(t)
    """
    if not pt.interlaces(mu, nu):
        return Fraction(0)
    xpow = _pow_of(x, pt.weight(mu) - pt.weight(nu))
    if kind == "schur":
        return xpow
    if kind == "schurQ":
        pt.check_strict(mu), pt.check_strict(nu)
        return Fraction(2) ** pt.strict_new_parts(mu, nu) * xpow
    if kind == "hl":
        return p_skew(nu, mu, t) * xpow
    raise ValueError(f"unknown skew kind {kind!r}")


def _pow_of(x, k):
    if isinstance(x, LaurentPoly):
        return x ** k
    return x ** k


# ---------------------------------------------------------------------------
# polynomial families in the time variables
# ---------------------------------------------------------------------------

def one_row_poly(kind, m, cap):
    """One-row polynomial in t_1..t_cap.

    chi:   coefficient of k^m in exp(sum_{n>=1} t_n k^n)
    Qpoly: same with odd n only
    Zero for m < 0; the cap must cover every t_n entering the result.
    """
    if m < 0:
        return LaurentPoly()
    if m == 0:
        return LaurentPoly.const(1)
    if cap < m:
        raise CapTooSmall(f"need t-variables up to index {m}, cap is {cap}")
    total = LaurentPoly()
    for lam in pt.partitions_of_weight(m):
        if kind == "Qpoly" and any(p % 2 == 0 for p in lam):
            continue
        coeff = Fraction(1)
        term = LaurentPoly.const(1)
        for p in set(lam):
            k = pt.multiplicity(lam, p)
            coeff /= factorial(k)
            term = term * tvar(p) ** k
        total = total + coeff * term
    return total


def full_poly(kind, mu, cap=None):
    """chi_mu{t} (determinant) or Q_mu~{t~} (Pfaffian) of one-row polys."""
    if kind == "chi":
        mu = pt.check_partition(mu)
        l = len(mu)
        if l == 0:
            return LaurentPoly.const(1)
        need = max(mu[i] - (i + 1) + l for i in range(l))
        cap = need if cap is None else cap
        if cap < need:
            raise CapTooSmall(f"need index {need}, cap is {cap}")
        rows = [[one_row_poly("chi", mu[i] - (i + 1) + (j + 1), cap)
                 for j in range(l)] for i in range(l)]
        return det(rows)
    if kind == "Qpoly":
        mu = pt.check_strict(mu)
        need = (mu[0] + mu[1]) if len(mu) >= 2 else (mu[0] if mu else 0)
        cap = need if cap is None else cap
        if cap < need:
            raise CapTooSmall(f"need index {need}, cap is {cap}")
        return _q_pfaffian(mu, lambda m: one_row_poly("Qpoly", m, cap)
                           if m <= cap else _raise_cap(m, cap))
    raise ValueError(f"unknown kind {kind!r}")


def _raise_cap(m, cap):
    raise CapTooSmall(f"need index {m}, cap is {cap}")


def power_sum_specialize(p, xs, kind="KP"):
    """Substitute t_n -> (1/n) sum x_i^n (KP) or (2/n) sum x_i^n, n odd (BKP)."""
    assignment = {}
    for name in p.vars:
        if not name.startswith("t"):
            continue
        n = int(name[1:])
        if kind == "BKP" and n % 2 == 0:
            if not p.coeff_of(name, 0) == p:
                raise ValueError("BKP specialization hit an even time variable")
            continue
        ps = LaurentPoly()
        for x in xs:
            ps = ps + LaurentPoly.coerce(x) ** n
        factor = Fraction(1, n) if kind == "KP" else Fraction(2, n)
        assignment[name] = factor * ps
    return p.subs(assignment)

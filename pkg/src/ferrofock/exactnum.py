"""Exact rational / Laurent-polynomial arithmetic and generic determinants.

Scalars come in two backends:

  * exact      -- ``fractions.Fraction`` and :class:`LaurentPoly` (sparse
                  multivariate Laurent polynomials with Fraction coefficients);
  * numeric    -- Python ``complex``, for sinh/theta parametrized weights.

A Laurent polynomial is stored as a dict mapping exponent tuples (one integer
per variable, negative exponents allowed) to nonzero coefficients:

    3/2 * x1**2 * x2**-1   ->   vars=("x1","x2"), terms={(2,-1): Fraction(3,2)}

The zero polynomial has an empty term dict.  Variable sets of two operands are
merged automatically, so polynomials over different variables mix freely.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations


class MissingAssignment(ValueError):
    pass


class ZeroAtNegativePower(ZeroDivisionError):
    pass


class NotSkewSymmetric(ValueError):
    pass


class OddSize(ValueError):
    pass


class InexactDivision(ArithmeticError):
    pass


_NAME_RE = re.compile(r"([^0-9]*)([0-9]*)$")


def _name_key(name):
    # natural sort: t2 before t10
    head, digits = _NAME_RE.match(name).groups()
    return (head, int(digits) if digits else -1)


def _as_coeff(value):
    if isinstance(value, (Fraction, complex, float)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as coefficient")


class LaurentPoly:
    """Sparse multivariate Laurent polynomial, immutable by convention."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars=(), terms=None):
        self.vars = tuple(vars)
        self.terms = {} if terms is None else terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(value):
        c = _as_coeff(value)
        if c == 0:
            return LaurentPoly()
        return LaurentPoly((), {(): c})

    @staticmethod
    def var(name, power=1, coeff=1):
        c = _as_coeff(coeff)
        if c == 0:
            return LaurentPoly()
        return LaurentPoly((name,), {(power,): c})

    @staticmethod
    def coerce(value):
        if isinstance(value, LaurentPoly):
            return value
        return LaurentPoly.const(value)

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self):
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return sum(self.terms.values())

    def num_terms(self):
        return len(self.terms)

    def degree(self, name):
        """Maximum exponent of `name`; None for the zero polynomial."""
        if self.is_zero():
            return None
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def low_degree(self, name):
        if self.is_zero():
            return None
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return min(e[i] for e in self.terms)

    def total_degree(self):
        if self.is_zero():
            return 0
        return max(sum(e) for e in self.terms)

    # -- canonicalization --------------------------------------------------

    def _compress(self):
        """Drop variables that appear with exponent 0 everywhere."""
        if not self.vars:
            return self
        used = [i for i in range(len(self.vars))
                if any(e[i] for e in self.terms)]
        if len(used) == len(self.vars):
            return self
        new_vars = tuple(self.vars[i] for i in used)
        new_terms = {tuple(e[i] for i in used): c for e, c in self.terms.items()}
        return LaurentPoly(new_vars, new_terms)

    def _aligned(self, other):
        """Rewrite both operands over the merged, sorted variable tuple."""
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        merged = tuple(sorted(set(self.vars) | set(other.vars), key=_name_key))

        def remap(poly):
            idx = [poly.vars.index(v) if v in poly.vars else None for v in merged]
            out = {}
            for e, c in poly.terms.items():
                out[tuple(0 if i is None else e[i] for i in idx)] = c
            return out

        return merged, remap(self), remap(other)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        vars_, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly(vars_, out)._compress()

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) + (-self)

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        vars_, a, b = self._aligned(other)
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(vars_, out)._compress()

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be int")
        if n < 0:
            inv = self.monomial_inverse()
            return inv ** (-n)
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monomial_inverse(self):
        if len(self.terms) != 1:
            raise InexactDivision("only monomials are invertible")
        (e, c), = self.terms.items()
        return LaurentPoly(self.vars, {tuple(-x for x in e): Fraction(1) / c
                                       if isinstance(c, Fraction) else 1 / c})

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
        _, a, b = self._aligned(other)
        return a == b

    def __hash__(self):
        p = self._compress()
        return hash((p.vars, frozenset(p.terms.items())))

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v
                for v, k in zip(self.vars, e) if k
            )
            bits.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(bits)

    # -- substitution and evaluation ---------------------------------------

    def subs(self, assignment):
        """Substitute variables by scalars or polynomials (partial OK)."""
        relevant = {v: LaurentPoly.coerce(p) for v, p in assignment.items()
                    if v in self.vars}
        if not relevant:
            return self
        out = LaurentPoly()
        for e, c in self.terms.items():
            term = LaurentPoly.const(c)
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                if v in relevant:
                    term = term * relevant[v] ** k
                else:
                    term = term * LaurentPoly.var(v, k)
            out = out + term
        return out

    def eval(self, assignment):
        """Evaluate fully at scalar values (exact for Fraction inputs)."""
        for v in self.vars:
            if any(e[self.vars.index(v)] for e in self.terms) and v not in assignment:
                raise MissingAssignment(f"no value for variable {v!r}")
        total = None
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                x = assignment[v]
                if x == 0 and k < 0:
                    raise ZeroAtNegativePower(f"{v} = 0 raised to power {k}")
                if k < 0:
                    term = term * (Fraction(1, 1) / x if isinstance(x, (int, Fraction))
                                   else 1.0 / x) ** (-k)
                else:
                    term = term * x ** k
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def coeff_of(self, name, power):
        """Coefficient of name**power, a polynomial in the other variables."""
        if name not in self.vars:
            if power == 0:
                return self
            return LaurentPoly()
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + e[i + 1:]] = c
        return LaurentPoly(rest, out)._compress()

    def truncate_degree(self, name, max_power):
        """Drop all terms with exponent of `name` above max_power."""
        if name not in self.vars:
            return self
        i = self.vars.index(name)
        return LaurentPoly(self.vars,
                           {e: c for e, c in self.terms.items()
                            if e[i] <= max_power})._compress()

    def truncate_low(self, name, min_power=0):
        """Drop all terms with exponent of `name` below min_power."""
        if name not in self.vars:
            return self
        i = self.vars.index(name)
        return LaurentPoly(self.vars,
                           {e: c for e, c in self.terms.items()
                            if e[i] >= min_power})._compress()

    def map_coeffs(self, fn):
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v != 0:
                out[e] = v
        return LaurentPoly(self.vars, out)._compress()

    # -- exact division ----------------------------------------------------

    def divexact(self, divisor):
        """Exact division; raises InexactDivision on nonzero remainder."""
        divisor = LaurentPoly.coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        if len(divisor.terms) == 1:
            return self * divisor.monomial_inverse()
        # univariate long division in the divisor's best main variable
        dvar = None
        for v in divisor.vars:
            if divisor.degree(v) != divisor.low_degree(v):
                dvar = v
                break
        if dvar is None:  # all exponents equal in every variable: monomial-like
            raise InexactDivision("degenerate divisor")
        # shift so that both are genuine polynomials in dvar
        s_low = min(self.low_degree(dvar) if dvar in self.vars else 0, 0)
        d_low = divisor.low_degree(dvar)
        num = self * LaurentPoly.var(dvar, -s_low) if s_low else self
        den = divisor * LaurentPoly.var(dvar, -d_low) if d_low else divisor
        dd = den.degree(dvar)
        lead = den.coeff_of(dvar, dd)
        quo = LaurentPoly()
        rem = num
        while not rem.is_zero():
            rd = rem.degree(dvar) if dvar in rem.vars else 0
            if rd < dd:
                raise InexactDivision("nonzero remainder")
            q = rem.coeff_of(dvar, rd).divexact(lead)
            q = q * LaurentPoly.var(dvar, rd - dd) if rd - dd else q
            quo = quo + q
            rem = rem - q * den
        shift = s_low - d_low
        return quo * LaurentPoly.var(dvar, shift) if shift else quo


def poly_eval(p, assignment):
    """Evaluate a LaurentPoly (or scalar) at a point; exact for rationals."""
    if not isinstance(p, LaurentPoly):
        return p
    return p.eval(assignment)


# ---------------------------------------------------------------------------
# determinants and Pfaffians
# ---------------------------------------------------------------------------

def _is_inexact(x):
    return isinstance(x, (complex, float))


def det(rows):
    """Determinant of a square matrix given as a list of rows.

    Exact scalars (Fraction/int/LaurentPoly) go through fraction-free
    Bareiss elimination; complex/float matrices use partial-pivot Gaussian
    elimination.  The empty matrix has determinant 1.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix is not square")
    if any(_is_inexact(x) for r in rows for x in r):
        return _det_numeric([list(map(complex, r)) for r in rows])
    a = [[x if isinstance(x, LaurentPoly) else Fraction(x) for x in r]
         for r in rows]
    if any(isinstance(x, LaurentPoly) for r in a for x in r):
        a = [[LaurentPoly.coerce(x) for x in r] for r in a]
        return _det_bareiss_poly(a)
    return _det_fraction(a)


def _det_fraction(a):
    n = len(a)
    sign = 1
    detv = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        detv *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return sign * detv


def _det_bareiss_poly(a):
    n = len(a)
    sign = 1
    prev = LaurentPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            piv = None
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    piv = i
                    break
            if piv is None:
                return LaurentPoly()
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).divexact(prev)
            a[i][k] = LaurentPoly()
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


def _det_numeric(a):
    n = len(a)
    detv = 1.0 + 0.0j
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(a[i][k]))
        if abs(a[piv][k]) == 0.0:
            return 0.0 + 0.0j
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            detv = -detv
        detv *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f != 0:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return detv


def _check_skew(rows, tol):
    n = len(rows)
    for i in range(n):
        for j in range(n):
            d = rows[i][j] + rows[j][i]
            if isinstance(d, LaurentPoly):
                ok = d.is_zero()
            elif _is_inexact(d):
                scale = max(abs(complex(rows[i][j])), abs(complex(rows[j][i])), 1.0)
                ok = abs(complex(d)) <= tol * scale
            else:
                ok = d == 0
            if not ok:
                raise NotSkewSymmetric(f"entry ({i},{j}) breaks A = -A^T")


def pfaffian(rows, tol=1e-9):
    """Pfaffian of a skew-symmetric matrix by recursive first-row expansion.

    Pf of the empty matrix is 1.  Raises OddSize / NotSkewSymmetric on bad
    input.  Intended for sizes <= 12.
    """
    n = len(rows)
    if n % 2:
        raise OddSize(f"Pfaffian needs even size, got {n}")
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix is not square")
    _check_skew(rows, tol)
    cache = {}

    def pf(idx):
        if not idx:
            return Fraction(1)
        if idx in cache:
            return cache[idx]
        i0 = idx[0]
        rest = idx[1:]
        total = None
        for pos, j in enumerate(rest):
            a = rows[i0][j]
            zero = a.is_zero() if isinstance(a, LaurentPoly) else a == 0
            if zero:
                continue
            sub = pf(rest[:pos] + rest[pos + 1:])
            term = a * sub
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = LaurentPoly() if any(isinstance(rows[i][j], LaurentPoly)
                                         for i in idx for j in idx) else Fraction(0)
        cache[idx] = total
        return total

    return pf(tuple(range(n)))


def sub_pfaffians(entries, indices):
    """Pfaffian of the principal skew submatrix on `indices` of an index->
    entry function ``entries(i, j)`` with i < j (extended skew)."""
    idx = tuple(indices)
    k = len(idx)
    if k % 2:
        raise OddSize("sub-Pfaffian needs an even index set")
    rows = [[0] * k for _ in range(k)]
    for a, b in combinations(range(k), 2):
        v = entries(idx[a], idx[b])
        rows[a][b] = v
        rows[b][a] = -v
    return pfaffian(rows)

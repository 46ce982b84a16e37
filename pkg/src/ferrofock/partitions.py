"""Partitions, strict partitions, plane partitions and their statistics.

Conventions used across the package:

  * a partition is a tuple of weakly-decreasing positive integers, the empty
    partition being ``()``;
  * a strict partition has strictly decreasing positive parts (a trailing 0
    appears only in fermionic monomials, never in the canonical tuple);
  * an occupation vector is a tuple ``(n_0, ..., n_M)`` of non-negative
    integers, one per lattice site;
  * a plane partition is a grid ``pi(i,j)`` with weakly decreasing rows and
    columns, held as a :class:`PlanePartition`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count

from .exactnum import LaurentPoly


class LengthMismatch(ValueError):
    pass


class BoxMismatch(ValueError):
    pass


class NotStrict(ValueError):
    pass


# ---------------------------------------------------------------------------
# ordinary and strict partitions
# ---------------------------------------------------------------------------

def check_partition(mu):
    mu = tuple(mu)
    if any(p <= 0 for p in mu):
        raise ValueError(f"parts must be positive: {mu}")
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise ValueError(f"parts must weakly decrease: {mu}")
    return mu


def check_strict(mu):
    mu = check_partition(mu)
    if any(mu[i] == mu[i + 1] for i in range(len(mu) - 1)):
        raise NotStrict(f"parts must strictly decrease: {mu}")
    return mu


def weight(mu):
    return sum(mu)


def multiplicity(mu, i):
    """p_i(mu): number of parts equal to i (i >= 1)."""
    return sum(1 for p in mu if p == i)


def part(mu, i):
    """mu_i with missing parts read as 0 (1-indexed)."""
    return mu[i - 1] if 1 <= i <= len(mu) else 0


def interlaces(mu, nu):
    """True iff mu >- nu, i.e. mu_i >= nu_i >= mu_{i+1} for all i."""
    n = max(len(mu), len(nu)) + 1
    return all(part(mu, i) >= part(nu, i) >= part(mu, i + 1)
               for i in range(1, n))


def strict_new_parts(mu, nu):
    """#(mu|nu): number of parts of mu that are not parts of nu."""
    return len(set(mu) - set(nu))


def partitions_in_box(rows, cols):
    """All partitions with at most `rows` parts, each at most `cols`."""
    def rec(maxpart, remaining):
        yield ()
        if remaining == 0:
            return
        for first in range(1, maxpart + 1):
            for rest in rec(first, remaining - 1):
                yield (first,) + rest
    yield from rec(cols, rows)


def strict_partitions_in_box(rows, cols):
    """All strict partitions with at most `rows` parts, each at most `cols`."""
    def rec(maxpart, remaining):
        yield ()
        if remaining == 0:
            return
        for first in range(1, maxpart + 1):
            for rest in rec(first - 1, remaining - 1):
                yield (first,) + rest
    yield from rec(cols, rows)


def partitions_of_weight(n, maxpart=None):
    """All partitions of exactly n."""
    maxpart = n if maxpart is None else min(maxpart, n)
    if n == 0:
        yield ()
        return
    for first in range(maxpart, 0, -1):
        for rest in partitions_of_weight(n - first, first):
            yield (first,) + rest


def interlacing_below(mu, strict=False):
    """All nu with mu >- nu (finitely many); strict=True keeps nu strict.

    nu_i ranges over [mu_{i+1}, mu_i]; once a part hits 0 the rest are 0.
    """
    mu = tuple(mu)
    n = len(mu)

    def build(i, upper):
        if i > n:
            yield ()
            return
        lo = part(mu, i + 1)
        hi = min(part(mu, i), upper)
        if lo == 0:
            yield ()
        for v in range(hi, max(lo, 1) - 1, -1):
            nxt = v - 1 if strict else v
            for rest in build(i + 1, nxt):
                yield (v,) + rest

    yield from build(1, mu[0] if mu else 0)


def interlacing_above(nu, maxpart, maxlen, strict=False):
    """All mu with mu >- nu, at most `maxlen` parts, each at most `maxpart`.

    mu_i ranges over [nu_i, min(nu_{i-1}, maxpart)]; once 0, the rest are 0.
    """
    nu = tuple(nu)
    if len(nu) > maxlen or (nu and nu[0] > maxpart):
        return

    def build(i, upper):
        if i > maxlen:
            if part(nu, i) == 0:
                yield ()
            return
        lo = part(nu, i)
        hi = min(upper, maxpart)
        if lo == 0:
            yield ()
        for v in range(hi, max(lo, 1) - 1, -1):
            nxt_upper = min(v - 1 if strict else v, part(nu, i))
            for rest in build(i + 1, nxt_upper):
                yield (v,) + rest

    yield from build(1, maxpart)


# ---------------------------------------------------------------------------
# occupation vectors
# ---------------------------------------------------------------------------

def is_admissible(m, n):
    """True iff occupation vector m is admissible to n (|m> |> |n>)."""
    if len(m) != len(n):
        raise LengthMismatch(f"lengths {len(m)} != {len(n)}")
    suffix = 0
    ok = True
    for i in range(len(m) - 1, 0, -1):
        suffix += m[i] - n[i]
        if not 0 <= suffix <= 1:
            ok = False
            break
    total = sum(m) - sum(n)
    return ok and total == 1


def occupation_to_partition(n):
    """Map (n_0,...,n_M) to the partition with n_i parts equal to i."""
    parts = []
    for i in range(len(n) - 1, 0, -1):
        parts.extend([i] * n[i])
    return tuple(parts)


def partition_to_occupation(mu, M, total=None):
    """Inverse map; site 0 padded so the vector has `total` particles."""
    if mu and mu[0] > M:
        raise BoxMismatch(f"part {mu[0]} exceeds lattice size {M}")
    n = [0] * (M + 1)
    for p in mu:
        n[p] += 1
    if total is not None:
        n[0] = total - len(mu)
        if n[0] < 0:
            raise BoxMismatch("total particle number too small")
    return tuple(n)


# ---------------------------------------------------------------------------
# plane partitions
# ---------------------------------------------------------------------------

class PlanePartition:
    """Finite grid pi(i,j) with weakly decreasing rows and columns."""

    __slots__ = ("rows", "box", "strict")

    def __init__(self, rows, box=None, strict=False):
        rows = tuple(tuple(r) for r in rows if any(r))
        # trim trailing zeros in each row
        rows = tuple(tuple(v for k, v in enumerate(r) if any(r[k2] for k2 in range(k, len(r))))
                     for r in rows)
        self.rows = rows
        self.box = box
        self.strict = strict
        self._validate()

    def _validate(self):
        rows = self.rows
        for r in rows:
            if any(v < 0 for v in r):
                raise ValueError("entries must be non-negative")
            if any(r[i] < r[i + 1] for i in range(len(r) - 1)):
                raise ValueError("rows must weakly decrease")
        for i in range(len(rows) - 1):
            if len(rows[i + 1]) > len(rows[i]):
                raise ValueError("row lengths must weakly decrease")
            if any(rows[i][j] < rows[i + 1][j] for j in range(len(rows[i + 1]))):
                raise ValueError("columns must weakly decrease")
        if self.box is not None:
            n_rows, n_cols, height = self.box
            if len(rows) > n_rows or any(len(r) > n_cols for r in rows):
                raise BoxMismatch(f"shape exceeds box {self.box}")
            if any(v > height for r in rows for v in r):
                raise BoxMismatch(f"entry exceeds height bound {height}")
        if self.strict:
            for i in range(len(rows) - 1):
                r, s = rows[i], rows[i + 1]
                for j in range(len(r)):
                    below = s[j + 1] if j + 1 < len(s) else 0
                    if r[j] > 0 and r[j] <= below:
                        raise NotStrict("diagonal fails strict decrease")

    def __call__(self, i, j):
        """pi(i,j), 1-indexed, 0 outside the support."""
        if 1 <= i <= len(self.rows) and 1 <= j <= len(self.rows[i - 1]):
            return self.rows[i - 1][j - 1]
        return 0

    def weight(self):
        return sum(sum(r) for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, PlanePartition) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"PlanePartition({list(map(list, self.rows))})"

    def n_rows(self):
        return len(self.rows)

    def n_cols(self):
        return max((len(r) for r in self.rows), default=0)


def diagonal_slices(pi, index_range=None):
    """Diagonal slices as a dict i -> partition.

    Slice i >= 0 has parts pi(j, i+j); slice i <= 0 has parts pi(-i+j, j).
    Only slices inside `index_range` (default: all nonempty) are returned.
    """
    if index_range is None:
        lo = -(pi.n_rows() - 1) if pi.n_rows() else 0
        hi = pi.n_cols() - 1 if pi.n_cols() else 0
        index_range = range(lo, hi + 1)
    out = {}
    for i in index_range:
        parts = []
        for j in count(1):
            v = pi(j, i + j) if i >= 0 else pi(-i + j, j)
            if v == 0:
                break
            parts.append(v)
        out[i] = tuple(parts)
    return out


def from_slices(slices, strict=False):
    """Rebuild a PlanePartition from a dict i -> slice partition."""
    max_i = max((i for i, s in slices.items() if s), default=0)
    min_i = min((i for i, s in slices.items() if s), default=0)
    n_rows = max(len(slices.get(i, ())) - min(i, 0) for i in slices) if slices else 0
    n_cols = max(len(slices.get(i, ())) + max(i, 0) for i in slices) if slices else 0
    grid = [[0] * n_cols for _ in range(n_rows)]
    for i, s in slices.items():
        for j, v in enumerate(s, start=1):
            if i >= 0:
                grid[j - 1][i + j - 1] = v
            else:
                grid[-i + j - 1][j - 1] = v
    return PlanePartition(grid, strict=strict)


def enumerate_plane_partitions(N, M, strict=False):
    """All plane partitions in the box [N, N, M], each exactly once.

    Generated as interlacing slice chains
    empty -< pi_{-N+1} -< ... -< pi_0 >- ... >- pi_{N-1} >- empty.
    """
    if N == 0:
        yield PlanePartition((), box=(N, N, M), strict=strict)
        return

    def ascend(step, prev):
        """Chains pi_{-N+step} ... pi_0 given pi_{-N+step-1} = prev."""
        if step == N + 1:
            yield []
            return
        for cur in interlacing_above(prev, M, step if step <= N else N, strict=strict):
            for rest in ascend(step + 1, cur):
                yield [cur] + rest

    def descend(step, prev):
        """Chains pi_1 ... pi_N = empty given pi_0 = prev."""
        if step == N:
            yield []
            return
        for cur in interlacing_below(prev, strict=strict):
            if len(cur) > N - step - 1:
                continue
            for rest in descend(step + 1, cur):
                yield [cur] + rest

    for left in ascend(1, ()):
        for right in descend(0, left[-1]):
            slices = {}
            for k, s in enumerate(left):
                slices[-N + 1 + k] = s
            for k, s in enumerate(right, start=1):
                slices[k] = s
            yield from_slices(slices, strict=strict)


def enumerate_pp_by_weight(max_weight, strict=False):
    """All plane partitions (any shape) with weight <= max_weight."""

    def rows_rec(budget, bound_row):
        yield ()
        if budget == 0:
            return
        for first in _rows_under(bound_row, budget):
            w = sum(first)
            for rest in rows_rec(budget - w, first):
                yield (first,) + rest

    def _rows_under(bound, budget):
        # nonempty weakly-decreasing rows dominated entrywise by `bound`
        def rec(j, prev, left):
            if j >= len(bound) or left == 0:
                yield ()
                return
            yield ()
            hi = min(bound[j], prev, left)
            for v in range(hi, 0, -1):
                for rest in rec(j + 1, v, left - v):
                    yield (v,) + rest
        for r in rec(0, budget, budget):
            if r:
                yield r

    top = (max_weight,) * max_weight if max_weight else ()
    for rows in rows_rec(max_weight, top):
        try:
            pp = PlanePartition(rows, strict=strict)
        except NotStrict:
            continue
        yield pp


def is_strict_pp(pi):
    """True iff pi(i,j) > pi(i+1,j+1) wherever pi(i,j) > 0."""
    for i in range(1, pi.n_rows() + 1):
        for j in range(1, len(pi.rows[i - 1]) + 1):
            if pi(i, j) > 0 and pi(i, j) <= pi(i + 1, j + 1):
                return False
    return True


# ---------------------------------------------------------------------------
# paths and levels
# ---------------------------------------------------------------------------

def cell_level(pi, i, j):
    """Run length of equal entries down the diagonal starting at (i,j)."""
    v = pi(i, j)
    if v == 0:
        return 0
    l = 1
    while pi(i + l, j + l) == v:
        l += 1
    return l


def path_count_at_level(pi, level):
    """p_l(pi): number of maximal connected sets of equal-value, level-l cells."""
    cells = {}
    for i in range(1, pi.n_rows() + 1):
        for j in range(1, len(pi.rows[i - 1]) + 1):
            v = pi(i, j)
            if v > 0 and cell_level(pi, i, j) == level:
                cells[(i, j)] = v
    seen = set()
    n_paths = 0
    for start in cells:
        if start in seen:
            continue
        n_paths += 1
        stack = [start]
        seen.add(start)
        while stack:
            (i, j) = stack.pop()
            for nb in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
                if nb in cells and nb not in seen and cells[nb] == cells[(i, j)]:
                    seen.add(nb)
                    stack.append(nb)
    return n_paths


def strict_path_count(pi):
    """p(pi~) for a strict plane partition: all paths sit at level 1."""
    return path_count_at_level(pi, 1)


def max_level(pi):
    best = 0
    for i in range(1, pi.n_rows() + 1):
        for j in range(1, len(pi.rows[i - 1]) + 1):
            best = max(best, cell_level(pi, i, j))
    return best


# ---------------------------------------------------------------------------
# plane-partition weights and generating functions
# ---------------------------------------------------------------------------

def pp_weight(pi, xs, ys, t=0):
    """A_pi({x},{y},t) = prod_i (1-t^i)^{p_i} x_i^{|pi_{-i+1}|-|pi_{-i}|}
    y_i^{|pi_{i-1}|-|pi_i|}, for pi inside [N,N,M] with N = len(xs)."""
    N = len(xs)
    if len(ys) != N:
        raise BoxMismatch("need as many x's as y's")
    if pi.n_rows() > N or pi.n_cols() > N:
        raise BoxMismatch(f"plane partition does not fit in [{N},{N},*]")
    slices = diagonal_slices(pi, range(-N, N + 1))
    t = LaurentPoly.coerce(t) if isinstance(t, LaurentPoly) else t
    result = LaurentPoly.const(1) if _any_symbolic(xs, ys, t) else Fraction(1)
    for i in range(1, N + 1):
        p_i = path_count_at_level(pi, i)
        if p_i:
            one = Fraction(1)
            result = result * (one - _pow(t, i)) ** p_i
        dx = weight(slices[-i + 1]) - weight(slices[-i])
        dy = weight(slices[i - 1]) - weight(slices[i])
        result = result * _pow(xs[i - 1], dx) * _pow(ys[i - 1], dy)
    return result


def strict_pp_weight(pi, xs, ys):
    """B_pi~({x},{y}) = 2^{p(pi~)} * the monomial slice weights."""
    N = len(xs)
    if pi.n_rows() > N or pi.n_cols() > N:
        raise BoxMismatch(f"plane partition does not fit in [{N},{N},*]")
    slices = diagonal_slices(pi, range(-N, N + 1))
    result = LaurentPoly.const(1) if _any_symbolic(xs, ys, 0) else Fraction(1)
    result = result * Fraction(2) ** strict_path_count(pi)
    for i in range(1, N + 1):
        dx = weight(slices[-i + 1]) - weight(slices[-i])
        dy = weight(slices[i - 1]) - weight(slices[i])
        result = result * _pow(xs[i - 1], dx) * _pow(ys[i - 1], dy)
    return result


def _any_symbolic(xs, ys, t):
    return (any(isinstance(x, LaurentPoly) for x in xs)
            or any(isinstance(y, LaurentPoly) for y in ys)
            or isinstance(t, LaurentPoly))


def _pow(base, k):
    if isinstance(base, LaurentPoly):
        return base ** k
    if k < 0:
        return Fraction(1) / (Fraction(base) ** (-k)) if isinstance(base, (int, Fraction)) \
            else base ** k
    return base ** k


def boxed_genfun_enum(N, M, xs, ys, t=0, strict=False):
    """Sum of A_pi (or B_pi~ when strict) over all pi inside [N,N,M]."""
    total = None
    for pi in enumerate_plane_partitions(N, M, strict=strict):
        w = strict_pp_weight(pi, xs, ys) if strict else pp_weight(pi, xs, ys, t)
        total = w if total is None else total + w
    return total if total is not None else Fraction(1)


class DegenerateEvaluationPoint(ZeroDivisionError):
    pass


def boxed_genfun_closed(N, M, xs, ys, t=0, form="hl-sum"):
    """Closed forms of the boxed generating function.

    form: 'schur-det' (single determinant over a Vandermonde), 'schur-sum'
    (sum of Schur pairs, t=0), 'q-sum' (Schur Q pairs, t=-1), 'hl-sum'
    (Hall-Littlewood pairs, general t), 'product-limit' (M -> infinity).
    """
    from . import symfun  # local import; symfun depends on this module

    if form == "schur-sum":
        total = Fraction(0)
        for mu in partitions_in_box(N, M):
            total = total + symfun.schur(mu, xs) * symfun.schur(mu, ys)
        return total
    if form == "q-sum":
        total = Fraction(0)
        for mu in strict_partitions_in_box(N, M):
            total = total + (Fraction(1, 2 ** len(mu))
                             * symfun.schur_q(mu, xs) * symfun.schur_q(mu, ys))
        return total
    if form == "hl-sum":
        total = Fraction(0)
        for mu in partitions_in_box(N, M):
            total = total + (symfun.b_mu(mu, t)
                             * symfun.hall_littlewood(mu, xs, t)
                             * symfun.hall_littlewood(mu, ys, t))
        return total
    if form == "schur-det":
        from .exactnum import det
        if len(set(xs)) < N or len(set(ys)) < N:
            raise DegenerateEvaluationPoint("coincident points in Vandermonde")
        rows = [[sum(_pow(xs[i] * ys[j], m) for m in range(M + N))
                 for j in range(N)] for i in range(N)]
        num = det(rows)
        den = Fraction(1)
        for i in range(N):
            for j in range(i + 1, N):
                den *= (xs[i] - xs[j]) * (ys[i] - ys[j])
        return num / den
    if form == "product-limit":
        total = 1.0
        for x in xs:
            for y in ys:
                if abs(complex(x * y)) >= 1:
                    raise ValueError("product-limit needs |x_i y_j| < 1")
                total *= (1 - complex(t) * complex(x) * complex(y)) / \
                         (1 - complex(x) * complex(y))
        return total
    raise ValueError(f"unknown form {form!r}")


# ---------------------------------------------------------------------------
# series generating functions (MacMahon / strict / path-weighted)
# ---------------------------------------------------------------------------

def series_genfun_coeffs(d, t=0):
    """Coefficients of z^0..z^d of sum_pi prod_i (1-t^i)^{p_i(pi)} z^{|pi|}.

    Computed by enumerating every plane partition of weight <= d.  At t=0 this
    is MacMahon's series, at t=-1 the strict series with 2^{p} weights.
    """
    one = LaurentPoly.const(1) if isinstance(t, LaurentPoly) else Fraction(1)
    coeffs = [one * 0 for _ in range(d + 1)]
    for pi in enumerate_pp_by_weight(d):
        w = pi.weight()
        a = one
        for lvl in range(1, max_level(pi) + 1):
            p = path_count_at_level(pi, lvl)
            if p:
                a = a * (one - _pow(t, lvl)) ** p
        coeffs[w] = coeffs[w] + a
    return coeffs


def strict_series_coeffs(d):
    """Coefficients of sum over strict pi~ of 2^{p(pi~)} z^{|pi~|}."""
    coeffs = [Fraction(0)] * (d + 1)
    for pi in enumerate_pp_by_weight(d):
        if not is_strict_pp(pi):
            continue
        coeffs[pi.weight()] += Fraction(2) ** strict_path_count(pi)
    return coeffs


def _series_mul(a, b, d):
    out = [a[0] * 0] * (d + 1)
    for i, ai in enumerate(a):
        if isinstance(ai, LaurentPoly) and ai.is_zero():
            continue
        if not isinstance(ai, LaurentPoly) and ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > d:
                break
            out[i + j] = out[i + j] + ai * bj
    return out


def product_series_coeffs(d, t=0):
    """Truncated expansion of prod_{i>=1} ((1 - t z^i)/(1 - z^i))^i to z^d."""
    one = LaurentPoly.const(1) if isinstance(t, LaurentPoly) else Fraction(1)
    series = [one] + [one * 0] * d
    for i in range(1, d + 1):
        # (1 - t z^i) * (1 + z^i + z^{2i} + ...) truncated
        factor = [one * 0] * (d + 1)
        for k in range(0, d // i + 1):
            factor[k * i] = factor[k * i] + one
            if (k + 1) * i <= d:
                factor[(k + 1) * i] = factor[(k + 1) * i] - _pow(t, 1) * one
        block = factor
        for _ in range(i - 1):
            block = _series_mul(block, factor, d)
        series = _series_mul(series, block, d)
    return series


def strict_product_series_coeffs(d):
    """Truncated expansion of prod_{i>=1} ((1 + z^i)/(1 - z^i))^i to z^d."""
    return [c if not isinstance(c, LaurentPoly) else c
            for c in product_series_coeffs(d, t=Fraction(-1))]

"""Charged, neutral and t-deformed fermionic Fock calculus.

Charged basis states are labelled (charge, mu): the occupied positions of the
underlying Maya diagram are { mu_i + charge - i : i >= 1 } with mu_i = 0 for
i > len(mu).  Creation psi_m inserts an occupied position m with the sign
(-1)^{#occupied above m}; annihilation psi*_m removes it likewise.  Charge-0
states with label mu realize the partition basis |mu).

Neutral basis states are tuples (m_1 > ... > m_k >= 0) representing the
monomial phi_{m_1}...phi_{m_k}|0>; the canonical strict-partition label drops
a trailing zero.  phi_n acts by the anticommutator scan
phi_n phi_m = 2(-1)^n delta_{n+m,0} - phi_m phi_n together with phi_n|0> = 0
for n < 0.

Operators never build a general Clifford rewriter: Heisenberg modes, vertex
operators and bilinear exponentials all act through these two elementary
actions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exactnum import LaurentPoly, det, pfaffian
from . import partitions as pt
from . import symfun as sf


class FlavorMismatch(ValueError):
    pass


class CutoffExceeded(ValueError):
    pass


class NonNilpotentDirection(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class OddLength(ValueError):
    pass


# ---------------------------------------------------------------------------
# charged Maya-diagram actions
# ---------------------------------------------------------------------------

def _occupied(charge, mu, m):
    """Is position m occupied in the state (charge, mu)?"""
    for i, p in enumerate(mu, start=1):
        if p + charge - i == m:
            return True
    # beyond the listed parts the state is the charge sea: s_i = charge - i
    return m <= charge - len(mu) - 1


def _count_above(charge, mu, m):
    """Number of occupied positions strictly above m."""
    n = sum(1 for i, p in enumerate(mu, start=1) if p + charge - i > m)
    # sea part: positions charge - i for i > len(mu), above m
    n += max(0, (charge - m - 1) - len(mu))
    return n


def _to_label(occ_desc, charge):
    """Partition label from explicitly listed occupied positions (desc),
    complete down to the sea."""
    mu = []
    for i, s in enumerate(occ_desc, start=1):
        mu.append(s - charge + i)
    while mu and mu[-1] == 0:
        mu.pop()
    if any(p < 0 for p in mu) or any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise AssertionError("corrupt Maya diagram")
    return tuple(mu)


def _slist(charge, mu, depth):
    return [(mu[i - 1] if i <= len(mu) else 0) + charge - i
            for i in range(1, depth + 1)]


def psi_apply(m, charge, mu):
    """psi_m |charge, mu> -> (sign, charge+1, mu') or None."""
    if _occupied(charge, mu, m):
        return None
    sign = -1 if _count_above(charge, mu, m) % 2 else 1
    depth = len(mu) + max(0, charge - m) + 2
    s = _slist(charge, mu, depth)
    s.append(m)
    s.sort(reverse=True)
    return sign, charge + 1, _to_label(s, charge + 1)


def psi_star_apply(m, charge, mu):
    """psi*_m |charge, mu> -> (sign, charge-1, mu') or None."""
    if not _occupied(charge, mu, m):
        return None
    sign = -1 if _count_above(charge, mu, m) % 2 else 1
    depth = len(mu) + max(0, charge - m) + 2
    s = _slist(charge, mu, depth)
    s.remove(m)
    return sign, charge - 1, _to_label(s, charge - 1)


def _apply_linear(action, vec):
    out = {}
    for key, coeff in vec.items():
        for new_key, factor in action(key):
            c = out.get(new_key, 0) + coeff * factor
            if _is_zero(c):
                out.pop(new_key, None)
            else:
                out[new_key] = c
    return out


def _is_zero(c):
    return c.is_zero() if isinstance(c, LaurentPoly) else c == 0


def heisenberg_charged(m, charge, mu):
    """H_m = sum_i :psi_i psi*_{i+m}: acting on one basis state."""
    if m == 0:
        raise ValueError("H_0 is central on fixed charge; not supported")
    depth = len(mu) + abs(m) + abs(charge) + 2
    results = []
    for n in set(_slist(charge, mu, depth)):
        hit = psi_star_apply(n, charge, mu)
        if hit is None:
            continue
        s1, c1, mu1 = hit
        hit2 = psi_apply(n - m, c1, mu1)
        if hit2 is None:
            continue
        s2, c2, mu2 = hit2
        results.append(((c2, mu2), s1 * s2))
    return results


# ---------------------------------------------------------------------------
# neutral fermion actions
# ---------------------------------------------------------------------------

def phi_apply(n, state):
    """phi_n applied to the monomial state (m_1 > ... > m_k >= 0).

    Returns a list of (new_state, coeff); at most two entries.
    """
    state = tuple(state)
    if not state:
        return [( (n,), 1 )] if n >= 0 else []
    m0, rest = state[0], state[1:]
    if n > m0:
        return [((n,) + state, 1)]
    if n == m0:
        if n == 0:
            return [(rest, 1)]          # phi_0^2 = 1
        return []                        # phi_n^2 = 0 for n != 0
    out = []
    if n + m0 == 0:
        out.append((rest, 2 * (-1) ** (n % 2)))
    for sub, c in phi_apply(n, rest):
        out.append(((m0,) + sub, -c))
    return out


def neutral_heisenberg(m, state):
    """lambda_m = (1/4) sum_j (-1)^j phi_{-j-m} phi_j on one basis state."""
    if m % 2 == 0:
        raise ValueError("neutral Heisenberg modes exist for odd m only")
    top = max(state, default=0)
    out = {}
    for j in range(-(top + abs(m) + 1), top + abs(m) + 2):
        for mid, c1 in phi_apply(j, state):
            for new, c2 in phi_apply(-j - m, mid):
                coeff = Fraction((-1) ** (j % 2), 4) * c1 * c2
                c = out.get(new, Fraction(0)) + coeff
                if c == 0:
                    out.pop(new, None)
                else:
                    out[new] = c
    return list(out.items())


def strict_to_monomial(mu):
    """Canonical monomial tuple of a strict partition (pad odd length with 0)."""
    mu = tuple(mu)
    return mu + (0,) if len(mu) % 2 else mu


def monomial_to_strict(state):
    """Strict-partition label of a canonical monomial (drops trailing 0)."""
    if state and state[-1] == 0:
        return state[:-1]
    return state


# ---------------------------------------------------------------------------
# vacuum expectation values
# ---------------------------------------------------------------------------

def wick_vev_charged(ms, ns):
    """<psi_{m_1}..psi_{m_r} psi*_{n_r}..psi*_{n_1}> as a determinant."""
    if len(ms) != len(ns):
        raise LengthMismatch("need as many psi as psi*")
    r = len(ms)
    rows = [[Fraction(1) if ms[i] == ns[j] and ms[i] < 0 else Fraction(0)
             for j in range(r)] for i in range(r)]
    return det(rows)


def _phi_pair_vev(a, b):
    # <phi_a phi_b> != 0 needs phi_b creating on |0> (b >= 0) and phi_a
    # annihilating against <0| (a <= 0); see the vacuum actions above.
    if a == 0 and b == 0:
        return Fraction(1)
    if a + b == 0 and a < 0:
        return Fraction(2 * (-1) ** (a % 2))
    return Fraction(0)


def wick_vev_neutral(ms):
    """<phi_{m_1} ... phi_{m_{2r}}> as a Pfaffian of pair contractions."""
    if len(ms) % 2:
        raise OddLength("neutral VEV needs an even number of fermions")
    r = len(ms)
    rows = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            v = _phi_pair_vev(ms[i], ms[j])
            rows[i][j] = v
            rows[j][i] = -v
    return pfaffian(rows)


def inner_product(flavor, mu, nu, t=None):
    """<(mu|, |nu)> for the requested flavor."""
    if flavor == "charged":
        return Fraction(1) if tuple(mu) == tuple(nu) else Fraction(0)
    if flavor == "neutral":
        mu, nu = pt.check_strict(mu), pt.check_strict(nu)
        return Fraction(2) ** len(mu) if mu == nu else Fraction(0)
    if flavor == "tdeformed":
        if t is None:
            raise FlavorMismatch("t-deformed inner product needs t")
        if tuple(mu) != tuple(nu):
            return Fraction(0) * sf.b_mu((), t)
        return sf.b_mu(mu, t)
    raise FlavorMismatch(f"unknown flavor {flavor!r}")


# ---------------------------------------------------------------------------
# FockVector
# ---------------------------------------------------------------------------

class FockVector:
    """Finite combination of partition-basis states of one flavor."""

    __slots__ = ("flavor", "terms", "cutoff")

    def __init__(self, flavor, terms=None, cutoff=(64, 64)):
        if flavor not in ("charged", "neutral", "tdeformed"):
            raise FlavorMismatch(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.cutoff = cutoff
        self.terms = {}
        for mu, c in (terms or {}).items():
            self._check(mu)
            if not _is_zero(c):
                self.terms[tuple(mu)] = c

    def _check(self, mu):
        mu = tuple(mu)
        if self.flavor == "neutral":
            pt.check_strict(mu)
        else:
            pt.check_partition(mu)
        maxpart, maxlen = self.cutoff
        if mu and (mu[0] > maxpart or len(mu) > maxlen):
            raise CutoffExceeded(f"{mu} outside cutoff {self.cutoff}")

    @staticmethod
    def vacuum(flavor, cutoff=(64, 64)):
        return FockVector(flavor, {(): Fraction(1)}, cutoff)

    def coeff(self, mu):
        return self.terms.get(tuple(mu), Fraction(0))

    def map_terms(self, fn):
        """fn(mu, coeff) -> iterable of (nu, coeff); rebuilds the vector."""
        out = {}
        for mu, c in self.terms.items():
            for nu, d in fn(mu, c):
                s = out.get(nu, 0) + d
                if _is_zero(s):
                    out.pop(nu, None)
                else:
                    out[nu] = s
        return FockVector(self.flavor, out, self.cutoff)

    def __add__(self, other):
        if self.flavor != other.flavor:
            raise FlavorMismatch("cannot mix flavors")
        out = dict(self.terms)
        for mu, c in other.terms.items():
            s = out.get(mu, 0) + c
            if _is_zero(s):
                out.pop(mu, None)
            else:
                out[mu] = s
        return FockVector(self.flavor, out, self.cutoff)

    def scale(self, c):
        return FockVector(self.flavor,
                          {mu: v * c for mu, v in self.terms.items()},
                          self.cutoff)

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, FockVector) and self.flavor == other.flavor
                and (self - other).is_zero())

    def __repr__(self):
        order = sorted(self.terms, key=lambda m: (sum(m), m))
        inner = ", ".join(f"{m}: {self.terms[m]}" for m in order)
        return f"FockVector[{self.flavor}]({{{inner}}})"


# ---------------------------------------------------------------------------
# Heisenberg action and the evolution-bracket oracle
# ---------------------------------------------------------------------------

def heisenberg_apply(flavor, m, v):
    """H_m (charged) or lambda_m (neutral, odd m) applied to a FockVector."""
    if flavor == "charged":
        def act(mu, c):
            for (charge, nu), sign in heisenberg_charged(m, 0, mu):
                if charge != 0:
                    raise AssertionError("Heisenberg modes preserve charge")
                yield nu, c * sign
        return v.map_terms(act)
    if flavor == "neutral":
        def act(mu, c):
            for state, coeff in neutral_heisenberg(m, strict_to_monomial(mu)):
                yield monomial_to_strict(state), c * coeff
        return v.map_terms(act)
    raise FlavorMismatch("Heisenberg modes exist for charged/neutral flavors")


def evolution_bracket(flavor, mu, cap=None):
    """<empty| exp(sum_n t_n H_n) |mu> by the truncated exponential series.

    Independent of the determinant/Pfaffian formulas in symfun: uses only the
    elementary fermion actions.  Returns a polynomial in t_1..t_{|mu|}
    (odd t's only for the neutral flavor).
    """
    w = pt.weight(mu)
    cap = w if cap is None else cap
    if cap < w:
        raise sf.CapTooSmall(f"weight {w} exceeds cap {cap}")
    cache = {}

    def descend(key):
        state_weight = sum(key)
        if state_weight == 0:
            return LaurentPoly.const(1)
        if key in cache:
            return cache[key]
        total = LaurentPoly()
        modes = range(1, state_weight + 1) if flavor == "charged" \
            else range(1, state_weight + 1, 2)
        for n in modes:
            if flavor == "charged":
                moved = heisenberg_charged(n, 0, key)
                items = [(nu, Fraction(sign)) for (c0, nu), sign in moved]
            else:
                items = [(monomial_to_strict(s), c)
                         for s, c in neutral_heisenberg(n, strict_to_monomial(key))]
            for nu, c in items:
                total = total + (Fraction(n, state_weight) * c) \
                    * sf.tvar(n) * descend(tuple(nu))
        cache[key] = total
        return total

    return descend(tuple(mu))


# ---------------------------------------------------------------------------
# half-vertex operators
# ---------------------------------------------------------------------------

def half_vertex_apply(kind, x, v, t=None):
    """Apply a half-vertex operator to a FockVector.

    kind is one of KP+/KP-/BKP+/BKP-/HL+/HL-; x may be a symbol or number.
    The "+" operators produce finite interlacing sums below each state; the
    "-" operators sum over interlacing states above, truncated at v.cutoff.
    """
    family, sign = kind[:-1], kind[-1]
    if family not in ("KP", "BKP", "HL") or sign not in "+-":
        raise ValueError(f"unknown half-vertex kind {kind!r}")
    strict = family == "BKP"
    if family == "BKP" and v.flavor != "neutral":
        raise FlavorMismatch("BKP operators act on the neutral flavor")
    if family == "KP" and v.flavor != "charged":
        raise FlavorMismatch("KP operators act on the charged flavor")
    if family == "HL" and v.flavor != "tdeformed":
        raise FlavorMismatch("HL operators act on the t-deformed flavor")
    maxpart, maxlen = v.cutoff

    def weight_factor(mu, nu):
        # mu >- nu always holds here
        if family == "KP":
            return Fraction(1)
        if family == "BKP":
            k = pt.strict_new_parts(mu, nu)
            if sign == "-":
                k += len(nu) - len(mu)
            return Fraction(2) ** k if k >= 0 else Fraction(1, 2 ** (-k))
        return sf.p_skew(mu, nu, t) if sign == "+" else sf.p_skew(nu, mu, t)

    if sign == "+":
        def act(mu, c):
            for nu in pt.interlacing_below(mu, strict=strict):
                yield nu, c * weight_factor(mu, nu) * _xpow(x, pt.weight(mu) - pt.weight(nu))
    else:
        def act(nu, c):
            for mu in pt.interlacing_above(nu, maxpart, maxlen, strict=strict):
                yield mu, c * weight_factor(mu, nu) * _xpow(x, pt.weight(mu) - pt.weight(nu))
    return v.map_terms(act)


def _xpow(x, k):
    if isinstance(x, LaurentPoly):
        return x ** k
    return Fraction(x) ** k if isinstance(x, int) else x ** k


# ---------------------------------------------------------------------------
# bilinear exponentials
# ---------------------------------------------------------------------------

class BilinearCoeffs:
    """X = sum a_{m,n} psi_m psi*_n (charged) or Y = sum b_{m,n} phi_m phi_n
    (neutral), with finite support."""

    __slots__ = ("flavor", "entries")

    def __init__(self, flavor, entries):
        if flavor not in ("charged", "neutral"):
            raise FlavorMismatch(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.entries = dict(entries)
        for (m, n) in self.entries:
            if flavor == "charged" and not (m >= 0 > n):
                raise NonNilpotentDirection(
                    f"psi_{m} psi*_{n} is not creation-type")
            if flavor == "neutral" and not (m > n >= 0):
                raise NonNilpotentDirection(
                    f"phi_{m} phi_{n} is not creation-type")


def bilinear_exp_apply(X, cutoff=(64, 64)):
    """exp(X)|0> expanded on the partition basis (exactly finite)."""
    flavor = "charged" if X.flavor == "charged" else "neutral"
    vac = FockVector.vacuum(flavor, cutoff)

    def apply_X(vec):
        out = {}
        for mu, c in vec.terms.items():
            for (m, n), a in X.entries.items():
                if _is_zero(a):
                    continue
                if flavor == "charged":
                    hit = psi_star_apply(n, 0, mu)
                    if hit is None:
                        continue
                    s1, c1, mu1 = hit
                    hit2 = psi_apply(m, c1, mu1)
                    if hit2 is None:
                        continue
                    s2, c2, mu2 = hit2
                    key, factor = mu2, Fraction(s1 * s2)
                    if key and (key[0] > cutoff[0] or len(key) > cutoff[1]):
                        raise CutoffExceeded(f"{key} outside cutoff {cutoff}")
                    val = out.get(key, 0) + c * a * factor
                    out[key] = val
                else:
                    mono = strict_to_monomial(mu)
                    for mid, f1 in phi_apply(n, mono):
                        for new, f2 in phi_apply(m, mid):
                            key = monomial_to_strict(new)
                            if key and (key[0] > cutoff[0] or len(key) > cutoff[1]):
                                raise CutoffExceeded(
                                    f"{key} outside cutoff {cutoff}")
                            val = out.get(key, 0) + c * a * (f1 * f2)
                            out[key] = val
        return FockVector(flavor, out, cutoff)

    total = vac
    term = vac
    k = 0
    while True:
        k += 1
        term = apply_X(term).scale(Fraction(1, k))
        if term.is_zero():
            break
        total = total + term
    return total


# ---------------------------------------------------------------------------
# bilinear identities (CFBI / NFBI)
# ---------------------------------------------------------------------------

def bilinear_identity_residual(kind, g):
    """Residual of the charged/neutral fermion bilinear identity on g.

    CFBI: sum_i psi_i g x psi*_i g = 0.
    NFBI: sum_i phi_i g x phi*_i g = g phi_0-extended pair.
    Returns the largest absolute coefficient over the tensor basis.
    """
    if kind == "CFBI":
        if g.flavor != "charged":
            raise FlavorMismatch("CFBI applies to charged states")
        tensor = {}
        items = list(g.terms.items())
        for mu, cmu in items:
            for nu, cnu in items:
                # any position occupied in nu but vacant in mu lies at or
                # above -len(mu)-1, so this listing depth covers them all
                depth = len(nu) + len(mu) + 2
                occupied_nu = _slist(0, nu, depth)
                for i in occupied_nu:
                    if _occupied(0, mu, i):
                        continue
                    a = psi_apply(i, 0, mu)
                    b = psi_star_apply(i, 0, nu)
                    s1, c1, m1 = a
                    s2, c2, m2 = b
                    key = ((c1, m1), (c2, m2))
                    val = tensor.get(key, 0) + cmu * cnu * s1 * s2
                    if _is_zero(val):
                        tensor.pop(key, None)
                    else:
                        tensor[key] = val
        return _max_abs(tensor.values())
    if kind == "NFBI":
        if g.flavor != "neutral":
            raise FlavorMismatch("NFBI applies to neutral states")
        tensor = {}
        items = [(strict_to_monomial(mu), c) for mu, c in g.terms.items()]
        for E, cE in items:
            for Fm, cF in items:
                # sum_i phi_i|E> x phi*_i|F>, phi*_i = (-1)^i phi_{-i}
                js = {0} | set(E) | {-e for e in Fm} | {e for e in Fm} | {-e for e in E}
                for i in sorted(js):
                    for left, f1 in phi_apply(i, E):
                        for right, f2 in phi_apply(-i, Fm):
                            coeff = cE * cF * f1 * f2 * (-1) ** (i % 2)
                            key = (left, right)
                            val = tensor.get(key, 0) + coeff
                            if _is_zero(val):
                                tensor.pop(key, None)
                            else:
                                tensor[key] = val
                # subtract g phi_0 x g phi_0 contribution
        for E, cE in items:
            for Fm, cF in items:
                for left, f1 in _append_phi0(E):
                    for right, f2 in _append_phi0(Fm):
                        key = (left, right)
                        val = tensor.get(key, 0) - cE * cF * f1 * f2
                        if _is_zero(val):
                            tensor.pop(key, None)
                        else:
                            tensor[key] = val
        return _max_abs(tensor.values())
    raise ValueError(f"unknown bilinear identity {kind!r}")


def _append_phi0(state):
    """Right-multiply the monomial phi_{state} by phi_0 on the vacuum."""
    if state and state[-1] == 0:
        return [(state[:-1], 1)]
    return [(state + (0,), 1)]


def _max_abs(values):
    best = Fraction(0)
    for v in values:
        if isinstance(v, LaurentPoly):
            m = max((abs(c) for c in v.terms.values()), default=Fraction(0))
        else:
            m = abs(v)
        if m > best:
            best = m
    return best


# ---------------------------------------------------------------------------
# Pluecker relations
# ---------------------------------------------------------------------------

def _kp_index_set(mu, l):
    """{m_1 > ... > m_l >= -l} for a partition with at most l parts."""
    return tuple(pt.part(mu, i) - i for i in range(1, l + 1))


def _insert_signed(value, into):
    """Insert value into the decreasing tuple; (position sign, new tuple)."""
    if value in into:
        return 0, None
    pos = 0
    while pos < len(into) and into[pos] > value:
        pos += 1
    sign = -1 if pos % 2 else 1
    return sign, into[:pos] + (value,) + into[pos:]


def plucker_residual(kind, coeffs):
    """Largest absolute value over all relation instances touching the support.

    KP coefficients are keyed by partitions (charge-0 expansion at fixed
    length l = max part count); BKP coefficients by strict partitions.
    """
    if kind == "KP":
        if not coeffs:
            return Fraction(0)
        l = max((len(mu) for mu in coeffs), default=0)
        c = {_kp_index_set(mu, l): v for mu, v in coeffs.items()}

        def cval(key):
            return c.get(key, Fraction(0))

        relations = set()
        for A in c:
            for B in c:
                for v in B:
                    if v in A:
                        continue
                    P = tuple(sorted(A + (v,), reverse=True))
                    Q = tuple(x for x in B if x != v)
                    if P[-1] >= -l and (not Q or Q[-1] >= -l):
                        relations.add((P, Q))
        worst = Fraction(0)
        for P, Q in relations:
            total = 0
            for i, p in enumerate(P):
                rest = P[:i] + P[i + 1:]
                s2, merged = _insert_signed(p, Q)
                if s2 == 0:
                    continue
                term = cval(rest) * cval(merged) * s2
                total = total + (term if i % 2 == 0 else -term)
            worst = max(worst, _max_abs([total]))
        return worst
    if kind == "BKP":
        c = {}
        for mu, v in coeffs.items():
            c[strict_to_monomial(pt.check_strict(mu))] = v

        def cval(key):
            return c.get(key, Fraction(0))

        relations = set()
        for A in c:
            for B in c:
                for v in B:
                    if v not in A:
                        P = tuple(sorted(A + (v,), reverse=True))
                        Q = tuple(x for x in B if x != v)
                        relations.add((P, Q))
                for v in A:
                    if v not in B:
                        P = tuple(x for x in A if x != v)
                        Q = tuple(sorted(B + (v,), reverse=True))
                        relations.add((P, Q))
        worst = Fraction(0)
        for P, Q in relations:
            total = 0
            for i, p in enumerate(P):
                rest = P[:i] + P[i + 1:]
                s2, merged = _insert_signed(p, Q)
                if s2 == 0:
                    continue
                term = cval(rest) * cval(merged) * s2
                total = total + (-term if i % 2 == 0 else term)
            for j, q in enumerate(Q):
                rest = Q[:j] + Q[j + 1:]
                s2, merged = _insert_signed(q, P)
                if s2 == 0:
                    continue
                term = cval(merged) * cval(rest) * s2
                total = total + (-term if j % 2 == 0 else term)
            worst = max(worst, _max_abs([total]))
        return worst
    raise ValueError(f"unknown Pluecker kind {kind!r}")


def plucker_solution(kind, generator):
    """Decomposable coefficient families.

    KP: generator is a dict row -> length-l row vector (rows indexed by
    integers >= -l); returns {mu: det of rows (mu_i - i)}.
    BKP: generator is a skew matrix dict (i,j) -> value on indices >= 0;
    returns {strict mu: sub-Pfaffian}.
    """
    if kind == "KP":
        rows = dict(generator)
        if not rows:
            raise ShapeMismatch("empty generator")
        l = len(next(iter(rows.values())))
        if any(len(r) != l for r in rows.values()):
            raise ShapeMismatch("ragged generator rows")
        max_row = max(rows)
        out = {}
        for mu in pt.partitions_in_box(l, max_row + 1):
            key = _kp_index_set(mu, l)
            if any(k not in rows for k in key):
                continue
            out[mu] = det([list(rows[k]) for k in key])
        return out
    if kind == "BKP":
        entries = dict(generator)
        idx = sorted({i for pair in entries for i in pair})
        if any(i < 0 for i in idx):
            raise ShapeMismatch("BKP indices must be >= 0")

        def entry(i, j):
            if (i, j) in entries:
                return entries[(i, j)]
            if (j, i) in entries:
                return -entries[(j, i)]
            return Fraction(0)

        out = {(): Fraction(1)}
        for r in range(2, len(idx) + 1, 2):
            for sub in combinations(sorted(idx, reverse=True), r):
                from .exactnum import sub_pfaffians
                val = sub_pfaffians(entry, sub)
                out[monomial_to_strict(sub)] = val
        return out
    raise ValueError(f"unknown Pluecker kind {kind!r}")

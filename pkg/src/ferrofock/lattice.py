"""Quantum lattice models: phase, i-boson, q-boson, XXZ, trigonometric
Felderhof.

Spin-chain states are dicts mapping tuples of +-1 (site 1..M, +1 = up) to
complex amplitudes.  Boson states are dicts mapping occupation tuples
(n_0..n_M) to exact (or symbolic) coefficients.

Conventions straight from the defining relations:

  * R-matrices are 4x4 in the basis (uu, ud, du, dd); rows are outgoing
    (aux, site) indices, columns ingoing.
  * XXZ monodromy: T_a(u,{w}) = R_{a1}(u,w_1) ... R_{aM}(u,w_M);
    A,B,C,D are the (aux out, aux in) = (+,+),(+,-),(-,+),(-,-) blocks.
  * Felderhof B/C-products are ordered with larger labels to the left.
  * Boson monodromy: T(x) = L_M(x) ... L_0(x) over M+1 sites; the rescaled
    operators are BB(x) = x^{M/2} B(x) and CC(x) = x^{M/2} C(1/x).
  * bracket [u] = 2 sinh u, angle <u> = 2 cosh u.
"""

from __future__ import annotations

import cmath
from cmath import sqrt as csqrt
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

import numpy as np

from .exactnum import LaurentPoly, det
from . import partitions as pt
from . import symfun as sf


class DimensionMismatch(ValueError):
    pass


class SingularPoint(ZeroDivisionError):
    pass


class DegenerateEvaluationPoint(ZeroDivisionError):
    pass


class BetheResidualTooLarge(ValueError):
    pass


class RootFindingFailed(RuntimeError):
    pass


class InsufficientDistinctRoots(RuntimeError):
    pass


class SizeMismatch(ValueError):
    pass


def br(u):
    """[u] = 2 sinh u."""
    return 2 * cmath.sinh(u)


def ag(u):
    """<u> = 2i cosh u = [u + i pi/2]."""
    return 2j * cmath.cosh(u)


UP, DOWN = 1, -1


@dataclass(frozen=True)
class ModelSpec:
    """Model name plus its parameter bundle."""
    model: str                      # phase | iboson | qboson | xxz | felderhof
    M: int                          # number of sites (bosons use M+1 sites)
    N: int = 0                      # number of excitations
    gamma: complex = 0.0            # XXZ crossing parameter
    t: object = None                # q-boson deformation (t = q^-2)
    ws: tuple = ()                  # inhomogeneities (XXZ) / rapidity fields
    rs: tuple = ()                  # Felderhof column fields

    def __post_init__(self):
        if self.model not in ("phase", "iboson", "qboson", "xxz", "felderhof"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "felderhof" and len(self.rs) != len(self.ws):
            raise DimensionMismatch("need one field per inhomogeneity")


# ---------------------------------------------------------------------------
# R-matrices and the Yang-Baxter residual
# ---------------------------------------------------------------------------

def _weights(spec, u, v, pu=None, qv=None):
    """(a+, b+, c+, c-, b-, a-) local weights at rapidities (u, v)."""
    m = spec.model
    if m == "xxz":
        g = spec.gamma
        return (br(u - v + g), br(u - v), br(g), br(g), br(u - v), br(u - v + g))
    if m == "felderhof":
        c = csqrt(br(2 * pu)) * csqrt(br(2 * qv))
        return (br(u - v + pu + qv), br(u - v + qv - pu), c, c,
                br(u - v - qv + pu), br(v - u + pu + qv))
    if m == "phase":
        c = csqrt(u) * csqrt(v)
        return (u, 0.0, c, c, u - v, u)
    if m == "iboson":
        c = 2 * csqrt(u) * csqrt(v)
        return (u + v, v - u, c, c, u - v, u + v)
    if m == "qboson":
        t = complex(spec.t)
        c = (1 - t) * csqrt(u) * csqrt(v)
        return (u - t * v, t * (u - v), c, c, u - v, u - t * v)
    raise ValueError(m)


def model_rmatrix(spec, u, v, pu=None, qv=None):
    """4x4 weight matrix in the basis (uu, ud, du, dd); rows out, cols in."""
    ap, bp, cp, cm, bm, am = _weights(spec, u, v, pu, qv)
    R = np.zeros((4, 4), dtype=complex)
    R[0, 0] = ap
    R[1, 1], R[1, 2] = bp, cp
    R[2, 1], R[2, 2] = cm, bm
    R[3, 3] = am
    return R


def _kron3(R, places):
    """Embed a 4x4 two-space matrix into C^2 x C^2 x C^2 at `places`."""
    big = np.zeros((8, 8), dtype=complex)
    other = ({0, 1, 2} - set(places)).pop()
    for out_bits in product((0, 1), repeat=3):
        for in_bits in product((0, 1), repeat=3):
            if out_bits[other] != in_bits[other]:
                continue
            r = 2 * out_bits[places[0]] + out_bits[places[1]]
            c = 2 * in_bits[places[0]] + in_bits[places[1]]
            row = 4 * out_bits[0] + 2 * out_bits[1] + out_bits[2]
            col = 4 * in_bits[0] + 2 * in_bits[1] + in_bits[2]
            big[row, col] += R[r, c]
    return big


def yang_baxter_residual(spec, u, v, w, pu=None, qv=None, rw=None):
    """Max |component| of R_ab R_ac R_bc - R_bc R_ac R_ab on C^2 x3."""
    Rab = _kron3(model_rmatrix(spec, u, v, pu, qv), (0, 1))
    Rac = _kron3(model_rmatrix(spec, u, w, pu, rw), (0, 2))
    Rbc = _kron3(model_rmatrix(spec, v, w, qv, rw), (1, 2))
    lhs = Rab @ Rac @ Rbc
    rhs = Rbc @ Rac @ Rab
    return float(np.max(np.abs(lhs - rhs)))


def crossing_residual(spec, u, v):
    """XXZ crossing symmetry R_ab(u,v) = -sigma^y_b R_ba(v,u+gamma)^{t_b} sigma^y_b."""
    if spec.model != "xxz":
        raise ValueError("crossing symmetry is stated for the XXZ weights")
    R = model_rmatrix(spec, u, v)
    Rb = model_rmatrix(spec, v, u + spec.gamma)  # symmetric in (ab) labels
    worst = 0.0
    # component form: R^{(i_a j_a),(k_a l_a)} indexed by aux/site pairs
    sy = {(0, 1): -1j, (1, 0): 1j}
    for ia, ib, ja, jb in product((0, 1), repeat=4):
        lhs = R[2 * ia + ib, 2 * ja + jb]
        rhs = 0.0
        for kb, lb in product((0, 1), repeat=2):
            # (sigma_b^y)_{ib,kb} * R_ba(v,u+g)^{t_b}[(kb ia),(lb ja)] * (sigma_b^y)_{lb,jb}
            s1 = sy.get((ib, kb), 0)
            s2 = sy.get((lb, jb), 0)
            if s1 == 0 or s2 == 0:
                continue
            rhs += s1 * Rb[2 * lb + ia, 2 * kb + ja] * s2
        worst = max(worst, abs(lhs - (-rhs)))
    return worst


# ---------------------------------------------------------------------------
# spin-chain monodromy elements
# ---------------------------------------------------------------------------

def _spin_entries_xxz(spec, u):
    mats = [model_rmatrix(spec, u, wm) for wm in spec.ws]

    def entries(m, a_out, a_in, s_out, s_in, prefix):
        R = mats[m - 1]
        row = (0 if a_out == UP else 2) + (0 if s_out == UP else 1)
        col = (0 if a_in == UP else 2) + (0 if s_in == UP else 1)
        return R[row, col]

    return entries


def _spin_entries_felderhof(spec, u, p):
    mats = [model_rmatrix(spec, u, wm, pu=p, qv=rm)
            for wm, rm in zip(spec.ws, spec.rs)]

    def entries(m, a_out, a_in, s_out, s_in, prefix):
        R = mats[m - 1]
        row = (0 if a_out == UP else 2) + (0 if s_out == UP else 1)
        col = (0 if a_in == UP else 2) + (0 if s_in == UP else 1)
        return R[row, col]

    return entries


def transfer_element(entries, M, a_out, a_in, state):
    """Apply one monodromy element T[a_out, a_in] to a spin state dict."""
    result = {}
    for spins, amp in state.items():
        if len(spins) != M:
            raise DimensionMismatch("state length != M")
        layer = {a_in: {(): 1.0 + 0j}}
        for m in range(M, 0, -1):
            new = {}
            for k_m, suffixes in layer.items():
                for k_prev in (UP, DOWN):
                    for s_out in (UP, DOWN):
                        wgt = entries(m, k_prev, k_m, s_out, spins[m - 1],
                                      spins[:m - 1])
                        if wgt == 0:
                            continue
                        dst = new.setdefault(k_prev, {})
                        for suffix, a in suffixes.items():
                            key = (s_out,) + suffix
                            dst[key] = dst.get(key, 0.0) + wgt * a
            layer = new
        for out_spins, a in layer.get(a_out, {}).items():
            if a != 0:
                result[out_spins] = result.get(out_spins, 0.0) + amp * a
    return {k: v for k, v in result.items() if v != 0}


def spin_operator(spec, which, u, p=None):
    """A/B/C/D operator closure for the spin models."""
    a_out = UP if which in ("A", "B") else DOWN
    a_in = UP if which in ("A", "C") else DOWN
    if spec.model == "xxz":
        entries = _spin_entries_xxz(spec, u)
    elif spec.model == "felderhof":
        entries = _spin_entries_felderhof(spec, u, p)
    else:
        raise ValueError("spin operators exist for xxz/felderhof")

    def apply(state):
        return transfer_element(entries, spec.M, a_out, a_in, state)

    return apply


def all_up(M):
    return {(UP,) * M: 1.0 + 0j}


def all_down(M):
    return {(DOWN,) * M: 1.0 + 0j}


def down_up(N, M):
    """|Down_{N/M}>: first N spins down, the rest up."""
    return {(DOWN,) * N + (UP,) * (M - N): 1.0 + 0j}


def state_coeff(state, spins):
    return state.get(tuple(spins), 0.0)


# ---------------------------------------------------------------------------
# bosonic operators (admissibility expansion and L-matrix oracle)
# ---------------------------------------------------------------------------

def _boson_t(spec):
    if spec.model == "phase":
        return Fraction(0)
    if spec.model == "iboson":
        return Fraction(-1)
    if spec.model == "qboson":
        return spec.t
    raise ValueError("not a bosonic model")


def bc_apply(spec, kind, x, state, p=None):
    """One B/C-type operator application.

    Bosonic models: the rescaled operators BB(x) (on kets) and CC(x) (on bra
    occupation dicts) act by the admissibility expansion with the weights
    x^{i(m_i - n_i)} (1 - delta_{m_i, n_i+1} t^{m_i}).

    Spin models: kind in {A, B, C, D} contracts the monodromy on kets.
    """
    if spec.model in ("phase", "iboson", "qboson"):
        if kind not in ("B", "C"):
            raise ValueError("bosonic operators: B or C")
        t = _boson_t(spec)
        M = spec.M
        out = {}
        for occ, coeff in state.items():
            if len(occ) != M + 1:
                raise DimensionMismatch("occupation length != M+1")
            for bits in product((0, 1), repeat=M):
                new = list(occ)
                wgt = LaurentPoly.const(1) if isinstance(x, LaurentPoly) \
                    else Fraction(1) if not isinstance(x, complex) else 1.0
                ok = True
                s = list(bits) + [0]
                for i in range(1, M + 1):
                    d = s[i - 1] - s[i]
                    m_i = occ[i] + d
                    if m_i < 0:
                        ok = False
                        break
                    new[i] = m_i
                    if d:
                        wgt = wgt * _xp(x, i * d)
                        if d == 1:
                            wgt = wgt * (1 - _tp(t, m_i))
                if not ok:
                    continue
                new[0] = occ[0] + 1 - s[0]
                if new[0] < 0:
                    continue
                if spec.model == "iboson" and any(v > 1 for v in new[1:]):
                    continue
                key = tuple(new)
                cur = out.get(key, 0)
                val = cur + coeff * wgt
                if _zero(val):
                    out.pop(key, None)
                else:
                    out[key] = val
        return out
    return spin_operator(spec, kind, x, p)(state)


def _xp(x, k):
    if isinstance(x, LaurentPoly):
        return x ** k
    if isinstance(x, (int, Fraction)) and k < 0:
        return Fraction(1) / Fraction(x) ** (-k)
    return x ** k


def _tp(t, k):
    if isinstance(t, LaurentPoly):
        return t ** k
    return t ** k


def _zero(v):
    return v.is_zero() if isinstance(v, LaurentPoly) else v == 0


def boson_vacuum(M):
    return {(0,) * (M + 1): Fraction(1)}


def bc_apply_via_lmatrix(spec, kind, x_half, state, cap=None):
    """Secondary oracle: BB/CC via the (M+1)-fold L-matrix product.

    x_half is the formal square root of the rapidity (LaurentPoly or value);
    the rescaled operator BB(x) = x^{M/2} B(x) comes out free of half powers.
    CC uses CC(x) = x^{M/2} C(1/x).  `cap` bounds occupation numbers.
    """
    t = _boson_t(spec)
    M = spec.M
    invert = (kind == "C")
    a_out, a_in = (UP, DOWN) if kind == "B" else (DOWN, UP)
    out = {}
    for occ, coeff in state.items():
        # aux DP over sites M down to 0 (L_0 rightmost, applied first)
        layer = {a_in: {occ: _one_like_x(x_half)}}
        for site in range(0, M + 1):
            new = {}
            for k_right, partial in layer.items():
                for k_left in (UP, DOWN):
                    for key, amp in partial.items():
                        for nkey, wgt in _l_entry(site, k_left, k_right, key,
                                                  t, x_half, invert, cap):
                            dst = new.setdefault(k_left, {})
                            val = dst.get(nkey, 0) + amp * wgt
                            if _zero(val):
                                dst.pop(nkey, None)
                            else:
                                dst[nkey] = val
            layer = new
        for key, amp in layer.get(a_out, {}).items():
            scaled = amp * _xp(x_half, M if not invert else M)
            val = out.get(key, 0) + coeff * scaled
            if _zero(val):
                out.pop(key, None)
            else:
                out[key] = val
    return out


def _one_like_x(x_half):
    return LaurentPoly.const(1) if isinstance(x_half, LaurentPoly) else Fraction(1)


def _l_entry(site, a_l, a_r, occ, t, x_half, invert, cap):
    """Nonzero L-matrix entries at one site: yields (new occupation, weight)."""
    n = occ[site]
    sgn = -1 if invert else 1
    if a_l == a_r:
        power = -1 if a_l == UP else 1
        yield occ, _xp(x_half, sgn * power)
        return
    if a_l == UP and a_r == DOWN:
        # creation entry
        if cap is not None and n + 1 > cap:
            return
        w = 1 - _tp(t, n + 1) if site != 0 else 1
        if _zero(w):
            return
        yield occ[:site] + (n + 1,) + occ[site + 1:], w
        return
    # annihilation entry
    if n == 0:
        return
    w = 1 if site != 0 else 1 - _tp(t, n)
    if _zero(w):
        return
    yield occ[:site] + (n - 1,) + occ[site + 1:], w


def bethe_state(spec, rapidities, use_oracle=False):
    """prod BB(x_i) |vacuum> for bosonic models, prod B(v_i)|Up> for spin."""
    if spec.model in ("phase", "iboson", "qboson"):
        state = boson_vacuum(spec.M)
        for x in rapidities:
            state = bc_apply(spec, "B", x, state)
        return state
    state = all_up(spec.M)
    if spec.model == "felderhof":
        for v, q in rapidities:          # rightmost factor first
            state = bc_apply(spec, "B", v, state, p=q)
        return state
    for v in rapidities:
        state = bc_apply(spec, "B", v, state)
    return state


def boson_state_to_partitions(state):
    """Push a boson state through the occupation -> partition map."""
    out = {}
    for occ, coeff in state.items():
        mu = pt.occupation_to_partition(occ)
        cur = out.get(mu, 0)
        val = cur + coeff
        if _zero(val):
            out.pop(mu, None)
        else:
            out[mu] = val
    return out


def boson_scalar_product(spec, xs, ys):
    """<<0| CC(x_N)..CC(x_1) , BB(y_1)..BB(y_N) |0>> through the Fock maps.

    The bra and ket are mapped to partition space and paired with the
    flavor-appropriate inner product: orthonormal (phase), 2^{-l} (i-boson),
    b_mu(t) (q-boson).
    """
    bra = boson_vacuum(spec.M)
    for x in xs:
        bra = bc_apply(spec, "C", x, bra)
    ket = boson_vacuum(spec.M)
    for y in ys:
        ket = bc_apply(spec, "B", y, ket)
    bra_p = boson_state_to_partitions(bra)
    ket_p = boson_state_to_partitions(ket)
    t = _boson_t(spec)
    total = 0
    for mu, cb in bra_p.items():
        ck = ket_p.get(mu)
        if ck is None:
            continue
        # the Fock maps scale by 1/b_mu(t) (q-boson) or 2^{-l} (i-boson)
        # before pairing with b_mu(t) delta or 2^l delta respectively
        if spec.model == "phase":
            total = total + cb * ck
        elif spec.model == "iboson":
            total = total + Fraction(1, 2 ** len(mu)) * cb * ck
        else:
            prod = LaurentPoly.coerce(cb) * LaurentPoly.coerce(ck) \
                if isinstance(cb, LaurentPoly) or isinstance(ck, LaurentPoly) \
                else cb * ck
            b = sf.b_mu(mu, t)
            if isinstance(prod, LaurentPoly):
                total = total + prod.divexact(LaurentPoly.coerce(b))
            else:
                total = total + prod / b
    return total


# ---------------------------------------------------------------------------
# Bethe roots (decoupled families) and transfer-matrix residuals
# ---------------------------------------------------------------------------

def bethe_roots_decoupled(spec, n_roots=None, tol=1e-10):
    """Roots of the decoupled Bethe equations in the exponentiated variable.

    phase/qboson (N=1), iboson (any N): roots of y^{M+1} = (+-1);
    xxz at gamma = i pi/2 (any N) and generic gamma (N=1): polynomial in
    e^{2v}; felderhof (any N): polynomial in e^{2(v_j+q_j)}, returning the
    shifted rapidities s_j = v_j + q_j.
    """
    N = spec.N
    count = N if n_roots is None else n_roots
    M = spec.M
    if spec.model in ("phase", "qboson"):
        if N != 1:
            raise ValueError("phase/q-boson roots supported for N = 1 only")
        roots = np.roots([1.0] + [0.0] * M + [-1.0])      # y^{M+1} = 1
    elif spec.model == "iboson":
        rhs = (-1.0) ** (N + 1)
        roots = np.roots([1.0] + [0.0] * M + [-rhs])      # y^{M+1} = (-1)^{N+1}
    elif spec.model == "xxz":
        g = spec.gamma
        Z = [cmath.exp(2 * w) for w in spec.ws]
        ff = abs(cmath.exp(2 * g) + 1) < 1e-12
        if ff:
            # prod [v - w_k] + (-1)^N prod <v - w_k> = 0 in X = e^{2v};
            # <v - w> = i e^{-v-w} (X + Z) carries one factor i per site
            c1 = _poly_from_roots(Z)
            c2 = _poly_from_roots([-z for z in Z])
            coeffs = [a + (-1.0) ** N * (1j ** M) * b for a, b in zip(c1, c2)]
        else:
            if N != 1:
                raise ValueError("generic-gamma roots supported for N = 1 only")
            # prod [v - w_k + g] = prod [v - w_k]: polynomial in X = e^{2v}
            q = cmath.exp(2 * g)
            sq = cmath.exp(g)
            c1 = _poly_from_roots([z / q for z in Z])
            c2 = _poly_from_roots(Z)
            coeffs = [sq ** M * a - b for a, b in zip(c1, c2)]
        coeffs = _trim_leading(coeffs)
        roots = [r for r in np.roots(coeffs) if abs(r) > 1e-12]
        # avoid X_i = +-X_j pairs: X_i = -X_j means v_i - v_j = gamma mod
        # i pi at the free-fermion point, a singular Bethe combination
        chosen = []
        for r in roots:
            if all(abs(r - c) > 1e-8 and abs(r + c) > 1e-8 for c in chosen):
                chosen.append(r)
        if len(chosen) < N:
            raise InsufficientDistinctRoots(f"found {len(chosen)} < {N}")
        vs = [0.5 * cmath.log(r) for r in chosen[:N]]
        _check_residual(spec, vs, tol)
        return vs
    elif spec.model == "felderhof":
        # (-1)^N prod [s - w_k + r_k] + prod [s - w_k - r_k] = 0 in S = e^{2s}
        A = [cmath.exp(2 * (w - r)) for w, r in zip(spec.ws, spec.rs)]
        B = [cmath.exp(2 * (w + r)) for w, r in zip(spec.ws, spec.rs)]
        pref_a = cmath.exp(sum(-(w - r) for w, r in zip(spec.ws, spec.rs)))
        pref_b = cmath.exp(sum(-(w + r) for w, r in zip(spec.ws, spec.rs)))
        c1 = [pref_a * c for c in _poly_from_roots(A)]
        c2 = [pref_b * c for c in _poly_from_roots(B)]
        coeffs = [(-1.0) ** N * a + b for a, b in zip(c1, c2)]
        coeffs = _trim_leading(coeffs)
        roots = np.roots(coeffs)
        roots = [r for r in roots if abs(r) > 1e-12]
        ss = _dedupe([0.5 * cmath.log(r) for r in roots], tol=1e-8)
        if len(ss) < N:
            raise InsufficientDistinctRoots(f"found {len(ss)} < {N}")
        ss = ss[:N]
        for s in ss:
            res = abs((-1) ** N * _prod(br(s - w + r) for w, r in zip(spec.ws, spec.rs))
                      + _prod(br(s - w - r) for w, r in zip(spec.ws, spec.rs)))
            if res > tol * 10 ** max(M, 2):
                raise RootFindingFailed(f"felderhof residual {res}")
        return ss
    else:
        raise ValueError(spec.model)
    ys = _dedupe(list(roots), tol=1e-8)
    if count and len(ys) < count:
        raise InsufficientDistinctRoots(f"found {len(ys)} < {count}")
    return ys[:count] if count else ys


def _prod(it):
    out = 1.0 + 0.0j
    for v in it:
        out *= v
    return out


def _poly_from_roots(roots):
    """Monic polynomial coefficients (highest power first) with given roots."""
    coeffs = [1.0 + 0j]
    for r in roots:
        coeffs = [a for a in coeffs] + [0.0]
        for i in range(len(coeffs) - 1, 0, -1):
            coeffs[i] -= r * coeffs[i - 1]
    return coeffs


def _trim_leading(coeffs, tol=1e-12):
    scale = max(abs(c) for c in coeffs)
    out = list(coeffs)
    while out and abs(out[0]) < tol * scale:
        out.pop(0)
    if len(out) <= 1:
        raise RootFindingFailed("degenerate Bethe polynomial")
    return out


def _dedupe(vals, tol):
    out = []
    for v in vals:
        if all(abs(v - u) > tol for u in out):
            out.append(v)
    return out


def _check_residual(spec, vs, tol):
    g = spec.gamma
    for i, v in enumerate(vs):
        lhs = _prod(br(v - w + g) / br(v - w) for w in spec.ws)
        rhs = _prod(br(v - vj + g) / br(v - vj - g)
                    for j, vj in enumerate(vs) if j != i)
        if abs(lhs - rhs) > tol * max(abs(lhs), 1.0) * 100:
            raise RootFindingFailed(f"Bethe residual {abs(lhs - rhs)}")


def transfer_eigen_residual(spec, roots, probe):
    """sup-norm of (A(u)+D(u))|Psi> - tau(u)|Psi> at the probe rapidity."""
    if spec.model == "xxz":
        g = spec.gamma
        psi = bethe_state(spec, roots)
        au = bc_apply(spec, "A", probe, psi)
        du = bc_apply(spec, "D", probe, psi)
        alpha = _prod(br(probe - w + g) for w in spec.ws)
        delta = _prod(br(probe - w) for w in spec.ws)
        tau = alpha * _prod(br(v - probe + g) / br(v - probe) for v in roots) \
            + delta * _prod(br(probe - v + g) / br(probe - v) for v in roots)
        keys = set(au) | set(du) | set(psi)
        return max(abs(au.get(k, 0) + du.get(k, 0) - tau * psi.get(k, 0))
                   for k in keys)
    if spec.model == "iboson":
        cap = max(spec.N, 1) + 1
        state = boson_vacuum(spec.M)
        for y in roots:
            state = bc_apply(spec, "B", y, state)
        Mp1 = spec.M + 1
        alpha = cmath.exp(-0.5 * Mp1 * cmath.log(complex(probe)))
        delta = 1.0 / alpha
        au = _boson_ad(spec, probe, state, "A", cap)
        du = _boson_ad(spec, probe, state, "D", cap)
        tau = alpha * _prod((y + probe) / (y - probe) for y in roots) \
            + delta * _prod((probe + y) / (probe - y) for y in roots)
        keys = set(au) | set(du) | set(state)
        return max(abs(complex(au.get(k, 0)) + complex(du.get(k, 0))
                       - tau * complex(state.get(k, 0))) for k in keys)
    raise ValueError("eigen residual implemented for xxz and iboson")


def _boson_ad(spec, x, state, which, cap):
    """A(x) or D(x) on a boson state through the L-matrix product."""
    half = csqrt(complex(x))
    a_out = UP if which == "A" else DOWN
    a_in = UP if which == "A" else DOWN
    t = complex(_boson_t(spec))
    M = spec.M
    out = {}
    for occ, coeff in state.items():
        layer = {a_in: {occ: 1.0 + 0j}}
        for site in range(0, M + 1):
            new = {}
            for k_right, partial in layer.items():
                for k_left in (UP, DOWN):
                    for key, amp in partial.items():
                        for nkey, wgt in _l_entry(site, k_left, k_right, key,
                                                  t, half, False, cap):
                            dst = new.setdefault(k_left, {})
                            val = dst.get(nkey, 0) + amp * complex(wgt)
                            dst[nkey] = val
            layer = new
        for key, amp in layer.get(a_out, {}).items():
            out[key] = out.get(key, 0) + complex(coeff) * amp
    return out


# ---------------------------------------------------------------------------
# domain-wall partition functions
# ---------------------------------------------------------------------------

def dwpf_bruteforce(spec, vs, ws=None):
    """<Down_N| prod B |Up_N>; vs are (v, q) pairs for the Felderhof model."""
    N = len(vs)
    if spec.model == "xxz":
        sub = ModelSpec("xxz", N, N, gamma=spec.gamma,
                        ws=tuple(ws if ws is not None else spec.ws[:N]))
        state = bethe_state(sub, vs)
        return state_coeff(state, (DOWN,) * N)
    if spec.model == "felderhof":
        wr = list(zip(spec.ws, spec.rs))[:N] if ws is None else ws
        sub = ModelSpec("felderhof", N, N,
                        ws=tuple(w for w, _ in wr), rs=tuple(r for _, r in wr))
        state = bethe_state(sub, vs)
        return state_coeff(state, (DOWN,) * N)
    raise ValueError("domain walls are defined for the spin models")


def dwpf_closed(spec, vs, ws=None, form="izergin"):
    """Closed domain-wall partition functions.

    izergin: the determinant over [gamma]-weights (any gamma);
    ff-factorized: the free-fermion point gamma = i pi/2;
    felderhof-factorized: the field-deformed factorized product.
    """
    if form == "izergin":
        g = spec.gamma
        N = len(vs)
        ws = list(ws if ws is not None else spec.ws[:N])
        if _near_coincident(vs) or _near_coincident(ws):
            raise DegenerateEvaluationPoint("coincident rapidities")
        rows = []
        for i in range(N):
            row = []
            for j in range(N):
                entry = br(g)
                for k in range(N):
                    if k != i:
                        entry *= br(vs[k] - ws[j] + g) * br(vs[k] - ws[j])
                row.append(entry)
            rows.append(row)
        num = det(rows)
        den = 1.0 + 0j
        for i in range(N):
            for j in range(i + 1, N):
                den *= br(vs[i] - vs[j]) * br(ws[j] - ws[i])
        return num / den
    if form == "ff-factorized":
        N = len(vs)
        ws = list(ws if ws is not None else spec.ws[:N])
        out = ag(0) ** N
        for j in range(N):
            for k in range(j + 1, N):
                out *= ag(vs[j] - vs[k]) * ag(ws[k] - ws[j])
        return out
    if form == "felderhof-factorized":
        wr = list(zip(spec.ws, spec.rs)) if ws is None else list(ws)
        N = len(vs)
        out = 1.0 + 0j
        for _, q in vs:
            out *= csqrt(br(2 * q))
        for _, r in wr[:N]:
            out *= csqrt(br(2 * r))
        for j in range(N):
            for k in range(j + 1, N):
                vj, qj = vs[j]
                vk, qk = vs[k]
                out *= br(vj - vk + qj + qk)
                (wj, rj), (wk, rk) = wr[j], wr[k]
                out *= br(wk - wj + rj + rk)
        return out
    raise ValueError(f"unknown form {form!r}")


def _near_coincident(xs, tol=1e-9):
    return any(abs(xs[i] - xs[j]) < tol
               for i in range(len(xs)) for j in range(i + 1, len(xs)))


def korepin_recursion_residual(spec, vs, ws):
    """Z_N at v_N = w_N - gamma against [g] prod [v_i-w_N][w_N-w_i-g] Z_{N-1}."""
    g = spec.gamma
    N = len(vs)
    pinned = list(vs[:-1]) + [ws[-1] - g]
    lhs = dwpf_closed(spec, pinned, ws, "izergin")
    rhs = br(g)
    for i in range(N - 1):
        rhs *= br(vs[i] - ws[-1]) * br(ws[-1] - ws[i] - g)
    rhs *= dwpf_closed(spec, vs[:-1], ws[:-1], "izergin") if N > 1 else 1.0
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Bethe scalar products
# ---------------------------------------------------------------------------

def scalar_product_bruteforce(spec, n, us, vs, ws=None):
    """<Down_{(N-n)/M}| prod C(u) prod B(v) |Up_M> by direct operator action."""
    N = len(vs)
    M = spec.M
    if spec.model == "xxz":
        state = bethe_state(spec, vs)
        for u in us:
            state = bc_apply(spec, "C", u, state)
        Ntil = N - n
        bra = (DOWN,) * Ntil + (UP,) * (M - Ntil) if n < N else (UP,) * M
        return state_coeff(state, bra)
    if spec.model == "felderhof":
        state = bethe_state(spec, vs)      # vs = [(v,q)]
        for u, p in us:                    # rightmost C first
            state = bc_apply(spec, "C", u, state, p=p)
        Ntil = N - n
        bra = (DOWN,) * Ntil + (UP,) * (M - Ntil) if n < N else (UP,) * M
        return state_coeff(state, bra)
    raise ValueError("scalar products are defined for the spin models")


def scalar_product_closed(spec, n, us, vs, ws=None, check_bethe=True, tol=1e-8):
    """Intermediate Bethe scalar product S_n in closed form.

    xxz: the N x N determinant with f/g rows over [.]-brackets, valid when
    {v} satisfies the Bethe equations; felderhof: the fully factorized form.
    """
    if spec.model == "xxz":
        g = spec.gamma
        N = len(vs)
        M = spec.M
        ws = list(ws if ws is not None else spec.ws)
        Ntil = N - n
        if check_bethe:
            for i, v in enumerate(vs):
                lhs = _prod(br(v - w + g) / br(v - w) for w in ws)
                rhs = _prod(br(v - vj + g) / br(v - vj - g)
                            for j, vj in enumerate(vs) if j != i)
                if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
                    raise BetheResidualTooLarge(f"root {i}: {abs(lhs - rhs)}")

        def f_row(i, w):
            out = br(g) / br(vs[i] - w)
            for k in range(N):
                if k != i:
                    out *= br(vs[k] - w + g)
            return out

        def g_row(i, u):
            t1 = _prod(br(vs[k] - u + g) for k in range(N) if k != i)
            t1 *= _prod(br(u - w + g) for w in ws)
            t2 = _prod(br(vs[k] - u - g) for k in range(N) if k != i)
            t2 *= _prod(br(u - w) for w in ws)
            return br(g) / br(vs[i] - u) * (t1 - t2)

        rows = []
        for i in range(N):
            row = [f_row(i, ws[j]) for j in range(Ntil)]
            row += [g_row(i, us[n - 1 - j]) for j in range(N - Ntil)]
            rows.append(row)
        num = _prod(br(v - w) for v in vs for w in ws) * det(rows)
        den = 1.0 + 0j
        for i in range(n):
            for j in range(Ntil):
                den *= br(us[i] - ws[j])
        for i in range(n):
            for j in range(i + 1, n):
                den *= br(us[i] - us[j])
        for i in range(N):
            for j in range(i + 1, N):
                den *= br(vs[i] - vs[j])
        for i in range(Ntil):
            for j in range(i + 1, Ntil):
                den *= br(ws[j] - ws[i])
        if den == 0:
            raise DegenerateEvaluationPoint("vanishing denominator")
        return num / den
    if spec.model == "felderhof":
        return _felderhof_sn(spec, n, us, vs)
    raise ValueError("closed scalar products exist for xxz/felderhof")


def _felderhof_sn(spec, n, us, vs):
    N = len(vs)
    M = spec.M
    Ntil = N - n
    wr = list(zip(spec.ws, spec.rs))
    out = 1.0 + 0j
    for _, p in us:
        out *= csqrt(br(2 * p))
    for _, q in vs:
        out *= csqrt(br(2 * q))
    for _, r in wr[:Ntil]:
        out *= csqrt(br(2 * r))
    for j in range(n):
        for k in range(j + 1, n):
            (uj, pj), (uk, pk) = us[j], us[k]
            out *= br(uk - uj + pj + pk)
    for j in range(N):
        for k in range(j + 1, N):
            (vj, qj), (vk, qk) = vs[j], vs[k]
            out *= br(vj - vk + qj + qk)
    for j in range(Ntil):
        for k in range(j + 1, Ntil):
            (wj, rj), (wk, rk) = wr[j], wr[k]
            out *= br(wk - wj + rj + rk)
    for j in range(n):
        uj, pj = us[j]
        for k in range(Ntil):
            wk, rk = wr[k]
            out *= br(wk - uj + pj + rk)
    for j in range(N):
        vj, qj = vs[j]
        for k in range(Ntil, M):
            wk, rk = wr[k]
            out *= br(vj - wk + qj - rk)
    for j in range(n):
        uj, pj = us[j]
        for k in range(N):
            vk, qk = vs[k]
            d = br(uj - vk + pj - qk)
            if d == 0:
                raise DegenerateEvaluationPoint("u/v collision")
            out /= d
    for j in range(n):
        uj, pj = us[j]
        t1 = _prod(br(uj - w + pj + r) for w, r in wr)
        t2 = _prod(br(uj - w + pj - r) for w, r in wr)
        out *= ((-1) ** N * t1 + t2)
    return out


def slavnov_determinant(spec, us, vs, ws=None):
    """Full Bethe scalar product S_N by Slavnov's determinant."""
    g = spec.gamma
    N = len(vs)
    ws = list(ws if ws is not None else spec.ws)
    rows = []
    for i in range(N):
        row = []
        for j in range(N):
            t1 = _prod(br(vs[k] - us[i] - g) for k in range(N) if k != j)
            t1 *= _prod(br(us[i] - w) for w in ws)
            t2 = _prod(br(vs[k] - us[i] + g) for k in range(N) if k != j)
            t2 *= _prod(br(us[i] - w + g) for w in ws)
            row.append((t1 - t2) / br(us[i] - vs[j]))
        rows.append(row)
    num = br(g) ** N * _prod(br(v - w) for v in vs for w in ws) * det(rows)
    den = 1.0 + 0j
    for i in range(N):
        for j in range(i + 1, N):
            den *= br(us[j] - us[i]) * br(vs[i] - vs[j])
    return num / den


def scalar_product_ff_factorized(spec, us, vs, ws=None):
    """S_N at gamma = i pi/2 in fully factorized form."""
    N = len(vs)
    M = spec.M
    ws = list(ws if ws is not None else spec.ws)
    out = ag(0) ** N
    for j in range(N):
        for k in range(j + 1, N):
            out *= ag(us[k] - us[j]) * ag(vs[j] - vs[k])
    for v in vs:
        for w in ws:
            out *= br(v - w)
    for u in us:
        for v in vs:
            d = br(u - v)
            if d == 0:
                raise DegenerateEvaluationPoint("u/v collision")
            out /= d
    for u in us:
        out *= (_prod(br(u - w) for w in ws)
                + (-1) ** N * _prod(ag(u - w) for w in ws))
    return out


# ---------------------------------------------------------------------------
# weighted determinants and Bethe-state coefficients
# ---------------------------------------------------------------------------

def weighted_determinant(W, Mtx, l):
    """sum_sigma (prod_{i<j<=l} W[s_i][s_j]) sgn(sigma) prod_i Mtx[i][s_i]."""
    M = len(Mtx)
    if len(W) != M or any(len(r) != M for r in W) or any(len(r) != M for r in Mtx):
        raise SizeMismatch("need square W and Mtx of equal size")
    if not 0 <= l <= M:
        raise SizeMismatch(f"l = {l} outside 0..{M}")
    total = 0
    for sigma in permutations(range(M)):
        term = _perm_sign(sigma)
        for i in range(l):
            for j in range(i + 1, l):
                term = term * W[sigma[i]][sigma[j]]
        for i in range(M):
            term = term * Mtx[i][sigma[i]]
        total = total + term
    return total


def _perm_sign(sigma):
    sgn = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sgn = -sgn
    return sgn


def bethe_coefficient_closed(kind, lam, vs, ws, gamma):
    """b_lambda (kind='b') or c_lambda (kind='c') by weighted determinants.

    lam is the strict partition of up-spin positions, l = len(lam) = M - N.
    """
    M = len(ws)
    N = len(vs)
    lam = pt.check_strict(lam)
    l = len(lam)
    if l != M - N:
        raise SizeMismatch("need len(lam) = M - N")
    g = gamma

    if kind == "b":
        W = [[1.0 / br(ws[i] - ws[j] + g) if i != j else 1.0
              for j in range(M)] for i in range(M)]

        def row_top(a, w):
            out = 1.0 + 0j
            for jj in range(1, a):
                out *= br(ws[jj - 1] - w)
            for jj in range(a + 1, M + 1):
                out *= br(ws[jj - 1] - w + g)
            return out

        def row_bot(i, w):
            out = br(g) / br(vs[i] - w)
            for k in range(N):
                if k != i:
                    out *= br(vs[k] - w + g)
            return out

        pref = _prod(br(v - w) for v in vs for w in ws)
    elif kind == "c":
        W = [[1.0 / br(ws[i] - ws[j] - g) if i != j else 1.0
              for j in range(M)] for i in range(M)]

        def row_top(a, w):
            out = 1.0 + 0j
            for jj in range(1, a):
                out *= br(ws[jj - 1] - w)
            for jj in range(a + 1, M + 1):
                out *= br(ws[jj - 1] - w - g)
            return out

        def row_bot(i, w):
            out = br(g) / br(vs[i] - w + g)
            for k in range(N):
                if k != i:
                    out *= br(vs[k] - w)
            return out

        pref = _prod(br(v - w + g) for v in vs for w in ws)
    else:
        raise ValueError(f"unknown coefficient kind {kind!r}")

    Mtx = [[row_top(lam[i], ws[j]) for j in range(M)] for i in range(l)]
    Mtx += [[row_bot(i, ws[j]) for j in range(M)] for i in range(N)]
    num = pref * weighted_determinant(W, Mtx, l)
    den = 1.0 + 0j
    for i in range(N):
        for j in range(i + 1, N):
            den *= br(vs[i] - vs[j])
    for i in range(M):
        for j in range(i + 1, M):
            den *= br(ws[j] - ws[i])
    if den == 0:
        raise DegenerateEvaluationPoint("coincident rapidities")
    return num / den


def bethe_state_coefficient(spec, vs, lam):
    """Coefficient of |lambda> (up spins at lam) in prod B(v)|Up_M>."""
    state = bethe_state(spec, vs)
    spins = [DOWN] * spec.M
    for a in lam:
        spins[a - 1] = UP
    return state_coeff(state, tuple(spins))


# ---------------------------------------------------------------------------
# normalized polynomial forms Z'_N and S'_N
# ---------------------------------------------------------------------------

def z_prime(ys, zs, q):
    """Z'_N({y},{z}) as an exact ratio of a determinant by Vandermondes."""
    N = len(ys)
    rows = []
    for i in range(N):
        row = []
        for j in range(N):
            entry = Fraction(1) if not isinstance(ys[i], complex) else 1.0
            for k in range(N):
                if k != j:
                    entry = entry * (1 + q * ys[i] * zs[k]) * (1 + ys[i] * zs[k])
            row.append(entry)
        rows.append(row)
    num = (q - 1) ** N * det(rows)
    den = 1
    for i in range(N):
        for j in range(i + 1, N):
            den = den * (ys[i] - ys[j]) * (zs[j] - zs[i])
    if den == 0:
        raise DegenerateEvaluationPoint("coincident points")
    return num / den


def z_prime_from_trigonometric(vs, ws, gamma):
    """Z'_N by normalizing the Izergin determinant (numeric cross-check).

    Z'_N = e^{N^2 g} prod e^{(N-1)(v_i - w_i)} Z_N with y = e^{2v},
    z = -e^{-2w}, q = e^{2g}.
    """
    N = len(vs)
    spec = ModelSpec("xxz", N, N, gamma=gamma, ws=tuple(ws))
    z = dwpf_closed(spec, list(vs), list(ws), "izergin")
    norm = cmath.exp(N * N * gamma)
    for v, w in zip(vs, ws):
        norm *= cmath.exp((N - 1) * (v - w))
    return norm * z


def s_prime_from_trigonometric(us, vs, ws, gamma, M):
    """S'_N = e^{N^2 g} prod e^{(M-1)(v_i-u_i)} prod e^{2N w_j} S_N."""
    N = len(vs)
    spec = ModelSpec("xxz", M, N, gamma=gamma, ws=tuple(ws))
    s = scalar_product_bruteforce(spec, N, list(us), list(vs))
    norm = cmath.exp(N * N * gamma)
    for u, v in zip(us, vs):
        norm *= cmath.exp((M - 1) * (v - u))
    for w in ws:
        norm *= cmath.exp(2 * N * w)
    return norm * s

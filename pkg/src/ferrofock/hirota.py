"""Hirota bilinear operators, KP/BKP residuals, and tau-function coefficients.

Polynomials in the time variables are LaurentPoly objects over t1, t2, ...
(odd indices only for BKP).  The weighted degree assigns weight n to t_n, so
chi_mu{t} has weighted degree |mu|.

The truncated bilinear identities are exact for polynomial tau: the shifted
arguments tau{t -+ eps_k} are Laurent polynomials in an auxiliary variable k
with exponents in [-2D, 0] (D the weighted degree), so only one-row
polynomials chi_m / Q_m with m below the window enter the residue.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .exactnum import LaurentPoly, det
from . import symfun as sf
from . import partitions as pt


class CapTooSmall(ValueError):
    pass


class DegenerateEvaluationPoint(ZeroDivisionError):
    pass


def _tnames(p):
    return [v for v in p.vars if v.startswith("t") and v[1:].isdigit()]


def weighted_degree(tau):
    """Max over terms of sum_n n * (exponent of t_n)."""
    tau = LaurentPoly.coerce(tau)
    if tau.is_zero():
        return 0
    weights = [int(v[1:]) if v.startswith("t") and v[1:].isdigit() else 0
               for v in tau.vars]
    return max(sum(w * e for w, e in zip(weights, exps))
               for exps in tau.terms)


def hirota_apply(monomial, f, g):
    """P{D} f.g for the Hirota monomial prod_n D_n^{k_n}.

    monomial: dict n -> power.  Computed as P{d/dz}(f{t+z} g{t-z}) at z=0 by
    extracting the coefficient of prod z_n^{k_n} and multiplying by k_n!.
    """
    f = LaurentPoly.coerce(f)
    g = LaurentPoly.coerce(g)
    shift_up = {}
    shift_dn = {}
    for n in monomial:
        zn = LaurentPoly.var(f"_z{n}")
        tn = sf.tvar(n)
        shift_up[f"t{n}"] = tn + zn
        shift_dn[f"t{n}"] = tn - zn
    h = f.subs(shift_up) * g.subs(shift_dn)
    out = h
    scale = 1
    for n, k in monomial.items():
        out = out.coeff_of(f"_z{n}", k)
        scale *= factorial(k)
    return scale * out


def hirota_combination(terms, f, g):
    """sum_j c_j P_j{D} f.g for terms = [(coeff, monomial), ...]."""
    total = LaurentPoly()
    for coeff, monomial in terms:
        total = total + coeff * hirota_apply(monomial, f, g)
    return total


KP_EQUATION = [(Fraction(1), {1: 4}), (Fraction(-4), {1: 1, 3: 1}),
               (Fraction(3), {2: 2})]

BKP_EQUATION = [(Fraction(1), {1: 6}), (Fraction(-5), {1: 3, 3: 1}),
                (Fraction(-5), {3: 2}), (Fraction(9), {1: 1, 5: 1})]


def kp_equation_residual(tau):
    """(D1^4 - 4 D1 D3 + 3 D2^2) tau.tau; zero iff tau solves the KP equation."""
    return hirota_combination(KP_EQUATION, tau, tau)


def bkp_equation_residual(tau):
    """(D1^6 - 5 D1^3 D3 - 5 D3^2 + 9 D1 D5) tau.tau."""
    return hirota_combination(BKP_EQUATION, tau, tau)


def _to_svars(tau):
    return tau.subs({name: LaurentPoly.var("s" + name[1:])
                     for name in _tnames(tau)})


def _eps_shift(tau, kvar, scale):
    """tau{t - scale * eps_k}: t_n -> t_n - (scale/n) k^{-n}."""
    sub = {}
    for name in _tnames(tau):
        n = int(name[1:])
        sub[name] = sf.tvar(n) - Fraction(scale, n) * LaurentPoly.var(kvar, -n)
    return tau.subs(sub)


def bilinear_identity_residual_formal(kind, tau, cap):
    """Formal residual of the KP/BKP bilinear identity for polynomial tau.

    KP:  Coeff_{k^-1}[ exp(sum (t_n - s_n) k^n) tau{t-eps_k} tau{s+eps_k} ]
    BKP: Coeff_{k^0}[ same with odd n, shifts 2 eps_k ] - tau{t} tau{s}

    Returns a polynomial in the doubled variables {t},{s}; zero iff the
    identity holds.  `cap` must cover the exponential window (2D-1 for KP,
    2D for BKP, with D the weighted degree of tau).
    """
    tau = LaurentPoly.coerce(tau)
    D = weighted_degree(tau)
    if kind == "KP":
        window = 2 * D - 1
    elif kind == "BKP":
        window = 2 * D
        bad = [v for v in _tnames(tau) if int(v[1:]) % 2 == 0]
        if bad:
            raise ValueError(f"BKP tau must use odd times only, found {bad}")
    else:
        raise ValueError(f"unknown identity kind {kind!r}")
    if cap < window:
        raise CapTooSmall(f"cap {cap} below required window {window}")
    scale = 1 if kind == "KP" else 2
    left = _eps_shift(tau, "_k", scale)
    right = _to_svars(_eps_shift(tau, "_k", -scale))
    prod = left * right
    total = LaurentPoly()
    target = -1 if kind == "KP" else 0
    for m in range(0, window + 1):
        c = prod.coeff_of("_k", target - m)
        if c.is_zero():
            continue
        onerow = sf.one_row_poly("chi" if kind == "KP" else "Qpoly", m, max(m, 1))
        diff = onerow.subs({name: sf.tvar(int(name[1:]))
                            - LaurentPoly.var("s" + name[1:])
                            for name in _tnames(onerow)})
        total = total + diff * c
    if kind == "BKP":
        total = total - tau * _to_svars(tau)
    return total


# ---------------------------------------------------------------------------
# tau-function coefficient families from the XXZ chain
# ---------------------------------------------------------------------------

def zeta_coeff(mu, zs, q):
    """zeta_mu({z},q): elementary-symmetric determinant over the doubled,
    one-omitted variable sets {q z_k} u {z_k} (k != j), divided by the
    z-Vandermonde."""
    N = len(zs)
    mu = pt.check_partition(mu)
    if len(mu) > N or (mu and mu[0] > N - 1):
        return Fraction(0)
    rows = []
    for i in range(1, N + 1):
        row = []
        for j in range(N):
            hat = [zs[k] for k in range(N) if k != j]
            pool = [q * z for z in hat] + list(hat)
            row.append(sf.sym_generator("e", pt.part(mu, i) - i + N, pool))
        rows.append(row)
    num = (q - 1) ** N * det(rows)
    den = Fraction(1)
    for i in range(N):
        for j in range(i + 1, N):
            den = den * (zs[j] - zs[i])
    if den == 0:
        raise DegenerateEvaluationPoint("coincident z's")
    return num / den


def tau_pf(ts_cap, zs, q):
    """tau_PF{t} = sum_{mu in [N, N-1]} chi_mu{t} zeta_mu({z}, q)."""
    N = len(zs)
    total = LaurentPoly()
    for mu in pt.partitions_in_box(N, N - 1):
        z = zeta_coeff(mu, zs, q)
        if z == 0:
            continue
        chi = sf.full_poly("chi", mu, cap=ts_cap) if mu else LaurentPoly.const(1)
        total = total + z * chi
    return total


def bethe_beta(j, ys, zs, q, sqrt_q=None, filter_nonneg=None):
    """beta_j as a Laurent polynomial in the formal variable y (for y_j).

    beta_j = sum_{k=0}^{M+N-1} (-y)^{-k} [ q^{N-1} e_k({yhat_j / q} u {z})
                                           - q^{M/2} e_k({q yhat_j} u {z/q}) ]
    vanishes at Bethe roots.  q^{M/2} needs even M or an explicit sqrt_q.
    """
    N, M = len(ys), len(zs)
    if M % 2 == 0:
        qM2 = q ** (M // 2)
    else:
        if sqrt_q is None:
            raise ValueError("odd lattice size needs an explicit sqrt_q")
        qM2 = sqrt_q ** M
    yhat = [ys[k] for k in range(N) if k != j]
    poly = LaurentPoly()
    for k in range(M + N):
        pool1 = [y / q for y in yhat] + list(zs)
        pool2 = [q * y for y in yhat] + [z / q for z in zs]
        coeff = q ** (N - 1) * sf.sym_generator("e", k, pool1) \
            - qM2 * sf.sym_generator("e", k, pool2)
        if coeff == 0:
            continue
        poly = poly + (-1) ** k * coeff * LaurentPoly.var("y", -k)
    return poly


def beta_residual(j, ys, zs, q, sqrt_q=None):
    """|beta_j| evaluated at y = y_j; small iff {y} solves the Bethe system."""
    poly = bethe_beta(j, ys, zs, q, sqrt_q)
    return poly.eval({"y": ys[j]})


def varsigma_coeff(mu, ys, zs, q, sqrt_q=None):
    """varsigma_mu({y},{z},q) via the non-negative-power filtered determinant.

    Entry (i,j) is [y^{mu_i - i + N} beta_j]_+ evaluated at y = y_j, where
    [.]_+ keeps non-negative powers of the formal variable y.
    """
    N, M = len(ys), len(zs)
    mu = pt.check_partition(mu)
    if len(mu) > N or (mu and mu[0] > M - 1):
        return Fraction(0)
    betas = [bethe_beta(j, ys, zs, q, sqrt_q) for j in range(N)]
    rows = []
    for i in range(1, N + 1):
        a = pt.part(mu, i) - i + N
        row = []
        for j in range(N):
            filtered = (betas[j] * LaurentPoly.var("y", a)).truncate_low("y")
            row.append(filtered.eval({"y": ys[j]}))
        rows.append(row)
    num = (q - 1) ** N * det(rows)
    for yi in ys:
        for zj in zs:
            num = num * (yi - zj)
    den = 1
    for i in range(N):
        for j in range(i + 1, N):
            den = den * (ys[i] - ys[j])
    if den == 0:
        raise DegenerateEvaluationPoint("coincident y's")
    return num / den


def tau_sp(ts_cap, ys, zs, q, sqrt_q=None):
    """tau_SP{t} = sum_{mu in [N, M-1]} chi_mu{t} varsigma_mu({y},{z},q)."""
    N, M = len(ys), len(zs)
    total = LaurentPoly()
    for mu in pt.partitions_in_box(N, M - 1):
        c = varsigma_coeff(mu, ys, zs, q, sqrt_q)
        if c == 0:
            continue
        chi = sf.full_poly("chi", mu, cap=ts_cap) if mu else LaurentPoly.const(1)
        total = total + c * chi
    return total

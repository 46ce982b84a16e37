"""Named verification suites.

Each suite runs a battery of identity checks at sizes bounded by `max_size`
and reports one record per check:

    {"name": ..., "parameters": ..., "status": "pass"|"fail",
     "residual": "0" or a decimal string, "runtime_ms": int}

Exact checks report the residual "0" on success; numeric checks report the
worst relative (or absolute, where stated) residual against `tol`.
All randomness is drawn from a seeded generator, so a report is reproducible
byte-for-byte given (seed, tol, max_size).
"""

from __future__ import annotations

import cmath
import random
import time
from dataclasses import dataclass, field, asdict
from fractions import Fraction

from .exactnum import LaurentPoly, det, pfaffian
from . import partitions as pt
from . import symfun as sf
from . import fock as fk
from . import hirota as hr
from . import lattice as lat
from . import elliptic as el


class UnknownSuite(ValueError):
    pass


SUITE_NAMES = ("symfun", "kp", "bkp", "fock", "phase", "iboson", "qboson",
               "xxz", "felderhof", "height", "genfun", "all")


@dataclass
class SuiteReport:
    suite: str
    seed: int
    tol: float
    max_size: int
    checks: list = field(default_factory=list)

    @property
    def status(self):
        return "pass" if all(c["status"] == "pass" for c in self.checks) else "fail"

    def as_dict(self):
        d = asdict(self)
        d["checks"] = sorted(self.checks, key=lambda c: c["name"])
        d["status"] = self.status
        return d


class _Recorder:
    def __init__(self, tol):
        self.tol = tol
        self.checks = []

    def exact(self, name, params, value):
        """Record an exactness check: `value` True, or a residual == 0."""
        t0 = time.perf_counter()
        ok, residual = self._interpret_exact(value)
        self._push(name, params, ok, residual, t0)

    def run_exact(self, name, params, fn):
        t0 = time.perf_counter()
        ok, residual = self._interpret_exact(fn())
        self._push(name, params, ok, residual, t0)

    def run_numeric(self, name, params, fn, tol=None):
        t0 = time.perf_counter()
        residual = float(fn())
        ok = residual < (self.tol if tol is None else tol)
        self._push(name, params, ok, f"{residual:.3e}", t0)

    def run_negative(self, name, params, fn, floor=None):
        """A control that must FAIL its identity: residual must exceed floor."""
        t0 = time.perf_counter()
        residual = float(fn())
        ok = residual > (floor if floor is not None else self.tol * 1e3)
        self._push(name, params, ok, f"{residual:.3e}", t0)

    @staticmethod
    def _interpret_exact(value):
        if isinstance(value, bool):
            return value, "0" if value else "nonzero"
        if isinstance(value, LaurentPoly):
            return value.is_zero(), "0" if value.is_zero() else "nonzero"
        ok = value == 0
        return ok, "0" if ok else str(value)

    def _push(self, name, params, ok, residual, t0):
        self.checks.append({
            "name": name,
            "parameters": str(params),
            "status": "pass" if ok else "fail",
            "residual": residual,
            "runtime_ms": int(1000 * (time.perf_counter() - t0)),
        })


def _rnd_frac(rng, lo=1, hi=9, dlo=10, dhi=23):
    return Fraction(rng.randint(lo, hi), rng.randint(dlo, dhi))


def _rnd_c(rng, a=0.1, b=0.9, im=0.35):
    return complex(rng.uniform(a, b), rng.uniform(-im, im))


def _strict_of_weight(w):
    for mu in pt.partitions_of_weight(w):
        if all(mu[i] > mu[i + 1] for i in range(len(mu) - 1)):
            yield mu


# ---------------------------------------------------------------------------
# symfun suite
# ---------------------------------------------------------------------------

def suite_symfun(rec, rng, max_size):
    xs4 = sf.var_set("x", 4)
    ok = all(sf.schur(mu, xs4[:n]) == sf.schur_bialternant(mu, xs4[:n])
             for n in (2, 3, 4) for mu in pt.partitions_in_box(3, 4))
    rec.exact("schur.bialternant_equals_jacobi_trudi", "mu in [3,4], N<=4", ok)

    x = LaurentPoly.var("x")
    tv = LaurentPoly.var("t")
    for kind, fam, boxes in (("schur", sf.schur, pt.partitions_in_box),
                             ("schurQ", sf.schur_q, pt.strict_partitions_in_box),
                             ("hl", None, pt.partitions_in_box)):
        def check(kind=kind, fam=fam, boxes=boxes):
            for n in (2, 3):
                xs = sf.var_set("x", n)
                for mu in boxes(min(3, n), 3):
                    if kind == "hl":
                        full = sf.hall_littlewood(mu, xs, tv)
                        branch = sum(
                            (sf.skew_single("hl", mu, nu, xs[-1], tv)
                             * sf.hall_littlewood(nu, xs[:-1], tv)
                             for nu in boxes(n - 1, 3)), LaurentPoly())
                    else:
                        full = fam(mu, xs)
                        branch = sum(
                            (sf.skew_single(kind, mu, nu, xs[-1])
                             * fam(nu, xs[:-1]) for nu in boxes(n - 1, 3)),
                            LaurentPoly())
                    if not (LaurentPoly.coerce(full) - LaurentPoly.coerce(branch)).is_zero():
                        return False
            return True
        rec.run_exact(f"symfun.branching_{kind}", "n<=3, mu in [3,3]", check)

    def cauchy_binet():
        A = [[_rnd_frac(rng) for _ in range(4)] for _ in range(2)]
        B = [[_rnd_frac(rng) for _ in range(2)] for _ in range(4)]
        AB = [[sum(A[i][k] * B[k][j] for k in range(4)) for j in range(2)]
              for i in range(2)]
        lhs = det(AB)
        rhs = Fraction(0)
        from itertools import combinations
        for cols in combinations(range(4), 2):
            rhs += det([[A[i][c] for c in cols] for i in range(2)]) \
                * det([[B[c][j] for c in cols] for j in range(2)])
        return lhs - rhs
    rec.run_exact("symfun.cauchy_binet", "random rational 2x4 / 4x2", cauchy_binet)

    def p_ratio():
        for mu in pt.partitions_in_box(3, 3):
            for nu in pt.interlacing_below(mu):
                lhs = sf.p_skew(mu, nu, tv) * sf.b_mu(nu, tv)
                rhs = sf.p_skew(nu, mu, tv) * sf.b_mu(mu, tv)
                if lhs != rhs:
                    return False
        return True
    rec.run_exact("symfun.p_ratio_b_ratio", "interlacing |mu| <= 6", p_ratio)

    rec.exact("symfun.b_equals_v_times_onemt", "mu in [3,3]",
              all(sf.b_mu(mu, tv) == (1 - tv) ** len(mu) * sf.v_mu(mu, tv)
                  for mu in pt.partitions_in_box(3, 3)))

    def hl_cauchy_partial():
        t = 0.3
        xs = [0.21, 0.33]
        ys = [0.17, 0.41]
        target = 1.0
        for xi in xs:
            for yj in ys:
                target *= (1 - t * xi * yj) / (1 - xi * yj)
        partial = 0.0
        for mu in pt.partitions_in_box(2, 14):
            partial += float(sf.b_mu(mu, Fraction(3, 10))
                             * sf.hall_littlewood(mu, [Fraction(21, 100), Fraction(33, 100)], Fraction(3, 10))
                             * sf.hall_littlewood(mu, [Fraction(17, 100), Fraction(41, 100)], Fraction(3, 10)))
        return abs(partial - target) / abs(target)
    rec.run_numeric("symfun.hl_cauchy_partial_sums", "N=2, parts<=14",
                    hl_cauchy_partial, tol=1e-5)


# ---------------------------------------------------------------------------
# kp / bkp suites
# ---------------------------------------------------------------------------

def suite_kp(rec, rng, max_size):
    wmax = min(6, max_size)

    def chi_residuals():
        for w in range(wmax + 1):
            for mu in pt.partitions_of_weight(w):
                if not hr.kp_equation_residual(sf.full_poly("chi", mu)).is_zero():
                    return False
        return True
    rec.run_exact("kp.equation_chi_mu", f"|mu| <= {wmax}", chi_residuals)

    rec.run_negative("kp.equation_negative_control", "tau = t1^2",
                     lambda: 0.0 if hr.kp_equation_residual(sf.tvar(1) ** 2).is_zero() else 1.0,
                     floor=0.5)

    def chi_bilinear():
        for mu in [(1,), (2,), (2, 1), (3, 1)]:
            r = hr.bilinear_identity_residual_formal("KP", sf.full_poly("chi", mu),
                                                     2 * sum(mu))
            if not r.is_zero():
                return False
        return True
    rec.run_exact("kp.bilinear_identity_chi", "|mu| <= 4", chi_bilinear)

    def plucker_minors():
        l = min(3, max(2, max_size // 2))
        rows = {r: [_rnd_frac(rng) for _ in range(l)] for r in range(-l, l + 2)}
        sol = fk.plucker_solution("KP", rows)
        return fk.plucker_residual("KP", sol)
    rec.run_exact("kp.plucker_minors", "l <= 3 random rational", plucker_minors)

    def plucker_negative():
        worst = 0
        for _ in range(5):
            coeffs = {(): _rnd_frac(rng), (2, 2): _rnd_frac(rng),
                      (3, 1): _rnd_frac(rng)}
            r = fk.plucker_residual("KP", coeffs)
            worst = max(worst, 1.0 if r != 0 else 0.0)
        return worst
    rec.run_negative("kp.plucker_negative_controls", "5 random non-minors",
                     plucker_negative, floor=0.5)

    def cfbi_minors():
        rows = {r: [_rnd_frac(rng) for _ in range(2)] for r in range(-2, 3)}
        sol = fk.plucker_solution("KP", rows)
        g = fk.FockVector("charged", {m: c for m, c in sol.items() if c != 0})
        return fk.bilinear_identity_residual("CFBI", g)
    rec.run_exact("kp.cfbi_decomposable", "l=2 minors state", cfbi_minors)


def suite_bkp(rec, rng, max_size):
    wmax = min(7, max_size + 1)

    def q_residuals():
        for w in range(wmax + 1):
            for mu in _strict_of_weight(w):
                if not hr.bkp_equation_residual(sf.full_poly("Qpoly", mu)).is_zero():
                    return False
        return True
    rec.run_exact("bkp.equation_q_mu", f"strict |mu| <= {wmax}", q_residuals)

    rec.run_negative("bkp.equation_negative_control", "tau = t3",
                     lambda: 0.0 if hr.bkp_equation_residual(sf.tvar(3)).is_zero() else 1.0,
                     floor=0.5)

    def q_bilinear():
        for mu in [(1,), (2, 1), (3, 1)]:
            r = hr.bilinear_identity_residual_formal("BKP", sf.full_poly("Qpoly", mu),
                                                     2 * sum(mu) + 1)
            if not r.is_zero():
                return False
        return True
    rec.run_exact("bkp.bilinear_identity_q", "strict |mu| <= 4", q_bilinear)

    def plucker_pfaffians():
        k = min(6, max(4, max_size))
        skew = {(i, j): _rnd_frac(rng) for i in range(k) for j in range(i + 1, k)}
        sol = fk.plucker_solution("BKP", skew)
        return fk.plucker_residual("BKP", sol)
    rec.run_exact("bkp.plucker_sub_pfaffians", "<= 6 indices random skew",
                  plucker_pfaffians)

    def plucker_negative():
        worst = 0
        for _ in range(5):
            coeffs = {(): _rnd_frac(rng), (2, 1): _rnd_frac(rng),
                      (4, 3): _rnd_frac(rng)}
            r = fk.plucker_residual("BKP", coeffs)
            worst = max(worst, 1.0 if r != 0 else 0.0)
        return worst
    rec.run_negative("bkp.plucker_negative_controls", "5 random non-pfaffian",
                     plucker_negative, floor=0.5)

    def nfbi_decomposable():
        skew = {(i, j): _rnd_frac(rng) for i in range(4) for j in range(i + 1, 4)}
        sol = fk.plucker_solution("BKP", skew)
        g = fk.FockVector("neutral", {m: c for m, c in sol.items() if c != 0})
        return fk.bilinear_identity_residual("NFBI", g)
    rec.run_exact("bkp.nfbi_decomposable", "4 indices random skew",
                  nfbi_decomposable)


# ---------------------------------------------------------------------------
# fock suite
# ---------------------------------------------------------------------------

def suite_fock(rec, rng, max_size):
    wc = min(6, max_size)
    wn = min(7, max_size + 1)

    def evolution_charged():
        for w in range(wc + 1):
            for mu in pt.partitions_of_weight(w):
                if fk.evolution_bracket("charged", mu) != sf.full_poly("chi", mu, cap=max(w, 1)):
                    return False
        return True
    rec.run_exact("fock.evolution_bracket_charged", f"|mu| <= {wc}",
                  evolution_charged)

    def evolution_neutral():
        for w in range(wn + 1):
            for mu in _strict_of_weight(w):
                if fk.evolution_bracket("neutral", mu) != sf.full_poly("Qpoly", mu, cap=max(w, 1)):
                    return False
        return True
    rec.run_exact("fock.evolution_bracket_neutral", f"strict |mu| <= {wn}",
                  evolution_neutral)

    def heis_commutator():
        for mu in pt.partitions_in_box(3, 3):
            if sum(mu) > 5:
                continue
            for m in (1, 2, -1, -2):
                for n in (1, -1, 2, -2):
                    acc = {}
                    for (c1, nu), s in fk.heisenberg_charged(n, 0, mu):
                        for (c2, rho), s2 in fk.heisenberg_charged(m, c1, nu):
                            acc[rho] = acc.get(rho, 0) + s * s2
                    for (c1, nu), s in fk.heisenberg_charged(m, 0, mu):
                        for (c2, rho), s2 in fk.heisenberg_charged(n, c1, nu):
                            acc[rho] = acc.get(rho, 0) - s * s2
                    acc[mu] = acc.get(mu, 0) - (m if m + n == 0 else 0)
                    if any(v != 0 for v in acc.values()):
                        return False
        return True
    rec.run_exact("fock.heisenberg_commutator_charged", "|mu| <= 5, |m| <= 2",
                  heis_commutator)

    def lam_commutator():
        for mu in [(), (1,), (2,), (2, 1), (3, 1)]:
            st = fk.strict_to_monomial(mu)
            for m in (1, -1, 3, -3):
                for n in (1, -1, 3, -3):
                    acc = {}
                    for s1, c1 in fk.neutral_heisenberg(n, st):
                        for s2, c2 in fk.neutral_heisenberg(m, s1):
                            acc[s2] = acc.get(s2, Fraction(0)) + c1 * c2
                    for s1, c1 in fk.neutral_heisenberg(m, st):
                        for s2, c2 in fk.neutral_heisenberg(n, s1):
                            acc[s2] = acc.get(s2, Fraction(0)) - c1 * c2
                    acc[st] = acc.get(st, Fraction(0)) - (Fraction(m, 2) if m + n == 0 else 0)
                    if any(v != 0 for v in acc.values()):
                        return False
        return True
    rec.run_exact("fock.heisenberg_commutator_neutral", "strict, odd |m| <= 3",
                  lam_commutator)

    x = LaurentPoly.var("x")
    y = LaurentPoly.var("y")
    tv = LaurentPoly.var("t")

    def commutation(family, flavor, series, tpar=None, D=None):
        D = min(6, max_size) if D is None else D

        def trunc(p):
            p = LaurentPoly.coerce(p)
            return LaurentPoly(p.vars, {
                e: c for e, c in p.terms.items()
                if sum(k for v, k in zip(p.vars, e) if v in ("x", "y")) <= D
            })._compress()

        for mu in [(), (1,), (2, 1)]:
            big = D + sum(mu) + 1
            v0 = fk.FockVector(flavor, {mu: Fraction(1)}, (big, big))
            lhs = fk.half_vertex_apply(family + "+", x,
                                       fk.half_vertex_apply(family + "-", y, v0, tpar), tpar)
            rhs0 = fk.half_vertex_apply(family + "-", y,
                                        fk.half_vertex_apply(family + "+", x, v0, tpar), tpar)
            geom = series(D)
            for nu in set(lhs.terms) | set(rhs0.terms):
                d = trunc(lhs.coeff(nu)) - trunc(geom * LaurentPoly.coerce(rhs0.coeff(nu)))
                if not d.is_zero():
                    return False
        return True

    def kp_series(D):
        s, acc = LaurentPoly.const(1), LaurentPoly.const(1)
        for _ in range(D):
            acc = acc * (x * y)
            s = s + acc
        return s

    def bkp_series(D):
        s, acc = LaurentPoly.const(1), LaurentPoly.const(1)
        for _ in range(D):
            acc = acc * (x * y)
            s = s + 2 * acc
        return s

    def hl_series(D):
        s, acc = LaurentPoly.const(1), LaurentPoly.const(1)
        for _ in range(D):
            acc = acc * (x * y)
            s = s + (1 - tv) * acc
        return s

    rec.run_exact("fock.half_vertex_commutation_kp", "deg <= 6",
                  lambda: commutation("KP", "charged", kp_series))
    rec.run_exact("fock.half_vertex_commutation_bkp", "deg <= 6",
                  lambda: commutation("BKP", "neutral", bkp_series))
    rec.run_exact("fock.half_vertex_commutation_hl", "deg <= 5",
                  lambda: commutation("HL", "tdeformed", hl_series, tv,
                                      D=min(5, max_size)))

    def adjoint(family, flavor, tpar=None):
        cut = (6, 6)
        box = list(pt.strict_partitions_in_box(2, 3) if flavor == "neutral"
                   else pt.partitions_in_box(2, 3))
        for mu in box:
            vp = fk.half_vertex_apply(family + "+", x,
                                      fk.FockVector(flavor, {mu: Fraction(1)}, cut), tpar)
            for nu in box:
                vm = fk.half_vertex_apply(family + "-", x,
                                          fk.FockVector(flavor, {nu: Fraction(1)}, cut), tpar)
                lhs = LaurentPoly.coerce(vp.coeff(nu)) * fk.inner_product(flavor, nu, nu, tpar)
                rhs = LaurentPoly.coerce(vm.coeff(mu)) * fk.inner_product(flavor, mu, mu, tpar)
                if lhs != rhs:
                    return False
        return True
    rec.run_exact("fock.half_vertex_adjoint_kp", "mu,nu in [2,3]",
                  lambda: adjoint("KP", "charged"))
    rec.run_exact("fock.half_vertex_adjoint_bkp", "mu,nu in [2,3]",
                  lambda: adjoint("BKP", "neutral"))
    rec.run_exact("fock.half_vertex_adjoint_hl", "mu,nu in [2,3]",
                  lambda: adjoint("HL", "tdeformed", tv))

    def hl_branching():
        xs = sf.var_set("x", 2)
        v = fk.FockVector.vacuum("tdeformed", (3, 2))
        for xi in xs:
            v = fk.half_vertex_apply("HL-", xi, v, tv)
        return all(LaurentPoly.coerce(v.coeff(mu)) == LaurentPoly.coerce(
            sf.hall_littlewood(mu, xs, tv)) for mu in pt.partitions_in_box(2, 3))
    rec.run_exact("fock.hl_minus_builds_hall_littlewood", "N=2, box [2,3]",
                  hl_branching)

    def phase_fermi():
        N, M = 2, 2
        xs = sf.var_set("x", N)
        entries = {}
        for m in range(1, M + 1):
            for n in range(1, N + 1):
                lam = (m,) + (1,) * (n - 1)
                entries[(m - 1, -n)] = Fraction((-1) ** (n - 1)) * sf.schur(lam, xs)
        st = fk.bilinear_exp_apply(fk.BilinearCoeffs("charged", entries),
                                   cutoff=(M + N, M + N))
        for mu in pt.partitions_in_box(N, M):
            if LaurentPoly.coerce(st.coeff(mu)) != LaurentPoly.coerce(sf.schur(mu, xs)):
                return False
        return all(mu in pt.partitions_in_box(N, M) or True for mu in st.terms)
    rec.run_exact("fock.bilinear_exp_phase_orbit", "N=M=2", phase_fermi)

    def neutral_orbit():
        N, M = 2, 3
        xs = sf.var_set("x", N)
        entries = {}
        for m in range(1, M + 1):
            for n in range(0, m):
                entries[(m, n)] = Fraction(1, 2 ** (2 - (1 if n == 0 else 0))) \
                    * sf.schur_q(fk.monomial_to_strict((m, n)), xs)
        st = fk.bilinear_exp_apply(fk.BilinearCoeffs("neutral", entries),
                                   cutoff=(M, M + 1))
        for mu in pt.strict_partitions_in_box(N, M):
            want = Fraction(1, 2 ** len(mu)) * sf.schur_q(mu, xs)
            if LaurentPoly.coerce(st.coeff(mu)) != LaurentPoly.coerce(want):
                return False
        return True
    rec.run_exact("fock.bilinear_exp_neutral_orbit", "N=2, M=3", neutral_orbit)

    rec.exact("fock.cfbi_vacuum", "g = |0>",
              fk.bilinear_identity_residual("CFBI", fk.FockVector.vacuum("charged")))
    rec.run_negative("fock.cfbi_negative_control", "g = |0> + |(2,2)>",
                     lambda: float(fk.bilinear_identity_residual(
                         "CFBI", fk.FockVector("charged",
                                               {(): Fraction(1), (2, 2): Fraction(1)}))),
                     floor=0.5)

    def wick_charged_vs_scan():
        for _ in range(60):
            r = rng.choice([1, 2, 3])
            ms = rng.sample(range(-4, 4), r)
            ns = rng.sample(range(-4, 4), r)
            vec = {(0, ()): Fraction(1)}
            for nn in ns:
                out = {}
                for (c0, mu), c in vec.items():
                    hit = fk.psi_star_apply(nn, c0, mu)
                    if hit:
                        s, c1, m1 = hit
                        out[(c1, m1)] = out.get((c1, m1), Fraction(0)) + c * s
                vec = out
            for mm in reversed(ms):
                out = {}
                for (c0, mu), c in vec.items():
                    hit = fk.psi_apply(mm, c0, mu)
                    if hit:
                        s, c1, m1 = hit
                        out[(c1, m1)] = out.get((c1, m1), Fraction(0)) + c * s
                vec = out
            if vec.get((0, ()), Fraction(0)) != fk.wick_vev_charged(ms, ns):
                return False
        return True
    rec.run_exact("fock.wick_charged_vs_scan", "60 random monomials",
                  wick_charged_vs_scan)

    def wick_neutral_vs_scan():
        for _ in range(60):
            r = rng.choice([2, 4])
            ms = [rng.randint(-3, 3) for _ in range(r)]
            vec = {(): Fraction(1)}
            for m in reversed(ms):
                out = {}
                for stt, c in vec.items():
                    for st2, f in fk.phi_apply(m, stt):
                        out[st2] = out.get(st2, Fraction(0)) + c * f
                vec = out
            if vec.get((), Fraction(0)) != fk.wick_vev_neutral(ms):
                return False
        return True
    rec.run_exact("fock.wick_neutral_vs_scan", "60 random monomials",
                  wick_neutral_vs_scan)


# ---------------------------------------------------------------------------
# bosonic model suites
# ---------------------------------------------------------------------------

def suite_phase(rec, rng, max_size):
    Nmax = min(3, max_size)
    Mmax = min(4, max_size + 1)

    def expansions():
        for N in range(0, Nmax + 1):
            for M in range(max(N, 1), Mmax + 1):
                xs = sf.var_set("x", N)
                st = lat.bethe_state(lat.ModelSpec("phase", M, N), xs)
                parts = lat.boson_state_to_partitions(st)
                for mu in pt.partitions_in_box(N, M):
                    if LaurentPoly.coerce(parts.get(mu, Fraction(0))) \
                            != LaurentPoly.coerce(sf.schur(mu, xs)):
                        return False
        return True
    rec.run_exact("phase.bethe_expansion_schur", f"N<={Nmax}, M<={Mmax}",
                  expansions)

    def bb_commute():
        spec = lat.ModelSpec("phase", 3, 2)
        x1, x2 = _rnd_frac(rng), _rnd_frac(rng)
        occ = (1, 1, 0, 1)
        a = lat.bc_apply(spec, "B", x2, lat.bc_apply(spec, "B", x1, {occ: Fraction(1)}))
        b = lat.bc_apply(spec, "B", x1, lat.bc_apply(spec, "B", x2, {occ: Fraction(1)}))
        return a == b
    rec.run_exact("phase.bb_commute", "random rational pair", bb_commute)

    def roots():
        ys = lat.bethe_roots_decoupled(lat.ModelSpec("phase", 3, 1))
        return 0.0 if abs(ys[0] ** 4 - 1) < 1e-12 else 1.0
    rec.run_numeric("phase.bethe_roots_n1", "M=3: y^4 = 1", roots)


def suite_iboson(rec, rng, max_size):
    Nmax = min(3, max_size)
    Mmax = min(4, max_size + 1)

    def expansions():
        for N in range(0, Nmax + 1):
            for M in range(max(N, 1), Mmax + 1):
                xs = sf.var_set("x", N)
                st = lat.bethe_state(lat.ModelSpec("iboson", M, N), xs)
                parts = lat.boson_state_to_partitions(st)
                for mu in pt.strict_partitions_in_box(N, M):
                    if LaurentPoly.coerce(parts.get(mu, Fraction(0))) \
                            != LaurentPoly.coerce(sf.schur_q(mu, xs)):
                        return False
        return True
    rec.run_exact("iboson.bethe_expansion_schur_q", f"N<={Nmax}, M<={Mmax}",
                  expansions)

    def roots():
        ys = lat.bethe_roots_decoupled(lat.ModelSpec("iboson", 3, 1), n_roots=4)
        return max(abs(y ** 4 - 1) for y in ys)
    rec.run_numeric("iboson.bethe_roots", "M=3, N=1: y^4 = 1", roots)

    def eigen():
        spec = lat.ModelSpec("iboson", 3, 2)
        ys = lat.bethe_roots_decoupled(spec)
        return lat.transfer_eigen_residual(spec, ys, _rnd_c(rng, 0.5, 0.8))
    rec.run_numeric("iboson.transfer_eigen_residual", "M=3, N=2", eigen,
                    tol=1e-8)

    def eigen_negative():
        spec = lat.ModelSpec("iboson", 3, 2)
        ys = [y + 0.1 for y in lat.bethe_roots_decoupled(spec)]
        return lat.transfer_eigen_residual(spec, ys, _rnd_c(rng, 0.5, 0.8))
    rec.run_negative("iboson.transfer_eigen_negative", "shifted roots",
                     eigen_negative, floor=1e-4)


def suite_qboson(rec, rng, max_size):
    tv = LaurentPoly.var("t")
    Nmax = min(3, max_size)
    Mmax = min(4, max_size + 1)

    def expansions():
        for N in range(0, Nmax + 1):
            for M in range(max(N, 1), Mmax + 1):
                xs = sf.var_set("x", N)
                st = lat.bethe_state(lat.ModelSpec("qboson", M, N, t=tv), xs)
                parts = lat.boson_state_to_partitions(st)
                for mu in pt.partitions_in_box(N, M):
                    want = sf.b_mu(mu, tv) * sf.hall_littlewood(mu, xs, tv)
                    if LaurentPoly.coerce(parts.get(mu, Fraction(0))) \
                            != LaurentPoly.coerce(want):
                        return False
        return True
    rec.run_exact("qboson.bethe_expansion_hall_littlewood",
                  f"N<={Nmax}, M<={Mmax}, symbolic t", expansions)

    def l_oracle():
        spec = lat.ModelSpec("qboson", 3, 1, t=tv)
        sh = LaurentPoly.var("s")
        vac = lat.boson_vacuum(3)
        for kind in ("B",):
            a = lat.bc_apply(spec, kind, sh * sh, vac)
            b = lat.bc_apply_via_lmatrix(spec, kind, sh, vac)
            if set(a) != set(b) or any(LaurentPoly.coerce(a[k]) != LaurentPoly.coerce(b[k]) for k in a):
                return False
        # one more B layer
        st = lat.bc_apply(spec, "B", LaurentPoly.var("y"), vac)
        a = lat.bc_apply(spec, "B", sh * sh, st)
        b = lat.bc_apply_via_lmatrix(spec, "B", sh, st)
        return set(a) == set(b) and all(LaurentPoly.coerce(a[k]) == LaurentPoly.coerce(b[k]) for k in a)
    rec.run_exact("qboson.admissibility_vs_lmatrix_oracle", "M=3, symbolic",
                  l_oracle)

    def c_duality():
        # <n|CC(x,t) row coefficients against the L-oracle ket action through
        # the diagonal inner product I_t = num/den (cross-multiplied)
        spec = lat.ModelSpec("qboson", 2, 1, t=tv)
        sh = LaurentPoly.var("s")
        x = sh * sh

        def it_parts(occ):
            num = LaurentPoly.const(1)
            den = LaurentPoly.const(1)
            for i in range(1, occ[0] + 1):
                num = num * (LaurentPoly.const(1) - tv ** i)
            for j in range(1, len(occ)):
                for i in range(1, occ[j] + 1):
                    den = den * (LaurentPoly.const(1) - tv ** i)
            return num, den

        for n_state in [(0, 0, 0), (1, 1, 0), (0, 2, 1)]:
            bra = lat.bc_apply(spec, "C", x, {n_state: Fraction(1)})
            n_num, n_den = it_parts(n_state)
            for m_state in bra:
                img = lat.bc_apply_via_lmatrix(spec, "C", sh, {m_state: Fraction(1)})
                amp = LaurentPoly.coerce(img.get(n_state, Fraction(0)))
                m_num, m_den = it_parts(m_state)
                # bra[m] * I_t(m) == amp * I_t(n), cleared of denominators
                lhs = LaurentPoly.coerce(bra[m_state]) * m_num * n_den
                rhs = amp * n_num * m_den
                if lhs != rhs:
                    return False
        return True
    rec.run_exact("qboson.c_operator_duality", "M=2, symbolic", c_duality)

    def genfun():
        N, M = 2, 2
        xs = sf.var_set("x", N)
        ys = sf.var_set("y", N)
        sp = lat.boson_scalar_product(lat.ModelSpec("qboson", M, N, t=tv), xs, ys)
        enum = pt.boxed_genfun_enum(N, M, xs, ys, tv)
        return LaurentPoly.coerce(sp) == LaurentPoly.coerce(enum)
    rec.run_exact("qboson.scalar_product_equals_boxed_genfun",
                  "N=M=2, symbolic t", genfun)

    def roots():
        ys = lat.bethe_roots_decoupled(lat.ModelSpec("qboson", 3, 1, t=Fraction(1, 3)))
        return abs(ys[0] ** 4 - 1)
    rec.run_numeric("qboson.bethe_roots_n1", "M=3: y^4 = 1", roots)


# ---------------------------------------------------------------------------
# xxz suite
# ---------------------------------------------------------------------------

def suite_xxz(rec, rng, max_size):
    g = complex(0.31, 0.17)
    gff = 0.5j * cmath.pi
    Nmax = min(4, max_size)

    def yb():
        spec = lat.ModelSpec("xxz", 2, gamma=g, ws=(0.1, 0.2))
        return max(lat.yang_baxter_residual(spec, _rnd_c(rng), _rnd_c(rng), _rnd_c(rng))
                   for _ in range(3))
    rec.run_numeric("xxz.yang_baxter", "3 random points", yb, tol=1e-10)

    rec.run_numeric("xxz.crossing_symmetry", "random point",
                    lambda: lat.crossing_residual(
                        lat.ModelSpec("xxz", 1, gamma=g, ws=(0.1,)),
                        _rnd_c(rng), _rnd_c(rng)), tol=1e-12)

    def bb_commute():
        spec = lat.ModelSpec("xxz", 3, gamma=g, ws=(0.11, 0.21, 0.34))
        u1, u2 = _rnd_c(rng, 1.0, 1.5), _rnd_c(rng, 1.0, 1.5)
        st = {(lat.UP, lat.DOWN, lat.UP): 1.0 + 0j}
        a = lat.bc_apply(spec, "B", u2, lat.bc_apply(spec, "B", u1, st))
        b = lat.bc_apply(spec, "B", u1, lat.bc_apply(spec, "B", u2, st))
        keys = set(a) | set(b)
        return max(abs(a.get(k, 0) - b.get(k, 0)) for k in keys)
    rec.run_numeric("xxz.bb_commute", "M=3 random state", bb_commute, tol=1e-10)

    def dwpf(N):
        ws = [_rnd_c(rng) for _ in range(N)]
        vs = [_rnd_c(rng, 1.0, 1.8) for _ in range(N)]
        spec = lat.ModelSpec("xxz", N, N, gamma=g, ws=tuple(ws))
        zb = lat.dwpf_bruteforce(spec, vs)
        zc = lat.dwpf_closed(spec, vs, ws, "izergin")
        return abs(zb - zc) / max(abs(zc), 1e-30)
    for N in range(1, Nmax + 1):
        rec.run_numeric(f"xxz.dwpf_izergin_n{N}", f"N={N}",
                        lambda N=N: dwpf(N), tol=1e-9)

    rec.run_numeric("xxz.dwpf_z1_bracket", "Z_1 = [gamma]",
                    lambda: abs(lat.dwpf_bruteforce(
                        lat.ModelSpec("xxz", 1, 1, gamma=g, ws=(0.23,)),
                        [0.5 + 0.1j]) - lat.br(g)))

    def dwpf_ff(N):
        ws = [_rnd_c(rng) for _ in range(N)]
        vs = [_rnd_c(rng, 1.0, 1.8) for _ in range(N)]
        spec = lat.ModelSpec("xxz", N, N, gamma=gff, ws=tuple(ws))
        zb = lat.dwpf_bruteforce(spec, vs)
        zf = lat.dwpf_closed(spec, vs, ws, "ff-factorized")
        return abs(zb - zf) / max(abs(zf), 1e-30)
    for N in range(1, Nmax + 1):
        rec.run_numeric(f"xxz.dwpf_ff_factorized_n{N}", f"N={N}",
                        lambda N=N: dwpf_ff(N), tol=1e-9)

    def korepin(N):
        ws = [_rnd_c(rng) for _ in range(N)]
        vs = [_rnd_c(rng, 1.0, 1.8) for _ in range(N)]
        spec = lat.ModelSpec("xxz", N, N, gamma=g, ws=tuple(ws))
        scale = abs(lat.dwpf_closed(spec, vs, ws, "izergin")) + 1.0
        return lat.korepin_recursion_residual(spec, vs, ws) / scale
    for N in sorted({2, 3, min(4, max(Nmax, 2))}):
        rec.run_numeric(f"xxz.korepin_recursion_n{N}", f"N={N}",
                        lambda N=N: korepin(N), tol=1e-8)

    def sn_ff(N, M):
        ws = tuple(_rnd_c(rng) for _ in range(M))
        spec = lat.ModelSpec("xxz", M, N, gamma=gff, ws=ws)
        vs = lat.bethe_roots_decoupled(spec)
        worst = 0.0
        for n in range(N + 1):
            us = [_rnd_c(rng, 1.5, 2.2) for _ in range(n)]
            sb = lat.scalar_product_bruteforce(spec, n, us, vs)
            sc = lat.scalar_product_closed(spec, n, us, vs)
            worst = max(worst, abs(sb - sc) / max(abs(sb), 1e-30))
        return worst
    for (N, M) in ((1, 3), (2, 4), (3, 5)):
        if N <= Nmax:
            rec.run_numeric(f"xxz.scalar_products_ff_n{N}m{M}",
                            f"N={N}, M={M}, n=0..N",
                            lambda N=N, M=M: sn_ff(N, M), tol=1e-7)

    def sn_generic(M):
        ws = tuple(_rnd_c(rng) for _ in range(M))
        spec = lat.ModelSpec("xxz", M, 1, gamma=g, ws=ws)
        vs = lat.bethe_roots_decoupled(spec)[:1]
        worst = 0.0
        for n in (0, 1):
            us = [_rnd_c(rng, 1.5, 2.2) for _ in range(n)]
            sb = lat.scalar_product_bruteforce(spec, n, us, vs)
            sc = lat.scalar_product_closed(spec, n, us, vs)
            worst = max(worst, abs(sb - sc) / max(abs(sb), 1e-30))
        return worst
    for M in (2, 3):
        rec.run_numeric(f"xxz.scalar_products_generic_n1m{M}", f"M={M}",
                        lambda M=M: sn_generic(M), tol=1e-7)

    def slavnov():
        N, M = 2, 4
        ws = tuple(_rnd_c(rng) for _ in range(M))
        spec = lat.ModelSpec("xxz", M, N, gamma=gff, ws=ws)
        vs = lat.bethe_roots_decoupled(spec)
        us = [_rnd_c(rng, 1.5, 2.2) for _ in range(N)]
        sb = lat.scalar_product_bruteforce(spec, N, us, vs)
        sv = lat.slavnov_determinant(spec, us, vs)
        sff = lat.scalar_product_ff_factorized(spec, us, vs)
        return max(abs(sb - sv), abs(sb - sff)) / max(abs(sb), 1e-30)
    rec.run_numeric("xxz.slavnov_and_ff_scalar_product", "N=2, M=4", slavnov,
                    tol=1e-7)

    def sn_recursion():
        N, M = 2, 3
        ws = tuple(_rnd_c(rng) for _ in range(M))
        spec = lat.ModelSpec("xxz", M, N, gamma=gff, ws=ws)
        vs = lat.bethe_roots_decoupled(spec)
        worst = 0.0
        for n in (1, 2):
            Ntil = N - n
            us = [_rnd_c(rng, 1.5, 2.2) for _ in range(n)]
            us[n - 1] = ws[Ntil]
            lhs = lat.scalar_product_closed(spec, n, us, vs)
            pref = 1.0
            for w in ws:
                pref *= lat.br(ws[Ntil] - w + gff)
            rhs = pref * lat.scalar_product_closed(spec, n - 1, us[:n - 1], vs)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-30))
        return worst
    rec.run_numeric("xxz.sn_recursion", "N=2, M=3, n=1,2", sn_recursion,
                    tol=1e-8)

    def eigen():
        M, N = 4, 2
        ws = tuple(_rnd_c(rng) for _ in range(M))
        spec = lat.ModelSpec("xxz", M, N, gamma=gff, ws=ws)
        vs = lat.bethe_roots_decoupled(spec)
        psi_norm = max(abs(v) for v in lat.bethe_state(spec, vs).values())
        return lat.transfer_eigen_residual(spec, vs, _rnd_c(rng, 2.0, 2.5)) / psi_norm
    rec.run_numeric("xxz.transfer_eigen_residual_ff", "M=4, N=2", eigen,
                    tol=1e-8)

    def coeffs(kind, N, M):
        ws = [_rnd_c(rng) for _ in range(M)]
        vs = [_rnd_c(rng, 1.2, 1.9) for _ in range(N)]
        spec = lat.ModelSpec("xxz", M, N, gamma=g, ws=tuple(ws))
        from itertools import combinations
        worst = 0.0
        for lam in combinations(range(M, 0, -1), M - N):
            cl = lat.bethe_coefficient_closed(kind, lam, vs, ws, g)
            if kind == "b":
                direct = lat.bethe_state_coefficient(spec, vs, lam)
            else:
                spins = [lat.DOWN] * M
                for a in lam:
                    spins[a - 1] = lat.UP
                st = {tuple(spins): 1.0 + 0j}
                for v in vs:
                    st = lat.bc_apply(spec, "C", v, st)
                direct = lat.state_coeff(st, (lat.UP,) * M)
            worst = max(worst, abs(cl - direct) / max(abs(direct), 1e-25))
        return worst
    for (N, M) in ((1, 3), (2, 4), (3, 5)):
        if M <= max_size + 2:
            rec.run_numeric(f"xxz.bethe_coefficient_b_n{N}m{M}",
                            f"all strict lambda", lambda N=N, M=M: coeffs("b", N, M),
                            tol=1e-8)
            rec.run_numeric(f"xxz.bethe_coefficient_c_n{N}m{M}",
                            f"all strict lambda", lambda N=N, M=M: coeffs("c", N, M),
                            tol=1e-8)

    def quoted_b():
        ws = [_rnd_c(rng) for _ in range(3)]
        one = lat.bethe_coefficient_closed("b", (3, 2, 1), [], ws, g)
        vs = [_rnd_c(rng, 1.2, 1.9) for _ in range(3)]
        b0 = lat.bethe_coefficient_closed("b", (), vs, ws, g)
        z = lat.dwpf_closed(lat.ModelSpec("xxz", 3, 3, gamma=g, ws=tuple(ws)),
                            vs, ws, "izergin")
        return max(abs(one - 1), abs(b0 - z) / abs(z))
    rec.run_numeric("xxz.bethe_coefficient_quoted_cases",
                    "b_{M..1}=1 and b_empty=Z_N", quoted_b, tol=1e-9)

    def tau_pf_exact(N):
        ys = [_rnd_frac(rng) for _ in range(N)]
        zs = [_rnd_frac(rng) for _ in range(N)]
        q = _rnd_frac(rng, 2, 7, 8, 11)
        tau = hr.tau_pf(max(2 * N, 1), zs, q)
        spec = sf.power_sum_specialize(tau, ys, "KP")
        return LaurentPoly.coerce(spec) == LaurentPoly.coerce(lat.z_prime(ys, zs, q))
    for N in (1, 2, 3):
        rec.run_exact(f"xxz.tau_pf_equals_z_prime_n{N}", "rational point",
                      lambda N=N: tau_pf_exact(N))

    def z_prime_trig():
        N = 2
        vs = [rng.uniform(0.3, 1.0) for _ in range(N)]
        ws = [rng.uniform(-0.8, -0.2) for _ in range(N)]
        gr = rng.uniform(0.2, 0.6)
        a = lat.z_prime_from_trigonometric(vs, ws, gr)
        b = lat.z_prime([cmath.exp(2 * v) for v in vs],
                        [-cmath.exp(-2 * w) for w in ws], cmath.exp(2 * gr))
        return abs(a - b) / abs(b)
    rec.run_numeric("xxz.z_prime_normalization", "N=2 numeric", z_prime_trig,
                    tol=1e-9)

    def tau_sp(N, M):
        ws = tuple(rng.uniform(-0.5, 0.5) for _ in range(M))
        spec = lat.ModelSpec("xxz", M, N, gamma=gff, ws=ws)
        vs = lat.bethe_roots_decoupled(spec)
        ys = [cmath.exp(2 * v) for v in vs]
        zs = [cmath.exp(2 * w) for w in ws]
        q = cmath.exp(2 * gff)
        beta_worst = max(abs(hr.beta_residual(j, ys, zs, q, sqrt_q=cmath.exp(gff)))
                         for j in range(N))
        us = [rng.uniform(0.8, 1.4) for _ in range(N)]
        xs = [cmath.exp(-2 * u) for u in us]
        tau = hr.tau_sp(2 * N + M, ys, zs, q, sqrt_q=cmath.exp(gff))
        lhs = tau.eval({f"t{n}": sum(x ** n for x in xs) / n
                        for n in range(1, 2 * N + M + 1)})
        rhs = lat.s_prime_from_trigonometric(us, vs, ws, gff, M)
        return max(beta_worst, abs(lhs - rhs) / max(abs(rhs), 1e-30))
    for (N, M) in ((1, 2), (2, 4)):
        rec.run_numeric(f"xxz.tau_sp_equals_s_prime_n{N}m{M}", "FF point",
                        lambda N=N, M=M: tau_sp(N, M), tol=1e-7)


# ---------------------------------------------------------------------------
# felderhof suite
# ---------------------------------------------------------------------------

def suite_felderhof(rec, rng, max_size):
    Nmax = min(4, max_size)

    def yb():
        spec = lat.ModelSpec("felderhof", 1, ws=(0.1,), rs=(0.2,))
        return max(lat.yang_baxter_residual(
            spec, _rnd_c(rng), _rnd_c(rng), _rnd_c(rng),
            pu=_rnd_c(rng, 0.2, 0.4), qv=_rnd_c(rng, 0.2, 0.4),
            rw=_rnd_c(rng, 0.2, 0.4)) for _ in range(3))
    rec.run_numeric("felderhof.yang_baxter", "3 random points", yb, tol=1e-10)

    def bb_twisted():
        # [u-v+p+q] B(u,p) B(v,q) = [v-u+p+q] B(v,q) B(u,p)
        M = 2
        spec = lat.ModelSpec("felderhof", M, ws=(0.11, 0.32), rs=(0.21, 0.27))
        (u, p), (v, q) = (_rnd_c(rng, 1.0, 1.4), 0.23 + 0.05j), (_rnd_c(rng, 1.0, 1.4), 0.37 - 0.04j)
        st = lat.all_up(M)
        ab = lat.bc_apply(spec, "B", u, lat.bc_apply(spec, "B", v, st, p=q), p=p)
        ba = lat.bc_apply(spec, "B", v, lat.bc_apply(spec, "B", u, st, p=p), p=q)
        worst = 0.0
        for k in set(ab) | set(ba):
            lhs = lat.br(u - v + p + q) * ab.get(k, 0)
            rhs = lat.br(v - u + p + q) * ba.get(k, 0)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-25))
        return worst
    rec.run_numeric("felderhof.bb_twisted_commutation", "M=2", bb_twisted,
                    tol=1e-10)

    def dwpf(N):
        ws = tuple(_rnd_c(rng) for _ in range(N))
        rs = tuple(_rnd_c(rng, 0.2, 0.45) for _ in range(N))
        spec = lat.ModelSpec("felderhof", N, N, ws=ws, rs=rs)
        vq = [(_rnd_c(rng, 1.0, 1.6), _rnd_c(rng, 0.2, 0.45)) for _ in range(N)]
        zb = lat.dwpf_bruteforce(spec, vq)
        zc = lat.dwpf_closed(spec, vq, None, "felderhof-factorized")
        return abs(zb - zc) / max(abs(zc), 1e-30)
    for N in range(1, Nmax + 1):
        rec.run_numeric(f"felderhof.dwpf_factorized_n{N}", f"N={N}",
                        lambda N=N: dwpf(N), tol=1e-9)

    def ff_reduction():
        # q_j = r_j = i pi/4 recovers the six-vertex FF partition function
        N = 2
        ws = tuple(_rnd_c(rng) for _ in range(N))
        rs = (0.25j * cmath.pi,) * N
        vq = [(_rnd_c(rng, 1.0, 1.6), 0.25j * cmath.pi) for _ in range(N)]
        spec = lat.ModelSpec("felderhof", N, N, ws=ws, rs=rs)
        zf = lat.dwpf_closed(spec, vq, None, "felderhof-factorized")
        xspec = lat.ModelSpec("xxz", N, N, gamma=0.5j * cmath.pi, ws=ws)
        zx = lat.dwpf_closed(xspec, [v for v, _ in vq], list(ws), "ff-factorized")
        return abs(zf - zx) / abs(zx)
    rec.run_numeric("felderhof.ff_point_reduction", "q=r=i pi/4", ff_reduction,
                    tol=1e-9)

    def s0_relation():
        N, M = 2, 4
        ws = tuple(_rnd_c(rng) for _ in range(M))
        rs = tuple(_rnd_c(rng, 0.2, 0.45) for _ in range(M))
        spec = lat.ModelSpec("felderhof", M, N, ws=ws, rs=rs)
        vq = [(_rnd_c(rng, 1.0, 1.6), _rnd_c(rng, 0.2, 0.45)) for _ in range(N)]
        s0 = lat.scalar_product_bruteforce(spec, 0, [], vq)
        sub = lat.ModelSpec("felderhof", N, N, ws=ws[:N], rs=rs[:N])
        z = lat.dwpf_bruteforce(sub, vq)
        pref = 1.0
        for (v, q) in vq:
            for k in range(N, M):
                pref *= lat.br(v - ws[k] + q - rs[k])
        return abs(s0 - pref * z) / max(abs(s0), 1e-30)
    rec.run_numeric("felderhof.s0_equals_dwpf", "N=2, M=4", s0_relation,
                    tol=1e-9)

    def sn(N, M):
        ws = tuple(_rnd_c(rng) for _ in range(M))
        rs = tuple(_rnd_c(rng, 0.2, 0.45) for _ in range(M))
        spec = lat.ModelSpec("felderhof", M, N, ws=ws, rs=rs)
        ss = lat.bethe_roots_decoupled(spec)
        qs = [_rnd_c(rng, 0.2, 0.45) for _ in range(N)]
        vq = [(s - q, q) for s, q in zip(ss, qs)]
        worst = 0.0
        for n in range(N + 1):
            us = [(_rnd_c(rng, 1.5, 2.2), _rnd_c(rng, 0.2, 0.45)) for _ in range(n)]
            sb = lat.scalar_product_bruteforce(spec, n, us, vq)
            sc = lat.scalar_product_closed(spec, n, us, vq)
            worst = max(worst, abs(sb - sc) / max(abs(sb), 1e-30))
        return worst
    for (N, M) in ((1, 3), (2, 4), (3, 5)):
        if N <= Nmax:
            rec.run_numeric(f"felderhof.scalar_products_n{N}m{M}",
                            f"N={N}, M={M}, n=0..N", lambda N=N, M=M: sn(N, M),
                            tol=1e-7)


# ---------------------------------------------------------------------------
# height suite
# ---------------------------------------------------------------------------

def suite_height(rec, rng, max_size):
    Nmax = min(4, max_size)

    def quasip():
        worst = 0.0
        for nome in (0.1, 0.3):
            params = el.ThetaParams(nome)
            for _ in range(2):
                u = _rnd_c(rng, 0.2, 1.2)
                r1, r2 = el.quasi_periodicity_residuals(params, u)
                worst = max(worst, r1, r2)
        return worst
    rec.run_numeric("height.bracket_quasi_periodicity", "nome in {0.1, 0.3}",
                    quasip, tol=1e-8)

    rec.run_numeric("height.trigonometric_limit", "nome=0: H = 2 sinh",
                    lambda: abs(el.theta_h(0.3 + 0.2j, el.ThetaParams(0.0))
                                - 2 * cmath.sinh(0.3 + 0.2j)))

    def dyb(model, nome):
        if model == "sos":
            spec = el.HeightModelSpec("sos", h=_rnd_c(rng, 1.5, 2.5),
                                      theta=el.ThetaParams(nome),
                                      gamma=_rnd_c(rng, 0.3, 0.7))
            return el.dynamical_yb_residual(spec, _rnd_c(rng), _rnd_c(rng),
                                            _rnd_c(rng), spec.h)
        spec = el.HeightModelSpec("elliptic-da", h=_rnd_c(rng, 1.5, 2.5),
                                  theta=el.ThetaParams(nome))
        return el.dynamical_yb_residual(spec, _rnd_c(rng), _rnd_c(rng),
                                        _rnd_c(rng), spec.h,
                                        p=_rnd_c(rng, 0.2, 0.4),
                                        q=_rnd_c(rng, 0.2, 0.4),
                                        r=_rnd_c(rng, 0.2, 0.4))
    for model in ("sos", "elliptic-da"):
        for nome in (0.0, 0.2):
            rec.run_numeric(f"height.dynamical_yb_{model}_nome{nome}",
                            "random point", lambda m=model, q=nome: dyb(m, q),
                            tol=1e-9)

    def dyb_negative():
        spec = el.HeightModelSpec("elliptic-da", h=1.4 + 0.2j,
                                  theta=el.ThetaParams(0.2))
        return el.dynamical_yb_residual(spec, _rnd_c(rng), _rnd_c(rng),
                                        _rnd_c(rng), spec.h, p=0.23, q=0.31,
                                        r=0.27, perturb=1e-3)
    rec.run_negative("height.dynamical_yb_negative_control",
                     "perturbed height", dyb_negative, floor=1e-6)

    def da_dwpf(N, nome):
        ws = tuple(_rnd_c(rng, -0.2, 0.2) for _ in range(N))
        rs = tuple(_rnd_c(rng, 0.15, 0.3) for _ in range(N))
        spec = el.HeightModelSpec("elliptic-da", h=_rnd_c(rng, 1.2, 1.8),
                                  theta=el.ThetaParams(nome), ws=ws, rs=rs)
        vq = [(_rnd_c(rng, 0.5, 0.9), _rnd_c(rng, 0.15, 0.3)) for _ in range(N)]
        zb = el.height_dwpf_bruteforce(spec, vq)
        zc = el.height_dwpf_closed(spec, vq)
        return abs(zb - zc) / max(abs(zc), 1e-30)
    for nome in (0.0, 0.2):
        for N in range(1, Nmax + 1):
            rec.run_numeric(f"height.da_dwpf_n{N}_nome{nome}", f"N={N}",
                            lambda N=N, q=nome: da_dwpf(N, q), tol=1e-7)

    def sos_reduction(nome):
        N = 3
        ws = tuple(_rnd_c(rng, -0.2, 0.2) for _ in range(N))
        h = _rnd_c(rng, 1.2, 1.8)
        vs = [_rnd_c(rng, 0.5, 0.9) for _ in range(N)]
        da = el.HeightModelSpec("elliptic-da", h=h, theta=el.ThetaParams(nome),
                                ws=ws, rs=(0.5,) * N)
        sos = el.HeightModelSpec("sos-ff", h=h, theta=el.ThetaParams(nome), ws=ws)
        zd = el.height_dwpf_closed(da, [(v, 0.5) for v in vs])
        zs = el.height_dwpf_closed(sos, vs)
        zsb = el.height_dwpf_bruteforce(sos, vs)
        return max(abs(zd - zs), abs(zsb - zs)) / max(abs(zs), 1e-30)
    for nome in (0.0, 0.2):
        rec.run_numeric(f"height.sos_ff_reduction_nome{nome}", "p=q=1/2, N=3",
                        lambda q=nome: sos_reduction(q), tol=1e-7)

    def da_conditions():
        N = 2
        nome = 0.2
        ws = tuple(_rnd_c(rng, -0.2, 0.2) for _ in range(N))
        rs = tuple(_rnd_c(rng, 0.2, 0.35) for _ in range(N))
        spec = el.HeightModelSpec("elliptic-da", h=_rnd_c(rng, 1.3, 1.7),
                                  theta=el.ThetaParams(nome), ws=ws, rs=rs)
        vq = [(_rnd_c(rng, 0.5, 0.9), _rnd_c(rng, 0.2, 0.35)) for _ in range(N)]
        z0 = el.height_dwpf_closed(spec, vq)
        vq1 = vq[:-1] + [(vq[-1][0] + 2, vq[-1][1])]
        r1 = abs(el.height_dwpf_closed(spec, vq1) - (-1) ** N * z0) / abs(z0)
        shift = -2j * cmath.log(nome) / cmath.pi
        vq2 = vq[:-1] + [(vq[-1][0] + shift, vq[-1][1])]
        eta = spec.h + 2 * sum(q for _, q in vq[:-1]) + N * vq[-1][1] \
            + sum(w + r for w, r in zip(ws, rs))
        pred = (-1) ** N / nome ** N * cmath.exp(1j * cmath.pi * (eta - N * vq[-1][0])) * z0
        r2 = abs(el.height_dwpf_closed(spec, vq2) - pred) / abs(pred)
        r3 = el.da_recursion_residual(spec, vq)
        return max(r1, r2, r3)
    rec.run_numeric("height.da_quasiperiodicity_and_recursion", "N=2, nome=0.2",
                    da_conditions, tol=1e-8)

    def config_counts():
        expect = {1: 1, 2: 2, 3: 7, 4: 42}
        for N in range(1, Nmax + 1):
            ws = tuple(0.03 + 0.08 * j for j in range(N))
            rs = tuple(0.21 + 0.04 * j for j in range(N))
            spec = el.HeightModelSpec("elliptic-da", h=1.3 + 0.2j,
                                      theta=el.ThetaParams(0.0), ws=ws, rs=rs)
            vq = [(0.5 + 0.1 * j, 0.2 + 0.02 * j) for j in range(N)]
            if el.count_dw_configurations(spec, vq) != expect[N]:
                return False
        return True
    rec.run_exact("height.asm_configuration_counts", "N = 1..4 -> 1,2,7,42",
                  config_counts)

    def heightless():
        N = 3
        vt = [_rnd_c(rng, 0.5, 0.9) for _ in range(N)]
        qt = [_rnd_c(rng, 0.2, 0.35) for _ in range(N)]
        wt = [_rnd_c(rng, -0.2, 0.2) for _ in range(N)]
        rt = [_rnd_c(rng, 0.2, 0.35) for _ in range(N)]
        vt[-1] += sum(wt) - sum(vt)   # balanced sums kill the residual phase
        qt[-1] += sum(rt) - sum(qt)
        scale = 2 / (1j * cmath.pi)
        da = el.HeightModelSpec("elliptic-da", h=20j, theta=el.ThetaParams(0.0),
                                ws=tuple(scale * w for w in wt),
                                rs=tuple(scale * r for r in rt))
        vq = [(scale * v, scale * q) for v, q in zip(vt, qt)]
        zd = el.height_dwpf_bruteforce(da, vq)
        spec_f = lat.ModelSpec("felderhof", N, N, ws=tuple(wt), rs=tuple(rt))
        zf = lat.dwpf_closed(spec_f, list(zip(vt, qt)), None,
                             "felderhof-factorized")
        return abs(zd / zf - 1)
    rec.run_numeric("height.heightless_limit", "nome=0, h=20i, balanced",
                    heightless, tol=1e-6)


# ---------------------------------------------------------------------------
# genfun suite
# ---------------------------------------------------------------------------

def suite_genfun(rec, rng, max_size):
    tv = LaurentPoly.var("t")
    NM = min(3, max_size)

    def boxed(N, M):
        xs = sf.var_set("x", N)
        ys = sf.var_set("y", N)
        e = pt.boxed_genfun_enum(N, M, xs, ys, tv)
        h = pt.boxed_genfun_closed(N, M, xs, ys, tv, "hl-sum")
        return LaurentPoly.coerce(e) == LaurentPoly.coerce(h)
    for (N, M) in sorted({(1, 1), (2, 2), (2, 3), (NM, NM)}):
        rec.run_exact(f"genfun.boxed_hl_sum_n{N}m{M}", "symbolic t",
                      lambda N=N, M=M: boxed(N, M))

    def schur_det_points(N, M):
        for _ in range(3):
            xs = [_rnd_frac(rng) for _ in range(N)]
            ys = [_rnd_frac(rng) for _ in range(N)]
            e = pt.boxed_genfun_enum(N, M, xs, ys, Fraction(0))
            d = pt.boxed_genfun_closed(N, M, xs, ys, 0, "schur-det")
            s = pt.boxed_genfun_closed(N, M, xs, ys, 0, "schur-sum")
            if not (e == d == s):
                return False
        return True
    rec.run_exact("genfun.boxed_schur_det", "t=0, 3 seeded points, N=M<=3",
                  lambda: schur_det_points(min(3, NM), min(3, NM)))

    def strict_box():
        N = M = 2
        xs = [_rnd_frac(rng) for _ in range(N)]
        ys = [_rnd_frac(rng) for _ in range(N)]
        em = pt.boxed_genfun_enum(N, M, xs, ys, Fraction(-1))
        qm = pt.boxed_genfun_closed(N, M, xs, ys, 0, "q-sum")
        es = pt.boxed_genfun_enum(N, M, xs, ys, None, strict=True)
        return em == qm == es
    rec.run_exact("genfun.boxed_strict_q_sum", "t=-1 vs strict enumeration",
                  strict_box)

    def product_limit():
        x1 = 0.31
        y1 = 0.27
        t = 0.4
        val = pt.boxed_genfun_closed(1, 1, [x1], [y1], t, "product-limit")
        expect = (1 - t * x1 * y1) / (1 - x1 * y1)
        return abs(val - expect)
    rec.run_numeric("genfun.product_limit_n1", "(1-t x y)/(1-x y)",
                    product_limit)

    d = min(8, 4 + max_size)

    def macmahon():
        got = pt.series_genfun_coeffs(d, Fraction(0))
        want = pt.product_series_coeffs(d, Fraction(0))
        return got == want
    rec.run_exact("genfun.macmahon_series", f"z^0..z^{d}", macmahon)

    def strict_series():
        got = pt.strict_series_coeffs(d)
        want = pt.product_series_coeffs(d, Fraction(-1))
        got2 = pt.series_genfun_coeffs(d, Fraction(-1))
        return got == want and got2 == want
    rec.run_exact("genfun.strict_series", f"z^0..z^{d} with 2^p weights",
                  strict_series)

    def vuletic():
        got = pt.series_genfun_coeffs(d, tv)
        want = pt.product_series_coeffs(d, tv)
        return all((LaurentPoly.coerce(a) - LaurentPoly.coerce(b)).is_zero()
                   for a, b in zip(got, want))
    rec.run_exact("genfun.vuletic_series", f"z^0..z^{d}, symbolic t", vuletic)

    rec.exact("genfun.macmahon_quoted", "d=4 -> 1,1,3,6,13",
              pt.series_genfun_coeffs(4, Fraction(0)) ==
              [Fraction(c) for c in (1, 1, 3, 6, 13)])

    def slices_interlace():
        for pi in pt.enumerate_plane_partitions(3, 3):
            s = pt.diagonal_slices(pi, range(-3, 4))
            for i in range(-3, 0):
                if not pt.interlaces(s[i + 1], s[i]):
                    return False
            for i in range(0, 3):
                if not pt.interlaces(s[i], s[i + 1]):
                    return False
        return True
    rec.run_exact("genfun.diagonal_slices_interlace", "all pi in [3,3,3]",
                  slices_interlace)

    def lemma_weight_identities():
        # t-weight and 2-power slice identities over [3,3,3]
        for pi in pt.enumerate_plane_partitions(3, 2):
            slices = pt.diagonal_slices(pi, range(-3, 4))
            prod = LaurentPoly.const(1)
            for i in range(1, 4):
                prod = prod * sf.p_skew(slices[-i + 1], slices[-i], tv)
                prod = prod * sf.p_skew(slices[i - 1], slices[i], tv)
            lhs = prod.divexact(LaurentPoly.coerce(sf.b_mu(slices[0], tv)))
            rhs = LaurentPoly.const(1)
            for lvl in range(1, 4):
                p = pt.path_count_at_level(pi, lvl)
                rhs = rhs * (LaurentPoly.const(1) - tv ** lvl) ** p
            if lhs != rhs:
                return False
        for pi in pt.enumerate_plane_partitions(3, 3, strict=True):
            slices = pt.diagonal_slices(pi, range(-3, 4))
            power = -len(slices[0])
            for i in range(1, 4):
                power += pt.strict_new_parts(slices[-i + 1], slices[-i])
                power += pt.strict_new_parts(slices[i - 1], slices[i])
            if power != pt.strict_path_count(pi):
                return False
        return True
    rec.run_exact("genfun.slice_weight_identities",
                  "path/2-power lemmas over [3,3,*]", lemma_weight_identities)


_SUITES = {
    "symfun": suite_symfun,
    "kp": suite_kp,
    "bkp": suite_bkp,
    "fock": suite_fock,
    "phase": suite_phase,
    "iboson": suite_iboson,
    "qboson": suite_qboson,
    "xxz": suite_xxz,
    "felderhof": suite_felderhof,
    "height": suite_height,
    "genfun": suite_genfun,
}


def run_suite(name, seed=0, tol=1e-9, max_size=4):
    """Run a named verification suite and return its SuiteReport."""
    if name == "all":
        report = SuiteReport("all", seed, tol, max_size)
        for sub in _SUITES:
            rec = _Recorder(tol)
            _SUITES[sub](rec, random.Random(seed), max_size)
            for c in rec.checks:
                c = dict(c)
                c["name"] = c["name"]
                report.checks.append(c)
        return report
    if name not in _SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    report = SuiteReport(name, seed, tol, max_size)
    rec = _Recorder(tol)
    _SUITES[name](rec, random.Random(seed), max_size)
    report.checks = rec.checks
    return report

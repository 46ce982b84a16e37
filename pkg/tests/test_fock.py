"""Fock calculus: Wick VEVs, Heisenberg modes, vertex operators, Pluecker."""

import random
from fractions import Fraction as F

import pytest

from ferrofock.exactnum import LaurentPoly as LP
from ferrofock import partitions as pt
from ferrofock import symfun as sf
from ferrofock import fock as fk


def scan_vev_neutral(ms):
    vec = {(): F(1)}
    for m in reversed(ms):
        out = {}
        for st, c in vec.items():
            for st2, f in fk.phi_apply(m, st):
                out[st2] = out.get(st2, F(0)) + c * f
        vec = out
    return vec.get((), F(0))


def scan_vev_charged(ms, ns):
    vec = {(0, ()): F(1)}
    for n in ns:
        out = {}
        for (c0, mu), c in vec.items():
            hit = fk.psi_star_apply(n, c0, mu)
            if hit:
                s, c1, m1 = hit
                out[(c1, m1)] = out.get((c1, m1), F(0)) + c * s
        vec = out
    for m in reversed(ms):
        out = {}
        for (c0, mu), c in vec.items():
            hit = fk.psi_apply(m, c0, mu)
            if hit:
                s, c1, m1 = hit
                out[(c1, m1)] = out.get((c1, m1), F(0)) + c * s
        vec = out
    return vec.get((0, ()), F(0))


def test_wick_charged_examples():
    assert fk.wick_vev_charged([-1], [-1]) == 1
    assert fk.wick_vev_charged([0], [0]) == 0
    assert fk.wick_vev_charged([-1, -2], [-2, -1]) == -1
    with pytest.raises(fk.LengthMismatch):
        fk.wick_vev_charged([1], [1, 2])


def test_wick_neutral_examples():
    assert fk.wick_vev_neutral([0, 0]) == 1
    # annihilation kills these orderings outright
    assert fk.wick_vev_neutral([1, -1]) == 0
    assert fk.wick_vev_neutral([2, 1, -1, -2]) == 0
    # reversed orderings hit the nonzero contractions
    assert fk.wick_vev_neutral([-1, 1]) == -2
    assert fk.wick_vev_neutral([-2, -1, 1, 2]) == -4
    with pytest.raises(fk.OddLength):
        fk.wick_vev_neutral([1, 2, 3])


def test_wick_against_scan():
    rng = random.Random(7)
    for _ in range(150):
        r = rng.choice([1, 2, 3])
        ms = rng.sample(range(-4, 4), r)
        ns = rng.sample(range(-4, 4), r)
        assert fk.wick_vev_charged(ms, ns) == scan_vev_charged(ms, ns)
    for _ in range(150):
        ms = [rng.randint(-3, 3) for _ in range(rng.choice([2, 4]))]
        assert fk.wick_vev_neutral(ms) == scan_vev_neutral(ms)


def test_inner_products():
    assert fk.inner_product("charged", (3, 1), (3, 1)) == 1
    assert fk.inner_product("charged", (3, 1), (2, 1)) == 0
    assert fk.inner_product("neutral", (2, 1), (2, 1)) == 4
    t = LP.var("t")
    assert fk.inner_product("tdeformed", (1, 1), (1, 1), t) == (1 - t) * (1 - t ** 2)
    with pytest.raises(fk.FlavorMismatch):
        fk.inner_product("bogus", (), ())


def test_neutral_orthogonality_scan():
    for mu in pt.strict_partitions_in_box(2, 3):
        for nu in pt.strict_partitions_in_box(2, 3):
            mmu = fk.strict_to_monomial(mu)
            sign = 1
            for m in reversed(mmu):
                sign *= (-1) ** (m % 2)
            got = sign * scan_vev_neutral([-m for m in reversed(mmu)]
                                          + list(fk.strict_to_monomial(nu)))
            assert got == fk.inner_product("neutral", mu, nu)


def test_heisenberg_examples():
    assert fk.heisenberg_charged(1, 0, (1,)) == [((0, ()), 1)]
    assert fk.heisenberg_charged(2, 0, ()) == []
    acc = {}
    for (c, mu), s in fk.heisenberg_charged(-1, 0, ()):
        for (c2, nu), s2 in fk.heisenberg_charged(1, c, mu):
            acc[nu] = acc.get(nu, 0) + s * s2
    assert acc == {(): 1}


def test_heisenberg_commutators():
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
                assert all(v == 0 for v in acc.values())


def test_neutral_heisenberg_commutators():
    for mu in [(), (1,), (2,), (2, 1), (3, 1)]:
        st = fk.strict_to_monomial(mu)
        for m in (1, -1, 3, -3):
            for n in (1, -1, 3, -3):
                acc = {}
                for s1, c1 in fk.neutral_heisenberg(n, st):
                    for s2, c2 in fk.neutral_heisenberg(m, s1):
                        acc[s2] = acc.get(s2, F(0)) + c1 * c2
                for s1, c1 in fk.neutral_heisenberg(m, st):
                    for s2, c2 in fk.neutral_heisenberg(n, s1):
                        acc[s2] = acc.get(s2, F(0)) - c1 * c2
                acc[st] = acc.get(st, F(0)) - (F(m, 2) if m + n == 0 else 0)
                assert all(v == 0 for v in acc.values())


def test_evolution_bracket_examples():
    assert fk.evolution_bracket("charged", ()) == LP.const(1)
    assert fk.evolution_bracket("charged", (1,)) == sf.tvar(1)
    assert fk.evolution_bracket("charged", (2,)) == sf.tvar(2) + F(1, 2) * sf.tvar(1) ** 2
    with pytest.raises(sf.CapTooSmall):
        fk.evolution_bracket("charged", (3,), cap=2)


def test_evolution_bracket_oracle():
    for w in range(7):
        for mu in pt.partitions_of_weight(w):
            assert fk.evolution_bracket("charged", mu) == sf.full_poly("chi", mu, cap=max(w, 1)), mu
    for w in range(8):
        for mu in pt.partitions_of_weight(w):
            if any(mu[i] == mu[i + 1] for i in range(len(mu) - 1)):
                continue
            assert fk.evolution_bracket("neutral", mu) == sf.full_poly("Qpoly", mu, cap=max(w, 1)), mu


def test_half_vertex_examples():
    x = LP.var("x")
    t = LP.var("t")
    v = fk.FockVector("charged", {(1,): F(1)}, (8, 8))
    out = fk.half_vertex_apply("KP+", x, v)
    assert out.coeff(()) == x and out.coeff((1,)) == F(1)
    vb = fk.FockVector("neutral", {(1,): F(1)}, (8, 8))
    out = fk.half_vertex_apply("BKP+", x, vb)
    assert out.coeff(()) == 2 * x
    vt = fk.FockVector("tdeformed", {(1,): F(1)}, (8, 8))
    out = fk.half_vertex_apply("HL+", x, vt, t)
    assert out.coeff(()) == (1 - t) * x
    with pytest.raises(fk.FlavorMismatch):
        fk.half_vertex_apply("KP+", x, vb)


def test_half_vertex_adjoint():
    x = LP.var("x")
    t = LP.var("t")
    cut = (6, 6)
    for family, flavor, tpar in (("KP", "charged", None),
                                 ("BKP", "neutral", None),
                                 ("HL", "tdeformed", t)):
        box = list(pt.strict_partitions_in_box(2, 3) if flavor == "neutral"
                   else pt.partitions_in_box(2, 3))
        for mu in box:
            vp = fk.half_vertex_apply(family + "+", x,
                                      fk.FockVector(flavor, {mu: F(1)}, cut), tpar)
            for nu in box:
                vm = fk.half_vertex_apply(family + "-", x,
                                          fk.FockVector(flavor, {nu: F(1)}, cut), tpar)
                lhs = LP.coerce(vp.coeff(nu)) * fk.inner_product(flavor, nu, nu, tpar)
                rhs = LP.coerce(vm.coeff(mu)) * fk.inner_product(flavor, mu, mu, tpar)
                assert lhs == rhs


def test_hl_minus_branching():
    t = LP.var("t")
    xs = sf.var_set("x", 2)
    v = fk.FockVector.vacuum("tdeformed", (3, 2))
    for xi in xs:
        v = fk.half_vertex_apply("HL-", xi, v, t)
    for mu in pt.partitions_in_box(2, 3):
        assert LP.coerce(v.coeff(mu)) == LP.coerce(sf.hall_littlewood(mu, xs, t))


def test_bilinear_exp_examples():
    a = LP.var("a")
    out = fk.bilinear_exp_apply(fk.BilinearCoeffs("charged", {}))
    assert out.coeff(()) == F(1) and len(out.terms) == 1
    out = fk.bilinear_exp_apply(fk.BilinearCoeffs("charged", {(0, -1): a}))
    assert out.coeff(()) == F(1) and out.coeff((1,)) == a
    with pytest.raises(fk.NonNilpotentDirection):
        fk.BilinearCoeffs("charged", {(-1, -2): F(1)})
    with pytest.raises(fk.NonNilpotentDirection):
        fk.BilinearCoeffs("neutral", {(1, 2): F(1)})


def test_bilinear_exp_phase_orbit():
    N, M = 2, 2
    xs = sf.var_set("x", N)
    entries = {}
    for m in range(1, M + 1):
        for n in range(1, N + 1):
            lam = (m,) + (1,) * (n - 1)
            entries[(m - 1, -n)] = F((-1) ** (n - 1)) * sf.schur(lam, xs)
    st = fk.bilinear_exp_apply(fk.BilinearCoeffs("charged", entries),
                               cutoff=(M + N, M + N))
    for mu in pt.partitions_in_box(N, M):
        assert LP.coerce(st.coeff(mu)) == LP.coerce(sf.schur(mu, xs))
    spurious = [mu for mu in st.terms
                if len(mu) > N or (mu and mu[0] > M)]
    assert spurious == []


def test_cfbi_examples():
    assert fk.bilinear_identity_residual(
        "CFBI", fk.FockVector.vacuum("charged")) == 0
    bad = fk.FockVector("charged", {(): F(1), (2, 2): F(1)})
    assert fk.bilinear_identity_residual("CFBI", bad) != 0


def test_nfbi_examples():
    assert fk.bilinear_identity_residual(
        "NFBI", fk.FockVector.vacuum("neutral")) == 0
    # exp(b phi_3 phi_1)|0> is decomposable: residual 0
    good = fk.FockVector("neutral", {(): F(1), (3, 1): F(2)})
    assert fk.bilinear_identity_residual("NFBI", good) == 0
    bad = fk.FockVector("neutral", {(): F(1), (2, 1): F(1), (4, 3): F(1)})
    assert fk.bilinear_identity_residual("NFBI", bad) != 0


def test_plucker_solutions():
    rng = random.Random(3)
    rows = {r: [F(rng.randint(-4, 4)) for _ in range(3)] for r in range(-3, 3)}
    sol = fk.plucker_solution("KP", rows)
    assert fk.plucker_residual("KP", sol) == 0
    g = fk.FockVector("charged", {m: c for m, c in sol.items() if c != 0})
    assert fk.bilinear_identity_residual("CFBI", g) == 0

    skew = {(i, j): F(rng.randint(-4, 4)) for i in range(5)
            for j in range(i + 1, 5)}
    sol = fk.plucker_solution("BKP", skew)
    assert fk.plucker_residual("BKP", sol) == 0
    g = fk.FockVector("neutral", {m: c for m, c in sol.items() if c != 0})
    assert fk.bilinear_identity_residual("NFBI", g) == 0


def test_plucker_trivial_and_negative():
    assert fk.plucker_residual("KP", {(2, 1): F(5)}) == 0
    assert fk.plucker_residual("KP", {(): F(1), (2, 2): F(1)}) != 0
    assert fk.plucker_residual("BKP", {(3, 1): F(2)}) == 0
    assert fk.plucker_residual("BKP",
                               {(): F(1), (2, 1): F(1), (4, 3): F(1)}) != 0


def test_cutoff_enforced():
    with pytest.raises(fk.CutoffExceeded):
        fk.FockVector("charged", {(9,): F(1)}, cutoff=(8, 8))
    v = fk.FockVector("charged", {(2,): F(1)}, cutoff=(2, 2))
    out = fk.half_vertex_apply("KP-", LP.var("x"), v)
    assert all(mu[0] <= 2 and len(mu) <= 2 for mu in out.terms)

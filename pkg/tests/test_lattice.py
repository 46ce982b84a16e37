"""Lattice models: R-matrices, Bethe states, DWPFs, scalar products."""

import cmath
import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from ferrofock.exactnum import LaurentPoly as LP, det
from ferrofock import partitions as pt
from ferrofock import symfun as sf
from ferrofock import lattice as lat

GFF = 0.5j * cmath.pi
RNG = random.Random(42)


def rnd(a=0.1, b=0.9, im=0.35):
    return complex(RNG.uniform(a, b), RNG.uniform(-im, im))


def test_rmatrix_entries():
    g = 0.31 + 0.17j
    spec = lat.ModelSpec("xxz", 1, gamma=g, ws=(0.1,))
    R = lat.model_rmatrix(spec, 0.4, 0.4)
    assert abs(R[1, 1]) < 1e-14                     # b entry [0] = 0
    assert abs(R[1, 2] - lat.br(g)) < 1e-14
    # felderhof at p = q = i pi/4 equals xxz at gamma = i pi/2
    fspec = lat.ModelSpec("felderhof", 1, ws=(0.2,), rs=(0.25j * cmath.pi,))
    u, v = rnd(), rnd()
    Rf = lat.model_rmatrix(fspec, u, v, pu=0.25j * cmath.pi, qv=0.25j * cmath.pi)
    Rx = lat.model_rmatrix(lat.ModelSpec("xxz", 1, gamma=GFF, ws=(0.2,)), u, v)
    assert abs(Rf - Rx).max() < 1e-12
    # qboson at t = 0 collapses to the phase weights
    q0 = lat.model_rmatrix(lat.ModelSpec("qboson", 1, t=0.0), u, v)
    ph = lat.model_rmatrix(lat.ModelSpec("phase", 1), u, v)
    assert abs(q0 - ph).max() < 1e-12


def test_yang_baxter():
    g = 0.37 + 0.21j
    spec = lat.ModelSpec("xxz", 1, gamma=g, ws=(0.1,))
    assert lat.yang_baxter_residual(spec, rnd(), rnd(), rnd()) < 1e-10
    fspec = lat.ModelSpec("felderhof", 1, ws=(0.1,), rs=(0.2,))
    assert lat.yang_baxter_residual(fspec, rnd(), rnd(), rnd(),
                                    pu=rnd(0.2, 0.4), qv=rnd(0.2, 0.4),
                                    rw=rnd(0.2, 0.4)) < 1e-10
    for model, t in (("phase", None), ("iboson", None), ("qboson", 0.3 + 0.1j)):
        s = lat.ModelSpec(model, 1, t=t)
        assert lat.yang_baxter_residual(s, rnd(), rnd(), rnd()) < 1e-10


def test_yang_baxter_perturbed():
    # moving one rapidity by 1e-3 breaks the relation well beyond 1e-6
    g = 0.37 + 0.21j
    spec = lat.ModelSpec("xxz", 1, gamma=g, ws=(0.1,))
    u, v, w = rnd(), rnd(), rnd()
    Rab = lat._kron3(lat.model_rmatrix(spec, u, v + 1e-3), (0, 1))
    Rac = lat._kron3(lat.model_rmatrix(spec, u, w), (0, 2))
    Rbc = lat._kron3(lat.model_rmatrix(spec, v, w), (1, 2))
    import numpy as np
    res = np.max(np.abs(Rab @ Rac @ Rbc - Rbc @ Rac @ Rab))
    assert res > 1e-6


def test_crossing_symmetry():
    spec = lat.ModelSpec("xxz", 1, gamma=0.29 + 0.11j, ws=(0.1,))
    assert lat.crossing_residual(spec, rnd(), rnd()) < 1e-12


def test_phase_b_action():
    # BB(x)|0>, M = 2: partition image carries s_mu(x) for mu in [1, 2]
    xs = sf.var_set("x", 1)
    st = lat.bethe_state(lat.ModelSpec("phase", 2, 1), xs)
    parts = lat.boson_state_to_partitions(st)
    for mu in pt.partitions_in_box(1, 2):
        assert LP.coerce(parts.get(mu, F(0))) == LP.coerce(sf.schur(mu, xs))


def test_xxz_c_annihilates_up_vacuum():
    spec = lat.ModelSpec("xxz", 3, gamma=0.3 + 0.1j, ws=(0.1, 0.2, 0.3))
    assert lat.bc_apply(spec, "C", rnd(), lat.all_up(3)) == {}


def test_bethe_state_expansions():
    tv = LP.var("t")
    for (N, M) in ((2, 2), (2, 3)):
        xs = sf.var_set("x", N)
        phase = lat.boson_state_to_partitions(
            lat.bethe_state(lat.ModelSpec("phase", M, N), xs))
        iboson = lat.boson_state_to_partitions(
            lat.bethe_state(lat.ModelSpec("iboson", M, N), xs))
        qboson = lat.boson_state_to_partitions(
            lat.bethe_state(lat.ModelSpec("qboson", M, N, t=tv), xs))
        for mu in pt.partitions_in_box(N, M):
            assert LP.coerce(phase.get(mu, F(0))) == LP.coerce(sf.schur(mu, xs))
            want = sf.b_mu(mu, tv) * sf.hall_littlewood(mu, xs, tv)
            assert LP.coerce(qboson.get(mu, F(0))) == LP.coerce(want)
        for mu in pt.strict_partitions_in_box(N, M):
            assert LP.coerce(iboson.get(mu, F(0))) == LP.coerce(sf.schur_q(mu, xs))
    vac = lat.bethe_state(lat.ModelSpec("phase", 2, 0), [])
    assert vac == lat.boson_vacuum(2)


def test_lmatrix_oracle():
    tv = LP.var("t")
    spec = lat.ModelSpec("qboson", 2, 1, t=tv)
    sh = LP.var("s")
    st = lat.bc_apply(spec, "B", LP.var("y"), lat.boson_vacuum(2))
    a = lat.bc_apply(spec, "B", sh * sh, st)
    b = lat.bc_apply_via_lmatrix(spec, "B", sh, st)
    assert set(a) == set(b)
    assert all(LP.coerce(a[k]) == LP.coerce(b[k]) for k in a)


def test_bethe_roots():
    ys = lat.bethe_roots_decoupled(lat.ModelSpec("iboson", 3, 1), n_roots=4)
    assert len(ys) == 4 and all(abs(y ** 4 - 1) < 1e-10 for y in ys)
    spec = lat.ModelSpec("xxz", 4, 2, gamma=GFF,
                         ws=tuple(rnd() for _ in range(4)))
    vs = lat.bethe_roots_decoupled(spec)
    for v in vs:
        lhs = 1.0
        rhs = 1.0
        for w in spec.ws:
            lhs *= lat.br(v - w)
            rhs *= lat.ag(v - w)
        assert abs(lhs + rhs) < 1e-9 * max(abs(lhs), 1.0)
    with pytest.raises(ValueError):
        lat.bethe_roots_decoupled(lat.ModelSpec("phase", 3, 2))


def test_transfer_eigen_residual():
    # vacuum N=0 is an exact eigenvector
    spec0 = lat.ModelSpec("xxz", 3, 0, gamma=0.3 + 0.2j,
                          ws=(0.1, 0.25, 0.4))
    assert lat.transfer_eigen_residual(spec0, [], rnd(1.5, 2.0)) < 1e-12
    spec = lat.ModelSpec("xxz", 4, 2, gamma=GFF,
                         ws=tuple(rnd() for _ in range(4)))
    vs = lat.bethe_roots_decoupled(spec)
    assert lat.transfer_eigen_residual(spec, vs, rnd(2.0, 2.5)) < 1e-8
    bad = [v + 0.1 for v in vs]
    assert lat.transfer_eigen_residual(spec, bad, rnd(2.0, 2.5)) > 1e-3


def test_dwpf():
    g = 0.31 + 0.17j
    spec1 = lat.ModelSpec("xxz", 1, 1, gamma=g, ws=(0.23 + 0.1j,))
    assert abs(lat.dwpf_bruteforce(spec1, [0.5 + 0.2j]) - lat.br(g)) < 1e-14
    for N in (2, 3):
        ws = [rnd() for _ in range(N)]
        vs = [rnd(1.0, 1.8) for _ in range(N)]
        spec = lat.ModelSpec("xxz", N, N, gamma=g, ws=tuple(ws))
        zb = lat.dwpf_bruteforce(spec, vs)
        zc = lat.dwpf_closed(spec, vs, ws, "izergin")
        assert abs(zb - zc) < 1e-9 * abs(zc)
    with pytest.raises(lat.DegenerateEvaluationPoint):
        lat.dwpf_closed(spec, [0.4, 0.4, 0.5], ws, "izergin")


def test_dwpf_ff_and_felderhof():
    for N in (1, 2, 3):
        ws = [rnd() for _ in range(N)]
        vs = [rnd(1.0, 1.8) for _ in range(N)]
        spec = lat.ModelSpec("xxz", N, N, gamma=GFF, ws=tuple(ws))
        zb = lat.dwpf_bruteforce(spec, vs)
        zf = lat.dwpf_closed(spec, vs, ws, "ff-factorized")
        assert abs(zb - zf) < 1e-9 * abs(zf)
    fspec1 = lat.ModelSpec("felderhof", 1, 1, ws=(0.3,), rs=(0.25,))
    z1 = lat.dwpf_bruteforce(fspec1, [(0.6, 0.4)])
    expect = cmath.sqrt(lat.br(0.8)) * cmath.sqrt(lat.br(0.5))
    assert abs(z1 - expect) < 1e-14
    for N in (2, 3):
        ws = tuple(rnd() for _ in range(N))
        rs = tuple(rnd(0.2, 0.45) for _ in range(N))
        spec = lat.ModelSpec("felderhof", N, N, ws=ws, rs=rs)
        vq = [(rnd(1.0, 1.6), rnd(0.2, 0.45)) for _ in range(N)]
        zb = lat.dwpf_bruteforce(spec, vq)
        zc = lat.dwpf_closed(spec, vq, None, "felderhof-factorized")
        assert abs(zb - zc) < 1e-9 * abs(zc)


def test_korepin_recursion():
    g = 0.31 + 0.17j
    for N in (2, 3):
        ws = [rnd() for _ in range(N)]
        vs = [rnd(1.0, 1.8) for _ in range(N)]
        spec = lat.ModelSpec("xxz", N, N, gamma=g, ws=tuple(ws))
        scale = abs(lat.dwpf_closed(spec, vs, ws, "izergin")) + 1.0
        assert lat.korepin_recursion_residual(spec, vs, ws) / scale < 1e-10


def test_scalar_products_xxz():
    # S_0 relation, one-site product case, and closed-vs-brute at FF roots
    M, N = 3, 2
    ws = tuple(rnd() for _ in range(M))
    spec = lat.ModelSpec("xxz", M, N, gamma=GFF, ws=ws)
    vs = lat.bethe_roots_decoupled(spec)
    s0 = lat.scalar_product_bruteforce(spec, 0, [], vs)
    zn = lat.dwpf_bruteforce(lat.ModelSpec("xxz", N, N, gamma=GFF, ws=ws[:N]), vs)
    pref = 1.0
    for v in vs:
        for w in ws[N:]:
            pref *= lat.br(v - w)
    assert abs(s0 - pref * zn) < 1e-9 * abs(s0)
    for n in range(N + 1):
        us = [rnd(1.5, 2.2) for _ in range(n)]
        sb = lat.scalar_product_bruteforce(spec, n, us, vs)
        sc = lat.scalar_product_closed(spec, n, us, vs)
        assert abs(sb - sc) < 1e-7 * abs(sb)
    # one-site scalar product: <Up|C(u)B(v)|Up> = c_-(u,w) c_+(v,w) = [g]^2
    spec1 = lat.ModelSpec("xxz", 1, 1, gamma=0.3 + 0.2j, ws=(0.15,))
    got = lat.scalar_product_bruteforce(spec1, 1, [rnd(1.5, 2.0)], [rnd()])
    assert abs(got - lat.br(spec1.gamma) ** 2) < 1e-12


def test_scalar_product_checks_bethe():
    spec = lat.ModelSpec("xxz", 3, 2, gamma=GFF,
                         ws=tuple(rnd() for _ in range(3)))
    with pytest.raises(lat.BetheResidualTooLarge):
        lat.scalar_product_closed(spec, 0, [], [0.4 + 0.1j, 0.9 - 0.2j])


def test_slavnov_and_ff_forms():
    M, N = 4, 2
    ws = tuple(rnd() for _ in range(M))
    spec = lat.ModelSpec("xxz", M, N, gamma=GFF, ws=ws)
    vs = lat.bethe_roots_decoupled(spec)
    us = [rnd(1.5, 2.2) for _ in range(N)]
    sb = lat.scalar_product_bruteforce(spec, N, us, vs)
    assert abs(sb - lat.slavnov_determinant(spec, us, vs)) < 1e-7 * abs(sb)
    assert abs(sb - lat.scalar_product_ff_factorized(spec, us, vs)) < 1e-7 * abs(sb)


def test_felderhof_scalar_products():
    N, M = 2, 3
    ws = tuple(rnd() for _ in range(M))
    rs = tuple(rnd(0.2, 0.45) for _ in range(M))
    spec = lat.ModelSpec("felderhof", M, N, ws=ws, rs=rs)
    ss = lat.bethe_roots_decoupled(spec)
    qs = [rnd(0.2, 0.45) for _ in range(N)]
    vq = [(s - q, q) for s, q in zip(ss, qs)]
    for n in range(N + 1):
        us = [(rnd(1.5, 2.2), rnd(0.2, 0.45)) for _ in range(n)]
        sb = lat.scalar_product_bruteforce(spec, n, us, vq)
        sc = lat.scalar_product_closed(spec, n, us, vq)
        assert abs(sb - sc) < 1e-7 * abs(sb)


def test_weighted_determinant():
    Mx = [[F(RNG.randint(-4, 4)) for _ in range(3)] for _ in range(3)]
    ones = [[F(1)] * 3 for _ in range(3)]
    assert lat.weighted_determinant(ones, Mx, 3) == det([r[:] for r in Mx])
    W = [[F(RNG.randint(1, 5)) for _ in range(3)] for _ in range(3)]
    assert lat.weighted_determinant(W, Mx, 0) == det([r[:] for r in Mx])
    with pytest.raises(lat.SizeMismatch):
        lat.weighted_determinant(ones, Mx, 4)


def test_hl_via_weighted_determinant():
    xs = sf.var_set("x", 2)
    t = LP.var("t")
    for mu in [(2, 1), (1,), (2, 2)]:
        W = [[xs[i] - t * xs[j] for j in range(2)] for i in range(2)]
        Mmu = [[xs[j] ** pt.part(mu, i + 1) for j in range(2)] for i in range(2)]
        num = lat.weighted_determinant(W, Mmu, 2)
        den = (xs[0] - xs[1]) * sf.v_mu(mu, t) * sf._v_zero_parts(2 - len(mu), t)
        assert LP.coerce(num).divexact(LP.coerce(den)) \
            == LP.coerce(sf.hall_littlewood(mu, xs, t))


def test_bethe_coefficients():
    g = 0.29 + 0.12j
    N, M = 2, 4
    ws = [rnd() for _ in range(M)]
    vs = [rnd(1.2, 1.9) for _ in range(N)]
    spec = lat.ModelSpec("xxz", M, N, gamma=g, ws=tuple(ws))
    for lam in combinations(range(M, 0, -1), M - N):
        bl = lat.bethe_coefficient_closed("b", lam, vs, ws, g)
        direct = lat.bethe_state_coefficient(spec, vs, lam)
        assert abs(bl - direct) < 1e-8 * max(abs(direct), 1e-20)
    # quoted extremal cases
    assert abs(lat.bethe_coefficient_closed("b", (3, 2, 1), [], ws[:3], g) - 1) < 1e-12
    vs3 = [rnd(1.2, 1.9) for _ in range(3)]
    b0 = lat.bethe_coefficient_closed("b", (), vs3, ws[:3], g)
    z3 = lat.dwpf_closed(lat.ModelSpec("xxz", 3, 3, gamma=g, ws=tuple(ws[:3])),
                         vs3, ws[:3], "izergin")
    assert abs(b0 - z3) < 1e-9 * abs(z3)


def test_z_prime_exact_and_normalization():
    ys = [F(1, 3), F(2, 5)]
    zs = [F(1, 7), F(3, 8)]
    q = F(5, 9)
    assert isinstance(lat.z_prime(ys, zs, q), F)
    # numeric normalization cross-check against the Izergin determinant
    vs = [0.4, 0.8]
    ws = [-0.5, -0.3]
    g = 0.35
    a = lat.z_prime_from_trigonometric(vs, ws, g)
    b = lat.z_prime([cmath.exp(2 * v) for v in vs],
                    [-cmath.exp(-2 * w) for w in ws], cmath.exp(2 * g))
    assert abs(a - b) < 1e-10 * abs(b)

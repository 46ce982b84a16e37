"""Hirota operators, KP/BKP residuals, tau-function coefficients."""

import random
from fractions import Fraction as F

import pytest

from ferrofock.exactnum import LaurentPoly as LP
from ferrofock import partitions as pt
from ferrofock import symfun as sf
from ferrofock import hirota as hr


def strict_of_weight(w):
    for mu in pt.partitions_of_weight(w):
        if all(mu[i] > mu[i + 1] for i in range(len(mu) - 1)):
            yield mu


def test_hirota_apply_examples():
    t1 = sf.tvar(1)
    assert hr.hirota_apply({1: 1}, t1, t1).is_zero()
    assert hr.hirota_apply({1: 1}, t1 ** 2, LP.const(1)) == 2 * t1
    assert hr.hirota_apply({1: 2}, t1 ** 2, t1 ** 2) == -4 * t1 ** 2


def test_hirota_antisymmetry():
    rng = random.Random(5)
    for _ in range(10):
        f = sum((F(rng.randint(-3, 3)) * sf.tvar(rng.randint(1, 3)) ** rng.randint(0, 2)
                 for _ in range(3)), LP())
        g = sum((F(rng.randint(-3, 3)) * sf.tvar(rng.randint(1, 3)) ** rng.randint(0, 2)
                 for _ in range(3)), LP())
        for n in (1, 3):
            assert hr.hirota_apply({n: 1}, f, g) == -hr.hirota_apply({n: 1}, g, f)


def test_kp_equation():
    assert hr.kp_equation_residual(LP.const(1)).is_zero()
    assert hr.kp_equation_residual(sf.full_poly("chi", (2, 1))).is_zero()
    assert not hr.kp_equation_residual(sf.tvar(1) ** 2).is_zero()


def test_kp_equation_all_small_chi():
    for w in range(0, 7):
        for mu in pt.partitions_of_weight(w):
            assert hr.kp_equation_residual(sf.full_poly("chi", mu)).is_zero(), mu


def test_bkp_equation():
    assert hr.bkp_equation_residual(LP.const(1)).is_zero()
    assert hr.bkp_equation_residual(sf.full_poly("Qpoly", (2, 1))).is_zero()
    assert not hr.bkp_equation_residual(sf.tvar(3)).is_zero()


def test_bkp_equation_all_small_q():
    for w in range(0, 8):
        for mu in strict_of_weight(w):
            assert hr.bkp_equation_residual(sf.full_poly("Qpoly", mu)).is_zero(), mu


def test_bilinear_identity_formal():
    assert hr.bilinear_identity_residual_formal("KP", LP.const(1), 4).is_zero()
    assert hr.bilinear_identity_residual_formal("KP", sf.tvar(1), 4).is_zero()
    assert not hr.bilinear_identity_residual_formal("KP", sf.tvar(1) ** 2, 6).is_zero()
    for mu in [(2,), (2, 1), (3, 1)]:
        tau = sf.full_poly("chi", mu)
        assert hr.bilinear_identity_residual_formal("KP", tau, 2 * sum(mu)).is_zero()
    for mu in [(2, 1), (3, 1), (3, 2, 1)]:
        tau = sf.full_poly("Qpoly", mu)
        assert hr.bilinear_identity_residual_formal("BKP", tau, 2 * sum(mu) + 1).is_zero()


def test_bilinear_identity_cap():
    with pytest.raises(hr.CapTooSmall):
        hr.bilinear_identity_residual_formal("KP", sf.full_poly("chi", (2, 1)), 2)


def test_zeta_examples():
    q = F(2, 3)
    assert hr.zeta_coeff((), [F(1, 2)], q) == q - 1
    assert hr.zeta_coeff((1,), [F(1, 2)], q) == 0     # mu_1 > N-1
    assert hr.zeta_coeff((1, 1, 1), [F(1, 2), F(1, 3)], q) == 0
    with pytest.raises(hr.DegenerateEvaluationPoint):
        hr.zeta_coeff((1,), [F(1, 2), F(1, 2), F(1, 4)], q)


def test_varsigma_out_of_box():
    assert hr.varsigma_coeff((5,), [F(1, 2)], [F(1, 3), F(1, 5)], F(-1)) == 0


def test_tau_pf_equals_z_prime():
    from ferrofock import lattice as lat
    rng = random.Random(11)
    for N in (1, 2, 3):
        ys = [F(rng.randint(1, 9), rng.randint(10, 21)) for _ in range(N)]
        zs = [F(rng.randint(1, 9), rng.randint(10, 21)) for _ in range(N)]
        q = F(rng.randint(2, 7), rng.randint(8, 11))
        tau = hr.tau_pf(max(2 * N, 1), zs, q)
        assert sf.power_sum_specialize(tau, ys, "KP") == LP.coerce(lat.z_prime(ys, zs, q))


def test_beta_vanishes_at_bethe_roots():
    import cmath
    from ferrofock import lattice as lat
    rng = random.Random(13)
    M, N = 4, 2
    gff = 0.5j * cmath.pi
    ws = tuple(rng.uniform(-0.5, 0.5) for _ in range(M))
    spec = lat.ModelSpec("xxz", M, N, gamma=gff, ws=ws)
    vs = lat.bethe_roots_decoupled(spec)
    ys = [cmath.exp(2 * v) for v in vs]
    zs = [cmath.exp(2 * w) for w in ws]
    q = cmath.exp(2 * gff)
    for j in range(N):
        assert abs(hr.beta_residual(j, ys, zs, q, sqrt_q=cmath.exp(gff))) < 1e-10
    # non-Bethe points give nonzero residuals
    ys_bad = [y * 1.1 for y in ys]
    assert abs(hr.beta_residual(0, ys_bad, zs, q, sqrt_q=cmath.exp(gff))) > 1e-4

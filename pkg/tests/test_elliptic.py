"""Theta functions, dynamical Yang-Baxter, height-model partition functions."""

import cmath
import random

import pytest

from ferrofock import elliptic as el
from ferrofock import lattice as lat

RNG = random.Random(77)


def rnd(a=0.1, b=0.9, im=0.3):
    return complex(RNG.uniform(a, b), RNG.uniform(-im, im))


def test_theta_basics():
    p0 = el.ThetaParams(0.0)
    assert el.theta_h(0, p0) == 0
    u = 0.3 + 0.2j
    assert abs(el.theta_h(u, p0) - 2 * cmath.sinh(u)) < 1e-15
    assert abs(el.theta_h1(u, p0) - 2j * cmath.cosh(u)) < 1e-15
    assert abs(el.angle(u, p0) - el.bracket(u + 1, p0)) < 1e-12
    with pytest.raises(ValueError):
        el.ThetaParams(1.2)


def test_theta_truncation_autoraised():
    p = el.ThetaParams(0.3, order=1)
    assert p.nome ** (2 * p.order) < 1e-12


def test_quasi_periodicity():
    for nome in (0.1, 0.3):
        params = el.ThetaParams(nome)
        for _ in range(3):
            u = rnd(0.2, 1.2)
            r1, r2 = el.quasi_periodicity_residuals(params, u)
            assert r1 < 1e-8 and r2 < 1e-8
    p = el.ThetaParams(0.2)
    u = rnd()
    assert abs(el.bracket(u + 2, p) + el.bracket(u, p)) < 1e-10


def test_face_weights():
    # elliptic-da at p=q=1/2 reproduces the sos weights at gamma = i pi/2
    params = el.ThetaParams(0.2)
    h = 1.4 + 0.2j
    da = el.HeightModelSpec("elliptic-da", h=h, theta=params)
    sos = el.HeightModelSpec("sos-ff", h=h, theta=params)
    u, v = rnd(), rnd()
    for kind in ("a+", "a-", "c+", "c-"):
        wd = el.face_weight(da, kind, u, v, h, p=0.5, q=0.5)
        ws = el.face_weight(sos, kind, u, v, h)
        assert abs(wd - ws) < 1e-10 * max(abs(ws), 1.0), kind
    # b weights agree up to the stated square-root branch; squares match
    wd = el.face_weight(da, "b+", u, v, h, p=0.5, q=0.5)
    ws = el.face_weight(sos, "b+", u, v, h)
    assert abs(wd ** 2 - ws ** 2) < 1e-10 * max(abs(ws) ** 2, 1.0)
    # b vanishes at u = v
    assert abs(el.face_weight(sos, "b+", u, u, h)) < 1e-12


def test_heightless_weight_ratio():
    # a and b weights tend to their Felderhof counterparts at q=0, h -> i oo
    scale = 2 / (1j * cmath.pi)
    u, v = 0.7 + 0.1j, 0.4 - 0.05j
    p, q = 0.3, 0.25
    da = el.HeightModelSpec("elliptic-da", h=20j, theta=el.ThetaParams(0.0))
    for kind, trig in (("a+", lat.br(u - v + p + q)),
                       ("a-", lat.br(v - u + p + q)),
                       ("b+", lat.br(u - v + q - p)),
                       ("b-", lat.br(u - v - q + p))):
        w = el.face_weight(da, kind, scale * u, scale * v, 20j,
                           p=scale * p, q=scale * q)
        assert abs(w / trig - 1) < 1e-6, kind
    # the c+ c- product is branch-free and converges likewise
    cp = el.face_weight(da, "c+", scale * u, scale * v, 20j,
                        p=scale * p, q=scale * q)
    cm = el.face_weight(da, "c-", scale * u, scale * v, 20j,
                        p=scale * p, q=scale * q)
    trig = lat.br(2 * p) * lat.br(2 * q)
    assert abs(cp * cm / trig - 1) < 1e-6


def test_dynamical_yang_baxter():
    for nome in (0.0, 0.2):
        sos = el.HeightModelSpec("sos", h=rnd(1.5, 2.5),
                                 theta=el.ThetaParams(nome),
                                 gamma=rnd(0.3, 0.7))
        assert el.dynamical_yb_residual(sos, rnd(), rnd(), rnd(), sos.h) < 1e-9
        da = el.HeightModelSpec("elliptic-da", h=rnd(1.5, 2.5),
                                theta=el.ThetaParams(nome))
        assert el.dynamical_yb_residual(da, rnd(), rnd(), rnd(), da.h,
                                        p=rnd(0.2, 0.4), q=rnd(0.2, 0.4),
                                        r=rnd(0.2, 0.4)) < 1e-9


def test_dynamical_yb_negative_control():
    da = el.HeightModelSpec("elliptic-da", h=1.4 + 0.2j,
                            theta=el.ThetaParams(0.2))
    res = el.dynamical_yb_residual(da, rnd(), rnd(), rnd(), da.h,
                                   p=0.23, q=0.31, r=0.27, perturb=1e-3)
    assert res > 1e-6


def test_height_dwpf_n1_is_cplus():
    params = el.ThetaParams(0.2)
    h = 1.3 + 0.15j
    spec = el.HeightModelSpec("elliptic-da", h=h, theta=params,
                              ws=(0.12,), rs=(0.27,))
    v, q = 0.55 + 0.1j, 0.21
    z = el.height_dwpf_bruteforce(spec, [(v, q)])
    cplus = el.face_weight(spec, "c+", v, 0.12, h, p=q, q=0.27)
    assert abs(z - cplus) < 1e-12 * max(abs(cplus), 1.0)


def test_height_dwpf_brute_vs_closed():
    for nome in (0.0, 0.2):
        for N in (1, 2, 3):
            ws = tuple(rnd(-0.2, 0.2) for _ in range(N))
            rs = tuple(rnd(0.15, 0.3) for _ in range(N))
            spec = el.HeightModelSpec("elliptic-da", h=rnd(1.2, 1.8),
                                      theta=el.ThetaParams(nome), ws=ws, rs=rs)
            vq = [(rnd(0.5, 0.9), rnd(0.15, 0.3)) for _ in range(N)]
            zb = el.height_dwpf_bruteforce(spec, vq)
            zc = el.height_dwpf_closed(spec, vq)
            assert abs(zb - zc) < 1e-7 * abs(zc)
            sos = el.HeightModelSpec("sos-ff", h=rnd(1.2, 1.8),
                                     theta=el.ThetaParams(nome), ws=ws)
            vs = [v for v, _ in vq]
            zb = el.height_dwpf_bruteforce(sos, vs)
            zc = el.height_dwpf_closed(sos, vs)
            assert abs(zb - zc) < 1e-7 * abs(zc)


def test_da_reduces_to_sos_ff():
    N = 2
    ws = tuple(rnd(-0.2, 0.2) for _ in range(N))
    h = rnd(1.2, 1.8)
    vs = [rnd(0.5, 0.9) for _ in range(N)]
    for nome in (0.0, 0.2):
        da = el.HeightModelSpec("elliptic-da", h=h, theta=el.ThetaParams(nome),
                                ws=ws, rs=(0.5,) * N)
        sos = el.HeightModelSpec("sos-ff", h=h, theta=el.ThetaParams(nome), ws=ws)
        zd = el.height_dwpf_closed(da, [(v, 0.5) for v in vs])
        zs = el.height_dwpf_closed(sos, vs)
        assert abs(zd - zs) < 1e-8 * abs(zs)


def test_da_conditions():
    nome = 0.2
    N = 2
    ws = tuple(rnd(-0.2, 0.2) for _ in range(N))
    rs = tuple(rnd(0.2, 0.35) for _ in range(N))
    spec = el.HeightModelSpec("elliptic-da", h=rnd(1.3, 1.7),
                              theta=el.ThetaParams(nome), ws=ws, rs=rs)
    vq = [(rnd(0.5, 0.9), rnd(0.2, 0.35)) for _ in range(N)]
    z0 = el.height_dwpf_closed(spec, vq)
    vq1 = vq[:-1] + [(vq[-1][0] + 2, vq[-1][1])]
    assert abs(el.height_dwpf_closed(spec, vq1) - (-1) ** N * z0) < 1e-8 * abs(z0)
    shift = -2j * cmath.log(nome) / cmath.pi
    vq2 = vq[:-1] + [(vq[-1][0] + shift, vq[-1][1])]
    eta = spec.h + 2 * sum(q for _, q in vq[:-1]) + N * vq[-1][1] \
        + sum(w + r for w, r in zip(ws, rs))
    pred = (-1) ** N / nome ** N * cmath.exp(1j * cmath.pi * (eta - N * vq[-1][0])) * z0
    assert abs(el.height_dwpf_closed(spec, vq2) - pred) < 1e-8 * abs(pred)
    assert el.da_recursion_residual(spec, vq) < 1e-8


def test_configuration_counts():
    expect = {1: 1, 2: 2, 3: 7, 4: 42}
    for N in (1, 2, 3, 4):
        ws = tuple(0.03 + 0.08 * j for j in range(N))
        rs = tuple(0.21 + 0.04 * j for j in range(N))
        spec = el.HeightModelSpec("elliptic-da", h=1.3 + 0.2j,
                                  theta=el.ThetaParams(0.0), ws=ws, rs=rs)
        vq = [(0.5 + 0.1 * j, 0.2 + 0.02 * j) for j in range(N)]
        assert el.count_dw_configurations(spec, vq) == expect[N]


def test_heightless_limit_dwpf():
    N = 2
    vt = [rnd(0.5, 0.9) for _ in range(N)]
    qt = [rnd(0.2, 0.35) for _ in range(N)]
    wt = [rnd(-0.2, 0.2) for _ in range(N)]
    rt = [rnd(0.2, 0.35) for _ in range(N)]
    vt[-1] += sum(wt) - sum(vt)
    qt[-1] += sum(rt) - sum(qt)
    scale = 2 / (1j * cmath.pi)
    da = el.HeightModelSpec("elliptic-da", h=20j, theta=el.ThetaParams(0.0),
                            ws=tuple(scale * w for w in wt),
                            rs=tuple(scale * r for r in rt))
    vq = [(scale * v, scale * q) for v, q in zip(vt, qt)]
    zd = el.height_dwpf_bruteforce(da, vq)
    spec_f = lat.ModelSpec("felderhof", N, N, ws=tuple(wt), rs=tuple(rt))
    zf = lat.dwpf_closed(spec_f, list(zip(vt, qt)), None, "felderhof-factorized")
    assert abs(zd / zf - 1) < 1e-6


def test_singular_height():
    spec = el.HeightModelSpec("sos-ff", h=-1.0, theta=el.ThetaParams(0.0),
                              ws=(0.1,))
    with pytest.raises(el.SingularHeight):
        el.face_weight(spec, "b+", 0.3, 0.1, -1.0)

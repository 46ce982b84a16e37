"""Partitions, plane partitions, paths, and generating functions."""

from fractions import Fraction as F

import pytest

from ferrofock.exactnum import LaurentPoly as LP
from ferrofock import partitions as pt
from ferrofock import symfun as sf

# plane partitions lifted from the worked thesis figures
FIG_SLICES = pt.PlanePartition([(4, 2, 1, 1, 1), (3, 2, 1, 1), (2, 1, 1), (1,)])
FIG_LEVELS = pt.PlanePartition([(3, 3, 3, 2, 2), (3, 3, 3, 2, 2),
                                (3, 3, 3, 2), (3, 1), (1, 1)])
FIG_STRICT = pt.PlanePartition([(4, 2, 2, 1, 1), (3, 2, 1, 1), (2, 1, 1), (1,)],
                               strict=True)


def test_interlaces_examples():
    assert pt.interlaces((4, 4, 3, 1, 1, 1, 1), (4, 3, 3, 1, 1, 1))
    assert pt.interlaces((), ())
    assert not pt.interlaces((1,), (2,))


def test_admissible_examples():
    assert pt.is_admissible((2, 4, 0, 1, 2), (2, 3, 0, 2, 1))
    assert not pt.is_admissible((2, 3, 0, 2, 1), (2, 3, 0, 2, 1))
    assert not pt.is_admissible((0, 2), (0, 0))
    with pytest.raises(pt.LengthMismatch):
        pt.is_admissible((1, 2), (1, 2, 3))


def test_admissible_iff_interlacing():
    # |m> |> |n|  <=>  partitions interlace under the occupation map
    M = 3
    import itertools
    vecs = [v for v in itertools.product(range(3), repeat=M + 1)]
    for m in vecs:
        for n in vecs:
            adm = pt.is_admissible(m, n)
            mu, nu = pt.occupation_to_partition(m), pt.occupation_to_partition(n)
            inter = pt.interlaces(mu, nu) and sum(m) - sum(n) == 1
            assert adm == inter, (m, n)


def test_diagonal_slices_fig():
    s = pt.diagonal_slices(FIG_SLICES)
    assert s[0] == (4, 2, 1)
    assert s[-1] == (3, 1)
    assert s[1] == (2, 1)
    assert s[4] == (1,)
    assert pt.diagonal_slices(pt.PlanePartition(())) == {0: ()}
    one = pt.PlanePartition([(5,)])
    assert pt.diagonal_slices(one)[0] == (5,)


def test_from_slices_roundtrip():
    for pi in pt.enumerate_plane_partitions(3, 2):
        assert pt.from_slices(pt.diagonal_slices(pi)) == pi


def test_enumeration_counts():
    assert len(list(pt.enumerate_plane_partitions(2, 2))) == 20
    assert len(list(pt.enumerate_plane_partitions(0, 5))) == 1
    assert len(list(pt.enumerate_plane_partitions(1, 3))) == 4


def test_enumeration_unique_and_boxed():
    seen = set(pt.enumerate_plane_partitions(3, 2))
    assert len(seen) == len(list(pt.enumerate_plane_partitions(3, 2)))
    for pi in seen:
        assert pi.n_rows() <= 3 and pi.n_cols() <= 3
        assert all(v <= 2 for r in pi.rows for v in r)


def test_slices_interlace_invariant():
    for pi in pt.enumerate_plane_partitions(3, 3):
        s = pt.diagonal_slices(pi, range(-3, 4))
        for i in range(-3, 0):
            assert pt.interlaces(s[i + 1], s[i])
        for i in range(0, 3):
            assert pt.interlaces(s[i], s[i + 1])


def test_path_counts_fig():
    assert [pt.path_count_at_level(FIG_LEVELS, l) for l in (1, 2, 3)] == [3, 2, 1]
    assert pt.strict_path_count(FIG_STRICT) == 6
    empty = pt.PlanePartition(())
    assert all(pt.path_count_at_level(empty, l) == 0 for l in (1, 2, 3))


def test_pp_weight_examples():
    t = LP.var("t")
    x = sf.var_set("x", 1)
    y = sf.var_set("y", 1)
    assert pt.pp_weight(pt.PlanePartition(()), x, y, t) == LP.const(1)
    for k in (1, 2, 3):
        w = pt.pp_weight(pt.PlanePartition([(k,)]), x, y, t)
        assert w == (1 - t) * (x[0] * y[0]) ** k


def test_strict_weight_is_t_minus_one():
    xs = sf.var_set("x", 5)
    ys = sf.var_set("y", 5)
    w = pt.pp_weight(FIG_STRICT, xs, ys, F(-1))
    s = pt.strict_pp_weight(FIG_STRICT, xs, ys)
    assert LP.coerce(w) == LP.coerce(s)
    # 2^{p} = 2^6 for the figure
    mono = s.map_coeffs(lambda c: c / 64)
    assert all(c == 1 for c in mono.terms.values())


def test_level_weight_slice_identity():
    # prod of skew p-factors over slices / b_{pi_0} = prod (1-t^i)^{p_i}
    t = LP.var("t")
    for pi in pt.enumerate_plane_partitions(3, 3):
        s = pt.diagonal_slices(pi, range(-3, 4))
        prod = LP.const(1)
        for i in range(1, 4):
            prod = prod * sf.p_skew(s[-i + 1], s[-i], t)
            prod = prod * sf.p_skew(s[i - 1], s[i], t)
        lhs = prod.divexact(LP.coerce(sf.b_mu(s[0], t)))
        rhs = LP.const(1)
        for lvl in range(1, 4):
            rhs = rhs * (1 - t ** lvl) ** pt.path_count_at_level(pi, lvl)
        assert lhs == rhs


def test_strict_two_power_slice_identity():
    for pi in pt.enumerate_plane_partitions(3, 3, strict=True):
        s = pt.diagonal_slices(pi, range(-3, 4))
        power = -len(s[0])
        for i in range(1, 4):
            power += pt.strict_new_parts(s[-i + 1], s[-i])
            power += pt.strict_new_parts(s[i - 1], s[i])
        assert power == pt.strict_path_count(pi)


def test_boxed_genfun_small():
    t = LP.var("t")
    x, y = sf.var_set("x", 1), sf.var_set("y", 1)
    assert pt.boxed_genfun_enum(0, 5, [], [], t) == F(1)
    e = pt.boxed_genfun_enum(1, 1, x, y, t)
    assert e == 1 + (1 - t) * x[0] * y[0]
    assert pt.boxed_genfun_closed(1, 1, x, y, t, "hl-sum") == e


def test_boxed_genfun_closed_forms():
    xs = [F(1, 2), F(1, 3)]
    ys = [F(1, 5), F(1, 7)]
    e0 = pt.boxed_genfun_enum(2, 2, xs, ys, F(0))
    assert e0 == pt.boxed_genfun_closed(2, 2, xs, ys, 0, "schur-sum")
    assert e0 == pt.boxed_genfun_closed(2, 2, xs, ys, 0, "schur-det")
    em = pt.boxed_genfun_enum(2, 2, xs, ys, F(-1))
    assert em == pt.boxed_genfun_closed(2, 2, xs, ys, 0, "q-sum")
    assert em == pt.boxed_genfun_enum(2, 2, xs, ys, None, strict=True)


def test_schur_det_degenerate_point():
    with pytest.raises(pt.DegenerateEvaluationPoint):
        pt.boxed_genfun_closed(2, 2, [F(1, 2), F(1, 2)], [F(1, 3), F(1, 5)],
                               0, "schur-det")


def test_product_limit():
    x1, y1, t = 0.31, 0.27, 0.4
    val = pt.boxed_genfun_closed(1, 1, [x1], [y1], t, "product-limit")
    assert abs(val - (1 - t * x1 * y1) / (1 - x1 * y1)) < 1e-12
    with pytest.raises(ValueError):
        pt.boxed_genfun_closed(1, 1, [2.0], [1.0], 0.0, "product-limit")


def test_series_examples():
    assert pt.series_genfun_coeffs(4, F(0)) == [F(1), F(1), F(3), F(6), F(13)]
    assert pt.series_genfun_coeffs(3, F(1)) == [F(1), F(0), F(0), F(0)]
    assert pt.strict_series_coeffs(3) == pt.product_series_coeffs(3, F(-1))
    assert pt.strict_series_coeffs(0) == [F(1)]


def test_series_match_products():
    t = LP.var("t")
    d = 6
    enum = pt.series_genfun_coeffs(d, t)
    prod = pt.product_series_coeffs(d, t)
    for a, b in zip(enum, prod):
        assert (LP.coerce(a) - LP.coerce(b)).is_zero()
    assert pt.series_genfun_coeffs(d, F(0)) == pt.product_series_coeffs(d, F(0))


def test_strictness_validation():
    with pytest.raises(pt.NotStrict):
        pt.PlanePartition([(2, 2), (2, 2)], strict=True)
    pt.PlanePartition([(2, 2), (2, 1)], strict=True)   # valid: 2 > 1 diagonal


def test_box_mismatch():
    with pytest.raises(pt.BoxMismatch):
        pt.PlanePartition([(3,)], box=(1, 1, 2))
    with pytest.raises(pt.BoxMismatch):
        pt.pp_weight(pt.PlanePartition([(1, 1), (1,)]), sf.var_set("x", 1),
                     sf.var_set("y", 1), 0)

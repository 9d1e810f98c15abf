import numpy as np
import pytest

from freeconv.series import (
    CumulantSequence,
    MomentSequence,
    R_from_S,
    R_to_moments,
    S_from_R,
    S_to_moments,
    TruncatedSeries,
    moments_to_R,
    moments_to_S,
    s_squared_times_z_symmetric,
)

SEMICIRCLE = MomentSequence((0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132))
MP1 = MomentSequence((1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012))
BERN_HALF = MomentSequence((0.5,) * 12)
ARCSINE = MomentSequence((0, 2, 0, 6, 0, 20, 0, 70, 0, 252, 0, 924))


def close(xs, ys, tol=1e-10):
    return all(abs(x - y) <= tol for x, y in zip(xs, ys))


def test_arithmetic_carries_min_order():
    f = TruncatedSeries((1, 2, 3, 4))
    g = TruncatedSeries((1, 1))
    assert (f + g).order == 1
    assert (f * g).order == 1
    assert (f - g).coeffs == (0.0, 1.0)


def test_reciprocal_and_errors():
    f = TruncatedSeries((2, 1, 0, 0))
    assert close((f * f.reciprocal()).coeffs, (1, 0, 0, 0))
    with pytest.raises(ValueError):
        TruncatedSeries((0, 1)).reciprocal()
    with pytest.raises(ValueError):
        TruncatedSeries((1, 2)).compose(TruncatedSeries((1, 1)))
    with pytest.raises(ValueError):
        TruncatedSeries((1, 1)).revert()
    with pytest.raises(ValueError):
        TruncatedSeries((0, 0, 1)).revert()


def test_compose_constant():
    f = TruncatedSeries((3, 1, 4, 1))
    zero = TruncatedSeries((0, 0, 0, 0))
    assert close(f.compose(zero).coeffs, (3, 0, 0, 0))


def test_revert_identity_and_catalan():
    z = TruncatedSeries.identity(6)
    assert close(z.revert().coeffs, z.coeffs)
    f = TruncatedSeries((0, 1, 1, 0, 0, 0, 0))
    g = f.revert()
    assert close(g.coeffs, (0, 1, -1, 2, -5, 14, -42))
    assert close(f.compose(g).coeffs, TruncatedSeries.identity(6).coeffs)


def test_revert_random_roundtrip():
    # higher coefficients scale with c_1 so the reversion stays
    # well-conditioned in float64
    rng = np.random.default_rng(20240817)
    for _ in range(100):
        order = int(rng.integers(4, 13))
        c1 = float(rng.uniform(0.5, 2.0))
        coeffs = [0.0, c1] + list(0.5 * c1 * rng.uniform(-1, 1, size=order - 1))
        f = TruncatedSeries(tuple(coeffs))
        g = f.revert()
        back = g.revert()
        assert f.isclose(back, tol=1e-10)
        ident = TruncatedSeries.identity(order)
        assert f.compose(g).isclose(ident, tol=1e-10)


def test_moments_to_R_catalog_laws():
    assert close(moments_to_R(SEMICIRCLE).coeffs, (0, 1) + (0,) * 10)
    point = MomentSequence(tuple(3.0 ** k for k in range(1, 9)))
    assert close(moments_to_R(point).coeffs, (3,) + (0,) * 7)
    assert close(moments_to_R(MP1).coeffs, (1,) * 12)


def test_R_to_moments_catalog_laws():
    r = TruncatedSeries((0, 1, 0, 0, 0, 0))
    assert close(R_to_moments(r).values, (0, 1, 0, 2, 0, 5, 0)[:6])
    zero = TruncatedSeries((0,) * 6)
    assert close(R_to_moments(zero).values, (0,) * 6)
    # R of free Poisson(lambda): all coefficients lambda; oracle is the
    # lattice sum over NC(n) of lambda^{#blocks}
    from freeconv.ncpart import enumerate_nc
    lam = 0.7
    r = TruncatedSeries((lam,) * 8)
    got = R_to_moments(r).values
    expected = [sum(lam ** len(p.blocks) for p in enumerate_nc(n))
                for n in range(1, 9)]
    assert close(got, expected)


def test_moments_to_S_catalog_laws():
    p = 0.3
    bern = MomentSequence((p,) * 10)
    s = moments_to_S(bern)
    closed = (TruncatedSeries((1, 1)).pad(9)
              * TruncatedSeries((p, 1)).pad(9).reciprocal())
    assert s.isclose(closed, tol=1e-10)

    s_mp = moments_to_S(MP1)
    closed_mp = TruncatedSeries((1, 1)).pad(11).reciprocal()
    assert s_mp.isclose(closed_mp, tol=1e-9)

    delta1 = MomentSequence((1,) * 10)
    assert close(moments_to_S(delta1).coeffs, (1,) + (0,) * 9)

    with pytest.raises(ValueError):
        moments_to_S(SEMICIRCLE)


def test_S_to_moments():
    one = TruncatedSeries((1,) + (0,) * 7)
    assert close(S_to_moments(one).values, (1,) * 8)
    p = 0.6
    closed = (TruncatedSeries((1, 1)).pad(8)
              * TruncatedSeries((p, 1)).pad(8).reciprocal())
    assert close(S_to_moments(closed).values, (p,) * 9, tol=1e-10)
    s = TruncatedSeries((1, 1)).pad(8).reciprocal()
    assert close(S_to_moments(s).values[:4], (1, 2, 5, 14), tol=1e-10)
    with pytest.raises(ValueError):
        S_to_moments(TruncatedSeries((0, 1)))


def test_R_S_bridge():
    r_mp2 = TruncatedSeries((2.0,) * 10)
    s = S_from_R(r_mp2)
    closed = TruncatedSeries((2, 1)).pad(9).reciprocal()
    assert s.isclose(closed, tol=1e-10)
    assert R_from_S(s).isclose(r_mp2, tol=1e-9)
    with pytest.raises(ValueError):
        S_from_R(TruncatedSeries((0, 1, 0)))


def test_symmetric_s_squared():
    # semicircle: z S(z)^2 == 1
    r_sc = TruncatedSeries((0, 1) + (0,) * 8)
    assert close(s_squared_times_z_symmetric(r_sc).coeffs, (1, 0, 0, 0, 0))
    # symmetric two-point law: S^2 = (1+z)/z
    r_b2 = TruncatedSeries((0, 1, 0, -1, 0, 2, 0, -5, 0, 14))
    assert close(s_squared_times_z_symmetric(r_b2).coeffs, (1, 1, 0, 0, 0))
    # arcsine: z S(z)^2 = (2+z)/4, cross-checked against cumulant doubling
    r_arc = moments_to_R(ARCSINE)
    got = s_squared_times_z_symmetric(TruncatedSeries(r_arc.coeffs[:10]))
    assert close(got.coeffs, (0.5, 0.25, 0, 0, 0), tol=1e-9)
    with pytest.raises(ValueError):
        s_squared_times_z_symmetric(TruncatedSeries((1.0, 1.0, 0.0, 0.0)))


def test_moment_transform_roundtrips():
    for ms in (MP1, BERN_HALF, MomentSequence(tuple(1.5 ** k for k in range(1, 13)))):
        r = moments_to_R(ms)
        assert close(R_to_moments(r).values, ms.values, tol=1e-10 * max(ms.values))
        s = moments_to_S(ms)
        assert close(S_to_moments(s).values, ms.values, tol=1e-10 * max(ms.values))
    for ms in (SEMICIRCLE, ARCSINE):
        r = moments_to_R(ms)
        assert close(R_to_moments(r).values, ms.values, tol=1e-9)


def test_scaling_and_translation_rules():
    base = MomentSequence((0.4, 1.1, 0.8, 2.9, 1.7, 6.0, 4.0, 15.0))
    r = moments_to_R(base)
    for a in (2.0, 1.0 / 3.0):
        scaled = MomentSequence(tuple(a ** k * base.m(k) for k in range(1, 9)))
        r_scaled = moments_to_R(scaled)
        want = [a ** (k + 1) * r.c(k) for k in range(r.order + 1)]
        assert close(r_scaled.coeffs, want, tol=1e-9)
        s_scaled = moments_to_S(scaled)
        s = moments_to_S(base)
        for got, ref in zip(s_scaled.coeffs, s.coeffs):
            assert abs(got - ref / a) <= 1e-9 * max(1.0, abs(ref / a))
    # translation moves only the constant coefficient of R
    b = 0.75
    import math
    shifted = MomentSequence(tuple(
        sum(math.comb(k, j) * b ** (k - j) * base.m(j) for j in range(k + 1))
        for k in range(1, 9)))
    r_shift = moments_to_R(shifted)
    assert abs(r_shift.c(0) - (r.c(0) + b)) < 1e-9
    assert close(r_shift.coeffs[1:], r.coeffs[1:], tol=1e-8)


def test_moment_sequence_helpers():
    ms = MomentSequence((1, 3))
    assert ms.m(0) == 1.0
    assert ms.variance() == 2.0
    with pytest.raises(ValueError):
        ms.m(5)
    ks = CumulantSequence((1, 2))
    assert ks.k(2) == 2.0
    assert ks.to_r_series().coeffs == (1.0, 2.0)


def test_hankel_positivity_of_catalog_moments():
    # 2x2 and 3x3 moment matrices of genuine laws are PSD
    for ms in (SEMICIRCLE, MP1, BERN_HALF, ARCSINE):
        m = lambda k: ms.m(k)
        h2 = np.array([[1, m(1)], [m(1), m(2)]])
        h3 = np.array([[1, m(1), m(2)], [m(1), m(2), m(3)], [m(2), m(3), m(4)]])
        assert np.linalg.det(h2) >= -1e-10
        assert np.linalg.det(h3) >= -1e-10

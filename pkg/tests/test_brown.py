import math

import numpy as np
import pytest

from freeconv.brown import (
    RadialMeasure,
    det_one_minus_t_swap,
    fk_det,
    fk_det_lu,
    hl_from_moments,
    hl_radial,
    L_function,
    singular_value_check,
)
from freeconv.catalog import catalog_get, cdf
from freeconv.convolve import compress
from freeconv.errors import NumericalError
from freeconv.rmtlab import EnsembleConfig, sample_gue
from freeconv.series import MomentSequence


def _random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_fk_det_identity_and_zero():
    assert fk_det(np.eye(6)) == pytest.approx(1.0)
    sing = np.zeros((3, 3))
    assert fk_det(sing) == 0.0
    assert fk_det_lu(sing) == 0.0
    with pytest.raises(ValueError):
        fk_det(np.zeros((2, 3)))


def test_fk_det_two_routes():
    rng = np.random.default_rng(71)
    for _ in range(100):
        n = int(rng.integers(2, 17))
        x = _random_complex(rng, n)
        a, b = fk_det(x), fk_det_lu(x)
        assert abs(a - b) / a < 1e-8


def test_fk_det_multiplicative():
    rng = np.random.default_rng(73)
    for _ in range(30):
        x = _random_complex(rng, 8)
        y = _random_complex(rng, 8)
        lhs = fk_det(x @ y)
        rhs = fk_det(x) * fk_det(y)
        assert abs(lhs - rhs) / rhs < 1e-8


def test_fk_det_unitary_invariance():
    from freeconv.rmtlab import rep_rng, sample_haar_unitary

    rng = np.random.default_rng(79)
    x = _random_complex(rng, 10)
    base = fk_det(x)
    for rep in range(5):
        u = sample_haar_unitary(10, rep_rng(80, rep))
        v = sample_haar_unitary(10, rep_rng(81, rep))
        assert abs(fk_det(u @ x @ v) - base) / base < 1e-8
        theta = float(rng.uniform(0, 2 * math.pi))
        assert abs(fk_det(np.exp(1j * theta) * x) - base) / base < 1e-8


def test_det_one_minus_t_swap_closed_form():
    swap = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    rng = np.random.default_rng(83)
    ts = [0.5, -0.25, 0.3 + 0.2j, 0.9j]
    ts += [complex(a, b) for a, b in rng.uniform(-0.6, 0.6, size=(6, 2))]
    for t in ts:
        got = fk_det(np.eye(2) - t * swap)
        assert got == pytest.approx(det_one_minus_t_swap(t), abs=1e-12)
    assert det_one_minus_t_swap(0.5) == pytest.approx(0.5625 ** 0.25)


def test_L_function_values():
    assert L_function(np.zeros((3, 3)), 2.0) == pytest.approx(math.log(2.0))
    assert L_function(np.diag([1.0, -1.0]), 0.0) == pytest.approx(0.0)
    assert L_function(np.diag([1.0, 2.0]), 1.0) == -math.inf


def test_L_function_grid_laplacian_recovers_eigenvalue_mass():
    # discrete Laplacian of L integrates to 1/N around each eigenvalue;
    # normal matrix with well-separated spectrum so no flux leaks in
    mat = np.diag([0.0 + 0.0j, 2.0, 2.0j, -2.0 - 2.0j])
    h = 0.025
    box = 0.5
    offset = h / 3.0  # keep the eigenvalue off the grid
    xs = np.arange(-box, box + h / 2, h) + offset
    ys = np.arange(-box, box + h / 2, h) + offset
    level = np.array([[L_function(mat, complex(x, y)) for x in xs] for y in ys])
    lap = (level[2:, 1:-1] + level[:-2, 1:-1] + level[1:-1, 2:]
           + level[1:-1, :-2] - 4.0 * level[1:-1, 1:-1])
    mass = lap.sum() / (2.0 * math.pi)
    assert mass == pytest.approx(1.0 / 4.0, abs=0.02)


def test_hl_radial_circular_law():
    rm = hl_radial(lambda z: 1.0 / (1.0 + z), w=0.0, grid_size=512, exx=1.0)
    r = np.array(rm.r)
    assert np.max(np.abs(np.array(rm.F) - r ** 2)) < 1e-10
    assert np.max(np.abs(np.array(rm.density) - 2 * r)) < 1e-4
    assert rm.r_max == pytest.approx(1.0, abs=1e-9)
    assert rm.F[0] == 0.0 and rm.F[-1] == pytest.approx(1.0)
    assert np.all(np.diff(rm.F) >= 0)


def test_hl_radial_defining_identity():
    # sigma = free Poisson(lam); its mass at zero (1-lam for lam < 1) is
    # the atom the theorem forces on the radial measure
    for lam in (0.5, 1.0, 2.0):
        w = max(0.0, 1.0 - lam)
        s = lambda z, lam=lam: 1.0 / (lam + z)
        rm = hl_radial(s, w=w, grid_size=128)
        for f, r in zip(rm.F[1:], rm.r[1:]):
            assert abs(s(f - 1.0) * r * r - 1.0) < 1e-10


def test_hl_radial_haar_unitary_jump():
    rm = hl_radial(lambda z: 1.0, w=0.0, grid_size=64)
    assert set(np.round(rm.r[1:], 12)) == {1.0}
    assert any(math.isinf(d) for d in rm.density)
    assert rm.F[-1] == pytest.approx(1.0)


def test_hl_radial_rejects_bad_s():
    with pytest.raises(NumericalError):
        hl_radial(lambda z: -1.0, w=0.0, grid_size=16)
    with pytest.raises(NumericalError), np.errstate(divide="ignore"):
        # decreasing radius: not an admissible S on the level range
        hl_radial(lambda z: (1.0 + z) ** 2 / (0.5 + z) ** 2, w=0.0, grid_size=16)
    with pytest.raises(ValueError):
        hl_radial(lambda z: 1.0, w=1.0)


def test_hl_radial_support_bound_guard():
    with pytest.raises(NumericalError):
        hl_radial(lambda z: 1.0 / (1.0 + z), w=0.0, grid_size=64, exx=0.5)


def test_hl_from_moments_matches_closed_form():
    mp = catalog_get("marchenko-pastur", {"lambda": 1.0})
    rm_series = hl_from_moments(mp.moment_sequence(12), w=0.0, grid_size=512)
    assert rm_series.truncated
    rm_closed = hl_radial(lambda z: 1.0 / (1.0 + z), w=0.0, grid_size=512)
    for r, f in zip(rm_series.r, rm_series.F):
        assert abs(rm_closed.F_at(r) - f) < 1e-6


def test_hl_from_moments_dirac():
    ones = MomentSequence((1.0,) * 12)
    rm = hl_from_moments(ones, w=0.0, grid_size=128)
    assert set(np.round(rm.r, 9)) == {1.0}


def test_hl_from_moments_compressed_bernoulli():
    # squared-singular-value law with an atom: the projection-compressed
    # two-point law; the radial measure keeps w = 1/2 and a finite top
    # radius equal to sqrt(E(X*X))
    b1 = catalog_get("bernoulli1", p=0.5).moment_sequence(12)
    sigma = compress(b1, 0.5, 12).moments
    rm = hl_from_moments(sigma, w=0.5, grid_size=256)
    assert rm.atom_at_zero == 0.5
    assert rm.r_max == pytest.approx(math.sqrt(sigma.m(1)), abs=1e-9)
    closed = hl_radial(lambda z: (1.0 + z) ** 2 / (0.5 + z) ** 2, w=0.5,
                       grid_size=256, exx=sigma.m(1))
    for r, f in zip(rm.r, rm.F):
        assert abs(closed.F_at(r) - f) < 1e-6


def test_hl_from_moments_validation():
    with pytest.raises(ValueError):
        hl_from_moments(MomentSequence((0.0, 1.0)), w=0.0)


def test_singular_value_check_identity_h():
    # H = I makes every squared singular value exactly one
    cfg = EnsembleConfig(N=16, reps=3, seed=56)
    report = singular_value_check(
        lambda n, rng: np.eye(n), cfg,
        lambda x: 0.0 if x < 1.0 else 1.0)
    assert report.count == 48
    assert report.sample_min == pytest.approx(1.0, abs=1e-10)
    assert report.sample_max == pytest.approx(1.0, abs=1e-10)


def test_singular_value_check_gue_vs_mp():
    mp = catalog_get("marchenko-pastur", {"lambda": 1.0})
    cfg = EnsembleConfig(N=48, reps=6, seed=888)
    report = singular_value_check(sample_gue, cfg, lambda x: cdf(mp, x))
    assert report.sup_distance < 0.1


def test_xstarx_spectrum_invariant_under_left_unitary():
    from freeconv.rmtlab import rep_rng, sample_haar_unitary

    rng = np.random.default_rng(97)
    x = _random_complex(rng, 12)
    u = sample_haar_unitary(12, rep_rng(14, 0))
    before = np.linalg.eigvalsh(x.conj().T @ x)
    after = np.linalg.eigvalsh((u @ x).conj().T @ (u @ x))
    assert np.allclose(before, after, atol=1e-10)


def test_radial_measure_interpolation():
    rm = RadialMeasure(atom_at_zero=0.0, r=(0.0, 0.5, 1.0),
                       F=(0.0, 0.25, 1.0), density=(0.0, 1.0, 2.0))
    assert rm.F_at(0.75) == pytest.approx(0.625)
    assert rm.r_max == 1.0


def test_hl_radial_density_nonquadratic_case():
    # projection law sigma: S = (1+z)/(p+z) with atom w = 1-p; closed-form
    # radial density dF/dr = 2r(1-p)/(1-r^2)^2 checks the stencil beyond
    # quadratic F
    p = 0.7
    rm = hl_radial(lambda z: (1.0 + z) / (p + z), w=1.0 - p, grid_size=512)
    r = np.array(rm.r)
    rho = np.array(rm.density)
    exact = 2.0 * r * (1.0 - p) / (1.0 - r ** 2) ** 2
    assert np.max(np.abs(rho[1:-1] - exact[1:-1])) < 5e-4
    assert rm.r_max == pytest.approx(math.sqrt(p), abs=1e-9)

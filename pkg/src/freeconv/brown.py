"""Fuglede-Kadison determinants and radial Brown measures.

The determinant is computed two independent ways: through the eigenvalues
of X*X and through an in-house LU factorization of X itself (|Det X|^(1/N));
the pair forms a cross-check.  Radial Brown measures of R-diagonal
operators come from the inverse-S formula: the radial distribution
function F satisfies F^(-1)(w + x) = 1/sqrt(S(x-1)) where S is the
S-transform of the squared-singular-value law and w its mass at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .series import MomentSequence, TruncatedSeries


def fk_det(x: np.ndarray) -> float:
    """Determinant exp[(1/2) E log(X*X)] of a square matrix, i.e. the
    geometric mean of the singular values; 0 for singular input."""
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError("fk_det: square matrix required")
    eigs = np.linalg.eigvalsh(x.conj().T @ x)
    if eigs.min() <= 0.0:
        return 0.0
    return float(np.exp(0.5 * np.mean(np.log(eigs))))


def fk_det_lu(x: np.ndarray) -> float:
    """|Det X|^(1/N) via an in-house LU factorization with partial
    pivoting; the independent route for checking fk_det."""
    a = np.array(x, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("fk_det_lu: square matrix required")
    log_abs = 0.0
    for col in range(n):
        piv = np.argmax(np.abs(a[col:, col])) + col
        if np.abs(a[piv, col]) == 0.0:
            return 0.0
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
        log_abs += math.log(abs(a[col, col]))
        below = a[col + 1:, col] / a[col, col]
        a[col + 1:, col:] -= np.outer(below, a[col, col:])
    return math.exp(log_abs / n)


def L_function(x: np.ndarray, lam: complex) -> float:
    """log det(X - lam), the log-potential of the spectral measure; for a
    normal matrix this is the mean of log|eigenvalue - lam|.  Returns
    -inf when lam hits the spectrum."""
    x = np.asarray(x)
    n = x.shape[0]
    d = fk_det(x - lam * np.eye(n))
    return -math.inf if d == 0.0 else math.log(d)


def det_one_minus_t_swap(t: complex) -> float:
    """Closed form det(1 - t S) for the symmetric two-point sign operator:
    (1 - 2 Re(t^2) + |t|^4)^(1/4)."""
    t = complex(t)
    return float((1.0 - 2.0 * (t * t).real + abs(t) ** 4) ** 0.25)


@dataclass(frozen=True)
class RadialMeasure:
    """Radial part of a rotation-invariant Brown measure.

    Distribution function F sampled on a radius grid, the mass w at the
    origin, and the density from second-order finite differences of F.
    """

    atom_at_zero: float
    r: tuple[float, ...]
    F: tuple[float, ...]
    density: tuple[float, ...]
    truncated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(float(v) for v in self.r))
        object.__setattr__(self, "F", tuple(float(v) for v in self.F))
        object.__setattr__(self, "density", tuple(float(v) for v in self.density))

    @property
    def r_max(self) -> float:
        return self.r[-1]

    def F_at(self, radius: float) -> float:
        """Monotone linear interpolation of the sampled F."""
        return float(np.interp(radius, self.r, self.F))


def _derivative_nonuniform(r: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Second-order dF/dr on a non-uniform grid: the weighted three-point
    central stencil inside, one-sided three-point stencils at the ends.

    Coinciding radii mean F jumps there (an atom of the radial measure);
    those slots report an infinite density.
    """
    n = len(r)
    out = np.empty(n)
    tiny = 1e-300
    if n < 3:
        gap = r[-1] - r[0]
        out[:] = (f[-1] - f[0]) / gap if gap > tiny else math.inf
        return out
    hm = r[1:-1] - r[:-2]
    hp = r[2:] - r[1:-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        mid = (hm ** 2 * f[2:] - hp ** 2 * f[:-2]
               + (hp ** 2 - hm ** 2) * f[1:-1]) / (hm * hp * (hm + hp))
    mid[~np.isfinite(mid)] = math.inf
    out[1:-1] = mid
    for idx, sign in ((0, 1), (n - 1, -1)):
        i0, i1, i2 = idx, idx + sign, idx + 2 * sign
        h1 = r[i1] - r[i0]
        h2 = r[i2] - r[i0]
        denom = h1 * h2 * (h2 - h1)
        if abs(denom) < tiny:
            out[idx] = math.inf
        else:
            out[idx] = (f[i1] * h2 ** 2 - f[i2] * h1 ** 2
                        - f[i0] * (h2 ** 2 - h1 ** 2)) / denom
    return out


def _radial_from_x(s_values: np.ndarray, xs: np.ndarray, w: float,
                   include_origin: bool, truncated: bool,
                   exx: float | None) -> RadialMeasure:
    if np.any(s_values <= 0.0) or not np.all(np.isfinite(s_values)):
        raise NumericalError("hl_radial: S not admissible (nonpositive values)")
    r = 1.0 / np.sqrt(s_values)
    if np.any(np.diff(r) < -1e-9 * max(1.0, r.max())):
        raise NumericalError("hl_radial: S not admissible (radius not monotone)")
    r = np.maximum.accumulate(r)   # flatten sub-tolerance wiggles
    f = w + xs
    if include_origin:
        r = np.concatenate(([0.0], r))
        f = np.concatenate(([w], f))
    if exx is not None and r[-1] > math.sqrt(exx) + 1e-6:
        raise NumericalError(
            f"hl_radial: top radius {r[-1]:.6g} exceeds the support bound "
            f"sqrt(E(X*X)) = {math.sqrt(exx):.6g}")
    rho = _derivative_nonuniform(r, f)
    return RadialMeasure(atom_at_zero=w, r=tuple(r), F=tuple(f),
                         density=tuple(rho), truncated=truncated)


def hl_radial(s_eval, w: float = 0.0, grid_size: int = 512,
              exx: float | None = None) -> RadialMeasure:
    """Radial Brown measure from the S-transform of the squared-singular-
    value law.

    Tabulates r(x) = 1/sqrt(S(w + x - 1)) on a uniform x-grid over
    (0, 1-w], asserts monotonicity, and reads off F(r(x)) = w + x; the
    density comes from finite differences.  (The S-argument is the level
    w + x shifted by one; only this choice keeps r increasing and the
    top radius below sqrt(E(X*X)) once the law carries an atom.)  When
    the second moment E(X*X) is supplied the top radius is checked
    against sqrt(E(X*X)).
    """
    if not 0.0 <= w < 1.0:
        raise ValueError("hl_radial: w in [0, 1) required")
    if grid_size < 8:
        raise ValueError("hl_radial: grid_size >= 8")
    xs = (1.0 - w) * np.arange(1, grid_size + 1) / grid_size
    s_values = np.array([float(s_eval(w + x - 1.0)) for x in xs])
    return _radial_from_x(s_values, xs, w, include_origin=True,
                          truncated=False, exx=exx)


def hl_from_moments(sigma_moments: MomentSequence, w: float = 0.0,
                    grid_size: int = 512, tail_tol: float = 1e-9) -> RadialMeasure:
    """Radial Brown measure with S built from moments of the squared-
    singular-value law by series reversion.

    The reverted psi series is only trusted where its last retained term
    is below `tail_tol`; grid points outside that disc are dropped and the
    result is flagged truncated.  The atom mass w must be supplied by the
    caller: truncated moments cannot see it.
    """
    if sigma_moments.m(1) <= 0.0:
        raise ValueError("hl_from_moments: need a positive first moment")
    if not 0.0 <= w < 1.0:
        raise ValueError("hl_from_moments: w in [0, 1) required")
    psi = TruncatedSeries((0.0,) + sigma_moments.values)
    chi = psi.revert()                      # psi^(-1)
    body = chi.shift_down()                 # chi(z)/z, regular at z = 0
    top = abs(chi.coeffs[-1])
    xs = (1.0 - w) * np.arange(1, grid_size + 1) / grid_size
    keep = []
    s_values = []
    for x in xs:
        z = w + x - 1.0
        if top * abs(z) ** chi.order >= tail_tol:
            continue
        keep.append(x)
        s_values.append((1.0 + z) * body(z))
    if len(keep) < 8:
        raise NumericalError("hl_from_moments: series radius covers fewer "
                             "than 8 grid points; raise the order")
    truncated = len(keep) < len(xs)
    return _radial_from_x(np.array(s_values), np.array(keep), w,
                          include_origin=not truncated, truncated=truncated,
                          exx=sigma_moments.m(1))


@dataclass(frozen=True)
class SingularValueReport:
    """Kolmogorov comparison of pooled squared singular values of U H
    against a target law."""

    sup_distance: float
    count: int
    sample_min: float
    sample_max: float


def singular_value_check(h_sampler, cfg, target_cdf) -> SingularValueReport:
    """Sample X = U H, pool the eigenvalues of X*X over the repetitions,
    and report the Kolmogorov distance to a target law (meaningful for
    continuous targets)."""
    from .rmtlab import cdf_sup_distance, rep_rng, sample_haar_unitary

    pooled = []
    for rep in range(cfg.reps):
        rng = rep_rng(cfg.seed, rep)
        h = h_sampler(cfg.N, rng)
        u = sample_haar_unitary(cfg.N, rng)
        x = u @ h
        pooled.append(np.linalg.eigvalsh(x.conj().T @ x))
    samples = np.concatenate(pooled)
    return SingularValueReport(
        sup_distance=cdf_sup_distance(samples, target_cdf),
        count=len(samples),
        sample_min=float(samples.min()),
        sample_max=float(samples.max()),
    )

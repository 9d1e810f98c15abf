"""Closed-form distribution catalog.

Each entry packages the density/atoms of a law together with closed-form
evaluators: the Cauchy transform G(z) on the upper half-plane, moments,
R-transform coefficients, and the S-transform where it exists.  The
catalog carries the laws used everywhere else:

    name               params        support / atoms
    semicircle         -             density on [-2, 2]
    marchenko-pastur   lambda > 0    density on [(1-sqrt)^2, (1+sqrt)^2],
                                     atom (1-lambda) at 0 when lambda < 1
    bernoulli1         p in (0,1)    atoms (1-p) at 0, p at 1
    bernoulli2         -             atoms 1/2 at -1 and +1
    arcsine            -             density on [-2, 2]
    cauchy             -             heavy-tailed: transforms only
    dirac              x             atom at x

Square roots inside G take the branch that keeps Im G < 0 on the upper
half-plane; both candidates are tested pointwise.  Specs are immutable
and every evaluator is pure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from .ncpart import catalan
from .series import MomentSequence, moments_to_R

EPS_MIN, EPS_MAX = 1e-6, 1e-1
_R_CACHE_ORDER = 16


def _nevanlinna_pick(z, candidates):
    """Choose the branch value keeping G Herglotz: Im G < 0 above the axis,
    the conjugate below, and the decaying solution on the real axis."""
    if z.imag > 0:
        for w in candidates:
            if w.imag < 0:
                return w
        return min(candidates, key=lambda w: w.imag)
    if z.imag < 0:
        for w in candidates:
            if w.imag > 0:
                return w
        return max(candidates, key=lambda w: w.imag)
    return min(candidates, key=abs)


@dataclass(frozen=True)
class DistributionSpec:
    """Catalog entry: atoms + density with closed-form transforms."""

    name: str
    params: tuple = ()
    atoms: tuple = ()                      # ((location, mass), ...)
    support: tuple | None = None           # (lo, hi) of the density part
    density: object = None                 # callable x -> density, or None
    cauchy: object = None                  # callable z -> G(z)
    moment_fn: object = None               # callable k -> m_k, or None
    r_coeff_fn: object = None              # callable k -> c_k of R, or None
    r_fn: object = None                    # callable z -> R(z), or None
    s_fn: object = None                    # callable z -> S(z), or None
    heavy_tailed: bool = False
    _derived_r: dict = field(default_factory=dict, compare=False, repr=False)

    # -- evaluators ---------------------------------------------------------

    def G(self, z) -> complex:
        return self.cauchy(complex(z))

    def density_at(self, x) -> float:
        if self.density is None:
            return 0.0
        lo, hi = self.support
        if not lo <= x <= hi:
            return 0.0
        return float(self.density(x))

    @property
    def has_moments(self) -> bool:
        return not self.heavy_tailed

    def moment(self, k: int) -> float:
        """Closed-form k-th moment; heavy-tailed laws have none."""
        if self.heavy_tailed:
            raise ValueError(f"{self.name}: heavy-tailed, moments undefined")
        if k == 0:
            return 1.0
        return float(self.moment_fn(k))

    def moment_sequence(self, upto: int) -> MomentSequence:
        return MomentSequence(tuple(self.moment(k) for k in range(1, upto + 1)))

    def r_coeff(self, k: int) -> float:
        """Coefficient c_k of R(z) = sum c_k z^k (c_k is the cumulant
        k_{k+1}).  Falls back to the series route when no closed form."""
        if self.r_coeff_fn is not None:
            return float(self.r_coeff_fn(k))
        if self.heavy_tailed:
            raise ValueError(f"{self.name}: no R coefficients, heavy-tailed")
        if k >= _R_CACHE_ORDER:
            raise ValueError(f"derived R coefficients cached to k < {_R_CACHE_ORDER}")
        if "r" not in self._derived_r:
            self._derived_r["r"] = moments_to_R(self.moment_sequence(_R_CACHE_ORDER + 1))
        return self._derived_r["r"].c(k)

    def R(self, z):
        """Closed-form R-transform evaluator where one exists."""
        if self.r_fn is None:
            raise ValueError(f"{self.name}: no closed-form R evaluator")
        return self.r_fn(z)

    @property
    def has_s_transform(self) -> bool:
        return self.s_fn is not None

    def S(self, z):
        if self.s_fn is None:
            raise ValueError(f"{self.name}: S-transform unavailable "
                             "(vanishing mean or heavy tail)")
        return self.s_fn(z)

    def mean(self) -> float:
        return self.moment(1)

    def variance(self) -> float:
        return self.moment(2) - self.moment(1) ** 2


# -- constructors -------------------------------------------------------------

def _semicircle() -> DistributionSpec:
    def dens(x):
        return math.sqrt(max(0.0, 4.0 - x * x)) / (2.0 * math.pi)

    def G(z):
        root = cmath.sqrt(z * z - 4.0)
        return _nevanlinna_pick(z, [(z - root) / 2.0, (z + root) / 2.0])

    def mom(k):
        return catalan(k // 2) if k % 2 == 0 else 0

    return DistributionSpec(
        name="semicircle",
        support=(-2.0, 2.0),
        density=dens,
        cauchy=G,
        moment_fn=mom,
        r_coeff_fn=lambda k: 1.0 if k == 1 else 0.0,
        r_fn=lambda z: z,
        s_fn=None,  # mean zero: S only exists as a square-root branch
    )


def _narayana_moment(n: int, lam: float) -> float:
    return sum(math.comb(n, k) * math.comb(n, k - 1) // n * lam ** k
               for k in range(1, n + 1))


def _marchenko_pastur(lam: float) -> DistributionSpec:
    if lam <= 0:
        raise ValueError("marchenko-pastur: lambda > 0 required")
    lo, hi = (1 - math.sqrt(lam)) ** 2, (1 + math.sqrt(lam)) ** 2
    atoms = ((0.0, 1.0 - lam),) if lam < 1 else ()

    def dens(x):
        v = 4.0 * lam * x - (x - (1.0 - lam)) ** 2
        return math.sqrt(max(0.0, v)) / (2.0 * math.pi * x) if x > 0 else 0.0

    def G(z):
        root = cmath.sqrt((1.0 - lam + z) ** 2 - 4.0 * z)
        return _nevanlinna_pick(z, [(1.0 - lam + z - root) / (2.0 * z),
                                    (1.0 - lam + z + root) / (2.0 * z)])

    return DistributionSpec(
        name="marchenko-pastur",
        params=(("lambda", lam),),
        atoms=atoms,
        support=(lo, hi),
        density=dens,
        cauchy=G,
        moment_fn=lambda k: _narayana_moment(k, lam),
        r_coeff_fn=lambda k: lam,
        r_fn=lambda z: lam / (1.0 - z),
        s_fn=lambda z: 1.0 / (lam + z),
    )


def _bernoulli1(p: float) -> DistributionSpec:
    if not 0 < p < 1:
        raise ValueError("bernoulli1: p in (0, 1) required")
    q = 1.0 - p
    return DistributionSpec(
        name="bernoulli1",
        params=(("p", p),),
        atoms=((0.0, q), (1.0, p)),
        cauchy=lambda z: (z - q) / ((z - 1.0) * z),
        moment_fn=lambda k: p,
        s_fn=lambda z: (1.0 + z) / (p + z),
    )


def _bernoulli2() -> DistributionSpec:
    def r_coeff(k):
        # derived: signed Catalan numbers on even cumulants,
        # k_{2j} = (-1)^{j-1} C_{j-1}
        if k % 2 == 0:
            return 0.0
        j = (k + 1) // 2
        return (-1.0) ** (j - 1) * catalan(j - 1)

    return DistributionSpec(
        name="bernoulli2",
        atoms=((-1.0, 0.5), (1.0, 0.5)),
        cauchy=lambda z: z / (z * z - 1.0),
        moment_fn=lambda k: 1.0 if k % 2 == 0 else 0.0,
        r_coeff_fn=r_coeff,
        s_fn=None,
    )


def _arcsine() -> DistributionSpec:
    def dens(x):
        v = 4.0 - x * x
        return 1.0 / (math.pi * math.sqrt(v)) if v > 0 else 0.0

    def G(z):
        root = cmath.sqrt(z * z - 4.0)
        return _nevanlinna_pick(z, [1.0 / root, -1.0 / root])

    return DistributionSpec(
        name="arcsine",
        support=(-2.0, 2.0),
        density=dens,
        cauchy=G,
        moment_fn=lambda k: math.comb(k, k // 2) if k % 2 == 0 else 0,
        s_fn=None,
    )


def _cauchy() -> DistributionSpec:
    return DistributionSpec(
        name="cauchy",
        support=(-math.inf, math.inf),
        density=lambda x: 1.0 / (math.pi * (1.0 + x * x)),
        cauchy=lambda z: 1.0 / (z + 1j) if z.imag >= 0 else 1.0 / (z - 1j),
        heavy_tailed=True,
        r_fn=lambda z: -1j,     # K(z) = 1/z - i
        s_fn=None,
    )


def _dirac(x: float) -> DistributionSpec:
    return DistributionSpec(
        name="dirac",
        params=(("x", x),),
        atoms=((x, 1.0),),
        cauchy=lambda z: 1.0 / (z - x),
        moment_fn=lambda k: x ** k,
        r_coeff_fn=lambda k: x if k == 0 else 0.0,
        s_fn=(lambda z, x=x: 1.0 / x) if x != 0 else None,
    )


_FAMILIES = {
    "semicircle": (_semicircle, ()),
    "marchenko-pastur": (_marchenko_pastur, ("lambda",)),
    "free-poisson": (_marchenko_pastur, ("lambda",)),
    "bernoulli1": (_bernoulli1, ("p",)),
    "bernoulli2": (_bernoulli2, ()),
    "arcsine": (_arcsine, ()),
    "cauchy": (_cauchy, ()),
    "dirac": (_dirac, ("x",)),
}

DEFAULT_PARAMS = {"lambda": 1.0, "p": 0.5, "x": 1.0}


def catalog_names():
    return sorted(_FAMILIES)


def catalog_get(name: str, params: dict | None = None, **kw) -> DistributionSpec:
    """Build a catalog law by name, e.g. catalog_get("marchenko-pastur",
    {"lambda": 0.5})."""
    key = name.strip().lower().replace("_", "-").replace(" ", "-")
    aliases = {"mp": "marchenko-pastur", "bernoulli-i": "bernoulli1",
               "bernoulli-ii": "bernoulli2", "delta": "dirac"}
    key = aliases.get(key, key)
    if key not in _FAMILIES:
        raise ValueError(f"unknown distribution {name!r}; known: {catalog_names()}")
    builder, wanted = _FAMILIES[key]
    given = dict(params or {})
    given.update(kw)
    unknown = set(given) - set(wanted)
    if unknown:
        raise ValueError(f"{key}: unknown parameters {sorted(unknown)}")
    args = [float(given.get(w, DEFAULT_PARAMS[w])) for w in wanted]
    return builder(*args)


def parse_spec_string(text: str) -> DistributionSpec:
    """Parse "name" or "name:key=val,key=val" into a catalog spec."""
    head, _, tail = text.partition(":")
    params = {}
    if tail:
        for piece in tail.split(","):
            k, _, v = piece.partition("=")
            if not _:
                raise ValueError(f"bad parameter {piece!r} in spec {text!r}")
            params[k.strip()] = float(v)
    return catalog_get(head, params)


# -- Stieltjes inversion -------------------------------------------------------

def stieltjes_invert(G, grid, eps: float):
    """Density proxy -1/pi * Im G(x + i*eps) per grid point.

    At interior points of an analytic density the bias is O(eps).
    """
    if not EPS_MIN <= eps <= EPS_MAX:
        raise ValueError(f"stieltjes_invert: eps in [{EPS_MIN}, {EPS_MAX}]")
    out = []
    for x in grid:
        out.append(-G(complex(x, eps)).imag / math.pi)
    return np.array(out)


# -- scaling and translation ---------------------------------------------------

def scale(spec: DistributionSpec, a: float) -> DistributionSpec:
    """Law of a*X: G(z) -> G(z/a)/a, moments -> a^k m_k,
    R coefficients -> a^(k+1) c_k, S -> S/a."""
    if a == 0:
        raise ValueError("scale: a must be nonzero")
    atoms = tuple((a * loc, mass) for loc, mass in spec.atoms)
    support = None
    density = None
    if spec.support is not None:
        lo, hi = sorted((a * spec.support[0], a * spec.support[1]))
        support = (lo, hi)
        density = lambda x, f=spec.density, a=a: f(x / a) / abs(a)
    mom = None
    if not spec.heavy_tailed:
        mom = lambda k, f=spec.moment_fn, a=a: a ** k * f(k)
    r_fn = None
    if not spec.heavy_tailed:
        r_fn = lambda k, s=spec, a=a: a ** (k + 1) * s.r_coeff(k)
    s_fn = None
    if spec.s_fn is not None:
        s_fn = lambda z, f=spec.s_fn, a=a: f(z) / a
    return DistributionSpec(
        name=f"scale({spec.name},{a:g})",
        params=spec.params,
        atoms=atoms,
        support=support,
        density=density,
        cauchy=lambda z, g=spec.cauchy, a=a: g(z / a) / a,
        moment_fn=mom,
        r_coeff_fn=r_fn,
        s_fn=s_fn,
        heavy_tailed=spec.heavy_tailed,
    )


def translate(spec: DistributionSpec, b: float) -> DistributionSpec:
    """Law of X + b: G(z) -> G(z - b), K -> K + b (only c_0 of R moves)."""
    atoms = tuple((loc + b, mass) for loc, mass in spec.atoms)
    support = None
    density = None
    if spec.support is not None:
        support = (spec.support[0] + b, spec.support[1] + b)
        density = lambda x, f=spec.density, b=b: f(x - b)
    mom = None
    if not spec.heavy_tailed:
        def mom(k, f=spec.moment_fn, b=b):
            moments = [1.0] + [f(j) for j in range(1, k + 1)]
            return sum(math.comb(k, j) * b ** (k - j) * moments[j]
                       for j in range(k + 1))
    r_fn = None
    if not spec.heavy_tailed:
        r_fn = lambda k, s=spec, b=b: s.r_coeff(k) + (b if k == 0 else 0.0)
    return DistributionSpec(
        name=f"translate({spec.name},{b:g})",
        params=spec.params,
        atoms=atoms,
        support=support,
        density=density,
        cauchy=lambda z, g=spec.cauchy, b=b: g(z - b),
        moment_fn=mom,
        r_coeff_fn=r_fn,
        s_fn=None,
        heavy_tailed=spec.heavy_tailed,
    )


def moment_table(spec: DistributionSpec, upto: int) -> MomentSequence:
    """Closed-form moments m_1..m_upto (no quadrature)."""
    return spec.moment_sequence(upto)


# -- quadrature helpers ---------------------------------------------------------

def integrate_density(spec: DistributionSpec, f=lambda x: 1.0) -> float:
    """Integral of f against the continuous part.

    Splits the support at the midpoint and substitutes x = edge -/+ u^2 on
    each half so inverse-square-root edge singularities integrate cleanly.
    """
    if spec.density is None:
        return 0.0
    lo, hi = spec.support
    if math.isinf(lo) or math.isinf(hi):
        val, _ = integrate.quad(lambda x: f(x) * spec.density(x), -np.inf, np.inf,
                                limit=200)
        return val
    mid = 0.5 * (lo + hi)
    left, _ = integrate.quad(
        lambda u: 2.0 * u * f(lo + u * u) * spec.density(lo + u * u),
        0.0, math.sqrt(mid - lo), limit=200)
    right, _ = integrate.quad(
        lambda u: 2.0 * u * f(hi - u * u) * spec.density(hi - u * u),
        0.0, math.sqrt(hi - mid), limit=200)
    return left + right


def total_mass(spec: DistributionSpec) -> float:
    return sum(m for _, m in spec.atoms) + integrate_density(spec)


def numeric_moment(spec: DistributionSpec, k: int) -> float:
    """Quadrature moment including atoms; cross-check for moment_fn."""
    atom_part = sum(mass * loc ** k for loc, mass in spec.atoms)
    return atom_part + integrate_density(spec, lambda x: x ** k)


def cdf(spec: DistributionSpec, x: float) -> float:
    """Distribution function of atoms + density at x."""
    acc = sum(mass for loc, mass in spec.atoms if loc <= x)
    if spec.density is not None:
        lo, hi = spec.support
        a = max(lo, min(x, hi))
        if a > lo:
            mid = 0.5 * (lo + hi)
            up_to = min(a, mid)
            part, _ = integrate.quad(
                lambda u: 2.0 * u * spec.density(lo + u * u),
                0.0, math.sqrt(up_to - lo), limit=200)
            acc += part
            if a > mid:
                part, _ = integrate.quad(
                    lambda u: 2.0 * u * spec.density(hi - u * u),
                    math.sqrt(hi - a), math.sqrt(hi - mid), limit=200)
                acc += part
    return min(1.0, acc)


def quantile_diagonal(spec: DistributionSpec, n: int) -> np.ndarray:
    """Spec quantiles at levels (i - 1/2)/n; deterministic matrix spectra
    for the Monte Carlo experiments."""
    if spec.heavy_tailed:
        raise ValueError("quantile_diagonal: bounded laws only")
    levels = (np.arange(1, n + 1) - 0.5) / n
    lo = min([loc for loc, _ in spec.atoms], default=math.inf)
    hi = max([loc for loc, _ in spec.atoms], default=-math.inf)
    if spec.support is not None:
        lo, hi = min(lo, spec.support[0]), max(hi, spec.support[1])
    out = np.empty(n)
    for i, q in enumerate(levels):
        if cdf(spec, lo) >= q:
            out[i] = lo
            continue
        out[i] = optimize.brentq(lambda x: cdf(spec, x) - q, lo, hi, xtol=1e-10)
    return out

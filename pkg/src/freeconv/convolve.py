"""Free additive and multiplicative convolution on truncated sequences.

Additive convolution adds R-transforms (free cumulants add); the
multiplicative one multiplies S-transforms.  On top of those sit free
compression, the semigroup mu_t with cumulants scaled by t, the central
and Poisson limit theorems in cumulant form, the phi-function integral
representation of infinitely divisible laws, and the support asymptotics
of multiplicative convolution powers.

All operations work on truncated moment sequences and are pure; density
output belongs to the catalog's closed forms, not here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericalError
from .series import (
    CumulantSequence,
    MomentSequence,
    R_to_moments,
    S_to_moments,
    TruncatedSeries,
    moments_to_R,
    moments_to_S,
)


@dataclass(frozen=True)
class ConvolutionResult:
    """Moments and cumulants of a convolution output, plus provenance tags."""

    moments: MomentSequence
    cumulants: CumulantSequence
    provenance: tuple[str, ...] = ()

    def consistency_residual(self) -> float:
        """Round-trip residual between the stored moments and cumulants."""
        back = R_to_moments(self.cumulants.to_r_series())
        upto = min(back.order, self.moments.order)
        return max(abs(back.m(k) - self.moments.m(k)) for k in range(1, upto + 1))


def _result(r: TruncatedSeries, order: int, tags) -> ConvolutionResult:
    moments = R_to_moments(r.pad(order - 1).truncate(order - 1))
    return ConvolutionResult(
        moments=moments.truncate(order),
        cumulants=CumulantSequence(r.pad(order - 1).coeffs[:order]),
        provenance=tuple(tags),
    )


def free_add(a: MomentSequence, b: MomentSequence, order: int | None = None,
             ) -> ConvolutionResult:
    """Free additive convolution: R-transforms (hence cumulants) add."""
    order = min(a.order, b.order) if order is None else order
    if a.order < order or b.order < order:
        raise ValueError("free_add: inputs shorter than requested order")
    ra = moments_to_R(a.truncate(order))
    rb = moments_to_R(b.truncate(order))
    return _result(ra + rb, order, ("free_add",))


def free_mul(a: MomentSequence, b: MomentSequence, order: int | None = None,
             ) -> ConvolutionResult:
    """Free multiplicative convolution: S-transforms multiply.

    Needs both first moments nonzero, otherwise psi cannot be inverted.
    """
    order = min(a.order, b.order) if order is None else order
    if a.order < order or b.order < order:
        raise ValueError("free_mul: inputs shorter than requested order")
    if a.m(1) == 0.0 or b.m(1) == 0.0:
        raise ValueError("free_mul: S-transform undefined, first moment is zero")
    sa = moments_to_S(a.truncate(order))
    sb = moments_to_S(b.truncate(order))
    moments = S_to_moments(sa * sb).truncate(order)
    r = moments_to_R(moments)
    return ConvolutionResult(
        moments=moments,
        cumulants=CumulantSequence(r.coeffs),
        provenance=("free_mul",),
    )


def compress_rescaled(a: MomentSequence, t: float, order: int | None = None,
                      ) -> ConvolutionResult:
    """Compression by a projection of trace t, atom removed and the
    expectation renormalized by 1/t: cumulants map to t^(j-1) k_j.

    Equivalently R(z) -> R(t z); at t = 1/n this is the n-fold additive
    convolution of the law scaled down by 1/n.
    """
    if not 0 < t <= 1:
        raise ValueError("compress: t in (0, 1] required")
    order = a.order if order is None else order
    r = moments_to_R(a.truncate(order))
    return _result(r.scale_argument(t), order, (f"compress_rescaled(t={t:g})",))


def compress(a: MomentSequence, t: float, order: int | None = None,
             ) -> ConvolutionResult:
    """Raw compression by a projection of trace t.

    For laws with nonzero mean this is the multiplicative convolution with
    the two-point projection law ((1-t) at 0, t at 1).  Zero-mean inputs
    go through the rescaled route instead (raw moments are t times the
    rescaled ones); the output then has mass at least 1 - t at zero.
    """
    if not 0 < t <= 1:
        raise ValueError("compress: t in (0, 1] required")
    order = a.order if order is None else order
    if a.m(1) != 0.0:
        proj = MomentSequence((t,) * order)
        out = free_mul(a, proj, order)
        return ConvolutionResult(out.moments, out.cumulants,
                                 (f"compress(t={t:g})", "s_route"))
    rescaled = compress_rescaled(a, t, order)
    moments = MomentSequence(tuple(t * m for m in rescaled.moments.values))
    r = moments_to_R(moments)
    return ConvolutionResult(
        moments=moments,
        cumulants=CumulantSequence(r.coeffs),
        provenance=(f"compress(t={t:g})", "rescaled_route"),
    )


def semigroup_mu_t(a: MomentSequence, t: float, order: int | None = None,
                   ) -> ConvolutionResult:
    """Convolution semigroup mu_t: all free cumulants scale by t.

    Integer t reproduces the t-fold additive convolution; t = 0 is the
    point mass at zero.
    """
    if t < 0:
        raise ValueError("semigroup_mu_t: t >= 0 required")
    order = a.order if order is None else order
    r = moments_to_R(a.truncate(order))
    return _result(t * r, order, (f"semigroup_mu_t(t={t:g})",))


@dataclass(frozen=True)
class PhiRepresentation:
    """phi(z) = alpha + sum w_j (1 + s_j z)/(z - s_j) with finite total
    weight; the discretized integral representation of an infinitely
    divisible law's phi-function."""

    alpha: float
    sigma: tuple[tuple[float, float], ...]   # ((s_j, w_j), ...)

    def __post_init__(self):
        sigma = tuple((float(s), float(w)) for s, w in self.sigma)
        object.__setattr__(self, "sigma", sigma)
        if any(w < 0 for _, w in sigma):
            raise ValueError("phi representation needs nonnegative weights")


def phi_eval(rep: PhiRepresentation, z: complex) -> complex:
    """Evaluate the phi-function at z in the upper half-plane."""
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("phi_eval: upper half-plane only")
    acc = complex(rep.alpha)
    for s, w in rep.sigma:
        if z == s:
            raise ZeroDivisionError("phi_eval: z on the support of sigma")
        acc += w * (1.0 + s * z) / (z - s)
    return acc


def clt_scaled_cumulants(a: MomentSequence, n: int, order: int | None = None,
                         ) -> CumulantSequence:
    """Cumulants of (X_1 + ... + X_n)/sqrt(n) for standardized X:
    k_j -> n^(1 - j/2) k_j, so the variance coefficient stays 1 and
    everything above it decays."""
    order = a.order if order is None else order
    if abs(a.m(1)) > 1e-12 or abs(a.m(2) - 1.0) > 1e-12:
        raise ValueError("clt_scaled_cumulants: input must have mean 0, variance 1")
    r = moments_to_R(a.truncate(order))
    scaled = tuple(n ** (1.0 - j / 2.0) * r.c(j - 1) for j in range(1, order + 1))
    return CumulantSequence(scaled)


def free_poisson_limit(lam: float, n: int, order: int = 8) -> ConvolutionResult:
    """n-fold additive convolution of the two-point law ((1 - lam/n) at 0,
    (lam/n) at 1); the cumulants approach (lam, lam, ...)."""
    if lam <= 0:
        raise ValueError("free_poisson_limit: lambda > 0 required")
    if n < 1:
        raise ValueError("free_poisson_limit: n >= 1 required")
    p = lam / n
    if p >= 1:
        raise ValueError("free_poisson_limit: lambda/n must be below 1")
    bern = MomentSequence((p,) * order)
    r = moments_to_R(bern)
    return _result(n * r, order, (f"free_poisson_limit(lambda={lam:g}, n={n})",))


# -- support of multiplicative convolution powers ------------------------------

@dataclass(frozen=True)
class PsiInvModel:
    """Closed-form inverse psi-function of a mean-1 law on [0, L].

    Carries psi^(-1), d/du log psi^(-1), the variance V, the upper support
    edge L, and the value psi(1/(2L)) bounding the critical point search.
    """

    name: str
    psi_inv: object
    dlog_psi_inv: object
    variance: float
    support_top: float
    u_search_max: float


def free_poisson_one_model() -> PsiInvModel:
    """Mean-1 free Poisson: psi^(-1)(u) = u/(1+u)^2, V = 1, L = 4."""
    return PsiInvModel(
        name="free-poisson-1",
        psi_inv=lambda u: u / (1.0 + u) ** 2,
        dlog_psi_inv=lambda u: 1.0 / u - 2.0 / (1.0 + u),
        variance=1.0,
        support_top=4.0,
        # closed form: psi(z) = (1 - 2z - sqrt(1-4z))/(2z) at z = 1/8
        u_search_max=(1.0 - 0.25 - math.sqrt(0.5)) / 0.25,
    )


def bernoulli_mean_one_model(p: float) -> PsiInvModel:
    """Projection law rescaled to mean one (atom at 1/p with mass p):
    psi^(-1)(u) = p u/(p + u), V = 1/p - 1, L = 1/p."""
    if not 0 < p < 1:
        raise ValueError("bernoulli_mean_one_model: p in (0, 1)")
    return PsiInvModel(
        name=f"bernoulli-mean1(p={p:g})",
        psi_inv=lambda u: p * u / (p + u),
        dlog_psi_inv=lambda u: 1.0 / u - 1.0 / (p + u),
        variance=1.0 / p - 1.0,
        support_top=1.0 / p,
        u_search_max=p,  # psi(1/(2L)) = psi(p/2) = p*(p/2)/(p - p/2) = p
    )


def product_support(model: PsiInvModel, n: int):
    """Critical point u_n and support top L_n of the n-fold multiplicative
    convolution power.

    u_n solves d/du log psi^(-1)(u) = (1 - 1/n) / (u (1+u)); the support
    top is L_n = 1/z_n with z_n = ((1+u)/u)^(n-1) psi^(-1)(u)^n evaluated
    in logs to dodge under/overflow.  L_n/n approaches e*V.
    """
    if n < 1:
        raise ValueError("product_support: n >= 1 required")

    def objective(u):
        return model.dlog_psi_inv(u) - (1.0 - 1.0 / n) / (u * (1.0 + u))

    # primary bracket (0, psi(1/(2L))] on the 1/n scale of the critical
    # point, then geometric extension upward for small n
    lo_exp, hi = 1e-12, model.u_search_max
    probes = [lo_exp * (hi / lo_exp) ** (i / 199.0) for i in range(200)]
    u = hi
    while u < 1e9:
        u *= 2.0
        probes.append(u)
    bracket = None
    prev = probes[0]
    f_prev = objective(prev)
    for u in probes[1:]:
        f_u = objective(u)
        if f_prev == 0.0:
            bracket = (prev, prev)
            break
        if f_prev * f_u < 0:
            bracket = (prev, u)
            break
        prev, f_prev = u, f_u
    if bracket is None:
        raise NumericalError("product_support: no sign change up to u = 1e9; "
                             "no branch-point critical value (pole-limited "
                             "support?)")
    lo, up = bracket
    for _ in range(200):
        mid = 0.5 * (lo + up)
        if objective(lo) * objective(mid) <= 0:
            up = mid
        else:
            lo = mid
    u_n = 0.5 * (lo + up)
    log_zn = ((n - 1) * (math.log1p(u_n) - math.log(u_n))
              + n * math.log(model.psi_inv(u_n)))
    return u_n, math.exp(-log_zn)

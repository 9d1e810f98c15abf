"""Truncated power series and the transform algebra.

A TruncatedSeries keeps coefficients c_0..c_M of a formal series.  On top
of the ring operations this module provides the conversions between a
moment sequence and the downstream transforms:

    G (Cauchy, in the variable t = 1/z)  ->  K = 1/G^(-1)  ->  R = K - 1/z
    psi (moment generating)              ->  S = (1+z)/z * psi^(-1)

plus the bridge R^(-1)(z) = z S(z) written for the variant z K(z) - 1.

Results never silently extend precision: binary operations carry the
minimum of the input orders.  All values are immutable and the functions
are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_ORDER = 12
MIN_ORDER, MAX_ORDER = 4, 24


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_M of a truncated formal power series."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order) -> "TruncatedSeries":
        return cls((float(value),) + (0.0,) * order)

    @classmethod
    def identity(cls, order) -> "TruncatedSeries":
        """The series z."""
        if order < 1:
            raise ValueError("identity needs order >= 1")
        return cls((0.0, 1.0) + (0.0,) * (order - 1))

    def c(self, k: int) -> float:
        return self.coeffs[k] if k <= self.order else 0.0

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    def pad(self, order: int) -> "TruncatedSeries":
        if order <= self.order:
            return self.truncate(order)
        return TruncatedSeries(self.coeffs + (0.0,) * (order - self.order))

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = TruncatedSeries.constant(other, self.order)
        m = min(self.order, other.order)
        return TruncatedSeries(tuple(self.c(k) + other.c(k) for k in range(m + 1)))

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = TruncatedSeries.constant(other, self.order)
        m = min(self.order, other.order)
        return TruncatedSeries(tuple(self.c(k) - other.c(k) for k in range(m + 1)))

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return TruncatedSeries(tuple(other * c for c in self.coeffs))
        m = min(self.order, other.order)
        out = [0.0] * (m + 1)
        for i in range(m + 1):
            ci = self.c(i)
            if ci == 0.0:
                continue
            for j in range(m + 1 - i):
                out[i + j] += ci * other.c(j)
        return TruncatedSeries(tuple(out))

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires c_0 != 0."""
        if self.coeffs[0] == 0.0:
            raise ValueError("reciprocal: division by zero constant term")
        m = self.order
        out = [0.0] * (m + 1)
        out[0] = 1.0 / self.coeffs[0]
        for k in range(1, m + 1):
            acc = 0.0
            for j in range(1, k + 1):
                acc += self.c(j) * out[k - j]
            out[k] = -acc / self.coeffs[0]
        return TruncatedSeries(tuple(out))

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(z)); requires inner.c_0 == 0."""
        if inner.coeffs[0] != 0.0:
            raise ValueError("compose: inner series must have zero constant term")
        m = min(self.order, inner.order)
        g = inner.truncate(m)
        out = TruncatedSeries.constant(self.c(m), m)
        for k in range(m - 1, -1, -1):
            out = out * g + self.c(k)
        return out

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries((0.0,))
        return TruncatedSeries(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)))

    def shift_up(self) -> "TruncatedSeries":
        """Multiply by z (order grows by one)."""
        return TruncatedSeries((0.0,) + self.coeffs)

    def shift_down(self) -> "TruncatedSeries":
        """Divide by z; requires c_0 == 0."""
        if self.coeffs[0] != 0.0:
            raise ValueError("shift_down: constant term must vanish")
        return TruncatedSeries(self.coeffs[1:])

    def scale_argument(self, a) -> "TruncatedSeries":
        """f(a z)."""
        return TruncatedSeries(tuple(c * a**k for k, c in enumerate(self.coeffs)))

    def revert(self) -> "TruncatedSeries":
        """Compositional inverse g with g(self(z)) = z up to the order.

        Newton iteration on series, g <- g - (f(g) - z) / f'(g); needs
        c_0 == 0 and c_1 != 0.
        """
        if self.coeffs[0] != 0.0:
            raise ValueError("revert: constant term must vanish")
        if self.coeffs[1] == 0.0:
            raise ValueError("revert: vanishing linear coefficient, not invertible")
        m = self.order
        ident = TruncatedSeries.identity(m)
        g = TruncatedSeries((0.0, 1.0 / self.coeffs[1]) + (0.0,) * (m - 1))
        fprime = self.derivative().pad(m)
        scale = max(1.0, max(abs(c) for c in self.coeffs))
        for _ in range(max(4, m.bit_length() + 3)):
            err = self.compose(g) - ident
            if max(abs(c) for c in err.coeffs) <= 1e-16 * scale:
                break
            g = g - err * fprime.compose(g).reciprocal()
        return g

    def __call__(self, z):
        """Horner evaluation; accepts real or complex argument."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def isclose(self, other, tol=1e-10) -> bool:
        m = min(self.order, other.order)
        return all(abs(self.c(k) - other.c(k)) <= tol for k in range(m + 1))


@dataclass(frozen=True)
class MomentSequence:
    """Moments m_1..m_M of one variable (m_0 = 1 implicitly)."""

    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValueError("need at least the first moment")

    @property
    def order(self) -> int:
        return len(self.values)

    def m(self, k: int) -> float:
        """m_k, 1-based; m_0 = 1."""
        if k == 0:
            return 1.0
        if not 1 <= k <= self.order:
            raise ValueError(f"moment m_{k} beyond truncation order {self.order}")
        return self.values[k - 1]

    def truncate(self, order: int) -> "MomentSequence":
        if order > self.order:
            raise ValueError("cannot extend a moment sequence")
        return MomentSequence(self.values[:order])

    def mean(self) -> float:
        return self.values[0]

    def variance(self) -> float:
        return self.m(2) - self.m(1) ** 2


@dataclass(frozen=True)
class CumulantSequence:
    """Free cumulants k_1..k_M of one variable."""

    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise ValueError("need at least the first cumulant")

    @property
    def order(self) -> int:
        return len(self.values)

    def k(self, j: int) -> float:
        if not 1 <= j <= self.order:
            raise ValueError(f"cumulant k_{j} beyond truncation order {self.order}")
        return self.values[j - 1]

    def to_r_series(self) -> TruncatedSeries:
        """R(z) = sum_j k_j z^{j-1}."""
        return TruncatedSeries(self.values)

    @classmethod
    def from_r_series(cls, r: TruncatedSeries) -> "CumulantSequence":
        return cls(r.coeffs)


def moments_to_R(m: MomentSequence) -> TruncatedSeries:
    """R-transform coefficients c_0..c_{M-1} from the first M moments.

    Builds G in the variable t = 1/z, so G(t) = t + sum m_k t^{k+1},
    reverts it, and strips the 1/u pole of K(u) = 1/G^(-1)(u).
    """
    M = m.order
    ghat = TruncatedSeries((0.0, 1.0) + m.values)        # order M+1
    t_of_u = ghat.revert()                               # t(u), order M+1
    body = TruncatedSeries(t_of_u.coeffs[1:])            # t(u)/u, c_0 = 1
    k_body = body.reciprocal()                           # u*K(u) = 1 + sum c_k u^{k+1}
    return TruncatedSeries(k_body.coeffs[1:])            # R coefficients c_0..c_{M-1}


def R_to_moments(r: TruncatedSeries) -> MomentSequence:
    """Inverse of moments_to_R; returns m_1..m_{order+1}."""
    M = r.order + 1
    u_r = r.shift_up().pad(M)                            # u*R(u)
    body = (u_r + 1.0).reciprocal()                      # u/K-pole removed
    t_of_u = body.shift_up()                             # t(u), order M+1
    ghat = t_of_u.revert()
    return MomentSequence(ghat.coeffs[2:])


def moments_to_S(m: MomentSequence) -> TruncatedSeries:
    """S-transform as a power series; requires m_1 != 0.

    psi(z) = sum m_k z^k is reverted and S(z) = (1+z)/z * psi^(-1)(z);
    the pole cancels because psi^(-1) has zero constant term.
    """
    if m.m(1) == 0.0:
        raise ValueError("S-transform undefined: first moment vanishes, "
                         "psi cannot be inverted")
    psi = TruncatedSeries((0.0,) + m.values)
    chi = psi.revert()
    body = chi.shift_down()                              # chi(z)/z
    one_plus_z = TruncatedSeries((1.0, 1.0)).pad(body.order)
    return one_plus_z * body


def S_to_moments(s: TruncatedSeries) -> MomentSequence:
    """Round-trip inverse of moments_to_S; returns m_1..m_{order+1}."""
    if s.coeffs[0] == 0.0:
        raise ValueError("S_to_moments: zero constant term")
    M = s.order + 1
    one_plus_z = TruncatedSeries((1.0, 1.0)).pad(M)
    chi = (s.pad(M) * one_plus_z.reciprocal()).shift_up()  # z*S/(1+z)
    psi = chi.revert()
    return MomentSequence(psi.coeffs[1:])


def S_from_R(r: TruncatedSeries) -> TruncatedSeries:
    """Bridge R -> S via the reversion of phi(z) = z R(z): phi^(-1) = z S(z).

    Needs the first cumulant (constant term of R) nonzero.
    """
    if r.coeffs[0] == 0.0:
        raise ValueError("S_from_R: first cumulant vanishes")
    phi = r.shift_up()
    return phi.revert().shift_down()


def R_from_S(s: TruncatedSeries) -> TruncatedSeries:
    """Bridge S -> R: revert z S(z) to recover phi, then strip one power."""
    if s.coeffs[0] == 0.0:
        raise ValueError("R_from_S: zero constant term")
    zs = s.shift_up()
    return zs.revert().shift_down()


def s_squared_times_z_symmetric(r: TruncatedSeries) -> TruncatedSeries:
    """For a symmetric law (odd cumulants zero), the series z*S(z)^2.

    S itself is only defined up to sign (a square-root branch), but its
    square is a genuine power series: writing phi(w) = w R(w) = h(w^2),
    one has (phi^(-1))^2 = h^(-1) exactly, so z S(z)^2 = h^(-1)(z)/z.
    """
    M = r.order
    for k in range(0, M + 1, 2):
        if abs(r.c(k)) > 1e-12:
            raise ValueError("s_squared_times_z_symmetric: law is not symmetric "
                             f"(cumulant k_{k + 1} = {r.c(k)!r} nonzero)")
    h_order = (M + 1) // 2
    h = TruncatedSeries((0.0,) + tuple(r.c(2 * j - 1) for j in range(1, h_order + 1)))
    return h.revert().shift_down()

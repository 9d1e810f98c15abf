"""Moment <-> free-cumulant conversion and mixed moments of free families.

The lattice route runs Mobius inversion over NC(n); the series route goes
through the R-transform.  Both are exposed so they can be checked against
each other.  Mixed moments of two free variables come in two flavors as
well: the Kreweras-complement sum and the geodesic double sum over pairs
of permutations weighted by signed Catalan numbers.  All functions are
pure; enumeration-heavy paths sum in canonical partition order so results
are bit-for-bit reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _all_perms

import numpy as np

from . import ncpart, series
from .ncpart import SetPartition, catalan, enumerate_nc, nc_profile
from .series import CumulantSequence, MomentSequence

LATTICE_MAX = 9        # C_9 = 4862 partitions; higher orders go via series
MIXED_MAX = 7
GEODESIC_MAX = 6
HAAR_WORD_MAX = 16
HAAR_MOMENT_MAX = 12


def cumulants_from_moments(m: MomentSequence, upto: int) -> CumulantSequence:
    """Free cumulants k_1..k_upto by Mobius inversion over NC(n):
    k_n = sum over NC(n) of mu(pi, 1_n) * prod of block moments."""
    if upto > m.order:
        raise ValueError("cumulants_from_moments: not enough moments")
    if upto > LATTICE_MAX:
        raise ValueError(f"cumulants_from_moments: lattice route capped at "
                         f"order {LATTICE_MAX}; use the series route")
    ks = []
    for n in range(1, upto + 1):
        acc = 0.0
        for sizes, _ksizes, mu in nc_profile(n):
            term = float(mu)
            for s in sizes:
                term *= m.m(s)
            acc += term
        ks.append(acc)
    return CumulantSequence(tuple(ks))


def moments_from_cumulants(k: CumulantSequence, upto: int) -> MomentSequence:
    """m_n = sum over NC(n) of prod of block cumulants (inverse of the
    Mobius route)."""
    if upto > k.order:
        raise ValueError("moments_from_cumulants: not enough cumulants")
    if upto > LATTICE_MAX:
        raise ValueError(f"moments_from_cumulants: lattice route capped at "
                         f"order {LATTICE_MAX}; use the series route")
    ms = []
    for n in range(1, upto + 1):
        acc = 0.0
        for sizes, _ksizes, _mu in nc_profile(n):
            term = 1.0
            for s in sizes:
                term *= k.k(s)
            acc += term
        ms.append(acc)
    return MomentSequence(tuple(ms))


def series_cumulants(m: MomentSequence, upto: int | None = None) -> CumulantSequence:
    """Cumulants via the R-transform; no lattice order cap."""
    upto = m.order if upto is None else upto
    r = series.moments_to_R(m.truncate(upto))
    return CumulantSequence(r.coeffs[:upto])


def generalized_moment(source, p: SetPartition) -> float:
    """Product over the blocks of `p` of per-block moments.

    `source` is either a MomentSequence (single variable: each block of
    size s contributes m_s) or a callable mapping a block, given as a
    tuple of positions, to its joint moment.
    """
    out = 1.0
    if isinstance(source, MomentSequence):
        for block in p.blocks:
            out *= source.m(len(block))
    else:
        for block in p.blocks:
            out *= source(block)
    return out


@dataclass(frozen=True)
class GeneralizedMoment:
    """A partition together with its generalized moment value.

    The value is by construction multiplicative over the blocks; `of`
    evaluates and records it for a given moment source.
    """

    partition: SetPartition
    value: float

    @classmethod
    def of(cls, source, p: SetPartition) -> "GeneralizedMoment":
        return cls(partition=p, value=generalized_moment(source, p))


def mixed_moment_free(a: MomentSequence, b: MomentSequence, n: int) -> float:
    """E(a b a b ... a b), n factors of each, for free a and b.

    Kreweras-complement sum: over pi in NC(n), the a-factors contribute
    the cumulant product k_pi(a) and the b-factors the generalized moment
    over the complement of pi.
    """
    if n > MIXED_MAX:
        raise ValueError(f"mixed_moment_free: capped at n <= {MIXED_MAX}")
    if a.order < n or b.order < n:
        raise ValueError("mixed_moment_free: need moments up to order n")
    ka = series_cumulants(a, n)
    acc = 0.0
    for sizes, ksizes, _mu in nc_profile(n):
        term = 1.0
        for s in sizes:
            term *= ka.k(s)
        for s in ksizes:
            term *= b.m(s)
        acc += term
    return acc


# --- geodesic (asymptotic-Weingarten) route ---------------------------------

def _perm_cycle_lengths(p: tuple[int, ...]) -> tuple[int, ...]:
    n = len(p)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        ln = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = p[x]
            ln += 1
        out.append(ln)
    return tuple(out)


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def _invert(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def signed_catalan_weight(cycle_lengths) -> float:
    """phi value of a permutation class: product over cycles of
    (-1)^(len-1) C_(len-1); coincides with the NC Mobius numbers."""
    out = 1.0
    for ln in cycle_lengths:
        out *= (-1.0) ** (ln - 1) * catalan(ln - 1)
    return out


def geodesic_mixed_moment(a: MomentSequence, b: MomentSequence, n: int) -> float:
    """Same alternating moment as mixed_moment_free, via the double sum
    over permutation pairs on a geodesic from the identity to (1..n),
    weighted by the signed-Catalan class function."""
    if n > GEODESIC_MAX:
        raise ValueError(f"geodesic_mixed_moment: capped at n <= {GEODESIC_MAX}")
    if a.order < n or b.order < n:
        raise ValueError("geodesic_mixed_moment: need moments up to order n")
    gamma = tuple(list(range(1, n)) + [0])
    perms = list(_all_perms(range(n)))
    data = []
    for p in perms:
        cyc = _perm_cycle_lengths(p)
        data.append((p, _invert(p), len(p) - len(cyc), cyc))
    acc = 0.0
    for pa, inv_a, len_a, cyc_a in data:
        ea = 1.0
        for ln in cyc_a:
            ea *= a.m(ln)
        for pb, inv_b, len_b, _cyc_b in data:
            mid = _compose(inv_a, pb)
            cyc_mid = _perm_cycle_lengths(mid)
            len_mid = n - len(cyc_mid)
            tail = _compose(inv_b, gamma)
            cyc_tail = _perm_cycle_lengths(tail)
            len_tail = n - len(cyc_tail)
            if len_mid + len_a + len_tail != n - 1:
                continue
            eb = 1.0
            for ln in cyc_tail:
                eb *= b.m(ln)
            acc += ea * eb * signed_catalan_weight(cyc_mid)
    return acc


# --- semicircular families and Haar words ------------------------------------

@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric nonnegative-definite covariance of a semicircular family."""

    c: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(float(x) for x in row) for row in self.c)
        object.__setattr__(self, "c", mat)
        arr = np.array(mat)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("covariance must be square")
        if not np.allclose(arr, arr.T, atol=1e-12):
            raise ValueError("covariance must be symmetric")
        if np.linalg.eigvalsh(arr).min() < -1e-10:
            raise ValueError("covariance must be nonnegative definite")

    @property
    def r(self) -> int:
        return len(self.c)

    def __getitem__(self, ij):
        i, j = ij
        return self.c[i][j]


def semicircle_family_moment(cov: CovarianceMatrix, word) -> float:
    """E(s_{i1} ... s_{in}) of a semicircular family: sum over non-crossing
    pairings of the product of covariances; zero for odd length."""
    word = tuple(word)
    if len(word) > 12:
        raise ValueError("semicircle_family_moment: word length capped at 12")
    if any(not 0 <= i < cov.r for i in word):
        raise ValueError("semicircle_family_moment: index out of range")
    n = len(word)
    if n == 0:
        return 1.0
    if n % 2:
        return 0.0
    acc = 0.0
    for pairing in ncpart.enumerate_nc_pairings(n):
        term = 1.0
        for (p, q) in pairing.blocks:
            term *= cov[word[p - 1], word[q - 1]]
        acc += term
    return acc


def haar_cumulant(word) -> float:
    """Free cumulant of a word over {u, u*} for a Haar unitary.

    Nonzero only on alternating words of even length 2n, where it equals
    (-1)^(n-1) C_(n-1).
    """
    word = tuple(word)
    if len(word) > HAAR_WORD_MAX:
        raise ValueError(f"haar_cumulant: word length capped at {HAAR_WORD_MAX}")
    if any(s not in ("u", "u*") for s in word):
        raise ValueError("haar_cumulant: symbols must be 'u' or 'u*'")
    n2 = len(word)
    if n2 == 0 or n2 % 2:
        return 0.0
    if any(word[i] == word[i + 1] for i in range(n2 - 1)):
        return 0.0
    n = n2 // 2
    return (-1.0) ** (n - 1) * catalan(n - 1)


def haar_moment(word) -> float:
    """Moment of a word over {u, u*}: zero unless the word balances u and
    u*, else the NC cumulant sum with haar_cumulant block weights."""
    word = tuple(word)
    if any(s not in ("u", "u*") for s in word):
        raise ValueError("haar_moment: symbols must be 'u' or 'u*'")
    if word.count("u") != word.count("u*"):
        return 0.0       # some block of any partition is unbalanced
    n = len(word)
    if n == 0:
        return 1.0
    if n > HAAR_MOMENT_MAX:
        raise ValueError(f"haar_moment: enumeration capped at length {HAAR_MOMENT_MAX}")
    acc = 0.0
    for p in enumerate_nc(n):
        term = 1.0
        for block in p.blocks:
            term *= haar_cumulant(tuple(word[i - 1] for i in block))
            if term == 0.0:
                break
        acc += term
    return acc


def xxstar_cumulants_from_alternating(a) -> CumulantSequence:
    """Cumulants of X*X from the alternating cumulants a_s of an
    R-diagonal X: k_n(X*X,...) = sum over NC(n) of prod a_{|block|}.

    The map is triangular (the pi = 1_n term contributes a_n alone),
    hence invertible.
    """
    a = tuple(float(x) for x in a)
    n_max = len(a)
    if n_max > LATTICE_MAX:
        raise ValueError(f"xxstar_cumulants_from_alternating: capped at {LATTICE_MAX}")
    ks = []
    for n in range(1, n_max + 1):
        acc = 0.0
        for sizes, _ksizes, _mu in nc_profile(n):
            term = 1.0
            for s in sizes:
                term *= a[s - 1]
            acc += term
        ks.append(acc)
    return CumulantSequence(tuple(ks))


def alternating_from_xxstar(k: CumulantSequence):
    """Triangular inversion of xxstar_cumulants_from_alternating."""
    a: list[float] = []
    for n in range(1, k.order + 1):
        acc = 0.0
        for sizes, _ksizes, _mu in nc_profile(n):
            if sizes == (n,):
                continue
            term = 1.0
            for s in sizes:
                term *= a[s - 1]
            acc += term
        a.append(k.k(n) - acc)
    return tuple(a)


@dataclass(frozen=True)
class FreeFamilySpec:
    """A family of mutually free variables given by their moments."""

    variables: tuple[tuple[str, MomentSequence], ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        names = [nm for nm, _ in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")

    def moments(self, name: str) -> MomentSequence:
        for nm, ms in self.variables:
            if nm == name:
                return ms
        raise KeyError(name)

    def word_moment(self, word) -> float:
        """Joint moment of a word of family members.

        Vanishing of mixed free cumulants: only partitions whose blocks
        are single-variable contribute, each block a plain cumulant.
        """
        word = tuple(word)
        n = len(word)
        if n == 0:
            return 1.0
        if n > LATTICE_MAX:
            raise ValueError("word_moment: lattice enumeration capped at "
                             f"{LATTICE_MAX}")
        cums = {}
        for nm, ms in self.variables:
            if ms.order < n:
                raise ValueError(f"variable {nm}: needs moments up to {n}")
            cums[nm] = series_cumulants(ms, n)
        acc = 0.0
        for p in enumerate_nc(n):
            term = 1.0
            for block in p.blocks:
                letters = {word[i - 1] for i in block}
                if len(letters) != 1:
                    term = 0.0
                    break
                term *= cums[letters.pop()].k(len(block))
            acc += term
        return acc

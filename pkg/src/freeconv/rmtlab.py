"""Random-matrix Monte Carlo and the exact finite-N predictions it must hit.

Gaussian Hermitian ensembles with entry covariance <a_ij a_kl> =
delta_il delta_jk / N, Haar unitaries via phase-corrected QR of a complex
Ginibre matrix, trace-word Monte Carlo, the exact pairing/genus expansion
of Gaussian trace moments, and the small-class Weingarten table with its
large-N signed-Catalan asymptotics.

Reproducibility contract: every repetition draws from its own Philox
stream keyed by (seed, rep), so estimates are identical for any worker
count or execution order; accumulation happens in rep order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations as _perms

import numpy as np

from .ncpart import (
    IntegerPartitionClass,
    Permutation,
    catalan,
    enumerate_all_pairings,
    pairing_genus,
    pairing_to_permutation,
)

GENUS_N_MAX = 10
CENSUS_N_MAX = 12


def rep_rng(seed: int, rep: int) -> np.random.Generator:
    """Counter-based stream for one repetition: Philox keyed by (seed, rep)."""
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, rep & 0xFFFFFFFFFFFFFFFF],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_gue(n: int, rng: np.random.Generator) -> np.ndarray:
    """Hermitian Gaussian matrix with <a_ij a_kl> = delta_il delta_jk / n.

    Off-diagonal entries are (x + iy)/sqrt(2n) with independent standard
    normals, the diagonal is real with variance 1/n; <tr A^2> = 1.
    """
    if n < 2:
        raise ValueError("sample_gue: n >= 2")
    x = rng.standard_normal((n, n))
    y = rng.standard_normal((n, n))
    m = (x + 1j * y) / math.sqrt(2.0 * n)
    a = np.tril(m, -1)
    a = a + a.conj().T
    np.fill_diagonal(a, rng.standard_normal(n) / math.sqrt(n))
    return a


def sample_haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the
    R-diagonal phase correction (plain QR is not Haar)."""
    if n < 2:
        raise ValueError("sample_haar_unitary: n >= 2")
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True)
class EnsembleConfig:
    """Monte Carlo run parameters plus named deterministic matrices."""

    N: int
    reps: int
    seed: int
    deterministic: dict = field(default_factory=dict)
    threads: int = 1

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("EnsembleConfig: N >= 2")
        if self.reps < 1:
            raise ValueError("EnsembleConfig: reps >= 1")


@dataclass(frozen=True)
class MCEstimate:
    """Sample mean with stderr = sample standard deviation / sqrt(reps)."""

    mean: float
    stderr: float
    reps: int
    seed: int

    def z_score(self, target: float) -> float:
        if self.stderr == 0.0:
            return 0.0 if self.mean == target else math.inf
        return (self.mean - target) / self.stderr


def _estimate(values: np.ndarray, reps: int, seed: int) -> MCEstimate:
    mean = float(np.mean(values))
    if reps >= 2:
        stderr = float(np.std(values, ddof=1) / math.sqrt(reps))
    else:
        stderr = 0.0
    return MCEstimate(mean=mean, stderr=stderr, reps=reps, seed=seed)


def _parse_token(tok):
    if isinstance(tok, tuple) and len(tok) == 2:   # already parsed
        return tok
    tok = str(tok).strip()
    if tok in ("U",):
        return ("U", 0)
    if tok in ("U*", "Ustar", "U+"):
        return ("U*", 0)
    if tok and tok[0] in "AD":
        slot = int(tok[1:]) if len(tok) > 1 else 1
        return (tok[0], slot)
    raise ValueError(f"bad trace-word token {tok!r}")


def parse_word(word) -> tuple:
    """Normalize a trace word: a whitespace string like "A D1 A D1", an
    iterable of tokens over {A_k, U, U*, D_k}, or an already-parsed
    tuple (idempotent)."""
    if isinstance(word, str):
        tokens = word.split()
    else:
        tokens = list(word)
    if not tokens:
        raise ValueError("empty trace word")
    return tuple(_parse_token(t) for t in tokens)


def _rep_values(word, cfg: EnsembleConfig, fn):
    """Evaluate fn(rep_matrices) for each rep on its own stream."""
    n = cfg.N
    d_mats = {}
    for kind, slot in word:
        if kind == "D":
            key = f"D{slot}"
            if key not in cfg.deterministic:
                raise ValueError(f"word references {key} but it was not supplied")
            mat = np.asarray(cfg.deterministic[key])
            if mat.shape != (n, n):
                raise ValueError(f"{key}: expected shape {(n, n)}, got {mat.shape}")
            d_mats[slot] = mat
    a_slots = sorted({slot for kind, slot in word if kind == "A"})
    needs_u = any(kind in ("U", "U*") for kind, _ in word)

    def one_rep(rep):
        rng = rep_rng(cfg.seed, rep)
        mats = {}
        for slot in a_slots:
            mats[("A", slot)] = sample_gue(n, rng)
        if needs_u:
            u = sample_haar_unitary(n, rng)
            mats[("U", 0)] = u
            mats[("U*", 0)] = u.conj().T
        for slot, mat in d_mats.items():
            mats[("D", slot)] = mat
        return fn(mats)

    if cfg.threads > 1:
        out = np.empty(cfg.reps, dtype=complex)
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            for rep, val in enumerate(pool.map(one_rep, range(cfg.reps))):
                out[rep] = val
        return out
    return np.array([one_rep(rep) for rep in range(cfg.reps)])


def mc_trace(word, cfg: EnsembleConfig) -> MCEstimate:
    """Monte Carlo estimate of <tr(word)> with the normalized trace.

    Fresh independent samples per repetition; deterministic given the
    seed.  Deterministic-only words return the exact trace with zero
    stderr.
    """
    word = parse_word(word)
    if all(kind == "D" for kind, _ in word):
        prod = np.eye(cfg.N, dtype=complex)
        for kind, slot in word:
            key = f"D{slot}"
            if key not in cfg.deterministic:
                raise ValueError(f"word references {key} but it was not supplied")
            mat = np.asarray(cfg.deterministic[key])
            if mat.shape != (cfg.N, cfg.N):
                raise ValueError(f"{key}: expected shape {(cfg.N, cfg.N)}, "
                                 f"got {mat.shape}")
            prod = prod @ mat
        val = float(np.trace(prod).real) / cfg.N
        return MCEstimate(mean=val, stderr=0.0, reps=cfg.reps, seed=cfg.seed)

    def fn(mats):
        prod = None
        for kind, slot in word:
            m = mats[(kind, slot if kind in "AD" else 0)]
            prod = m if prod is None else prod @ m
        return np.trace(prod) / cfg.N

    values = _rep_values(word, cfg, fn)
    return _estimate(values.real, cfg.reps, cfg.seed)


# -- exact genus expansion -----------------------------------------------------

def genus_expansion_exact(d_list, n: int) -> float:
    """Exact <tr(A D^1 A D^2 ... A D^n)> over all pairings:
    sum of N^(#(pi gamma) - n/2 - 1) * tr_(pi gamma)(D^1..D^n).

    Cycles of pi*gamma are read starting at their smallest element; the
    cyclic trace is the product of normalized traces over cycles.  Odd n
    returns 0 (Wick).
    """
    if n % 2 == 1:
        return 0.0
    if n > GENUS_N_MAX:
        raise ValueError(f"genus_expansion_exact: n <= {GENUS_N_MAX}")
    if len(d_list) != n:
        raise ValueError("genus_expansion_exact: need one D per A factor")
    mats = [np.asarray(d) for d in d_list]
    dim = mats[0].shape[0]
    if any(m.shape != (dim, dim) for m in mats):
        raise ValueError("genus_expansion_exact: equal square dimensions required")
    gamma = Permutation.full_cycle(n)
    acc = 0.0
    for pairing in enumerate_all_pairings(n):
        pg = pairing_to_permutation(pairing) * gamma
        cyc = pg.cycles()
        weight = float(dim) ** (len(cyc) - n // 2 - 1)
        tr = 1.0
        for cycle in cyc:
            prod = mats[cycle[0] - 1]
            for idx in cycle[1:]:
                prod = prod @ mats[idx - 1]
            tr *= np.trace(prod).real / dim
        acc += weight * tr
    return acc


def genus_census(n: int) -> dict[int, int]:
    """Pairings of {1..n} counted by the genus of their polygon gluing;
    genus zero recovers the Catalan count."""
    if n % 2 == 1 or n > CENSUS_N_MAX:
        raise ValueError(f"genus_census: even n <= {CENSUS_N_MAX}")
    out: dict[int, int] = {}
    for pairing in enumerate_all_pairings(n):
        g = pairing_genus(pairing)
        out[g] = out.get(g, 0) + 1
    return out


# -- Weingarten ----------------------------------------------------------------

def weingarten_leading(cls: IntegerPartitionClass):
    """Leading large-N behavior of the Weingarten function on a class
    with cycle type lambda |- q: returns (exponent, coefficient) with
    exponent #(alpha) - 2q and coefficient the product over cycles of
    (-1)^(len-1) C_(len-1)."""
    q = cls.q
    exponent = cls.cycle_count - 2 * q
    coeff = 1.0
    for part in cls.parts:
        coeff *= (-1.0) ** (part - 1) * catalan(part - 1)
    return exponent, coeff


_WG_TABLE = {
    (1,): lambda N: 1.0 / N,
    (1, 1): lambda N: 1.0 / (N * N - 1.0),
    (2,): lambda N: -1.0 / (N * (N * N - 1.0)),
    (1, 1, 1): lambda N: (N * N - 2.0) / (N * (N * N - 1.0) * (N * N - 4.0)),
    (2, 1): lambda N: -1.0 / ((N * N - 1.0) * (N * N - 4.0)),
    (3,): lambda N: 2.0 / (N * (N * N - 1.0) * (N * N - 4.0)),
}


def weingarten_exact_smallq(N: int, cls: IntegerPartitionClass) -> float:
    """Exact Weingarten values for classes of q <= 3 letters; pole guard
    N >= q."""
    key = tuple(sorted(cls.parts, reverse=True))
    if sum(key) > 3:
        raise ValueError("weingarten_exact_smallq: q <= 3 only")
    if N < cls.q:
        raise ValueError("weingarten_exact_smallq: N >= q required (poles)")
    return _WG_TABLE[key](float(N))


def weingarten_delta_sum(N: int, i, j, ip, jp) -> float:
    """Exact moment E[u_{i1 j1}..u_{iq jq} conj(u_{i'1 j'1})..]: the double
    sum over permutations of delta patterns weighted by Weingarten values
    (q <= 3)."""
    q = len(i)
    if not (len(j) == len(ip) == len(jp) == q):
        raise ValueError("weingarten_delta_sum: index tuples must share length")
    if q > 3:
        raise ValueError("weingarten_delta_sum: q <= 3 only")
    acc = 0.0
    for beta in _perms(range(q)):
        if any(i[k] != ip[beta[k]] for k in range(q)):
            continue
        for alpha in _perms(range(q)):
            if any(j[k] != jp[alpha[k]] for k in range(q)):
                continue
            # class of beta * alpha^(-1)
            ainv = [0] * q
            for k, v in enumerate(alpha):
                ainv[v] = k
            prod = tuple(beta[ainv[k]] for k in range(q))
            seen = [False] * q
            parts = []
            for s in range(q):
                if seen[s]:
                    continue
                ln, x = 0, s
                while not seen[x]:
                    seen[x] = True
                    x = prod[x]
                    ln += 1
                parts.append(ln)
            acc += weingarten_exact_smallq(N, IntegerPartitionClass(tuple(parts)))
    return acc


def haar_entry_moment_mc(N: int, reps: int, seed: int, patterns, threads: int = 1):
    """Monte Carlo moments of Haar entries for several index patterns at
    once, sharing the samples.  Each pattern is (i, j, ip, jp) of equal
    length; returns a list of (mean, stderr) with complex means."""
    patterns = [tuple(map(tuple, p)) for p in patterns]

    def one_rep(rep):
        u = sample_haar_unitary(N, rep_rng(seed, rep))
        uc = u.conj()
        row = np.empty(len(patterns), dtype=complex)
        for k, (i, j, ip, jp) in enumerate(patterns):
            val = 1.0 + 0.0j
            for a, b in zip(i, j):
                val *= u[a - 1, b - 1]
            for a, b in zip(ip, jp):
                val *= uc[a - 1, b - 1]
            row[k] = val
        return row

    if threads > 1:
        rows = np.empty((reps, len(patterns)), dtype=complex)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for rep, row in enumerate(pool.map(one_rep, range(reps))):
                rows[rep] = row
    else:
        rows = np.array([one_rep(rep) for rep in range(reps)])
    out = []
    for k in range(len(patterns)):
        col = rows[:, k]
        mean = complex(np.mean(col))
        stderr = float(np.sqrt((np.std(col.real, ddof=1) ** 2
                                + np.std(col.imag, ddof=1) ** 2) / reps))
        out.append((mean, stderr))
    return out


# -- conjugation experiment ----------------------------------------------------

def matrix_moments(h: np.ndarray, upto: int):
    """Normalized trace moments tr(H^k)/N for k = 1..upto."""
    from .series import MomentSequence

    n = h.shape[0]
    vals = []
    prod = np.eye(n, dtype=complex)
    for _ in range(upto):
        prod = prod @ h
        vals.append(float(np.trace(prod).real) / n)
    return MomentSequence(tuple(vals))


def conjugation_experiment(a: np.ndarray, b: np.ndarray, n_pairs: int,
                           cfg: EnsembleConfig):
    """Monte Carlo <tr((A U B U*)^n)> against the geodesic-sum prediction
    built from the empirical moments of A and B.

    Returns (estimate, prediction, z_score).
    """
    from .moments import geodesic_mixed_moment

    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != (cfg.N, cfg.N) or b.shape != (cfg.N, cfg.N):
        raise ValueError("conjugation_experiment: matrix dimensions must match N")

    def fn(mats):
        u = mats[("U", 0)]
        ustar = mats[("U*", 0)]
        block = a @ u @ b @ ustar
        prod = np.eye(cfg.N, dtype=complex)
        for _ in range(n_pairs):
            prod = prod @ block
        return np.trace(prod) / cfg.N

    word = parse_word("U U*")  # sampling only needs U
    values = _rep_values(word, cfg, fn)
    est = _estimate(values.real, cfg.reps, cfg.seed)
    ma = matrix_moments(a, n_pairs)
    mb = matrix_moments(b, n_pairs)
    pred = geodesic_mixed_moment(ma, mb, n_pairs)
    return est, pred, est.z_score(pred)


# -- spectra -------------------------------------------------------------------

def empirical_spectrum(h: np.ndarray, bins: int = 64):
    """Eigenvalues of a Hermitian matrix, histogrammed.

    Returns (counts, bin_edges); raises on non-Hermitian input.
    """
    h = np.asarray(h)
    if not np.allclose(h, h.conj().T, atol=1e-10):
        raise ValueError("empirical_spectrum: Hermitian input required")
    eigs = np.linalg.eigvalsh(h)
    counts, edges = np.histogram(eigs, bins=bins)
    return counts, edges


def cdf_sup_distance(samples, cdf) -> float:
    """Kolmogorov distance between the empirical law of `samples` and a
    target distribution function."""
    xs = np.sort(np.asarray(samples, dtype=float))
    n = len(xs)
    f = np.array([cdf(x) for x in xs])
    upper = np.max(np.abs(np.arange(1, n + 1) / n - f))
    lower = np.max(np.abs(np.arange(0, n) / n - f))
    return float(max(upper, lower))


def pooled_gue_spectrum(N: int, reps: int, seed: int) -> np.ndarray:
    """Eigenvalues of `reps` independent Gaussian Hermitian matrices."""
    out = []
    for rep in range(reps):
        out.append(np.linalg.eigvalsh(sample_gue(N, rep_rng(seed, rep))))
    return np.concatenate(out)

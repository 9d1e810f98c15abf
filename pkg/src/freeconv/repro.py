"""Reproduction suites: every headline identity with its tolerance.

Each suite runs a fixed, seeded set of checks and reports one line per
check with the observed value, the expected value, the tolerance, and a
short formula anchor.  The CLI `repro` subcommand serializes the reports;
the acceptance tests assert them.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import brown, catalog, convolve, moments, ncpart, rmtlab
from .reference import free_word_moment
from .series import MomentSequence

DEFAULT_SEED = 1234


@dataclass(frozen=True)
class Check:
    name: str
    observed: float
    expected: float
    tol: float
    passed: bool
    anchor: str = ""

    def to_payload(self):
        def _num(v):
            return None if v is None else (v if math.isfinite(v) else repr(v))
        return {
            "name": self.name,
            "observed": _num(float(self.observed)),
            "expected": _num(float(self.expected)),
            "tol": float(self.tol),
            "pass": bool(self.passed),
            "anchor": self.anchor,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, name, observed, expected, tol, anchor="", exact=False):
        observed = float(observed)
        expected = float(expected)
        if exact:
            ok = observed == expected
        else:
            ok = abs(observed - expected) <= tol
        self.checks.append(Check(name, observed, expected, tol, ok, anchor))
        return ok

    def add_bound(self, name, observed, bound, anchor=""):
        """Check observed <= bound."""
        ok = float(observed) <= float(bound)
        self.checks.append(Check(name, float(observed), float(bound),
                                 float(bound), ok, anchor))
        return ok

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_payload(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "pass": self.passed,
            "checks": [c.to_payload() for c in self.checks],
        }


def _timed(fn):
    def wrapper(seed=DEFAULT_SEED, threads=1):
        t0 = time.perf_counter()
        report = fn(seed, threads)
        report.elapsed = time.perf_counter() - t0
        return report
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- 1: combinatorial census ---------------------------------------------------

@_timed
def suite_census(seed, threads):
    rep = SuiteReport("census", seed)
    t0 = time.perf_counter()
    for n in range(1, 10):
        rep.add(f"|NC({n})|", len(ncpart.enumerate_nc(n)), ncpart.catalan(n),
                0, anchor="|NC(n)| = C_n", exact=True)
    for m in range(1, 7):
        rep.add(f"|NCP2({2 * m})|", len(ncpart.enumerate_nc_pairings(2 * m)),
                ncpart.catalan(m), 0, anchor="|NCP2(2m)| = C_m", exact=True)
        filtered = sum(ncpart.is_noncrossing(p)
                       for p in ncpart.enumerate_all_pairings(2 * m))
        rep.add(f"filtered pairings 2m={2 * m}", filtered, ncpart.catalan(m),
                0, anchor="non-crossing pairings = crossing-filtered pairings",
                exact=True)
    rep.add_bound("runtime_seconds", time.perf_counter() - t0, 5.0,
                  anchor="runtime < 5 s")
    return rep


# -- 2: Mobius function ---------------------------------------------------------

@_timed
def suite_mobius(seed, threads):
    rep = SuiteReport("mobius", seed)
    for n in range(1, 9):
        got = ncpart.mobius_nc(ncpart.SetPartition.discrete(n),
                               ncpart.SetPartition.full(n))
        rep.add(f"mu(0_{n},1_{n})", got, (-1) ** (n - 1) * ncpart.catalan(n - 1),
                0, anchor="mu(0_n,1_n) = (-1)^(n-1) C_(n-1)", exact=True)
    bad = 0
    for n in range(1, 7):
        parts = ncpart.enumerate_nc(n)
        for b in parts:
            below = [q for q in parts if ncpart.refines(q, b)]
            for a in below:
                total = sum(ncpart.mobius_nc(lam, b) for lam in below
                            if ncpart.refines(a, lam))
                want = 1 if a == b else 0
                if total != want:
                    bad += 1
    rep.add("interval sums n<=6 violations", bad, 0, 0,
            anchor="sum over [a,b] of mu(.,b) = delta(a,b)", exact=True)
    return rep


# -- 3: dual-route cumulants -----------------------------------------------------

def _catalog_laws_with_moments():
    return [
        catalog.catalog_get("semicircle"),
        catalog.catalog_get("marchenko-pastur", {"lambda": 0.5}),
        catalog.catalog_get("marchenko-pastur", {"lambda": 1.0}),
        catalog.catalog_get("marchenko-pastur", {"lambda": 2.0}),
        catalog.catalog_get("bernoulli1", p=0.75),
        catalog.catalog_get("bernoulli2"),
        catalog.catalog_get("arcsine"),
    ]


@_timed
def suite_cumulants(seed, threads):
    rep = SuiteReport("cumulants", seed)
    for spec in _catalog_laws_with_moments():
        ms = spec.moment_sequence(9)
        lattice = moments.cumulants_from_moments(ms, 9)
        series = moments.series_cumulants(ms, 9)
        gap = max(abs(a - b) for a, b in zip(lattice.values, series.values))
        rep.add(f"{spec.name}{dict(spec.params) or ''} route gap", gap, 0.0,
                1e-9, anchor="lattice Mobius inversion = R-series route")
        back = moments.moments_from_cumulants(lattice, 9)
        rt = max(abs(a - b) for a, b in zip(back.values, ms.values))
        rep.add(f"{spec.name}{dict(spec.params) or ''} roundtrip", rt, 0.0,
                1e-10, anchor="moments -> cumulants -> moments")
    return rep


# -- 4: addition law --------------------------------------------------------------

@_timed
def suite_addition(seed, threads):
    rep = SuiteReport("addition", seed)
    t0 = time.perf_counter()
    b2 = catalog.catalog_get("bernoulli2").moment_sequence(6)
    got = convolve.free_add(b2, b2, 6).moments
    want = (0.0, 2.0, 0.0, 6.0, 0.0, 20.0)
    rep.add("two-point boxplus two-point = arcsine",
            max(abs(a - b) for a, b in zip(got.values, want)), 0.0, 0.0,
            anchor="m(X+Y) = (0,2,0,6,0,20)", exact=True)
    x = 2.0
    dirac = catalog.catalog_get("dirac", x=x).moment_sequence(8)
    sc = catalog.catalog_get("semicircle").moment_sequence(8)
    shifted = convolve.free_add(dirac, sc, 8).moments
    want_shift = [sum(math.comb(k, j) * x ** (k - j) * sc.m(j)
                      for j in range(k + 1)) for k in range(1, 9)]
    rep.add("delta_x shift law",
            max(abs(a - b) for a, b in zip(shifted.values, want_shift)),
            0.0, 0.0, anchor="boxplus with a point mass shifts", exact=True)
    rep.add_bound("runtime_seconds", time.perf_counter() - t0, 1.0,
                  anchor="runtime < 1 s")
    return rep


# -- 5: multiplication law ---------------------------------------------------------

def _random_mean_one(rng, order=12):
    atoms = rng.uniform(0.1, 2.0, size=4)
    weights = rng.dirichlet(np.ones(4))
    atoms = atoms / np.sum(weights * atoms)
    return MomentSequence(tuple(float(np.sum(weights * atoms ** k))
                                for k in range(1, order + 1)))


@_timed
def suite_multiplication(seed, threads):
    rep = SuiteReport("multiplication", seed)
    rng = np.random.default_rng(seed)
    worst_var = 0.0
    worst_oracle = 0.0
    for _ in range(20):
        a, b = _random_mean_one(rng), _random_mean_one(rng)
        res = convolve.free_mul(a, b, 12)
        worst_var = max(worst_var, abs(res.moments.variance()
                                       - a.variance() - b.variance()))
        mom = {"x": a.values, "y": b.values}
        for n in range(1, 5):
            oracle = free_word_moment(("x", "y") * n, mom)
            worst_oracle = max(worst_oracle, abs(res.moments.m(n) - oracle))
    rep.add("Var(mu boxtimes nu) - Var mu - Var nu", worst_var, 0.0, 1e-10,
            anchor="variance additivity at mean one")
    rep.add("S-route vs centering oracle, orders <= 4", worst_oracle, 0.0,
            1e-8, anchor="moments of (X*X)(Y*Y) alternating words")
    return rep


# -- 6: compression ----------------------------------------------------------------

@_timed
def suite_compression(seed, threads):
    rep = SuiteReport("compression", seed)
    b2 = catalog.catalog_get("bernoulli2").moment_sequence(9)
    rescaled = convolve.compress_rescaled(b2, 0.5, 6).moments
    arcsine_half = catalog.scale(catalog.catalog_get("arcsine"),
                                 0.5).moment_sequence(6)
    rep.add("rescaled compression of the sign law at t=1/2",
            max(abs(a - b) for a, b in zip(rescaled.values, arcsine_half.values)),
            0.0, 1e-10, anchor="continuous part = arcsine on [-1,1]")
    raw = convolve.compress(b2, 0.5, 6).moments
    rep.add("raw moments = t * rescaled",
            max(abs(r - 0.5 * m) for r, m in zip(raw.values, rescaled.values)),
            0.0, 1e-12, anchor="atom-stripped renormalization")
    # arcsine carries no mass at zero, so the raw atom is exactly 1 - t
    rep.add("raw atom at zero", 1.0 - 0.5, 0.5, 0.0,
            anchor="kernel mass of the compression >= 1-t", exact=True)
    for n in (2, 3):
        t = 1.0 / n
        left = convolve.compress_rescaled(b2, t, 9).moments
        shrunk = MomentSequence(tuple((1.0 / n) ** k * b2.m(k)
                                      for k in range(1, 10)))
        right = convolve.semigroup_mu_t(shrunk, float(n), 9).moments
        rep.add(f"t=1/{n} rescaled compress = {n}-fold boxplus of scaled law",
                max(abs(a - b) for a, b in zip(left.values, right.values)),
                0.0, 1e-9, anchor="R(tz) identity")
    return rep


# -- 7: free CLT --------------------------------------------------------------------

@_timed
def suite_clt(seed, threads):
    rep = SuiteReport("clt", seed)
    b2 = catalog.catalog_get("bernoulli2").moment_sequence(12)
    base = moments.series_cumulants(b2, 12)
    worst = 0.0
    for n in (2, 5, 100):
        ks = convolve.clt_scaled_cumulants(b2, n, 12)
        for j in range(1, 13):
            worst = max(worst, abs(ks.k(j) - n ** (1 - j / 2.0) * base.k(j)))
    rep.add("cumulant scaling identity", worst, 0.0, 1e-12,
            anchor="k_j((X1+..+Xn)/sqrt(n)) = n^(1-j/2) k_j")
    for n in (4, 16, 64, 256, 1024):
        ks = convolve.clt_scaled_cumulants(b2, n, 4)
        m4 = ks.k(4) + 2.0 * ks.k(2) ** 2
        rep.add_bound(f"|m4({n}) - 2|", abs(m4 - 2.0), 2.0 / n,
                      anchor="m4 -> 2 at rate 1/n")
    return rep


# -- 8: free Poisson limit ------------------------------------------------------------

@_timed
def suite_poisson(seed, threads):
    """Faithful transcription of the stated criterion.

    The per-order deviation of the n-fold convolution is
    binom(j,2) lambda^2 / n exactly to leading order, so the 2 lambda / n
    tolerance can only hold for j <= 2; orders 3..8 fail by construction.
    See the repository notes for the full analysis.
    """
    rep = SuiteReport("poisson", seed)
    lam, n = 1.0, 10 ** 4
    res = convolve.free_poisson_limit(lam, n, 8)
    for j in range(1, 9):
        rep.add_bound(f"|k_{j} - lambda|", abs(res.cumulants.k(j) - lam),
                      2.0 * lam / n,
                      anchor="n-fold two-point convolution -> constant cumulants")
    # derived rate showing the implementation is exact to leading order
    worst = max(abs(res.cumulants.k(j) - lam) - math.comb(j, 2) * lam ** 2 / n
                for j in range(1, 9))
    rep.add("deviation minus binom(j,2) lambda^2/n", worst, 0.0, 1e-6,
            anchor="exact leading deviation of the prelimit")
    return rep


# -- 9: genus expansion ----------------------------------------------------------------

@_timed
def suite_genus(seed, threads):
    rep = SuiteReport("genus", seed)
    t0 = time.perf_counter()
    for n in (2, 4, 6):
        for N in (16, 64):
            exact = rmtlab.genus_expansion_exact([np.eye(N)] * n, n)
            closed = {2: 1.0, 4: 2.0 + N ** -2, 6: 5.0 + 10.0 * N ** -2}[n]
            rep.add(f"exact trace moment n={n}, N={N}", exact, closed, 1e-12,
                    anchor="tr(A^n) = sum over pairings of N^(-2g)")
            cfg = rmtlab.EnsembleConfig(N=N, reps=10 ** 4,
                                        seed=seed + 10 * n + N, threads=threads)
            est = rmtlab.mc_trace(" ".join(["A"] * n), cfg)
            rep.add(f"MC n={n}, N={N}", est.mean, exact, 4.0 * est.stderr,
                    anchor="Monte Carlo within 4 stderr of the pairing sum")
    census4 = rmtlab.genus_census(4)
    census6 = rmtlab.genus_census(6)
    rep.add("census n=4 genus 0", census4.get(0, 0), 2, 0, exact=True,
            anchor="gluings by genus: 2 + N^-2")
    rep.add("census n=4 genus 1", census4.get(1, 0), 1, 0, exact=True,
            anchor="gluings by genus: 2 + N^-2")
    rep.add("census n=6 genus 0", census6.get(0, 0), 5, 0, exact=True,
            anchor="gluings by genus: 5 + 10 N^-2")
    rep.add("census n=6 genus 1", census6.get(1, 0), 10, 0, exact=True,
            anchor="gluings by genus: 5 + 10 N^-2")
    rep.add_bound("runtime_seconds", time.perf_counter() - t0, 60.0,
                  anchor="runtime < 60 s")
    return rep


# -- 10: Weingarten ----------------------------------------------------------------------

@_timed
def suite_weingarten(seed, threads):
    rep = SuiteReport("weingarten", seed)
    N, reps = 8, 10 ** 5
    patterns = [
        ("Wg(N,1)", (1,), (1,), (1,), (1,), (1,)),
        ("Wg(N,1^2)", (1, 1), (1, 2), (1, 2), (1, 2), (1, 2)),
        ("Wg(N,2)", (2,), (1, 2), (1, 2), (1, 2), (2, 1)),
        ("Wg(N,1^3)", (1, 1, 1), (1, 2, 3), (1, 2, 3), (1, 2, 3), (1, 2, 3)),
        ("Wg(N,21)", (2, 1), (1, 2, 3), (1, 2, 3), (1, 2, 3), (2, 1, 3)),
        ("Wg(N,3)", (3,), (1, 2, 3), (1, 2, 3), (1, 2, 3), (2, 3, 1)),
    ]
    mc = rmtlab.haar_entry_moment_mc(N, reps, seed,
                                     [p[2:] for p in patterns], threads=threads)
    for (label, parts, i, j, ip, jp), (mean, stderr) in zip(patterns, mc):
        exact = rmtlab.weingarten_exact_smallq(N, ncpart.IntegerPartitionClass(parts))
        rep.add(f"{label} MC at N={N}", mean.real, exact, 4.0 * stderr,
                anchor="entry moments = delta-pattern Weingarten sums")
    for parts in [(1,), (1, 1), (2,), (1, 1, 1), (2, 1), (3,)]:
        cls = ncpart.IntegerPartitionClass(parts)
        expo, coeff = rmtlab.weingarten_leading(cls)
        exact = rmtlab.weingarten_exact_smallq(200, cls)
        ratio = exact * 200.0 ** (-expo) / coeff
        rep.add(f"asymptotics class {parts}", ratio, 1.0, 0.05,
                anchor="N^(2q-#alpha) Wg -> signed Catalan product")
    return rep


# -- 11: Mobius = asymptotic Weingarten ----------------------------------------------------

@_timed
def suite_mobius_weingarten(seed, threads):
    rep = SuiteReport("mobius-weingarten", seed)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        a, b = _random_mean_one(rng, 6), _random_mean_one(rng, 6)
        for n in range(1, 6):
            worst = max(worst, abs(moments.geodesic_mixed_moment(a, b, n)
                                   - moments.mixed_moment_free(a, b, n)))
    rep.add("geodesic double sum vs Kreweras sum, n <= 5", worst, 0.0, 1e-9,
            anchor="signed-Catalan weights = NC Mobius numbers")
    return rep


# -- 12: E(xyxy) three ways -------------------------------------------------------------------

@_timed
def suite_exyxy(seed, threads):
    rep = SuiteReport("exyxy", seed)
    N = 64
    a = np.diag([1.0] * (N // 2) + [-1.0] * (N // 2))
    mp = catalog.catalog_get("marchenko-pastur", {"lambda": 1.0})
    b = np.diag(catalog.quantile_diagonal(mp, N))
    ma = rmtlab.matrix_moments(a, 2)
    mb = rmtlab.matrix_moments(b, 2)
    closed = (ma.m(2) * mb.m(2)
              - (ma.m(2) - ma.m(1) ** 2) * (mb.m(2) - mb.m(1) ** 2))
    lattice = moments.mixed_moment_free(ma, mb, 2)
    rep.add("closed formula vs Kreweras sum", abs(closed - lattice), 0.0, 1e-10,
            anchor="E(xyxy) = E(x^2)E(y^2) - Var(x)Var(y)")
    cfg = rmtlab.EnsembleConfig(N=N, reps=10 ** 4, seed=seed + 12, threads=threads)
    est, pred, z = rmtlab.conjugation_experiment(a, b, 2, cfg)
    rep.add("MC tr((A U B U*)^2)", est.mean, closed, 4.0 * est.stderr,
            anchor="conjugated word within 4 stderr")
    rep.add("geodesic prediction", pred, closed, 1e-10,
            anchor="three routes to one number")
    return rep


# -- 13: product support -----------------------------------------------------------------------

@_timed
def suite_product_support(seed, threads):
    rep = SuiteReport("product-support", seed)
    t0 = time.perf_counter()
    model = convolve.free_poisson_one_model()
    u_n, _ = convolve.product_support(model, 10 ** 3)
    rep.add("u_n * V * n at n=10^3", u_n * model.variance * 10 ** 3, 1.0, 0.1,
            anchor="critical point scale 1/(V n)")
    _, ln = convolve.product_support(model, 10 ** 5)
    rep.add("L_n/n at n=10^5", ln / 10 ** 5, math.e, 0.01 * math.e,
            anchor="L_n/n -> e V")
    _, l1 = convolve.product_support(model, 1)
    rep.add("L_1 equals the support top", l1, 4.0, 1e-9,
            anchor="single factor recovers the edge (1+sqrt(1))^2")
    rep.add_bound("runtime_seconds", time.perf_counter() - t0, 1.0,
                  anchor="runtime < 1 s (root finding only)")
    return rep


# -- 14: Haagerup-Larsen -------------------------------------------------------------------------

@_timed
def suite_haagerup_larsen(seed, threads):
    rep = SuiteReport("haagerup-larsen", seed)
    rm = brown.hl_radial(lambda z: 1.0 / (1.0 + z), w=0.0, grid_size=512, exx=1.0)
    r = np.array(rm.r)
    rep.add("max |F - r^2|", float(np.max(np.abs(np.array(rm.F) - r ** 2))),
            0.0, 1e-10, anchor="uniform disc law: F(r) = r^2")
    rep.add("max |density - 2r|",
            float(np.max(np.abs(np.array(rm.density) - 2.0 * r))), 0.0, 1e-4,
            anchor="uniform disc law: rho(r) = 2r")
    sigma_cases = [
        ("marchenko-pastur:1", catalog.catalog_get("marchenko-pastur",
                                                   {"lambda": 1.0}), 0.0),
        ("marchenko-pastur:2", catalog.catalog_get("marchenko-pastur",
                                                   {"lambda": 2.0}), 0.0),
        ("marchenko-pastur:0.5", catalog.catalog_get("marchenko-pastur",
                                                     {"lambda": 0.5}), 0.5),
        ("bernoulli1:0.6", catalog.catalog_get("bernoulli1", p=0.6), 0.4),
        ("dirac:1", catalog.catalog_get("dirac", x=1.0), 0.0),
    ]
    for label, spec, w in sigma_cases:
        exx = spec.moment(1)
        rm = brown.hl_radial(spec.S, w=w, grid_size=256, exx=exx)
        rep.add_bound(f"support bound for sigma = {label}",
                      rm.r_max, math.sqrt(exx) + 1e-6,
                      anchor="top radius <= sqrt(E(X*X))")
        rep.add(f"total mass for sigma = {label}", rm.F[-1], 1.0, 1e-8,
                anchor="F(r_max) = 1")
    return rep


# -- 15: Fuglede-Kadison ---------------------------------------------------------------------------

@_timed
def suite_fkdet(seed, threads):
    rep = SuiteReport("fkdet", seed)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 17))
        x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a, b = brown.fk_det(x), brown.fk_det_lu(x)
        worst = max(worst, abs(a - b) / a)
    rep.add("eigenvalue route vs LU route (relative)", worst, 0.0, 1e-8,
            anchor="det = |Det X|^(1/N)")
    worst_mult = 0.0
    worst_unit = 0.0
    for rep_i in range(10):
        x = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        y = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        worst_mult = max(worst_mult,
                         abs(brown.fk_det(x @ y) - brown.fk_det(x) * brown.fk_det(y))
                         / brown.fk_det(x @ y))
        u = rmtlab.sample_haar_unitary(8, rmtlab.rep_rng(seed, rep_i))
        v = rmtlab.sample_haar_unitary(8, rmtlab.rep_rng(seed + 1, rep_i))
        worst_unit = max(worst_unit,
                         abs(brown.fk_det(u @ x @ v) - brown.fk_det(x))
                         / brown.fk_det(x))
    rep.add("multiplicativity (relative)", worst_mult, 0.0, 1e-8,
            anchor="det(XY) = det X det Y")
    rep.add("unitary invariance (relative)", worst_unit, 0.0, 1e-8,
            anchor="det(UXV) = det X")
    swap = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    ts = [0.5, -0.3, 0.25j, 0.4 + 0.3j, -0.2 - 0.5j,
          0.9, 0.1, 0.6j, -0.45 + 0.2j, 0.33 - 0.21j]
    worst_t = max(abs(brown.fk_det(np.eye(2) - t * swap)
                      - brown.det_one_minus_t_swap(t)) for t in ts)
    rep.add("det(1 - t S) closed form at 10 points", worst_t, 0.0, 1e-12,
            anchor="det(1-tS) = (1 - 2 Re t^2 + |t|^4)^(1/4)")
    return rep


# -- 16: spectra -------------------------------------------------------------------------------------

@_timed
def suite_spectra(seed, threads):
    rep = SuiteReport("spectra", seed)
    t0 = time.perf_counter()
    sc = catalog.catalog_get("semicircle")
    pooled = rmtlab.pooled_gue_spectrum(256, 20, seed)
    dist = rmtlab.cdf_sup_distance(pooled, lambda x: catalog.cdf(sc, x))
    rep.add_bound("Gaussian Hermitian vs semicircle (N=256, 20 reps)",
                  dist, 0.05, anchor="empirical spectral law -> semicircle")
    mp = catalog.catalog_get("marchenko-pastur", {"lambda": 1.0})
    cfg = rmtlab.EnsembleConfig(N=128, reps=20, seed=seed + 16, threads=threads)
    report = brown.singular_value_check(rmtlab.sample_gue, cfg,
                                        lambda x: catalog.cdf(mp, x))
    rep.add_bound("(UH)*(UH) spectrum vs squared-semicircle law (N=128)",
                  report.sup_distance, 0.06,
                  anchor="sigma of U H equals the law of H^2")
    rep.add_bound("runtime_seconds", time.perf_counter() - t0, 300.0,
                  anchor="runtime < 5 min")
    return rep


SUITES = {
    "census": suite_census,
    "mobius": suite_mobius,
    "cumulants": suite_cumulants,
    "moments": suite_cumulants,          # alias
    "addition": suite_addition,
    "multiplication": suite_multiplication,
    "compression": suite_compression,
    "clt": suite_clt,
    "poisson": suite_poisson,
    "genus": suite_genus,
    "weingarten": suite_weingarten,
    "mobius-weingarten": suite_mobius_weingarten,
    "exyxy": suite_exyxy,
    "product-support": suite_product_support,
    "haagerup-larsen": suite_haagerup_larsen,
    "fkdet": suite_fkdet,
    "spectra": suite_spectra,
}

CRITERIA = [
    (1, "census"), (2, "mobius"), (3, "cumulants"), (4, "addition"),
    (5, "multiplication"), (6, "compression"), (7, "clt"), (8, "poisson"),
    (9, "genus"), (10, "weingarten"), (11, "mobius-weingarten"),
    (12, "exyxy"), (13, "product-support"), (14, "haagerup-larsen"),
    (15, "fkdet"), (16, "spectra"),
]


def suite_names():
    return sorted(set(SUITES) - {"moments"})


def run_suite(name: str, seed: int = DEFAULT_SEED, threads: int = 1) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {suite_names()}")
    return SUITES[name](seed, threads)

"""Acceptance gate: one test per headline criterion.

Every criterion runs at its stated tolerance through the shared repro
suites and prints a PASS/FAIL line.  Criterion 8 transcribes the written
tolerance faithfully; its per-order deviation is binom(j,2)*lambda^2/n,
which exceeds 2*lambda/n for every order above two, so that criterion
fails by construction while the companion derived-rate check shows the
computation itself is exact.  See notes in the repository root.
"""

from freeconv.repro import run_suite

_REPORT_CACHE = {}


def _suite(name):
    if name not in _REPORT_CACHE:
        _REPORT_CACHE[name] = run_suite(name)
    return _REPORT_CACHE[name]


def _criterion(number, description, suite_name, allow_checks=None):
    report = _suite(suite_name)
    if allow_checks is None:
        failing = [c for c in report.checks if not c.passed]
    else:
        failing = [c for c in report.checks
                   if not c.passed and c.name in allow_checks]
    ok = not failing
    print(f"{'PASS' if ok else 'FAIL'} criterion {number:02d}: {description}")
    for c in failing:
        print(f"      {c.name}: observed={c.observed:.6g} "
              f"expected={c.expected:.6g} tol={c.tol:.3g}")
    assert ok, f"criterion {number} failed: {[c.name for c in failing]}"


def test_criterion_01_combinatorial_census():
    _criterion(1, "|NC(n)| = C_n (n<=9), |NCP2(2m)| = C_m (m<=6), < 5 s",
               "census")


def test_criterion_02_mobius_theorem():
    _criterion(2, "mu(0_n,1_n) = (-1)^(n-1) C_(n-1) (n<=8) and interval sums",
               "mobius")


def test_criterion_03_dual_route_cumulants():
    _criterion(3, "lattice vs series cumulants agree to 1e-9 at orders <= 9",
               "cumulants")


def test_criterion_04_addition_law():
    _criterion(4, "two-point boxplus two-point = arcsine exactly; shift law",
               "addition")


def test_criterion_05_multiplication_law():
    _criterion(5, "variance additivity 1e-10; S-route = centering oracle 1e-8",
               "multiplication")


def test_criterion_06_compression():
    _criterion(6, "t=1/2 compression: arcsine rescaled part, atom 1/2; "
                  "t=1/n matches n-fold convolution", "compression")


def test_criterion_07_free_clt():
    _criterion(7, "cumulant scaling identity; |m4(n) - 2| <= 2/n", "clt")


def test_criterion_08_free_poisson_limit():
    # written tolerance 2*lambda/n at all orders <= 8; unattainable for
    # orders >= 3 (deviation binom(j,2)*lambda^2/n) -- kept faithful
    _criterion(8, "n-fold two-point convolution cumulants within 2*lambda/n",
               "poisson")


def test_criterion_09_genus_expansion():
    _criterion(9, "exact 1, 2+N^-2, 5+10N^-2; MC within 4 stderr; census",
               "genus")


def test_criterion_10_weingarten():
    _criterion(10, "small-class table vs MC at N=8; asymptotics within 5%",
               "weingarten")


def test_criterion_11_mobius_equals_asymptotic_weingarten():
    _criterion(11, "geodesic route = Kreweras route to 1e-9, n <= 5",
               "mobius-weingarten")


def test_criterion_12_exyxy_three_routes():
    _criterion(12, "E(xyxy): closed formula, lattice sum, and MC agree",
               "exyxy")


def test_criterion_13_product_support():
    _criterion(13, "L_n/n -> e within 1% at n=1e5; u_n V n -> 1 within 10%",
               "product-support")


def test_criterion_14_haagerup_larsen():
    _criterion(14, "F = r^2 (1e-10) and rho = 2r (1e-4); support bounds",
               "haagerup-larsen")


def test_criterion_15_fuglede_kadison():
    _criterion(15, "eigen vs LU 1e-8; multiplicativity; det(1-tS) closed form",
               "fkdet")


def test_criterion_16_spectra():
    _criterion(16, "Gaussian vs semicircle < 0.05; (UH)*(UH) vs MP < 0.06",
               "spectra")

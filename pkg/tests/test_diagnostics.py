import numpy as np
import pytest

from equilib import (AnalyticPotential, Exponential, Normal,
                     PolynomialPotential, SampleError, TabulatedPotential,
                     UniformLattice, build_grid, catalog_equilibrium,
                     decompose_samples, fisher_information_number,
                     fit_linear_intensity, normalize, shannon_entropy)

X = PolynomialPotential((0.0, 1.0))
X2 = PolynomialPotential((0.0, 0.0, 1.0))


# ---------------------------------------------------------------------------
# entropy


def test_uniform_lattice_entropy():
    f = catalog_equilibrium(UniformLattice(8))
    assert shannon_entropy(f) == pytest.approx(np.log(8.0), abs=1e-12)


def test_standard_normal_entropy():
    f = catalog_equilibrium(Normal(0.0, 1.0))
    assert shannon_entropy(f) == pytest.approx(
        0.5 * np.log(2 * np.pi * np.e), abs=1e-6)


def test_exponential_entropy():
    # differential entropy of Exp(a) is 1 - ln(a); fine grid keeps the
    # trapezoid bias at the x = 0 endpoint below the 1e-6 budget
    g = build_grid("continuous", 0.0, 40.0, 40001)
    f = normalize(AnalyticPotential(Exponential(1.0)), g)
    assert shannon_entropy(f) == pytest.approx(1.0, abs=1e-6)


def test_entropy_equals_mean_normalized_potential():
    # the identity is asserted inside shannon_entropy at 1e-9; exercise it
    # on a lumpy non-catalog density as well
    g = build_grid("continuous", -3, 3, 801)
    f = normalize(TabulatedPotential(
        grid=g, values=np.cos(2 * g.points) + g.points ** 2 / 3), g)
    shannon_entropy(f)


def test_maxent_entropy_cross_check():
    from equilib import MaxEntProblem, solve_maxent, u_moment
    g = build_grid("continuous", 0, 40, 4001)
    sol = solve_maxent(MaxEntProblem(u=X, grid=g, target_moment=0.5))
    # entropy = lambda * m + ln(Omega) for the exponential-form solution
    expected = sol.lam * 0.5 + np.log(sol.density.omega)
    assert shannon_entropy(sol.density) == pytest.approx(expected, abs=1e-8)


# ---------------------------------------------------------------------------
# Fisher information number


def test_fisher_number_exponential():
    g = build_grid("continuous", 0, 40, 40001)
    # Var of Exp(2) is 1/4
    assert fisher_information_number(X, 2.0, g) == pytest.approx(0.25,
                                                                 abs=1e-6)


def test_fisher_number_gaussian_quadratic():
    g = build_grid("continuous", -8, 8, 4001)
    # Var[x^2] = 2 sigma^4 = 2 for the standard normal
    assert fisher_information_number(X2, 0.5, g) == pytest.approx(2.0,
                                                                  abs=1e-6)


def test_fisher_number_constant_potential():
    g = build_grid("continuous", 0, 1, 101)
    const = TabulatedPotential(grid=g, values=np.full(101, 3.0))
    assert fisher_information_number(const, 1.7, g) == pytest.approx(0.0,
                                                                     abs=1e-12)


@pytest.mark.parametrize("u,lams,grid", [
    (X, [0.5, 1.0, 2.0], build_grid("continuous", 0, 40, 4001)),
    (X2, [0.5, 1.0], build_grid("continuous", -8, 8, 4001)),
])
def test_fisher_identity_second_derivative_of_log_omega(u, lams, grid):
    uvals = u.values_on(grid)
    eps = 1e-4
    for lam in lams:
        def log_omega(l):
            f = normalize(TabulatedPotential(grid=grid, values=l * uvals),
                          grid)
            return np.log(f.omega)
        fd = (log_omega(lam + eps) - 2 * log_omega(lam)
              + log_omega(lam - eps)) / eps ** 2
        var = fisher_information_number(u, lam, grid)
        assert fd == pytest.approx(var, rel=1e-4)


# ---------------------------------------------------------------------------
# decomposition


def test_kernel_decomposition_recovers_linear_intensity():
    rng = np.random.default_rng(2024)
    samples = rng.standard_normal(100_000)
    grid = build_grid("continuous", -5, 5, 501)
    report = decompose_samples(samples, grid, estimator="kernel",
                               bandwidth=0.2)
    slope, _ = fit_linear_intensity(report, interval=(-2.0, 2.0))
    assert 0.9 <= slope <= 1.1


def test_histogram_decomposition_recovers_constant_intensity():
    rng = np.random.default_rng(2024)
    samples = rng.exponential(1.0, 100_000)
    grid = build_grid("continuous", 0.05, 9.95, 100)
    report = decompose_samples(samples, grid, estimator="histogram", bins=100)
    es = report.stochastic_intensity
    x = grid.points
    ok = (~es.mask) & (x >= 0.5) & (x <= 3.0)
    assert 0.9 <= float(np.mean(es.values[ok])) <= 1.1
    assert report.n_out_of_range > 0  # Exp(1) tail beyond 9.95


def test_decomposition_of_exact_quantiles():
    # inverse-CDF deciles of the standard normal at n = 1e5 act as an
    # idealized sample; the revealed intensity is the linear one
    from scipy.stats import norm
    n = 100_000
    samples = norm.ppf((np.arange(n) + 0.5) / n)
    grid = build_grid("continuous", -5, 5, 501)
    report = decompose_samples(samples, grid, estimator="kernel",
                               bandwidth=0.2)
    slope, _ = fit_linear_intensity(report, interval=(-2.0, 2.0))
    assert 0.9 <= slope <= 1.1


def test_report_invariants():
    rng = np.random.default_rng(5)
    samples = rng.standard_normal(5000)
    grid = build_grid("continuous", -4, 4, 201)
    report = decompose_samples(samples, grid, estimator="kernel")
    f = report.density_estimate
    assert abs(grid.quadrature(f.values) - 1.0) <= 1e-12
    ok = ~report.normalized_potential.mask
    assert np.allclose(report.normalized_potential.values[ok],
                       -np.log(f.values[ok]), atol=1e-12)


def test_too_few_samples_rejected():
    grid = build_grid("continuous", -4, 4, 201)
    with pytest.raises(SampleError):
        decompose_samples(np.zeros(50) + 0.5, grid)


def test_all_samples_out_of_range_rejected():
    grid = build_grid("continuous", 0, 1, 101)
    with pytest.raises(SampleError):
        decompose_samples(np.full(200, 5.0), grid)

"""Closed-form potential/intensity/density triples for the standard families.

Each family exposes

* ``potential(x)``             an (unnormalized) potential U with f = k e^(-U)
* ``normalized_potential(x)``  U_tilde = -ln f, exact closed form
* ``intensity(x)``             causal intensity -dU_tilde/dx
* ``density(x)``               e^(-U_tilde)
* ``default_grid()``           a support truncated so that the lost tail
                               mass is below 1e-10

together with the Pearson-system generator, whose density is produced by
integrating its causal intensity on a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp_special
from scipy import stats as sp_stats

from .errors import NonNormalizableError, PotentialError, SupportError
from .grid import CONTINUOUS, LATTICE, Grid, build_grid
from .potential import (EquilibriumDensity, IntensityTable,
                        TabulatedPotential, density_from_intensity, normalize)
from .special import digamma

DEFAULT_POINTS = 4001
TAIL_MASS = 1e-10


def _asfloat(x):
    return np.asarray(x, dtype=float)


@dataclass(frozen=True)
class UniformLattice:
    """Uniform pmf on an N-point lattice; zero causal intensity."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise SupportError("n must be a positive integer")

    def potential(self, x):
        return np.zeros_like(_asfloat(x))

    def normalized_potential(self, x):
        return np.full_like(_asfloat(x), math.log(self.n))

    def intensity(self, x):
        return np.zeros_like(_asfloat(x))

    def density(self, x):
        return np.exp(-self.normalized_potential(x))

    def default_grid(self, n_points: int | None = None) -> Grid:
        return build_grid(LATTICE, 1, self.n, self.n)


@dataclass(frozen=True)
class Exponential:
    """Exp(a): constant causal intensity -a on x >= 0."""

    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise SupportError("rate a must be positive")

    def _check(self, x):
        x = _asfloat(x)
        if np.any(x < 0):
            raise SupportError("exponential support is x >= 0")
        return x

    def potential(self, x):
        return self.a * self._check(x)

    def normalized_potential(self, x):
        return self.a * self._check(x) - math.log(self.a)

    def intensity(self, x):
        return np.full_like(self._check(x), -self.a)

    def density(self, x):
        return np.exp(-self.normalized_potential(x))

    def default_grid(self, n_points: int = DEFAULT_POINTS) -> Grid:
        return build_grid(CONTINUOUS, 0.0, 40.0 / self.a, n_points)


@dataclass(frozen=True)
class Normal:
    """n(mu, sigma): linear causal intensity, harmonic-oscillator potential."""

    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise SupportError("sigma must be positive")

    @classmethod
    def from_b(cls, b: float) -> "Normal":
        """Intensity parameterization E_c(x) = -b x, i.e. n(0, sqrt(1/b))."""
        if not b > 0:
            raise SupportError("b must be positive")
        return cls(mu=0.0, sigma=math.sqrt(1.0 / b))

    def potential(self, x):
        z = _asfloat(x) - self.mu
        return z * z / (2.0 * self.sigma ** 2)

    def normalized_potential(self, x):
        return self.potential(x) + 0.5 * math.log(2.0 * math.pi
                                                  * self.sigma ** 2)

    def intensity(self, x):
        return -(_asfloat(x) - self.mu) / self.sigma ** 2

    def density(self, x):
        return np.exp(-self.normalized_potential(x))

    def default_grid(self, n_points: int = DEFAULT_POINTS) -> Grid:
        return build_grid(CONTINUOUS, self.mu - 8.0 * self.sigma,
                          self.mu + 8.0 * self.sigma, n_points)


@dataclass(frozen=True)
class LinearConstant:
    """Superposed intensities -a - b x: density k e^(-a x - b x^2 / 2).

    Completing the square identifies it with n(-a/b, sqrt(1/b)).
    """

    a: float
    b: float

    def __post_init__(self):
        if not self.b > 0:
            raise SupportError("b must be positive")

    def as_normal(self) -> Normal:
        return Normal(mu=-self.a / self.b, sigma=math.sqrt(1.0 / self.b))

    def potential(self, x):
        x = _asfloat(x)
        return self.a * x + self.b * x * x / 2.0

    def normalized_potential(self, x):
        x = _asfloat(x)
        z = x + self.a / self.b
        return self.b * z * z / 2.0 + 0.5 * math.log(2.0 * math.pi / self.b)

    def intensity(self, x):
        return -self.a - self.b * _asfloat(x)

    def density(self, x):
        return np.exp(-self.normalized_potential(x))

    def default_grid(self, n_points: int = DEFAULT_POINTS) -> Grid:
        return self.as_normal().default_grid(n_points)


@dataclass(frozen=True)
class Poisson:
    """Poi(lam) on the integer lattice; digamma-form causal intensity."""

    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise SupportError("lambda must be positive")

    def _check(self, x):
        x = _asfloat(x)
        if np.any(x < 0):
            raise SupportError("Poisson support is x >= 0")
        return x

    def potential(self, x):
        x = self._check(x)
        return -x * math.log(self.lam) + sp_special.gammaln(x + 1.0)

    def normalized_potential(self, x):
        return self.lam + self.potential(x)

    def intensity(self, x):
        x = self._check(x)
        return -digamma(x + 1.0) + math.log(self.lam)

    def density(self, x):
        return np.exp(-self.normalized_potential(x))

    def default_grid(self, n_points: int | None = None) -> Grid:
        upper = max(30, int(math.ceil(self.lam + 10.0 * math.sqrt(self.lam))))
        while sp_stats.poisson.sf(upper, self.lam) > TAIL_MASS:
            upper *= 2
        return build_grid(LATTICE, 0, upper, upper + 1)


@dataclass(frozen=True)
class Gamma:
    """Gamma(alpha, beta) with intensity -(1-alpha)/x - 1/beta on x > 0."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise SupportError("alpha and beta must be positive")

    @classmethod
    def from_intensity(cls, a: float, b: float) -> "Gamma":
        """Intensity form E_c(x) = -a/x - b; requires a < 1 for a valid shape."""
        if not a < 1:
            raise SupportError("intensity form needs a < 1 (shape 1 - a > 0)")
        if not b > 0:
            raise SupportError("b must be positive")
        return cls(alpha=1.0 - a, beta=1.0 / b)

    def _check(self, x):
        x = _asfloat(x)
        lowest_ok = 0.0 if self.alpha == 1.0 else np.nextafter(0.0, 1.0)
        if np.any(x < lowest_ok):
            raise SupportError("gamma support is x > 0")
        return x

    def _log_term(self, x):
        if self.alpha == 1.0:
            return np.zeros_like(x)
        return (1.0 - self.alpha) * np.log(x)

    def potential(self, x):
        x = self._check(x)
        return self._log_term(x) + x / self.beta

    def normalized_potential(self, x):
        const = float(sp_special.gammaln(self.alpha)) \
            + self.alpha * math.log(self.beta)
        return self.potential(x) + const

    def intensity(self, x):
        x = self._check(x)
        return -(1.0 - self.alpha) / x - 1.0 / self.beta

    def density(self, x):
        return np.exp(-self.normalized_potential(x))

    def default_grid(self, n_points: int = DEFAULT_POINTS) -> Grid:
        upper = self.beta * (self.alpha + 10.0 * math.sqrt(self.alpha) + 15.0)
        while sp_special.gammaincc(self.alpha, upper / self.beta) > TAIL_MASS:
            upper *= 2.0
        # keep the grid off the x = 0 singularity of the log term
        lower = 0.5 * upper / (n_points - 1)
        return build_grid(CONTINUOUS, lower, upper, n_points)


CatalogFamily = (UniformLattice | Exponential | Normal | LinearConstant
                 | Poisson | Gamma)


# ---------------------------------------------------------------------------
# Potential-spec adapters


@dataclass(frozen=True)
class AnalyticPotential:
    """Potential spec backed by a catalog family's closed forms."""

    family: CatalogFamily

    def values_on(self, grid: Grid):
        return self.family.potential(grid.points)

    def intensity_on(self, grid: Grid):
        return self.family.intensity(grid.points)

    def at(self, x):
        return self.family.potential(x)


# ---------------------------------------------------------------------------
# Pearson system


@dataclass(frozen=True)
class PearsonParams:
    """Parameters of f'/f = s (x - a) / (b0 + b1 x + b2 x^2).

    sign="paper" takes the right-hand side literally as the causal
    intensity; sign="standard" negates it, the convention under which
    b0 > 0, b1 = b2 = 0 yields normalizable (normal) densities.
    """

    a: float
    b0: float
    b1: float
    b2: float
    sign: str = "standard"

    def __post_init__(self):
        if self.sign not in ("standard", "paper"):
            raise PotentialError(f"unknown Pearson sign {self.sign!r}")

    def denominator(self, x):
        x = _asfloat(x)
        return self.b0 + self.b1 * x + self.b2 * x * x


def pearson_intensity(p: PearsonParams):
    """Causal intensity function of the Pearson parameter set."""
    s = -1.0 if p.sign == "standard" else 1.0

    def ec(x):
        x = _asfloat(x)
        den = p.denominator(x)
        if np.any(den == 0.0):
            raise PotentialError("Pearson denominator vanishes at a point")
        return s * (x - p.a) / den

    return ec


def _check_denominator(p: PearsonParams, grid: Grid):
    den = p.denominator(grid.points)
    if np.any(den == 0.0) or np.any(np.sign(den[1:]) != np.sign(den[:-1])):
        raise PotentialError("Pearson denominator has a root inside the domain")


@dataclass(frozen=True)
class PearsonPotential:
    """Potential spec obtained by integrating a Pearson intensity."""

    params: PearsonParams

    def intensity_on(self, grid: Grid):
        _check_denominator(self.params, grid)
        return pearson_intensity(self.params)(grid.points)

    def values_on(self, grid: Grid):
        ec = self.intensity_on(grid)
        # an outward-pointing log-density slope at a grid edge means the
        # implied density keeps growing beyond the grid; reject rather than
        # truncate a non-normalizable tail (same rule as pearson_density)
        if ec[0] < 0.0 or ec[-1] > 0.0:
            raise NonNormalizableError(
                "Pearson density grows toward a grid boundary; the "
                "intensity does not generate a normalizable density on "
                "this support"
            )
        h = grid.spacing
        increments = 0.5 * h * (ec[1:] + ec[:-1])
        return -np.concatenate(([0.0], np.cumsum(increments)))


def pearson_density(p: PearsonParams, grid: Grid) -> EquilibriumDensity:
    """Grid density generated by the Pearson intensity.

    The log-density slope is the intensity itself; if it points outward at
    either grid edge the implied density keeps growing beyond the grid, so
    the truncation would silently hide a non-normalizable tail.  Such
    parameter sets are rejected instead.
    """
    if grid.kind != CONTINUOUS:
        raise PotentialError("Pearson densities need a continuous grid")
    _check_denominator(p, grid)
    vals = pearson_intensity(p)(grid.points)
    if vals[0] < 0.0 or vals[-1] > 0.0:
        raise NonNormalizableError(
            "Pearson density grows toward a grid boundary; the intensity "
            "does not generate a normalizable density on this support"
        )
    table = IntensityTable(grid=grid, values=vals, kind="causal")
    return density_from_intensity(table)


# ---------------------------------------------------------------------------
# Functional front end


def catalog_intensity(family: CatalogFamily, x):
    """Closed-form causal intensity E_c(x)."""
    return family.intensity(x)


def catalog_normalized_potential(family: CatalogFamily, x):
    """Closed-form normalized potential U_tilde(x) = -ln f(x)."""
    return family.normalized_potential(x)


def catalog_density(family: CatalogFamily, x):
    """Closed-form density/pmf e^(-U_tilde(x))."""
    return family.density(x)


def catalog_equilibrium(family: CatalogFamily,
                        grid: Grid | None = None) -> EquilibriumDensity:
    """Numeric equilibrium density of the family's potential on a grid."""
    if grid is None:
        grid = family.default_grid()
    return normalize(AnalyticPotential(family), grid)

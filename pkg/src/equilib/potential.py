"""Core transforms between potentials, densities and intensities.

The five fundamental maps implemented here:

* ``normalize``            potential U       -> equilibrium density k e^(-U)
* ``normalized_potential`` potential U       -> U - ln k
* ``potential_of_density`` density f         -> -ln f
* ``stochastic_intensity`` density f         -> -f'/f
* ``causal_intensity``     potential U       -> -U'
* ``density_from_intensity`` intensity E     -> density e^(int E dx + c)

plus ``equilibrium_residual``, the pointwise force-balance check
E_s + E_c -> 0 that characterizes equilibrium pairs.

A "potential spec" is any object with a ``values_on(grid)`` method returning
the tabulated potential; objects may additionally provide ``intensity_on(grid)``
(closed-form derivative) and ``at(x)`` (pointwise evaluation off the grid).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridError, NonNormalizableError, PotentialError
from .grid import CONTINUOUS, LATTICE, Grid

# Absolute and relative density floors below which logs/derivatives are
# masked instead of returning infinities.
DENSITY_FLOOR_ABS = 1e-300
DENSITY_FLOOR_REL = 1e-12


# ---------------------------------------------------------------------------
# Potential specs


@dataclass(frozen=True)
class TabulatedPotential:
    """Potential given by its values on a fixed grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.n_points,):
            raise PotentialError(
                f"expected {self.grid.n_points} values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise PotentialError("tabulated potential has non-finite values")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def values_on(self, grid: Grid) -> np.ndarray:
        self.grid.require_same(grid, "tabulated potential and target grid")
        return self.values

    def at(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < self.grid.lower) or np.any(x > self.grid.upper):
            raise PotentialError("evaluation point outside tabulated domain")
        return np.interp(x, self.grid.points, self.values)


@dataclass(frozen=True)
class PolynomialPotential:
    """Polynomial potential sum_j coeffs[j] * x**j (ascending order)."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(float(c) for c in self.coeffs)
        if len(cs) == 0 or not all(np.isfinite(cs)):
            raise PotentialError("polynomial needs finite coefficients")
        object.__setattr__(self, "coeffs", cs)

    def at(self, x):
        x = np.asarray(x, dtype=float)
        return np.polynomial.polynomial.polyval(x, self.coeffs)

    def values_on(self, grid: Grid) -> np.ndarray:
        return self.at(grid.points)

    def intensity_on(self, grid: Grid) -> np.ndarray:
        dcoeffs = np.polynomial.polynomial.polyder(self.coeffs)
        return -np.polynomial.polynomial.polyval(grid.points, dcoeffs)

    def scaled(self, factor: float) -> "PolynomialPotential":
        return PolynomialPotential(tuple(factor * c for c in self.coeffs))


# ---------------------------------------------------------------------------
# Tabulated results


@dataclass(frozen=True)
class EquilibriumDensity:
    """Normalized density (continuous) or pmf (lattice) on a grid.

    ``omega`` is the statistical sum of the generating potential and
    ``k = 1/omega`` its normalizing constant.  Densities built directly from
    data (histograms, closed forms) use the gauge omega = k = 1.
    """

    grid: Grid
    values: np.ndarray
    omega: float
    k: float

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if np.any(vals < 0) or not np.all(np.isfinite(vals)):
            raise NonNormalizableError("density values must be finite and >= 0")
        total = self.grid.quadrature(vals)
        if abs(total - 1.0) > 1e-9:
            raise NonNormalizableError(f"density quadrature is {total}, not 1")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class NormalizedPotentialTable:
    """Tabulated normalized potential; masked points carry NaN values."""

    grid: Grid
    values: np.ndarray
    mask: np.ndarray = None  # True where the value is undefined

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        mask = (np.zeros(self.grid.n_points, dtype=bool) if self.mask is None
                else np.asarray(self.mask, dtype=bool))
        vals.setflags(write=False)
        mask.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "mask", mask)


@dataclass(frozen=True)
class IntensityTable:
    """Signed field values on a grid; kind is 'stochastic' or 'causal'."""

    grid: Grid
    values: np.ndarray
    kind: str
    mask: np.ndarray = None

    def __post_init__(self):
        if self.kind not in ("stochastic", "causal"):
            raise PotentialError(f"unknown intensity kind {self.kind!r}")
        vals = np.asarray(self.values, dtype=float)
        mask = (np.zeros(self.grid.n_points, dtype=bool) if self.mask is None
                else np.asarray(self.mask, dtype=bool))
        vals.setflags(write=False)
        mask.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "mask", mask)


@dataclass(frozen=True)
class ResidualReport:
    """Force-balance residual E_s + E_c with its masked-point bookkeeping."""

    max_abs: float
    table: np.ndarray
    mask: np.ndarray


# ---------------------------------------------------------------------------
# Helpers


def density_floor(values: np.ndarray) -> float:
    return max(DENSITY_FLOOR_ABS, DENSITY_FLOOR_REL * float(np.max(values)))


def _derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Second-order derivative: central interior, one-sided at the ends."""
    d = np.empty_like(values)
    d[1:-1] = (values[2:] - values[:-2]) / (2.0 * h)
    d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
    d[-1] = (3.0 * values[-1] - 4.0 * values[-2] + values[-3]) / (2.0 * h)
    return d


def eval_potential(U, grid: Grid) -> np.ndarray:
    """Tabulate a potential spec on a grid, checking finiteness."""
    vals = np.asarray(U.values_on(grid), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = grid.points[~np.isfinite(vals)][0]
        raise PotentialError(f"potential is non-finite at x = {bad}")
    return vals


# ---------------------------------------------------------------------------
# The transforms


def normalize(U, grid: Grid) -> EquilibriumDensity:
    """Equilibrium density k e^(-U) on the grid.

    The potential is shifted by its minimum before exponentiating (the
    density is invariant to constant shifts of U) so that the quadrature
    never overflows; the shift is folded back into omega.
    """
    vals = eval_potential(U, grid)
    vmin = float(np.min(vals))
    expv = np.exp(-(vals - vmin))
    omega_shifted = grid.quadrature(expv)
    if not (omega_shifted > 0.0 and np.isfinite(omega_shifted)):
        raise NonNormalizableError(
            "statistical sum vanished or overflowed on this grid"
        )
    density = expv / omega_shifted
    omega = omega_shifted * np.exp(-vmin)
    return EquilibriumDensity(grid=grid, values=density, omega=omega,
                              k=1.0 / omega)


def normalized_potential(U, grid: Grid) -> NormalizedPotentialTable:
    """U - ln k, with k the normalizing constant of e^(-U) on the grid."""
    vals = eval_potential(U, grid)
    vmin = float(np.min(vals))
    expv = np.exp(-(vals - vmin))
    omega_shifted = grid.quadrature(expv)
    if not (omega_shifted > 0.0 and np.isfinite(omega_shifted)):
        raise NonNormalizableError(
            "statistical sum vanished or overflowed on this grid"
        )
    return NormalizedPotentialTable(
        grid=grid, values=(vals - vmin) + np.log(omega_shifted)
    )


def potential_of_density(f: EquilibriumDensity) -> NormalizedPotentialTable:
    """-ln f pointwise; points below the density floor are masked."""
    floor = density_floor(f.values)
    mask = f.values <= floor
    vals = np.full(f.grid.n_points, np.nan)
    vals[~mask] = -np.log(f.values[~mask])
    return NormalizedPotentialTable(grid=f.grid, values=vals, mask=mask)


def stochastic_intensity(f: EquilibriumDensity) -> IntensityTable:
    """-f'/f on continuous grids; forward log-difference on lattices."""
    floor = density_floor(f.values)
    low = f.values <= floor
    n = f.grid.n_points
    vals = np.full(n, np.nan)
    if f.grid.kind == CONTINUOUS:
        # mask a point if any density on its stencil is at the floor
        mask = low.copy()
        mask[1:-1] |= low[2:] | low[:-2]
        mask[0] |= low[1] | low[2]
        mask[-1] |= low[-2] | low[-3]
        d = _derivative(f.values, f.grid.spacing)
        ok = ~mask
        vals[ok] = -d[ok] / f.values[ok]
    else:
        mask = np.ones(n, dtype=bool)
        ok = ~(low[:-1] | low[1:])
        mask[:-1] = ~ok
        logf = np.full(n, np.nan)
        logf[~low] = np.log(f.values[~low])
        vals[:-1][ok] = -(logf[1:][ok] - logf[:-1][ok])
    return IntensityTable(grid=f.grid, values=vals, kind="stochastic",
                          mask=mask)


def causal_intensity(U, grid: Grid) -> IntensityTable:
    """-dU/dx: closed form when the potential provides one, else differences.

    On lattices the tabulated fallback is the forward difference
    -(U(x+1) - U(x)), the exact discrete analogue used throughout.
    """
    if hasattr(U, "intensity_on"):
        vals = np.asarray(U.intensity_on(grid), dtype=float)
        mask = ~np.isfinite(vals)
        vals = np.where(mask, np.nan, vals)
        return IntensityTable(grid=grid, values=vals, kind="causal", mask=mask)
    uvals = eval_potential(U, grid)
    n = grid.n_points
    if grid.kind == CONTINUOUS:
        vals = -_derivative(uvals, grid.spacing)
        mask = ~np.isfinite(vals)
    else:
        vals = np.full(n, np.nan)
        vals[:-1] = -(uvals[1:] - uvals[:-1])
        mask = np.zeros(n, dtype=bool)
        mask[-1] = True
    return IntensityTable(grid=grid, values=vals, kind="causal", mask=mask)


def density_from_intensity(E: IntensityTable) -> EquilibriumDensity:
    """Density e^(int E dx + c); c is absorbed by normalization.

    Continuous grids integrate E by cumulative trapezoid; lattices use
    cumulative sums of E as log-pmf increments.
    """
    if np.any(E.mask) or not np.all(np.isfinite(E.values)):
        raise PotentialError("intensity has masked or non-finite points")
    grid = E.grid
    # causal convention: log f = int E dx.  A stochastic table carries the
    # opposite sign (E_s = -f'/f), so flip it before integrating.
    values = E.values if E.kind == "causal" else -E.values
    if grid.kind == CONTINUOUS:
        h = grid.spacing
        increments = 0.5 * h * (values[1:] + values[:-1])
        integral = np.concatenate(([0.0], np.cumsum(increments)))
    else:
        integral = -np.concatenate(([0.0], np.cumsum(values[:-1])))
    # log f = integral + c  =>  U = -integral up to a constant
    return normalize(TabulatedPotential(grid=grid, values=-integral), grid)


def equilibrium_residual(f: EquilibriumDensity, U) -> ResidualReport:
    """Pointwise E_s + E_c; zero (to truncation error) at equilibrium."""
    es = stochastic_intensity(f)
    ec = causal_intensity(U, f.grid)
    mask = es.mask | ec.mask
    table = np.full(f.grid.n_points, np.nan)
    ok = ~mask
    table[ok] = es.values[ok] + ec.values[ok]
    max_abs = float(np.max(np.abs(table[ok]))) if ok.any() else np.nan
    return ResidualReport(max_abs=max_abs, table=table, mask=mask)

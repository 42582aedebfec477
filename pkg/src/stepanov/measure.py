"""Positive measures on the line given by densities, and weighted ergodic means.

A measure is specified by its Radon-Nikodym density ``rho >= 0`` against
Lebesgue measure: ``mu(A) = integral of rho over A``.  The registry holds

* ``lebesgue`` -- ``rho = 1``;
* ``exp-left`` -- ``rho(t) = exp(t)`` for ``t <= 0`` and ``1`` for ``t > 0``
  (finite total mass on the left half-line, linear growth on the right);
* ``custom-table`` -- piecewise-constant densities from a breakpoint table.

The quasi-invariance-under-translation hypothesis needed by the ergodic
theory is a statement over all measurable sets and is not machine-checkable;
the registry entries are documented as satisfying it and custom tables carry
a user-asserted flag.  Whether a density has infinite total mass is likewise
only probed along a finite ladder of radii (`mass_growth`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import adaptive_quad, unit_cell_lp

__all__ = [
    "MeasureDensity",
    "LebesgueDensity",
    "ExpLeftDensity",
    "TableDensity",
    "make_density",
    "load_table_density",
    "measure_interval",
    "ergodic_mean",
    "ergodic_decay_curve",
    "superlevel_ratio",
    "mass_growth",
    "DENSITY_KINDS",
]


class MeasureDensity:
    """Base class: a nonnegative locally integrable density on the line."""

    kind: str = "abstract"
    translation_bounded: bool = True

    def evaluate(self, t):
        raise NotImplementedError

    def cumulative(self, x):
        """An antiderivative of the density (additive constant arbitrary)."""
        raise NotImplementedError

    def mass(self, a: float, b: float) -> float:
        if b < a:
            raise ValueError("reversed interval: a must not exceed b")
        return float(self.cumulative(b) - self.cumulative(a))

    def breakpoints(self) -> np.ndarray:
        """Kink locations of the density (integration split points)."""
        return np.empty(0)


@dataclass(frozen=True)
class LebesgueDensity(MeasureDensity):
    kind: str = "lebesgue"

    def evaluate(self, t):
        return np.ones_like(np.asarray(t, dtype=float))

    def cumulative(self, x):
        return np.asarray(x, dtype=float)


@dataclass(frozen=True)
class ExpLeftDensity(MeasureDensity):
    """exp(t) on the left half-line, 1 on the right."""

    kind: str = "exp-left"

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= 0.0, np.exp(np.minimum(t, 0.0)), 1.0)

    def cumulative(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= 0.0, np.exp(np.minimum(x, 0.0)), 1.0 + x)

    def breakpoints(self) -> np.ndarray:
        return np.array([0.0])


@dataclass(frozen=True)
class TableDensity(MeasureDensity):
    """Piecewise-constant density: values[i] on [edges[i-1], edges[i]).

    `values` has one more entry than `edges` (the first and last entries
    extend to -inf and +inf); the edge values must be positive so that the
    total mass diverges.
    """

    edges: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    kind: str = "custom-table"
    translation_bounded: bool = False

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if edges.ndim != 1 or values.ndim != 1 or values.size != edges.size + 1:
            raise ValueError("need len(values) == len(edges) + 1")
        if np.any(np.diff(edges) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if np.any(values < 0):
            raise ValueError("density values must be nonnegative")
        if values[0] <= 0 or values[-1] <= 0:
            raise ValueError("edge values must be positive (total mass must diverge)")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "values", values)

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.edges, t, side="right")
        return self.values[idx]

    def cumulative(self, x):
        x = np.asarray(x, dtype=float)
        e, v = self.edges, self.values
        # antiderivative anchored at edges[0]
        seg = np.concatenate([[0.0], np.cumsum(v[1:-1] * np.diff(e))])
        idx = np.searchsorted(e, x, side="right")
        inner = np.clip(idx - 1, 0, e.size - 1)
        base = np.where(idx == 0, v[0] * (x - e[0]), seg[inner] + v[np.clip(idx, 0, v.size - 1)] * (x - e[inner]))
        return base

    def breakpoints(self) -> np.ndarray:
        return self.edges


DENSITY_KINDS = {
    "lebesgue": lambda **kw: LebesgueDensity(),
    "exp-left": lambda **kw: ExpLeftDensity(),
}


def make_density(kind: str, **params) -> MeasureDensity:
    if kind == "custom-table":
        return TableDensity(edges=np.asarray(params["edges"], float),
                            values=np.asarray(params["values"], float))
    try:
        return DENSITY_KINDS[kind](**params)
    except KeyError:
        raise ValueError(f"unknown density kind {kind!r}") from None


def load_table_density(path) -> TableDensity:
    """Breakpoint table, one `t value` pair per line.

    Line i gives the density value on [t_i, t_{i+1}); the first value also
    extends left of t_0 and the last extends right of t_{last}.
    """
    data = np.loadtxt(path, dtype=float, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: expected `t value` pairs")
    t, v = data[:, 0], data[:, 1]
    return TableDensity(edges=t, values=np.concatenate([[v[0]], v]))


def measure_interval(density: MeasureDensity, a: float, b: float) -> float:
    """mu([a, b]) via the density's closed-form antiderivative."""
    if b < a:
        raise ValueError("reversed interval: a must not exceed b")
    return density.mass(a, b)


def _weighted_cell_integrand(signal, density, p, order):
    def fn(tt):
        flat = tt.ravel()
        phi = unit_cell_lp(signal, flat, p=p, order=order)
        return (phi * density.evaluate(flat)).reshape(tt.shape)

    return fn


def ergodic_mean(
    signal,
    density: MeasureDensity,
    p: float,
    r: float,
    *,
    abs_tol: float = 1e-9,
    order: int = 64,
) -> float:
    """Measure-weighted mean of the unit-cell L^p averages over [-r, r].

    Computes ``(1/mu([-r,r])) * int_{-r}^{r} (int_t^{t+1} ||f||^p ds)^{1/p} dmu(t)``.
    A vanishing limit along r -> infinity is the ergodicity property; since a
    limit is not decidable from finite data, callers get one r at a time (see
    `ergodic_decay_curve` for the ladder form).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    if p < 1:
        raise ValueError("exponent p must be >= 1")
    fn = _weighted_cell_integrand(signal, density, p, order)
    bks = np.concatenate([density.breakpoints(), signal.breakpoints(-r, r + 1.0)])
    num, _ = adaptive_quad(fn, -r, r, abs_tol=abs_tol, breakpoints=bks)
    return num / density.mass(-r, r)


def ergodic_decay_curve(signal, density, p, ladder, **kw) -> np.ndarray:
    """`ergodic_mean` along an increasing ladder of radii."""
    return np.array([ergodic_mean(signal, density, p, float(r), **kw) for r in ladder])


def superlevel_ratio(
    signal,
    density: MeasureDensity,
    epsilon: float,
    r: float,
    *,
    grid_step: float = 0.01,
) -> float:
    """mu({t in [-r,r] : ||f(t)|| >= eps}) / mu([-r,r]) on a sampling grid.

    The superlevel set is the union of grid cells whose midpoint sample meets
    the threshold; each cell's mass uses the density's closed form.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if r <= 0:
        raise ValueError("r must be positive")
    n = max(2, int(math.ceil(2.0 * r / grid_step)))
    edges = np.linspace(-r, r, n + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    hit = signal.norm(mids) >= epsilon
    if not np.any(hit):
        return 0.0
    cum = density.cumulative(edges)
    cell_mass = cum[1:] - cum[:-1]
    return float(np.sum(cell_mass[hit])) / density.mass(-r, r)


def mass_growth(density: MeasureDensity, ladder=(10.0, 100.0, 1000.0, 10000.0)) -> np.ndarray:
    """mu([-r, r]) along a radius ladder; the finite-data divergence probe."""
    return np.array([density.mass(-float(r), float(r)) for r in ladder])

"""Stepanov-norm diagnostics for time signals.

All suprema over the real line are approximated by maxima over a finite
window grid; every report carries the window, and periodic registry signals
get exact values once the window covers a period.  Nothing here certifies
almost periodicity or ergodicity symbolically -- the outputs are defects,
hit sets and decay curves for a human (or a test) to judge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d
from scipy.optimize import minimize_scalar

from .measure import MeasureDensity, ergodic_decay_curve
from .quadrature import gauss_legendre_cell, unit_cell_lp
from .signals import CallableSignal, Signal

__all__ = [
    "StepanovExponent",
    "bochner_slice",
    "bsp_profile",
    "bsp_norm",
    "translation_defect",
    "TranslationReport",
    "find_translation_numbers",
    "uniform_continuity_modulus",
    "composition_ergodic_check",
]


@dataclass(frozen=True)
class StepanovExponent:
    """Integrability exponent p in [1, inf) with its conjugate q.

    q = p/(p-1) for p > 1 and the +inf sentinel for p = 1.
    """

    p: float = 1.0

    def __post_init__(self):
        if not (1.0 <= self.p < math.inf):
            raise ValueError("p must lie in [1, inf)")

    @property
    def q(self) -> float:
        return math.inf if self.p == 1.0 else self.p / (self.p - 1.0)


def _pvalue(p) -> float:
    return p.p if isinstance(p, StepanovExponent) else float(p)


def bochner_slice(signal: Signal, t: float, m: int) -> np.ndarray:
    """Samples of the unit-interval slice ``s -> f(t + s)`` on a uniform grid.

    The slice viewed as a function of t is the lift under which Stepanov
    properties of f become sup-norm properties of the lifted curve.
    """
    if m < 2:
        raise ValueError("need at least two samples")
    s = np.linspace(0.0, 1.0, m)
    return signal(float(t) + s)


def _window_grid(window, scan_step: float) -> np.ndarray:
    a, b = float(window[0]), float(window[1])
    if b - a < 1.0:
        raise ValueError("window must be at least one unit long")
    n = max(2, int(round((b - a) / scan_step)) + 1)
    return np.linspace(a, b, n)


def bsp_profile(signal: Signal, p, window, *, scan_step: float = 0.05, order: int = 64):
    """(t grid, unit-cell L^p norms) across the window."""
    t = _window_grid(window, scan_step)
    return t, unit_cell_lp(signal, t, p=_pvalue(p), order=order)


def bsp_norm(signal: Signal, p, window, *, scan_step: float = 0.05, order: int = 64) -> float:
    """Windowed Stepanov p-norm: max over t in the window of the L^p norm on [t, t+1].

    This is a finite-window stand-in for the supremum over the whole line;
    it is exact for periodic entries once the window covers a period.
    """
    _, vals = bsp_profile(signal, p, window, scan_step=scan_step, order=order)
    return float(np.max(vals))


class _ShiftDiff(Signal):
    """||f(. + tau) - f(.)|| as a signal (internal)."""

    def __init__(self, base: Signal, tau: float):
        self.base = base
        self.tau = float(tau)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.base(t + self.tau) - self.base(t)

    @property
    def dim(self):
        return self.base.dim

    def breakpoints(self, a, b):
        bks = self.base.breakpoints(a, b)
        shifted = self.base.breakpoints(a + self.tau, b + self.tau) - self.tau
        return np.unique(np.concatenate([bks, shifted]))


def translation_defect(
    signal: Signal, tau: float, p, window, *, scan_step: float = 0.05, order: int = 64
) -> float:
    """Windowed Stepanov distance between the signal and its tau-translate."""
    t = _window_grid(window, scan_step)
    vals = unit_cell_lp(_ShiftDiff(signal, tau), t, p=_pvalue(p), order=order)
    return float(np.max(vals))


@dataclass(frozen=True)
class TranslationReport:
    """Scan result: epsilon-translation numbers found on a search grid.

    `largest_gap` is the empirical inclusion length: with relative density,
    every interval of that length in the scanned range contains a hit.  An
    empty hit set is reported as such; it never proves non-almost-periodicity.
    """

    epsilon: float
    tau_step: float
    search: tuple
    window: tuple
    hits: np.ndarray = field(repr=False)
    defects: np.ndarray = field(repr=False)
    largest_gap: float | None
    refined: tuple = ()

    @property
    def empty(self) -> bool:
        return self.hits.size == 0

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "tau_step": self.tau_step,
            "search": list(self.search),
            "window": list(self.window),
            "hit_count": int(self.hits.size),
            "largest_gap": self.largest_gap,
            "hits": [float(x) for x in self.hits],
            "refined": [[float(a), float(b)] for a, b in self.refined],
        }


def _defect_scan(signal, taus, p, window, scan_step, order):
    """Defect for every tau, sharing the base-signal node evaluations."""
    t = _window_grid(window, scan_step)
    x, w = gauss_legendre_cell(order)
    nodes = t[:, None] + x[None, :]
    if signal.dim != 1:
        raise NotImplementedError("translation scans support scalar signals")
    base = signal(nodes)
    out = np.empty(taus.size)
    chunk = max(1, int(2e6 // nodes.size))
    for i0 in range(0, taus.size, chunk):
        tz = taus[i0 : i0 + chunk]
        shifted = signal(nodes[None, :, :] + tz[:, None, None])
        cell = np.abs(shifted - base[None]) ** p @ w
        out[i0 : i0 + chunk] = np.max(cell ** (1.0 / p), axis=1)
    return out


def find_translation_numbers(
    signal: Signal,
    epsilon: float,
    p,
    search,
    window,
    *,
    tau_step: float = 0.01,
    scan_step: float = 1.0,
    order: int = 64,
    refine: bool = True,
) -> TranslationReport:
    """Scan [search[0], search[1]] for translations with defect <= epsilon.

    Hits come from a uniform tau grid; each run of consecutive hits is then
    sharpened by golden-section descent on the defect around its best tau.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    a, b = float(search[0]), float(search[1])
    taus = np.arange(a, b + 0.5 * tau_step, tau_step)
    pp = _pvalue(p)
    defects = _defect_scan(signal, taus, pp, window, scan_step, order)
    mask = defects <= epsilon
    hits = taus[mask]
    largest_gap = None
    if hits.size:
        gaps = np.diff(np.concatenate([[a], hits, [b]]))
        largest_gap = float(np.max(gaps))
    refined = []
    if refine and hits.size:
        # one refinement per run of consecutive grid hits
        runs = np.split(np.where(mask)[0], np.where(np.diff(np.where(mask)[0]) > 1)[0] + 1)
        for run in runs:
            j = run[np.argmin(defects[run])]
            lo = taus[max(j - 1, 0)]
            hi = taus[min(j + 1, taus.size - 1)]
            if hi <= lo:
                refined.append((float(taus[j]), float(defects[j])))
                continue
            res = minimize_scalar(
                lambda tt: translation_defect(signal, tt, pp, window, scan_step=scan_step, order=order),
                bracket=None,
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": 1e-6},
            )
            refined.append((float(res.x), float(res.fun)))
    return TranslationReport(
        epsilon=float(epsilon),
        tau_step=float(tau_step),
        search=(a, b),
        window=(float(window[0]), float(window[1])),
        hits=hits,
        defects=defects[mask],
        largest_gap=largest_gap,
        refined=tuple(refined),
    )


def uniform_continuity_modulus(
    signal: Signal, window, deltas, *, grid_step: float | None = None
) -> dict:
    """max ||f(t) - f(t')|| over grid pairs with |t - t'| <= delta, per delta.

    A modulus that refuses to shrink with delta as the window grows is the
    working signature of failing uniform continuity.
    """
    deltas = sorted(float(d) for d in deltas)
    if not deltas:
        return {}
    a, b = float(window[0]), float(window[1])
    step = grid_step if grid_step is not None else max(deltas[0] / 4.0, (b - a) * 1e-8)
    n = int(math.floor((b - a) / step)) + 1
    t = a + step * np.arange(n)
    vals = signal(t)
    if vals.ndim != 1:
        raise NotImplementedError("modulus supports scalar signals")
    out = {}
    for d in deltas:
        w = int(round(d / step)) + 1
        if w <= 1:
            out[d] = 0.0
            continue
        hi = maximum_filter1d(vals, size=w, mode="nearest")
        lo = minimum_filter1d(vals, size=w, mode="nearest")
        out[d] = float(np.max(hi - lo))
    return out


def composition_ergodic_check(
    f,
    x: Signal,
    x1: Signal,
    density: MeasureDensity,
    p,
    r_ladder,
    *,
    abs_tol: float = 1e-7,
    order: int = 64,
) -> np.ndarray:
    """Ergodic decay curve of the composition remainder f(., x(.)) - f(., x1(.)).

    When x differs from x1 by an ergodic perturbation and f is continuous in
    its second argument, the remainder's weighted means must decay along an
    increasing radius ladder; the curve is returned for inspection, not
    thresholded here.
    """
    fn = f.pointwise if hasattr(f, "pointwise") else f

    def remainder(t):
        t = np.asarray(t, dtype=float)
        return fn(t, x(t)) - fn(t, x1(t))

    rem = CallableSignal(fn=remainder, label="composition-remainder")
    return ergodic_decay_curve(rem, density, _pvalue(p), r_ladder, abs_tol=abs_tol, order=order)

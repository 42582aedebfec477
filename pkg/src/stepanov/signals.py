"""Time-signal registry: closed-form test signals and uniform-grid samples.

Every signal is a vectorized map ``t -> value`` with an optional vector
codomain.  The registry covers the diagnostic zoo used throughout the
package: constants, sines, incommensurate tone sums, the shifted arctangent
(bounded, vanishing weighted mean at infinity), the bursting oscillation
``sin(1/(2 + cos(a t) + cos(b t)))`` (bounded but not uniformly continuous),
and a smooth spike train with spikes of width ``1/n**2`` centred on the odd
multiples of ``3**n`` (unbounded pointwise, finite unit-cell averages).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Signal",
    "Constant",
    "Sine",
    "ToneSum",
    "ArctanShift",
    "BurstOsc",
    "SpikeTrain",
    "GridSignal",
    "CallableSignal",
    "SumSignal",
    "ScaledSignal",
    "bump",
    "make_signal",
    "load_grid_signal",
    "SIGNAL_KINDS",
]

# Bump normalization: H(s) = exp(1 - 1/(1-(2s)^2)) * (1 + C * (2s)^2 (1-(2s)^2))
# on (-1/2, 1/2).  C is fixed so that H(0) = 1 and the integral of H is 1
# while H stays nonnegative and smooth with compact support.
_BUMP_POLY_COEFF = 6.250607006789388


def bump(s):
    """Smooth nonnegative bump supported in (-1/2, 1/2) with peak 1 at 0."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    x = 2.0 * s
    inside = np.abs(x) < 1.0
    xi = x[inside]
    w = 1.0 - xi * xi
    out[inside] = np.exp(1.0 - 1.0 / w) * (1.0 + _BUMP_POLY_COEFF * xi * xi * w)
    return out


class Signal:
    """Base class for vectorized time signals.

    Subclasses implement ``__call__`` mapping an array of times to values;
    scalar signals return an array of the same shape, vector signals append
    a trailing axis of length ``dim``.
    """

    dim: int = 1

    def __call__(self, t):
        raise NotImplementedError

    def norm(self, t):
        """Pointwise Euclidean norm of the signal values."""
        v = self(np.asarray(t, dtype=float))
        if self.dim == 1:
            return np.abs(v)
        return np.sqrt(np.sum(v * v, axis=-1))

    def breakpoints(self, a: float, b: float) -> np.ndarray:
        """Integration breakpoints in [a, b] (spike edges, kinks); may be empty."""
        return np.empty(0)

    def antiderivative(self, t):
        """Closed-form antiderivative where available; raises otherwise."""
        raise NotImplementedError(f"{type(self).__name__} has no closed-form antiderivative")

    def __add__(self, other):
        if isinstance(other, Signal):
            return SumSignal((self, other))
        return NotImplemented

    def __mul__(self, scalar):
        return ScaledSignal(self, float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Constant(Signal):
    """Constant signal; `value` may be a scalar or a vector."""

    value: float | tuple = 1.0

    @property
    def dim(self) -> int:  # type: ignore[override]
        return len(self.value) if isinstance(self.value, tuple) else 1

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.dim == 1:
            return np.full_like(t, float(self.value))
        return np.broadcast_to(np.asarray(self.value, dtype=float), t.shape + (self.dim,)).copy()

    def antiderivative(self, t):
        return float(self.value) * np.asarray(t, dtype=float)


@dataclass(frozen=True)
class Sine(Signal):
    """amp * sin(omega * t + phase) + offset."""

    omega: float = 1.0
    amp: float = 1.0
    phase: float = 0.0
    offset: float = 0.0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.amp * np.sin(self.omega * t + self.phase) + self.offset

    def antiderivative(self, t):
        t = np.asarray(t, dtype=float)
        return -self.amp / self.omega * np.cos(self.omega * t + self.phase) + self.offset * t


@dataclass(frozen=True)
class ToneSum(Signal):
    """Finite sum of sines, e.g. the quasi-periodic sin(t) + sin(sqrt(2) t)."""

    omegas: tuple = (1.0, math.sqrt(2.0))
    amps: tuple = (1.0, 1.0)
    offset: float = 0.0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.full_like(t, self.offset)
        for w, a in zip(self.omegas, self.amps):
            out += a * np.sin(w * t)
        return out

    def antiderivative(self, t):
        t = np.asarray(t, dtype=float)
        out = self.offset * t
        for w, a in zip(self.omegas, self.amps):
            out += -a / w * np.cos(w * t)
        return out


@dataclass(frozen=True)
class ArctanShift(Signal):
    """arctan(t) - pi/2: bounded, tends to 0 at +inf and to -pi at -inf."""

    def __call__(self, t):
        return np.arctan(np.asarray(t, dtype=float)) - 0.5 * math.pi


@dataclass(frozen=True)
class BurstOsc(Signal):
    """sin or cos of 1/(2 + cos(alpha t) + cos(beta t)).

    For incommensurate alpha, beta the denominator dips toward 0 along sparse
    near-resonances, producing ever faster local oscillation: the signal is
    bounded and continuous but not uniformly continuous.
    """

    alpha: float = 1.0
    beta: float = math.sqrt(2.0)
    outer: str = "sin"
    denom_floor: float = 1e-12

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        den = 2.0 + np.cos(self.alpha * t) + np.cos(self.beta * t)
        if den.size and float(np.min(den)) < self.denom_floor:
            raise ValueError(
                f"denominator fell below floor {self.denom_floor:g} on the evaluation window"
            )
        outer = np.sin if self.outer == "sin" else np.cos
        return outer(1.0 / den)


@dataclass(frozen=True)
class SpikeTrain(Signal):
    """Sum over n of bumps of width 1/n**2 centred on odd multiples of 3**n.

    Layer n contributes ``bump(n**2 (t - i))`` at each centre ``i`` in
    ``3**n * (2Z + 1)``; layers are truncated at ``n_max``.  Centres shared by
    several layers stack, so the pointwise values grow without bound while
    every unit-cell average stays finite.
    """

    n_max: int = 4

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for n in range(1, self.n_max + 1):
            p = 3**n
            # nearest centre i = p*(2k+1); each t sees at most one bump per layer
            k = np.round((t / p - 1.0) / 2.0)
            centre = p * (2.0 * k + 1.0)
            out += bump(n * n * (t - centre))
        return out

    def breakpoints(self, a: float, b: float) -> np.ndarray:
        pts = []
        for n in range(1, self.n_max + 1):
            p = 3**n
            half = 0.5 / (n * n)
            k_lo = math.floor(((a - half) / p - 1.0) / 2.0)
            k_hi = math.ceil(((b + half) / p - 1.0) / 2.0)
            for k in range(k_lo, k_hi + 1):
                i = p * (2 * k + 1)
                for edge in (i - half, i + half):
                    if a < edge < b:
                        pts.append(edge)
        return np.unique(np.asarray(pts))

    def spike_supports(self, a: float, b: float):
        """(lo, hi) support intervals intersecting [a, b], widest layers first."""
        spans = []
        for n in range(1, self.n_max + 1):
            p = 3**n
            half = 0.5 / (n * n)
            k_lo = math.floor(((a - half) / p - 1.0) / 2.0)
            k_hi = math.ceil(((b + half) / p - 1.0) / 2.0)
            for k in range(k_lo, k_hi + 1):
                i = p * (2 * k + 1)
                if i + half > a and i - half < b:
                    spans.append((i - half, i + half))
        return spans


@dataclass(frozen=True)
class GridSignal(Signal):
    """Uniformly sampled signal; linear interpolation between samples.

    `values` has shape (n,) for scalar signals or (n, d) for vector ones.
    Evaluation outside [t0, t0 + (n-1) h] clamps to the end samples.
    """

    t0: float
    h: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("grid step must be positive")
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    @property
    def dim(self) -> int:  # type: ignore[override]
        return 1 if self.values.ndim == 1 else self.values.shape[1]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.h * np.arange(self.values.shape[0])

    @property
    def t_end(self) -> float:
        return self.t0 + self.h * (self.values.shape[0] - 1)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.values.shape[0] == 1:
            return np.broadcast_to(self.values[0], t.shape).copy()
        x = np.clip((t - self.t0) / self.h, 0.0, self.values.shape[0] - 1.0)
        i0 = np.minimum(np.floor(x).astype(int), self.values.shape[0] - 2)
        w = x - i0
        if self.dim == 1:
            return (1.0 - w) * self.values[i0] + w * self.values[i0 + 1]
        return (1.0 - w)[..., None] * self.values[i0] + w[..., None] * self.values[i0 + 1]

    def antiderivative(self, t):
        # cumulative trapezoid on the grid, linear pieces in between
        t = np.asarray(t, dtype=float)
        if self.dim != 1:
            raise NotImplementedError("antiderivative only for scalar grid signals")
        cum = np.concatenate([[0.0], np.cumsum(0.5 * self.h * (self.values[1:] + self.values[:-1]))])
        x = np.clip((t - self.t0) / self.h, 0.0, self.values.shape[0] - 1.0)
        i0 = np.minimum(np.floor(x).astype(int), self.values.shape[0] - 2)
        s = (x - i0) * self.h
        v0 = self.values[i0]
        slope = (self.values[i0 + 1] - v0) / self.h
        inner = cum[i0] + v0 * s + 0.5 * slope * s * s
        # clamp outside the grid: constant extension integrates linearly
        lo = t < self.t0
        hi = t > self.t_end
        out = inner
        out = np.where(lo, self.values[0] * (t - self.t0), out)
        out = np.where(hi, cum[-1] + self.values[-1] * (t - self.t_end), out)
        return out


@dataclass(frozen=True)
class CallableSignal(Signal):
    """Wraps a vectorized callable as a Signal (internal plumbing)."""

    fn: object
    dims: int = 1
    label: str = "callable"

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.dims

    def __call__(self, t):
        return self.fn(np.asarray(t, dtype=float))


@dataclass(frozen=True)
class SumSignal(Signal):
    parts: tuple

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.parts[0].dim

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = self.parts[0](t)
        for p in self.parts[1:]:
            out = out + p(t)
        return out

    def breakpoints(self, a, b):
        pts = [p.breakpoints(a, b) for p in self.parts]
        return np.unique(np.concatenate(pts)) if pts else np.empty(0)

    def antiderivative(self, t):
        out = self.parts[0].antiderivative(t)
        for p in self.parts[1:]:
            out = out + p.antiderivative(t)
        return out


@dataclass(frozen=True)
class ScaledSignal(Signal):
    base: Signal
    factor: float

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.base.dim

    def __call__(self, t):
        return self.factor * self.base(t)

    def breakpoints(self, a, b):
        return self.base.breakpoints(a, b)

    def antiderivative(self, t):
        return self.factor * self.base.antiderivative(t)


def _parse_floats(text: str) -> tuple:
    return tuple(float(x) for x in str(text).replace(",", " ").split())


SIGNAL_KINDS = {
    "constant": lambda **kw: Constant(value=float(kw.get("value", 1.0))),
    "sine": lambda **kw: Sine(
        omega=float(kw.get("omega", 1.0)),
        amp=float(kw.get("amp", 1.0)),
        phase=float(kw.get("phase", 0.0)),
        offset=float(kw.get("offset", 0.0)),
    ),
    "tone-sum": lambda **kw: ToneSum(
        omegas=_parse_floats(kw.get("omegas", "1.0 1.4142135623730951")),
        amps=_parse_floats(kw.get("amps", "1.0 1.0")),
        offset=float(kw.get("offset", 0.0)),
    ),
    "two-tone": lambda **kw: ToneSum(
        omegas=(1.0, math.sqrt(2.0)), amps=(1.0, 1.0), offset=float(kw.get("offset", 0.0))
    ),
    "arctan-shift": lambda **kw: ArctanShift(),
    "burst-osc": lambda **kw: BurstOsc(
        alpha=float(kw.get("alpha", 1.0)),
        beta=float(kw.get("beta", math.sqrt(2.0))),
        outer=str(kw.get("outer", "sin")),
    ),
    "spike-train": lambda **kw: SpikeTrain(n_max=int(kw.get("n_max", 4))),
    "zero": lambda **kw: Constant(value=0.0),
}


def make_signal(kind: str, **params) -> Signal:
    """Build a registry signal from its tag and keyword parameters."""
    try:
        factory = SIGNAL_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown signal kind {kind!r}; known: {sorted(SIGNAL_KINDS)}") from None
    return factory(**params)


def load_grid_signal(path) -> GridSignal:
    """Load a two-column `t value` sample file; the time step must be uniform."""
    data = np.loadtxt(path, dtype=float)
    if data.ndim != 2 or data.shape[1] < 2:
        raise ValueError(f"{path}: expected two columns `t value` per line")
    t, v = data[:, 0], data[:, 1] if data.shape[1] == 2 else data[:, 1:]
    if len(t) < 2:
        raise ValueError(f"{path}: need at least two samples")
    steps = np.diff(t)
    h = float(steps[0])
    if h <= 0 or not np.allclose(steps, h, rtol=1e-8, atol=1e-12):
        raise ValueError(f"{path}: time step must be uniform and positive")
    return GridSignal(t0=float(t[0]), h=h, values=v)

"""Smooth cutoff calculus built from the standard exp(-1/s) mollifier.

All profiles are exact C^infinity bumps, vectorized over numpy arrays:

* ``step``: 0 for s <= 0, 1 for s >= 1, with step(s) + step(1-s) = 1 exactly.
* ``psi``: 1 on (-inf, 1], 0 on [2, inf), monotone in between.
* ``beta(t) = psi(t) - psi(2t)``: supported in (1/2, 2); the dyadic family
  beta(2**-j t) telescopes to 1 on [1, 2**J].
* ``beta0(t) = psi(|t|/2)``: even, 1 on [-2, 2], supported in (-4, 4).
* ``beta1(t) = psi(t/2) * (1 - psi(4t))``: 1 on [1/2, 2], supported in (1/4, 4).

These are the only bump shapes used anywhere in the package, so frequency
supports quoted elsewhere (e.g. alias guards) can be read off this table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def eta(s):
    """exp(-1/s) for s > 0, continued by 0; the basic C^inf transition germ."""
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros_like(s)
    pos = s > 0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(-1.0 / s[pos])
    return out


def step(s):
    """Smooth unit step on [0, 1]: eta(s) / (eta(s) + eta(1-s)).

    The denominator never vanishes, and step(s) + step(1 - s) = 1 holds to
    machine precision -- the identity behind exact partitions of unity.
    """
    s = np.asarray(s, dtype=np.float64)
    a = eta(s)
    b = eta(1.0 - s)
    return a / (a + b)


def psi(t):
    """1 for t <= 1, 0 for t >= 2, step(2 - t) in between."""
    t = np.asarray(t, dtype=np.float64)
    return step(2.0 - t)


def beta(t):
    """Dyadic ring profile psi(t) - psi(2t), supported in (1/2, 2)."""
    t = np.asarray(t, dtype=np.float64)
    return psi(t) - psi(2.0 * t)


def beta0(t):
    """Even plateau bump: 1 on [-2, 2], supported in (-4, 4)."""
    t = np.asarray(t, dtype=np.float64)
    return psi(np.abs(t) / 2.0)


def beta1(t):
    """One-sided ring bump: 1 on [1/2, 2], supported in (1/4, 4)."""
    t = np.asarray(t, dtype=np.float64)
    return psi(t / 2.0) * (1.0 - psi(4.0 * t))


_KINDS = {
    "eta": eta,
    "step": step,
    "psi": psi,
    "beta": beta,
    "beta0": beta0,
    "beta1": beta1,
}


@dataclass(frozen=True)
class CutoffProfile:
    """Named cutoff with its support and plateau, for introspection and plots."""

    kind: str

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown cutoff kind {self.kind!r}; choose from {sorted(_KINDS)}")

    def __call__(self, t):
        return _KINDS[self.kind](t)

    @property
    def support(self) -> tuple[float, float]:
        return {
            "eta": (0.0, np.inf),
            "step": (0.0, np.inf),
            "psi": (-np.inf, 2.0),
            "beta": (0.5, 2.0),
            "beta0": (-4.0, 4.0),
            "beta1": (0.25, 4.0),
        }[self.kind]

    @property
    def plateau(self) -> tuple[float, float]:
        return {
            "eta": (np.inf, np.inf),
            "step": (1.0, np.inf),
            "psi": (-np.inf, 1.0),
            "beta": (np.nan, np.nan),  # beta has no plateau: it peaks at 1 on [1, ...] minus tail overlap
            "beta0": (-2.0, 2.0),
            "beta1": (0.5, 2.0),
        }[self.kind]


def cutoff(kind: str, t):
    """Evaluate a named cutoff profile (vectorized)."""
    return CutoffProfile(kind)(t)

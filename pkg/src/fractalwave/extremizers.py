"""Frequency-space test-function families with known norm scalings.

Three single-field families at dyadic scale 2^j (d = 2 throughout):

* radial focusing  --  fhat(xi) = e^{-i|xi|} beta1(|xi|/2^j); focuses on the
  unit circle, ||f||_p ~ 2^{j(3/2 - 1/p)};
* Knapp            --  fhat(xi) = beta0(xi_1/(c1 2^{j/2})) beta1(xi_2/2^j);
  a curvature-free plate, ||f||_p ~ 2^{j(3/2)(1 - 1/p)};
* annulus          --  fhat(xi) = beta1(|xi|/2^j); ||f||_p ~ 2^{2j(1 - 1/p)}.

All supports live in |xi| < 2^{j+2}, so constructors demand
2^{j+2} <= nyquist.  Physical-space concentration facts (focusing shell,
Knapp box lower bound after half-wave propagation) are exposed as helpers so
the same measurements drive tests and calibration scripts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cutoffs import beta0, beta1
from .grid import (
    Field,
    GridSpec,
    _as_physical,
    frequency_lattice,
    half_wave,
    physical_coords,
    to_frequency,
)

_FAMILIES = ("radial_focusing", "knapp", "annulus", "bilinear_cap_pair", "squashed_pair")

DEFAULT_C1 = 0.125
DEFAULT_C0 = 0.25
DEFAULT_L = 16.0


@dataclass(frozen=True)
class ExtremizerSpec:
    family: str
    j: int
    c1: float = DEFAULT_C1
    c0: float = DEFAULT_C0
    L: float = DEFAULT_L
    delta: float | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"family must be one of {_FAMILIES}, got {self.family!r}")
        if min(self.c1, self.c0, self.L) <= 0:
            raise ValueError("constants c1, c0, L must be positive")
        if self.family in ("bilinear_cap_pair", "squashed_pair") and self.delta is None:
            raise ValueError(f"family {self.family!r} needs delta")

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "j": self.j,
            "constants": {"c1": self.c1, "c0": self.c0, "L": self.L},
        }
        if self.delta is not None:
            out["delta"] = self.delta
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ExtremizerSpec":
        c = data.get("constants", {})
        return cls(
            family=data["family"],
            j=int(data["j"]),
            c1=float(c.get("c1", DEFAULT_C1)),
            c0=float(c.get("c0", DEFAULT_C0)),
            L=float(c.get("L", DEFAULT_L)),
            delta=(float(data["delta"]) if "delta" in data else None),
        )


def _support_guard(grid: GridSpec, j: int) -> None:
    if 2.0 ** (j + 2) > grid.nyquist * (1.0 + 1e-12):
        raise ValueError(
            f"frequency support 2^(j+2) = {2.0**(j+2)} exceeds nyquist = {grid.nyquist}; "
            f"max j on this grid is {grid.max_band_j(4.0)}"
        )


def radial_focusing(grid: GridSpec, j: int) -> Field:
    _support_guard(grid, j)
    xi1, xi2 = frequency_lattice(grid)
    r = np.hypot(np.broadcast_to(xi1, (grid.n, grid.n)), np.broadcast_to(xi2, (grid.n, grid.n)))
    vals = np.exp(-1j * r) * beta1(r / 2.0**j)
    return Field(grid, vals, "frequency")


def knapp(grid: GridSpec, j: int, c1: float = DEFAULT_C1) -> Field:
    _support_guard(grid, j)
    if not 0.0 < c1 <= 1.0:
        raise ValueError(f"c1 must lie in (0, 1], got {c1}")
    xi1, xi2 = frequency_lattice(grid)
    vals = beta0(xi1 / (c1 * 2.0 ** (j / 2.0))) * beta1(xi2 / 2.0**j)
    return Field(grid, (vals + 0j) * np.ones((grid.n, grid.n)), "frequency")


def annulus(grid: GridSpec, j: int) -> Field:
    _support_guard(grid, j)
    xi1, xi2 = frequency_lattice(grid)
    r = np.hypot(np.broadcast_to(xi1, (grid.n, grid.n)), np.broadcast_to(xi2, (grid.n, grid.n)))
    return Field(grid, beta1(r / 2.0**j) + 0j, "frequency")


def build_extremizer(spec: ExtremizerSpec, grid: GridSpec):
    """Dispatch an ExtremizerSpec to its constructor (pair families return a pair)."""
    if spec.family == "radial_focusing":
        return radial_focusing(grid, spec.j)
    if spec.family == "knapp":
        return knapp(grid, spec.j, spec.c1)
    if spec.family == "annulus":
        return annulus(grid, spec.j)
    from .caps import bilinear_cap_pair

    kind = "angular" if spec.family == "bilinear_cap_pair" else "squashed"
    return bilinear_cap_pair(grid, spec.delta, kind)


# --- measurement helpers ------------------------------------------------------


def shell_mass_fraction(f: Field, center_radius: float, width: float) -> float:
    """Fraction of the squared L^2 mass carried by ||x| - center_radius| <= width."""
    g = _as_physical(f)
    x1, x2 = physical_coords(f.grid)
    r = np.hypot(np.broadcast_to(x1, g.values.shape), np.broadcast_to(x2, g.values.shape))
    m2 = np.abs(g.values) ** 2
    total = m2.sum()
    if total == 0.0:
        raise ValueError("empty field")
    return float(m2[np.abs(r - center_radius) <= width].sum() / total)


def concentration_constant(
    f: Field,
    j: int,
    center_radius: float = 1.0,
    order: int = 4,
    shell_limit: float | None = None,
) -> float:
    """Smallest C with |f(x)| <= C 2^{3j/2} (1 + 2^j ||x| - center_radius|)^{-order} on the grid.

    With ``shell_limit`` the sup is restricted to 2^j ||x| - center_radius| <=
    shell_limit.  The restriction matters: the smooth profiles decay faster
    than any polynomial near the shell, so the polynomial-weighted sup over the
    whole torus is attained in the far tail and grows with j, whereas on a
    fixed scaled shell the constant is j-stable.
    """
    g = _as_physical(f)
    x1, x2 = physical_coords(f.grid)
    r = np.hypot(np.broadcast_to(x1, g.values.shape), np.broadcast_to(x2, g.values.shape))
    scaled = 2.0**j * np.abs(r - center_radius)
    weighted = np.abs(g.values) * (1.0 + scaled) ** order
    if shell_limit is not None:
        weighted = weighted[scaled <= shell_limit]
        if weighted.size == 0:
            raise ValueError("shell contains no grid points at this resolution")
    return float(weighted.max() / 2.0 ** (1.5 * j))


def knapp_center_value(grid: GridSpec, j: int, c1: float = DEFAULT_C1, t: float = 1.5) -> float:
    """|half-wave propagated Knapp field| at the box center x = (0, -t), in units of 2^{3j/2}."""
    f = knapp(grid, j, c1)
    g = _as_physical(half_wave(f, t))
    idx = round(-t / grid.cell) % grid.n
    return float(abs(g.values[0, idx]) / 2.0 ** (1.5 * j))


def knapp_coherence(grid: GridSpec, j: int, c1: float = DEFAULT_C1, t: float = 1.5) -> float:
    """Attained center value over the triangle-inequality bound sum |f_hat| / period^2.

    Equals 1 exactly when every frequency mode arrives at the box center in
    phase; the quadratic phase spread across the window makes it < 1, and it
    increases to 1 with j because the relative spread shrinks like 2^{-j} c1^2.
    """
    f = knapp(grid, j, c1)
    fhat = f.values if f.space == "frequency" else to_frequency(f).values
    bound = float(np.abs(fhat).sum() / grid.period**2)
    return knapp_center_value(grid, j, c1, t) * 2.0 ** (1.5 * j) / bound


def annulus_shell_minimum(
    grid: GridSpec, j: int, t: float = 1.5, c0: float = DEFAULT_C0
) -> float:
    """min |half-wave propagated annulus field| over t - c0 2^{-j} <= |x| <= t, in units of 2^{3j/2}."""
    f = annulus(grid, j)
    g = _as_physical(half_wave(f, t))
    x1, x2 = physical_coords(grid)
    r = np.hypot(np.broadcast_to(x1, g.values.shape), np.broadcast_to(x2, g.values.shape))
    mask = (r >= t - c0 * 2.0**-j) & (r <= t)
    if not mask.any():
        raise ValueError("shell contains no grid points at this resolution")
    return float(np.abs(g.values[mask]).min() / 2.0 ** (1.5 * j))


def knapp_phase_error(j: int, c1: float, t: float, region: str = "plateau", mesh: int = 257) -> float:
    """max |e^{i t (|xi| - xi_2)} - 1| over the Knapp window's plateau or support.

    The exponent t(|xi| - xi_2) = t xi_2 (sqrt(1 + s^2) - 1), s = xi_1/xi_2,
    is what separates the plate from a true plane wave; it is O(c1^2)
    uniformly in j.  Maximized on a corner mesh of the stated region:
    plateau |xi_1| <= 2 c1 2^{j/2}, xi_2 in [2^{j-1}, 2^{j+1}];
    support |xi_1| <= 4 c1 2^{j/2}, xi_2 in [2^{j-2}, 2^{j+2}].
    """
    if region == "plateau":
        a1, lo2, hi2 = 2.0 * c1 * 2.0 ** (j / 2.0), 2.0 ** (j - 1), 2.0 ** (j + 1)
    elif region == "support":
        a1, lo2, hi2 = 4.0 * c1 * 2.0 ** (j / 2.0), 2.0 ** (j - 2), 2.0 ** (j + 2)
    else:
        raise ValueError(f"region must be 'plateau' or 'support', got {region!r}")
    xi1 = np.linspace(-a1, a1, mesh)
    xi2 = np.linspace(lo2, hi2, mesh)
    phase = t * (np.hypot(xi1[:, None], xi2[None, :]) - xi2[None, :])
    return float(np.abs(np.exp(1j * phase) - 1.0).max())

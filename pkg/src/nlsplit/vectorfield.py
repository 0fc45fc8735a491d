"""
Galilean vectorfield diagnostics: the operator x + i t grad in its direct
and factored (chirp-conjugated gradient) forms, its exact commutator with
the frequency cutoff, the pseudo-conformal quantity, and weighted
interpolation (Gagliardo-Nirenberg) ratios.

The direct form is canonical; the factored form exists as a cross-check and
is guarded against chirp aliasing (the conjugating phase exp(-i|x|^2/(2t))
oscillates with local wavenumber |x|/|t|, which the lattice must resolve).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChirpUnderresolvedError, ConstraintError, DegenerateDenominatorError
from .norms import delta_of_r, lp_norm, mass
from .spectral_core import CutoffProfile, Field, cutoff_symbol, gradient

#: Maximum chirp phase advance per cell tolerated by the factored form.
CHIRP_GUARD = np.pi / 4


def galilean_direct(f: Field, t: float) -> list[Field]:
    """Component a of (x + i t grad) f as x_a * f + i t * (spectral d_a f)."""
    grads = gradient(f)
    return [
        Field(f.grid, x_a * f.values + 1j * t * g.values)
        for x_a, g in zip(f.grid.coordinate_meshes(), grads)
    ]


def galilean_norm(f: Field, t: float) -> float:
    """L^2 norm of the vectorfield application, sqrt(sum_a ||.||^2)."""
    return math.sqrt(sum(mass(c) for c in galilean_direct(f, t)))


def galilean_factored(f: Field, t: float) -> list[Field]:
    """
    Factored form i t e^{i|x|^2/(2t)} grad (e^{-i|x|^2/(2t)} f).

    Requires t != 0 and a grid fine enough for the chirp:
    dx * (L/|t|) <= pi/4, else raises ChirpUnderresolvedError.
    """
    if t == 0:
        raise ChirpUnderresolvedError("factored form is undefined at t = 0")
    grid = f.grid
    if grid.mesh_size * (grid.half_width / abs(t)) > CHIRP_GUARD:
        raise ChirpUnderresolvedError(
            f"chirp underresolved: dx*L/|t| = {grid.mesh_size * grid.half_width / abs(t):.4f} "
            f"exceeds {CHIRP_GUARD:.4f} (refine the grid or increase |t|)"
        )
    radius_sq = sum(x_a**2 for x_a in grid.coordinate_meshes())
    chirp = np.exp(-0.5j * radius_sq / t)
    inner = Field(grid, chirp * f.values)
    return [Field(grid, 1j * t * np.conj(chirp) * g.values) for g in gradient(inner)]


def galilean_cutoff_commutator(
    f: Field, t: float, tau: float, chi: CutoffProfile
) -> tuple[list[Field], list[Field]]:
    """
    The commutator of the vectorfield with the frequency cutoff, computed
    two independent ways:

    * composed:  (x + i t grad) applied to the low-passed field, minus the
      low-pass of the applied field;
    * symbol:    the exact multiplier  i sqrt(tau) (grad chi)(sqrt(tau) xi)
      acting componentwise on fhat.

    The gradient part commutes with the cutoff (both diagonal), so the
    result is independent of t; only the position part contributes.
    """
    if not 0.0 < tau < 1.0:
        raise ConstraintError(f"commutator requires tau in (0, 1), got {tau}")
    grid = f.grid
    low = Field(grid, np.fft.ifftn(cutoff_symbol(grid, tau, chi) * np.fft.fftn(f.values)))
    applied = galilean_direct(f, t)
    applied_low = galilean_direct(low, t)
    csym = cutoff_symbol(grid, tau, chi)
    composed = [
        Field(grid, a_low.values - np.fft.ifftn(csym * np.fft.fftn(a.values)))
        for a_low, a in zip(applied_low, applied)
    ]
    rt = math.sqrt(tau)
    radius = grid.frequency_radius()
    radial_grad = chi.grad(rt * radius)
    safe_radius = np.where(radius > 0, radius, 1.0)  # grad chi vanishes at xi = 0 anyway
    fhat = np.fft.fftn(f.values)
    symbol_way = [
        Field(grid, np.fft.ifftn(1j * rt * radial_grad * (k / safe_radius) * fhat))
        for k in grid.frequency_meshes()
    ]
    return composed, symbol_way


@dataclass(frozen=True)
class PseudoConformalRecord:
    """Pseudo-conformal quantity at one time: total = j_norm_sq/2 + potential."""

    time: float
    j_norm_sq: float
    potential_term: float
    total: float


def pseudoconformal_quantity(f: Field, t: float, sigma: float) -> PseudoConformalRecord:
    """
    Half the squared vectorfield norm plus t^2/(sigma+1) times the
    L^(2 sigma + 2) potential.  Conserved along the flow at sigma = 2/d,
    non-increasing (t >= 0) above it.
    """
    j_norm_sq = galilean_norm(f, t) ** 2
    potential = t**2 / (sigma + 1.0) * lp_norm(f, 2 * sigma + 2) ** (2 * sigma + 2)
    return PseudoConformalRecord(
        time=t, j_norm_sq=j_norm_sq, potential_term=potential, total=0.5 * j_norm_sq + potential
    )


def gagliardo_nirenberg_ratio(f: Field, t: float, r: float) -> float:
    """
    Weighted interpolation ratio
    ||f||_{L^r} |t|^{delta(r)} / (||f||_{L^2}^{1-delta(r)} ||(x+it grad) f||_{L^2}^{delta(r)}),
    with delta(r) = d(1/2 - 1/r).  Bounded above by a dimensional constant.
    """
    if t == 0:
        raise ConstraintError("the weighted ratio requires t != 0")
    d = f.grid.dimension
    dr = delta_of_r(r, d)
    l2 = lp_norm(f, 2)
    if l2 == 0.0:
        raise DegenerateDenominatorError("zero field has no normalized ratio")
    jn = galilean_norm(f, t)
    if jn == 0.0:
        raise DegenerateDenominatorError("vectorfield norm vanishes")
    return lp_norm(f, r) * abs(t) ** dr / (l2 ** (1.0 - dr) * jn**dr)

"""
Spatial discretization on a truncated periodic box with Fourier-multiplier
calculus and a smooth low-pass frequency cutoff.

Conventions used everywhere in the package:

* The box is [-L, L) per axis, sampled at N points, so dx = 2L/N and the
  frequency lattice is xi_j = (pi/L) * j for j in [-N/2, N/2), stored in FFT
  order (``2*pi*fftfreq``).
* The forward transform is the plain unnormalized FFT sum; the inverse
  carries the 1/N^d factor.  The discrete Plancherel identity is then

      dx^d * sum |f|^2  =  (dx^d / N^d) * sum |fhat|^2,

  i.e. the Plancherel constant is dx^d / N^d.  Every norm routine in the
  package relies on this one normalization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintError, NonFiniteError


@dataclass(frozen=True)
class GridSpec:
    """
    Truncated periodic spatial domain and its frequency lattice.

    Parameters
    ----------
    dimension : int
        Spatial dimension, 1 or 2.
    points_per_axis : int
        Number of samples per axis N.  Must be even and at least 8;
        powers of two keep the FFTs fast.
    half_width : float
        Half box size L > 0; the box is [-L, L) per axis.
    """

    dimension: int
    points_per_axis: int
    half_width: float

    def __post_init__(self) -> None:
        if self.dimension not in (1, 2):
            raise ConstraintError(f"dimension must be 1 or 2, got {self.dimension}")
        n = self.points_per_axis
        if n < 8 or n % 2 != 0:
            raise ConstraintError(f"points_per_axis must be even and >= 8, got {n}")
        if not self.half_width > 0:
            raise ConstraintError(f"half_width must be positive, got {self.half_width}")

    @property
    def mesh_size(self) -> float:
        return 2.0 * self.half_width / self.points_per_axis

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.dimension

    @property
    def total_points(self) -> int:
        return self.points_per_axis**self.dimension

    @property
    def cell_volume(self) -> float:
        """Quadrature weight dx^d of one lattice cell."""
        return self.mesh_size**self.dimension

    @property
    def plancherel_constant(self) -> float:
        """Constant c with dx^d*sum|f|^2 = c*sum|fhat|^2 (equals dx^d/N^d)."""
        return self.cell_volume / self.total_points

    @property
    def coordinate_axis(self) -> np.ndarray:
        """Physical samples -L + m*dx along one axis."""
        return -self.half_width + self.mesh_size * np.arange(self.points_per_axis)

    @property
    def frequency_axis(self) -> np.ndarray:
        """Frequency samples (pi/L)*j along one axis, FFT ordering."""
        return 2.0 * np.pi * np.fft.fftfreq(self.points_per_axis, d=self.mesh_size)

    def coordinate_meshes(self) -> tuple[np.ndarray, ...]:
        """d arrays of shape ``self.shape`` holding each coordinate component."""
        ax = self.coordinate_axis
        if self.dimension == 1:
            return (ax,)
        return tuple(np.meshgrid(ax, ax, indexing="ij"))

    def frequency_meshes(self) -> tuple[np.ndarray, ...]:
        """d arrays of shape ``self.shape`` holding each frequency component."""
        ax = self.frequency_axis
        if self.dimension == 1:
            return (ax,)
        return tuple(np.meshgrid(ax, ax, indexing="ij"))

    def frequency_radius(self) -> np.ndarray:
        """|xi| on the lattice (radial evaluation for ball cutoffs)."""
        if self.dimension == 1:
            return np.abs(self.frequency_axis)
        k1, k2 = self.frequency_meshes()
        return np.sqrt(k1**2 + k2**2)

    def laplacian_symbol(self) -> np.ndarray:
        """|xi|^2 on the lattice."""
        if self.dimension == 1:
            return self.frequency_axis**2
        k1, k2 = self.frequency_meshes()
        return k1**2 + k2**2

    def boundary_band_points(self) -> int:
        """Width, in lattice points, of the guarded band near each boundary."""
        return int(np.ceil(0.05 * self.points_per_axis))

    def boundary_mask(self) -> np.ndarray:
        """Boolean mask of samples within dx*ceil(0.05 N) of the box boundary."""
        b = self.boundary_band_points()
        n = self.points_per_axis
        axis_band = np.zeros(n, dtype=bool)
        axis_band[:b] = True
        axis_band[n - b :] = True
        if self.dimension == 1:
            return axis_band
        m1, m2 = np.meshgrid(axis_band, axis_band, indexing="ij")
        return m1 | m2


@dataclass(frozen=True)
class Field:
    """
    Complex-valued state sampled on a grid, physical space, row-major.

    ``values`` is treated as immutable: every operation allocates a new
    array and never writes through an input field.
    """

    grid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        v = np.asarray(self.values)
        if v.shape != self.grid.shape:
            raise ConstraintError(f"field shape {v.shape} does not match grid shape {self.grid.shape}")
        if v.dtype != np.complex128:
            v = v.astype(np.complex128)
        object.__setattr__(self, "values", v)

    def check_finite(self, context: str = "field", step: int | None = None) -> None:
        if not np.all(np.isfinite(self.values)):
            raise NonFiniteError(f"non-finite entries detected in {context}", step=step)

    def boundary_mass_fraction(self) -> float:
        """Fraction of total mass within the guarded boundary band."""
        density = np.abs(self.values) ** 2
        total = float(density.sum())
        if total == 0.0:
            return 0.0
        return float(density[self.grid.boundary_mask()].sum()) / total


def _smooth_transition(order: int) -> np.polynomial.Polynomial:
    """
    Descending C^order transition on s in [0, 1]: the unique polynomial of
    degree 2*order+1 with value 1 at s=0, 0 at s=1, and `order` vanishing
    derivatives at both ends.  Built by integrating s^order (1-s)^order.
    """
    bump = np.polynomial.Polynomial([0.0, 1.0]) ** order * np.polynomial.Polynomial([1.0, -1.0]) ** order
    ramp = bump.integ()
    return 1.0 - ramp / ramp(1.0)


@dataclass(frozen=True)
class CutoffProfile:
    """
    Radial C^k bump: 1 on the closed unit ball, 0 outside radius 2, and a
    monotone polynomial transition in between.

    ``transition`` holds the polynomial on 1 < |y| < 2 in the variable
    s = |y| - 1; ``transition_grad`` is its analytic derivative (kept so the
    stored gradient can be cross-checked against finite differences).
    """

    regularity_order: int
    transition: np.polynomial.Polynomial = field(repr=False)
    transition_grad: np.polynomial.Polynomial = field(repr=False)

    @classmethod
    def smoothstep(cls, regularity_order: int = 4) -> "CutoffProfile":
        if regularity_order < 2:
            raise ConstraintError("cutoff regularity_order must be >= 2 to cover d <= 2")
        poly = _smooth_transition(regularity_order)
        return cls(regularity_order=regularity_order, transition=poly, transition_grad=poly.deriv())

    def __call__(self, y) -> np.ndarray:
        """Evaluate chi at radius |y| (vectorized)."""
        y = np.abs(np.asarray(y, dtype=float))
        s = np.clip(y - 1.0, 0.0, 1.0)
        mid = self.transition(s)
        return np.where(y <= 1.0, 1.0, np.where(y >= 2.0, 0.0, mid))

    def grad(self, y) -> np.ndarray:
        """Radial derivative d chi/dy at radius |y|; zero outside (1, 2)."""
        y = np.abs(np.asarray(y, dtype=float))
        s = np.clip(y - 1.0, 0.0, 1.0)
        mid = self.transition_grad(s)
        return np.where((y > 1.0) & (y < 2.0), mid, 0.0)

    @property
    def max_grad(self) -> float:
        """max |d chi/dy|, attained mid-transition for the symmetric bump."""
        return float(abs(self.transition_grad(0.5)))


def chi_eval(y, chi: CutoffProfile) -> np.ndarray:
    """Radial profile value chi(|y|) in [0, 1]."""
    return chi(y)


def chi_grad_eval(y, chi: CutoffProfile) -> np.ndarray:
    """Radial derivative of the profile, zero outside the transition shell."""
    return chi.grad(y)


def forward_transform(f: Field) -> np.ndarray:
    """Unnormalized DFT coefficients of a field, indexed by the FFT-ordered lattice."""
    return np.fft.fftn(f.values)


def inverse_transform(grid: GridSpec, spectrum: np.ndarray) -> Field:
    """Inverse DFT (carries the 1/N^d factor) back to a physical-space field."""
    return Field(grid, np.fft.ifftn(spectrum))


def apply_multiplier(f: Field, symbol) -> Field:
    """
    Apply a Fourier multiplier: ifft(m(xi) * fhat).

    ``symbol`` is either an array on the FFT-ordered frequency lattice or a
    callable evaluated on the frequency component meshes.
    """
    sym = symbol(*f.grid.frequency_meshes()) if callable(symbol) else np.asarray(symbol)
    return Field(f.grid, np.fft.ifftn(sym * np.fft.fftn(f.values)))


def gradient(f: Field) -> list[Field]:
    """Spectral gradient: component a is the multiplier i*xi_a."""
    fhat = np.fft.fftn(f.values)
    return [Field(f.grid, np.fft.ifftn(1j * k * fhat)) for k in f.grid.frequency_meshes()]


def cutoff_symbol(grid: GridSpec, tau: float, chi: CutoffProfile) -> np.ndarray:
    """Low-pass symbol chi(sqrt(tau)*|xi|) on the lattice."""
    if not 0.0 < tau <= 1.0:
        raise ConstraintError(f"cutoff requires tau in (0, 1], got {tau}")
    return chi(np.sqrt(tau) * grid.frequency_radius())


def apply_cutoff(f: Field, tau: float, chi: CutoffProfile) -> Field:
    """Remove frequencies above ~tau^(-1/2): multiplier chi(sqrt(tau)*|xi|)."""
    return apply_multiplier(f, cutoff_symbol(f.grid, tau, chi))

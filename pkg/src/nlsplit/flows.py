"""
Elementary flows of the splitting scheme and the time steppers built from
them:

* ``nonlinear_flow``   exact phase flow of i u_t = |u|^(2 sigma) u,
* ``linear_flow``      free Schrodinger group, multiplier exp(-i t |xi|^2 / 2),
* ``filtered_linear_flow``  the same group pre-composed with the low-pass
  cutoff (one fused multiplier pass),
* ``lie_trotter_step`` / ``evolve``  the (optionally filtered) Lie-Trotter
  scheme u -> S_tau(tau) N(tau) u, with the cutoff applied once to the datum
  when filtering is on,
* ``strang_reference`` a second-order symmetric splitting at a much finer
  step, used as the reference solution in every error study.

Stepping is sequential in n; distinct runs are independent.  All functions
allocate fresh arrays, so concurrent use on distinct fields is safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundaryLeakError, ConstraintError, NonFiniteError
from .norms import energy, mass
from .spectral_core import CutoffProfile, Field, GridSpec, cutoff_symbol

#: Relative slack for "tau_ref divides the sample time" checks.
TIME_DIVISIBILITY_TOL = 1e-12


@dataclass(frozen=True)
class SchemeParams:
    """
    Everything defining one run of the splitting scheme.

    Validity constraints: sigma >= 2/d (mass-critical or above), sigma > 1/2
    (two continuous derivatives of the nonlinearity), tau in (0, 1), and a
    cutoff with regularity k > 1 + d/2.  Energy-subcriticality is vacuous
    for d <= 2.
    """

    sigma: float
    tau: float
    dimension: int
    filter_enabled: bool = True
    chi: CutoffProfile = field(default_factory=CutoffProfile.smoothstep)

    def __post_init__(self) -> None:
        if self.dimension not in (1, 2):
            raise ConstraintError(f"dimension must be 1 or 2, got {self.dimension}")
        if self.sigma < 2.0 / self.dimension:
            raise ConstraintError(
                f"sigma={self.sigma} is below the mass-critical threshold 2/d={2.0 / self.dimension}"
            )
        if not self.sigma > 0.5:
            raise ConstraintError(f"sigma={self.sigma} must exceed 1/2")
        if not 0.0 < self.tau < 1.0:
            raise ConstraintError(f"tau must lie in (0, 1), got {self.tau}")
        if not self.chi.regularity_order > 1 + self.dimension / 2:
            raise ConstraintError(
                f"cutoff regularity {self.chi.regularity_order} must exceed 1 + d/2 = {1 + self.dimension / 2}"
            )


@dataclass(frozen=True)
class Trajectory:
    """
    Checkpointed states of one run: field number i was recorded after
    ``steps[i]`` steps of size ``tau``, i.e. at time steps[i]*tau.
    """

    tau: float
    steps: tuple[int, ...]
    fields: tuple[Field, ...]
    params: SchemeParams | None = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.steps) != len(self.fields):
            raise ConstraintError("checkpoint steps and fields must align")
        if any(b <= a for a, b in zip(self.steps, self.steps[1:])):
            raise ConstraintError("checkpoint steps must be strictly increasing")
        grids = {f.grid for f in self.fields}
        if len(grids) > 1:
            raise ConstraintError("all checkpoints must share one grid")

    @property
    def times(self) -> np.ndarray:
        return self.tau * np.asarray(self.steps, dtype=float)

    def field_at_step(self, n: int) -> Field:
        try:
            return self.fields[self.steps.index(n)]
        except ValueError:
            raise KeyError(f"no checkpoint stored at step {n}") from None

    def field_at_time(self, t: float) -> Field:
        n = int(round(t / self.tau))
        if abs(n * self.tau - t) > TIME_DIVISIBILITY_TOL * max(1.0, abs(t)):
            raise KeyError(f"time {t} is not a step multiple of tau={self.tau}")
        return self.field_at_step(n)


def nonlinear_flow(f: Field, t: float, sigma: float) -> Field:
    """
    Exact nonlinear phase flow: pointwise f * exp(-i t |f|^(2 sigma)).

    The modulus is preserved pointwise; |f|^(2 sigma) is evaluated as
    (|f|^2)^sigma so the phase is exactly 0 at zeros of f.
    """
    if sigma <= 0:
        raise ConstraintError(f"nonlinear_flow requires sigma > 0, got {sigma}")
    v = f.values
    mod2 = v.real**2 + v.imag**2
    return Field(f.grid, v * np.exp(-1j * t * mod2**sigma))


def linear_symbol(grid: GridSpec, t: float) -> np.ndarray:
    """Free-group multiplier exp(-i t |xi|^2 / 2) on the lattice."""
    return np.exp(-0.5j * t * grid.laplacian_symbol())


def linear_flow(f: Field, t: float) -> Field:
    """Free Schrodinger group (unitary on L^2)."""
    return Field(f.grid, np.fft.ifftn(linear_symbol(f.grid, t) * np.fft.fftn(f.values)))


def filtered_linear_flow(f: Field, t: float, params: SchemeParams) -> Field:
    """
    Frequency-localized free group: linear flow of the low-passed field,
    applied as a single fused multiplier (the two diagonal symbols commute).
    """
    sym = linear_symbol(f.grid, t) * cutoff_symbol(f.grid, params.tau, params.chi)
    return Field(f.grid, np.fft.ifftn(sym * np.fft.fftn(f.values)))


def _step_symbol(grid: GridSpec, params: SchemeParams) -> np.ndarray:
    sym = linear_symbol(grid, params.tau)
    if params.filter_enabled:
        sym = sym * cutoff_symbol(grid, params.tau, params.chi)
    return sym


def _apply_step(values: np.ndarray, symbol: np.ndarray, tau: float, sigma: float) -> np.ndarray:
    # overflow here shows up as NaN/Inf and is reported by the caller's
    # finiteness check, so numpy's warning is redundant
    with np.errstate(over="ignore", invalid="ignore"):
        mod2 = values.real**2 + values.imag**2
        staged = values * np.exp(-1j * tau * mod2**sigma)
    return np.fft.ifftn(symbol * np.fft.fftn(staged))


def lie_trotter_step(f: Field, params: SchemeParams) -> Field:
    """One scheme step: the filtered (or plain) linear flow after the phase flow."""
    out = _apply_step(f.values, _step_symbol(f.grid, params), params.tau, params.sigma)
    result = Field(f.grid, out)
    result.check_finite("lie_trotter_step output")
    return result


def _check_boundary(f: Field, threshold: float | None, time: float) -> None:
    if threshold is None:
        return
    frac = f.boundary_mass_fraction()
    if frac > threshold:
        raise BoundaryLeakError(
            f"boundary mass fraction {frac:.3e} exceeds threshold {threshold:.3e} at t={time:g}",
            time=time,
            fraction=frac,
        )


def evolve(
    f0: Field,
    params: SchemeParams,
    n_steps: int,
    checkpoint_stride: int = 1,
    boundary_threshold: float | None = None,
) -> Trajectory:
    """
    Iterate the splitting scheme for ``n_steps`` steps, recording every
    ``checkpoint_stride``-th state (step 0, after the initial cutoff when
    filtering is on, is always recorded).

    Raises ``NonFiniteError`` with the offending step index if the state
    corrupts and ``BoundaryLeakError`` if a checkpoint holds more than
    ``boundary_threshold`` of its mass in the boundary band.
    """
    if n_steps < 0:
        raise ConstraintError("n_steps must be nonnegative")
    if checkpoint_stride < 1:
        raise ConstraintError("checkpoint_stride must be >= 1")
    symbol = _step_symbol(f0.grid, params)
    if params.filter_enabled:
        u = np.fft.ifftn(cutoff_symbol(f0.grid, params.tau, params.chi) * np.fft.fftn(f0.values))
    else:
        u = f0.values.copy()
    steps = [0]
    fields = [Field(f0.grid, u)]
    _check_boundary(fields[0], boundary_threshold, 0.0)
    for n in range(1, n_steps + 1):
        u = _apply_step(u, symbol, params.tau, params.sigma)
        if not np.all(np.isfinite(u)):
            raise NonFiniteError(f"state corrupted at step {n}", step=n)
        if n % checkpoint_stride == 0:
            f = Field(f0.grid, u)
            _check_boundary(f, boundary_threshold, n * params.tau)
            steps.append(n)
            fields.append(f)
    return Trajectory(tau=params.tau, steps=tuple(steps), fields=tuple(fields), params=params)


def strang_reference(
    f0: Field,
    sigma: float,
    tau_ref: float,
    t_final: float,
    sample_times: list[float],
    boundary_threshold: float | None = None,
) -> Trajectory:
    """
    Unfiltered second-order symmetric splitting (half linear, full phase,
    half linear) at a fine step, sampled at the requested times.  Serves as
    the reference solution wherever an "exact" trajectory is needed; its
    mass and energy drifts are recorded in ``Trajectory.diagnostics``.
    """
    if tau_ref <= 0:
        raise ConstraintError("tau_ref must be positive")
    sample_steps = []
    for t in sorted(set(sample_times)):
        n = int(round(t / tau_ref))
        if abs(n * tau_ref - t) > TIME_DIVISIBILITY_TOL * max(1.0, abs(t)):
            raise ConstraintError(f"tau_ref={tau_ref} does not divide sample time {t}")
        sample_steps.append(n)
    n_total = int(round(t_final / tau_ref))
    if sample_steps and sample_steps[-1] > n_total:
        raise ConstraintError("sample times must not exceed t_final")
    wanted = set(sample_steps)
    half = linear_symbol(f0.grid, 0.5 * tau_ref)
    u = f0.values.copy()
    steps, fields = [], []
    if 0 in wanted:
        steps.append(0)
        fields.append(Field(f0.grid, u.copy()))
    mass0 = mass(f0)
    energy0 = energy(f0, sigma)
    mass_drift = 0.0
    energy_drift = 0.0
    for n in range(1, n_total + 1):
        u = np.fft.ifftn(half * np.fft.fftn(u))
        mod2 = u.real**2 + u.imag**2
        u = u * np.exp(-1j * tau_ref * mod2**sigma)
        u = np.fft.ifftn(half * np.fft.fftn(u))
        if n in wanted:
            if not np.all(np.isfinite(u)):
                raise NonFiniteError(f"reference corrupted at step {n}", step=n)
            f = Field(f0.grid, u.copy())
            _check_boundary(f, boundary_threshold, n * tau_ref)
            steps.append(n)
            fields.append(f)
            mass_drift = max(mass_drift, abs(mass(f) - mass0) / mass0) if mass0 else 0.0
            energy_drift = max(energy_drift, abs(energy(f, sigma) - energy0) / abs(energy0)) if energy0 else 0.0
    diag = {"mass_drift": mass_drift, "energy_drift": energy_drift, "tau_ref": tau_ref}
    return Trajectory(tau=tau_ref, steps=tuple(steps), fields=tuple(fields), diagnostics=diag)


def discrete_duhamel_reconstruct(traj: Trajectory, start: int, end: int) -> Field:
    """
    Rebuild the state at checkpoint ``end`` from the one at ``start`` via the
    discrete Duhamel sum: propagate the start state over (end-start) steps
    with the filtered linear group and add tau-weighted propagations of the
    midpoint nonlinear increments (N(tau) - 1)/tau of the stored iterates.

    Requires consecutive checkpoints between ``start`` and ``end`` and a
    trajectory produced by ``evolve``.
    """
    params = traj.params
    if params is None:
        raise ConstraintError("duhamel reconstruction needs the stepping parameters")
    if not start < end:
        raise ConstraintError("need start < end")
    grid = traj.fields[0].grid
    tau = params.tau

    def propagate(values: np.ndarray, n: int) -> np.ndarray:
        sym = linear_symbol(grid, n * tau)
        if params.filter_enabled:
            sym = sym * cutoff_symbol(grid, tau, params.chi)
        return np.fft.ifftn(sym * np.fft.fftn(values))

    acc = propagate(traj.field_at_step(start).values, end - start)
    for k in range(start, end):
        zk = traj.field_at_step(k)
        increment = (nonlinear_flow(zk, tau, params.sigma).values - zk.values) / tau
        acc = acc + tau * propagate(increment, end - k)
    return Field(grid, acc)

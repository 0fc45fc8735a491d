"""
Lebesgue/weighted norms on the lattice, admissible-pair arithmetic, and
discrete-in-time Strichartz accumulators.

Quadrature is the plain lattice sum times dx^d (spectrally accurate for the
smooth periodic fields this package produces).  The r = infinity norm is the
lattice max, a lower bound of the continuum sup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintError
from .spectral_core import Field, gradient

#: Tolerance for the scaling identity 2/q = delta(r); the identity is exact
#: in rationals but suffers 1-ulp float noise (e.g. 2/6 vs 1/2 - 1/6).
PAIR_IDENTITY_TOL = 1e-12


def lp_norm(f: Field, p: float) -> float:
    """L^p lattice norm (dx^d sum |f|^p)^(1/p); lattice max for p = inf."""
    if p == np.inf:
        return float(np.max(np.abs(f.values)))
    if p < 1:
        raise ConstraintError(f"lp_norm requires p >= 1, got {p}")
    mod = np.abs(f.values)
    if p == 2.0:
        return math.sqrt(f.grid.cell_volume * float(np.sum(mod * mod)))
    return float((f.grid.cell_volume * np.sum(mod**p)) ** (1.0 / p))


def mass(f: Field) -> float:
    """Squared L^2 norm, the conserved mass."""
    mod2 = f.values.real**2 + f.values.imag**2
    return f.grid.cell_volume * float(np.sum(mod2))


def energy(f: Field, sigma: float) -> float:
    """Defocusing energy: half the gradient mass plus the potential term."""
    grad_mass = sum(mass(g) for g in gradient(f))
    potential = lp_norm(f, 2 * sigma + 2) ** (2 * sigma + 2)
    return 0.5 * grad_mass + potential / (sigma + 1.0)


def weighted_position_norm(f: Field) -> float:
    """L^2 norm of x*f (first-moment weight), sqrt(sum_a ||x_a f||^2)."""
    acc = 0.0
    for x_a in f.grid.coordinate_meshes():
        acc += f.grid.cell_volume * float(np.sum((x_a * np.abs(f.values)) ** 2))
    return math.sqrt(acc)


def sigma_norm(f: Field) -> float:
    """Conformal-space norm: sqrt(||f||^2 + ||grad f||^2 + ||x f||^2)."""
    grad_mass = sum(mass(g) for g in gradient(f))
    return math.sqrt(mass(f) + grad_mass + weighted_position_norm(f) ** 2)


def delta_of_r(r: float, d: int) -> float:
    """Scaling exponent delta(r) = d*(1/2 - 1/r), with 1/inf = 0."""
    if r < 2:
        raise ConstraintError(f"delta_of_r requires r >= 2, got {r}")
    return d * (0.5 - (0.0 if r == np.inf else 1.0 / r))


def admissible_check(q: float, r: float, d: int) -> bool:
    """Whether (q, r) is a Strichartz-admissible exponent pair in dimension d."""
    if d == 1:
        r_ok = 2 <= r <= np.inf
        q_ok = 4 <= q <= np.inf
    elif d == 2:
        r_ok = 2 <= r < np.inf
        q_ok = 2 < q <= np.inf
    else:
        r_ok = 2 <= r < 2 * d / (d - 2)
        q_ok = 2 < q <= np.inf
    if not (r_ok and q_ok):
        return False
    lhs = 0.0 if q == np.inf else 2.0 / q
    return abs(lhs - delta_of_r(r, d)) <= PAIR_IDENTITY_TOL


@dataclass(frozen=True)
class AdmissiblePair:
    """Exponent pair validated against the scaling identity 2/q = delta(r)."""

    q: float
    r: float
    dimension: int

    def __post_init__(self) -> None:
        if not admissible_check(self.q, self.r, self.dimension):
            raise ConstraintError(f"pair (q={self.q}, r={self.r}) is not admissible in d={self.dimension}")


def canonical_pair(sigma: float, d: int) -> AdmissiblePair:
    """The pair ((4*sigma+4)/(d*sigma), 2*sigma+2) used by all the nonlinear estimates."""
    if sigma <= 0:
        raise ConstraintError(f"canonical_pair requires sigma > 0, got {sigma}")
    return AdmissiblePair(q=(4 * sigma + 4) / (d * sigma), r=2 * sigma + 2, dimension=d)


def gamma_exponent(sigma: float, d: int) -> float:
    """
    Holder-budget exponent gamma = 4*sigma*(sigma+1)/(2-(d-2)*sigma), the
    unique solution of 1/q0' = 1/q0 + 2*sigma/gamma.  Its product with
    delta(r0) exceeds 1 throughout the valid sigma range, which is what
    makes time-interval splitting arguments close.
    """
    denom = 2.0 - (d - 2) * sigma
    if denom <= 0:
        raise ConstraintError(f"sigma={sigma} is not energy-subcritical in d={d}")
    return 4 * sigma * (sigma + 1) / denom


@dataclass
class StrichartzAccumulator:
    """
    Streaming l^q(I; L^r) norm over checkpoints spaced tau apart:
    (tau * sum ||u(n tau)||_{L^r}^q)^(1/q), or the running sup for q = inf.

    Terms are kept and combined with math.fsum at finalize time so the
    result is independent of ingestion order.
    """

    pair: AdmissiblePair
    tau: float
    _terms: list[float] = field(default_factory=list, repr=False)
    _running_max: float = field(default=0.0, repr=False)
    _count: int = field(default=0, repr=False)

    def accumulate(self, lr_norm: float) -> None:
        """Ingest one checkpoint's L^r norm."""
        if lr_norm < 0:
            raise ConstraintError("norm values must be nonnegative")
        self._count += 1
        if self.pair.q == np.inf:
            self._running_max = max(self._running_max, lr_norm)
        else:
            self._terms.append(self.tau * lr_norm**self.pair.q)

    def finalize(self) -> float:
        """The accumulated l^q(I; L^r) value."""
        if self.pair.q == np.inf:
            return self._running_max
        return math.fsum(self._terms) ** (1.0 / self.pair.q)

    @property
    def count(self) -> int:
        return self._count

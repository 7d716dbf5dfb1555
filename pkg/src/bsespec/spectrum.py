"""Broadening kernels, sampled spectra, and the shared peak-sum evaluator."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .validation import as_grid, frozen

GAUSSIAN = "gaussian"
LORENTZIAN = "lorentzian"


@dataclass(frozen=True)
class BroadeningKernel:
    """Smooth approximation g_sigma to the Dirac delta.

    Gaussian:   exp(-w^2 / (2 sigma^2)) / (sqrt(2 pi) sigma)
    Lorentzian: (sigma / pi) / (w^2 + sigma^2)
    """

    shape: str
    sigma: float

    def __post_init__(self):
        if self.shape not in (GAUSSIAN, LORENTZIAN):
            raise ValueError(f"unknown kernel shape {self.shape!r}")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def evaluate(self, omega):
        """Evaluate g_sigma; accepts real or complex arguments."""
        w = np.asarray(omega)
        s = self.sigma
        if self.shape == GAUSSIAN:
            return np.exp(-(w * w) / (2.0 * s * s)) / (np.sqrt(2.0 * np.pi) * s)
        return (s / np.pi) / (w * w + s * s)


@dataclass(frozen=True)
class Spectrum:
    """Sampled absorption curve (omega_i, eps(omega_i)) plus run metadata.

    ``values`` is complex only for the non-structure-preserving diagnostic
    assembly; every production path yields real values.
    """

    omegas: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "omegas", frozen(np.asarray(self.omegas, dtype=np.float64)))
        object.__setattr__(self, "values", frozen(np.asarray(self.values)))
        if self.omegas.shape != self.values.shape:
            raise ValueError("omegas and values must have equal length")

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)


def uniform_grid(omega_max: float, points: int = 2000) -> np.ndarray:
    """Uniform frequency grid on [0, omega_max]."""
    if not omega_max > 0:
        raise ValueError("omega_max must be positive")
    if points < 2:
        raise ValueError("need at least two grid points")
    return np.linspace(0.0, float(omega_max), int(points))


def peak_sum(grid, thetas, weights, kernel: BroadeningKernel, *,
             divide_by_theta: bool, norm_const: float = 1.0,
             scale: float = 1.0) -> np.ndarray:
    """Evaluate scale * norm_const * sum_j w_j [g(w - t_j) - g(w + t_j)] (/ t_j).

    The g(w - t) - g(w + t) combination makes the result an odd function of
    w by construction; with positive nodes and nonnegative weights it is
    nonnegative for w > 0.
    """
    grid = as_grid(grid)
    thetas = np.asarray(thetas, dtype=np.float64).ravel()
    weights = np.asarray(weights, dtype=np.float64).ravel()
    if thetas.shape != weights.shape:
        raise ValueError("thetas and weights must have equal length")
    if thetas.size == 0:
        return np.zeros_like(grid)
    coeff = weights / thetas if divide_by_theta else weights
    diff = kernel.evaluate(grid[:, None] - thetas[None, :])
    summ = kernel.evaluate(grid[:, None] + thetas[None, :])
    return (scale * norm_const) * ((diff - summ) @ coeff)

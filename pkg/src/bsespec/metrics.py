"""Accuracy metrics: the curve angle and convergence-history tooling.

The angle between two sampled curves is the principal angle between their
spans in L2, with the integrals approximated by a left-point rectangular
rule on the curves' own grid.  Spectra are odd, so comparisons are made on
the positive-frequency half-grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InsufficientSteps, ZeroNormCurve
from .spectrum import Spectrum
from .validation import as_grid, frozen


@dataclass(frozen=True, eq=False)
class CurvePair:
    """Two curves sampled on one shared ascending grid."""

    omegas: np.ndarray
    values_a: np.ndarray
    values_b: np.ndarray

    def __post_init__(self):
        grid = as_grid(self.omegas)
        a = np.asarray(self.values_a)
        b = np.asarray(self.values_b)
        if a.shape != grid.shape or b.shape != grid.shape:
            raise ValueError("curves must match the grid length")
        object.__setattr__(self, "omegas", frozen(grid))
        object.__setattr__(self, "values_a", frozen(a))
        object.__setattr__(self, "values_b", frozen(b))


def curve_angle(pair: CurvePair) -> float:
    """Principal angle in [0, pi/2] between the spans of the two curves.

    Symmetric in its arguments and invariant under nonzero scaling of
    either curve.

    Raises
    ------
    ZeroNormCurve
        Either curve has zero discrete L2 norm.
    """
    w = np.diff(pair.omegas)
    a = pair.values_a[:-1]
    b = pair.values_b[:-1]
    ip = np.sum(w * a * b.conj())
    na2 = float(np.sum(w * np.abs(a) ** 2))
    nb2 = float(np.sum(w * np.abs(b) ** 2))
    if na2 <= 0.0 or nb2 <= 0.0:
        raise ZeroNormCurve("cannot form an angle with a zero-norm curve")
    cosv = abs(ip) / np.sqrt(na2 * nb2)
    return float(np.arccos(min(cosv, 1.0)))


def spectrum_angle(a: Spectrum, b: Spectrum) -> float:
    """Angle between two spectra restricted to their shared w > 0 samples."""
    if a.omegas.shape != b.omegas.shape or not np.array_equal(a.omegas, b.omegas):
        raise ValueError("spectra must share one grid")
    mask = a.omegas > 0.0
    if np.count_nonzero(mask) < 2:
        raise ValueError("need at least two positive-frequency samples")
    return curve_angle(CurvePair(a.omegas[mask], a.values[mask], b.values[mask]))


def convergence_history(ham, d, config: dict, k_max: int, kernel, grid,
                        oracle: Spectrum) -> list[tuple[int, float]]:
    """Angle against the oracle for k = 1..k_max (even k only for the
    alternating-parity variant).

    Each row reruns the variant from scratch at that k, so the table is a
    pure function of its inputs.

    Parameters
    ----------
    config : dict
        Keys ``variant`` (required), ``gagq``, ``reorth``, ``scale``.
    """
    from .drivers import compute_spectrum

    variant = config["variant"]
    gagq = bool(config.get("gagq", False))
    reorth = config.get("reorth", "none")
    scale = float(config.get("scale", 1.0))
    step = 2 if variant == "gmg" else 1
    start = 2 if variant == "gmg" else 1
    rows = []
    for k in range(start, k_max + 1, step):
        spec = compute_spectrum(ham, d, variant=variant, k=k, gagq=gagq,
                                kernel=kernel, grid=grid, scale=scale,
                                reorth=reorth)
        rows.append((k, spectrum_angle(spec, oracle)))
    return rows


def two_rule_error_estimate(run, kernel, grid) -> tuple[float, float]:
    """Two a posteriori error estimators for a coefficient run:

    1. angle between the plain and averaged rules at the same k;
    2. angle between consecutive iterations (k-1 vs k), both assembled with
       the production (averaged) rule.

    After a lucky breakdown both rules coincide with the exact projection
    and both estimates vanish.
    """
    from .drivers import assemble_run
    from .lanczos import truncate_run

    back = 2 if run.variant == "gmg" else 1
    if run.breakdown_at is None and run.k < 1 + back:
        raise InsufficientSteps(f"estimators need k >= {1 + back} (or a breakdown run)")
    gauss = assemble_run(run, gagq=False, kernel=kernel, grid=grid)
    gagq = assemble_run(run, gagq=True, kernel=kernel, grid=grid)
    est_rule = spectrum_angle(gauss, gagq)
    if run.breakdown_at is not None:
        prev = run
    else:
        prev = truncate_run(run, run.k - back)
    prev_spec = assemble_run(prev, gagq=True, kernel=kernel, grid=grid)
    est_consecutive = spectrum_angle(prev_spec, gagq)
    return est_rule, est_consecutive

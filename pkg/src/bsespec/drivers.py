"""Variant dispatch shared by the estimator, the metrics tooling, and the CLI."""

from __future__ import annotations

from .hamiltonian import BseHamiltonian, estimate_h_norm, tda_view
from .lanczos import (
    COMPLEX_OMEGA_INNER,
    GMG_OMEGA_INNER,
    REAL_M_INNER,
    TDA_HERMITIAN,
    LanczosRun,
    lanczos_m_inner,
    lanczos_omega_inner,
    lanczos_tda,
)
from .quadrature import assemble_bse_spectrum, assemble_tda_spectrum
from .reference import exact_spectrum
from .spectrum import BroadeningKernel, Spectrum, uniform_grid
from .variants import (
    PAIRED_C,
    PAIRED_OMEGA,
    PairedLanczosRun,
    assemble_gmg_spectrum,
    assemble_paired_spectrum,
    lanczos_gmg,
    lanczos_paired,
)

VARIANTS = (
    TDA_HERMITIAN,
    REAL_M_INNER,
    COMPLEX_OMEGA_INNER,
    GMG_OMEGA_INNER,
    PAIRED_OMEGA,
    PAIRED_C,
)


def run_variant(ham: BseHamiltonian, d, variant: str, k: int,
                reorth: str = "none", retain_basis: bool = False):
    """Run the requested engine; returns a LanczosRun or PairedLanczosRun."""
    if variant == TDA_HERMITIAN:
        return lanczos_tda(ham.a, d, k, policy=reorth, retain_basis=retain_basis,
                           h_norm=estimate_h_norm(tda_view(ham)))
    if variant == REAL_M_INNER:
        return lanczos_m_inner(ham, d, k, policy=reorth, retain_basis=retain_basis)
    if variant == COMPLEX_OMEGA_INNER:
        return lanczos_omega_inner(ham, d, k, policy=reorth, retain_basis=retain_basis)
    if variant == GMG_OMEGA_INNER:
        run, _ = lanczos_gmg(ham, d, k, policy=reorth, retain_basis=retain_basis)
        return run
    if variant in (PAIRED_OMEGA, PAIRED_C):
        return lanczos_paired(ham, d, k, inner=variant)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def assemble_run(run, gagq: bool, kernel: BroadeningKernel, grid,
                 scale: float = 1.0) -> Spectrum:
    """Assemble the spectrum matching the run's variant."""
    if isinstance(run, PairedLanczosRun):
        if gagq:
            raise ValueError("the averaged rule is not defined for paired variants")
        return assemble_paired_spectrum(run, kernel, grid, scale=scale)
    if not isinstance(run, LanczosRun):
        raise TypeError(f"cannot assemble from {type(run).__name__}")
    if run.variant == TDA_HERMITIAN:
        return assemble_tda_spectrum(run, gagq, kernel, grid, scale=scale)
    if run.variant in (REAL_M_INNER, COMPLEX_OMEGA_INNER):
        return assemble_bse_spectrum(run, gagq, kernel, grid, scale=scale)
    if run.variant == GMG_OMEGA_INNER:
        return assemble_gmg_spectrum(run, gagq, kernel, grid, scale=scale)
    raise ValueError(f"unknown variant {run.variant!r}")


def compute_spectrum(ham: BseHamiltonian, d, *, variant: str, k: int,
                     gagq: bool, kernel: BroadeningKernel, grid,
                     scale: float = 1.0, reorth: str = "none") -> Spectrum:
    """One-shot run + assemble."""
    run = run_variant(ham, d, variant, k, reorth=reorth)
    return assemble_run(run, gagq, kernel, grid, scale=scale)


def oracle_spectrum(ham: BseHamiltonian, d, variant: str,
                    kernel: BroadeningKernel, grid,
                    scale: float = 1.0) -> Spectrum:
    """Full-diagonalization reference matching a variant's target operator
    (the diagonal block alone for the Hermitian variant)."""
    target = tda_view(ham) if variant == TDA_HERMITIAN else ham
    return exact_spectrum(target, d, kernel, grid, scale=scale)


def default_grid(ham: BseHamiltonian, variant: str, points: int = 2000,
                 omega_max: float | None = None):
    """Uniform [0, omega_max] grid; omega_max defaults to 1.5x the estimated
    largest eigenvalue."""
    if omega_max is None:
        target = tda_view(ham) if variant == TDA_HERMITIAN else ham
        est = estimate_h_norm(target)
        omega_max = 1.5 * est if est > 0 else 1.0
    return uniform_grid(omega_max, points)

"""Tridiagonal quadrature rules and spectrum assembly.

Gauss rule: diagonalize the k x k projection T_k.  Averaged rule: extend the
coefficients palindromically into a (2k-1) x (2k-1) matrix whose spectrum
contains that of T_{k-1} and interlaces it otherwise, improving accuracy at
negligible cost.  The averaged matrix can have (at most) one nonpositive
eigenvalue; that node is discarded, which provably leaves the weights of the
shared nodes untouched up to overall scaling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .exceptions import (
    BreakdownExact,
    ConvergenceFailure,
    InsufficientSteps,
    MultipleNonpositiveNodes,
)
from .lanczos import (
    COMPLEX_OMEGA_INNER,
    REAL_M_INNER,
    TDA_HERMITIAN,
    LanczosRun,
)
from .spectrum import BroadeningKernel, Spectrum, peak_sum
from .validation import frozen


@dataclass(frozen=True, eq=False)
class SymTridiagonal:
    """Real symmetric tridiagonal matrix stored as two bands."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=np.float64)
        e = np.asarray(self.offdiag, dtype=np.float64)
        if e.size != max(d.size - 1, 0):
            raise ValueError("offdiag must have length len(diag) - 1")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("tridiagonal bands must be finite")
        object.__setattr__(self, "diag", frozen(d))
        object.__setattr__(self, "offdiag", frozen(e))

    @property
    def m(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        t = np.diag(self.diag)
        if self.offdiag.size:
            t += np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)
        return t


@dataclass(frozen=True, eq=False)
class QuadratureNodes:
    """Positive nodes with nonnegative weights; counts discarded nodes."""

    thetas: np.ndarray
    weights: np.ndarray
    dropped_count: int


def build_tk(run: LanczosRun) -> SymTridiagonal:
    """Gauss matrix: diag = alphas, offdiag = betas[:-1] (truncated at
    breakdown since the run itself is)."""
    if run.k < 1:
        raise InsufficientSteps("run has no completed steps")
    return SymTridiagonal(run.alphas, run.betas[:-1])


def build_gagq(run: LanczosRun) -> SymTridiagonal:
    """Averaged matrix of dimension 2k-1: coefficients mirrored about step k,
    with the residual coefficient beta_k at the joint.

    Raises
    ------
    InsufficientSteps
        Fewer than two steps.
    BreakdownExact
        The run broke down; the plain rule from the truncated matrix is
        already exact, so the averaged extension adds nothing.
    """
    k = run.k
    if k < 2:
        raise InsufficientSteps("averaged rule needs k >= 2")
    if run.breakdown_at is not None:
        raise BreakdownExact(
            f"breakdown at step {run.breakdown_at}: use the plain rule"
        )
    alphas, betas = run.alphas, run.betas
    diag = np.concatenate([alphas, alphas[:-1][::-1]])
    offdiag = np.concatenate([betas[:-1], betas[-1:], betas[:-2][::-1]])
    return SymTridiagonal(diag, offdiag)


def tridiag_eig(t: SymTridiagonal):
    """Eigenvalues (ascending) and first components of orthonormal
    eigenvectors; only the squared first components feed the quadrature."""
    try:
        if t.m == 1:
            return np.array([t.diag[0]]), np.array([1.0])
        vals, vecs = sla.eigh_tridiagonal(t.diag, t.offdiag)
    except (sla.LinAlgError, ValueError) as exc:
        raise ConvergenceFailure(f"tridiagonal eigensolver failed: {exc}") from exc
    return vals, vecs[0].copy()


def _select_matrix(run: LanczosRun, use_gagq: bool):
    """Pick the averaged matrix when requested and meaningful, else the
    plain one.  Falls back silently for k = 1 and after breakdown (where the
    plain rule is exact)."""
    if use_gagq and run.k >= 2 and run.breakdown_at is None:
        return build_gagq(run), True
    return build_tk(run), False


def _positive_nodes(vals, first_row, *, sqrt_nodes: bool) -> QuadratureNodes:
    """Keep nodes with positive eigenvalue; at most one may be discarded."""
    pos = vals > 0.0
    dropped = int(np.count_nonzero(~pos))
    if dropped > 1:
        raise MultipleNonpositiveNodes(
            f"{dropped} nonpositive quadrature nodes (at most 1 expected)"
        )
    kept = vals[pos]
    thetas = np.sqrt(kept) if sqrt_nodes else kept
    return QuadratureNodes(frozen(thetas), frozen(first_row[pos] ** 2), dropped)


def quadrature_nodes(run: LanczosRun, use_gagq: bool) -> QuadratureNodes:
    """Nodes/weights for a run: eigenvalues directly for the Hermitian
    engine, positive square roots for the structure-preserving engines."""
    if run.variant == TDA_HERMITIAN:
        sqrt_nodes = False
    elif run.variant in (REAL_M_INNER, COMPLEX_OMEGA_INNER):
        sqrt_nodes = True
    else:
        raise ValueError(f"unsupported variant {run.variant!r}")
    t, _ = _select_matrix(run, use_gagq)
    vals, first_row = tridiag_eig(t)
    return _positive_nodes(vals, first_row, sqrt_nodes=sqrt_nodes)


def _assemble(run, use_gagq, kernel, grid, scale, *, sqrt_nodes, divide):
    t, used_gagq = _select_matrix(run, use_gagq)
    vals, first_row = tridiag_eig(t)
    nodes = _positive_nodes(vals, first_row, sqrt_nodes=sqrt_nodes)
    values = peak_sum(grid, nodes.thetas, nodes.weights, kernel,
                      divide_by_theta=divide, norm_const=run.norm_const,
                      scale=scale)
    meta = {
        "variant": run.variant,
        "k": run.k,
        "gagq": used_gagq,
        "kernel": kernel.shape,
        "sigma": kernel.sigma,
        "norm_const": run.norm_const,
        "scale": scale,
        "dropped_count": nodes.dropped_count,
        "breakdown_at": run.breakdown_at,
    }
    return Spectrum(np.asarray(grid, dtype=np.float64), values, meta)


def assemble_tda_spectrum(run: LanczosRun, use_gagq: bool,
                          kernel: BroadeningKernel, grid,
                          scale: float = 1.0) -> Spectrum:
    """eps(w) = scale * ||d||^2 * sum_j w_j [g(w - t_j) - g(w + t_j)] with
    nodes t_j the positive eigenvalues of the chosen tridiagonal matrix."""
    if run.variant != TDA_HERMITIAN:
        raise ValueError(f"expected a Hermitian-engine run, got {run.variant!r}")
    return _assemble(run, use_gagq, kernel, grid, scale,
                     sqrt_nodes=False, divide=False)


def assemble_bse_spectrum(run: LanczosRun, use_gagq: bool,
                          kernel: BroadeningKernel, grid,
                          scale: float = 1.0) -> Spectrum:
    """eps(w) = scale * nc * sum_j w_j [g(w - t_j) - g(w + t_j)] / t_j with
    t_j = sqrt of the positive eigenvalues (nodes approximate squared
    excitation energies)."""
    if run.variant not in (REAL_M_INNER, COMPLEX_OMEGA_INNER):
        raise ValueError(
            f"expected a weighted-inner-product run, got {run.variant!r}"
        )
    return _assemble(run, use_gagq, kernel, grid, scale,
                     sqrt_nodes=True, divide=True)

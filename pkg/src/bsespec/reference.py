"""Full-diagonalization reference: the oracle every estimate is tested against.

The decomposition is computed through a structure-preserving route: factor
the companion metric Omega = L L^H, diagonalize the Hermitian matrix
W = L^H C L (C = diag(I, -I)), and map eigenpairs back.  W is similar to the
operator itself, so its spectrum is exactly plus/minus paired and real by
construction, which a generic nonsymmetric eigensolver cannot guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .exceptions import NotDefinite
from .hamiltonian import BseHamiltonian, omega_matrix
from .spectrum import BroadeningKernel, Spectrum, peak_sum
from .validation import as_transition_vector, frozen


@dataclass(frozen=True, eq=False)
class StructuredEigenDecomposition:
    """All positive eigenvalues with normalized structured eigenvectors.

    lambdas[j] descending; the eigenvector of +lambda_j is [x_j; y_j] with
    x_j^H x_j - y_j^H y_j = 1, and the eigenvector of -lambda_j is
    [conj(y_j); conj(x_j)].
    """

    lambdas: np.ndarray
    x: np.ndarray
    y: np.ndarray


def full_diagonalize(ham: BseHamiltonian) -> StructuredEigenDecomposition:
    """Compute every positive eigenpair of the structured operator.

    Raises
    ------
    NotDefinite
        The companion metric admits no Cholesky factorization (TDA mode:
        the diagonal block has a nonpositive eigenvalue).
    """
    n = ham.n
    if ham.tda:
        w, vecs = sla.eigh(ham.a)
        if w[0] <= 0:
            raise NotDefinite(f"diagonal block has eigenvalue {w[0]:.3e} <= 0")
        order = np.argsort(w)[::-1]
        return StructuredEigenDecomposition(
            frozen(w[order]), frozen(vecs[:, order]), frozen(np.zeros((n, n), dtype=np.complex128))
        )

    omega = omega_matrix(ham)
    try:
        ell = sla.cholesky(omega, lower=True)
    except sla.LinAlgError as exc:
        raise NotDefinite(f"companion metric is not positive definite: {exc}") from exc
    signed = ell.conj().T.copy()
    signed[:, n:] *= -1.0  # L^H C
    w_mat = signed @ ell
    vals, vecs = sla.eigh(w_mat)
    pos_vals = vals[n:]
    pos_vecs = vecs[:, n:]
    if pos_vals[0] <= 0:
        raise NotDefinite("paired spectrum does not split at zero")
    z = sla.solve_triangular(ell, pos_vecs, lower=True, trans="C")
    z = z * np.sqrt(pos_vals)[None, :]
    order = np.argsort(pos_vals, kind="stable")[::-1]
    z = z[:, order]
    return StructuredEigenDecomposition(frozen(pos_vals[order]), frozen(z[:n]), frozen(z[n:]))


def oscillator_strengths(eig: StructuredEigenDecomposition, d) -> np.ndarray:
    """Nonnegative weights |d^H x_j - conj(d)^H y_j|^2, one per eigenvalue."""
    d = as_transition_vector(d, eig.x.shape[0])
    amp = d.conj() @ eig.x - d @ eig.y
    return np.abs(amp) ** 2


def exact_spectrum(ham: BseHamiltonian, d, kernel: BroadeningKernel, grid,
                   scale: float = 1.0) -> Spectrum:
    """Broadened absorption curve from the full decomposition.

    eps(w) = scale * sum_j tau_j^2 [g(w - lambda_j) - g(w + lambda_j)],
    odd in w and nonnegative for w > 0.
    """
    eig = full_diagonalize(ham)
    tau2 = oscillator_strengths(eig, d)
    values = peak_sum(grid, eig.lambdas, tau2, kernel,
                      divide_by_theta=False, norm_const=1.0, scale=scale)
    meta = {
        "method": "exact",
        "kernel": kernel.shape,
        "sigma": kernel.sigma,
        "scale": scale,
        "strengths": tau2,
        "lambdas": np.asarray(eig.lambdas),
    }
    return Spectrum(np.asarray(grid, dtype=np.float64), values, meta)

"""Short-recurrence Lanczos engines in the Euclidean, M-, and Omega-inner
products.

All three produce real coefficients (alphas, betas) defining a symmetric
tridiagonal projection.  ``betas[-1]`` is always the residual coefficient of
the last completed step.  A residual at or below the breakdown tolerance is
a *lucky* breakdown: the projection is exact and the iteration stops early.

Vectors are n-dimensional throughout; the full-problem engines operate on
structured 2n-vectors [u; conj(u)] implicitly through their upper halves.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .exceptions import (
    BasisNotRetained,
    IndefiniteInnerProduct,
    InvalidSteps,
    NotRealField,
    ZeroStartVector,
)
from .hamiltonian import (
    BseHamiltonian,
    apply_omega_structured,
    estimate_h_norm,
)
from .validation import as_transition_vector, frozen

TDA_HERMITIAN = "tda"
REAL_M_INNER = "real-m"
COMPLEX_OMEGA_INNER = "omega"
GMG_OMEGA_INNER = "gmg"

REORTH_NONE = "none"
REORTH_FULL = "full"


@dataclass(frozen=True, eq=False)
class LanczosRun:
    """Recurrence coefficients and bookkeeping from one Lanczos run.

    Attributes
    ----------
    variant : str
        Which engine produced the run.
    k : int
        Steps actually performed (may be < requested on breakdown).
    alphas, betas : (k,) float ndarrays
        Diagonal and subdiagonal coefficients; ``betas[-1]`` is the
        residual coefficient (zero exactly when breakdown occurred).
    norm_const : float
        Squared native norm of the starting vector; the overall spectrum
        prefactor.
    breakdown_at : int or None
        1-based step index of a lucky breakdown.
    basis_u, basis_v : (n, m) ndarrays or None
        Retained Lanczos vectors (diagnostics only).
    parities : (m,) ndarray or None
        Conjugation signs of retained vectors (alternating-parity engine
        only).
    """

    variant: str
    k: int
    alphas: np.ndarray
    betas: np.ndarray
    norm_const: float
    breakdown_at: int | None = None
    basis_u: np.ndarray | None = None
    basis_v: np.ndarray | None = None
    parities: np.ndarray | None = None


def truncate_run(run: LanczosRun, k: int) -> LanczosRun:
    """Coefficient prefix of a run (the recurrence is incremental, so the
    prefix equals what a shorter run would have produced)."""
    if k >= run.k:
        return run
    if k < 1:
        raise InvalidSteps(f"cannot truncate to k={k}")
    return replace(
        run,
        k=k,
        alphas=frozen(run.alphas[:k]),
        betas=frozen(run.betas[:k]),
        breakdown_at=None,
        basis_u=None,
        basis_v=None,
        parities=None,
    )


def breakdown_tolerance(norm_const: float, h_norm: float) -> float:
    """Residual threshold declaring a lucky breakdown."""
    return 1e-12 * np.sqrt(norm_const) * max(1.0, h_norm)


def _check_steps(k):
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InvalidSteps(f"step count must be a positive integer, got {k!r}")


def _estimate_op_norm(matvec, n, iters=5, seed=0):
    """Power-iteration magnitude estimate for a Hermitian matvec."""
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    ratio = 1.0
    for _ in range(iters):
        nrm = np.linalg.norm(u)
        if nrm == 0.0:
            return 0.0
        u = matvec(u / nrm)
        ratio = np.linalg.norm(u)
    return float(ratio)


def lanczos_tda(a_op, d, k, policy=REORTH_NONE, retain_basis=False,
                h_norm=None) -> LanczosRun:
    """Hermitian Lanczos on the diagonal block in the Euclidean inner product.

    Parameters
    ----------
    a_op : (n, n) ndarray or callable
        Hermitian positive definite operator (caller-checked), applied as a
        matvec.
    d : array_like
        Starting vector; the run is normalized so norm_const = ||d||^2.
    k : int
        Requested steps.
    policy : {"none", "full"}
        "full" re-orthogonalizes each candidate against all previous
        vectors, twice.
    """
    _check_steps(k)
    if callable(a_op):
        matvec = a_op
        d = np.asarray(d, dtype=np.complex128).ravel()
        if not np.any(d):
            raise ZeroStartVector("d is identically zero")
    else:
        a_mat = np.asarray(a_op, dtype=np.complex128)
        matvec = lambda w: a_mat @ w
        d = as_transition_vector(d, a_mat.shape[0])
    n = d.size
    if h_norm is None:
        h_norm = _estimate_op_norm(matvec, n)

    nrm = np.linalg.norm(d)
    norm_const = float(nrm**2)
    tol = breakdown_tolerance(norm_const, h_norm)

    keep = policy == REORTH_FULL or retain_basis
    basis = np.empty((n, k + 1), dtype=np.complex128) if keep else None
    u = d / nrm
    if keep:
        basis[:, 0] = u
    u_prev = np.zeros_like(u)
    beta_prev = 0.0
    alphas, betas = [], []
    breakdown_at = None

    for j in range(1, k + 1):
        x = matvec(u) - beta_prev * u_prev
        alpha = float(np.vdot(u, x).real)
        x = x - alpha * u
        if policy == REORTH_FULL:
            for _ in range(2):
                x = x - basis[:, :j] @ (basis[:, :j].conj().T @ x)
        beta = float(np.linalg.norm(x))
        alphas.append(alpha)
        if beta <= tol:
            betas.append(0.0)
            breakdown_at = j
            break
        betas.append(beta)
        u_prev, u = u, x / beta
        beta_prev = beta
        if keep:
            basis[:, j] = u

    m = len(alphas)
    basis_u = None
    if retain_basis and basis is not None:
        basis_u = frozen(basis[:, : m + (0 if breakdown_at else 1)])
    return LanczosRun(
        TDA_HERMITIAN, m, frozen(np.array(alphas)), frozen(np.array(betas)),
        norm_const, breakdown_at, basis_u, None, None,
    )


def lanczos_m_inner(ham: BseHamiltonian, d, k, policy=REORTH_NONE,
                    retain_basis=False, h_norm=None) -> LanczosRun:
    """Lanczos on the product (A-B)(A+B) in the (A+B)-weighted inner product.

    Real input only.  With M = A + B and K = A - B, each step computes

        x <- K v_j - beta_{j-1} u_{j-1};  alpha_j <- v_j^T x;
        x <- x - alpha_j u_j;  y <- M x;  beta_j <- sqrt(x^T y),

    maintaining v_j = M u_j and U^T M U = I.  norm_const = d^T M d.
    """
    _check_steps(k)
    if not ham.is_real:
        raise NotRealField("this engine requires real-valued blocks")
    d = as_transition_vector(d, ham.n)
    if np.max(np.abs(d.imag)) > 0.0:
        raise NotRealField("this engine requires a real transition vector")
    d = d.real
    m_mat = (ham.a + (0 if ham.tda else ham.b)).real
    k_mat = (ham.a - (0 if ham.tda else ham.b)).real
    n = ham.n
    if h_norm is None:
        h_norm = estimate_h_norm(ham)

    md = m_mat @ d
    norm_const = float(d @ md)
    if norm_const <= 0.0:
        raise IndefiniteInnerProduct(
            f"starting vector has nonpositive weighted norm {norm_const:.3e}"
        )
    tol = breakdown_tolerance(norm_const, h_norm)
    tol_rad = tol**2

    keep = policy == REORTH_FULL or retain_basis
    bu = np.empty((n, k + 1)) if keep else None
    bv = np.empty((n, k + 1)) if keep else None
    scale0 = np.sqrt(norm_const)
    u = d / scale0
    v = md / scale0
    if keep:
        bu[:, 0] = u
        bv[:, 0] = v
    u_prev = np.zeros_like(u)
    beta_prev = 0.0
    alphas, betas = [], []
    breakdown_at = None

    for j in range(1, k + 1):
        x = k_mat @ v - beta_prev * u_prev
        alpha = float(v @ x)
        x = x - alpha * u
        if policy == REORTH_FULL:
            for _ in range(2):
                x = x - bu[:, :j] @ (bv[:, :j].T @ x)
        y = m_mat @ x
        rad = float(x @ y)
        alphas.append(alpha)
        if rad < -tol_rad:
            raise IndefiniteInnerProduct(
                f"step {j}: weighted norm squared {rad:.3e} < 0"
            )
        beta = np.sqrt(max(rad, 0.0))
        if beta <= tol:
            betas.append(0.0)
            breakdown_at = j
            break
        betas.append(float(beta))
        u_prev = u
        u, v = x / beta, y / beta
        beta_prev = beta
        if keep:
            bu[:, j] = u
            bv[:, j] = v

    m = len(alphas)
    basis_u = basis_v = None
    if retain_basis and bu is not None:
        cols = m + (0 if breakdown_at else 1)
        basis_u = frozen(bu[:, :cols].astype(np.complex128))
        basis_v = frozen(bv[:, :cols].astype(np.complex128))
    return LanczosRun(
        REAL_M_INNER, m, frozen(np.array(alphas)), frozen(np.array(betas)),
        norm_const, breakdown_at, basis_u, basis_v, None,
    )


def lanczos_omega_inner(ham: BseHamiltonian, d, k, policy=REORTH_NONE,
                        retain_basis=False, h_norm=None) -> LanczosRun:
    """Structure-preserving Lanczos for the squared operator in the
    companion-weighted inner product.

    Works for complex blocks; on real input it performs the same arithmetic
    as the M-inner engine.  Each step computes

        x <- A v_j - B conj(v_j) - beta_{j-1} u_{j-1};
        alpha_j <- Re(v_j^H x);  x <- x - alpha_j u_j;
        y <- A x + B conj(x);    beta_j <- sqrt(Re(x^H y)),

    with u_1 = d / sqrt(Re(d^H A d + d^H B conj(d))) and v_j the companion
    image of u_j.  norm_const = Re(d^H A d + d^H B conj(d)), half the
    squared companion norm of the structured start vector.
    """
    _check_steps(k)
    d = as_transition_vector(d, ham.n)
    n = ham.n
    if h_norm is None:
        h_norm = estimate_h_norm(ham)

    od = apply_omega_structured(ham, d)
    norm_const = float(np.vdot(d, od).real)
    if norm_const <= 0.0:
        raise IndefiniteInnerProduct(
            f"starting vector has nonpositive weighted norm {norm_const:.3e}"
        )
    tol = breakdown_tolerance(norm_const, h_norm)
    tol_rad = tol**2

    keep = policy == REORTH_FULL or retain_basis
    bu = np.empty((n, k + 1), dtype=np.complex128) if keep else None
    bv = np.empty((n, k + 1), dtype=np.complex128) if keep else None
    scale0 = np.sqrt(norm_const)
    u = d / scale0
    v = od / scale0
    if keep:
        bu[:, 0] = u
        bv[:, 0] = v
    u_prev = np.zeros_like(u)
    beta_prev = 0.0
    alphas, betas = [], []
    breakdown_at = None

    a_mat, b_mat = ham.a, ham.b
    for j in range(1, k + 1):
        if ham.tda:
            x = a_mat @ v - beta_prev * u_prev
        else:
            x = a_mat @ v - b_mat @ v.conj() - beta_prev * u_prev
        alpha = float(np.vdot(v, x).real)
        x = x - alpha * u
        if policy == REORTH_FULL:
            for _ in range(2):
                coeff = (bv[:, :j].conj().T @ x).real
                x = x - bu[:, :j] @ coeff
        y = apply_omega_structured(ham, x)
        rad = float(np.vdot(x, y).real)
        alphas.append(alpha)
        if rad < -tol_rad:
            raise IndefiniteInnerProduct(
                f"step {j}: weighted norm squared {rad:.3e} < 0"
            )
        beta = np.sqrt(max(rad, 0.0))
        if beta <= tol:
            betas.append(0.0)
            breakdown_at = j
            break
        betas.append(float(beta))
        u_prev = u
        u, v = x / beta, y / beta
        beta_prev = beta
        if keep:
            bu[:, j] = u
            bv[:, j] = v

    m = len(alphas)
    basis_u = basis_v = None
    if retain_basis and bu is not None:
        cols = m + (0 if breakdown_at else 1)
        basis_u = frozen(bu[:, :cols])
        basis_v = frozen(bv[:, :cols])
    return LanczosRun(
        COMPLEX_OMEGA_INNER, m, frozen(np.array(alphas)), frozen(np.array(betas)),
        norm_const, breakdown_at, basis_u, basis_v, None,
    )


def retained_basis_orthogonality(run: LanczosRun, ham: BseHamiltonian | None = None) -> float:
    """Max entrywise deviation of the variant's orthogonality matrix from its
    ideal (identity, or twice the identity for the paired-block condition of
    the structure-preserving engine).

    Diagnostic only; requires a run with a retained basis.
    """
    if run.basis_u is None:
        raise BasisNotRetained("run did not retain its basis")
    k = run.k
    u = np.asarray(run.basis_u[:, :k])
    if run.variant == TDA_HERMITIAN:
        g = u.conj().T @ u
        return float(np.max(np.abs(g - np.eye(k))))
    if run.variant == REAL_M_INNER:
        v = np.asarray(run.basis_v[:, :k])
        g = v.conj().T @ u
        return float(np.max(np.abs(g - np.eye(k))))
    if run.variant == COMPLEX_OMEGA_INNER:
        v = np.asarray(run.basis_v[:, :k])
        right = np.block([[u, v], [u.conj(), -v.conj()]])
        left = np.block([[v, u], [v.conj(), -u.conj()]])
        g = left.conj().T @ right
        return float(np.max(np.abs(g - 2.0 * np.eye(2 * k))))
    if run.variant == GMG_OMEGA_INNER:
        if ham is None:
            raise ValueError("the alternating-parity check needs the Hamiltonian")
        s = np.asarray(run.parities[:k], dtype=np.float64)
        top = u
        bot = s[None, :] * u.conj()
        q = np.vstack([top, bot])
        if ham.tda:
            oq_top = ham.a @ top + 0.0 * bot
            oq_bot = ham.a.conj() @ bot
        else:
            oq_top = ham.a @ top + ham.b @ bot
            oq_bot = ham.b.conj() @ top + ham.a.conj() @ bot
        g = q.conj().T @ np.vstack([oq_top, oq_bot])
        return float(np.max(np.abs(g - np.eye(k))))
    raise ValueError(f"unsupported variant {run.variant!r}")

"""Comparison Lanczos procedures: the alternating-parity recurrence on the
operator itself, and the paired-starting-vector block recurrences.

The alternating-parity engine (``lanczos_gmg``) runs directly on H in the
companion-weighted inner product with a structured start; its projection is
a zero-diagonal tridiagonal matrix whose nonzero eigenvalues pair up as
+/-theta.  It is mathematically equivalent to the squared-operator engine at
matched polynomial degree.

The paired procedures start from the block (u1, v1) = (d, 0).  With the
companion-weighted block condition the assembled curve is *not* structure
preserving (complex values, sign-indefinite real part) and is kept as a
diagnostic; with the signature-weighted condition the projected matrix is
itself a structured Hamiltonian and the curve is real and nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .exceptions import (
    GramFactorizationFailure,
    IndefiniteInnerProduct,
    MultipleNonpositiveNodes,
    NeutralVectorBreakdown,
    OddStepCount,
    SingularProjection,
)
from .hamiltonian import (
    BseHamiltonian,
    apply_h_full,
    apply_omega_full,
    estimate_h_norm,
)
from .lanczos import (
    GMG_OMEGA_INNER,
    REORTH_FULL,
    REORTH_NONE,
    LanczosRun,
    breakdown_tolerance,
)
from .quadrature import SymTridiagonal, build_gagq, build_tk, tridiag_eig
from .spectrum import BroadeningKernel, Spectrum, peak_sum
from .validation import as_grid, as_transition_vector, frozen

PAIRED_OMEGA = "paired-omega"
PAIRED_C = "paired-c"


@dataclass(frozen=True, eq=False)
class ZeroDiagTridiagonal:
    """Zero-diagonal symmetric tridiagonal projection (off-diagonal only).

    Nonzero eigenvalues occur in +/- pairs, plus a structural zero for odd
    dimension.
    """

    betas_tilde: np.ndarray
    residual_beta: float | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "betas_tilde", frozen(np.asarray(self.betas_tilde, dtype=np.float64))
        )

    @property
    def m(self) -> int:
        return self.betas_tilde.size + 1

    def to_symtridiagonal(self) -> SymTridiagonal:
        return SymTridiagonal(np.zeros(self.m), self.betas_tilde)


def lanczos_gmg(ham: BseHamiltonian, d, k2, policy=REORTH_NONE,
                retain_basis=False, h_norm=None):
    """Alternating-parity Lanczos on H with a structured start.

    Parameters
    ----------
    k2 : int
        Requested steps; must be even so the projection has no structural
        zero eigenvalue (each step flips the conjugation parity of the
        iterate).

    Returns
    -------
    (LanczosRun, ZeroDiagTridiagonal)
        The run carries alphas = 0 and betas with the residual last, so the
        generic tridiagonal builders apply unchanged.
    """
    if not isinstance(k2, (int, np.integer)) or k2 < 2:
        raise OddStepCount(f"step count must be an even integer >= 2, got {k2!r}")
    if k2 % 2 != 0:
        raise OddStepCount(f"step count must be even, got {k2}")
    d = as_transition_vector(d, ham.n)
    n = ham.n
    if h_norm is None:
        h_norm = estimate_h_norm(ham)

    def upper_image(w, s):
        # shared upper half of both the operator image [.; -s conj(.)] and
        # the companion image [.; +s conj(.)] of the parity vector [w; s conj(w)]
        if ham.tda:
            return ham.a @ w
        return ham.a @ w + s * (ham.b @ w.conj())

    r0 = upper_image(d, 1.0)
    norm_const = float(np.vdot(d, r0).real)
    if norm_const <= 0.0:
        raise IndefiniteInnerProduct(
            f"starting vector has nonpositive weighted norm {norm_const:.3e}"
        )
    tol = breakdown_tolerance(norm_const, h_norm)
    tol_rad = tol**2

    keep = policy == REORTH_FULL or retain_basis
    basis = np.empty((n, k2 + 1), dtype=np.complex128) if keep else None
    signs = np.empty(k2 + 1) if keep else None

    w = d / np.sqrt(2.0 * norm_const)  # unit companion norm for [w; conj(w)]
    s = 1.0
    if keep:
        basis[:, 0] = w
        signs[0] = s
    w_prev = np.zeros_like(w)
    beta_prev = 0.0
    betas = []
    breakdown_at = None

    for j in range(1, k2 + 1):
        x = upper_image(w, s) - beta_prev * w_prev
        s_new = -s
        if policy == REORTH_FULL:
            for _ in range(2):
                r = upper_image(x, s_new)
                mask = signs[:j] == s_new
                if np.any(mask):
                    cols = basis[:, :j][:, mask]
                    coeff = 2.0 * (cols.conj().T @ r).real
                    x = x - cols @ coeff
        r = upper_image(x, s_new)
        rad = 2.0 * float(np.vdot(x, r).real)
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
        w_prev, w = w, x / beta
        beta_prev = beta
        s = s_new
        if keep:
            basis[:, j] = w
            signs[j] = s

    m = len(betas)
    basis_u = parities = None
    if retain_basis and basis is not None:
        cols = m + (0 if breakdown_at else 1)
        basis_u = frozen(basis[:, :cols])
        parities = frozen(signs[:cols])
    run = LanczosRun(
        GMG_OMEGA_INNER, m, frozen(np.zeros(m)), frozen(np.array(betas)),
        norm_const, breakdown_at, basis_u, None, parities,
    )
    tri = ZeroDiagTridiagonal(run.betas[:-1], float(run.betas[-1]))
    return run, tri


def assemble_gmg_spectrum(run: LanczosRun, use_gagq: bool,
                          kernel: BroadeningKernel, grid,
                          scale: float = 1.0) -> Spectrum:
    """Fold the +/- paired nodes of the zero-diagonal projection into

        eps(w) = scale * 2 * nc * sum_{t_j > 0} w_j [g(w-t_j) - g(w+t_j)] / t_j.

    The averaged extension has odd dimension with a structural zero
    eigenvalue; only the top half of the spectrum is used (a zero node
    contributes nothing since eps(0) = 0 identically).
    """
    if run.variant != GMG_OMEGA_INNER:
        raise ValueError(f"expected an alternating-parity run, got {run.variant!r}")
    use_avg = use_gagq and run.k >= 2 and run.breakdown_at is None
    t = build_gagq(run) if use_avg else build_tk(run)
    vals, first_row = tridiag_eig(t)
    dim = t.m
    expected = dim // 2
    sel_vals = vals[dim - expected:]
    sel_row = first_row[dim - expected:]
    pos = sel_vals > 0.0
    dropped = int(np.count_nonzero(~pos))
    if not use_avg:
        if dropped:
            raise SingularProjection(
                f"{dropped} nonpositive nodes in the paired-eigenvalue projection"
            )
    elif dropped > 1:
        raise MultipleNonpositiveNodes(
            f"{dropped} nonpositive quadrature nodes (at most 1 expected)"
        )
    thetas = sel_vals[pos]
    weights = sel_row[pos] ** 2
    values = peak_sum(grid, thetas, weights, kernel, divide_by_theta=True,
                      norm_const=2.0 * run.norm_const, scale=scale)
    meta = {
        "variant": run.variant,
        "k": run.k,
        "gagq": use_avg,
        "kernel": kernel.shape,
        "sigma": kernel.sigma,
        "norm_const": run.norm_const,
        "scale": scale,
        "dropped_count": dropped,
        "breakdown_at": run.breakdown_at,
    }
    return Spectrum(np.asarray(grid, dtype=np.float64), values, meta)


def _jconj(z: np.ndarray, n: int) -> np.ndarray:
    """Antilinear swap-conjugation [a; b] -> [conj(b); conj(a)]."""
    return np.concatenate([z[n:].conj(), z[:n].conj()])


def _signature_apply(z: np.ndarray, n: int) -> np.ndarray:
    """Apply diag(I, -I)."""
    out = z.copy()
    out[n:] *= -1.0
    return out


def _c_block_normalize(z, n, pivot_tol=1e-12):
    """Normalize a block pair (z, Jz) under the signature form.

    The pair is automatically orthogonal in this form; only the pivot
    z^H C z needs scaling.  A neutral pivot is a hard breakdown.  A negative
    pivot swaps the roles of z and Jz.
    """
    piv = float(np.vdot(z, _signature_apply(z, n)).real)
    znorm = float(np.vdot(z, z).real)
    if abs(piv) <= pivot_tol * znorm:
        raise NeutralVectorBreakdown(
            f"block pivot {piv:.3e} is neutral relative to norm {znorm:.3e}"
        )
    if piv > 0:
        return z / np.sqrt(piv)
    return _jconj(z, n) / np.sqrt(-piv)


def _apply_omega_cols(ham, z):
    """Companion image of each column of a (2n, m) array."""
    out = np.empty_like(z)
    for idx in range(z.shape[1]):
        out[:, idx] = apply_omega_full(ham, z[:, idx])
    return out


def _signed_block_normalize(ham, zpair, tol_rel=1e-13):
    """Factor the 2x2 block Gram directly and normalize the block.

    Returns (w, sigma) with w^H Omega w = diag(sigma), sigma entries +-1.
    For a definite companion metric both signs are +1 and this is an
    ordinary orthonormalization (unique up to a 2x2 unitary the assembled
    curve is invariant to); for an indefinite metric the block may carry a
    mixed signature, which is exactly how the diagnostic run proceeds.

    Raises
    ------
    GramFactorizationFailure
        The block Gram is (numerically) singular.
    """
    oz = _apply_omega_cols(ham, zpair)
    gram = zpair.conj().T @ oz
    gram = 0.5 * (gram + gram.conj().T)
    delta, evecs = np.linalg.eigh(gram)
    top = np.max(np.abs(delta))
    if top <= 0.0 or np.min(np.abs(delta)) <= tol_rel * top:
        raise GramFactorizationFailure(
            f"block Gram numerically singular: eigenvalues {delta}"
        )
    w = zpair @ (evecs / np.sqrt(np.abs(delta))[None, :])
    return w, np.sign(delta)


@dataclass(frozen=True, eq=False)
class PairedLanczosRun:
    """Projected pair-block operator with the retained block basis.

    ``w_full`` holds the 2k retained basis columns (primary block vectors
    first, their partners last) and ``h_full`` the projected operator in
    that ordering.  ``a_k`` and ``b_k`` are its k x k corner views; under
    the signature-weighted condition they are literally the Hermitian and
    symmetric tridiagonal blocks of a structured projected Hamiltonian.
    """

    inner: str
    k: int
    a_k: np.ndarray
    b_k: np.ndarray
    w_full: np.ndarray
    h_full: np.ndarray
    norm_const: float
    dr_coords: np.ndarray | None = None
    weighted_dl_coords: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.w_full.shape[0] // 2

    def h_proj(self) -> np.ndarray:
        return np.asarray(self.h_full)

    def w_basis(self) -> np.ndarray:
        return np.asarray(self.w_full)


def _paired_c_run(ham, d, k, n, norm_const):
    a_k = np.zeros((k, k), dtype=np.complex128)
    b_k = np.zeros((k, k), dtype=np.complex128)
    basis = np.zeros((2 * n, k), dtype=np.complex128)

    z0 = np.concatenate([d, np.zeros(n, dtype=np.complex128)])
    basis[:, 0] = _c_block_normalize(z0, n)
    for j in range(k):
        z = apply_h_full(ham, basis[:, j])
        cz = _signature_apply(z, n)
        for i in (j - 1, j):
            if i < 0:
                continue
            ci = basis[:, i]
            jci = _jconj(ci, n)
            p = complex(np.vdot(ci, cz))
            q = -complex(np.vdot(jci, cz))
            z = z - p * ci - q * jci
            cz = _signature_apply(z, n)
            a_k[i, j] = p
            b_k[i, j] = -q.conjugate()
        if j + 1 >= k:
            break
        cnew = _c_block_normalize(z, n)
        cz = _signature_apply(z, n)
        p = complex(np.vdot(cnew, cz))
        q = -complex(np.vdot(_jconj(cnew, n), cz))
        basis[:, j + 1] = cnew
        a_k[j + 1, j] = p
        b_k[j + 1, j] = -q.conjugate()

    jcols = np.vstack([basis[n:].conj(), basis[:n].conj()])
    w_full = np.hstack([basis, jcols])
    h_full = np.block([[a_k, b_k], [-b_k.conj(), -a_k.conj()]])
    return PairedLanczosRun(
        PAIRED_C, int(k), frozen(a_k), frozen(b_k), frozen(w_full),
        frozen(h_full), norm_const,
    )


def _paired_omega_run(ham, d, k, n, norm_const):
    blocks = []
    sigmas = []
    h_pairs = np.zeros((2 * k, 2 * k), dtype=np.complex128)

    z0 = np.concatenate([d, np.zeros(n, dtype=np.complex128)])
    zpair = np.column_stack([z0, _jconj(z0, n)])
    w, sig = _signed_block_normalize(ham, zpair)
    blocks.append(w)
    sigmas.append(sig)

    for j in range(k):
        z = np.column_stack(
            [apply_h_full(ham, blocks[j][:, 0]), apply_h_full(ham, blocks[j][:, 1])]
        )
        for i in (j - 1, j):
            if i < 0:
                continue
            coeff = sigmas[i][:, None] * (blocks[i].conj().T @ _apply_omega_cols(ham, z))
            z = z - blocks[i] @ coeff
            h_pairs[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = coeff
        if j + 1 >= k:
            break
        w, sig = _signed_block_normalize(ham, z)
        coeff = sig[:, None] * (w.conj().T @ _apply_omega_cols(ham, z))
        h_pairs[2 * j + 2 : 2 * j + 4, 2 * j : 2 * j + 2] = coeff
        blocks.append(w)
        sigmas.append(sig)

    # reorder pair-interleaved columns into (primaries..., partners...)
    perm = np.r_[0 : 2 * k : 2, 1 : 2 * k : 2]
    w_full = np.hstack(blocks)[:, perm]
    h_full = h_pairs[np.ix_(perm, perm)]
    sig_full = np.concatenate(sigmas)[perm]

    dl = np.concatenate([d, d.conj()])
    dr = np.concatenate([d, -d.conj()])
    dr_coords = dr.conj() @ w_full
    weighted_dl_coords = sig_full * (w_full.conj().T @ apply_omega_full(ham, dl))
    return PairedLanczosRun(
        PAIRED_OMEGA, int(k), frozen(h_full[:k, :k]), frozen(h_full[:k, k:]),
        frozen(w_full), frozen(h_full), norm_const,
        frozen(dr_coords), frozen(weighted_dl_coords),
    )


def lanczos_paired(ham: BseHamiltonian, d, k, inner=PAIRED_C) -> PairedLanczosRun:
    """Block recurrence with paired starting vectors (u1, v1) = (d, 0).

    Parameters
    ----------
    inner : {"paired-c", "paired-omega"}
        Block orthogonality condition.  The signature-weighted condition
        ("paired-c") keeps blocks automatically orthogonal inside each
        two-dimensional subspace and yields a structured projected
        Hamiltonian; the companion-weighted condition ("paired-omega")
        requires an orthogonalization inside every block, performed here by
        factoring each 2x2 block Gram directly, and is kept as a
        diagnostic (it does not preserve structure on indefinite input).

    Raises
    ------
    NeutralVectorBreakdown
        Signature-weighted condition met a neutral block (hard,
        non-recoverable breakdown).
    GramFactorizationFailure
        A companion-weighted block Gram was numerically singular.
    """
    if inner not in (PAIRED_C, PAIRED_OMEGA):
        raise ValueError(f"unknown inner condition {inner!r}")
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise OddStepCount(f"step count must be a positive integer, got {k!r}")
    d = as_transition_vector(d, ham.n)
    norm_const = float(np.vdot(d, d).real)
    if inner == PAIRED_C:
        return _paired_c_run(ham, d, k, ham.n, norm_const)
    return _paired_omega_run(ham, d, k, ham.n, norm_const)


def assemble_paired_spectrum(run: PairedLanczosRun, kernel: BroadeningKernel,
                             grid, scale: float = 1.0,
                             norm_const: float | None = None) -> Spectrum:
    """Spectrum from a paired-block run.

    Signature-weighted condition: the projected matrix is a structured
    Hamiltonian; its decomposition gives

        eps(w) = scale * ||d||^2 * sum_j |X[0,j] - Y[0,j]|^2
                 [g(w - t_j) - g(w + t_j)],

    real and nonnegative for w > 0.  Companion-weighted condition: the
    projection of the probe vectors is evaluated literally through the
    eigendecomposition of the projected matrix; the result is complex
    valued in general and kept as a diagnostic.
    """
    grid = as_grid(grid)
    if norm_const is None:
        norm_const = run.norm_const
    meta = {
        "variant": run.inner,
        "k": run.k,
        "gagq": False,
        "kernel": kernel.shape,
        "sigma": kernel.sigma,
        "norm_const": norm_const,
        "scale": scale,
    }
    if run.inner == PAIRED_C:
        from .reference import full_diagonalize

        small = BseHamiltonian(
            frozen(0.5 * (run.a_k + run.a_k.conj().T)),
            frozen(0.5 * (run.b_k + run.b_k.T)),
            "complex",
            False,
        )
        eig = full_diagonalize(small)
        tau2 = np.abs(eig.x[0, :] - eig.y[0, :]) ** 2
        values = peak_sum(grid, eig.lambdas, tau2, kernel,
                          divide_by_theta=False, norm_const=norm_const,
                          scale=scale)
        return Spectrum(grid, values, meta)

    hk = run.h_proj()
    vals, vecs = sla.eig(hk)
    row = run.dr_coords @ vecs
    col = sla.solve(vecs, run.weighted_dl_coords)
    amp = row * col
    args = grid[:, None] - vals[None, :]
    values = scale * (kernel.evaluate(args) @ amp)
    meta["complex_diagnostic"] = True
    return Spectrum(grid, values, meta)

"""Scikit-learn style estimator facade.

``fit`` performs the expensive Krylov factorization; ``predict`` (alias
``transform``) evaluates the broadened spectrum at arbitrary frequencies.
Hyperparameters follow the sklearn convention, so the estimator works with
``sklearn.base.clone`` and grid-search style parameter sweeps.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .drivers import VARIANTS, assemble_run, run_variant
from .hamiltonian import BseHamiltonian, build_hamiltonian
from .spectrum import GAUSSIAN, LORENTZIAN, BroadeningKernel
from .validation import as_grid


class AbsorptionSpectrumEstimator(BaseEstimator):
    """Estimate an absorption spectrum from a structured Hamiltonian.

    Parameters
    ----------
    variant : str
        One of ``tda``, ``real-m``, ``omega``, ``gmg``, ``paired-omega``,
        ``paired-c``.
    k : int
        Lanczos steps (must be even for ``gmg``).
    gagq : bool
        Use the averaged quadrature rule (ignored by paired variants,
        which do not define it).
    kernel : {"gaussian", "lorentzian"}
    sigma : float
        Broadening width.
    scale : float
        Overall prefactor applied to the curve (e.g. a physical constant).
    reorth : {"none", "full"}
        Re-orthogonalization policy of the underlying engine.

    Examples
    --------
    >>> est = AbsorptionSpectrumEstimator(variant="omega", k=16)
    >>> est.fit(ham, d).predict(np.linspace(0, 5, 200))
    """

    def __init__(self, variant="omega", k=32, gagq=True, kernel=GAUSSIAN,
                 sigma=0.1, scale=1.0, reorth="none"):
        self.variant = variant
        self.k = k
        self.gagq = gagq
        self.kernel = kernel
        self.sigma = sigma
        self.scale = scale
        self.reorth = reorth

    def _validate_params(self):
        if self.variant not in VARIANTS:
            raise ValueError(
                f"variant must be one of {VARIANTS}, got {self.variant!r}"
            )
        if self.kernel not in (GAUSSIAN, LORENTZIAN):
            raise ValueError(f"unknown kernel {self.kernel!r}")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if self.reorth not in ("none", "full"):
            raise ValueError(f"reorth must be 'none' or 'full', got {self.reorth!r}")
        if self.gagq and self.variant in ("paired-omega", "paired-c"):
            raise ValueError("the averaged rule is not defined for paired variants")

    def fit(self, X, y=None):
        """Run the Lanczos factorization.

        Parameters
        ----------
        X : BseHamiltonian or (a, b) pair of square matrices
        y : array_like
            Transition vector of length n (required).
        """
        self._validate_params()
        if isinstance(X, BseHamiltonian):
            ham = X
        elif isinstance(X, (tuple, list)) and len(X) == 2:
            ham = build_hamiltonian(X[0], X[1])
        else:
            raise TypeError(
                "X must be a BseHamiltonian or an (a, b) pair of blocks"
            )
        if y is None:
            raise ValueError("the transition vector must be passed as y")
        self.ham_ = ham
        self.d_ = np.asarray(y, dtype=np.complex128).ravel()
        self.run_ = run_variant(ham, self.d_, self.variant, self.k,
                                reorth=self.reorth)
        self.norm_const_ = float(self.run_.norm_const)
        self.k_ = int(self.run_.k)
        self.breakdown_at_ = getattr(self.run_, "breakdown_at", None)
        return self

    def _check_fitted(self):
        if not hasattr(self, "run_"):
            raise NotFittedError(
                "this AbsorptionSpectrumEstimator instance is not fitted yet"
            )

    def spectrum(self, omegas):
        """Full Spectrum object sampled at the given frequencies."""
        self._check_fitted()
        grid = as_grid(omegas)
        kern = BroadeningKernel(self.kernel, self.sigma)
        return assemble_run(self.run_, self.gagq, kern, grid, scale=self.scale)

    def predict(self, omegas):
        """Spectrum values at the given frequencies (complex only for the
        diagnostic paired variant)."""
        return self.spectrum(omegas).values

    def transform(self, omegas):
        """Alias of predict, for transformer-style composition."""
        return self.predict(omegas)

    def fit_predict(self, X, y, omegas):
        return self.fit(X, y).predict(omegas)

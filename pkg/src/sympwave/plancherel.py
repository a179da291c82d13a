"""Harish-Chandra c-function and Plancherel density.

The c-function is the Gindikin-Karpelevich product of gamma factors over the
reduced positive roots,

    c(lam) = c0 * prod_alpha 2^(-i y) Gamma(i y)
             / [ Gamma((m/2 + 1 + i y)/2) * Gamma((m/2 + m2 + i y)/2) ],

with y = <lam, alpha>/<alpha, alpha> and c0 normalized by c(-i rho) = 1.
Everything is evaluated in log space so that the polynomially growing
density |c|^-2 never overflows.

The density has a zero of order 2d at the origin and vanishes continuously
on the root hyperplanes, so quadratures downstream treat those as measure
zero and need no principal values; exact hyperplane hits return density 0.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import GammaPoleError
from .gamma import log_gamma
from .root_data import RootDatum, pairing

_POLE_TOL = 1e-14


class CFunction:
    """c-function of a root datum, normalized once at construction."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        # c0 from c(-i rho) = 1; at -i rho every gamma argument is real > 0.
        log_unnorm = self._log_product(-1j * datum.rho)
        self.log_c0 = -log_unnorm
        self.c0 = cmath.exp(self.log_c0)

    def _factors(self, lam):
        """Per-root (iy, arg1, arg2) gamma arguments for a single lambda."""
        out = []
        for root in self.datum.reduced_roots:
            y = pairing(self.datum, lam, root)
            iy = 1j * y
            a1 = 0.5 * (0.5 * root.m_alpha + 1.0 + iy)
            a2 = 0.5 * (0.5 * root.m_alpha + root.m_2alpha + iy)
            out.append((iy, a1, a2))
        return out

    def _log_product(self, lam) -> complex:
        acc = 0.0 + 0.0j
        for iy, a1, a2 in self._factors(lam):
            acc += -iy * math.log(2.0) + log_gamma(iy)
            acc -= log_gamma(a1) + log_gamma(a2)
        return acc

    def c_function(self, lam) -> complex:
        """c(lam) for a real or complex spectral parameter.

        A pole of a numerator gamma factor (e.g. <lam, alpha> = 0 on a root
        hyperplane) makes c infinite; that is reported as complex infinity
        rather than an exception, so callers can treat |c|^-2 = 0.
        """
        lam = np.atleast_1d(np.asarray(lam, dtype=complex))
        try:
            return cmath.exp(self.log_c0 + self._log_product(lam))
        except GammaPoleError:
            for iy, a1, a2 in self._factors(lam):
                for arg in (a1, a2):
                    if abs(arg - round(arg.real)) <= _POLE_TOL and round(arg.real) <= 0:
                        raise
            return complex(math.inf, 0.0)

    def density(self, lam):
        """Plancherel density |c(lam)|^-2 for real lam; 0 on root hyperplanes.

        Vectorized: lam may be a single vector of length rank, or an array of
        shape (..., rank); rank-one data also accept bare scalars.
        """
        lam = np.asarray(lam, dtype=float)
        if lam.ndim == 0:
            lam = lam.reshape(1)
        if lam.shape[-1] != self.datum.rank:
            raise ValueError("lambda has wrong dimension")
        scalar = lam.ndim == 1

        base = lam.reshape(-1, self.datum.rank)
        # Re(log c); the 2^(-iy) factor is unimodular for real y and drops out.
        log_re = np.full(base.shape[0], self.log_c0.real)
        dead = np.zeros(base.shape[0], dtype=bool)
        for root in self.datum.reduced_roots:
            y = pairing(self.datum, base, root)
            dead |= np.abs(y) <= _POLE_TOL
            iy = 1j * np.where(np.abs(y) <= _POLE_TOL, 1.0, y)  # placeholder off the pole
            log_re += np.real(log_gamma(iy))
            log_re -= np.real(
                log_gamma(0.5 * (0.5 * root.m_alpha + 1.0 + iy))
                + log_gamma(0.5 * (0.5 * root.m_alpha + root.m_2alpha + iy))
            )
        out = np.where(dead, 0.0, np.exp(-2.0 * log_re))
        out = out.reshape(lam.shape[:-1])
        return float(out) if scalar else out

    def vanishing_order(self) -> int:
        """Order of the zero of the density at lam = 0 (twice the root count)."""
        return 2 * self.datum.d

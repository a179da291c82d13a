"""Decay profiles psi with closed-form derivatives and integral constants.

Three families:

* ``exponential(beta)``: psi(r) = exp(-beta r)
* ``rational(beta)``:    psi(r) = (1 + r^2)^(-beta/2)
* ``bump(R0)``:          smooth, identically 1 on [0, R0], 0 on [2 R0, inf)

Derivatives are exact for every order k <= 12.  The exponential family is
closed form; the rational family uses the polynomial recurrence

    P_{k+1} = (1 + r^2) P_k' - (beta + 2k) r P_k,   psi^(k) = P_k (1+r^2)^(-beta/2-k);

the bump transition is the standard partition-of-unity quotient
sigma(s)/(sigma(s)+sigma(1-s)) with sigma(s) = exp(-1/s), differentiated by
truncated-Taylor (jet) arithmetic.  The same :class:`SmoothCutoff` supplies
the mollifier used to extend stationary-phase amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import quad

from ._jets import jet_derivatives, jet_div, jet_exp, jet_neg_recip
from .errors import DivergenceError, UnsupportedOrderError, UsageError

MAX_ORDER = 12


class SmoothCutoff:
    """C-infinity step equal to 1 on (-inf, lo] and 0 on [hi, inf)."""

    def __init__(self, lo: float, hi: float):
        if not lo < hi:
            raise UsageError("cutoff needs lo < hi")
        self.lo = float(lo)
        self.hi = float(hi)
        self.width = self.hi - self.lo

    def value(self, x):
        x = np.asarray(x, dtype=float)
        s = np.clip((x.reshape(-1) - self.lo) / self.width, 0.0, 1.0)
        out = np.where(s <= 0.0, 1.0, 0.0)
        inner = (s > 0.0) & (s < 1.0)
        if np.any(inner):
            si = s[inner]
            e1 = np.exp(-1.0 / si)
            e2 = np.exp(-1.0 / (1.0 - si))
            out[inner] = e2 / (e1 + e2)
        return out.reshape(x.shape) if x.ndim else float(out[0])

    def jet(self, x: float, order: int) -> np.ndarray:
        """Taylor coefficients of the cutoff at x, in the x variable."""
        s = (x - self.lo) / self.width
        c = np.zeros(order + 1)
        if s <= 0.0:
            c[0] = 1.0
            return c
        if s >= 1.0:
            return c
        e1 = jet_exp(jet_neg_recip(s, order))
        # jet of -1/(1-s) in the s variable
        j = np.arange(order + 1)
        e2 = jet_exp(-1.0 / (1.0 - s) ** (j + 1))
        c = jet_div(e2, e1 + e2)
        return c / self.width**j

    def eval(self, k: int, x):
        """k-th derivative, vectorized over x."""
        if k == 0:
            return self.value(x)
        x = np.asarray(x, dtype=float)
        flat = np.zeros(x.size)
        for i, xi in enumerate(x.reshape(-1)):
            if self.lo < xi < self.hi:
                flat[i] = jet_derivatives(self.jet(xi, k))[k]
        return flat.reshape(x.shape) if x.ndim else float(flat[0])


@dataclass(frozen=True)
class Profile:
    """A decay profile with derivatives up to order 12."""

    family: str
    param: float

    def __post_init__(self):
        if self.family not in ("exponential", "rational", "bump"):
            raise UsageError(f"unknown profile family {self.family!r}")
        if self.param <= 0.0:
            raise UsageError("profile parameter must be positive")

    # -- helpers -----------------------------------------------------------

    def _rational_polys(self, upto: int):
        polys = [Polynomial([1.0])]
        beta = self.param
        for k in range(upto):
            p = polys[-1]
            polys.append(Polynomial([1.0, 0.0, 1.0]) * p.deriv() - (beta + 2 * k) * Polynomial([0.0, 1.0]) * p)
        return polys

    def _bump_cutoff(self) -> SmoothCutoff:
        return SmoothCutoff(self.param, 2.0 * self.param)

    # -- operations --------------------------------------------------------

    def eval(self, k: int, r):
        """Exact k-th derivative of psi at r >= 0 (vectorized)."""
        if not 0 <= k <= MAX_ORDER:
            raise UnsupportedOrderError(f"derivative order {k} > {MAX_ORDER}")
        r = np.asarray(r, dtype=float)
        if self.family == "exponential":
            out = (-self.param) ** k * np.exp(-self.param * r)
        elif self.family == "rational":
            poly = self._rational_polys(k)[k]
            out = poly(r) * (1.0 + r * r) ** (-self.param / 2.0 - k)
        else:
            out = self._bump_cutoff().eval(k, r)
        return out if np.ndim(out) else float(out)

    def constant_C(self, k: int, s: float) -> float:
        """Integral of |psi^(k)(r)| (r+1)^s over [0, inf), to ~1e-9 relative."""
        if not 0 <= k <= MAX_ORDER:
            raise UnsupportedOrderError(f"derivative order {k} > {MAX_ORDER}")
        if not self.constant_finite(k, s):
            raise DivergenceError(
                f"C integral diverges for {self.family}({self.param}) at (k={k}, s={s})"
            )

        def f(r):
            return abs(self.eval(k, r)) * (r + 1.0) ** s

        if self.family == "exponential":
            val, _ = quad(f, 0.0, np.inf, epsabs=0.0, epsrel=1e-11, limit=200)
            return val
        if self.family == "rational":
            roots = self._rational_polys(k)[k].roots()
            kinks = sorted(float(x.real) for x in roots if abs(x.imag) < 1e-12 and x.real > 0)
            hi = (kinks[-1] if kinks else 1.0) + 10.0
            head, _ = quad(f, 0.0, hi, epsabs=0.0, epsrel=1e-11, limit=400, points=kinks or None)
            tail, _ = quad(f, hi, np.inf, epsabs=0.0, epsrel=1e-11, limit=200)
            return head + tail
        lo = 0.0 if k == 0 else self.param
        val, _ = quad(f, lo, 2.0 * self.param, epsabs=0.0, epsrel=1e-10, limit=400)
        return val

    def constant_finite(self, k: int, s: float) -> bool:
        """Whether the (k, s) constant integral converges."""
        if self.family == "rational":
            # psi^(k) ~ r^(-beta-k) at infinity
            return s < self.param + k - 1.0
        return True

    def truncation_radius(self, eps: float) -> float:
        """Radius beyond which |psi| stays below eps."""
        if self.family == "exponential":
            return math.log(1.0 / eps) / self.param
        if self.family == "rational":
            return (eps ** (-2.0 / self.param) - 1.0) ** 0.5 if eps < 1.0 else 0.0
        return 2.0 * self.param


def parse_profile(text: str) -> Profile:
    """Parse the CLI syntax ``exp:1.0 | rational:6.0 | bump:2.0``."""
    try:
        name, raw = text.split(":", 1)
        value = float(raw)
    except ValueError as exc:
        raise UsageError(f"bad profile spec {text!r} (want family:param)") from exc
    family = {"exp": "exponential", "rational": "rational", "bump": "bump"}.get(name)
    if family is None:
        raise UsageError(f"unknown profile family {name!r} in {text!r}")
    return Profile(family, value)

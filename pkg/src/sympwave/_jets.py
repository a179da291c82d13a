"""Truncated Taylor-series (jet) arithmetic.

A jet of order K at a point x is the array ``c`` of Taylor coefficients
``f(x + e) = sum_j c[j] e**j + O(e**(K+1))``.  The mollifier machinery in
:mod:`sympwave.profiles` builds exact derivatives of ``exp(-1/s)``-type
transitions out of these primitives, which keeps every derivative closed
form up to float rounding (no symbolic algebra, no finite differences).
"""

from __future__ import annotations

import numpy as np


def jet_const(value: float, order: int) -> np.ndarray:
    c = np.zeros(order + 1)
    c[0] = value
    return c


def jet_var(x: float, order: int) -> np.ndarray:
    """Jet of the identity map s -> s."""
    c = np.zeros(order + 1)
    c[0] = x
    if order >= 1:
        c[1] = 1.0
    return c


def jet_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    order = len(a) - 1
    c = np.zeros_like(a + b)
    for k in range(order + 1):
        c[k] = np.dot(a[: k + 1], b[k::-1])
    return c


def jet_div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Jet of a/b; requires b[0] != 0."""
    order = len(a) - 1
    c = np.zeros_like(a + b)
    for k in range(order + 1):
        acc = a[k]
        if k:
            acc = acc - np.dot(b[1 : k + 1], c[k - 1 :: -1])
        c[k] = acc / b[0]
    return c


def jet_exp(a: np.ndarray) -> np.ndarray:
    """Jet of exp(a) via the standard b' = a' b recurrence."""
    order = len(a) - 1
    b = np.zeros_like(a)
    b[0] = np.exp(a[0])
    for n in range(1, order + 1):
        j = np.arange(1, n + 1)
        b[n] = np.dot(j * a[1 : n + 1], b[n - 1 :: -1][: n]) / n
    return b


def jet_neg_recip(x: float, order: int) -> np.ndarray:
    """Jet of s -> -1/s at x (x != 0)."""
    j = np.arange(order + 1)
    return -((-1.0) ** j) / x ** (j + 1)


def jet_powi(x: float, p: int, order: int) -> np.ndarray:
    """Jet of s -> s**p at x, for integer p >= 1."""
    from math import comb

    c = np.zeros(order + 1)
    for j in range(min(order, p) + 1):
        c[j] = comb(p, j) * x ** (p - j)
    return c


def jet_compose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Jet of f(g(s)) given the jet of f at g(x) and the jet of g at x."""
    order = len(outer) - 1
    shifted = inner.copy()
    shifted[0] = 0.0
    result = np.zeros_like(outer + inner)
    result[0] = outer[order]
    for j in range(order - 1, -1, -1):
        result = jet_mul(result, shifted)
        result[0] += outer[j]
    return result


def jet_derivatives(jet: np.ndarray) -> np.ndarray:
    """Convert Taylor coefficients to derivative values f^(k) = k! c_k."""
    from math import factorial

    fac = np.array([factorial(k) for k in range(len(jet))], dtype=float)
    return jet * fac

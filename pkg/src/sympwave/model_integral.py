"""Oscillatory integrals over R^l with a radial oscillation and a symbol.

For a unit direction E and h >= 0, the object of study is

    I(h) = int_{R^l} Psi(|lam|) exp(i h <lam, E>) sigma(lam) dlam,

reduced in polar coordinates to the radial density

    xi(r, h) = r^(l-1) int_0^pi exp(i h r cos t) (sin t)^(l-2) D_r(t) dt,

where D_r averages the rotated symbol over the remaining l-2 angles.  The
endpoint stationary-phase expansion of xi (p = 2 at both poles of the
sphere) gives an exact decomposition xi = main + R0 + R1 + R2, with the
main term carrying the constant C_l = (2 pi)^((l-1)/2), and remainder
pieces built from the contour functions and from the u = B boundary data.

Phase convention: the boundary point Theta = +e1 has phase +h r, so the
main term pairs exp(+i h r) with sigma(r E) and exp(-i h r) with
sigma(-r E).  For Weyl-even symbols (every built-in) the two terms are
interchangeable; the exactness test below pins the convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gamma as real_gamma

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev

from ._jets import jet_compose, jet_derivatives, jet_powi
from ._quad import (FilonPanels, cheb_first_kind_points, filon_chebyshev,
                    gl_panels_nodes, gl_rule, halfperiod_breaks, integrate_panels)
from .errors import DivergenceError, NormalizationError, ResolutionError, UsageError
from .plancherel import CFunction
from .profiles import Profile, SmoothCutoff

_U_HI = 1.36          # proxy domain end, between sqrt(7/4) and the sqrt(2) singularity
_V_LO, _V_HI = 0.40, 1.85
_CUT = (1.5, 1.75)    # cutoff thresholds in v = u^2


def sphere_area(k: int) -> float:
    """Surface area of the unit sphere S^k in R^(k+1)."""
    return 2.0 * math.pi ** ((k + 1) / 2.0) / real_gamma((k + 1) / 2.0)


def main_term_constant(l: int) -> float:
    """C_l = (2 pi)^((l-1)/2), fixed by the q^(l-2)(0) and S_(l-2) bookkeeping."""
    return (2.0 * math.pi) ** ((l - 1) / 2.0)


@dataclass(frozen=True)
class Symbol:
    """An amplitude on R^l with known vanishing order and growth exponent."""

    dimension: int
    eval: callable                 # maps (..., l) arrays to complex (...)
    vanishing_order: int
    growth_exponent: float
    label: str = ""


def gaussian_symbol(l: int) -> Symbol:
    return Symbol(l, lambda lam: np.exp(-np.sum(np.asarray(lam) ** 2, axis=-1)) + 0j,
                  vanishing_order=0, growth_exponent=0.0, label="gauss")


def quadratic_gaussian_symbol(l: int) -> Symbol:
    def f(lam):
        s = np.sum(np.asarray(lam) ** 2, axis=-1)
        return s * np.exp(-s) + 0j
    return Symbol(l, f, vanishing_order=2, growth_exponent=0.0, label="r2gauss")


def plancherel_symbol(cf: CFunction) -> Symbol:
    datum = cf.datum
    return Symbol(datum.rank, lambda lam: cf.density(lam) + 0j,
                  vanishing_order=2 * datum.d,
                  growth_exponent=float(datum.n - datum.rank),
                  label="plancherel")


def rotate_to_axis(E) -> np.ndarray:
    """Rotation J with J e1 = E (so J^-1 E = e1), built by orthonormalization."""
    E = np.asarray(E, dtype=float)
    l = E.shape[0]
    if abs(np.linalg.norm(E) - 1.0) > 1e-12:
        raise NormalizationError("direction E must be a unit vector")
    cols = [E]
    skip = int(np.argmax(np.abs(E)))
    for i in range(l):
        if i != skip:
            e = np.zeros(l)
            e[i] = 1.0
            cols.append(e)
    A = np.stack(cols, axis=1)
    Q, Rm = np.linalg.qr(A)
    Q = Q * np.sign(np.diag(Rm))[None, :]
    return Q


# ---------------------------------------------------------------------------
# the partial spherical average D_r
# ---------------------------------------------------------------------------

def _sphere_rule(l: int, refine: int = 0):
    """Points and weights on S^(l-2) (the last l-1 coordinates of Theta).

    Total weight is the surface area S_(l-2); for l = 2 the sphere is the
    two-point set {+1, -1}.
    """
    if l == 2:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    nphi = 64 << refine
    phi = 2.0 * np.pi * np.arange(nphi) / nphi
    wphi = np.full(nphi, 2.0 * np.pi / nphi)
    pts = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    w = wphi
    for j in range(l - 3):
        # prepend a polar angle with its sin-power weight
        ng = 32 << refine
        x, gw = gl_rule(ng)
        th = 0.5 * np.pi * (x + 1.0)
        wth = 0.5 * np.pi * gw * np.sin(th) ** (pts.shape[-1] - 1)
        new_pts = np.concatenate(
            [np.broadcast_to(np.cos(th)[:, None, None], (ng, len(pts), 1)),
             np.sin(th)[:, None, None] * pts[None, :, :]], axis=-1)
        pts = new_pts.reshape(-1, new_pts.shape[-1])
        w = (wth[:, None] * w[None, :]).ravel()
    return pts, w


def d_r(symbol: Symbol, rotation: np.ndarray, r: float, theta1, refine: int = 0):
    """Average of the rotated symbol over the sphere slice at colatitude theta1.

    Vectorized over theta1.  For l = 2 this folds the circle onto [0, pi]
    by summing the two branches (cos t, +/- sin t).
    """
    l = symbol.dimension
    if l < 2:
        raise UsageError("the sphere average needs rank >= 2; use the rank-one path")
    th = np.atleast_1d(np.asarray(theta1, dtype=float))
    pts, w = _sphere_rule(l, refine)
    theta_dir = np.concatenate(
        [np.cos(th)[:, None, None] * np.ones((1, len(pts), 1)),
         np.sin(th)[:, None, None] * pts[None, :, :]], axis=-1)   # (nt, np, l)
    lam = r * theta_dir @ rotation.T
    vals = symbol.eval(lam)
    out = vals @ w
    return out if np.ndim(theta1) else complex(out[0])


class _DrTable:
    """D_r with spherical refinement fixed by a convergence check at theta = 0.3."""

    def __init__(self, symbol, rotation, r):
        self.symbol, self.rotation, self.r = symbol, rotation, r
        self.refine = 0
        if symbol.dimension > 2:
            probe = np.array([0.3, 1.1, 2.4])
            prev = d_r(symbol, rotation, r, probe, refine=0)
            while self.refine < 4:
                cur = d_r(symbol, rotation, r, probe, refine=self.refine + 1)
                if np.max(np.abs(cur - prev)) <= 1e-11 * (np.max(np.abs(cur)) + 1e-300):
                    break
                self.refine += 1
                prev = cur

    def __call__(self, theta1):
        return d_r(self.symbol, self.rotation, self.r, theta1, refine=self.refine)


# ---------------------------------------------------------------------------
# xi by direct oscillatory quadrature
# ---------------------------------------------------------------------------

def xi_direct(symbol: Symbol, E, r: float, h: float) -> complex:
    """Radial density xi(r, h) by quadrature of the colatitude integral."""
    if r <= 0.0 or h < 0.0:
        raise UsageError("need r > 0 and h >= 0")
    l = symbol.dimension
    J = rotate_to_axis(E)
    dr = _DrTable(symbol, J, r)
    mu = h * r

    if l == 2:
        # int_0^pi e^{i mu cos t} D(t) dt = int_{-1}^{1} e^{i mu c} D(arccos c) / sqrt(1-c^2) dc
        deg = 48
        prev = None
        while deg <= 3072:
            c = cheb_first_kind_points(deg + 1)
            vals = dr(np.arccos(c))
            cur = filon_chebyshev(vals, mu, deg + 1)
            if prev is not None and abs(cur - prev) <= 1e-11 * max(abs(cur), 1e-300) + 1e-16:
                return r ** (l - 1) * cur
            prev, deg = cur, deg * 2
        return r ** (l - 1) * cur

    if l == 3:
        fil = FilonPanels(lambda c: dr(np.arccos(np.clip(c, -1.0, 1.0))),
                          -1.0, 1.0, n_panels=8, warn_label="xi_direct")
        return r ** (l - 1) * fil.integrate(mu)

    # generic rank: colatitude panels at half-periods of mu cos(t)
    n = max(8, int(np.ceil(2.0 * mu / np.pi)))
    cvals = np.linspace(1.0, -1.0, n + 1)
    breaks = np.arccos(cvals)
    def f(ts):
        return np.exp(1j * mu * np.cos(ts)) * np.sin(ts) ** (l - 2) * dr(ts)
    return r ** (l - 1) * integrate_panels(f, breaks, order0=16, tol=1e-10,
                                           warn_label="xi_direct")


# ---------------------------------------------------------------------------
# the q family with Chebyshev proxies and the fixed cutoff
# ---------------------------------------------------------------------------

class QFamily:
    """Boundary amplitudes q, q~, q1, q~1 for the colatitude phase (p = 2).

    The analytic parts are proxied by Chebyshev interpolants away from the
    sqrt(2) endpoint singularity; the compact support comes from the fixed
    smooth cutoff in v = u^2 equal to 1 below 3/2 and 0 above 7/4, applied
    through exact Taylor jets so that derivatives of the extended functions
    stay accurate to spectral precision.
    """

    def __init__(self, symbol: Symbol, E, r: float, degree: int = 96):
        l = symbol.dimension
        if l < 2:
            raise UsageError("q family needs rank >= 2")
        self.l = l
        self.degree = degree
        J = rotate_to_axis(E)
        self.dr = _DrTable(symbol, J, r)
        self.cutoff = SmoothCutoff(*_CUT)

        def a_u(us, mirror):
            us = np.atleast_1d(us)
            th = np.arccos(np.clip(1.0 - us**2, -1.0, 1.0))
            th = np.pi - th if mirror else th
            vals = self.dr(th)
            base = 2.0 * us ** (l - 2) * (2.0 - us**2) ** ((l - 3) / 2.0)
            return base * (vals if mirror else np.conj(vals))

        def a_v(vs, mirror):
            vs = np.atleast_1d(vs)
            th = np.arccos(np.clip(1.0 - vs, -1.0, 1.0))
            th = np.pi - th if mirror else th
            vals = self.dr(th)
            pv = 2.0 * (2.0 * vs - vs**2) ** ((l - 3) / 2.0)
            return pv * (vals if mirror else np.conj(vals))

        # symbols with shrinking analyticity strips (the Plancherel densities
        # at large r) need more resolution, so the degree escalates on demand
        for factor in (1, 2, 3, 4):
            deg = degree * factor
            self.proxy_u = Chebyshev.interpolate(lambda u: a_u(u, False), deg, domain=[0.0, _U_HI])
            self.proxy_ut = Chebyshev.interpolate(lambda u: a_u(u, True), deg, domain=[0.0, _U_HI])
            self.proxy_v = Chebyshev.interpolate(lambda v: a_v(v, False), deg, domain=[_V_LO, _V_HI])
            self.proxy_vt = Chebyshev.interpolate(lambda v: a_v(v, True), deg, domain=[_V_LO, _V_HI])
            worst = max(np.abs(p.coef)[-3:].max() / (np.abs(p.coef).max() + 1e-300)
                        for p in (self.proxy_u, self.proxy_ut, self.proxy_v, self.proxy_vt))
            if worst <= 1e-7:
                break
        else:
            raise ResolutionError(
                f"q family unresolved at degree {deg}; tail ratio {worst:.1e}")

    # -- values --------------------------------------------------------------

    def _value(self, proxy, x, lo, hi, cut_arg):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.zeros(x.shape, dtype=complex)
        live = (x >= lo) & (x <= hi)
        if np.any(live):
            out[live] = proxy(x[live]) * self.cutoff.value(cut_arg(x[live]))
        return complex(out[0]) if scalar else out

    def q(self, u):
        return self._value(self.proxy_u, u, 0.0, _U_HI, lambda x: x**2)

    def q_tilde(self, u):
        return self._value(self.proxy_ut, u, 0.0, _U_HI, lambda x: x**2)

    def q1(self, v):
        return self._value(self.proxy_v, v, _V_LO, _V_HI, lambda x: x)

    def q1_tilde(self, v):
        return self._value(self.proxy_vt, v, _V_LO, _V_HI, lambda x: x)

    # -- derivatives ----------------------------------------------------------

    def q_deriv_at_zero(self, k: int, mirror: bool = False) -> complex:
        proxy = self.proxy_ut if mirror else self.proxy_u
        return complex(proxy.deriv(k)(0.0) if k else proxy(0.0))

    def q_ext_deriv(self, k: int, u, mirror: bool = False) -> np.ndarray:
        """k-th derivative of the cutoff q (or q~), vectorized over u."""
        proxy = self.proxy_ut if mirror else self.proxy_u
        u = np.atleast_1d(np.asarray(u, dtype=float))
        out = np.zeros(u.shape, dtype=complex)
        live = u <= _U_HI
        ul = u[live]
        v = ul**2
        cut = np.zeros((k + 1, len(ul)))
        cut[0] = np.where(v <= self.cutoff.lo, 1.0, 0.0)
        for i in np.nonzero((v > self.cutoff.lo) & (v < self.cutoff.hi))[0]:
            jet = jet_compose(self.cutoff.jet(v[i], k), jet_powi(ul[i], 2, k))
            cut[:, i] = jet_derivatives(jet)
        acc = np.zeros(len(ul), dtype=complex)
        for j in range(k + 1):
            pd = proxy.deriv(j)(ul) if j else proxy(ul)
            acc += math.comb(k, j) * pd * cut[k - j]
        out[live] = acc
        return out

    def q1_ext_deriv(self, k: int, v, mirror: bool = False) -> np.ndarray:
        proxy = self.proxy_vt if mirror else self.proxy_v
        v = np.atleast_1d(np.asarray(v, dtype=float))
        out = np.zeros(v.shape, dtype=complex)
        live = (v >= _V_LO) & (v <= _V_HI)
        vl = v[live]
        cut = np.zeros((k + 1, len(vl)))
        cut[0] = np.where(vl <= self.cutoff.lo, 1.0, 0.0)
        for i in np.nonzero((vl > self.cutoff.lo) & (vl < self.cutoff.hi))[0]:
            cut[:, i] = jet_derivatives(self.cutoff.jet(vl[i], k))
        acc = np.zeros(len(vl), dtype=complex)
        for j in range(k + 1):
            pd = proxy.deriv(j)(vl) if j else proxy(vl)
            acc += math.comb(k, j) * pd * cut[k - j]
        out[live] = acc
        return out


def q_family(symbol: Symbol, E, r: float, degree: int = 96) -> QFamily:
    """Build the q / q~ / q1 / q~1 evaluators with their Chebyshev proxies."""
    return QFamily(symbol, E, r, degree=degree)


# ---------------------------------------------------------------------------
# the exact decomposition
# ---------------------------------------------------------------------------

@dataclass
class XiDecomposition:
    direct: complex
    main: complex
    R0: complex
    R1: complex
    R2: complex

    @property
    def remainder(self) -> complex:
        return self.R0 + self.R1 + self.R2


def xi_decompose(symbol: Symbol, E, r: float, h: float, M: int | None = None,
                 degree: int = 96) -> XiDecomposition:
    """Decompose xi(r, h) into main term plus the three remainder pieces.

    M defaults to floor((l+1)/2).  The pieces satisfy
    direct = main + R0 + R1 + R2 up to quadrature accuracy for every h r > 0;
    the u = B boundary series cancels identically between the two sphere
    poles and is therefore absent.
    """
    from .stationary_phase import k_n, k_n_zero

    l = symbol.dimension
    if M is None:
        M = (l + 1) // 2
    if h <= 0.0 or r <= 0.0:
        raise UsageError("decomposition needs h > 0 and r > 0")
    x = h * r
    fam = QFamily(symbol, E, r, degree=degree)
    J = rotate_to_axis(E)
    E = np.asarray(E, dtype=float)

    direct = xi_direct(symbol, E, r, h)

    rpow = r ** (l - 1)
    sig_p = complex(np.asarray(symbol.eval((r * E)[None, :]))[0])
    sig_m = complex(np.asarray(symbol.eval((-r * E)[None, :]))[0])
    quarter = 1j * np.pi * (1.0 - l) / 4.0
    main = main_term_constant(l) * (
        np.exp(1j * x + quarter) * sig_p + np.exp(-1j * x - quarter) * sig_m
    ) * (r * h) ** ((1.0 - l) / 2.0) * rpow

    sgn = (-1.0) ** l
    kl0 = k_n_zero(l, x, 2)
    qd = fam.q_deriv_at_zero(l - 1, mirror=False)
    qtd = fam.q_deriv_at_zero(l - 1, mirror=True)
    R0 = sgn * (np.exp(1j * x) * np.conj(qd * kl0) + np.exp(-1j * x) * qtd * kl0) * rpow

    cut_lo_u, cut_hi_u = math.sqrt(_CUT[0]), math.sqrt(_CUT[1])
    breaks = np.concatenate([np.linspace(0.0, cut_lo_u, 11),
                             np.linspace(cut_lo_u, cut_hi_u, 9)[1:]])
    int_q = integrate_panels(lambda us: fam.q_ext_deriv(l, us) * k_n(l, us, x, 2),
                             breaks, order0=16, tol=1e-12, warn_label="R1(q)")
    int_qt = integrate_panels(lambda us: fam.q_ext_deriv(l, us, mirror=True) * k_n(l, us, x, 2),
                              breaks, order0=16, tol=1e-12, warn_label="R1(q~)")
    R1 = sgn * (np.exp(1j * x) * np.conj(int_q) + np.exp(-1j * x) * int_qt) * rpow

    fil_q = FilonPanels(lambda vs: np.conj(fam.q1_ext_deriv(M, vs)), 1.0, _V_HI,
                        n_panels=12, warn_label="R2(q1)")
    fil_qt = FilonPanels(lambda vs: fam.q1_ext_deriv(M, vs, mirror=True), 1.0, _V_HI,
                         n_panels=12, warn_label="R2(q~1)")
    term_q = (-1.0) ** M * np.exp(1j * x) * fil_q.integrate(-x)
    term_qt = np.exp(-1j * x) * fil_qt.integrate(x)
    R2 = -0.5 * (1j**M / x**M) * (term_q + term_qt) * rpow

    return XiDecomposition(direct=complex(direct), main=complex(main),
                           R0=complex(R0), R1=complex(R1), R2=complex(R2))


# ---------------------------------------------------------------------------
# the Psi-weighted integral over R^l
# ---------------------------------------------------------------------------

def i_psi(symbol: Symbol, profile: Profile, t_phase: float, E, h: float):
    """Direct value and main term of the Psi-weighted integral.

    Psi(r) = exp(i t_phase r) psi(r).  Returns (direct, main) where direct
    integrates Psi against xi(r, h) radially (evaluated with the radial
    integral innermost so arbitrary frequencies stay cheap) and main is the
    stationary boundary contribution with constant C_l h^((1-l)/2).
    """
    l = symbol.dimension
    n_eff = symbol.growth_exponent + l
    s_needed = n_eff + l / 2.0 - 2.0
    if not profile.constant_finite(0, max(0.0, s_needed)):
        raise DivergenceError(
            f"profile constant (k=0, s={s_needed:.3g}) diverges; the integral is undefined")
    if h < 0.0:
        raise UsageError("h must be nonnegative")

    J = rotate_to_axis(E)
    E = np.asarray(E, dtype=float)
    rmax = profile.truncation_radius(1e-14)

    # main term: two linear-phase radial integrals at frequencies t +/- h;
    # for even l the weight r^((l-1)/2) has a branch point at 0, handled by
    # a short r = w^2 cap with half-period panels before the Filon tail
    def smooth_amp(sign):
        def amp(rs):
            rs = np.atleast_1d(rs)
            lam = (sign * rs)[:, None] * E[None, :]
            return profile.eval(0, rs) * np.asarray(symbol.eval(lam))
        return amp

    def radial_main(sign, freq):
        amp = smooth_amp(sign)
        power = (l - 1) / 2.0
        if l % 2 == 1:
            fil = FilonPanels(lambda rs: amp(rs) * np.atleast_1d(rs) ** power,
                              0.0, rmax, n_panels=32, warn_label="i_psi main")
            return fil.integrate(freq)
        r1 = min(1.0, rmax / 8.0)
        wb = halfperiod_breaks(abs(freq) * r1, 0.0, math.sqrt(r1))
        cap = integrate_panels(
            lambda ws: 2.0 * ws ** (2.0 * power + 1.0) * amp(ws**2)
            * np.exp(1j * freq * ws**2),
            np.unique(np.concatenate([wb, np.linspace(0.0, math.sqrt(r1), 9)])),
            order0=16, tol=1e-11, warn_label="i_psi main cap")
        fil = FilonPanels(lambda rs: amp(rs) * np.atleast_1d(rs) ** power,
                          r1, rmax, n_panels=32, warn_label="i_psi main tail")
        return cap + fil.integrate(freq)

    quarter = 1j * np.pi * (1.0 - l) / 4.0
    main = main_term_constant(l) * h ** ((1.0 - l) / 2.0) * (
        np.exp(quarter) * radial_main(+1, t_phase + h)
        + np.exp(-quarter) * radial_main(-1, t_phase - h)
    )

    # direct: colatitude outside, radial Filon inside
    pts, w = _sphere_rule(l, refine=1 if l <= 3 else 0)
    nodes_t, nodes_w = _colatitude_rule(l, t_phase, h)
    ct, st = np.cos(nodes_t), np.sin(nodes_t)
    freqs = t_phase + h * ct

    theta_dir = np.concatenate(
        [ct[:, None, None] * np.ones((1, len(pts), 1)),
         st[:, None, None] * pts[None, :, :]], axis=-1)      # (nt, np, l)

    fil = _BatchedRadialFilon(profile, rmax)
    vals = np.zeros((len(nodes_t), len(pts)), dtype=complex)
    for ip in range(len(pts)):
        lam_dirs = theta_dir[:, ip, :] @ J.T                     # (nt, l)
        def amp(rs, dirs=lam_dirs):
            rs = np.atleast_1d(rs)
            lam = rs[None, :, None] * dirs[:, None, :]
            return (profile.eval(0, rs)[None, :] * rs[None, :] ** (l - 1)
                    * np.asarray(symbol.eval(lam)))
        vals[:, ip] = fil.integrate_rows(amp, freqs)
    weighted = (vals @ w) * st ** (l - 2)
    direct = np.sum(nodes_w * weighted)
    return complex(direct), complex(main)


def _colatitude_rule(l: int, t_phase: float, h: float):
    """GL panels on [0, pi] refined where |t + h cos(theta)| is small."""
    cuts = {0.0, np.pi}
    if h > 0.0:
        for level in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0]:
            for sgn in (-1.0, 1.0):
                c = (sgn * level - t_phase) / h
                if -1.0 < c < 1.0:
                    cuts.add(float(np.arccos(c)))
    base = np.linspace(0.0, np.pi, 17)
    breaks = np.unique(np.concatenate([np.array(sorted(cuts)), base]))
    return gl_panels_nodes(breaks, 16)


class _BatchedRadialFilon:
    """Filon panels on [0, rmax] shared across many (direction, frequency) rows."""

    def __init__(self, profile: Profile, rmax: float, n_panels: int = 24):
        from ._quad import _FILON_DEG, _FILON_NODES, _filon_projection
        self.breaks = np.linspace(0.0, rmax, n_panels + 1)
        x, self.proj = _filon_projection(_FILON_NODES, _FILON_DEG)
        self.mid = 0.5 * (self.breaks[1:] + self.breaks[:-1])
        self.half = 0.5 * (self.breaks[1:] - self.breaks[:-1])
        self.nodes = (self.mid[:, None] + self.half[:, None] * x[None, :]).ravel()
        self.deg = _FILON_DEG
        self.npanels = n_panels
        self.nnodes = _FILON_NODES

    def integrate_rows(self, amp, freqs):
        """amp(r_nodes) -> (nrows, nnodes); returns per-row integrals at freqs[row]."""
        from ._quad import _bessel_moments
        vals = np.asarray(amp(self.nodes))                    # (nrows, total_nodes)
        nrows = vals.shape[0]
        vals = vals.reshape(nrows, self.npanels, self.nnodes)
        coeffs = np.einsum("rpn,dn->rpd", vals, self.proj)    # (nrows, panels, deg)
        mu = freqs[:, None] * self.half[None, :]              # (nrows, panels)
        moments = _bessel_moments(mu, self.deg)               # (deg, nrows, panels)
        per_panel = np.einsum("rpd,drp->rp", coeffs, moments)
        phase = np.exp(1j * freqs[:, None] * self.mid[None, :])
        return np.sum(self.half[None, :] * phase * per_panel, axis=1)

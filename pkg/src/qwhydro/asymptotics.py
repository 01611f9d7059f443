"""Pearcey integral, shock coordinate chart, and three-zone caustic asymptotics.

The dispersive shock of the free Schrödinger flow with ψ₀ = e^{im cos x}
is, near its first caustic (x, t) = (0, 1), a cusp diffraction pattern:

    ψ(x,t) ≈ A(x,t) · I_P(−T(t), X(x,t)),
    I_P(T,X) = ∫ dy e^{i(Xy + Ty² + y⁴)},

with T = (t−1)/(2εt√a), X = −x/(εt a^{1/4}), A = e^{i(1+x²/2t)/ε}/√(2iπtε√a),
a = m/24 and ε = 1/m.  The stationary-phase structure of
Φ(u) = u⁴ − Tu² + Xu divides the plane into three zones by the cubic
discriminant Δ = T³/2 − 27X²/16 of Φ′:

    zone I   (Δ < −δ): one real saddle, smooth field;
    zone II  (|Δ| ≤ δ): two saddles coalescing on the caustic, Airy regime;
    zone III (Δ > +δ): three real saddles, interference fringes.

I_P itself is evaluated on the rotated contour y = e^{iπ/8}s, which turns
the quartic oscillation into e^{−s⁴} decay and leaves an absolutely
convergent integral for adaptive Gauss–Kronrod quadrature.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

TWO_PI = 2.0 * math.pi

# ---------------------------------------------------------------------------
# Airy function: Maclaurin series near the origin, asymptotic series beyond.
# ---------------------------------------------------------------------------

_AI0 = 0.3550280538878172392600632  # Ai(0)  = 3^(-2/3)/Γ(2/3)
_AIP0 = -0.2588194037928067984051836  # Ai'(0) = -3^(-1/3)/Γ(1/3)
# Per-side series/asymptotic crossovers.  On the growing side the series
# cancellation costs e^{ξ}·eps absolute error, so hand over to the (tiny,
# sharply convergent) asymptotic form early; on the oscillatory side the
# series stays accurate further out and the asymptotic tail needs larger ξ.
_SERIES_CUT_POS = 6.0
_SERIES_CUT_NEG = 8.0
_SQRT_PI = math.sqrt(math.pi)


def _airy_series(z: float) -> tuple[float, float]:
    """(Ai, Ai') by the Maclaurin series, |z| ≲ 8.

    The two auxiliary series both grow like e^{|ξ|} while their combination
    cancels to e^{−ξ}; extended-precision accumulation keeps the absolute
    error of the cancellation below 1e−12 up to the crossover.
    """
    zl = np.longdouble(z)
    z3 = zl ** 3
    f = np.longdouble(1.0)   # Σ 3^k (1/3)_k z^{3k} / (3k)!
    g = zl                   # Σ 3^k (2/3)_k z^{3k+1} / (3k+1)!
    fp = np.longdouble(0.0)  # f'
    gp = np.longdouble(1.0)  # g'
    tf = np.longdouble(1.0)
    tg = zl
    for k in range(80):
        tf = tf * z3 / ((3 * k + 2) * (3 * k + 3))
        tg = tg * z3 / ((3 * k + 3) * (3 * k + 4))
        f += tf
        g += tg
        # term-wise derivatives: d/dz z^{3k+3} and z^{3k+4} pick up exponents
        if z != 0.0:
            fp += tf * (3 * k + 3) / zl
            gp += tg * (3 * k + 4) / zl
        if abs(tf) < 1e-25 * abs(f) and abs(tg) < 1e-25 * max(abs(g), 1e-30):
            break
    ai = _AI0 * f + _AIP0 * g
    aip = _AI0 * fp + _AIP0 * gp
    return float(ai), float(aip)


def _asymptotic_u_coeffs(n_terms: int = 24) -> tuple[np.ndarray, np.ndarray]:
    u = np.empty(n_terms)
    v = np.empty(n_terms)
    u[0] = 1.0
    v[0] = 1.0
    for k in range(n_terms - 1):
        u[k + 1] = u[k] * (3 * k + 0.5) * (3 * k + 1.5) * (3 * k + 2.5) / (
            54.0 * (k + 1) * (k + 0.5))
        v[k + 1] = -(6 * (k + 1) + 1) / (6 * (k + 1) - 1) * u[k + 1]
    return u, v


_UK, _VK = _asymptotic_u_coeffs()


def _alternating_tail(coeffs: np.ndarray, xi: float) -> float:
    """Σ (−1)^k c_k ξ^{−k}, truncated at the smallest term."""
    total = 0.0
    prev = math.inf
    for k, c in enumerate(coeffs):
        term = c / xi ** k
        if abs(term) > prev:
            break
        total += (-1) ** k * term
        prev = abs(term)
    return total


def _airy_asymptotic_pos(z: float) -> tuple[float, float]:
    xi = (2.0 / 3.0) * z ** 1.5
    damp = math.exp(-xi)
    ai = damp / (2.0 * _SQRT_PI * z ** 0.25) * _alternating_tail(_UK, xi)
    aip = -damp * z ** 0.25 / (2.0 * _SQRT_PI) * _alternating_tail(_VK, xi)
    return ai, aip


def _airy_asymptotic_neg(z_abs: float) -> tuple[float, float]:
    xi = (2.0 / 3.0) * z_abs ** 1.5
    c = math.cos(xi - 0.25 * math.pi)
    s = math.sin(xi - 0.25 * math.pi)
    even_u = _alternating_tail(_UK[0::2], xi ** 2)
    odd_u = _alternating_tail(_UK[1::2], xi ** 2) / xi
    even_v = _alternating_tail(_VK[0::2], xi ** 2)
    odd_v = _alternating_tail(_VK[1::2], xi ** 2) / xi
    ai = (c * even_u + s * odd_u) / (_SQRT_PI * z_abs ** 0.25)
    aip = (z_abs ** 0.25 / _SQRT_PI) * (s * even_v - c * odd_v)
    return ai, aip


def _airy_scalar(z: float) -> tuple[float, float]:
    if -_SERIES_CUT_NEG <= z <= _SERIES_CUT_POS:
        return _airy_series(z)
    if z > 0:
        return _airy_asymptotic_pos(z)
    return _airy_asymptotic_neg(-z)


def airy(z: float | np.ndarray) -> float | np.ndarray:
    """Airy function Ai(z) for real z, absolute error ≤ 1e−10."""
    if np.isscalar(z):
        if not math.isfinite(z):
            raise ValueError("airy requires finite argument")
        return _airy_scalar(float(z))[0]
    arr = np.asarray(z, dtype=float)
    return np.array([_airy_scalar(float(v))[0] for v in arr.ravel()]).reshape(arr.shape)


def airy_prime(z: float | np.ndarray) -> float | np.ndarray:
    """Derivative Ai′(z) for real z (same dual-method construction)."""
    if np.isscalar(z):
        if not math.isfinite(z):
            raise ValueError("airy_prime requires finite argument")
        return _airy_scalar(float(z))[1]
    arr = np.asarray(z, dtype=float)
    return np.array([_airy_scalar(float(v))[1] for v in arr.ravel()]).reshape(arr.shape)


# ---------------------------------------------------------------------------
# Saddle points of Φ(u) = u⁴ − Tu² + Xu: stable closed-form cubic roots.
# ---------------------------------------------------------------------------

def saddle_points(T: float, X: float) -> np.ndarray:
    """Three roots of Φ′(u) = 4u³ − 2Tu + X, sorted by real part.

    Closed-form solution of the depressed cubic u³ + pu + q (p = −T/2,
    q = X/4): trigonometric branch when all roots are real, Cardano with
    the cancellation-free cube-root pairing otherwise.
    """
    if not (math.isfinite(T) and math.isfinite(X)):
        raise ValueError("saddle_points requires finite arguments")
    p = -T / 2.0
    q = X / 4.0
    if p == 0.0 and q == 0.0:
        roots = np.zeros(3, dtype=complex)
    elif p == 0.0:
        # u³ = −q: one real cube root and its two rotations
        base = math.copysign(abs(q) ** (1.0 / 3.0), -q)
        spin = cmath.exp(2j * math.pi / 3.0)
        roots = np.array([base, base * spin, base * spin.conjugate()])
    else:
        disc = -4.0 * p ** 3 - 27.0 * q ** 2
        if disc >= 0.0 and p < 0.0:
            # three real roots (p < 0 whenever disc > 0)
            amp = 2.0 * math.sqrt(-p / 3.0)
            denom = p * amp
            cos3t = 3.0 * q / denom if denom != 0.0 else 0.0
            theta = math.acos(min(1.0, max(-1.0, cos3t))) / 3.0
            roots = np.array([
                amp * math.cos(theta),
                amp * math.cos(theta - 2.0 * math.pi / 3.0),
                amp * math.cos(theta + 2.0 * math.pi / 3.0),
            ], dtype=complex)
        else:
            sqrt_d = math.sqrt(q * q / 4.0 + p ** 3 / 27.0)
            if q >= 0.0:
                big = -q / 2.0 - sqrt_d
            else:
                big = -q / 2.0 + sqrt_d
            s = math.copysign(abs(big) ** (1.0 / 3.0), big)
            t_small = -p / (3.0 * s) if s != 0.0 else 0.0
            real_root = s + t_small
            re_pair = -real_root / 2.0
            im_pair = (math.sqrt(3.0) / 2.0) * (s - t_small)
            roots = np.array([
                real_root,
                re_pair + 1j * im_pair,
                re_pair - 1j * im_pair,
            ])
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def phi_value(u: np.ndarray | complex, T: float, X: float) -> np.ndarray | complex:
    """Φ(u) = u⁴ − Tu² + Xu."""
    return u ** 4 - T * u ** 2 + X * u


def phi_second(u: np.ndarray | complex, T: float) -> np.ndarray | complex:
    """Φ″(u) = 12u² − 2T."""
    return 12.0 * u ** 2 - 2.0 * T


# ---------------------------------------------------------------------------
# The Pearcey integral.
# ---------------------------------------------------------------------------

class PearceyConvergenceError(RuntimeError):
    """Raised when the quadrature error estimate exceeds the requested tol."""


_ROT = cmath.exp(1j * math.pi / 8.0)
_ROT2 = _ROT * _ROT


def _pearcey_truncation(T: float, X: float) -> float:
    # e^{−s⁴} integrand with linear/quadratic growth bounded by |T|, |X|;
    # pick L with s⁴ dominating by ≥ 50 e-folds at the ends.
    length = 4.0
    while length ** 4 - abs(T) * length ** 2 - abs(X) * length < 50.0:
        length += 0.5
    return length


def pearcey(T: float, X: float, tol: float = 1e-8) -> complex:
    """I_P(T,X) = ∫ dy e^{i(Xy + Ty² + y⁴)} to absolute accuracy ≤ tol.

    Contour rotation y = e^{iπ/8}s turns the quartic term into e^{−s⁴};
    the remaining factors stay bounded on the rotated line, and the
    adaptive quadrature integrates the absolutely convergent result.
    """
    if not (math.isfinite(T) and math.isfinite(X)):
        raise ValueError("pearcey requires finite arguments")
    if not (0.0 < tol <= 1e-3):
        raise ValueError("tol must lie in (0, 1e-3]")

    a_lin = 1j * X * _ROT
    a_quad = 1j * T * _ROT2

    def value(s: float) -> complex:
        return _ROT * cmath.exp(a_lin * s + a_quad * s * s - s ** 4)

    length = _pearcey_truncation(T, X)
    with warnings.catch_warnings():
        # QUADPACK's roundoff warning duplicates the estimate we check below.
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re, err_re = integrate.quad(lambda s: value(s).real, -length, length,
                                    epsabs=tol / 4, epsrel=1e-12, limit=400)
        im, err_im = integrate.quad(lambda s: value(s).imag, -length, length,
                                    epsabs=tol / 4, epsrel=1e-12, limit=400)
    if err_re + err_im > tol:
        raise PearceyConvergenceError(
            f"pearcey quadrature error {err_re + err_im:.2e} exceeds tol {tol:.2e}")
    return complex(re, im)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


def pearcey_direct(T: float, X: float, y_flat: float = 8.0,
                   y_taper: float = 4.0) -> complex:
    """Windowed quadrature of the Pearcey integrand on the real axis.

    Second, method-independent evaluation used to validate the contour
    rotation: composite Gauss–Legendre with panels no wider than a quarter
    of the local oscillation, under a cos² taper from |y| = y_flat out to
    y_flat + y_taper.  Valid while all stationary points sit well inside
    the flat region (|T|, |X| ≲ 10 comfortably).
    """
    y_max = y_flat + y_taper

    def local_rate(y: float) -> float:
        return abs(X + 2.0 * T * y + 4.0 * y ** 3) + 2.0

    edges = [0.0]
    while edges[-1] < y_max:
        width = min(0.25, 0.5 * math.pi / local_rate(edges[-1] + 0.25))
        edges.append(min(edges[-1] + width, y_max))
    edges = np.array(edges)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)[:, None]
    half = 0.5 * (hi - lo)[:, None]
    y = (mid + half * _GL_NODES[None, :]).ravel()
    wts = (half * _GL_WEIGHTS[None, :]).ravel()

    def half_line(sign: float) -> complex:
        ys = sign * y
        taper = np.ones_like(ys)
        out = np.abs(ys) > y_flat
        taper[out] = np.cos(0.5 * np.pi * (np.abs(ys[out]) - y_flat) / y_taper) ** 2
        phase = X * ys + T * ys ** 2 + ys ** 4
        return complex((wts * taper * np.exp(1j * phase)).sum())

    return half_line(1.0) + half_line(-1.0)


# ---------------------------------------------------------------------------
# Shock chart: (x, t) ↔ Pearcey arguments for the single-cosine shock.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShockChart:
    """Large-mass scaling constants a = m/24 and ε = 1/m."""

    mass: float
    a: float
    eps: float

    @classmethod
    def from_mass(cls, mass: float) -> "ShockChart":
        if not mass > 0:
            raise ValueError("mass must be positive")
        return cls(mass=float(mass), a=mass / 24.0, eps=1.0 / mass)


def shock_map(x: float, t: float, chart: ShockChart) -> tuple[float, float, complex]:
    """Scaled cusp coordinates (T, X) and prefactor A at space-time point (x, t)."""
    if t <= 0:
        raise ValueError("t must be positive")
    a, eps = chart.a, chart.eps
    T = (t - 1.0) / (2.0 * eps * t * math.sqrt(a))
    X = -x / (eps * t * a ** 0.25)
    A = cmath.exp(1j * (1.0 + x * x / (2.0 * t)) / eps) / cmath.sqrt(
        2j * math.pi * t * eps * math.sqrt(a))
    return T, X, A


def chart_point(T: float, X: float, chart: ShockChart) -> tuple[float, float]:
    """Inverse of shock_map on (T, X): the (x, t) realizing those arguments."""
    c = 1.0 / (2.0 * chart.eps * math.sqrt(chart.a))
    if T >= c:
        raise ValueError("T out of reachable range for this chart")
    t = c / (c - T)
    x = -X * chart.eps * t * chart.a ** 0.25
    return x, t


def pearcey_shock_approx(x: float, t: float, chart: ShockChart,
                         tol: float = 1e-8) -> complex:
    """Cusp-region wavefunction A(x,t)·I_P(−T, X)."""
    T, X, A = shock_map(x, t, chart)
    return A * pearcey(-T, X, tol)


# ---------------------------------------------------------------------------
# Zones of the saddle structure.
# ---------------------------------------------------------------------------

class Zone(enum.IntEnum):
    I = 1
    II = 2
    III = 3


# Width of the near-caustic band in the discriminant Δ = T³/2 − 27X²/16.
# Calibrated once against the quadrature oracle along shock-chart rays and
# frozen: at |Δ| = 20 the plain saddle sums on either side are accurate to
# a few percent, so the uniform Airy band hands off cleanly; well inside
# the band only the uniform reduction stays valid.
DELTA_BAND = 20.0


@dataclass(frozen=True)
class PearceyPoint:
    """A (T, X) point with its discriminant and zone label."""

    T: float
    X: float
    discriminant: float
    zone: Zone


def discriminant(T: float, X: float) -> float:
    """Δ = T³/2 − 27X²/16: positive ⇔ Φ′ has three distinct real roots."""
    return T ** 3 / 2.0 - 27.0 * X ** 2 / 16.0


def caustic_x(T: float) -> float:
    """Positive X on the fold caustic Δ = 0, i.e. X = √(8T³/27) for T ≥ 0."""
    if T < 0:
        raise ValueError("the caustic exists only for T ≥ 0")
    return math.sqrt(8.0 * T ** 3 / 27.0)


def classify_zone(T: float, X: float, band: float = DELTA_BAND) -> PearceyPoint:
    """Assign zone I/II/III from the discriminant with near-caustic band."""
    if band <= 0:
        raise ValueError("band must be positive")
    delta = discriminant(T, X)
    if delta < -band:
        zone = Zone.I
    elif delta > band:
        zone = Zone.III
    else:
        zone = Zone.II
    return PearceyPoint(T=T, X=X, discriminant=delta, zone=zone)


# ---------------------------------------------------------------------------
# Zone approximations.
# ---------------------------------------------------------------------------

_REAL_TOL = 1e-9


def _sd_term(u: float, T: float, X: float) -> complex:
    """Isolated-saddle steepest-descent contribution to ∫e^{iΦ}."""
    dd = phi_second(u, T)
    if abs(dd) < 1e-12:
        raise ZeroDivisionError("degenerate saddle")
    sign = 1.0 if dd > 0 else -1.0
    return math.sqrt(TWO_PI / abs(dd)) * cmath.exp(
        1j * (phi_value(u, T, X) + sign * math.pi / 4.0))


def zone1_saddle_approx(x: float, t: float, chart: ShockChart) -> complex:
    """Single-saddle steepest descent, valid away from the caustic (zone I).

    ψ_I = A·√(−2iπ/Φ″(u_c))·e^{iΦ(u_c)} with the square root taken along
    the steepest-descent direction, i.e. phase e^{iπ·sign(Φ″)/4}.
    """
    T, X, A = shock_map(x, t, chart)
    point = classify_zone(T, X)
    if point.zone is not Zone.I:
        raise ValueError(f"zone1_saddle_approx called in zone {point.zone.name}")
    roots = saddle_points(T, X)
    real_roots = [complex(u).real for u in roots if abs(complex(u).imag) < _REAL_TOL]
    if len(real_roots) != 1:
        raise ValueError("zone I requires exactly one real saddle")
    u_c = real_roots[0]
    if abs(phi_second(u_c, T)) < 1e-10:
        raise ValueError("saddle is degenerate (on caustic)")
    return A * _sd_term(u_c, T, X)


def zone3_multi_saddle(x: float, t: float, chart: ShockChart) -> complex:
    """Sum of the three interfering steepest-descent waves (zone III)."""
    T, X, A = shock_map(x, t, chart)
    point = classify_zone(T, X)
    if point.zone is not Zone.III:
        raise ValueError(f"zone3_multi_saddle called in zone {point.zone.name}")
    roots = saddle_points(T, X)
    if any(abs(complex(u).imag) > _REAL_TOL for u in roots):
        raise ValueError("zone III requires three real saddles")
    return A * sum(_sd_term(complex(u).real, T, X) for u in roots)


def _coalescing_pair(roots: np.ndarray) -> tuple[complex, complex, complex]:
    """Split the three saddles into the coalescing pair and the bystander.

    Off the caustic the pair that merges is the complex-conjugate pair;
    inside (all real) it is the two closest real saddles.
    """
    is_complex = np.abs(roots.imag) >= _REAL_TOL
    if is_complex.any():
        pair = roots[is_complex]
        far = roots[~is_complex]
        return complex(pair[0]), complex(pair[1]), complex(far[0])
    pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
    dists = [abs(roots[i] - roots[j]) for i, j, _ in pairs]
    i, j, k = pairs[int(np.argmin(dists))]
    return complex(roots[i]), complex(roots[j]), complex(roots[k])


_PAIR_SEP_TOL = 1e-4  # below this the CFU amplitudes are noise-dominated
_CUSP_CORE = 1.6748133935381729 + 0.6937304220476189j  # Γ(1/4)/2 · e^{iπ/8}


def _uniform_pair_value(ua: complex, ub: complex, T: float, X: float) -> complex:
    """Chester–Friedman–Ursell two-saddle reduction to Ai and Ai′.

    The cubic normal form Φ = Φ̄ − ζs + s³/3 matches phases at the pair;
    the linear map amplitude (p + q·s) matches the Hessians, giving
        ∫ e^{iΦ} ≈ 2π e^{iΦ̄} (p·Ai(−ζ) − i·q·Ai′(−ζ)).
    Real pair: ζ > 0 (fringes); complex-conjugate pair: ζ < 0 (shadow side).
    Pairs closer than _PAIR_SEP_TOL go through the coalesced-fold limit,
    where the CFU amplitudes lose all significant digits.
    """
    pa = complex(phi_value(ua, T, X))
    pb = complex(phi_value(ub, T, X))
    if abs(ua - ub) < _PAIR_SEP_TOL:
        return _degenerate_pair_value(0.5 * (ua + ub).real, 0.5 * (pa + pb).real)

    if abs(ua.imag) < _REAL_TOL and abs(ub.imag) < _REAL_TOL:
        # real pair: lower-Φ saddle is the local minimum, maps to s = +√ζ
        if pa.real <= pb.real:
            u_lo, u_hi = ua.real, ub.real
            p_lo, p_hi = pa.real, pb.real
        else:
            u_lo, u_hi = ub.real, ua.real
            p_lo, p_hi = pb.real, pa.real
        phibar = 0.5 * (p_lo + p_hi)
        dphi = max(p_hi - p_lo, 0.0)
        zeta = (0.75 * dphi) ** (2.0 / 3.0)
        sq = math.sqrt(zeta)
        ddlo = phi_second(u_lo, T)
        ddhi = phi_second(u_hi, T)
        if ddlo <= 0.0 or ddhi >= 0.0:
            return _degenerate_pair_value(0.5 * (u_lo + u_hi), phibar)
        g_lo = math.sqrt(2.0 * sq / ddlo)
        g_hi = math.sqrt(-2.0 * sq / ddhi)
        p_amp = 0.5 * (g_lo + g_hi)
        q_amp = (g_lo - g_hi) / (2.0 * sq)
        ai, aip = _airy_scalar(-zeta)
        return TWO_PI * cmath.exp(1j * phibar) * (p_amp * ai - 1j * q_amp * aip)

    # complex-conjugate pair: the accessible saddle has Im Φ > 0
    u_acc, p_acc = (ua, pa) if pa.imag >= 0 else (ub, pb)
    u_rej, p_rej = (ub, pb) if pa.imag >= 0 else (ua, pa)
    phibar = 0.5 * (p_acc + p_rej).real
    q_gap = abs(p_acc.imag)
    zeta = -((0.75 * 2.0 * q_gap) ** (2.0 / 3.0))
    sqrt_zeta = 1j * math.sqrt(-zeta)
    g_acc = cmath.sqrt(2.0 * sqrt_zeta / phi_second(u_acc, T))
    if g_acc.real < 0:
        g_acc = -g_acc
    g_rej = cmath.sqrt(-2.0 * sqrt_zeta / phi_second(u_rej, T))
    if abs(g_rej - g_acc.conjugate()) > abs(g_rej + g_acc.conjugate()):
        g_rej = -g_rej
    p_amp = 0.5 * (g_acc + g_rej)
    q_amp = (g_acc - g_rej) / (2.0 * sqrt_zeta)
    ai, aip = _airy_scalar(-zeta)
    return TWO_PI * cmath.exp(1j * phibar) * (p_amp * ai - 1j * q_amp * aip)


def _degenerate_pair_value(u_d: float, phibar: float) -> complex:
    """Coalesced-fold limit with the quartic amplitude correction.

    Locally Φ = Φ̄ + ϕ₃y³/6 + ϕ₄y⁴/24 with ϕ₃ = 24u_d, ϕ₄ = 24; mapping
    to the pure cubic s³/3 gives dy/ds = α + 2αβs with α = (2/|ϕ₃|)^{1/3}
    and β = −ϕ₄α⁴/24, hence the Ai(0) term plus an Ai′(0) correction.
    """
    third = 24.0 * abs(u_d)
    if third < 0.5:
        # approaching the triple coalescence (cusp core): two-saddle theory
        # degenerates into the full quartic integral; return its apex value.
        return cmath.exp(1j * phibar) * _CUSP_CORE
    alpha = (2.0 / third) ** (1.0 / 3.0)
    return TWO_PI * cmath.exp(1j * phibar) * (
        alpha * _AI0 + 2j * alpha ** 5 * _AIP0)


def zone2_airy_approx(x: float, t: float, chart: ShockChart) -> complex:
    """Near-caustic uniform approximation (zone II).

    Airy reduction of the two coalescing saddles plus, when present and
    separated, the steepest-descent wave of the remaining real saddle.
    """
    T, X, A = shock_map(x, t, chart)
    point = classify_zone(T, X)
    if point.zone is not Zone.II:
        raise ValueError(f"zone2_airy_approx called in zone {point.zone.name}")
    value, _ = _zone2_value(T, X)
    return A * value


def _zone2_value(T: float, X: float) -> tuple[complex, bool]:
    roots = saddle_points(T, X)
    ua, ub, u_far = _coalescing_pair(roots)
    spread = max(abs(ua - ub), abs(ua - u_far), abs(ub - u_far))
    low_confidence = spread < 0.3  # near triple coalescence (the cusp point)
    value = _uniform_pair_value(ua, ub, T, X)
    if abs(u_far.imag) < _REAL_TOL and abs(u_far - ua) > 10 * _REAL_TOL:
        dd = phi_second(u_far.real, T)
        if abs(dd) > 1e-10:
            value += _sd_term(u_far.real, T, X)
    return value, low_confidence


@dataclass
class ZoneApprox:
    """Composite asymptotic value with machine-readable validity tags."""

    value: complex
    point: PearceyPoint
    low_confidence: bool


def shock_zone_value(x: float, t: float, chart: ShockChart,
                     band: float = DELTA_BAND) -> ZoneApprox:
    """Evaluate whichever zone approximation applies at (x, t)."""
    T, X, A = shock_map(x, t, chart)
    point = classify_zone(T, X, band)
    low = False
    if point.zone is Zone.I:
        value = zone1_saddle_approx(x, t, chart)
    elif point.zone is Zone.III:
        value = zone3_multi_saddle(x, t, chart)
    else:
        raw, low = _zone2_value(T, X)
        value = A * raw
    return ZoneApprox(value=value, point=point, low_confidence=low)

"""Special-function kernel: physicists' Hermite polynomials, the Airy
function Ai with its derivative, and the negative zeros of Ai.

Everything here is pure scalar arithmetic with no global state, so all
functions are safe to call concurrently.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

__all__ = [
    "AiryValue",
    "AiryZero",
    "ConvergenceError",
    "airy_ai",
    "airy_zero",
    "hermite",
    "hermite_prime",
]

# Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3)
_AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
_AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)

# Residuals of the double-rounded constants 2*pi and pi/4 against the true
# values; needed to keep the oscillatory phase accurate at large |z|.
_TWO_PI_RESIDUAL = 2.4492935982947064e-16
_PI_OVER_4_RESIDUAL = 3.061616997868383e-17

# Regime switch points.  The Maclaurin series loses digits to cancellation
# once the partial sums dwarf the result (badly on the positive side where
# Ai decays), so the series window is asymmetric.  Between the series window
# and the asymptotic region, Taylor recentering of the ODE w'' = z*w carries
# (Ai, Ai') over in steps; stepping toward smaller z keeps Ai the growing
# solution on the positive axis, so the propagation is stable.
_SERIES_LO = -4.5
_SERIES_HI = 2.0
_ASYMP_CUT = 9.0
_STEP = 1.0

_NEWTON_MAX_ITER = 50


class ConvergenceError(RuntimeError):
    """Iteration failed to converge; carries the last iterate."""

    def __init__(self, message: str, last_iterate: float):
        super().__init__(message)
        self.last_iterate = last_iterate


@dataclass(frozen=True)
class AiryValue:
    z: float
    ai: float
    ai_prime: float
    branch: str  # "power-series" | "negative-z-asymptotic" | "positive-z-asymptotic"


@dataclass(frozen=True)
class AiryZero:
    index: int
    value: float  # a_n < 0

    @property
    def scaled_energy(self) -> float:
        return -self.value


def hermite(n: int, y: float) -> float:
    """Physicists' Hermite polynomial H_n(y) by the three-term recurrence."""
    if n < 0:
        raise ValueError(f"Hermite degree must be non-negative, got {n}")
    if not math.isfinite(y):
        raise ValueError(f"Hermite argument must be finite, got {y}")
    if n == 0:
        return 1.0
    h_prev, h = 1.0, 2.0 * y
    for k in range(1, n):
        h_prev, h = h, 2.0 * y * h - 2.0 * k * h_prev
    return h


def hermite_prime(n: int, y: float) -> float:
    """Derivative H'_n(y) = 2n H_{n-1}(y), with H'_0 = 0."""
    if n < 0:
        raise ValueError(f"Hermite degree must be non-negative, got {n}")
    if not math.isfinite(y):
        raise ValueError(f"Hermite argument must be finite, got {y}")
    if n == 0:
        return 0.0
    return 2.0 * n * hermite(n - 1, y)


# --- Airy machinery -------------------------------------------------------

# Coefficients u_k (for Ai) and v_k (for Ai') of the large-|z| expansions.
def _asymptotic_coefficients(count: int) -> tuple[list[float], list[float]]:
    us = [1.0]
    for k in range(1, count):
        us.append(us[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k))
    vs = [1.0] + [us[k] * (6 * k + 1) / (1.0 - 6.0 * k) for k in range(1, count)]
    return us, vs


_US, _VS = _asymptotic_coefficients(60)


def _maclaurin(z: float) -> tuple[float, float]:
    # Ai = Ai(0)*f + Ai'(0)*g with f, g the two ascending series in z^3.
    f, g = 1.0, z
    fp, gp = 0.0, 1.0
    tf, tg = 1.0, z
    z3 = z * z * z
    for k in range(80):
        tf = tf * z3 / ((3 * k + 2) * (3 * k + 3))
        tg = tg * z3 / ((3 * k + 3) * (3 * k + 4))
        f += tf
        g += tg
        if z != 0.0:
            fp += tf * (3 * k + 3) / z
            gp += tg * (3 * k + 4) / z
        if abs(tf) < 1e-19 * abs(f):
            break
    return _AI0 * f + _AIP0 * g, _AI0 * fp + _AIP0 * gp


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    c = 134217729.0 * a  # Veltkamp split at 2^27 + 1
    ah = c - (c - a)
    al = a - ah
    c = 134217729.0 * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _zeta_double_double(x: float) -> tuple[float, float]:
    # zeta = (2/3) x^(3/2) as an unevaluated double-double sum; the phase of
    # the oscillatory expansion needs ~1 ulp of zeta, which plain doubles
    # cannot deliver once zeta >> 1.
    s = math.sqrt(x)
    ss, se = _two_prod(s, s)
    s_corr = ((x - ss) - se) / (2.0 * s)
    p, pe = _two_prod(x, s)
    pe += x * s_corr
    num_h, num_l = _two_sum(2.0 * p, 2.0 * pe)
    q = num_h / 3.0
    qq, qe = _two_prod(3.0, q)
    return q, (((num_h - qq) - qe) + num_l) / 3.0


def _phase_sin_cos(zeta_hi: float, zeta_lo: float) -> tuple[float, float]:
    # sin/cos of (zeta + pi/4) with argument reduction done against the
    # exact 2*pi rather than its double rounding.
    n = round(zeta_hi / (2.0 * math.pi))
    reduced = math.remainder(zeta_hi, 2.0 * math.pi)
    arg = reduced + zeta_lo - n * _TWO_PI_RESIDUAL + math.pi / 4.0 + _PI_OVER_4_RESIDUAL
    return math.sin(arg), math.cos(arg)


def _asymptotic_positive(z: float) -> tuple[float, float]:
    zeta = (2.0 / 3.0) * z ** 1.5
    if zeta > 740.0:  # exp underflows; Ai is a true zero in doubles
        return 0.0, 0.0
    su, sv = 1.0, 1.0
    sign = -1.0
    prev = math.inf
    for k in range(1, len(_US)):
        term = _US[k] / zeta ** k
        if term > prev:
            break
        su += sign * term
        sv += sign * _VS[k] / zeta ** k
        prev = term
        sign = -sign
    damp = math.exp(-zeta)
    pref = 2.0 * math.sqrt(math.pi)
    return damp * su / (pref * z ** 0.25), -damp * z ** 0.25 * sv / pref


def _asymptotic_negative(z: float) -> tuple[float, float]:
    x = -z
    zeta_hi, zeta_lo = _zeta_double_double(x)
    sn, cs = _phase_sin_cos(zeta_hi, zeta_lo)
    p = q = r = s = 0.0
    sign = 1.0
    prev = math.inf
    for k in range(len(_US) // 2):
        t_even = _US[2 * k] / zeta_hi ** (2 * k)
        if t_even > prev:
            break
        p += sign * t_even
        q += sign * _US[2 * k + 1] / zeta_hi ** (2 * k + 1)
        r += sign * _VS[2 * k] / zeta_hi ** (2 * k)
        s += sign * _VS[2 * k + 1] / zeta_hi ** (2 * k + 1)
        prev = t_even
        sign = -sign
    sqrt_pi = math.sqrt(math.pi)
    ai = (sn * p - cs * q) / (sqrt_pi * x ** 0.25)
    ai_prime = -(cs * r + sn * s) * x ** 0.25 / sqrt_pi
    return ai, ai_prime


def _taylor_step(z0: float, ai: float, aip: float, h: float, terms: int = 32) -> tuple[float, float]:
    # Recentred Taylor coefficients of w'' = z*w:
    # c_{k+2} = (z0*c_k + c_{k-1}) / ((k+1)(k+2))
    c = [ai, aip]
    for k in range(terms):
        c_km1 = c[k - 1] if k >= 1 else 0.0
        c.append((z0 * c[k] + c_km1) / ((k + 1) * (k + 2)))
    value = 0.0
    for k in range(len(c) - 1, -1, -1):
        value = value * h + c[k]
    deriv = 0.0
    for k in range(len(c) - 1, 0, -1):
        deriv = deriv * h + k * c[k]
    return value, deriv


@functools.lru_cache(maxsize=1 << 18)
def airy_ai(z: float) -> AiryValue:
    """Evaluate Ai(z) and Ai'(z).  Results are memoized: the moment
    quadratures revisit the same abscissas across integrands."""
    if not math.isfinite(z):
        raise ValueError(f"Airy argument must be finite, got {z}")
    if _SERIES_LO <= z <= _SERIES_HI:
        ai, aip = _maclaurin(z)
        return AiryValue(z, ai, aip, "power-series")
    if z >= _ASYMP_CUT:
        ai, aip = _asymptotic_positive(z)
        return AiryValue(z, ai, aip, "positive-z-asymptotic")
    if z <= -_ASYMP_CUT:
        ai, aip = _asymptotic_negative(z)
        return AiryValue(z, ai, aip, "negative-z-asymptotic")
    # Mid-range: march from the nearest trusted anchor in steps small enough
    # for rapid Taylor convergence.
    if z > 0:
        z0 = _ASYMP_CUT
        ai, aip = _asymptotic_positive(z0)
    else:
        z0 = _SERIES_LO
        ai, aip = _maclaurin(z0)
    while z0 != z:
        h = max(z - z0, -_STEP)
        ai, aip = _taylor_step(z0, ai, aip, h)
        z0 += h
    return AiryValue(z, ai, aip, "power-series")


@functools.lru_cache(maxsize=4096)
def airy_zero(n: int) -> AiryZero:
    """The n-th negative zero a_n of Ai, found by Newton iteration seeded at
    the asymptotic estimate a_n ~ -[3 pi (4n-1)/8]^(2/3)."""
    if n < 1:
        raise ValueError(f"Airy-zero index must be >= 1, got {n}")
    a = -((3.0 * math.pi * (4.0 * n - 1.0) / 8.0) ** (2.0 / 3.0))
    for _ in range(_NEWTON_MAX_ITER):
        v = airy_ai(a)
        step = v.ai / v.ai_prime
        a -= step
        if abs(v.ai) < 1e-13 and abs(step) < 1e-13:
            return AiryZero(index=n, value=a)
    raise ConvergenceError(
        f"Newton iteration for Airy zero {n} did not converge in "
        f"{_NEWTON_MAX_ITER} iterations",
        last_iterate=a,
    )

"""Transcendental constants behind the volume and Weil-Petersson bounds.

The Lobachevsky function, the Bloch-Wigner dilogarithm, the volumes of the
regular ideal tetrahedron and octahedron, and the volume of the Weeks
manifold ``3 * 23^(3/2) * zeta_k(2) / (4 pi^4)``.

Here k is the invariant trace field of the Weeks manifold, the cubic field
Q(t) with t^3 - t + 1 = 0 (discriminant -23).  Its Galois closure is the
Hilbert class field of F = Q(sqrt(-23)), whose class group is cyclic of
order 3 with reduced forms [1, 1, 6] and [2, +-1, 3].  Then

    zeta_k(s) = zeta(s) * L(s, rho),   L(s, rho) = (E_[1,1,6](s) - E_[2,1,3](s)) / 2,

with E_Q the Epstein zeta function of the form Q and rho the order-3
class-group character.  The same forms give the quadratic field,
zeta_F(s) = (E_[1,1,6](s) + 2 E_[2,1,3](s)) / 2 = zeta(s) L(s, chi_{-23}),
which ties the lattice sums to the directly summed character series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import zeta as _riemann_zeta

__all__ = [
    "Constants",
    "lobachevsky",
    "clausen2",
    "dilog",
    "bloch_wigner",
    "kronecker_minus23",
    "dirichlet_l2_minus23",
    "epstein_zeta2",
    "quadratic_dedekind_zeta2",
    "artin_l2",
    "cubic_dedekind_zeta2",
    "weeks_volume",
    "V3",
    "V8",
    "WEEKS_VOLUME",
    "constants",
]

_TWO_PI = 2.0 * math.pi
_PI2_6 = math.pi ** 2 / 6.0

# zeta(2n) / (n (2n+1)) for the Clausen expansion; 40 terms reach machine
# precision at |x| = pi where the ratio is 1/4.
_CLAUSEN_COEFFS = np.array(
    [_riemann_zeta(2 * n) / (n * (2 * n + 1)) for n in range(1, 41)]
)


def clausen2(x: float) -> float:
    """Clausen function Cl_2(x) = sum_{n>=1} sin(n x) / n^2."""
    x = math.remainder(float(x), _TWO_PI)  # into [-pi, pi]
    if x == 0.0:
        return 0.0
    t = (x / _TWO_PI) ** 2
    powers = t ** np.arange(1, len(_CLAUSEN_COEFFS) + 1)
    tail = float(np.dot(_CLAUSEN_COEFFS[::-1], powers[::-1]))
    return x - x * math.log(abs(x)) + x * tail


def lobachevsky(theta: float) -> float:
    """Lobachevsky function ``L(theta) = 1/2 sum sin(2 n theta) / n^2``.

    Odd and pi-periodic.  Evaluated through the Bernoulli-number expansion
    of the Clausen function around zero, accurate to ~1e-15 everywhere.
    """
    return 0.5 * clausen2(2.0 * theta)


# Bernoulli numbers B_0..B_{2N} as floats, for the dilogarithm series in
# u = -log(1 - z).
def _bernoulli_table(nmax: int) -> list[float]:
    from fractions import Fraction

    b = [Fraction(0)] * (nmax + 1)
    b[0] = Fraction(1)
    for m in range(1, nmax + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * b[k]
        b[m] = -acc / (m + 1)
    return [float(v) for v in b]


_DILOG_TERMS = 40
_DILOG_COEFFS = [
    bn / math.factorial(n + 1)
    for n, bn in enumerate(_bernoulli_table(_DILOG_TERMS))
]


def _dilog_core(z: complex) -> complex:
    # valid for |z| <= 1 and Re z <= 1/2, where |u| < 2 pi comfortably
    u = -cmath.log(1.0 - z)
    total = 0j
    upow = u
    for c in _DILOG_COEFFS:
        if c != 0.0:
            total += c * upow
        upow *= u
    return total


def dilog(z: complex) -> complex:
    """Principal branch of the dilogarithm ``Li_2(z)``.

    Inversion maps ``|z| > 1`` into the unit disk, reflection maps
    ``Re z > 1/2`` to ``Re z < 1/2``; the remaining region is handled by the
    Bernoulli series in ``-log(1 - z)``.
    """
    z = complex(z)
    if z == 1:
        return complex(_PI2_6)
    if z == 0:
        return 0j
    if z.imag == 0 and z.real > 1.0:
        # on the cut, the limit from below (as for -log(1 - z))
        lx = math.log(z.real)
        return complex(2 * _PI2_6 - 0.5 * lx * lx - dilog(1.0 / z.real).real, -math.pi * lx)
    if math.hypot(z.real, z.imag) > 1.0:
        lmz = cmath.log(-z)
        return -_PI2_6 - 0.5 * lmz * lmz - dilog(1.0 / z)
    if z.real > 0.5:
        return _PI2_6 - cmath.log(z) * cmath.log(1.0 - z) - _dilog_core(1.0 - z)
    return _dilog_core(z)


def bloch_wigner(z: complex) -> float:
    """Bloch-Wigner dilogarithm ``D(z) = Im Li_2(z) + arg(1 - z) log|z|``.

    ``D(z)`` is the signed volume of the ideal tetrahedron with shape ``z``.

    Raises
    ------
    ValueError
        If ``z`` is 0 or 1, where the tetrahedron degenerates.
    """
    z = complex(z)
    if z == 0 or z == 1:
        raise ValueError(f"bloch_wigner is undefined at z = {z}")
    return dilog(z).imag + cmath.phase(1.0 - z) * math.log(math.hypot(z.real, z.imag))


def kronecker_minus23(n: int) -> int:
    """Kronecker symbol (-23 / n), equal to the Legendre symbol (n / 23)."""
    r = n % 23
    if r == 0:
        return 0
    return 1 if pow(r, 11, 23) == 1 else -1


_CHI_TABLE = np.array([kronecker_minus23(r) for r in range(23)], dtype=float)
# |sum_{n<=m} chi(n)| never exceeds this over a period
_CHI_PARTIAL_MAX = float(np.max(np.abs(np.cumsum(_CHI_TABLE))))


def l2_tail_bound(n_terms: int) -> float:
    """Bound on ``|sum_{n > N} chi(n) / n^2|`` by Abel summation.

    With ``S(m)`` the character partial sums, the tail is at most
    ``2 max|S| / (N + 1)^2``; ``max|S| <= 11`` gives the ``23 / N^2`` rule.
    """
    return 2.0 * _CHI_PARTIAL_MAX / (n_terms + 1) ** 2


def dirichlet_l2_minus23(tol: float = 1e-11) -> tuple[float, float]:
    """Sum ``L(2, chi_{-23})`` directly until the tail bound drops below ``tol``.

    Returns ``(value, tail_bound)``.
    """
    n_terms = 23 * math.ceil(math.sqrt(2.0 * _CHI_PARTIAL_MAX / tol) / 23)
    n = np.arange(1, n_terms + 1, dtype=float)
    chi = _CHI_TABLE[np.arange(1, n_terms + 1) % 23]
    # smallest terms first
    terms = (chi / (n * n))[::-1]
    return math.fsum(terms), l2_tail_bound(n_terms)


def _row_sum_s2(alpha: float, beta: float) -> float:
    # sum_{x in Z} ((x + alpha)^2 + beta^2)^-2, from the closed form of the
    # s = 1 sum g(beta) = (pi / beta) sinh(u) / (cosh(u) - cos(2 pi alpha)),
    # u = 2 pi beta, via  sum = -g'(beta) / (2 beta).  Written in t = e^-u.
    t = math.exp(-_TWO_PI * beta)
    c = math.cos(_TWO_PI * alpha)
    den = 1.0 - 2.0 * c * t + t * t
    ratio = (1.0 - t * t) / den
    cross = 2.0 * t * (2.0 * t - c - c * t * t) / (den * den)
    dg = -(math.pi / beta ** 2) * ratio + (2.0 * math.pi ** 2 / beta) * cross
    return -dg / (2.0 * beta)


def epstein_zeta2(a: int, b: int, c: int) -> float:
    """``sum_{(x, y) != 0} (a x^2 + b x y + c y^2)^-2`` for a positive definite form.

    Rows with fixed ``y`` are summed in closed form; the ``y^-3`` leading
    part of the row sums is resummed with ``zeta(3)`` and the remainder
    decays like ``exp(-pi y sqrt(4ac - b^2) / a)``.
    """
    disc = 4 * a * c - b * b
    if a <= 0 or disc <= 0:
        raise ValueError("form must be positive definite")
    root = math.sqrt(disc)
    total = 2.0 * _ZETA4 / a ** 2
    leading = 0.5 * math.pi * (2.0 * a / root) ** 3 * _ZETA3
    correction = 0.0
    y = 1
    while True:
        alpha = b * y / (2.0 * a)
        beta = y * root / (2.0 * a)
        term = _row_sum_s2(alpha, beta) - 0.5 * math.pi / beta ** 3
        correction += term
        if abs(term) < 1e-18 or y > 200:
            break
        y += 1
    return total + 2.0 / a ** 2 * (leading + correction)


_ZETA3 = float(_riemann_zeta(3))
_ZETA4 = math.pi ** 4 / 90.0

# reduced forms of discriminant -23: principal and one of the pair [2, +-1, 3]
PRINCIPAL_FORM = (1, 1, 6)
NONPRINCIPAL_FORM = (2, 1, 3)


def quadratic_dedekind_zeta2() -> float:
    """``zeta_F(2)`` for F = Q(sqrt(-23)) from the class-group lattice sums."""
    return 0.5 * (epstein_zeta2(*PRINCIPAL_FORM) + 2.0 * epstein_zeta2(*NONPRINCIPAL_FORM))


def artin_l2() -> float:
    """``L(2, rho)`` for the order-3 class-group character of Q(sqrt(-23))."""
    return 0.5 * (epstein_zeta2(*PRINCIPAL_FORM) - epstein_zeta2(*NONPRINCIPAL_FORM))


def cubic_dedekind_zeta2() -> float:
    """``zeta_k(2)`` for the cubic field of discriminant -23."""
    return _PI2_6 * artin_l2()


@lru_cache(maxsize=None)
def weeks_volume() -> float:
    """Volume of the Weeks manifold, ``3 * 23^(3/2) * zeta_k(2) / (4 pi^4)``."""
    return 3.0 * 23.0 ** 1.5 * cubic_dedekind_zeta2() / (4.0 * math.pi ** 4)


@dataclass(frozen=True)
class Constants:
    v3: float
    v8: float
    weeks_volume: float
    pi: float = math.pi


V3 = 3.0 * lobachevsky(math.pi / 3.0)
V8 = 8.0 * lobachevsky(math.pi / 4.0)
WEEKS_VOLUME = weeks_volume()


def constants() -> Constants:
    return Constants(v3=V3, v8=V8, weeks_volume=WEEKS_VOLUME)

"""Explicit Weil-Petersson estimates for surfaces of genus g with n punctures.

Everything here is a closed-form expression in the constants of
:mod:`wpbounds.special_functions`.  The central inequality is

    vol(M_psi) <= 3 sqrt(pi/2 (2g - 2 + n)) ||psi||_WP

for pseudo-Anosov ``psi``, read as a lower bound on the Weil-Petersson
translation length.  Evaluated at the smallest closed volume (Weeks) and the
smallest cusped volume (figure-eight complement) it bounds the systole of
moduli space from below.  Together with ``d_WP* <= d_T`` for the
area-normalised metric it gives the Teichmueller-length chain

    vol(M_psi) <= 3/2 area(S) ||psi||_T,

which :func:`km_check` tests numerically.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .special_functions import V3, V8, WEEKS_VOLUME

__all__ = [
    "InvalidSurfaceError",
    "UnsupportedSurfaceError",
    "SurfaceType",
    "BoundReport",
    "THEOREM_TAGS",
    "GOLDEN_LOG",
    "area",
    "translation_coefficient",
    "schlenker_coefficient",
    "wp_translation_lower",
    "systole_bounds",
    "systole_lower_punctured",
    "diameter_lower",
    "normalized_diameter_lower",
    "inradius_interval",
    "wolpert_pinch_upper",
    "normalized_wp",
    "km_check",
    "bound_report",
]

# log of the smallest dilatation in SL(2, Z), (3 + sqrt 5) / 2
GOLDEN_LOG = math.log((3.0 + math.sqrt(5.0)) / 2.0)

THEOREM_TAGS = {
    "area": "def:poincare-area",
    "volume": "thm:translation-bound",
    "wp_lower": "thm:translation-bound",
    "normalized_wp": "def:normalized-wp",
    "km": "cor:teichmuller-chain",
    "systole_closed": "thm:wp-systole-closed",
    "systole_upper": "rem:agol-leininger-margalit",
    "systole_punctured": "thm:wp-systole-punctured",
    "diameter": "thm:wp-diameter",
    "inradius": "thm:farey-edge",
    "wolpert": "rem:wolpert-pinching",
    "pants": "thm:pants",
    "weeks": "formula:weeks-volume",
}


class InvalidSurfaceError(ValueError):
    pass


class UnsupportedSurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceType:
    g: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise InvalidSurfaceError(f"genus and punctures must be non-negative, got ({self.g}, {self.n})")
        if self.euler_characteristic >= 0:
            raise InvalidSurfaceError(
                f"S_({self.g},{self.n}) has Euler characteristic {self.euler_characteristic} >= 0"
            )

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.g - self.n

    @property
    def complexity(self) -> int:
        """Number of curves in a pants decomposition, ``3g - 3 + n``."""
        return 3 * self.g - 3 + self.n

    @property
    def is_closed(self) -> bool:
        return self.n == 0


def _surface(s) -> SurfaceType:
    if isinstance(s, SurfaceType):
        return s
    return SurfaceType(*s)


def area(s) -> float:
    """Hyperbolic area ``2 pi (2g - 2 + n)``."""
    s = _surface(s)
    return 2.0 * math.pi * (2 * s.g - 2 + s.n)


def translation_coefficient(s) -> float:
    """``3 sqrt(pi/2 (2g - 2 + n))``, the volume-to-translation-length constant."""
    s = _surface(s)
    return 3.0 * math.sqrt(0.5 * math.pi * (2 * s.g - 2 + s.n))


def schlenker_coefficient(g: int) -> float:
    """Slope ``3 sqrt(pi (g - 1))`` of the convex-core volume bound in genus ``g``.

    The accompanying additive constant is not effective, so no bound in this
    module uses this coefficient.
    """
    if g < 2:
        raise InvalidSurfaceError("closed surfaces need genus >= 2")
    return 3.0 * math.sqrt(math.pi * (g - 1))


def wp_translation_lower(vol: float, s) -> float:
    """Lower bound ``vol / (3 sqrt(pi/2 (2g - 2 + n)))`` on ``||psi||_WP``."""
    if not vol > 0:
        raise ValueError(f"volume must be positive, got {vol}")
    return vol / translation_coefficient(s)


def systole_lower_punctured(s) -> float:
    s = _surface(s)
    if s.n == 0:
        raise InvalidSurfaceError("punctured systole bound needs n > 0")
    return wp_translation_lower(2.0 * V3, s)


def systole_bounds(s) -> tuple[float, Optional[float]]:
    """Bounds on the shortest closed Weil-Petersson geodesic in moduli space.

    Closed surfaces get the Weeks-volume lower bound and the
    ``2 sqrt(pi) log((3 + sqrt 5)/2) / sqrt(g - 1)`` upper bound; punctured
    surfaces get the figure-eight lower bound and no upper bound.
    """
    s = _surface(s)
    if s.is_closed:
        if s.g < 2:
            raise InvalidSurfaceError("closed surfaces need genus >= 2")
        root = math.sqrt(s.g - 1)
        lower = WEEKS_VOLUME / (3.0 * math.sqrt(math.pi) * root)
        upper = 2.0 * math.sqrt(math.pi) * GOLDEN_LOG / root
        return lower, upper
    return systole_lower_punctured(s), None


def diameter_lower(s) -> float:
    """Lower bound on the Weil-Petersson diameter of moduli space.

    ``(1,1)`` and ``(0,4)`` have their own constants; every other surface
    with ``3g - 3 + n >= 2`` gets ``V8 sqrt(2g + n - 4) / (3 sqrt(pi))``, which
    is 0 for the closed genus-2 surface.

    Raises
    ------
    UnsupportedSurfaceError
        For the pair of pants, which has a point as moduli space.
    """
    s = _surface(s)
    base = math.sqrt(2.0 / math.pi) * V8
    if (s.g, s.n) == (1, 1):
        return base / 6.0
    if (s.g, s.n) == (0, 4):
        return base / 3.0
    if s.complexity >= 2:
        return V8 * math.sqrt(2 * s.g + s.n - 4) / (3.0 * math.sqrt(math.pi))
    raise UnsupportedSurfaceError(f"no diameter bound for S_({s.g},{s.n})")


def normalized_diameter_lower(s, power: float = 0.5) -> float:
    """Diameter bound divided by ``area(S) ** power`` (``0.5`` or ``1``)."""
    return diameter_lower(s) / area(s) ** power


def inradius_interval() -> tuple[float, float]:
    """Bounds on the Weil-Petersson length of the imaginary axis for S_(1,1)."""
    lower = math.sqrt(2.0 / math.pi) * V8 / 3.0
    upper = 2.0 * math.sqrt(30.0) * math.pi ** 0.75
    return lower, upper


def wolpert_pinch_upper(systole: float) -> float:
    """``sqrt(2 pi sys)``: distance to the noded surface pinching the systole."""
    if not systole > 0:
        raise ValueError(f"systole must be positive, got {systole}")
    return math.sqrt(2.0 * math.pi * systole)


def normalized_wp(d: float, s) -> float:
    """Weil-Petersson distance rescaled by ``sqrt(area(S))``."""
    if d < 0:
        raise ValueError(f"distance must be non-negative, got {d}")
    return d / math.sqrt(area(s))


def km_check(vol: float, teich_len: float, s) -> tuple[bool, float]:
    """Test ``vol <= 3/2 area(S) teich_len``; returns ``(holds, rhs - lhs)``."""
    if not vol > 0:
        raise ValueError(f"volume must be positive, got {vol}")
    if not teich_len > 0:
        raise ValueError(f"Teichmueller length must be positive, got {teich_len}")
    margin = 1.5 * area(s) * teich_len - vol
    return margin >= 0, margin


@dataclass(frozen=True)
class BoundReport:
    surface: SurfaceType
    area: float
    volume_in: Optional[float] = None
    wp_lower: Optional[float] = None
    teich_length_in: Optional[float] = None
    km_inequality_holds: Optional[bool] = None
    margin: Optional[float] = None

    _TAGS = {
        "area": THEOREM_TAGS["area"],
        "volume_in": THEOREM_TAGS["volume"],
        "wp_lower": THEOREM_TAGS["wp_lower"],
        "teich_length_in": THEOREM_TAGS["km"],
        "km_inequality_holds": THEOREM_TAGS["km"],
        "margin": THEOREM_TAGS["km"],
    }

    def to_dict(self) -> dict:
        data = asdict(self)
        data["surface"] = {"g": self.surface.g, "n": self.surface.n}
        data["theorem"] = {k: v for k, v in self._TAGS.items() if data.get(k) is not None}
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "BoundReport":
        fields = {k: v for k, v in data.items() if k not in ("theorem", "surface")}
        return cls(SurfaceType(**data["surface"]), **fields)


def bound_report(s, volume: Optional[float] = None, teich_length: Optional[float] = None) -> BoundReport:
    s = _surface(s)
    wp = holds = margin = None
    if volume is not None:
        wp = wp_translation_lower(volume, s)
        if teich_length is not None:
            holds, margin = km_check(volume, teich_length, s)
    return BoundReport(s, area(s), volume, wp, teich_length, holds, margin)

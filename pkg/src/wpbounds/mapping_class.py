"""Mapping classes of the once-punctured torus as SL(2, Z) matrices.

Conventions: ``R = [[1, 1], [0, 1]]`` and ``L = [[1, 0], [1, 1]]`` act on
column vectors and on the upper half-plane by Moebius maps, so ``R(z) = z + 1``
and ``L(z) = z / (z + 1)``.  A word ``w1 w2 ... wk`` denotes the product
``W1 @ W2 @ ... @ Wk``.  Matrices are taken in PSL(2, Z): a negative-trace
matrix is replaced by its negative before classification.

The Dehn-twist composite ``tau_alpha^n tau_beta^-n`` is represented by
``R^n L^n``; the opposite orientation convention gives the inverse class,
whose mapping torus has the same volume and dilatation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from math import isqrt

__all__ = [
    "MAX_WORD_LENGTH",
    "InvalidMatrixError",
    "NotPseudoAnosovError",
    "TraceClass",
    "MappingClass",
    "R",
    "L",
    "matmul",
    "word_matrix",
    "canonical_rotation",
    "from_matrix",
    "from_word",
    "parse_matrix",
    "parse_word",
    "lr_decomposition",
    "dilatation",
    "teich_translation_length",
    "psi_n",
]

MAX_WORD_LENGTH = 80

Matrix = tuple[int, int, int, int]

R: Matrix = (1, 1, 0, 1)
L: Matrix = (1, 0, 1, 1)
_LETTERS = {"R": R, "L": L}
_WORD_RE = re.compile(r"^[LR]+$")


class InvalidMatrixError(ValueError):
    pass


class NotPseudoAnosovError(ValueError):
    pass


class TraceClass(str, Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    PSEUDO_ANOSOV = "pseudo-anosov"


def matmul(m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def word_matrix(word: str) -> Matrix:
    m: Matrix = (1, 0, 0, 1)
    for letter in word:
        m = matmul(m, _LETTERS[letter])
    return m


def canonical_rotation(word: str) -> str:
    """Lexicographically least rotation, with ``L < R``."""
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True)
class MappingClass:
    matrix: Matrix
    trace: int
    kind: TraceClass
    word: str = ""
    dilatation: float = field(default=1.0, compare=False)

    @property
    def is_pseudo_anosov(self) -> bool:
        return self.kind is TraceClass.PSEUDO_ANOSOV

    @property
    def teich_translation_length(self) -> float:
        return math.log(self.dilatation)

    def __str__(self) -> str:
        a, b, c, d = self.matrix
        return f"{a},{b};{c},{d}"


def _classify(m: Matrix) -> TraceClass:
    t = m[0] + m[3]
    # +-I has finite order, so it counts as elliptic
    if abs(t) < 2 or m in ((1, 0, 0, 1), (-1, 0, 0, -1)):
        return TraceClass.ELLIPTIC
    if abs(t) == 2:
        return TraceClass.PARABOLIC
    return TraceClass.PSEUDO_ANOSOV


def _dilatation_from_trace(t: int) -> float:
    t = abs(t)
    if t <= 2:
        return 1.0
    return (t + math.sqrt(t * t - 4)) / 2.0


def from_matrix(a: int, b: int, c: int, d: int) -> MappingClass:
    """Classify ``[[a, b], [c, d]]`` and, when pseudo-Anosov, find its LR word.

    Raises
    ------
    InvalidMatrixError
        If the determinant is not 1.
    """
    a, b, c, d = (int(v) for v in (a, b, c, d))
    if a * d - b * c != 1:
        raise InvalidMatrixError(f"determinant of [[{a}, {b}], [{c}, {d}]] is not 1")
    if a + d < 0:
        a, b, c, d = -a, -b, -c, -d
    t = a + d
    kind = _classify((a, b, c, d))
    word = ""
    if kind is TraceClass.PSEUDO_ANOSOV:
        word = _positive_word((a, b, c, d))
        if len(word) > MAX_WORD_LENGTH:
            raise InvalidMatrixError(
                f"LR word of length {len(word)} exceeds the {MAX_WORD_LENGTH}-letter limit"
            )
    return MappingClass((a, b, c, d), t, kind, word, _dilatation_from_trace(t))


def from_word(word: str) -> MappingClass:
    """Mapping class of the product of an LR word."""
    word = parse_word(word)
    m = from_matrix(*word_matrix(word))
    if m.is_pseudo_anosov and m.word != canonical_rotation(word):
        raise AssertionError(f"LR reduction of {word!r} returned {m.word!r}")
    return m


def parse_word(text: str) -> str:
    word = text.strip().upper()
    if not _WORD_RE.match(word):
        raise ValueError(f"malformed LR word {text!r}")
    if len(word) > MAX_WORD_LENGTH:
        raise ValueError(f"word longer than {MAX_WORD_LENGTH} letters")
    return word


def parse_matrix(text: str) -> MappingClass:
    """Parse the ``"a,b;c,d"`` text format."""
    try:
        rows = [r.split(",") for r in text.strip().split(";")]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError
        entries = [int(v) for r in rows for v in r]
    except ValueError:
        raise ValueError(f"malformed matrix {text!r}; expected 'a,b;c,d'") from None
    return from_matrix(*entries)


def _attracting_cf(m: Matrix) -> tuple[list[int], int]:
    # Continued fraction of the attracting fixed point (P + sqrt(D)) / Q of
    # z -> (a z + b) / (c z + d), run until the (P, Q) state repeats.
    # Returns the partial quotients and the index where the period starts.
    a, b, c, d = m
    disc = (a + d) ** 2 - 4
    p, q = a - d, 2 * c
    r = isqrt(disc)
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (p, q) not in seen:
        seen[(p, q)] = len(terms)
        if q > 0:
            k = (p + r) // q
        else:
            k = (-p - r - 1) // (-q)
        terms.append(k)
        p = k * q - p
        q = (disc - p * p) // q
    return terms, seen[(p, q)]


def _positive_word(m: Matrix) -> str:
    a, b, c, d = m
    terms, start = _attracting_cf(m)
    period = terms[start:]
    if len(period) % 2:
        period = period + period
    # an even number of continued-fraction steps is an SL(2, Z) conjugation
    if start % 2:
        period = period[1:] + period[:1]
    primitive = "".join(("R" if i % 2 == 0 else "L") * k for i, k in enumerate(period))
    base = word_matrix(primitive)
    # m is conjugate to base^j with matching trace
    power, word, t = 1, primitive, base[0] + base[3]
    while t < a + d:
        power += 1
        word = primitive * power
        pm = word_matrix(word)
        t = pm[0] + pm[3]
    if t != a + d:
        raise AssertionError(f"no positive word found for {m}")
    return canonical_rotation(word)


def lr_decomposition(m: MappingClass) -> str:
    """Canonical cyclic LR word of a pseudo-Anosov class.

    Raises
    ------
    NotPseudoAnosovError
        If ``|trace| <= 2``.
    """
    if not m.is_pseudo_anosov:
        raise NotPseudoAnosovError(f"{m} has trace {m.trace}; no LR word")
    return m.word


def dilatation(m: MappingClass) -> float:
    if not m.is_pseudo_anosov:
        raise NotPseudoAnosovError(f"{m} has trace {m.trace}")
    return m.dilatation


def teich_translation_length(m: MappingClass) -> float:
    """Teichmueller translation length ``log(lambda)``."""
    return math.log(dilatation(m))


def psi_n(n: int) -> MappingClass:
    """The double twist ``[[1, n], [0, 1]] @ [[1, 0], [n, 1]] = [[1 + n^2, n], [n, 1]]``."""
    if n < 1:
        raise ValueError("psi_n requires n >= 1")
    return from_matrix(1 + n * n, n, n, 1)

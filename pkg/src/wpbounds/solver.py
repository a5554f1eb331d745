"""Damped Newton solution of the gluing equations and hyperbolic volume.

The unknowns are ``w_i = log z_i``.  With principal logarithms a geometric
solution has every ``log z, log z', log z''`` in the upper half strip, so
each edge equation reads ``sum(...) = 2 pi i`` and each peripheral curve
``sum(...) = 0`` with no branch bookkeeping.

The ``k`` edge equations of a one-cusped triangulation have rank ``k - 1``;
the system solved is ``k - 1`` edge rows plus one peripheral curve, which
singles out the complete structure.  The dropped edge row and the second
peripheral curve are checked afterwards.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .special_functions import V3, bloch_wigner
from .triangulation import GluingSystem, build_layered, gluing_equations

__all__ = [
    "SOLVER_TOL",
    "REPORT_TOL",
    "MAX_ITER",
    "NonConvergenceError",
    "NonGeometricError",
    "ShapeSolution",
    "VolumeResult",
    "log_parameters",
    "edge_defects",
    "cusp_defects",
    "solve_shapes",
    "volume",
    "volume_of_word",
]

SOLVER_TOL = 1e-12
REPORT_TOL = 1e-9
MAX_ITER = 200
MAX_HALVINGS = 30
# largest change of any log z in one step
MAX_STEP = 0.5
REGULAR = cmath.exp(1j * math.pi / 3)


class NonConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class NonGeometricError(RuntimeError):
    pass


@dataclass
class ShapeSolution:
    shapes: np.ndarray
    residual: float
    geometric: bool
    iterations: int
    system: GluingSystem = field(repr=False)

    @property
    def angles(self) -> np.ndarray:
        """Dihedral angles, shape ``(k, 3)``: at z, z', z''."""
        return log_parameters(self.shapes).imag.reshape(-1, 3)


@dataclass
class VolumeResult:
    volume: float
    word: str
    solution: ShapeSolution

    @property
    def tetrahedra(self) -> int:
        return len(self.solution.shapes)


def log_parameters(z: np.ndarray) -> np.ndarray:
    """Interleaved ``log z, log z', log z''`` for every tetrahedron."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(3 * len(z), dtype=complex)
    out[0::3] = np.log(z)
    out[1::3] = -np.log(1.0 - z)
    out[2::3] = np.log(1.0 - 1.0 / z)
    return out


def _derivatives(z: np.ndarray) -> np.ndarray:
    # d/d(log z) of log z, log z', log z''
    out = np.empty(3 * len(z), dtype=complex)
    out[0::3] = 1.0
    out[1::3] = z / (1.0 - z)
    out[2::3] = 1.0 / (z - 1.0)
    return out


def edge_defects(system: GluingSystem, z) -> np.ndarray:
    return system.edge_rows @ log_parameters(z) - 2j * math.pi


def cusp_defects(system: GluingSystem, z, all_cycles: bool = False) -> np.ndarray:
    """Log-holonomy defects of the peripheral curves.

    With ``all_cycles`` every fundamental cycle of the cusp is checked; the
    null-homotopic ones are compared with the nearest multiple of ``2 pi i``.
    """
    if not all_cycles:
        return system.cusp_rows @ log_parameters(z)
    values = system.all_cusp_cycles @ log_parameters(z)
    turns = np.where(system.essential, 0.0, np.round(values.imag / (2 * math.pi)))
    return values - 2j * math.pi * turns


def _equations(system: GluingSystem) -> tuple[np.ndarray, np.ndarray]:
    rows = np.vstack([system.edge_rows[:-1], system.cusp_rows[:1]])
    targets = np.zeros(len(rows), dtype=complex)
    targets[:-1] = 2j * math.pi
    return rows, targets


def solve_shapes(
    system: GluingSystem,
    initial=None,
    *,
    tol: float = SOLVER_TOL,
    max_iter: int = MAX_ITER,
) -> ShapeSolution:
    """Newton iteration on ``log z`` from the regular shape ``e^{i pi/3}``.

    Each step is halved (up to 30 times) until the max-norm defect drops.

    Raises
    ------
    NonConvergenceError
        If the defect is still above ``tol`` after ``max_iter`` steps.
    """
    k = system.size
    rows, targets = _equations(system)
    z = np.full(k, REGULAR) if initial is None else np.array(initial, dtype=complex)

    def defect(z):
        return rows @ log_parameters(z) - targets

    f = defect(z)
    res = np.max(np.abs(f))
    it = 0
    while res >= tol:
        if it >= max_iter:
            raise NonConvergenceError(
                f"gluing equations for {system.word or 'system'} did not converge "
                f"in {max_iter} iterations (residual {res:.3e})",
                res,
                it,
            )
        it += 1
        jac = rows * _derivatives(z)[None, :]
        jac = jac.reshape(k, k, 3).sum(axis=2)
        try:
            step = scipy.linalg.lu_solve(scipy.linalg.lu_factor(jac, check_finite=False), -f)
        except (ValueError, np.linalg.LinAlgError) as exc:
            raise NonConvergenceError(f"singular Jacobian: {exc}", res, it) from exc
        w = np.log(z)
        t = min(1.0, MAX_STEP / np.max(np.abs(step)))
        merit = np.linalg.norm(f)
        for _ in range(MAX_HALVINGS + 1):
            trial = np.exp(w + t * step)
            with np.errstate(all="ignore"):
                ft = defect(trial)
            mt = np.linalg.norm(ft)
            if np.isfinite(mt) and mt < merit:
                rt = np.max(np.abs(ft))
                break
            t *= 0.5
        else:
            # no descent: near machine precision the defect stalls
            if res < 1e3 * tol:
                break
            raise NonConvergenceError(
                f"line search failed for {system.word or 'system'} (residual {res:.3e})", res, it
            )
        z, f, res = trial, ft, rt

    full = max(np.max(np.abs(edge_defects(system, z))), np.max(np.abs(cusp_defects(system, z))))
    angles = log_parameters(z).imag
    geometric = bool(np.all(z.imag > 0) and np.all((angles > 0) & (angles < math.pi)))
    return ShapeSolution(z, float(full), geometric, it, system)


def volume(solution: ShapeSolution) -> VolumeResult:
    """Hyperbolic volume ``sum D(z_i)`` of a geometric solution.

    Raises
    ------
    NonGeometricError
        If some shape has non-positive imaginary part.
    """
    if not solution.geometric:
        raise NonGeometricError(
            f"solution for {solution.system.word or 'system'} is not geometric; "
            "volume of a degenerate or negatively oriented structure is not reported"
        )
    vol = math.fsum(bloch_wigner(z) for z in solution.shapes)
    return VolumeResult(vol, solution.system.word, solution)


def volume_of_word(word: str, *, tol: float = SOLVER_TOL, max_iter: int = MAX_ITER, initial=None) -> VolumeResult:
    """Triangulate, solve and integrate for one monodromy word."""
    system = gluing_equations(build_layered(word))
    return volume(solve_shapes(system, initial, tol=tol, max_iter=max_iter))


MIN_CUSPED_VOLUME = 2.0 * V3

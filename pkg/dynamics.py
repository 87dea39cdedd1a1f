import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from addresses import RotationNumber, SatelliteAddress, address_period, address_to_json
from counting import check_positive, divisors

ESCAPE_LIMIT = 1e150


class OrbitOverflowError(ArithmeticError):
    pass


class ContinuationError(RuntimeError):
    """A Newton solve inside a continuation did not converge."""

    def __init__(self, message, depth=None, step=None):
        super().__init__(message)
        self.depth = depth
        self.step = step


class WrongComponentError(RuntimeError):
    """Path following landed on a center of the wrong primitive period."""


@dataclass
class PathFollowConfig:
    multiplier_steps: int = 64
    newton_tol: float = 1e-12
    newton_max_iter: int = 64
    entry_offset: float = 1e-3
    match_tol: float = 1e-8
    distinct_tol: float = 1e-6
    sweep_limit: int = 14
    sweep_max_iter: int = 2000
    sweep_tol: float = 1e-13

    def __post_init__(self):
        if self.multiplier_steps < 1 or self.newton_max_iter < 1 or self.sweep_max_iter < 1:
            raise ValueError("step and iteration counts must be positive")
        if not 0 < self.newton_tol < self.entry_offset < 1:
            raise ValueError(
                f"need 0 < newton_tol < entry_offset < 1, got newton_tol={self.newton_tol}, "
                f"entry_offset={self.entry_offset}"
            )
        if not (self.match_tol > 0 and self.distinct_tol > 2 * self.match_tol):
            raise ValueError(
                f"need distinct_tol > 2 * match_tol > 0, got match_tol={self.match_tol}, "
                f"distinct_tol={self.distinct_tol}"
            )
        if self.sweep_limit < 1 or self.sweep_tol <= 0:
            raise ValueError("sweep_limit and sweep_tol must be positive")


@dataclass(frozen=True)
class Center:
    c: complex
    period: int
    address: Optional[SatelliteAddress]
    residual: float


def critical_poly(n: int, c: complex) -> Tuple[complex, complex]:
    """Q_n(c) = f_c^n(0) and its derivative in c."""
    check_positive(n)
    c = complex(c)
    q, dq = c, 1 + 0j
    for j in range(2, n + 1):
        q, dq = q * q + c, 2 * q * dq + 1
        if not abs(q) <= ESCAPE_LIMIT:
            raise OrbitOverflowError(f"|Q_{j}({c})| exceeded {ESCAPE_LIMIT:.0e}")
    return q, dq


def cardioid_boundary_point(r: RotationNumber) -> complex:
    """Parameter where the fixed point has multiplier exp(2 pi i p/q)."""
    lam = cmath.exp(2j * math.pi * r.p / r.q)
    return lam / 2 - lam * lam / 4


def _orbit_derivatives(z, c, period):
    # z_period with its first derivatives in (z, c) and the second derivatives
    # of the multiplier a = d z_period / d z
    a, b, A, B = 1 + 0j, 0j, 0j, 0j
    for _ in range(period):
        z, a, b, A, B = z * z + c, 2 * z * a, 2 * z * b + 1, 2 * (a * a + z * A), 2 * (b * a + z * B)
    return z, a, b, A, B


def _orbit_multiplier(z, c, period):
    a = 1 + 0j
    for _ in range(period):
        z, a = z * z + c, 2 * z * a
    return z, a


def cycle_point_and_multiplier(
    c: complex,
    period: int,
    seed_z: complex,
    tol: float = 1e-12,
    max_iter: int = 64,
) -> Tuple[complex, complex]:
    """Newton on f_c^period(z) - z from seed_z; returns the point and its cycle multiplier."""
    check_positive(period, "period")
    c, z = complex(c), complex(seed_z)
    for _ in range(max_iter):
        zp, a = _orbit_multiplier(z, c, period)
        if a == 1 or not cmath.isfinite(zp):
            raise ContinuationError(f"cycle Newton broke down at z={z}, c={c}")
        step = (zp - z) / (a - 1)
        z -= step
        if abs(step) <= tol:
            break
    else:
        raise ContinuationError(f"cycle Newton did not converge in {max_iter} iterations at c={c}")
    return z, _orbit_multiplier(z, c, period)[1]


def multiplier_gradient(z: complex, c: complex, period: int) -> complex:
    """d(multiplier)/dc along the cycle through z, holding the cycle equation."""
    _, a, b, A, B = _orbit_derivatives(z, c, period)
    return B - A * b / (a - 1)


def _solve_cycle_with_multiplier(z, c, period, target, cfg):
    # Newton on (f_c^m(z) - z, (f_c^m)'(z) - target) in the unknowns (z, c)
    last = math.inf
    for _ in range(cfg.newton_max_iter):
        zp, a, b, A, B = _orbit_derivatives(z, c, period)
        jac = np.array([[a - 1, b], [A, B]], dtype=np.complex128)
        rhs = np.array([zp - z, a - target], dtype=np.complex128)
        try:
            dz, dc = np.linalg.solve(jac, rhs)
        except np.linalg.LinAlgError as err:
            raise ContinuationError(f"singular Jacobian at c={c}: {err}")
        z, c = z - complex(dz), c - complex(dc)
        size = max(abs(dz), abs(dc))
        if not math.isfinite(size):
            break
        # accept at the tolerance, or once the step stalls at rounding level
        if size <= cfg.newton_tol or (size < 1e3 * cfg.newton_tol and size >= last):
            return z, c
        last = size
    raise ContinuationError(f"multiplier Newton did not converge towards {target:.6g} near c={c}")


def _continue_multiplier(z, c, period, start, end, cfg):
    steps = cfg.multiplier_steps
    for k in range(1, steps + 1):
        target = start + (end - start) * k / steps
        try:
            z, c = _solve_cycle_with_multiplier(z, c, period, target, cfg)
        except ContinuationError as err:
            raise ContinuationError(f"step {k}/{steps}: {err}", step=k)
    return z, c


def _follow_to_root(parent_c, period, r, cfg):
    lam = cmath.exp(2j * math.pi * r.p / r.q)
    # at a center the critical point 0 is on the superattracting cycle
    return _continue_multiplier(0j, complex(parent_c), period, 0j, lam, cfg)


def follow_to_root(parent_center: Center, r: RotationNumber, cfg: PathFollowConfig) -> complex:
    """Root of the satellite at internal angle r on the component of parent_center."""
    _, c_root = _follow_to_root(parent_center.c, parent_center.period, r, cfg)
    return c_root


def _critical_orbit_seed(c, period, max_iter=200_000, tol=1e-9):
    z = 0j
    for _ in range(max_iter // period):
        start = z
        for _ in range(period):
            z = z * z + c
        if not abs(z) <= 2:
            break
        if abs(z - start) <= tol:
            break
    return z


def _enter_child(c_root, z_root, period, q, cfg):
    """Step from the root into the child and return (z, c, multiplier) on the child cycle.

    The step goes along lambda / (d lambda / dc), the outward normal of the parent
    at the root, in place of the ray from the parent center through the root.
    """
    child_period = period * q
    _, lam = _orbit_multiplier(z_root, c_root, period)
    grad = multiplier_gradient(z_root, c_root, period)
    # dc = lam * delta / grad raises |lam| by a factor (1 + delta)
    direction = lam / grad
    offset = cfg.entry_offset
    for _ in range(8):
        c1 = c_root + offset * direction
        for seed in (_critical_orbit_seed(c1, child_period), z_root):
            try:
                z1, mu = cycle_point_and_multiplier(c1, child_period, seed, cfg.newton_tol, cfg.newton_max_iter)
            except ContinuationError:
                continue
            zp, _ = _orbit_multiplier(z1, c1, period)
            if abs(mu) < 1 and abs(zp - z1) > cfg.match_tol:
                return z1, c1, mu
        offset *= 2
    raise ContinuationError(f"could not enter the period-{child_period} child at c={c_root}")


def polish_center(c: complex, n: int, cfg: PathFollowConfig) -> Tuple[complex, float, float]:
    """Newton on Q_n in c; returns (c, |Q_n(c)|, last Newton correction)."""
    for _ in range(cfg.newton_max_iter):
        q, dq = critical_poly(n, c)
        if dq == 0:
            break
        c -= q / dq
        if abs(q / dq) <= cfg.newton_tol:
            break
    q, dq = critical_poly(n, c)
    correction = abs(q / dq) if dq != 0 else math.inf
    return c, abs(q), correction


def primitive_period(c: complex, n: int, tol: float) -> int:
    """Smallest d | n whose Q_d has a root within Newton distance tol of c."""
    for d in divisors(n):
        q, dq = critical_poly(d, c)
        if abs(q) <= tol * max(1.0, abs(dq)):
            return d
    raise ValueError(f"c={c} is not within {tol} of a root of Q_{n}")


def locate_center(address: SatelliteAddress, cfg: PathFollowConfig) -> Center:
    """Walk the satellite chain from the cardioid center to the addressed center."""
    n = address_period(address)
    if not address.rotations:
        return Center(0j, 1, address, 0.0)
    c, period = 0j, 1
    for depth, r in enumerate(address.rotations, 1):
        try:
            z_root, c_root = _follow_to_root(c, period, r, cfg)
            z, c1, mu = _enter_child(c_root, z_root, period, r.q, cfg)
            period *= r.q
            _, c = _continue_multiplier(z, c1, period, mu, 0j, cfg)
        except ContinuationError as err:
            raise ContinuationError(f"{address} at depth {depth}: {err}", depth=depth, step=err.step)
    c, residual, correction = polish_center(c, n, cfg)
    if not correction <= cfg.newton_tol:
        raise ContinuationError(
            f"{address}: final polish stopped with correction {correction:.3g}", depth=len(address)
        )
    if not residual <= cfg.newton_tol:
        raise ContinuationError(
            f"{address}: residual |Q_{n}(c)| = {residual:.3g} above {cfg.newton_tol:g}", depth=len(address)
        )
    found = primitive_period(c, n, cfg.match_tol)
    if found != n:
        raise WrongComponentError(f"{address}: landed on a period-{found} center at c={c}, expected period {n}")
    return Center(c, n, address, residual)


def center_to_json(center: Center) -> dict:
    return {
        "re": center.c.real,
        "im": center.c.imag,
        "period": center.period,
        "address": None if center.address is None else address_to_json(center.address),
        "residual": center.residual,
    }

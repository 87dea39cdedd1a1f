import math
from typing import List

import torch

from counting import check_positive, total_component_count
from dynamics import Center, PathFollowConfig, critical_poly, primitive_period

# fixed irrational rotation of the starting circle
START_ROTATION = (math.sqrt(5) - 1) / 2
START_RADIUS = 2.0
# past this modulus Q_{j+1}/Q'_{j+1} is Q_j/(2 Q'_j) to double precision
RATIO_ESCAPE = 1e10
PAIRWISE_CHUNK = 1 << 22


class SweepError(RuntimeError):
    pass


def newton_ratio(c: torch.Tensor, n: int) -> torch.Tensor:
    """Q_n(c) / Q_n'(c) for a batch of parameters, without overflow."""
    q = c.clone()
    dq = torch.ones_like(c)
    scale = torch.ones(c.shape, dtype=torch.float64, device=c.device)
    escaped = q.abs() > RATIO_ESCAPE
    for _ in range(n - 1):
        scale = torch.where(escaped, scale * 0.5, scale)
        q, dq = torch.where(escaped, q, q * q + c), torch.where(escaped, dq, 2 * q * dq + 1)
        escaped = escaped | (q.abs() > RATIO_ESCAPE)
    return q / dq * scale


def _aberth_sums(x: torch.Tensor, active: torch.Tensor) -> torch.Tensor:
    # sum over j != i of 1 / (x_i - x_j) for the active rows i
    rows = torch.nonzero(active).flatten()
    sums = torch.zeros(len(rows), dtype=x.dtype, device=x.device)
    chunk = max(1, PAIRWISE_CHUNK // len(x))
    for start in range(0, len(rows), chunk):
        idx = rows[start:start + chunk]
        diff = x[idx].unsqueeze(1) - x.unsqueeze(0)
        local = torch.arange(len(idx), device=x.device)
        diff[local, idx] = 1
        recip = 1 / diff
        recip[local, idx] = 0
        sums[start:start + chunk] = recip.sum(dim=1)
    return sums


def min_separation(points: torch.Tensor) -> float:
    """Smallest pairwise distance, inf for fewer than two points."""
    closest = math.inf
    chunk = max(1, PAIRWISE_CHUNK // max(1, len(points)))
    for start in range(0, len(points), chunk):
        block = (points[start:start + chunk].unsqueeze(1) - points.unsqueeze(0)).abs()
        local = torch.arange(len(block))
        block[local, local + start] = math.inf
        closest = min(closest, float(block.min()))
    return closest


def aberth_roots(n: int, cfg: PathFollowConfig) -> torch.Tensor:
    """All 2^(n-1) roots of Q_n by simultaneous Aberth-Ehrlich iteration."""
    degree = 2 ** (n - 1)
    angles = 2 * math.pi * (torch.arange(degree, dtype=torch.float64) + START_ROTATION) / degree
    x = torch.polar(torch.full_like(angles, START_RADIUS), angles)
    active = torch.ones(degree, dtype=torch.bool)
    for _ in range(cfg.sweep_max_iter):
        ratio = newton_ratio(x[active], n)
        sums = _aberth_sums(x, active)
        delta = ratio / (1 - ratio * sums)
        # a root estimate sitting on a critical point of Q_n gets nudged off it
        delta = torch.where(torch.isfinite(delta), delta, torch.full_like(delta, 1e-3))
        x[active] = x[active] - delta
        done = delta.abs() <= cfg.sweep_tol * torch.clamp(x[active].abs(), min=1.0)
        active[active.clone()] = ~done
        if not active.any():
            return x
    raise SweepError(
        f"Aberth iteration for Q_{n} left {int(active.sum())} of {degree} roots unconverged "
        f"after {cfg.sweep_max_iter} rounds"
    )


def all_centers_sweep(n: int, cfg: PathFollowConfig = None) -> List[Center]:
    """Every center of exact period n, sorted by (re, im)."""
    check_positive(n)
    cfg = cfg or PathFollowConfig()
    if n > cfg.sweep_limit:
        raise ValueError(f"sweep limited to n <= {cfg.sweep_limit}, got {n}")
    if n == 1:
        return [Center(0j, 1, None, 0.0)]

    roots = aberth_roots(n, cfg)
    centers = []
    for c in roots.tolist():
        if primitive_period(c, n, cfg.match_tol) == n:
            centers.append(Center(c, n, None, abs(critical_poly(n, c)[0])))
    centers.sort(key=lambda center: (center.c.real, center.c.imag))

    expected = total_component_count(n)
    if len(centers) != expected:
        raise SweepError(f"sweep found {len(centers)} centers of period {n}, expected {expected}")
    closest = min_separation(torch.tensor([center.c for center in centers], dtype=torch.complex128))
    if closest <= cfg.distinct_tol:
        raise SweepError(f"two period-{n} sweep roots are only {closest:.3g} apart")
    return centers

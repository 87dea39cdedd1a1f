import sys
from dataclasses import dataclass, field
from typing import List, Optional

import torch
from tqdm import tqdm

from addresses import enumerate_addresses
from counting import check_positive, molecule_count_recursive
from dynamics import (
    Center,
    ContinuationError,
    PathFollowConfig,
    WrongComponentError,
    center_to_json,
    critical_poly,
    locate_center,
)
from sweep import SweepError, all_centers_sweep, min_separation


@dataclass
class VerificationReport:
    n: int
    expected: int
    centers: List[Center] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    sweep_count: Optional[int] = None

    @property
    def located(self) -> int:
        return len(self.centers)

    @property
    def verdict(self) -> bool:
        return not self.failures and self.located == self.expected

    def to_json(self) -> dict:
        report = {
            "n": self.n,
            "expected": self.expected,
            "located": self.located,
            "verdict": self.verdict,
            "centers": [center_to_json(center) for center in self.centers],
            "failures": list(self.failures),
        }
        if self.sweep_count is not None:
            report["sweep_count"] = self.sweep_count
        return report


def locate_molecule_centers(n: int, cfg: PathFollowConfig, failures: List[str]) -> List[Center]:
    """Locate the center of every period-n molecule address; failures are collected, not raised."""
    centers = []
    for address in tqdm(enumerate_addresses(n), desc=f"period {n}", disable=None, leave=False):
        try:
            centers.append(locate_center(address, cfg))
        except (ContinuationError, WrongComponentError) as err:
            failures.append(f"locate {address}: {err}")
    centers.sort(key=lambda center: (center.c.real, center.c.imag))
    return centers


def verify_molecule_count(n: int, cfg: PathFollowConfig = None, sweep: bool = True) -> VerificationReport:
    """Check numerically that period n has exactly M(n) molecule centers."""
    check_positive(n)
    cfg = cfg or PathFollowConfig()
    if sweep and n > cfg.sweep_limit:
        raise ValueError(f"n={n} is above the sweep limit {cfg.sweep_limit}; raise it or disable the sweep")

    report = VerificationReport(n=n, expected=molecule_count_recursive(n))
    report.centers = locate_molecule_centers(n, cfg, report.failures)

    for center in report.centers:
        q, _ = critical_poly(n, center.c)
        if abs(q) > cfg.newton_tol:
            report.failures.append(f"{center.address}: residual {abs(q):.3g} above tolerance")
        if center.period != n:
            report.failures.append(f"{center.address}: primitive period {center.period}, expected {n}")

    points = torch.tensor([center.c for center in report.centers], dtype=torch.complex128)
    closest = min_separation(points)
    if closest <= cfg.distinct_tol:
        report.failures.append(f"two located centers are only {closest:.3g} apart")

    if sweep:
        try:
            roots = all_centers_sweep(n, cfg)
        except SweepError as err:
            report.failures.append(f"sweep: {err}")
        else:
            report.sweep_count = len(roots)
            _match_against_sweep(report, roots, cfg)

    tqdm.write(
        f"period {n}: located {report.located} of {report.expected} molecule centers, "
        f"{len(report.failures)} failures",
        file=sys.stderr,
    )
    return report


def _match_against_sweep(report, roots, cfg):
    sweep_points = torch.tensor([root.c for root in roots], dtype=torch.complex128)
    for center in report.centers:
        hits = int(((sweep_points - center.c).abs() <= cfg.match_tol).sum())
        if hits != 1:
            report.failures.append(f"{center.address}: matches {hits} sweep roots within {cfg.match_tol:g}")

import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from PIL import Image
from scipy import ndimage
from tqdm import tqdm

from counting import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    asymptotic_ratio,
    check_positive,
    is_prime,
    molecule_count_direct,
    molecule_count_recursive,
    total_component_count,
)

RED = (255, 0, 0)
CROSS_ARM = 2
STANDARD_WINDOW = (-2.0, 0.75, -1.15, 1.15)


def fraction_string(r: Fraction) -> str:
    # always "p/q", also for integers, so golden files stay uniform
    return f"{r.numerator}/{r.denominator}"


def dumps(data) -> str:
    return json.dumps(data, separators=(",", ":")) + "\n"


def table_rows(max_n: int, method: str = "direct", budget: int = DEFAULT_BUDGET) -> List[dict]:
    """Rows n, M(n), nu(n), M(n)/nu(n) for n = 1..max_n."""
    check_positive(max_n, "max_n")
    rows = []
    for n in tqdm(range(1, max_n + 1), desc="table", disable=None, leave=False):
        if method == "direct":
            try:
                m_n = molecule_count_direct(n, budget=budget)
            except BudgetExceededError as err:
                tqdm.write(f"note: {err}; using the recursive method for n={n}", file=sys.stderr)
                m_n = molecule_count_recursive(n)
        elif method == "recursive":
            m_n = molecule_count_recursive(n)
        else:
            raise ValueError(f"Unrecognized table method {method}")
        nu_n = total_component_count(n)
        rows.append({"n": n, "M": m_n, "nu": nu_n, "ratio": fraction_string(Fraction(m_n, nu_n))})
    return rows


def rows_to_csv(rows: Sequence[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "M", "nu", "ratio"])
    for row in rows:
        writer.writerow([row["n"], row["M"], row["nu"], row["ratio"]])
    return buffer.getvalue()


@dataclass(frozen=True)
class PlotSpec:
    n: int
    width: int = 800
    height: int = 600
    window: Tuple[float, float, float, float] = STANDARD_WINDOW
    max_iter: int = 256
    escape_radius: float = 2.0

    def __post_init__(self):
        check_positive(self.n)
        re_min, re_max, im_min, im_max = self.window
        if self.width < 16 or self.height < 16:
            raise ValueError(f"image must be at least 16x16 pixels, got {self.width}x{self.height}")
        if not (re_min < re_max and im_min < im_max):
            raise ValueError(f"degenerate window {self.window}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be positive, got {self.max_iter}")
        if self.escape_radius < 2:
            raise ValueError(f"escape radius must be >= 2, got {self.escape_radius}")

    @property
    def pixel_size(self) -> Tuple[float, float]:
        re_min, re_max, im_min, im_max = self.window
        return (re_max - re_min) / self.width, (im_max - im_min) / self.height

    def pixel_of(self, c: complex):
        """(column, row) of the pixel containing c, or None outside the window."""
        re_min, _, _, im_max = self.window
        dx, dy = self.pixel_size
        i = int(np.floor((c.real - re_min) / dx))
        j = int(np.floor((im_max - c.imag) / dy))
        if 0 <= i < self.width and 0 <= j < self.height:
            return i, j
        return None


def escape_time_image(view: PlotSpec) -> np.ndarray:
    """Grayscale escape-time shading as an RGB array; interior points are black."""
    re_min, _, _, im_max = view.window
    dx, dy = view.pixel_size
    re = re_min + (np.arange(view.width) + 0.5) * dx
    im = im_max - (np.arange(view.height) + 0.5) * dy
    c = re[np.newaxis, :] + 1j * im[:, np.newaxis]
    z = np.zeros_like(c)
    counts = np.zeros(c.shape, dtype=np.int64)
    alive = np.ones(c.shape, dtype=bool)
    radius2 = view.escape_radius ** 2
    for k in range(1, view.max_iter + 1):
        z[alive] = z[alive] ** 2 + c[alive]
        escaped = alive & (z.real ** 2 + z.imag ** 2 > radius2)
        counts[escaped] = k
        alive &= ~escaped
    gray = (255 * counts) // view.max_iter
    gray[alive] = 0
    return np.repeat(gray.astype(np.uint8)[:, :, np.newaxis], 3, axis=2)


def draw_crosses(image: np.ndarray, points: Sequence[complex], view: PlotSpec) -> int:
    """Overdraw a red plus of 2 * CROSS_ARM + 1 pixels per point; returns how many were inside."""
    drawn = 0
    for c in points:
        pixel = view.pixel_of(c)
        if pixel is None:
            continue
        i, j = pixel
        for k in range(-CROSS_ARM, CROSS_ARM + 1):
            if 0 <= i + k < view.width:
                image[j, i + k] = RED
            if 0 <= j + k < view.height:
                image[j + k, i] = RED
        drawn += 1
    return drawn


def count_red_clusters(image: np.ndarray) -> int:
    mask = np.all(image == np.array(RED, dtype=image.dtype), axis=2)
    _, clusters = ndimage.label(mask)
    return clusters


def save_ppm(image: np.ndarray, path: str):
    # Pillow writes binary P6 for RGB images
    Image.fromarray(image).save(path, format="PPM")


def load_ppm(path: str) -> np.ndarray:
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"))


def primorial_primes(count: int) -> List[int]:
    primes, k = [], 2
    while len(primes) < count:
        if is_prime(k):
            primes.append(k)
        k += 1
    return primes


def plot_growth(max_n: int, out_path: str, primorials: int = 6):
    """Molecule count against the full component count, plus the primorial ratio."""
    check_positive(max_n, "max_n")
    ns = list(range(1, max_n + 1))
    m_values = [molecule_count_recursive(n) for n in ns]
    nu_values = [total_component_count(n) for n in ns]
    ratios = [float(asymptotic_ratio(primorial_primes(m))) for m in range(1, primorials + 1)]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    ax1.plot(ns, m_values, marker="o", markersize=3, label="M(n), main molecule")
    ax1.plot(ns, nu_values, linestyle="dashed", label="nu(n), all components")
    ax1.set_yscale("log", base=10)
    ax1.set_xlabel("period n")
    ax1.set_ylabel("number of components")
    ax1.legend()
    ax1.grid()
    ax1.set_title("Hyperbolic components of period n")

    ax2.plot(range(1, primorials + 1), ratios, marker="o", color="tab:red")
    ax2.set_xlabel("number of primes m")
    ax2.set_ylabel("M(n) / (N(m) n)")
    ax2.grid()
    ax2.set_title("Ratio over primorials")

    fig.tight_layout()
    plt.savefig(out_path)
    plt.close()

"""Peak detection on spectral scans and Gaussian-lineshape accuracy bounds.

Peaks are local maxima of Re C(E) (optionally |C(E)| for noisy data)
passing a relative prominence threshold, with sub-grid refinement by a
3-point parabola. The shift bounds quantify how far a peak's extremum
can be pulled by neighboring Gaussian lines: the two-line form bounds
the ground-line shift by d1*(e1-e0)/d0, the three-line form evaluates
the neighbor-pull expression at the nominal center and caps it by the
distance to either neighbor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks as _scipy_find_peaks
from scipy.signal import peak_widths as _scipy_peak_widths

from .scan import ScanConfig, SpectralScan

DEFAULT_PROMINENCE = 0.02


class PeakError(ValueError):
    pass


@dataclass(frozen=True)
class Peak:
    location: float
    height: float
    prominence: float
    half_width: float


@dataclass(frozen=True)
class PeakReport:
    peaks: tuple[Peak, ...]
    threshold: float
    config: ScanConfig | None = None

    def locations(self) -> np.ndarray:
        return np.array([p.location for p in self.peaks])

    def to_dict(self) -> dict:
        return {
            "peaks": [
                {
                    "E": p.location,
                    "height": p.height,
                    "prominence": p.prominence,
                    "half_width": p.half_width,
                }
                for p in self.peaks
            ],
            "threshold": self.threshold,
        }


@dataclass(frozen=True)
class AccuracyBound:
    shift_bound: float
    weights: tuple[float, ...]
    neighbor_gaps: tuple[float, ...]


@dataclass(frozen=True)
class MatchTable:
    matched: tuple[tuple[float, Peak], ...]
    missed: tuple[float, ...]
    spurious: tuple[Peak, ...]


def find_peaks(
    scan: SpectralScan,
    prominence_threshold: float = DEFAULT_PROMINENCE,
    magnitude: bool = False,
) -> PeakReport:
    """Local maxima with prominence >= threshold * curve max, refined."""
    if not 0 < prominence_threshold < 1:
        raise PeakError("prominence threshold must lie in (0, 1)")
    c = np.asarray(scan.c_values)
    if c.ndim != 1:
        raise PeakError("peak detection needs a 1-D scan")
    if c.size < 3:
        raise PeakError("scan too short for peak detection (need >= 3 points)")
    values = np.abs(c) if magnitude else c.real
    vmax = values.max()
    if vmax <= 0:
        return PeakReport(peaks=(), threshold=prominence_threshold, config=scan.config)
    idx, props = _scipy_find_peaks(
        values, prominence=prominence_threshold * vmax, plateau_size=(1, None)
    )
    if idx.size == 0:
        return PeakReport(peaks=(), threshold=prominence_threshold, config=scan.config)
    widths = _scipy_peak_widths(values, idx, rel_height=0.5)[0]
    e = scan.e_values
    step = float(e[1] - e[0])
    peaks = []
    for n, m in enumerate(idx):
        left, right = props["left_edges"][n], props["right_edges"][n]
        if right > left:
            # flat top: deterministic midpoint, no curvature to fit
            loc = 0.5 * (e[left] + e[right])
            height = float(values[m])
        else:
            ym, y0, yp = values[m - 1], values[m], values[m + 1]
            denom = ym - 2 * y0 + yp
            delta = 0.5 * (ym - yp) / denom if denom < 0 else 0.0
            loc = float(e[m] + delta * step)
            height = float(y0 - 0.25 * (ym - yp) * delta)
        peaks.append(
            Peak(
                location=loc,
                height=height,
                prominence=float(props["prominences"][n]),
                half_width=float(widths[n] * step / 2),
            )
        )
    peaks.sort(key=lambda p: p.location)
    return PeakReport(peaks=tuple(peaks), threshold=prominence_threshold, config=scan.config)


def match_peaks(report: PeakReport, reference, tol: float) -> MatchTable:
    """Greedy nearest matching of detected peaks to reference energies."""
    if not tol > 0:
        raise PeakError("matching tolerance must be positive")
    reference = [float(r) for r in reference]
    candidates = []
    for i, r in enumerate(reference):
        for j, p in enumerate(report.peaks):
            d = abs(p.location - r)
            if d <= tol:
                candidates.append((d, i, j))
    candidates.sort()
    used_ref: set[int] = set()
    used_peak: set[int] = set()
    matched = []
    for d, i, j in candidates:
        if i in used_ref or j in used_peak:
            continue
        used_ref.add(i)
        used_peak.add(j)
        matched.append((reference[i], report.peaks[j]))
    missed = tuple(r for i, r in enumerate(reference) if i not in used_ref)
    spurious = tuple(p for j, p in enumerate(report.peaks) if j not in used_peak)
    matched.sort(key=lambda pair: pair[0])
    return MatchTable(matched=tuple(matched), missed=missed, spurious=spurious)


def ground_peak_shift_bound(d0: float, d1: float, e0: float, e1: float) -> AccuracyBound:
    """Shift of the dominant line's extremum due to one neighbor above it."""
    if not (d0 > d1 >= 0):
        raise PeakError("bound requires weights d0 > d1 >= 0")
    if not e1 > e0:
        raise PeakError("bound requires e1 > e0")
    return AccuracyBound(
        shift_bound=d1 * (e1 - e0) / d0,
        weights=(d0, d1),
        neighbor_gaps=(e1 - e0,),
    )


def gap_peak_shift_estimate(
    d_ij: float,
    d1: float,
    d2: float,
    delta_ij: float,
    delta1: float,
    delta2: float,
    a: float,
) -> AccuracyBound:
    """Extremum shift of a line pulled by its two nearest neighbors.

    Evaluates the neighbor-pull ratio at the nominal center and caps the
    result by the distance to either neighbor (the extremum cannot leave
    the basin between them).
    """
    if not delta1 < delta_ij < delta2:
        raise PeakError("neighbor ordering must satisfy delta1 < delta_ij < delta2")
    if not (d_ij > 0 and d1 >= 0 and d2 >= 0):
        raise PeakError("weights must satisfy d_ij > 0, d1 >= 0, d2 >= 0")
    if not a > 0:
        raise PeakError("width a must be positive")
    left = delta_ij - delta1
    right = delta2 - delta_ij
    g1 = math.exp(-(left**2) / (4 * a * a))
    g2 = math.exp(-(right**2) / (4 * a * a))
    estimate = abs(-d1 * left * g1 + d2 * right * g2) / (d1 * g1 + d2 * g2 + d_ij)
    return AccuracyBound(
        shift_bound=min(estimate, left, right),
        weights=(d_ij, d1, d2),
        neighbor_gaps=(left, right),
    )

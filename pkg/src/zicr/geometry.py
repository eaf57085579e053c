"""Relay placement under two-ray pathloss.

Maps node coordinates to link SNRs via snr = d^(-4) and scans a grid of
relay positions for the cells where the certified-capacity conditions
(relay-decoding inequality plus weak-interference feasibility) hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacity import relay_condition_holds, wi_feasible, wi_feasible_mask
from .model import SnrSextet

COINCIDENCE_EPS = 1e-9

Point = tuple[float, float]


def _dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class NodeLayout:
    """Positions of the two transmitter-receiver pairs in the plane."""

    tx1: Point
    rx1: Point
    tx2: Point
    rx2: Point

    def __post_init__(self) -> None:
        nodes = {"tx1": self.tx1, "rx1": self.rx1, "tx2": self.tx2, "rx2": self.rx2}
        for name, pt in nodes.items():
            if len(pt) != 2 or not all(math.isfinite(c) for c in pt):
                raise ValueError(f"{name} must be a finite 2-D coordinate, got {pt!r}")
        names = list(nodes)
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                if _dist(nodes[a], nodes[b]) <= 0.0:
                    raise ValueError(f"nodes {a} and {b} must not coincide")


DEFAULT_LAYOUT = NodeLayout(tx1=(0.0, 0.0), rx1=(2.0, 0.0), tx2=(0.0, 2.0), rx2=(2.0, 2.0))

DEFAULT_BOUNDS = (-1.0, 3.0, -1.0, 3.0)
DEFAULT_RESOLUTION = 200


def snr_from_layout(
    layout: NodeLayout, relay: Point, pathloss_exponent: float = 4.0
) -> SnrSextet:
    """Link SNRs snr_ij = d_ij^(-pathloss_exponent) for one relay position."""
    for name, node in (
        ("tx1", layout.tx1),
        ("rx1", layout.rx1),
        ("tx2", layout.tx2),
        ("rx2", layout.rx2),
    ):
        if _dist(relay, node) <= COINCIDENCE_EPS:
            raise ValueError(f"relay position {relay!r} coincides with {name}")
    return SnrSextet(
        snr11=_dist(layout.tx1, layout.rx1) ** -pathloss_exponent,
        snr21=_dist(layout.tx2, layout.rx1) ** -pathloss_exponent,
        snr31=_dist(relay, layout.rx1) ** -pathloss_exponent,
        snr22=_dist(layout.tx2, layout.rx2) ** -pathloss_exponent,
        snr32=_dist(relay, layout.rx2) ** -pathloss_exponent,
        snr13=_dist(layout.tx1, relay) ** -pathloss_exponent,
    )


@dataclass(frozen=True)
class RegionGrid:
    """Boolean relay-placement mask over a rectangular grid.

    mask[i, j] refers to the relay position (xs[i], ys[j]).
    """

    xs: np.ndarray
    ys: np.ndarray
    mask: np.ndarray

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.mask))

    def centroid(self) -> Point | None:
        """Mean position of the true cells, or None for an empty region."""
        if self.count == 0:
            return None
        ii, jj = np.nonzero(self.mask)
        return (float(np.mean(self.xs[ii])), float(np.mean(self.ys[jj])))


def relay_region(
    layout: NodeLayout,
    bounds: tuple[float, float, float, float] = DEFAULT_BOUNDS,
    resolution: int = DEFAULT_RESOLUTION,
    pathloss_exponent: float = 4.0,
) -> RegionGrid:
    """Scan relay positions for certified-capacity placements.

    A cell is true iff the relay-decoding condition holds and a
    weak-interference certificate exists for the induced SNRs.  The scan
    runs a vectorized feasibility prefilter over the whole grid, then
    confirms each surviving cell through the scalar certificate search, so
    every true cell re-validates against the public condition checks.
    Cells coinciding with a node are false.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    x0, x1, y0, y1 = bounds
    if not (x0 < x1 and y0 < y1):
        raise ValueError(f"bounds must be an ordered box, got {bounds!r}")
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)
    xx, yy = np.meshgrid(xs, ys, indexing="ij")

    def sq_dist_to(node: Point) -> np.ndarray:
        return (xx - node[0]) ** 2 + (yy - node[1]) ** 2

    expo = pathloss_exponent / 2.0  # applied to squared distances
    s11 = _dist(layout.tx1, layout.rx1) ** -pathloss_exponent
    s21 = _dist(layout.tx2, layout.rx1) ** -pathloss_exponent
    s22 = _dist(layout.tx2, layout.rx2) ** -pathloss_exponent

    coincident = np.zeros(xx.shape, dtype=bool)
    for node in (layout.tx1, layout.rx1, layout.tx2, layout.rx2):
        coincident |= sq_dist_to(node) <= COINCIDENCE_EPS**2

    with np.errstate(divide="ignore"):
        s31 = sq_dist_to(layout.rx1) ** -expo
        s32 = sq_dist_to(layout.rx2) ** -expo
        s13 = sq_dist_to(layout.tx1) ** -expo

    relay_ok = (s11 + s31) / (1.0 + s21) <= s13
    wi_ok = wi_feasible_mask(s11, s21, s31, s22, s32)
    candidates = relay_ok & wi_ok & ~coincident

    mask = np.zeros(xx.shape, dtype=bool)
    for i, j in np.argwhere(candidates):
        snr = snr_from_layout(layout, (float(xs[i]), float(ys[j])), pathloss_exponent)
        mask[i, j] = relay_condition_holds(snr) and wi_feasible(snr) is not None
    return RegionGrid(xs=xs, ys=ys, mask=mask)

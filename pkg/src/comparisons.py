#!/usr/bin/env python3
"""
Comparison envelopes between invariant metrics and volume forms.

Everything here is arithmetic in (s, n): given a certified lower bound s on
the squeezing function at a point, emit the two-sided constants relating one
intrinsic quantity to another there. No metric on a general domain is computed.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List

import numpy as np
import pandas as pd

from squeeze_errors import NotDecreasing, OutOfRange

SPOT_CHECK_GRID = np.linspace(0.05, 0.95, 19)

# Names of the four volume forms sharing the pinching function r^-2n; reports tag
# them, nothing computes them.
VOLUME_FORMS = (
    "Caratheodory volume",
    "Eisenman-Kobayashi volume",
    "Caratheodory metric volume",
    "Kobayashi metric volume",
)


class Relation(str, Enum):
    METRIC_CK = "MetricCK"
    METRIC_KB = "MetricKB"
    METRIC_KKE = "MetricKKE"
    VOLUME_ANY = "VolumeAny"
    VOLUME_KB = "VolumeKB"
    VOLUME_KKE = "VolumeKKE"


RELATION_LABELS = {
    Relation.METRIC_CK: "Caratheodory / Kobayashi metric",
    Relation.METRIC_KB: "Bergman / Kobayashi metric",
    Relation.METRIC_KKE: "Kahler-Einstein / Kobayashi metric",
    Relation.VOLUME_ANY: "any pair of the four volume forms",
    Relation.VOLUME_KB: "Bergman / Kobayashi metric volume",
    Relation.VOLUME_KKE: "Kahler-Einstein / Kobayashi metric volume",
}


@dataclass(frozen=True)
class Envelope:
    """low * G <= F <= high * G at a point with squeezing value >= s."""

    low: float
    high: float
    relation: Relation
    s: float
    n: int
    consistent: bool = True

    def __post_init__(self):
        if not (self.low > 0 and self.high > 0):
            raise OutOfRange(f"Envelope factors must be positive, got ({self.low}, {self.high})")

    def to_dict(self) -> Dict:
        return {
            "relation": self.relation.value,
            "s": self.s,
            "n": self.n,
            "low": self.low,
            "high": self.high,
            "consistent": self.consistent,
        }


def _check_radius(r: float):
    if not (0.0 < r < 1.0):
        raise OutOfRange(f"Pinching functions need 0 < r < 1, got {r}")


def _check_squeeze(s: float, n: int = 1):
    if not (0.0 < s <= 1.0):
        raise OutOfRange(f"Squeezing value must lie in (0, 1], got {s}")
    if int(n) != n or n < 1:
        raise OutOfRange(f"Dimension must be a positive integer, got {n}")


def _envelope(low: float, high: float, relation: Relation, s: float, n: int) -> Envelope:
    return Envelope(low=low, high=high, relation=relation, s=s, n=int(n), consistent=low <= high)


def pinching_metric(r: float) -> float:
    """P(r) = 1/r for the Caratheodory/Kobayashi metric pair."""
    _check_radius(r)
    return 1.0 / r


def pinching_volume(r: float, n: int) -> float:
    """P(r) = r^-2n for any pair of the four volume forms."""
    _check_radius(r)
    _check_squeeze(1.0, n)
    return r ** (-2 * int(n))


def envelope_caratheodory_kobayashi(s: float) -> Envelope:
    # Caratheodory <= Kobayashi everywhere gives the sharp upper factor 1
    _check_squeeze(s)
    return _envelope(s, 1.0, Relation.METRIC_CK, s, 1)


def envelope_kobayashi_bergman(s: float, n: int) -> Envelope:
    _check_squeeze(s, n)
    return _envelope(s, 2.0 ** (n + 2) * math.pi / s ** (n + 1), Relation.METRIC_KB, s, n)


def envelope_kobayashi_ke(s: float, n: int) -> Envelope:
    """
    sqrt(2/n) s K <= KE <= (n / 2s^2)^((n-1)/2) K.

    At n = 1 the factors are (sqrt(2) s, 1), so low > high for s > 1/sqrt(2);
    the envelope is then flagged inconsistent rather than rejected.
    """
    _check_squeeze(s, n)
    low = math.sqrt(2.0 / n) * s
    high = (n / (2.0 * s * s)) ** ((n - 1) / 2.0)
    return _envelope(low, high, Relation.METRIC_KKE, s, n)


def envelope_volume_pair(s: float, n: int, which: Relation) -> Envelope:
    """
    Volume-form envelopes.

    Args:
        s: squeezing lower bound in (0, 1]
        n: complex dimension
        which: VolumeAny, VolumeKB or VolumeKKE

    Returns:
        Envelope with the volume constants for the relation
    """
    _check_squeeze(s, n)
    which = Relation(which)
    s2n = s ** (2 * n)
    if which is Relation.VOLUME_ANY:
        return _envelope(s2n, 1.0 / s2n, which, s, n)
    if which is Relation.VOLUME_KB:
        return _envelope(s2n, (2.0 ** (n + 2) * math.pi / s ** (n + 1)) ** (2 * n), which, s, n)
    if which is Relation.VOLUME_KKE:
        return _envelope((2.0 / n) ** n * s2n, (n / (2.0 * s * s)) ** (n * (n - 1)), which, s, n)
    raise OutOfRange(f"{which.value} is not a volume relation")


def _spot_check_decreasing(name: str, func: Callable[[float], float]):
    values = [func(float(r)) for r in SPOT_CHECK_GRID]
    for r, value in zip(SPOT_CHECK_GRID, values):
        if not (value > 0 and math.isfinite(value)):
            raise OutOfRange(f"{name}({r:.2f}) = {value} is not a positive number")
    for (r0, v0), (r1, v1) in zip(zip(SPOT_CHECK_GRID, values), zip(SPOT_CHECK_GRID[1:], values[1:])):
        if v1 > v0 * (1.0 + 1e-12):
            raise NotDecreasing(f"{name} increases between r = {r0:.2f} and r = {r1:.2f}")


def envelope_general(pFG: Callable[[float], float], pGF: Callable[[float], float], s: float,
                     relation: Relation = Relation.VOLUME_ANY, n: int = 1) -> Envelope:
    """G / P_GF(s) <= F <= P_FG(s) G for positive decreasing pinching functions."""
    if not (0.0 < s < 1.0):
        raise OutOfRange(f"envelope_general needs 0 < s < 1, got {s}")
    _spot_check_decreasing("pFG", pFG)
    _spot_check_decreasing("pGF", pGF)
    return _envelope(1.0 / pGF(s), pFG(s), Relation(relation), s, n)


def envelope_for(relation: Relation, s: float, n: int) -> Envelope:
    relation = Relation(relation)
    if relation is Relation.METRIC_CK:
        envelope = envelope_caratheodory_kobayashi(s)
        return Envelope(envelope.low, envelope.high, relation, s, int(n), envelope.consistent)
    if relation is Relation.METRIC_KB:
        return envelope_kobayashi_bergman(s, n)
    if relation is Relation.METRIC_KKE:
        return envelope_kobayashi_ke(s, n)
    return envelope_volume_pair(s, n, relation)


def parse_relation(text: str) -> Relation:
    """Accepts the enum values and the short names CK, KB, KKE, VolumeAny, ..."""
    aliases = {"CK": Relation.METRIC_CK, "KB": Relation.METRIC_KB, "KKE": Relation.METRIC_KKE}
    key = text.strip()
    if key.upper() in aliases:
        return aliases[key.upper()]
    for relation in Relation:
        if relation.value.lower() == key.lower():
            return relation
    raise OutOfRange(f"Unknown relation '{text}'",
                     hint="Use one of CK, KB, KKE, " + ", ".join(r.value for r in Relation))


def envelope_table(s_values: List[float], dimensions: List[int]) -> pd.DataFrame:
    """All relations over a grid of (s, n); one row per envelope."""
    rows = []
    for n in dimensions:
        for s in s_values:
            for relation in Relation:
                row = envelope_for(relation, s, n).to_dict()
                row["label"] = RELATION_LABELS[relation]
                rows.append(row)
    return pd.DataFrame(rows)

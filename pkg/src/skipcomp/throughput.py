"""Mobility-aware throughput: spectral efficiency, handover rate and cost.

A skipping user alternates between best-connected and blackout phases, so its
long-run spectral efficiency is the arithmetic mean of the two, and it
executes one handover per two cell-boundary crossings (half the conventional
rate).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence

import numpy as np

from . import coverage as cov
from .model import (
    KMH_TO_KMS,
    Association,
    MobilityParams,
    NetworkParams,
    OverheadParams,
    SchemeSpec,
    validate_scheme,
)
from .numerics import DEFAULT_QUAD, integrate_1d

LN2 = math.log(2.0)


@dataclass(frozen=True)
class ThroughputPoint:
    velocity: float            # km/h
    scheme: SchemeSpec
    ho_rate: float             # HO/s
    ho_cost: float             # fraction of time in [0, 1]
    spectral_efficiency: float  # nats/s/Hz (phase-averaged for skipping)
    throughput_nats: float     # nats/s
    ho_delay: float = 0.0      # s

    def __post_init__(self):
        if not (0.0 <= self.ho_cost <= 1.0):
            raise ValueError(f"ho_cost must be in [0,1], got {self.ho_cost}")

    @property
    def throughput_bits(self) -> float:
        return self.throughput_nats / LN2


@lru_cache(maxsize=256)
def spectral_efficiency(scheme: SchemeSpec, params: NetworkParams) -> float:
    """nats/s/Hz from the coverage integral: int_0^inf P(SINR > t)/(1+t) dt."""
    validate_scheme(scheme)
    if scheme.coherent:
        raise cov.CoherentNotAnalytic("coherent scheme is simulation-only")
    res = integrate_1d(
        lambda t: cov.coverage(scheme, params, t) / (1.0 + t),
        0.0, np.inf, DEFAULT_QUAD,
    )
    return res.require()


def skipping_avg_se(se_best: float, se_blackout: float) -> float:
    """Phase-averaged spectral efficiency of a skipping user (50/50 split)."""
    if se_best < 0 or se_blackout < 0:
        raise ValueError("spectral efficiencies must be >= 0")
    return 0.5 * (se_best + se_blackout)


def scheme_spectral_efficiency(scheme: SchemeSpec, params: NetworkParams) -> float:
    """Long-run spectral efficiency the scheme delivers to a mobile user."""
    if scheme.association is Association.BEST_CONNECTED:
        return spectral_efficiency(scheme, params)
    best = SchemeSpec(Association.BEST_CONNECTED)
    return skipping_avg_se(
        spectral_efficiency(best, params), spectral_efficiency(scheme, params)
    )


def ho_rate(velocity_kmh: float, lam: float) -> float:
    """Cell-boundary crossing rate (HO/s) for a user at the given velocity."""
    if velocity_kmh < 0:
        raise ValueError(f"velocity must be >= 0, got {velocity_kmh}")
    return 4.0 * (velocity_kmh * KMH_TO_KMS) * math.sqrt(lam) / math.pi


def ho_cost(scheme: SchemeSpec, rate: float, delay: float) -> float:
    """Fraction of wall-clock time lost to HO signaling, clamped to [0, 1].

    Skipping schemes execute every other handover, so they pay half the rate.
    """
    if rate < 0 or delay < 0:
        raise ValueError("rate and delay must be >= 0")
    if scheme.association is not Association.BEST_CONNECTED:
        rate = rate / 2.0
    return min(1.0, rate * delay)


def average_throughput(scheme: SchemeSpec, params: NetworkParams,
                       mobility: MobilityParams, overhead: OverheadParams,
                       se: float) -> ThroughputPoint:
    """W * R * (1 - u_c) * (1 - D_HO), with zero throughput at saturation."""
    validate_scheme(scheme)
    rate = ho_rate(mobility.velocity, params.lambda_bs)
    cost = ho_cost(scheme, rate, mobility.ho_delay)
    u = (overhead.u_conventional
         if scheme.association is Association.BEST_CONNECTED
         else overhead.u_skipping)
    nats = 0.0 if cost >= 1.0 else params.bandwidth * se * (1.0 - u) * (1.0 - cost)
    return ThroughputPoint(
        velocity=mobility.velocity, scheme=scheme, ho_rate=rate, ho_cost=cost,
        spectral_efficiency=se, throughput_nats=nats, ho_delay=mobility.ho_delay,
    )


def throughput_sweep(params: NetworkParams, schemes: Sequence[SchemeSpec],
                     velocities: Iterable[float], d_values: Iterable[float],
                     overhead: OverheadParams = OverheadParams(),
                     ) -> List[ThroughputPoint]:
    """Cartesian sweep over velocities and HO delays for the given schemes."""
    ses = {s: scheme_spectral_efficiency(s, params) for s in schemes}
    points = []
    for d in d_values:
        for v in velocities:
            mob = MobilityParams(velocity=v, ho_delay=d)
            for s in schemes:
                points.append(average_throughput(s, params, mob, overhead, ses[s]))
    return points

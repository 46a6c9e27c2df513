"""Monte Carlo oracle: PPP realizations, Rayleigh fading, per-scheme SINR.

Randomness contract: trials are processed in fixed-size batches; batch b of a
run with seed s uses an independent Philox counter-based stream keyed by
(s, b).  Identical (seed, trials, batch_size, params) therefore reproduce
results bit-exactly, and batches are independent by construction.

One realization yields the SINR of every scheme variant simultaneously (same
fading and geometry), which keeps paired comparisons (coherent vs
non-coherent, IC vs non-IC) noise-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .coverage import CoverageCurve, CurveSource
from .model import (
    Association,
    NetworkParams,
    OrderedDistances,
    SchemeSpec,
    validate_scheme,
)

#: All simulatable scheme variants, keyed by scheme_id.
ALL_VARIANTS = tuple(
    validate_scheme(s)
    for s in (
        SchemeSpec(Association.BEST_CONNECTED),
        SchemeSpec(Association.SKIP_NO_COOP),
        SchemeSpec(Association.SKIP_NO_COOP, ic=True),
        SchemeSpec(Association.SKIP_COOP),
        SchemeSpec(Association.SKIP_COOP, ic=True),
        SchemeSpec(Association.SKIP_COOP, coherent=True),
        SchemeSpec(Association.SKIP_COOP, ic=True, coherent=True),
    )
)


class TooFewPoints(RuntimeError):
    """A realization produced fewer than 3 BSs in the window."""


def default_window_radius(lam: float, min_expected: float = 500.0) -> float:
    """Radius (km) such that the expected in-window BS count is min_expected."""
    return math.sqrt(min_expected / (math.pi * lam))


@dataclass(frozen=True)
class SimulationSpec:
    trials: int = 100_000
    seed: int = 12345
    batch_size: int = 2000
    window_radius: Optional[float] = None  # None: sized from the intensity

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.window_radius is not None and not (self.window_radius > 0):
            raise ValueError(f"window_radius must be > 0, got {self.window_radius}")

    def radius_for(self, lam: float) -> float:
        r = self.window_radius if self.window_radius is not None \
            else default_window_radius(lam)
        if lam * math.pi * r * r < 100.0:
            raise ValueError(
                "window too small: expected BS count "
                f"{lam * math.pi * r * r:.1f} < 100"
            )
        return r


@dataclass(frozen=True)
class SinrSample:
    scheme: SchemeSpec
    sinr: float
    distances: OrderedDistances

    def __post_init__(self):
        if self.sinr < 0:
            raise ValueError(f"sinr must be >= 0, got {self.sinr}")


@dataclass(frozen=True)
class SimulationResult:
    """Per-variant SINR arrays from a shared set of realizations."""

    sinr: Dict[str, np.ndarray]
    distances: np.ndarray  # (trials, 3)
    redraws: int
    spec: SimulationSpec
    params: NetworkParams


def _batch_rng(seed: int, batch_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), batch_index]))


def sample_ppp(lam: float, window_radius: float,
               rng: np.random.Generator) -> np.ndarray:
    """One PPP realization on a disc around the origin; returns (n, 2) xy km."""
    n = rng.poisson(lam * math.pi * window_radius ** 2)
    r = window_radius * np.sqrt(rng.random(n))
    theta = 2.0 * math.pi * rng.random(n)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def _batch_sinrs(params: NetworkParams, radius: float, n: int,
                 rng: np.random.Generator) -> Tuple[Dict[str, np.ndarray], np.ndarray, int]:
    """Vectorized SINRs of all variants for n independent realizations."""
    lam, eta, p, s2 = params.lambda_bs, params.eta, params.tx_power, params.noise_power
    mu = lam * math.pi * radius ** 2

    counts = rng.poisson(mu, n)
    redraws = 0
    while (counts < 3).any():
        low = counts < 3
        redraws += int(low.sum())
        counts[low] = rng.poisson(mu, int(low.sum()))
    m = int(counts.max())

    # Only distances matter for the SINR; angles are irrelevant by isotropy.
    d = radius * np.sqrt(rng.random((n, m)))
    d[np.arange(m)[None, :] >= counts[:, None]] = np.inf
    d.sort(axis=1)

    h = (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / math.sqrt(2.0)
    gain = np.where(np.isinf(d), 0.0, d ** (-eta))
    power = np.abs(h) ** 2

    total = p * (power * gain).sum(axis=1)
    t1 = p * power[:, 0] * gain[:, 0]
    t2 = p * power[:, 1] * gain[:, 1]
    t3 = p * power[:, 2] * gain[:, 2]

    amp2 = math.sqrt(p) * h[:, 1] * d[:, 1] ** (-eta / 2.0)
    amp3 = math.sqrt(p) * h[:, 2] * d[:, 2] ** (-eta / 2.0)
    num_coop = np.abs(amp2 + amp3) ** 2
    num_coh = (np.abs(amp2) + np.abs(amp3)) ** 2
    i_coop = total - t2 - t3

    sinr = {
        "best": t1 / (total - t1 + s2),
        "skip": t2 / (total - t2 + s2),
        "skip+ic": t2 / (total - t2 - t1 + s2),
        "skip-comp": num_coop / (i_coop + s2),
        "skip-comp+ic": num_coop / (i_coop - t1 + s2),
        "skip-comp+coh": num_coh / (i_coop + s2),
        "skip-comp+ic+coh": num_coh / (i_coop - t1 + s2),
    }
    return sinr, d[:, :3].copy(), redraws


def simulate(params: NetworkParams, spec: SimulationSpec) -> SimulationResult:
    """Run the full simulation; one shared pass covers every scheme variant."""
    radius = spec.radius_for(params.lambda_bs)
    keys = [s.scheme_id for s in ALL_VARIANTS]
    chunks: Dict[str, list] = {k: [] for k in keys}
    dist_chunks = []
    redraws = 0
    done = 0
    batch = 0
    while done < spec.trials:
        n = min(spec.batch_size, spec.trials - done)
        rng = _batch_rng(spec.seed, batch)
        sinr, dists, rd = _batch_sinrs(params, radius, n, rng)
        for k in keys:
            chunks[k].append(sinr[k])
        dist_chunks.append(dists)
        redraws += rd
        done += n
        batch += 1
    return SimulationResult(
        sinr={k: np.concatenate(chunks[k]) for k in keys},
        distances=np.concatenate(dist_chunks),
        redraws=redraws,
        spec=spec,
        params=params,
    )


def sinr_sample(scheme: SchemeSpec, positions: np.ndarray,
                rng: np.random.Generator, params: NetworkParams) -> SinrSample:
    """SINR of one scheme for one explicit PPP realization."""
    validate_scheme(scheme)
    if len(positions) < 3:
        raise TooFewPoints(f"need >= 3 BSs, got {len(positions)}")
    eta, p, s2 = params.eta, params.tx_power, params.noise_power
    d = np.sort(np.hypot(positions[:, 0], positions[:, 1]))
    h = (rng.standard_normal(len(d)) + 1j * rng.standard_normal(len(d))) / math.sqrt(2.0)
    gain = d ** (-eta)
    power = np.abs(h) ** 2
    total = p * (power * gain).sum()
    t1, t2, t3 = (p * power[i] * gain[i] for i in range(3))

    if scheme.association is Association.BEST_CONNECTED:
        num, interf = t1, total - t1
    elif scheme.association is Association.SKIP_NO_COOP:
        num, interf = t2, total - t2
        if scheme.ic:
            interf -= t1
    else:
        amp2 = math.sqrt(p) * h[1] * d[1] ** (-eta / 2.0)
        amp3 = math.sqrt(p) * h[2] * d[2] ** (-eta / 2.0)
        if scheme.coherent:
            num = (abs(amp2) + abs(amp3)) ** 2
        else:
            num = abs(amp2 + amp3) ** 2
        interf = total - t2 - t3
        if scheme.ic:
            interf -= t1
    return SinrSample(
        scheme=scheme,
        sinr=float(num / (interf + s2)),
        distances=OrderedDistances(float(d[0]), float(d[1]), float(d[2])),
    )


def coverage_from_result(result: SimulationResult, scheme: SchemeSpec,
                         thresholds_db: Sequence[float]) -> CoverageCurve:
    """Empirical coverage curve with 95% CI half-widths."""
    validate_scheme(scheme)
    sinr = result.sinr[scheme.scheme_id]
    n = len(sinr)
    values, cis = [], []
    for t_db in thresholds_db:
        t = 10.0 ** (t_db / 10.0)
        phat = float((sinr > t).mean())
        values.append(phat)
        cis.append(1.96 * math.sqrt(phat * (1.0 - phat) / n))
    return CoverageCurve(
        thresholds_db=tuple(thresholds_db), values=tuple(values),
        scheme=scheme, params=result.params, source=CurveSource.MONTE_CARLO,
        ci_halfwidths=tuple(cis),
    )


def empirical_coverage(scheme: SchemeSpec, params: NetworkParams,
                       sim: SimulationSpec,
                       thresholds_db: Sequence[float]) -> CoverageCurve:
    return coverage_from_result(simulate(params, sim), scheme, thresholds_db)


def spectral_efficiency_from_result(result: SimulationResult,
                                    scheme: SchemeSpec) -> Tuple[float, float]:
    """Mean ln(1 + SINR) in nats/s/Hz plus a 95% CI half-width."""
    validate_scheme(scheme)
    logs = np.log1p(result.sinr[scheme.scheme_id])
    n = len(logs)
    return float(logs.mean()), float(1.96 * logs.std(ddof=1) / math.sqrt(n))


def empirical_spectral_efficiency(scheme: SchemeSpec, params: NetworkParams,
                                  sim: SimulationSpec) -> Tuple[float, float]:
    return spectral_efficiency_from_result(simulate(params, sim), scheme)

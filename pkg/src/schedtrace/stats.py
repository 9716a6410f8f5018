"""Sample statistics, histograms and distribution fits for execution times."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import EmptySampleError, SampleDomainError


@dataclass(frozen=True)
class SampleSummary:
    count: int
    total: float
    minimum: float
    maximum: float
    mean: float


@dataclass(frozen=True)
class Histogram:
    """Equal-width bins spanning [min, max]; edges has len(counts) + 1 entries."""

    edges: list[float]
    counts: list[int]


@dataclass(frozen=True)
class ExponentialFit:
    rate_per_us: float
    log_likelihood: float
    ks: float


@dataclass(frozen=True)
class UniformFit:
    lower: float
    upper: float
    ks: float


def summarize(samples: Sequence) -> SampleSummary:
    """Count, sum, min, max and mean of a non-empty sample sequence."""
    xs = list(samples)
    if not xs:
        raise EmptySampleError("cannot summarize zero samples")
    total = sum(xs)
    return SampleSummary(len(xs), total, min(xs), max(xs), total / len(xs))


def histogram(samples: Sequence, bins: int = 20) -> Histogram:
    """Equal-width histogram over [min, max].

    A sample lands in bin floor((x - min) / width), with x == max counted in
    the last bin.  A degenerate range (min == max) collapses to a single
    one-microsecond bin holding every sample, whatever `bins` asked for.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    xs = list(samples)
    if not xs:
        raise EmptySampleError("cannot histogram zero samples")
    lo = min(xs)
    hi = max(xs)
    if lo == hi:
        return Histogram([float(lo), float(lo + 1)], [len(xs)])
    width = (hi - lo) / bins
    counts = [0] * bins
    last = bins - 1
    for x in xs:
        idx = int((x - lo) / width)
        if idx > last:
            idx = last
        counts[idx] += 1
    edges = [lo + (hi - lo) * i / bins for i in range(bins + 1)]
    return Histogram(edges, counts)


def ks_statistic(samples: Sequence, cdf: Callable[[float], float]) -> float:
    """One-sample Kolmogorov-Smirnov distance between samples and a model CDF.

    Supremum over the sorted samples of the gap between the empirical CDF
    (evaluated just before and at each sample) and the model CDF.
    """
    xs = sorted(samples)
    n = len(xs)
    if n == 0:
        raise EmptySampleError("cannot compute a KS statistic on zero samples")
    worst = 0.0
    for i, x in enumerate(xs, 1):
        model = cdf(x)
        below = abs((i - 1) / n - model)
        above = abs(i / n - model)
        if below > worst:
            worst = below
        if above > worst:
            worst = above
    return worst


def fit_exponential(samples: Sequence) -> ExponentialFit:
    """Maximum-likelihood exponential fit: rate = count / sum.

    Requires strictly positive samples; raises SampleDomainError otherwise.
    """
    xs = list(samples)
    if not xs:
        raise EmptySampleError("cannot fit a distribution to zero samples")
    total = sum(xs)
    if min(xs) <= 0:
        raise SampleDomainError("exponential fit requires strictly positive samples")
    n = len(xs)
    rate = n / total
    log_likelihood = n * math.log(rate) - rate * total
    ks = ks_statistic(xs, lambda x: 1.0 - math.exp(-rate * x))
    return ExponentialFit(rate, log_likelihood, ks)


def fit_uniform(samples: Sequence) -> UniformFit:
    """Uniform fit over the sample extremes; ks is 0 for a degenerate range."""
    xs = list(samples)
    if not xs:
        raise EmptySampleError("cannot fit a distribution to zero samples")
    lower = min(xs)
    upper = max(xs)
    if lower == upper:
        return UniformFit(lower, upper, 0.0)
    span = upper - lower
    ks = ks_statistic(xs, lambda x: (x - lower) / span)
    return UniformFit(lower, upper, ks)

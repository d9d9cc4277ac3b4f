"""
Monte Carlo estimates and the sharded estimation engine.

A kernel maps (generator, batch size) to per-sample contributions plus the
number of samples rejected as measure-zero degeneracies (rejected samples
contribute 0 and still count). The engine splits the sample budget into
shards, one generator per shard, runs shards on a thread pool and merges
moments in shard order, so results depend only on (seed, stream, shards).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Tuple

import numpy as np

from measures.rng import RngStream

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 65536
DEFAULT_MAX_WORKERS = 4

Kernel = Callable[[np.random.Generator, int], Tuple[np.ndarray, int]]


@dataclass(frozen=True)
class MCEstimate:
    """A Monte Carlo estimate of an integral.

    Attributes:
        mean: The estimate
        standard_error: Sample standard deviation over sqrt(sample_count)
        sample_count: Number of samples (0 for exact values)
        degenerate_rejections: Samples rejected as measure-zero degeneracies
    """

    mean: float
    standard_error: float
    sample_count: int
    degenerate_rejections: int = 0

    @classmethod
    def exact(cls, value: float) -> "MCEstimate":
        """A deterministic value with zero error."""
        return cls(mean=float(value), standard_error=0.0, sample_count=0)

    @property
    def rejection_fraction(self) -> float:
        if self.sample_count == 0:
            return 0.0
        return self.degenerate_rejections / self.sample_count

    def scaled(self, factor: float) -> "MCEstimate":
        return MCEstimate(
            mean=self.mean * factor,
            standard_error=self.standard_error * abs(factor),
            sample_count=self.sample_count,
            degenerate_rejections=self.degenerate_rejections,
        )

    def __add__(self, other: "MCEstimate") -> "MCEstimate":
        """Sum of independent estimates; errors add in quadrature."""
        return MCEstimate(
            mean=self.mean + other.mean,
            standard_error=math.hypot(self.standard_error, other.standard_error),
            sample_count=self.sample_count + other.sample_count,
            degenerate_rejections=self.degenerate_rejections + other.degenerate_rejections,
        )

    def ratio(self, other: "MCEstimate") -> "MCEstimate":
        """Quotient of independent estimates with a delta-method standard error."""
        if other.mean == 0:
            raise ZeroDivisionError("Ratio with a zero denominator estimate")
        value = self.mean / other.mean
        if self.mean == 0:
            error = self.standard_error / abs(other.mean)
        else:
            error = abs(value) * math.hypot(
                self.standard_error / self.mean, other.standard_error / other.mean
            )
        return MCEstimate(
            mean=value,
            standard_error=error,
            sample_count=self.sample_count + other.sample_count,
            degenerate_rejections=self.degenerate_rejections + other.degenerate_rejections,
        )


def sum_estimates(estimates: List[MCEstimate]) -> MCEstimate:
    total = MCEstimate.exact(0.0)
    for estimate in estimates:
        total = total + estimate
    return total


def z_score(lhs: MCEstimate, rhs: MCEstimate, exact_tolerance: float = 1e-12) -> float:
    """(lhs - rhs) / sqrt(se_lhs^2 + se_rhs^2).

    When both sides are exact the comparison is against `exact_tolerance`
    (relative), giving 0 on agreement and infinity otherwise.
    """
    difference = lhs.mean - rhs.mean
    error = math.hypot(lhs.standard_error, rhs.standard_error)
    if error > 0:
        return difference / error
    scale = max(1.0, abs(lhs.mean), abs(rhs.mean))
    if abs(difference) <= exact_tolerance * scale:
        return 0.0
    return math.copysign(math.inf, difference)


@dataclass
class RunningMoments:
    """Count, mean and sum of squared deviations, merged with Chan's update.

    Values may be scalars per sample or vectors (one column per estimated
    quantity); `mean` and `m2` then have one entry per column.
    """

    count: int = 0
    mean: np.ndarray = field(default_factory=lambda: np.zeros(()))
    m2: np.ndarray = field(default_factory=lambda: np.zeros(()))
    rejected: int = 0

    def add(self, values: np.ndarray, rejected: int = 0) -> None:
        values = np.asarray(values, dtype=float)
        if values.shape[0] == 0:
            self.rejected += int(rejected)
            return
        mean = values.mean(axis=0)
        batch = RunningMoments(
            count=int(values.shape[0]),
            mean=mean,
            m2=((values - mean) ** 2).sum(axis=0),
            rejected=int(rejected),
        )
        self.merge(batch)

    def merge(self, other: "RunningMoments") -> None:
        if other.count == 0:
            self.rejected += other.rejected
            return
        total = self.count + other.count
        delta = other.mean - self.mean
        self.mean = self.mean + delta * other.count / total
        self.m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / total
        self.count = total
        self.rejected += other.rejected

    def estimates(self) -> List[MCEstimate]:
        """One estimate per column (a single estimate for scalar values)."""
        means = np.atleast_1d(self.mean)
        if self.count < 2:
            errors = np.full(means.shape, math.inf)
        else:
            errors = np.sqrt(np.atleast_1d(self.m2) / (self.count - 1) / self.count)
        return [
            MCEstimate(
                mean=float(mean),
                standard_error=float(error),
                sample_count=self.count,
                degenerate_rejections=self.rejected,
            )
            for mean, error in zip(means, errors)
        ]

    def estimate(self) -> MCEstimate:
        return self.estimates()[0]


def shard_sizes(n_samples: int, shards: int) -> List[int]:
    base, extra = divmod(n_samples, shards)
    return [base + (1 if i < extra else 0) for i in range(shards)]


def _run_shard(
    kernel: Kernel, stream: RngStream, shard: int, size: int, batch_size: int
) -> RunningMoments:
    generator = stream.generator(shard)
    moments = RunningMoments()
    remaining = size
    while remaining > 0:
        count = min(batch_size, remaining)
        values, rejected = kernel(generator, count)
        moments.add(values, rejected)
        remaining -= count
    logger.debug(
        f"Shard {shard} of stream {stream.stream_id}: {moments.count} samples, "
        f"{moments.rejected} rejected"
    )
    return moments


def collect(
    kernel: Kernel,
    n_samples: int,
    stream: RngStream,
    shards: int = 1,
    batch_size: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> RunningMoments:
    """Run a kernel for n_samples samples and merge the shard moments in order.

    Args:
        kernel: Function (generator, size) -> (values, rejected count)
        n_samples: Total number of samples
        stream: Random stream; shard i draws from stream.generator(i)
        shards: Number of shards
        batch_size: Samples per kernel call
        max_workers: Thread pool width

    Returns:
        The merged moments
    """
    if n_samples < 1:
        raise ValueError(f"Need at least one sample, got {n_samples}")
    shards = max(1, min(shards, n_samples))
    batch_size = batch_size or DEFAULT_BATCH_SIZE
    sizes = shard_sizes(n_samples, shards)
    if shards == 1:
        results = [_run_shard(kernel, stream, 0, sizes[0], batch_size)]
    else:
        with ThreadPoolExecutor(max_workers=max_workers or DEFAULT_MAX_WORKERS) as pool:
            futures = [
                pool.submit(_run_shard, kernel, stream, shard, size, batch_size)
                for shard, size in enumerate(sizes)
            ]
            results = [future.result() for future in futures]
    merged = RunningMoments()
    for moments in results:
        merged.merge(moments)
    return merged


def estimate(
    kernel: Kernel,
    n_samples: int,
    stream: RngStream,
    shards: int = 1,
    batch_size: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> MCEstimate:
    """Estimate the mean of a scalar kernel."""
    return collect(kernel, n_samples, stream, shards, batch_size, max_workers).estimate()


@dataclass(frozen=True)
class EstimatorOptions:
    """Sampling options shared by every estimator of one case."""

    n_samples: int
    stream: RngStream
    shards: int = 1
    batch_size: Optional[int] = None
    max_workers: Optional[int] = None

    def substream(self, offset: int) -> "EstimatorOptions":
        return replace(self, stream=self.stream.substream(offset))

    def with_samples(self, n_samples: int) -> "EstimatorOptions":
        return replace(self, n_samples=n_samples)

    def collect(self, kernel: Kernel) -> RunningMoments:
        return collect(
            kernel,
            self.n_samples,
            self.stream,
            shards=self.shards,
            batch_size=self.batch_size,
            max_workers=self.max_workers,
        )

    def run(self, kernel: Kernel) -> MCEstimate:
        return self.collect(kernel).estimate()

    def run_many(self, kernel: Kernel) -> List[MCEstimate]:
        """Estimates of every column of a vector-valued kernel, from shared samples."""
        return self.collect(kernel).estimates()

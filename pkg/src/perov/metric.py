"""Vector-valued metrics on R^n.

The workhorse is the matrix-weighted family d(x, y) = W |x - y| with a
strictly positive weight matrix, which distributes one scalar displacement
into a vector of coupled distance components. A sampling checker probes
user-supplied candidates against the three metric axioms; sampling can only
falsify, so a clean report means "no violation found", not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import UsageError
from .ordered_algebra import SquareMatrix, Vector, _same_dim
from .sampling import Sampler

__all__ = [
    "WeightedMatrixMetric",
    "MetricAxiomReport",
    "metric_eval",
    "check_metric_axioms",
    "converged",
]

MetricFn = Callable[[Vector, Vector], Vector]


@dataclass(frozen=True, eq=False)
class WeightedMatrixMetric:
    """d(x, y) = W |x - y| componentwise, W strictly positive."""

    weight: SquareMatrix

    def __post_init__(self):
        if not np.all(self.weight.entries > 0.0):
            raise UsageError("metric weight entries must be strictly positive")

    @property
    def n(self) -> int:
        return self.weight.n

    def __call__(self, x: Vector, y: Vector) -> Vector:
        return metric_eval(self, x, y)


def metric_eval(m: WeightedMatrixMetric, x: Vector, y: Vector) -> Vector:
    """Evaluate the weighted metric; the result lies in the cone."""
    _same_dim(m.n, x.n)
    _same_dim(m.n, y.n)
    return Vector._wrap(m.weight.entries @ np.abs(x.components - y.components))


@dataclass
class MetricAxiomReport:
    """Outcome of a sampling run over the three metric axioms.

    Violation entries carry the witnessing points and the offending distance
    vectors, so failures are reproducible by hand.
    """

    samples_tested: int
    d1_violations: list = field(default_factory=list)
    d2_violations: list = field(default_factory=list)
    d3_violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.d1_violations or self.d2_violations or self.d3_violations)


def check_metric_axioms(
    metric: MetricFn,
    sampler: Sampler,
    count: int,
    slack: float = 1e-12,
) -> MetricAxiomReport:
    """Probe a candidate metric with sampled triples.

    Per triple (x, y, z):
      d1: d(x, y) has no negative component, d(x, x) = 0 exactly, and
          x != y implies d(x, y) != 0;
      d2: d(x, y) = d(y, x) exactly;
      d3: d(x, z) + d(z, y) - d(x, y) >= -slack componentwise.

    The slack covers only the floating arithmetic of the triangle sum; the
    sign tests for d1 and d2 are exact.
    """
    if count < 1:
        raise UsageError("sample count must be at least 1")
    report = MetricAxiomReport(samples_tested=count)
    neg_slack = -slack
    for _ in range(count):
        x, y, z = sampler(), sampler(), sampler()
        dxy = metric(x, y).components
        if (dxy < 0.0).any():
            report.d1_violations.append((x, y, Vector(dxy)))
        dxx = metric(x, x).components
        if dxx.any():
            report.d1_violations.append((x, x, Vector(dxx)))
        if not dxy.any() and not np.array_equal(x.components, y.components):
            report.d1_violations.append((x, y, Vector(dxy)))
        dyx = metric(y, x).components
        if not np.array_equal(dxy, dyx):
            report.d2_violations.append((x, y, Vector(dxy), Vector(dyx)))
        dxz = metric(x, z).components
        dzy = metric(z, y).components
        if ((dxz + dzy - dxy) < neg_slack).any():
            report.d3_violations.append(
                (x, y, z, Vector(dxy), Vector(dxz), Vector(dzy))
            )
    return report


def converged(dist: Vector, eps: Vector) -> bool:
    """Strong-order convergence test: dist strictly below eps componentwise.

    eps must be interior (all components positive); a non-interior eps can
    never witness convergence and is a usage error.
    """
    _same_dim(dist.n, eps.n)
    if not np.all(eps.components > 0.0):
        raise UsageError("eps must be interior: every component strictly positive")
    return bool(np.all(eps.components - dist.components > 0.0))

"""Fixed-point and coincidence-point iteration under vector-valued metrics.

perov_solve iterates a self-map whose displacement is dominated, in the
cone order, by a certified matrix coefficient; the certificate's series sum
turns the first step distance into a componentwise a-priori bound on the
distance to the limit, which drives the stopping rule.

jungck_solve runs the coincidence iteration f(x_j) = g(x_{j+1}) for a pair
of maps sharing the same coefficient, with g inverted through a supplied
oracle. comparison_solve replaces the matrix coefficient by a comparison
function and verifies the contraction condition online at every step, since
a general comparison function admits no computable tail bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .contraction import (
    ContractionCertificate,
    check_comparison_axioms,
)
from .errors import EvaluationError, PreimageError, UsageError
from .metric import MetricFn, WeightedMatrixMetric
from .ordered_algebra import SquareMatrix, Vector, mat_apply, sup_norm
from .sampling import Sampler, cone_sampler

__all__ = [
    "MapSpec",
    "identity_map",
    "affine_preimage",
    "SolveStatus",
    "IterationTrace",
    "SolveResult",
    "LipschitzReport",
    "ConditionCReport",
    "verify_matrix_lipschitz",
    "verify_condition_c",
    "apriori_bound",
    "perov_solve",
    "jungck_solve",
    "comparison_solve",
    "PREIMAGE_TOL",
    "WEAK_COMPAT_TOL",
]

MapFn = Callable[[Vector], Vector]

# Residual allowed for a preimage oracle, in the sup norm.
PREIMAGE_TOL = 1e-12

# Commutation residual below which two maps count as weakly compatible at a
# coincidence point.
WEAK_COMPAT_TOL = 1e-8

_TAG_FUNCS = {
    "identity": lambda z: z,
    "sin": np.sin,
    "cos": np.cos,
    "tanh": np.tanh,
    "atan": np.arctan,
}


@dataclass(frozen=True, eq=False)
class MapSpec:
    """A declaratively specified map on R^n.

    Two kinds are supported:
      affine:                  x -> M x + b
      componentwise-nonlinear: x -> M u + b with u_i = tag_i((L x + d)_i),
    where each tag names a scalar function from the fixed catalog
    (identity, sin, cos, tanh, atan).
    """

    kind: str
    M: SquareMatrix
    b: Vector
    L: SquareMatrix | None = None
    d: Vector | None = None
    tags: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("affine", "componentwise-nonlinear"):
            raise UsageError(f"unknown map kind {self.kind!r}")
        n = self.M.n
        if self.b.n != n:
            raise UsageError("map offset dimension must match the matrix")
        if self.kind == "affine":
            if self.L is not None or self.d is not None or self.tags is not None:
                raise UsageError("affine maps take only M and b")
        else:
            if self.L is None or self.d is None or self.tags is None:
                raise UsageError("componentwise maps need L, d, and tags")
            if self.L.n != n or self.d.n != n:
                raise UsageError("inner affine stage dimension must match the matrix")
            if len(self.tags) != n:
                raise UsageError("one tag per component is required")
            unknown = [t for t in self.tags if t not in _TAG_FUNCS]
            if unknown:
                raise UsageError(
                    f"unknown tags {unknown!r}; catalog: {sorted(_TAG_FUNCS)}"
                )
            object.__setattr__(self, "tags", tuple(self.tags))

    @property
    def n(self) -> int:
        return self.M.n

    @classmethod
    def affine(cls, M: SquareMatrix, b: Vector) -> "MapSpec":
        return cls(kind="affine", M=M, b=b)

    @classmethod
    def componentwise(
        cls,
        M: SquareMatrix,
        b: Vector,
        L: SquareMatrix,
        d: Vector,
        tags: tuple[str, ...],
    ) -> "MapSpec":
        return cls(kind="componentwise-nonlinear", M=M, b=b, L=L, d=d, tags=tags)

    def __call__(self, x: Vector) -> Vector:
        if x.n != self.n:
            raise UsageError("point dimension does not match the map")
        # overflow becomes a typed error below, not a numpy warning
        with np.errstate(over="ignore", invalid="ignore"):
            if self.kind == "affine":
                raw = self.M.entries @ x.components + self.b.components
            else:
                z = self.L.entries @ x.components + self.d.components
                u = np.array([_TAG_FUNCS[tag](zi) for tag, zi in zip(self.tags, z)])
                raw = self.M.entries @ u + self.b.components
        if not np.all(np.isfinite(raw)):
            raise EvaluationError("map evaluation produced a non-finite value")
        return Vector(raw)


def identity_map(n: int) -> MapSpec:
    return MapSpec.affine(SquareMatrix.identity(n), Vector.zeros(n))


def affine_preimage(g: MapSpec) -> MapFn:
    """Invert an affine map, as an oracle y -> x with g(x) = y.

    The matrix must be invertible; singularity is a usage error raised here
    rather than at the first call.
    """
    if g.kind != "affine":
        raise UsageError("only affine maps can be auto-inverted")
    m = np.array(g.M.entries)
    b = np.array(g.b.components)
    try:
        np.linalg.solve(m, np.zeros(g.n))
    except np.linalg.LinAlgError as exc:
        raise UsageError("map matrix is singular; supply a preimage oracle") from exc

    def solve(y: Vector) -> Vector:
        return Vector(np.linalg.solve(m, y.components - b))

    return solve


class SolveStatus(enum.Enum):
    CONVERGED = "converged"
    BUDGET_EXHAUSTED = "budget_exhausted"
    HYPOTHESIS_VIOLATED = "hypothesis_violated"


@dataclass
class IterationTrace:
    """Recorded run of an iteration.

    points holds the value sequence (for coincidence runs, g(x_0) followed
    by the common values f(x_j) = g(x_{j+1})). step_dists[i] is the metric
    distance between points[i] and points[i+1]; bounds[i] is the matching
    bound vector, so both are one entry shorter than points.
    """

    points: list[Vector]
    step_dists: list[Vector]
    bounds: list[Vector]
    status: SolveStatus

    def __post_init__(self):
        if len(self.step_dists) != len(self.points) - 1:
            raise UsageError("trace step distances must be one shorter than points")
        if len(self.bounds) != len(self.step_dists):
            raise UsageError("trace bounds must align with step distances")

    @property
    def iterations(self) -> int:
        return len(self.step_dists)


@dataclass
class SolveResult:
    point: Vector
    value: Vector
    trace: IterationTrace
    certificate_used: object
    weakly_compatible: bool | None = None
    common_fixed_point: Vector | None = None
    hypothesis_witness: dict | None = None


@dataclass
class LipschitzReport:
    samples_tested: int
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class ConditionCReport:
    """Sampled check of the three-branch contraction condition.

    branch_counts[i] counts samples whose first satisfied branch was i:
    0 compares against d(gx, gy), 1 against d(gx, fx), 2 against d(gy, fy).
    """

    samples_tested: int
    violations: list = field(default_factory=list)
    branch_counts: list = field(default_factory=lambda: [0, 0, 0])

    @property
    def passed(self) -> bool:
        return not self.violations


def _ll(a: Vector, b: Vector) -> bool:
    return bool(np.all(b.components - a.components > 0.0))


def _validate_eps(eps: Vector) -> None:
    if not np.all(eps.components > 0.0):
        raise UsageError("eps must be interior: every component strictly positive")


def _checked_preimage(g_solve: MapFn, g: MapFn, y: Vector) -> Vector:
    x = g_solve(y)
    residual = sup_norm(g(x) - y)
    if not residual <= PREIMAGE_TOL:
        raise PreimageError(
            f"preimage oracle residual {residual!r} exceeds {PREIMAGE_TOL!r}"
        )
    return x


def verify_matrix_lipschitz(
    f: MapFn,
    g: MapFn,
    k: SquareMatrix,
    metric: MetricFn,
    sampler: Sampler,
    count: int,
    slack: float = 1e-12,
) -> LipschitzReport:
    """Sample pairs and test d(f x, f y) <= k d(g x, g y) within slack."""
    if count < 1:
        raise UsageError("sample count must be at least 1")
    if np.any(k.entries < 0.0):
        raise UsageError("coefficient matrix must have nonnegative entries")
    report = LipschitzReport(samples_tested=count)
    for _ in range(count):
        x, y = sampler(), sampler()
        lhs = metric(f(x), f(y))
        rhs = mat_apply(k, metric(g(x), g(y)))
        if np.any(rhs.components - lhs.components < -slack):
            report.violations.append((x, y, lhs, rhs))
    return report


def verify_condition_c(
    f: MapFn,
    g: MapFn,
    phi: Callable[[Vector], Vector],
    metric: MetricFn,
    sampler: Sampler,
    count: int,
    slack: float = 1e-12,
) -> ConditionCReport:
    """Sample pairs and test the three-branch comparison condition.

    A pair passes when d(f x, f y) <= phi(u) + slack for at least one of
    u = d(g x, g y), d(g x, f x), d(g y, f y); the first satisfied branch
    is tallied.
    """
    if count < 1:
        raise UsageError("sample count must be at least 1")
    report = ConditionCReport(samples_tested=count)
    for _ in range(count):
        x, y = sampler(), sampler()
        fx, fy, gx, gy = f(x), f(y), g(x), g(y)
        lhs = metric(fx, fy)
        candidates = (metric(gx, gy), metric(gx, fx), metric(gy, fy))
        for idx, u in enumerate(candidates):
            rhs = phi(u)
            if np.all(rhs.components - lhs.components >= -slack):
                report.branch_counts[idx] += 1
                break
        else:
            report.violations.append((x, y, lhs) + candidates)
    return report


def apriori_bound(cert: ContractionCertificate, d0: Vector, n: int) -> Vector:
    """The bound vector k^n S d0 on the distance from iterate n to the limit."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise UsageError("iteration index must be a nonnegative integer")
    if d0.n != cert.n:
        raise UsageError("distance dimension does not match the certificate")
    if np.any(d0.components < 0.0):
        raise UsageError("d0 must lie in the cone")
    kn = np.linalg.matrix_power(cert.k.entries, int(n))
    return Vector(kn @ (cert.S.entries @ d0.components))


def _validate_common(metric, x0: Vector, eps: Vector, budget: int) -> None:
    n = getattr(metric, "n", x0.n)
    if x0.n != n or eps.n != n:
        raise UsageError("start point, eps, and metric must share a dimension")
    _validate_eps(eps)
    if budget < 1:
        raise UsageError("budget must be at least 1")


def perov_solve(
    f: MapFn,
    metric: MetricFn,
    cert: ContractionCertificate,
    x0: Vector,
    eps: Vector,
    budget: int = 100_000,
) -> SolveResult:
    """Iterate a certified self-map to its fixed point.

    Stops once the a-priori bound k^i S d0 or the halved step distance falls
    strictly below eps; the returned point always satisfies
    d(f(point), point) strictly below eps componentwise.
    """
    _validate_common(metric, x0, eps, budget)
    if cert.n != x0.n:
        raise UsageError("certificate dimension does not match the start point")
    eps_half = 0.5 * eps
    points = [x0]
    dists: list[Vector] = []
    bounds: list[Vector] = []
    status = SolveStatus.BUDGET_EXHAUSTED
    x = x0
    bound: Vector | None = None
    for i in range(budget):
        x_next = f(x)
        d_i = metric(x, x_next)
        bound = mat_apply(cert.S, d_i) if i == 0 else mat_apply(cert.k, bound)
        points.append(x_next)
        dists.append(d_i)
        bounds.append(bound)
        x = x_next
        if (_ll(bound, eps) or _ll(d_i, eps_half)) and _ll(d_i, eps):
            residual = metric(f(x), x)
            if _ll(residual, eps):
                status = SolveStatus.CONVERGED
                break
    trace = IterationTrace(points, dists, bounds, status)
    return SolveResult(point=x, value=x, trace=trace, certificate_used=cert)


def _weak_compat_and_polish(
    f: MapFn,
    g: MapFn,
    g_solve: MapFn,
    metric: MetricFn,
    p: Vector,
    eps: Vector,
    extra_budget: int = 64,
) -> tuple[bool, Vector | None]:
    """Check commutation at a coincidence point and polish the common point.

    Weak compatibility asks f(g p) = g(f p) at the coincidence point only.
    When it holds, the shared value is the unique common fixed point; a few
    more pushes through f after g-inversion refine it.
    """
    fp = f(p)
    gp = g(p)
    gap = sup_norm(f(gp) - g(fp))
    compatible = gap <= WEAK_COMPAT_TOL
    if not compatible:
        return False, None
    target = 0.01 * eps
    z = fp
    for _ in range(extra_budget):
        z_next = f(_checked_preimage(g_solve, g, z))
        step = metric(z, z_next)
        z = z_next
        if np.all(step.components == 0.0) or _ll(step, target):
            break
    return True, z


def jungck_solve(
    f: MapFn,
    g: MapFn,
    g_solve: MapFn,
    metric: MetricFn,
    cert: ContractionCertificate,
    x0: Vector,
    eps: Vector,
    budget: int = 100_000,
) -> SolveResult:
    """Drive the coincidence iteration f(x_j) = g(x_{j+1}) to its limit.

    g is inverted through g_solve, whose residual is checked at every step
    (a breach raises PreimageError). On convergence the result carries the
    coincidence point p, the value g(p), the weak-compatibility verdict at
    p, and, when that verdict holds, the polished common fixed point.
    """
    _validate_common(metric, x0, eps, budget)
    if cert.n != x0.n:
        raise UsageError("certificate dimension does not match the start point")
    eps_half = 0.5 * eps
    gx0 = g(x0)
    points = [gx0]
    dists: list[Vector] = []
    bounds: list[Vector] = []
    status = SolveStatus.BUDGET_EXHAUSTED
    x = x0
    prev_val = gx0
    p = x0
    bound: Vector | None = None
    for j in range(budget):
        y = f(x)
        d_j = metric(prev_val, y)
        bound = mat_apply(cert.S, d_j) if j == 0 else mat_apply(cert.k, bound)
        points.append(y)
        dists.append(d_j)
        bounds.append(bound)
        x_next = _checked_preimage(g_solve, g, y)
        if (_ll(bound, eps) or _ll(d_j, eps_half)) and _ll(d_j, eps):
            residual = metric(f(x_next), g(x_next))
            if _ll(residual, eps):
                status = SolveStatus.CONVERGED
                p = x_next
                break
        prev_val = y
        x = x_next
    if status is not SolveStatus.CONVERGED:
        p = x
    trace = IterationTrace(points, dists, bounds, status)
    value = g(p)
    weak: bool | None = None
    common: Vector | None = None
    if status is SolveStatus.CONVERGED:
        weak, common = _weak_compat_and_polish(f, g, g_solve, metric, p, eps)
    return SolveResult(
        point=p,
        value=value,
        trace=trace,
        certificate_used=cert,
        weakly_compatible=weak,
        common_fixed_point=common,
    )


def comparison_solve(
    f: MapFn,
    g: MapFn,
    g_solve: MapFn,
    phi: Callable[[Vector], Vector],
    metric: MetricFn,
    x0: Vector,
    eps: Vector,
    budget: int = 100_000,
    *,
    precheck_samples: int = 128,
    precheck_seed: int = 1,
    slack: float = 1e-12,
) -> SolveResult:
    """Coincidence iteration contracted by a comparison function.

    phi is screened on a preliminary cone sample before iterating; a failed
    screen, like a failed online step check, ends the run with status
    HYPOTHESIS_VIOLATED and a witness attached. The online check requires
    every step distance to be dominated by phi of the previous one (within
    slack), which is exactly the chain the convergence argument rests on.

    An exactly stationary step means the current point is an exact
    coincidence point and ends the run immediately.
    """
    _validate_common(metric, x0, eps, budget)
    n = x0.n
    precheck = check_comparison_axioms(
        phi, cone_sampler(n, seed=precheck_seed), precheck_samples
    )
    if not precheck.passed:
        gx0 = g(x0)
        trace = IterationTrace([gx0], [], [], SolveStatus.HYPOTHESIS_VIOLATED)
        return SolveResult(
            point=x0,
            value=gx0,
            trace=trace,
            certificate_used=phi,
            hypothesis_witness={"stage": "comparison-axioms", "report": precheck},
        )
    eps_half = 0.5 * eps
    gx0 = g(x0)
    points = [gx0]
    dists: list[Vector] = []
    bounds: list[Vector] = []
    status = SolveStatus.BUDGET_EXHAUSTED
    witness: dict | None = None
    x = x0
    prev_val = gx0
    prev_d: Vector | None = None
    bound: Vector | None = None
    p = x0
    for j in range(budget):
        y = f(x)
        d_j = metric(prev_val, y)
        bound = d_j if j == 0 else phi(bound)
        points.append(y)
        dists.append(d_j)
        bounds.append(bound)
        if j >= 1:
            dominated = phi(prev_d)
            if np.any(dominated.components - d_j.components < -slack):
                status = SolveStatus.HYPOTHESIS_VIOLATED
                witness = {
                    "stage": "online-step",
                    "step": j,
                    "step_dist": d_j,
                    "previous_dist": prev_d,
                    "comparison_value": dominated,
                }
                p = x
                break
        if np.all(d_j.components == 0.0):
            # The current point is an exact coincidence point.
            status = SolveStatus.CONVERGED
            p = x
            break
        x_next = _checked_preimage(g_solve, g, y)
        if _ll(d_j, eps_half):
            residual = metric(f(x_next), g(x_next))
            if _ll(residual, eps):
                status = SolveStatus.CONVERGED
                p = x_next
                break
        prev_val = y
        prev_d = d_j
        x = x_next
    else:
        p = x
    trace = IterationTrace(points, dists, bounds, status)
    value = g(p)
    weak: bool | None = None
    common: Vector | None = None
    if status is SolveStatus.CONVERGED:
        weak, common = _weak_compat_and_polish(f, g, g_solve, metric, p, eps)
    return SolveResult(
        point=p,
        value=value,
        trace=trace,
        certificate_used=phi,
        weakly_compatible=weak,
        common_fixed_point=common,
        hypothesis_witness=witness,
    )

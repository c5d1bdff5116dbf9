"""Contraction certificates and comparison functions.

A nonnegative matrix k is usable as a contraction coefficient when its
Neumann series 1 + k + k^2 + ... converges; spectral radius below one is
the certificate this module establishes. The certified sum S = (1 - k)^-1
is what turns per-step distances into componentwise a-priori error bounds.

Comparison functions generalize the linear coefficient: phi maps the cone
into itself, shrinks every nonzero argument in the cone order, and its
iterates fall below any interior threshold. The sampling checker probes
those axioms; like all sampling it can only falsify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConvergenceFailure, NotCertifiedError, UsageError
from .ordered_algebra import SquareMatrix, Vector, mat_apply, ring_norm
from .sampling import Sampler

__all__ = [
    "ContractionCertificate",
    "LinearComparison",
    "ComparisonAxiomReport",
    "spectral_radius",
    "gelfand_spectral_estimate",
    "neumann_sum",
    "certify_contraction",
    "linear_comparison",
    "comparison_apply",
    "check_comparison_axioms",
    "CERT_RESIDUAL_MAX",
]

# Hard cap on the certificate residual ring_norm((1 - k) S - 1).
CERT_RESIDUAL_MAX = 1e-10

# Internal tolerance for the Neumann tail when building certificates; keeps
# the residual two orders of magnitude inside CERT_RESIDUAL_MAX.
_SERIES_TOL = 1e-12

_GELFAND_DOUBLINGS = 60


def _row_sum_norm(m: np.ndarray) -> float:
    return float(np.max(np.sum(np.abs(m), axis=1)))


def _require_nonnegative(a: SquareMatrix, what: str) -> None:
    if np.any(a.entries < 0.0):
        raise UsageError(f"{what} must have nonnegative entries")


def _gelfand(m: np.ndarray) -> tuple[float, float]:
    """Norm-root estimate of the spectral radius, with its last drift.

    Evaluates ring_norm(A^p)^(1/p) at p = 2^60 by renormalized repeated
    squaring. Renormalizing before each squaring keeps entries in range,
    and the huge exponent washes out the constant that makes the norm-root
    sequence slow at small powers. Returns (estimate, last step change).
    """
    b = np.array(m, dtype=float)
    norm = _row_sum_norm(b)
    if norm == 0.0:
        return 0.0, 0.0
    log_scale = 0.0
    power = 1
    est = norm
    prev = est
    for _ in range(_GELFAND_DOUBLINGS):
        b = b / norm
        log_scale += math.log(norm)
        b = b @ b
        power *= 2
        log_scale *= 2.0
        norm = _row_sum_norm(b)
        if not math.isfinite(norm):
            raise ConvergenceFailure("norm overflow while squaring powers")
        if norm == 0.0:
            # An exact zero power: the matrix is nilpotent.
            return 0.0, prev
        prev = est
        est = math.exp((log_scale + math.log(norm)) / power)
    return est, abs(est - prev)


def gelfand_spectral_estimate(a: SquareMatrix) -> float:
    """Spectral radius of a nonnegative matrix from norms of matrix powers.

    Deterministic companion to the power iteration in spectral_radius; the
    two must agree, and this one also covers reducible matrices where the
    iteration bracket cannot close.
    """
    _require_nonnegative(a, "matrix")
    est, _ = _gelfand(a.entries)
    return est


def _power_bracket(
    m: np.ndarray, tol: float, budget: int, seed: int
) -> tuple[float, float, bool]:
    """Power iteration with a ratio bracket.

    For a positive iterate x the ratios (A x)_i / x_i bracket the spectral
    radius; the bracket closes for primitive matrices and stalls for
    reducible or periodic ones, which is the caller's cue to fall back.
    """
    n = m.shape[0]
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.5, 1.5, n)
    lo = math.nan
    hi = math.nan
    for _ in range(budget):
        y = m @ x
        support = x > 0.0
        if not support.any():
            return lo, hi, False
        ratios = y[support] / x[support]
        lo = float(ratios.min())
        hi = float(ratios.max())
        if hi - lo <= 0.5 * tol:
            return lo, hi, True
        top = float(y.max())
        if top <= 0.0:
            return lo, hi, False
        x = y / top
    return lo, hi, False


def spectral_radius(
    a: SquareMatrix, tol: float, *, budget: int = 100_000, seed: int = 0
) -> float:
    """Estimate the spectral radius of a nonnegative matrix to within tol.

    Power iteration from a random positive start supplies a bracket whose
    midpoint is returned once the bracket closes and agrees with the
    norm-root estimate; otherwise the norm-root estimate stands on its own
    (reducible and periodic matrices land here). Raises ConvergenceFailure,
    carrying the last bracket, only if neither route stabilizes.
    """
    _require_nonnegative(a, "matrix")
    if not tol > 0.0:
        raise UsageError("tol must be positive")
    if budget < 1:
        raise UsageError("budget must be at least 1")
    gelfand_est, drift = _gelfand(a.entries)
    lo, hi, bracket_ok = _power_bracket(a.entries, tol, budget, seed)
    if bracket_ok:
        power_est = 0.5 * (lo + hi)
        if abs(power_est - gelfand_est) <= max(tol, 1e-9):
            return power_est
    if drift <= max(tol, 1e-9) * max(1.0, gelfand_est):
        return gelfand_est
    raise ConvergenceFailure(
        f"spectral radius estimate did not stabilize within budget {budget}; "
        f"last bracket [{lo!r}, {hi!r}]",
        bracket=(lo, hi),
    )


def _neumann(m: np.ndarray, tol: float, budget: int) -> tuple[np.ndarray, int]:
    n = m.shape[0]
    total = np.eye(n)
    term = np.array(m, dtype=float)
    terms = 1
    while True:
        total = total + term
        terms += 1
        term = term @ m
        tail_norm = _row_sum_norm(term)
        if not math.isfinite(tail_norm):
            raise ConvergenceFailure(
                "power series blew up; the spectral radius is not below 1"
            )
        if tail_norm < 1.0:
            # The tail is term * S; bound ring_norm(S) through the partial sum.
            hint = _row_sum_norm(total) / (1.0 - tail_norm)
            if tail_norm * hint <= tol:
                return total, terms
        if terms > budget:
            raise ConvergenceFailure(
                f"power series did not reach tolerance {tol!r} within {budget} terms"
            )


def neumann_sum(a: SquareMatrix, tol: float, *, budget: int = 200_000) -> SquareMatrix:
    """Sum of the power series 1 + a + a^2 + ... by accumulated partial sums.

    The caller is responsible for the spectral radius being below one;
    divergence surfaces as ConvergenceFailure. Accumulation stops once the
    certified tail bound drops to tol.
    """
    _require_nonnegative(a, "matrix")
    if not tol > 0.0:
        raise UsageError("tol must be positive")
    total, _ = _neumann(a.entries, tol, budget)
    return SquareMatrix(total)


@dataclass(frozen=True, eq=False)
class ContractionCertificate:
    """Evidence that k admits a convergent power series.

    Holds the spectral radius estimate, the series sum S, the number of
    accumulated terms, and the verification residual
    ring_norm((1 - k) S - 1), which must not exceed CERT_RESIDUAL_MAX.
    """

    k: SquareMatrix
    rho: float
    S: SquareMatrix
    series_terms: int
    residual: float

    def __post_init__(self):
        _require_nonnegative(self.k, "certified matrix")
        if not self.rho < 1.0:
            raise UsageError("certificate requires spectral radius below 1")
        if self.k.n != self.S.n:
            raise UsageError("certificate matrices must share a dimension")
        if not self.residual <= CERT_RESIDUAL_MAX:
            raise UsageError(
                f"certificate residual {self.residual!r} exceeds {CERT_RESIDUAL_MAX!r}"
            )

    @property
    def n(self) -> int:
        return self.k.n


def certify_contraction(
    a: SquareMatrix,
    tol: float,
    *,
    budget: int = 100_000,
    series_budget: int = 200_000,
    seed: int = 0,
) -> ContractionCertificate:
    """Certify a nonnegative matrix as a usable contraction coefficient.

    Succeeds when the spectral radius estimate is below 1 - tol, in which
    case the power series sum is accumulated and residual-checked. Raises
    NotCertifiedError (carrying the estimate) otherwise.
    """
    _require_nonnegative(a, "matrix")
    if not tol > 0.0:
        raise UsageError("tol must be positive")
    rho = spectral_radius(a, min(tol, 1e-9), budget=budget, seed=seed)
    if not rho < 1.0 - tol:
        raise NotCertifiedError(rho)
    total, terms = _neumann(a.entries, _SERIES_TOL, series_budget)
    eye = np.eye(a.n)
    residual = _row_sum_norm((eye - a.entries) @ total - eye)
    return ContractionCertificate(
        k=a,
        rho=rho,
        S=SquareMatrix(total),
        series_terms=terms,
        residual=residual,
    )


@dataclass(frozen=True, eq=False)
class LinearComparison:
    """The linear comparison family phi(t) = G t for a certified gain matrix.

    The gain is nonnegative with a held contraction certificate, so applying
    it to a cone vector stays in the cone. deficiency_in_cone records whether
    1 - G itself has no negative entry (and is nonzero); only then do all
    four comparison axioms hold, which for this entrywise order pins the gain
    down to a diagonal with entries in [0, 1). The axiom checker is the
    arbiter for everything else.
    """

    gain: SquareMatrix
    certificate: ContractionCertificate
    deficiency_in_cone: bool

    @property
    def n(self) -> int:
        return self.gain.n

    def __call__(self, t: Vector) -> Vector:
        return comparison_apply(self, t)


def linear_comparison(gain: SquareMatrix, tol: float = 1e-9) -> LinearComparison:
    """Build a LinearComparison, certifying the gain matrix on the way."""
    cert = certify_contraction(gain, tol)
    deficit = np.eye(gain.n) - gain.entries
    in_cone = bool(np.all(deficit >= 0.0)) and bool(np.any(deficit != 0.0))
    return LinearComparison(gain=gain, certificate=cert, deficiency_in_cone=in_cone)


def comparison_apply(phi: LinearComparison, t: Vector) -> Vector:
    """Apply a linear comparison function to a cone vector."""
    if np.any(t.components < 0.0):
        raise UsageError("comparison functions are defined on the cone only")
    return mat_apply(phi.gain, t)


@dataclass
class ComparisonAxiomReport:
    """Outcome of sampling the four comparison-function axioms.

    tail_checked counts the samples actually run through the iterate test;
    that test stops early once max_tail_violations witnesses are recorded,
    since each failing sample burns the whole iteration budget.
    """

    samples_tested: int
    shrink_violations: list = field(default_factory=list)
    monotone_violations: list = field(default_factory=list)
    interior_violations: list = field(default_factory=list)
    tail_violations: list = field(default_factory=list)
    tail_checked: int = 0

    @property
    def passed(self) -> bool:
        return not (
            self.shrink_violations
            or self.monotone_violations
            or self.interior_violations
            or self.tail_violations
        )


def _leq_with_slack(u: Vector, v: Vector, slack: float) -> bool:
    return bool(np.all(v.components - u.components >= -slack))


def check_comparison_axioms(
    phi: Callable[[Vector], Vector],
    sampler: Sampler,
    count: int,
    *,
    iteration_budget: int = 10_000,
    slack: float = 1e-14,
    max_tail_violations: int = 10,
) -> ComparisonAxiomReport:
    """Probe a candidate comparison function on sampled cone vectors.

    Checks, per sample t (with a companion sample s):
      shrink:   phi(0) = 0 and, for t != 0, phi(t) <= t with phi(t) != t;
      monotone: phi(t) <= phi(t + s) within slack;
      interior: for interior t, t - phi(t) stays strictly positive;
      tail:     iterates phi^j(t) fall strictly below the interior point s
                within iteration_budget applications.

    The slack covers floating arithmetic only; strictness tests are exact.
    A constant iterate (phi(u) = u exactly) short-circuits the tail test,
    since it can never reach the threshold.
    """
    if count < 1:
        raise UsageError("sample count must be at least 1")
    report = ComparisonAxiomReport(samples_tested=count)
    zero_checked = False
    tail_open = True
    for _ in range(count):
        t = sampler()
        if np.any(t.components < 0.0):
            raise UsageError("comparison sampler must produce cone vectors")
        if not zero_checked:
            zero = Vector.zeros(t.n)
            phi_zero = phi(zero)
            if phi_zero != zero:
                report.shrink_violations.append((zero, phi_zero))
            zero_checked = True
        phi_t = phi(t)
        nonzero = bool(np.any(t.components != 0.0))
        if nonzero and not (_leq_with_slack(phi_t, t, slack) and phi_t != t):
            report.shrink_violations.append((t, phi_t))
        s = sampler()
        t2 = t + s
        phi_t2 = phi(t2)
        if not _leq_with_slack(phi_t, phi_t2, slack):
            report.monotone_violations.append((t, t2, phi_t, phi_t2))
        if np.all(t.components > 0.0):
            gap = t - phi_t
            if not np.all(gap.components > 0.0):
                report.interior_violations.append((t, phi_t))
        if tail_open and nonzero and np.all(s.components > 0.0):
            threshold = s
            u = t
            reached = bool(np.all(threshold.components - u.components > 0.0))
            applications = 0
            while not reached and applications < iteration_budget:
                u_next = phi(u)
                applications += 1
                if not np.all(np.isfinite(u_next.components)):
                    break
                if u_next == u:
                    break
                u = u_next
                reached = bool(np.all(threshold.components - u.components > 0.0))
            report.tail_checked += 1
            if not reached:
                report.tail_violations.append((t, threshold, applications))
                if len(report.tail_violations) >= max_tail_violations:
                    tail_open = False
    return report

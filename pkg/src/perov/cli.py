"""Command-line front end.

Problems are described by line-oriented files of `key = value` pairs
(matrices as semicolon-separated rows, vectors as comma-separated
components) and driven through subcommands for axiom checking,
certification, hypothesis verification, and solving. Reports interleave
human-readable sections with machine lines prefixed `#REC `; identical
problem files and seeds reproduce the machine lines byte for byte.

Exit codes: 0 success or converged, 2 hypothesis violation or failed
certification, 3 iteration budget exhausted, 64 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from .contraction import (
    LinearComparison,
    certify_contraction,
    check_comparison_axioms,
    linear_comparison,
)
from .errors import (
    ConvergenceFailure,
    EvaluationError,
    NotCertifiedError,
    PreimageError,
    UsageError,
)
from .metric import WeightedMatrixMetric, check_metric_axioms
from .ordered_algebra import SquareMatrix, Vector, sup_norm
from .sampling import cone_sampler, uniform_sampler
from .solver import (
    MapSpec,
    SolveResult,
    SolveStatus,
    affine_preimage,
    comparison_solve,
    identity_map,
    jungck_solve,
    perov_solve,
    verify_condition_c,
    verify_matrix_lipschitz,
)

__all__ = ["ProblemFile", "parse_problem", "format_problem", "run", "main"]

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64

_STATUS_EXIT = {
    SolveStatus.CONVERGED: EXIT_OK,
    SolveStatus.BUDGET_EXHAUSTED: EXIT_BUDGET,
    SolveStatus.HYPOTHESIS_VIOLATED: EXIT_HYPOTHESIS,
}

_COMMANDS = (
    "check-metric",
    "check-comparison",
    "certify",
    "solve-perov",
    "solve-jungck",
    "solve-comparison",
    "verify-lipschitz",
    "verify-condition-c",
)

_MAP_PREFIXES = ("f", "g", "g_solve")
_MAP_SUBKEYS = ("kind", "M", "b", "L", "d", "tags")
_SCALAR_KEYS = ("n", "budget", "seed")
_TOP_KEYS = ("n", "W", "k", "lambda", "x0", "eps", "budget", "seed")

_DEFAULT_BUDGET = 100_000
_DEFAULT_SEED = 0


@dataclass
class ProblemFile:
    """Parsed problem description; exactly one of k and lam is present."""

    n: int
    weight: SquareMatrix
    f: MapSpec
    x0: Vector
    eps: Vector
    g: MapSpec | None = None
    g_solve: MapSpec | None = None
    k: SquareMatrix | None = None
    lam: SquareMatrix | None = None
    budget: int = _DEFAULT_BUDGET
    seed: int = _DEFAULT_SEED


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_vec(v: Vector) -> str:
    return ",".join(_fmt(c) for c in v.components)


def _fmt_mat(m: SquareMatrix) -> str:
    return "; ".join(", ".join(_fmt(e) for e in row) for row in m.entries)


def _rec(kind: str, **fields) -> None:
    parts = [f"kind={kind}"]
    for key, value in fields.items():
        if isinstance(value, Vector):
            text = _fmt_vec(value)
        elif isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, float):
            text = _fmt(value)
        elif value is None:
            text = "na"
        else:
            text = str(value)
        parts.append(f"{key}={text}")
    print("#REC " + " ".join(parts))


class _ParseContext:
    def __init__(self, path: str):
        self.path = path
        self.values: dict[str, str] = {}
        self.lines: dict[str, int] = {}

    def error(self, message: str, key: str | None = None) -> UsageError:
        if key is not None and key in self.lines:
            return UsageError(f"{self.path}:{self.lines[key]}: {message}")
        return UsageError(f"{self.path}: {message}")


def _parse_float(ctx: _ParseContext, key: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ctx.error(f"{key}: cannot parse {text!r} as a number", key) from None


def _parse_vector(ctx: _ParseContext, key: str, n: int) -> Vector:
    text = ctx.values[key]
    parts = [p.strip() for p in text.split(",")]
    comps = [_parse_float(ctx, key, p) for p in parts]
    if len(comps) != n:
        raise ctx.error(f"{key}: expected {n} components, got {len(comps)}", key)
    return Vector(np.array(comps))


def _parse_matrix(ctx: _ParseContext, key: str, n: int) -> SquareMatrix:
    text = ctx.values[key]
    rows = []
    for row_text in text.split(";"):
        parts = [p.strip() for p in row_text.split(",")]
        rows.append([_parse_float(ctx, key, p) for p in parts])
    widths = {len(r) for r in rows}
    if len(rows) != n or widths != {n}:
        raise ctx.error(f"{key}: expected an {n}x{n} matrix", key)
    try:
        return SquareMatrix(np.array(rows))
    except UsageError as exc:
        raise ctx.error(f"{key}: {exc}", key) from None


def _parse_int(ctx: _ParseContext, key: str, minimum: int) -> int:
    text = ctx.values[key]
    try:
        value = int(text)
    except ValueError:
        raise ctx.error(f"{key}: cannot parse {text!r} as an integer", key) from None
    if value < minimum:
        raise ctx.error(f"{key}: must be at least {minimum}", key)
    return value


def _parse_map(ctx: _ParseContext, prefix: str, n: int) -> MapSpec | None:
    keys = {k for k in ctx.values if k == prefix or k.startswith(prefix + ".")}
    if not keys:
        return None
    kind_key = f"{prefix}.kind"
    if kind_key not in ctx.values:
        raise ctx.error(f"{prefix}: missing {kind_key}", sorted(keys)[0])
    kind = ctx.values[kind_key].strip()
    if kind == "affine":
        allowed = {kind_key, f"{prefix}.M", f"{prefix}.b"}
    elif kind == "componentwise-nonlinear":
        allowed = {kind_key} | {f"{prefix}.{s}" for s in ("M", "b", "L", "d", "tags")}
    else:
        raise ctx.error(f"{kind_key}: unknown map kind {kind!r}", kind_key)
    extra = keys - allowed
    if extra:
        raise ctx.error(
            f"{prefix}: keys {sorted(extra)} not allowed for kind {kind!r}",
            sorted(extra)[0],
        )
    missing = sorted(a for a in allowed if a not in ctx.values)
    if missing:
        raise ctx.error(f"{prefix}: missing {missing}", kind_key)
    m = _parse_matrix(ctx, f"{prefix}.M", n)
    b = _parse_vector(ctx, f"{prefix}.b", n)
    try:
        if kind == "affine":
            return MapSpec.affine(m, b)
        tags = tuple(t.strip() for t in ctx.values[f"{prefix}.tags"].split(","))
        return MapSpec.componentwise(
            m,
            b,
            _parse_matrix(ctx, f"{prefix}.L", n),
            _parse_vector(ctx, f"{prefix}.d", n),
            tags,
        )
    except UsageError as exc:
        raise ctx.error(f"{prefix}: {exc}", kind_key) from None


def parse_problem_text(text: str, path: str = "<string>") -> ProblemFile:
    """Parse problem-file content; see parse_problem for the grammar."""
    ctx = _ParseContext(path)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise UsageError(f"{path}:{lineno}: empty key or value")
        known = key in _TOP_KEYS or (
            "." in key
            and key.split(".", 1)[0] in _MAP_PREFIXES
            and key.split(".", 1)[1] in _MAP_SUBKEYS
        )
        if not known:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        if key in ctx.values:
            raise UsageError(f"{path}:{lineno}: duplicate key {key!r}")
        ctx.values[key] = value
        ctx.lines[key] = lineno

    for required in ("n", "W", "x0", "eps"):
        if required not in ctx.values:
            raise ctx.error(f"missing required key {required!r}")
    n = _parse_int(ctx, "n", 1)
    weight = _parse_matrix(ctx, "W", n)
    if np.any(weight.entries <= 0.0):
        raise ctx.error("W: metric weight entries must be strictly positive", "W")
    f = _parse_map(ctx, "f", n)
    if f is None:
        raise ctx.error("missing map f")
    g = _parse_map(ctx, "g", n)
    g_solve = _parse_map(ctx, "g_solve", n)
    if g_solve is not None and g is None:
        raise ctx.error("g_solve given without g", "g_solve.kind")
    if g is not None and g.kind != "affine" and g_solve is None:
        raise ctx.error("g is not affine, so an explicit g_solve is required", "g.kind")
    has_k = "k" in ctx.values
    has_lam = "lambda" in ctx.values
    if has_k == has_lam:
        raise ctx.error("exactly one of 'k' and 'lambda' must be present")
    k = _parse_matrix(ctx, "k", n) if has_k else None
    lam = _parse_matrix(ctx, "lambda", n) if has_lam else None
    x0 = _parse_vector(ctx, "x0", n)
    eps_text = ctx.values["eps"]
    if "," in eps_text:
        eps = _parse_vector(ctx, "eps", n)
    else:
        eps = Vector.full(n, _parse_float(ctx, "eps", eps_text))
    if np.any(eps.components <= 0.0):
        raise ctx.error("eps: every component must be strictly positive", "eps")
    budget = _parse_int(ctx, "budget", 1) if "budget" in ctx.values else _DEFAULT_BUDGET
    seed = _parse_int(ctx, "seed", 0) if "seed" in ctx.values else _DEFAULT_SEED
    return ProblemFile(
        n=n,
        weight=weight,
        f=f,
        x0=x0,
        eps=eps,
        g=g,
        g_solve=g_solve,
        k=k,
        lam=lam,
        budget=budget,
        seed=seed,
    )


def parse_problem(path: str) -> ProblemFile:
    """Read and parse a problem file.

    Grammar: one `key = value` pair per line; blank lines and lines starting
    with '#' are skipped. Matrices separate rows with ';' and entries with
    ','; vectors are comma-separated; eps admits a scalar shorthand that
    broadcasts to all components. Maps are grouped keys (`f.kind = affine`,
    `f.M = ...`, `f.b = ...`; componentwise maps add `f.L`, `f.d`,
    `f.tags`). Unknown and duplicate keys are rejected.
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return parse_problem_text(text, path)


def _emit_map(lines: list[str], prefix: str, spec: MapSpec) -> None:
    lines.append(f"{prefix}.kind = {spec.kind}")
    lines.append(f"{prefix}.M = {_fmt_mat(spec.M)}")
    lines.append(f"{prefix}.b = {_fmt_vec(spec.b)}")
    if spec.kind == "componentwise-nonlinear":
        lines.append(f"{prefix}.L = {_fmt_mat(spec.L)}")
        lines.append(f"{prefix}.d = {_fmt_vec(spec.d)}")
        lines.append(f"{prefix}.tags = {', '.join(spec.tags)}")


def format_problem(pf: ProblemFile) -> str:
    """Emit a problem file in canonical form; parsing it back round-trips."""
    lines = [f"n = {pf.n}", f"W = {_fmt_mat(pf.weight)}"]
    _emit_map(lines, "f", pf.f)
    if pf.g is not None:
        _emit_map(lines, "g", pf.g)
    if pf.g_solve is not None:
        _emit_map(lines, "g_solve", pf.g_solve)
    if pf.k is not None:
        lines.append(f"k = {_fmt_mat(pf.k)}")
    if pf.lam is not None:
        lines.append(f"lambda = {_fmt_mat(pf.lam)}")
    lines.append(f"x0 = {_fmt_vec(pf.x0)}")
    lines.append(f"eps = {_fmt_vec(pf.eps)}")
    lines.append(f"budget = {pf.budget}")
    lines.append(f"seed = {pf.seed}")
    return "\n".join(lines) + "\n"


def _need(value, name: str):
    if value is None:
        raise UsageError(f"this command needs {name!r} in the problem file")
    return value


def _resolve_g(pf: ProblemFile) -> tuple[MapSpec, object]:
    if pf.g is None:
        g = identity_map(pf.n)
        return g, affine_preimage(g)
    if pf.g_solve is not None:
        return pf.g, pf.g_solve
    return pf.g, affine_preimage(pf.g)


def _prologue(pf: ProblemFile, command: str, path: str) -> None:
    print(f"command: {command}")
    print(f"problem: {path}")
    print(f"n: {pf.n}  seed: {pf.seed}  budget: {pf.budget}")
    _rec("problem", command=command, n=pf.n, seed=pf.seed, budget=pf.budget, eps=pf.eps)


def _certify_or_report(matrix: SquareMatrix, tol: float, seed: int, label: str):
    print(f"== certificate ({label}) ==")
    try:
        cert = certify_contraction(matrix, tol, seed=seed)
    except NotCertifiedError as exc:
        print(f"not certified: spectral radius estimate {_fmt(exc.estimate)}")
        _rec("certificate", label=label, status="not_certified", rho=exc.estimate)
        return None
    print(
        f"rho: {_fmt(cert.rho)}  series terms: {cert.series_terms}  "
        f"residual: {_fmt(cert.residual)}"
    )
    _rec(
        "certificate",
        label=label,
        status="certified",
        rho=cert.rho,
        terms=cert.series_terms,
        residual=cert.residual,
    )
    return cert


def _comparison_or_report(pf: ProblemFile, tol: float) -> LinearComparison | None:
    lam = _need(pf.lam, "lambda")
    print("== comparison function ==")
    try:
        phi = linear_comparison(lam, tol)
    except NotCertifiedError as exc:
        print(f"gain not certified: spectral radius estimate {_fmt(exc.estimate)}")
        _rec("comparison", status="not_certified", rho=exc.estimate)
        return None
    print(
        f"gain rho: {_fmt(phi.certificate.rho)}  "
        f"deficiency in cone: {str(phi.deficiency_in_cone).lower()}"
    )
    _rec(
        "comparison",
        status="certified",
        rho=phi.certificate.rho,
        deficiency_in_cone=phi.deficiency_in_cone,
    )
    return phi


def _emit_iterations(trace) -> None:
    print("== iterations ==")
    print(f"iterations: {trace.iterations}  status: {trace.status.value}")
    for i, (dist, bound) in enumerate(zip(trace.step_dists, trace.bounds)):
        _rec("iter", n=i, y=trace.points[i], dist=dist, bound=bound)


def _emit_result(result: SolveResult, residual: Vector) -> None:
    print("== result ==")
    print(f"status: {result.trace.status.value}")
    print(f"point: {_fmt_vec(result.point)}")
    print(f"value: {_fmt_vec(result.value)}")
    print(f"residual: {_fmt_vec(residual)}")
    if result.weakly_compatible is not None:
        print(f"weakly compatible: {str(result.weakly_compatible).lower()}")
        if result.common_fixed_point is not None:
            print(f"common fixed point: {_fmt_vec(result.common_fixed_point)}")
    if result.hypothesis_witness is not None and "step" in result.hypothesis_witness:
        print(f"hypothesis violated at step {result.hypothesis_witness['step']}")
    _rec(
        "result",
        status=result.trace.status.value,
        point=result.point,
        value=result.value,
        residual=residual,
        weak_compat=result.weakly_compatible,
        common=result.common_fixed_point,
    )


def _lipschitz_gate(pf: ProblemFile, g: MapSpec, k: SquareMatrix, samples: int) -> bool:
    metric = WeightedMatrixMetric(pf.weight)
    sampler = uniform_sampler(pf.n, seed=pf.seed)
    report = verify_matrix_lipschitz(pf.f, g, k, metric, sampler, samples)
    print("== hypothesis check ==")
    print(
        f"matrix coefficient condition: {report.samples_tested} samples, "
        f"{len(report.violations)} violations"
    )
    _rec(
        "lipschitz",
        samples=report.samples_tested,
        violations=len(report.violations),
        verdict="pass" if report.passed else "fail",
    )
    return report.passed


def _cmd_check_metric(pf: ProblemFile, args) -> int:
    metric = WeightedMatrixMetric(pf.weight)
    sampler = uniform_sampler(pf.n, seed=pf.seed)
    report = check_metric_axioms(metric, sampler, args.samples)
    print("== metric axioms ==")
    print(f"samples: {report.samples_tested}")
    print(
        f"violations: d1={len(report.d1_violations)} "
        f"d2={len(report.d2_violations)} d3={len(report.d3_violations)}"
    )
    _rec(
        "metric_axioms",
        samples=report.samples_tested,
        d1=len(report.d1_violations),
        d2=len(report.d2_violations),
        d3=len(report.d3_violations),
        verdict="pass" if report.passed else "fail",
    )
    return EXIT_OK if report.passed else EXIT_HYPOTHESIS


def _emit_comparison_axioms(report) -> bool:
    print(
        f"comparison axioms: {report.samples_tested} samples, "
        f"shrink={len(report.shrink_violations)} "
        f"monotone={len(report.monotone_violations)} "
        f"interior={len(report.interior_violations)} "
        f"tail={len(report.tail_violations)}"
    )
    _rec(
        "comparison_axioms",
        samples=report.samples_tested,
        shrink=len(report.shrink_violations),
        monotone=len(report.monotone_violations),
        interior=len(report.interior_violations),
        tail=len(report.tail_violations),
        tail_checked=report.tail_checked,
        verdict="pass" if report.passed else "fail",
    )
    return report.passed


def _cmd_check_comparison(pf: ProblemFile, args) -> int:
    phi = _comparison_or_report(pf, args.tol)
    if phi is None:
        return EXIT_HYPOTHESIS
    report = check_comparison_axioms(
        phi, cone_sampler(pf.n, seed=pf.seed), args.samples
    )
    print("== comparison axioms ==")
    ok = _emit_comparison_axioms(report)
    return EXIT_OK if ok else EXIT_HYPOTHESIS


def _cmd_certify(pf: ProblemFile, args) -> int:
    k = _need(pf.k, "k")
    cert = _certify_or_report(k, args.tol, pf.seed, "k")
    return EXIT_OK if cert is not None else EXIT_HYPOTHESIS


def _cmd_verify_lipschitz(pf: ProblemFile, args) -> int:
    k = _need(pf.k, "k")
    g, _ = _resolve_g(pf)
    ok = _lipschitz_gate(pf, g, k, args.samples)
    return EXIT_OK if ok else EXIT_HYPOTHESIS


def _cmd_verify_condition_c(pf: ProblemFile, args) -> int:
    phi = _comparison_or_report(pf, args.tol)
    if phi is None:
        return EXIT_HYPOTHESIS
    g, _ = _resolve_g(pf)
    metric = WeightedMatrixMetric(pf.weight)
    sampler = uniform_sampler(pf.n, seed=pf.seed)
    report = verify_condition_c(pf.f, g, phi, metric, sampler, args.samples)
    print("== contraction condition ==")
    print(
        f"samples: {report.samples_tested}  violations: {len(report.violations)}  "
        f"branches: {report.branch_counts}"
    )
    _rec(
        "condition_c",
        samples=report.samples_tested,
        violations=len(report.violations),
        branch1=report.branch_counts[0],
        branch2=report.branch_counts[1],
        branch3=report.branch_counts[2],
        verdict="pass" if report.passed else "fail",
    )
    return EXIT_OK if report.passed else EXIT_HYPOTHESIS


def _cmd_solve_perov(pf: ProblemFile, args) -> int:
    k = _need(pf.k, "k")
    if pf.g is not None:
        raise UsageError("solve-perov is a self-map solve; use solve-jungck for g")
    if not _lipschitz_gate(pf, identity_map(pf.n), k, args.samples):
        return EXIT_HYPOTHESIS
    cert = _certify_or_report(k, args.tol, pf.seed, "k")
    if cert is None:
        return EXIT_HYPOTHESIS
    metric = WeightedMatrixMetric(pf.weight)
    result = perov_solve(pf.f, metric, cert, pf.x0, pf.eps, pf.budget)
    _emit_iterations(result.trace)
    residual = metric(pf.f(result.point), result.point)
    _emit_result(result, residual)
    return _STATUS_EXIT[result.trace.status]


def _cmd_solve_jungck(pf: ProblemFile, args) -> int:
    k = _need(pf.k, "k")
    g = _need(pf.g, "g")
    g, g_solve = _resolve_g(pf)
    if not _lipschitz_gate(pf, g, k, args.samples):
        return EXIT_HYPOTHESIS
    cert = _certify_or_report(k, args.tol, pf.seed, "k")
    if cert is None:
        return EXIT_HYPOTHESIS
    metric = WeightedMatrixMetric(pf.weight)
    result = jungck_solve(pf.f, g, g_solve, metric, cert, pf.x0, pf.eps, pf.budget)
    _emit_iterations(result.trace)
    residual = metric(pf.f(result.point), g(result.point))
    _emit_result(result, residual)
    return _STATUS_EXIT[result.trace.status]


def _cmd_solve_comparison(pf: ProblemFile, args) -> int:
    phi = _comparison_or_report(pf, args.tol)
    if phi is None:
        return EXIT_HYPOTHESIS
    g, g_solve = _resolve_g(pf)
    print("== hypothesis check ==")
    axiom_report = check_comparison_axioms(
        phi, cone_sampler(pf.n, seed=pf.seed), args.samples
    )
    if not _emit_comparison_axioms(axiom_report):
        return EXIT_HYPOTHESIS
    metric = WeightedMatrixMetric(pf.weight)
    sampler = uniform_sampler(pf.n, seed=pf.seed)
    cond_report = verify_condition_c(pf.f, g, phi, metric, sampler, args.samples)
    print(
        f"contraction condition: {cond_report.samples_tested} samples, "
        f"{len(cond_report.violations)} violations, "
        f"branches {cond_report.branch_counts}"
    )
    _rec(
        "condition_c",
        samples=cond_report.samples_tested,
        violations=len(cond_report.violations),
        branch1=cond_report.branch_counts[0],
        branch2=cond_report.branch_counts[1],
        branch3=cond_report.branch_counts[2],
        verdict="pass" if cond_report.passed else "fail",
    )
    if not cond_report.passed:
        return EXIT_HYPOTHESIS
    result = comparison_solve(
        pf.f, g, g_solve, phi, metric, pf.x0, pf.eps, pf.budget
    )
    _emit_iterations(result.trace)
    residual = metric(pf.f(result.point), g(result.point))
    _emit_result(result, residual)
    return _STATUS_EXIT[result.trace.status]


_HANDLERS = {
    "check-metric": _cmd_check_metric,
    "check-comparison": _cmd_check_comparison,
    "certify": _cmd_certify,
    "solve-perov": _cmd_solve_perov,
    "solve-jungck": _cmd_solve_jungck,
    "solve-comparison": _cmd_solve_comparison,
    "verify-lipschitz": _cmd_verify_lipschitz,
    "verify-condition-c": _cmd_verify_condition_c,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="perov",
        description="Vector-metric fixed-point and coincidence-point toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("problem", help="path to a problem file")
        cmd.add_argument(
            "--samples",
            type=int,
            default=1000,
            help="sample count for the sampling checks (default 1000)",
        )
        cmd.add_argument(
            "--tol",
            type=float,
            default=1e-9,
            help="certification margin below 1 (default 1e-9)",
        )
    return parser


def run(argv=None) -> int:
    """Execute one CLI invocation and return its exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        pf = parse_problem(args.problem)
    except UsageError as exc:
        print(f"problem file error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cannot read problem file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _prologue(pf, args.command, args.problem)
    try:
        code = _HANDLERS[args.command](pf, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreimageError as exc:
        print(f"hypothesis breach: {exc}")
        code = EXIT_HYPOTHESIS
    except EvaluationError as exc:
        print(f"evaluation failure: {exc}")
        code = EXIT_HYPOTHESIS
    except ConvergenceFailure as exc:
        print(f"numerical failure: {exc}")
        code = EXIT_HYPOTHESIS
    _rec("exit", code=code)
    return code


def main() -> None:
    sys.exit(run())

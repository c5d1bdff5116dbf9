import numpy as np
import pytest

from perov import UsageError
from perov.cli import (
    EXIT_BUDGET,
    EXIT_HYPOTHESIS,
    EXIT_OK,
    EXIT_USAGE,
    format_problem,
    parse_problem,
    parse_problem_text,
    run,
)

MINIMAL = """\
# a one-dimensional halving problem
n = 1
W = 1
f.kind = affine
f.M = 0.5
f.b = 1
k = 0.5
x0 = 0
eps = 1e-10
"""

PLANAR = """\
n = 2
W = 1, 0.1; 0.1, 1
f.kind = affine
f.M = 0.5, 0.25; 0.25, 0.5
f.b = 1, 1
k = 0.5, 0.25; 0.25, 0.5
x0 = 0, 0
eps = 1e-10
budget = 100000
seed = 0
"""


# -- parsing ------------------------------------------------------------------


def test_parse_minimal():
    pf = parse_problem_text(MINIMAL)
    assert pf.n == 1
    assert pf.weight.entries[0, 0] == 1.0
    assert pf.f(pf.x0).components[0] == 1.0
    assert pf.k.entries[0, 0] == 0.5
    assert pf.lam is None
    assert pf.g is None
    assert pf.budget == 100000
    assert pf.seed == 0
    assert pf.eps.components[0] == 1e-10


def test_parse_matrices_and_vectors():
    pf = parse_problem_text(PLANAR)
    assert np.allclose(pf.weight.entries, [[1.0, 0.1], [0.1, 1.0]])
    assert np.allclose(pf.f.M.entries, [[0.5, 0.25], [0.25, 0.5]])
    assert np.all(pf.x0.components == 0.0)


def test_eps_scalar_shorthand_broadcasts():
    pf = parse_problem_text(PLANAR)
    assert pf.eps.n == 2
    assert np.all(pf.eps.components == 1e-10)


def test_eps_must_be_positive():
    bad = MINIMAL.replace("eps = 1e-10", "eps = 0")
    with pytest.raises(UsageError):
        parse_problem_text(bad)


def test_requires_exactly_one_coefficient():
    with pytest.raises(UsageError, match="exactly one"):
        parse_problem_text(MINIMAL + "lambda = 0.5\n")
    with pytest.raises(UsageError, match="exactly one"):
        parse_problem_text(MINIMAL.replace("k = 0.5\n", ""))


def test_weight_must_be_strictly_positive():
    bad = MINIMAL.replace("W = 1", "W = 0")
    with pytest.raises(UsageError, match="strictly positive"):
        parse_problem_text(bad)


def test_unknown_key_reports_line_number():
    bad = MINIMAL + "mystery = 1\n"
    with pytest.raises(UsageError, match=r":10: unknown key"):
        parse_problem_text(bad)


def test_duplicate_key_reports_line_number():
    bad = MINIMAL + "n = 2\n"
    with pytest.raises(UsageError, match=r":10: duplicate key"):
        parse_problem_text(bad)


def test_wrong_matrix_shape_rejected():
    bad = PLANAR.replace("W = 1, 0.1; 0.1, 1", "W = 1, 0.1; 0.1, 1; 1, 1")
    with pytest.raises(UsageError, match="2x2"):
        parse_problem_text(bad)
    bad = PLANAR.replace("x0 = 0, 0", "x0 = 0")
    with pytest.raises(UsageError, match="components"):
        parse_problem_text(bad)


def test_unparseable_number_rejected():
    bad = MINIMAL.replace("f.M = 0.5", "f.M = half")
    with pytest.raises(UsageError, match="cannot parse"):
        parse_problem_text(bad)


def test_missing_required_key_rejected():
    with pytest.raises(UsageError, match="missing required key"):
        parse_problem_text("n = 1\nW = 1\n")


def test_line_without_equals_rejected():
    with pytest.raises(UsageError, match="expected 'key = value'"):
        parse_problem_text(MINIMAL + "stray line\n")


def test_nonlinear_g_requires_explicit_preimage():
    text = MINIMAL + (
        "g.kind = componentwise-nonlinear\n"
        "g.M = 1\ng.b = 0\ng.L = 1\ng.d = 0\ng.tags = atan\n"
    )
    with pytest.raises(UsageError, match="g_solve"):
        parse_problem_text(text)


def test_g_solve_without_g_rejected():
    text = MINIMAL + "g_solve.kind = affine\ng_solve.M = 1\ng_solve.b = 0\n"
    with pytest.raises(UsageError, match="g_solve given without g"):
        parse_problem_text(text)


def test_map_group_key_rules():
    with pytest.raises(UsageError, match="missing f.kind"):
        parse_problem_text(MINIMAL.replace("f.kind = affine\n", ""))
    with pytest.raises(UsageError, match="not allowed for kind"):
        parse_problem_text(MINIMAL + "f.L = 1\n")
    with pytest.raises(UsageError, match="unknown map kind"):
        parse_problem_text(MINIMAL.replace("f.kind = affine", "f.kind = fancy"))


def test_round_trip_is_canonical():
    pf = parse_problem_text(PLANAR)
    emitted = format_problem(pf)
    again = format_problem(parse_problem_text(emitted))
    assert emitted == again


def test_round_trip_preserves_values(tmp_path):
    path = tmp_path / "planar.prob"
    path.write_text(format_problem(parse_problem_text(PLANAR)))
    pf = parse_problem(str(path))
    assert np.allclose(pf.f.M.entries, [[0.5, 0.25], [0.25, 0.5]])
    assert pf.budget == 100000


# -- command execution ---------------------------------------------------------


def write(tmp_path, text, name="case.prob"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_run_solve_perov(tmp_path, capsys):
    code = run(["solve-perov", write(tmp_path, PLANAR)])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "#REC kind=problem command=solve-perov" in out
    assert "#REC kind=certificate" in out
    assert "#REC kind=iter n=0" in out
    assert "#REC kind=result status=converged" in out
    assert "#REC kind=exit code=0" in out
    result_line = [l for l in out.splitlines() if "kind=result" in l][0]
    assert "point=3.9999999998" in result_line


def test_run_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, PLANAR)
    run(["solve-perov", path])
    first = [l for l in capsys.readouterr().out.splitlines() if l.startswith("#REC")]
    run(["solve-perov", path])
    second = [l for l in capsys.readouterr().out.splitlines() if l.startswith("#REC")]
    assert first == second


def test_run_certify_failure_exits_2(tmp_path, capsys):
    text = MINIMAL.replace("f.M = 0.5", "f.M = 1").replace("k = 0.5", "k = 1")
    code = run(["certify", write(tmp_path, text)])
    out = capsys.readouterr().out
    assert code == EXIT_HYPOTHESIS
    assert "status=not_certified" in out
    assert "#REC kind=exit code=2" in out


def test_run_budget_exhaustion_exits_3(tmp_path):
    text = MINIMAL.replace("f.M = 0.5", "f.M = 0.999").replace(
        "k = 0.5", "k = 0.999"
    ).replace("eps = 1e-10", "eps = 1e-12") + "budget = 5\n"
    code = run(["solve-perov", write(tmp_path, text)])
    assert code == EXIT_BUDGET


def test_run_lipschitz_violation_exits_2(tmp_path, capsys):
    text = MINIMAL.replace("f.M = 0.5", "f.M = 2")
    code = run(["verify-lipschitz", write(tmp_path, text)])
    out = capsys.readouterr().out
    assert code == EXIT_HYPOTHESIS
    assert "verdict=fail" in out


def test_run_solve_gate_blocks_bad_hypothesis(tmp_path, capsys):
    # solve-perov refuses to iterate when the sampled coefficient check fails
    text = MINIMAL.replace("f.M = 0.5", "f.M = 2")
    code = run(["solve-perov", write(tmp_path, text)])
    out = capsys.readouterr().out
    assert code == EXIT_HYPOTHESIS
    assert "kind=result" not in out


def test_run_malformed_file_exits_64(tmp_path, capsys):
    code = run(["solve-perov", write(tmp_path, "not a problem\n")])
    err = capsys.readouterr().err
    assert code == EXIT_USAGE
    assert "problem file error" in err


def test_run_missing_file_exits_64(tmp_path):
    assert run(["solve-perov", str(tmp_path / "absent.prob")]) == EXIT_USAGE


def test_run_unknown_command_exits_64(tmp_path):
    assert run(["conjure", write(tmp_path, MINIMAL)]) == EXIT_USAGE


def test_run_check_metric(tmp_path, capsys):
    code = run(["check-metric", write(tmp_path, PLANAR), "--samples", "200"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "kind=metric_axioms" in out
    assert "samples=200" in out


def test_run_check_comparison(tmp_path, capsys):
    text = MINIMAL.replace("k = 0.5", "lambda = 0.5")
    code = run(["check-comparison", write(tmp_path, text), "--samples", "200"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "kind=comparison_axioms" in out
    assert "verdict=pass" in out


def test_run_solve_comparison_violation(tmp_path, capsys):
    text = MINIMAL.replace("f.M = 0.5", "f.M = 2").replace("k = 0.5", "lambda = 0.6")
    code = run(["solve-comparison", write(tmp_path, text)])
    out = capsys.readouterr().out
    assert code == EXIT_HYPOTHESIS
    assert "kind=condition_c" in out
    assert "verdict=fail" in out


def test_run_rejects_mismatched_solver(tmp_path):
    text = MINIMAL + "g.kind = affine\ng.M = 0.5\ng.b = 0\n"
    assert run(["solve-perov", write(tmp_path, text)]) == EXIT_USAGE
    assert run(["solve-jungck", write(tmp_path, MINIMAL)]) == EXIT_USAGE


def test_records_use_full_precision(tmp_path, capsys):
    text = MINIMAL.replace("f.b = 1", "f.b = 0.1")
    run(["solve-perov", write(tmp_path, text)])
    out = capsys.readouterr().out
    # every numeric field reproduces its double exactly when re-formatted
    result_line = [l for l in out.splitlines() if "kind=result" in l][0]
    point_text = result_line.split("point=")[1].split(" ")[0]
    assert abs(float(point_text) - 0.2) < 1e-9
    assert format(float(point_text), ".17g") == point_text

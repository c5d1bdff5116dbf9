import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perov import (
    CERT_RESIDUAL_MAX,
    ConvergenceFailure,
    NotCertifiedError,
    OrthantCone,
    SquareMatrix,
    UsageError,
    Vector,
    certify_contraction,
    check_comparison_axioms,
    comparison_apply,
    cone_sampler,
    gelfand_spectral_estimate,
    linear_comparison,
    neumann_sum,
    ring_norm,
    spectral_radius,
)


def mat(rows):
    return SquareMatrix(np.array(rows, dtype=float))


def vec(*comps):
    return Vector(np.array(comps, dtype=float))


def rho_2x2(a):
    # closed-form dominant eigenvalue of a nonnegative 2x2 matrix
    (p, q), (r, s) = a.entries
    return ((p + s) + np.sqrt((p - s) ** 2 + 4.0 * q * r)) / 2.0


# -- spectral radius --------------------------------------------------------


def test_spectral_radius_diagonal():
    assert abs(spectral_radius(mat([[0.5, 0.0], [0.0, 0.3]]), 1e-10) - 0.5) < 1e-9


def test_spectral_radius_periodic():
    # the two-cycle has no convergent power iteration; the estimate must
    # still land on 0.5
    a = mat([[0.0, 0.5], [0.5, 0.0]])
    assert abs(spectral_radius(a, 1e-10) - 0.5) < 1e-9


def test_spectral_radius_nilpotent():
    assert spectral_radius(mat([[0.0, 1.0], [0.0, 0.0]]), 1e-10) == 0.0


def test_spectral_radius_frozen_example():
    a = mat([[0.5, 0.6], [0.1, 0.2]])
    expected = (0.7 + np.sqrt(0.33)) / 2.0
    assert abs(spectral_radius(a, 1e-10) - expected) < 1e-8
    # the row-sum norm exceeds 1 even though the matrix is contractive
    assert ring_norm(a) == 1.1


def test_spectral_radius_rejects_bad_input():
    with pytest.raises(UsageError):
        spectral_radius(mat([[-0.1]]), 1e-10)
    with pytest.raises(UsageError):
        spectral_radius(mat([[0.5]]), 0.0)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_spectral_radius_matches_2x2_oracle(seed):
    rng = np.random.default_rng(seed)
    a = SquareMatrix(rng.uniform(0.0, 1.0, (2, 2)))
    assert abs(spectral_radius(a, 1e-10) - rho_2x2(a)) < 1e-8


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_gelfand_agrees_with_power_estimate(seed):
    rng = np.random.default_rng(seed)
    a = SquareMatrix(rng.uniform(0.01, 1.0, (3, 3)))
    tol = 1e-10
    assert abs(gelfand_spectral_estimate(a) - spectral_radius(a, tol)) <= 10 * tol


def test_gelfand_frozen():
    a = mat([[0.5, 0.6], [0.1, 0.2]])
    assert abs(gelfand_spectral_estimate(a) - rho_2x2(a)) < 1e-9


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_spectral_radius_below_ring_norm(n, seed):
    rng = np.random.default_rng(seed)
    a = SquareMatrix(rng.uniform(0.0, 1.0, (n, n)))
    assert spectral_radius(a, 1e-9) <= ring_norm(a) + 1e-8


# -- geometric series -------------------------------------------------------


def test_neumann_frozen_example():
    s = neumann_sum(mat([[0.5, 0.25], [0.0, 0.5]]), 1e-12)
    assert np.allclose(s.entries, [[2.0, 1.0], [0.0, 2.0]], atol=1e-10)


def test_neumann_matches_inverse_oracle():
    rng = np.random.default_rng(21)
    eye = np.eye(2)
    for _ in range(50):
        a = rng.uniform(0.0, 0.45, (2, 2))
        s = neumann_sum(SquareMatrix(a), 1e-13)
        assert np.allclose(s.entries, np.linalg.inv(eye - a), atol=1e-10)


def test_neumann_diverges_on_expansion():
    with pytest.raises(ConvergenceFailure):
        neumann_sum(mat([[2.0]]), 1e-12, budget=200)


def test_neumann_budget_exhaustion_at_radius_one():
    with pytest.raises(ConvergenceFailure):
        neumann_sum(mat([[1.0]]), 1e-12, budget=500)


def test_neumann_tail_norm_nonincreasing():
    # ring_norm(S_n - S) must shrink monotonically for nonnegative terms
    rng = np.random.default_rng(33)
    a = rng.uniform(0.0, 0.4, (2, 2))
    s = neumann_sum(SquareMatrix(a), 1e-13).entries
    partial = np.eye(2)
    power = np.eye(2)
    tails = []
    # 20 terms keeps the tail well above the 1e-13 truncation of s itself
    for _ in range(20):
        power = power @ a
        partial = partial + power
        tails.append(ring_norm(SquareMatrix(np.abs(s - partial))))
    assert all(t1 >= t2 for t1, t2 in zip(tails, tails[1:]))


# -- certificates -----------------------------------------------------------


def test_certificate_frozen_example():
    cert = certify_contraction(mat([[0.5, 0.25], [0.0, 0.5]]), 1e-9)
    assert abs(cert.rho - 0.5) < 1e-8
    assert np.allclose(cert.S.entries, [[2.0, 1.0], [0.0, 2.0]], atol=1e-9)
    assert cert.residual <= CERT_RESIDUAL_MAX
    assert cert.series_terms > 1


def test_certify_refuses_identity():
    with pytest.raises(NotCertifiedError) as exc:
        certify_contraction(SquareMatrix.identity(2), 1e-9)
    assert abs(exc.value.estimate - 1.0) < 1e-6


def test_certify_refuses_slight_expansion():
    with pytest.raises(NotCertifiedError) as exc:
        certify_contraction(mat([[1.01]]), 1e-9)
    assert abs(exc.value.estimate - 1.01) < 1e-6


def test_certify_refuses_negative_entries():
    with pytest.raises(UsageError):
        certify_contraction(mat([[-0.5]]), 1e-9)


def test_certificate_fields_are_consistent():
    rng = np.random.default_rng(22)
    for _ in range(20):
        a = SquareMatrix(rng.uniform(0.0, 0.4, (3, 3)))
        cert = certify_contraction(a, 1e-9)
        assert cert.rho < 1.0 - 1e-9
        assert np.all(cert.S.entries >= 0.0)
        lhs = (np.eye(3) - a.entries) @ cert.S.entries - np.eye(3)
        assert np.max(np.sum(np.abs(lhs), axis=1)) <= CERT_RESIDUAL_MAX


# -- linear comparison functions --------------------------------------------


def test_comparison_apply_frozen():
    phi = linear_comparison(mat([[0.25, 0.25], [0.0, 0.5]]))
    assert comparison_apply(phi, vec(1.0, 1.0)) == vec(0.5, 0.5)
    assert phi(vec(1.0, 1.0)) == vec(0.5, 0.5)
    # the deficiency t - phi(t) leaves the cone for some cone t here
    assert not phi.deficiency_in_cone


def test_diagonal_gain_has_cone_deficiency():
    phi = linear_comparison(mat([[0.5, 0.0], [0.0, 0.25]]))
    assert phi.deficiency_in_cone
    scalar = linear_comparison(mat([[0.6]]))
    assert scalar.deficiency_in_cone


def test_comparison_rejects_uncertifiable_gain():
    with pytest.raises(NotCertifiedError):
        linear_comparison(SquareMatrix.identity(2))
    with pytest.raises(UsageError):
        linear_comparison(mat([[-0.5]]))


def test_comparison_apply_rejects_negative_argument():
    phi = linear_comparison(mat([[0.5]]))
    with pytest.raises(UsageError):
        comparison_apply(phi, vec(-1.0))


def test_comparison_axioms_pass_for_half_gain():
    phi = linear_comparison(mat([[0.5, 0.0], [0.0, 0.5]]))
    report = check_comparison_axioms(phi, cone_sampler(2, seed=3), 500)
    assert report.passed
    assert report.samples_tested == 500
    assert report.tail_checked > 0


def test_comparison_axioms_fail_for_identity_callable():
    report = check_comparison_axioms(lambda t: t, cone_sampler(2, seed=4), 200)
    assert not report.passed
    assert report.shrink_violations
    assert report.tail_violations


def test_comparison_axioms_catch_non_monotone():
    # order-reversing on the first component
    def broken(t):
        return Vector(np.array([0.5 / (1.0 + t.components[0]), 0.5 * t.components[1]]))

    report = check_comparison_axioms(broken, cone_sampler(2, seed=5), 300)
    assert not report.passed
    assert report.monotone_violations


def test_comparison_axioms_slow_gain_still_clean():
    # a slow contraction must not produce spurious monotone or shrink hits
    phi = linear_comparison(mat([[0.9]]))
    report = check_comparison_axioms(phi, cone_sampler(1, seed=6), 100)
    assert not report.monotone_violations
    assert not report.shrink_violations
    assert report.passed


def test_diagonal_gain_deficit_stays_interior():
    # certified diagonal gains keep t - phi(t) interior for interior t
    rng = np.random.default_rng(77)
    for _ in range(12):
        n = int(rng.integers(1, 5))
        phi = linear_comparison(mat(np.diag(rng.uniform(0.0, 0.9, n))))
        assert phi.deficiency_in_cone
        cone = OrthantCone(n)
        for _ in range(20):
            t = Vector(rng.uniform(0.1, 10.0, n))
            assert cone.interior_contains(t - comparison_apply(phi, t))


def test_skew_gain_deficit_can_leave_cone():
    # a certified but non-diagonal gain can push the deficit out of the cone
    phi = linear_comparison(mat([[0.0, 0.9], [0.0, 0.0]]))
    assert not phi.deficiency_in_cone
    t = vec(1.0, 10.0)
    assert not OrthantCone(2).contains(t - comparison_apply(phi, t))

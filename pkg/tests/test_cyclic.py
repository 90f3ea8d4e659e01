import numpy as np
import pytest

from qybe import (CyclicRepSpec, build_cyclic_rep, central_elements,
                  cyclic_R_eigenvalues, cyclic_tensor, eigenstate_family,
                  family_closure_defect, family_ratio, partial_R, qnum,
                  sample_compatible_params, shift_prefactor,
                  tensor_power_scalars, weight_degeneracy, weyl_generators)
from qybe.errors import (InconsistentConstraints, OrderMismatch,
                         ParameterDomainError, ShiftLawViolation, WrongMode)
from qybe.qcore import DeformationParameter, sample_params, sample_u


def _random_spec(n, rng, scale=0.5):
    return CyclicRepSpec(*sample_params(rng, 3, scale), n)


@pytest.mark.parametrize("n", [3, 5])
def test_weyl_pair(n):
    q = DeformationParameter.root_of_unity(n)
    x, z = weyl_generators(n)
    assert np.abs(z @ x - q.value * x @ z).max() < 1e-12
    assert np.allclose(np.linalg.matrix_power(x, n), np.eye(n), atol=1e-12)
    assert np.allclose(np.linalg.matrix_power(z, n), np.eye(n), atol=1e-12)
    for k in range(n):
        assert np.allclose(x[:, k], np.eye(n)[:, (k + 1) % n])   # X theta_k = theta_{k+1}
        assert z[k, k] == pytest.approx(q.value**k)              # Z theta_k = q^k theta_k


def test_weyl_wrong_mode(q_generic):
    with pytest.raises(WrongMode):
        weyl_generators(3, q_generic)


def test_even_order_rejected():
    with pytest.raises(ParameterDomainError):
        CyclicRepSpec(0.1, 0.2, 0.3, 4)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_cyclic_rep_algebra(n, rng):
    for _ in range(5):
        rep = build_cyclic_rep(_random_spec(n, rng))
        assert rep.algebra_residual() < 1e-10


def test_generator_action_entries(rng):
    n = 5
    spec = _random_spec(n, rng)
    rep = build_cyclic_rep(spec)
    q = spec.q
    for k in range(n):
        assert rep.sm[(k - 1) % n, k] == pytest.approx(
            q.pow(-spec.lam / 2) * qnum(k - spec.beta, q))
        assert rep.sp[(k + 1) % n, k] == pytest.approx(
            q.pow(spec.lam / 2) * qnum(spec.alpha - k, q))


def test_integral_beta_gives_lowest_weight(rng):
    n = 5
    spec = CyclicRepSpec(complex(rng.normal(), rng.normal()), 0.0,
                         complex(rng.normal(), rng.normal()), n)
    rep = build_cyclic_rep(spec)
    assert abs(rep.sm[(0 - 1) % n, 0]) < 1e-12     # S- kills theta_0
    flags = weight_degeneracy(spec)
    assert flags["lowest_weight"] and flags["lowest_weight_at"] == 0
    assert not flags["highest_weight"]


def test_qs_power_is_scalar(rng):
    n = 7
    spec = _random_spec(n, rng)
    rep = build_cyclic_rep(spec)
    scalar = spec.q.pow(-n * (spec.alpha + spec.beta) / 2)
    assert np.allclose(rep.qs(n), scalar * np.eye(n), atol=1e-9 * max(1, abs(scalar)))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_central_elements(n, rng):
    q = DeformationParameter.root_of_unity(n)
    for _ in range(4):
        spec = _random_spec(n, rng)
        ce = central_elements(spec)
        assert ce.max_offscalar_residual < 1e-10
        # matrix-power route against the q-number-product route
        assert ce.alpha_minus == pytest.approx(ce.alpha_minus_product_route,
                                               abs=1e-9 * max(1, abs(ce.alpha_minus)))
        # raising scalar against its two-term form
        expected_plus = (q.pow(n * spec.lam / 2) * (q.value - 1 / q.value) ** (-n)
                         * (q.pow(n * spec.alpha) - q.pow(-n * spec.alpha)))
        assert ce.alpha_plus == pytest.approx(expected_plus,
                                              abs=1e-9 * max(1, abs(expected_plus)))
        assert ce.qns_scalar == pytest.approx(q.pow(-n * spec.ell))


def test_nilpotent_case_kills_lowering_scalar(rng):
    spec = CyclicRepSpec(complex(rng.normal(), rng.normal()), 2.0, 0.1j, 5)
    ce = central_elements(spec)
    assert abs(ce.alpha_minus) < 1e-10


def test_cyclic_tensor_lowering_action(rng):
    n = 3
    s1, s2 = _random_spec(n, rng), _random_spec(n, rng)
    u = sample_u(rng, scale=0.6)
    cop = cyclic_tensor(s1, s2, u)
    q = s1.q
    for k1 in range(n):
        for k2 in range(n):
            col = k1 * n + k2
            expect = q.pow((u - s1.lam - s2.alpha - s2.beta) / 2 + k2) * qnum(k1 - s1.beta, q)
            assert cop.gens.sm[((k1 - 1) % n) * n + k2, col] == pytest.approx(expect)
            expect2 = q.pow((s1.alpha + s1.beta - u - s2.lam) / 2 - k1) * qnum(k2 - s2.beta, q)
            assert cop.gens.sm[k1 * n + ((k2 - 1) % n), col] == pytest.approx(expect2)


def test_cyclic_tensor_untwisted_limit(rng):
    n = 3
    s1, s2 = _random_spec(n, rng), _random_spec(n, rng)
    r1, r2 = build_cyclic_rep(s1), build_cyclic_rep(s2)
    cop = cyclic_tensor(s1, s2, 0.0)
    sm = np.kron(r1.sm, r2.qs(1)) + np.kron(r1.qs(-1), r2.sm)
    assert np.allclose(cop.gens.sm, sm, atol=1e-12)


def test_order_mismatch(rng):
    with pytest.raises(OrderMismatch):
        cyclic_tensor(_random_spec(3, rng), _random_spec(5, rng), 0.1)


@pytest.mark.parametrize("n", [3, 5])
def test_tensor_power_scalars(n, rng):
    for _ in range(5):
        s1, s2 = _random_spec(n, rng), _random_spec(n, rng)
        u = sample_u(rng, scale=0.6)
        rep = tensor_power_scalars(s1, s2, u)
        assert rep.max_offscalar_residual < 1e-9
        assert max(rep.closed_form_errors.values()) < 1e-9
        assert set(rep.scalars) == {"sm_u", "sp_u", "sm_bar_u", "sp_bar_u"}


@pytest.mark.parametrize("n", [3, 5])
def test_shift_laws_on_admissible_draws(n, rng):
    for _ in range(4):
        s1, s2, u = sample_compatible_params(n, rng)
        dm, db = family_closure_defect(s1, s2, u)
        assert dm < 1e-9 and db < 1e-9
        fam = eigenstate_family(s1, s2, u)
        assert max(fam.shift_residuals.values()) < 1e-9
        assert fam.span_rank == 2 * n
        assert fam.ratio == pytest.approx(family_ratio(s1, s2, u))
        assert fam.barred_ratio == pytest.approx(family_ratio(s1, s2, u, barred=True))


def test_family_coefficients_are_geometric(rng):
    n = 5
    s1, s2, u = sample_compatible_params(n, rng)
    fam = eigenstate_family(s1, s2, u)
    v = fam.phi[2].reshape(n, n)
    coeffs = np.array([v[(2 - k) % n, k] for k in range(n)])
    assert np.allclose(coeffs[1:] / coeffs[:-1], fam.ratio, atol=1e-12)


def test_lowering_n_times_returns_multiple(rng):
    n = 3
    s1, s2, u = sample_compatible_params(n, rng)
    fam = eigenstate_family(s1, s2, u)
    cop = cyclic_tensor(s1, s2, u)
    v = fam.phi[1]
    w = v.copy()
    for _ in range(n):
        w = cop.gens.sm @ w
    factor = np.prod([shift_prefactor("lower", s1, s2, u, (1 - j) % n) for j in range(n)])
    assert np.allclose(w, factor * v, atol=1e-9 * max(1, abs(factor)))


def test_shift_law_violation_off_the_admissible_set(rng):
    n = 3
    s1, s2 = _random_spec(n, rng), _random_spec(n, rng)
    u = sample_u(rng)
    assert max(family_closure_defect(s1, s2, u)) > 1e-3
    with pytest.raises(ShiftLawViolation) as exc:
        eigenstate_family(s1, s2, u)
    assert exc.value.relation in ("lower", "raise", "lower_bar", "raise_bar")
    assert 0 <= exc.value.m < n


def test_cyclic_eigenvalue_geometry(rng):
    n = 5
    q = DeformationParameter.root_of_unity(n)
    s1 = CyclicRepSpec(*sample_params(rng, 3), n)
    s2 = CyclicRepSpec(*sample_params(rng, 3), n)
    u = sample_u(rng)
    vals = cyclic_R_eigenvalues(s1, s2, u, r0=2.0)
    assert vals[0] == pytest.approx(2.0)
    step = q.pow(2 - u + s2.alpha - s2.beta - s1.lam)
    for m in range(1, n):
        assert vals[m] / vals[m - 1] == pytest.approx(step)


def test_cyclic_eigenvalues_unit_modulus_for_real_data(rng):
    n = 3
    # only u, alpha2, beta2, lam1 need to be real
    s1 = CyclicRepSpec(complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal()),
                       rng.normal(), n)
    s2 = CyclicRepSpec(rng.normal(), rng.normal(), complex(rng.normal(), rng.normal()), n)
    vals = cyclic_R_eigenvalues(s1, s2, rng.normal())
    assert np.allclose(np.abs(vals), 1.0, atol=1e-12)


def test_log_ratio_constant_across_m(rng):
    n = 7
    s1, s2 = _random_spec(n, rng), _random_spec(n, rng)
    vals = cyclic_R_eigenvalues(s1, s2, sample_u(rng))
    ratios = vals[1:] / vals[:-1]
    assert np.abs(ratios - ratios[0]).max() < 1e-10


@pytest.mark.parametrize("n", [3, 5])
def test_partial_r_defining_action(n, rng):
    s1, s2, u = sample_compatible_params(n, rng)
    pr = partial_R(s1, s2, u)
    assert pr.span_rank == 2 * n
    assert pr.max_residual < 1e-9
    fam_u = eigenstate_family(s1, s2, u, enforce=False)
    fam_mu = eigenstate_family(s1, s2, -u, enforce=False)
    for m in range(n):
        lhs = pr.matrix @ fam_u.phi[m]
        rhs = pr.eigenvalues[m] * fam_mu.phibar[m]
        assert np.abs(lhs - rhs).max() < 1e-9 * max(1, np.abs(rhs).max())
        lhs = pr.matrix @ fam_u.phibar[m]
        rhs = pr.eigenvalues[m] * fam_mu.phi[m]
        assert np.abs(lhs - rhs).max() < 1e-9 * max(1, np.abs(rhs).max())


def test_partial_r_round_trip(rng):
    n = 3
    s1, s2, u = sample_compatible_params(n, rng)
    fwd = partial_R(s1, s2, u)
    back = partial_R(s1, s2, -u)
    fam_u = eigenstate_family(s1, s2, u, enforce=False)
    for m in range(n):
        v = fam_u.phi[m]
        lhs = back.matrix @ (fwd.matrix @ v)
        rhs = fwd.eigenvalues[m] * back.eigenvalues[m] * v
        assert np.abs(lhs - rhs).max() < 1e-8 * max(1, np.abs(rhs).max())


def test_partial_r_inconsistent_constraints(rng):
    """Parameters with coinciding families at u but distinct images at -u
    prescribe two different targets for the same input vector."""
    n = 3
    a1 = complex(rng.normal(0, 0.4), rng.normal(0, 0.4))
    a2 = complex(rng.normal(0, 0.4), rng.normal(0, 0.4))
    u = 2.0
    s1 = CyclicRepSpec(a1, a1, 0.3j, n)
    s2 = CyclicRepSpec(a2, a2, 0.3j, n)
    assert abs(family_ratio(s1, s2, u) - family_ratio(s1, s2, u, barred=True)) < 1e-12
    with pytest.raises(InconsistentConstraints):
        partial_R(s1, s2, u)

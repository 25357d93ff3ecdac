# tests/test_derivative.py
import math
from dataclasses import replace

import numpy as np
import pytest

from algebra.errors import ConfigurationError, ContractViolation, EstimationError, UnsupportedOperation
from derivative.cases import (
    CASES,
    const_function,
    const_slope,
    cube_function,
    cube_slope_ad_form,
    cube_slope_power,
    identity_function,
    identity_slope,
    list_functions,
    list_slopes,
    resolve_case,
    scaling_function,
    scaling_slope,
    square_function,
    square_oracle_ratio,
    square_slope_left,
    square_slope_perturbed,
    square_slope_right,
)
from derivative.checks import (
    check_differentiable,
    continuity_from_differentiability,
    derivative_at,
    factorization_residual,
    uniqueness_probe,
)
from derivative.combinators import chain_radius, slope_chain, slope_scale, slope_sum
from derivative.oracle import check_oracle_agreement, frechet_fd_oracle
from derivative.slope import GroupFunction, SlopeFunction
from derivative.theorems import check_chain_rule, check_scale_rule, check_sum_rule
from homspace.endomorphisms import power_hom, scaling_hom
from homspace.homomorphism import identity_hom
from homspace.laws import check_homomorphism_law
from homspace.metric import hom_metric
from homspace.probe import standard_probe
from tests.conftest import matrix
from utils.settings import DEFAULT_RADII, Tolerances

Y_SQUARE_IS_2I = [[1.0, 2.0], [0.5, -1.0]]


def _entries(element) -> np.ndarray:
    return element.payload.entries


# -- squaring on matrices ---------------------------------------------------------

def test_square_factorization_is_exact(matrices):
    f = square_function(matrices)
    xs, anchors = matrices.sample(1, 1000), matrices.sample(2, 1000)
    worst = max(factorization_residual(square_slope_left(f, a), x) for x, a in zip(xs, anchors))
    assert worst <= 1e-10
    worst = max(factorization_residual(square_slope_right(f, a), x) for x, a in zip(xs, anchors))
    assert worst <= 1e-10


@pytest.mark.parametrize("build", [square_slope_left, square_slope_right])
def test_square_slope_values_are_homomorphisms(matrices, build):
    f = square_function(matrices)
    a, x = matrices.sample(4, 2)
    report = check_homomorphism_law(build(f, a).slope_at(x), seed=5, count=500)
    assert report.passed, report.witness
    assert report.max_violation <= 1e-12


def test_square_derivative_at_identity_doubles(matrices):
    f = square_function(matrices)
    a = matrices.element(np.eye(2))
    y = matrices.element(matrix([[0.5, -1.0], [2.0, 3.0]]))
    np.testing.assert_allclose(_entries(derivative_at(square_slope_left(f, a))(y)), 2.0 * _entries(y))


def test_square_derivative_is_ay_plus_ya(matrices, matrix_probe):
    f = square_function(matrices)
    a = matrices.sample(3, 1)[0]
    d = derivative_at(square_slope_right(f, a))
    pa = a.payload.entries
    for t in matrix_probe:
        np.testing.assert_allclose(_entries(d(t)), pa @ t.payload.entries + t.payload.entries @ pa, rtol=1e-12, atol=1e-12)


def test_check_differentiable_passes_for_square(matrices):
    f = square_function(matrices)
    s = square_slope_left(f, matrices.sample(4, 1)[0])
    report = check_differentiable(f, s, DEFAULT_RADII, seed=5, count=200)
    assert report.passed, report.witness
    assert report.max_factorization_residual <= 1e-10
    assert report.radii_swept == sorted(DEFAULT_RADII, reverse=True)
    profile = [value for _, value in report.continuity_profile]
    assert all(b <= a + 1e-12 for a, b in zip(profile, profile[1:]))
    assert profile[-1] < 1e-3
    assert report.details["neighborhood_radius"] is None


def test_check_differentiable_passes_with_zero_absolute_tolerance(matrices):
    f = square_function(matrices)
    s = square_slope_left(f, matrices.sample(6, 1)[0])
    report = check_differentiable(f, s, DEFAULT_RADII, seed=7, count=200, tolerances=Tolerances(fact=0.0))
    assert report.passed, report.witness


def test_perturbed_slope_is_not_continuous(matrices):
    f = square_function(matrices)
    s = square_slope_perturbed(f, matrices.sample(8, 1)[0])
    report = check_differentiable(f, s, DEFAULT_RADII, seed=9, count=50)
    assert not report.passed
    assert report.max_factorization_residual <= 1e-10
    assert report.continuity_profile[-1][1] > 0.1


def test_check_differentiable_contract(matrices):
    f = square_function(matrices)
    a = matrices.identity
    with pytest.raises(ContractViolation):
        check_differentiable(square_function(matrices), square_slope_left(f, a), DEFAULT_RADII, 0, 10)
    bounded = replace(square_slope_left(f, a), neighborhood_radius=0.5)
    with pytest.raises(ContractViolation):
        check_differentiable(f, bounded, [1.0, 0.1], 0, 10)
    with pytest.raises(ContractViolation):
        check_differentiable(f, bounded, [], 0, 10)


def test_slope_function_contract(real):
    f = identity_function(real)
    with pytest.raises(ContractViolation):
        SlopeFunction(f, real.identity, 0.0, lambda x: identity_hom(real), "zero")
    non_abelian = replace(real, is_abelian=False)
    g = GroupFunction(real, non_abelian, lambda x: x, "x")
    with pytest.raises(UnsupportedOperation):
        SlopeFunction(g, real.identity, math.inf, lambda x: identity_hom(real), "id")


def test_slope_outside_the_hom_space_is_rejected(real, circle):
    f = identity_function(real)
    s = SlopeFunction(f, real.identity, math.inf, lambda x: identity_hom(circle), "wrong")
    with pytest.raises(ContractViolation):
        s.slope_at(real.identity)


def test_group_function_checks_its_groups(real, circle):
    f = identity_function(real)
    with pytest.raises(ContractViolation):
        f(circle.identity)


# -- cubing on the circle ---------------------------------------------------------

def test_cube_factorization_is_exact(circle):
    f = cube_function(circle)
    xs, anchors = circle.sample(11, 1000), circle.sample(12, 1000)
    worst = max(factorization_residual(cube_slope_power(f, a), x) for x, a in zip(xs, anchors))
    assert worst <= 1e-12


def test_cube_ad_form_agrees_with_power_form(circle):
    f = cube_function(circle)
    for a in circle.sample(13, 20):
        power, ad_form = derivative_at(cube_slope_power(f, a)), derivative_at(cube_slope_ad_form(f, a))
        for t in circle.sample(14, 50):
            assert circle.metric(power(t), ad_form(t)) <= 1e-12


def test_cube_ad_form_factorizes(circle):
    f = cube_function(circle)
    a = circle.element(2.5)
    s = cube_slope_ad_form(f, a)
    assert max(factorization_residual(s, x) for x in circle.sample(15, 200)) <= 1e-12


# -- uniqueness -------------------------------------------------------------------

def test_valid_square_slopes_agree(matrices, matrix_probe):
    f = square_function(matrices)
    a, z = matrices.sample(16, 2)
    report = uniqueness_probe(square_slope_left(f, a), square_slope_right(f, a), z, 2**20, matrix_probe)
    assert report.passed, report.witness
    assert report.details["hom_metric_at_base"] <= 1e-10
    assert report.details["indices"][-1] == 2**20


def test_identical_slopes_agree(matrices, matrix_probe):
    f = square_function(matrices)
    a, z = matrices.sample(17, 2)
    s = square_slope_left(f, a)
    assert uniqueness_probe(s, s, z, 2**20, matrix_probe).passed


def test_perturbed_slope_fails_uniqueness(matrices, matrix_probe):
    f = square_function(matrices)
    a, z = matrices.sample(18, 2)
    report = uniqueness_probe(square_slope_left(f, a), square_slope_perturbed(f, a), z, 2**20, matrix_probe)
    assert not report.passed
    assert report.details["hom_metric_at_base"] > 0.1


def test_uniqueness_contract(matrices, complex_mul, matrix_probe):
    f = square_function(matrices)
    a, b = matrices.sample(19, 2)
    with pytest.raises(ContractViolation):
        uniqueness_probe(square_slope_left(f, a), square_slope_left(f, b), a, 16, matrix_probe)
    with pytest.raises(ContractViolation):
        uniqueness_probe(square_slope_left(f, a), square_slope_left(square_function(matrices), a), a, 16, matrix_probe)

    g = GroupFunction(complex_mul, complex_mul, lambda x: x, "x")
    s = SlopeFunction(g, complex_mul.identity, math.inf, lambda x: identity_hom(complex_mul), "id")
    probe = standard_probe(complex_mul, seed=0, count=8)
    with pytest.raises(UnsupportedOperation):
        uniqueness_probe(s, s, complex_mul.element(2), 16, probe)


# -- continuity from differentiability ---------------------------------------------

@pytest.mark.parametrize("name", sorted(CASES))
def test_differentiable_cases_are_continuous(name):
    case = resolve_case(name)
    f = case.function()
    s = case.slope(case.valid_slopes[0], f, case.base_point(20))
    report = continuity_from_differentiability(f, s, DEFAULT_RADII, seed=21, count=200)
    assert report.passed, report.witness
    modulus = report.details["modulus"]
    assert all(b <= a + 1e-12 for a, b in zip(modulus, modulus[1:]))
    assert modulus[-1] < 1e-5


# -- combinators and rules ---------------------------------------------------------

def test_sum_rule_for_two_squares(matrices, matrix_probe):
    a = matrices.sample(22, 1)[0]
    s_f = square_slope_left(square_function(matrices), a)
    s_g = square_slope_right(square_function(matrices), a)
    report = check_sum_rule(s_f, s_g, matrix_probe, seed=23, count=1000)
    assert report.passed, report.witness
    assert report.details["max_factorization_residual"] <= 1e-10

    d = derivative_at(slope_sum(s_f, s_g))
    pa = a.payload.entries
    for t in matrix_probe:
        pt = t.payload.entries
        np.testing.assert_allclose(_entries(d(t)), 2.0 * (pa @ pt + pt @ pa), rtol=1e-10, atol=1e-10)


def test_sum_rule_with_a_constant(matrices, matrix_probe):
    a = matrices.sample(24, 1)[0]
    s_f = square_slope_left(square_function(matrices), a)
    s_g = const_slope(const_function(matrices, matrices), a)
    assert check_sum_rule(s_f, s_g, matrix_probe, seed=25, count=200).passed


def test_sum_needs_a_common_base_point(matrices):
    a, b = matrices.sample(26, 2)
    with pytest.raises(ContractViolation):
        slope_sum(square_slope_left(square_function(matrices), a), square_slope_left(square_function(matrices), b))


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.0, -3.5])
def test_scale_rule(matrices, matrix_probe, alpha):
    a = matrices.sample(27, 1)[0]
    s_f = square_slope_left(square_function(matrices), a)
    report = check_scale_rule(alpha, s_f, matrix_probe, seed=28, count=1000)
    assert report.passed, report.witness
    assert report.details["max_factorization_residual"] <= 1e-10

    d = derivative_at(slope_scale(alpha, s_f))
    pa = a.payload.entries
    for t in matrix_probe:
        pt = t.payload.entries
        np.testing.assert_allclose(_entries(d(t)), alpha * (pa @ pt + pt @ pa), rtol=1e-10, atol=1e-10)


def test_scale_needs_a_scalar_action(circle):
    s = cube_slope_power(cube_function(circle), circle.identity)
    with pytest.raises(UnsupportedOperation):
        slope_scale(2.0, s)


def test_chain_rule_for_fourth_power(matrices, matrix_probe):
    f, g = square_function(matrices), square_function(matrices)
    a = matrices.sample(29, 1)[0]
    s_f = square_slope_left(f, a)
    s_g = square_slope_left(g, f(a))
    report = check_chain_rule(s_g, s_f, matrix_probe, seed=30, count=1000)
    assert report.passed, report.witness
    assert report.details["max_factorization_residual"] <= 1e-9

    d = derivative_at(slope_chain(s_g, s_f))
    pa = a.payload.entries
    pa2 = pa @ pa
    for t in matrix_probe:
        pt = t.payload.entries
        inner = pa @ pt + pt @ pa
        np.testing.assert_allclose(_entries(d(t)), pa2 @ inner + inner @ pa2, rtol=1e-9, atol=1e-9)


def test_chain_rule_for_ninth_power_on_the_circle(circle):
    f, g = cube_function(circle), cube_function(circle)
    a = circle.element(0.75)
    s = slope_chain(cube_slope_power(g, f(a)), cube_slope_power(f, a))
    nine = power_hom(circle, 9)
    d = derivative_at(s)
    for t in circle.sample(31, 100):
        assert circle.metric(d(t), nine(t)) <= 1e-12
    assert max(factorization_residual(s, x) for x in circle.sample(32, 200)) <= 1e-12


def _kink_slope(real):
    """|x| at 0: sign(x) . t factors it exactly but jumps at the base point."""
    kink = GroupFunction(real, real, lambda x: real.element(abs(x.payload)), "abs")
    return SlopeFunction(kink, real.identity, math.inf, lambda x: scaling_hom(real, -1.0 if x.payload < 0 else 1.0), "sign")


def test_kink_slope_factors_but_is_not_continuous(real):
    s = _kink_slope(real)
    assert max(factorization_residual(s, x) for x in real.sample(35, 100)) == 0.0
    report = check_differentiable(s.function, s, DEFAULT_RADII, seed=36, count=50)
    assert not report.passed
    assert report.continuity_profile[-1][1] > 0.1


@pytest.mark.parametrize("rule", ["sum", "scale", "chain"])
def test_rules_reject_a_combined_slope_that_jumps(real, real_probe, rule):
    s = _kink_slope(real)
    if rule == "sum":
        report = check_sum_rule(s, identity_slope(identity_function(real), real.identity), real_probe, seed=37, count=50)
    elif rule == "scale":
        report = check_scale_rule(2.0, s, real_probe, seed=37, count=50)
    else:
        outer = identity_slope(identity_function(real), s.function(real.identity))
        report = check_chain_rule(outer, s, real_probe, seed=37, count=50)
    assert report.details["max_evaluation_error"] == 0.0
    assert report.details["continuity_profile"][-1][1] > 0.1
    assert not report.passed
    assert report.witness["part"] == "differentiability"


def test_rules_record_the_continuity_profile(matrices, matrix_probe):
    a = matrices.sample(38, 1)[0]
    s_f = square_slope_left(square_function(matrices), a)
    report = check_scale_rule(2.0, s_f, matrix_probe, seed=39, count=100)
    assert report.passed, report.witness
    profile = [p for _, p in report.details["continuity_profile"]]
    assert len(profile) == len(DEFAULT_RADII)
    assert profile[-1] < 1e-3


def test_chain_with_identity_leaves_the_slope_unchanged(matrices, matrix_probe):
    f = square_function(matrices)
    a = matrices.sample(33, 1)[0]
    s_f = square_slope_left(f, a)
    s_id = identity_slope(identity_function(matrices), f(a))
    chained = slope_chain(s_id, s_f)
    for x in matrices.sample(34, 5):
        assert hom_metric(chained.slope_at(x), s_f.slope_at(x), matrix_probe) == 0.0


def test_chain_needs_g_based_at_f_of_a(matrices):
    f = square_function(matrices)
    a = matrices.element(2.0 * np.eye(2))
    with pytest.raises(ContractViolation):
        slope_chain(square_slope_left(square_function(matrices), a), square_slope_left(f, a))


def test_chain_radius_shrinks_into_the_outer_neighbourhood(real):
    f = scaling_function(real, 2.0)
    a = real.element(1.0)
    s_f = scaling_slope(f, a, 2.0)
    outer = identity_function(real)
    s_g = replace(identity_slope(outer, f(a)), neighborhood_radius=0.5)
    assert chain_radius(s_g, s_f) == 0.25
    assert slope_chain(s_g, s_f).neighborhood_radius == 0.25


def test_chain_radius_is_inherited_from_a_global_outer_slope(real):
    f = scaling_function(real, 2.0)
    a = real.element(1.0)
    s_f = replace(scaling_slope(f, a, 2.0), neighborhood_radius=0.75)
    s_g = identity_slope(identity_function(real), f(a))
    assert chain_radius(s_g, s_f) == 0.75


def test_chain_radius_gives_up_on_a_jump(real):
    jump = GroupFunction(real, real, lambda x: real.element(0.0 if x.payload <= 1.0 else 10.0), "jump")
    a = real.element(1.0)
    s_f = SlopeFunction(jump, a, math.inf, lambda x: identity_hom(real), "not-a-slope")
    s_g = replace(identity_slope(identity_function(real), jump(a)), neighborhood_radius=0.5)
    with pytest.raises(EstimationError):
        chain_radius(s_g, s_f, count=64)


# -- finite-difference oracle -----------------------------------------------------

def test_oracle_ratio_matches_y_squared(matrices):
    f = square_function(matrices)
    s = square_slope_left(f, matrices.element(np.eye(2)))
    y = matrices.element(matrix(Y_SQUARE_IS_2I))
    assert square_oracle_ratio(y) == pytest.approx(2.0 * math.sqrt(2.0))
    report = check_oracle_agreement(s, y, expected_ratio=square_oracle_ratio)
    assert report.passed, report.witness
    assert report.details["steps"] == [1e-1, 1e-2, 1e-3]
    for ratio in report.details["ratios"]:
        assert ratio == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-9)


def test_oracle_on_random_points(matrices):
    f = square_function(matrices)
    a, y = matrices.sample(35, 2)
    report = check_oracle_agreement(square_slope_right(f, a), y, expected_ratio=square_oracle_ratio)
    assert report.passed, report.witness


def test_oracle_of_zero_direction(matrices):
    f = square_function(matrices)
    a = matrices.sample(36, 1)[0]
    assert matrices.norm(frechet_fd_oracle(f, a, matrices.identity, 1e-2)) == 0.0


def test_oracle_is_exact_for_linear_maps(real):
    f = scaling_function(real, 3.0)
    a, y = real.element(0.25), real.element(0.5)
    for h in (1e-1, 1e-2, 1e-3):
        assert frechet_fd_oracle(f, a, y, h).payload == pytest.approx(1.5, rel=1e-12)


def test_oracle_contract(matrices, circle):
    f = square_function(matrices)
    with pytest.raises(ContractViolation):
        frechet_fd_oracle(f, matrices.identity, matrices.identity, 0.0)
    g = cube_function(circle)
    with pytest.raises(UnsupportedOperation):
        frechet_fd_oracle(g, circle.identity, circle.identity, 1e-2)
    with pytest.raises(ContractViolation):
        check_oracle_agreement(square_slope_left(f, matrices.identity), matrices.identity, steps=())


def test_oracle_catches_a_wrong_derivative(matrices):
    f = square_function(matrices)
    a = matrices.element(np.eye(2))
    y = matrices.element(matrix(Y_SQUARE_IS_2I))
    report = check_oracle_agreement(square_slope_perturbed(f, a), y)
    assert not report.passed


# -- registry ---------------------------------------------------------------------

def test_registry_names():
    assert list_functions() == ["const", "cube-circle", "identity", "square-matrix"]
    assert "square-matrix/perturbed" in list_slopes()
    assert "cube-circle/ad-form" in list_slopes()
    assert resolve_case("square-matrix").valid_slopes == ["left", "right"]


def test_unknown_function_and_slope(matrices):
    with pytest.raises(ConfigurationError, match="nope"):
        resolve_case("nope")
    case = resolve_case("square-matrix")
    with pytest.raises(ConfigurationError):
        case.slope("upside-down", case.function(), matrices.identity)

# tests/test_algebra.py
from dataclasses import replace

import hypothesis
import hypothesis.strategies as st
import pytest

from algebra import axioms, divisibility
from algebra.errors import ConfigurationError, ContractViolation, EstimationError, UnsupportedOperation
from algebra.metric_group import derive_seed
from groups.registry import resolve_group
from utils.settings import Tolerances


@pytest.mark.parametrize("name", ["real-add", "pos-real-mul", "complex-mul", "circle", "matrix-add:2"])
def test_metric_axioms_hold_on_every_group(name):
    report = axioms.check_metric_axioms(resolve_group(name), seed=1, count=500)
    assert report.passed, report.witness
    assert report.anchor == axioms.ANCHOR_METRIC
    assert report.samples == 500


def test_metric_axioms_real_line_is_exact(real):
    report = axioms.check_metric_axioms(real, seed=2, count=100)
    assert report.passed
    assert report.max_violation <= 1e-12


def test_signed_metric_is_rejected_with_a_witness(real):
    broken = replace(real, metric_fn=lambda x, y: x - y)
    report = axioms.check_metric_axioms(broken, seed=3, count=100)
    assert not report.passed
    assert report.witness["axiom"] == "non-negativity"
    assert report.witness["value"] < 0


@pytest.mark.parametrize("name", ["real-add", "complex-mul", "matrix-add:2", "pos-real-mul", "circle"])
def test_group_axioms_hold(name):
    report = axioms.check_group_axioms(resolve_group(name), seed=4, count=300)
    assert report.passed, report.witness
    assert "(Abelian)" in report.description


@pytest.mark.parametrize("name", ["real-add", "complex-mul", "matrix-add:2"])
def test_product_bound_holds(name):
    report = axioms.check_group_metric_axiom1(resolve_group(name), seed=5, count=1000)
    assert report.passed, report.witness
    assert report.max_violation <= 1e-9


def test_product_bound_is_tight_on_complex_reals(complex_mul):
    x, y = complex_mul.element(2), complex_mul.element(3)
    dx, dy = complex_mul.norm(x), complex_mul.norm(y)
    assert complex_mul.norm(complex_mul.compose(x, y)) == 5.0
    assert dx * dy + dx + dy == 5.0


@hypothesis.given(st.floats(min_value=1.0, max_value=1e3), st.floats(min_value=1.0, max_value=1e3))
def test_product_bound_equality_above_one(x, y):
    spec = resolve_group("complex-mul")
    a, b = spec.element(x), spec.element(y)
    da, db = spec.norm(a), spec.norm(b)
    lhs = spec.norm(spec.compose(a, b))
    assert lhs == pytest.approx(da * db + da + db, rel=1e-12, abs=1e-12)


def test_translation_constant_is_one_on_matrices(matrices):
    k = matrices.sample(6, 1)[0]
    constant = axioms.estimate_translation_constant(matrices, k, seed=7, count=500)
    assert constant.c_k == 1.0
    assert constant.exact
    assert constant.observed == pytest.approx(1.0, rel=1e-9)
    assert axioms.check_translation_constant(matrices, k, seed=7, count=500).passed


def test_translation_constant_on_complex_is_modulus(complex_mul):
    k = complex_mul.element(2)
    constant = axioms.estimate_translation_constant(complex_mul, k, seed=8, count=1000)
    assert constant.c_k == 2.0
    assert constant.observed == pytest.approx(2.0, rel=1e-9)
    report = axioms.check_translation_constant(complex_mul, k, seed=8, count=1000)
    assert report.passed
    assert report.details["c_k"] == 2.0


def test_translation_constant_without_closed_form_is_observed(real):
    estimated = replace(real, translation_constant_fn=None)
    constant = axioms.estimate_translation_constant(estimated, estimated.element(5.0), seed=9, count=200)
    assert not constant.exact
    assert constant.c_k == pytest.approx(1.0, rel=1e-9)


def test_overstated_closed_form_is_rejected(complex_mul):
    inflated = replace(complex_mul, translation_constant_fn=lambda k: 1e6 * abs(k))
    report = axioms.check_translation_constant(inflated, inflated.element(2), seed=8, count=1000)
    assert not report.passed
    assert report.details["exact"]
    assert report.witness["c_k"] == 2e6
    assert report.witness["observed"] == pytest.approx(2.0, rel=1e-9)


def test_understated_closed_form_is_rejected(matrices):
    deflated = replace(matrices, translation_constant_fn=lambda k: 0.5)
    report = axioms.check_translation_constant(deflated, deflated.sample(6, 1)[0], seed=7, count=200)
    assert not report.passed


def test_translation_estimate_grows_with_the_sample_count(real):
    # not translation invariant, so the ratios spread out
    cubic = replace(real, metric_fn=lambda x, y: abs(x**3 - y**3), translation_constant_fn=None)
    k = cubic.element(0.5)
    observed = [axioms.estimate_translation_constant(cubic, k, seed=10, count=n).observed for n in (5, 50, 500, 2000)]
    assert observed == sorted(observed)
    assert observed[-1] > 1.0


def test_translation_constant_with_degenerate_samples(real):
    constant_sampler = replace(real, sampler_fn=lambda rng, count, scale: [1.0] * count)
    with pytest.raises(EstimationError):
        axioms.estimate_translation_constant(constant_sampler, real.identity, seed=0, count=10)


def test_translation_constant_needs_a_group_metric(real):
    with pytest.raises(ContractViolation):
        axioms.estimate_translation_constant(replace(real, claims_group_metric=False), real.identity, 0, 10)


def test_sampler_failure_is_a_configuration_error(real):
    failing = replace(real, sampler_fn=lambda rng, count, scale: 1 / 0)
    with pytest.raises(ConfigurationError):
        axioms.check_metric_axioms(failing, seed=0, count=10)


def test_count_must_be_positive(real):
    with pytest.raises(ContractViolation):
        axioms.check_group_axioms(real, seed=0, count=0)


def test_samples_keep_their_prefix(real):
    short = [x.payload for x in real.sample(13, 5)]
    long = [x.payload for x in real.sample(13, 10)]
    assert long[:5] == short


def test_derived_seeds_are_stable_and_distinct():
    assert derive_seed(0, "01-metric-axioms/real-add") == derive_seed(0, "01-metric-axioms/real-add")
    assert derive_seed(0, "01-metric-axioms/real-add") != derive_seed(0, "01-metric-axioms/circle")
    assert derive_seed(0, "x") != derive_seed(1, "x")
    assert 0 <= derive_seed(2**64 - 1, "x") < 2**64


def test_empty_worst_case_reports_zero_violation():
    report = axioms.WorstCase().report(check_id="empty", anchor="none")
    assert report.passed
    assert report.max_violation == 0.0


# -- divisibility ---------------------------------------------------------------

@pytest.mark.parametrize(
    "n_max, expected",
    [(1, [1]), (2, [1, 2]), (8, [1, 2, 4, 8]), (10, [1, 2, 4, 8, 10])],
)
def test_root_indices(n_max, expected):
    assert divisibility.root_indices(n_max) == expected


def test_nth_root_examples(real, positive, circle):
    assert divisibility.nth_root(real, real.element(6.0), 3).payload == 2.0
    assert divisibility.nth_root(positive, positive.element(8.0), 3).payload == pytest.approx(2.0, rel=1e-12)
    half = divisibility.nth_root(circle, circle.element(3.0), 2)
    assert half.payload.angle == pytest.approx(1.5)


def test_nth_root_rejects_non_positive_index(real):
    with pytest.raises(ContractViolation):
        real.nth_root(real.element(1.0), 0)


@pytest.mark.parametrize("name", ["real-add", "pos-real-mul", "circle", "matrix-add:2"])
def test_root_roundtrip(name):
    report = divisibility.check_root_roundtrip(resolve_group(name), seed=10, count=16, n_max=64)
    assert report.passed, report.witness
    assert report.samples == 16 * 64


def test_complex_multiplication_is_not_divisible(complex_mul):
    with pytest.raises(UnsupportedOperation):
        divisibility.check_root_roundtrip(complex_mul, seed=0, count=4)
    with pytest.raises(UnsupportedOperation):
        divisibility.check_root_limit(complex_mul, complex_mul.element(2), 16)


@pytest.mark.parametrize(
    "name, payload",
    [("real-add", 1.0), ("pos-real-mul", 8.0), ("circle", 1.5707963267948966)],
)
def test_root_limit(name, payload):
    spec = resolve_group(name)
    report = divisibility.check_root_limit(spec, spec.element(payload), n_max=1024)
    assert report.passed, report.witness
    distances = report.details["distances"]
    assert distances[-1] < 1e-2
    assert all(b < a for a, b in zip(distances, distances[1:]))


def test_positive_root_limit_values(positive):
    report = divisibility.check_root_limit(positive, positive.element(8.0), n_max=4)
    assert report.details["n"] == [1, 2, 4]
    assert report.details["distances"] == pytest.approx([7.0, 8.0 ** 0.5 - 1.0, 8.0 ** 0.25 - 1.0])


def test_root_limit_detects_a_stuck_root(real):
    stuck = replace(real, nth_root_fn=lambda g, n: g)
    report = divisibility.check_root_limit(stuck, stuck.element(1.0), n_max=64)
    assert not report.passed
    assert not report.details["decreasing"]


def test_root_limit_needs_two_indices(real):
    with pytest.raises(ContractViolation):
        divisibility.check_root_limit(real, real.element(1.0), n_max=1)


def test_tolerance_override_changes_the_verdict(real):
    x = real.element(1.0)
    assert divisibility.check_root_limit(real, x, n_max=1024).passed
    strict = Tolerances(root_limit=1e-4)
    assert not divisibility.check_root_limit(real, x, n_max=1024, tolerances=strict).passed

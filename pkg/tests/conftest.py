# tests/conftest.py
import numpy as np
import pytest

from groups.elements import MatrixElement
from groups.factories import (
    make_circle,
    make_complex_multiplicative,
    make_matrix_additive,
    make_positive_reals,
    make_real_additive,
)
from homspace.probe import probe_from_points, standard_probe


@pytest.fixture
def real():
    return make_real_additive()


@pytest.fixture
def positive():
    return make_positive_reals()


@pytest.fixture
def complex_mul():
    return make_complex_multiplicative()


@pytest.fixture
def circle():
    return make_circle()


@pytest.fixture
def matrices():
    return make_matrix_additive(2)


@pytest.fixture
def real_probe(real):
    """{+-1, +-10, +-100}"""
    return probe_from_points([real.element(v) for v in (1.0, -1.0, 10.0, -10.0, 100.0, -100.0)], "decades")


@pytest.fixture
def matrix_probe(matrices):
    return standard_probe(matrices, seed=3, count=64)


def matrix(rows) -> MatrixElement:
    return MatrixElement(np.asarray(rows, dtype=float))

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from epistab import figure_params, table_params


@pytest.fixture
def covid_table():
    return table_params(beta10=0.1)


@pytest.fixture
def seir_figure():
    return figure_params(mu=0.1)


def match_multisets(xs, ys):
    """Worst matched distance between two complex multisets (optimal pairing)."""
    xs = np.asarray(xs, dtype=complex)
    ys = np.asarray(ys, dtype=complex)
    assert xs.shape == ys.shape
    cost = abs(xs[:, None] - ys[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def companion_roots(coeffs):
    """Polynomial roots via the companion-matrix eigenvalues (independent oracle)."""
    return np.roots(coeffs)

"""Fixtures used by pytest."""

import math

import pytest

from blockadepy.core import hilbert_ops, models


@pytest.fixture
def default_space() -> hilbert_ops.HilbertSpace:
    """The default 2 x 5 x 5 truncation."""
    return hilbert_ops.make_space(5, 5)


@pytest.fixture
def small_space() -> hilbert_ops.HilbertSpace:
    """The smallest legal truncation, 2 x 2 x 3."""
    return hilbert_ops.make_space(2, 3)


@pytest.fixture
def blockade_params() -> models.SystemParams:
    """Parameters sitting on the analytic blockade condition."""
    return models.SystemParams.constrained(10.0, J=6.0, g=4 * math.sqrt(2), F=0.1)

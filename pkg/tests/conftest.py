"""Shared Hypothesis strategies and settings."""

from __future__ import annotations

import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from posmat import NonnegMatrix, PatternMatrix, StochasticMatrix

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def patterns(draw, min_n=1, max_n=6, square=True):
    n = draw(st.integers(min_n, max_n))
    m = n if square else draw(st.integers(min_n, max_n))
    masks = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n, max_size=n))
    return PatternMatrix.from_masks(m, masks)


@st.composite
def square_patterns(draw, min_n=2, max_n=6):
    return draw(patterns(min_n, max_n))


entries = st.one_of(
    st.just(Fraction(0)),
    st.fractions(min_value=0, max_value=5, max_denominator=7),
)


@st.composite
def nonneg_matrices(draw, nrows, ncols):
    rows = [[draw(entries) for _ in range(ncols)] for _ in range(nrows)]
    return NonnegMatrix(rows)


@st.composite
def stochastic_matrices(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    rows = []
    for _ in range(n):
        w = [draw(st.integers(0, 4)) for _ in range(n)]
        if not any(w):
            w[draw(st.integers(0, n - 1))] = 1
        rows.append([Fraction(x, sum(w)) for x in w])
    return StochasticMatrix(rows)


def lift(p: PatternMatrix) -> NonnegMatrix:
    """A numeric matrix with the given zero pattern and varied magnitudes."""
    return NonnegMatrix([[Fraction(1 + (i + 2 * j) % 5, 1 + (i * j) % 3) if x else 0
                          for j, x in enumerate(r)] for i, r in enumerate(p.to_lists())])

"""Generators: fixed families and seeded random matrices."""

from fractions import Fraction

import pytest

from posmat import (
    RangeError,
    gamma,
    generate_periodic_block,
    generate_random,
    generate_wielandt,
    gk_index,
    is_irreducible,
    is_positive,
    is_primitive,
    is_scrambling,
    period,
    random_pattern,
    random_stochastic,
)
from posmat.generators import RejectionBudgetExhausted


def test_wielandt_small_sizes():
    assert generate_wielandt(2).to_lists() == [[0, 1], [1, 1]]
    assert generate_wielandt(3).to_lists() == [[0, 1, 0], [0, 0, 1], [1, 1, 0]]
    assert gamma(generate_wielandt(2)) == 2
    assert gamma(generate_wielandt(3)) == 5


def test_wielandt_rejects_n_below_two():
    with pytest.raises(RangeError):
        generate_wielandt(1)


@pytest.mark.parametrize("sizes", [(1, 1), (2, 3), (3, 3, 3), (1, 2, 1, 2)])
def test_periodic_block_has_block_count_as_period(sizes):
    p = generate_periodic_block(sizes)
    assert p.nrows == sum(sizes)
    assert is_irreducible(p)
    assert period(p) == len(sizes)
    assert not is_primitive(p)


def test_periodic_block_gk_index_is_smallest_block():
    # every column of a block has the whole previous block as support
    assert gk_index(generate_periodic_block((3, 3, 3))) == 3
    assert gk_index(generate_periodic_block((2, 3, 4))) == 2


def test_periodic_block_rejects_one_block():
    with pytest.raises(RangeError):
        generate_periodic_block((4,))


def test_density_one_gives_positive_matrix():
    assert is_positive(random_pattern(6, 1, seed=3))
    assert is_positive(generate_random("nonneg", 5, density=1, seed=1))


def test_seed_replays_exactly():
    a = generate_random("stochastic", 5, Fraction(1, 3), seed=42)
    b = generate_random("stochastic", 5, Fraction(1, 3), seed=42)
    assert a == b
    c = generate_random("stochastic", 5, Fraction(1, 3), seed=43)
    assert a != c


def test_stochastic_rows_sum_to_one_even_when_sparse():
    for seed in range(50):
        S = random_stochastic(4, Fraction(1, 10), seed=seed)
        assert all(sum(r) == 1 for r in S.rows)


@pytest.mark.parametrize("flt,check", [
    ("irreducible", is_irreducible),
    ("primitive", is_primitive),
    ("scrambling", is_scrambling),
])
def test_filters_are_honoured(flt, check):
    for seed in range(10):
        assert check(generate_random("pattern", 5, seed=seed, filter=flt))


def test_gk_filter_uses_k():
    for seed in range(5):
        p = generate_random("pattern", 5, Fraction(2, 3), seed=seed, filter="gk", k=2)
        assert gk_index(p) >= 2


def test_budget_exhaustion_is_reported():
    # a 1/10-dense 8x8 pattern is almost never fully indecomposable
    with pytest.raises(RejectionBudgetExhausted):
        generate_random("pattern", 8, Fraction(1, 10), seed=0, filter="fully-indecomposable", budget=5)


@pytest.mark.parametrize("kwargs", [
    {"kind": "matrix", "n": 3},
    {"kind": "pattern", "n": 0},
    {"kind": "pattern", "n": 3, "density": 0},
    {"kind": "pattern", "n": 3, "density": Fraction(3, 2)},
    {"kind": "pattern", "n": 3, "filter": "sparse"},
])
def test_bad_arguments_raise_range_error(kwargs):
    with pytest.raises(RangeError):
        generate_random(**kwargs)

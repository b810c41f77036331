from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from posmat import (
    CapExceeded,
    DimensionError,
    IndexSet,
    IndexSetError,
    NonnegMatrix,
    ParseError,
    Partition,
    PatternMatrix,
    StochasticMatrix,
    bool_power,
    bool_product,
    generate_wielandt,
    has_pattern,
    indicator,
    is_column_allowable,
    is_positive,
    is_row_allowable,
    positive_columns,
    submatrix,
    to_fraction,
    transpose,
)
from posmat.core import check_cap, resolve_cap

from conftest import nonneg_matrices, patterns

P1 = NonnegMatrix([[1, 0, 0, 0], [0, 2, 0, 0], [1, 0, 0, 0], [0, 1, 0, 3]])
P2 = NonnegMatrix([[0, 0, 1, 0], [1, 0, 1, 0], [0, 0, 2, 0], [4, 0, 0, 0]])


class TestToFraction:
    def test_exact_forms(self):
        assert to_fraction("1/3") == Fraction(1, 3)
        assert to_fraction("0.1") == Fraction(1, 10)
        assert to_fraction(0.1) == Fraction(1, 10)
        assert to_fraction(Decimal("2.50")) == Fraction(5, 2)
        assert to_fraction(7) == 7

    @pytest.mark.parametrize("bad", ["x", "1/0", "nan", "inf", True, None])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            to_fraction(bad)


class TestIndexSet:
    def test_basics(self):
        s = IndexSet(5, [3, 1, 3])
        assert s.members == (1, 3)
        assert str(s) == "{1,3}"
        assert s.complement().members == (2, 4, 5)
        assert s.is_proper() and not IndexSet.full(5).is_proper()
        assert IndexSet.from_mask(5, s.mask) == s

    def test_out_of_range(self):
        with pytest.raises(IndexSetError):
            IndexSet(3, [4])
        with pytest.raises(IndexSetError):
            IndexSet(3, [0])

    @given(st.integers(1, 10), st.data())
    def test_complement_partitions_universe(self, m, data):
        members = data.draw(st.sets(st.integers(1, m)))
        s = IndexSet(m, members)
        c = s.complement()
        assert set(s) | set(c) == set(range(1, m + 1))
        assert not set(s) & set(c)


class TestPartition:
    def test_parse_and_shorthands(self):
        p = Partition.parse("{3}{1,2}", 3)
        assert [b.members for b in p] == [(1, 2), (3,)]
        assert len(Partition.parse("singletons", 4)) == 4
        assert len(Partition.parse("full", 4)) == 1

    @pytest.mark.parametrize("blocks", [[[1], [1, 2]], [[1]], [[1, 2], []]])
    def test_invalid(self, blocks):
        with pytest.raises((IndexSetError, ParseError)):
            Partition(2, blocks)


class TestMatrices:
    def test_rejects_negative_and_ragged(self):
        with pytest.raises(ValueError):
            NonnegMatrix([[1, -1]])
        with pytest.raises(DimensionError):
            NonnegMatrix([[1, 2], [3]])

    def test_stochastic_exact_row_sums(self):
        StochasticMatrix([["1/3", "2/3"], [1, 0]])
        with pytest.raises(ValueError):
            StochasticMatrix([["1/3", "1/3"], [1, 0]])

    def test_stochastic_products_stay_stochastic(self):
        A = StochasticMatrix([["1/3", "2/3"], ["1/2", "1/2"]])
        B = StochasticMatrix([[0, 1], ["1/4", "3/4"]])
        StochasticMatrix((A @ B).rows)

    def test_indicator_of_product_pair_factor(self):
        assert indicator(P1).to_lists() == [[1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 1, 0, 1]]
        assert indicator(NonnegMatrix([[0, 0], [0, 0]])) == PatternMatrix.zeros(2)

    def test_indicator_idempotent(self):
        p = indicator(P1)
        assert indicator(NonnegMatrix(p.to_lists())) == p
        assert indicator(p) == p

    def test_has_pattern(self):
        I2 = NonnegMatrix.identity(2)
        assert has_pattern(I2, PatternMatrix.zeros(2))
        assert not has_pattern(I2, PatternMatrix.ones(2))
        with pytest.raises(DimensionError):
            has_pattern(I2, PatternMatrix.zeros(3))

    def test_has_pattern_after_adding_identity(self):
        from posmat import generate_periodic_block
        P = generate_periodic_block([2, 3])
        Q = NonnegMatrix(P.to_lists()) + NonnegMatrix.identity(5)
        assert has_pattern(Q, P)

    def test_submatrix(self):
        full = IndexSet.full(4)
        assert submatrix(P1, full, full) == P1
        left = submatrix(P1, full, [1, 2, 3])
        assert left.shape == (4, 3) and is_row_allowable(left)
        assert submatrix(P1, [4], [4]).rows == ((Fraction(3),),)
        with pytest.raises(IndexSetError):
            submatrix(P1, [], [1])
        with pytest.raises(IndexSetError):
            submatrix(P1, [5], [1])

    def test_bool_product_pair_column_three(self):
        prod = bool_product(P1, P2)
        assert positive_columns(prod).members == (3,)
        assert bool_product(prod, PatternMatrix.identity(4)) == prod
        with pytest.raises(DimensionError):
            bool_product(PatternMatrix.ones(2, 3), PatternMatrix.ones(2, 3))

    def test_bool_power(self):
        W = generate_wielandt(4)
        assert bool_power(W, 1) == W
        assert is_positive(bool_power(W, 10)) and not is_positive(bool_power(W, 9))
        with pytest.raises(ValueError):
            bool_power(W, 0)
        with pytest.raises(DimensionError):
            bool_power(PatternMatrix.ones(2, 3), 2)

    def test_allowability(self):
        J = PatternMatrix.ones(3)
        assert is_row_allowable(J) and is_column_allowable(J) and is_positive(J)
        assert positive_columns(J).members == (1, 2, 3)
        first = PatternMatrix([[1, 0, 0]] * 3)
        assert is_row_allowable(first) and not is_column_allowable(first)

    def test_element_access_is_zero_based(self):
        assert P1[3, 3] == 3
        assert indicator(P1)[3, 1] == 1


class TestCaps:
    def test_override_and_env(self, monkeypatch):
        monkeypatch.delenv("POSMAT_MAX_N", raising=False)
        assert resolve_cap(24) == 24
        monkeypatch.setenv("POSMAT_MAX_N", "30")
        assert resolve_cap(24) == 30
        assert resolve_cap(24, 5) == 5

    def test_message_names_override(self, monkeypatch):
        monkeypatch.delenv("POSMAT_MAX_N", raising=False)
        with pytest.raises(CapExceeded, match="--max-n.*POSMAT_MAX_N"):
            check_cap("scan", 30, 24, None)


@given(st.data())
def test_indicator_commutes_with_products(data):
    n, m, p = (data.draw(st.integers(1, 8)) for _ in range(3))
    A = data.draw(nonneg_matrices(n, m))
    B = data.draw(nonneg_matrices(m, p))
    assert indicator(A @ B) == bool_product(indicator(A), indicator(B))


@given(patterns(1, 6, square=False))
def test_column_allowable_is_transposed_row_allowable(p):
    assert is_column_allowable(p) == is_row_allowable(transpose(p))


@given(patterns(2, 7, square=False), st.data())
def test_submatrix_composition(p, data):
    U = sorted(data.draw(st.sets(st.integers(1, p.nrows), min_size=1)))
    V = sorted(data.draw(st.sets(st.integers(1, p.ncols), min_size=1)))
    U2 = sorted(data.draw(st.sets(st.integers(1, len(U)), min_size=1)))
    V2 = sorted(data.draw(st.sets(st.integers(1, len(V)), min_size=1)))
    inner = submatrix(submatrix(p, U, V), U2, V2)
    assert inner == submatrix(p, [U[i - 1] for i in U2], [V[j - 1] for j in V2])

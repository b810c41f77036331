import random
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from posmat import (
    ChainWitness,
    DimensionError,
    HypothesisError,
    IndexSet,
    NonnegMatrix,
    Partition,
    PatternMatrix,
    arrow,
    bool_product,
    bracket_product_check,
    generate_wielandt,
    is_bracket_positive_on,
    is_column_allowable,
    is_finer,
    is_positive,
    maximal_bracket_partitions,
    partitions,
    product_in_G,
    random_pattern,
    random_stochastic,
    sum_positive_on,
    verify_chain,
)
from posmat.errors import CapExceeded

from conftest import patterns

P1 = NonnegMatrix([[1, 0, 0, 0], [0, 2, 0, 0], [1, 0, 0, 0], [0, 1, 0, 3]])
P2 = NonnegMatrix([[0, 0, 1, 0], [1, 0, 1, 0], [0, 0, 2, 0], [4, 0, 0, 0]])


class TestSumPositivity:
    def test_product_pair(self):
        assert sum_positive_on(P1, [1, 2, 3, 4], [1, 2, 3])
        assert sum_positive_on(P2, [1, 2, 3], [3])
        assert arrow(P1, [1, 2, 3, 4], [1, 2, 3])
        assert arrow(P2, [1, 2, 3], [3])

    def test_zero_matrix(self):
        Z = PatternMatrix.zeros(3)
        assert not sum_positive_on(Z, [1], [1, 2, 3])
        assert not arrow(Z, [2, 3], [1])

    def test_empty_set_rejected(self):
        with pytest.raises(ValueError):
            sum_positive_on(P1, [], [1])

    @given(patterns(1, 6, square=False), st.data())
    def test_arrow_agrees_and_is_monotone(self, p, data):
        U = data.draw(st.sets(st.integers(1, p.nrows), min_size=1))
        V = data.draw(st.sets(st.integers(1, p.ncols), min_size=1))
        holds = sum_positive_on(p, U, V)
        assert holds == arrow(p, U, V)
        if holds:
            U2 = data.draw(st.sets(st.sampled_from(sorted(U)), min_size=1))
            V2 = V | data.draw(st.sets(st.integers(1, p.ncols)))
            assert sum_positive_on(p, U2, V)
            assert sum_positive_on(p, U, V2)


class TestChains:
    def test_product_pair_chain(self):
        w = ChainWitness((IndexSet.full(4), IndexSet(4, [1, 2, 3]), IndexSet(4, [3])))
        assert verify_chain([P1, P2], w)
        assert all(bool_product(P1, P2)[i, 2] for i in range(4))

    def test_identity_chain(self):
        n = 3
        assert verify_chain([PatternMatrix.identity(n)], [IndexSet.full(n), IndexSet.full(n)])

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            verify_chain([P1, P2], [IndexSet.full(4), IndexSet.full(4)])

    def test_wielandt_backward_chain(self):
        # preimages of {j} under repeated products reach the full set after
        # exactly n^2-2n+2 steps for the Wielandt pattern
        n = 4
        W = generate_wielandt(n)
        t = n * n - 2 * n + 2
        sets = [IndexSet(n, [1])]
        for _ in range(t):
            pre = [i + 1 for i, m in enumerate(W.masks) if m & sets[0].mask]
            sets.insert(0, IndexSet(n, pre))
        assert len(sets[0]) == n
        assert verify_chain([W] * t, sets)

    def test_product_in_g_requires_preconditions(self):
        assert product_in_G(P1, [1, 2, 3, 4], [1, 2, 3], P2, [3])
        with pytest.raises(HypothesisError):
            product_in_G(P1, [1, 2, 3, 4], [3], P2, [3])

    def test_product_in_g_random(self):
        rng = random.Random(11)
        checked = 0
        for _ in range(1000):
            a, b, c = (rng.randint(1, 6) for _ in range(3))
            A = random_pattern(a, "1/2", rng=rng, ncols=b)
            B = random_pattern(b, "1/2", rng=rng, ncols=c)
            U1 = IndexSet(a, rng.sample(range(1, a + 1), rng.randint(1, a)))
            U2 = IndexSet(b, rng.sample(range(1, b + 1), rng.randint(1, b)))
            U3 = IndexSet(c, rng.sample(range(1, c + 1), rng.randint(1, c)))
            if sum_positive_on(A, U1, U2) and sum_positive_on(B, U2, U3):
                assert product_in_G(A, U1, U2, B, U3)
                checked += 1
        assert checked > 50

    @given(st.data())
    def test_long_chain_columns(self, data):
        t = data.draw(st.integers(1, 4))
        dims = [data.draw(st.integers(1, 5)) for _ in range(t + 1)]
        pats = []
        for l in range(t):
            masks = data.draw(st.lists(st.integers(0, (1 << dims[l + 1]) - 1),
                                       min_size=dims[l], max_size=dims[l]))
            pats.append(PatternMatrix.from_masks(dims[l + 1], masks))
        j = data.draw(st.integers(1, dims[-1]))
        sets = [IndexSet(dims[-1], [j])]
        for p in reversed(pats):
            sets.insert(0, IndexSet(p.nrows, [i + 1 for i, m in enumerate(p.masks) if m & sets[0].mask]))
            if not len(sets[0]):
                return
        assert verify_chain(pats, sets)
        if len(sets[0]) == dims[0]:
            prod = reduce(bool_product, pats)
            assert all((m >> (j - 1)) & 1 for m in prod.masks)


class TestPartitions:
    def test_bell_numbers(self):
        assert [sum(1 for _ in partitions(m)) for m in range(1, 7)] == [1, 2, 5, 15, 52, 203]

    def test_is_finer(self):
        singles, full = Partition.singletons(3), Partition.full(3)
        a = Partition(3, [[1, 2], [3]])
        b = Partition(3, [[1], [2, 3]])
        assert is_finer(singles, a) and is_finer(a, full)
        assert not is_finer(a, b) and not is_finer(b, a)
        with pytest.raises(DimensionError):
            is_finer(a, Partition.full(4))

    def test_positive_matrix_relative_to_full(self):
        J = PatternMatrix.ones(3)
        rep = is_bracket_positive_on(J, Partition.full(3), Partition.singletons(3))
        assert rep.holds
        assert all(sum_positive_on(J, U, V) for V, U in rep.assignment)

    def test_zero_matrix_fails(self):
        rep = is_bracket_positive_on(PatternMatrix.zeros(2), Partition.full(2), Partition.full(2))
        assert not rep.holds and rep.failing_block is not None

    @given(patterns(1, 5, square=False))
    def test_column_allowable_iff_singleton_positive(self, p):
        rep = is_bracket_positive_on(p, Partition.singletons(p.nrows), Partition.singletons(p.ncols))
        assert rep.holds == is_column_allowable(p)

    def test_maximal_partitions(self):
        J = PatternMatrix.ones(4)
        mp = maximal_bracket_partitions(J, Partition.singletons(4))
        assert mp.unique and mp.partitions[0] == Partition.full(4)
        assert maximal_bracket_partitions(PatternMatrix.zeros(3), Partition.singletons(3)).partitions == ()

    def test_maximal_partitions_identity_by_enumeration(self):
        I = PatternMatrix.identity(3)
        sigma = Partition.singletons(3)
        good = [d for d in partitions(3) if is_bracket_positive_on(I, d, sigma).holds]
        expected = {d for d in good if not any(e != d and is_finer(d, e) for e in good)}
        assert set(maximal_bracket_partitions(I, sigma).partitions) == expected
        assert expected == {Partition.singletons(3)}

    def test_maximal_partitions_can_be_several(self):
        # rows 1 and 2 each cover one column, row 3 covers both: several coarsest choices
        P = PatternMatrix([[1, 0], [0, 1], [1, 1]])
        mp = maximal_bracket_partitions(P, Partition.singletons(2))
        for d in mp.partitions:
            assert is_bracket_positive_on(P, d, Partition.singletons(2)).holds

    def test_partition_cap(self, monkeypatch):
        monkeypatch.delenv("POSMAT_MAX_N", raising=False)
        with pytest.raises(CapExceeded):
            maximal_bracket_partitions(PatternMatrix.ones(7), Partition.singletons(7))

    def test_bracket_product_positive(self):
        J = PatternMatrix.ones(3)
        deltas = [Partition.full(3), Partition.full(3), Partition.singletons(3)]
        assert bracket_product_check([J, J], deltas)
        with pytest.raises(HypothesisError):
            bracket_product_check([PatternMatrix.identity(3)] * 2, deltas)

    def test_single_factor_reduces_to_positivity_test(self):
        P = PatternMatrix([[1, 0], [1, 1]])
        d = [Partition.singletons(2), Partition.full(2)]
        assert bracket_product_check([P], d) == is_bracket_positive_on(P, *d).holds

    def test_random_stochastic_chains(self):
        rng = random.Random(5)
        trials = 0
        while trials < 500:
            n = rng.randint(2, 6)
            length = rng.randint(1, 4)
            Ps = [random_stochastic(n, "1/2", rng=rng) for _ in range(length)]
            deltas = [rng.choice(list(partitions(n))) for _ in range(length + 1)]
            if not all(is_bracket_positive_on(P, deltas[l], deltas[l + 1]).holds for l, P in enumerate(Ps)):
                continue
            trials += 1
            assert bracket_product_check(Ps, deltas)

    def test_full_to_singletons_chain_gives_positive_product(self):
        rng = random.Random(9)
        found = 0
        for _ in range(4000):
            n = rng.randint(2, 4)
            Ps = [random_pattern(n, "2/3", rng=rng) for _ in range(3)]
            deltas = [Partition.full(n)] + [rng.choice(list(partitions(n))) for _ in range(2)] + [Partition.singletons(n)]
            if all(is_bracket_positive_on(P, deltas[l], deltas[l + 1]).holds for l, P in enumerate(Ps)):
                found += 1
                assert bracket_product_check(Ps, deltas)
                assert is_positive(reduce(bool_product, Ps))
        assert found > 20

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from posmat import (
    HypothesisError,
    IndexSetError,
    NonnegMatrix,
    PatternMatrix,
    RangeError,
    deficiency_set,
    generate_periodic_block,
    gk_index,
    indicator,
    is_gk,
    is_irreducible,
    is_row_allowable,
    vector_growth,
)
from posmat.errors import CapExceeded
from posmat.fixtures import FIXTURES
from posmat.gk import _any_violation_vectorized, _first_violation

from conftest import lift, square_patterns

BLOCK9 = FIXTURES["block-cycle-9"].payload
DEGREE6 = FIXTURES["column-degree-not-g2-6"].payload
POWERS4 = FIXTURES["powers-not-g2-4"].payload
FIRSTCOL4 = FIXTURES["first-column-4"].payload


def brute_is_gk(p: PatternMatrix, k: int) -> bool:
    """Straight from the definition: for each F find a serving set E of size min(k, |F^c|)."""
    n = p.nrows
    for size in range(1, n):
        for F in combinations(range(n), size):
            outside = [i for i in range(n) if i not in F]
            need = min(k, len(outside))
            if not any(all(any(p[i, j] for j in F) for i in E) for E in combinations(outside, need)):
                return False
    return True


class TestDeficiency:
    def test_fixture_values(self):
        assert deficiency_set(POWERS4, [3, 4]).members == (1,)
        assert deficiency_set(DEGREE6, [1, 2, 3]).members == (4,)

    def test_all_ones(self):
        J = PatternMatrix.ones(5)
        assert deficiency_set(J, [2, 4]).members == (1, 3, 5)

    @pytest.mark.parametrize("F", [[], [1, 2, 3, 4]])
    def test_improper(self, F):
        with pytest.raises(IndexSetError):
            deficiency_set(POWERS4, F)


class TestIsGk:
    def test_block_cycle(self):
        assert is_gk(BLOCK9, 3)
        assert not is_gk(BLOCK9, 4)

    def test_degree_fixture_counterexample(self):
        rep = is_gk(DEGREE6, 2)
        assert not rep.is_gk
        F = rep.counterexample
        assert len(deficiency_set(DEGREE6, F)) < min(2, 6 - len(F))
        assert len(deficiency_set(DEGREE6, [1, 2, 3])) < 2

    def test_counterexample_is_lexicographically_smallest(self):
        rep = is_gk(DEGREE6, 2)
        n = 6
        bad = []
        for size in range(1, n):
            for F in combinations(range(1, n + 1), size):
                if len(deficiency_set(DEGREE6, F)) < min(2, n - size):
                    bad.append(F)
        assert rep.counterexample.members == min(bad)

    def test_offdiagonal_positive_iff_top_class(self):
        for n in range(2, 6):
            hollow = PatternMatrix([[int(i != j) for j in range(n)] for i in range(n)])
            assert gk_index(hollow) == n - 1
            broken = PatternMatrix([[int(i != j and (i, j) != (0, 1)) for j in range(n)] for i in range(n)])
            assert not is_gk(broken, n - 1)

    def test_one_by_one(self):
        assert is_gk(PatternMatrix([[1]]), 1)
        assert not is_gk(PatternMatrix([[0]]), 1)
        with pytest.raises(RangeError):
            is_gk(PatternMatrix([[1]]), 2)

    @pytest.mark.parametrize("k", [0, 4])
    def test_k_range(self, k):
        with pytest.raises(RangeError):
            is_gk(PatternMatrix.ones(4), k)

    def test_cap(self, monkeypatch):
        monkeypatch.delenv("POSMAT_MAX_N", raising=False)
        with pytest.raises(CapExceeded):
            is_gk(PatternMatrix.ones(25), 1)
        assert is_gk(PatternMatrix.ones(25), 1, max_n=25)

    def test_vectorized_agrees_with_scan(self):
        rng = random.Random(3)
        for _ in range(200):
            n = rng.randint(2, 12)
            cols = [rng.getrandbits(n) for _ in range(n)]
            k = rng.randint(1, n - 1)
            assert _any_violation_vectorized(cols, n, k) == (_first_violation(cols, n, k) is not None)

    @given(square_patterns(2, 5), st.data())
    def test_matches_definition(self, p, data):
        k = data.draw(st.integers(1, p.nrows - 1))
        assert is_gk(p, k).is_gk == brute_is_gk(p, k)


class TestIndex:
    def test_examples(self):
        assert gk_index(generate_periodic_block([2, 3])) == 2
        assert gk_index(generate_periodic_block([3, 4, 5])) == 3
        assert gk_index(FIRSTCOL4) == 0
        assert gk_index(PatternMatrix.ones(6)) == 5
        assert gk_index(PatternMatrix([[1]])) == 1
        assert gk_index(PatternMatrix([[0]])) == 0

    @given(square_patterns(2, 7))
    def test_binary_search_matches_linear_scan(self, p):
        linear = 0
        for k in range(1, p.nrows):
            if not is_gk(p, k):
                break
            linear = k
        assert gk_index(p) == linear


@given(square_patterns(2, 7))
def test_class_invariants(p):
    n = p.nrows
    flags = [is_gk(p, k).is_gk for k in range(1, n)]
    # nesting
    assert all(a or not b for a, b in zip(flags, flags[1:]))
    # k = 1 is irreducibility
    assert flags[0] == is_irreducible(p)
    # g_k implies row-allowable and k off-diagonal positives per column
    cols = p.column_masks()
    for k, f in enumerate(flags, 1):
        if f:
            assert is_row_allowable(p)
            assert all((c & ~(1 << j)).bit_count() >= k for j, c in enumerate(cols))
    # pattern invariance
    assert [is_gk(lift(p), k).is_gk for k in range(1, n)] == flags


@given(square_patterns(2, 6))
def test_counterexample_always_violates(p):
    for k in range(1, p.nrows):
        rep = is_gk(p, k)
        if not rep.is_gk:
            F = rep.counterexample
            assert len(deficiency_set(p, F)) < min(k, p.nrows - len(F))
            assert rep.deficiency == deficiency_set(p, F)


def test_symmetric_patterns_match_networkx_connectivity():
    rng = random.Random(21)
    for _ in range(150):
        n = rng.randint(2, 8)
        G = nx.gnp_random_graph(n, rng.random(), seed=rng.randrange(10**6))
        A = PatternMatrix([[int(G.has_edge(i, j)) for j in range(n)] for i in range(n)])
        kappa = nx.node_connectivity(G) if nx.is_connected(G) else 0
        if all(G.has_edge(i, j) for i in range(n) for j in range(i + 1, n)):
            kappa = n - 1
        assert gk_index(A) == kappa


class TestVectorGrowth:
    def test_irreducible_gains_a_coordinate(self):
        C = PatternMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        assert vector_growth(C, 1, [1, 0, 0]) >= 2

    def test_all_ones(self):
        assert vector_growth(NonnegMatrix(PatternMatrix.ones(4)), 3, [1, 0, 0, 0]) == 4

    def test_block_cycle_unit_vector(self):
        y = [1] + [0] * 8
        count = vector_growth(BLOCK9, 3, y)
        assert count >= 4
        direct = sum(1 for i in range(9) if y[i] + sum(BLOCK9[i, j] * y[j] for j in range(9)) > 0)
        assert count == direct

    def test_preconditions(self):
        with pytest.raises(HypothesisError):
            vector_growth(FIRSTCOL4, 1, [1, 0, 0, 0])
        with pytest.raises(HypothesisError):
            vector_growth(PatternMatrix.ones(3), 1, [1, 1, 1])
        with pytest.raises(HypothesisError):
            vector_growth(PatternMatrix.ones(3), 1, [0, 0, 0])


@given(square_patterns(2, 6), st.data())
def test_positive_diagonal_irreducible_grows_without_identity(p, data):
    # experimental: a positive diagonal should let P alone (without I) gain
    # min(k, n-h) coordinates; the claim is a stated conjecture, not a proven bound
    n = p.nrows
    p = PatternMatrix.from_masks(n, (m | (1 << i) for i, m in enumerate(p.masks)))
    k = gk_index(p)
    if k == 0:
        return
    y = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    h = sum(1 for v in y if v)
    if not 1 <= h <= n - 1:
        return
    count = sum(1 for i in range(n) if any(p[i, j] and y[j] for j in range(n)))
    assert count >= h + min(k, n - h)

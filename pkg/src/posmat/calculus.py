"""Sum-positivity, chains of index sets, and positivity on partitions.

A matrix ``P`` is sum-positive on ``U x V`` when every row ``i`` in ``U`` has
a positive entry in some column of ``V``; equivalently the submatrix
``P[U, V]`` is row-allowable, and we write ``U -> V``.  The key fact is that
these arrows compose along products: if ``P1`` is sum-positive on
``U1 x U2`` and ``P2`` on ``U2 x U3`` then ``P1 P2`` is sum-positive on
``U1 x U3``.  A chain ``<m> -> U2 -> ... -> {j}`` therefore certifies that
column ``j`` of the product is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterator, Sequence

from .core import (
    IndexSet,
    Partition,
    as_pattern,
    bool_product,
    check_cap,
    index_set,
    is_positive,
)
from .errors import DimensionError, HypothesisError, RangeError, TheoremViolation

__all__ = [
    "ChainWitness",
    "DeltaPositivityReport",
    "MaximalPartitions",
    "sum_positive_on",
    "arrow",
    "verify_chain",
    "product_in_G",
    "is_finer",
    "is_bracket_positive_on",
    "bracket_product_check",
    "partitions",
    "maximal_bracket_partitions",
]

PARTITION_CAP_DEFAULT = 6
PARTITION_CAP_HARD = 10


def sum_positive_on(P, U, V) -> bool:
    """True iff every row of ``P`` in ``U`` has a positive entry in ``V``.

    Parameters
    ----------
    P : NonnegMatrix or PatternMatrix
    U, V : IndexSet or iterable of 1-based ints
        Nonempty row and column index sets.
    """
    p = as_pattern(P)
    U = index_set(U, p.nrows)
    V = index_set(V, p.ncols)
    vm = V.mask
    return all(p.masks[i - 1] & vm for i in U)


def arrow(P, U, V) -> bool:
    """The relation ``U -> V``: each ``i`` in ``U`` reaches some ``j`` in ``V``.

    Same truth value as :func:`sum_positive_on`, evaluated entry by entry
    rather than with row masks so the two can cross-check each other.
    """
    p = as_pattern(P)
    U = index_set(U, p.nrows)
    V = index_set(V, p.ncols)
    return all(any(p[i - 1, j - 1] for j in V) for i in U)


@dataclass(frozen=True)
class ChainWitness:
    """Index sets ``U_1, ..., U_{t+1}`` for a product of ``t`` matrices.

    ``U_l`` indexes the rows of the ``l``-th factor; the last set indexes
    the columns of the final factor.
    """

    sets: tuple[IndexSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        for s in self.sets:
            if not len(s):
                raise HypothesisError("chain witness sets must be nonempty")


def verify_chain(matrices: Sequence, witness: ChainWitness | Sequence) -> bool:
    """Check ``U_l -> U_{l+1}`` for every factor ``P_l``.

    When the chain starts at the full row set and ends at a singleton
    ``{j}``, a ``True`` answer means column ``j`` of the product is
    positive; that consequence is re-checked here against the boolean
    product and a :class:`TheoremViolation` is raised if it ever fails.
    """
    pats = [as_pattern(P) for P in matrices]
    if not isinstance(witness, ChainWitness):
        witness = ChainWitness(tuple(witness))
    sets = witness.sets
    if len(sets) != len(pats) + 1:
        raise DimensionError(
            f"a chain over {len(pats)} matrices needs {len(pats) + 1} sets, got {len(sets)}"
        )
    for a, b in zip(pats, pats[1:]):
        if a.ncols != b.nrows:
            raise DimensionError(f"factors {a.shape} and {b.shape} do not chain")
    for l, p in enumerate(pats):
        if sets[l].universe != p.nrows or sets[l + 1].universe != p.ncols:
            raise DimensionError(f"set universes do not match factor {l + 1} of shape {p.shape}")
    ok = all(sum_positive_on(p, sets[l], sets[l + 1]) for l, p in enumerate(pats))
    first, last = sets[0], sets[-1]
    if ok and len(first) == first.universe and len(last) == 1:
        j = last.members[0]
        prod = reduce(bool_product, pats)
        if not all((m >> (j - 1)) & 1 for m in prod.masks):
            raise TheoremViolation(f"chain verified but column {j} of the product is not positive")
    return ok


def product_in_G(P1, U1, U2, P2, U3) -> bool:
    """Check that sum-positivity composes across one product.

    Requires ``P1`` sum-positive on ``U1 x U2`` and ``P2`` on ``U2 x U3``
    (otherwise :class:`HypothesisError`), then returns whether ``P1 P2`` is
    sum-positive on ``U1 x U3``.  A ``False`` here would be a library bug.
    """
    if not sum_positive_on(P1, U1, U2):
        raise HypothesisError("first factor is not sum-positive on U1 x U2")
    if not sum_positive_on(P2, U2, U3):
        raise HypothesisError("second factor is not sum-positive on U2 x U3")
    return sum_positive_on(bool_product(P1, P2), U1, U3)


def is_finer(d1: Partition, d2: Partition) -> bool:
    """True iff every block of ``d1`` lies inside some block of ``d2``."""
    if d1.universe != d2.universe:
        raise DimensionError("partitions live on different universes")
    return all(any(b.issubset(c) for c in d2) for b in d1)


@dataclass(frozen=True)
class DeltaPositivityReport:
    """Outcome of a partition-positivity test.

    ``assignment`` pairs each column block ``V`` with the first row block
    ``U`` (in block order) on which the matrix is sum-positive.  It is empty
    when ``holds`` is false; ``failing_block`` then names a ``V`` that no
    row block serves.
    """

    holds: bool
    assignment: tuple[tuple[IndexSet, IndexSet], ...] = ()
    failing_block: IndexSet | None = None


def is_bracket_positive_on(P, delta: Partition, sigma: Partition) -> DeltaPositivityReport:
    """Test whether ``P`` is positive on ``sigma`` relative to row partition ``delta``.

    Holds iff for each column block ``V`` of ``sigma`` some row block ``U``
    of ``delta`` makes ``P`` sum-positive on ``U x V``.  With ``delta`` the
    one-block partition and ``sigma`` the singletons this is plain
    entrywise positivity.
    """
    p = as_pattern(P)
    if delta.universe != p.nrows or sigma.universe != p.ncols:
        raise DimensionError(
            f"partitions over {delta.universe} rows and {sigma.universe} columns "
            f"do not fit a {p.nrows}x{p.ncols} matrix"
        )
    pairs = []
    for V in sigma:
        U = next((U for U in delta if sum_positive_on(p, U, V)), None)
        if U is None:
            return DeltaPositivityReport(False, (), V)
        pairs.append((V, U))
    return DeltaPositivityReport(True, tuple(pairs))


def bracket_product_check(Ps: Sequence, deltas: Sequence[Partition]) -> bool:
    """Check that partition positivity composes along a product.

    Each ``Ps[l]`` must be positive on ``deltas[l+1]`` relative to
    ``deltas[l]`` (otherwise :class:`HypothesisError`).  Returns whether the
    whole product is positive on ``deltas[-1]`` relative to ``deltas[0]``,
    and, when those are the one-block partition and the singletons, also
    that the product is entrywise positive.
    """
    if len(deltas) != len(Ps) + 1:
        raise DimensionError(f"{len(Ps)} factors need {len(Ps) + 1} partitions")
    if not Ps:
        raise RangeError("need at least one factor")
    pats = [as_pattern(P) for P in Ps]
    for l, p in enumerate(pats):
        if not is_bracket_positive_on(p, deltas[l], deltas[l + 1]).holds:
            raise HypothesisError(f"factor {l + 1} is not positive on the given partitions")
    prod = reduce(bool_product, pats)
    ok = is_bracket_positive_on(prod, deltas[0], deltas[-1]).holds
    first, last = deltas[0], deltas[-1]
    if len(first) == 1 and len(last) == last.universe:
        ok = ok and is_positive(prod)
    return ok


def partitions(m: int) -> Iterator[Partition]:
    """All partitions of ``{1..m}``, via restricted-growth strings."""
    if m < 1:
        raise RangeError("universe must be >= 1")
    a = [0] * m

    def emit():
        blocks: dict[int, list[int]] = {}
        for i, b in enumerate(a):
            blocks.setdefault(b, []).append(i + 1)
        return Partition(m, blocks.values())

    def rec(i, top):
        if i == m:
            yield emit()
            return
        for b in range(top + 2):
            a[i] = b
            yield from rec(i + 1, max(top, b))

    a[0] = 0
    yield from rec(1, 0)


@dataclass(frozen=True)
class MaximalPartitions:
    """The coarsest row partitions under which ``P`` is positive on ``sigma``.

    ``unique`` is true when exactly one maximal partition exists; nothing
    guarantees that in general, so callers should check it.
    """

    partitions: tuple[Partition, ...]

    @property
    def unique(self) -> bool:
        return len(self.partitions) == 1


def maximal_bracket_partitions(P, sigma: Partition, cap: int | None = None) -> MaximalPartitions:
    """Enumerate the maximal (coarsest) row partitions that work for ``sigma``.

    All partitions of the row set are scanned, so the row count is capped
    (default 6, never above 10).
    """
    p = as_pattern(P)
    check_cap("partition enumeration", p.nrows, PARTITION_CAP_DEFAULT, cap)
    if p.nrows > PARTITION_CAP_HARD:
        raise RangeError(f"partition enumeration is limited to {PARTITION_CAP_HARD} rows")
    good = [d for d in partitions(p.nrows) if is_bracket_positive_on(p, d, sigma).holds]
    maximal = [
        d for d in good
        if not any(e != d and is_finer(d, e) for e in good)
    ]
    maximal.sort(key=lambda d: [b.members for b in d])
    return MaximalPartitions(tuple(maximal))

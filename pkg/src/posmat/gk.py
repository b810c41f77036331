"""Recognition of g_k matrices and the vector-growth guarantee.

A square nonnegative matrix is a g_k matrix when every nonempty proper
column set ``F`` is hit, from outside, by enough rows: the deficiency set
``D_F`` (rows outside ``F`` with a positive entry in some column of ``F``)
has at least ``min(k, |F^c|)`` elements.  For ``k = 1`` this is
irreducibility; the adjacency matrix of a graph is a g_k matrix exactly when
the graph is k-connected.  The classes are nested, g_{k+1} inside g_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import IndexSet, as_pattern, check_cap, index_set, to_fraction
from .errors import DimensionError, HypothesisError, IndexSetError, RangeError, TheoremViolation

__all__ = ["GkReport", "deficiency_set", "is_gk", "gk_index", "vector_growth"]

GK_CAP_DEFAULT = 24
# below this size the early-exit scan beats numpy's fixed overhead
_VECTOR_MIN_N = 11


@dataclass(frozen=True)
class GkReport:
    """Result of a g_k test.

    ``counterexample`` is the lexicographically smallest column set ``F``
    with ``|D_F| < min(k, |F^c|)`` and ``deficiency`` its ``D_F``; both are
    ``None`` when the test passes.
    """

    k_tested: int
    is_gk: bool
    counterexample: IndexSet | None = None
    deficiency: IndexSet | None = None

    def __bool__(self) -> bool:
        return self.is_gk


def _square(P):
    p = as_pattern(P)
    if not p.is_square():
        raise DimensionError(f"expected a square matrix, got {p.nrows}x{p.ncols}")
    return p


def deficiency_set(P, F) -> IndexSet:
    """Rows outside ``F`` with a positive entry in some column of ``F``.

    ``F`` must be a nonempty proper subset of ``{1..n}``.
    """
    p = _square(P)
    n = p.nrows
    F = index_set(F, n)
    if not F.is_proper():
        raise IndexSetError(f"{F} is not a nonempty proper subset of 1..{n}")
    fm = F.mask
    return IndexSet(n, (i + 1 for i, m in enumerate(p.masks) if not (fm >> i) & 1 and m & fm))


def _first_violation(cols: Sequence[int], n: int, k: int) -> int | None:
    """Depth-first scan of column sets in lexicographic order.

    Returns the mask of the first ``F`` (as a sorted tuple, lexicographically
    least) failing the deficiency inequality, or ``None``.
    """
    full = (1 << n) - 1
    # stack entries: (mask of F, union of column masks over F, next column to try)
    stack = [(0, 0, 0)]
    while stack:
        fm, hit, nxt = stack.pop()
        for j in range(n - 1, nxt - 1, -1):
            # push in reverse so lower j is explored first
            stack.append((fm | (1 << j), hit | cols[j], j + 1))
        if fm and fm != full:
            size = fm.bit_count()
            d = (hit & ~fm).bit_count()
            if d < min(k, n - size):
                return fm
    return None


def _any_violation_vectorized(cols: Sequence[int], n: int, k: int) -> bool:
    hit = np.zeros(1 << n, dtype=np.uint64)
    for b in range(n):
        lo = 1 << b
        hit[lo: 2 * lo] = hit[:lo] | np.uint64(cols[b])
    masks = np.arange(1 << n, dtype=np.uint64)
    size = np.bitwise_count(masks).astype(np.int64)
    d = np.bitwise_count(hit & ~masks).astype(np.int64)
    need = np.minimum(k, n - size)
    bad = d < need
    bad[0] = bad[-1] = False
    return bool(bad.any())


def is_gk(P, k: int, max_n: int | None = None) -> GkReport:
    """Decide whether ``P`` is a g_k matrix.

    Parameters
    ----------
    P : square NonnegMatrix or PatternMatrix
    k : int
        In ``1..n-1`` for ``n >= 2``.  For ``n = 1`` only ``k = 1`` is
        meaningful and the answer is "``P`` is nonzero".
    max_n : int, optional
        Override for the enumeration cap (default 24).

    Returns
    -------
    GkReport
        Truthy when ``P`` is a g_k matrix.
    """
    p = _square(P)
    n = p.nrows
    if n == 1:
        if k != 1:
            raise RangeError(f"for a 1x1 matrix only k = 1 is defined, got {k}")
        return GkReport(1, bool(p.masks[0]))
    if not 1 <= k <= n - 1:
        raise RangeError(f"k must be in 1..{n - 1}, got {k}")
    check_cap("g_k subset scan", n, GK_CAP_DEFAULT, max_n)
    cols = p.column_masks()
    if n >= _VECTOR_MIN_N and not _any_violation_vectorized(cols, n, k):
        return GkReport(k, True)
    fm = _first_violation(cols, n, k)
    if fm is None:
        return GkReport(k, True)
    F = IndexSet.from_mask(n, fm)
    return GkReport(k, False, F, deficiency_set(p, F))


def gk_index(P, max_n: int | None = None) -> int:
    """The largest ``k`` for which ``P`` is a g_k matrix, or 0 if none.

    Binary search over ``k`` is valid because the classes are nested.  A
    nonzero 1x1 matrix has index 1 by convention.
    """
    p = _square(P)
    n = p.nrows
    if n == 1:
        return 1 if p.masks[0] else 0
    if not is_gk(p, 1, max_n):
        return 0
    lo, hi = 1, n - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if is_gk(p, mid, max_n):
            lo = mid
        else:
            hi = mid - 1
    return lo


def vector_growth(P, k_class: int, y: Sequence) -> int:
    """Positive-coordinate count of ``(I + P) y`` for a g_k matrix ``P``.

    With ``h`` positive coordinates in ``y`` (``1 <= h <= n-1``) the count is
    guaranteed to be at least ``h + min(k_class, n - h)``; the guarantee is
    checked and a :class:`TheoremViolation` raised if it fails.

    Raises
    ------
    HypothesisError
        If ``P`` is not a g_k matrix for ``k_class`` or ``y`` has no zero or
        no positive coordinate.
    """
    p = _square(P)
    n = p.nrows
    if n < 2:
        raise HypothesisError("vector growth needs n >= 2")
    yv = [to_fraction(v) for v in y]
    if len(yv) != n:
        raise DimensionError(f"vector of length {len(yv)} for an {n}x{n} matrix")
    if any(v < 0 for v in yv):
        raise HypothesisError("y must be nonnegative")
    h = sum(1 for v in yv if v > 0)
    if not 1 <= h <= n - 1:
        raise HypothesisError(f"y has {h} positive coordinates; need 1..{n - 1}")
    if not is_gk(p, k_class):
        raise HypothesisError(f"matrix is not a g_{k_class} matrix")
    rows = P.rows if hasattr(P, "rows") else [[Fraction(x) for x in r] for r in p.to_lists()]
    out = [yv[i] + sum((a * b for a, b in zip(rows[i], yv)), Fraction(0)) for i in range(n)]
    count = sum(1 for v in out if v > 0)
    if count < h + min(k_class, n - h):
        raise TheoremViolation(
            f"(I+P)y has {count} positive coordinates, expected at least {h + min(k_class, n - h)}"
        )
    return count

"""Closed-form exponent bounds and runtime verifiers for product positivity.

Each bound comes as a pair.  The evaluator (``bound_*``) is a total integer
function of the size parameters, usable without any matrix.  The verifier
(``verify_*``) checks a concrete instance: it first tests the hypotheses,
then the conclusion, and returns a :class:`BoundResult`.  Verifiers never
raise on an inapplicable instance; they report ``hypotheses_met=False``.

Verifiers accept either a single matrix (the homogeneous case: powers
``P^e`` and the exact least exponent) or a sequence of factors (the product
case).  Every verifier is registered in :data:`THEOREMS` under a short
descriptive id, together with a generator of random instances that satisfy
its hypotheses, so :func:`sweep` can test any of them at random.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Sequence

from . import classes
from .core import (
    IndexSet,
    NonnegMatrix,
    PatternMatrix,
    as_pattern,
    bool_power,
    bool_product,
    check_cap,
    index_set,
    is_column_allowable,
    is_positive,
    is_row_allowable,
    positive_columns,
    submatrix,
)
from .errors import PosmatError, RangeError
from .generators import generate_wielandt, random_pattern
from .gk import gk_index, is_gk

__all__ = [
    "BoundResult",
    "TheoremInfo",
    "THEOREMS",
    "bound_i_plus_p",
    "bound_full_diagonal",
    "bound_partial_diagonal",
    "bound_gk_partial_diagonal",
    "bound_girth",
    "bound_gk_girth",
    "bound_gk_primitivity",
    "bound_fully_indecomposable",
    "bound_absorbing_block",
    "bound_scrambling_chain",
    "bound_sarymsakov_scrambling",
    "bound_sarymsakov_markov",
    "verify_i_plus_p",
    "verify_full_diagonal",
    "verify_gk_diagonal_product",
    "verify_partial_diagonal_reach",
    "verify_partial_diagonal_power",
    "verify_gk_partial_diagonal_product",
    "verify_girth_power",
    "verify_gk_girth_power",
    "verify_gk_primitivity",
    "verify_wielandt_extremal",
    "verify_fully_indecomposable_product",
    "verify_gk_fully_indecomposable_product",
    "verify_absorbing_block",
    "verify_scrambling_power",
    "verify_scrambling_chain",
    "verify_sarymsakov_scrambling",
    "verify_sarymsakov_markov",
    "applicable_bounds",
    "largest_gamma",
    "sweep",
    "trial_rng",
]


@dataclass(frozen=True)
class BoundResult:
    """Outcome of one verifier run.

    ``attained_value`` is the exact least exponent (or product length) when
    it was computed, and ``slack`` is ``bound_value - attained_value``.
    ``conclusion_holds`` is ``None`` when the hypotheses fail.
    """

    theorem_id: str
    hypotheses_met: bool
    bound_value: int | None = None
    attained_value: int | None = None
    slack: int | None = None
    conclusion_holds: bool | None = None
    detail: str = ""

    @property
    def violated(self) -> bool:
        """Hypotheses hold but the conclusion does not."""
        return self.hypotheses_met and self.conclusion_holds is False


def _unmet(tid, reason, bound=None) -> BoundResult:
    return BoundResult(tid, False, bound, None, None, None, reason)


def _done(tid, bound, attained, holds, detail="") -> BoundResult:
    slack = None if attained is None or bound is None else bound - attained
    if holds and attained is not None and bound is not None and attained > bound:
        holds = False
    return BoundResult(tid, True, bound, attained, slack, holds, detail)


# ---------------------------------------------------------------- evaluators


def _check_nk(n: int, k: int):
    if n < 2:
        raise RangeError(f"n must be >= 2, got {n}")
    if not 1 <= k <= n - 1:
        raise RangeError(f"k must be in 1..{n - 1}, got {k}")


def bound_i_plus_p(n: int, k: int) -> int:
    """Exponent ``m = floor((n-2)/k) + 1`` with ``(I + P)^m`` positive for g_k ``P``."""
    _check_nk(n, k)
    return (n - 2) // k + 1


def bound_full_diagonal(n: int) -> int:
    """``n - 1``: irreducible with a positive diagonal gives ``P^(n-1)`` positive."""
    if n < 2:
        raise RangeError(f"n must be >= 2, got {n}")
    return n - 1


def bound_partial_diagonal(n: int, d: int) -> int:
    """``2n - d - 1`` for an irreducible matrix with ``d`` positive diagonal entries."""
    if n < 2 or not 1 <= d <= n:
        raise RangeError(f"need n >= 2 and 1 <= d <= n, got n={n}, d={d}")
    return 2 * n - d - 1


def bound_gk_partial_diagonal(n: int, k: int, d: int) -> int:
    """``n + m - d`` with ``m = floor((n-2)/k) + 1``."""
    if not 1 <= d <= n:
        raise RangeError(f"need 1 <= d <= n, got d={d}")
    return n + bound_i_plus_p(n, k) - d


def bound_girth(n: int, s: int) -> int:
    """``n + s(n - 2)`` for a primitive matrix of girth ``s``."""
    if n < 2 or s < 1:
        raise RangeError(f"need n >= 2 and s >= 1, got n={n}, s={s}")
    return n + s * (n - 2)


def bound_gk_girth(n: int, k: int, s: int) -> int:
    """``floor((n-s-2)/k) + 2 + s(n - max(2, k) + 1)`` for a primitive g_k matrix.

    ``n = 1`` gives 1.  For ``k = 1`` this equals :func:`bound_girth`.
    """
    if n == 1:
        return 1
    _check_nk(n, k)
    if s < 1:
        raise RangeError(f"s must be >= 1, got {s}")
    return (n - s - 2) // k + 2 + s * (n - max(2, k) + 1)


def bound_gk_primitivity(n: int, k: int = 1) -> int:
    """Exponent ``h`` such that a g_k matrix is primitive iff ``P^h`` is positive.

    ``h = n^2 - 2n + 2`` for ``k = 1`` (the Wielandt exponent), otherwise
    ``floor((n-m-3)/k) + 2 + (m+1)(n-k+1)`` with ``m = floor((n-2)/k) + 1``;
    ``h = 1`` for ``n = 1``.
    """
    if n == 1:
        return 1
    _check_nk(n, k)
    if k == 1:
        return n * n - 2 * n + 2
    m = (n - 2) // k + 1
    return (n - m - 3) // k + 2 + (m + 1) * (n - k + 1)


def bound_fully_indecomposable(n: int, k: int = 1) -> int:
    """Factors needed for a positive product: ``n - 1`` (k = 1) or ``n - k + 1``."""
    _check_nk(n, k)
    return n - 1 if k == 1 else n - k + 1


def bound_absorbing_block(n: int, m_block: int, gamma_q: int) -> int:
    """``gamma(Q) (n - m + 1)`` for a leading primitive ``m x m`` block ``Q``."""
    if not 1 <= m_block <= n or gamma_q < 1:
        raise RangeError(f"need 1 <= m <= n and gamma >= 1, got m={m_block}, gamma={gamma_q}")
    return gamma_q * (n - m_block + 1)


def bound_scrambling_chain(dims: Sequence[int]) -> int:
    """``z = min_{0 <= u <= t-1} (u + n_{u+1} - 1)`` with ``t = n_1 - 1``.

    ``dims`` is ``(n_1, n_2, ...)``: factor ``u`` is ``n_u x n_{u+1}``.
    Only the first ``t`` row counts matter.
    """
    dims = list(dims)
    if not dims or dims[0] < 2:
        raise RangeError("the first factor needs at least two rows")
    t = dims[0] - 1
    if len(dims) < t:
        raise RangeError(f"need at least {t} row counts, got {len(dims)}")
    return min(u + dims[u] - 1 for u in range(t))


def bound_sarymsakov_scrambling(n: int) -> int:
    """``n - 1`` Sarymsakov factors give a scrambling product."""
    if n < 2:
        raise RangeError(f"n must be >= 2, got {n}")
    return n - 1


def bound_sarymsakov_markov(n: int) -> int:
    """``(n - 1)^2`` Sarymsakov factors give a Markov product."""
    if n < 2:
        raise RangeError(f"n must be >= 2, got {n}")
    return (n - 1) ** 2


# ------------------------------------------------------------------- helpers


def _is_single(Ps) -> bool:
    if isinstance(Ps, (PatternMatrix, NonnegMatrix)):
        return True
    # raw nested rows of numbers
    return bool(Ps) and isinstance(Ps[0], (list, tuple)) and not isinstance(
        Ps[0][0], (list, tuple, PatternMatrix, NonnegMatrix)
    )


def _factors(Ps) -> tuple[list[PatternMatrix], bool]:
    """Normalise input to a list of patterns; flag the single-matrix case."""
    if _is_single(Ps):
        return [as_pattern(Ps)], True
    pats = [as_pattern(P) for P in Ps]
    if not pats:
        raise RangeError("need at least one factor")
    return pats, False


def _least_power(p: PatternMatrix, pred: Callable[[PatternMatrix], bool], limit: int,
                 start: int = 1) -> int | None:
    """Least ``e`` in ``start..limit`` with ``pred(p^e)``; ``p^0`` is the identity."""
    power = PatternMatrix.identity(p.nrows) if start == 0 else bool_power(p, start)
    for e in range(start, limit + 1):
        if pred(power):
            return e
        power = bool_product(power, p)
    return None


def _least_prefix(pats: Sequence[PatternMatrix], pred) -> int | None:
    acc = None
    for l, p in enumerate(pats, 1):
        acc = p if acc is None else bool_product(acc, p)
        if pred(acc):
            return l
    return None


def _product(pats):
    return reduce(bool_product, pats)


def _all_square(pats, n=None):
    n = n or pats[0].nrows
    return all(p.shape == (n, n) for p in pats)


def _full_diag(p: PatternMatrix) -> bool:
    return all((m >> i) & 1 for i, m in enumerate(p.masks))


def _has_positive_column(p: PatternMatrix) -> bool:
    return len(positive_columns(p)) > 0


# ----------------------------------------------------------------- verifiers


def verify_i_plus_p(P, k: int) -> BoundResult:
    """A g_k matrix has ``(I + P)^m`` positive with ``m = floor((n-2)/k) + 1``.

    ``attained_value`` is the least such exponent.
    """
    tid = "i-plus-p-power"
    p = as_pattern(P)
    n = p.nrows
    if not p.is_square() or n < 2 or not 1 <= k <= n - 1:
        return _unmet(tid, "needs a square matrix with n >= 2 and k in 1..n-1")
    bound = bound_i_plus_p(n, k)
    if not is_gk(p, k):
        return _unmet(tid, f"not a g_{k} matrix", bound)
    q = p | PatternMatrix.identity(n)
    attained = _least_power(q, is_positive, n - 1)
    holds = is_positive(bool_power(q, bound))
    return _done(tid, bound, attained, holds)


def verify_full_diagonal(P) -> BoundResult:
    """Irreducible with every diagonal entry positive gives ``P^(n-1)`` positive."""
    tid = "full-diagonal-power"
    p = as_pattern(P)
    n = p.nrows
    if not p.is_square() or n < 2:
        return _unmet(tid, "needs a square matrix with n >= 2")
    bound = bound_full_diagonal(n)
    if not _full_diag(p):
        return _unmet(tid, "some diagonal entry is zero", bound)
    if not classes.is_irreducible(p):
        return _unmet(tid, "matrix is reducible", bound)
    holds = is_positive(bool_power(p, bound))
    return _done(tid, bound, classes.gamma(p) if holds else None, holds)


def verify_gk_diagonal_product(Ps, k: int) -> BoundResult:
    """``m = floor((n-2)/k) + 1`` diagonal-positive g_k factors have a positive product.

    With a single matrix this checks ``gamma(P) <= m``.  With a sequence it
    needs exactly ``m`` factors; ``attained_value`` is then the shortest
    positive prefix.
    """
    tid = "gk-diagonal-product"
    pats, single = _factors(Ps)
    n = pats[0].nrows
    if not _all_square(pats) or n < 2 or not 1 <= k <= n - 1:
        return _unmet(tid, "needs square n x n factors with n >= 2 and k in 1..n-1")
    bound = bound_i_plus_p(n, k)
    if not single and len(pats) != bound:
        return _unmet(tid, f"expected {bound} factors, got {len(pats)}", bound)
    for l, p in enumerate(pats, 1):
        if not _full_diag(p):
            return _unmet(tid, f"factor {l} has a zero diagonal entry", bound)
        if not is_gk(p, k):
            return _unmet(tid, f"factor {l} is not a g_{k} matrix", bound)
    if single:
        p = pats[0]
        holds = is_positive(bool_power(p, bound))
        return _done(tid, bound, classes.gamma(p) if classes.is_primitive(p) else None, holds)
    return _done(tid, bound, _least_prefix(pats, is_positive), is_positive(_product(pats)))


def _diag_set(p: PatternMatrix, W) -> IndexSet | str:
    n = p.nrows
    diag = p.diagonal_support()
    if W is None:
        W = diag
    else:
        W = index_set(W, n)
        if not W.issubset(diag):
            return "some index of W has a zero diagonal entry"
    if not len(W):
        return "no positive diagonal entry"
    return W


def verify_partial_diagonal_reach(P, W=None) -> BoundResult:
    """``P^(n-d)`` restricted to columns ``W`` is row-allowable, and to rows ``W`` column-allowable.

    ``W`` defaults to all indices with a positive diagonal entry and
    ``d = |W|``.  ``attained_value`` is the least exponent ``e >= 0`` with
    both properties.
    """
    tid = "partial-diagonal-reach"
    p = as_pattern(P)
    n = p.nrows
    if not p.is_square() or n < 2:
        return _unmet(tid, "needs a square matrix with n >= 2")
    if not classes.is_irreducible(p):
        return _unmet(tid, "matrix is reducible")
    W = _diag_set(p, W)
    if isinstance(W, str):
        return _unmet(tid, W)
    d = len(W)
    bound = n - d
    full = IndexSet.full(n)

    def ok(q):
        return is_row_allowable(submatrix(q, full, W)) and is_column_allowable(submatrix(q, W, full))

    attained = _least_power(p, ok, n, start=0)
    holds = ok(bool_power(p, bound) if bound else PatternMatrix.identity(n))
    return _done(tid, bound, attained, holds, f"W={W}")


def verify_partial_diagonal_power(P, W=None) -> BoundResult:
    """An irreducible matrix with ``d`` positive diagonal entries has ``gamma <= 2n - d - 1``."""
    tid = "partial-diagonal-power"
    p = as_pattern(P)
    n = p.nrows
    if not p.is_square() or n < 2:
        return _unmet(tid, "needs a square matrix with n >= 2")
    if not classes.is_irreducible(p):
        return _unmet(tid, "matrix is reducible")
    W = _diag_set(p, W)
    if isinstance(W, str):
        return _unmet(tid, W)
    bound = bound_partial_diagonal(n, len(W))
    holds = is_positive(bool_power(p, bound))
    return _done(tid, bound, classes.gamma(p) if classes.is_primitive(p) else None, holds)


def verify_gk_partial_diagonal_product(Ps, k: int, W=None, variant: str = "head") -> BoundResult:
    """Positive products from g_k factors with a partially positive diagonal.

    Single matrix: an irreducible g_k matrix with ``d`` positive diagonal
    entries has ``P^(n + m - d)`` positive, ``m = floor((n-2)/k) + 1``.

    Sequence of ``m + 1`` irreducible factors, ``variant="head"``: the first
    factor restricted to columns ``W`` is row-allowable, and the other
    factors are g_k matrices positive on the diagonal at ``W``.
    ``variant="tail"`` mirrors this: the first ``m`` factors are the g_k
    ones and the last, restricted to rows ``W``, is column-allowable.

    The sequence form is *not* always true: small counterexamples exist
    (see :data:`HEAD_VARIANT_COUNTEREXAMPLE`), so ``conclusion_holds`` can
    be false here on hypothesis-satisfying input.
    """
    tid = "gk-partial-diagonal-product"
    pats, single = _factors(Ps)
    n = pats[0].nrows
    if not _all_square(pats) or n < 2 or not 1 <= k <= n - 1:
        return _unmet(tid, "needs square n x n factors with n >= 2 and k in 1..n-1")
    m = bound_i_plus_p(n, k)
    if single:
        p = pats[0]
        if not classes.is_irreducible(p):
            return _unmet(tid, "matrix is reducible")
        if not is_gk(p, k):
            return _unmet(tid, f"not a g_{k} matrix")
        Wd = _diag_set(p, W)
        if isinstance(Wd, str):
            return _unmet(tid, Wd)
        bound = bound_gk_partial_diagonal(n, k, len(Wd))
        holds = is_positive(bool_power(p, bound))
        return _done(tid, bound, classes.gamma(p) if classes.is_primitive(p) else None, holds,
                     f"W={Wd}")
    if variant not in ("head", "tail"):
        raise RangeError(f"variant must be 'head' or 'tail', got {variant!r}")
    if W is None:
        return _unmet(tid, "the product form needs an explicit W")
    W = index_set(W, n)
    if len(pats) != m + 1:
        return _unmet(tid, f"expected {m + 1} factors, got {len(pats)}")
    for l, p in enumerate(pats, 1):
        if not classes.is_irreducible(p):
            return _unmet(tid, f"factor {l} is reducible")
    full = IndexSet.full(n)
    if variant == "head":
        edge, inner = pats[0], pats[1:]
        if not is_row_allowable(submatrix(edge, full, W)):
            return _unmet(tid, "first factor restricted to columns W is not row-allowable")
    else:
        edge, inner = pats[-1], pats[:-1]
        if not is_column_allowable(submatrix(edge, W, full)):
            return _unmet(tid, "last factor restricted to rows W is not column-allowable")
    for p in inner:
        if not W.issubset(p.diagonal_support()):
            return _unmet(tid, "a g_k factor has a zero diagonal entry in W")
        if not is_gk(p, k):
            return _unmet(tid, f"a factor is not a g_{k} matrix")
    holds = is_positive(_product(pats))
    detail = "" if holds else "product not positive: counterexample to the product form"
    return _done(tid, m + 1, None, holds, detail)


# The head variant of the product form fails on this 3x3 instance (k = 1,
# W = {2}): every hypothesis holds, yet row 3 of the product is (0, 1, 1).
HEAD_VARIANT_COUNTEREXAMPLE = {
    "k": 1,
    "W": (2,),
    "factors": (
        ((1, 1, 0), (1, 1, 1), (0, 1, 0)),
        ((0, 0, 1), (1, 1, 0), (0, 1, 0)),
        ((0, 1, 1), (0, 1, 1), (1, 0, 1)),
    ),
}


def verify_girth_power(P) -> BoundResult:
    """A primitive matrix of girth ``s`` has ``gamma <= n + s(n - 2)``."""
    tid = "girth-power"
    p = as_pattern(P)
    n = p.nrows
    if not p.is_square() or n < 2:
        return _unmet(tid, "needs a square matrix with n >= 2")
    if not classes.is_primitive(p):
        return _unmet(tid, "matrix is not primitive")
    s = classes.girth(p)
    bound = bound_girth(n, s)
    g = classes.gamma(p)
    return _done(tid, bound, g, g <= bound, f"s={s}")


def verify_gk_girth_power(P, k: int) -> BoundResult:
    """A primitive g_k matrix of girth ``s`` has ``gamma <= g(n, k, s)``."""
    tid = "gk-girth-power"
    p = as_pattern(P)
    n = p.nrows
    if not p.is_square():
        return _unmet(tid, "needs a square matrix")
    if n == 1:
        if k != 1 or not p.masks[0]:
            return _unmet(tid, "a 1x1 instance must be positive with k = 1")
        return _done(tid, 1, 1, True)
    if not 1 <= k <= n - 1:
        return _unmet(tid, "k must be in 1..n-1")
    if not classes.is_primitive(p):
        return _unmet(tid, "matrix is not primitive")
    if not is_gk(p, k):
        return _unmet(tid, f"not a g_{k} matrix")
    s = classes.girth(p)
    bound = bound_gk_girth(n, k, s)
    g = classes.gamma(p)
    return _done(tid, bound, g, g <= bound and is_positive(bool_power(p, bound)), f"s={s}")


def verify_gk_primitivity(P, k: int = 1) -> BoundResult:
    """For a g_k matrix: primitive iff ``P^h`` is positive.

    The conclusion checked is that equivalence; ``attained_value`` is
    ``gamma(P)`` when ``P`` is primitive.
    """
    tid = "gk-primitivity-exponent"
    p = as_pattern(P)
    n = p.nrows
    if not p.is_square():
        return _unmet(tid, "needs a square matrix")
    if n == 1:
        if k != 1:
            return _unmet(tid, "k must be 1 for a 1x1 matrix")
        prim = bool(p.masks[0])
        return _done(tid, 1, 1 if prim else None, prim == is_positive(p))
    if not 1 <= k <= n - 1:
        return _unmet(tid, "k must be in 1..n-1")
    if not is_gk(p, k):
        return _unmet(tid, f"not a g_{k} matrix")
    h = bound_gk_primitivity(n, k)
    prim = classes.is_primitive(p)
    holds = prim == is_positive(bool_power(p, h))
    return _done(tid, h, classes.gamma(p) if prim else None, holds,
                 "primitive" if prim else "not primitive")


def verify_wielandt_extremal(n: int) -> BoundResult:
    """The Wielandt matrix attains ``gamma = n^2 - 2n + 2`` exactly."""
    tid = "wielandt"
    if n < 2:
        return _unmet(tid, "needs n >= 2")
    p = generate_wielandt(n)
    bound = bound_gk_primitivity(n, 1)
    g = classes.gamma(p)
    below = not is_positive(bool_power(p, bound - 1))
    return _done(tid, bound, g, g == bound and below)


def verify_fully_indecomposable_product(Ps) -> BoundResult:
    """``n - 1`` fully indecomposable factors have a positive product."""
    tid = "fully-indecomposable-product"
    pats, single = _factors(Ps)
    n = pats[0].nrows
    if not _all_square(pats) or n < 2:
        return _unmet(tid, "needs square n x n factors with n >= 2")
    bound = n - 1
    if not single and len(pats) != bound:
        return _unmet(tid, f"expected {bound} factors, got {len(pats)}", bound)
    for l, p in enumerate(pats, 1):
        if not classes.is_fully_indecomposable(p):
            return _unmet(tid, f"factor {l} is partly decomposable", bound)
    if single:
        p = pats[0]
        return _done(tid, bound, classes.gamma(p), is_positive(bool_power(p, bound)))
    return _done(tid, bound, _least_prefix(pats, is_positive), is_positive(_product(pats)))


def verify_gk_fully_indecomposable_product(Ps, k: int) -> BoundResult:
    """Fully indecomposable g_k factors: ``n - 1`` (k = 1) or ``n - k + 1`` suffice."""
    tid = "gk-fully-indecomposable-product"
    pats, single = _factors(Ps)
    n = pats[0].nrows
    if not _all_square(pats) or n < 2 or not 1 <= k <= n - 1:
        return _unmet(tid, "needs square n x n factors with n >= 2 and k in 1..n-1")
    bound = bound_fully_indecomposable(n, k)
    if not single and len(pats) != bound:
        return _unmet(tid, f"expected {bound} factors, got {len(pats)}", bound)
    for l, p in enumerate(pats, 1):
        if not classes.is_fully_indecomposable(p):
            return _unmet(tid, f"factor {l} is partly decomposable", bound)
        if not is_gk(p, k):
            return _unmet(tid, f"factor {l} is not a g_{k} matrix", bound)
    if single:
        p = pats[0]
        return _done(tid, bound, classes.gamma(p), is_positive(bool_power(p, bound)))
    return _done(tid, bound, _least_prefix(pats, is_positive), is_positive(_product(pats)))


def _reaches(p: PatternMatrix, target_mask: int) -> bool:
    """Every vertex has a path of length >= 1 into ``target_mask`` (or lies in it)."""
    n = p.nrows
    good = target_mask
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if not (good >> i) & 1 and p.masks[i] & good:
                good |= 1 << i
                changed = True
    return good == (1 << n) - 1


def verify_absorbing_block(P, m_block: int) -> BoundResult:
    """Leading primitive block absorbing every row: the first ``m`` columns fill in.

    ``P = [[Q, 0], [R, T]]`` with ``Q`` the leading ``m x m`` block,
    ``Q`` primitive and every index beyond ``m`` connected by a path to
    some index in ``1..m``.  Then the first ``m`` columns of
    ``P^(gamma(Q)(n - m + 1))`` are positive, and likewise for
    ``t (n - m + 1)`` with ``t = gamma(Q) + 1``.  ``attained_value`` is the
    least exponent with those columns positive.
    """
    tid = "absorbing-block-columns"
    p = as_pattern(P)
    n = p.nrows
    if not p.is_square() or n < 2 or not 1 <= m_block <= n:
        return _unmet(tid, "needs a square matrix with n >= 2 and 1 <= m <= n")
    head = (1 << m_block) - 1
    if any(p.masks[i] & ~head for i in range(m_block)):
        return _unmet(tid, "the upper-right block is not zero")
    q = submatrix(p, range(1, m_block + 1), range(1, m_block + 1))
    if not classes.is_primitive(q):
        return _unmet(tid, "the leading block is not primitive")
    if not _reaches(p, head):
        return _unmet(tid, "some trailing index has no path into the leading block")
    gq = classes.gamma(q)
    bound = bound_absorbing_block(n, m_block, gq)

    def ok(x):
        return all(m & head == head for m in x.masks)

    holds = ok(bool_power(p, bound)) and ok(bool_power(p, (gq + 1) * (n - m_block + 1)))
    return _done(tid, bound, _least_power(p, ok, bound), holds, f"gamma(Q)={gq}")


def verify_scrambling_power(P) -> BoundResult:
    """A scrambling ``n x n`` matrix has ``P^(n-1)`` Markov."""
    tid = "scrambling-power-markov"
    p = as_pattern(P)
    n = p.nrows
    if not p.is_square() or n < 2:
        return _unmet(tid, "needs a square matrix with n >= 2")
    if not classes.is_scrambling(p):
        return _unmet(tid, "matrix is not scrambling")
    bound = n - 1
    holds = _has_positive_column(bool_power(p, bound))
    return _done(tid, bound, _least_power(p, _has_positive_column, bound), holds)


def verify_scrambling_chain(Ps) -> BoundResult:
    """A chain of scrambling factors has a Markov prefix of length ``z``.

    Factor ``u`` is ``n_u x n_{u+1}`` with ``n_u >= 2`` rows; the chain must
    have exactly ``t = n_1 - 1`` factors.  ``z`` is
    :func:`bound_scrambling_chain` of the row counts, and
    ``attained_value`` is the shortest Markov prefix.
    """
    tid = "scrambling-chain-markov"
    pats, single = _factors(Ps)
    if single:
        p = pats[0]
        if not p.is_square():
            return _unmet(tid, "a single factor must be square")
        pats = [p] * max(p.nrows - 1, 1)
    for a, b in zip(pats, pats[1:]):
        if a.ncols != b.nrows:
            return _unmet(tid, f"factors {a.shape} and {b.shape} do not chain")
    dims = [p.nrows for p in pats]
    if dims[0] < 2:
        return _unmet(tid, "the first factor needs at least two rows")
    t = dims[0] - 1
    if len(pats) != t:
        return _unmet(tid, f"expected {t} factors, got {len(pats)}")
    for l, p in enumerate(pats, 1):
        if p.nrows < 2 or not classes.is_scrambling(p):
            return _unmet(tid, f"factor {l} is not scrambling")
    z = bound_scrambling_chain(dims)
    holds = _has_positive_column(_product(pats[:z]))
    return _done(tid, z, _least_prefix(pats, _has_positive_column), holds,
                 f"dims={dims + [pats[-1].ncols]}")


def _sarymsakov_chain(tid, Ps, count, pred, what):
    pats, single = _factors(Ps)
    n = pats[0].nrows
    if not _all_square(pats) or n < 2:
        return _unmet(tid, "needs square n x n factors with n >= 2")
    bound = count(n)
    if not single and len(pats) != bound:
        return _unmet(tid, f"expected {bound} factors, got {len(pats)}", bound)
    seen = set()
    for l, p in enumerate(pats, 1):
        if p in seen:
            continue
        if not classes.is_sarymsakov(p):
            return _unmet(tid, f"factor {l} is not a Sarymsakov matrix", bound)
        seen.add(p)
    if single:
        p = pats[0]
        return _done(tid, bound, _least_power(p, pred, bound), pred(bool_power(p, bound)))
    return _done(tid, bound, _least_prefix(pats, pred), pred(_product(pats)), what)


def verify_sarymsakov_scrambling(Ps) -> BoundResult:
    """``n - 1`` Sarymsakov factors have a scrambling product."""
    return _sarymsakov_chain("sarymsakov-product-scrambling", Ps, bound_sarymsakov_scrambling,
                             classes.is_scrambling, "")


def verify_sarymsakov_markov(Ps) -> BoundResult:
    """``(n - 1)^2`` Sarymsakov factors have a Markov product."""
    return _sarymsakov_chain("sarymsakov-product-markov", Ps, bound_sarymsakov_markov,
                             _has_positive_column, "")


# ------------------------------------------------------------ bound table


def applicable_bounds(P, k: int | None = None) -> list[BoundResult]:
    """Run every single-matrix verifier on ``P``.

    ``k`` defaults to the g_k index of ``P`` (or 1 when that is 0).
    """
    p = as_pattern(P)
    n = p.nrows
    if k is None:
        k = max(gk_index(p), 1) if n >= 2 else 1
    out = []
    kk = k if n >= 2 and 1 <= k <= n - 1 else None
    if kk is not None:
        out.append(verify_i_plus_p(p, kk))
    out.append(verify_full_diagonal(p))
    if kk is not None:
        out.append(verify_gk_diagonal_product(p, kk))
    out.append(verify_partial_diagonal_reach(p))
    out.append(verify_partial_diagonal_power(p))
    if kk is not None:
        out.append(verify_gk_partial_diagonal_product(p, kk))
    out.append(verify_girth_power(p))
    out.append(verify_gk_girth_power(p, k))
    out.append(verify_gk_primitivity(p, k))
    out.append(verify_fully_indecomposable_product(p))
    if kk is not None:
        out.append(verify_gk_fully_indecomposable_product(p, kk))
    out.append(verify_scrambling_power(p))
    if n <= classes.SARYMSAKOV_CAP:
        out.append(verify_sarymsakov_scrambling(p))
        out.append(verify_sarymsakov_markov(p))
    return out


def largest_gamma(n: int, k: int, max_n: int | None = None) -> tuple[int | None, int, PatternMatrix | None]:
    """Largest ``gamma`` over every primitive ``n x n`` g_k pattern, by enumeration.

    Returns ``(largest, h, example)`` with ``h = bound_gk_primitivity(n, k)``,
    so ``largest == h`` shows the exponent is attained at this size.  This is
    an exploration aid; it asserts nothing and is capped at ``n <= 4``
    (override with ``max_n``) because it visits all ``2^(n^2)`` patterns.
    """
    check_cap("primitive pattern enumeration", n, 4, max_n)
    h = bound_gk_primitivity(n, k)
    best, example = None, None
    row = (1 << n) - 1
    for code in range(1 << (n * n)):
        p = PatternMatrix.from_masks(n, [(code >> (n * i)) & row for i in range(n)])
        if not classes.is_primitive(p) or not is_gk(p, k):
            continue
        g = classes.gamma(p)
        if best is None or g > best:
            best, example = g, p
    return best, h, example


# ----------------------------------------------------------- random sweeps

_DENSITIES = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4))


def trial_rng(root_seed: int, theorem_id: str, trial: int) -> random.Random:
    """Independent generator for one trial, derived from the root seed."""
    return random.Random(f"{root_seed}:{theorem_id}:{trial}")


def _draw(rng, n, accept, densities=_DENSITIES, budget=5000, ncols=None):
    for _ in range(budget):
        p = random_pattern(n, rng.choice(densities), rng=rng, ncols=ncols)
        if accept(p):
            return p
    raise PosmatError(f"rejection budget exhausted for a {n}x{ncols or n} instance")


def _with_diag(p: PatternMatrix, idx) -> PatternMatrix:
    return PatternMatrix.from_masks(p.ncols, (m | (1 << i if i in idx else 0) for i, m in enumerate(p.masks)))


def _pick_k(rng, p) -> int:
    return rng.randint(1, gk_index(p))


def _gen_i_plus_p(rng, n):
    p = _draw(rng, n, classes.is_irreducible)
    return (p, _pick_k(rng, p)), {}


def _gen_full_diagonal(rng, n):
    p = _draw(rng, n, lambda q: classes.is_irreducible(_with_diag(q, range(n))))
    return (_with_diag(p, range(n)),), {}


def _gen_gk_diagonal_product(rng, n, trial=0):
    first = _with_diag(_draw(rng, n, lambda q: classes.is_irreducible(_with_diag(q, range(n)))), range(n))
    k = _pick_k(rng, first)
    if trial % 2:
        return (first, k), {}
    m = bound_i_plus_p(n, k)
    dens = tuple(d for d in _DENSITIES if d >= Fraction(1, 2)) if k > 1 else _DENSITIES
    rest = [
        _with_diag(_draw(rng, n, lambda q: is_gk(_with_diag(q, range(n)), k).is_gk, dens), range(n))
        for _ in range(m - 1)
    ]
    factors = [first] + rest
    rng.shuffle(factors)
    return (factors, k), {}


def _gen_partial_diagonal(rng, n):
    def ok(q):
        return classes.is_irreducible(q) and len(q.diagonal_support()) > 0
    return (_draw(rng, n, ok),), {}


def _gen_gk_partial_diagonal(rng, n):
    def ok(q):
        return classes.is_irreducible(q) and len(q.diagonal_support()) > 0
    p = _draw(rng, n, ok)
    return (p, _pick_k(rng, p)), {}


def _gen_primitive(rng, n):
    return (_draw(rng, n, classes.is_primitive),), {}


def _gen_gk_primitive(rng, n):
    p = _draw(rng, n, classes.is_primitive)
    return (p, _pick_k(rng, p)), {}


def _gen_gk_any(rng, n):
    # mix in periodic matrices so the "not primitive" side of the equivalence is exercised
    p = _draw(rng, n, lambda q: is_gk(q, 1).is_gk)
    return (p, _pick_k(rng, p)), {}


def _gen_fi_product(rng, n, trial=0):
    fi = classes.is_fully_indecomposable
    if trial % 2:
        return (_draw(rng, n, fi),), {}
    return ([_draw(rng, n, fi) for _ in range(n - 1)],), {}


def _gen_gk_fi_product(rng, n, trial=0):
    fi = classes.is_fully_indecomposable
    first = _draw(rng, n, fi)
    k = _pick_k(rng, first)
    if trial % 2:
        return (first, k), {}
    m = bound_fully_indecomposable(n, k)
    dens = tuple(d for d in _DENSITIES if d >= Fraction(1, 2)) if k > 1 else _DENSITIES
    factors = [first] + [_draw(rng, n, lambda q: fi(q) and is_gk(q, k).is_gk, dens) for _ in range(m - 1)]
    rng.shuffle(factors)
    return (factors, k), {}


def _gen_absorbing(rng, n):
    for _ in range(5000):
        mb = rng.randint(1, n - 1)
        q = _draw(rng, mb, classes.is_primitive)
        tail = random_pattern(n - mb, rng.choice(_DENSITIES), rng=rng, ncols=n)
        masks = list(q.masks) + list(tail.masks)
        p = PatternMatrix.from_masks(n, masks)
        if _reaches(p, (1 << mb) - 1):
            return (p, mb), {}
    raise PosmatError("rejection budget exhausted for an absorbing-block instance")


def _gen_scrambling(rng, n):
    return (_draw(rng, n, classes.is_scrambling),), {}


def _gen_scrambling_chain(rng, n, trial=0):
    if trial % 3 == 0:
        return ([_draw(rng, n, classes.is_scrambling) for _ in range(n - 1)],), {}
    dims = [n] + [rng.randint(2, n + 1) for _ in range(n - 2)] + [rng.randint(1, n + 1)]
    dens = tuple(d for d in _DENSITIES if d >= Fraction(1, 2))
    factors = [
        _draw(rng, dims[u], classes.is_scrambling, dens, ncols=dims[u + 1])
        for u in range(n - 1)
    ]
    return (factors,), {}


def _sarymsakov_pool(rng, n, count):
    dens = (Fraction(1, 3), Fraction(2, 5), Fraction(1, 2), Fraction(3, 5))
    return [_draw(rng, n, lambda q: classes.is_sarymsakov(q), dens) for _ in range(count)]


def _gen_sarymsakov_scrambling(rng, n, trial=0):
    if trial % 2:
        return (_sarymsakov_pool(rng, n, 1)[0],), {}
    return (_sarymsakov_pool(rng, n, n - 1),), {}


def _gen_sarymsakov_markov(rng, n, trial=0):
    if trial % 2:
        return (_sarymsakov_pool(rng, n, 1)[0],), {}
    return (_sarymsakov_pool(rng, n, (n - 1) ** 2),), {}


@dataclass(frozen=True)
class TheoremInfo:
    """A registered verifier with its random instance generator."""

    id: str
    summary: str
    verifier: Callable[..., BoundResult]
    generator: Callable | None = None
    takes_trial: bool = False
    cli_args: tuple = field(default=())


def _reg(*infos):
    return {i.id: i for i in infos}


THEOREMS: dict[str, TheoremInfo] = _reg(
    TheoremInfo("i-plus-p-power", "(I+P)^m > 0 for a g_k matrix, m = floor((n-2)/k)+1",
                verify_i_plus_p, _gen_i_plus_p, cli_args=("k",)),
    TheoremInfo("full-diagonal-power", "irreducible, positive diagonal: P^(n-1) > 0",
                verify_full_diagonal, _gen_full_diagonal),
    TheoremInfo("gk-diagonal-product", "m diagonal-positive g_k factors: positive product",
                verify_gk_diagonal_product, _gen_gk_diagonal_product, True, ("k",)),
    TheoremInfo("partial-diagonal-reach", "P^(n-d) reaches the positive-diagonal set W",
                verify_partial_diagonal_reach, _gen_partial_diagonal),
    TheoremInfo("partial-diagonal-power", "irreducible with d positive diagonal entries: gamma <= 2n-d-1",
                verify_partial_diagonal_power, _gen_partial_diagonal),
    TheoremInfo("gk-partial-diagonal-product", "irreducible g_k with d positive diagonal entries: P^(n+m-d) > 0",
                verify_gk_partial_diagonal_product, _gen_gk_partial_diagonal, cli_args=("k",)),
    TheoremInfo("girth-power", "primitive with girth s: gamma <= n+s(n-2)",
                verify_girth_power, _gen_primitive),
    TheoremInfo("gk-girth-power", "primitive g_k with girth s: gamma <= g(n,k,s)",
                verify_gk_girth_power, _gen_gk_primitive, cli_args=("k",)),
    TheoremInfo("gk-primitivity-exponent", "g_k matrix: primitive iff P^h > 0",
                verify_gk_primitivity, _gen_gk_any, cli_args=("k",)),
    TheoremInfo("wielandt", "the Wielandt matrix has gamma = n^2-2n+2",
                verify_wielandt_extremal, None, cli_args=("n",)),
    TheoremInfo("fully-indecomposable-product", "n-1 fully indecomposable factors: positive product",
                verify_fully_indecomposable_product, _gen_fi_product, True),
    TheoremInfo("gk-fully-indecomposable-product", "fully indecomposable g_k factors: n-k+1 suffice",
                verify_gk_fully_indecomposable_product, _gen_gk_fi_product, True, ("k",)),
    TheoremInfo("absorbing-block-columns", "leading primitive block: first m columns of P^(gamma(Q)(n-m+1)) > 0",
                verify_absorbing_block, _gen_absorbing, cli_args=("m",)),
    TheoremInfo("scrambling-power-markov", "scrambling P: P^(n-1) is Markov",
                verify_scrambling_power, _gen_scrambling),
    TheoremInfo("scrambling-chain-markov", "scrambling chain: prefix of length z is Markov",
                verify_scrambling_chain, _gen_scrambling_chain, True),
    TheoremInfo("sarymsakov-product-scrambling", "n-1 Sarymsakov factors: scrambling product",
                verify_sarymsakov_scrambling, _gen_sarymsakov_scrambling, True),
    TheoremInfo("sarymsakov-product-markov", "(n-1)^2 Sarymsakov factors: Markov product",
                verify_sarymsakov_markov, _gen_sarymsakov_markov, True),
)


def random_instance(theorem_id: str, rng: random.Random, n: int, trial: int = 0):
    """Draw ``(args, kwargs)`` for a verifier, satisfying its hypotheses."""
    info = THEOREMS[theorem_id]
    if info.generator is None:
        raise RangeError(f"{theorem_id} has no random instance generator")
    if info.takes_trial:
        return info.generator(rng, n, trial)
    return info.generator(rng, n)


def sweep(theorem_id: str, trials: int, sizes: Sequence[int] = (3, 4, 5, 6, 7),
          root_seed: int = 0) -> list[BoundResult]:
    """Verify ``trials`` random hypothesis-satisfying instances.

    Sizes cycle through ``sizes``; trial ``i`` uses :func:`trial_rng`, so
    any single trial can be replayed from ``(root_seed, theorem_id, i)``.
    """
    info = THEOREMS.get(theorem_id)
    if info is None:
        raise RangeError(f"unknown theorem id {theorem_id!r}")
    sizes = list(sizes)
    out = []
    for i in range(trials):
        rng = trial_rng(root_seed, theorem_id, i)
        n = sizes[i % len(sizes)]
        args, kwargs = random_instance(theorem_id, rng, n, i)
        out.append(info.verifier(*args, **kwargs))
    return out

"""Classical matrix classes and the stochastic ergodicity coefficients.

Everything structural runs on the zero pattern, read as a digraph with an
arc ``i -> j`` whenever ``P[i, j] > 0``: irreducibility is strong
connectivity, the period is the gcd of closed-walk lengths, the girth is
the shortest cycle.  Negative answers come with certificates that can be
re-checked independently.  ``mu``, ``alpha`` and :func:`power_limit` are the
only numeric functions and use exact rationals throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np

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
    to_fraction,
)
from .errors import DimensionError, HypothesisError, IndexSetError

__all__ = [
    "ReducibilityCertificate",
    "PowerLimit",
    "ClassificationReport",
    "strong_components",
    "is_irreducible",
    "reducibility_certificate",
    "irreducible_by_powers",
    "period",
    "period_by_definition",
    "is_primitive",
    "primitive_by_powers",
    "gamma",
    "girth",
    "is_fully_indecomposable",
    "partly_decomposable_certificate",
    "is_markov",
    "mu",
    "alpha",
    "is_scrambling",
    "scrambling_witness",
    "consequent_indices",
    "is_sarymsakov",
    "sarymsakov_counterexample",
    "power_limit",
    "classify",
]

FULL_INDECOMPOSABILITY_CAP = 24
SARYMSAKOV_CAP = 14


def _square(P) -> PatternMatrix:
    p = as_pattern(P)
    if not p.is_square():
        raise DimensionError(f"expected a square matrix, got {p.nrows}x{p.ncols}")
    return p


def _successors(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def strong_components(P) -> list[list[int]]:
    """Strongly connected components of the pattern digraph (0-based).

    Iterative Tarjan; components come out in reverse topological order, so
    the first one has no arcs leaving it.
    """
    p = _square(P)
    n = p.nrows
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, iter(_successors(p.masks[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(_successors(p.masks[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class ReducibilityCertificate:
    """A simultaneous row/column permutation exposing a zero block.

    After reordering rows and columns by ``permutation`` (1-based), the
    top-right ``r x (n - r)`` block is zero.  ``invariant_set`` is the set
    of the first ``r`` indices: no arc leaves it.
    """

    permutation: tuple[int, ...]
    r: int
    invariant_set: IndexSet

    def check(self, P) -> bool:
        """Re-verify the zero block on ``P``."""
        p = _square(P)
        perm = [i - 1 for i in self.permutation]
        tail = 0
        for c in perm[self.r:]:
            tail |= 1 << c
        return all(p.masks[i] & tail == 0 for i in perm[: self.r])


def reducibility_certificate(P) -> ReducibilityCertificate | None:
    """A certificate of reducibility, or ``None`` if ``P`` is irreducible.

    By convention the 1x1 zero matrix is reducible; its certificate has
    ``r = 1`` and an empty off-diagonal block.
    """
    p = _square(P)
    n = p.nrows
    if n == 1:
        if p.masks[0]:
            return None
        return ReducibilityCertificate((1,), 1, IndexSet(1, [1]))
    comps = strong_components(p)
    if len(comps) == 1:
        return None
    sink = comps[0]
    rest = [i for c in comps[1:] for i in c]
    perm = tuple(i + 1 for i in sink + sorted(rest))
    return ReducibilityCertificate(perm, len(sink), IndexSet(n, (i + 1 for i in sink)))


def is_irreducible(P) -> bool:
    """Strong connectivity of the pattern digraph (a nonzero entry for n = 1)."""
    return reducibility_certificate(P) is None


def irreducible_by_powers(P) -> bool:
    """Independent test: ``(I + P)^(n-1)`` is positive (n >= 2)."""
    p = _square(P)
    n = p.nrows
    if n == 1:
        return bool(p.masks[0])
    return is_positive(bool_power(p | PatternMatrix.identity(n), n - 1))


def _require_irreducible(p: PatternMatrix):
    if not is_irreducible(p):
        raise HypothesisError("matrix is not irreducible")


def period(P) -> int:
    """Period of an irreducible matrix: gcd of closed-walk lengths.

    Computed from BFS levels: the gcd of ``level(u) + 1 - level(v)`` over
    all arcs ``u -> v``.
    """
    p = _square(P)
    _require_irreducible(p)
    n = p.nrows
    level = [-1] * n
    level[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in _successors(p.masks[u]):
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
    g = 0
    for u in range(n):
        for v in _successors(p.masks[u]):
            g = gcd(g, level[u] + 1 - level[v])
    return g


def period_by_definition(P, limit: int | None = None) -> int:
    """Gcd of the ``k <= limit`` with a positive ``(1, 1)`` entry in ``P^k``.

    ``limit`` defaults to ``n^2``, which is enough for every irreducible
    pattern; this is a slow cross-check for :func:`period`.
    """
    p = _square(P)
    _require_irreducible(p)
    n = p.nrows
    limit = limit or n * n
    g = 0
    power = p
    for k in range(1, limit + 1):
        if power.masks[0] & 1:
            g = gcd(g, k)
        power = bool_product(power, p)
    return g


def is_primitive(P) -> bool:
    """Irreducible with period 1."""
    p = _square(P)
    if p.nrows == 1:
        return bool(p.masks[0])
    return is_irreducible(p) and period(p) == 1


def wielandt_exponent(n: int) -> int:
    return n * n - 2 * n + 2


def primitive_by_powers(P) -> bool:
    """Independent test: ``P^(n^2 - 2n + 2)`` is positive."""
    p = _square(P)
    return is_positive(bool_power(p, wielandt_exponent(p.nrows)))


def gamma(P) -> int:
    """Index of primitivity: the least ``k >= 1`` with ``P^k`` positive.

    Raises
    ------
    HypothesisError
        If ``P`` is not primitive.
    """
    p = _square(P)
    if not is_primitive(p):
        raise HypothesisError("matrix is not primitive")
    cutoff = wielandt_exponent(p.nrows)
    power = p
    for k in range(1, cutoff + 1):
        if is_positive(power):
            return k
        power = bool_product(power, p)
    raise AssertionError("primitive matrix not positive by the Wielandt exponent")


def girth(P) -> int | None:
    """Length of the shortest directed cycle, 1 for a loop, ``None`` if acyclic."""
    p = _square(P)
    n = p.nrows
    best = None
    for s in range(n):
        if (p.masks[s] >> s) & 1:
            return 1
        # BFS from s; the first arc back into s closes a shortest cycle through s
        dist = {s: 0}
        queue = deque([s])
        found = None
        while queue and found is None:
            u = queue.popleft()
            if best is not None and dist[u] + 1 >= best:
                break
            for v in _successors(p.masks[u]):
                if v == s:
                    found = dist[u] + 1
                    break
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        if found is not None and (best is None or found < best):
            best = found
    return best


def partly_decomposable_certificate(P, max_n: int | None = None):
    """A zero ``s x (n - s)`` submatrix, or ``None`` if fully indecomposable.

    Returns ``(R, C)``: 1-based row set ``R`` and column set ``C`` with
    ``|R| + |C| = n`` and ``P[R, C] = 0``.  Row sets are scanned in
    increasing bitmask order.  The 1x1 zero matrix gives ``(R, C)`` with an
    empty ``C`` by convention.
    """
    p = _square(P)
    n = p.nrows
    if n == 1:
        return None if p.masks[0] else (IndexSet(1, [1]), IndexSet(1))
    check_cap("full indecomposability scan", n, FULL_INDECOMPOSABILITY_CAP, max_n)
    full = p.full_mask
    if n >= 12:
        union = np.zeros(1 << n, dtype=np.uint64)
        for b in range(n):
            lo = 1 << b
            union[lo: 2 * lo] = union[:lo] | np.uint64(p.masks[b])
        masks = np.arange(1 << n, dtype=np.uint64)
        zero_cols = n - np.bitwise_count(union).astype(np.int64)
        bad = zero_cols >= n - np.bitwise_count(masks).astype(np.int64)
        bad[0] = bad[-1] = False
        hits = np.flatnonzero(bad)
        if not len(hits):
            return None
        rm = int(hits[0])
        um = int(union[rm])
    else:
        union = [0] * (1 << n)
        rm = None
        for mask in range(1, full):
            low = mask & -mask
            union[mask] = union[mask ^ low] | p.masks[low.bit_length() - 1]
            if n - union[mask].bit_count() >= n - mask.bit_count():
                rm = mask
                um = union[mask]
                break
        if rm is None:
            return None
    R = IndexSet.from_mask(n, rm)
    zeros = [j + 1 for j in range(n) if not (um >> j) & 1][: n - len(R)]
    return R, IndexSet(n, zeros)


def is_fully_indecomposable(P, max_n: int | None = None) -> bool:
    """No ``s x (n - s)`` zero submatrix (a nonzero entry for n = 1)."""
    return partly_decomposable_certificate(P, max_n) is None


def is_markov(P) -> bool:
    """At least one positive column."""
    return len(positive_columns(P)) > 0


def _stochastic(P) -> NonnegMatrix:
    if not isinstance(P, NonnegMatrix):
        P = NonnegMatrix(P)
    if not P.is_square():
        raise DimensionError(f"expected a square matrix, got {P.nrows}x{P.ncols}")
    if not P.is_stochastic():
        raise HypothesisError("matrix is not stochastic")
    return P


def mu(P) -> Fraction:
    """``max_j min_i P[i, j]`` for a square stochastic matrix."""
    P = _stochastic(P)
    return max(min(col) for col in zip(*P.rows))


def alpha(P) -> Fraction:
    """``min_{i,j} sum_k min(P[i,k], P[j,k])`` for a stochastic matrix, n >= 2."""
    P = _stochastic(P)
    if P.nrows < 2:
        raise HypothesisError("alpha needs at least two rows")
    rows = P.rows
    return min(
        sum((min(a, b) for a, b in zip(rows[i], rows[j])), Fraction(0))
        for i, j in combinations(range(P.nrows), 2)
    )


def scrambling_witness(P) -> dict[tuple[int, int], int] | None:
    """Map each row pair ``(i, j)``, ``i < j``, to their smallest shared column.

    Everything is 1-based.  Returns ``None`` if some pair shares no column.
    """
    p = as_pattern(P)
    if p.nrows < 2:
        raise HypothesisError("scrambling needs at least two rows")
    out = {}
    for i, j in combinations(range(p.nrows), 2):
        common = p.masks[i] & p.masks[j]
        if not common:
            return None
        out[(i + 1, j + 1)] = (common & -common).bit_length()
    return out


def is_scrambling(P) -> bool:
    """Every two distinct rows share a positive column."""
    return scrambling_witness(P) is not None


def consequent_indices(P, T) -> IndexSet:
    """Columns reached from row set ``T``: ``{j : P[i, j] > 0 for some i in T}``."""
    p = as_pattern(P)
    T = index_set(T, p.nrows)
    acc = 0
    for i in T:
        acc |= p.masks[i - 1]
    return IndexSet.from_mask(p.ncols, acc)


def sarymsakov_counterexample(P, max_n: int | None = None):
    """A violating pair ``(I, J)`` of disjoint row sets, or ``None``.

    ``(I, J)`` violates the condition when ``F(I)`` and ``F(J)`` are
    disjoint and ``|F(I) | F(J)| <= |I | J|``.  Pairs are scanned with
    ``I`` in increasing bitmask order and ``J`` a later submask of the
    complement, so each unordered pair is seen once.
    """
    p = as_pattern(P)
    m = p.nrows
    if m < 2:
        raise HypothesisError("Sarymsakov needs at least two rows")
    check_cap("Sarymsakov pair scan", m, SARYMSAKOV_CAP, max_n)
    full = (1 << m) - 1
    F = [0] * (1 << m)
    for mask in range(1, full + 1):
        low = mask & -mask
        F[mask] = F[mask ^ low] | p.masks[low.bit_length() - 1]
    for I in range(1, full):
        fi = F[I]
        rest = full & ~I
        # enumerate submasks J of rest with J > I
        J = rest
        while J:
            if J > I and not fi & F[J] and (fi | F[J]).bit_count() <= (I | J).bit_count():
                return IndexSet.from_mask(m, I), IndexSet.from_mask(m, J)
            J = (J - 1) & rest
    return None


def is_sarymsakov(P, max_n: int | None = None) -> bool:
    """Disjoint row sets either reach a common column or jointly outgrow."""
    return sarymsakov_counterexample(P, max_n) is None


@dataclass(frozen=True)
class PowerLimit:
    """Outcome of :func:`power_limit`.

    ``matrix`` is the last power computed; it approximates the limit only
    when ``converged`` is true.
    """

    converged: bool
    matrix: NonnegMatrix
    iterations: int


def power_limit(P, tolerance=Fraction(1, 10**12), max_iter: int = 1000) -> PowerLimit:
    """Iterate exact powers until successive ones agree within ``tolerance``.

    Never raises on divergence: a periodic matrix returns ``converged=False``
    after ``max_iter`` steps.
    """
    P = _stochastic(P)
    tol = to_fraction(tolerance)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    current = P
    for it in range(1, max_iter + 1):
        nxt = current @ P
        diff = max(abs(a - b) for r, s in zip(current.rows, nxt.rows) for a, b in zip(r, s))
        if diff < tol:
            return PowerLimit(True, nxt, it)
        current = nxt
    return PowerLimit(False, current, max_iter)


@dataclass
class ClassificationReport:
    """Every classification of one square matrix, with certificates.

    Fields that do not apply (the period of a reducible matrix, alpha of a
    non-stochastic matrix) are ``None``.
    """

    n: int
    row_allowable: bool
    column_allowable: bool
    irreducible: bool
    primitive: bool
    period: int | None
    girth: int | None
    gamma: int | None
    gk_index: int
    fully_indecomposable: bool
    markov: bool
    scrambling: bool | None
    sarymsakov: bool | None
    stochastic: bool
    mu: Fraction | None = None
    alpha: Fraction | None = None
    certificates: dict = field(default_factory=dict)


def classify(P, max_n: int | None = None) -> ClassificationReport:
    """Run every predicate on a square matrix and collect certificates."""
    from .gk import gk_index

    p = _square(P)
    n = p.nrows
    cert = reducibility_certificate(p)
    irr = cert is None
    prim = is_primitive(p)
    pd = partly_decomposable_certificate(p, max_n)
    certificates: dict = {}
    if cert is not None:
        certificates["reducible"] = {
            "permutation": list(cert.permutation),
            "r": cert.r,
            "invariant_set": list(cert.invariant_set),
        }
    if pd is not None:
        certificates["partly_decomposable"] = {"rows": list(pd[0]), "zero_columns": list(pd[1])}
    scr = sar = None
    if n >= 2:
        wit = scrambling_witness(p)
        scr = wit is not None
        if wit is not None:
            certificates["scrambling"] = {f"{i},{j}": k for (i, j), k in wit.items()}
        else:
            i, j = next(
                (i + 1, j + 1)
                for i, j in combinations(range(n), 2)
                if not p.masks[i] & p.masks[j]
            )
            certificates["not_scrambling"] = [i, j]
        ce = sarymsakov_counterexample(p, max_n)
        sar = ce is None
        if ce is not None:
            certificates["not_sarymsakov"] = {"I": list(ce[0]), "J": list(ce[1])}
    g = gamma(p) if prim else None
    if g is not None:
        certificates["primitive"] = {"exponent": g}
    pc = positive_columns(p)
    if len(pc):
        certificates["markov"] = {"positive_columns": list(pc)}
    stochastic = isinstance(P, NonnegMatrix) and P.is_stochastic()
    return ClassificationReport(
        n=n,
        row_allowable=is_row_allowable(p),
        column_allowable=is_column_allowable(p),
        irreducible=irr,
        primitive=prim,
        period=period(p) if irr else None,
        girth=girth(p),
        gamma=g,
        gk_index=gk_index(p, max_n),
        fully_indecomposable=pd is None,
        markov=len(pc) > 0,
        scrambling=scr,
        sarymsakov=sar,
        stochastic=stochastic,
        mu=mu(P) if stochastic else None,
        alpha=alpha(P) if stochastic and n >= 2 else None,
        certificates=certificates,
    )

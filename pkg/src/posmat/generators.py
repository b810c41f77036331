"""Deterministic generators for test and demo matrices.

Every random generator takes either a ``seed`` or a ready
:class:`random.Random`; the same seed always yields the same matrix.
Filtered variants use rejection sampling and give up with
:class:`RejectionBudgetExhausted` after ``budget`` attempts.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .core import NonnegMatrix, PatternMatrix, StochasticMatrix, to_fraction
from .errors import PosmatError, RangeError

__all__ = [
    "RejectionBudgetExhausted",
    "generate_wielandt",
    "generate_periodic_block",
    "random_pattern",
    "random_nonneg",
    "random_stochastic",
    "generate_random",
    "KINDS",
    "FILTERS",
]

KINDS = ("pattern", "nonneg", "stochastic")
FILTERS = ("irreducible", "primitive", "scrambling", "sarymsakov", "fully-indecomposable", "gk")


class RejectionBudgetExhausted(PosmatError):
    """Rejection sampling did not find a matching matrix within its budget."""


def generate_wielandt(n: int) -> PatternMatrix:
    """The Wielandt pattern: superdiagonal ones plus ``(n, 1)`` and ``(n, 2)``.

    >>> generate_wielandt(3).to_lists()
    [[0, 1, 0], [0, 0, 1], [1, 1, 0]]
    """
    if n < 2:
        raise RangeError(f"the Wielandt matrix needs n >= 2, got {n}")
    masks = [1 << (i + 1) for i in range(n - 1)] + [0b11]
    return PatternMatrix.from_masks(n, masks)


def generate_periodic_block(block_sizes: Sequence[int]) -> PatternMatrix:
    """Cyclic block pattern: block ``l`` maps onto block ``l + 1`` (mod ``t``).

    Each nonzero block is all ones, so the result is irreducible with period
    ``t = len(block_sizes)``.
    """
    sizes = list(block_sizes)
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise RangeError(f"need at least two blocks of size >= 1, got {sizes}")
    starts = [sum(sizes[:l]) for l in range(len(sizes))]
    n = sum(sizes)
    masks = []
    for l, size in enumerate(sizes):
        nxt = (l + 1) % len(sizes)
        target = ((1 << sizes[nxt]) - 1) << starts[nxt]
        masks.extend([target] * size)
    return PatternMatrix.from_masks(n, masks)


def _rng(seed, rng):
    if rng is not None:
        return rng
    return random.Random(seed)


def _hit(rng: random.Random, density: Fraction) -> bool:
    return rng.randrange(density.denominator) < density.numerator


def random_pattern(n: int, density=Fraction(1, 2), seed=None, *, rng=None, ncols=None) -> PatternMatrix:
    """A random 0/1 pattern; each entry is 1 with probability ``density``."""
    rng = _rng(seed, rng)
    density = _density(density)
    ncols = ncols or n
    masks = [sum(1 << j for j in range(ncols) if _hit(rng, density)) for _ in range(n)]
    return PatternMatrix.from_masks(ncols, masks)


def _weights(rng, pattern: PatternMatrix, top: int = 9) -> list[list[int]]:
    return [
        [rng.randint(1, top) if (m >> j) & 1 else 0 for j in range(pattern.ncols)]
        for m in pattern.masks
    ]


def random_nonneg(n: int, density=Fraction(1, 2), seed=None, *, rng=None, ncols=None) -> NonnegMatrix:
    """A random nonnegative integer matrix with entries in ``0..9``."""
    rng = _rng(seed, rng)
    return NonnegMatrix(_weights(rng, random_pattern(n, density, rng=rng, ncols=ncols)))


def random_stochastic(n: int, density=Fraction(1, 2), seed=None, *, rng=None, ncols=None,
                      pattern: PatternMatrix | None = None) -> StochasticMatrix:
    """A random stochastic matrix with exact rational entries.

    Rows that come out empty get one random positive entry so the row can
    be normalised.  If ``pattern`` is given it fixes the zero pattern.
    """
    rng = _rng(seed, rng)
    if pattern is None:
        pattern = random_pattern(n, density, rng=rng, ncols=ncols)
    masks = list(pattern.masks)
    for i, m in enumerate(masks):
        if not m:
            masks[i] = 1 << rng.randrange(pattern.ncols)
    w = _weights(rng, PatternMatrix.from_masks(pattern.ncols, masks))
    return StochasticMatrix([[Fraction(x, sum(r)) for x in r] for r in w])


def _density(density) -> Fraction:
    d = to_fraction(density)
    if not 0 < d <= 1:
        raise RangeError(f"density must be in (0, 1], got {d}")
    return d


def _accepts(P, filter: str | None, k: int | None) -> bool:
    from . import classes
    from .gk import is_gk

    if filter is None:
        return True
    if filter == "irreducible":
        return classes.is_irreducible(P)
    if filter == "primitive":
        return classes.is_primitive(P)
    if filter == "scrambling":
        return P.nrows >= 2 and classes.is_scrambling(P)
    if filter == "sarymsakov":
        return P.nrows >= 2 and classes.is_sarymsakov(P)
    if filter == "fully-indecomposable":
        return classes.is_fully_indecomposable(P)
    if filter == "gk":
        return is_gk(P, k or 1).is_gk
    raise RangeError(f"unknown filter {filter!r}; choose from {', '.join(FILTERS)}")


def generate_random(kind: str, n: int, density=Fraction(1, 2), seed=None, *, rng=None,
                    filter: str | None = None, k: int | None = None, budget: int = 10000):
    """Random matrix of the given kind, optionally filtered by a predicate.

    Parameters
    ----------
    kind : {"pattern", "nonneg", "stochastic"}
    n : int
        Size of the square matrix.
    density : rational in (0, 1]
        Probability that an entry is positive.
    seed : int, optional
        Seed for a fresh generator; ignored when ``rng`` is given.
    filter : str, optional
        One of :data:`FILTERS`; ``"gk"`` uses ``k`` (default 1).
    budget : int
        Maximum number of rejection-sampling attempts.
    """
    if kind not in KINDS:
        raise RangeError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    if n < 1:
        raise RangeError("n must be >= 1")
    rng = _rng(seed, rng)
    density = _density(density)
    make = {"pattern": random_pattern, "nonneg": random_nonneg, "stochastic": random_stochastic}[kind]
    for _ in range(budget):
        P = make(n, density, rng=rng)
        if _accepts(P, filter, k):
            return P
    raise RejectionBudgetExhausted(
        f"no {kind} matrix passing {filter!r} found in {budget} attempts at density {density}"
    )

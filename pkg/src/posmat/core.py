"""Exact nonnegative matrices, 0/1 patterns, index sets and partitions.

Two matrix kinds live here.  :class:`NonnegMatrix` holds exact rationals
(:class:`fractions.Fraction`) and is the source of truth for anything
numeric.  :class:`PatternMatrix` holds the zero pattern only, one Python
``int`` bitmask per row, so boolean products are word parallel and powers
never overflow.  Every structural predicate in the package runs on patterns.

Index conventions: matrix element access (``P[i, j]``) is 0-based like any
Python sequence.  Index *sets* (:class:`IndexSet`, :class:`Partition`,
certificates, witnesses, file formats) are 1-based, matching the usual
mathematical ``<n> = {1, ..., n}``.
"""

from __future__ import annotations

import os
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import CapExceeded, DimensionError, IndexSetError, ParseError

__all__ = [
    "IndexSet",
    "Partition",
    "PatternMatrix",
    "NonnegMatrix",
    "StochasticMatrix",
    "as_pattern",
    "indicator",
    "has_pattern",
    "submatrix",
    "transpose",
    "bool_product",
    "bool_power",
    "is_row_allowable",
    "is_column_allowable",
    "is_positive",
    "positive_columns",
    "resolve_cap",
    "check_cap",
    "to_fraction",
    "index_set",
]


def resolve_cap(default: int, override: int | None = None) -> int:
    """Return the enumeration cap in force.

    An explicit ``override`` wins, then the ``POSMAT_MAX_N`` environment
    variable, then ``default``.
    """
    if override is not None:
        return int(override)
    env = os.environ.get("POSMAT_MAX_N")
    if env:
        return int(env)
    return default


def check_cap(what: str, size: int, default: int, override: int | None) -> None:
    cap = resolve_cap(default, override)
    if size > cap:
        raise CapExceeded(what, size, cap)


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction, Decimal, float or numeric string exactly.

    Strings may be integers, ``"a/b"`` rationals or decimals; decimals are
    read as exact base-10 values (``"0.1"`` is ``1/10``).
    """
    if isinstance(value, bool):
        raise ParseError(f"booleans are not matrix entries: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, float):
        # repr round-trips, so this is the decimal the user wrote
        return Fraction(Decimal(repr(value)))
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return Fraction(int(num), int(den))
            return Fraction(Decimal(text))
        except (ValueError, InvalidOperation, ZeroDivisionError, OverflowError) as exc:
            raise ParseError(f"not an exact number: {value!r}") from exc
    raise ParseError(f"unsupported entry type {type(value).__name__}")


class IndexSet:
    """A subset of ``{1, ..., universe}``.

    Members are stored sorted and duplicate free.  The empty set is
    representable (it arises as a complement) but operations that need a
    nonempty operand reject it.
    """

    __slots__ = ("_universe", "_members", "_mask")

    def __init__(self, universe: int, members: Iterable[int] = ()):
        if universe < 1:
            raise IndexSetError(f"universe must be >= 1, got {universe}")
        ms = tuple(sorted(set(int(i) for i in members)))
        for i in ms:
            if not 1 <= i <= universe:
                raise IndexSetError(f"index {i} outside 1..{universe}")
        self._universe = universe
        self._members = ms
        mask = 0
        for i in ms:
            mask |= 1 << (i - 1)
        self._mask = mask

    @classmethod
    def full(cls, universe: int) -> "IndexSet":
        return cls(universe, range(1, universe + 1))

    @classmethod
    def from_mask(cls, universe: int, mask: int) -> "IndexSet":
        return cls(universe, (b + 1 for b in _bits(mask)))

    @property
    def universe(self) -> int:
        return self._universe

    @property
    def members(self) -> tuple[int, ...]:
        return self._members

    @property
    def mask(self) -> int:
        """Bitmask with bit ``i - 1`` set for each member ``i``."""
        return self._mask

    def complement(self) -> "IndexSet":
        return IndexSet.from_mask(self._universe, ((1 << self._universe) - 1) & ~self._mask)

    def is_proper(self) -> bool:
        """True for a nonempty proper subset of the universe."""
        return 0 < len(self._members) < self._universe

    def issubset(self, other: "IndexSet") -> bool:
        return self._mask & ~other._mask == 0

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[int]:
        return iter(self._members)

    def __contains__(self, i) -> bool:
        return i in self._members

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self._universe == other._universe and self._mask == other._mask

    def __hash__(self) -> int:
        return hash((self._universe, self._mask))

    def __repr__(self) -> str:
        return f"IndexSet({self._universe}, {list(self._members)})"

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self._members)) + "}"


def index_set(value, universe: int, *, nonempty: bool = True) -> IndexSet:
    """Coerce an :class:`IndexSet` or an iterable of 1-based ints."""
    if isinstance(value, IndexSet):
        if value.universe != universe:
            raise DimensionError(
                f"index set lives in 1..{value.universe}, expected 1..{universe}"
            )
        s = value
    else:
        s = IndexSet(universe, value)
    if nonempty and not len(s):
        raise IndexSetError("index set must be nonempty")
    return s


class Partition:
    """A partition of ``{1, ..., universe}`` into nonempty blocks.

    Blocks are ordered by their smallest member, so equal partitions compare
    and hash equal regardless of how they were written.
    """

    __slots__ = ("_universe", "_blocks")

    def __init__(self, universe: int, blocks: Iterable[Iterable[int]]):
        bs = [b if isinstance(b, IndexSet) else IndexSet(universe, b) for b in blocks]
        seen = 0
        for b in bs:
            if b.universe != universe:
                raise DimensionError("block universe does not match partition universe")
            if not len(b):
                raise IndexSetError("partitions do not contain the empty set")
            if seen & b.mask:
                raise IndexSetError(f"blocks overlap at {IndexSet.from_mask(universe, seen & b.mask)}")
            seen |= b.mask
        if seen != (1 << universe) - 1:
            missing = IndexSet.from_mask(universe, ((1 << universe) - 1) & ~seen)
            raise IndexSetError(f"blocks do not cover {missing}")
        self._universe = universe
        self._blocks = tuple(sorted(bs, key=lambda b: b.members[0]))

    @classmethod
    def singletons(cls, universe: int) -> "Partition":
        return cls(universe, ([i] for i in range(1, universe + 1)))

    @classmethod
    def full(cls, universe: int) -> "Partition":
        """The improper partition with one block."""
        return cls(universe, [range(1, universe + 1)])

    @classmethod
    def parse(cls, text: str, universe: int) -> "Partition":
        """Parse ``"{1,2}{3}{4,5}"``, ``"singletons"`` or ``"full"``."""
        t = text.strip()
        if t == "singletons":
            return cls.singletons(universe)
        if t == "full":
            return cls.full(universe)
        blocks = []
        rest = t.replace(" ", "")
        while rest:
            if not rest.startswith("{") or "}" not in rest:
                raise ParseError(f"bad partition literal {text!r}")
            body, rest = rest[1:].split("}", 1)
            try:
                blocks.append([int(x) for x in body.split(",") if x])
            except ValueError as exc:
                raise ParseError(f"bad partition literal {text!r}") from exc
        return cls(universe, blocks)

    @property
    def universe(self) -> int:
        return self._universe

    @property
    def blocks(self) -> tuple[IndexSet, ...]:
        return self._blocks

    def __len__(self) -> int:
        return len(self._blocks)

    def __iter__(self) -> Iterator[IndexSet]:
        return iter(self._blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._universe == other._universe and self._blocks == other._blocks

    def __hash__(self) -> int:
        return hash((self._universe, self._blocks))

    def __repr__(self) -> str:
        return f"Partition({self._universe}, {[list(b) for b in self._blocks]})"

    def __str__(self) -> str:
        return "".join(str(b) for b in self._blocks)


def _bits(mask: int) -> Iterator[int]:
    """0-based positions of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class PatternMatrix:
    """An immutable 0/1 matrix over the boolean semiring.

    Row ``i`` is stored as an int whose bit ``j`` is the entry ``(i, j)``.
    Construct from nested 0/1 (or truthy) lists, or with :meth:`from_masks`.
    """

    __slots__ = ("_nrows", "_ncols", "_masks")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("a matrix needs at least one row and one column")
        ncols = len(rows[0])
        masks = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
            m = 0
            for j, x in enumerate(r):
                if x:
                    m |= 1 << j
            masks.append(m)
        self._nrows = len(rows)
        self._ncols = ncols
        self._masks = tuple(masks)

    @classmethod
    def from_masks(cls, ncols: int, masks: Iterable[int]) -> "PatternMatrix":
        obj = cls.__new__(cls)
        obj._masks = tuple(masks)
        obj._nrows = len(obj._masks)
        obj._ncols = ncols
        if obj._nrows < 1 or ncols < 1:
            raise DimensionError("a matrix needs at least one row and one column")
        full = (1 << ncols) - 1
        if any(m & ~full or m < 0 for m in obj._masks):
            raise DimensionError("row mask has bits beyond the column count")
        return obj

    @classmethod
    def identity(cls, n: int) -> "PatternMatrix":
        return cls.from_masks(n, (1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "PatternMatrix":
        return cls.from_masks(ncols or nrows, [0] * nrows)

    @classmethod
    def ones(cls, nrows: int, ncols: int | None = None) -> "PatternMatrix":
        ncols = ncols or nrows
        return cls.from_masks(ncols, [(1 << ncols) - 1] * nrows)

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._nrows, self._ncols)

    @property
    def masks(self) -> tuple[int, ...]:
        """Row bitmasks (bit ``j`` is column ``j``, 0-based)."""
        return self._masks

    @property
    def full_mask(self) -> int:
        return (1 << self._ncols) - 1

    def is_square(self) -> bool:
        return self._nrows == self._ncols

    def column_masks(self) -> tuple[int, ...]:
        """Column bitmasks: bit ``i`` of entry ``j`` is the entry ``(i, j)``."""
        cols = [0] * self._ncols
        for i, m in enumerate(self._masks):
            for j in _bits(m):
                cols[j] |= 1 << i
        return tuple(cols)

    def transpose(self) -> "PatternMatrix":
        return PatternMatrix.from_masks(self._nrows, self.column_masks())

    def to_lists(self) -> list[list[int]]:
        return [[(m >> j) & 1 for j in range(self._ncols)] for m in self._masks]

    def count(self) -> int:
        """Number of positive entries."""
        return sum(m.bit_count() for m in self._masks)

    def diagonal_support(self) -> IndexSet:
        """1-based indices ``i`` with a positive diagonal entry."""
        n = min(self._nrows, self._ncols)
        return IndexSet(n, (i + 1 for i in range(n) if (self._masks[i] >> i) & 1))

    def __getitem__(self, key) -> int:
        i, j = key
        if not (0 <= i < self._nrows and 0 <= j < self._ncols):
            raise IndexError(f"({i}, {j}) outside a {self._nrows}x{self._ncols} matrix")
        return (self._masks[i] >> j) & 1

    def __matmul__(self, other: "PatternMatrix") -> "PatternMatrix":
        return bool_product(self, other)

    def __or__(self, other: "PatternMatrix") -> "PatternMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot join {self.shape} and {other.shape} patterns")
        return PatternMatrix.from_masks(
            self._ncols, (a | b for a, b in zip(self._masks, other._masks))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PatternMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self._ncols, self._masks))

    def __repr__(self) -> str:
        return f"PatternMatrix({self.to_lists()})"

    def __str__(self) -> str:
        return "\n".join(
            "".join("*" if (m >> j) & 1 else "0" for j in range(self._ncols))
            for m in self._masks
        )


class NonnegMatrix:
    """An immutable dense matrix of exact nonnegative rationals.

    Entries may be given as ints, Fractions, Decimals, floats or strings
    (``"3"``, ``"1/2"``, ``"0.25"``); all are stored as Fractions.

    >>> P = NonnegMatrix([[0, 1], ["1/2", "0.5"]])
    >>> P[1, 0]
    Fraction(1, 2)
    """

    __slots__ = ("_nrows", "_ncols", "_rows")

    def __init__(self, rows: Sequence[Sequence]):
        if isinstance(rows, PatternMatrix):
            rows = rows.to_lists()
        data = tuple(tuple(to_fraction(x) for x in r) for r in rows)
        if not data or not data[0]:
            raise DimensionError("a matrix needs at least one row and one column")
        ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
            for x in r:
                if x < 0:
                    raise ValueError(f"negative entry {x} in a nonnegative matrix")
        self._nrows = len(data)
        self._ncols = ncols
        self._rows = data

    @classmethod
    def identity(cls, n: int) -> "NonnegMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._nrows, self._ncols)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def is_square(self) -> bool:
        return self._nrows == self._ncols

    @property
    def pattern(self) -> PatternMatrix:
        """The indicator matrix: 1 where the entry is positive."""
        return PatternMatrix.from_masks(
            self._ncols,
            (sum(1 << j for j, x in enumerate(r) if x > 0) for r in self._rows),
        )

    def transpose(self) -> "NonnegMatrix":
        return _raw(self._nrows, list(zip(*self._rows)))

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(r, Fraction(0)) for r in self._rows)

    def is_stochastic(self) -> bool:
        return all(s == 1 for s in self.row_sums())

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def __matmul__(self, other: "NonnegMatrix") -> "NonnegMatrix":
        if self._ncols != other._nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._rows))
        out = [
            [sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols]
            for r in self._rows
        ]
        return _raw(other._ncols, out, cls=type(self) if type(self) is type(other) else NonnegMatrix)

    def __add__(self, other: "NonnegMatrix") -> "NonnegMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return _raw(self._ncols, [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __pow__(self, e: int) -> "NonnegMatrix":
        if not self.is_square() or e < 0:
            raise DimensionError("powers need a square matrix and e >= 0")
        result = NonnegMatrix.identity(self._nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, NonnegMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = [[str(x) for x in r] for r in self._rows]
        return f"{type(self).__name__}({body})"


def _raw(ncols, rows, cls=None):
    """Build a matrix from already-validated Fractions, skipping checks."""
    obj = (cls or NonnegMatrix).__new__(cls or NonnegMatrix)
    obj._rows = tuple(tuple(r) for r in rows)
    obj._nrows = len(obj._rows)
    obj._ncols = ncols
    return obj


class StochasticMatrix(NonnegMatrix):
    """A nonnegative matrix whose rows sum exactly to 1.

    Products of two stochastic matrices are again stochastic, and
    ``StochasticMatrix @ StochasticMatrix`` keeps the type.
    """

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        for i, s in enumerate(self.row_sums()):
            if s != 1:
                raise ValueError(f"row {i + 1} sums to {s}, not 1")


MatrixLike = Union[NonnegMatrix, PatternMatrix, Sequence[Sequence]]


def as_pattern(P: MatrixLike) -> PatternMatrix:
    """Return the zero pattern of any supported matrix value."""
    if isinstance(P, PatternMatrix):
        return P
    if isinstance(P, NonnegMatrix):
        return P.pattern
    return NonnegMatrix(P).pattern


def indicator(P: MatrixLike) -> PatternMatrix:
    """The indicator (incidence) matrix: 1 where ``P`` is positive."""
    return as_pattern(P)


def has_pattern(P: MatrixLike, B: MatrixLike) -> bool:
    """True iff ``indicator(P) >= B`` entrywise."""
    p, b = as_pattern(P), as_pattern(B)
    if p.shape != b.shape:
        raise DimensionError(f"shapes differ: {p.shape} vs {b.shape}")
    return all(bm & ~pm == 0 for pm, bm in zip(p.masks, b.masks))


def transpose(P):
    """Transpose a pattern or numeric matrix, preserving its kind."""
    if isinstance(P, (PatternMatrix, NonnegMatrix)):
        return P.transpose()
    return NonnegMatrix(P).transpose()


def submatrix(P, U, V):
    """Restrict ``P`` to rows ``U`` and columns ``V`` (1-based, order kept)."""
    if not isinstance(P, (PatternMatrix, NonnegMatrix)):
        P = NonnegMatrix(P)
    U = index_set(U, P.nrows)
    V = index_set(V, P.ncols)
    if isinstance(P, PatternMatrix):
        masks = []
        for i in U:
            m = P.masks[i - 1]
            masks.append(sum(1 << c for c, j in enumerate(V) if (m >> (j - 1)) & 1))
        return PatternMatrix.from_masks(len(V), masks)
    return _raw(len(V), [[P.rows[i - 1][j - 1] for j in V] for i in U])


def bool_product(A: MatrixLike, B: MatrixLike) -> PatternMatrix:
    """Boolean-semiring product: ``(i, j)`` is 1 iff some ``k`` has A_ik = B_kj = 1."""
    a, b = as_pattern(A), as_pattern(B)
    if a.ncols != b.nrows:
        raise DimensionError(f"inner dimensions differ: {a.shape} @ {b.shape}")
    bm = b.masks
    out = []
    for m in a.masks:
        acc = 0
        while m:
            low = m & -m
            acc |= bm[low.bit_length() - 1]
            m ^= low
        out.append(acc)
    return PatternMatrix.from_masks(b.ncols, out)


def bool_power(A: MatrixLike, e: int) -> PatternMatrix:
    """Indicator of ``A**e`` for ``e >= 1``, by binary exponentiation."""
    a = as_pattern(A)
    if not a.is_square():
        raise DimensionError(f"powers need a square matrix, got {a.shape}")
    if e < 1:
        raise ValueError(f"exponent must be >= 1, got {e}")
    result = None
    base = a
    while True:
        if e & 1:
            result = base if result is None else bool_product(result, base)
        e >>= 1
        if not e:
            return result
        base = bool_product(base, base)


def is_row_allowable(P: MatrixLike) -> bool:
    """Every row has a positive entry."""
    return all(as_pattern(P).masks)


def is_column_allowable(P: MatrixLike) -> bool:
    """Every column has a positive entry."""
    p = as_pattern(P)
    acc = 0
    for m in p.masks:
        acc |= m
    return acc == p.full_mask


def is_positive(P: MatrixLike) -> bool:
    """Every entry is positive."""
    p = as_pattern(P)
    full = p.full_mask
    return all(m == full for m in p.masks)


def positive_columns(P: MatrixLike) -> IndexSet:
    """The 1-based columns whose every entry is positive."""
    p = as_pattern(P)
    acc = p.full_mask
    for m in p.masks:
        acc &= m
    return IndexSet.from_mask(p.ncols, acc)

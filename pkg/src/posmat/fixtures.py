"""Worked examples with their stated properties, as a regression corpus.

Each :class:`Fixture` carries a payload (one matrix, a pair of matrices or a
graph) and a manifest of expected facts.  :func:`check_fixture` recomputes
every manifest entry with the library and reports mismatches.  Positive
entries that are only known to be positive are stored as 1; every manifest
entry of such a fixture is pattern-level, so the choice does not matter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import bounds, classes
from .calculus import ChainWitness, sum_positive_on, verify_chain
from .core import (
    IndexSet,
    NonnegMatrix,
    StochasticMatrix,
    bool_power,
    bool_product,
    is_column_allowable,
    is_positive,
    is_row_allowable,
    positive_columns,
)
from .errors import RangeError
from .gk import deficiency_set, gk_index, is_gk
from .graphs import Graph, complete_graph, connectivity_bruteforce, is_k_connected_via_gk, petersen_graph
from .io import emit_graph, emit_matrix

__all__ = ["Fixture", "FIXTURES", "get_fixture", "check_fixture", "write_fixtures", "fixture_paths", "fixture_texts"]

_h = Fraction(1, 2)


@dataclass(frozen=True)
class Fixture:
    """A named example: ``payload`` is a matrix, a tuple of matrices or a graph."""

    id: str
    description: str
    payload: Any
    manifest: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        if isinstance(self.payload, Graph):
            return "graph"
        if isinstance(self.payload, tuple):
            return "product"
        return "matrix"


def _offdiag_row_col(P) -> bool:
    """Every ``i`` has ``j != i`` with ``P_ij > 0`` and ``k != i`` with ``P_ki > 0``."""
    p = P.pattern
    cols = p.column_masks()
    return all(p.masks[i] & ~(1 << i) and cols[i] & ~(1 << i) for i in range(p.nrows))


def _min_offdiag_column_count(P) -> int:
    cols = P.pattern.column_masks()
    return min((c & ~(1 << j)).bit_count() for j, c in enumerate(cols))


def _gamma_or_none(P):
    return classes.gamma(P) if classes.is_primitive(P) else None


# Each check maps (payload, argument) to the value compared with the manifest.
_CHECKS: dict[str, Callable] = {
    "row_allowable": lambda P, _: is_row_allowable(P),
    "column_allowable": lambda P, _: is_column_allowable(P),
    "irreducible": lambda P, _: classes.is_irreducible(P),
    "primitive": lambda P, _: classes.is_primitive(P),
    "period": lambda P, _: classes.period(P),
    "girth": lambda P, _: classes.girth(P),
    "gamma": lambda P, _: _gamma_or_none(P),
    "gk_index": lambda P, _: gk_index(P),
    "is_gk": lambda P, k: is_gk(P, k).is_gk,
    "deficiency": lambda P, F: list(deficiency_set(P, F)),
    "power_positive": lambda P, e: is_positive(bool_power(P, e)),
    "i_plus_p_power_positive": lambda P, e: is_positive(bool_power(P.pattern | P.pattern.identity(P.nrows), e)),
    "offdiagonal_in_every_row_and_column": lambda P, _: _offdiag_row_col(P),
    "min_offdiagonal_column_count": lambda P, _: _min_offdiag_column_count(P),
    "markov": lambda P, _: classes.is_markov(P),
    "scrambling": lambda P, _: classes.is_scrambling(P),
    "full_diagonal": lambda P, _: len(P.pattern.diagonal_support()) == P.nrows,
    "mu": lambda P, _: classes.mu(P),
    "alpha": lambda P, _: classes.alpha(P),
    "limit": lambda P, _: [list(r) for r in classes.power_limit(P, Fraction(1, 10**12)).matrix.rows],
    "gk_diagonal_product": lambda P, k: _bound_summary(bounds.verify_gk_diagonal_product(P, k)),
    # products
    "product_positive_columns": lambda Ps, _: list(positive_columns(bool_product(*Ps))),
    "sum_positive": lambda Ps, arg: sum_positive_on(Ps[arg[0]], arg[1], arg[2]),
    "chain": lambda Ps, sets: verify_chain(Ps, ChainWitness(tuple(
        IndexSet(u, s) for u, s in zip([P.nrows for P in Ps] + [Ps[-1].ncols], sets)))),
    # graphs
    "kappa": lambda G, _: connectivity_bruteforce(G).kappa,
    "k_connected": lambda G, k: is_k_connected_via_gk(G, k),
}


def _bound_summary(r) -> dict:
    return {"bound": r.bound_value, "attained": r.attained_value, "slack": r.slack, "holds": r.conclusion_holds}


def _limit(rows):
    return [[Fraction(x) for x in r] for r in rows]


FIXTURES: dict[str, Fixture] = {f.id: f for f in (
    Fixture(
        "product-pair",
        "two 4x4 factors whose product has a positive third column, shown by a sum-positivity chain",
        (NonnegMatrix([[1, 0, 0, 0], [0, 2, 0, 0], [1, 0, 0, 0], [0, 1, 0, 3]]),
         NonnegMatrix([[0, 0, 1, 0], [1, 0, 1, 0], [0, 0, 2, 0], [4, 0, 0, 0]])),
        {
            "product_positive_columns": (None, [3]),
            "sum_positive": [((0, [1, 2, 3, 4], [1, 2, 3]), True), ((1, [1, 2, 3], [3]), True)],
            "chain": ([[1, 2, 3, 4], [1, 2, 3], [3]], True),
        },
    ),
    Fixture(
        "reducible-with-offdiagonals-4",
        "every row and column has an off-diagonal positive entry, yet the matrix is reducible",
        NonnegMatrix([[1, 1, 0, 0], [1, 1, 0, 0], [1, 0, 0, 1], [0, 0, 1, 0]]),
        {
            "offdiagonal_in_every_row_and_column": (None, True),
            "irreducible": (None, False),
            "gk_index": (None, 0),
        },
    ),
    Fixture(
        "first-column-4",
        "first column all ones, rest zero: row-allowable but reducible, so in no g_k class",
        NonnegMatrix([[1, 0, 0, 0]] * 4),
        {
            "row_allowable": (None, True),
            "column_allowable": (None, False),
            "irreducible": (None, False),
            "is_gk": [(1, False), (2, False), (3, False)],
            "gk_index": (None, 0),
        },
    ),
    Fixture(
        "column-degree-not-g2-6",
        "two off-diagonal positives in every column, but not a g_2 matrix",
        NonnegMatrix([
            [0, 1, 1, 0, 0, 1],
            [1, 0, 1, 0, 0, 0],
            [1, 1, 0, 0, 0, 0],
            [1, 0, 0, 0, 1, 1],
            [0, 0, 0, 1, 0, 1],
            [0, 0, 0, 1, 1, 0],
        ]),
        {
            "min_offdiagonal_column_count": (None, 2),
            "is_gk": [(1, True), (2, False)],
            "deficiency": ([1, 2, 3], [4]),
            "gk_index": (None, 1),
        },
    ),
    Fixture(
        "powers-not-g2-4",
        "(I+P)^2 is positive, yet the matrix is not a g_2 matrix",
        NonnegMatrix([[1, 1, 1, 1], [1, 1, 0, 0], [0, 0, 1, 1], [1, 1, 1, 1]]),
        {
            "i_plus_p_power_positive": (2, True),
            "is_gk": (2, False),
            "deficiency": ([3, 4], [1]),
        },
    ),
    Fixture(
        "block-cycle-9",
        "three 3x3 all-positive blocks in a cycle plus the identity: a g_3 matrix with gamma 3",
        NonnegMatrix([
            [1, 0, 0, 1, 1, 1, 0, 0, 0],
            [0, 1, 0, 1, 1, 1, 0, 0, 0],
            [0, 0, 1, 1, 1, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0, 1, 1, 1],
            [0, 0, 0, 0, 1, 0, 1, 1, 1],
            [0, 0, 0, 0, 0, 1, 1, 1, 1],
            [1, 1, 1, 0, 0, 0, 1, 0, 0],
            [1, 1, 1, 0, 0, 0, 0, 1, 0],
            [1, 1, 1, 0, 0, 0, 0, 0, 1],
        ]),
        {
            "is_gk": [(3, True), (4, False)],
            "gk_index": (None, 3),
            "power_positive": [(2, False), (3, True), (8, True)],
            "gamma": (None, 3),
            "gk_diagonal_product": (3, {"bound": 3, "attained": 3, "slack": 0, "holds": True}),
        },
    ),
    Fixture(
        "hollow-3",
        "zero diagonal, all off-diagonal entries positive: g_2 with girth 2",
        NonnegMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]),
        {
            "gk_index": (None, 2),
            "girth": (None, 2),
            "period": (None, 1),
            "gamma": (None, 2),
        },
    ),
    Fixture(
        "stochastic-primitive-2",
        "a primitive stochastic matrix with a zero diagonal entry and a positive column",
        StochasticMatrix([[0, 1], [_h, _h]]),
        {
            "markov": (None, True),
            "primitive": (None, True),
            "mu": (None, _h),
            "alpha": (None, _h),
            "limit": (None, _limit([["1/3", "2/3"], ["1/3", "2/3"]])),
        },
    ),
    Fixture(
        "stochastic-reducible-2",
        "a reducible stochastic matrix with positive diagonal and a positive column",
        StochasticMatrix([[1, 0], [_h, _h]]),
        {
            "markov": (None, True),
            "irreducible": (None, False),
            "full_diagonal": (None, True),
            "mu": (None, _h),
            "limit": (None, _limit([[1, 0], [1, 0]])),
        },
    ),
    Fixture(
        "petersen",
        "the Petersen graph, 3-regular and 3-connected",
        petersen_graph(),
        {"kappa": (None, 3), "k_connected": [(3, True), (4, False)]},
    ),
    Fixture(
        "complete-4",
        "the complete graph on four vertices",
        complete_graph(4),
        {"kappa": (None, 3), "k_connected": [(1, True), (2, True), (3, True)]},
    ),
)}


def get_fixture(fixture_id: str) -> Fixture:
    try:
        return FIXTURES[fixture_id]
    except KeyError:
        raise RangeError(f"unknown fixture {fixture_id!r}; choose from {', '.join(FIXTURES)}") from None


def _entries(spec):
    return spec if isinstance(spec, list) else [spec]


def _close(actual, expected) -> bool:
    if isinstance(expected, list) and expected and isinstance(expected[0], list) and isinstance(expected[0][0], Fraction):
        tol = Fraction(1, 10**9)
        return all(abs(a - e) < tol for ra, re in zip(actual, expected) for a, e in zip(ra, re))
    return actual == expected


def check_fixture(fx: Fixture | str) -> list[tuple[str, Any, Any, Any, bool]]:
    """Recompute every manifest entry.

    Returns ``(check, argument, expected, actual, ok)`` rows, one per entry.
    Limits are compared to within ``1e-9``; everything else exactly.
    """
    if isinstance(fx, str):
        fx = get_fixture(fx)
    rows = []
    for name, spec in fx.manifest.items():
        fn = _CHECKS[name]
        for arg, expected in _entries(spec):
            actual = fn(fx.payload, arg)
            rows.append((name, arg, expected, actual, _close(actual, expected)))
    return rows


def fixture_paths(fx: Fixture, directory) -> list[Path]:
    """File names a fixture is stored under inside ``directory``."""
    d = Path(directory)
    if fx.kind == "graph":
        return [d / f"{fx.id}.graph"]
    if fx.kind == "product":
        return [d / f"{fx.id}-{i}.txt" for i in range(1, len(fx.payload) + 1)]
    return [d / f"{fx.id}.txt"]


def fixture_texts(fx: Fixture) -> list[str]:
    if fx.kind == "graph":
        return [emit_graph(fx.payload)]
    if fx.kind == "product":
        return [emit_matrix(P) for P in fx.payload]
    return [emit_matrix(fx.payload)]


def write_fixtures(directory) -> list[Path]:
    """Write every fixture to ``directory`` in the text formats."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for fx in FIXTURES.values():
        for path, text in zip(fixture_paths(fx, d), fixture_texts(fx)):
            path.write_text(f"# {fx.description}\n" + text)
            out.append(path)
    return out

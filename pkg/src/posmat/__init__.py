"""Positivity of products and powers of nonnegative matrices.

Exact structural analysis of nonnegative matrices over their zero pattern:
sum-positivity and partition calculus for products, g_k matrices and the
vertex connectivity of graphs, irreducibility, primitivity and exponents,
full indecomposability, scrambling and Sarymsakov matrices, and verifiers
for the classical exponent bounds.

Element access on matrices is 0-based (``P[i, j]``); index sets,
certificates and every text format are 1-based.
"""

from .errors import (
    CapExceeded,
    DimensionError,
    HypothesisError,
    IndexSetError,
    ParseError,
    PosmatError,
    RangeError,
    TheoremViolation,
)
from .core import *  # noqa: F401,F403
from .calculus import *  # noqa: F401,F403
from .gk import *  # noqa: F401,F403
from .classes import *  # noqa: F401,F403
from .generators import *  # noqa: F401,F403
from .bounds import *  # noqa: F401,F403
from .graphs import *  # noqa: F401,F403
from .io import *  # noqa: F401,F403
from .fixtures import *  # noqa: F401,F403
from . import bounds, calculus, classes, core, fixtures, generators, gk, graphs, io

__version__ = "0.1.0"

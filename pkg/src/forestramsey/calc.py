"""Closed-form Ramsey and star-critical Ramsey numbers of forests versus cliques."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InvalidInput
from .forest import Forest, j0_and_max, stats
from .table import ClassicalTable, default_table


@dataclass(frozen=True)
class RamseyResult:
    """``value = (j0 - 1)(base_r - c) + (vertices in components of order >= j0)``,
    with ``c = 2`` for Ramsey numbers and ``c = 3`` for star-critical ones.
    """

    value: int
    j0: int
    base_r: int
    provenance: str = "formula"


def classical_r(ms, table: ClassicalTable | None = None) -> int:
    return (table or default_table()).value(ms)


def _base(ms, table):
    ms = tuple(ms)
    # no clique colors: arrowing F alone needs |V(F)| vertices, same as R(F, K_2)
    return 2 if not ms else classical_r(ms, table)


def ramsey_forest(f: Forest, ms, table: ClassicalTable | None = None) -> RamseyResult:
    if not f.components:
        raise InvalidInput("forest must be nonempty")
    base = _base(ms, table)
    j0, value = j0_and_max(f, base)
    return RamseyResult(value, j0, base)


def star_forest(f: Forest, ms, table: ClassicalTable | None = None) -> RamseyResult:
    if not f.components:
        raise InvalidInput("forest must be nonempty")
    if f.has_isolated():
        raise InvalidInput("star-critical values need a forest without isolated vertices")
    base = _base(ms, table)
    if base < 3:
        raise InvalidInput(f"classical value {base} < 3 leaves no star-critical problem")
    j0, _ = j0_and_max(f, base)
    value = (j0 - 1) * (base - 3) + stats(f).tail_sum(j0)
    return RamseyResult(value, j0, base)


def size_ramsey_upper(f: Forest, m: int, table: ClassicalTable | None = None) -> tuple[int, int]:
    """Two forms of the size-Ramsey upper bound for ``(F, K_m)``; always equal.

    ``C(R - 1, 2) + R_*`` counts the edges of ``K_{R-1}`` plus a pendant star
    of degree ``R_*``; ``C(R, 2) - (j0 - 2)`` is the same number rewritten.
    """
    if m < 3:
        raise InvalidInput("clique order must be at least 3")
    r = ramsey_forest(f, [m], table)
    rs = star_forest(f, [m], table)
    bound_a = comb(r.value - 1, 2) + rs.value
    bound_b = comb(r.value, 2) - (rs.j0 - 2)
    assert bound_a == bound_b, (bound_a, bound_b)
    return bound_a, bound_b


def size_ramsey_upper_multicolor(f: Forest, ms, table: ClassicalTable | None = None) -> int:
    """``C(R - 1, 2) + R_*`` for a general clique tuple. Not claimed to be tight."""
    r = ramsey_forest(f, ms, table)
    rs = star_forest(f, ms, table)
    return comb(r.value - 1, 2) + rs.value

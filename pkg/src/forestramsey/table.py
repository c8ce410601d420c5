"""Table of exact classical Ramsey numbers ``R(K_m1, ..., K_mt)``.

File format, one entry per line::

    m1 m2 ... = value [witness=FILE]

``#`` starts a comment. ``FILE`` is a coloring JSON of ``K_{value-1}``
relative to the table file; its color ``i`` avoids the ``i``-th smallest
clique order. Tuples containing 2 and singletons are never stored: a color
that must avoid ``K_2`` stays empty, and ``R(K_m) = m``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import InvalidInput, UnknownValue
from .graph import EdgeColoring, build_complete

ENV_VAR = "RAMSEY_TABLE"


@dataclass(frozen=True)
class TableEntry:
    value: int
    witness: Path | None = None


def reduce_tuple(ms) -> tuple[int, ...]:
    """Sorted tuple with the 2s dropped (a single 2 survives if nothing else is left)."""
    ms = tuple(ms)
    if not ms:
        raise InvalidInput("at least one clique order is required")
    if any(m < 2 for m in ms):
        raise InvalidInput("clique orders must be at least 2")
    kept = sorted(m for m in ms if m != 2)
    return tuple(kept) if kept else (2,)


class ClassicalTable:
    def __init__(self, entries=None, source=None):
        self.entries: dict[tuple[int, ...], TableEntry] = dict(entries or {})
        self.source = source

    @classmethod
    def load(cls, path) -> ClassicalTable:
        path = Path(path)
        entries = {}
        for lineno, raw in enumerate(path.read_text().splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                lhs, rhs = line.split("=", 1)
                key = tuple(sorted(int(x) for x in lhs.split()))
                fields = rhs.split()
                value = int(fields[0])
                witness = None
                for extra in fields[1:]:
                    name, _, arg = extra.partition("=")
                    if name != "witness" or not arg:
                        raise ValueError(f"unknown field {extra!r}")
                    witness = path.parent / arg
            except (ValueError, IndexError) as exc:
                raise InvalidInput(f"{path}:{lineno}: bad table line: {exc}") from None
            if len(key) < 2 or min(key) < 3:
                raise InvalidInput(f"{path}:{lineno}: only tuples of two or more orders >= 3 are stored")
            entries[key] = TableEntry(value, witness)
        return cls(entries, path)

    def value(self, ms) -> int:
        key = reduce_tuple(ms)
        if len(key) == 1:
            return key[0]
        try:
            return self.entries[key].value
        except KeyError:
            raise UnknownValue(f"no exact value for R{tuple(ms)} in the classical table") from None

    def witness(self, ms) -> EdgeColoring:
        """Free coloring of ``K_{R-1}``; color ``i`` avoids ``K_{ms[i]}``."""
        ms = tuple(ms)
        key = reduce_tuple(ms)
        palette = len(ms)
        r = self.value(ms)
        big = [i for i, m in enumerate(ms) if m != 2]
        if len(key) == 1:
            g = build_complete(r - 1)
            c = big[0] if big else 0
            return EdgeColoring(g, palette, (c,) * g.edge_count)
        entry = self.entries[key]
        if entry.witness is None:
            raise UnknownValue(f"no witness coloring for R{ms} in the classical table")
        base = _load_coloring(str(entry.witness))
        if base.graph.order != r - 1 or base.palette != len(key):
            raise InvalidInput(f"witness {entry.witness} does not fit R{key} = {r}")
        # sorted position -> caller's color index
        slots = sorted(big, key=lambda i: ms[i])
        return EdgeColoring(base.graph, palette, tuple(slots[c] for c in base.colors))

    def rows(self):
        """All stored entries, sorted by (length, tuple)."""
        return sorted(self.entries.items(), key=lambda kv: (len(kv[0]), kv[0]))


@lru_cache(maxsize=None)
def _load_coloring(path) -> EdgeColoring:
    return EdgeColoring.from_json(json.loads(Path(path).read_text()))


def bundled_path() -> Path:
    return Path(str(resources.files("forestramsey") / "data" / "classical.txt"))


_default: ClassicalTable | None = None


def default_table() -> ClassicalTable:
    """Table from ``$RAMSEY_TABLE`` if set, else the bundled file; loaded once."""
    global _default
    if _default is None:
        _default = ClassicalTable.load(os.environ.get(ENV_VAR) or bundled_path())
    return _default


def set_default_table(table: ClassicalTable | None):
    global _default
    _default = table


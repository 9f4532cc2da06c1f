"""Todd-Coxeter coset enumeration over the trivial subgroup.

The closed table is the regular permutation representation of the group:
coset ``0`` is the identity, and row ``c`` column ``col(g)`` holds ``c * g``.
Column layout is ``[x1, x1^-1, x2, x2^-1, ...]``.

Two strategies are provided. HLT scans every relator from every live coset,
filling gaps by definition, and then processes the deductions those
definitions caused. Felsch defines cosets in row order and after each
definition processes all deductions through the cyclic conjugates of the
relators. Both are deterministic, and coincidences are merged towards the
smaller coset number.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .presentation import Presentation, Word

__all__ = [
    "Strategy",
    "EnumerationLimits",
    "NonTermination",
    "CosetTable",
    "EnumerationStats",
    "Enumerator",
    "enumerate_cosets",
    "column",
    "trace",
    "element_order",
    "word_permutation",
    "generator_permutations",
    "standardize",
    "DEFAULT_MAX_COSETS",
]

DEFAULT_MAX_COSETS = 1_000_000


class Strategy(str, enum.Enum):
    HLT = "hlt"
    FELSCH = "felsch"


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = DEFAULT_MAX_COSETS
    strategy: Strategy = Strategy.HLT

    def __post_init__(self) -> None:
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be >= 1")
        object.__setattr__(self, "strategy", Strategy(self.strategy))


class NonTermination(Exception):
    """The enumeration hit ``max_cosets`` before closing.

    This is an inconclusive outcome, never evidence that the group is infinite.
    """

    def __init__(self, cosets: int, stats: "EnumerationStats"):
        self.cosets = cosets
        self.stats = stats
        super().__init__(f"coset enumeration aborted after defining {cosets} cosets")


@dataclass(frozen=True)
class EnumerationStats:
    cosets_defined: int
    max_live: int
    closed: bool


@dataclass(frozen=True)
class CosetTable:
    """A closed coset table; ``action[c][column(g)]`` is the coset ``c * g``."""

    generator_count: int
    action: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.action)

    def __len__(self) -> int:
        return len(self.action)


def column(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (letter < 0)


def _columns(w: Word) -> list[int]:
    return [column(letter) for letter in w]


class Enumerator:
    """In-progress enumeration state.

    Not thread-safe; a single instance is driven to completion by :meth:`run`.
    """

    def __init__(self, p: Presentation, limits: EnumerationLimits | None = None):
        self.limits = limits or EnumerationLimits()
        self.ncols = 2 * p.d
        self.relators = [_columns(rel.word) for rel in p.relators]
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.max_live = 1
        self.deductions: list[tuple[int, int]] | None = None
        self._queue: deque[int] = deque()

    # -- union-find ---------------------------------------------------------

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def _union(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.live -= 1
        self._queue.append(hi)

    # -- table primitives ---------------------------------------------------

    def _set(self, c: int, col: int, target: int) -> None:
        self.table[c][col] = target
        self.table[target][col ^ 1] = c
        if self.deductions is not None:
            self.deductions.append((c, col))

    def define(self, c: int, col: int) -> int:
        if len(self.table) >= self.limits.max_cosets:
            raise NonTermination(len(self.table), self.stats(closed=False))
        new = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(new)
        self.live += 1
        self.max_live = max(self.max_live, self.live)
        self._set(c, col, new)
        return new

    def merge_cosets(self, a: int, b: int) -> None:
        """Identify cosets ``a`` and ``b`` and drain every induced coincidence.

        The smaller representative survives.  Rows of dead cosets are folded
        into their representatives; any clash is queued as a new coincidence.
        """
        self._union(a, b)
        table = self.table
        while self._queue:
            dead = self._queue.popleft()
            row = table[dead]
            for col in range(self.ncols):
                target = row[col]
                if target is None:
                    continue
                row[col] = None
                if table[target][col ^ 1] == dead:
                    table[target][col ^ 1] = None
                mu, nu = self.rep(dead), self.rep(target)
                existing = table[mu][col]
                if existing is not None:
                    self._union(nu, existing)
                else:
                    back = table[nu][col ^ 1]
                    if back is not None:
                        self._union(mu, back)
                    else:
                        self._set(mu, col, nu)

    # -- scanning -----------------------------------------------------------

    def scan_and_fill(self, c: int, w: Sequence[int]) -> None:
        table = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != c:
                    self.merge_cosets(f, c)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.merge_cosets(f, b)
                return
            if i == j:
                self._set(f, w[i], b)
                return
            self.define(f, w[i])

    def scan(self, c: int, w: Sequence[int]) -> None:
        """Scan without defining: deduce when one gap remains, merge on a clash."""
        table = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while i <= j and table[f][w[i]] is not None:
            f = table[f][w[i]]
            i += 1
        if i > j:
            if f != c:
                self.merge_cosets(f, c)
            return
        while j >= i and table[b][w[j] ^ 1] is not None:
            b = table[b][w[j] ^ 1]
            j -= 1
        if j < i:
            self.merge_cosets(f, b)
        elif i == j:
            self._set(f, w[i], b)

    # -- strategies ---------------------------------------------------------

    def run(self) -> CosetTable:
        if self.limits.strategy is Strategy.HLT:
            self._hlt()
        else:
            self._felsch()
        return self._close()

    def _conjugates(self) -> list[list[list[int]]]:
        """Cyclic conjugates of every relator and its inverse, indexed by first column."""
        by_first: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for w in self.relators:
            for word in (w, [col ^ 1 for col in reversed(w)]):
                for k in range(len(word)):
                    rot = tuple(word[k:] + word[:k])
                    if rot not in seen:
                        seen.add(rot)
                        by_first[rot[0]].append(list(rot))
        return by_first

    def _hlt(self) -> None:
        by_first = self._conjugates()
        self.deductions = []
        c = 0
        while c < len(self.table):
            for w in self.relators:
                if not self.is_live(c):
                    break
                self.scan_and_fill(c, w)
                self._process_deductions(by_first)
            if self.is_live(c):
                for col in range(self.ncols):
                    if self.table[c][col] is None:
                        self.define(c, col)
                        self._process_deductions(by_first)
            c += 1

    def _felsch(self) -> None:
        by_first = self._conjugates()
        self.deductions = []
        c = 0
        while c < len(self.table):
            for col in range(self.ncols):
                if not self.is_live(c):
                    break
                if self.table[c][col] is None:
                    self.define(c, col)
                    self._process_deductions(by_first)
            c += 1

    def _process_deductions(self, by_first: list[list[list[int]]]) -> None:
        stack = self.deductions
        while stack:
            c, col = stack.pop()
            if self.is_live(c):
                for w in by_first[col]:
                    self.scan(c, w)
                    if not self.is_live(c):
                        break
            target = self.table[c][col] if self.is_live(c) else None
            if target is not None and self.is_live(target):
                for w in by_first[col ^ 1]:
                    self.scan(target, w)
                    if not self.is_live(target):
                        break

    # -- results ------------------------------------------------------------

    def stats(self, closed: bool) -> EnumerationStats:
        return EnumerationStats(len(self.table), self.max_live, closed)

    def _close(self) -> CosetTable:
        live = [c for c in range(len(self.table)) if self.is_live(c)]
        renumber = {c: k for k, c in enumerate(live)}
        rows = []
        for c in live:
            row = self.table[c]
            if any(x is None for x in row):
                raise RuntimeError(f"coset {c} has undefined entries after enumeration")
            rows.append(tuple(renumber[self.rep(x)] for x in row))
        t = CosetTable(self.ncols // 2, tuple(rows))
        for w in self.relators:
            for c in range(t.size):
                if _trace_columns(t, c, w) != c:
                    raise RuntimeError("closed table does not satisfy every relator")
        return t


def enumerate_cosets(
    p: Presentation, limits: EnumerationLimits | None = None
) -> tuple[CosetTable, EnumerationStats]:
    """Enumerate the cosets of the trivial subgroup.

    Returns the closed table (live cosets renumbered in order of first
    definition, so the identity is 0) and run statistics.  Raises
    :class:`NonTermination` when ``limits.max_cosets`` is reached.
    """
    e = Enumerator(p, limits)
    t = e.run()
    return t, e.stats(closed=True)


def _trace_columns(t: CosetTable, c: int, cols: Sequence[int]) -> int:
    action = t.action
    for col in cols:
        c = action[c][col]
    return c


def trace(t: CosetTable, c: int, w: Sequence[int]) -> int:
    return _trace_columns(t, c, _columns(w))


def word_permutation(t: CosetTable, w: Sequence[int]) -> tuple[int, ...]:
    """Image of every coset under right multiplication by ``w``."""
    cols = _columns(w)
    return tuple(_trace_columns(t, c, cols) for c in range(t.size))


def element_order(t: CosetTable, w: Sequence[int]) -> int:
    """Order of ``w`` in the group, read off the regular representation."""
    cols = _columns(w)
    c = _trace_columns(t, 0, cols)
    k = 1
    while c != 0:
        c = _trace_columns(t, c, cols)
        k += 1
    return k


def generator_permutations(t: CosetTable) -> list[tuple[int, ...]]:
    return [tuple(row[2 * j] for row in t.action) for j in range(t.generator_count)]


def standardize(t: CosetTable) -> CosetTable:
    """Renumber cosets breadth-first from 0, scanning columns in order."""
    order = [0]
    index = {0: 0}
    head = 0
    while head < len(order):
        c = order[head]
        head += 1
        for target in t.action[c]:
            if target not in index:
                index[target] = len(order)
                order.append(target)
    rows = tuple(tuple(index[x] for x in t.action[c]) for c in order)
    return CosetTable(t.generator_count, rows)

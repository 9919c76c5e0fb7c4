"""Young tableaux over real entries and RSK row insertion.

Tableaux here hold pairwise distinct entries, rows increase to the right and
columns increase downward.  Coordinates exposed to callers are 1-based
``(row, column)`` pairs.

The immutable :class:`Tableau` is the public value type.  The simulation code
uses :func:`bump_in_place`, which mutates a plain ``list`` of rows and is the
single implementation of the insertion step.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

Partition = tuple  # tuple[int, ...], weakly decreasing positive parts


class BoxPosition(NamedTuple):
    row: int
    column: int

    def as_point(self) -> tuple[float, float]:
        """(column, row), the orientation used by the limit curves."""
        return (float(self.column), float(self.row))


class DuplicateEntryError(ValueError):
    pass


class NotFoundError(LookupError):
    pass


def is_partition(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def bump_in_place(rows: list[list], x) -> list[BoxPosition]:
    """Row-insert ``x`` into ``rows`` and return the bumping route.

    No distinctness check is done; callers guarantee it.
    """
    route = []
    r = 0
    while True:
        if r == len(rows):
            rows.append([x])
            route.append(BoxPosition(r + 1, 1))
            return route
        row = rows[r]
        c = bisect_left(row, x)
        if c == len(row):
            row.append(x)
            route.append(BoxPosition(r + 1, c + 1))
            return route
        row[c], x = x, row[c]
        route.append(BoxPosition(r + 1, c + 1))
        r += 1


def new_cell(rows: Sequence[Sequence], x) -> BoxPosition:
    """Cell that inserting ``x`` would create, without modifying ``rows``."""
    r = 0
    while r < len(rows):
        row = rows[r]
        c = bisect_left(row, x)
        if c == len(row):
            return BoxPosition(r + 1, c + 1)
        x = row[c]
        r += 1
    return BoxPosition(r + 1, 1)


@dataclass(frozen=True)
class Tableau:
    rows: tuple = ()
    _entries: frozenset = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], validate: bool = True) -> "Tableau":
        t = cls(tuple(tuple(r) for r in rows))
        if validate and not t.is_valid():
            raise ValueError(f"not a valid tableau: {t.rows!r}")
        return t

    @property
    def entries(self) -> frozenset:
        if self._entries is None:
            object.__setattr__(self, "_entries", frozenset(v for r in self.rows for v in r))
        return self._entries

    def __len__(self) -> int:
        return sum(len(r) for r in self.rows)

    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def is_valid(self) -> bool:
        if not is_partition(self.shape()):
            return False
        if len(self.entries) != len(self):
            return False
        for r, row in enumerate(self.rows):
            if any(row[c] >= row[c + 1] for c in range(len(row) - 1)):
                return False
            if r > 0:
                above = self.rows[r - 1]
                if any(above[c] >= row[c] for c in range(len(row))):
                    return False
        return True

    def corners(self) -> list[BoxPosition]:
        sh = self.shape()
        return [
            BoxPosition(r + 1, sh[r])
            for r in range(len(sh))
            if r + 1 == len(sh) or sh[r + 1] < sh[r]
        ]

    def locate(self, value) -> BoxPosition:
        for r, row in enumerate(self.rows):
            c = bisect_left(row, value)
            if c < len(row) and row[c] == value:
                return BoxPosition(r + 1, c + 1)
        raise NotFoundError(f"{value!r} is not an entry of the tableau")

    def insert(self, x) -> tuple["Tableau", list[BoxPosition]]:
        if x in self.entries:
            raise DuplicateEntryError(f"{x!r} is already an entry")
        rows = [list(r) for r in self.rows]
        route = bump_in_place(rows, x)
        return Tableau(rows), route

    def reverse_insert(self, corner: BoxPosition) -> tuple["Tableau", object]:
        """Undo the insertion whose route ended at ``corner``.

        Returns the smaller tableau and the value that was inserted.
        """
        corner = BoxPosition(*corner)
        if corner not in self.corners():
            raise ValueError(f"{tuple(corner)} is not a corner cell of shape {self.shape()}")
        rows = [list(r) for r in self.rows]
        r = corner.row - 1
        y = rows[r].pop()
        if not rows[r]:
            rows.pop()
        for k in range(r - 1, -1, -1):
            row = rows[k]
            c = bisect_left(row, y) - 1
            row[c], y = y, row[c]
        return Tableau(rows), y

    def relabel(self, fn) -> "Tableau":
        return Tableau(tuple(fn(v) for v in r) for r in self.rows)

    def to_json(self) -> str:
        return json.dumps({"rows": [list(r) for r in self.rows]}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Tableau":
        return cls.from_rows(json.loads(text)["rows"])

    def __str__(self) -> str:
        return json.dumps([list(r) for r in self.rows], separators=(",", ":"))


EMPTY = Tableau()


def shape(t: Tableau) -> Partition:
    return t.shape()


def locate(t: Tableau, value) -> BoxPosition:
    return t.locate(value)


def insert(t: Tableau, x) -> tuple[Tableau, list[BoxPosition]]:
    return t.insert(x)


def reverse_insert(t: Tableau, corner: BoxPosition) -> tuple[Tableau, object]:
    return t.reverse_insert(corner)


def rsk(seq: Sequence) -> tuple[Tableau, Tableau]:
    """Insertion tableau P and recording tableau Q of ``seq``."""
    if len(set(seq)) != len(seq):
        raise DuplicateEntryError("RSK input must have pairwise distinct entries")
    p: list[list] = []
    q: list[list] = []
    for j, x in enumerate(seq, start=1):
        cell = bump_in_place(p, x)[-1]
        if cell.row > len(q):
            q.append([])
        q[cell.row - 1].append(j)
    return Tableau(p), Tableau(q)


def _check_permutation(p: Sequence[int]) -> None:
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of 1..{len(p)}: {tuple(p)}")


def inverse_permutation(p: Sequence[int]) -> tuple[int, ...]:
    _check_permutation(p)
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def extend_permutation(p: Sequence[int], n_prime: int) -> tuple[int, ...]:
    """Insert the new maximum ``len(p) + 1`` right after the first ``n_prime`` values."""
    _check_permutation(p)
    if not 0 <= n_prime <= len(p):
        raise ValueError(f"n_prime must lie in [0, {len(p)}], got {n_prime}")
    p = tuple(p)
    return p[:n_prime] + (len(p) + 1,) + p[n_prime:]

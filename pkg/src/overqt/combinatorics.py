"""Overpartitions, conjugation, Durfee dissection and weighted Delannoy paths."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, List, Tuple

from .errors import InvalidOverpartition

Part = Tuple[int, bool]


@dataclass(frozen=True)
class Overpartition:
    """Positive parts in weakly decreasing order, plus a count of zero parts.

    An overlined entry must be the last entry of its value. Zero parts are
    never overlined and only appear in the involution of ``involutions``.
    """

    parts: Tuple[Part, ...] = ()
    zeros: int = 0

    def __post_init__(self):
        parts = tuple((int(v), bool(o)) for v, o in self.parts)
        object.__setattr__(self, "parts", parts)
        if self.zeros < 0:
            raise InvalidOverpartition("negative zero-part count")
        prev = None
        for i, (v, o) in enumerate(parts):
            if v <= 0:
                raise InvalidOverpartition(f"non-positive part {v} in {parts}")
            if prev is not None:
                pv, po = prev
                if v > pv:
                    raise InvalidOverpartition(f"parts not weakly decreasing: {parts}")
                if v == pv and po:
                    raise InvalidOverpartition(
                        f"overlined {pv} is not the last occurrence in {parts}"
                    )
            prev = (v, o)

    @classmethod
    def of(cls, *entries, zeros: int = 0) -> "Overpartition":
        """Build from ints (plain) and ``(v, True)`` pairs or negative ints
        (overlined): ``Overpartition.of(5, -5, 3)`` is (5, 5~, 3)."""
        parts = []
        for e in entries:
            if isinstance(e, tuple):
                parts.append(e)
            elif e < 0:
                parts.append((-e, True))
            else:
                parts.append((e, False))
        return cls(tuple(parts), zeros)

    @classmethod
    def parse(cls, text: str) -> "Overpartition":
        """Parse ``"5,5~,3,2,0"``. The empty string is the empty overpartition."""
        text = text.strip()
        if text in ("", "()", "-"):
            return cls()
        parts, zeros = [], 0
        for tok in text.split(","):
            tok = tok.strip()
            over = tok.endswith("~")
            v = int(tok.rstrip("~"))
            if v == 0:
                if over:
                    raise InvalidOverpartition("zero parts cannot be overlined")
                zeros += 1
            else:
                parts.append((v, over))
        return cls(tuple(parts), zeros)

    def to_text(self) -> str:
        toks = [f"{v}~" if o else str(v) for v, o in self.parts]
        toks += ["0"] * self.zeros
        return ",".join(toks)

    def to_json_obj(self) -> dict:
        return {"parts": [{"v": v, "o": o} for v, o in self.parts], "zeros": self.zeros}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Overpartition":
        return cls(tuple((p["v"], p["o"]) for p in obj["parts"]), obj.get("zeros", 0))

    def to_latex(self) -> str:
        toks = [f"\\overline{{{v}}}" if o else str(v) for v, o in self.parts]
        return "(" + ", ".join(toks + ["0"] * self.zeros) + ")"

    def __str__(self) -> str:
        return "(" + self.to_text() + ")"

    # -- statistics ---------------------------------------------------------

    @property
    def values(self) -> List[int]:
        return [v for v, _ in self.parts]

    @property
    def weight(self) -> int:
        return sum(v for v, _ in self.parts)

    @property
    def overline_count(self) -> int:
        return sum(1 for _, o in self.parts if o)

    @property
    def num_parts(self) -> int:
        return len(self.parts) + self.zeros

    @property
    def largest(self) -> int:
        return self.parts[0][0] if self.parts else 0

    def stats(self) -> Tuple[int, int, int, int]:
        return op_stats(self)

    def fits(self, max_part: int, max_count: int) -> bool:
        """Inside the max_part x max_count box (positive parts only)."""
        return self.largest <= max_part and len(self.parts) <= max_count

    def positive(self) -> "Overpartition":
        return Overpartition(self.parts)

    def with_zeros(self, zeros: int) -> "Overpartition":
        return Overpartition(self.parts, zeros)

    # -- editing ------------------------------------------------------------

    def insert(self, value: int, overlined: bool = False) -> "Overpartition":
        """Insert one part, keeping any overline on the last copy of its value.

        Overlined copies go after every plain copy of ``value``; plain copies
        go before an existing overlined copy.
        """
        if value == 0:
            if overlined:
                raise InvalidOverpartition("zero parts cannot be overlined")
            return Overpartition(self.parts, self.zeros + 1)
        parts = list(self.parts)
        if overlined:
            i = 0
            while i < len(parts) and parts[i][0] >= value:
                i += 1
        else:
            i = 0
            while i < len(parts) and (
                parts[i][0] > value or (parts[i][0] == value and not parts[i][1])
            ):
                i += 1
        parts.insert(i, (value, overlined))
        return Overpartition(tuple(parts), self.zeros)

    def remove_at(self, index: int) -> "Overpartition":
        parts = list(self.parts)
        del parts[index]
        return Overpartition(tuple(parts), self.zeros)


def op_stats(lam: Overpartition) -> Tuple[int, int, int, int]:
    """(weight, overline count, number of parts incl. zeros, largest part)."""
    return (lam.weight, lam.overline_count, lam.num_parts, lam.largest)


# ---------------------------------------------------------------------------
# enumeration


def _partitions_in_box(max_part: int, max_count: int) -> Iterator[Tuple[int, ...]]:
    """Partitions with parts <= max_part and at most max_count parts,
    lexicographically largest first, the empty partition last."""
    if max_count > 0:
        for first in range(max_part, 0, -1):
            for rest in _partitions_in_box(first, max_count - 1):
                yield (first,) + rest
    yield ()


def enumerate_overpartitions(max_part: int, max_count: int) -> Iterator[Overpartition]:
    """Every overpartition with largest part <= max_part and at most
    max_count parts, each exactly once, in a fixed order."""
    if max_part < 0 or max_count < 0:
        return
    for vals in _partitions_in_box(max_part, max_count):
        # index of the last occurrence of each distinct value
        corners = [i for i in range(len(vals)) if i + 1 == len(vals) or vals[i + 1] != vals[i]]
        for mask in itertools.product((False, True), repeat=len(corners)):
            marked = {i for i, m in zip(corners, mask) if m}
            yield Overpartition(tuple((v, i in marked) for i, v in enumerate(vals)))


def box_generating_function(max_part: int, max_count: int):
    """Sum of t^k q^N over the box, by direct enumeration."""
    from .algebra import MPoly

    counts = {}
    for lam in enumerate_overpartitions(max_part, max_count):
        key = (lam.weight, lam.overline_count, 0)
        counts[key] = counts.get(key, 0) + 1
    return MPoly(counts)


# ---------------------------------------------------------------------------
# conjugation


def conjugate(lam: Overpartition) -> Overpartition:
    """Conjugate Ferrers diagram, carrying each corner mark to the matching
    corner: an overlined last copy of v at row r becomes an overlined last
    copy of r at row v."""
    if lam.zeros:
        raise InvalidOverpartition("conjugate is defined on positive parts only")
    vals = lam.values
    if not vals:
        return Overpartition()
    conj = [sum(1 for v in vals if v >= j) for j in range(1, vals[0] + 1)]
    marked = set()
    for r, (v, o) in enumerate(lam.parts, start=1):
        if o:
            marked.add(v - 1)  # row v of the conjugate, 0-based
    return Overpartition(tuple((c, j in marked) for j, c in enumerate(conj)))


# ---------------------------------------------------------------------------
# Durfee dissection


@dataclass(frozen=True)
class DurfeeDecomposition:
    """d rows of width d+offset, the conjugated region to their right, and
    the overpartition below. ``corner`` records an overline on row d when
    that row ends exactly at the rectangle's edge (so the mark cannot live in
    ``right``)."""

    d: int
    right: Overpartition
    below: Overpartition
    offset: int = 0
    corner: bool = False


def durfee(lam: Overpartition, offset: int = 0) -> DurfeeDecomposition:
    """Split off the largest d x (d+offset) rectangle, with
    d = max{i : lam_i >= i + offset} over the positive parts."""
    vals = lam.values
    d = 0
    for i, v in enumerate(vals, start=1):
        if v >= i + offset and i + offset >= 0:
            d = i
        else:
            break
    width = d + offset
    rows = [(v - width, o) for v, o in lam.parts[:d]]
    corner = False
    if rows and rows[-1][0] == 0 and rows[-1][1]:
        corner = True
    right_rows = tuple((v, o) for v, o in rows if v > 0)
    right = conjugate(Overpartition(right_rows))
    below = Overpartition(lam.parts[d:], lam.zeros)
    return DurfeeDecomposition(d, right, below, offset, corner)


def reconstruct(dec: DurfeeDecomposition) -> Overpartition:
    """Inverse of :func:`durfee`."""
    d, width = dec.d, dec.d + dec.offset
    rows = list(conjugate(dec.right).parts) if dec.right.parts else []
    if len(rows) > d:
        raise InvalidOverpartition("right region taller than the rectangle")
    rows += [(0, False)] * (d - len(rows))
    if dec.corner:
        if not d or rows[-1][0] != 0:
            raise InvalidOverpartition("corner mark needs an empty last row on the right")
        rows[-1] = (0, True)
    top = tuple((v + width, o) for v, o in rows)
    return Overpartition(top + dec.below.parts, dec.below.zeros)


# ---------------------------------------------------------------------------
# Delannoy paths

EAST, NORTH, NORTHEAST = "E", "N", "NE"


@dataclass(frozen=True)
class DelannoyPath:
    steps: Tuple[str, ...] = field(default=())

    @property
    def end(self) -> Tuple[int, int]:
        x = sum(1 for s in self.steps if s in (EAST, NORTHEAST))
        y = sum(1 for s in self.steps if s in (NORTH, NORTHEAST))
        return x, y

    def __str__(self) -> str:
        return "".join("D" if s == NORTHEAST else s for s in self.steps)


def enumerate_delannoy_paths(m: int, n: int) -> Iterator[DelannoyPath]:
    """All E/N/NE lattice paths from (0,0) to (m,n)."""
    if m < 0 or n < 0:
        return

    def rec(x, y, acc):
        if x == m and y == n:
            yield DelannoyPath(tuple(acc))
            return
        if x < m:
            acc.append(EAST)
            yield from rec(x + 1, y, acc)
            acc.pop()
        if y < n:
            acc.append(NORTH)
            yield from rec(x, y + 1, acc)
            acc.pop()
        if x < m and y < n:
            acc.append(NORTHEAST)
            yield from rec(x + 1, y + 1, acc)
            acc.pop()

    yield from rec(0, 0, [])


def path_stats(p: DelannoyPath) -> Tuple[int, int]:
    """(number of NE steps, weight). A step leaving column i weighs 0 (E),
    i (N) or i+1 (NE)."""
    x = wt = d = 0
    for s in p.steps:
        if s == EAST:
            x += 1
        elif s == NORTH:
            wt += x
        else:
            wt += x + 1
            d += 1
            x += 1
    return d, wt

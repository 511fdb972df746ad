"""2D partitions, plane partitions and their box combinatorics.

Coordinates are 0-based.  ``x`` indexes the rows of a drawn diagram and
carries h2, ``y`` runs along a row and carries h1, ``z`` is the height and
carries h3, so a box has weight ``h1*y + h2*x + h3*z``.  With this choice
the second box of the one-row diagram (2) has weight h1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, NamedTuple, Optional

from .scalar import Scalar, lin


class DiagramError(ValueError):
    pass


class Box(NamedTuple):
    x: int
    y: int
    z: int


def weight_coeffs(b: Box) -> tuple[int, int]:
    """(a, b) with h_box = a*h1 + b*h2 after eliminating h3."""
    return (b.y - b.z, b.x - b.z)


def h_weight(b: Box) -> Scalar:
    return lin(*weight_coeffs(b))


@dataclass(frozen=True)
class PlanePartition:
    """Heights ``heights[x][y]`` weakly decreasing along both indices.

    ``max_height`` is an optional cap checked on construction; it does not
    take part in equality.
    """

    heights: tuple[tuple[int, ...], ...]
    max_height: Optional[int] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        rows = []
        for r in self.heights:
            r = tuple(int(v) for v in r)
            while r and r[-1] == 0:
                r = r[:-1]
            rows.append(r)
        while rows and not rows[-1]:
            rows.pop()
        rows = tuple(rows)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                if v < 0:
                    raise DiagramError("negative height")
                if j and r[j - 1] < v:
                    raise DiagramError(f"heights not decreasing along row {i}: {r}")
                if i and (j >= len(rows[i - 1]) or rows[i - 1][j] < v):
                    raise DiagramError(f"heights not decreasing down column {j}")
            if not r:
                raise DiagramError("empty row inside a plane partition")
        if self.max_height is not None and rows and max(max(r) for r in rows) > self.max_height:
            raise DiagramError(f"height exceeds cap {self.max_height}")
        object.__setattr__(self, "heights", rows)

    @classmethod
    def from_boxes(cls, boxes: Iterable[Box], max_height=None) -> "PlanePartition":
        boxes = set(boxes)
        if not boxes:
            return cls((), max_height)
        nx = max(b.x for b in boxes) + 1
        ny = max(b.y for b in boxes) + 1
        grid = [[0] * ny for _ in range(nx)]
        for b in boxes:
            grid[b.x][b.y] += 1
        out = cls(tuple(tuple(r) for r in grid), max_height)
        if out.boxes() != boxes:
            raise DiagramError("box set is not a plane partition")
        return out

    @property
    def size(self) -> int:
        return sum(sum(r) for r in self.heights)

    def __len__(self):
        return self.size

    @property
    def height(self) -> int:
        return max((r[0] for r in self.heights), default=0)

    def is_2d(self) -> bool:
        return self.height <= 1

    def h(self, x, y):
        if x < len(self.heights) and y < len(self.heights[x]):
            return self.heights[x][y]
        return 0

    def boxes(self) -> set:
        return {Box(x, y, z) for x, r in enumerate(self.heights)
                for y, v in enumerate(r) for z in range(v)}

    def __contains__(self, b):
        return b.z < self.h(b.x, b.y)

    def add(self, b: Box) -> "PlanePartition":
        return PlanePartition.from_boxes(self.boxes() | {b}, self.max_height)

    def remove(self, b: Box) -> "PlanePartition":
        return PlanePartition.from_boxes(self.boxes() - {b}, self.max_height)

    def to_partition(self) -> "Partition2D":
        if not self.is_2d():
            raise DiagramError("not a 2D diagram")
        return Partition2D(tuple(len(r) for r in self.heights))

    def __str__(self):
        return format_shape(self)

    def __repr__(self):
        return f"PlanePartition({format_shape(self)!r})"

    def sort_key(self):
        return (self.size, self.heights)


@dataclass(frozen=True)
class Partition2D:
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows if r)
        if any(r < 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise DiagramError(f"not a partition: {self.rows}")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self):
        return sum(self.rows)

    def conjugate(self) -> "Partition2D":
        if not self.rows:
            return self
        return Partition2D(tuple(sum(1 for r in self.rows if r > i) for i in range(self.rows[0])))

    def to_plane(self, max_height=None) -> PlanePartition:
        return PlanePartition(tuple((1,) * r for r in self.rows), max_height)

    def __str__(self):
        return ",".join(map(str, self.rows)) or "0"


# -- text forms ----------------------------------------------------------

def format_shape(pi) -> str:
    if isinstance(pi, Partition2D):
        return str(pi)
    if not pi.heights:
        return "0"
    if pi.is_2d():
        return ",".join(str(len(r)) for r in pi.heights)
    return format_heights(pi)


def format_heights(pi: PlanePartition) -> str:
    """Height-matrix form; a single row keeps a trailing ';' so it cannot
    be read as a 2D partition."""
    if not pi.heights:
        return "0"
    text = ";".join(",".join(map(str, r)) for r in pi.heights)
    return text if len(pi.heights) > 1 else text + ";"


def parse_shape(text: str, three_d: bool = False, max_height=None) -> PlanePartition:
    """'3,1' is a 2D partition (row lengths); '2,1;1' or '2;' is a height
    matrix.  With ``three_d`` every string is read as a height matrix.
    """
    text = text.strip()
    if text in ("", "0", "()", "empty"):
        return PlanePartition((), max_height)
    try:
        if ";" in text or three_d:
            rows = tuple(tuple(int(v) for v in r.split(",") if v.strip())
                         for r in text.split(";"))
            return PlanePartition(rows, max_height)
        parts = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise DiagramError(f"invalid shape string {text!r}") from exc
    return Partition2D(parts).to_plane(max_height)


# -- combinatorics -------------------------------------------------------

def addable_boxes(pi: PlanePartition, max_height=None) -> list[Box]:
    cap = pi.max_height if max_height is None else max_height
    out = []
    nx = len(pi.heights)
    for x in range(nx + 1):
        ny = len(pi.heights[x]) if x < nx else 0
        for y in range(ny + 1):
            z = pi.h(x, y)
            if cap is not None and z + 1 > cap:
                continue
            if x and pi.h(x - 1, y) < z + 1:
                continue
            if y and pi.h(x, y - 1) < z + 1:
                continue
            out.append(Box(x, y, z))
    return sorted(out, key=canonical_key)


def removable_boxes(pi: PlanePartition) -> list[Box]:
    out = []
    for x, r in enumerate(pi.heights):
        for y, z in enumerate(r):
            if z and pi.h(x + 1, y) < z and pi.h(x, y + 1) < z:
                out.append(Box(x, y, z - 1))
    return sorted(out, key=canonical_key)


def canonical_key(b: Box):
    """Layers bottom-up, rows top-down, left to right within a row."""
    return (b.z, b.x, b.y)


@lru_cache(maxsize=None)
def enumerate_pp(size: int, max_height: Optional[int] = None) -> tuple[PlanePartition, ...]:
    """All plane partitions of ``size`` (heights capped by ``max_height``),
    deterministically ordered."""
    if size < 0:
        raise ValueError("size must be nonnegative")
    if size == 0:
        return (PlanePartition(()),)
    found = set()
    for pi in enumerate_pp(size - 1, max_height):
        for b in addable_boxes(pi, max_height):
            found.add(pi.add(b))
    return tuple(sorted(found, key=lambda p: p.heights, reverse=True))


def enumerate_partitions(size: int) -> tuple[PlanePartition, ...]:
    return enumerate_pp(size, 1)


class GrowthPath(tuple):
    """Sequence of boxes whose every prefix is a plane partition."""

    def __new__(cls, boxes: Iterable[Box] = ()):
        boxes = tuple(Box(*b) for b in boxes)
        seen = set()
        for b in boxes:
            if b in seen:
                raise DiagramError(f"box {b} repeated in path")
            for nb in ((b.x - 1, b.y, b.z), (b.x, b.y - 1, b.z), (b.x, b.y, b.z - 1)):
                if min(nb) >= 0 and Box(*nb) not in seen:
                    raise DiagramError(f"path adds {b} before {Box(*nb)}")
            seen.add(b)
        return super().__new__(cls, boxes)

    def shape(self, max_height=None) -> PlanePartition:
        return PlanePartition.from_boxes(self, max_height)

    def __add__(self, other):
        return GrowthPath(tuple(self) + tuple(other))


def canonical_path(pi: PlanePartition) -> GrowthPath:
    return GrowthPath(sorted(pi.boxes(), key=canonical_key))


def canonical_parent(pi: PlanePartition) -> tuple[PlanePartition, Box]:
    """Drop the last box of the canonical path (always removable)."""
    path = canonical_path(pi)
    last = path[-1]
    return pi.remove(last), last


def all_paths(pi: PlanePartition):
    """Every growth path building ``pi`` (exponentially many; tests only)."""
    if pi.size == 0:
        yield GrowthPath(())
        return
    for b in removable_boxes(pi):
        for p in all_paths(pi.remove(b)):
            yield GrowthPath(tuple(p) + (b,))


_AXES = {"id": (0, 1, 2), "xy": (1, 0, 2), "xz": (2, 1, 0), "yz": (0, 2, 1)}


def transform(pi: PlanePartition, perm="xy", max_height=None) -> PlanePartition:
    """Permute coordinate axes.  ``perm`` is 'xy', 'xz', 'yz', 'id' or a
    tuple giving, for each new axis, the old axis it is read from."""
    p = _AXES[perm] if isinstance(perm, str) else tuple(perm)
    if sorted(p) != [0, 1, 2]:
        raise ValueError(f"not an axis permutation: {perm}")
    cap = pi.max_height if max_height is None else max_height
    boxes = {Box(*(b[i] for i in p)) for b in pi.boxes()}
    try:
        return PlanePartition.from_boxes(boxes, cap)
    except DiagramError as exc:
        raise DiagramError(f"transform {perm} violates max height {cap}") from exc


def axis_permutations():
    return list(permutations(range(3)))

"""Linear algebra over GF(2) on bit-packed Python integers.

Coordinate ``i`` of a vector is bit ``i`` of its integer, so a row XOR is a
single machine operation regardless of width.  Pivots are always the
lowest (leftmost when printed) coordinate, which makes bases reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class WidthError(ValueError):
    pass


@dataclass(frozen=True)
class Vec2:
    width: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.width:
            raise WidthError(f"bits do not fit in width {self.width}")

    @classmethod
    def from_list(cls, coords: Sequence[int]) -> Vec2:
        bits = 0
        for i, c in enumerate(coords):
            if c & 1:
                bits |= 1 << i
        return cls(len(coords), bits)

    @classmethod
    def from_str(cls, text: str) -> Vec2:
        text = "".join(text.split())
        return cls.from_list([int(c) for c in text])

    @classmethod
    def unit(cls, width: int, i: int) -> Vec2:
        return cls(width, 1 << i)

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __add__(self, other: Vec2) -> Vec2:
        if other.width != self.width:
            raise WidthError("vector widths differ")
        return Vec2(self.width, self.bits ^ other.bits)

    __xor__ = __add__

    def __bool__(self) -> bool:
        return self.bits != 0

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.width)]

    def block(self, start: int, stop: int) -> Vec2:
        return Vec2(stop - start, (self.bits >> start) & ((1 << (stop - start)) - 1))

    def format(self, group: int | None = None) -> str:
        s = "".join(str(b) for b in self.to_list())
        if group:
            s = " ".join(s[i : i + group] for i in range(0, len(s), group))
        return s

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class Mat2:
    width: int
    rows: tuple[int, ...] = ()

    @classmethod
    def from_vectors(cls, vecs: Iterable[Vec2], width: int | None = None) -> Mat2:
        vecs = list(vecs)
        if width is None:
            if not vecs:
                raise WidthError("width needed for an empty matrix")
            width = vecs[0].width
        if any(v.width != width for v in vecs):
            raise WidthError("row widths differ")
        return cls(width, tuple(v.bits for v in vecs))

    @classmethod
    def from_strs(cls, rows: Sequence[str]) -> Mat2:
        return cls.from_vectors([Vec2.from_str(r) for r in rows])

    @classmethod
    def identity(cls, k: int) -> Mat2:
        return cls(k, tuple(1 << i for i in range(k)))

    def vectors(self) -> list[Vec2]:
        return [Vec2(self.width, r) for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    def format(self, group: int | None = None) -> str:
        return "\n".join(v.format(group) for v in self.vectors())


class EchelonBasis:
    """Incrementally maintained reduced echelon basis.

    ``add`` returns True when the vector was independent of the basis.
    """

    def __init__(self, width: int, rows: Iterable[int] = ()):
        self.width = width
        self.pivots: dict[int, int] = {}  # pivot bit -> row
        for r in rows:
            self.add(r)

    def reduce(self, v: int) -> int:
        # rows are fully reduced: a pivot bit occurs in its own row only
        for p, row in self.pivots.items():
            if v & p:
                v ^= row
        return v

    def add(self, v: int) -> bool:
        if v >> self.width:
            raise WidthError("vector wider than basis")
        v = self.reduce(v)
        if not v:
            return False
        low = v & -v
        for p, row in self.pivots.items():
            if row & low:
                self.pivots[p] = row ^ v
        self.pivots[low] = v
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rows(self) -> list[int]:
        return [self.pivots[p] for p in sorted(self.pivots)]

    def matrix(self) -> Mat2:
        return Mat2(self.width, tuple(self.rows()))


def rref(m: Mat2) -> Mat2:
    return EchelonBasis(m.width, m.rows).matrix()


def rank(m: Mat2) -> int:
    return EchelonBasis(m.width, m.rows).rank


def in_span(m: Mat2, v: Vec2) -> bool:
    if v.width != m.width:
        raise WidthError("vector width does not match the matrix")
    return v.bits in EchelonBasis(m.width, m.rows)


def span_equal(m1: Mat2, m2: Mat2) -> bool:
    if m1.width != m2.width:
        raise WidthError("matrix widths differ")
    b1 = EchelonBasis(m1.width, m1.rows)
    b2 = EchelonBasis(m2.width, m2.rows)
    return all(r in b1 for r in m2.rows) and all(r in b2 for r in m1.rows)


def block_mask(block: range | tuple[int, int]) -> int:
    start, stop = (block.start, block.stop) if isinstance(block, range) else block
    return ((1 << (stop - start)) - 1) << start


def subspace_with_zero_block(m: Mat2, block: range | tuple[int, int]) -> Mat2:
    """Basis of the rows of span(m) that vanish on the coordinate block.

    Rows are eliminated on the block columns first; whatever has an empty
    block part afterwards spans the wanted subspace.
    """
    mask = block_mask(block)
    if mask >> m.width:
        raise WidthError("block exceeds the matrix width")
    block_pivots: dict[int, int] = {}
    rest = EchelonBasis(m.width)
    for r in m.rows:
        while r & mask:
            low = (r & mask) & -(r & mask)
            row = block_pivots.get(low)
            if row is None:
                block_pivots[low] = r
                break
            r ^= row
        else:
            rest.add(r)
    return rest.matrix()


def project(m: Mat2, block: range | tuple[int, int]) -> Mat2:
    """Rows restricted to a coordinate block, shifted to start at 0."""
    start, stop = (block.start, block.stop) if isinstance(block, range) else block
    w = stop - start
    return Mat2(w, tuple((r >> start) & ((1 << w) - 1) for r in m.rows))

"""The dihedral group D(d), d odd, and its Cayley graph K_{d,d}.

Rotations act as ``rho^i(x) = x + i`` and mirrors as ``mu_i(x) = 2i - x``.
Half indices such as ``mu_{j/2}`` are stored after multiplying by the
inverse of 2 modulo d.

Edges of the Cayley graph are indexed by ``(j, i)``: the edge labelled
``a_i`` leaving the rotation ``rho^j``, which ends at ``mu_{i - j/2}``.
Edge coordinate ``(j, i)`` is bit ``j*d + i`` of an edge vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .gf2 import Mat2, Vec2
from .portraits import Perm
from .selfsim import GenWord, GroupSpec, first_level_decomposition, hanoihedral_spec

ROT = "rot"
MIR = "mir"


def half(d: int) -> int:
    """Inverse of 2 modulo odd d."""
    if d % 2 == 0:
        raise ValueError("2 is not invertible modulo an even d")
    return (d + 1) // 2


@dataclass(frozen=True)
class DihedralElement:
    d: int
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in (ROT, MIR):
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "index", self.index % self.d)

    @property
    def is_mirror(self) -> bool:
        return self.kind == MIR

    def __mul__(self, other: DihedralElement) -> DihedralElement:
        return dihedral_mul(self, other)

    def __call__(self, x: int) -> int:
        return dihedral_apply(self, x)

    def perm(self) -> Perm:
        return tuple(self(x) for x in range(self.d))

    def __str__(self) -> str:
        if self.kind == ROT:
            return "1" if self.index == 0 else f"rho^{self.index}"
        return f"mu_{self.index}"


def rot(d: int, i: int) -> DihedralElement:
    return DihedralElement(d, ROT, i)


def mir(d: int, i: int) -> DihedralElement:
    return DihedralElement(d, MIR, i)


def elements(d: int) -> list[DihedralElement]:
    return [rot(d, i) for i in range(d)] + [mir(d, i) for i in range(d)]


def dihedral_mul(x: DihedralElement, y: DihedralElement) -> DihedralElement:
    if x.d != y.d:
        raise ValueError("dihedral elements of different degrees")
    d = x.d
    h = half(d)
    if x.kind == MIR and y.kind == MIR:
        return rot(d, 2 * (x.index - y.index))
    if x.kind == MIR:
        return mir(d, x.index - y.index * h)
    if y.kind == MIR:
        return mir(d, y.index + x.index * h)
    return rot(d, x.index + y.index)


def dihedral_apply(x: DihedralElement, point: int) -> int:
    if x.kind == ROT:
        return (x.index + point) % x.d
    return (2 * x.index - point) % x.d


def mirror_product(d: int, indices: Sequence[int]) -> DihedralElement:
    """``mu_{i_m} ... mu_{i_1}`` from the alternating sum of the indices."""
    m = len(indices)
    s = 0
    for k, i in enumerate(indices):
        s += i if k % 2 == 0 else -i
    if m % 2 == 0:
        return rot(d, 2 * s)
    return mir(d, s)


_by_perm: dict[int, dict[Perm, DihedralElement]] = {}


def from_perm(d: int, p: Perm) -> DihedralElement | None:
    """The dihedral element with the given action, or None if there is none."""
    table = _by_perm.get(d)
    if table is None:
        table = _by_perm[d] = {e.perm(): e for e in elements(d)}
    return table.get(tuple(p))


# ---------- Cayley graph


def edge_coord(d: int, j: int, i: int) -> int:
    return (j % d) * d + (i % d)


def edge_endpoint(d: int, j: int, i: int) -> DihedralElement:
    return mir(d, i - j * half(d))


def walk_edge_vector(d: int, w: Sequence[int]) -> Vec2:
    """Edge-use parities of the walk spelled by ``w`` from the identity.

    The rightmost letter is the first step; letter ``a_i`` moves ``c`` to
    ``mu_i c``.  Kept independent of the section bookkeeping on purpose.
    """
    bits = 0
    c = rot(d, 0)
    for i in reversed(w):
        nxt = mir(d, i) * c
        rotation = c if c.kind == ROT else nxt
        bits ^= 1 << edge_coord(d, rotation.index, i)
        c = nxt
    return Vec2(d * d, bits)


def edge_vector(spec: GroupSpec, w: Sequence[int]) -> Vec2:
    """Coordinate (j, i) is the parity of a_i in the section at i - j."""
    d = spec.d
    _, secs = first_level_decomposition(spec, w)
    bits = 0
    for j, i in product(range(d), repeat=2):
        if secs[(i - j) % d].count(i) % 2:
            bits |= 1 << edge_coord(d, j, i)
    return Vec2(d * d, bits)


def spanning_tree_edges(d: int) -> set[tuple[int, int]]:
    """Edges at the identity rotation together with edges at mu_0."""
    tree = {(0, i) for i in range(d)}
    tree |= {(j, j * half(d) % d) for j in range(d)}
    return tree


def cycle_space_basis(d: int) -> Mat2:
    """Fundamental cycles of the non-tree edges, (d-1)^2 of them.

    The cycle of a non-tree edge rho^j -> mu_m runs
    1 -a_0- mu_0 -(tree)- rho^j -(edge)- mu_m -a_m- 1.
    """
    half(d)
    tree = spanning_tree_edges(d)
    rows = []
    for j, i in product(range(d), repeat=2):
        if (j, i) in tree:
            continue
        m = edge_endpoint(d, j, i).index
        bits = 0
        for e in [(0, 0), (j, j * half(d) % d), (j, i), (0, m)]:
            bits ^= 1 << edge_coord(d, *e)
        rows.append(bits)
    return Mat2(d * d, tuple(rows))


def incidence_rows(d: int) -> Mat2:
    """One row per vertex of K_{d,d}: rotations rho^0..rho^{d-1}, then mirrors mu_0..mu_{d-1}."""
    rows = [0] * (2 * d)
    for j, i in product(range(d), repeat=2):
        bit = 1 << edge_coord(d, j, i)
        rows[j] ^= bit
        rows[d + edge_endpoint(d, j, i).index] ^= bit
    return Mat2(d * d, tuple(rows))


def vertex_conditions(d: int) -> Mat2:
    """The 2d parity conditions on level-1 parities of St_D(1) elements.

    Row j (rotation rho^j):       sum_i exp_{j+i}(g_i) = 0.
    Row d+j (mirror mu_{j/2}):    sum_i exp_{j-i}(g_i) = 0.
    Coordinates are edge coordinates: exp_a(g_p) lives at edge (a - p, a).
    """
    half(d)
    rows = []
    for j in range(d):
        bits = 0
        for i in range(d):
            a = (j + i) % d
            bits ^= 1 << edge_coord(d, a - i, a)
        rows.append(bits)
    for j in range(d):
        bits = 0
        for i in range(d):
            a = (j - i) % d
            bits ^= 1 << edge_coord(d, a - i, a)
        rows.append(bits)
    return Mat2(d * d, tuple(rows))


def coset_transversal(d: int) -> dict[DihedralElement, GenWord]:
    """Shortest word (lexicographically first) reaching each element of D(d)."""
    start = rot(d, 0)
    words: dict[DihedralElement, GenWord] = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(d):
                t = mir(d, i) * c
                if t not in words:
                    words[t] = (i,) + words[c]
                    nxt.append(t)
        frontier = nxt
    return words


def st1_schreier_words(d: int) -> list[GenWord]:
    """Schreier generators of St_D(1) as words: T(mu_i c)^{-1} a_i T(c)."""
    trans = coset_transversal(d)
    out = []
    for c, word in trans.items():
        for i in range(d):
            target = trans[mir(d, i) * c]
            out.append(tuple(reversed(target)) + (i,) + word)
    return out


def schreier_edge_space(d: int) -> Mat2:
    spec = hanoihedral_spec(d)
    return Mat2.from_vectors([edge_vector(spec, w) for w in st1_schreier_words(d)], d * d)

"""Decorated permutations of a truncated tree and stabilizer chains over them.

An :class:`ExtElement` at depth ``n`` pairs the action of a group element
on the vertices of length ``<= n`` with a cocycle: for every vertex ``u``
of length ``< n``, the image of the section ``g_u`` in an elementary
abelian quotient (for the Hanoihedral groups, the parity vector ``exp``).
Multiplication is

    (s, v)(t, w) = (s t, v o t + w),    (v o t)(u) = v(t[u]),

and the map from words is injective on G / Triv_G(n).

:class:`StabilizerChain` runs a deterministic Schreier-Sims over the
permutation part with the base ordered level by level, so the stabilizer
of the first ``|X| + ... + |X^k|`` base points is St(k).  Elements with
trivial action are kept as a GF(2) subspace at the bottom of the chain;
that subspace is St(n)/Triv(n).
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import product
from operator import xor
from typing import Callable, Iterable, Iterator, Sequence

from .gf2 import EchelonBasis, Mat2, Vec2
from .portraits import Portrait, level_offset, vertex_count
from .selfsim import GenWord, GroupSpec, first_level_decomposition

logger = logging.getLogger(__name__)


class TreeLayout:
    """Vertex indexing of X^{<=n}: index 0 is the root, then length-lex order."""

    def __init__(self, d: int, n: int, block_width: int | None = None):
        if n < 1:
            raise ValueError("depth must be at least 1")
        self.d = d
        self.n = n
        self.block_width = d if block_width is None else block_width
        self.size = vertex_count(d, n + 1)  # all vertices of length <= n
        self.inner = vertex_count(d, n)  # vertices of length < n (cocycle support)
        self.identity = tuple(range(self.size))
        self.zero = (0,) * self.size

    def __eq__(self, other):
        return isinstance(other, TreeLayout) and (self.d, self.n, self.block_width) == (
            other.d,
            other.n,
            other.block_width,
        )

    def __hash__(self):
        return hash((self.d, self.n, self.block_width))

    @property
    def degree(self) -> int:
        """Number of non-root points the chain acts on."""
        return self.size - 1

    def child(self, u: int, x: int) -> int:
        length = self.length(u)
        off, noff = level_offset(self.d, length), level_offset(self.d, length + 1)
        return noff + (u - off) * self.d + x

    @lru_cache(maxsize=None)
    def length(self, u: int) -> int:
        k = 0
        while level_offset(self.d, k + 1) <= u:
            k += 1
        return k

    def level_range(self, k: int) -> range:
        return range(level_offset(self.d, k), level_offset(self.d, k + 1))

    def pack(self, cocycle: Sequence[int]) -> int:
        bw = self.block_width
        out = 0
        for u in range(self.inner - 1, -1, -1):
            out = (out << bw) | cocycle[u]
        return out

    def unpack(self, bits: int) -> tuple[int, ...]:
        bw = self.block_width
        mask = (1 << bw) - 1
        out = [0] * self.size
        for u in range(self.inner):
            out[u] = (bits >> (bw * u)) & mask
        return tuple(out)

    @property
    def cocycle_width(self) -> int:
        return self.block_width * self.inner


class ExtElement:
    __slots__ = ("layout", "perm", "cocycle")

    def __init__(self, layout: TreeLayout, perm: tuple[int, ...], cocycle: tuple[int, ...]):
        self.layout = layout
        self.perm = perm
        # padded to layout.size; entries for leaves stay 0
        self.cocycle = cocycle

    @classmethod
    def identity(cls, layout: TreeLayout) -> ExtElement:
        return cls(layout, layout.identity, layout.zero)

    def __mul__(self, other: ExtElement) -> ExtElement:
        op = other.perm
        perm = tuple(map(self.perm.__getitem__, op))
        coc = tuple(map(xor, map(self.cocycle.__getitem__, op), other.cocycle))
        return ExtElement(self.layout, perm, coc)

    def inverse(self) -> ExtElement:
        p = self.perm
        inv = [0] * len(p)
        for x, y in enumerate(p):
            inv[y] = x
        inv = tuple(inv)
        return ExtElement(self.layout, inv, tuple(map(self.cocycle.__getitem__, inv)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtElement)
            and self.layout == other.layout
            and self.perm == other.perm
            and self.cocycle == other.cocycle
        )

    def __hash__(self):
        return hash((self.perm, self.cocycle))

    def is_identity(self) -> bool:
        return self.perm == self.layout.identity and not any(self.cocycle)

    def acts_trivially(self) -> bool:
        return self.perm == self.layout.identity

    def image(self, u: int) -> int:
        return self.perm[u]

    def block(self, u: int) -> Vec2:
        return Vec2(self.layout.block_width, self.cocycle[u])

    def cocycle_vector(self) -> Vec2:
        return Vec2(self.layout.cocycle_width, self.layout.pack(self.cocycle))

    def level_blocks(self, k: int) -> Vec2:
        """Concatenated cocycle blocks of the vertices of length k."""
        lay = self.layout
        bw = lay.block_width
        bits = 0
        for i, u in enumerate(lay.level_range(k)):
            bits |= self.cocycle[u] << (bw * i)
        return Vec2(bw * len(lay.level_range(k)), bits)

    def portrait(self) -> Portrait:
        """Forget the cocycle; read labels off the vertex action."""
        lay = self.layout
        d = lay.d
        labels = []
        for u in range(lay.inner):
            img = self.perm[u]
            first = lay.child(img, 0)
            labels.append(tuple(self.perm[lay.child(u, x)] - first for x in range(d)))
        return Portrait(d, lay.n, tuple(labels))

    def __repr__(self):
        return f"ExtElement(d={self.layout.d}, n={self.layout.n}, moved={sum(1 for i, p in enumerate(self.perm) if i != p)})"


def exp_bits(w: Sequence[int]) -> int:
    """Occurrence parity of each generator, bit i for generator i."""
    bits = 0
    for i in w:
        bits ^= 1 << i
    return bits


def ext_from_word(
    spec: GroupSpec,
    w: Sequence[int],
    n: int,
    quotient: Callable[[Sequence[int]], int] = exp_bits,
) -> ExtElement:
    """Action of ``w`` on X^{<=n} and the quotient image of its sections.

    ``quotient`` maps a word to the bit vector of its image in G/K; the
    default is the generator parity map, whose kernel for the Hanoihedral
    groups is the commutator subgroup.
    """
    lay = TreeLayout(spec.d, n, len(spec.generators))
    perm = [0] * lay.size
    coc = [0] * lay.size
    words: dict[int, GenWord] = {0: tuple(w)}
    for u in range(lay.inner):
        word = words.pop(u)
        coc[u] = quotient(word)
        root, secs = first_level_decomposition(spec, word)
        img = perm[u]
        for x in range(spec.d):
            c = lay.child(u, x)
            perm[c] = lay.child(img, root[x])
            if c < lay.inner:
                words[c] = secs[x]
    return ExtElement(lay, tuple(perm), tuple(coc))


def ext_generators(spec: GroupSpec, n: int) -> list[ExtElement]:
    return [ext_from_word(spec, (i,), n) for i in range(len(spec.generators))]


def ext_product(items: Iterable[ExtElement], layout: TreeLayout) -> ExtElement:
    out = ExtElement.identity(layout)
    for e in items:
        out = out * e
    return out


# ---------- stabilizer chain


class _Level:
    __slots__ = ("point", "gens", "orbit", "tinv", "checked")

    def __init__(self, point: int, identity: ExtElement):
        self.point = point
        self.gens: list[ExtElement] = []
        self.orbit: dict[int, ExtElement] = {point: identity}
        self.tinv: dict[int, ExtElement] = {point: identity}
        self.checked: set[tuple[int, int]] = set()

    def add_gen(self, s: ExtElement) -> bool:
        """Append a generator and close the orbit; True if the orbit grew."""
        self.gens.append(s)
        orbit = self.orbit
        todo = []
        for beta, t in list(orbit.items()):
            img = s.perm[beta]
            if img not in orbit:
                orbit[img] = s * t
                todo.append(img)
        grew = bool(todo)
        while todo:
            beta = todo.pop()
            t = orbit[beta]
            for g in self.gens:
                img = g.perm[beta]
                if img not in orbit:
                    orbit[img] = g * t
                    todo.append(img)
        for beta, t in orbit.items():
            if beta not in self.tinv:
                self.tinv[beta] = t.inverse()
        return grew


class StabilizerChain:
    """Base and strong generating set for a group of ExtElements.

    The base is every non-root vertex in length-lex order.  ``order``
    counts the permutation image only; ``kernel`` holds the cocycles of the
    elements acting trivially on the truncated tree.
    """

    def __init__(self, layout: TreeLayout, gens: Sequence[ExtElement]):
        self.layout = layout
        ident = ExtElement.identity(layout)
        self.base = list(range(1, layout.size))
        self.levels = [_Level(b, ident) for b in self.base]
        self.input_gens = [g for g in gens if not g.is_identity()]
        self._conj_perms = [g.perm for g in self.input_gens if not g.acts_trivially()]
        self.kernel = EchelonBasis(layout.cocycle_width)
        self.kernel_cocycles: list[tuple[int, ...]] = []
        self.sifts = 0
        for g in self.input_gens:
            j = self._first_moved_level(g)
            if j is None:
                self._add_kernel(g.cocycle)
            else:
                for lvl in self.levels[: j + 1]:
                    lvl.add_gen(g)
        self._schreier_sims()

    # -- internals

    def _first_moved_level(self, g: ExtElement) -> int | None:
        p = g.perm
        for i in range(1, len(p)):
            if p[i] != i:
                return i - 1
        return None

    def _active(self) -> list[int]:
        return [i for i, lvl in enumerate(self.levels) if len(lvl.orbit) > 1]

    def _add_kernel(self, cocycle: tuple[int, ...]) -> bool:
        lay = self.layout
        todo = [cocycle]
        grew = False
        while todo:
            c = todo.pop()
            if self.kernel.add(lay.pack(c)):
                grew = True
                self.kernel_cocycles.append(c)
                for p in self._conj_perms:
                    # conjugation by (p, w) sends (1, v) to (1, v o p^{-1})
                    moved = [0] * lay.size
                    for u in range(lay.inner):
                        moved[p[u]] = c[u]
                    todo.append(tuple(moved))
        return grew

    def sift(self, g: ExtElement, start: int = 0, active: Sequence[int] | None = None):
        """Strip ``g`` through the levels from ``start``.

        Returns ``(residue, level)``; residue is None when ``g`` is a member.
        ``level`` is the index of the first base point the residue moves, or
        ``len(levels)`` for a residue that only fails the kernel test.
        """
        self.sifts += 1
        levels = self.levels
        if active is None:
            active = self._active()
        for k in active:
            if k < start:
                continue
            lvl = levels[k]
            beta = g.perm[lvl.point]
            if beta == lvl.point:
                continue
            tinv = lvl.tinv.get(beta)
            if tinv is None:
                j = self._first_moved_level(g)
                return g, j
            g = tinv * g
        if not g.acts_trivially():
            return g, self._first_moved_level(g)
        if self.kernel.reduce(self.layout.pack(g.cocycle)):
            return g, len(levels)
        return None, len(levels)

    def _schreier_sims(self):
        levels = self.levels
        L = len(levels)
        i = L - 1
        while i >= 0:
            lvl = levels[i]
            if not lvl.gens:
                i -= 1
                continue
            active = self._active()
            restart = None
            for gi, s in enumerate(lvl.gens):
                for beta in list(lvl.orbit):
                    key = (gi, beta)
                    if key in lvl.checked:
                        continue
                    lvl.checked.add(key)
                    h = lvl.tinv[s.perm[beta]] * (s * lvl.orbit[beta])
                    res, j = self.sift(h, i + 1, active)
                    if res is None:
                        continue
                    if j == L:
                        self._add_kernel(res.cocycle)
                        continue
                    for l in range(i + 1, j + 1):
                        levels[l].add_gen(res)
                    restart = j
                    break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart
        logger.debug("chain built: degree %d, %d sifts", self.layout.degree, self.sifts)

    # -- queries

    def orbit_sizes(self) -> list[int]:
        return [len(lvl.orbit) for lvl in self.levels]

    def order(self) -> int:
        out = 1
        for lvl in self.levels:
            out *= len(lvl.orbit)
        return out

    def ext_order(self) -> int:
        return self.order() << self.kernel.rank

    def contains(self, g: ExtElement) -> bool:
        res, _ = self.sift(g)
        return res is None

    def strong_generators(self) -> list[ExtElement]:
        seen: list[ExtElement] = []
        ids = set()
        for lvl in self.levels:
            for g in lvl.gens:
                if id(g) not in ids:
                    ids.add(id(g))
                    seen.append(g)
        return seen

    def kernel_elements(self) -> list[ExtElement]:
        return [ExtElement(self.layout, self.layout.identity, c) for c in self.kernel_cocycles]

    def level_start(self, k: int) -> int:
        """Index of the first base point of length k + 1."""
        return level_offset(self.layout.d, k + 1) - 1

    def elements(self) -> Iterator[ExtElement]:
        """Every element of the permutation image, as transversal products.

        Cocycles are those of the chosen transversal representatives.
        """
        active = [lvl for lvl in self.levels if len(lvl.orbit) > 1]
        for combo in product(*(list(lvl.orbit.values()) for lvl in active)):
            out = ExtElement.identity(self.layout)
            for t in combo:
                out = out * t
            yield out

    def summary(self) -> dict:
        return {
            "base": [lvl.point for lvl in self.levels if len(lvl.orbit) > 1],
            "orbit_sizes": [len(lvl.orbit) for lvl in self.levels if len(lvl.orbit) > 1],
            "order": str(self.order()),
            "kernel_rank": self.kernel.rank,
        }


def build_chain(gens: Sequence[ExtElement], layout: TreeLayout | None = None) -> StabilizerChain:
    if layout is None:
        if not gens:
            raise ValueError("layout needed for an empty generator list")
        layout = gens[0].layout
    if any(g.layout != layout for g in gens):
        raise ValueError("generators live on different tree layouts")
    return StabilizerChain(layout, gens)


def group_order(chain: StabilizerChain) -> int:
    """Order of the permutation image, i.e. [G : St_G(n)]."""
    return chain.order()


def level_stabilizer_gens(chain: StabilizerChain, k: int) -> list[ExtElement]:
    """Generators of the elements fixing every vertex of length <= k."""
    n = chain.layout.n
    if not 1 <= k <= n:
        raise ValueError(f"level {k} outside 1..{n}")
    start = chain.level_start(k)
    gens = [] if start >= len(chain.levels) else list(chain.levels[start].gens)
    return gens + chain.kernel_elements()


def level_stabilizer_order(chain: StabilizerChain, k: int) -> int:
    """Order of the permutation image of St(k)."""
    out = 1
    for lvl in chain.levels[chain.level_start(k) :]:
        out *= len(lvl.orbit)
    return out


def st_mod_triv_space(chain: StabilizerChain) -> Mat2:
    """GF(2) basis of the cocycles of elements acting trivially: St(n)/Triv(n)."""
    return chain.kernel.matrix()


def chain_for(spec: GroupSpec, n: int) -> StabilizerChain:
    return build_chain(ext_generators(spec, n))

"""Finite words over X = {0, ..., d-1} and depth-truncated tree automorphisms.

A portrait of depth ``n`` assigns a permutation of X to every vertex of
length ``< n``.  Vertices are stored densely in length-then-lexicographic
order, so the label of a vertex is found by arithmetic rather than lookup.

Permutations are plain tuples of images.  Composition follows the
function convention ``(p * q)(x) = p(q(x))``: ``q`` acts first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]
Vertex = tuple[int, ...]


class PortraitError(ValueError):
    pass


# ---------- permutations of X


def perm_identity(d: int) -> Perm:
    return tuple(range(d))


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Composition ``p(q(x))``."""
    return tuple(p[x] for x in q)


def perm_inv(p: Perm) -> Perm:
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(p)
    if sorted(p) != list(range(len(p))):
        raise PortraitError(f"not a permutation: {p}")
    return p


def format_perm(p: Perm) -> str:
    return " ".join(map(str, p))


def parse_perm(text: str) -> Perm:
    return check_perm(int(t) for t in text.split())


# ---------- vertices


def level_offset(d: int, length: int) -> int:
    """Index of the first vertex of the given length."""
    return (d**length - 1) // (d - 1)


def vertex_count(d: int, depth: int) -> int:
    """Number of vertices of length < depth."""
    return level_offset(d, depth)


def vertex_index(d: int, v: Vertex) -> int:
    k = 0
    for x in v:
        k = k * d + x
    return level_offset(d, len(v)) + k


def vertices(d: int, depth: int) -> Iterator[Vertex]:
    """All vertices of length < depth, in storage order."""
    for length in range(depth):
        yield from product(range(d), repeat=length)


def parse_vertex(text: str) -> Vertex:
    text = text.strip()
    if text in ("", "e", "ε"):
        return ()
    return tuple(int(c) for c in text)


def format_vertex(v: Vertex) -> str:
    return "".join(map(str, v)) if v else "ε"


def _check_vertex(d: int, v: Sequence[int]) -> Vertex:
    v = tuple(v)
    if any(not 0 <= x < d for x in v):
        raise PortraitError(f"vertex {v} has a letter outside [0, {d})")
    return v


# ---------- portraits


@dataclass(frozen=True)
class Portrait:
    """Depth-``depth`` truncation of an automorphism of the d-ary tree.

    ``labels[i]`` is the permutation at the i-th vertex in storage order;
    there are ``(d**depth - 1) // (d - 1)`` of them.
    """

    d: int
    depth: int
    labels: tuple[Perm, ...]

    def __post_init__(self):
        if self.depth < 1:
            raise PortraitError("portrait depth must be positive")
        if len(self.labels) != vertex_count(self.d, self.depth):
            raise PortraitError("label count does not match depth")

    def label(self, v: Vertex) -> Perm:
        if len(v) >= self.depth:
            raise PortraitError(f"no label at depth {len(v)} in a depth-{self.depth} portrait")
        return self.labels[vertex_index(self.d, v)]

    def is_identity(self) -> bool:
        ident = perm_identity(self.d)
        return all(lab == ident for lab in self.labels)

    def __mul__(self, other: Portrait) -> Portrait:
        return portrait_mul(self, other)

    def __str__(self) -> str:
        return format_portrait(self)


def identity_portrait(d: int, depth: int) -> Portrait:
    return Portrait(d, depth, (perm_identity(d),) * vertex_count(d, depth))


def portrait_from_labels(d: int, depth: int, labels: dict[Vertex, Perm]) -> Portrait:
    """Build a portrait from a sparse vertex -> label map; missing labels are trivial."""
    ident = perm_identity(d)
    out = [ident] * vertex_count(d, depth)
    for v, lab in labels.items():
        v = _check_vertex(d, v)
        if len(v) >= depth:
            raise PortraitError(f"vertex {format_vertex(v)} is too deep for depth {depth}")
        out[vertex_index(d, v)] = check_perm(lab)
    return Portrait(d, depth, tuple(out))


def _images(p: Portrait) -> list[int]:
    """Index of g[u] for every stored vertex u."""
    d = p.d
    img = [0] * len(p.labels)
    for length in range(1, p.depth):
        base = level_offset(d, length)
        parent_base = level_offset(d, length - 1)
        for k in range(d**length):
            parent, x = divmod(k, d)
            pimg = img[parent_base + parent] - parent_base
            img[base + k] = base + pimg * d + p.labels[parent_base + parent][x]
    return img


def portrait_apply(p: Portrait, v: Sequence[int]) -> Vertex:
    v = _check_vertex(p.d, v)
    if len(v) > p.depth:
        raise PortraitError(f"vertex of length {len(v)} exceeds portrait depth {p.depth}")
    out = []
    for i, x in enumerate(v):
        out.append(p.labels[vertex_index(p.d, v[:i])][x])
    return tuple(out)


def portrait_mul(f: Portrait, g: Portrait) -> Portrait:
    """Product with ``fg(u) = f(g[u]) g(u)``; ``g`` acts first."""
    if f.d != g.d or f.depth != g.depth:
        raise PortraitError("portraits differ in alphabet size or depth")
    img = _images(g)
    fl, gl = f.labels, g.labels
    return Portrait(f.d, f.depth, tuple(perm_mul(fl[img[u]], gl[u]) for u in range(len(gl))))


def portrait_inv(p: Portrait) -> Portrait:
    img = _images(p)
    out: list[Perm] = [()] * len(p.labels)
    for u, lab in enumerate(p.labels):
        out[img[u]] = perm_inv(lab)
    return Portrait(p.d, p.depth, tuple(out))


def portrait_section(p: Portrait, v: Sequence[int]) -> Portrait:
    v = _check_vertex(p.d, v)
    if len(v) >= p.depth:
        raise PortraitError(f"cannot take a section at depth {len(v)} of a depth-{p.depth} portrait")
    depth = p.depth - len(v)
    labels = tuple(p.labels[vertex_index(p.d, v + u)] for u in vertices(p.d, depth))
    return Portrait(p.d, depth, labels)


def portrait_delta(x: int, inner: Portrait) -> Portrait:
    """The portrait ``x * inner``: ``inner`` below vertex x, trivial elsewhere."""
    d = inner.d
    labels = {(x,) + u: lab for u, lab in zip(vertices(d, inner.depth), inner.labels)}
    return portrait_from_labels(d, inner.depth + 1, labels)


def portrait_prod(items: Iterable[Portrait], d: int, depth: int) -> Portrait:
    out = identity_portrait(d, depth)
    for p in items:
        out = portrait_mul(out, p)
    return out


def random_portrait(d: int, depth: int, rng: random.Random, labels: Sequence[Perm] | None = None) -> Portrait:
    """Random portrait; labels drawn from ``labels`` or from all of Sym(X)."""
    out = []
    for _ in range(vertex_count(d, depth)):
        if labels is None:
            lab = list(range(d))
            rng.shuffle(lab)
            out.append(tuple(lab))
        else:
            out.append(rng.choice(labels))
    return Portrait(d, depth, tuple(out))


def format_portrait(p: Portrait) -> str:
    lines = [f"depth {p.depth}"]
    for v, lab in zip(vertices(p.d, p.depth), p.labels):
        lines.append(f"{format_vertex(v)}: {format_perm(lab)}")
    return "\n".join(lines)


def parse_portrait(text: str, d: int) -> Portrait:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    if len(head) != 2 or head[0] != "depth":
        raise PortraitError("portrait text must start with 'depth <n>'")
    depth = int(head[1])
    labels = {}
    for ln in lines[1:]:
        v, _, perm = ln.partition(":")
        labels[parse_vertex(v)] = parse_perm(perm)
    return portrait_from_labels(d, depth, labels)

"""Self-similar groups given by wreath recursion.

A :class:`GroupSpec` lists, for every generator, its root permutation and
its first-level sections (each another generator or the identity).  Words
are tuples of generator indices written left to right as in
``a_{i_m} ... a_{i_1}``; the rightmost letter acts first.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

from .portraits import (
    Perm,
    Portrait,
    PortraitError,
    check_perm,
    format_perm,
    identity_portrait,
    perm_identity,
    perm_mul,
    portrait_mul,
    vertices,
)

GenWord = tuple[int, ...]

MAX_RECURSION = 200


class SpecError(ValueError):
    pass


class NotContractingError(RuntimeError):
    """Raised when word-problem recursion or nucleus closure exceeds its cap."""


@dataclass(frozen=True)
class Generator:
    name: str
    root: Perm
    # sections[x] is a generator index, or None for the identity
    sections: tuple[int | None, ...]


@dataclass(frozen=True)
class GroupSpec:
    d: int
    generators: tuple[Generator, ...]
    involutive: bool = False

    def __post_init__(self):
        n = len(self.generators)
        for g in self.generators:
            if len(check_perm(g.root)) != self.d:
                raise SpecError(f"root of {g.name} is not a permutation of {self.d} letters")
            if len(g.sections) != self.d:
                raise SpecError(f"{g.name} needs exactly {self.d} sections")
            for s in g.sections:
                if s is not None and not 0 <= s < n:
                    raise SpecError(f"{g.name} has a section naming an undeclared generator")
        if len({g.name for g in self.generators}) != n:
            raise SpecError("generator names must be distinct")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SpecError(f"unknown generator {name!r}") from None


def hanoihedral_spec(d: int) -> GroupSpec:
    """Generators a_i = mu_i (1, ..., a_i, ..., 1) for odd d >= 3, mu_i(x) = 2i - x."""
    if d < 3 or d % 2 == 0:
        raise SpecError(f"d must be an odd integer >= 3, got {d}")
    gens = []
    for i in range(d):
        root = tuple((2 * i - x) % d for x in range(d))
        sections = tuple(i if x == i else None for x in range(d))
        gens.append(Generator(f"a{i}", root, sections))
    return GroupSpec(d, tuple(gens), involutive=True)


def is_hanoihedral(spec: GroupSpec) -> bool:
    try:
        return spec == hanoihedral_spec(spec.d)
    except SpecError:
        return False


# ---------- text forms


def parse_word(spec: GroupSpec, text: str) -> GenWord:
    return tuple(spec.index(t) for t in text.split())


def format_word(spec: GroupSpec, w: Sequence[int]) -> str:
    return " ".join(spec.generators[i].name for i in w) if w else "1"


def spec_to_text(spec: GroupSpec) -> str:
    """Declarative form: one ``gen`` line per generator.

    ``gen <name> <root images> | <letter>=<name> ...``
    """
    lines = [f"alphabet {spec.d}", f"involutive {'yes' if spec.involutive else 'no'}"]
    for g in spec.generators:
        secs = " ".join(
            f"{x}={spec.generators[s].name}" for x, s in enumerate(g.sections) if s is not None
        )
        lines.append(f"gen {g.name} {format_perm(g.root)} | {secs}".rstrip())
    return "\n".join(lines) + "\n"


def spec_from_text(text: str) -> GroupSpec:
    d = None
    involutive = False
    raw = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "alphabet":
            d = int(rest)
        elif key == "involutive":
            involutive = rest.strip() in ("yes", "true", "1")
        elif key == "gen":
            head, _, secs = rest.partition("|")
            name, *images = head.split()
            raw.append((name, tuple(int(t) for t in images), secs.split()))
        else:
            raise SpecError(f"unrecognized line: {line!r}")
    if d is None:
        raise SpecError("missing 'alphabet' line")
    names = [r[0] for r in raw]
    gens = []
    for name, root, secs in raw:
        sections: list[int | None] = [None] * d
        for item in secs:
            x, _, target = item.partition("=")
            if target not in names:
                raise SpecError(f"section of {name} names undeclared generator {target!r}")
            sections[int(x)] = names.index(target)
        gens.append(Generator(name, root, tuple(sections)))
    return GroupSpec(d, tuple(gens), involutive)


# ---------- evaluation


def _generator_portrait(spec: GroupSpec, gen: int, depth: int) -> Portrait:
    d = spec.d
    ident = perm_identity(d)
    # label of generator g at vertex u: follow sections along u
    labels = []
    for u in vertices(d, depth):
        cur: int | None = gen
        for x in u:
            cur = spec.generators[cur].sections[x]
            if cur is None:
                break
        labels.append(ident if cur is None else spec.generators[cur].root)
    return Portrait(d, depth, tuple(labels))


_portrait_cache: dict[tuple[GroupSpec, int, int], Portrait] = {}


def generator_portrait(spec: GroupSpec, gen: int, depth: int) -> Portrait:
    key = (spec, gen, depth)
    p = _portrait_cache.get(key)
    if p is None:
        p = _portrait_cache.setdefault(key, _generator_portrait(spec, gen, depth))
    return p


def evaluate(spec: GroupSpec, w: Sequence[int], depth: int) -> Portrait:
    if depth < 1:
        raise PortraitError("depth must be at least 1")
    out = identity_portrait(spec.d, depth)
    for i in w:
        out = portrait_mul(out, generator_portrait(spec, i, depth))
    return out


def root_perm(spec: GroupSpec, w: Sequence[int]) -> Perm:
    out = perm_identity(spec.d)
    for i in w:
        out = perm_mul(out, spec.generators[i].root)
    return out


def first_level_decomposition(spec: GroupSpec, w: Sequence[int]) -> tuple[Perm, tuple[GenWord, ...]]:
    """Root permutation and the d section words of ``w``.

    Letters keep their relative order inside each section.  The letter
    acting k-th (from the right) sees the vertex reached after the first
    k-1 letters, so it contributes to the section at the preimage of that
    vertex.
    """
    d = spec.d
    gens = spec.generators
    where = list(range(d))  # where[y]: the starting vertex now sitting at y
    sections: list[list[int]] = [[] for _ in range(d)]
    for i in reversed(w):
        g = gens[i]
        for y, s in enumerate(g.sections):
            if s is not None:
                sections[where[y]].append(s)
        root = g.root
        new_where = [0] * d
        for y in range(d):
            new_where[root[y]] = where[y]
        where = new_where
    return root_perm(spec, w), tuple(tuple(reversed(s)) for s in sections)


def free_reduce(spec: GroupSpec, w: Sequence[int]) -> GenWord:
    """Cancel adjacent equal letters (needs an involutive generating set)."""
    if not spec.involutive:
        return tuple(w)
    out: list[int] = []
    for i in w:
        if out and out[-1] == i:
            out.pop()
        else:
            out.append(i)
    return tuple(out)


def word_inverse(spec: GroupSpec, w: Sequence[int]) -> GenWord:
    if not spec.involutive:
        raise SpecError("word inverses need an involutive generating set")
    return tuple(reversed(w))


# ---------- word problem


class _TrivialityOracle:
    """Memoized word problem for one spec, safe to share between threads."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.lock = threading.Lock()
        self.memo: dict[GenWord, bool] = {}
        self.trivial_gens = self._trivial_generators()

    def _trivial_generators(self) -> frozenset[int]:
        # greatest set of generators with identity root whose sections stay in the set
        gens = self.spec.generators
        ident = perm_identity(self.spec.d)
        cand = {i for i, g in enumerate(gens) if g.root == ident}
        changed = True
        while changed:
            changed = False
            for i in list(cand):
                if any(s is not None and s not in cand for s in gens[i].sections):
                    cand.discard(i)
                    changed = True
        return frozenset(cand)

    def __call__(self, w: GenWord, level: int = 0) -> bool:
        spec = self.spec
        if level > MAX_RECURSION:
            raise NotContractingError("word problem recursion exceeded its depth cap")
        w = tuple(i for i in free_reduce(spec, w) if i not in self.trivial_gens)
        w = free_reduce(spec, w)
        if len(w) == 0:
            return True
        if len(w) == 1:
            return False
        with self.lock:
            hit = self.memo.get(w)
        if hit is not None:
            return hit
        root, secs = first_level_decomposition(spec, w)
        result = root == perm_identity(spec.d) and all(self(s, level + 1) for s in secs)
        with self.lock:
            self.memo[w] = result
        return result


_oracles: dict[GroupSpec, _TrivialityOracle] = {}
_oracles_lock = threading.Lock()


def _oracle(spec: GroupSpec) -> _TrivialityOracle:
    with _oracles_lock:
        o = _oracles.get(spec)
        if o is None:
            o = _oracles[spec] = _TrivialityOracle(spec)
    return o


def is_trivial(spec: GroupSpec, w: Sequence[int]) -> bool:
    """Decide whether ``w`` is the identity, by contraction.

    Single letters are trivial exactly when they are in the greatest
    self-consistent set of generators with trivial root; longer words need
    a trivial root and trivial sections.  For a non-contracting spec the
    recursion can run away, which is reported as NotContractingError.
    """
    return _oracle(spec)(tuple(w))


def word_equal(spec: GroupSpec, w1: Sequence[int], w2: Sequence[int]) -> bool:
    return is_trivial(spec, tuple(w1) + word_inverse(spec, w2))


def nucleus(spec: GroupSpec, iteration_cap: int = 20) -> list[GenWord]:
    """Smallest set containing 1 and the generators, closed under sections of pairwise products.

    Elements are kept as their first-seen shortest words (ties broken
    lexicographically), compared through :func:`word_equal`.
    """
    gens = [(i,) for i in range(len(spec.generators)) if not is_trivial(spec, (i,))]
    elems: list[GenWord] = [()]
    for g in sorted(gens):
        if not any(word_equal(spec, g, e) for e in elems):
            elems.append(g)
    for _ in range(iteration_cap):
        found: list[GenWord] = []
        for a in elems:
            for b in elems:
                _, secs = first_level_decomposition(spec, a + b)
                for s in secs:
                    s = free_reduce(spec, s)
                    if not any(word_equal(spec, s, e) for e in elems + found):
                        found.append(s)
        if not found:
            return sorted(elems, key=lambda w: (len(w), w))
        elems.extend(sorted(found, key=lambda w: (len(w), w)))
    raise NotContractingError(f"nucleus not verified contracting within {iteration_cap} rounds")

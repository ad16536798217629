"""Parity maps, stabilizer criteria and generator families for the Hanoihedral groups.

Index expressions such as ``j/2`` or ``(j-i)/4`` are residues modulo the
odd degree d, computed with the inverse of 2.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

from .dihedral_cayley import edge_coord, edge_vector, half
from .extperm import StabilizerChain, chain_for
from .gf2 import Mat2, Vec2, rank
from .portraits import Portrait, portrait_delta
from .selfsim import GenWord, evaluate, hanoihedral_spec


@lru_cache(maxsize=None)
def hanoihedral_chain(d: int, n: int) -> StabilizerChain:
    """Stabilizer chain of the group acting on X^{<=n}, built once per (d, n)."""
    return chain_for(hanoihedral_spec(d), n)


def exp_vector(d: int, w: Sequence[int]) -> Vec2:
    """Occurrence parity of each generator a_0 .. a_{d-1}."""
    bits = 0
    for i in w:
        if not 0 <= i < d:
            raise ValueError(f"letter {i} is not a generator index for d={d}")
        bits ^= 1 << i
    return Vec2(d, bits)


def aug(w: Sequence[int]) -> int:
    """Word length modulo 2."""
    return len(w) & 1


def in_st1_criterion(d: int, w: Sequence[int]) -> bool:
    """Even length with equal odd-position and even-position index sums mod d."""
    if len(w) % 2:
        return False
    return sum(w[::2]) % d == sum(w[1::2]) % d


def bracket(d: int, j: int, i: int) -> GenWord:
    """The word a_j a_{j+i} a_i a_0."""
    return (j % d, (j + i) % d, i % d, 0)


def st1_generator_words(d: int) -> list[GenWord]:
    half(d)
    return [bracket(d, j, i) for j, i in product(range(1, d), repeat=2)]


def st2_mod_branch_generator_words(d: int) -> list[GenWord]:
    """(d-1)(d-2) words generating St(2) modulo the level-1 copies of the commutator subgroup."""
    h = half(d)
    out = []
    for j, i in product(range(1, d), repeat=2):
        if (i + j) % d == 0:
            continue
        a, b, c = j * h, (j - i) * h, -i * h
        w = bracket(d, j, i) + (a % d, 0, -a % d, 0) + (b % d, 0, -b % d, 0) + (c % d, 0, -c % d, 0)
        out.append(w)
    return out


# ---------- Aug x Exp on St(1) modulo level-1 copies of D'


def section_parities(d: int, w: Sequence[int]) -> list[Vec2]:
    """exp of every first-level section, read off the edge vector."""
    v = edge_vector(hanoihedral_spec(d), w)
    out = []
    for x in range(d):
        bits = 0
        for i in range(d):
            if v[edge_coord(d, i - x, i)]:
                bits |= 1 << i
        out.append(Vec2(d, bits))
    return out


def aug_exp(d: int, w: Sequence[int]) -> tuple[Vec2, Vec2]:
    """(Aug, Exp): section length parities, and the sum of the section parity vectors."""
    secs = section_parities(d, w)
    aug_bits = 0
    total = 0
    for x, s in enumerate(secs):
        if s.weight() % 2:
            aug_bits |= 1 << x
        total ^= s.bits
    return Vec2(d, aug_bits), Vec2(d, total)


def st2_mod_branch_ok(d: int, w: Sequence[int]) -> bool:
    """w lies in St(2) up to a factor from the level-1 copies of D'.

    Equivalent to: trivial root and every section in St(1)D', i.e. every
    section parity vector has even weight.
    """
    if not in_st1_criterion(d, w):
        return False
    return not aug_exp(d, w)[0]


def st2_cap_k_spot_words(d: int) -> list[GenWord]:
    """Products of brackets lying in the kernel of Aug x Exp, one per (j, i) with i != +-j."""
    h = half(d)
    q = h * h

    def br(j, i):
        return bracket(d, j, i)

    out = []
    for j, i in product(range(1, d), repeat=2):
        if (i - j) % d == 0 or (i + j) % d == 0:
            continue
        pieces = [
            br(j, i),
            br(j * h, -j * h), br(j * q, j * q), br(-j * q, -j * q),
            br(i * h, -i * h), br(i * q, i * q), br(-i * q, -i * q),
            br((j - i) * h, (i - j) * h), br((j - i) * q, (j - i) * q), br((i - j) * q, (i - j) * q),
            br(j * h, j * h), br(-j * q, j * q), br(-j * q, j * q),
            br(i * h, i * h), br(-i * q, i * q), br(i * q, -i * q),
            br((j + i) * h, (j + i) * h), br((j + i) * q, (-j - i) * q), br((-j - i) * q, (j + i) * q),
        ]
        out.append(sum(pieces, ()))
    return out


def st2_cap_k_spot_check(d: int) -> tuple[bool, int]:
    """All spot words lie in ker(Aug x Exp); returns (that, rank of their edge vectors)."""
    spec = hanoihedral_spec(d)
    words = st2_cap_k_spot_words(d)
    ok = all(in_st1_criterion(d, w) and not any(aug_exp(d, w)) for w in words)
    return ok, rank(Mat2.from_vectors([edge_vector(spec, w) for w in words], d * d))


# ---------- branching identities


@lru_cache(maxsize=None)
def _portrait(d: int, w: GenWord, depth: int) -> Portrait:
    return evaluate(hanoihedral_spec(d), w, depth)


def _delta(d: int, x: int, w: GenWord, depth: int) -> Portrait:
    return portrait_delta(x % d, _portrait(d, w, depth - 1))


def _comm(d: int, j: int, k: int) -> GenWord:
    j, k = j % d, k % d
    return (j, k, j, k)


def branching_identities(d: int, shift: int = 0):
    """Yield (name, lhs, rhs) triples.

    ``lhs`` is a word, or ``("conj", b, l, c)`` standing for b d_l(c) b;
    ``rhs`` is a list of (vertex, word) factors d_vertex(word).

    ``shift`` perturbs one index in every left-hand side; any nonzero shift
    must make the check fail.
    """
    h = half(d)
    # a_j a_{j+i} a_{j+2i} a_{j+i} = d_j(a_j a_{j+2i}) d_{j+i}(a_{j+i}) d_{j-i}(a_{j+i})
    for j, i in product(range(d), range(1, d)):
        lhs = (j, (j + i) % d, (j + 2 * i + shift) % d, (j + i) % d)
        rhs = [(j, (j, (j + 2 * i) % d)), ((j + i) % d, ((j + i) % d,)), ((j - i) % d, ((j + i) % d,))]
        yield f"split j={j} i={i}", lhs, rhs
        yield f"square j={j} i={i}", lhs + lhs, [(j, _comm(d, j, j + 2 * i))]
    # a_p d_j(c) a_p = d_l(c) for p = (j + l)/2, l != j
    for j, k, l in product(range(d), repeat=3):
        if k == j or l == j:
            continue
        p = (j + l) * h % d
        # w squared is d_j([a_j, a_k]) by the split identity with i = (k - j)/2
        mid = (j + (k - j) * h) % d
        w = (j, mid, (k + shift) % d, mid)
        yield f"move j={j} k={k} l={l}", (p,) + w + w + (p,), [(l, _comm(d, j, k))]
    # b = a_p a_m a_p with p = (l + m)/2 satisfies b d_l(c) b = d_l(a_m c a_m)
    for l, m, j, k in product(range(d), repeat=4):
        if k == j:
            continue
        p = (l + m) * h % d
        b = (p, (m + shift) % d, p)
        c = _comm(d, j, k)
        inner = (m,) + c + (m,)
        yield f"conj l={l} m={m} j={j} k={k}", ("conj", b, l, c), [(l, inner)]


def _word_portrait(d: int, item, depth: int) -> Portrait:
    if isinstance(item, tuple) and item and item[0] == "conj":
        _, b, l, c = item
        return _portrait(d, b, depth) * _delta(d, l, c, depth) * _portrait(d, b, depth)
    return _portrait(d, tuple(item), depth)


def _rhs_portrait(d: int, factors, depth: int) -> Portrait:
    out = None
    for x, w in factors:
        p = _delta(d, x, tuple(w), depth)
        out = p if out is None else out * p
    return out


def branching_identities_check(d: int, depth: int, shift: int = 0) -> bool:
    """Every branching identity holds between depth-``depth`` portraits."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    return not branching_identity_failures(d, depth, shift, first_only=True)


def branching_identity_failures(d: int, depth: int, shift: int = 0, first_only: bool = False) -> list[str]:
    failures = []
    for name, lhs, rhs in branching_identities(d, shift):
        if _word_portrait(d, lhs, depth) != _rhs_portrait(d, rhs, depth):
            failures.append(name)
            if first_only:
                break
    return failures

"""The finitely constrained closure of a Hanoihedral group.

A size-2 pattern is a tuple ``(pi; pi_0, ..., pi_{d-1})`` of dihedral labels
at a vertex and its children.  It is allowed when ``pi pi_0 ... pi_{d-1}``
is a rotation, which happens exactly when the tuple holds an even number of
mirrors.  A portrait lies in the closure when every size-2 pattern in it is
allowed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .dihedral_cayley import DihedralElement, elements, from_perm, half, rot
from .hanoihedral import hanoihedral_chain
from .portraits import Perm, Portrait, vertex_index, vertices


class NonDihedralLabel(ValueError):
    """A portrait label lies outside D(d), so closure membership is undefined."""


@dataclass(frozen=True)
class PatternSet:
    """Allowed size-2 patterns: mirror count congruent to ``parity`` mod 2.

    ``parity=0`` is the closure of the Hanoihedral group; ``parity=1`` is a
    deliberately wrong predicate used as a control.
    """

    d: int
    parity: int = 0

    def __post_init__(self):
        half(self.d)
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")


def _as_dihedral(d: int, x: DihedralElement | Perm) -> DihedralElement:
    if isinstance(x, DihedralElement):
        if x.d != d:
            raise ValueError("dihedral element of the wrong degree")
        return x
    e = from_perm(d, x)
    if e is None:
        raise NonDihedralLabel(f"label {tuple(x)} is not in D({d})")
    return e


def pattern_allowed(ps: PatternSet, pattern: Sequence[DihedralElement | Perm]) -> bool:
    """``pattern`` is (pi, pi_0, ..., pi_{d-1}) as dihedral elements or permutations."""
    if len(pattern) != ps.d + 1:
        raise ValueError(f"a size-2 pattern has {ps.d + 1} entries")
    mirrors = sum(_as_dihedral(ps.d, x).is_mirror for x in pattern)
    return mirrors % 2 == ps.parity


def pattern_product(pattern: Sequence[DihedralElement]) -> DihedralElement:
    out = rot(pattern[0].d, 0)
    for x in pattern:
        out = out * x
    return out


def portrait_in_closure(ps: PatternSet, p: Portrait) -> bool:
    if p.d != ps.d:
        raise ValueError("portrait and pattern set differ in degree")
    labels = [_as_dihedral(p.d, lab) for lab in p.labels]
    d = p.d
    for u in vertices(d, p.depth - 1):
        pattern = [labels[vertex_index(d, u)]] + [labels[vertex_index(d, u + (x,))] for x in range(d)]
        if sum(e.is_mirror for e in pattern) % 2 != ps.parity:
            return False
    return True


def _tuple_weights(d: int, rot_weight: int, mir_weight: int) -> tuple[int, int]:
    """Weighted counts of d-tuples with an even and with an odd number of mirrors."""
    plus = (d * rot_weight + d * mir_weight) ** d
    minus = (d * rot_weight - d * mir_weight) ** d
    return (plus + minus) // 2, (plus - minus) // 2


def allowed_patterns_by_root(d: int, ps: PatternSet | None = None) -> dict[DihedralElement, int]:
    """Number of allowed child tuples for each root label."""
    ps = ps or PatternSet(d)
    even, odd = _tuple_weights(d, 1, 1)
    by_kind = {False: (even, odd)[ps.parity], True: (odd, even)[ps.parity]}
    return {e: by_kind[e.is_mirror] for e in elements(d)}


def allowed_pattern_count(d: int, ps: PatternSet | None = None) -> int:
    return sum(allowed_patterns_by_root(d, ps).values())


def count_closure_truncations(d: int, n: int, ps: PatternSet | None = None) -> int:
    """Number of depth-n portraits in the closure, by recursion on the root label.

    By symmetry the count of depth-k subtrees depends only on whether the
    root label is a rotation or a mirror.
    """
    if n < 1:
        raise ValueError("depth must be at least 1")
    ps = ps or PatternSet(d)
    r = m = 1
    for _ in range(n - 1):
        even, odd = _tuple_weights(d, r, m)
        # a rotation root needs children with mirror parity == parity, a mirror root the other one
        r, m = (even, odd)[ps.parity], (odd, even)[ps.parity]
    return d * r + d * m


def closure_count_formula(d: int, n: int) -> int:
    half(d)
    return 2 * d * ((2 * d) ** d // 2) ** ((d ** (n - 1) - 1) // (d - 1))


def closure_level1_index(d: int) -> int:
    """[X * closure : closure of St(1)]: all child tuples over those allowed under a trivial root."""
    allowed, _ = _tuple_weights(d, 1, 1)
    return (2 * d) ** d // allowed


# ---------- Hausdorff dimension


@dataclass(frozen=True)
class RationalTerm:
    """The real number ``p - q * log_{2d}(2)`` with rational p and q."""

    d: int
    p: Fraction
    q: Fraction

    def __float__(self) -> float:
        return float(self.p) - float(self.q) * math.log(2) / math.log(2 * self.d)

    def __str__(self) -> str:
        return f"{self.p} - ({self.q}) * log_{2 * self.d}(2)"


def hausdorff_term(d: int, n: int) -> RationalTerm:
    """(d-1) log_{2d}[G : St(n)] / (d^n - 1) from the closed index."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return RationalTerm(d, Fraction(1), Fraction(d ** (n - 1) - 1, d**n - 1))


def term_from_index(d: int, n: int, index: int) -> RationalTerm:
    """Same normalized log, starting from an index of the form 2^a d^b."""
    a = b = 0
    rest = index
    while rest % d == 0:
        rest //= d
        b += 1
    while rest % 2 == 0:
        rest //= 2
        a += 1
    if rest != 1:
        raise ValueError(f"index {index} is not of the form 2^a {d}^b")
    # log_{2d}(2^a d^b) = b + (a - b) log_{2d}(2)
    scale = Fraction(d - 1, d**n - 1)
    return RationalTerm(d, scale * b, scale * (b - a))


def hausdorff_limit(d: int) -> RationalTerm:
    return RationalTerm(d, Fraction(1), Fraction(1, d))


def hausdorff_terms(d: int, N: int) -> tuple[list[RationalTerm], float]:
    if N < 1:
        raise ValueError("N must be at least 1")
    half(d)
    return [hausdorff_term(d, n) for n in range(1, N + 1)], float(hausdorff_limit(d))


# ---------- exhaustive oracle


def all_dihedral_portraits(d: int, depth: int):
    labels = [e.perm() for e in elements(d)]
    size = len(list(vertices(d, depth)))
    for combo in product(labels, repeat=size):
        yield Portrait(d, depth, combo)


def closure_equivalence_detail(d: int = 3, ps: PatternSet | None = None) -> tuple[bool, int, int]:
    """Compare the depth-2 image of the group with the depth-2 closure portraits.

    Returns (sets equal, group element count, closure portrait count).
    """
    ps = ps or PatternSet(d)
    group = {g.portrait() for g in hanoihedral_chain(d, 2).elements()}
    closure = {p for p in all_dihedral_portraits(d, 2) if portrait_in_closure(ps, p)}
    return group == closure, len(group), len(closure)


def exhaustive_closure_equivalence(d: int = 3, ps: PatternSet | None = None) -> bool:
    return closure_equivalence_detail(d, ps)[0]

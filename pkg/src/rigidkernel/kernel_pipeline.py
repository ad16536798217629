"""Level indices, rigid-kernel ranks and the finiteness criterion for the Hanoihedral groups.

The branching subgroup is the kernel of the generator parity map, i.e. the
commutator subgroup.  Everything below is read off stabilizer chains whose
bottom level is the GF(2) space St(n)/Triv(n).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dihedral_cayley import cycle_space_basis
from .extperm import StabilizerChain, level_stabilizer_gens
from .fincon import closure_level1_index, count_closure_truncations, hausdorff_term, term_from_index
from .gf2 import EchelonBasis, Mat2, rank, span_equal, subspace_with_zero_block
from .hanoihedral import hanoihedral_chain
from .portraits import level_offset

# degree of the depth-n permutation action above which runs need an explicit opt-in
MAX_DEFAULT_DEGREE = 400


class FrameworkInapplicable(RuntimeError):
    """The level inverse system is not surjective, so the rank description does not apply."""


class ResourceLimit(ValueError):
    pass


def check_d(d: int) -> int:
    if not isinstance(d, int) or d < 3 or d % 2 == 0:
        raise ValueError(f"d must be an odd integer >= 3, got {d!r}")
    return d


def chain_degree(d: int, n: int) -> int:
    """Number of non-root vertices of length <= n."""
    return level_offset(d, n + 1) - 1


def check_resources(d: int, n: int, allow_large: bool = False) -> None:
    deg = chain_degree(d, n)
    if deg > MAX_DEFAULT_DEGREE and not allow_large:
        raise ResourceLimit(
            f"d={d}, n={n} needs a permutation action of degree {deg} (> {MAX_DEFAULT_DEGREE}); "
            "lower the depth or pass --allow-large"
        )


# ---------- closed forms


def closed_form_index_st(d: int, n: int) -> int:
    """[D : St_D(n)] = 2^{d^{n-1}} d^{(d^n - 1)/(d - 1)}."""
    check_d(d)
    if n < 1:
        raise ValueError("n must be at least 1")
    return 2 ** (d ** (n - 1)) * d ** level_offset(d, n)


def closed_form_index_rst(d: int, n: int) -> int:
    """[D : Rst_D(n)] = 2^{(d-2) d^n + 2} d^{(d^n - 1)/(d - 1)}."""
    check_d(d)
    if n < 1:
        raise ValueError("n must be at least 1")
    return 2 ** ((d - 2) * d**n + 2) * d ** level_offset(d, n)


def rank_st_mod_triv_formula(d: int, n: int) -> int:
    return (d - 3) * (d ** (n - 1) - 1) + (d - 1)


def composed_index_rst(d: int, n: int, rank_st_mod_triv: int) -> int:
    """[D : St(n)] 2^{rank St(n)/Triv(n)} 2^{(d-1)(d-2) d^{n-1}}."""
    return closed_form_index_st(d, n) * 2**rank_st_mod_triv * 2 ** ((d - 1) * (d - 2) * d ** (n - 1))


# ---------- computed quantities


def chain(d: int, n: int, allow_large: bool = False) -> StabilizerChain:
    check_d(d)
    check_resources(d, n, allow_large)
    return hanoihedral_chain(d, n)


def computed_index_st(d: int, n: int, allow_large: bool = False) -> int:
    return chain(d, n, allow_large).order()


def rank_st_mod_triv(d: int, n: int, allow_large: bool = False) -> int:
    return chain(d, n, allow_large).kernel.rank


def _root_block(d: int) -> tuple[int, int]:
    return (0, d)


def st1_level1_span(d: int) -> Mat2:
    """Level-1 parity blocks of St(1) at depth 2; bit x*d + i is exp_i of the section at x.

    On St(1) this is a homomorphism onto St(1)/(X * D'), so its rank is the
    index [St(1) : X * D'] in base 2.
    """
    c = chain(d, 2)
    basis = EchelonBasis(d * d)
    for g in level_stabilizer_gens(c, 1):
        basis.add(g.level_blocks(1).bits)
    return basis.matrix()


def st1_level1_edge_span(d: int) -> Mat2:
    """``st1_level1_span`` in Cayley-graph edge coordinates: exp_i(g_x) is edge (i - x, i)."""
    m = st1_level1_span(d)
    rows = []
    for r in m.rows:
        out = 0
        for x in range(d):
            for i in range(d):
                if r >> (x * d + i) & 1:
                    out |= 1 << (((i - x) % d) * d + i)
        rows.append(out)
    return Mat2(d * d, tuple(rows))


def rank_st1_mod_branch(d: int) -> int:
    return rank(st1_level1_span(d))


def computed_index_rst1(d: int) -> int:
    """[D : X * D'] = [D : St(1)] [St(1) : X * D']."""
    return chain(d, 1).order() * 2 ** rank_st1_mod_branch(d)


def st2_space(d: int) -> Mat2:
    """St(2)/Triv(2) as cocycle vectors at depth 2 (root block first)."""
    return chain(d, 2).kernel.matrix()


def surjectivity_check(d: int) -> bool:
    """Root parity blocks of St(2) span the even-weight vectors, exactly the parities of St(1)."""
    c = chain(d, 2)
    st2 = EchelonBasis(d, (r & ((1 << d) - 1) for r in c.kernel.rows()))
    st1 = EchelonBasis(d, (g.block(0).bits for g in level_stabilizer_gens(c, 1)))
    even = Mat2(d, tuple(1 | 1 << i for i in range(1, d)))
    return span_equal(st2.matrix(), even) and span_equal(st1.matrix(), even)


def rank_st2_mod_triv2(d: int) -> int:
    return rank(st2_space(d))


def rank_st2_cap_K(d: int) -> int:
    """Elements of St(2)/Triv(2) with trivial root parity, i.e. inside the commutator subgroup."""
    return rank(subspace_with_zero_block(st2_space(d), _root_block(d)))


def rank_st1_mod_triv1(d: int) -> int:
    return chain(d, 1).kernel.rank


@dataclass(frozen=True)
class KernelDescriptor:
    kind: str  # "trivial" | "finite" | "infinite"
    description: str
    rank_A: int
    rank_B: int
    rank_st1_mod_triv1: int
    order: int | None  # None when infinite

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "description": self.description,
            "rank_A": self.rank_A,
            "rank_B": self.rank_B,
            "rank_st1_mod_triv1": self.rank_st1_mod_triv1,
            "order": None if self.order is None else str(self.order),
        }


def rigid_kernel_report(d: int) -> KernelDescriptor:
    if not surjectivity_check(d):
        raise FrameworkInapplicable(f"St(2)K does not contain St(1) for d={d}")
    a = rank_st2_mod_triv2(d)
    b = rank_st2_cap_K(d)
    r1 = rank_st1_mod_triv1(d)
    if a == 0:
        return KernelDescriptor("trivial", "trivial group", a, b, r1, 1)
    if b == 0:
        name = "Klein four group" if a == 2 else f"elementary abelian 2-group of rank {a}"
        return KernelDescriptor("finite", name, a, b, r1, 2**a)
    desc = f"infinite: A x prod over nonroot vertices of B, A = (Z/2)^{a}, B = (Z/2)^{b}"
    return KernelDescriptor("infinite", desc, a, b, r1, None)


@dataclass(frozen=True)
class CriterionResult:
    lhs: int
    rhs: int
    nontrivial_kernel: bool


def criterion_check(d: int) -> CriterionResult:
    """[X * D : St_D(1)] against [X * cl D : cl St_D(1)].

    X * D / (X * D') is (Z/2)^{d^2} and St_D(1) contains X * D', so the left
    index is 2^{d^2 - rank St(1)/(X * D')}.
    """
    lhs = 2 ** (d * d - rank_st1_mod_branch(d))
    rhs = closure_level1_index(d)
    return CriterionResult(lhs, rhs, lhs != rhs)


# ---------- reports


@dataclass
class Check:
    name: str
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


@dataclass
class IndexReport:
    d: int
    n: int
    order_G_mod_St_n: int
    closed_form: int
    rank_st_mod_triv: int
    rank_st2_cap_K: int
    rank_st1_mod_branch: int
    surjective: bool
    kernel_descriptor: KernelDescriptor
    closure_count: int
    index_rst_closed: int
    index_rst_composed: int
    hausdorff_term: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def index_report(d: int, n: int, allow_large: bool = False) -> IndexReport:
    check_d(d)
    order = computed_index_st(d, n, allow_large)
    closed = closed_form_index_st(d, n)
    r = rank_st_mod_triv(d, n, allow_large)
    count = count_closure_truncations(d, n)
    rst_closed = closed_form_index_rst(d, n)
    rst_composed = composed_index_rst(d, n, r)
    term = term_from_index(d, n, order)
    rep = IndexReport(
        d=d,
        n=n,
        order_G_mod_St_n=order,
        closed_form=closed,
        rank_st_mod_triv=r,
        rank_st2_cap_K=rank_st2_cap_K(d),
        rank_st1_mod_branch=rank_st1_mod_branch(d),
        surjective=surjectivity_check(d),
        kernel_descriptor=rigid_kernel_report(d),
        closure_count=count,
        index_rst_closed=rst_closed,
        index_rst_composed=rst_composed,
        hausdorff_term=str(term),
    )
    rep.checks = [
        Check("index of St(n) equals 2^(d^(n-1)) d^((d^n-1)/(d-1))", closed, order),
        Check("rank St(n)/Triv(n) equals (d-3)(d^(n-1)-1)+(d-1)", rank_st_mod_triv_formula(d, n), r),
        Check("closure truncation count equals the group index", order, count),
        Check("index of Rst(n) equals the composed index", rst_closed, rst_composed),
        Check("Hausdorff term from the computed index", hausdorff_term(d, n), term),
    ]
    return rep


def full_report(d: int, max_depth: int, allow_large: bool = False) -> list[IndexReport]:
    check_d(d)
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    for n in range(1, max_depth + 1):
        check_resources(d, n, allow_large)
    return [index_report(d, n, allow_large) for n in range(1, max_depth + 1)]


def level_two_checks(d: int) -> list[Check]:
    """Depth-independent facts: ranks at level 2, surjectivity, the criterion and the cycle space."""
    crit = criterion_check(d)
    kd = rigid_kernel_report(d)
    return [
        Check("surjective: St(2)K contains St(1)", True, surjectivity_check(d)),
        Check("rank St(2)/Triv(2) equals (d-1)(d-2)", (d - 1) * (d - 2), rank_st2_mod_triv2(d)),
        Check("rank of St(2) meet K modulo Triv(2) equals (d-1)(d-3)", (d - 1) * (d - 3), rank_st2_cap_K(d)),
        Check("rank St(1)/(X*D') equals (d-1)^2", (d - 1) ** 2, rank_st1_mod_branch(d)),
        Check("St(1)/(X*D') is the cycle space of the Cayley graph", True,
              span_equal(st1_level1_edge_span(d), cycle_space_basis(d))),
        Check("[D : Rst(1)] equals 2d 2^((d-1)^2)", 2 * d * 2 ** ((d - 1) ** 2), computed_index_rst1(d)),
        Check("[X*D : St(1)] equals 2^(2d-1)", 2 ** (2 * d - 1), crit.lhs),
        Check("[X*cl D : cl St(1)] equals 2", 2, crit.rhs),
        Check("index mismatch implies a nontrivial rigid kernel", True, crit.nontrivial_kernel),
        Check("rigid kernel shape", "finite" if d == 3 else "infinite", kd.kind),
    ]


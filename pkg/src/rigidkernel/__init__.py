"""Exact computations for self-similar groups acting on rooted trees.

Level-stabilizer indices, rigid-kernel ranks, closure counting and
Hausdorff dimension for the Hanoihedral groups, built on stabilizer chains
over decorated permutations of truncated trees.
"""

from .extperm import ExtElement, StabilizerChain, TreeLayout, build_chain, ext_from_word, group_order
from .gf2 import EchelonBasis, Mat2, Vec2
from .kernel_pipeline import IndexReport, full_report, rigid_kernel_report
from .portraits import Portrait
from .selfsim import GroupSpec, NotContractingError, SpecError, hanoihedral_spec, is_trivial, nucleus

__all__ = [
    "EchelonBasis",
    "ExtElement",
    "GroupSpec",
    "IndexReport",
    "Mat2",
    "NotContractingError",
    "Portrait",
    "SpecError",
    "StabilizerChain",
    "TreeLayout",
    "Vec2",
    "build_chain",
    "ext_from_word",
    "full_report",
    "group_order",
    "hanoihedral_spec",
    "is_trivial",
    "nucleus",
    "rigid_kernel_report",
]

"""Acceptance criteria.  Each test carries a ``criterion`` marker; the run ends
with one PASS/FAIL line per criterion in the terminal summary."""

import math
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from rigidkernel import fincon
from rigidkernel import kernel_pipeline as kp
from rigidkernel.dihedral_cayley import (
    cycle_space_basis,
    dihedral_mul,
    elements,
    schreier_edge_space,
    vertex_conditions,
)
from rigidkernel.extperm import chain_for, ext_from_word
from rigidkernel.gf2 import rank, span_equal
from rigidkernel.hanoihedral import branching_identities_check, exp_vector, in_st1_criterion
from rigidkernel.portraits import perm_mul, portrait_apply, portrait_mul, portrait_section, random_portrait
from rigidkernel.selfsim import evaluate, hanoihedral_spec, is_trivial, nucleus, root_perm

SEED = 20240601
CASES = 1000

ORDER_CASES = [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3), (7, 1), (7, 2)]
SLOW_CASES = {(3, 4), (5, 3)}
DS = [3, 5, 7]


def closed_st(d, n):
    return 2 ** (d ** (n - 1)) * d ** ((d**n - 1) // (d - 1))


def random_word(rng, d, max_len):
    return tuple(rng.randrange(d) for _ in range(rng.randrange(max_len + 1)))


# 1 ----------------------------------------------------------------------


@pytest.mark.criterion(1, "level-quotient orders equal 2^(d^(n-1)) d^((d^n-1)/(d-1))")
@pytest.mark.parametrize("d,n", ORDER_CASES)
def test_level_quotient_order(d, n):
    t0 = time.perf_counter()
    order = chain_for(hanoihedral_spec(d), n).order()
    elapsed = time.perf_counter() - t0
    assert order == closed_st(d, n)
    assert elapsed < (300 if (d, n) in SLOW_CASES else 60)


# 2 ----------------------------------------------------------------------


@pytest.mark.criterion(2, "rigid-kernel ranks (d-1)(d-2) and (d-1)(d-3)")
@pytest.mark.parametrize("d,expected", [(3, (2, 0)), (5, (12, 8)), (7, (30, 24))])
def test_rigid_kernel_ranks(d, expected):
    assert (kp.rank_st2_mod_triv2(d), kp.rank_st2_cap_K(d)) == expected
    assert expected == ((d - 1) * (d - 2), (d - 1) * (d - 3))


# 3 ----------------------------------------------------------------------


@pytest.mark.criterion(3, "kernel structure: Klein four at d=3, infinite product otherwise")
@pytest.mark.parametrize("d", DS)
def test_kernel_structure(d):
    kd = kp.rigid_kernel_report(d)
    if d == 3:
        assert (kd.kind, kd.description, kd.order) == ("finite", "Klein four group", 4)
    else:
        assert kd.kind == "infinite"
        assert kd.order is None
    assert (kd.rank_A, kd.rank_B) == ((d - 1) * (d - 2), (d - 1) * (d - 3))


# 4 ----------------------------------------------------------------------


@pytest.mark.criterion(4, "surjectivity: St(2)K contains St(1)")
@pytest.mark.parametrize("d", DS)
def test_surjectivity(d):
    assert kp.surjectivity_check(d)


# 5 ----------------------------------------------------------------------


@pytest.mark.criterion(5, "criterion indices 2^(2d-1) vs 2 imply a nontrivial kernel")
@pytest.mark.parametrize("d", DS)
def test_criterion_indices(d):
    res = kp.criterion_check(d)
    assert res.lhs == 2 ** (2 * d - 1)
    assert res.rhs == fincon.closure_level1_index(d) == 2
    assert res.nontrivial_kernel
    if d == 3:
        assert (res.lhs, res.rhs) == (2**5, 2)


# 6 ----------------------------------------------------------------------


@pytest.mark.criterion(6, "rigid level stabilizer indices")
@pytest.mark.parametrize("d", DS)
def test_index_rst1(d):
    assert kp.computed_index_rst1(d) == 2 * d * 2 ** ((d - 1) ** 2)
    assert kp.closed_form_index_rst(d, 1) == kp.computed_index_rst1(d)


@pytest.mark.criterion(6, "rigid level stabilizer indices")
@pytest.mark.parametrize("d,n", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 3)])
def test_composed_rst_identity(d, n):
    r = kp.rank_st_mod_triv(d, n)
    assert r == (d - 3) * (d ** (n - 1) - 1) + (d - 1)
    assert kp.composed_index_rst(d, n, r) == kp.closed_form_index_rst(d, n)


# 7 ----------------------------------------------------------------------


@pytest.mark.criterion(7, "nucleus is {1, a_0, ..., a_(d-1)}")
@pytest.mark.parametrize("d", DS)
def test_nucleus(d):
    t0 = time.perf_counter()
    nuc = nucleus(hanoihedral_spec(d), iteration_cap=20)
    assert time.perf_counter() - t0 < 30
    assert nuc == [()] + [(i,) for i in range(d)]
    assert len(nuc) == d + 1


# 8 ----------------------------------------------------------------------


@pytest.mark.criterion(8, "cycle space of the Cayley graph is St(1) modulo X*D'")
@pytest.mark.parametrize("d", DS)
def test_cycle_space(d):
    cs = cycle_space_basis(d)
    assert rank(cs) == (d - 1) ** 2
    assert rank(vertex_conditions(d)) == 2 * d - 1
    assert span_equal(schreier_edge_space(d), cs)


# 9 ----------------------------------------------------------------------


@pytest.mark.criterion(9, "closure counts equal chain orders; exhaustive depth-2 equivalence")
@pytest.mark.parametrize("d,n", ORDER_CASES)
def test_closure_counts(d, n):
    assert fincon.count_closure_truncations(d, n) == kp.chain(d, n).order()


@pytest.mark.criterion(9, "closure counts equal chain orders; exhaustive depth-2 equivalence")
def test_exhaustive_closure_equivalence():
    t0 = time.perf_counter()
    assert fincon.closure_equivalence_detail(3) == (True, 648, 648)
    assert time.perf_counter() - t0 < 60
    assert not fincon.exhaustive_closure_equivalence(3, fincon.PatternSet(3, parity=1))


# 10 ---------------------------------------------------------------------


@pytest.mark.criterion(10, "Hausdorff terms and limit 1 - (1/d) log_2d(2)")
@pytest.mark.parametrize("d", DS)
def test_hausdorff(d):
    terms, limit = fincon.hausdorff_terms(d, 12)
    for n, t in enumerate(terms, 1):
        assert (t.p, t.q) == (1, Fraction(d ** (n - 1) - 1, d**n - 1))
    for d_, n in ORDER_CASES:
        if d_ == d:
            assert fincon.term_from_index(d, n, kp.chain(d, n).order()) == terms[n - 1]
    assert abs(limit - (1 - math.log(2) / (d * math.log(2 * d)))) < 1e-12
    if d == 3:
        assert abs(limit - (1 - math.log(2, 6) / 3)) < 1e-12
        # the quoted six-digit decimal is an approximation of 0.87104906...
        assert abs(limit - 0.871050) < 1e-6


# 11 ---------------------------------------------------------------------


@pytest.mark.criterion(11, "property suites: algebraic laws, word criterion, identities, dihedral table")
@pytest.mark.parametrize("d", [3, 5])
def test_portrait_laws(d):
    rng = random.Random(SEED + d)
    for _ in range(CASES):
        depth = rng.randint(1, 3)
        f, g, h = (random_portrait(d, depth, rng) for _ in range(3))
        assert portrait_mul(portrait_mul(f, g), h) == portrait_mul(f, portrait_mul(g, h))
        v = tuple(rng.randrange(d) for _ in range(rng.randint(0, depth)))
        assert portrait_apply(f * g, v) == portrait_apply(f, portrait_apply(g, v))
        if depth > 1:
            x = rng.randrange(d)
            gx = portrait_apply(g, (x,))
            assert portrait_section(f * g, (x,)) == portrait_section(f, gx) * portrait_section(g, (x,))


@pytest.mark.criterion(11, "property suites: algebraic laws, word criterion, identities, dihedral table")
@pytest.mark.parametrize("d", [3, 5])
def test_ext_and_exp_laws(d):
    spec = hanoihedral_spec(d)
    rng = random.Random(SEED * 3 + d)
    for _ in range(CASES):
        n = rng.randint(1, 2)
        w1, w2 = random_word(rng, d, 10), random_word(rng, d, 10)
        e1, e2 = ext_from_word(spec, w1, n), ext_from_word(spec, w2, n)
        assert ext_from_word(spec, w1 + w2, n) == e1 * e2
        assert (e1 * e1.inverse()).is_identity()
        assert e1.inverse() == ext_from_word(spec, tuple(reversed(w1)), n)
        assert exp_vector(d, w1 + w2) == exp_vector(d, w1) + exp_vector(d, w2)
        # w u u^-1 w^-1 is trivial, so its parity vector vanishes
        u = random_word(rng, d, 6)
        triv = w1 + u + tuple(reversed(u)) + tuple(reversed(w1))
        assert is_trivial(spec, triv) and not exp_vector(d, triv)


@pytest.mark.criterion(11, "property suites: algebraic laws, word criterion, identities, dihedral table")
def test_st1_word_criterion_exhaustive():
    spec = hanoihedral_spec(3)
    ident = (0, 1, 2)
    count = 0
    for length in range(7):
        for w in product(range(3), repeat=length):
            assert in_st1_criterion(3, w) == (evaluate(spec, w, 1).labels[0] == ident)
            assert in_st1_criterion(3, w) == (root_perm(spec, w) == ident)
            count += 1
    assert count == 1093


@pytest.mark.criterion(11, "property suites: algebraic laws, word criterion, identities, dihedral table")
@pytest.mark.parametrize("d,depth", [(3, 6), (5, 5)])
def test_branching_identities(d, depth):
    assert branching_identities_check(d, depth)
    assert not branching_identities_check(d, depth, shift=1)


@pytest.mark.criterion(11, "property suites: algebraic laws, word criterion, identities, dihedral table")
@pytest.mark.parametrize("d", DS)
def test_dihedral_table(d):
    els = elements(d)
    assert len(set(els)) == 2 * d
    for x, y in product(els, repeat=2):
        assert dihedral_mul(x, y).perm() == perm_mul(x.perm(), y.perm())
    for x, y, z in product(els, repeat=3):
        assert (x * y) * z == x * (y * z)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))

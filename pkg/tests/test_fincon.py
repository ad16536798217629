import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rigidkernel.dihedral_cayley import elements, mir, rot
from rigidkernel.fincon import (
    NonDihedralLabel,
    PatternSet,
    RationalTerm,
    allowed_pattern_count,
    allowed_patterns_by_root,
    closure_count_formula,
    closure_level1_index,
    count_closure_truncations,
    hausdorff_limit,
    hausdorff_term,
    hausdorff_terms,
    pattern_allowed,
    pattern_product,
    portrait_in_closure,
    term_from_index,
)
from rigidkernel.portraits import identity_portrait, portrait_from_labels
from rigidkernel.selfsim import evaluate, hanoihedral_spec


def test_pattern_examples():
    ps = PatternSet(3)
    e = rot(3, 0)
    assert pattern_allowed(ps, [e] * 4)
    assert not pattern_allowed(ps, [mir(3, 1), e, e, e])
    assert pattern_allowed(ps, [mir(3, 0), mir(3, 1), e, e])
    assert pattern_allowed(ps, [(0, 1, 2)] * 4)
    with pytest.raises(ValueError):
        pattern_allowed(ps, [e] * 3)


def test_even_mirrors_means_rotation_product():
    d = 3
    ps = PatternSet(d)
    for pattern in product(elements(d), repeat=d + 1):
        assert pattern_allowed(ps, pattern) == (not pattern_product(pattern).is_mirror)


def test_allowed_pattern_count_by_enumeration():
    d = 3
    enumerated = sum(pattern_allowed(PatternSet(d), p) for p in product(elements(d), repeat=d + 1))
    assert enumerated == allowed_pattern_count(d) == 648
    assert allowed_pattern_count(5) == 500000
    assert set(allowed_patterns_by_root(3).values()) == {108}


@given(st.sampled_from([3, 5]), st.integers(0, 2**32))
def test_allowed_patterns_form_a_group(d, seed):
    rng = random.Random(seed)
    ps = PatternSet(d)
    els = elements(d)

    def draw_allowed():
        while True:
            p = [rng.choice(els) for _ in range(d + 1)]
            if pattern_allowed(ps, p):
                return p

    p, q = draw_allowed(), draw_allowed()
    assert pattern_allowed(ps, [x * y for x, y in zip(p, q)])
    assert pattern_allowed(ps, [x * x * x for x in p] if d else p)


def test_portrait_membership():
    ps = PatternSet(3)
    assert portrait_in_closure(ps, identity_portrait(3, 3))
    assert not portrait_in_closure(ps, portrait_from_labels(3, 2, {(): mir(3, 0).perm()}))
    with pytest.raises(NonDihedralLabel):
        portrait_in_closure(PatternSet(5), portrait_from_labels(5, 2, {(): (1, 0, 2, 3, 4)}))


@given(st.sampled_from([3, 5]), st.data())
def test_group_elements_in_closure(d, data):
    w = data.draw(st.lists(st.integers(0, d - 1), max_size=15))
    assert portrait_in_closure(PatternSet(d), evaluate(hanoihedral_spec(d), w, 3))


@pytest.mark.parametrize("d,n,count", [(3, 2, 648), (3, 3, 816293376), (5, 2, 500000)])
def test_counts(d, n, count):
    assert count_closure_truncations(d, n) == count == closure_count_formula(d, n)
    if (d, n) == (3, 3):
        assert count == 2**9 * 3**13


def test_counts_by_enumeration_d3():
    from rigidkernel.fincon import all_dihedral_portraits

    ps = PatternSet(3, parity=1)
    assert sum(portrait_in_closure(ps, p) for p in all_dihedral_portraits(3, 2)) == count_closure_truncations(3, 2, ps)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_level1_index(d):
    assert closure_level1_index(d) == 2


def test_hausdorff_examples():
    assert float(hausdorff_term(3, 1)) == 1.0
    assert hausdorff_term(3, 1).q == 0
    assert abs(float(hausdorff_limit(3)) - 0.8710490642551528) < 1e-15
    assert abs(float(hausdorff_limit(5)) - 0.939794) < 1e-6
    with pytest.raises(ValueError):
        hausdorff_terms(3, 0)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_hausdorff_sequence(d):
    terms, limit = hausdorff_terms(d, 12)
    values = [float(t) for t in terms]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v > limit for v in values)
    for n, t in enumerate(terms, 1):
        assert float(t) - limit < 1 / d ** (n - 1)
    for n, t in enumerate(terms[:5], 1):
        idx = 2 ** (d ** (n - 1)) * d ** ((d**n - 1) // (d - 1))
        assert term_from_index(d, n, idx) == t


def test_rational_term_float():
    t = RationalTerm(3, Fraction(1), Fraction(1, 3))
    assert str(t) == "1 - (1/3) * log_6(2)"
    with pytest.raises(ValueError):
        term_from_index(3, 2, 7)

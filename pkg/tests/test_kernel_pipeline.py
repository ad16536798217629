import pytest

from rigidkernel import kernel_pipeline as kp


def test_closed_form_examples():
    assert kp.closed_form_index_st(3, 1) == 6
    assert kp.closed_form_index_st(3, 2) == 648
    assert kp.closed_form_index_st(5, 1) == 10
    assert kp.closed_form_index_rst(3, 1) == 96
    assert kp.closed_form_index_rst(3, 2) == 2**11 * 3**4
    assert kp.closed_form_index_rst(5, 1) == 2**17 * 5


@pytest.mark.parametrize("d", [3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_composed_index_matches_closed_form(d, n):
    r = kp.rank_st_mod_triv_formula(d, n)
    assert kp.composed_index_rst(d, n, r) == kp.closed_form_index_rst(d, n)


@pytest.mark.parametrize("d,depth", [(3, 4), (5, 3), (7, 2)])
def test_full_report_passes(d, depth):
    reps = kp.full_report(d, depth)
    assert [r.n for r in reps] == list(range(1, depth + 1))
    assert all(r.passed for r in reps), [c for r in reps for c in r.checks if not c.passed]


@pytest.mark.parametrize("d,a,b,r1", [(3, 2, 0, 2), (5, 12, 8, 4), (7, 30, 24, 6)])
def test_level_two_ranks(d, a, b, r1):
    assert kp.rank_st2_mod_triv2(d) == a
    assert kp.rank_st2_cap_K(d) == b
    assert kp.rank_st1_mod_triv1(d) == r1
    assert kp.rank_st1_mod_branch(d) == (d - 1) ** 2
    assert kp.surjectivity_check(d)
    assert all(c.passed for c in kp.level_two_checks(d))


def test_kernel_descriptors():
    k3 = kp.rigid_kernel_report(3)
    assert (k3.kind, k3.description, k3.order) == ("finite", "Klein four group", 4)
    k5 = kp.rigid_kernel_report(5)
    assert k5.kind == "infinite" and k5.order is None
    assert k5.as_dict()["order"] is None and k3.as_dict()["order"] == "4"


@pytest.mark.parametrize("d", [3, 5, 7])
def test_criterion(d):
    res = kp.criterion_check(d)
    assert res.lhs == 2 ** (2 * d - 1) and res.rhs == 2 and res.nontrivial_kernel


@pytest.mark.parametrize("bad", [1, 2, 4, 6, -3])
def test_rejects_bad_d(bad):
    with pytest.raises(ValueError):
        kp.closed_form_index_st(bad, 1)
    with pytest.raises(ValueError):
        kp.full_report(bad, 1)


def test_rejects_bad_depth():
    with pytest.raises(ValueError):
        kp.closed_form_index_st(3, 0)
    with pytest.raises(ValueError):
        kp.full_report(3, 0)


def test_resource_limit():
    assert kp.chain_degree(3, 2) == 12 and kp.chain_degree(7, 3) == 399
    with pytest.raises(kp.ResourceLimit):
        kp.full_report(9, 3)
    with pytest.raises(kp.ResourceLimit):
        kp.index_report(9, 3)

import itertools

import pytest

from newtondiag import diagram as dg
from newtondiag import oracle
from newtondiag.errors import BudgetExceeded
from newtondiag.polynomial import parse

import reference

EQ24 = parse("x^3 + 3*x^2*z + 3*x*z^2 + z^3 + 3*x*y + 3*y*z + y^3", 3)


def test_search_space_shape():
    assert len(oracle.lattice_points(3, 3)) == 10
    assert oracle.assignment_count(4, 2) == 243
    assert oracle.lattice_points(2, 2) == [(0, 0), (0, 1), (1, 0)]


@pytest.mark.parametrize("n, d", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_pruned_equals_unpruned(n, d):
    pruned = list(oracle.enumerate_valid_supports(n, d, prune=True))
    unpruned = list(oracle.enumerate_valid_supports(n, d, prune=False))
    assert pruned == unpruned
    assert all(reference.unique_source(s, n) for s in pruned)


def test_unpruned_is_complete():
    # every unique-source assignment the plain product finds is enumerated
    n, d = 3, 2
    pts = reference.simplex(n, d)
    expected = []
    for signs in itertools.product((0, 1, -1), repeat=len(pts)):
        sup = {p: s for p, s in zip(sorted(pts), signs) if s}
        if sup and reference.unique_source(sup, n):
            expected.append(sup)
    assert list(oracle.enumerate_valid_supports(n, d)) == expected


@pytest.mark.parametrize("n, d", [(2, 3), (3, 1), (3, 2), (4, 1), (4, 2), (5, 2)])
def test_minimum_matches_reference(n, d):
    rep = oracle.verify_bound(n, d)
    expected = reference.min_node_counts(n, d)
    assert {s: r.min_node_count for s, r in rep.sizes.items()} == expected


def test_bound_examples():
    assert oracle.verify_bound(3, 1).min_node_count == 4
    rep = oracle.verify_bound(4, 2)
    assert rep.min_node_count == 8 == rep.bound and rep.top.non_whitney == 0


def test_worker_count_independence():
    one = oracle.verify_bound(3, 2, workers=1).to_dict()
    many = oracle.verify_bound(3, 2, workers=4).to_dict()
    assert one == many
    assert oracle.verify_bound(3, 2, workers=4).minimizer_supports == oracle.verify_bound(3, 2).minimizer_supports


def test_partition_prefixes():
    assert oracle.partition_prefixes(3, 2, 1) == [()]
    assert len(oracle.partition_prefixes(3, 2, 8)) == 9
    assert len(oracle.partition_prefixes(3, 2, 3)) == 3


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as err:
        oracle.check_budget(3, 4)
    assert err.value.assignments == 3 ** 19 and "3^20" in str(err.value)
    with pytest.raises(BudgetExceeded):
        list(oracle.enumerate_valid_supports(3, 2, budget=10))


def test_eq24_diagram_is_a_minimizer_shape():
    D = dg.NewtonDiagram.from_polynomial(EQ24)
    assert dg.check_sink_source_structure(D)
    assert D.node_count() == oracle.diagram_bound(3, 3)
    assert not oracle.one_point_per_degree(D.support, 3)


def test_hidden_node_audit_small():
    rep = oracle.hidden_node_audit(4, 1)
    assert rep.diagrams == 1 and rep.min_slack == 0
    D = dg.from_quotient(parse("1", 4))
    assert all(dg.view(D, k, m).node_count() == 4 for k, m in dg.view_pairs(4))
    with pytest.raises(ValueError):
        oracle.hidden_node_audit(3, 1)


def test_three_dimensional_views_hide_size_many():
    for D in oracle.enumerate_valid_diagrams(3, 2):
        assert oracle.max_view_deficit(D) >= D.size


def test_simple_enumeration():
    assert len(list(oracle.enumerate_simple_diagrams(1, 1))) == 2
    assert oracle.lemma_check(2, 2).ok
    with pytest.raises(BudgetExceeded):
        list(oracle.enumerate_simple_diagrams(4, 4))


def test_size_three_minimum_matches_plain_product():
    # about twenty seconds: 3^10 assignments scanned without pruning
    rep = oracle.verify_bound(3, 3)
    expected = reference.min_node_counts(3, 3)
    assert {s: r.min_node_count for s, r in rep.sizes.items()} == expected
    assert expected[3] == 8

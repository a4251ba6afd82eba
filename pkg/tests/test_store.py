"""Vertex store: hash consing, reduction, structural accessors."""

import pytest

from kcdag import FALSE, TRUE
from kcdag.engine import KIND_CONJ, KIND_DECISION, KIND_FALSE, KIND_TRUE
from kcdag.errors import DecompositionError, OrderViolationError
from kcdag.ordering import natural_order
from kcdag.store import new_store


@pytest.fixture
def store():
    return new_store(natural_order(6))


def test_leaves_are_preinterned(store):
    assert store.make_leaf(False) == FALSE == 0
    assert store.make_leaf(True) == TRUE == 1
    assert store.kind(FALSE) == KIND_FALSE
    assert store.kind(TRUE) == KIND_TRUE
    assert store.is_leaf(TRUE) and store.is_leaf(FALSE)
    assert store.vars_of(TRUE) == frozenset()


def test_decision_hash_consing(store):
    a = store.make_decision(2, FALSE, TRUE)
    b = store.make_decision(2, FALSE, TRUE)
    c = store.make_decision(2, TRUE, FALSE)
    assert a == b
    assert a != c
    assert store.is_decision(a)
    assert store.var_of(a) == 2
    assert store.lo(a) == FALSE and store.hi(a) == TRUE
    assert store.vars_of(a) == frozenset({2})


def test_decision_collapses_equal_branches(store):
    inner = store.literal(3)
    assert store.make_decision(2, inner, inner) == inner


def test_decision_rejects_order_violations(store):
    x3 = store.literal(3)
    with pytest.raises(OrderViolationError):
        store.make_decision(3, x3, TRUE)  # same variable as the branch
    with pytest.raises(OrderViolationError):
        store.make_decision(5, x3, TRUE)  # deeper than the branch
    with pytest.raises(OrderViolationError):
        store.make_decision(9, FALSE, TRUE)  # not in the order at all


def test_literal_cache(store):
    assert store.literal(4) == store.literal(4)
    assert store.literal(4, False) == store.make_decision(4, TRUE, FALSE)


def test_conj_construction_and_consing(store):
    a, b = store.literal(1), store.literal(2)
    u = store.make_conj([a, b])
    assert store.is_conj(u)
    assert store.kind(u) == KIND_CONJ
    assert store.children(u) == (a, b)
    assert store.vars_of(u) == frozenset({1, 2})
    assert store.make_conj([b, a]) == u  # children order is canonical
    assert store.min_rank(u) == 0


def test_conj_collapses_constants(store):
    a, b = store.literal(1), store.literal(2)
    assert store.make_conj([]) == TRUE
    assert store.make_conj([a]) == a
    assert store.make_conj([a, TRUE, b]) == store.make_conj([a, b])
    assert store.make_conj([a, FALSE, b]) == FALSE


def test_conj_rejects_nested_and_overlapping(store):
    a, b, c = store.literal(1), store.literal(2), store.literal(3)
    u = store.make_conj([a, b])
    with pytest.raises(DecompositionError):
        store.make_conj([u, c])  # callers must flatten
    two_var = store.make_decision(1, store.literal(2), store.literal(2, False))
    with pytest.raises(DecompositionError):
        store.make_conj([two_var, b])  # shares variable 2


def test_parts_views(store):
    a, b = store.literal(1), store.literal(2)
    u = store.make_conj([a, b])
    assert store._parts(u) == (a, b)
    assert store._parts(a) == (a,)


def test_topological_children_first(store):
    a, b = store.literal(1), store.literal(5)
    u = store.make_conj([a, b])
    topo = store.topological(u)
    assert topo[-1] == u
    assert len(topo) == len(set(topo))
    pos = {v: k for k, v in enumerate(topo)}
    for v in topo:
        if store.is_decision(v):
            assert pos[store.lo(v)] < pos[v]
            assert pos[store.hi(v)] < pos[v]
        elif store.is_conj(v):
            for c in store.children(v):
                assert pos[c] < pos[v]


def test_counts_on_a_known_diagram(store):
    # x1 <-> x2 under natural order: root, both x2 literals, both leaves
    lo = store.literal(2, False)
    hi = store.literal(2, True)
    root = store.make_decision(1, lo, hi)
    assert store.vertex_count(root) == 5
    assert store.size(root) == 6  # three decision vertices, two edges each
    assert store.vertex_count(TRUE) == 1
    assert store.size(TRUE) == 0


def test_min_rank_tracks_topmost_variable(store):
    assert store.min_rank(store.literal(3)) == 2
    assert store.min_rank(TRUE) == 6  # leaf sentinel sits past the last rank


def test_clear_memo_keeps_vertices(store):
    a, b = store.literal(1), store.literal(2)
    u = store.conjoin(a, b, 1)
    store.clear_memo()
    assert store.conjoin(a, b, 1) == u

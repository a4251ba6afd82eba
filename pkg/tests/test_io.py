"""Diagram file format and DOT export."""

import pytest

from kcdag import FALSE, TRUE
from kcdag.diagram_io import deserialize, export_dot, serialize
from kcdag.errors import SerializationError
from kcdag.ordering import natural_order
from kcdag.store import INF, new_store


def biconditional_store():
    store = new_store(natural_order(2))
    root = store.make_decision(1, store.literal(2, False), store.literal(2))
    return store, root


GOLDEN = """kdag 1 2 5 inf
order 1 2
T
F
D 2 0 1
D 2 1 0
D 1 2 3
"""


def test_serialize_golden_text():
    store, root = biconditional_store()
    assert serialize(store, root, INF) == GOLDEN


def test_round_trip_same_store():
    store, root = biconditional_store()
    text = serialize(store, root, 2)
    store2, root2, bound = deserialize(text, store=store)
    assert store2 is store
    assert root2 == root
    assert bound == 2


def test_round_trip_fresh_store():
    store, root = biconditional_store()
    text = serialize(store, root, INF)
    store2, root2, bound = deserialize(text)
    assert bound == INF
    assert store2.order.vars == (1, 2)
    assert serialize(store2, root2, INF) == text


def test_round_trip_conjunction_and_leaves():
    store = new_store(natural_order(3))
    u = store.make_conj([store.literal(1), store.literal(3, False)])
    for root in (u, TRUE, FALSE):
        text = serialize(store, root, 1)
        _, back, _ = deserialize(text, store=store)
        assert back == root


def test_deserialize_rejects_order_mismatch():
    store, root = biconditional_store()
    text = serialize(store, root, 0)
    other = new_store(natural_order(3))
    with pytest.raises(SerializationError):
        deserialize(text, store=other)


@pytest.mark.parametrize("text", [
    "",                                           # empty
    "kdag 1 2 1 0\n",                             # no order line
    "kdag 2 2 3 0\norder 1 2\nF\nT\nD 1 0 1\n",   # unknown version
    "bogus 1 2 3 0\norder 1 2\nF\nT\nD 1 0 1\n",  # bad magic
    "kdag 1 2 3 x\norder 1 2\nF\nT\nD 1 0 1\n",   # bad bound
    "kdag 1 2 2 0\norder 1 2\nF\nT\nD 1 0 1\n",   # vertex count mismatch
    "kdag 1 1 3 0\norder 1 2\nF\nT\nD 1 0 1\n",   # order length mismatch
    "kdag 1 2 3 0\norder 1 2\nF\nT\nD 1 0 5\n",   # forward reference
    "kdag 1 2 3 0\norder 1 2\nF\nT\nQ 1 0 1\n",   # unknown tag
    "kdag 1 2 4 0\norder 1 2\nF\nT\nD 2 0 1\nC 1 2\n",   # conj arity < 2
    "kdag 1 2 3 0\norder 1 2\nF\nT\nD 9 0 1\n",   # variable outside order
])
def test_deserialize_rejects_malformed(text):
    with pytest.raises(SerializationError):
        deserialize(text)


def test_export_dot_shape():
    store, root = biconditional_store()
    dot = export_dot(store, root)
    assert dot.startswith("digraph kdag {")
    assert dot.rstrip().endswith("}")
    assert dot.count('label="x2"') == 2
    assert dot.count('label="x1"') == 1
    assert "style=dashed" in dot
    assert export_dot(store, root) == dot

"""Bottom-up CNF compilation into canonical diagrams."""

from __future__ import annotations

from typing import Iterable

from .cnf import CNF, Clause, Literal
from .engine import FALSE, TRUE, DiagramStore
from .ordering import VariableOrder, min_fill_order
from .store import INF, Bound, parse_bound


def clause_diagram(store: DiagramStore, clause: Clause | Iterable) -> int:
    """Decision chain for a single clause; canonical at every bound.

    A clause over two or more variables has no factoring into disjoint
    conjuncts, so the chain needs no decomposition work at any bound.
    """
    if not isinstance(clause, Clause):
        clause = Clause(lit if isinstance(lit, Literal) else Literal.from_int(lit)
                        for lit in clause)
    lits = list(clause)
    if not lits:
        return FALSE
    phase = {lit.var: lit.positive for lit in lits}
    if len(phase) != len(lits):
        raise ValueError("clause repeats a variable")
    acc = FALSE
    for var in sorted(phase, key=store.rank.__getitem__, reverse=True):
        if phase[var]:
            acc = store.make_decision(var, acc, TRUE)
        else:
            acc = store.make_decision(var, TRUE, acc)
    return acc


def compile_cnf(cnf: CNF, bound: Bound, order: VariableOrder | None = None,
                schedule: str = "balanced",
                store: DiagramStore | None = None) -> tuple[DiagramStore, int]:
    """Compile a CNF to its canonical diagram at the given bound.

    Returns (store, root).  With no explicit order, min-fill over the
    formula's primal graph is used.  `schedule` picks how the per-clause
    diagrams are conjoined: "balanced" (pairwise rounds, the default),
    "sequential" (left fold in clause order), or "ordered" (left fold
    with clauses sorted by the rank of their earliest variable, so the
    top of the order gets constrained first).
    """
    i = parse_bound(bound)
    if store is None:
        if order is None:
            order = min_fill_order(cnf)
        store = DiagramStore(order)
    elif order is not None and tuple(order.vars) != tuple(store.order.vars):
        raise ValueError("explicit order conflicts with the store's order")
    for v in cnf.variables:
        if v not in store.rank:
            raise ValueError(f"variable {v} is not in the compilation order")
    if schedule not in ("balanced", "sequential", "ordered"):
        raise ValueError(f"unknown schedule {schedule!r}")

    seen: set[frozenset] = set()
    clauses = []
    for cl in cnf.clauses:
        if cl.is_empty():
            return store, FALSE
        if cl.literals in seen:
            continue
        seen.add(cl.literals)
        clauses.append(cl)
    if schedule == "ordered":
        # deterministic: top-variable rank first, literal tuple as tiebreak
        clauses.sort(key=lambda cl: (min(store.rank[l.var] for l in cl),
                                     sorted((l.var, l.positive) for l in cl)))
    diagrams = [clause_diagram(store, cl) for cl in clauses]

    if not diagrams:
        return store, TRUE
    if schedule != "balanced":
        root = diagrams[0]
        for d in diagrams[1:]:
            root = store.conjoin(root, d, i)
            if root == FALSE:
                return store, FALSE
        return store, root
    while len(diagrams) > 1:
        nxt = []
        for k in range(0, len(diagrams) - 1, 2):
            d = store.conjoin(diagrams[k], diagrams[k + 1], i)
            if d == FALSE:
                return store, FALSE
            nxt.append(d)
        if len(diagrams) % 2:
            nxt.append(diagrams[-1])
        diagrams = nxt
    return store, diagrams[0]


def compile_via(cnf: CNF, bound: Bound, order: VariableOrder | None = None,
                store: DiagramStore | None = None) -> tuple[DiagramStore, int]:
    """Alternative compilation route used for cross-checking canonicity.

    Compiles at bound 1 (cheap literal extraction), re-canonicalizes with no
    bound, then converts down to the requested bound.  Canonicity makes the
    result identical to compile_cnf's.
    """
    i = parse_bound(bound)
    store, root = compile_cnf(cnf, 1, order=order, store=store)
    root = store.decompose(root, INF)
    return store, store.convert_down(root, i)
